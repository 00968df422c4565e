"""Pure-Python versions of the compiled kernels (same signatures, same results)."""

from __future__ import annotations

import heapq

import numpy as np


def _inside(gens, sigma: int) -> list[int]:
    return [int(g) for g in gens if int(g) & ~sigma == 0]


def _lowbits(m: int):
    while m:
        b = m & -m
        yield b
        m ^= b


def fold_reduce(sigma: int, gens) -> int:
    """Strip vertices whose link is a cone; 0 means the complex is acyclic."""
    sigma = int(sigma)
    allg = [int(g) for g in gens]
    while True:
        ins = [g for g in allg if g & ~sigma == 0]
        cover = 0
        for g in ins:
            cover |= g
        if cover != sigma or sigma == 0:
            return 0
        removed = False
        for bv in _lowbits(sigma):
            for bw in _lowbits(sigma & ~bv):
                if all(
                    any(h & ~((g & ~bw) | bv) == 0 for h in ins)
                    for g in ins
                    if g & bw
                ):
                    sigma &= ~bv
                    removed = True
                    break
            if removed:
                break
        if not removed:
            return sigma


def _group(faces: list[int], top: int) -> list[np.ndarray]:
    buckets: list[list[int]] = [[] for _ in range(top + 1)]
    for f in faces:
        buckets[bin(f).count("1")].append(f)
    return [np.array(sorted(b), dtype=np.uint64) for b in buckets]


def direct_faces(sigma: int, gens, dmin: int, dmax: int) -> list[np.ndarray]:
    sigma = int(sigma)
    ins = _inside(gens, sigma)
    gens_with: dict[int, list[int]] = {}
    for g in ins:
        for b in _lowbits(g):
            gens_with.setdefault(b, []).append(g)
    out: list[int] = []

    def dfs(face: int, size: int, cand: int) -> None:
        if size - 1 >= dmin:
            out.append(face)
        if size - 1 >= dmax:
            return
        for b in _lowbits(cand):
            cand ^= b
            nf = face | b
            if all(g & ~nf for g in gens_with.get(b, ())):
                dfs(nf, size + 1, cand)

    dfs(0, 0, sigma)
    return _group(out, bin(sigma).count("1"))


def nerve_faces(sigma: int, gens, emin: int, emax: int) -> list[np.ndarray]:
    sigma = int(sigma)
    ins = _inside(gens, sigma)
    if len(ins) > 63:
        raise ValueError("nerve needs at most 63 generators")
    out: list[int] = []

    def dfs(face: int, size: int, start: int, union: int) -> None:
        if size - 1 >= emin:
            out.append(face)
        if size - 1 >= emax:
            return
        for j in range(start, len(ins)):
            nu = union | ins[j]
            if nu != sigma:
                dfs(face | (1 << j), size + 1, j + 1, nu)

    dfs(0, 0, 0, 0)
    return _group(out, len(ins))


def boundary_rank_mod_p(hi, lo, p: int) -> int:
    """Rank over GF(p) of the boundary map from ``hi`` faces to sorted ``lo`` faces."""
    lo_index = {int(f): k for k, f in enumerate(lo)}
    if len(hi) == 0 or not lo_index:
        return 0
    pivots: dict[int, dict[int, int]] = {}
    for f in hi:
        f = int(f)
        row: dict[int, int] = {}
        for t, b in enumerate(_lowbits(f)):
            c = lo_index.get(f & ~b)
            if c is not None:
                row[c] = (row.get(c, 0) + (1 if t % 2 == 0 or p == 2 else p - 1)) % p
        heap = [c for c, v in row.items() if v]
        heapq.heapify(heap)
        queued = set(heap)
        while heap:
            c = heapq.heappop(heap)
            queued.discard(c)
            val = row.get(c, 0)
            if not val:
                continue
            piv = pivots.get(c)
            if piv is None:
                inv = pow(val, p - 2, p)
                pivots[c] = {cc: v * inv % p for cc, v in row.items() if v and cc >= c}
                break
            for cc, pv in piv.items():
                nv = (row.get(cc, 0) - val * pv) % p
                row[cc] = nv
                if nv and cc != c and cc not in queued:
                    queued.add(cc)
                    heapq.heappush(heap, cc)
    return len(pivots)


def fold_reduce_many(sigmas, gens) -> np.ndarray:
    gens = [int(g) for g in gens]
    return np.array([fold_reduce(int(s), gens) for s in sigmas], dtype=np.uint64)


def lcm_closure(gens, n: int) -> np.ndarray:
    """All nonempty unions of ``gens``, by decreasing popcount then increasing mask."""
    if n > 30:
        raise ValueError("lcm closure limited to 30 variables")
    gens = [int(g) for g in gens]
    seen = set(gens)
    stack = list(seen)
    while stack:
        s = stack.pop()
        for g in gens:
            t = s | g
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return np.array(sorted(seen, key=lambda m: (-bin(m).count("1"), m)), dtype=np.uint64)
