# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled kernels for the Hochster enumeration.

Same signatures and results as ``_pykernels``; vertex sets are uint64 masks.
"""

from libc.stdint cimport uint64_t, int64_t, uint32_t
from libcpp.vector cimport vector
from libcpp.algorithm cimport sort, lower_bound
from libcpp.queue cimport priority_queue
from libcpp cimport bool as cbool

import numpy as np

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil

ctypedef unsigned long long u64


cdef vector[u64] _as_vec(gens):
    cdef vector[u64] out
    for g in gens:
        out.push_back(<u64>g)
    return out


cdef vector[u64] _inside(const vector[u64]& gens, u64 sigma) noexcept nogil:
    cdef vector[u64] out
    cdef size_t i
    for i in range(gens.size()):
        if gens[i] & ~sigma == 0:
            out.push_back(gens[i])
    return out


def fold_reduce(u64 sigma, gens):
    """Strip vertices whose link is a cone; 0 means the complex is acyclic."""
    cdef vector[u64] allg = _as_vec(gens)
    cdef u64 out
    with nogil:
        out = _fold(sigma, allg)
    return out


cdef u64 _fold(u64 sigma, const vector[u64]& allg) noexcept nogil:
    cdef vector[u64] ins
    cdef u64 cover, bv, bw, vs, ws, t
    cdef size_t a, b
    cdef cbool removed, ok, found
    while True:
        ins = _inside(allg, sigma)
        cover = 0
        for a in range(ins.size()):
            cover |= ins[a]
        if cover != sigma or sigma == 0:
            return 0
        removed = False
        vs = sigma
        while vs and not removed:
            bv = vs & (~vs + 1)
            vs ^= bv
            ws = sigma & ~bv
            while ws:
                bw = ws & (~ws + 1)
                ws ^= bw
                ok = True
                for a in range(ins.size()):
                    if ins[a] & bw:
                        t = (ins[a] & ~bw) | bv
                        found = False
                        for b in range(ins.size()):
                            if ins[b] & ~t == 0:
                                found = True
                                break
                        if not found:
                            ok = False
                            break
                if ok:
                    sigma &= ~bv
                    removed = True
                    break
        if not removed:
            return sigma


cdef void _direct_dfs(u64 face, int size, u64 cand, const vector[vector[u64]]& gens_with,
                      int dmin, int dmax, vector[vector[u64]]& out) noexcept nogil:
    cdef u64 bv
    cdef int v
    cdef size_t a
    cdef cbool ok
    if size - 1 >= dmin:
        out[size].push_back(face)
    if size - 1 >= dmax:
        return
    while cand:
        bv = cand & (~cand + 1)
        cand ^= bv
        v = ctz64(bv)
        ok = True
        for a in range(gens_with[v].size()):
            if gens_with[v][a] & ~(face | bv) == 0:
                ok = False
                break
        if ok:
            _direct_dfs(face | bv, size + 1, cand, gens_with, dmin, dmax, out)


def direct_faces(u64 sigma, gens, int dmin, int dmax):
    """Faces of the induced complex on ``sigma`` with dimension in ``[dmin, dmax]``.

    Returns a list indexed by ``dim + 1`` of sorted uint64 arrays.
    """
    cdef vector[u64] ins = _inside(_as_vec(gens), sigma)
    cdef vector[vector[u64]] gens_with = vector[vector[u64]](64)
    cdef vector[vector[u64]] out = vector[vector[u64]](66)
    cdef size_t a
    cdef int v
    for a in range(ins.size()):
        for v in range(64):
            if ins[a] >> v & 1:
                gens_with[v].push_back(ins[a])
    with nogil:
        _direct_dfs(0, 0, sigma, gens_with, dmin, dmax, out)
    res = []
    cdef int d
    cdef int top = popcount64(sigma)
    for d in range(top + 1):
        sort(out[d].begin(), out[d].end())
        arr = np.empty(out[d].size(), dtype=np.uint64)
        for a in range(out[d].size()):
            arr[a] = out[d][a]
        res.append(arr)
    return res


cdef void _nerve_dfs(u64 face, int size, int start, u64 union_, u64 sigma,
                     const vector[u64]& ins, int emin, int emax,
                     vector[vector[u64]]& out) noexcept nogil:
    cdef int j
    cdef u64 nu
    if size - 1 >= emin:
        out[size].push_back(face)
    if size - 1 >= emax:
        return
    for j in range(start, <int>ins.size()):
        nu = union_ | ins[j]
        if nu != sigma:
            _nerve_dfs(face | (<u64>1 << j), size + 1, j + 1, nu, sigma, ins, emin, emax, out)


def nerve_faces(u64 sigma, gens, int emin, int emax):
    """Sets of generators inside ``sigma`` whose union is not ``sigma``.

    Faces are masks over the positions of ``gens`` that lie inside ``sigma``
    (in the given order), grouped by ``dim + 1`` like ``direct_faces``.
    """
    cdef vector[u64] ins = _inside(_as_vec(gens), sigma)
    if ins.size() > 63:
        raise ValueError("nerve needs at most 63 generators")
    cdef vector[vector[u64]] out = vector[vector[u64]](ins.size() + 2)
    with nogil:
        _nerve_dfs(0, 0, 0, 0, sigma, ins, emin, emax, out)
    res = []
    cdef size_t a, d
    for d in range(ins.size() + 1):
        sort(out[d].begin(), out[d].end())
        arr = np.empty(out[d].size(), dtype=np.uint64)
        for a in range(out[d].size()):
            arr[a] = out[d][a]
        res.append(arr)
    return res


cdef inline u64 _powmod(u64 a, u64 e, u64 p) noexcept nogil:
    cdef u64 r = 1
    a %= p
    while e:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


def boundary_rank_mod_p(const u64[::1] hi, const u64[::1] lo, u64 p):
    """Rank over GF(p) of the boundary map from faces ``hi`` to faces ``lo``.

    ``lo`` must be sorted.  Signs follow the ascending order of vertex bits.
    ``p`` must be a prime below 2**31.
    """
    cdef Py_ssize_t n_hi = hi.shape[0]
    cdef Py_ssize_t n_lo = lo.shape[0]
    if n_hi == 0 or n_lo == 0:
        return 0
    cdef vector[u64] work = vector[u64](n_lo, 0)
    cdef vector[char] inheap = vector[char](n_lo, 0)
    cdef vector[int64_t] pivot_of = vector[int64_t](n_lo, -1)
    cdef vector[vector[uint32_t]] pcols
    cdef vector[vector[u64]] pvals
    cdef priority_queue[int64_t] heap
    cdef Py_ssize_t i, rank = 0
    cdef u64 f, bits, bit, sub, val, inv, factor, neg_one = p - 1
    cdef int t
    cdef int64_t c, cc, r
    cdef size_t k
    cdef const u64* lop = &lo[0]
    cdef const u64* pos
    with nogil:
        for i in range(n_hi):
            f = hi[i]
            bits = f
            t = 0
            while bits:
                bit = bits & (~bits + 1)
                bits ^= bit
                sub = f & ~bit
                pos = lower_bound(lop, lop + n_lo, sub)
                c = pos - lop
                if c < n_lo and lop[c] == sub:
                    val = 1 if (t % 2 == 0 or p == 2) else neg_one
                    work[c] = (work[c] + val) % p
                    if not inheap[c]:
                        inheap[c] = 1
                        heap.push(-c)
                t += 1
            while not heap.empty():
                c = -heap.top()
                heap.pop()
                inheap[c] = 0
                val = work[c]
                if val == 0:
                    continue
                r = pivot_of[c]
                if r == -1:
                    inv = _powmod(val, p - 2, p)
                    pcols.push_back(vector[uint32_t]())
                    pvals.push_back(vector[u64]())
                    pcols.back().push_back(<uint32_t>c)
                    pvals.back().push_back(1)
                    work[c] = 0
                    while not heap.empty():
                        cc = -heap.top()
                        heap.pop()
                        inheap[cc] = 0
                        if work[cc] != 0:
                            pcols.back().push_back(<uint32_t>cc)
                            pvals.back().push_back(work[cc] * inv % p)
                            work[cc] = 0
                    pivot_of[c] = rank
                    rank += 1
                    break
                factor = val
                for k in range(pcols[r].size()):
                    cc = pcols[r][k]
                    work[cc] = (work[cc] + p - factor * pvals[r][k] % p) % p
                    if cc != c and not inheap[cc]:
                        inheap[cc] = 1
                        heap.push(-cc)
    return rank


def fold_reduce_many(const u64[::1] sigmas, gens):
    """``fold_reduce`` applied to every entry of ``sigmas``."""
    cdef vector[u64] allg = _as_vec(gens)
    cdef Py_ssize_t i, m = sigmas.shape[0]
    out = np.empty(m, dtype=np.uint64)
    cdef u64[::1] ov = out
    with nogil:
        for i in range(m):
            ov[i] = _fold(sigmas[i], allg)
    return out


def lcm_closure(gens, int n):
    """All nonempty unions of ``gens`` (masks over ``n <= 30`` bits).

    Sorted by decreasing popcount, then increasing mask.
    """
    if n > 30:
        raise ValueError("lcm closure limited to 30 variables")
    cdef vector[u64] g = _as_vec(gens)
    cdef vector[char] seen = vector[char](<size_t>1 << n, 0)
    cdef vector[u64] stack, keys
    cdef u64 s, t
    cdef size_t a
    with nogil:
        for a in range(g.size()):
            if not seen[g[a]]:
                seen[g[a]] = 1
                stack.push_back(g[a])
        while not stack.empty():
            s = stack.back()
            stack.pop_back()
            keys.push_back((<u64>(64 - popcount64(s)) << 32) | s)
            for a in range(g.size()):
                t = s | g[a]
                if not seen[t]:
                    seen[t] = 1
                    stack.push_back(t)
        sort(keys.begin(), keys.end())
    out = np.empty(keys.size(), dtype=np.uint64)
    cdef u64[::1] ov = out
    for a in range(keys.size()):
        ov[a] = keys[a] & 0xFFFFFFFF
    return out
