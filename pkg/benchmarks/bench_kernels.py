"""Compiled vs pure-Python kernels on workloads taken from real regularity runs.

    python3 benchmarks/bench_kernels.py [--repeat N] [--end-to-end]

Each kernel is timed on both backends with identical inputs, and the
outputs are compared before any timing is reported.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from edgereg import _pykernels
from edgereg.fixtures import fixture
from edgereg.monomial import edge_ideal, polarize, power

try:
    from edgereg import _ckernels
except ImportError:
    _ckernels = None


def _masks(ideal):
    return [sum(1 << i for i, a in enumerate(e) if a) for e in ideal.gens]


def workloads():
    pol, _ = polarize(power(edge_ideal(fixture("nine")), 2))
    gens = _masks(pol)
    n = pol.nvars
    full = (1 << n) - 1
    closure = _pykernels.lcm_closure(gens, n)
    sigmas = np.ascontiguousarray(closure[: min(len(closure), 4000)], dtype=np.uint64)

    small, _ = polarize(power(edge_ideal(fixture("c5")), 2))
    sg = _masks(small)
    sfull = (1 << small.nvars) - 1
    faces = _pykernels.direct_faces(sfull, sg, 0, small.nvars)
    hi, lo = max(((faces[j], faces[j - 1]) for j in range(1, len(faces))), key=lambda t: len(t[0]) * len(t[1]))

    return [
        ("lcm_closure", lambda k: k.lcm_closure(gens, n)),
        ("fold_reduce_many", lambda k: k.fold_reduce_many(sigmas, gens)),
        ("direct_faces", lambda k: k.direct_faces(sfull, sg, 0, small.nvars)),
        ("nerve_faces", lambda k: k.nerve_faces(full, gens, -1, 3)),
        ("boundary_rank_mod_p", lambda k: k.boundary_rank_mod_p(hi, lo, 2147483647)),
    ]


def _same(a, b) -> bool:
    if isinstance(a, list):
        return len(a) == len(b) and all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def end_to_end() -> list[tuple[str, float]]:
    code = (
        "import time;from edgereg.fixtures import fixture;from edgereg.monomial import edge_ideal,power;"
        "from edgereg.regularity import regularity;t=time.perf_counter();"
        "r=regularity(power(edge_ideal(fixture('nine')),2));print(r.reg,time.perf_counter()-t)"
    )
    out = []
    for label, pure in (("cython", ""), ("python", "1")):
        env = dict(os.environ, EDGEREG_PURE_PYTHON=pure)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        reg, secs = res.stdout.split()
        out.append((f"reg(I(nine)^2)={reg} [{label}]", float(secs)))
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; only the Python backend is available")
        return 1
    print(f"{'kernel':<22}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, call in workloads():
        if not _same(call(_pykernels), call(_ckernels)):
            print(f"{name}: backends disagree")
            return 1
        tp = _best(lambda: call(_pykernels), args.repeat)
        tc = _best(lambda: call(_ckernels), args.repeat)
        print(f"{name:<22}{tp * 1e3:>14.2f}{tc * 1e3:>14.2f}{tp / max(tc, 1e-9):>9.1f}x")
    if args.end_to_end:
        for label, secs in end_to_end():
            print(f"{label:<40}{secs:>8.2f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
