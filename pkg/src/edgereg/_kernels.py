"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``EDGEREG_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("EDGEREG_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _pykernels
else:
    _impl = _pykernels

fold_reduce = _impl.fold_reduce
direct_faces = _impl.direct_faces
nerve_faces = _impl.nerve_faces
boundary_rank_mod_p = _impl.boundary_rank_mod_p
fold_reduce_many = _impl.fold_reduce_many
lcm_closure = _impl.lcm_closure

__all__ = [
    "BACKEND",
    "fold_reduce",
    "direct_faces",
    "nerve_faces",
    "boundary_rank_mod_p",
    "fold_reduce_many",
    "lcm_closure",
]
