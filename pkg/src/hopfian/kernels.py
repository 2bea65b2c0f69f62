"""Backend selection for the hot loops.

The compiled extension ``_ckernels`` is used when it imports; otherwise the
pure-Python ``_pykernels`` takes over.  Setting ``HOPFIAN_PURE=1`` forces the
fallback.  Both backends are exercised against each other in the tests.
"""
from __future__ import annotations

import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("HOPFIAN_PURE"):
        raise ImportError("pure backend requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

BACKEND = "cython" if _ckernels is not None else "python"
_impl = BACKENDS[BACKEND]


def use(name: str) -> None:
    """Switch the active backend (``"python"`` or ``"cython"``)."""
    global _impl, BACKEND
    _impl = BACKENDS[name]
    BACKEND = name


def as_table(t) -> np.ndarray:
    return np.ascontiguousarray(t, dtype=np.int64)


def as_vec(v) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(list(v), dtype=np.int64))


def assoc_witness(t):
    return _impl.assoc_witness(as_table(t))


def light_witness(t, gens):
    return _impl.light_witness(as_table(t), as_vec(gens))


def hom_witness(src, dst, f):
    return _impl.hom_witness(as_table(src), as_table(dst), as_vec(f))


def hom_failures(src, dst, f) -> int:
    return _impl.hom_failures(as_table(src), as_table(dst), as_vec(f))


def is_closed(t, members) -> bool:
    return _impl.is_closed(as_table(t), as_vec(members))


def closure(t, seeds) -> list[int]:
    return _impl.closure(as_table(t), as_vec(seeds))


def reduce_once(w: bytes, lhs: list[bytes], rhs: list[bytes]):
    return _impl.reduce_once(w, lhs, rhs)


def normal_form(w: bytes, lhs: list[bytes], rhs: list[bytes], limit: int):
    return _impl.normal_form(w, lhs, rhs, limit)
