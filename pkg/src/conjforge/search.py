"""Kernel backend selection.

The compiled ``_csearch`` extension is used when it was built and the
inputs fit its word-size limits; otherwise the pure-Python kernels run.
Set ``CONJFORGE_PURE=1`` to force the Python backend.
"""
import os

from . import _pysearch

try:
    if os.environ.get("CONJFORGE_PURE"):
        raise ImportError("pure backend requested")
    from . import _csearch
except ImportError:
    _csearch = None

BACKEND = "compiled" if _csearch is not None else "python"
BOUNDARY = _pysearch.BOUNDARY
DIAGONAL = _pysearch.DIAGONAL

_MAXV = 64
_MAXR = 8
_INT64_HEADROOM = 1 << 62


def find_maps(a_rel, b_rel, na, nb, bijective, limit=0, forced=None, backend=None):
    fa, fb = forced if forced is not None else (-1, -1)
    impl = _pick(backend)
    if impl is _csearch and (nb > _MAXV or len(a_rel) > _MAXR):
        impl = _pysearch
    return impl.find_maps(a_rel, b_rel, na, nb, bijective, limit, fa, fb)


def relate_table(nums, denom, n, backend=None):
    impl = _pick(backend)
    if impl is _csearch and not (denom * n < _INT64_HEADROOM and all(0 <= x < denom for x in nums)):
        impl = _pysearch
    return impl.relate_table(nums, denom, n)


def _pick(backend):
    if backend == "python" or _csearch is None:
        return _pysearch
    return _csearch
