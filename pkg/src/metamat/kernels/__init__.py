"""Merge-join and compression kernels.

The compiled extension is used when it has been built; otherwise the pure
Python module is loaded.  Set ``METAMAT_PURE_PYTHON=1`` to force the fallback,
or call :func:`set_backend` at runtime.
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels

_impl = _pykernels
BACKEND = "python"


def available_backends():
    return list(_BACKENDS)


def set_backend(name):
    """Select the kernel implementation; returns the previous backend name."""
    global _impl, BACKEND
    if name not in _BACKENDS:
        raise ValueError(f"kernel backend {name!r} is not available "
                         f"(have {available_backends()})")
    previous = BACKEND
    _impl, BACKEND = _BACKENDS[name], name
    return previous


if _ckernels is not None and not os.environ.get("METAMAT_PURE_PYTHON"):
    set_backend("cython")


def semijoin_mask(fkeys, gkeys):
    return _impl.semijoin_mask(fkeys, gkeys)


def antijoin_mask(fkeys, gkeys):
    return _impl.antijoin_mask(fkeys, gkeys)


def join_groups(fkeys, gkeys):
    return _impl.join_groups(fkeys, gkeys)


def greedy_compress(rows):
    return _impl.greedy_compress(rows)
