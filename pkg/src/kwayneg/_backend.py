"""Kernel selection: the compiled extension when importable, otherwise the
pure-Python fallback. ``KWAYNEG_BACKEND=python`` forces the fallback."""
import os

from . import _pykernels

_available = {"python": _pykernels}
try:
    from . import _ext
except ImportError:  # extension not built
    _ext = None
else:
    _available["cython"] = _ext


def available():
    return sorted(_available)


def get(name):
    try:
        return _available[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} not available; have {available()}") from None


_requested = os.environ.get("KWAYNEG_BACKEND", "").strip().lower()
if _requested:
    kernels = get(_requested)
else:
    kernels = _available.get("cython", _pykernels)
BACKEND = "cython" if kernels is _ext and _ext is not None else "python"
