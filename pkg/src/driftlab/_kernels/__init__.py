"""Kernel backends for the EA inner loop.

The compiled Cython extension and the pure-Python module implement the
same operations with identical random-stream consumption; results are
bit-for-bit equal across backends for the same seed.  The compiled one
is selected when available; set ``DRIFTLAB_BACKEND=python`` (or
``compiled``) to force a choice.
"""

import os

from . import _ea_py

try:
    from . import _ea_cy
except ImportError:
    _ea_cy = None

FlipSampler = _ea_py.FlipSampler

_BACKENDS = {"python": _ea_py}
if _ea_cy is not None:
    _BACKENDS["compiled"] = _ea_cy


def available_backends():
    return sorted(_BACKENDS)


def get_backend(name):
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown backend {name!r}; available: {available_backends()}"
        ) from None


def _select_default():
    forced = os.environ.get("DRIFTLAB_BACKEND")
    if forced:
        return get_backend(forced), forced
    if _ea_cy is not None:
        return _ea_cy, "compiled"
    return _ea_py, "python"


kernel, BACKEND_NAME = _select_default()


def active_backend():
    """Name of the backend used by the package ('compiled' or 'python')."""
    return BACKEND_NAME
