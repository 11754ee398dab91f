"""Pair-kernel backend selection.

The compiled extension is preferred when it has been built; otherwise the
pure-Python fallback is used.  Set CURVELINK_PURE=1 to force the fallback,
e.g. to benchmark one backend against the other.
"""

import os

from . import pure

if os.environ.get("CURVELINK_PURE"):
    _impl = pure
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = pure

BACKEND = _impl.BACKEND_NAME
pair_codes_noise_free = _impl.pair_codes_noise_free
pair_codes_noisy = _impl.pair_codes_noisy


def available_backends():
    """Names of importable backends, preferred first."""
    names = []
    try:
        from . import _core  # noqa: F401

        names.append("compiled")
    except ImportError:
        pass
    names.append("pure")
    return names


def get_backend(name):
    """Return the kernel module for ``name`` ("compiled" or "pure")."""
    if name == "pure":
        return pure
    if name == "compiled":
        from . import _core

        return _core
    raise ValueError(f"unknown kernel backend {name!r}")
