"""Kernel dispatch.

The numba backend is used when numba imports cleanly and the environment
variable ``QEULER_DISABLE_NUMBA`` is unset (or ``0``); otherwise the numpy
implementations run. Both backends share one signature per kernel.
"""

from __future__ import annotations

import os

from . import _numpy

_disabled = os.environ.get("QEULER_DISABLE_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")

if _disabled:
    _impl = _numpy
    BACKEND = "numpy"
else:
    try:
        from . import _numba as _impl
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - depends on environment
        _impl = _numpy
        BACKEND = "numpy"

bracket_series = _impl.bracket_series
alt_char_weights = _impl.alt_char_weights
conv_mod = _impl.conv_mod
dot_mod = _impl.dot_mod
pow_table = _impl.pow_table
poly_table = _impl.poly_table
qpow_table = _impl.qpow_table
qbracket_table = _impl.qbracket_table

__all__ = [
    "BACKEND",
    "bracket_series",
    "alt_char_weights",
    "conv_mod",
    "dot_mod",
    "pow_table",
    "poly_table",
    "qpow_table",
    "qbracket_table",
]
