"""Kernel selection.

The compiled ``_core`` extension is used when importable; otherwise the
pure-Python ``_pure`` module.  Setting ``HENONSEQ_PURE=1`` forces the
fallback.  ``BACKEND`` names the active choice.
"""
import os

from . import _pure

if os.environ.get("HENONSEQ_PURE", "") not in ("", "0"):
    _impl = _pure
else:
    try:
        from . import _core as _impl
    except ImportError:  # extension not built
        _impl = _pure

BACKEND = "compiled" if _impl is not _pure else "pure"

advance = _impl.advance
orbit_block = _impl.orbit_block
henon_bits = _impl.henon_bits
berlekamp_massey = _impl.berlekamp_massey
