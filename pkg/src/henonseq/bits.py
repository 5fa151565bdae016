"""Packed bit sequences.

Bits are stored MSB-first in a ``bytes`` payload; unused trailing bits of
the last byte are always zero so equal sequences compare equal bytewise.
Element access through :meth:`BitSequence.bit` is 1-indexed.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import LengthMismatch


class BitSequence:
    __slots__ = ("_data", "_length")

    def __init__(self, data: bytes = b"", length: int | None = None):
        data = bytes(data)
        if length is None:
            length = 8 * len(data)
        if length < 0 or (length + 7) // 8 != len(data):
            raise ValueError(
                f"{len(data)} payload bytes cannot hold exactly {length} bits"
            )
        pad = (-length) % 8
        if pad and data[-1] & ((1 << pad) - 1):
            data = data[:-1] + bytes([data[-1] & (0xFF << pad) & 0xFF])
        self._data = data
        self._length = length

    @classmethod
    def from_bits(cls, bits: Iterable[int] | np.ndarray) -> BitSequence:
        arr = np.asarray(bits if isinstance(bits, np.ndarray) else list(bits))
        arr = arr.astype(np.uint8, copy=False).ravel()
        if arr.size and arr.max() > 1:
            raise ValueError("bits must be 0 or 1")
        return cls(np.packbits(arr).tobytes(), int(arr.size))

    @classmethod
    def from_string(cls, text: str) -> BitSequence:
        """Parse a string of '0'/'1' characters; whitespace is ignored."""
        text = "".join(text.split())
        if text.strip("01"):
            raise ValueError("bit string may only contain '0' and '1'")
        return cls.from_bits(np.frombuffer(text.encode("ascii"), np.uint8) - 48)

    @property
    def length(self) -> int:
        return self._length

    @property
    def data(self) -> bytes:
        """Packed MSB-first payload."""
        return self._data

    def __len__(self) -> int:
        return self._length

    def bit(self, i: int) -> int:
        """Bit ``i`` for ``1 <= i <= length``."""
        if not 1 <= i <= self._length:
            raise IndexError(f"bit index {i} outside 1..{self._length}")
        i -= 1
        return (self._data[i >> 3] >> (7 - (i & 7))) & 1

    def to_array(self) -> np.ndarray:
        """Unpacked uint8 array of 0/1 values."""
        arr = np.frombuffer(self._data, dtype=np.uint8)
        return np.unpackbits(arr, count=self._length)

    def __iter__(self):
        return iter(self.to_array().tolist())

    def count_ones(self) -> int:
        return int.from_bytes(self._data, "big").bit_count()

    def complement(self) -> BitSequence:
        return BitSequence(bytes(b ^ 0xFF for b in self._data), self._length)

    def __xor__(self, other: BitSequence) -> BitSequence:
        if len(other) != self._length:
            raise LengthMismatch(f"lengths differ: {self._length} vs {len(other)}")
        a = np.frombuffer(self._data, np.uint8)
        b = np.frombuffer(other._data, np.uint8)
        return BitSequence((a ^ b).tobytes(), self._length)

    def slice(self, start: int, stop: int) -> BitSequence:
        """Bits at 0-based positions ``start..stop-1``."""
        return BitSequence.from_bits(self.to_array()[start:stop])

    def rotate_right(self, j: int) -> BitSequence:
        """Cyclic right shift by ``j`` (negative shifts left)."""
        if self._length == 0:
            return self
        return BitSequence.from_bits(np.roll(self.to_array(), j % self._length))

    def __add__(self, other: BitSequence) -> BitSequence:
        return BitSequence.from_bits(np.concatenate([self.to_array(), other.to_array()]))

    def __eq__(self, other):
        if not isinstance(other, BitSequence):
            return NotImplemented
        return self._length == other._length and self._data == other._data

    def __hash__(self):
        return hash((self._length, self._data))

    def __str__(self) -> str:
        return (self.to_array() + 48).tobytes().decode("ascii")

    def __repr__(self) -> str:
        if self._length <= 64:
            return f"BitSequence('{self}')"
        return f"BitSequence(<{self._length} bits>)"
