"""Linear complexity over GF(2).

Berlekamp-Massey, linear complexity profiles and the closed-form
probability mass functions the generated sequences are compared against.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels
from .bits import BitSequence
from .errors import InsufficientSamples


class LfsrResult(NamedTuple):
    complexity: int
    connection: int  # bit i = coefficient of D^i, constant term is 1


def _as_array(w) -> np.ndarray:
    if isinstance(w, BitSequence):
        return w.to_array()
    return np.asarray(w, dtype=np.uint8)


def berlekamp_massey(w) -> LfsrResult:
    """Shortest LFSR generating ``w``: its length and connection polynomial."""
    L, conn, _ = _kernels.berlekamp_massey(_as_array(w), False)
    return LfsrResult(L, conn)


def linear_complexity(w) -> int:
    """Length of the shortest LFSR generating ``w`` (0 for all-zero input)."""
    return berlekamp_massey(w).complexity


@dataclass(frozen=True)
class LinearComplexityProfile:
    values: tuple[int, ...]

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def max_deviation(self) -> float:
        """max_i |C_i - i/2| with i counted from 1."""
        if not self.values:
            return 0.0
        c = np.asarray(self.values, dtype=np.float64)
        i = np.arange(1, c.size + 1)
        return float(np.max(np.abs(c - i / 2.0)))

    def jumps_ok(self) -> bool:
        """Every increase C_i -> C_{i+1} lands on i + 1 - C_i."""
        prev = 0
        for i, c in enumerate(self.values):
            # c is C_{i+1}; prev is C_i (C_0 = 0)
            if c != prev and c != i + 1 - prev:
                return False
            prev = c
        return True


def lc_profile(w) -> LinearComplexityProfile:
    """(C_1, ..., C_N) from a single Berlekamp-Massey pass."""
    arr = _as_array(w)
    if arr.size < 1:
        raise ValueError("profile needs at least one bit")
    _, _, profile = _kernels.berlekamp_massey(arr, True)
    return LinearComplexityProfile(tuple(int(v) for v in profile))


@dataclass(frozen=True)
class LcDistribution:
    N: int
    pmf: dict[int, float]

    def total(self) -> float:
        return sum(self.pmf.values())

    def mean(self) -> float:
        return sum(c * p for c, p in self.pmf.items()) / self.total()


def conjectured_pmf(N: int, exact: bool = False) -> LcDistribution:
    """P(C = c) for c = 1..N-1.

    ``0.5**(N - 2c + 1)`` below the split and ``0.5**(2c - N)`` above it;
    the split is ``c <= N/2`` for even N and ``c < (N+1)/2`` for odd N.
    With ``exact=True`` the probabilities are :class:`fractions.Fraction`.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    half = Fraction(1, 2) if exact else 0.5
    pmf = {}
    for c in range(1, N):
        lower = 2 * c <= N if N % 2 == 0 else 2 * c < N + 1
        pmf[c] = half ** (N - 2 * c + 1) if lower else half ** (2 * c - N)
    return LcDistribution(N, pmf)


def expected_random_lc(N: int) -> float:
    """Mean linear complexity of a uniformly random N-bit sequence."""
    parity = N & 1
    return N / 2 + (4 + parity) / 18 - 2.0 ** -N * (N / 3 + 2 / 9)


def lc_moments(samples: Sequence[int]) -> tuple[float, float]:
    """Mean and unbiased (n - 1) sample variance."""
    arr = np.asarray(samples, dtype=np.float64)
    if arr.size < 2:
        raise InsufficientSamples(f"need at least 2 samples, got {arr.size}")
    return float(arr.mean()), float(arr.var(ddof=1))
