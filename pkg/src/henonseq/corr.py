"""Pairwise correlation, cyclic autocorrelation and the reference
distributions of the correlation of two random sequences."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bits import BitSequence
from .errors import EmptySequence, LengthMismatch


def _agreements(u: BitSequence, v: BitSequence) -> int:
    if len(u) != len(v):
        raise LengthMismatch(f"lengths differ: {len(u)} vs {len(v)}")
    if len(u) == 0:
        raise EmptySequence("correlation of empty sequences")
    return len(u) - (u ^ v).count_ones()


def correlation(u: BitSequence, v: BitSequence) -> float:
    """(agreements - disagreements) / N."""
    N = len(u)
    A = _agreements(u, v)
    return (2 * A - N) / N


def autocorrelation(w: BitSequence, j: int) -> float:
    """Correlation of ``w`` with itself cyclically right-shifted by ``j``."""
    if len(w) == 0:
        raise EmptySequence("autocorrelation of an empty sequence")
    return correlation(w, w.rotate_right(j))


def autocorrelation_all(w: BitSequence) -> np.ndarray:
    """R(j) for j = 0..N-1 as a float array, vectorized over shifts."""
    N = len(w)
    if N == 0:
        raise EmptySequence("autocorrelation of an empty sequence")
    # sign form: agreement products are +1, disagreements -1
    s = 1 - 2 * w.to_array().astype(np.int64)
    out = np.empty(N, dtype=np.float64)
    for j in range(N):
        out[j] = np.dot(s, np.roll(s, j)) / N
    return out


def support(N: int) -> np.ndarray:
    """Attainable correlation values 2r/N - 1, r = 0..N, ascending."""
    if N < 1:
        raise ValueError("N must be at least 1")
    return (2.0 * np.arange(N + 1) - N) / N


def on_support(theta: float, N: int, tol: float = 1e-9) -> bool:
    r = (theta + 1.0) * N / 2.0
    return abs(r - round(r)) <= tol * max(1, N) and 0 <= round(r) <= N


@dataclass(frozen=True)
class CorrelationPmf:
    N: int
    support: np.ndarray
    probs: np.ndarray
    kind: str  # "exact-binomial" or "normal-approx"

    def prob(self, theta: float) -> float:
        """Probability of one value; zero away from the attainable set."""
        if not on_support(theta, self.N):
            return 0.0
        return float(self.probs[int(round((theta + 1.0) * self.N / 2.0))])


def correlation_pmf_exact(N: int) -> CorrelationPmf:
    """Agreement count is Binomial(N, 1/2): P(A=r) = C(N, r) / 2^N."""
    r = np.arange(N + 1)
    logp = np.array(
        [math.lgamma(N + 1) - math.lgamma(k + 1) - math.lgamma(N - k + 1) for k in r]
    ) - N * math.log(2.0)
    return CorrelationPmf(N, support(N), np.exp(logp), "exact-binomial")


def correlation_pmf_normal(N: int) -> CorrelationPmf:
    """sqrt(2/(N pi)) * exp(-N theta^2 / 2) on the attainable values."""
    theta = support(N)
    probs = math.sqrt(2.0 / (N * math.pi)) * np.exp(-N * theta**2 / 2.0)
    return CorrelationPmf(N, theta, probs, "normal-approx")
