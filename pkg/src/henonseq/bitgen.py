"""Bit generation from Henon orbits.

Pipeline: discard a transient, take the medians of the next ``T`` x and y
values as thresholds, then keep every ``P``-th iterate, turn its x and y
into one bit each and mix the two streams with the two-bit history rule
in :func:`combine`.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace
from typing import NamedTuple

import numpy as np

from . import _kernels
from .bits import BitSequence
from .errors import LengthMismatch
from .henon import DEFAULT_BOUND, MapParameters, State

DEFAULT_PARAMS = MapParameters(alpha=1.40, beta=0.30, x0=-1.0, y0=1.0)


@dataclass(frozen=True)
class GeneratorConfig:
    params: MapParameters = field(default_factory=lambda: DEFAULT_PARAMS)
    P: int = 117
    T: int = 1000
    discard: int = 100
    seed2: int = 0
    seed1: int = 1
    bound: float = DEFAULT_BOUND

    def __post_init__(self):
        if int(self.P) != self.P or self.P < 1:
            raise ValueError(f"P must be a positive integer, got {self.P!r}")
        if int(self.T) != self.T or self.T < 1:
            raise ValueError(f"T must be a positive integer, got {self.T!r}")
        if int(self.discard) != self.discard or self.discard < 0:
            raise ValueError(f"discard must be a non-negative integer, got {self.discard!r}")
        if self.seed2 not in (0, 1) or self.seed1 not in (0, 1):
            raise ValueError("seed bits must be 0 or 1")
        if not (self.bound > 0 and math.isfinite(self.bound)):
            raise ValueError(f"bound must be positive and finite, got {self.bound!r}")

    @classmethod
    def from_values(cls, alpha=1.40, beta=0.30, x0=-1.0, y0=1.0, **knobs) -> GeneratorConfig:
        return cls(MapParameters(alpha, beta, x0, y0), **knobs)

    def with_params(self, **changes) -> GeneratorConfig:
        return replace(self, params=replace(self.params, **changes))

    def to_dict(self) -> dict:
        d = asdict(self)
        d.update(d.pop("params"))
        return d


class Thresholds(NamedTuple):
    tau_x: float
    tau_y: float


def median(values) -> float:
    """Median; the mean of the two middle order statistics for even counts."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("median of an empty sample")
    return float(np.median(arr))


def thresholds_from_samples(xs, ys) -> Thresholds:
    return Thresholds(median(xs), median(ys))


def calibrate(cfg: GeneratorConfig) -> tuple[Thresholds, State]:
    """Run the transient and the calibration window.

    Returns the median thresholds and the state after ``discard + T``
    iterations, where bit generation resumes.
    """
    p = cfg.params
    x, y, k = _kernels.advance(p.alpha, p.beta, p.x0, p.y0, 0, cfg.discard, cfg.bound)
    xs, ys, x, y, k = _kernels.orbit_block(p.alpha, p.beta, x, y, k, cfg.T, cfg.bound)
    return thresholds_from_samples(xs, ys), State(x, y, k)


def extract_bit(v: float, tau: float) -> int:
    return 1 if v > tau else 0


def combine(Bx: BitSequence, By: BitSequence, seed2: int, seed1: int) -> BitSequence:
    """Output bit j is Bx(j), ~Bx(j), By(j) or ~By(j) for y-history
    (By(j-2), By(j-1)) = 00, 01, 10, 11, with ``seed2, seed1`` standing in
    for By(-1), By(0)."""
    if len(Bx) != len(By):
        raise LengthMismatch(f"Bx has {len(Bx)} bits, By has {len(By)}")
    n = len(Bx)
    bx = Bx.to_array()
    by = By.to_array()
    hist = np.concatenate([np.array([seed2, seed1], dtype=np.uint8), by])
    p2 = hist[:n]
    p1 = hist[1 : n + 1]
    return BitSequence.from_bits(np.where(p2 == 0, bx, by) ^ p1)


class HenonBitStream:
    """Stateful reader over the output stream of one configuration.

    Successive :meth:`read` calls continue the same stream, so
    ``read(a) + read(b)`` equals ``generate(cfg, a + b)``.  Only the map
    state and two history bits are kept between calls.
    """

    def __init__(self, cfg: GeneratorConfig):
        self.cfg = cfg
        self.thresholds, state = calibrate(cfg)
        self.x, self.y, self.iterations = state
        self._p2, self._p1 = cfg.seed2, cfg.seed1
        self.bits_emitted = 0

    def read(self, n: int) -> BitSequence:
        if n < 0:
            raise ValueError("n must be non-negative")
        p = self.cfg.params
        tx, ty = self.thresholds
        data, self.x, self.y, self.iterations, self._p2, self._p1 = _kernels.henon_bits(
            p.alpha, p.beta, self.x, self.y, self.iterations,
            tx, ty, self.cfg.P, n, self._p2, self._p1, self.cfg.bound,
        )
        self.bits_emitted += n
        return BitSequence(data, n)

    def read_bytes(self, nbytes: int) -> bytes:
        return self.read(8 * nbytes).data


def generate(cfg: GeneratorConfig, n: int) -> BitSequence:
    """First ``n`` output bits; costs exactly ``discard + T + P*n`` iterations."""
    return HenonBitStream(cfg).read(n)
