"""Henon map iteration, orbits and divergence detection.

The update is evaluated as ``((-alpha * x) * x + y) + 1`` in IEEE-754
binary64.  That order is fixed so every bit downstream is reproducible.
"""
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .errors import DivergenceError

DEFAULT_BOUND = 1e6


@dataclass(frozen=True)
class MapParameters:
    alpha: float
    beta: float
    x0: float
    y0: float

    def __post_init__(self):
        for name in ("alpha", "beta", "x0", "y0"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))


class State(NamedTuple):
    x: float
    y: float
    k: int = 0


def iterate(s: State, p: MapParameters) -> State:
    """One step of the map; no divergence check."""
    x, y, k = s
    return State(((-p.alpha * x) * x + y) + 1.0, p.beta * x, k + 1)


def orbit(p: MapParameters, n: int, bound: float = DEFAULT_BOUND) -> Iterator[State]:
    """Yield the iterates X_1..X_n starting from ``(p.x0, p.y0)``.

    Lazy, so arbitrarily long orbits can be consumed without storing them.
    Raises :class:`DivergenceError` carrying the failing index once an
    iterate leaves ``[-bound, bound]`` in either coordinate or is not finite.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if not bound > 0:
        raise ValueError("bound must be positive")
    s = State(p.x0, p.y0, 0)
    for _ in range(n):
        s = iterate(s, p)
        if not (abs(s.x) <= bound and abs(s.y) <= bound):
            raise DivergenceError(s.k, s.x, s.y, bound)
        yield s


def fixed_points(alpha: float, beta: float) -> list[tuple[float, float]]:
    """Real fixed points of the map, solving alpha*x^2 + (1 - beta)*x - 1 = 0."""
    b = 1.0 - beta
    disc = b * b + 4.0 * alpha
    if alpha == 0:
        return [(1.0 / b, beta / b)]
    if disc < 0:
        return []
    r = math.sqrt(disc)
    xs = [(-b + r) / (2.0 * alpha), (-b - r) / (2.0 * alpha)]
    return [(x, beta * x) for x in xs]
