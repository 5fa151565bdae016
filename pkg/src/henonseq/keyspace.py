"""Keyspace size of the (alpha, beta, x0, y0, P) key at a given float precision."""
from __future__ import annotations

import math
from dataclasses import dataclass

EPS32 = 1.1921e-7
EPS64 = 2.2204e-16


@dataclass(frozen=True)
class KeyspaceSpec:
    alpha_width: float = 1.41 - 1.16
    beta_width: float = 0.3 - 0.2
    x0_width: float = 2.0
    y0_width: float = 0.7
    p_count: int = 1000 - 80
    epsilon: float = EPS64

    def __post_init__(self):
        for name in ("alpha_width", "beta_width", "x0_width", "y0_width", "epsilon"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.p_count < 1:
            raise ValueError("p_count must be at least 1")

    @property
    def widths(self) -> tuple[float, float, float, float]:
        return (self.alpha_width, self.beta_width, self.x0_width, self.y0_width)


def contributions(spec: KeyspaceSpec) -> dict[str, float]:
    """log2 of the number of keys contributed by each parameter."""
    eps = math.log2(spec.epsilon)
    names = ("alpha", "beta", "x0", "y0")
    out = {n: math.log2(w) - eps for n, w in zip(names, spec.widths)}
    out["P"] = math.log2(spec.p_count)
    return out


def keyspace_bits(spec: KeyspaceSpec) -> float:
    """log2 of the keyspace size, computed in the log domain."""
    return math.fsum(contributions(spec).values())
