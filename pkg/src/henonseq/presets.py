"""Named parameter sets from the published test runs.

R1/R2 were used for the 128-bit basic tests, S1..S5 for FIPS 140-1 and
U1/U2 for the NIST suite.  Every preset uses seed bits (0, 1) and T = 1000.
"""
from .bitgen import GeneratorConfig

_TABLE = {
    # name: (alpha, beta, x0, y0, P)
    "R1": (1.40, 0.30, -0.75, -0.02, 24),
    "R2": (1.20, 0.30, -0.75, 0.32, 24),
    "S1": (1.23, 0.25, -1.0, 1.0, 84),
    "S2": (1.40, 0.25, -1.0, 1.0, 84),
    "S3": (1.40, 0.30, -1.0, 1.0, 84),
    "S4": (1.40, 0.30, -1.0, 1.0, 24),
    "S5": (1.41, 0.21, -1.0, 1.0, 24),
    "U1": (1.40, 0.30, -1.0, 1.0, 117),
    "U2": (1.398, 0.283, 0.26, 0.29, 111),
}

NAMES = tuple(_TABLE)


def preset(name: str, **knobs) -> GeneratorConfig:
    """Configuration for a named preset; ``knobs`` override pipeline fields."""
    try:
        alpha, beta, x0, y0, P = _TABLE[name.upper()]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(NAMES)}") from None
    opts = {"P": P, "T": 1000, "seed2": 0, "seed1": 1}
    opts.update(knobs)
    return GeneratorConfig.from_values(alpha, beta, x0, y0, **opts)
