"""Pseudorandom bit sequences from the Henon map, with linear complexity,
correlation, randomness-test and keyspace tooling."""
from ._kernels import BACKEND
from .bitgen import GeneratorConfig, HenonBitStream, Thresholds, calibrate, combine, extract_bit, generate
from .bits import BitSequence
from .cipher import vernam
from .corr import (
    autocorrelation,
    correlation,
    correlation_pmf_exact,
    correlation_pmf_normal,
)
from .errors import (
    BitFileError,
    DivergenceError,
    EmptySequence,
    HenonSeqError,
    InsufficientSamples,
    LengthMismatch,
    SequenceTooShort,
    WrongLength,
)
from .henon import MapParameters, State, iterate, orbit
from .keyspace import KeyspaceSpec, keyspace_bits
from .lincomp import conjectured_pmf, lc_moments, lc_profile, linear_complexity
from .presets import preset
from .stattests import TestReport, fips140_1, menezes_battery

__version__ = "0.1.0"
