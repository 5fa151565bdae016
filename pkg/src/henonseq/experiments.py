"""Batch experiments over populations of generated sequences.

Populations come from disjoint windows of one long output stream by
default.  ``mode="perturb"`` instead gives every trial its own
configuration whose x0 is shifted by :func:`perturbed_config`.
"""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bitgen import GeneratorConfig, HenonBitStream, generate
from .bits import BitSequence
from .corr import autocorrelation_all, correlation_pmf_normal, support
from .lincomp import (
    LinearComplexityProfile,
    conjectured_pmf,
    expected_random_lc,
    lc_moments,
    lc_profile,
    linear_complexity,
)
from .stattests import fips140_1

MASK64 = (1 << 64) - 1
PERTURB_SPREAD = 1e-3


def splitmix64(z: int) -> int:
    """SplitMix64 finalizer: a bijective 64-bit integer mixer."""
    z = (z + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def perturbed_config(cfg: GeneratorConfig, index: int, spread: float = PERTURB_SPREAD) -> GeneratorConfig:
    """``cfg`` with x0 moved by a deterministic offset in [-spread, spread).

    The offset is ``spread * (2u - 1)`` where ``u`` is the top 53 bits of
    ``splitmix64(index)`` scaled to [0, 1).
    """
    u = (splitmix64(index) >> 11) * 2.0**-53
    return cfg.with_params(x0=cfg.params.x0 + spread * (2.0 * u - 1.0))


@dataclass
class Histogram:
    labels: list
    counts: list[int]

    @property
    def total(self) -> int:
        return int(sum(self.counts))

    @property
    def frequencies(self) -> list[float]:
        t = self.total
        return [c / t if t else 0.0 for c in self.counts]

    def nonzero(self) -> list[tuple]:
        return [(l, c) for l, c in zip(self.labels, self.counts) if c]

    def to_csv(self, reference=None) -> str:
        """``bin,count,frequency`` rows, plus a ``reference`` column if given."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        header = ["bin", "count", "frequency"]
        if reference is not None:
            header.append("reference")
        w.writerow(header)
        for i, (l, c, f) in enumerate(zip(self.labels, self.counts, self.frequencies)):
            row = [repr(l), c, repr(f)]
            if reference is not None:
                row.append(repr(float(reference[i])))
            w.writerow(row)
        return buf.getvalue()


def tv_distance(p, q) -> float:
    """Total-variation distance 0.5 * sum |p - q| between aligned vectors."""
    return 0.5 * float(np.sum(np.abs(np.asarray(p, float) - np.asarray(q, float))))


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def draw_windows(cfg: GeneratorConfig, N: int, count: int, mode: str = "windows", jobs: int = 1):
    """``count`` N-bit sequences and the number of output bits generated."""
    if mode == "windows":
        stream = HenonBitStream(cfg)
        data = stream.read(N * count).to_array()
        windows = [BitSequence.from_bits(data[i * N : (i + 1) * N]) for i in range(count)]
        return windows, stream.bits_emitted
    if mode == "perturb":
        windows = _map(lambda i: generate(perturbed_config(cfg, i), N), range(count), jobs)
        return windows, N * count
    raise ValueError(f"unknown sampling mode {mode!r}")


@dataclass
class LcExperiment:
    N: int
    trials: int
    histogram: Histogram
    mean: float
    variance: float
    conjectured: list[float]
    tv: float
    expected_mean: float
    bits_generated: int

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "trials": self.trials,
            "mean": self.mean,
            "variance": self.variance,
            "expected_mean_random": self.expected_mean,
            "tv_distance_to_conjectured": self.tv,
            "bits_generated": self.bits_generated,
            "histogram": [
                {"c": l, "count": c, "frequency": f, "conjectured": q}
                for l, c, f, q in zip(
                    self.histogram.labels, self.histogram.counts,
                    self.histogram.frequencies, self.conjectured,
                )
            ],
        }


def lc_experiment(cfg: GeneratorConfig, N: int, trials: int, mode: str = "windows", jobs: int = 1) -> LcExperiment:
    if trials < 2:
        raise ValueError("trials must be at least 2")
    windows, generated = draw_windows(cfg, N, trials, mode, jobs)
    lcs = _map(linear_complexity, windows, jobs)
    counts = np.bincount(lcs, minlength=N + 1)
    hist = Histogram(list(range(N + 1)), [int(c) for c in counts])
    mean, var = lc_moments(lcs)
    if N >= 2:
        pmf = conjectured_pmf(N).pmf
        conj = [pmf.get(c, 0.0) for c in range(N + 1)]
    else:
        conj = [0.0] * (N + 1)
    return LcExperiment(
        N, trials, hist, mean, var, conj, tv_distance(hist.frequencies, conj),
        expected_random_lc(N), generated,
    )


@dataclass
class CorrExperiment:
    N: int
    pairs: int
    histogram: Histogram
    reference: list[float]
    tv: float
    bits_generated: int

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "pairs": self.pairs,
            "tv_distance_to_normal": self.tv,
            "bits_generated": self.bits_generated,
            "histogram": [
                {"theta": l, "count": c, "frequency": f, "normal": q}
                for l, c, f, q in zip(
                    self.histogram.labels, self.histogram.counts,
                    self.histogram.frequencies, self.reference,
                )
            ],
        }


def correlation_histogram(pairs_of_windows, N: int) -> Histogram:
    counts = np.zeros(N + 1, dtype=np.int64)
    for u, v in pairs_of_windows:
        agreements = N - (u ^ v).count_ones()
        counts[agreements] += 1
    return Histogram([float(t) for t in support(N)], [int(c) for c in counts])


def corr_experiment(cfg: GeneratorConfig, N: int, pairs: int, mode: str = "windows", jobs: int = 1) -> CorrExperiment:
    """Correlate consecutive window pairs (2k, 2k+1) and histogram theta."""
    if pairs < 1:
        raise ValueError("pairs must be at least 1")
    windows, generated = draw_windows(cfg, N, 2 * pairs, mode, jobs)
    hist = correlation_histogram(zip(windows[0::2], windows[1::2]), N)
    ref = correlation_pmf_normal(N).probs.tolist()
    return CorrExperiment(N, pairs, hist, ref, tv_distance(hist.frequencies, ref), generated)


def autocorr_trace(cfg: GeneratorConfig, N: int) -> list[tuple[int, float]]:
    """(shift, R(shift)) for shifts -(N-1)..N-1 of one N-bit sequence."""
    if N < 2:
        raise ValueError("N must be at least 2")
    return trace_of(generate(cfg, N))


def trace_of(w: BitSequence) -> list[tuple[int, float]]:
    N = len(w)
    R = autocorrelation_all(w)
    return [(j, float(R[j % N])) for j in range(-(N - 1), N)]


def profile_experiment(cfg: GeneratorConfig, N: int = 553) -> LinearComplexityProfile:
    return lc_profile(generate(cfg, N))


@dataclass
class FipsExperiment:
    count: int
    passed: int
    failures: list[int] = field(default_factory=list)

    @property
    def pass_rate(self) -> float:
        return self.passed / self.count if self.count else 0.0

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "passed": self.passed,
            "pass_rate": self.pass_rate,
            "failed_indices": self.failures,
        }


def fips_experiment(cfg: GeneratorConfig, count: int, jobs: int = 1) -> FipsExperiment:
    """FIPS 140-1 over ``count`` perturbed-x0 sequences of 20000 bits."""
    def one(i):
        return fips140_1(generate(perturbed_config(cfg, i), 20000)).passed

    verdicts = _map(one, range(count), jobs)
    failures = [i for i, ok in enumerate(verdicts) if not ok]
    return FipsExperiment(count, count - len(failures), failures)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
