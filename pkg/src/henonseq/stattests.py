"""Randomness test batteries.

``menezes_battery`` runs the five basic tests (frequency, serial, poker,
runs, autocorrelation) against fixed 1% thresholds; ``fips140_1`` runs the
monobit, poker, runs and long-run tests on exactly 20000 bits.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .bits import BitSequence
from .errors import SequenceTooShort, WrongLength

FIPS_LENGTH = 20000
FIPS_MONOBIT = (9654, 10346)
FIPS_POKER = (1.03, 57.40)
FIPS_RUNS = {
    1: (2267, 2733),
    2: (1079, 1421),
    3: (502, 748),
    4: (223, 402),
    5: (90, 223),
    6: (90, 223),
}
FIPS_LONG_RUN = 34

MENEZES_MIN_LENGTH = 100
# chi-square / normal quantiles at significance 0.01
X1_MAX = 6.634897
X2_MAX = 9.210340
X3_MAX = {2: 11.344867, 3: 18.475307}
X4_MAX = 9.210340
X5_MAX = 2.326348


@dataclass
class Entry:
    name: str
    value: float
    bound: str
    passed: bool

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class TestReport:
    battery: str
    entries: list[Entry] = field(default_factory=list)

    __test__ = False  # keep pytest from collecting this class

    @property
    def overall(self) -> str:
        return "pass" if all(e.passed for e in self.entries) else "fail"

    @property
    def passed(self) -> bool:
        return self.overall == "pass"

    def failures(self) -> list[Entry]:
        return [e for e in self.entries if not e.passed]

    def __getitem__(self, name: str) -> Entry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "battery": self.battery,
            "entries": [
                {"statistic": e.name, "value": e.value, "bound": e.bound, "verdict": e.verdict}
                for e in self.entries
            ],
            "overall": self.overall,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["battery", "statistic", "value", "bound", "verdict"])
        for e in self.entries:
            writer.writerow([self.battery, e.name, repr(e.value), e.bound, e.verdict])
        writer.writerow([self.battery, "overall", "", "", self.overall])
        return buf.getvalue()


def _bits(w) -> np.ndarray:
    if isinstance(w, BitSequence):
        return w.to_array()
    return np.asarray(w, dtype=np.uint8)


def run_lengths(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Bit value and length of every maximal run, in order."""
    if a.size == 0:
        return np.empty(0, np.uint8), np.empty(0, np.int64)
    starts = np.concatenate([[0], np.flatnonzero(np.diff(a)) + 1])
    lengths = np.diff(np.concatenate([starts, [a.size]]))
    return a[starts], lengths


def run_counts(a: np.ndarray, max_len: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Counts of runs of ones (B) and zeros (G) indexed by length.

    Index 0 is unused.  With ``max_len`` runs longer than it are pooled
    into the last index.
    """
    values, lengths = run_lengths(a)
    top = int(lengths.max()) if lengths.size else 0
    if max_len is not None:
        lengths = np.minimum(lengths, max_len)
        top = max_len
    B = np.bincount(lengths[values == 1], minlength=top + 1)
    G = np.bincount(lengths[values == 0], minlength=top + 1)
    return B, G


def poker_counts(a: np.ndarray, m: int) -> np.ndarray:
    """Occurrences of each m-bit pattern over floor(n/m) disjoint blocks."""
    k = a.size // m
    blocks = a[: k * m].reshape(k, m).astype(np.int64)
    codes = blocks @ (1 << np.arange(m - 1, -1, -1))
    return np.bincount(codes, minlength=2**m)


def poker_statistic(a: np.ndarray, m: int) -> float:
    counts = poker_counts(a, m)
    k = a.size // m
    return float(2**m / k * np.sum(counts.astype(np.float64) ** 2) - k)


def frequency_statistic(a: np.ndarray) -> float:
    n = a.size
    n1 = int(a.sum())
    n0 = n - n1
    return (n0 - n1) ** 2 / n


def serial_statistic(a: np.ndarray) -> float:
    n = a.size
    n1 = int(a.sum())
    n0 = n - n1
    pairs = np.bincount(2 * a[:-1].astype(np.int64) + a[1:], minlength=4)
    sq = float(np.sum(pairs.astype(np.float64) ** 2))
    return 4.0 / (n - 1) * sq - 2.0 / n * (n0 * n0 + n1 * n1) + 1.0


def runs_statistic(a: np.ndarray) -> tuple[float, int]:
    """Chi-square runs statistic and the number K of run lengths used."""
    n = a.size
    B, G = run_counts(a)
    total = 0.0
    K = 0
    i = 1
    while True:
        e = (n - i + 3) / 2 ** (i + 2)
        if e < 5:
            break
        b = B[i] if i < B.size else 0
        g = G[i] if i < G.size else 0
        total += ((b - e) ** 2 + (g - e) ** 2) / e
        K = i
        i += 1
    return total, K


def autocorrelation_statistic(a: np.ndarray, d: int) -> float:
    """Normalized count of positions where the sequence and its shift by d differ."""
    n = a.size
    A = int(np.count_nonzero(a[: n - d] != a[d:]))
    return 2.0 * (A - (n - d) / 2.0) / math.sqrt(n - d)


def menezes_battery(w) -> TestReport:
    a = _bits(w)
    n = a.size
    if n < MENEZES_MIN_LENGTH:
        raise SequenceTooShort(f"basic tests need at least {MENEZES_MIN_LENGTH} bits, got {n}")
    report = TestReport("menezes")
    x1 = frequency_statistic(a)
    report.entries.append(Entry("X1", x1, f"< {X1_MAX}", x1 < X1_MAX))
    x2 = serial_statistic(a)
    report.entries.append(Entry("X2", x2, f"< {X2_MAX}", x2 < X2_MAX))
    for m in (2, 3):
        x3 = poker_statistic(a, m)
        report.entries.append(Entry(f"X3({m})", x3, f"< {X3_MAX[m]}", x3 < X3_MAX[m]))
    x4, _ = runs_statistic(a)
    report.entries.append(Entry("X4", x4, f"< {X4_MAX}", x4 < X4_MAX))
    for d in range(1, n // 2 + 1):
        x5 = autocorrelation_statistic(a, d)
        report.entries.append(Entry(f"X5({d})", x5, f"|X5| < {X5_MAX}", abs(x5) < X5_MAX))
    return report


def _between(v, bounds) -> bool:
    lo, hi = bounds
    return lo < v < hi


def fips140_1(w) -> TestReport:
    a = _bits(w)
    if a.size != FIPS_LENGTH:
        raise WrongLength(f"FIPS 140-1 tests need exactly {FIPS_LENGTH} bits, got {a.size}")
    report = TestReport("fips140-1")
    lo, hi = FIPS_MONOBIT
    n1 = int(a.sum())
    report.entries.append(Entry("n1", float(n1), f"{lo} < n1 < {hi}", _between(n1, FIPS_MONOBIT)))
    x3 = poker_statistic(a, 4)
    lo, hi = FIPS_POKER
    report.entries.append(Entry("X3", x3, f"{lo} < X3 < {hi}", _between(x3, FIPS_POKER)))
    B, G = run_counts(a, max_len=6)
    for i, bounds in FIPS_RUNS.items():
        lo, hi = bounds
        for label, counts in (("B", B), ("G", G)):
            c = int(counts[i])
            report.entries.append(
                Entry(f"{label}{i}", float(c), f"{lo} < {label}{i} < {hi}", _between(c, bounds))
            )
    _, lengths = run_lengths(a)
    longest = int(lengths.max())
    report.entries.append(
        Entry("long_run", float(longest), f"longest run < {FIPS_LONG_RUN}", longest < FIPS_LONG_RUN)
    )
    return report
