"""Letter complexity by the composition method, the complexity distribution
and a runs test about the uniform expectation."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import Alphabet, DataError, FrequencyTable, Letter, table_moments


def letter_complexity(letter: Letter) -> int:
    """Sum of component weights plus connection weights."""
    return sum(c.kind.weight for c in letter.components) + sum(c.weight for c in letter.connections)


@dataclass(frozen=True)
class ComplexityStats:
    complexities: dict[str, int]
    mean: float
    sd: float
    distribution: FrequencyTable


def complexity_distribution(alphabet: Alphabet) -> FrequencyTable:
    """Histogram of letter complexities, densified over [min C, max C]."""
    if not len(alphabet):
        raise DataError("empty alphabet")
    return FrequencyTable.from_values(letter_complexity(l) for l in alphabet).densified()


def complexity_stats(alphabet: Alphabet) -> ComplexityStats:
    dist = complexity_distribution(alphabet)
    per_letter = {l.glyph: letter_complexity(l) for l in alphabet}
    if len(per_letter) > 1:
        m = table_moments(dist, "sample")
        mean, sd = m.mean, m.sd
    else:
        mean, sd = float(next(iter(per_letter.values()))), 0.0
    return ComplexityStats(per_letter, mean, sd, dist)


@dataclass(frozen=True)
class RunsTestResult:
    expected_frequency: float  # uniform expectation E = I / (R + 1)
    runs: int
    n: int
    n_below: int
    n_above: int
    expected_runs: float
    sigma_runs: float
    z: float
    labels: tuple[bool, ...]  # True where the frequency is above E

    @property
    def significant(self) -> bool:
        return self.z >= 1.96

    # conventional names
    @property
    def n1(self) -> int:
        return self.n_below

    @property
    def n2(self) -> int:
        return self.n_above


def count_runs(labels) -> int:
    runs = 0
    prev = object()
    for lab in labels:
        if lab != prev:
            runs += 1
            prev = lab
    return runs


def runs_test_uniform(table: FrequencyTable) -> RunsTestResult:
    """Runs test of the frequencies about the uniform expectation.

    ``table`` must be densified; zero-count classes inside the range take part.
    A frequency exactly equal to E counts as below.
    """
    items = table.items()
    total = table.n
    if total < 1:
        raise DataError("empty table")
    support = [x for x, _ in items]
    if support != list(range(support[0], support[-1] + 1)):
        raise DataError("table support is not contiguous; densify it first")
    n = len(items)
    expected = total / n
    labels = tuple(f > expected for _, f in items)
    n_above = sum(labels)
    n_below = n - n_above
    if n_above == 0 or n_below == 0:
        raise DataError("degenerate: all frequencies on one side of the expectation")
    r = count_runs(labels)
    prod = 2 * n_below * n_above
    expected_runs = 1 + prod / n
    sigma = math.sqrt(prod * (prod - n) / (n * n * (n - 1)))
    if sigma == 0:
        raise DataError("degenerate: runs variance is zero (two classes, one on each side)")
    z = (abs(r - expected_runs) - 0.5) / sigma
    return RunsTestResult(expected, r, n, n_below, n_above, expected_runs, sigma, z, labels)
