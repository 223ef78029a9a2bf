"""Mean orthographic uncertainty and the two-language z-test."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import DataError, FrequencyTable, table_moments

Z_CRITICAL = 1.96
VARIANCE_CONSTANT = 0.48


@dataclass(frozen=True)
class UncertaintyStats:
    u_bar: float  # bits
    n: int
    mean: float
    variance: float  # population convention
    v: float  # estimated variance of u_bar
    label: str = ""


def mean_uncertainty(table: FrequencyTable, label: str = "") -> UncertaintyStats:
    """Average of log2(number of representations) over phonemes, with the
    variance estimate s^2 / (0.48 N xbar^2)."""
    table = table.nonzero()
    if not table:
        raise DataError("empty table")
    if table.support[0] < 1:
        raise DataError("a phoneme cannot have zero graphemic representations")
    n = table.n
    u_bar = sum(f * math.log2(x) for x, f in table.items()) / n
    mom = table_moments(table, "population")
    v = mom.variance / (VARIANCE_CONSTANT * n * mom.mean**2)
    return UncertaintyStats(u_bar, n, mom.mean, mom.variance, v, label)


@dataclass(frozen=True)
class ComparisonResult:
    languages: tuple[str, str]
    difference: float  # U1 - U2, sign kept
    z: float  # absolute value

    @property
    def significant(self) -> bool:
        return self.z > Z_CRITICAL


def compare_uncertainty(u1: float, v1: float, u2: float, v2: float, *,
                        labels: tuple[str, str] = ("", ""),
                        variance_combination: str = "sum") -> ComparisonResult:
    """z = |U1 - U2| / sqrt(V1 + V2), or sqrt(V1 - V2) in ``"difference"`` mode."""
    if variance_combination == "sum":
        combined = v1 + v2
    elif variance_combination == "difference":
        combined = v1 - v2
    else:
        raise ValueError(f"unknown variance combination {variance_combination!r}")
    diff = u1 - u2
    if combined <= 0:
        if variance_combination == "sum" and diff == 0:
            return ComparisonResult(labels, 0.0, 0.0)
        raise DataError(
            f"combined variance {combined:.6g} is not positive "
            f"(V1={v1:.6g}, V2={v2:.6g}, mode={variance_combination})"
        )
    return ComparisonResult(labels, diff, abs(diff) / math.sqrt(combined))


def compare_stats(s1: UncertaintyStats, s2: UncertaintyStats, variance_combination: str = "sum") -> ComparisonResult:
    return compare_uncertainty(s1.u_bar, s1.v, s2.u_bar, s2.v, labels=(s1.label, s2.label),
                               variance_combination=variance_combination)


def comparison_table(target: UncertaintyStats, others, variance_combination: str = "sum") -> list[ComparisonResult]:
    """Compare ``target`` against each ``(label, u_bar, v)`` in ``others``."""
    return [
        compare_uncertainty(target.u_bar, target.v, u, v, labels=(target.label, label),
                            variance_combination=variance_combination)
        for label, u, v in others
    ]
