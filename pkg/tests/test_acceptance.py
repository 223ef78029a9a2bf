"""End-to-end checks against the reference values.

Each test records a PASS/FAIL line printed in the terminal summary.
"""

import csv
import itertools
import random
from pathlib import Path

import numpy as np
import pytest

from scriptmetrics.complexity import complexity_distribution, complexity_stats, letter_complexity, runs_test_uniform
from scriptmetrics.distinctivity import component_difference, letter_distance, mean_distinctivities
from scriptmetrics.distributions import (
    POISSON,
    SS_GEOMETRIC,
    PoissonParams,
    SSGeometricParams,
    a_upper,
    evaluate_fit,
    fit_discrete,
    poisson_pmf,
    ss_geometric_pmf,
)
from scriptmetrics.model import ORIENTATIONS, Component, ComponentKind, ConnectionKind, FrequencyTable, Letter
from scriptmetrics.model import representation_histogram, table_moments
from scriptmetrics.special import chi_square_sf
from scriptmetrics.uncertainty import compare_uncertainty, mean_uncertainty

FIXTURES = Path(__file__).parent / "fixtures"

TABLE3 = {1: 10, 2: 12, 3: 9, 4: 2, 5: 2, 6: 3}
TABLE6 = {2: 1, 3: 0, 4: 1, 5: 0, 6: 2, 7: 4, 8: 1, 9: 2, 10: 4, 11: 2, 12: 1, 13: 3, 14: 4,
          15: 1, 16: 4, 17: 0, 18: 1, 19: 0, 20: 0, 21: 0, 22: 0, 23: 0, 24: 0, 25: 1, 26: 1}


def read_fixture(name):
    with open(FIXTURES / name, encoding="utf-8") as fh:
        return list(csv.DictReader(line for line in fh if not line.startswith("#")))


@pytest.mark.criterion("1. complexity")
def test_complexity(bundle):
    reference = {r["glyph"]: int(r["complexity"]) for r in read_fixture("complexity_column.csv")}
    computed = {l.glyph: letter_complexity(l) for l in bundle.alphabet}
    mismatched = {g for g in reference if computed[g] != reference[g]}
    assert mismatched == {"К"}
    assert computed["К"] == 15
    assert complexity_distribution(bundle.alphabet) == TABLE6
    stats = complexity_stats(bundle.alphabet)
    assert round(stats.mean, 4) == 11.7879
    assert stats.sd == pytest.approx(5.24, abs=0.005)


@pytest.mark.criterion("2. runs test")
def test_runs(bundle):
    res = runs_test_uniform(complexity_stats(bundle.alphabet).distribution)
    assert res.expected_frequency == pytest.approx(1.32, abs=0.005)
    assert (res.runs, res.n1, res.n2) == (9, 17, 8)
    assert res.expected_runs == pytest.approx(11.88, abs=0.005)
    assert res.z == pytest.approx(1.13, abs=0.02)
    assert not res.significant


@pytest.mark.criterion("3. ss-geometric at reference parameters")
def test_ss_reference():
    fit = evaluate_fit(FrequencyTable(TABLE3), SS_GEOMETRIC, SSGeometricParams(0.5737, 0.7105), 3)
    assert fit.classes[-1].open and fit.classes[-1].x == 6
    assert [c.expected for c in fit.classes] == pytest.approx([10.29, 10.99, 7.50, 4.40, 2.39, 2.44], abs=0.01)
    assert fit.chi_square == pytest.approx(1.90, abs=0.05)
    assert fit.p_value == pytest.approx(0.59, abs=0.01)
    assert fit.df_for("classes-1") == 5
    assert fit.p_value_at(5) == pytest.approx(0.86, abs=0.01)


@pytest.mark.criterion("4. ss-geometric chi-square minimum")
def test_ss_fit():
    fit = fit_discrete(FrequencyTable(TABLE3), SS_GEOMETRIC, "chisq-min")
    assert fit.chi_square <= 1.95
    assert fit.params.p == pytest.approx(0.5737, abs=0.03)
    assert fit.params.a == pytest.approx(0.7105, abs=0.03)


@pytest.mark.criterion("5. poisson connections")
def test_poisson(bundle):
    table = bundle.connections
    assert table == {0: 2, 1: 6, 2: 10, 3: 8, 4: 5, 5: 1, 6: 1}
    fit = evaluate_fit(table, POISSON, PoissonParams(2.49), 5)
    assert fit.classes[-1].open and fit.classes[-1].x == 6
    assert fit.chi_square == pytest.approx(1.52, abs=0.05)
    assert fit.p_value == pytest.approx(0.91, abs=0.01)
    assert 2.45 <= fit_discrete(table, POISSON, "chisq-min").params.lam <= 2.53
    assert fit_discrete(table, POISSON, "moment").params.lam == 81 / 33


@pytest.mark.criterion("6. orthographic uncertainty")
def test_uncertainty(bundle):
    hist = representation_histogram(bundle.mapping)
    assert hist == TABLE3
    s = mean_uncertainty(hist)
    assert s.u_bar == pytest.approx(1.1227, abs=1e-4)
    assert s.mean == pytest.approx(2.5526, abs=1e-4)
    assert table_moments(hist, "population").variance == pytest.approx(2.1420, abs=5e-4)
    assert s.v == pytest.approx(0.018022, abs=1e-5)


@pytest.mark.criterion("7. distinctivity means")
def test_distinctivity(bundle):
    stats = mean_distinctivities(bundle.matrix)
    assert stats.means["Ж"] == pytest.approx(41.22, abs=0.005)
    assert stats.overall == pytest.approx(22.55, abs=0.01)
    reference = {r["glyph"]: float(r["mean"]) for r in read_fixture("mean_distinctivity.csv")}
    off = {g: (round(stats.means[g], 2), v) for g, v in reference.items() if abs(stats.means[g] - v) > 0.005}
    assert not off, f"{len(off)} of 33 means differ: {off}"


def _random_letter(rng):
    comps = []
    for _ in range(rng.randint(1, 6)):
        kind = rng.choice(list(ComponentKind))
        orient = None if kind is ComponentKind.POINT else rng.choice((None,) + ORIENTATIONS)
        comps.append(Component(kind, orient))
    conns = [rng.choice(list(ConnectionKind)) for _ in range(rng.randint(0, 4))]
    return Letter("X", "x", comps, conns)


def _exhaustive(l1, l2):
    a, b = list(l1.components), list(l2.components)
    n = max(len(a), len(b))
    a += [None] * (n - len(a))
    b += [None] * (n - len(b))
    return min(
        sum(0 if x is None and y is None else component_difference(x, y) for x, y in zip(a, perm))
        for perm in itertools.permutations(b)
    )


@pytest.mark.criterion("8. matching oracle")
def test_matching():
    rng = random.Random(20080101)
    pairs = [(_random_letter(rng), _random_letter(rng)) for _ in range(250)]
    assert sum(max(len(a.components), len(b.components)) == 6 for a, b in pairs) > 10
    bad = [(a, b) for a, b in pairs if letter_distance(a, b) != _exhaustive(a, b)]
    assert not bad


@pytest.mark.criterion("9. distribution properties")
def test_distribution_properties():
    rng = np.random.default_rng(9)
    box = [(1.0, 0.0), (0.05, 0.0), (0.05, a_upper(0.05)), (0.5, 1.0), (0.999, 0.0), (0.999, a_upper(0.999))]
    while len(box) < 100:
        p = float(rng.uniform(0.05, 1.0))
        box.append((p, float(rng.uniform(0, 1)) * a_upper(p)))
    for p, a in box:
        prm = SSGeometricParams(p, a)
        total = sum(ss_geometric_pmf(prm, x) for x in range(1, 1500))
        assert abs(total - 1) < 1e-9, (p, a, total)
    for lam in (0.5, 2.49, 7.0, 25.0):
        prm = PoissonParams(lam)
        mean = sum(x * poisson_pmf(prm, x) for x in range(0, 300))
        assert abs(mean - lam) < 1e-9
    for df in range(1, 21):
        vals = [chi_square_sf(x / 10, df) for x in range(0, 1000)]
        assert all(u >= v for u, v in zip(vals, vals[1:]))


@pytest.mark.criterion("10. uncertainty comparison z-values")
def test_comparison(bundle):
    target = mean_uncertainty(representation_histogram(bundle.mapping))
    reference = {r["label"]: float(r["z"]) for r in read_fixture("uncertainty_z.csv")}
    # variances in the bundled comparison file are back-solved, so this is a consistency check
    for label, u, v in bundle.comparison:
        res = compare_uncertainty(target.u_bar, target.v, u, v, variance_combination="sum")
        assert res.z == pytest.approx(reference[label], abs=0.01), label
