import itertools
from fractions import Fraction
import math

import pytest
from hypothesis import given, strategies as st

from scriptmetrics.complexity import (
    complexity_distribution,
    complexity_stats,
    count_runs,
    letter_complexity,
    runs_test_uniform,
)
from scriptmetrics.model import (
    Alphabet,
    Component,
    ComponentKind as K,
    ConnectionKind as J,
    DataError,
    FrequencyTable,
    Letter,
)

TABLE6 = {2: 1, 3: 0, 4: 1, 5: 0, 6: 2, 7: 4, 8: 1, 9: 2, 10: 4, 11: 2, 12: 1, 13: 3, 14: 4,
          15: 1, 16: 4, 17: 0, 18: 1, 19: 0, 20: 0, 21: 0, 22: 0, 23: 0, 24: 0, 25: 1, 26: 1}


def letter(comps, conns=(), glyph="X"):
    return Letter(glyph, "x", [Component(k) for k in comps], conns)


def test_examples():
    assert letter_complexity(letter([K.LINE] * 3, [J.CRISP] * 3)) == 12
    assert letter_complexity(letter([K.LINE])) == 2
    # К: 2 arcs + 2 lines, 2 crisp + 1 continuous
    assert letter_complexity(letter([K.ARC, K.ARC, K.LINE, K.LINE], [J.CRISP, J.CRISP, J.CONTINUOUS])) == 15


def test_bundled_letters(bundle):
    got = {l.glyph: letter_complexity(l) for l in bundle.alphabet}
    assert got["А"] == 12 and got["І"] == 2 and got["К"] == 15 and got["Ж"] == 26
    assert sum(got.values()) == 389
    dist = complexity_distribution(bundle.alphabet)
    assert dist == TABLE6
    assert sum(x * f for x, f in dist.items()) == 389


def test_distribution_small():
    assert complexity_distribution(Alphabet("i", [letter([K.LINE], glyph="І")])) == {2: 1}
    two = Alphabet("t", [letter([K.ARC], glyph="A"), letter([K.ARC], glyph="B")])
    assert complexity_distribution(two) == {3: 2}
    with pytest.raises(DataError):
        complexity_distribution(Alphabet("e", []))


def test_stats(bundle):
    s = complexity_stats(bundle.alphabet)
    assert s.mean == pytest.approx(11.7879, abs=1e-4)
    assert s.sd == pytest.approx(5.2426, abs=1e-4)
    assert s.distribution.n == 33


kinds = st.lists(st.sampled_from(list(K)), min_size=1, max_size=8)
conns = st.lists(st.sampled_from(list(J)), max_size=8)


@given(kinds, conns, st.randoms())
def test_order_independent(ks, cs, rnd):
    base = letter_complexity(letter(ks, cs))
    rnd.shuffle(ks)
    rnd.shuffle(cs)
    assert letter_complexity(letter(ks, cs)) == base >= 1


def _hand_runs(freqs):
    """Runs statistics computed directly with exact fractions."""
    n = len(freqs)
    e = Fraction(sum(freqs), n)
    labels = [f > e for f in freqs]
    r = 1 + sum(a != b for a, b in zip(labels, labels[1:]))
    n2 = sum(labels)
    n1 = n - n2
    er = 1 + Fraction(2 * n1 * n2, n)
    var = Fraction(2 * n1 * n2 * (2 * n1 * n2 - n), n * n * (n - 1))
    return r, n1, n2, er, (abs(r - er) - Fraction(1, 2)) / math.sqrt(var)


def test_runs_table6():
    res = runs_test_uniform(FrequencyTable(TABLE6))
    assert res.expected_frequency == pytest.approx(1.32)
    assert (res.runs, res.n, res.n1, res.n2) == (9, 25, 17, 8)
    assert res.expected_runs == pytest.approx(11.88)
    assert res.z == pytest.approx(1.12458, abs=1e-5)
    assert res.z == pytest.approx(float(_hand_runs(list(TABLE6.values()))[4]))
    assert not res.significant


def test_runs_alternating():
    res = runs_test_uniform(FrequencyTable({1: 0, 2: 2, 3: 0, 4: 2}))
    assert res.runs == 4 == res.n
    assert res.z == pytest.approx(0.5 / math.sqrt(2 / 3))


@pytest.mark.parametrize("pos, runs", [(0, 2), (1, 3), (2, 3), (3, 3), (4, 2)])
def test_runs_single_peak(pos, runs):
    freqs = [0] * 5
    freqs[pos] = 5
    res = runs_test_uniform(FrequencyTable(dict(enumerate(freqs, 1))))
    r, n1, n2, er, z = _hand_runs(freqs)
    assert res.runs == r == runs
    assert (res.n1, res.n2) == (n1, n2) == (4, 1)
    assert res.z == pytest.approx(z)


def test_runs_tie_counts_below():
    # E = 2 exactly; the 2s are "below"
    res = runs_test_uniform(FrequencyTable({1: 2, 2: 3, 3: 1, 4: 2}))
    assert res.labels == (False, True, False, False)


def test_runs_errors():
    with pytest.raises(DataError, match="degenerate"):
        runs_test_uniform(FrequencyTable({1: 2, 2: 2, 3: 2}))
    with pytest.raises(DataError, match="densify"):
        runs_test_uniform(FrequencyTable({1: 2, 3: 0, 4: 1}))


@given(st.lists(st.integers(0, 9), min_size=3, max_size=30))
def test_runs_properties(freqs):
    if sum(freqs) == 0:
        return
    table = FrequencyTable(dict(enumerate(freqs)))
    try:
        res = runs_test_uniform(table)
    except DataError:
        return
    assert 1 <= res.runs <= res.n
    assert res.expected_runs <= res.n / 2 + 1
    flipped = [not x for x in res.labels]
    assert count_runs(flipped) == res.runs
    # z depends on (n1, n2) symmetrically
    r2 = 1 + 2 * res.n2 * res.n1 / res.n
    assert r2 == pytest.approx(res.expected_runs)
