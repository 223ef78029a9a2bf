import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linear_sum_assignment

from scriptmetrics.assignment import min_cost_assignment
from scriptmetrics.distinctivity import (
    DEFAULT_WEIGHTS,
    DifferenceWeightTable,
    DistanceMatrix,
    component_difference,
    distance_matrix,
    letter_distance,
    mean_distinctivities,
    pair_sum,
)
from scriptmetrics.model import ORIENTATIONS, Component, ComponentKind as K, ConnectionKind as J, DataError, Letter


def brute_distance(l1, l2, w=DEFAULT_WEIGHTS):
    a, b = list(l1.components), list(l2.components)
    n = max(len(a), len(b))
    a += [None] * (n - len(a))
    b += [None] * (n - len(b))
    best = min(
        sum(0 if x is None and y is None else component_difference(x, y, w) for x, y in zip(a, perm))
        for perm in itertools.permutations(b)
    )
    return best + w.connection_weight * abs(len(l1.connections) - len(l2.connections))


def random_component(rng):
    kind = rng.choice(list(K))
    orient = None if kind is K.POINT else rng.choice((None,) + ORIENTATIONS)
    return Component(kind, orient)


def random_letter(rng, max_comps=6):
    comps = [random_component(rng) for _ in range(rng.randint(1, max_comps))]
    conns = [rng.choice(list(J)) for _ in range(rng.randint(0, 5))]
    return Letter("X", "x", comps, conns)


def test_component_difference_examples():
    line = Component(K.LINE, "N")
    assert component_difference(line, Component(K.LINE, "N")) == 0
    assert component_difference(line, Component(K.LINE, "E")) == 1
    assert component_difference(line, Component(K.ARC, "N")) == 3
    assert component_difference(line, None) == 2
    assert component_difference(None, Component(K.ARC)) == 3
    fixed = DifferenceWeightTable(absence_cost_mode="fixed", absence_cost=5)
    assert component_difference(line, None, fixed) == 5
    with pytest.raises(DataError):
        component_difference(None, None)


def test_component_difference_symmetric_all_pairs():
    comps = [Component(k, o) for k in (K.LINE, K.ARC) for o in (None,) + ORIENTATIONS] + [Component(K.POINT)]
    for x in comps + [None]:
        for y in comps + [None]:
            if x is None and y is None:
                continue
            d = component_difference(x, y)
            assert d == component_difference(y, x) >= 0
            assert (d == 0) == (x == y)


def test_letter_distance_examples():
    a = Letter("A", "a", [Component(K.LINE, "N"), Component(K.ARC, "E")], [])
    b = Letter("B", "b", [Component(K.ARC, "E"), Component(K.LINE, "N")], [])
    c = Letter("C", "c", [Component(K.LINE, "N")], [])
    assert letter_distance(a, b) == 0
    assert letter_distance(a, c) == 3
    assert letter_distance(a, a) == 0
    w = DifferenceWeightTable(connection_weight=2)
    assert letter_distance(Letter("D", "d", c.components, [J.CRISP] * 3), c, w) == 6


def test_weights_json_roundtrip(tmp_path):
    w = DifferenceWeightTable(kind_mismatch=4, orientation_mismatch=2, connection_weight=1)
    path = tmp_path / "w.json"
    path.write_text(w.to_json())
    assert DifferenceWeightTable.from_json(path) == w
    path.write_text('{"bogus": 1}')
    with pytest.raises(DataError, match="unknown weight"):
        DifferenceWeightTable.from_json(path)
    path.write_text('{"kind_mismatch": ')
    with pytest.raises(DataError, match="invalid JSON"):
        DifferenceWeightTable.from_json(path)


def test_assignment_against_scipy():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(1, 8)
        cost = [[rng.randint(0, 20) for _ in range(n)] for _ in range(n)]
        total, cols = min_cost_assignment(cost)
        r, c = linear_sum_assignment(cost)
        assert total == sum(cost[i][j] for i, j in zip(r, c))
        assert sorted(cols) == list(range(n))
        assert total == sum(cost[i][cols[i]] for i in range(n))


def test_assignment_empty():
    assert min_cost_assignment([]) == (0, [])


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_letter_distance_metric_properties(rnd):
    a, b = random_letter(rnd, 5), random_letter(rnd, 5)
    d = letter_distance(a, b)
    assert d == letter_distance(b, a) >= 0
    assert d == brute_distance(a, b)
    shuffled = list(a.components)
    rnd.shuffle(shuffled)
    assert letter_distance(Letter("Y", "y", shuffled, a.connections), b) == d


def _letters():
    return [
        Letter("А", "a", [Component(K.LINE, "NE"), Component(K.LINE, "SE"), Component(K.LINE, "E")], []),
        Letter("І", "i", [Component(K.LINE, "N")], []),
        Letter("О", "o", [Component(K.ARC)], []),
    ]


def test_distance_matrix_and_means():
    from scriptmetrics.model import Alphabet
    m = distance_matrix(Alphabet("t", _letters()))
    assert m.labels == ("А", "І", "О")
    # one orientation mismatch plus two absent lines
    assert m[("А", "І")] == m[("І", "А")] == 1 + 2 * 2
    stats = mean_distinctivities(m)
    for label in m.labels:
        assert stats.means[label] == pytest.approx(m.row_sum(label) / 2)
    assert stats.overall == pytest.approx(2 * pair_sum(m) / (3 * 2))


def test_distance_matrix_validation():
    with pytest.raises(DataError, match=r"\(a,b\)"):
        DistanceMatrix(("a", "b"), ((0, 1), (2, 0)))
    with pytest.raises(DataError, match="square"):
        DistanceMatrix(("a", "b"), ((0, 1),))
    with pytest.raises(DataError, match="diagonal"):
        DistanceMatrix(("a",), ((1,),))
    one = DistanceMatrix(("a",), ((0,),))
    with pytest.raises(DataError):
        mean_distinctivities(one)


def test_bundled_matrix(bundle):
    m = bundle.matrix
    assert len(m) == 33
    assert m[("А", "Б")] == 26
    stats = mean_distinctivities(m)
    assert stats.means["Ж"] == pytest.approx(1319 / 32)
    assert m.row_sum("Ж") == 1319
    assert stats.overall == pytest.approx(2 * pair_sum(m) / (33 * 32))
