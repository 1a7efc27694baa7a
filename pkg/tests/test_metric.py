from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from abho.core import IncompleteGec, from_function
from abho.errors import BadDistances, NotAbHo, NotMetric, NotProductable, NotUltrametric, ParseError, TriangleViolation
from abho.metric import (
    UltraChain,
    as_metric,
    build_ultrametric,
    classify_ultrametric,
    delta_bounds,
    distances,
    embeds,
    embeds_locally,
    from_distances,
    is_ultrametric,
    metric_product_ok,
    place,
    realize,
    signature,
    synth_order,
)
from abho.morph import is_ab_ho
from abho.product import product

import oracles
from conftest import k2


def _incomplete(*painted):
    # vertices 0, 1 unpainted; third vertices 2.. painted to 0 and 1
    n = 2 + len(painted)
    rows = [["0" if i == j else None for j in range(n)] for i in range(n)]
    for c, (ac, bc) in enumerate(painted, start=2):
        rows[0][c] = rows[c][0] = ac
        rows[1][c] = rows[c][1] = bc
    for c, d in itertools.combinations(range(2, n), 2):
        rows[c][d] = rows[d][c] = "1"
    return IncompleteGec(rows, "0", 0, 1)


def test_as_metric_examples(u4):
    assert as_metric(u4).n == 4
    with pytest.raises(TriangleViolation):
        from_distances([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    with pytest.raises(ParseError):
        as_metric(k2("a"))
    with pytest.raises(ParseError):
        as_metric(k2("-1"))


def test_is_ultrametric_examples(u4):
    assert is_ultrametric(as_metric(u4))
    square = from_function(4, lambda i, j: "1.41421356" if abs(i - j) == 2 else "1", "0")
    assert not is_ultrametric(as_metric(square))
    assert is_ultrametric(from_distances([[0, 7], [7, 0]]))


def test_classify_examples(u4):
    assert classify_ultrametric(as_metric(u4)) == UltraChain([(1, 2), ("1/2", 2)])
    assert classify_ultrametric(from_distances([[0, 1, 1], [1, 0, 1], [1, 1, 0]])) == UltraChain([(1, 3)])
    assert classify_ultrametric(build_ultrametric(UltraChain([]))) == UltraChain([])
    with pytest.raises(NotUltrametric):
        classify_ultrametric(from_distances([[0, 1, 1.5], [1, 0, 1], [1.5, 1, 0]]))
    # ultrametric but not homogeneous: distances 2, 2, 1 plus a far point
    D = [[0, 1, 2, 3], [1, 0, 2, 3], [2, 2, 0, 3], [3, 3, 3, 0]]
    with pytest.raises(NotAbHo):
        classify_ultrametric(from_distances(D))


def test_build_examples(u4):
    assert build_ultrametric(UltraChain([(1, 2), ("1/2", 2)])).gec == u4
    M = build_ultrametric(UltraChain([(1, 5)]))
    assert M.n == 5 and M.values() == {Fraction(1)}
    with pytest.raises(ValueError):
        UltraChain([(1, 2), (2, 2)])
    with pytest.raises(ValueError):
        UltraChain([(1, 1)])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=10),
                          st.integers(2, 3)), max_size=3))
def test_ultrametric_round_trip(levels):
    ts = sorted({t for t, _ in levels}, reverse=True)
    ms = dict(levels)
    c = UltraChain([(t, ms[t]) for t in ts])
    M = build_ultrametric(c)
    assert is_ultrametric(M) and is_ab_ho(M.gec)
    assert classify_ultrametric(M) == c


def test_metric_product_ok_examples():
    one, half, big = (from_distances([[0, x], [x, 0]]) for x in (1.0, 1.5, 3.0))
    assert metric_product_ok([one, half])
    d = metric_product_ok([one, big])
    assert not d and d.witness == ("1", "3")
    with pytest.raises(NotProductable):
        metric_product_ok([one, one])


def test_metric_product_ok_implies_metric():
    rng = random.Random(5)
    for _ in range(30):
        vals = rng.sample([Fraction(k, 4) for k in range(1, 17)], 2)
        fs = [from_distances([[0, v], [v, 0]]) for v in vals]
        ok = metric_product_ok(fs)
        G = product([f.gec for f in fs])
        try:
            as_metric(G)
            is_metric = True
        except TriangleViolation:
            is_metric = False
        # two edges: the product is a rectangle with sides a, b and diagonal a
        assert bool(ok) == is_metric


def test_ultra_chain_products_pass():
    for c in ([(4, 2), (3, 3)], [(1, 2), ("1/2", 2), ("1/5", 2)]):
        fs = [from_distances([[0, t], [t, 0]] if m == 2 else [[0, t, t], [t, 0, t], [t, t, 0]]) for t, m in c]
        assert metric_product_ok(fs)


def test_synth_order_examples():
    assert synth_order(["0.3", "0.5", "1.2", "1.6"]) == ["1.2", "1.6", "0.5", "0.3"]
    assert synth_order(["7"]) == ["7"]
    with pytest.raises(ValueError):
        synth_order([])


@settings(max_examples=60, deadline=None)
@given(st.sets(st.fractions(min_value=Fraction(1, 100), max_value=100, max_denominator=100), min_size=1, max_size=8))
def test_synth_order_property(Y):
    order = synth_order(Y)
    assert sorted(order) == sorted(Y)
    for i, j in itertools.combinations(range(len(order)), 2):
        assert order[j] <= 2 * order[i]


def test_delta_bounds_examples():
    assert delta_bounds(_incomplete(("1", "1"))) == (0, 2)
    assert delta_bounds(_incomplete(("1", "2"))) == (1, 3)
    with pytest.raises(NotMetric):
        delta_bounds(_incomplete(("1", "5"), ("1", "1")))


def test_delta_bounds_brackets_completions():
    rng = random.Random(11)
    for _ in range(40):
        pts = np.array([[rng.uniform(-1, 1) for _ in range(2)] for _ in range(4)])
        D = np.sqrt(((pts[:, None] - pts[None]) ** 2).sum(-1))
        q = [[Fraction(round(D[i, j] * 1000), 1000) for j in range(4)] for i in range(4)]
        try:
            full = from_distances(q)
        except TriangleViolation:
            continue
        I = _incomplete(*[(str(q[0][c]), str(q[1][c])) for c in (2, 3)])
        rows = [list(r) for r in I.colors]
        rows[2][3] = rows[3][2] = str(q[2][3])
        lo, hi = delta_bounds(IncompleteGec(rows, "0", 0, 1))
        assert lo <= hi and lo <= full.dist[0][1] <= hi


def test_embedding_examples():
    tri = from_distances([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert not embeds(tri, "euclid", 1) and embeds(tri, "euclid", 2)
    tet = from_distances([[0 if i == j else 1 for j in range(4)] for i in range(4)])
    assert not embeds(tet, "euclid", 2) and embeds(tet, "euclid", 3)
    s = from_distances([[0 if i == j else "2/3" for j in range(3)] for i in range(3)])
    assert embeds(s, "sphere", 1) and not embeds(s, "sphere", 0)
    assert signature(s, "sphere") == (2, 0)
    with pytest.raises(BadDistances):
        embeds(from_distances([[0, 2], [2, 0]]), "sphere", 3)


def test_hyperbolic_examples():
    # an equilateral hyperbolic triangle needs the plane; a geodesic segment does not
    tri = np.array([[0, 1.0, 1.0], [1.0, 0, 1.0], [1.0, 1.0, 0]])
    assert embeds(tri, "hyperbolic", 2) and not embeds(tri, "hyperbolic", 1)
    line = np.array([[0, 1.0, 3.0], [1.0, 0, 2.0], [3.0, 2.0, 0]])
    assert embeds(line, "hyperbolic", 1)
    assert place(line, "hyperbolic", 1) is not None


@pytest.mark.parametrize("space,n", [("euclid", 1), ("euclid", 2), ("euclid", 3),
                                     ("sphere", 1), ("sphere", 2),
                                     ("hyperbolic", 1), ("hyperbolic", 2)])
def test_sampled_spaces_embed_and_round_trip(space, n):
    rng = np.random.default_rng(17 + n)
    for _ in range(15):
        k = int(rng.integers(2, 7))
        X, D = oracles.sample_points(space, n, k, rng)
        assert embeds(D, space, n)
        assert embeds(D, space, n) == embeds_locally(D, space, n)
        for m in range(n):
            assert embeds(D, space, m) == embeds_locally(D, space, m)
        Y = realize(D, space, n)
        assert oracles.relative_error(oracles.model_distances(Y, space), D) <= 1e-7
        assert oracles.relative_error(distances(Y, space), D) <= 1e-7
        assert place(D, space, n) is not None


def test_placement_agrees_with_criterion():
    rng = np.random.default_rng(3)
    for space in ("euclid", "sphere", "hyperbolic"):
        for _ in range(20):
            k = int(rng.integers(3, 6))
            _, D = oracles.sample_points(space, 3 if space == "euclid" else 2, k, rng)
            for m in (1, 2):
                assert embeds(D, space, m) == (place(D, space, m) is not None)


def test_nonmetric_input_does_not_embed():
    # a shortcut-violating matrix fed straight to the criterion
    D = np.array([[0, 1, 5.0], [1, 0, 1], [5.0, 1, 0]])
    assert not embeds(D, "euclid", 3)


def test_square_height_bound():
    sq = from_function(4, lambda i, j: "1.41421356237" if abs(i - j) == 2 else "1", "0")
    assert embeds(as_metric(sq), "euclid", 2) and not embeds(as_metric(sq), "euclid", 1)
