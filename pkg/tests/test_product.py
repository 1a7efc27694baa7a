from __future__ import annotations

import itertools
import random

import pytest

from abho.core import cycle_graph, mono, recolor
from abho.corpus import abho_corpus
from abho.errors import NotProductable
from abho.itp import has_itp
from abho.morph import is_ab_ho, isomorphic
from abho.product import ProductSpec, product, productable, vertex_tuples

from conftest import k2


def test_productable_examples():
    assert productable([k2("a"), k2("b")])
    d = productable([k2("a"), k2("a")])
    assert not d and "share" in d.witness
    assert not productable([])
    assert not productable(ProductSpec([]))
    with pytest.raises(NotProductable):
        product([k2("a"), k2("a")])


def test_product_of_two_edges():
    G = product([k2("a"), k2("b")])
    assert vertex_tuples([k2("a"), k2("b")]) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    b_pairs = {frozenset((i, j)) for i in range(4) for j in range(4) if i != j and G[i, j] == "b"}
    a_pairs = {frozenset((i, j)) for i in range(4) for j in range(4) if i != j and G[i, j] == "a"}
    assert b_pairs == {frozenset((0, 1)), frozenset((2, 3))}
    assert len(a_pairs) == 4
    # a-part is a 4-cycle: every vertex meets two a-edges
    assert all(sum(G[i, j] == "a" for j in range(4)) == 2 for i in range(4))


def test_single_factor_and_associativity():
    assert product([k2("a")]) == k2("a")
    A, B, C = k2("a"), k2("b"), k2("c")
    flat = product([A, B, C])
    assert isomorphic(product([product([A, B]), C]), flat) is not None
    assert isomorphic(product([A, product([B, C])]), flat) is not None


def test_order_sensitivity():
    assert isomorphic(product([k2("a"), k2("b")]), product([k2("b"), k2("a")])) is None


def _disjoint(G, tag):
    return recolor(G, {c: f"{tag}{c}" for c in G.palette})


def test_itp_preserved_and_triangle_transfer():
    c5 = cycle_graph(5)
    fs = [_disjoint(mono(3, "x"), "p"), _disjoint(c5, "q")]
    G = product(fs)
    assert has_itp(G)
    # (a,a,b) triangles: inside a factor, or a from an earlier factor and b later
    found = set()
    for x, y, z in itertools.permutations(range(G.n), 3):
        if G[x, z] == G[y, z] != G[x, y]:
            found.add((G[x, z], G[x, y]))
    inside = set()
    for f in fs:
        for x, y, z in itertools.permutations(range(f.n), 3):
            if f[x, z] == f[y, z] != f[x, y]:
                inside.add((f[x, z], f[x, y]))
    cross = {(a, b) for a in fs[0].palette for b in fs[1].palette}
    assert found == inside | cross


def test_random_products_preserve_ab_ho():
    rng = random.Random(7)
    corpus = abho_corpus(4, False)
    for _ in range(20):
        k = rng.randint(1, 3)
        fs = [_disjoint(rng.choice(corpus), f"f{i}_") for i in range(k)]
        assert is_ab_ho(product(fs))
