from __future__ import annotations

import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from abho.core import Gec, cycle_graph, from_function, mono, recolor, relabel
from abho.corpus import abho_corpus, all_structures
from abho.errors import KindMismatch, NotAbHo, NotAMorphism
from abho.group import boolean_gec, cyclic, group_dgec
from abho.morph import (
    automorphisms,
    canon,
    canon_struct,
    extend_to_automorphism,
    is_ab_ho,
    is_partial_morphism,
    is_uniquely_homogeneous,
    isomorphic,
    structurally_equivalent,
)

import oracles
from conftest import k2
from test_core import structures


def test_partial_morphism_examples(c5):
    assert is_partial_morphism(c5, c5, {i: i for i in range(5)})
    assert not is_partial_morphism(c5, c5, {0: 0, 1: 2})
    assert is_partial_morphism(c5, c5, {0: 1, 1: 2})
    with pytest.raises(KindMismatch):
        is_partial_morphism(c5, c5.as_directed(), {})


def test_extend_examples(f2sq, p4, c5):
    # vertex order of boolean_gec(2) is 00, 01, 10, 11
    p = extend_to_automorphism(f2sq, {0: 3})
    assert p == (3, 2, 1, 0)
    assert extend_to_automorphism(p4, {0: 0, 3: 2}) is None
    assert extend_to_automorphism(c5, {}) is not None
    with pytest.raises(NotAMorphism):
        extend_to_automorphism(c5, {0: 0, 1: 2})


def test_p4_endpoint_map_brute_force(p4):
    # no permutation of the 4-path fixes 0 and sends 3 to 2
    auts = oracles.brute_automorphisms(p4.colors)
    assert not any(p[0] == 0 and p[3] == 2 for p in auts)


def test_ab_ho_examples(c5, p4):
    assert is_ab_ho(c5)
    d = is_ab_ho(p4)
    assert not d
    w = d.witness
    assert is_partial_morphism(p4, p4, w)
    # the witness has no one-point extension
    for b in set(range(4)) - set(w):
        for t in set(range(4)) - set(w.values()):
            assert not is_partial_morphism(p4, p4, {**w, b: t})
    for n in range(7):
        assert is_ab_ho(mono(n, "x"))


def test_uniquely_homogeneous_examples(f2sq):
    assert is_uniquely_homogeneous(f2sq)
    assert not is_uniquely_homogeneous(mono(3, "c"))
    assert is_uniquely_homogeneous(group_dgec(cyclic(4), "L"))
    with pytest.raises(NotAbHo):
        is_uniquely_homogeneous(cycle_graph(6))


def test_automorphism_examples(c5):
    assert len(automorphisms(c5)) == 10
    assert set(automorphisms(c5)) == oracles.brute_automorphisms(c5.colors)
    assert len(automorphisms(boolean_gec(3))) == 8
    assert set(automorphisms(mono(1, "x"))) == {(0,)}


def test_isomorphism_examples(c5):
    rot = relabel(c5, [1, 2, 3, 4, 0])
    assert isomorphic(c5, rot) is not None
    assert isomorphic(k2("a"), k2("b")) is None


def test_color_swap_isomorphism():
    # C5 is self-complementary, so its color swap is an isomorphic copy;
    # the star K_{1,3} is not, so its swap is only structurally equivalent
    c5 = cycle_graph(5)
    assert isomorphic(c5, recolor(c5, {"1": "-1", "-1": "1"})) is not None
    P = from_function(4, lambda i, j: "1" if 0 in (i, j) else "-1", "0")
    Q = recolor(P, {"1": "-1", "-1": "1"})
    assert isomorphic(P, Q) is None
    assert structurally_equivalent(P, Q) is not None


def test_structural_equivalence_examples(c5, g_min):
    swapped = recolor(c5, {"1": "-1", "-1": "1"})
    vmap, cmap = structurally_equivalent(c5, swapped)
    assert all(cmap[c5[i, j]] == swapped[vmap[i], vmap[j]] for i in range(5) for j in range(5))
    assert structurally_equivalent(g_min, group_dgec(cyclic(3), "L")) is not None
    assert structurally_equivalent(mono(2, "a"), mono(3, "a")) is None


def test_canon_examples(c5):
    assert canon(c5) == canon(relabel(c5, [2, 4, 1, 0, 3]))
    assert canon_struct(c5) == canon_struct(recolor(c5, {"1": "-1", "-1": "1"}))
    assert canon(k2("a")) != canon(k2("b"))
    assert canon_struct(k2("a")) == canon_struct(k2("b"))


def test_canon_is_complete_invariant_small():
    # every 3-vertex directed 2-colored structure against every other
    gs = []
    for combo in itertools.product("ab", repeat=6):
        it = iter(combo)
        rows = [["0" if i == j else None for j in range(3)] for i in range(3)]
        for i, j in itertools.permutations(range(3), 2):
            rows[i][j] = next(it)
        gs.append(Gec(rows, "0", True))
    for G, H in itertools.combinations(gs, 2):
        assert (canon(G) == canon(H)) == oracles.brute_isomorphic(G.colors, H.colors)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_canon_complete_on_exhaustive_corpus(n):
    reps = all_structures(n, ["a", "b", "c"])
    keys = [canon(G) for G in reps]
    assert len(set(keys)) == len(keys)
    for G, H in itertools.combinations(reps, 2):
        assert not oracles.brute_isomorphic(G.colors, H.colors)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_directed_oracle_agreement(n):
    for G in all_structures(n, ["a", "b", "c"], directed=True):
        assert bool(is_ab_ho(G)) == oracles.naive_ab_ho(G.colors)


@settings(max_examples=80, deadline=None)
@given(structures(max_n=5))
def test_automorphisms_form_group(G):
    A = automorphisms(G)
    assert A.is_group()
    assert math.factorial(G.n) % len(A) == 0
    if G.n <= 4:
        assert set(A) == oracles.brute_automorphisms(G.colors)


@settings(max_examples=80, deadline=None)
@given(structures(max_n=4))
def test_ab_ho_matches_naive_oracle(G):
    assert bool(is_ab_ho(G)) == oracles.naive_ab_ho(G.colors)


@settings(max_examples=60, deadline=None)
@given(structures(max_n=5), st.randoms(use_true_random=False))
def test_structural_equivalence_under_scrambling(G, rnd):
    perm = list(range(G.n))
    rnd.shuffle(perm)
    pal = sorted(G.palette)
    new = [f"q{i}" for i in range(len(pal))]
    rnd.shuffle(new)
    H = recolor(relabel(G, perm), dict(zip(pal, new)))
    r = structurally_equivalent(G, H)
    assert r is not None
    vmap, cmap = r
    assert all(cmap.get(G[i, j], G[i, j]) == H[vmap[i], vmap[j]]
               for i in range(G.n) for j in range(G.n) if i != j)


def test_ab_ho_corpus_properties():
    for directed in (False, True):
        for G in abho_corpus(6, directed):
            A = automorphisms(G)
            # vertex transitive
            assert A.orbits() == [list(range(G.n))]
            # self-morphisms found by search are onto
            for u, v in itertools.product(range(G.n), repeat=2):
                p = extend_to_automorphism(G, {u: v})
                assert p is not None and sorted(p) == list(range(G.n))


def test_uniquely_homogeneous_matches_oracle():
    for directed in (False, True):
        for G in abho_corpus(5, directed):
            assert is_uniquely_homogeneous(G) == oracles.naive_uniquely_homogeneous(G.colors)


def test_large_product_decision_is_fast():
    import time
    from abho.product import product
    fs = [recolor(cycle_graph(5), {"1": f"e{k}", "-1": f"n{k}"}) for k in range(3)]
    G = product(fs)
    t = time.perf_counter()
    assert is_ab_ho(G)
    assert time.perf_counter() - t < 5
    rnd = random.Random(1)
    perm = list(range(G.n))
    rnd.shuffle(perm)
    assert isomorphic(G, relabel(G, perm)) is not None
