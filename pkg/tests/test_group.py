from __future__ import annotations

import itertools

import pytest

from abho.core import cycle_graph, dual, mono, reversify
from abho.corpus import abho_corpus, all_structures
from abho.errors import InvalidTable, NormalCore, NotSubgroup, NotUniquelyHomogeneous
from abho.group import (
    GroupTable,
    VARIANTS,
    abelian,
    abstran_check,
    boolean_gec,
    bundled_groups,
    core_free_subgroups,
    cyclic,
    dgroup_report,
    dihedral,
    group_by_name,
    group_dgec,
    group_isomorphism,
    has_distinct_out_colors,
    orbital_dgec,
    recognize_boolean,
    recognize_group,
    recovered_automorphisms_are_translations,
    subgroups,
    sym_check,
    symmetric,
    uniq_homo_recover,
    repeated_color_dgec,
)
from abho.morph import automorphisms, canon_struct, is_ab_ho, is_uniquely_homogeneous, isomorphic, structurally_equivalent

import oracles
from conftest import k2


def test_bundled_tables():
    gs = bundled_groups(12)
    assert len(gs) == 24
    assert sorted(g.n for g in bundled_groups(8)) == [1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]
    for g, h in itertools.combinations(gs, 2):
        assert group_isomorphism(g, h) is None
    assert group_by_name("Q8").n == 8 and not group_by_name("Q8").is_abelian()
    with pytest.raises(KeyError):
        group_by_name("M11")


def test_invalid_tables():
    with pytest.raises(InvalidTable):
        GroupTable([[0, 1], [0, 1]], ["e", "x"])
    with pytest.raises(InvalidTable):
        GroupTable([[0, 1, 2], [1, 2, 0], [2, 1, 0]], ["e", "x", "y"])
    t = cyclic(4)
    assert GroupTable.from_dict(t.to_dict()).mul == t.mul


def test_boolean_gec_examples():
    G0 = boolean_gec(0)
    assert G0.n == 1 and not G0.palette
    G = boolean_gec(2)
    assert G.n == 4 and len(G.palette) == 3 and is_ab_ho(G) and len(automorphisms(G)) == 4
    G3 = boolean_gec(3)
    assert has_distinct_out_colors(G3) and is_ab_ho(G3)


def test_recognize_boolean_examples(f2sq, c5):
    r = recognize_boolean(f2sq)
    assert r is not None and r.k == 2
    assert recognize_boolean(c5) is None
    r = recognize_boolean(k2("x"))
    assert r.k == 1 and r.color_map == {"x": "1"}
    assert recognize_boolean(boolean_gec(3)).k == 3


def test_recognize_boolean_exhaustive():
    # every AB-HO structure on <= 4 vertices with distinct colors at each vertex
    hits = 0
    for n in range(1, 5):
        for G in all_structures(n, ["a", "b", "c"]):
            if has_distinct_out_colors(G) and oracles.naive_ab_ho(G.colors):
                r = recognize_boolean(G)
                assert r is not None and 2 ** r.k == n
                hits += 1
            elif not oracles.naive_ab_ho(G.colors):
                assert recognize_boolean(G) is None
    assert hits >= 3


def test_group_dgec_examples(g_min):
    assert structurally_equivalent(group_dgec(cyclic(3), "L"), g_min) is not None
    for k in (1, 2, 3):
        for v in VARIANTS:
            assert group_dgec(abelian(*[2] * k), v).is_symmetric
    S3 = symmetric(3)
    assert isomorphic(group_dgec(S3, "L"), group_dgec(S3, "Lstar")) is None
    with pytest.raises(ValueError):
        group_dgec(S3, "X")


def test_dgroup_report_examples():
    r = dgroup_report(cyclic(4))
    assert all(c.holds for c in r.values())
    assert "Boolean: False" in r["c"].detail and "Abelian: True" in r["d"].detail
    r = dgroup_report(symmetric(3))
    assert all(c.holds for c in r.values()) and r["d"].witness
    r = dgroup_report(abelian(2, 2))
    assert all(c.holds for c in r.values()) and "coincide: True" in r["c"].detail


def test_recognize_group_examples(g_min):
    t = recognize_group(group_dgec(cyclic(5), "L"))
    assert group_isomorphism(t, cyclic(5)) is not None
    t = recognize_group(g_min)
    assert group_isomorphism(t, cyclic(3)) is not None
    assert recognize_group(repeated_color_dgec()) is None
    assert recognize_group(cycle_graph(5)) is None


def test_uniq_homo_recover_examples(f2sq):
    D = group_dgec(cyclic(4), "L")
    R = uniq_homo_recover(D, 0)
    assert group_isomorphism(R.table, cyclic(4)) is not None
    assert R.mu == tuple(D.colors[0])
    assert recovered_automorphisms_are_translations(D, R)
    R = uniq_homo_recover(f2sq, 0)
    assert group_isomorphism(R.table, abelian(2, 2)) is not None
    with pytest.raises(NotUniquelyHomogeneous):
        uniq_homo_recover(mono(3, "c"))


def test_repeated_color_dgec_reversification_is_a_group():
    U = repeated_color_dgec()
    assert is_ab_ho(U) and is_uniquely_homogeneous(U)
    assert not has_distinct_out_colors(U)
    t = recognize_group(reversify(U))
    assert t is not None and t.n == 4
    R = uniq_homo_recover(U)
    assert recovered_automorphisms_are_translations(U, R)


def test_repeated_color_dgec_is_unique_in_exhaustive_search():
    # 4 vertices, 2 colors, directed: uniquely homogeneous AB-HO with a repeated outgoing color
    found = set()
    for G in all_structures(4, ["a", "b"], directed=True):
        if has_distinct_out_colors(G):
            continue
        if oracles.naive_ab_ho(G.colors) and oracles.naive_uniquely_homogeneous(G.colors):
            found.add(canon_struct(G))
    assert found == {canon_struct(repeated_color_dgec())}


def test_reversified_uniquely_homogeneous_corpus():
    seen = 0
    for n in range(1, 5):
        for G in all_structures(n, ["a", "b"], directed=True):
            if oracles.naive_ab_ho(G.colors) and oracles.naive_uniquely_homogeneous(G.colors):
                assert recognize_group(reversify(G)) is not None
                seen += 1
    assert seen >= 4


def test_gmin_examples(g_min):
    assert is_ab_ho(g_min) and g_min.directed and not g_min.is_symmetric
    assert isomorphic(dual(g_min), g_min) is not None
    for n in range(1, 4):
        for G in abho_corpus(n, True):
            if not G.is_symmetric:
                assert structurally_equivalent(G, g_min) is not None


def test_groups_up_to_order_8():
    gs = bundled_groups(8)
    D = {g.name: group_dgec(g, "L") for g in gs}
    for g in gs:
        assert is_ab_ho(D[g.name]) and is_uniquely_homogeneous(D[g.name])
        assert group_isomorphism(recognize_group(D[g.name]), g) is not None
    for g, h in itertools.combinations_with_replacement(gs, 2):
        assert (structurally_equivalent(D[g.name], D[h.name]) is not None) == (group_isomorphism(g, h) is not None)


def test_abstran_examples(c5):
    S3 = symmetric(3)
    H = [x for x in subgroups(S3) if len(x) == 2][0]
    assert abstran_check(S3, H)[0] and sym_check(S3, H)[0]
    D5 = dihedral(5)
    stab = [g for g in range(D5.n) if D5.labels[g] in ("e", "s")]
    assert len(stab) == 2
    assert abstran_check(D5, stab)[0]
    X = orbital_dgec(D5, stab)
    assert X.is_symmetric and structurally_equivalent(X, c5.as_directed()) is not None
    assert abstran_check(cyclic(4), [0])[0]
    with pytest.raises(NotSubgroup):
        abstran_check(cyclic(4), [0, 1])
    with pytest.raises(NormalCore):
        abstran_check(cyclic(4), [0, 2])


def test_abstran_matches_orbital_structure():
    for g in bundled_groups(12):
        for H in core_free_subgroups(g):
            ok, _ = abstran_check(g, sorted(H))
            X = orbital_dgec(g, sorted(H))
            assert ok == bool(is_ab_ho(X) and len(automorphisms(X)) == g.n), (g.name, sorted(H))


def test_a4_fixture_fails():
    A4 = group_by_name("A4")
    H = next(sorted(S) for S in subgroups(A4) if len(S) == 3)
    ok, m = abstran_check(A4, H)
    assert not ok and m
    assert sym_check(A4, H)[0]


def test_no_failure_up_to_order_8():
    for g in bundled_groups(8):
        for H in core_free_subgroups(g):
            assert abstran_check(g, sorted(H))[0], (g.name, sorted(H))


def test_regular_action_matches_report():
    for g in bundled_groups(8):
        assert abstran_check(g, [g.id])[0] == dgroup_report(g)["f"].holds
