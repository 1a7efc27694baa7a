"""Structures induced by groups.

Covers Boolean groups as undirected structures, the four directed
structures of an arbitrary group and their recognition, recovery of the
group behind a uniquely homogeneous structure, and absolute transitivity of
coset actions.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .core import Gec, from_function
from .errors import InvalidTable, NormalCore, NotSubgroup, NotUniquelyHomogeneous
from .morph import (
    automorphisms,
    extend_to_automorphism,
    is_ab_ho,
    is_uniquely_homogeneous,
    isomorphic,
)


@dataclass(frozen=True)
class GroupTable:
    """Cayley table on elements 0..n-1; ``mul[a][b]`` is the product ab."""

    mul: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    name: str = ""

    def __post_init__(self):
        mul = tuple(tuple(int(x) for x in r) for r in self.mul)
        object.__setattr__(self, "mul", mul)
        labels = tuple(str(x) for x in self.labels) if self.labels else tuple(map(str, range(len(mul))))
        object.__setattr__(self, "labels", labels)
        n = len(mul)
        if n == 0 or any(len(r) != n for r in mul) or len(labels) != n:
            raise InvalidTable("table must be a nonempty square with one label per element")
        if len(set(labels)) != n:
            raise InvalidTable("labels repeat")
        if any(not 0 <= x < n for r in mul for x in r):
            raise InvalidTable("entry out of range")
        ids = [e for e in range(n) if all(mul[e][x] == x == mul[x][e] for x in range(n))]
        if not ids:
            raise InvalidTable("no identity")
        e = ids[0]
        for x in range(n):
            if sorted(mul[x]) != list(range(n)):
                raise InvalidTable(f"row {x} is not a permutation")
        for a, b, c in itertools.product(range(n), repeat=3):
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                raise InvalidTable(f"not associative at {(a, b, c)}")
        object.__setattr__(self, "id", e)
        object.__setattr__(self, "inv", tuple(mul[x].index(e) for x in range(n)))

    id: int = field(init=False, default=0)
    inv: tuple[int, ...] = field(init=False, default=())

    @property
    def n(self) -> int:
        return len(self.mul)

    def __len__(self) -> int:
        return self.n

    def is_abelian(self) -> bool:
        m = self.mul
        return all(m[a][b] == m[b][a] for a in range(self.n) for b in range(self.n))

    def is_boolean(self) -> bool:
        return all(self.mul[x][x] == self.id for x in range(self.n))

    def to_dict(self) -> dict:
        return {"order": self.n, "mul": [list(r) for r in self.mul], "labels": list(self.labels)}

    @classmethod
    def from_dict(cls, d: Mapping) -> "GroupTable":
        mul = d["mul"]
        if "order" in d and d["order"] != len(mul):
            raise InvalidTable("order does not match the table")
        return cls(mul, d.get("labels") or (), d.get("name", ""))


def group_isomorphism(G: GroupTable, H: GroupTable) -> tuple[int, ...] | None:
    """An isomorphism G -> H as an image list, by backtracking over images of
    a generating set."""
    if G.n != H.n or G.is_abelian() != H.is_abelian():
        return None
    gens = _generators(G)
    order_G, order_H = _orders(G), _orders(H)
    cands = [[h for h in range(H.n) if order_H[h] == order_G[g]] for g in gens]
    for imgs in itertools.product(*cands):
        phi = _extend_hom(G, H, dict(zip(gens, imgs)))
        if phi is not None and len(set(phi)) == G.n:
            return phi
    return None


def _orders(G: GroupTable) -> list[int]:
    out = []
    for x in range(G.n):
        k, y = 1, x
        while y != G.id:
            y, k = G.mul[y][x], k + 1
        out.append(k)
    return out


def _generators(G: GroupTable) -> list[int]:
    gens: list[int] = []
    span = {G.id}
    for x in sorted(range(G.n), key=lambda x: -_orders(G)[x]):
        if x not in span:
            gens.append(x)
            span = _closure(G, gens)
    return gens


def _closure(G: GroupTable, gens: Iterable[int]) -> set[int]:
    span = {G.id}
    frontier = [G.id]
    gens = list(gens)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = G.mul[x][g]
            if y not in span:
                span.add(y)
                frontier.append(y)
    return span


def _extend_hom(G: GroupTable, H: GroupTable, img: dict[int, int]) -> tuple[int, ...] | None:
    phi = {G.id: H.id}
    queue = deque([G.id])
    gens = list(img)
    while queue:
        x = queue.popleft()
        for g in gens:
            y, v = G.mul[x][g], H.mul[phi[x]][img[g]]
            if y in phi:
                if phi[y] != v:
                    return None
            else:
                phi[y] = v
                queue.append(y)
    for a, b in itertools.product(range(G.n), repeat=2):
        if phi[G.mul[a][b]] != H.mul[phi[a]][phi[b]]:
            return None
    return tuple(phi[x] for x in range(G.n))


# --- bundled groups --------------------------------------------------------

def table_from(elements: Sequence[Hashable], mul: Callable, labels: Sequence[str] | None = None,
               name: str = "") -> GroupTable:
    idx = {x: k for k, x in enumerate(elements)}
    return GroupTable([[idx[mul(a, b)] for b in elements] for a in elements],
                      labels or [str(x) for x in elements], name)


def generated(gens: Sequence[Hashable], mul: Callable, identity: Hashable,
              gen_names: str, name: str = "") -> GroupTable:
    """Closure of ``gens``; elements labeled by shortest words ("e" for the identity)."""
    words = {identity: "e"}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g, ch in zip(gens, gen_names):
            y = mul(x, g)
            if y not in words:
                words[y] = ch if words[x] == "e" else words[x] + ch
                queue.append(y)
    elements = list(words)
    return table_from(elements, mul, [words[x] for x in elements], name)


def cyclic(n: int) -> GroupTable:
    return table_from(range(n), lambda a, b: (a + b) % n, name=f"Z{n}")


def abelian(*ns: int) -> GroupTable:
    """Direct product of cyclic groups; Z2^k elements are labeled by bit strings."""
    elements = list(itertools.product(*(range(n) for n in ns)))
    mul = lambda a, b: tuple((x + y) % n for x, y, n in zip(a, b, ns))
    sep = "" if all(n == 2 for n in ns) else ","
    name = "x".join(f"Z{n}" for n in ns)
    return table_from(elements, mul, [sep.join(map(str, x)) for x in elements], name)


def dihedral(n: int) -> GroupTable:
    """Symmetries of the regular n-gon (order 2n), as vertex permutations."""
    r = tuple((i + 1) % n for i in range(n))
    s = tuple((-i) % n for i in range(n))
    return generated([r, s], _compose, tuple(range(n)), "rs", f"D{n}")


def symmetric(n: int) -> GroupTable:
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return generated(gens, _compose, tuple(range(n)), "tc", f"S{n}")


def alternating4() -> GroupTable:
    return generated([(1, 2, 0, 3), (0, 2, 3, 1)], _compose, (0, 1, 2, 3), "ab", "A4")


def quaternion() -> GroupTable:
    # i, j as 2x2 matrices over GF(3)
    def mm(a, b):
        return tuple(tuple(sum(a[r][k] * b[k][c] for k in range(2)) % 3 for c in range(2))
                     for r in range(2))
    return generated([((0, 2), (1, 0)), ((1, 1), (1, 2))], mm, ((1, 0), (0, 1)), "ij", "Q8")


def dicyclic3() -> GroupTable:
    # Z3 x| Z4 with the generator of Z4 acting by inversion
    mul = lambda a, b: ((a[0] + (-1) ** a[1] * b[0]) % 3, (a[1] + b[1]) % 4)
    return generated([(1, 0), (0, 1)], mul, (0, 0), "ab", "Dic3")


def _compose(p, q):
    """Composition of permutation tuples: apply q, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


@lru_cache(maxsize=None)
def bundled_groups(max_order: int = 8) -> tuple[GroupTable, ...]:
    """One table per isomorphism class of groups of order <= max_order (<= 12)."""
    if max_order > 12:
        raise ValueError("bundled tables stop at order 12")
    gs = [cyclic(n) for n in range(1, 13)]
    gs += [abelian(2, 2), abelian(2, 4), abelian(2, 2, 2), abelian(3, 3), abelian(2, 6)]
    gs += [symmetric(3), dihedral(4), quaternion(), dihedral(5), dihedral(6), alternating4(),
           dicyclic3()]
    return tuple(g for g in sorted(gs, key=lambda g: (g.n, g.name)) if g.n <= max_order)


def group_by_name(name: str) -> GroupTable:
    for g in bundled_groups(12):
        if g.name == name:
            return g
    raise KeyError(name)


# --- Boolean groups --------------------------------------------------------

def boolean_gec(k: int) -> Gec:
    """Vertices are bit strings of length k, colored by their XOR."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    vs = ["".join(b) for b in itertools.product("01", repeat=k)]
    xor = lambda x, y: "".join("1" if a != b else "0" for a, b in zip(x, y))
    return from_function(len(vs), lambda i, j: xor(vs[i], vs[j]), "0" * k)


def has_distinct_out_colors(G: Gec) -> bool:
    return all(len(set(r)) == G.n for r in G.colors)


def has_distinct_in_colors(G: Gec) -> bool:
    return all(len({G.colors[i][j] for i in range(G.n)}) == G.n for j in range(G.n))


@dataclass(frozen=True)
class BooleanIso:
    k: int
    vertex_map: tuple[str, ...]  # vertex -> bit string
    color_map: dict[str, str]


def recognize_boolean(G: Gec) -> BooleanIso | None:
    """Isomorphism onto boolean_gec(k) if G is an AB-HO undirected structure
    with distinct colors at every vertex, else None."""
    if G.directed or G.n == 0 or not has_distinct_out_colors(G):
        return None
    n = G.n
    k = n.bit_length() - 1
    if 1 << k != n or not is_ab_ho(G):
        return None
    e = 0
    # translations phi_x: the unique automorphism with e -> x
    phi = []
    for x in range(n):
        m = extend_to_automorphism(G, {e: x})
        if m is None:
            return None
        phi.append(m)
    add = [[phi[x][y] for y in range(n)] for x in range(n)]
    # pick a basis greedily and write every element in it
    coords = {e: 0}
    basis = []
    for x in range(n):
        if x in coords:
            continue
        basis.append(x)
        for y, c in list(coords.items()):
            coords[add[x][y]] = c | (1 << (len(basis) - 1))
    if len(coords) != n or len(basis) != k:
        return None
    bits = [format(coords[x], f"0{k}b")[::-1] if k else "" for x in range(n)]
    B = boolean_gec(k)
    bidx = {"".join(b): i for i, b in enumerate(itertools.product("01", repeat=k))}
    vmap = [bidx[b] for b in bits]
    cmap = {}
    for x, y in itertools.permutations(range(n), 2):
        c, d = G.colors[x][y], B.colors[vmap[x]][vmap[y]]
        if cmap.setdefault(c, d) != d:
            return None
    if len(set(cmap.values())) != len(cmap):
        return None
    return BooleanIso(k, tuple(bits), cmap)


# --- directed structures of groups ----------------------------------------

VARIANTS = ("L", "Lstar", "R", "Rstar")


def group_dgec(t: GroupTable, variant: str = "L") -> Gec:
    m, inv, lab = t.mul, t.inv, t.labels
    f = {
        "L": lambda a, b: m[inv[a]][b],
        "Lstar": lambda a, b: m[inv[b]][a],
        "R": lambda a, b: m[a][inv[b]],
        "Rstar": lambda a, b: m[b][inv[a]],
    }
    if variant not in f:
        raise ValueError(f"unknown variant {variant!r}")
    k = f[variant]
    return from_function(t.n, lambda a, b: lab[k(a, b)], lab[t.id], True)


def gmin() -> Gec:
    """Three vertices, color "1" along 0->1->2->0 and "-1" backwards."""
    c = {(0, 1): "1", (1, 2): "1", (2, 0): "1", (1, 0): "-1", (2, 1): "-1", (0, 2): "-1"}
    return from_function(3, lambda i, j: c[(i, j)], "0", True)


def repeated_color_dgec() -> Gec:
    """Four vertices, two colors: uniquely homogeneous and AB-HO although
    colors repeat on outgoing edges (found by exhaustive search; the only
    such structure up to structural equivalence)."""
    rows = [["0", "a", "b", "a"], ["a", "0", "a", "b"], ["a", "b", "0", "a"], ["b", "a", "a", "0"]]
    return Gec(rows, "0", True)


def _same_colors(A: Gec, B: Gec, vmap: Sequence[int]) -> bool:
    return all(A.colors[i][j] == B.colors[vmap[i]][vmap[j]]
               for i in range(A.n) for j in range(A.n))


@dataclass
class Clause:
    holds: bool
    detail: str = ""
    witness: object = None

    def to_dict(self) -> dict:
        return {"holds": self.holds, "detail": self.detail, "witness": self.witness}


def dgroup_report(t: GroupTable) -> dict[str, Clause]:
    """Check the six facts linking a group with its four directed structures.
    Clauses (c) and (d) are equivalences: they hold when the structural
    statement agrees with the group property."""
    S = {v: group_dgec(t, v) for v in VARIANTS}
    inv = list(t.inv)
    lab = t.labels
    out = {}

    ok = all(_same_colors(S[a], S[b], inv) for a, b in
             [("L", "R"), ("R", "L"), ("Lstar", "Rstar"), ("Rstar", "Lstar")])
    out["a"] = Clause(ok, "inversion maps L<->R and L*<->R* isomorphically")

    # color map c -> c^-1 turns L into L* (and R into R*) with vertices fixed
    xi = {lab[x]: lab[inv[x]] for x in range(t.n)}
    ok = all(xi[S[a].colors[i][j]] == S[b].colors[i][j]
             for a, b in [("L", "Lstar"), ("R", "Rstar"), ("Lstar", "L"), ("Rstar", "R")]
             for i in range(t.n) for j in range(t.n))
    out["b"] = Clause(ok, "inversion on colors is an isotopy L<->L*, R<->R*")

    coincide = all(S[v].colors == S["L"].colors for v in VARIANTS)
    out["c"] = Clause(coincide == t.is_boolean(),
                      f"structures coincide: {coincide}; Boolean: {t.is_boolean()}")

    non_iso = [v for v in VARIANTS[1:] if isomorphic(S["L"], S[v]) is None]
    all_iso = not non_iso
    out["d"] = Clause(all_iso == t.is_abelian(),
                      f"all isomorphic: {all_iso}; Abelian: {t.is_abelian()}",
                      non_iso or None)

    bad = [v for v in VARIANTS if not (has_distinct_out_colors(S[v]) and has_distinct_in_colors(S[v]))]
    out["e"] = Clause(not bad, "distinct colors on outgoing and incoming edges", bad or None)

    bad = []
    for v in VARIANTS:
        auts = automorphisms(S[v])
        if not is_ab_ho(S[v]) or not is_uniquely_homogeneous(S[v]) or len(auts) != t.n:
            bad.append(v)
            continue
        left = v in ("L", "Lstar")
        trans = {tuple(t.mul[g][x] if left else t.mul[x][g] for x in range(t.n)) for g in range(t.n)}
        if set(map(tuple, auts)) != trans:
            bad.append(v)
    out["f"] = Clause(not bad, "AB-HO, unique extensions, automorphisms are translations",
                      bad or None)
    return out


def recognize_group(D: Gec) -> GroupTable | None:
    """Group whose left structure is isomorphic to D (identity = vertex 0,
    element x labeled by the color from 0 to x), or None if D is not AB-HO
    with distinct outgoing colors."""
    if D.n == 0 or not has_distinct_out_colors(D) or not is_ab_ho(D):
        return None
    a = 0
    phi = []
    for x in range(D.n):
        m = extend_to_automorphism(D, {a: x})
        if m is None:
            return None
        phi.append(m)
    mul = [[phi[x][y] for y in range(D.n)] for x in range(D.n)]
    labels = [D.pseudo if x == a else D.colors[a][x] for x in range(D.n)]
    try:
        return GroupTable(mul, labels)
    except InvalidTable:
        return None


@dataclass(frozen=True)
class RecoveredGroup:
    table: GroupTable
    mu: tuple[str, ...]


def uniq_homo_recover(D: Gec, base: int = 0) -> RecoveredGroup:
    """The group on the vertices with identity ``base`` and the labeling mu
    with kappa(u, v) = mu(u^-1 v)."""
    if D.n == 0 or not is_ab_ho(D) or not is_uniquely_homogeneous(D):
        raise NotUniquelyHomogeneous("structure is not uniquely homogeneous and AB-HO")
    n = D.n
    phi = [extend_to_automorphism(D, {base: x}) for x in range(n)]
    mul = [[phi[x][y] for y in range(n)] for x in range(n)]
    t = GroupTable(mul, [str(v) for v in range(n)])
    mu = tuple(D.colors[base][v] for v in range(n))
    for u, v in itertools.product(range(n), repeat=2):
        if D.colors[u][v] != mu[t.mul[t.inv[u]][v]]:
            raise NotUniquelyHomogeneous(f"colors do not factor through the group at {(u, v)}")
    if len({(mu[v], mu[t.inv[v]]) for v in range(n)}) != n:
        raise NotUniquelyHomogeneous("v -> (mu(v), mu(v^-1)) is not injective")
    return RecoveredGroup(t, mu)


def recovered_automorphisms_are_translations(D: Gec, R: RecoveredGroup) -> bool:
    t = R.table
    trans = {tuple(t.mul[g][x] for x in range(t.n)) for g in range(t.n)}
    return set(map(tuple, automorphisms(D))) == trans


# --- coset actions ----------------------------------------------------------

def _validate_subgroup(t: GroupTable, H: Sequence[int]) -> frozenset[int]:
    Hs = frozenset(H)
    if not Hs or any(not 0 <= h < t.n for h in Hs):
        raise NotSubgroup("subgroup must be a nonempty set of elements")
    if t.id not in Hs or any(t.mul[a][t.inv[b]] not in Hs for a in Hs for b in Hs):
        raise NotSubgroup("not closed under products and inverses")
    core = set(Hs)
    for g in range(t.n):
        core &= {t.mul[t.mul[g][h]][t.inv[g]] for h in Hs}
    if len(core) > 1:
        raise NormalCore(f"subgroup contains the normal subgroup {sorted(core)}")
    return Hs


def coset_action(t: GroupTable, H: Sequence[int]) -> tuple[list[frozenset[int]], list[tuple[int, ...]]]:
    """Left cosets gH and the permutation each g induces on them."""
    Hs = _validate_subgroup(t, H)
    cosets: list[frozenset[int]] = []
    where = {}
    for g in range(t.n):
        if g in where:
            continue
        c = frozenset(t.mul[g][h] for h in Hs)
        for x in c:
            where[x] = len(cosets)
        cosets.append(c)
    perms = [tuple(where[t.mul[g][min(c)]] for c in cosets) for g in range(t.n)]
    return cosets, perms


def orbital_dgec(t: GroupTable, H: Sequence[int]) -> Gec:
    """Cosets colored by the G-orbit of each ordered pair."""
    cosets, perms = coset_action(t, H)
    m = len(cosets)
    orbit: dict[tuple[int, int], int] = {}
    k = 0
    for x, y in itertools.product(range(m), repeat=2):
        if (x, y) not in orbit:
            for p in perms:
                orbit[(p[x], p[y])] = k
            k += 1
    return from_function(m, lambda x, y: str(orbit[(x, y)]), str(orbit[(0, 0)]), True)


def abstran_check(t: GroupTable, H: Sequence[int]) -> tuple[bool, dict | None]:
    """Every partial map on the cosets that agrees pairwise with some group
    element agrees with a single group element; otherwise a failing map."""
    cosets, perms = coset_action(t, H)
    m = len(cosets)
    perms = sorted(set(perms))
    # pairwise condition: (x, y) -> (u(x), u(y)) is realized by some element
    realizable = {(x, y, p[x], p[y]) for p in perms for x in range(m) for y in range(m)}

    def rec(dom: list[int], img: list[int], alive: list[tuple[int, ...]]):
        start = dom[-1] + 1 if dom else 0
        for x in range(start, m):
            for y in range(m):
                if y in img:
                    continue
                if not all((a, x, b, y) in realizable for a, b in zip(dom, img)):
                    continue
                if not dom and (x, x, y, y) not in realizable:
                    continue
                nxt = [p for p in alive if p[x] == y]
                if not nxt:
                    return dict(zip(dom + [x], img + [y]))
                if len(alive) == 1:
                    continue  # deeper maps only add steps already checked at this level
                bad = rec(dom + [x], img + [y], nxt)
                if bad is not None:
                    return bad
        return None

    bad = rec([], [], perms)
    return bad is None, bad


def sym_check(t: GroupTable, H: Sequence[int]) -> tuple[bool, int | None]:
    """gHg meets H for every g; otherwise the first g where it does not."""
    Hs = _validate_subgroup(t, H)
    for g in range(t.n):
        if not any(t.mul[t.mul[g][h]][g] in Hs for h in Hs):
            return False, g
    return True, None


def subgroups(t: GroupTable) -> list[frozenset[int]]:
    """All subgroups, as closures of at most two generators plus iteration."""
    found = {frozenset(_closure(t, []))}
    frontier = list(found)
    while frontier:
        S = frontier.pop()
        for g in range(t.n):
            if g not in S:
                T = frozenset(_closure(t, list(S) + [g]))
                if T not in found:
                    found.add(T)
                    frontier.append(T)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def core_free_subgroups(t: GroupTable) -> list[frozenset[int]]:
    out = []
    for S in subgroups(t):
        try:
            _validate_subgroup(t, S)
        except NormalCore:
            continue
        out.append(S)
    return out


def point_stabilizer(t: GroupTable, perm_of: Callable[[int], Sequence[int]], point: int = 0) -> list[int]:
    return [g for g in range(t.n) if perm_of(g)[point] == point]


def load_table(path) -> GroupTable:
    with open(path) as fh:
        return GroupTable.from_dict(json.load(fh))
