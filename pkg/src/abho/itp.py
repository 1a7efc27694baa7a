"""Structures in which every triangle is isosceles.

For such a homogeneous structure the colors split into classes of one or two
colors, totally ordered by the "two a-edges and one b-edge" relation, and the
structure is the product of one monochromatic or bi-connected factor per
class.  This module extracts that decomposition and rebuilds structures from
the data (order, factor graphs, recoloring) that determine them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from typing import Hashable, Mapping, Sequence

import numpy as np

from .core import Gec, from_graph, induce, mono, recolor, EDGE, NON_EDGE
from .errors import (
    NoItp,
    NonInjectiveOmega,
    NotAbHo,
    QuotientIllFormed,
    StructureViolation,
    UnknownPrimaryId,
)
from .morph import Decision, canon, is_ab_ho, isomorphic
from .product import product
from .skeleta import skeleton


def has_itp(G: Gec) -> Decision:
    """All triangles isosceles; the witness is the first scalene triangle."""
    c = G.colors
    for x, y, z in itertools.combinations(range(G.n), 3):
        if len({c[x][y], c[x][z], c[y][z]}) == 3:
            return Decision(False, (x, y, z))
    return Decision(True)


@dataclass(frozen=True)
class PrecRelation:
    pairs: frozenset[tuple[str, str]]

    def __contains__(self, ab) -> bool:
        return tuple(ab) in self.pairs

    def I(self, a: str) -> set[str]:
        """Colors b != a with a < b < a."""
        return {b for (x, b) in self.pairs if x == a and (b, a) in self.pairs}


def prec_relation(G: Gec) -> PrecRelation:
    """a < b iff some triangle has two a-edges at a common vertex and a
    b-edge opposite, a != b."""
    if not has_itp(G):
        raise NoItp("structure has a scalene triangle")
    M, cl = G.codes, G.color_list
    pairs = set()
    for z in range(G.n):
        row = M[z]
        for a in np.unique(row):
            if a == 0:
                continue
            S = np.flatnonzero(row == a)
            if len(S) < 2:
                continue
            sub = M[np.ix_(S, S)]
            for b in np.unique(sub):
                if b != 0 and b != a:
                    pairs.add((cl[a], cl[b]))
    return PrecRelation(frozenset(pairs))


@dataclass(frozen=True)
class OmegaOrder:
    classes: tuple[frozenset[str], ...]

    def index(self, color: str) -> int:
        for i, s in enumerate(self.classes):
            if color in s:
                return i
        raise KeyError(color)


def omega(G: Gec, verify: bool = True) -> OmegaOrder:
    """Color classes sigma(a) = {a} u I(a), in increasing order."""
    if verify:
        if not is_ab_ho(G):
            raise NotAbHo("structure is not absolutely homogeneous")
    P = prec_relation(G)
    pal = sorted(G.palette)
    for a, b in itertools.permutations(pal, 2):
        if (a, b) not in P and (b, a) not in P:
            raise StructureViolation(f"colors {a!r}, {b!r} are incomparable")
    for a, b, c in itertools.permutations(pal, 3):
        if (a, b) in P and (b, c) in P and (a, c) not in P:
            raise StructureViolation(f"{a!r} < {b!r} < {c!r} but not {a!r} < {c!r}")
    for a in pal:
        if len(P.I(a)) > 1:
            raise StructureViolation(f"color {a!r} is mutually related to {sorted(P.I(a))}")
    classes = sorted({frozenset(P.I(a) | {a}) for a in pal}, key=lambda s: sorted(s))

    def before(s, t):
        return all((a, b) in P for a in s for b in t)

    def cmp(s, t):
        if s == t:
            return 0
        if before(s, t):
            return -1
        if before(t, s):
            return 1
        raise StructureViolation(f"classes {sorted(s)} and {sorted(t)} are not comparable")

    ordered = sorted(classes, key=cmp_to_key(cmp))
    for s, t in zip(ordered, ordered[1:]):
        if not before(s, t):
            raise StructureViolation("class order is not total")
    return OmegaOrder(tuple(ordered))


@dataclass(frozen=True)
class Decomposition:
    entries: tuple[tuple[frozenset[str], Gec], ...]

    def __init__(self, entries):
        object.__setattr__(self, "entries", tuple((frozenset(s), f) for s, f in entries))

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def factors(self) -> list[Gec]:
        return [f for _, f in self.entries]

    def to_list(self) -> list[dict]:
        return [{"sigma": sorted(s), "factor": [list(r) for r in f.colors]}
                for s, f in self.entries]


def _equivalence(R: np.ndarray) -> bool:
    Ri = R.astype(np.int64)
    return bool(R.diagonal().all() and (R == R.T).all() and not ((Ri @ Ri > 0) & ~R).any())


def primary_decompose(G: Gec, verify: bool = True) -> Decomposition:
    """One factor per color class, in class order, whose product is G."""
    if G.directed:
        raise ValueError("decomposition is defined for undirected structures")
    if verify and not is_ab_ho(G):
        raise NotAbHo("structure is not absolutely homogeneous")
    if not has_itp(G):
        raise NoItp("structure has a scalene triangle")
    if G.n <= 1:
        return Decomposition(())
    order = omega(G, verify=False)
    M, cl = G.codes, G.color_list
    code = {c: k for k, c in enumerate(cl)}
    entries = []
    for i, sigma in enumerate(order.classes):
        later = {0} | {code[c] for s in order.classes[i + 1:] for c in s}
        here = {code[c] for c in sigma}
        inner = np.isin(M, list(later))
        outer = np.isin(M, list(later | here))
        if not (_equivalence(inner) and _equivalence(outer)):
            raise QuotientIllFormed(f"class {sorted(sigma)} does not induce equivalences")
        O = np.flatnonzero(outer[0])
        blocks: list[list[int]] = []
        for x in O:
            for B in blocks:
                if inner[B[0], x]:
                    B.append(int(x))
                    break
            else:
                blocks.append([int(x)])
        k = len(blocks)
        rows = [[G.pseudo] * k for _ in range(k)]
        for p, q in itertools.permutations(range(k), 2):
            vals = np.unique(M[np.ix_(blocks[p], blocks[q])])
            if len(vals) != 1:
                raise QuotientIllFormed(f"blocks {p},{q} of class {sorted(sigma)} mix colors")
            rows[p][q] = cl[vals[0]]
        entries.append((sigma, Gec(rows, G.pseudo)))
    if isomorphic(product([f for _, f in entries]), G) is None:
        raise QuotientIllFormed("factors do not multiply back to the input")
    return Decomposition(entries)


def decomposition_equal(d1: Decomposition, d2: Decomposition) -> bool:
    """Same length and position-wise isomorphic factors."""
    if len(d1) != len(d2):
        return False
    return all(isomorphic(f1, f2) is not None
               for (_, f1), (_, f2) in zip(d1.entries, d2.entries))


def _connected(adj: np.ndarray) -> bool:
    n = len(adj)
    seen, stack = {0}, [0]
    while stack:
        x = stack.pop()
        for y in np.flatnonzero(adj[x]).tolist():
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def biconnected(G: Gec) -> bool:
    """Exactly two colors and each color class is a connected graph."""
    if len(G.palette) != 2 or G.directed:
        return False
    M = G.codes
    return _connected(M == 1) and _connected(M == 2)


def irreducible(G: Gec) -> bool:
    return len(primary_decompose(G)) == 1


# --- primary collection and modelling quadruples --------------------------

def _paley9() -> Gec:
    # rook's graph on a 3x3 board
    cells = list(itertools.product(range(3), repeat=2))
    return from_graph([[p != q and (p[0] == q[0] or p[1] == q[1]) for q in cells] for p in cells])


def _cycle5() -> Gec:
    return from_graph([[abs(i - j) % 5 in (1, 4) for j in range(5)] for i in range(5)])


def _complement(G: Gec) -> Gec:
    return recolor(G, {EDGE: NON_EDGE, NON_EDGE: EDGE})


@lru_cache(maxsize=None)
def primary_graph(pid: str) -> Gec:
    """Representative of a primary-collection id: "K<n>" is the full graph
    on n >= 2 vertices (one color); "C5" and "K3xK3" are the bi-connected
    homogeneous graphs, each stored as the lexicographically smaller
    canonical form of the graph and its complement."""
    if pid.startswith("K") and pid[1:].isdigit():
        n = int(pid[1:])
        if n < 2:
            raise UnknownPrimaryId(pid)
        return mono(n, EDGE)
    builders = {"C5": _cycle5, "K3xK3": _paley9}
    if pid not in builders:
        raise UnknownPrimaryId(pid)
    G = builders[pid]()
    return Gec(min(canon(G), canon(_complement(G))), G.pseudo)


def is_full(pid: str) -> bool:
    return len(primary_graph(pid).palette) == 1


@dataclass(frozen=True)
class ModellingQuadruple:
    """S: index order; tau[s]: primary id; omega: keys s (full factors),
    (s, -1)/(s, 1) (bi-connected factors: non-edge/edge) and 0 (pseudocolor)."""

    S: tuple[Hashable, ...]
    tau: Mapping[Hashable, str]
    omega: Mapping[Hashable, str]

    def __init__(self, S: Sequence, tau: Mapping, omega: Mapping):
        object.__setattr__(self, "S", tuple(S))
        object.__setattr__(self, "tau", dict(tau))
        object.__setattr__(self, "omega", dict(omega))

    def factor(self, s) -> Gec:
        G = primary_graph(self.tau[s])
        p = self.omega[0]
        if is_full(self.tau[s]):
            return mono(G.n, self.omega[s], p)
        return recolor(G, {EDGE: self.omega[(s, 1)], NON_EDGE: self.omega[(s, -1)],
                           G.pseudo: p})

    def sigma(self, s) -> frozenset[str]:
        if is_full(self.tau[s]):
            return frozenset({self.omega[s]})
        return frozenset({self.omega[(s, -1)], self.omega[(s, 1)]})

    def validate(self):
        if len(set(self.S)) != len(self.S) or set(self.tau) != set(self.S):
            raise ValueError("tau must be defined exactly on S")
        need = [0]
        for s in self.S:
            primary_graph(self.tau[s])
            need += [s] if is_full(self.tau[s]) else [(s, -1), (s, 1)]
        if set(need) != set(self.omega):
            raise ValueError("omega has the wrong domain")
        vals = [self.omega[k] for k in need]
        if len(set(vals)) != len(vals):
            raise NonInjectiveOmega("omega repeats a label")

    def to_dict(self) -> dict:
        out = {"S": [str(s) for s in self.S], "tau": {str(s): self.tau[s] for s in self.S},
               "pseudo": self.omega[0], "labels": {}}
        for s in self.S:
            if is_full(self.tau[s]):
                out["labels"][str(s)] = self.omega[s]
            else:
                out["labels"][str(s)] = {"-1": self.omega[(s, -1)], "1": self.omega[(s, 1)]}
        return out

    @classmethod
    def from_dict(cls, d: Mapping) -> "ModellingQuadruple":
        S = list(d["S"])
        om: dict = {0: d["pseudo"]}
        for s in S:
            lab = d["labels"][s]
            if isinstance(lab, Mapping):
                om[(s, -1)], om[(s, 1)] = lab["-1"], lab["1"]
            else:
                om[s] = lab
        return cls(S, d["tau"], om)


def build_from_quadruple(q: ModellingQuadruple) -> Gec:
    q.validate()
    return product([q.factor(s) for s in q.S])


def quadruple_decomposition(q: ModellingQuadruple) -> Decomposition:
    q.validate()
    return Decomposition([(q.sigma(s), q.factor(s)) for s in q.S])


def skeleton_criterion(G: Gec, H: Gec) -> bool:
    """Membership of H in the skeleton of a homogeneous isosceles G, decided
    from the class order and the per-class factors instead of by search."""
    if not H.palette <= G.palette or not has_itp(H):
        return False
    if H.n == 0:
        return True
    order = omega(G)
    P = prec_relation(G)
    c = H.colors
    for z in range(H.n):
        for x, y in itertools.combinations([v for v in range(H.n) if v != z], 2):
            a, b = c[x][z], c[x][y]
            if c[y][z] == a and a != b and order.index(a) != order.index(b) and (a, b) not in P:
                return False
    dec = primary_decompose(G, verify=False)
    skel = {frozenset(s): skeleton(f) for s, f in dec.entries}
    for k in range(1, H.n + 1):
        for S in itertools.combinations(range(H.n), k):
            Hs = induce(H, S)
            for s, F in skel.items():
                if Hs.palette <= s and Hs not in F:
                    return False
    return True
