"""Edge-colored complete graphs: the matrix type and elementary transforms.

A structure on vertices 0..n-1 is an n x n matrix of opaque string colors.
Every diagonal cell holds the reserved pseudocolor, which never occurs off
the diagonal.  Undirected structures are additionally symmetric.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    AsymmetryError,
    DiagonalMismatch,
    EmptySubset,
    PseudocolorLeak,
)

Matrix = tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class Gec:
    """Complete edge-colored graph; ``directed=False`` requires symmetry."""

    colors: Matrix
    pseudo: str
    directed: bool = False

    def __post_init__(self):
        rows = tuple(tuple(str(c) for c in row) for row in self.colors)
        object.__setattr__(self, "colors", rows)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
        for i in range(n):
            if rows[i][i] != self.pseudo:
                raise DiagonalMismatch(
                    f"diagonal cell ({i},{i}) is {rows[i][i]!r}, pseudocolor is {self.pseudo!r}"
                )
            for j in range(n):
                if i != j and rows[i][j] == self.pseudo:
                    raise PseudocolorLeak(f"pseudocolor at ({i},{j})")
        if not self.directed:
            for i in range(n):
                for j in range(i + 1, n):
                    if rows[i][j] != rows[j][i]:
                        raise AsymmetryError(f"({i},{j}) and ({j},{i}) differ")

    @property
    def n(self) -> int:
        return len(self.colors)

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, ij: tuple[int, int]) -> str:
        i, j = ij
        return self.colors[i][j]

    @property
    def kind(self) -> str:
        return "dgec" if self.directed else "gec"

    @cached_property
    def palette(self) -> frozenset[str]:
        return frozenset(
            c for i, row in enumerate(self.colors) for j, c in enumerate(row) if i != j
        )

    @cached_property
    def is_symmetric(self) -> bool:
        n = self.n
        return all(
            self.colors[i][j] == self.colors[j][i] for i in range(n) for j in range(i + 1, n)
        )

    @cached_property
    def color_list(self) -> tuple[str, ...]:
        """Pseudocolor first, then the palette in sorted order."""
        return (self.pseudo,) + tuple(sorted(self.palette))

    @cached_property
    def codes(self) -> np.ndarray:
        """Integer matrix: 0 for the pseudocolor, 1.. for palette colors."""
        idx = {c: k for k, c in enumerate(self.color_list)}
        m = np.array([[idx[c] for c in row] for row in self.colors], dtype=np.int64)
        return m.reshape(self.n, self.n)

    def as_directed(self) -> "Gec":
        return self if self.directed else Gec(self.colors, self.pseudo, True)

    def as_undirected(self) -> "Gec":
        """Reinterpret as a Gec; raises AsymmetryError unless symmetric."""
        return self if not self.directed else Gec(self.colors, self.pseudo, False)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "pseudocolor": self.pseudo,
            "colors": [list(r) for r in self.colors],
        }

    def __repr__(self) -> str:
        return f"Gec(kind={self.kind}, n={self.n}, palette={sorted(self.palette)})"


def validate(matrix: Sequence[Sequence[str]], directed: bool = False,
             pseudo: str | None = None) -> Gec:
    """Build a structure from a square grid, checking the axioms."""
    rows = [list(r) for r in matrix]
    if pseudo is None:
        pseudo = rows[0][0] if rows else "0"
        for i, r in enumerate(rows):
            if r[i] != pseudo:
                raise DiagonalMismatch(f"diagonal cells (0,0) and ({i},{i}) differ")
    return Gec(rows, pseudo, directed)


def from_dict(d: Mapping) -> Gec:
    kind = d.get("kind", "gec")
    if kind not in ("gec", "dgec"):
        raise ValueError(f"unknown kind {kind!r}")
    return validate(d["colors"], directed=(kind == "dgec"), pseudo=d.get("pseudocolor"))


def dumps(G: Gec) -> str:
    return json.dumps(G.to_dict(), sort_keys=True)


def loads(s: str) -> Gec:
    return from_dict(json.loads(s))


def from_function(n: int, kappa, pseudo: str, directed: bool = False) -> Gec:
    """Structure with kappa(i, j) off the diagonal."""
    return Gec(
        tuple(tuple(pseudo if i == j else kappa(i, j) for j in range(n)) for i in range(n)),
        pseudo,
        directed,
    )


def mono(n: int, color: str, pseudo: str = "0", directed: bool = False) -> Gec:
    """Monochromatic structure K_n(color)."""
    return from_function(n, lambda i, j: color, pseudo, directed)


EDGE, NON_EDGE, GRAPH_PSEUDO = "1", "-1", "0"


def from_graph(adjacency: Sequence[Sequence[bool | int]]) -> Gec:
    """Encode a simple graph: edges "1", non-edges "-1", pseudocolor "0"."""
    a = [[bool(x) for x in row] for row in adjacency]
    n = len(a)
    for i in range(n):
        if a[i][i]:
            raise ValueError("graph has a loop")
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("adjacency is not symmetric")
    return from_function(n, lambda i, j: EDGE if a[i][j] else NON_EDGE, GRAPH_PSEUDO)


def cycle_graph(n: int) -> Gec:
    return from_graph([[abs(i - j) % n in (1, n - 1) for j in range(n)] for i in range(n)])


def path_graph(n: int) -> Gec:
    return from_graph([[abs(i - j) == 1 for j in range(n)] for i in range(n)])


def induce(G: Gec, S: Iterable[int]) -> Gec:
    """Induced substructure on S, relabeled 0..|S|-1 in the given order."""
    S = list(S)
    if not S:
        raise EmptySubset("induce needs a nonempty vertex list")
    if len(set(S)) != len(S):
        raise ValueError("repeated vertex in subset")
    for v in S:
        if not 0 <= v < G.n:
            raise IndexError(f"vertex {v} out of range")
    c = G.colors
    return Gec(tuple(tuple(c[i][j] for j in S) for i in S), G.pseudo, G.directed)


def empty_like(G: Gec) -> Gec:
    return Gec((), G.pseudo, G.directed)


def delete(G: Gec, v: int) -> Gec:
    """G minus one vertex (may be empty)."""
    rest = [x for x in range(G.n) if x != v]
    return induce(G, rest) if rest else empty_like(G)


def relabel(G: Gec, perm: Sequence[int]) -> Gec:
    """Copy of G in which old vertex i becomes perm[i]."""
    inv = [0] * G.n
    for i, p in enumerate(perm):
        inv[p] = i
    return induce(G, inv) if G.n else G


def recolor(G: Gec, mapping: Mapping[str, str]) -> Gec:
    """Rename colors (and possibly the pseudocolor) through ``mapping``."""
    f = lambda c: mapping.get(c, c)
    return Gec(tuple(tuple(f(c) for c in row) for row in G.colors), f(G.pseudo), G.directed)


@dataclass(frozen=True)
class ColorProfile:
    """Required colors from a vertex set W: in_color[w] = kappa(w, x),
    out_color[w] = kappa(x, w) (directed case only)."""

    in_color: Mapping[int, str]
    out_color: Mapping[int, str] | None = None

    def __post_init__(self):
        if not self.in_color:
            raise ValueError("profile domain must be nonempty")
        if self.out_color is not None and set(self.out_color) != set(self.in_color):
            raise ValueError("in/out profiles need the same domain")


def sphere(G: Gec, profile: ColorProfile) -> Gec:
    """Induced substructure on {x : kappa(w,x) = in_color[w] (and kappa(x,w) =
    out_color[w] when directed) for all w in the profile domain}."""
    used = set(profile.in_color.values())
    if profile.out_color:
        used |= set(profile.out_color.values())
    if not used <= G.palette:
        warnings.warn(f"profile colors {sorted(used - G.palette)} not in palette")
    keep = []
    for x in range(G.n):
        ok = all(G.colors[w][x] == c for w, c in profile.in_color.items())
        if ok and G.directed and profile.out_color is not None:
            ok = all(G.colors[x][w] == c for w, c in profile.out_color.items())
        if ok:
            keep.append(x)
    return induce(G, keep) if keep else empty_like(G)


def pair_color(c: str, d: str) -> str:
    """Injective encoding of an ordered color pair as a single color."""
    return json.dumps([c, d])


def reversify(D: Gec) -> Gec:
    """Recolor each off-diagonal (x,y) by the pair (kappa(x,y), kappa(y,x))."""
    c = D.colors
    return from_function(D.n, lambda i, j: pair_color(c[i][j], c[j][i]), D.pseudo, True)


def dual(D: Gec) -> Gec:
    """Transpose: kappa*(x,y) = kappa(y,x)."""
    c = D.colors
    return Gec(tuple(tuple(c[j][i] for j in range(D.n)) for i in range(D.n)), D.pseudo, D.directed)


@dataclass(frozen=True)
class IncompleteGec:
    """Structure whose edge {a,b} is unpainted (stored as None in both cells)."""

    colors: tuple[tuple[str | None, ...], ...]
    pseudo: str
    a: int
    b: int
    directed: bool = False

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.colors)
        object.__setattr__(self, "colors", rows)
        if self.a == self.b:
            raise ValueError("unpainted edge needs two distinct endpoints")
        n = len(rows)
        for i in range(n):
            for j in range(n):
                c = rows[i][j]
                if {i, j} == {self.a, self.b}:
                    if c is not None:
                        raise ValueError("unpainted cell carries a color")
                elif i == j:
                    if c != self.pseudo:
                        raise DiagonalMismatch(f"diagonal ({i},{i})")
                elif c == self.pseudo or c is None:
                    raise PseudocolorLeak(f"bad cell ({i},{j})")
                elif not self.directed and c != rows[j][i]:
                    raise AsymmetryError(f"({i},{j})")

    @property
    def n(self) -> int:
        return len(self.colors)

    @cached_property
    def palette(self) -> frozenset[str]:
        return frozenset(c for i, r in enumerate(self.colors) for j, c in enumerate(r)
                         if i != j and c is not None)

    def complete(self, c: str, d: str | None = None) -> Gec:
        """Paint kappa(a,b) = c and kappa(b,a) = d (d defaults to c)."""
        d = c if d is None else d
        rows = [list(r) for r in self.colors]
        rows[self.a][self.b] = c
        rows[self.b][self.a] = d
        return Gec(rows, self.pseudo, self.directed)

    def without(self, v: int) -> Gec:
        """Delete one endpoint of the unpainted edge; the rest is painted."""
        if v not in (self.a, self.b):
            raise ValueError("can only delete an endpoint of the unpainted edge")
        keep = [x for x in range(self.n) if x != v]
        return Gec(tuple(tuple(self.colors[i][j] for j in keep) for i in keep),
                   self.pseudo, self.directed)

    @classmethod
    def from_gec(cls, G: Gec, a: int, b: int) -> "IncompleteGec":
        rows = [list(r) for r in G.colors]
        rows[a][b] = rows[b][a] = None
        return cls(rows, G.pseudo, a, b, G.directed)
