"""Finite metric spaces as structures whose colors are distances.

Distances are parsed exactly (``fractions.Fraction``); embeddability tests
switch to floating point and decide ranks with an explicit eigenvalue cutoff.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .core import Gec, IncompleteGec, from_function
from .errors import (
    BadDistances,
    NonUniformBlocks,
    NotAbHo,
    NotMetric,
    NotUltrametric,
    ParseError,
    TooSmall,
    TriangleViolation,
)
from .morph import Decision, is_ab_ho
from .product import ProductSpec, product, productable
from .errors import NotProductable

TOL = 1e-9
PSEUDO = "0"


def parse(c) -> Fraction:
    try:
        x = Fraction(str(c).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"not a decimal: {c!r}") from e
    return x


def fmt(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class MetricSpace:
    gec: Gec
    dist: tuple[tuple[Fraction, ...], ...]

    @property
    def n(self) -> int:
        return self.gec.n

    def array(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.dist], dtype=float).reshape(self.n, self.n)

    def values(self) -> set[Fraction]:
        return {self.dist[i][j] for i in range(self.n) for j in range(self.n) if i != j}


def as_metric(G: Gec) -> MetricSpace:
    if G.directed and not G.is_symmetric:
        raise NotMetric("distances must be symmetric")
    n = G.n
    d = [[Fraction(0) if i == j else parse(G.colors[i][j]) for j in range(n)] for i in range(n)]
    for i, j in itertools.permutations(range(n), 2):
        if d[i][j] <= 0:
            raise ParseError(f"distance at ({i},{j}) is not positive")
    for x, y, z in itertools.permutations(range(n), 3):
        if d[x][z] > d[x][y] + d[y][z]:
            raise TriangleViolation(x, y, z)
    return MetricSpace(G, tuple(tuple(r) for r in d))


def from_distances(D: Sequence[Sequence]) -> MetricSpace:
    """Metric space from a numeric (or decimal-string) matrix; the diagonal is ignored."""
    n = len(D)
    vals = [[None if i == j else fmt(parse(D[i][j])) for j in range(n)] for i in range(n)]
    return as_metric(from_function(n, lambda i, j: vals[i][j], PSEUDO))


def is_ultrametric(M: MetricSpace) -> bool:
    d = M.dist
    return all(d[x][z] <= max(d[x][y], d[y][z])
               for x, y, z in itertools.permutations(range(M.n), 3))


# --- ultrametric classification -------------------------------------------

@dataclass(frozen=True)
class UltraChain:
    """Levels (t, m), strictly decreasing in t, every m >= 2."""

    levels: tuple[tuple[Fraction, int], ...]

    def __init__(self, levels: Iterable):
        lv = tuple((parse(t), int(m)) for t, m in levels)
        for t, m in lv:
            if t <= 0 or m < 2:
                raise ValueError(f"bad level ({t}, {m})")
        for (s, _), (t, _) in zip(lv, lv[1:]):
            if not s > t:
                raise ValueError("levels must strictly decrease in t")
        object.__setattr__(self, "levels", lv)

    @property
    def size(self) -> int:
        return math.prod(m for _, m in self.levels)

    def to_list(self) -> list:
        return [[fmt(t), m] for t, m in self.levels]


def classify_ultrametric(M: MetricSpace, verify: bool = True) -> UltraChain:
    if not is_ultrametric(M):
        raise NotUltrametric("strong triangle inequality fails")
    if verify and not is_ab_ho(M.gec):
        raise NotAbHo("space is not absolutely homogeneous")
    d = M.dist
    levels = []
    blocks = [list(range(M.n))]  # classes of "d <= t" for the current t
    for t in sorted(M.values(), reverse=True):
        counts = set()
        nxt = []
        for B in blocks:
            sub: list[list[int]] = []
            for x in B:
                for S in sub:
                    if d[S[0]][x] < t:
                        S.append(x)
                        break
                else:
                    sub.append([x])
            counts.add(len(sub))
            nxt += sub
        if len(counts) != 1:
            raise NonUniformBlocks(f"level {t} splits blocks into {sorted(counts)} parts")
        levels.append((t, counts.pop()))
        blocks = nxt
    return UltraChain(levels)


def build_ultrametric(c: UltraChain) -> MetricSpace:
    """Product of discrete spaces t * delta on m points, largest t first."""
    if not c.levels:
        return as_metric(Gec(((PSEUDO,),), PSEUDO))
    factors = [from_function(m, lambda i, j, t=t: fmt(t), PSEUDO) for t, m in c.levels]
    return as_metric(product(factors))


def metric_product_ok(spec: ProductSpec | Sequence[MetricSpace]) -> Decision:
    """A later factor may only use distances at most twice every earlier one."""
    fs = list(spec.factors if isinstance(spec, ProductSpec) else spec)
    gecs = [f.gec if isinstance(f, MetricSpace) else f for f in fs]
    ok = productable(gecs)
    if not ok:
        raise NotProductable(ok.witness)
    spaces = [f if isinstance(f, MetricSpace) else as_metric(f) for f in fs]
    for i, j in itertools.combinations(range(len(spaces)), 2):
        for a in sorted(spaces[i].values()):
            for b in sorted(spaces[j].values()):
                if b > 2 * a:
                    return Decision(False, (fmt(a), fmt(b)))
    return Decision(True)


def _dyadic(x: Fraction) -> int:
    k = x.numerator.bit_length() - x.denominator.bit_length()
    # now 2^(k-1) < x < 2^(k+1); pin it down
    while Fraction(2) ** k > x:
        k -= 1
    while Fraction(2) ** (k + 1) <= x:
        k += 1
    return k


def synth_order(Y: Iterable) -> list:
    """Dyadic blocks [2^k, 2^(k+1)) in decreasing k, ascending inside a block;
    any later element b and earlier a then satisfy b <= 2a."""
    items = list(Y)
    if not items:
        raise ValueError("empty set")
    keyed = sorted({parse(y): y for y in items}.items())
    return [y for x, y in sorted(keyed, key=lambda p: (-_dyadic(p[0]), p[0]))]


def delta_bounds(I: IncompleteGec) -> tuple[Fraction, Fraction]:
    """Interval [m, M] containing every metric value for the unpainted edge."""
    if I.n < 3:
        raise TooSmall("needs a third vertex")
    n, a, b = I.n, I.a, I.b
    d = [[Fraction(0) if i == j else (None if I.colors[i][j] is None else parse(I.colors[i][j]))
          for j in range(n)] for i in range(n)]
    for x, y, z in itertools.permutations(range(n), 3):
        if None in (d[x][y], d[y][z], d[x][z]):
            continue
        if d[x][z] > d[x][y] + d[y][z]:
            raise NotMetric(f"painted part violates the triangle inequality at {(x, y, z)}")
    others = [c for c in range(n) if c not in (a, b)]
    lo = max(abs(d[a][c] - d[b][c]) for c in others)
    hi = min(d[a][c] + d[b][c] for c in others)
    return lo, hi


# --- embeddability ---------------------------------------------------------

SPACES = ("euclid", "sphere", "hyperbolic")


def _matrix(M) -> np.ndarray:
    if isinstance(M, MetricSpace):
        return M.array()
    if isinstance(M, Gec):
        return as_metric(M).array()
    return np.asarray(M, dtype=float)


def _space(space: str) -> str:
    s = space.lower()
    if s not in SPACES:
        raise ValueError(f"unknown space {space!r}")
    return s


def gram(M, space: str) -> np.ndarray:
    """The matrix whose signature decides embeddability, scaled by max(1, 1-norm)."""
    space = _space(space)
    D = _matrix(M)
    if space == "euclid":
        diam = D.max() if D.size else 0.0
        if diam > 0:
            D = D / diam
        n = len(D)
        J = np.eye(n) - np.ones((n, n)) / n
        A = -0.5 * J @ (D ** 2) @ J
    elif space == "sphere":
        if (D > 1 + 1e-12).any() or (D < 0).any():
            raise BadDistances("sphere distances must lie in [0, 1]")
        A = np.cos(np.pi * D)
    else:
        A = np.cosh(D)
    A = (A + A.T) / 2
    scale = max(1.0, np.abs(A).sum(axis=0).max()) if A.size else 1.0
    return A / scale


def signature(M, space: str, tol: float = TOL) -> tuple[int, int]:
    """(#eigenvalues > tol, #eigenvalues < -tol) of the scaled matrix."""
    A = gram(M, space)
    if not A.size:
        return 0, 0
    w = np.linalg.eigvalsh(A)
    return int((w > tol).sum()), int((w < -tol).sum())


def embeds(M, space: str, n: int, tol: float = TOL) -> bool:
    space = _space(space)
    if len(_matrix(M)) <= 1:
        return n >= 0
    pos, neg = signature(M, space, tol)
    if space == "euclid":
        return neg == 0 and pos <= n
    if space == "sphere":
        return neg == 0 and pos <= n + 1
    return pos == 1 and neg <= n


def embeds_locally(M, space: str, n: int, tol: float = TOL) -> bool:
    """Every subset of at most n+3 points embeds."""
    D = _matrix(M)
    k = min(len(D), n + 3)
    return all(embeds(D[np.ix_(S, S)], space, n, tol)
               for S in itertools.combinations(range(len(D)), k))


def realize(M, space: str, n: int, tol: float = TOL) -> np.ndarray:
    """Coordinates from the spectral factorization: points of R^n, unit
    vectors of R^(n+1), or hyperboloid points (x0 > 0) of R^(1,n)."""
    space = _space(space)
    D = _matrix(M)
    if not embeds(D, space, n, tol):
        raise ValueError("space does not embed")
    if space == "euclid":
        n_pts = len(D)
        J = np.eye(n_pts) - np.ones((n_pts, n_pts)) / n_pts
        A = -0.5 * J @ (D ** 2) @ J
        w, V = np.linalg.eigh(A)
        idx = np.argsort(w)[::-1][:n]
        return V[:, idx] * np.sqrt(np.clip(w[idx], 0, None))
    if space == "sphere":
        w, V = np.linalg.eigh(np.cos(np.pi * D))
        idx = np.argsort(w)[::-1][:n + 1]
        X = V[:, idx] * np.sqrt(np.clip(w[idx], 0, None))
        return X / np.linalg.norm(X, axis=1, keepdims=True)
    w, V = np.linalg.eigh(np.cosh(D))
    order = np.argsort(w)
    top = order[-1]
    neg = order[:n]
    X = np.column_stack([V[:, top] * math.sqrt(w[top])] +
                        [V[:, k] * math.sqrt(max(-w[k], 0.0)) for k in neg])
    if X[0, 0] < 0:
        X[:, 0] = -X[:, 0]
    return X


def distances(X: np.ndarray, space: str) -> np.ndarray:
    """Distance matrix of coordinates in the chosen model."""
    space = _space(space)
    if space == "euclid":
        diff = X[:, None, :] - X[None, :, :]
        return np.sqrt((diff ** 2).sum(-1))
    if space == "sphere":
        return np.arccos(np.clip(X @ X.T, -1, 1)) / np.pi
    B = np.outer(X[:, 0], X[:, 0]) - X[:, 1:] @ X[:, 1:].T
    return np.arccosh(np.clip(B, 1, None))


def _place(G: np.ndarray, dim: int, tol: float) -> np.ndarray | None:
    """Incremental Cholesky-style placement of vectors with Gram matrix G into
    R^dim; None if more dimensions are needed or G is not a Gram matrix."""
    scale = max(1.0, np.abs(G).max())
    basis: list[int] = []  # placed points that opened a new axis
    X = np.zeros((len(G), dim))
    for k in range(len(G)):
        x = np.zeros(dim)
        for axis, i in enumerate(basis):
            x[axis] = (G[i, k] - X[i, :axis] @ x[:axis]) / X[i, axis]
        r = G[k, k] - x @ x
        if r > tol * scale * 1e3:
            if len(basis) == dim:
                return None
            x[len(basis)] = math.sqrt(r)
            basis.append(k)
        elif r < -tol * scale * 1e3:
            return None
        X[k] = x
        err = np.abs(X[:k + 1] @ x - G[:k + 1, k]).max()
        if err > 1e3 * tol * scale:
            return None
    return X


def place(M, space: str, n: int, tol: float = TOL) -> np.ndarray | None:
    """Point-by-point coordinate placement; returns coordinates or None."""
    space = _space(space)
    D = _matrix(M)
    if space == "euclid":
        G = (D[0][:, None] ** 2 + D[0][None, :] ** 2 - D ** 2) / 2
        return _place(G, n, tol)
    if space == "sphere":
        return _place(np.cos(np.pi * D), n + 1, tol)
    C = np.cosh(D)
    W = np.outer(C[0], C[0]) - C
    Y = _place(W, n, tol)
    if Y is None:
        return None
    return np.column_stack([C[0], Y])
