"""Lexicographic first-difference products of finitely many factors."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import Gec
from .errors import NotProductable
from .morph import Decision


@dataclass(frozen=True)
class ProductSpec:
    """Ordered factor list; the first factor is the most significant."""

    factors: tuple[Gec, ...]

    def __init__(self, factors: Sequence[Gec]):
        object.__setattr__(self, "factors", tuple(factors))


def productable(spec: ProductSpec | Sequence[Gec]) -> Decision:
    fs = spec.factors if isinstance(spec, ProductSpec) else tuple(spec)
    if not fs:
        return Decision(False, "empty factor list")
    for i, f in enumerate(fs):
        if f.n == 0:
            return Decision(False, f"factor {i} is empty")
    if len({f.directed for f in fs}) > 1:
        return Decision(False, "mixed kinds")
    if len({f.pseudo for f in fs}) > 1:
        return Decision(False, "pseudocolors differ")
    for i, j in itertools.combinations(range(len(fs)), 2):
        common = fs[i].palette & fs[j].palette
        if common:
            return Decision(False, f"factors {i} and {j} share colors {sorted(common)}")
    return Decision(True)


def product(spec: ProductSpec | Sequence[Gec]) -> Gec:
    """Vertices are tuples in row-major order; the color of (x, y) is read in
    the first factor where x and y differ."""
    fs = spec.factors if isinstance(spec, ProductSpec) else tuple(spec)
    ok = productable(fs)
    if not ok:
        raise NotProductable(ok.witness)
    tuples = list(itertools.product(*(range(f.n) for f in fs)))
    pseudo = fs[0].pseudo

    def color(x, y):
        for f, a, b in zip(fs, x, y):
            if a != b:
                return f.colors[a][b]
        return pseudo

    rows = tuple(tuple(color(x, y) for y in tuples) for x in tuples)
    return Gec(rows, pseudo, fs[0].directed)


def vertex_tuples(spec: ProductSpec | Sequence[Gec]) -> list[tuple[int, ...]]:
    fs = spec.factors if isinstance(spec, ProductSpec) else tuple(spec)
    return list(itertools.product(*(range(f.n) for f in fs)))
