"""Exhaustive small corpora.

``all_structures`` lists every coloring up to isomorphism.  ``abho_corpus``
lists absolutely homogeneous structures up to structural equivalence without
enumerating colorings: in such a structure two ordered pairs carry the same
(forward, backward) color pair exactly when an automorphism maps one to the
other, so the reversified coloring is the orbital partition of a 2-closed
transitive permutation group.  Orbital partitions of 2-closed groups are
reached from the discrete partition by repeatedly joining with the pair
orbits of one extra permutation; the search runs over conjugacy classes.
"""
from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterable, Sequence

from .core import Gec, recolor, relabel
from .morph import _canon, canon, canon_struct, is_ab_ho

PSEUDO = "0"


def all_structures(n: int, palette: Sequence[str], directed: bool = False,
                   pseudo: str = PSEUDO) -> list[Gec]:
    """All structures on n vertices with colors from ``palette`` (any subset
    may occur), one per isomorphism class, in canonical order."""
    cells = [(i, j) for i in range(n) for j in range(n) if (i < j or (directed and i != j))]
    seen: dict = {}
    for combo in itertools.product(palette, repeat=len(cells)):
        rows = [[pseudo] * n for _ in range(n)]
        for (i, j), c in zip(cells, combo):
            rows[i][j] = c
            if not directed:
                rows[j][i] = c
        G = Gec(rows, pseudo, directed)
        seen.setdefault(canon(G), G)
    return [Gec(k, pseudo, directed) for k in sorted(seen)]


def _join(P: tuple[tuple[int, ...], ...], g: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    n = len(P)
    parent = list(range(n * n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    first: dict[int, int] = {}
    for i in range(n):
        for j in range(n):
            c = i * n + j
            r = first.setdefault(P[i][j], c)
            parent[find(c)] = find(r)
            parent[find(c)] = find(g[i] * n + g[j])
    name: dict[int, int] = {}
    return tuple(tuple(name.setdefault(find(i * n + j), len(name)) for j in range(n))
                 for i in range(n))


@lru_cache(maxsize=None)
def orbital_partitions(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Orbital partitions of all 2-closed subgroups of Sym(n), one per
    conjugacy class, as integer matrices."""
    start = tuple(tuple(i * n + j for j in range(n)) for i in range(n))
    perms = list(itertools.permutations(range(n)))[1:]
    key = lambda P: _canon([list(r) for r in P], True)[0]
    found = {key(start): start}
    queue = [start]
    while queue:
        P = queue.pop()
        local = {P}
        for g in perms:
            Q = _join(P, g)
            if Q in local:
                continue
            local.add(Q)
            k = key(Q)
            if k not in found:
                found[k] = Q
                queue.append(Q)
    return tuple(found[k] for k in sorted(found))


def _set_partitions(items: list):
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1:]
        yield [[head]] + part


@lru_cache(maxsize=None)
def _abho_corpus_n(n: int, directed: bool) -> tuple[Gec, ...]:
    if n <= 1:
        return (Gec([[PSEUDO]] * n, PSEUDO, directed),) if n else ()
    out: dict = {}
    for P in orbital_partitions(n):
        if len({P[i][i] for i in range(n)}) != 1:
            continue  # intransitive
        orbs = sorted({P[i][j] for i in range(n) for j in range(n) if i != j})
        if not directed:
            if any(P[i][j] != P[j][i] for i in range(n) for j in range(n)):
                continue
            colorings = [{o: str(k + 1) for k, o in enumerate(orbs)}]
        else:
            rev = {P[i][j]: P[j][i] for i in range(n) for j in range(n) if i != j}
            colorings = []
            for part in _set_partitions(orbs):
                col = {o: str(k + 1) for k, blk in enumerate(part) for o in blk}
                if len({(col[o], col[rev[o]]) for o in orbs}) == len(orbs):
                    colorings.append(col)
        for col in colorings:
            G = Gec([[PSEUDO if i == j else col[P[i][j]] for j in range(n)] for i in range(n)],
                    PSEUDO, directed)
            if is_ab_ho(G):
                cs = canon_struct(G)
                out.setdefault(cs, Gec(cs, PSEUDO, directed))
    return tuple(out[k] for k in sorted(out))


def abho_corpus(max_n: int, directed: bool = False, min_n: int = 1) -> list[Gec]:
    """Absolutely homogeneous structures on min_n..max_n vertices, one per
    structural-equivalence class, colors "1", "2", ... and pseudocolor "0"."""
    return [G for n in range(min_n, max_n + 1) for G in _abho_corpus_n(n, directed)]


def scramble(G: Gec, rng: random.Random, rename_colors: bool = False) -> Gec:
    """Random vertex relabeling, optionally with a random palette permutation."""
    perm = list(range(G.n))
    rng.shuffle(perm)
    H = relabel(G, perm)
    if rename_colors:
        pal = sorted(G.palette)
        shuffled = pal[:]
        rng.shuffle(shuffled)
        H = recolor(H, dict(zip(pal, shuffled)))
    return H


def with_variants(corpus: Iterable[Gec], seed: int = 0) -> list[Gec]:
    """Each member, a relabeled copy, and a relabeled copy with colors permuted."""
    rng = random.Random(seed)
    out = []
    for G in corpus:
        out += [G, scramble(G, rng), scramble(G, rng, rename_colors=True)]
    return out
