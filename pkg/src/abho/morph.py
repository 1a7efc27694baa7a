"""Partial morphisms, automorphisms, isomorphism and canonical forms.

Search kernels work on integer color codes and keep, for every unmapped
vertex, a boolean mask of admissible images.  Mapping x -> y intersects the
masks with "same color to x as to y" in both directions, so a mask is empty
exactly when the current partial map has no one-point extension at that
vertex.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from .core import Gec
from .errors import KindMismatch, NotAbHo, NotAMorphism, PseudocolorMismatch

PartialMap = Mapping[int, int]


@dataclass(frozen=True)
class Decision:
    """A yes/no answer carrying an optional witness; truthy iff ``ok``."""

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class PermGroup:
    n: int
    perms: frozenset[tuple[int, ...]]

    def __len__(self) -> int:
        return len(self.perms)

    def __iter__(self):
        return iter(sorted(self.perms))

    def __contains__(self, p) -> bool:
        return tuple(p) in self.perms

    @property
    def order(self) -> int:
        return len(self.perms)

    def is_group(self) -> bool:
        ident = tuple(range(self.n))
        if ident not in self.perms:
            return False
        for p in self.perms:
            inv = [0] * self.n
            for i, x in enumerate(p):
                inv[x] = i
            if tuple(inv) not in self.perms:
                return False
            for q in self.perms:
                if tuple(p[q[i]] for i in range(self.n)) not in self.perms:
                    return False
        return True

    def orbits(self) -> list[list[int]]:
        seen, out = set(), []
        for v in range(self.n):
            if v in seen:
                continue
            orb = sorted({p[v] for p in self.perms})
            seen.update(orb)
            out.append(orb)
        return out


def _shared_codes(G: Gec, H: Gec) -> tuple[np.ndarray, np.ndarray]:
    """Code both matrices over one color alphabet."""
    cols = sorted(G.palette | H.palette | {G.pseudo, H.pseudo})
    idx = {c: k for k, c in enumerate(cols)}
    A = np.array([[idx[c] for c in r] for r in G.colors], dtype=np.int64).reshape(G.n, G.n)
    B = np.array([[idx[c] for c in r] for r in H.colors], dtype=np.int64).reshape(H.n, H.n)
    return A, B


def _check_kinds(G: Gec, H: Gec):
    if G.directed != H.directed:
        raise KindMismatch(f"{G.kind} vs {H.kind}")


def is_partial_morphism(G: Gec, H: Gec, f: PartialMap) -> bool:
    _check_kinds(G, H)
    if G.pseudo != H.pseudo:
        raise PseudocolorMismatch(f"{G.pseudo!r} vs {H.pseudo!r}")
    if len(set(f.values())) != len(f):
        return False
    for a, fa in f.items():
        if not (0 <= a < G.n and 0 <= fa < H.n):
            raise IndexError("map leaves the vertex set")
    items = list(f.items())
    return all(G.colors[a][b] == H.colors[fa][fb] for a, fa in items for b, fb in items)


# --- refinement ----------------------------------------------------------

def _refine(mats: list[np.ndarray]) -> list[list[int]]:
    """Joint colour refinement; equal vertex classes are comparable across
    the given matrices."""
    cols = [[0] * len(M) for M in mats]
    rows = [M.tolist() for M in mats]
    ncls = 1
    while True:
        table: dict = {}
        new = []
        for R, c in zip(rows, cols):
            n = len(R)
            sigs = []
            for x in range(n):
                nb = sorted((R[x][y], R[y][x], c[y]) for y in range(n) if y != x)
                sigs.append((c[x], tuple(nb)))
            new.append(sigs)
        for sigs in new:
            for s in sigs:
                table.setdefault(s, None)
        order = {s: k for k, s in enumerate(sorted(table))}
        cols = [[order[s] for s in sigs] for sigs in new]
        if len(order) == ncls:
            return cols
        ncls = len(order)


# --- backtracking kernels ------------------------------------------------

def _assign(A, B, cand, x, y):
    cand = cand & (A[x][:, None] == B[y][None, :]) & (A[:, x][:, None] == B[:, y][None, :])
    cand[:, y] = False
    return cand


def _search(A, B, cand, start: Mapping[int, int], limit: int | None = None) -> Iterator[list[int]]:
    """Enumerate color-preserving bijections A -> B extending ``start``."""
    n = len(A)
    mapping = [-1] * n
    for x, y in start.items():
        if not cand[x, y]:
            return
        cand = _assign(A, B, cand, x, y)
        mapping[x] = y
    found = 0

    def rec(cand, unmapped):
        nonlocal found
        if not unmapped:
            found += 1
            yield list(mapping)
            return
        counts = cand[unmapped].sum(axis=1)
        k = int(np.argmin(counts))
        if counts[k] == 0:
            return
        x = unmapped[k]
        rest = unmapped[:k] + unmapped[k + 1:]
        for y in np.flatnonzero(cand[x]).tolist():
            mapping[x] = y
            yield from rec(_assign(A, B, cand, x, y), rest)
            mapping[x] = -1
            if limit is not None and found >= limit:
                return

    yield from rec(cand, [x for x in range(n) if mapping[x] < 0])


def _greedy(S: np.ndarray, start: Mapping[int, int]) -> tuple[bool, dict[int, int]]:
    """Extend ``start`` one point at a time without backtracking.

    Returns (True, automorphism) or (False, stuck partial map).  For an
    absolutely homogeneous structure the first outcome is guaranteed."""
    n = len(S)
    cand = np.ones((n, n), dtype=bool)
    mapping: dict[int, int] = {}
    for x, y in start.items():
        if not cand[x, y]:
            return False, mapping
        cand = _assign(S, S, cand, x, y)
        mapping[x] = y
    unmapped = [x for x in range(n) if x not in mapping]
    while unmapped:
        counts = cand[unmapped].sum(axis=1)
        k = int(np.argmin(counts))
        if counts[k] == 0:
            return False, mapping
        x = unmapped.pop(k)
        y = int(np.flatnonzero(cand[x])[0])
        cand = _assign(S, S, cand, x, y)
        mapping[x] = y
    return True, mapping


def _seed(A, B=None):
    B = A if B is None else B
    ca, cb = _refine([A, B]) if B is not A else (_refine([A]) * 2)
    ca, cb = np.array(ca), np.array(cb)
    return ca[:, None] == cb[None, :], ca, cb


def extend_to_automorphism(G: Gec, f: PartialMap) -> tuple[int, ...] | None:
    """An automorphism extending f, or None when no extension exists."""
    if not is_partial_morphism(G, G, f):
        raise NotAMorphism(f"{dict(f)} is not a partial morphism")
    if G.n == 0:
        return ()
    A = G.codes
    cand, _, _ = _seed(A)
    for sol in _search(A, A, cand, dict(f), limit=1):
        return tuple(sol)
    return None


def automorphisms(G: Gec) -> PermGroup:
    if G.n == 0:
        return PermGroup(0, frozenset({()}))
    A = G.codes
    cand, _, _ = _seed(A)
    return PermGroup(G.n, frozenset(tuple(p) for p in _search(A, A, cand, {})))


def isomorphic(G: Gec, H: Gec) -> tuple[int, ...] | None:
    """A color-preserving bijection G -> H (as a tuple of images), or None."""
    _check_kinds(G, H)
    if G.n != H.n or G.pseudo != H.pseudo or G.palette != H.palette:
        return None
    if G.n == 0:
        return ()
    A, B = _shared_codes(G, H)
    if sorted(A.ravel().tolist()) != sorted(B.ravel().tolist()):
        return None
    cand, ca, cb = _seed(A, B)
    if sorted(ca.tolist()) != sorted(cb.tolist()):
        return None
    for sol in _search(A, B, cand, {}, limit=1):
        return tuple(sol)
    return None


# --- absolute homogeneity ------------------------------------------------

def _maximize(G: Gec, f: dict[int, int]) -> dict[int, int]:
    """Grow a partial morphism until no one-point extension exists."""
    c = G.colors
    f = dict(f)
    grown = True
    while grown:
        grown = False
        for b in range(G.n):
            if b in f:
                continue
            used = set(f.values())
            for t in range(G.n):
                if t in used:
                    continue
                if all(c[a][b] == c[fa][t] and c[b][a] == c[t][fa] for a, fa in f.items()):
                    f[b] = t
                    grown = True
                    break
    return dict(sorted(f.items()))


def _abho_node(M: np.ndarray, F: list[int], K: list[int]) -> dict[int, int] | None:
    """Decide absolute homogeneity of the structure on K labelled by the
    colors to and from the fixed points F; return a stuck map or None."""
    if len(K) <= 1:
        return None
    labels: dict[tuple, list[int]] = {}
    for x in K:
        key = tuple(M[F, x].tolist()) + tuple(M[x, F].tolist())
        labels.setdefault(key, []).append(x)
    classes = list(labels.values())

    # classes whose mutual colors are not constant must be handled together
    parent = list(range(len(classes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            fw = M[np.ix_(classes[i], classes[j])]
            bw = M[np.ix_(classes[j], classes[i])]
            if (fw != fw.flat[0]).any() or (bw != bw.flat[0]).any():
                parent[find(i)] = find(j)
    comps: dict[int, list[int]] = {}
    for i in range(len(classes)):
        comps.setdefault(find(i), []).append(i)

    for members in comps.values():
        ccls = [classes[i] for i in members]
        if len(ccls) == 1:
            C = ccls[0]
            sub = M[np.ix_(C, C)]
            off = sub[~np.eye(len(C), dtype=bool)]
            if len(C) <= 1 or (off == off[0]).all():
                continue  # every label-preserving bijection works
        comp = sorted(x for C in ccls for x in C)
        idx = F + comp
        pos = {v: k for k, v in enumerate(idx)}
        S = M[np.ix_(idx, idx)]
        fixed = {k: k for k in range(len(F))}
        for C in ccls:
            if len(C) == 1:
                continue
            root = {x: x for x in C}

            def rfind(x):
                while root[x] != x:
                    root[x] = root[root[x]]
                    x = root[x]
                return x

            a = C[0]
            for a2 in C[1:]:
                if rfind(a2) == rfind(a):
                    continue
                ok, m = _greedy(S, {**fixed, pos[a]: pos[a2]})
                if not ok:
                    return {idx[s]: idx[t] for s, t in m.items()}
                for s, t in m.items():
                    u, v = idx[s], idx[t]
                    if u in root and v in root:
                        ru, rv = rfind(u), rfind(v)
                        if ru != rv:
                            root[ru] = rv
        for C in ccls:
            a = C[0]
            w = _abho_node(M, F + [a], [x for x in comp if x != a])
            if w is not None:
                return w
    return None


def is_ab_ho(G: Gec) -> Decision:
    """Absolute homogeneity.  On failure the witness is a partial morphism
    (as a sorted dict) admitting no one-point extension."""
    if G.n <= 1:
        return Decision(True)
    w = _abho_node(G.codes, [], list(range(G.n)))
    if w is None:
        return Decision(True)
    return Decision(False, _maximize(G, w))


def is_uniquely_homogeneous(G: Gec) -> bool:
    if G.n <= 1:
        return True
    if not is_ab_ho(G):
        raise NotAbHo("structure is not absolutely homogeneous")
    A = G.codes
    cand, _, _ = _seed(A)
    # given homogeneity, unique extension <=> trivial point stabilizer
    return sum(1 for _ in _search(A, A, cand, {0: 0}, limit=2)) == 1


# --- canonical forms -----------------------------------------------------

def _twins(M: list[list[int]]) -> set[tuple[int, int]]:
    n = len(M)
    out = set()
    for v in range(n):
        for w in range(v + 1, n):
            if M[v][v] != M[w][w] or M[v][w] != M[w][v]:
                continue
            if all(M[v][x] == M[w][x] and M[x][v] == M[x][w]
                   for x in range(n) if x != v and x != w):
                out.add((v, w))
                out.add((w, v))
    return out


def _canon(M: list[list[int]], recolor: bool) -> tuple[tuple, list[int], dict]:
    """Minimal cell sequence over vertex orders.

    Cells are read block-wise: vertex k contributes (k,k), (k,0), (0,k), ...,
    (k,k-1), (k-1,k).  With ``recolor`` codes are renamed by first occurrence
    along the sequence."""
    n = len(M)
    twins = _twins(M)
    best: list = [None, None, None]  # segments, order, renaming

    def segment(order, v, ren):
        cells = [M[v][v]]
        for u in order:
            cells.append(M[v][u])
            cells.append(M[u][v])
        if not recolor:
            return tuple(cells), ren
        ren = dict(ren)
        out = []
        for c in cells:
            if c not in ren:
                ren[c] = len(ren)
            out.append(ren[c])
        return tuple(out), ren

    def rec(order, segs, ren, remaining):
        k = len(order)
        if k == n:
            if best[0] is None or segs < best[0]:
                best[0], best[1], best[2] = list(segs), list(order), ren
            return
        opts = []
        tried: list[int] = []
        for v in remaining:
            if any((v, w) in twins for w in tried):
                continue
            tried.append(v)
            s, r2 = segment(order, v, ren)
            opts.append((s, v, r2))
        opts.sort(key=lambda t: t[0])
        for s, v, r2 in opts:
            cur = segs + [s]
            if best[0] is not None and cur > best[0][: k + 1]:
                break
            rec(order + [v], cur, r2, [x for x in remaining if x != v])

    rec([], [], {}, list(range(n)))
    return tuple(best[0] or ()), best[1] or [], best[2] or {}


def canon_labeling(G: Gec, recolor: bool = False):
    """(canonical matrix, order, color renaming); ``order[k]`` is the original
    vertex placed at position k."""
    M = G.codes.tolist()
    _, order, ren = _canon(M, recolor)
    cl = G.color_list
    if recolor:
        name = {cl[code]: str(k) for code, k in ren.items()}
    else:
        name = {c: c for c in cl}
    mat = tuple(tuple(name[G.colors[u][v]] for v in order) for u in order)
    return mat, order, name


def canon(G: Gec) -> tuple[tuple[str, ...], ...]:
    """Canonical relabeling: equal for two structures iff isomorphic."""
    return canon_labeling(G)[0]


def canon_struct(G: Gec) -> tuple[tuple[str, ...], ...]:
    """Canonical form up to vertex relabeling and color renaming."""
    return canon_labeling(G, recolor=True)[0]


def structurally_equivalent(G: Gec, H: Gec):
    """(vertex bijection, color bijection) turning G into H, or None."""
    _check_kinds(G, H)
    if G.n != H.n or len(G.palette) != len(H.palette):
        return None
    cg = sorted(np.unique(G.codes, return_counts=True)[1].tolist())
    ch = sorted(np.unique(H.codes, return_counts=True)[1].tolist())
    if cg != ch:
        return None
    mg, og, ng = canon_labeling(G, recolor=True)
    mh, oh, nh = canon_labeling(H, recolor=True)
    if mg != mh:
        return None
    back = {k: c for c, k in nh.items()}
    colors = {c: back[k] for c, k in ng.items()}
    vmap = [0] * G.n
    for pos, v in enumerate(og):
        vmap[v] = oh[pos]
    return tuple(vmap), colors
