"""Skeletons and other hereditary classes of finite structures.

A class is stored as the set of canonical matrices of its members, so it is
closed under isomorphism by construction.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .core import Gec, IncompleteGec, induce
from .errors import KindMismatch, MixedKinds, NotAffiliated, NotASkeleton, TooSmall
from .morph import Decision, automorphisms, canon, canon_labeling, is_ab_ho

Matrix = tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class FinStructure:
    directed: bool
    pseudo: str
    members: frozenset[Matrix]

    @cached_property
    def reps(self) -> dict[int, frozenset[Matrix]]:
        out: dict[int, set] = {}
        for m in self.members:
            out.setdefault(len(m), set()).add(m)
        return {k: frozenset(v) for k, v in sorted(out.items())}

    @cached_property
    def palette(self) -> frozenset[str]:
        return frozenset(c for m in self.members for i, r in enumerate(m)
                         for j, c in enumerate(r) if i != j)

    @property
    def max_size(self) -> int:
        return max(self.reps, default=0)

    def sizes(self) -> dict[int, int]:
        return {k: len(v) for k, v in self.reps.items()}

    def gec(self, m: Matrix) -> Gec:
        return Gec(m, self.pseudo, self.directed)

    def __contains__(self, G: Gec) -> bool:
        if G.n == 0:
            return True
        return G.directed == self.directed and G.pseudo == self.pseudo and canon(G) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def to_dict(self) -> dict:
        return {
            "kind": "dgec" if self.directed else "gec",
            "pseudocolor": self.pseudo,
            "members": [[list(r) for r in m] for m in sorted(self.members, key=lambda m: (len(m), m))],
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "FinStructure":
        directed = d.get("kind", "gec") == "dgec"
        seeds = [Gec(m, d["pseudocolor"], directed) for m in d["members"]]
        F = close_hereditary(seeds)
        if not seeds:
            return cls(directed, d["pseudocolor"], frozenset())
        return F


@dataclass(frozen=True)
class BoundProfile:
    mono: dict[str, int]
    ordered: dict[tuple[str, str], int]

    def to_dict(self) -> dict:
        return {
            "mono": dict(sorted(self.mono.items())),
            "ordered": [[c, d, v] for (c, d), v in sorted(self.ordered.items())],
        }


def _subsets(n: int):
    for k in range(1, n + 1):
        yield from itertools.combinations(range(n), k)


def skeleton(G: Gec) -> FinStructure:
    """All nonempty induced substructures up to isomorphism."""
    return FinStructure(G.directed, G.pseudo,
                        frozenset(canon(induce(G, S)) for S in _subsets(G.n)))


def close_hereditary(seeds: Sequence[Gec]) -> FinStructure:
    if not seeds:
        return FinStructure(False, "0", frozenset())
    if len({(s.directed, s.pseudo) for s in seeds}) > 1:
        raise MixedKinds("seeds differ in kind or pseudocolor")
    members: set = set()
    for s in seeds:
        members |= skeleton(s).members
    return FinStructure(seeds[0].directed, seeds[0].pseudo, frozenset(members))


def finitely_represented(H: Gec, F: FinStructure) -> bool:
    if H.n == 0:
        return True
    if H.directed != F.directed:
        raise KindMismatch("structure and class differ in kind")
    return H in F


def _is_mono(m: Matrix) -> bool:
    off = {c for i, r in enumerate(m) for j, c in enumerate(r) if i != j}
    return len(off) <= 1


def is_ordered(m: Matrix, c: str, d: str) -> bool:
    """(c,d)-ordered: a linear order with u < v iff kappa(u,v)=c and kappa(v,u)=d."""
    n = len(m)
    succ = [0] * n
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            if m[u][v] == c and m[v][u] == d:
                succ[u] += 1
            elif not (m[u][v] == d and m[v][u] == c):
                return False
    # a tournament is transitive iff out-degrees are 0..n-1
    return sorted(succ) == list(range(n))


def bound_profile(F: FinStructure) -> BoundProfile:
    mono = {c: 1 for c in F.palette}
    for m in F.members:
        if len(m) >= 2 and _is_mono(m):
            c = m[0][1]
            mono[c] = max(mono[c], len(m))
    ordered: dict = {}
    if F.directed:
        for c, d in itertools.permutations(sorted(F.palette), 2):
            ordered[(c, d)] = max(len(m) for m in F.members if is_ordered(m, c, d))
    return BoundProfile(mono, ordered)


def rank(F: FinStructure) -> int:
    best = 0
    pal = sorted(F.palette)
    for m in F.members:
        if _is_mono(m) or (F.directed and any(
                is_ordered(m, c, d) for c, d in itertools.permutations(pal, 2))):
            best = max(best, len(m) - 1)
    return best


def is_nonsymmetric(I: IncompleteGec) -> bool:
    if I.n < 3:
        raise TooSmall("needs a third vertex")
    a, b, c = I.a, I.b, I.colors
    return any(c[a][x] != c[b][x] or (I.directed and c[x][a] != c[x][b])
               for x in range(I.n) if x not in (a, b))


def is_affiliated(F: FinStructure, I: IncompleteGec) -> bool:
    return I.without(I.a) in F and I.without(I.b) in F


def _completions(F: FinStructure):
    pal = sorted(F.palette)
    if F.directed:
        return list(itertools.product(pal, repeat=2))
    return pal


def delta(F: FinStructure, I: IncompleteGec) -> set:
    """Colors (pairs (kappa(a,b), kappa(b,a)) when directed) that complete I
    inside F."""
    if I.directed != F.directed:
        raise KindMismatch("incomplete structure and class differ in kind")
    if not is_affiliated(F, I):
        raise NotAffiliated("an endpoint deletion is not a member")
    if F.directed:
        return {(c, d) for c, d in _completions(F) if I.complete(c, d) in F}
    return {c for c in _completions(F) if I.complete(c) in F}


def extensions(F: FinStructure, P: Matrix) -> set[tuple[tuple[str, ...], tuple[str, ...]]]:
    """One-point extensions of the member P inside F, as (colors from the new
    vertex to P, colors from P to the new vertex) over P's own labeling."""
    m = len(P)
    out = set()
    for Q in F.reps.get(m + 1, ()):
        G = F.gec(Q)
        for q in range(m + 1):
            rest = [x for x in range(m + 1) if x != q]
            mat, order, _ = canon_labeling(induce(G, rest))
            if mat != P:
                continue
            src = [rest[k] for k in order]
            out.add((tuple(Q[q][x] for x in src), tuple(Q[x][q] for x in src)))
    if out:
        auts = automorphisms(F.gec(P))
        closed = set()
        for fw, bw in out:
            for s in auts:
                f2, b2 = [None] * m, [None] * m
                for k in range(m):
                    f2[s[k]], b2[s[k]] = fw[k], bw[k]
                closed.add((tuple(f2), tuple(b2)))
        out = closed
    return out


def _glue(F: FinStructure, P: Matrix, u, v) -> IncompleteGec:
    m = len(P)
    rows: list[list] = [list(r) + [u[1][i], v[1][i]] for i, r in enumerate(P)]
    rows.append(list(u[0]) + [F.pseudo, None])
    rows.append(list(v[0]) + [None, F.pseudo])
    return IncompleteGec(rows, F.pseudo, m, m + 1, F.directed)


def nonsymmetric_affiliated(F: FinStructure, max_size: int | None = None):
    """Every nonsymmetric incomplete structure affiliated with F (up to
    relabeling) with at most max_size vertices."""
    if max_size is None:
        max_size = F.max_size + 1
    for N in range(3, max_size + 1):
        for P in sorted(F.reps.get(N - 2, ())):
            ext = sorted(extensions(F, P))
            for u, v in itertools.combinations(ext, 2):
                yield _glue(F, P, u, v)


def check_ap(F: FinStructure, max_size: int | None = None) -> Decision:
    """Ok iff every nonsymmetric affiliated incomplete structure up to
    max_size vertices has a completion in F; otherwise the first failure."""
    for I in nonsymmetric_affiliated(F, max_size):
        if not delta(F, I):
            return Decision(False, I)
    return Decision(True)


def generate(F: FinStructure) -> Gec:
    """Grow a member one point at a time inside F until it is maximal, and
    return it once it is verified to be homogeneous with skeleton F."""
    if not F.members:
        raise NotASkeleton("empty class")
    ups: dict[Matrix, list[Matrix]] = {m: [] for m in F.members}
    for Q in sorted(F.members):
        G = F.gec(Q)
        below = {canon(induce(G, [x for x in range(len(Q)) if x != q])) for q in range(len(Q))} \
            if len(Q) > 1 else set()
        for P in sorted(below):
            if P in ups:
                ups[P].append(Q)
    stalled = None
    seen = set()
    stack = [min(F.reps[min(F.reps)])]
    while stack:
        cur = stack.pop()
        if cur in seen:
            continue
        seen.add(cur)
        nxt = ups[cur]
        if nxt:
            stack.extend(reversed(nxt))
            continue
        G = F.gec(cur)
        if is_ab_ho(G) and skeleton(G) == F:
            return G
        if stalled is None:
            stalled = G
    raise NotASkeleton("no maximal member generates the class", stalled)


def _minimal_nonmember_sizes(F: FinStructure, bound: int) -> list[int]:
    """Sizes (<= bound) of palette-internal structures outside F all of whose
    proper induced substructures lie in F."""
    pal = sorted(F.palette)
    entries = list(itertools.product(pal, repeat=2)) if F.directed else [(c, c) for c in pal]
    sizes = []
    for k in range(2, bound + 1):
        found = False
        for P in sorted(F.reps.get(k - 1, ())):
            m = k - 1

            def build(vec):
                j = len(vec)
                rows = [list(P[i][:j]) + [vec[i][1]] for i in range(j)]
                rows.append([vec[i][0] for i in range(j)] + [F.pseudo])
                return Gec(rows, F.pseudo, F.directed)

            def rec(vec):
                nonlocal found
                if found:
                    return
                if len(vec) == m:
                    G = build(vec)
                    if G in F:
                        return
                    for drop in range(m):
                        S = [x for x in range(m + 1) if x != drop]
                        if induce(G, S) not in F:
                            return
                    found = True
                    return
                for e in entries:
                    v2 = vec + [e]
                    if len(v2) + 1 < k and build(v2) not in F:
                        continue
                    rec(v2)

            rec([])
            if found:
                break
        if found:
            sizes.append(k)
    return sizes


def height(F: FinStructure, search_bound: int | None = None) -> int:
    """Least n such that membership is decided by induced substructures on at
    most n+3 vertices, over palette-internal structures up to search_bound."""
    if search_bound is None:
        search_bound = F.max_size + 1
    sizes = _minimal_nonmember_sizes(F, search_bound)
    return max([0] + [s - 3 for s in sizes])
