"""Command-line front end.

Machine-readable results go to stdout as JSON; ``--verbose`` adds a one-line
human summary on stderr.  Exit status: 0 positive/success, 1 negative
decision, 2 error.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
from pathlib import Path
from typing import Sequence

from . import core, group, itp, metric, morph, skeleta
from .corpus import abho_corpus, all_structures, with_variants
from .errors import AbhoError
from .product import product

OK, NO, ERR = 0, 1, 2


class UsageError(Exception):
    pass


def _read_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _gec(path: str) -> core.Gec:
    d = _read_json(path)
    if isinstance(d, list):
        return core.validate(d)
    return core.from_dict(d)


def _class(path: str) -> skeleta.FinStructure:
    """A class file ({"members": [...]}) or a structure whose skeleton is taken."""
    d = _read_json(path)
    if isinstance(d, dict) and "members" in d:
        return skeleta.FinStructure.from_dict(d)
    G = core.validate(d) if isinstance(d, list) else core.from_dict(d)
    return skeleta.skeleton(G)


def _distances(path: str):
    if path.endswith(".csv"):
        with open(path) as fh:
            rows = [r for r in csv.reader(fh) if r]
        return metric.from_distances(rows)
    d = _read_json(path)
    if isinstance(d, dict) and "colors" in d:
        return metric.as_metric(core.from_dict(d))
    if isinstance(d, dict):
        d = d["distances"]
    return metric.from_distances(d)


def _table(target: str) -> group.GroupTable:
    if os.path.exists(target):
        return group.GroupTable.from_dict(_read_json(target))
    try:
        return group.group_by_name(target)
    except KeyError:
        raise UsageError(f"no group file or bundled group named {target!r}") from None


def _incomplete_dict(I: core.IncompleteGec) -> dict:
    return {"kind": "dgec" if I.directed else "gec", "pseudocolor": I.pseudo,
            "colors": [list(r) for r in I.colors], "unpainted": [I.a, I.b]}


def _delta_list(d) -> list:
    return sorted(list(x) if isinstance(x, tuple) else x for x in d)


# --- verbs -----------------------------------------------------------------

def cmd_check(a):
    G = _gec(a.file)
    dec = morph.is_ab_ho(G)
    out = {"ab_ho": dec.ok}
    if dec.ok:
        k = len(morph.automorphisms(G))
        out["aut_order"] = k
        out["summary"] = f"AB-HO: yes; |Aut|={k}"
    else:
        out["witness"] = {str(x): y for x, y in sorted(dec.witness.items())}
        out["summary"] = "AB-HO: no; non-extendable map " + \
            ", ".join(f"{x}->{y}" for x, y in sorted(dec.witness.items()))
    return out, OK if dec.ok else NO


def cmd_autos(a):
    auts = morph.automorphisms(_gec(a.file))
    return {"order": len(auts), "automorphisms": [list(p) for p in auts],
            "summary": f"|Aut|={len(auts)}"}, OK


def cmd_iso(a):
    m = morph.isomorphic(_gec(a.first), _gec(a.second))
    return {"isomorphic": m is not None, "map": list(m) if m else None,
            "summary": "isomorphic" if m else "not isomorphic"}, OK if m else NO


def cmd_struct_eq(a):
    r = morph.structurally_equivalent(_gec(a.first), _gec(a.second))
    out = {"equivalent": r is not None}
    if r:
        out["map"], out["colors"] = list(r[0]), dict(sorted(r[1].items()))
    out["summary"] = "structurally equivalent" if r else "not structurally equivalent"
    return out, OK if r else NO


def cmd_skeleton(a):
    F = skeleta.skeleton(_gec(a.file))
    out = F.to_dict()
    out["sizes"] = {str(k): v for k, v in F.sizes().items()}
    out["summary"] = f"{len(F)} members up to isomorphism"
    return out, OK


def cmd_ap(a):
    F = _class(a.file)
    dec = skeleta.check_ap(F, a.max_size)
    out = {"ap": dec.ok}
    if not dec.ok:
        out["counterexample"] = _incomplete_dict(dec.witness)
    if a.list:
        out["deltas"] = [{"incomplete": _incomplete_dict(I), "delta": _delta_list(skeleta.delta(F, I))}
                         for I in skeleta.nonsymmetric_affiliated(F, a.max_size)]
    out["summary"] = "AP: yes" if dec.ok else "AP: no"
    return out, OK if dec.ok else NO


def cmd_generate(a):
    F = _class(a.file)
    G = skeleta.generate(F)
    out = G.to_dict()
    out["summary"] = f"generated {G.n}-vertex structure"
    return out, OK


def cmd_product(a):
    G = product([_gec(f) for f in a.files])
    out = G.to_dict()
    out["summary"] = f"product on {G.n} vertices"
    return out, OK


def cmd_decompose(a):
    d = itp.primary_decompose(_gec(a.file))
    return {"decomposition": d.to_list(),
            "summary": f"{len(d)} factors: " + " < ".join("{" + ",".join(sorted(s)) + "}" for s, _ in d.entries)}, OK


def cmd_quadruple(a):
    q = itp.ModellingQuadruple.from_dict(_read_json(a.file))
    G = itp.build_from_quadruple(q)
    out = G.to_dict()
    out["summary"] = f"built {G.n}-vertex structure from {len(q.S)} factors"
    return out, OK


def cmd_ultrametric(a):
    if a.action == "classify":
        c = metric.classify_ultrametric(_distances(a.file))
        return {"chain": c.to_list(), "summary": f"{len(c.levels)} levels"}, OK
    d = _read_json(a.file)
    chain = metric.UltraChain(d["chain"] if isinstance(d, dict) else d)
    M = metric.build_ultrametric(chain)
    out = M.gec.to_dict()
    out["summary"] = f"ultrametric space on {M.n} points"
    return out, OK


def cmd_embed(a):
    M = _distances(a.file)
    ok = metric.embeds(M, a.space, a.dim, a.tolerance)
    pos, neg = metric.signature(M, a.space, a.tolerance)
    return {"embeds": ok, "space": a.space, "dim": a.dim, "signature": [pos, neg],
            "summary": f"embeds into {a.space} of dimension {a.dim}: {'yes' if ok else 'no'}"}, \
        OK if ok else NO


def cmd_group(a):
    if a.action == "recognize":
        D = _gec(a.target)
        t = group.recognize_group(D)
        if t is None:
            return {"group": None, "summary": "not a group structure"}, NO
        return {"group": t.to_dict(), "summary": f"group of order {t.n}"}, OK
    t = _table(a.target)
    if a.action == "report":
        r = group.dgroup_report(t)
        ok = all(c.holds for c in r.values())
        return {"clauses": {k: c.to_dict() for k, c in r.items()},
                "abelian": t.is_abelian(), "boolean": t.is_boolean(),
                "summary": "all clauses hold" if ok else
                "failing clauses: " + ",".join(k for k, c in r.items() if not c.holds)}, OK if ok else NO
    if a.action == "dgec":
        G = group.group_dgec(t, a.variant)
        out = G.to_dict()
        out["summary"] = f"{a.variant} structure of a group of order {t.n}"
        return out, OK
    if a.subgroup is None:
        raise UsageError("abstran needs --subgroup")
    H = [int(x) for x in a.subgroup.split(",") if x.strip()]
    ok, bad = group.abstran_check(t, H)
    sym, g = group.sym_check(t, H)
    out = {"abstran": ok, "symmetric": sym,
           "witness": {str(k): v for k, v in sorted(bad.items())} if bad else None,
           "summary": f"abstran: {'yes' if ok else 'no'}; symmetric: {'yes' if sym else 'no'}"}
    return out, OK if ok else NO


def cmd_profile(a):
    F = _class(a.file)
    p = skeleta.bound_profile(F)
    h, r = skeleta.height(F), skeleta.rank(F)
    return {"profile": p.to_dict(), "height": h, "rank": r,
            "summary": f"height {h}, rank {r}"}, OK


def cmd_corpus(a):
    out_dir = Path(a.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if a.all:
        items = [G for n in range(1, a.max_n + 1)
                 for G in all_structures(n, [str(k) for k in range(1, a.colors + 1)], a.directed)]
    else:
        items = abho_corpus(a.max_n, a.directed)
    if a.variants:
        items = with_variants(items, a.seed)
    names = []
    for i, G in enumerate(items):
        name = f"{G.kind}-{G.n}-{i:04d}.json"
        (out_dir / name).write_text(json.dumps(G.to_dict(), sort_keys=True) + "\n")
        names.append(name)
    return {"count": len(names), "files": names, "summary": f"wrote {len(names)} files"}, OK


def build_parser() -> argparse.ArgumentParser:
    def common(parser, default):
        # accepted before or after the verb; the verb-level copy must not
        # overwrite a value given before it
        d = (lambda v: v) if default else (lambda v: argparse.SUPPRESS)
        parser.add_argument("--verbose", "-v", action="store_true", default=d(False),
                            help="summary on stderr")
        parser.add_argument("--seed", type=int, default=d(0), help="seed for randomized output")
        parser.add_argument("--tolerance", type=float, default=d(metric.TOL),
                            help="eigenvalue cutoff")

    p = argparse.ArgumentParser(prog="abho", description=__doc__.splitlines()[0])
    common(p, True)
    shared = argparse.ArgumentParser(add_help=False)
    common(shared, False)
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help):
        s = sub.add_parser(name, help=help, parents=[shared])
        s.set_defaults(fn=fn)
        return s

    verb("check", cmd_check, "decide absolute homogeneity").add_argument("file")
    verb("autos", cmd_autos, "list automorphisms").add_argument("file")
    for name, fn in [("iso", cmd_iso), ("struct-eq", cmd_struct_eq)]:
        s = verb(name, fn, "compare two structures")
        s.add_argument("first")
        s.add_argument("second")
    verb("skeleton", cmd_skeleton, "finite substructures up to isomorphism").add_argument("file")
    s = verb("ap", cmd_ap, "amalgamation check of a class")
    s.add_argument("file")
    s.add_argument("--max-size", type=int, default=None)
    s.add_argument("--list", action="store_true", help="list every completion set")
    verb("generate", cmd_generate, "structure generated by a class").add_argument("file")
    verb("product", cmd_product, "lexicographic product").add_argument("files", nargs="+")
    verb("decompose", cmd_decompose, "primary decomposition").add_argument("file")
    verb("quadruple", cmd_quadruple, "build from a modelling quadruple").add_argument("file")
    s = verb("ultrametric", cmd_ultrametric, "classify or build ultrametric spaces")
    s.add_argument("action", choices=["classify", "build"])
    s.add_argument("file")
    s = verb("embed", cmd_embed, "isometric embeddability")
    s.add_argument("file")
    s.add_argument("--space", choices=list(metric.SPACES), default="euclid")
    s.add_argument("--dim", type=int, required=True)
    s = verb("group", cmd_group, "group structures")
    s.add_argument("action", choices=["report", "dgec", "recognize", "abstran"])
    s.add_argument("target", help="group table file, bundled group name, or dGEC file")
    s.add_argument("--variant", choices=list(group.VARIANTS), default="L")
    s.add_argument("--subgroup", help="comma-separated element indices")
    verb("profile", cmd_profile, "bound profile, height and rank").add_argument("file")
    s = verb("corpus", cmd_corpus, "write a small exhaustive corpus")
    s.add_argument("--max-n", type=int, default=4)
    s.add_argument("--directed", action="store_true")
    s.add_argument("--all", action="store_true", help="every coloring, not only AB-HO ones")
    s.add_argument("--colors", type=int, default=2)
    s.add_argument("--variants", action="store_true", help="add scrambled copies")
    s.add_argument("--out", required=True)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else ERR
    random.seed(args.seed)
    try:
        out, code = args.fn(args)
    except (AbhoError, UsageError, ValueError, KeyError, OSError) as e:
        print(f"abho {args.verb}: error: {e}", file=sys.stderr)
        return ERR
    summary = out.get("summary")
    print(json.dumps(out, sort_keys=True, indent=1))
    if args.verbose and summary:
        print(summary, file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
