"""Check every core-free subgroup of every bundled group for absolute
transitivity of the coset action, cross-checked against the orbital
structure (AB-HO with exactly |G| automorphisms).

    python3 scripts/abstran_search.py [--max-order 12]
"""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from abho.group import abstran_check, bundled_groups, core_free_subgroups, orbital_dgec, sym_check
from abho.morph import automorphisms, is_ab_ho


@dataclass
class Config:
    max_order: int = 12


def run(cfg: Config) -> dict:
    rows, failing, disagreements = 0, [], []
    for g in bundled_groups(cfg.max_order):
        for H in core_free_subgroups(g):
            H = sorted(H)
            ok, bad = abstran_check(g, H)
            X = orbital_dgec(g, H)
            other = bool(is_ab_ho(X)) and len(automorphisms(X)) == g.n
            rows += 1
            if ok != other:
                disagreements.append({"group": g.name, "subgroup": H})
            if not ok:
                failing.append({"group": g.name, "subgroup": H, "points": g.n // len(H),
                                "symmetric": sym_check(g, H)[0],
                                "witness": {str(k): v for k, v in sorted(bad.items())}})
    return {"config": asdict(cfg), "pairs": rows, "failing": failing, "disagreements": disagreements}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-order", type=int, default=Config.max_order)
    print(json.dumps(run(Config(p.parse_args().max_order)), indent=1))


if __name__ == "__main__":
    main()
