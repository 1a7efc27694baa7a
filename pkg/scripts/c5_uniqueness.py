"""Exhaustive search for bi-connected AB-HO structures without
monochromatic triangles among 2-colorings of K_n.

    python3 scripts/c5_uniqueness.py [--max-n 6]
"""
from __future__ import annotations

import argparse
import itertools
import json
from dataclasses import asdict, dataclass

from abho.corpus import all_structures
from abho.itp import biconnected
from abho.morph import canon_struct, is_ab_ho


@dataclass
class Config:
    max_n: int = 6


def _no_mono_triangle(G) -> bool:
    return not any(G[x, y] == G[y, z] == G[x, z]
                   for x, y, z in itertools.combinations(range(G.n), 3))


def run(cfg: Config) -> dict:
    found, per_n = {}, {}
    for n in range(1, cfg.max_n + 1):
        reps = all_structures(n, ["a", "b"])
        hits = [G for G in reps if biconnected(G) and _no_mono_triangle(G) and is_ab_ho(G)]
        per_n[n] = {"searched": len(reps), "hits": len(hits)}
        for G in hits:
            found.setdefault(canon_struct(G), [list(r) for r in G.colors])
    return {"config": asdict(cfg), "per_n": per_n, "classes": list(found.values())}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=Config.max_n)
    print(json.dumps(run(Config(p.parse_args().max_n)), indent=1))


if __name__ == "__main__":
    main()
