"""Search the 4-vertex 2-color directed structures for ones that are
uniquely homogeneous and AB-HO yet repeat a color on outgoing edges.

    python3 scripts/repeated_color_search.py [--n 4] [--colors 2]
"""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from abho.core import reversify
from abho.corpus import all_structures
from abho.group import has_distinct_out_colors, recognize_group
from abho.morph import automorphisms, canon_struct, is_ab_ho, is_uniquely_homogeneous


@dataclass
class Config:
    n: int = 4
    colors: int = 2


def run(cfg: Config) -> dict:
    pal = [chr(ord("a") + k) for k in range(cfg.colors)]
    reps = all_structures(cfg.n, pal, directed=True)
    found = {}
    for G in reps:
        if has_distinct_out_colors(G) or not is_ab_ho(G) or not is_uniquely_homogeneous(G):
            continue
        found.setdefault(canon_struct(G), G)
    out = []
    for G in found.values():
        t = recognize_group(reversify(G))
        out.append({"colors": [list(r) for r in G.colors], "aut_order": len(automorphisms(G)),
                    "reversification_group_order": t.n if t else None})
    return {"config": asdict(cfg), "searched": len(reps), "classes": out}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=Config.n)
    p.add_argument("--colors", type=int, default=Config.colors)
    a = p.parse_args()
    print(json.dumps(run(Config(a.n, a.colors)), indent=1))


if __name__ == "__main__":
    main()
