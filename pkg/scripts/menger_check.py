"""Sample point sets in Euclidean space, on spheres and on hyperboloids and
compare the global embedding test with the (n+3)-point test and with the
placement oracle; report the worst coordinate round-trip error.

    python3 scripts/menger_check.py [--samples 300] [--seed 9] [--max-points 6]
"""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

import numpy as np

from abho.metric import distances, embeds, embeds_locally, place, realize

SPACES = [("euclid", 1), ("euclid", 2), ("euclid", 3), ("sphere", 1), ("sphere", 2),
          ("hyperbolic", 1), ("hyperbolic", 2)]


@dataclass
class Config:
    samples: int = 300
    seed: int = 9
    max_points: int = 6


def sample(space: str, n: int, k: int, rng) -> np.ndarray:
    if space == "euclid":
        return rng.normal(size=(k, n))
    if space == "sphere":
        X = rng.normal(size=(k, n + 1))
        return X / np.linalg.norm(X, axis=1, keepdims=True)
    Y = rng.normal(size=(k, n))
    return np.column_stack([np.sqrt(1 + (Y ** 2).sum(1)), Y])


def run(cfg: Config) -> dict:
    rng = np.random.default_rng(cfg.seed)
    stats = {"global_fail": 0, "local_mismatch": 0, "placement_mismatch": 0, "worst_rel_err": 0.0}
    for t in range(cfg.samples):
        space, n = SPACES[t % len(SPACES)]
        k = int(rng.integers(2, cfg.max_points + 1))
        D = distances(sample(space, n, k, rng), space)
        np.fill_diagonal(D, 0.0)
        if not embeds(D, space, n):
            stats["global_fail"] += 1
            continue
        for m in range(n + 1):
            e = embeds(D, space, m)
            stats["local_mismatch"] += e != embeds_locally(D, space, m)
            stats["placement_mismatch"] += e != (place(D, space, m) is not None)
        R = distances(realize(D, space, n), space)
        np.fill_diagonal(R, 0.0)
        err = float(np.abs(R - D).max() / max(1.0, np.abs(D).max()))
        stats["worst_rel_err"] = max(stats["worst_rel_err"], err)
    return {"config": asdict(cfg), **stats}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=Config.samples)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--max-points", type=int, default=Config.max_points)
    a = p.parse_args()
    print(json.dumps(run(Config(a.samples, a.seed, a.max_points)), indent=1))


if __name__ == "__main__":
    main()
