"""Bad loci of the parametric scenarios, checked pointwise.

Each locus is compared against check_vanishing at the sampled parameter
points plus the origin; a mismatch is only allowed when the report is
flagged as an upper bound (exact = false) and the point lies on the locus.
"""

import argparse
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from generic_tor import bad_locus, load_corpus, validate_scenario
from generic_tor.bertini import verify_bad_locus
from generic_tor.scenario import corpus_names


@dataclass
class BadLocusConfig:
    scenarios: list = field(default_factory=lambda: [n for n in corpus_names() if load_corpus(n).parametric])
    points: int = 10
    bound: int = 20
    seed: int = 42


def run(cfg: BadLocusConfig) -> list:
    out = []
    for name in cfg.scenarios:
        s = validate_scenario(load_corpus(name))
        rep = bad_locus(s)
        rng = np.random.default_rng([cfg.seed, len(out)])
        npar = len(s.group.params)
        pts = [[0] * npar] + [[int(v) for v in rng.integers(-cfg.bound, cfg.bound + 1, npar)]
                              for _ in range(cfg.points)]
        checks = verify_bad_locus(s, rep, pts)
        sound = all(on != verdict or (on and not rep.exact) for on, verdict in checks)
        out.append({"scenario": name, "locus": str(rep), "exact": rep.exact, "sound": sound,
                    "points": [{"params": p, "on_locus": on, "verdict": v} for p, (on, v) in zip(pts, checks)]})
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description="bad loci of the parametric scenarios")
    ap.add_argument("--points", type=int, default=10)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--scenarios", nargs="+")
    a = ap.parse_args(argv)
    cfg = BadLocusConfig(points=a.points, seed=a.seed)
    if a.scenarios:
        cfg.scenarios = a.scenarios
    print(json.dumps({"config": asdict(cfg), "results": run(cfg)}, indent=2))


if __name__ == "__main__":
    main()
