"""Monte Carlo density sweep: every GL scenario, several primes, one CSV.

    python scripts/run_density.py --trials 50 --primes 101 32003 --out density.csv
"""

import argparse
import csv
import sys
import time
from dataclasses import dataclass, field

from generic_tor import load_corpus, monte_carlo_density, validate_scenario
from generic_tor.scenario import corpus_names


@dataclass
class DensityConfig:
    scenarios: list = field(default_factory=lambda: [n for n in corpus_names() if not load_corpus(n).parametric])
    primes: list = field(default_factory=lambda: [101, 32003])
    trials: int = 100
    seed: int = 42
    out: str | None = None


def run(cfg: DensityConfig) -> list:
    rows = []
    for name in cfg.scenarios:
        base = load_corpus(name)
        if base.field.characteristic == 0:
            continue
        for p in cfg.primes:
            s = validate_scenario(base.with_overrides(prime=p, seed=cfg.seed))
            start = time.perf_counter()
            rep = monte_carlo_density(s, cfg.trials)
            rows.append({"scenario": name, "prime": p, "trials": rep.trials, "passed": rep.passed,
                         "density": rep.density, "failing": len(rep.failing),
                         "seconds": round(time.perf_counter() - start, 3)})
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--primes", type=int, nargs="+", default=[101, 32003])
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--scenarios", nargs="+")
    ap.add_argument("--out")
    a = ap.parse_args(argv)
    cfg = DensityConfig(primes=a.primes, trials=a.trials, seed=a.seed, out=a.out)
    if a.scenarios:
        cfg.scenarios = a.scenarios
    rows = run(cfg)
    fh = open(cfg.out, "w", newline="") if cfg.out else sys.stdout
    w = csv.DictWriter(fh, fieldnames=list(rows[0]) if rows else ["scenario"])
    w.writeheader()
    w.writerows(rows)
    if cfg.out:
        fh.close()


if __name__ == "__main__":
    main()
