"""Euler Tor sums across translates for every graded scenario (K-class invariance)."""

import argparse
import json
from dataclasses import asdict, dataclass, field

from generic_tor import load_corpus
from generic_tor.ktheory import KTheoryError, euler_invariance, generic_product
from generic_tor.scenario import corpus_names


@dataclass
class KProdConfig:
    scenarios: list = field(default_factory=lambda: [n for n in corpus_names() if load_corpus(n).graded])
    samples: int = 5
    seed: int = 42


def run(cfg: KProdConfig) -> list:
    out = []
    for name in cfg.scenarios:
        s = load_corpus(name).with_overrides(seed=cfg.seed)
        inv = euler_invariance(s, cfg.samples)
        try:
            prod = str(generic_product(s.E, s.F, s).kclass)
        except KTheoryError as exc:
            prod = f"error: {exc}"
        out.append({"scenario": name, "invariant": inv.invariant,
                    "classes": sorted({str(c) for _, c in inv.classes}), "generic_product": prod})
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=5)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--scenarios", nargs="+")
    a = ap.parse_args(argv)
    cfg = KProdConfig(samples=a.samples, seed=a.seed)
    if a.scenarios:
        cfg.scenarios = a.scenarios
    print(json.dumps({"config": asdict(cfg), "results": run(cfg)}, indent=2))


if __name__ == "__main__":
    main()
