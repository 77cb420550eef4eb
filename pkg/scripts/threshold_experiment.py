"""Star-guided search at |E| = ceil(C q^(5/2)) in F_q^3 for a few primes.

    python scripts/threshold_experiment.py --q 11 13 17 --seeds 10 --scale 1 1/2 1/4
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from ffvc.lab import threshold_size
from ffvc.pointset import GenSpec, generate
from ffvc.shatter import search_good_star


@dataclass
class ThresholdConfig:
    qs: list[int] = field(default_factory=lambda: [11, 13])
    d: int = 3
    t: int = 1
    seeds: int = 10
    scales: list[Fraction] = field(default_factory=lambda: [Fraction(1)])
    budget: int = 10**6


def run(cfg: ThresholdConfig, out=sys.stdout):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["q", "d", "scale", "size", "seed", "found", "explored", "exhausted"])
    d = cfg.d
    for q in cfg.qs:
        for c in cfg.scales:
            # d - 1/(d-1) as num/den
            size = min(threshold_size(q, d * (d - 1) - 1, d - 1, c), q**d)
            for s in range(cfg.seeds):
                E = generate(GenSpec("random_exact", size=size, seed=s), q, d)
                r = search_good_star(E, cfg.t, cfg.budget, seed=s)
                w.writerow([q, d, c, size, s, str(r.certificate is not None).lower(), r.explored,
                            str(r.exhausted).lower()])


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--q", type=int, nargs="+", default=[11, 13])
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--scale", type=Fraction, nargs="+", default=[Fraction(1)])
    p.add_argument("--budget", type=int, default=10**6)
    a = p.parse_args(argv)
    run(ThresholdConfig(qs=a.q, d=a.d, seeds=a.seeds, scales=a.scale, budget=a.budget))


if __name__ == "__main__":
    main()
