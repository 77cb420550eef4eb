"""Fraction of seeds reaching VC-dimension d, by density, from a sweep config.

    python scripts/density_profile.py configs/density_q7.cfg
"""

from __future__ import annotations

import argparse
from collections import defaultdict
from dataclasses import dataclass

from ffvc.lab import parse_config, run_sweep


@dataclass(frozen=True)
class Row:
    q: int
    d: int
    gen: str
    cells: int
    full_vc: int
    mean_size: float


def profile(records) -> list[Row]:
    groups = defaultdict(list)
    for r in records:
        groups[(r.q, r.d, r.gen)].append(r)
    out = []
    for (q, d, gen), rs in sorted(groups.items()):
        hits = sum(r.vc == str(d) for r in rs)
        out.append(Row(q, d, gen, len(rs), hits, sum(r.size for r in rs) / len(rs)))
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("config")
    p.add_argument("--threads", type=int, default=1)
    a = p.parse_args(argv)
    with open(a.config, encoding="utf-8") as fh:
        cfg = parse_config(fh.read())
    print(f"{'q':>3} {'d':>2} {'gen':<24} {'mean |E|':>9} {'vc = d':>8}")
    for row in profile(run_sweep(cfg, threads=a.threads)):
        print(f"{row.q:>3} {row.d:>2} {row.gen:<24} {row.mean_size:>9.1f} {row.full_vc:>4}/{row.cells}")


if __name__ == "__main__":
    main()
