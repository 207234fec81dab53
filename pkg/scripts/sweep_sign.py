"""Tabulate Charney-Davis values over the S-property class, by size.

    python3 scripts/sweep_sign.py --max-cells 10 --csv out.csv
"""

import argparse
import csv
import sys
from collections import Counter
from dataclasses import dataclass

from thinpoly.cd import cd_value
from thinpoly.enumeration import filter_class, fixed_polyominoes
from thinpoly.rook import rook_polynomial


@dataclass
class SweepConfig:
    max_cells: int = 10
    csv_path: str | None = None


def sweep(cfg: SweepConfig) -> list[dict]:
    rows = []
    for n in range(1, cfg.max_cells + 1):
        tally = Counter()
        for P in filter_class(fixed_polyominoes(n), ["s_property"]):
            r = rook_polynomial(P)
            v = cd_value(r)
            parity = "odd" if r.degree % 2 else "even"
            tally[(parity, "zero" if v == 0 else "positive" if v > 0 else "negative")] += 1
        rows.append({"size": n, **{f"{p}_{s}": tally[(p, s)] for p in ("odd", "even") for s in ("zero", "positive", "negative")}})
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-cells", type=int, default=10)
    ap.add_argument("--csv", dest="csv_path")
    cfg = SweepConfig(**vars(ap.parse_args(argv)))
    rows = sweep(cfg)
    out = open(cfg.csv_path, "w", newline="") if cfg.csv_path else sys.stdout
    w = csv.DictWriter(out, fieldnames=list(rows[0]))
    w.writeheader()
    w.writerows(rows)


if __name__ == "__main__":
    main()
