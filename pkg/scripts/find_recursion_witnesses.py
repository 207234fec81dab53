"""List S-property polyominoes whose first collapse datum fails the refined clauses.

For each one, report how deep the inductive search has to go.
"""

import argparse
from dataclasses import dataclass

from thinpoly import collapse
from thinpoly.enumeration import filter_class, fixed_polyominoes
from thinpoly.grid import to_ascii


@dataclass
class WitnessConfig:
    max_cells: int = 10
    min_depth: int = 1


def witnesses(cfg: WitnessConfig):
    for n in range(2, cfg.max_cells + 1):
        for P in filter_class(fixed_polyominoes(n), ["s_property"]):
            _, depth = collapse.inductive_search(P)
            if depth >= cfg.min_depth:
                yield P, depth


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-cells", type=int, default=10)
    ap.add_argument("--min-depth", type=int, default=1)
    cfg = WitnessConfig(**vars(ap.parse_args(argv)))
    for P, depth in witnesses(cfg):
        print(f"# {len(P)} cells, depth {depth}\n{to_ascii(P)}\n")


if __name__ == "__main__":
    main()
