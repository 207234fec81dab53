"""Exhaustive polyomino enumeration and batch execution of the check suites."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from . import cd, collapse, hilbert
from .errors import InconsistencyError, ResourceError, TheoremViolation
from .grid import Cell, canonical_key, is_connected, is_polyomino, is_simple, is_thin, normalize, symmetries, to_ascii, vertices
from .intervals import has_s_property, interval_index
from .poly import IntPolynomial
from .rook import max_rook_configs, restricted_rook_polynomial, rook_polynomial, rook_polynomial_through

FILTERS = ("simple", "thin", "s_property")
SUITES = ("deletion", "collapse", "trace", "cd", "oracle")


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _redelmeier(n: int) -> Iterator[tuple[Cell, ...]]:
    """Redelmeier's algorithm: every fixed polyomino with at most ``n`` cells once.

    Cells are restricted to ``y > 0`` or ``y == 0, x >= 0`` so the origin is
    the lowest-leftmost cell of each generated animal.
    """

    def allowed(x, y):
        return y > 0 or (y == 0 and x >= 0)

    poly: list[Cell] = []
    seen = {Cell(0, 0)}

    def go(untried: list[Cell]):
        untried = list(untried)
        while untried:
            c = untried.pop()
            poly.append(c)
            yield tuple(poly)
            if len(poly) < n:
                new = []
                for dx, dy in ((1, 0), (0, 1), (-1, 0), (0, -1)):
                    nb = Cell(c.x + dx, c.y + dy)
                    if allowed(nb.x, nb.y) and nb not in seen:
                        new.append(nb)
                seen.update(new)
                yield from go(untried + new)
                seen.difference_update(new)
            poly.pop()

    yield from go([Cell(0, 0)])


def fixed_polyominoes(n: int) -> Iterator[frozenset]:
    """Every translation-normalized ``n``-cell polyomino exactly once.

    Output order is canonical (sorted cell lists).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    found = [normalize(p) for p in _redelmeier(n) if len(p) == n]
    found.sort(key=canonical_key)
    yield from found


def naive_polyominoes(n: int) -> list[frozenset]:
    """Independent enumerator: filter ``n``-subsets of the triangle ``x + y < n``.

    A normalized ``n``-cell polyomino has bounding box ``w + h <= n + 1``, so
    each of its cells satisfies ``x + y <= n - 1``.
    """
    tri = [Cell(x, y) for x in range(n) for y in range(n - x)]
    out = []
    for sub in combinations(tri, n):
        if min(c.x for c in sub) or min(c.y for c in sub):
            continue
        s = frozenset(sub)
        if is_connected(s):
            out.append(s)
    out.sort(key=canonical_key)
    return out


def is_symmetry_representative(P: frozenset) -> bool:
    key = canonical_key(P)
    return all(key <= canonical_key(Q) for Q in symmetries(P))


def classify(P: frozenset) -> dict:
    simple = is_polyomino(P) and is_simple(P)
    thin = is_thin(P)
    s = simple and thin and has_s_property(P)
    return {"simple": simple, "thin": thin, "s_property": s}


def filter_class(stream: Iterable[frozenset], filters: Iterable[str]) -> Iterator[frozenset]:
    """Keep polyominoes passing the filters, applied as simple, thin, S-property."""
    filters = set(filters)
    unknown = filters - set(FILTERS) - {"s"}
    if unknown:
        raise ValueError(f"unknown filters: {sorted(unknown)}")
    if "s" in filters:
        filters.discard("s")
        filters.add("s_property")
    need_simple = "simple" in filters or "s_property" in filters
    need_thin = "thin" in filters or "s_property" in filters
    for P in stream:
        if need_simple and not (is_polyomino(P) and is_simple(P)):
            continue
        if need_thin and not is_thin(P):
            continue
        if "s_property" in filters and not has_s_property(P):
            continue
        yield P


# ---------------------------------------------------------------------------
# Check suites
# ---------------------------------------------------------------------------

def suite_deletion(P: frozenset) -> list[str]:
    """r_P = r_{P,^C} + t r_{P,^I} and r_{P,C} = t r_{P,^I} for every single cell."""
    t = IntPolynomial.t()
    r = rook_polynomial(P)
    out = []
    for c, ivs in sorted(interval_index(P).items()):
        if len(ivs) != 1:
            continue
        hat_c = restricted_rook_polynomial(P, {c})
        hat_i = restricted_rook_polynomial(P, ivs[0].cellset)
        if r != hat_c + hat_i * t:
            out.append(f"deletion identity fails at single cell {tuple(c)}")
        if rook_polynomial_through(P, c) != hat_i * t:
            out.append(f"r_P,C != t r_P,^I at single cell {tuple(c)}")
    return out


def suite_collapse(P: frozenset, stats: dict) -> list[str]:
    out = []
    singles = {c for c, ivs in interval_index(P).items() if len(ivs) == 1}
    maxima = max_rook_configs(P)
    if maxima != [frozenset(singles)]:
        out.append("maximum rook configuration is not unique or differs from the single cells")
    if len(P) < 2:
        return out
    data = collapse.collapse_data(P)
    refined = [d for d in data if collapse.lemma_clauses_hold(P, d)]
    if not refined:
        raise TheoremViolation("no refined collapse datum", cells=P)
    if collapse.refined_collapse_datum(P) != refined[0]:
        out.append("refined_collapse_datum is not the least refined datum")
    found, depth = collapse.inductive_search(P)
    if not collapse.lemma_clauses_hold(P, found):
        out.append("inductive search returned a datum violating the clauses")
    stats["max_inductive_depth"] = max(stats.get("max_inductive_depth", 0), depth)
    for d in refined:
        rep = collapse.verify_decomposition(P, d)
        if rep.decomposition is not None and rep.decomposition.glue is not None:
            stats["glued"] = stats.get("glued", 0) + 1
            if not rep.checks.get("Q_hat_J_product", False):
                stats["glued_failed"] = stats.get("glued_failed", 0) + 1
        if not rep.passed:
            out.append(f"decomposition fails for datum I={sorted(d.I.cells)}: {rep.failures()}")
    return out


def suite_trace(P: frozenset) -> list[str]:
    root = cd.theorem_trace(P)
    direct = cd.cd_value(rook_polynomial(P))
    if root.value != direct or root.product_value() != direct:
        return [f"trace value {root.value}/{root.product_value()} != cd value {direct}"]
    return []


def suite_cd(P: frozenset, stats: dict) -> list[str]:
    verdict = cd.is_cd(P)  # raises TheoremViolation on a wrong sign
    # an even rook number does not force a positive value; count, don't fail
    if verdict.value == 0 and verdict.degree % 2 == 0:
        stats["cd_zero_even_rook"] = stats.get("cd_zero_even_rook", 0) + 1
    return []


def suite_oracle(P: frozenset, budget: int | None) -> list[str]:
    prof = hilbert.hilbert_profile(P, budget=budget)
    out = []
    if prof.H[0] != 1 or prof.H[1] != len(vertices(P)):
        out.append(f"H_0/H_1 wrong: {prof.H[:2]}")
    if prof.h[1] != len(P):
        out.append(f"h_1 = {prof.h[1]} != {len(P)}")
    if prof.h != rook_polynomial(P):
        out.append(f"oracle h = {prof.h} != rook polynomial {rook_polynomial(P)}")
    return out


def check_one(args) -> dict:
    """Run the requested suites on one polyomino; pure and picklable."""
    P, suites, oracle_max, budget = args
    classes = classify(P)
    res = {"suites": {}, "violation": None, "stats": {}}
    stats = res["stats"]
    simple_thin = classes["simple"] and classes["thin"]
    applicable = {
        "deletion": simple_thin,
        "collapse": classes["s_property"],
        "trace": classes["s_property"],
        "cd": classes["s_property"],
        "oracle": simple_thin and len(P) <= oracle_max,
    }
    for name in suites:
        if not applicable[name]:
            continue
        try:
            if name == "deletion":
                msgs = suite_deletion(P)
            elif name == "collapse":
                msgs = suite_collapse(P, stats)
            elif name == "trace":
                msgs = suite_trace(P)
            elif name == "cd":
                msgs = suite_cd(P, stats)
            else:
                msgs = suite_oracle(P, budget)
        except TheoremViolation as exc:
            res["violation"] = f"{name}: {exc}"
            msgs = [str(exc)]
        except (ResourceError, InconsistencyError) as exc:
            msgs = [f"{type(exc).__name__}: {exc}"]
        res["suites"][name] = msgs
        if res["violation"]:
            break
    return res


# ---------------------------------------------------------------------------
# Batch driver
# ---------------------------------------------------------------------------

@dataclass
class EnumerationConfig:
    max_cells: int = 10
    min_cells: int = 1
    dedup: str = "translation"  # or "symmetry"
    filters: tuple = ()
    suites: tuple = ("deletion", "collapse", "trace", "cd")
    parallelism: int = 1
    oracle_max_cells: int = 6
    oracle_budget: int | None = None

    def __post_init__(self):
        if self.max_cells < 1:
            raise ValueError("max_cells must be at least 1")
        if self.dedup not in ("translation", "symmetry"):
            raise ValueError(f"unknown dedup policy {self.dedup!r}")
        bad = set(self.suites) - set(SUITES)
        if bad:
            raise ValueError(f"unknown suites: {sorted(bad)}")


@dataclass
class BatchReport:
    config: dict
    sizes: dict = field(default_factory=dict)  # n -> counts
    suites: dict = field(default_factory=dict)  # suite -> {"checked", "failed"}
    stats: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    violation: dict | None = None
    timings: dict = field(default_factory=dict)

    @property
    def failed(self) -> int:
        return sum(s["failed"] for s in self.sizes.values())

    def to_json_obj(self, include_timings: bool = False) -> dict:
        obj = {
            "command": "verify",
            "config": self.config,
            "sizes": {str(n): c for n, c in sorted(self.sizes.items())},
            "suites": self.suites,
            "stats": dict(sorted(self.stats.items())),
            "failed": self.failed,
            "failures": self.failures,
            "violation": self.violation,
        }
        if include_timings:
            obj["timings"] = self.timings
        return obj

    def csv_rows(self) -> list[list]:
        rows = [["size", "generated", "filtered", "checked", "failed"]]
        for n, c in sorted(self.sizes.items()):
            rows.append([n, c["generated"], c["filtered"], c["checked"], c["failed"]])
        return rows


def batch_verify(config: EnumerationConfig) -> BatchReport:
    report = BatchReport(
        config={
            "max_cells": config.max_cells,
            "min_cells": config.min_cells,
            "dedup": config.dedup,
            "filters": sorted(config.filters),
            "suites": [s for s in SUITES if s in config.suites],
            "oracle_max_cells": config.oracle_max_cells,
        }
    )
    report.suites = {s: {"checked": 0, "failed": 0} for s in report.config["suites"]}
    suites = tuple(report.config["suites"])
    executor = ProcessPoolExecutor(config.parallelism) if config.parallelism > 1 else None
    try:
        for n in range(config.min_cells, config.max_cells + 1):
            t0 = time.perf_counter()
            polys = list(fixed_polyominoes(n))
            generated = len(polys)
            if config.dedup == "symmetry":
                polys = [P for P in polys if is_symmetry_representative(P)]
            polys = list(filter_class(polys, config.filters))
            t1 = time.perf_counter()
            jobs = [(P, suites, config.oracle_max_cells, config.oracle_budget) for P in polys]
            results = executor.map(check_one, jobs, chunksize=64) if executor else map(check_one, jobs)
            counts = {"generated": generated, "filtered": len(polys), "checked": 0, "failed": 0}
            for P, res in zip(polys, results):
                if res["suites"]:
                    counts["checked"] += 1
                bad = {k: v for k, v in res["suites"].items() if v}
                for name, msgs in res["suites"].items():
                    report.suites[name]["checked"] += 1
                    if msgs:
                        report.suites[name]["failed"] += 1
                for k, v in res["stats"].items():
                    if k == "max_inductive_depth":
                        report.stats[k] = max(report.stats.get(k, 0), v)
                    else:
                        report.stats[k] = report.stats.get(k, 0) + v
                if bad:
                    counts["failed"] += 1
                    report.failures.append({"size": n, "ascii": to_ascii(P), "suites": bad})
                if res["violation"]:
                    report.violation = {"size": n, "ascii": to_ascii(P), "message": res["violation"]}
                    break
            report.sizes[n] = counts
            report.timings[str(n)] = {"enumerate": t1 - t0, "check": time.perf_counter() - t1}
            if report.violation:
                break
    finally:
        if executor:
            executor.shutdown(cancel_futures=True)
    return report
