"""Acceptance criteria 1-10, one test each.

Every test records a ``CRITERION n: PASS|FAIL`` line; ``conftest.py`` prints
them in the terminal summary.  Run standalone with
``python3 tests/test_acceptance.py``.
"""

import subprocess
import sys
import time

import pytest

from thinpoly import hilbert
from thinpoly.cd import cd_value
from thinpoly.enumeration import EnumerationConfig, batch_verify, filter_class, fixed_polyominoes, naive_polyominoes
from thinpoly.grid import Cell, normalize, parse_ascii
from thinpoly.intervals import single_cells
from thinpoly.poly import IntPolynomial
from thinpoly.rook import max_rook_configs, restricted_rook_polynomial, rook_polynomial, rook_polynomial_through

MAX_CELLS = 10
RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(RESULTS[n])
    assert ok, detail


@pytest.fixture(scope="module")
def s_class():
    return [P for n in range(1, MAX_CELLS + 1) for P in filter_class(fixed_polyominoes(n), ["s_property"])]


@pytest.fixture(scope="module")
def collapse_report():
    return batch_verify(EnumerationConfig(max_cells=MAX_CELLS, suites=("collapse",)))


def test_criterion_1_worked_example():
    L = parse_ascii("#.\n##")
    A, B = Cell(0, 1), Cell(0, 0)

    def compute():
        return (
            rook_polynomial(L),
            restricted_rook_polynomial(L, {A}),
            rook_polynomial_through(L, A),
            restricted_rook_polynomial(L, {A, B}),
        )

    want = (IntPolynomial.of(1, 3, 1), IntPolynomial.of(1, 2), IntPolynomial.of(0, 1, 1), IntPolynomial.of(1, 1))
    got = compute()
    best = min(_timed(compute) for _ in range(50))
    record(1, got == want and best < 1e-3, f"{', '.join(map(str, got))}; {best * 1e6:.0f} us")


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def test_criterion_2_sign_sweep(s_class):
    t0 = time.perf_counter()
    negative, zero_even, nonzero_odd = [], [], []
    for P in s_class:
        r = rook_polynomial(P)
        v = cd_value(r)
        if v < 0:
            negative.append(P)
        elif v == 0 and r.degree % 2 == 0:
            zero_even.append(P)
        elif v != 0 and r.degree % 2 == 1:
            nonzero_odd.append(P)
    elapsed = time.perf_counter() - t0
    detail = (
        f"{len(s_class)} polyominoes, negative={len(negative)}, "
        f"zero with even rook number={len(zero_even)}, nonzero with odd rook number={len(nonzero_odd)}, {elapsed:.1f} s"
    )
    if zero_even:
        P = min(zero_even, key=len)
        detail += f"; e.g. {'/'.join(_rows(P))} has r = {rook_polynomial(P)}"
    record(2, not (negative or zero_even or nonzero_odd) and elapsed < 300, detail)


def _rows(P):
    from thinpoly.grid import to_ascii

    return to_ascii(P).splitlines()


def test_criterion_3_deletion_sweep():
    rep = batch_verify(EnumerationConfig(max_cells=MAX_CELLS, suites=("deletion",)))
    s = rep.suites["deletion"]
    record(3, s["failed"] == 0 and rep.violation is None, f"{s['checked']} simple thin polyominoes, {s['failed']} failures")


def test_criterion_4_collapse_sweep(collapse_report):
    s = collapse_report.suites["collapse"]
    ok = s["failed"] == 0 and collapse_report.violation is None
    detail = (
        f"{s['checked']} S-property polyominoes, {s['failed']} failures, "
        f"max recursion depth {collapse_report.stats.get('max_inductive_depth', 0)}"
    )
    record(4, ok, detail)


def test_criterion_5_glued_product(collapse_report):
    glued = collapse_report.stats.get("glued", 0)
    bad = collapse_report.stats.get("glued_failed", 0)
    record(5, glued > 0 and bad == 0, f"{glued} three-neighbour instances, {bad} failures")


def test_criterion_6_trace_agreement():
    rep = batch_verify(EnumerationConfig(max_cells=MAX_CELLS, suites=("trace",)))
    s = rep.suites["trace"]
    record(6, s["failed"] == 0 and rep.violation is None, f"{s['checked']} traces, {s['failed']} disagreements")


def test_criterion_7_oracle():
    t0 = time.perf_counter()
    rep = batch_verify(EnumerationConfig(max_cells=6, suites=("oracle",), oracle_max_cells=6))
    named = {k: parse_ascii(v) for k, v in {"single": "#", "domino": "##", "L": "#.\n##", "U": "#.#\n###"}.items()}
    named_ok = [k for k, P in named.items() if hilbert.cross_validate(P)]
    s = rep.suites["oracle"]
    elapsed = time.perf_counter() - t0
    ok = s["failed"] == 0 and rep.violation is None and len(named_ok) == len(named) and elapsed < 600
    record(7, ok, f"{s['checked']} simple thin polyominoes, {s['failed']} failures, named {named_ok}, {elapsed:.1f} s")


def test_criterion_8_enumeration():
    want = [1, 2, 6, 19, 63, 216]
    growth = [list(fixed_polyominoes(n)) for n in range(1, 7)]
    naive = [naive_polyominoes(n) for n in range(1, 7)]
    counts_g, counts_n = [len(g) for g in growth], [len(v) for v in naive]
    dup_free = all(len({normalize(P) for P in g}) == len(g) for g in growth + naive)
    same = all(set(a) == set(b) for a, b in zip(growth, naive))
    ok = counts_g == counts_n == want and dup_free and same
    record(8, ok, f"growth {counts_g}, naive {counts_n}, duplicate-free={dup_free}, same sets={same}")


def test_criterion_9_unique_maximum(s_class):
    bad = [P for P in s_class if max_rook_configs(P) != [frozenset(single_cells(P))]]
    record(9, not bad, f"{len(s_class)} S-property polyominoes, {len(bad)} failures")


def test_criterion_10_determinism():
    def run(jobs):
        cmd = [sys.executable, "-m", "thinpoly", "--format", "json", "verify", "-n", "8", "--jobs", str(jobs)]
        return subprocess.run(cmd, capture_output=True, check=True).stdout

    a, b = run(1), run(8)
    record(10, a == b and len(a) > 0, f"{len(a)} bytes vs {len(b)} bytes, identical={a == b}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
