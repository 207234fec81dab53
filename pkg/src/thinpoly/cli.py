"""Command-line interface.

Exit codes: 0 success, 1 batch checks failed, 2 bad input or usage,
3 input outside the supported class (or over budget), 4 theorem violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import tempfile
from pathlib import Path

from . import cd, collapse, hilbert
from .enumeration import SUITES, EnumerationConfig, batch_verify, filter_class, fixed_polyominoes, is_symmetry_representative
from .errors import DomainError, InconsistencyError, ParseError, ResourceError, TheoremViolation, UnsupportedInputError
from .grid import components, is_polyomino, is_simple, is_thin, load_cells, to_ascii, to_json_obj
from .intervals import has_s_property, maximal_inner_intervals, single_cells
from .rook import rook_polynomial

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_VIOLATION = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", nargs="?", help="grid or JSON file, '-' for stdin")
    p.add_argument("--ascii", help="inline grid; rows separated by '/' or newlines")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thinpoly", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "csv", "text"), default="text")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_ in (
        ("check", "report polyomino class predicates"),
        ("rook", "rook polynomial and rook number"),
        ("cd", "Charney-Davis verdict"),
        ("collapse", "refined collapse datum, decomposition and identity report"),
        ("trace", "run the induction of the sign proof"),
    ):
        _add_input(sub.add_parser(name, help=help_))

    p = sub.add_parser("hpoly", help="h-polynomial of the coordinate ring")
    _add_input(p)
    p.add_argument("--oracle", action="store_true", help="compute from the Hilbert function instead")

    p = sub.add_parser("oracle", help="Hilbert profile and cross-validation against r_P")
    _add_input(p)
    p.add_argument("--exact", action="store_true", help="also run integer elimination")
    p.add_argument("--dump-matrix", type=int, metavar="D", help="write the degree-D relation triplets")
    p.add_argument("--out", type=Path, help="directory for --dump-matrix output")

    p = sub.add_parser("enumerate", help="list fixed polyominoes")
    p.add_argument("-n", "--cells", type=int, required=True)
    p.add_argument("--filter", nargs="*", default=[], choices=("simple", "thin", "s", "s_property"))
    p.add_argument("--symmetry", action="store_true", help="one representative per symmetry class")
    p.add_argument("--out", type=Path, help="write one grid file per polyomino into this directory")

    p = sub.add_parser("verify", help="batch-check every polyomino up to a size")
    p.add_argument("-n", "--cells", type=int, required=True)
    p.add_argument("--min-cells", type=int, default=1)
    p.add_argument("--filter", nargs="*", default=[], choices=("simple", "thin", "s", "s_property"))
    p.add_argument("--suites", nargs="*", default=["deletion", "collapse", "trace", "cd"], choices=SUITES)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--symmetry", action="store_true")
    p.add_argument("--oracle-max-cells", type=int, default=6)
    p.add_argument("--out", type=Path, help="directory for failure fixtures")
    p.add_argument("--timings", action="store_true", help="include wall-clock times in the report")
    return parser


def _read_input(args) -> frozenset:
    if args.ascii is not None:
        return load_cells(args.ascii.replace("/", "\n"))
    if args.file is None:
        raise _UsageError("an input file or --ascii is required")
    if args.file == "-":
        return load_cells(sys.stdin.read())
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise _UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    return load_cells(text)


# ---------------------------------------------------------------------------
# Commands; each returns (json object, text lines, exit code)
# ---------------------------------------------------------------------------

def cmd_check(P, args):
    poly = is_polyomino(P)
    simple = poly and is_simple(P)
    thin = is_thin(P)
    obj = {
        "command": "check",
        "cells": to_json_obj(P)["cells"],
        "size": len(P),
        "components": len(components(P)),
        "polyomino": poly,
        "simple": simple,
        "thin": thin,
        "s_property": bool(simple and thin and has_s_property(P)),
        "koszul": simple,
    }
    if poly:
        obj["maximal_intervals"] = [iv.to_json_obj() for iv in maximal_inner_intervals(P)]
        obj["single_cells"] = [list(c) for c in sorted(single_cells(P))]
    keys = ("polyomino", "simple", "thin", "s_property")
    return obj, [f"{k}: {str(obj[k]).lower()}" for k in keys], EXIT_OK


def cmd_rook(P, args):
    r = rook_polynomial(P)
    obj = {"command": "rook", "rook_polynomial": r.to_json_obj(), "text": str(r), "rook_number": r.degree}
    return obj, [str(r), f"rook number: {r.degree}"], EXIT_OK


def cmd_hpoly(P, args):
    if args.oracle:
        if not (is_polyomino(P) and is_simple(P)):
            raise UnsupportedInputError("the oracle needs a simple polyomino")
        h = hilbert.hilbert_profile(P).h
    else:
        h = cd.h_polynomial(P)
    obj = {"command": "hpoly", "method": "oracle" if args.oracle else "rook", "h": h.to_json_obj(), "text": str(h)}
    return obj, [str(h)], EXIT_OK


def cmd_cd(P, args):
    v = cd.is_cd(P)
    obj = {"command": "cd", "cells": to_json_obj(P)["cells"], "rook_number": v.degree, **v.to_json_obj()}
    lines = [f"h: {v.h}", f"value: {v.value}", "sign_ok" if v.sign_ok else "SIGN VIOLATION"]
    return obj, lines, EXIT_OK


def cmd_collapse(P, args):
    d = collapse.refined_collapse_datum(P)
    found, depth = collapse.inductive_search(P)
    rep = collapse.verify_decomposition(P, d)
    first, second = collapse.first_second_end_cells(P, d)
    obj = {
        "command": "collapse",
        "datum": d.to_json_obj(),
        "end_cells": {"first": list(first), "second": list(second)},
        "inductive": {"datum": found.to_json_obj(), "depth": depth},
        "report": rep.to_json_obj(),
    }
    lines = [
        f"I: {[tuple(c) for c in d.I.cells]}",
        f"J: {[tuple(c) for c in d.J.cells]}",
        f"PI: {[tuple(c) for c in sorted(d.PI)]}",
        f"case: {rep.case.tag if rep.case else None}",
    ]
    lines += [f"{k}: {'ok' if ok else 'FAIL'}" for k, ok in rep.checks.items()]
    if not rep.passed:
        raise TheoremViolation(f"decomposition identities fail: {rep.failures()}", cells=P, state=obj)
    return obj, lines, EXIT_OK


def cmd_trace(P, args):
    root = cd.theorem_trace(P)
    obj = {"command": "trace", "value": root.value, "depth": root.depth, "tree": root.to_json_obj()}
    lines = []

    def walk(node, indent):
        tag = node.leaf_reason or (node.report.case.tag if node.report and node.report.case else "")
        lines.append(f"{'  ' * indent}r={node.rook_number} value={node.value} cells={len(node.cells)} {tag}".rstrip())
        for child in node.children:
            walk(child, indent + 1)

    walk(root, 0)
    return obj, lines, EXIT_OK


def cmd_oracle(P, args):
    if not (is_polyomino(P) and is_simple(P) and is_thin(P)):
        raise UnsupportedInputError("the oracle cross-check needs a simple thin polyomino")
    prof = hilbert.hilbert_profile(P, exact=args.exact)
    r = rook_polynomial(P)
    ok = prof.h == r
    obj = {"command": "oracle", **prof.to_json_obj(), "rook_polynomial": r.to_json_obj(), "cross_validate": ok}
    if args.dump_matrix is not None:
        out = args.out or Path(".")
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"relations_deg{args.dump_matrix}.txt"
        with path.open("w") as fh:
            hilbert.dump_relation_matrix(P, args.dump_matrix, fh)
        obj["matrix_file"] = str(path)
    lines = [f"H: {list(prof.H)}", f"krull_dim: {prof.krull_dim}", f"h: {prof.h}", f"cross_validate: {str(ok).lower()}"]
    if not ok:
        raise TheoremViolation(f"oracle h {prof.h} differs from rook polynomial {r}", cells=P, state=obj)
    return obj, lines, EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "rook": cmd_rook,
    "hpoly": cmd_hpoly,
    "cd": cmd_cd,
    "collapse": cmd_collapse,
    "trace": cmd_trace,
    "oracle": cmd_oracle,
}


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _emit(obj, lines, fmt, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if obj.get("command") == "cd":
            w.writerow(["cells", "rook_number", "h", "cd_value", "verdict"])
            w.writerow(
                [
                    json.dumps(obj["cells"]),
                    obj["rook_number"],
                    " ".join(map(str, obj["h"])),
                    obj["value"],
                    "sign_ok" if obj["sign_ok"] else "violation",
                ]
            )
        else:
            keys = [k for k in obj if k != "command"]
            w.writerow(keys)
            w.writerow([v if isinstance(v, (int, str)) else json.dumps(v) for v in (obj[k] for k in keys)])
        out.write(buf.getvalue())
    else:
        out.write("\n".join(lines) + "\n")


def _write_fixture(cells, message: str, out_dir: Path | None) -> Path:
    out_dir = out_dir or Path(tempfile.mkdtemp(prefix="thinpoly-violation-"))
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "violation.txt"
    path.write_text(to_ascii(cells) + "\n")
    (out_dir / "violation.msg").write_text(message + "\n")
    return path


def _run_enumerate(args, out) -> int:
    polys = fixed_polyominoes(args.cells)
    if args.symmetry:
        polys = (P for P in polys if is_symmetry_representative(P))
    polys = list(filter_class(polys, args.filter))
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        for i, P in enumerate(polys):
            (args.out / f"n{args.cells}_{i:05d}.txt").write_text(to_ascii(P) + "\n")
    if args.format == "json":
        out.write(json.dumps({"command": "enumerate", "n": args.cells, "count": len(polys),
                              "polyominoes": [to_ascii(P) for P in polys]}, indent=2) + "\n")
    else:
        out.write("\n\n".join(to_ascii(P) for P in polys) + ("\n" if polys else ""))
    return EXIT_OK


def _run_verify(args, out) -> int:
    config = EnumerationConfig(
        max_cells=args.cells,
        min_cells=args.min_cells,
        dedup="symmetry" if args.symmetry else "translation",
        filters=tuple(args.filter),
        suites=tuple(args.suites),
        parallelism=max(1, args.jobs),
        oracle_max_cells=args.oracle_max_cells,
    )
    report = batch_verify(config)
    if args.out and report.failures:
        args.out.mkdir(parents=True, exist_ok=True)
        for i, f in enumerate(report.failures):
            (args.out / f"failure_{i:04d}.txt").write_text(f["ascii"] + "\n")
    obj = report.to_json_obj(include_timings=args.timings)
    if args.format == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(report.csv_rows())
        out.write(buf.getvalue())
    else:
        for row in report.csv_rows()[1:]:
            out.write("n={} generated={} filtered={} checked={} failed={}\n".format(*row))
        for name, c in obj["suites"].items():
            out.write(f"suite {name}: checked={c['checked']} failed={c['failed']}\n")
        for k, v in obj["stats"].items():
            out.write(f"{k}: {v}\n")
        out.write(f"failed: {report.failed}\n")
    if report.violation:
        path = _write_fixture(load_cells(report.violation["ascii"]), report.violation["message"], args.out)
        sys.stderr.write(f"theorem violation: {report.violation['message']}\nfixture: {path}\n")
        return EXIT_VIOLATION
    return EXIT_FAILED if report.failed else EXIT_OK


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    P = args = None
    try:
        args = parser.parse_args(argv)
        if args.command == "enumerate":
            return _run_enumerate(args, out)
        if args.command == "verify":
            return _run_verify(args, out)
        P = _read_input(args)
        obj, lines, code = COMMANDS[args.command](P, args)
        _emit(obj, lines, args.format, out)
        return code
    except (_UsageError, ParseError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (UnsupportedInputError, DomainError, ResourceError) as exc:
        sys.stderr.write(f"unsupported input: {exc}\n")
        return EXIT_UNSUPPORTED
    except (TheoremViolation, InconsistencyError) as exc:
        cells = getattr(exc, "cells", None) or P
        msg = f"{type(exc).__name__}: {exc}"
        if cells:
            path = _write_fixture(cells, msg, getattr(args, "out", None))
            sys.stderr.write(f"theorem violation: {exc}\nfixture: {path}\n")
        else:
            sys.stderr.write(f"theorem violation: {exc}\n")
        return EXIT_VIOLATION


def main() -> None:
    sys.exit(run())
