"""Command-line harness: ``fatpoints <command> ...``.

Exit codes: 0 when every check passes, 1 when a verification fails,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import re
import sys
from pathlib import Path

from . import library
from .containment import MethodDisagreement, symbolic_containment
from .groebner import ideal_equal
from .invariants import (alpha, format_fraction, hilbert_function, regularity_fat_points,
                         waldschmidt_bounds)
from .oracle import OracleCapExceeded, alpha_oracle, symbolic_hilbert
from .schemes import (FixtureError, LineArrangement, fat_point_ideal, intersection_counts,
                      parse_fixture, singular_locus, subproducts_ideal, symbolic_power)
from .suites import SUITES, run_suite

log = logging.getLogger("fatpoints")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _render(header, rows, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for row in rows:
        lines.append("| " + " | ".join(str(c) for c in row) + " |")
    return "\n".join(lines) + "\n"


def _load(path: str, field: str | None):
    try:
        p = library.fixture_path(path)
    except FileNotFoundError as exc:
        raise UsageError(str(exc)) from exc
    text = p.read_text()
    if field:
        spec = field.replace(":", " ")
        text, n = re.subn(r"(?im)^\s*field:.*$", f"field: {spec}", text, count=1)
        if not n:
            text = f"field: {spec}\n" + text
    try:
        return parse_fixture(text, name=p.stem)
    except FixtureError as exc:
        raise UsageError(f"{p}: {exc}") from exc


def _scheme(obj):
    return singular_locus(obj) if isinstance(obj, LineArrangement) else obj


def _progress(*args):
    print("progress:", *args, file=sys.stderr, flush=True)


# -- commands --------------------------------------------------------------

def cmd_alpha(args):
    S = _scheme(_load(args.file, args.field))
    a_orc = alpha_oracle(S, args.m, progress=_progress if args.verbose else None)
    a_gb = alpha(symbolic_power(S, args.m))
    rows = [[S.name, args.m, a_orc, a_gb, a_orc == a_gb]]
    return ["scheme", "m", "alpha_oracle", "alpha_groebner", "ok"], rows


def cmd_hilbert(args):
    S = _scheme(_load(args.file, args.field))
    I = symbolic_power(S, args.m)
    rows = []
    prev = 0
    for d in range(args.upto + 1):
        h = hilbert_function(I, d)
        h2 = symbolic_hilbert(S, args.m, d)
        rows.append([d, h, h2, h - prev, h == h2])
        prev = h
    return ["d", "hf_groebner", "hf_oracle", "first_difference", "ok"], rows


def cmd_contain(args):
    S = _scheme(_load(args.file, args.field))
    rep = symbolic_containment(S, args.m, args.r, args.mfactor, method=args.method,
                               progress=_progress if args.verbose else None)
    ok = True if args.expect is None else (rep.verdict == args.expect)
    return (["query", "m", "r", "mfactor", "verdict", "witness_degree", "method", "ok"],
            [rep.row() + [ok]])


def cmd_singular(args):
    A = _load(args.file, args.field)
    if not isinstance(A, LineArrangement):
        raise UsageError("singular needs an arrangement file")
    rows = [[" ".join(str(c) for c in P.coords), n, n - 1]
            for P, n in intersection_counts(A).items()]
    return ["point", "lines_through", "multiplicity"], rows


def cmd_subproducts(args):
    A = _load(args.file, args.field)
    if not isinstance(A, LineArrangement):
        raise UsageError("subproducts needs an arrangement file")
    if not 1 <= args.k <= A.n:
        raise UsageError(f"k must lie in 1..{A.n}")
    I = subproducts_ideal(A, args.k)
    row = [A.name, A.n, args.k, len(I.generators), alpha(I)]
    if args.k == A.n - 1:
        S = singular_locus(A)
        row += [ideal_equal(I, fat_point_ideal(S)), regularity_fat_points(I, S.degree())]
    else:
        row += ["", ""]
    return ["arrangement", "n", "k", "generators", "alpha", "equals_singular_ideal", "reg"], [row]


def cmd_bounds(args):
    S = _scheme(_load(args.file, args.field))
    est = waldschmidt_bounds(S, args.mmax)
    rows = [[S.name, m, format_fraction(b)] for m, b in est.upper_bounds]
    rows.append([S.name, "chudnovsky_lower", format_fraction(est.chudnovsky_lower)])
    rows.append([S.name, "resurgence_lower", format_fraction(est.resurgence_lower)])
    rows.append([S.name, "resurgence_upper", format_fraction(est.resurgence_upper)])
    return ["scheme", "m", "value"], rows


def cmd_verify(args):
    names = SUITES if args.suite == "all" else (args.suite,)
    out = []
    ok = True
    for name in names:
        res = run_suite(name, seed=args.seed, jobs=args.jobs, progress=_progress)
        ok = ok and res.ok
        body = _render(res.header, res.rows, args.format)
        if args.format == "md":
            body = f"### {name}\n\n" + body
        out.append(body)
        for err in res.errors:
            print(f"error in {name}: {err}", file=sys.stderr)
    return out, ok


COMMANDS = {
    "alpha": cmd_alpha,
    "hilbert": cmd_hilbert,
    "contain": cmd_contain,
    "singular": cmd_singular,
    "subproducts": cmd_subproducts,
    "bounds": cmd_bounds,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "md"), default="csv")
    common.add_argument("--out", type=Path)
    common.add_argument("--seed", type=int, default=library.RANDOM_SEED)
    common.add_argument("--field", help="override the file's field: Q, Fp:<p> or Qw")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="fatpoints", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("alpha", parents=[common])
    s.add_argument("file")
    s.add_argument("--m", type=int, default=1)

    s = sub.add_parser("hilbert", parents=[common])
    s.add_argument("file")
    s.add_argument("--upto", type=int, required=True)
    s.add_argument("--m", type=int, default=1)

    s = sub.add_parser("contain", parents=[common])
    s.add_argument("file")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--mfactor", type=int, default=0)
    s.add_argument("--method", choices=("groebner", "oracle", "both"), default="both")
    s.add_argument("--expect", choices=("holds", "fails"))

    s = sub.add_parser("singular", parents=[common])
    s.add_argument("file")

    s = sub.add_parser("subproducts", parents=[common])
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True)

    s = sub.add_parser("bounds", parents=[common])
    s.add_argument("file")
    s.add_argument("--mmax", type=int, default=4)

    s = sub.add_parser("verify", parents=[common])
    s.add_argument("suite", choices=SUITES + ("all",))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "verify":
            blocks, ok = cmd_verify(args)
            text = "\n".join(blocks)
        else:
            header, rows = COMMANDS[args.command](args)
            text = _render(header, rows, args.format)
            ok = all(row[-1] is not False for row in rows) if header[-1] == "ok" else True
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleCapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except MethodDisagreement as exc:
        print(f"methods disagree: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
