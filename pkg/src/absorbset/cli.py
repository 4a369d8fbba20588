"""Command-line entry point.

Exit codes: 0 success or claim holds, 1 usage error, 2 input/format error,
3 budget or guard stop, 4 claim refuted.
"""
from __future__ import annotations

import argparse
import io
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import absorption, bounds, construction, solver, witness
from .tournament import ParseError, parse, serialize

OK, USAGE, INPUT, STOPPED, REFUTED = 0, 1, 2, 3, 4


@dataclass
class CommandOutcome:
    exit_code: int
    stdout: str
    stderr: str


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _row(label: str, value) -> str:
    return f"{label:<34}{value}"


def _fmt_log(x: float) -> str:
    return "-inf (certain zero)" if x == -math.inf else f"{x:.6g}"


def _read_instance(path: str):
    try:
        text = Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise _Fail(INPUT, f"cannot read {path}: {exc}")
    try:
        return parse(text)
    except ParseError as exc:
        raise _Fail(INPUT, f"{path}: {exc}")


def _vertex_list(text: str) -> list[int]:
    if text == "":
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise _UsageError(f"vertex set must be comma-separated ids, got {text!r}")


def cmd_gen(args, out, err) -> int:
    try:
        params = construction.ConstructionParams(args.n, args.m, args.seed)
    except construction.ConstructionError as exc:
        raise _UsageError(str(exc))
    try:
        t, layout = construction.generate(params, max_vertices=args.max_vertices)
    except (construction.ConstructionError, ValueError) as exc:
        raise _Fail(STOPPED, str(exc))
    text = serialize(t, layout)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return OK


def cmd_validate(args, out, err) -> int:
    t, layout = _read_instance(args.file)
    out.write(_row("vertices", t.vertex_count) + "\n")
    out.write(_row("colours", t.colour_count) + "\n")
    out.write(_row("tournament", "ok") + "\n")
    if layout is None:
        out.write(_row("construction", "no bag metadata") + "\n")
        return OK
    try:
        report = construction.validate_structure(t, layout)
    except ValueError as exc:
        raise _Fail(INPUT, str(exc))
    out.write(_row("construction", "ok" if report.ok else "violated") + "\n")
    for v in report.violations:
        out.write(f"  ({v.rule}) {v.detail}\n")
    return OK if report.ok else REFUTED


def cmd_absorb(args, out, err) -> int:
    t, _ = _read_instance(args.file)
    rel = absorption.absorbed_by(t)
    out.write(_row("vertices", t.vertex_count) + "\n")
    out.write(_row("absorbed pairs", int(rel.matrix.sum())) + "\n")
    if args.colour is not None:
        try:
            reach = absorption.monochromatic_reachability(t, args.colour)
        except ValueError as exc:
            raise _Fail(USAGE, str(exc))
        out.write(_row(f"colour {args.colour} arcs", int(t.colour_subgraph(args.colour).sum())) + "\n")
        out.write(_row(f"colour {args.colour} reachable pairs", int(reach.sum() - t.vertex_count)) + "\n")
    if args.stats:
        out.write("coverage size histogram\n")
        for size, count in absorption.coverage_histogram(rel).items():
            out.write(f"  {size:>8} {count:>8}\n")
    return OK


def cmd_check(args, out, err) -> int:
    t, _ = _read_instance(args.file)
    S = _vertex_list(args.S)
    rel = absorption.absorbed_by(t)
    try:
        verdict = absorption.is_absorbing(rel, S)
    except IndexError as exc:
        raise _Fail(INPUT, str(exc))
    out.write(_row("set", ",".join(map(str, S)) or "(empty)") + "\n")
    out.write(_row("absorbing", "yes" if verdict else "no") + "\n")
    return OK if verdict else REFUTED


def cmd_solve(args, out, err) -> int:
    t, _ = _read_instance(args.file)
    rel = absorption.absorbed_by(t)
    if args.brute:
        try:
            result = solver.min_absorbing_brute(rel)
        except ValueError as exc:
            raise _Fail(STOPPED, str(exc))
    else:
        result = solver.min_absorbing_set_exact(rel, args.budget)
    out.write(_row("optimum", result.optimum) + "\n")
    out.write(_row("witness", ",".join(map(str, result.witness))) + "\n")
    out.write(_row("nodes", result.nodes_explored) + "\n")
    out.write(_row("proved optimal", "yes" if result.proved_optimal else "no") + "\n")
    if result.budget_exhausted:
        err.write("budget exhausted; optimum is an upper bound only\n")
        return STOPPED
    return OK


def cmd_bounds(args, out, err) -> int:
    if args.n is None and args.sweep is None:
        raise _UsageError("bounds needs --n or --sweep")
    if args.n is not None:
        try:
            p = bounds.family_size(args.n)
        except ValueError as exc:
            raise _UsageError(str(exc))
        try:
            mu = bounds.minimal_m(p, "union")
            mr = bounds.minimal_m(p, "relaxed")
        except ValueError:
            mu = mr = None
        m = args.m if args.m is not None else mu
        out.write(_row("n", args.n) + "\n")
        out.write(_row("p", p) + "\n")
        if m is not None:
            rep = bounds.bound_report(p, m)
            out.write(_row("m", m) + "\n")
            out.write(_row("log union bound", _fmt_log(rep.log_union_bound)) + "\n")
            out.write(_row("log relaxed bound", _fmt_log(rep.log_relaxed_bound)) + "\n")
            out.write(_row("certifies existence", "yes" if rep.certifies_existence else "no") + "\n")
        out.write(_row("certified-by-bound m (union)", mu if mu is not None else "out of range") + "\n")
        out.write(_row("certified-by-bound m (relaxed)", mr if mr is not None else "out of range") + "\n")
    if args.sweep is not None:
        lo, hi = args.sweep
        if lo < 2 or hi < lo or hi > bounds.MAX_N:
            raise _UsageError(f"sweep range must satisfy 2 <= a <= b <= {bounds.MAX_N}")
        out.write(f"{'n':>4} {'p':>22} {'p*sqrt(n)/2^n':>16}\n")
        for n in range(lo, hi + 1):
            out.write(f"{n:>4} {bounds.family_size(n):>22} {bounds.stirling_ratio(n):>16.6g}\n")
    return OK


def cmd_hunt(args, out, err) -> int:
    try:
        report = witness.hunt(args.n, args.m, args.seed_start, args.trials, args.budget, args.jobs)
    except (witness.GuardError, ValueError) as exc:
        raise _Fail(STOPPED, str(exc))
    for o in report.outcomes:
        err.write(f"seed {o.seed}: {o.detail} (nodes {o.nodes})\n")
    if report.certificate is None:
        err.write(f"no certificate in {len(report.outcomes)} trial(s)\n")
        return REFUTED
    text = report.certificate.to_text()
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return OK


def cmd_verify_cert(args, out, err) -> int:
    try:
        cert = witness.Certificate.from_text(Path(args.cert).read_text())
    except OSError as exc:
        raise _Fail(INPUT, f"cannot read {args.cert}: {exc}")
    except witness.CertificateFormatError as exc:
        raise _Fail(INPUT, f"{args.cert}: {exc}")
    instance = _read_instance(args.instance)[0] if args.instance else None
    try:
        witness.verify(cert, instance)
    except witness.DigestMismatch as exc:
        raise _Fail(INPUT, str(exc))
    except witness.GuardError as exc:
        raise _Fail(STOPPED, str(exc))
    except witness.ClaimRefuted as exc:
        out.write(_row("verdict", "refuted") + "\n")
        out.write(_row("counterexample", ",".join(map(str, exc.counterexample)) or "(empty)") + "\n")
        return REFUTED
    except witness.WitnessError as exc:
        out.write(_row("verdict", "refuted") + "\n")
        err.write(f"{exc}\n")
        return REFUTED
    out.write(_row("verdict", "holds") + "\n")
    out.write(_row("claim", f"no absorbing set of size < {cert.optimum_at_least}") + "\n")
    return OK


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="absorbset", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a bag-construction instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-vertices", type=int, default=construction.DEFAULT_MAX_VERTICES)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", help="check tournament and construction structure")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("absorb", help="absorption relation statistics")
    p.add_argument("file")
    p.add_argument("--colour", type=int)
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=cmd_absorb)

    p = sub.add_parser("check", help="test whether a vertex set is absorbing")
    p.add_argument("file")
    p.add_argument("-S", required=True, help="comma-separated vertex ids")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="minimum absorbing set")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=solver.DEFAULT_NODE_BUDGET)
    p.add_argument("--brute", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bounds", help="probability bounds and Stirling table")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--sweep", type=int, nargs=2, metavar=("A", "B"))
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("hunt", help="search seeds for a certified hard instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed-start", type=int, default=1)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--budget", type=int, default=solver.DEFAULT_NODE_BUDGET)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_hunt)

    p = sub.add_parser("verify-cert", help="independently re-check a certificate")
    p.add_argument("cert")
    p.add_argument("--instance")
    p.set_defaults(func=cmd_verify_cert)
    return parser


def run(argv: Sequence[str]) -> CommandOutcome:
    out, err = io.StringIO(), io.StringIO()
    try:
        args = make_parser().parse_args(list(argv))
        code = args.func(args, out, err)
    except _UsageError as exc:
        err.write(f"{exc}\n")
        code = USAGE
    except _Fail as exc:
        err.write(f"error: {exc}\n")
        code = exc.code
    except SystemExit as exc:  # --help
        code = OK if exc.code in (0, None) else USAGE
    return CommandOutcome(code, out.getvalue(), err.getvalue())


def main(argv: Optional[Sequence[str]] = None) -> int:
    result = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
