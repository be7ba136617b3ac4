"""Command-line entry point: ``triharmonic <command> ...``.

Exit codes: 0 on success, 1 on any mismatch or failed proof, 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence, TextIO

from . import displays
from .algebra import AlgebraError, Poly, UnboundSymbol, render
from .derivation import GENERIC, OMEGA, RewriteSystem, derive
from .geometry import (
    ADAPTED,
    SPACE_FORM_INDICES,
    FrameAlgebra,
    Section,
    bitension_field,
    koszul_connection,
    space_form_curvature,
    specialize_k2_zero,
    tension_field,
    tritension_field,
)
from .parser import GRAMMAR, ExpressionError, parse_poly
from .replay import Report, compare_up_to_scalar, Comparison, evaluate, replay_script
from .scripts import BUILTIN_SCRIPTS

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def emit_report(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return report.to_json()
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    data = report.to_dict()
    lines = [f"proof script {report.script_id}", f"{len(data['steps'])} steps"]
    for s in data["steps"]:
        cmp = s["comparison"]
        if s["comparison"] == Comparison.SCALAR.value:
            cmp += f"({s['scalar']})"
        tag = f" [{s['paper_eq']}]" if s["paper_eq"] else ""
        lines.append(f"{s['index']:>3}  {s['action']:<34} {cmp:<18}{tag}  {s['polynomial']}")
        if s["rule"]:
            lines.append(f"     rule: {s['rule']}")
        if s["note"]:
            lines.append(f"     note: {s['note']}")
    if report.failed_step is not None:
        lines.append(f"verdict: {report.verdict} at step {report.failed_step}")
        failed = data["steps"][report.failed_step] if report.failed_step < len(data["steps"]) else None
        if failed and failed["diff"] is not None:
            lines.append(f"diff: {failed['diff']}")
    else:
        lines.append(f"verdict: {report.verdict}")
    lines.extend(f"conclusion: {c}" for c in report.conclusions)
    return "\n".join(lines) + "\n"


# -- commands ---------------------------------------------------------------


def _frame_text(coeffs: dict[int, Poly]) -> str:
    terms = [f"({render(g)})*e{k}" for k, g in sorted(coeffs.items()) if not g.is_zero()]
    return " + ".join(terms) or "0"


def _verify_connection(out: TextIO) -> int:
    conn = koszul_connection(FrameAlgebra.adapted())
    bad = 0
    for (i, j), expected in displays.CONNECTION.items():
        got = {k: g for k, g in conn[(i, j)].items() if not g.is_zero()}
        ok = got == {k: g for k, g in expected.items() if not g.is_zero()}
        bad += not ok
        status = "ok" if ok else "MISMATCH"
        out.write(f"nabla_e{i} e{j} = {_frame_text(got)}  [{displays.CONNECTION_TEXT[(i, j)]}]  {status}\n")
    out.write(f"{9 - bad}/9 entries match\n")
    return EXIT_OK if bad == 0 else EXIT_MISMATCH


def _verify_curvature(out: TextIO) -> int:
    bad = 0
    for label, idx, got, lhs in zip(displays.CURVATURE_LABELS, SPACE_FORM_INDICES,
                                    space_form_curvature(), displays.CURVATURE_LHS):
        expected = ADAPTED.reduce(lhs)
        kind, scalar, _ = compare_up_to_scalar(got, expected)
        if kind is Comparison.EXACT:
            status = "ok"
        else:
            bad += 1
            status = f"MISMATCH (equal up to factor {scalar})" if kind is Comparison.SCALAR else "MISMATCH"
        out.write(f"{label} = {render(got)}  expected {render(expected)}  {status}\n")
    out.write(f"{7 - bad}/7 components match\n")
    return EXIT_OK if bad == 0 else EXIT_MISMATCH


_FIELDS = {"tension": lambda rules: tension_field(), "bitension": bitension_field, "tritension": tritension_field}


def _compute(args, out: TextIO) -> int:
    rules = OMEGA if args.omega else GENERIC
    field = _FIELDS[args.field](rules)
    if args.k2_zero:
        field = Section(*specialize_k2_zero(field.components()))
    if args.omega:
        field = Section(rules.reduce(field.comp1), rules.reduce(field.comp2))
    out.write(field.render() + "\n")
    return EXIT_OK


def _replay(args, out: TextIO) -> int:
    report = replay_script(BUILTIN_SCRIPTS[args.script]())
    if args.json:
        with open(args.json, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(emit_report(report, "json"))
    out.write(emit_report(report, args.format))
    return EXIT_OK if report.complete else EXIT_MISMATCH


def _rules(args) -> RewriteSystem:
    return OMEGA if args.omega else GENERIC


def _normalize(args, out: TextIO) -> int:
    rules = _rules(args)
    p = parse_poly(args.expr, rules)
    out.write(render(rules.reduce(p) if args.omega else p) + "\n")
    return EXIT_OK


def _derive(args, out: TextIO) -> int:
    rules = _rules(args)
    p = derive(parse_poly(args.expr, rules), int(args.by[1]), rules)
    out.write(render(p) + "\n")
    return EXIT_OK


def _parse_point(text: str) -> dict[str, Fraction]:
    point = {}
    for item in filter(None, text.split(",")):
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"bad --at entry {item!r}; expected name=value")
        try:
            point[name.strip()] = Fraction(value.strip())
        except ValueError as exc:
            raise UsageError(f"bad value in --at entry {item!r}") from exc
    return point


def _eval(args, out: TextIO) -> int:
    rules = _rules(args)
    point = _parse_point(args.at)
    if args.omega and "c" not in point:
        # on the Omega set c is determined by the other data
        point["c"] = point.get("sigma", 0) ** 2 - point.get("k1", 0) * point.get("f2", 0)
    p = parse_poly(args.expr, rules)
    value = evaluate(p, point, rules)
    out.write(f"{value}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgParser(prog="triharmonic", description="Exact symbolic checks for submersions from 3-dimensional space forms.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    v = sub.add_parser("verify", help="compare computed geometry against the displayed formulas")
    v.add_argument("what", choices=["connection", "curvature"])

    c = sub.add_parser("compute", help="print a tension-type field as eps1/eps2 components")
    c.add_argument("field", choices=sorted(_FIELDS))
    c.add_argument("--omega", action="store_true", help="reduce on the set where k1 != 0")
    c.add_argument("--k2-zero", action="store_true", help="specialise to frames with k2 = 0")

    r = sub.add_parser("replay", help="replay a built-in elimination proof")
    r.add_argument("script", choices=sorted(BUILTIN_SCRIPTS))
    r.add_argument("--json", metavar="PATH", help="also write the JSON report to PATH")
    r.add_argument("--format", choices=["text", "json"], default="text", help="stdout format")

    for name, helptext in (("normalize", "print the normal form of an expression"),
                           ("derive", "apply a frame derivation")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("expr")
        if name == "derive":
            p.add_argument("--by", choices=["e1", "e2", "e3"], required=True)
        p.add_argument("--omega", action="store_true")

    e = sub.add_parser("eval", help="evaluate an expression at a rational point")
    e.add_argument("expr")
    e.add_argument("--at", required=True, metavar="k1=Q,f2=Q,sigma=Q[,c=Q]")
    e.add_argument("--omega", action="store_true")
    return ap


_COMMANDS = {"compute": _compute, "replay": _replay, "normalize": _normalize, "derive": _derive, "eval": _eval}


def _usage(ap: argparse.ArgumentParser, message: str, err: TextIO) -> int:
    err.write(f"error: {message}\n\n{ap.format_help()}\nexpression grammar:\n{GRAMMAR}\n")
    return EXIT_USAGE


def run_command(argv: Sequence[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(list(argv))
        if args.command == "verify":
            return _verify_connection(out) if args.what == "connection" else _verify_curvature(out)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        return _usage(ap, str(exc), err)
    except ExpressionError as exc:
        return _usage(ap, f"{type(exc).__name__}: {exc}", err)
    except (UnboundSymbol, AlgebraError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
