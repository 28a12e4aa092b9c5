"""Command-line entry point.

Subcommands: seq {search,verify}, surface {check,line,scan,family},
padic {norm,zeros,pjf,ldl,fmt,smt,delta}, compile, check, formulas.

Output is deterministic for fixed inputs; --json selects the machine
format.  Rationals are printed as "num/den" strings, never as floats.
Exit codes: 0 success, 1 domain error, 2 usage error.  The only
environment variable read is BUCHI_THREADS (worker count for the search
partition; it never changes output bytes).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import nevanlinna, reduction, sequences, surfaces
from .exact import as_fraction
from .symbolic import RatFunc


def _rat(text: str) -> Fraction:
    if "." in text:
        raise ValueError(f"{text!r} looks like a float; use num/den notation")
    return Fraction(text)


def _rat_list(text: str) -> list[Fraction]:
    return [_rat(part) for part in text.split(",") if part != ""]


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part != ""]


def _s(q) -> str:
    return str(q)


def _emit(args, payload: dict, human: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload))
    else:
        print(human)


def _ratfunc(args, num_attr: str = "num", den_attr: str = "den") -> RatFunc:
    num = reduction.parse_poly(getattr(args, num_attr))
    den_text = getattr(args, den_attr, None)
    den = reduction.parse_poly(den_text) if den_text else None
    return RatFunc(num, den) if den is not None else RatFunc(num)


def _cmd_seq_search(args) -> int:
    results = sequences.search(args.length, args.bound)
    values = [list(seq.values) for seq in results]
    payload = {"length": args.length, "bound": args.bound, "nontrivial": values}
    if args.json:
        print(json.dumps(payload))
    else:
        if not values:
            print("no nontrivial sequences")
        for vs in values:
            print(",".join(str(v) for v in vs))
    return 0


def _cmd_seq_verify(args) -> int:
    values = _int_list(args.values)
    if not sequences.is_buchi(values):
        _emit(args, {"values": values, "is_buchi": False, "trivial": None,
                     "nu": None}, "buchi: no")
        return 0
    seq = sequences.BuchiSequence(values)
    witness = sequences.classify_trivial(seq)
    if witness is None:
        _emit(args, {"values": values, "is_buchi": True, "trivial": False,
                     "nu": None}, "buchi: yes, nontrivial")
    else:
        _emit(args, {"values": values, "is_buchi": True, "trivial": True,
                     "nu": witness.nu}, f"buchi: yes, trivial (nu={witness.nu})")
    return 0


def _cmd_surface_check(args) -> int:
    surface = surfaces.BuchiSurface(_rat_list(args.deltas))
    point = surfaces.ProjectivePoint(_rat_list(args.point))
    on_surface = surfaces.contains(surface, point)
    payload = {"deltas": [_s(d) for d in surface.deltas],
               "point": [_s(c) for c in point.coords],
               "contains": on_surface}
    _emit(args, payload, f"on surface: {'yes' if on_surface else 'no'}")
    return 0


def _cmd_surface_line(args) -> int:
    surface = surfaces.BuchiSurface(_rat_list(args.deltas))
    point = surfaces.ProjectivePoint(_rat_list(args.point))
    witness = surfaces.trivial_line_member(surface, point)
    if witness is None:
        _emit(args, {"on_trivial_line": False, "signs": None, "nu": None},
              "not on a trivial line")
    else:
        nu = None if witness.nu is None else _s(witness.nu)
        signs = list(witness.signs)
        _emit(args, {"on_trivial_line": True, "signs": signs, "nu": nu},
              f"trivial line: signs={signs} nu={nu}")
    return 0


def _cmd_surface_scan(args) -> int:
    nodes = surfaces.EvaluationNodes(_rat_list(args.nodes))
    found = surfaces.scan_exceptional(nodes, args.height,
                                      integers_only=args.integers_only)
    payload = {
        "nodes": [_s(a) for a in nodes.nodes],
        "height": args.height,
        "integers_only": args.integers_only,
        "label": "candidates up to the height bound; no completeness implied",
        "count": len(found),
        "candidates": [{"u": _s(f.u), "v": _s(f.v)} for f in found],
        "growth": {"height": args.height, "count": len(found)},
    }
    if args.json:
        print(json.dumps(payload))
    else:
        print(f"{len(found)} candidate(s) up to height {args.height}")
        for f in found:
            print(f"u={f.u} v={f.v}")
    return 0


def _cmd_surface_family(args) -> int:
    f, nodes, roots = surfaces.counterexample_family(args.N)
    payload = {"N": args.N, "f": {"u": _s(f.u), "v": _s(f.v)},
               "nodes": [str(a) for a in nodes],
               "roots": [str(r) for r in roots]}
    human = (f"f = x^2 + ({f.u})*x + ({f.v})\n"
             f"nodes: {','.join(str(a) for a in nodes)}\n"
             f"roots: {','.join(str(r) for r in roots)}")
    _emit(args, payload, human)
    return 0


def _cmd_padic_norm(args) -> int:
    poly = reduction.parse_poly(args.poly)
    value = nevanlinna.gauss_log_norm(poly, args.p, _rat(args.rho))
    _emit(args, {"p": args.p, "rho": args.rho, "log_norm": _s(value)}, _s(value))
    return 0


def _cmd_padic_zeros(args) -> int:
    poly = reduction.parse_poly(args.poly)
    rho = _rat(args.rho)
    polygon = nevanlinna.newton_polygon(poly, args.p)
    count = nevanlinna.count_zeros(poly, args.p, rho)
    payload = {"p": args.p, "rho": args.rho, "count": count,
               "newton_polygon": [{"slope": _s(s.slope), "length": s.length}
                                  for s in polygon.segments]}
    _emit(args, payload, str(count))
    return 0


def _cmd_padic_pjf(args) -> int:
    f = _ratfunc(args)
    rhos = _rat_list(args.rhos)
    constant = nevanlinna.check_pjf(f, args.p, rhos)
    payload = {"p": args.p, "rhos": [_s(r) for r in rhos], "constant": _s(constant)}
    _emit(args, payload, f"C = {constant}")
    return 0


def _cmd_padic_ldl(args) -> int:
    f = _ratfunc(args)
    holds = nevanlinna.check_ldl(f, args.n, args.p, _rat(args.rho))
    _emit(args, {"p": args.p, "n": args.n, "rho": args.rho, "holds": holds},
          f"ldl: {'true' if holds else 'false'}")
    return 0


def _cmd_padic_fmt(args) -> int:
    f = _ratfunc(args)
    report = nevanlinna.check_fmt(f, _rat(args.a), args.p, _rat_list(args.rhos))
    payload = {"p": args.p, "a": args.a,
               "grid": [_s(r) for r in report.grid],
               "defects": [_s(v) for v in report.values],
               "spread": _s(report.spread),
               "stable_beyond": _s(report.stable_beyond),
               "eventual_slope": _s(report.eventual_slope),
               "eventual_defect": _s(report.eventual_value),
               "passed": report.passed}
    human = (f"spread {report.spread}; defect is {report.eventual_value} for "
             f"rho > {report.stable_beyond}; passed: {report.passed}")
    _emit(args, payload, human)
    return 0


def _cmd_padic_smt(args) -> int:
    f = _ratfunc(args)
    report = nevanlinna.check_smt(f, _rat_list(args.targets), args.p,
                                  _rat_list(args.rhos))
    payload = {"p": args.p,
               "targets": [_s(t) for t in report.targets],
               "grid": [_s(r) for r in report.grid],
               "values": [_s(v) for v in report.values],
               "sup": _s(report.sup),
               "stable_beyond": _s(report.stable_beyond),
               "eventual_slope": _s(report.eventual_slope),
               "passed": report.passed}
    human = (f"sup {report.sup}; eventual slope {report.eventual_slope}; "
             f"passed: {report.passed}")
    _emit(args, payload, human)
    return 0


def _cmd_padic_delta(args) -> int:
    f = _ratfunc(args, "f_num", "f_den")
    u = _ratfunc(args, "u_num", "u_den")
    holds = nevanlinna.delta_identity(f, u, _rat(args.a))
    _emit(args, {"holds": holds}, f"delta identity: {'true' if holds else 'false'}")
    return 0


def _read_source(path: str) -> reduction.SourceSystem:
    with open(path, "r", encoding="utf-8") as handle:
        return reduction.parse(handle.read())


def _cmd_compile(args) -> int:
    system = _read_source(args.infile)
    target = reduction.compile_system(system, m=args.m)
    reduction.validate_target(target)
    if args.emit == "json":
        print(target.to_json())
    else:
        print(target.to_text(), end="")
    return 0


def _cmd_check(args) -> int:
    system = _read_source(args.infile)
    target = reduction.compile_system(system, m=args.m)
    reduction.validate_target(target)
    report = reduction.bounded_equisat(system, target, args.box)
    payload = {
        "box": report.box,
        "assignments": report.assignments,
        "source_solutions": report.source_solutions,
        "lifted": report.lifted,
        "agreements": report.agreements,
        "derived_w_bound": report.derived_w_bound,
        "nontrivial_gadget_sequences": report.nontrivial_gadget_sequences,
        "passed": report.passed,
        "solutions": [{k: v for k, v in sorted(sol.items())}
                      for sol in report.solutions],
    }
    human = (f"{report.source_solutions} solution(s) in box {report.box}, "
             f"{report.lifted} lifted exactly; "
             f"agreement on {report.agreements}/{report.assignments} assignments; "
             f"gadget certificate: {report.nontrivial_gadget_sequences} nontrivial "
             f"sequence(s) below bound {report.derived_w_bound}; "
             f"{'PASS' if report.passed else 'FAIL'}")
    _emit(args, payload, human)
    return 0


def _cmd_formulas(args) -> int:
    deltas = _rat_list(args.deltas) if args.deltas else None
    text = reduction.print_formulas(args.mode, m=args.m, deltas=deltas)
    if args.json:
        print(json.dumps({"mode": args.mode, "m": args.m, "text": text}))
    else:
        print(text)
    return 0


def _add_json_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="machine-readable output")


def _add_ratfunc_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--num", required=True, help="numerator polynomial in z")
    parser.add_argument("--den", default="", help="denominator polynomial in z (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="buchi",
        description="exact workbench: square sequences, quadric surfaces, "
                    "p-adic value distribution, diagonal quadratic reduction")
    sub = parser.add_subparsers(dest="command", required=True)

    seq = sub.add_parser("seq", help="square-sequence operations")
    seq_sub = seq.add_subparsers(dest="subcommand", required=True)
    p = seq_sub.add_parser("search", help="exhaustive nontrivial sequence search")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_seq_search)
    p = seq_sub.add_parser("verify", help="verify and classify a sequence")
    p.add_argument("values", help="comma-separated integers, e.g. 6,23,32,39")
    _add_json_flag(p)
    p.set_defaults(func=_cmd_seq_verify)

    surface = sub.add_parser("surface", help="quadric surface operations")
    surface_sub = surface.add_subparsers(dest="subcommand", required=True)
    p = surface_sub.add_parser("check", help="point membership")
    p.add_argument("--deltas", required=True)
    p.add_argument("--point", required=True)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_surface_check)
    p = surface_sub.add_parser("line", help="trivial-line membership")
    p.add_argument("--deltas", required=True)
    p.add_argument("--point", required=True)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_surface_line)
    p = surface_sub.add_parser("scan", help="bounded-height candidate scan")
    p.add_argument("--nodes", required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--integers-only", action="store_true", dest="integers_only")
    _add_json_flag(p)
    p.set_defaults(func=_cmd_surface_scan)
    p = surface_sub.add_parser("family", help="the factorial counterexample family")
    p.add_argument("--N", type=int, required=True)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_surface_family)

    padic = sub.add_parser("padic", help="exact p-adic value distribution")
    padic_sub = padic.add_subparsers(dest="subcommand", required=True)
    p = padic_sub.add_parser("norm", help="Gauss log-norm of a polynomial")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--rho", required=True)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_padic_norm)
    p = padic_sub.add_parser("zeros", help="zero count in a ball")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--rho", required=True)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_padic_zeros)
    p = padic_sub.add_parser("pjf", help="log|f| = N(0) - N(inf) + C")
    p.add_argument("--p", type=int, required=True)
    _add_ratfunc_flags(p)
    p.add_argument("--rhos", required=True)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_padic_pjf)
    p = padic_sub.add_parser("ldl", help="derivative quotient norm bound")
    p.add_argument("--p", type=int, required=True)
    _add_ratfunc_flags(p)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--rho", required=True)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_padic_ldl)
    p = padic_sub.add_parser("fmt", help="first-main-theorem defect report")
    p.add_argument("--p", type=int, required=True)
    _add_ratfunc_flags(p)
    p.add_argument("--a", required=True)
    p.add_argument("--rhos", required=True)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_padic_fmt)
    p = padic_sub.add_parser("smt", help="second-main-theorem sum report")
    p.add_argument("--p", type=int, required=True)
    _add_ratfunc_flags(p)
    p.add_argument("--targets", required=True)
    p.add_argument("--rhos", required=True)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_padic_smt)
    p = padic_sub.add_parser("delta", help="discriminant factorization identity")
    p.add_argument("--f-num", required=True, dest="f_num")
    p.add_argument("--f-den", default="", dest="f_den")
    p.add_argument("--u-num", required=True, dest="u_num")
    p.add_argument("--u-den", default="", dest="u_den")
    p.add_argument("--a", required=True)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_padic_delta)

    p = sub.add_parser("compile", help="compile a system to diagonal quadratic form")
    p.add_argument("--in", required=True, dest="infile")
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--emit", choices=("json", "text"), default="text")
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("check", help="bounded equisatisfiability check")
    p.add_argument("--in", required=True, dest="infile")
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--box", type=int, required=True)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("formulas", help="print the defining formulas")
    p.add_argument("--mode", required=True, choices=("F", "G", "H", "Psi"))
    p.add_argument("--m", type=int, default=reduction.formulas.DEFAULT_M)
    p.add_argument("--deltas", default="")
    _add_json_flag(p)
    p.set_defaults(func=_cmd_formulas)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, ZeroDivisionError, OSError) as exc:
        print(f"buchi: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
