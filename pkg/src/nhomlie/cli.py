"""``nhl`` command-line front end.

Exit codes: 0 when the report passes, 1 when it fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path
from typing import Callable

from . import io
from .cohomology import CochainComplex, cochain_dim, coboundary
from .core import NHomLieAlgebra, Wedge, check_automorphism, check_hom_fundamental, check_hom_leibniz_F, combos
from .deformation import (
    DEFAULT_LAMBDAS,
    check_deformation,
    check_trivial,
    deform_from_nijenhuis,
    is_hom_nijenhuis,
    is_hom_o_operator,
    lift_is_nijenhuis,
    nijenhuis_bracket,
    o_operator_lift,
)
from .derivation import check_der_subalgebra, check_inn_ideal, derivation_basis
from .errors import NHomLieError
from .extension import extend, extension_is_valid, extension_isomorphism, is_generalized_derivation
from .fixtures import FIXTURES
from .linalg import rank
from .report import Report, to_plain
from .representation import adjoint, check_representation, dual_representation, naive_dual, semidirect_product
from .scalars import parse_scalar

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
_NEGATIVE = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


class Result:
    """A report plus serialized outputs; ``primary`` is what ``--out`` writes."""

    def __init__(self, report: Report, outputs: dict | None = None, primary=None):
        self.report = report
        self.outputs = outputs or {}
        self.primary = primary


def _algebra(args) -> NHomLieAlgebra:
    if args.fixture and args.algebra:
        raise NHomLieError("give either an algebra file or --fixture, not both")
    if args.fixture:
        return FIXTURES[args.fixture]()
    if not args.algebra:
        raise NHomLieError("an algebra file or --fixture is required")
    return io.parse_algebra(io.load_json(args.algebra))


def _representation(alg: NHomLieAlgebra, spec: str):
    if spec == "adjoint":
        return adjoint(alg)
    if spec == "dual-adjoint":
        return dual_representation(adjoint(alg))
    return io.parse_representation(io.load_json(spec), alg)


def _algebra_report(alg: NHomLieAlgebra, command: str) -> Report:
    report = Report(command)
    auto = check_automorphism(alg)
    report.extend(auto)
    if auto.passed:
        hf = check_hom_fundamental(alg)
        report.extend(hf)
        if hf.passed:
            report.extend(check_hom_leibniz_F(alg))
    report.metrics.update({"n": alg.n, "dim": alg.dim})
    return report.sorted()


def _require_valid(alg: NHomLieAlgebra, command: str) -> Report | None:
    """A failing report for an invalid algebra, or None."""
    report = _algebra_report(alg, command)
    return None if report.passed else report


def _require_rep(rep, command: str) -> Report | None:
    rr = check_representation(rep, check_algebra=False)
    if rr.passed:
        return None
    report = Report(command)
    report.extend(rr, prefix="representation")
    return report.sorted()


def cmd_validate(args) -> Result:
    alg = _algebra(args)
    return Result(_algebra_report(alg, "validate"), primary=io.dump_algebra(alg))


def cmd_cohomology(args) -> Result:
    alg = _algebra(args)
    bad = _require_valid(alg, "cohomology")
    if bad is not None:
        return Result(bad)
    rep = _representation(alg, args.rep)
    bad = _require_rep(rep, "cohomology")
    if bad is not None:
        return Result(bad)
    if args.p < 1:
        raise NHomLieError("--p must be >= 1")
    cx = CochainComplex(alg, rep)
    report = Report("cohomology")
    p = args.p
    dim_c = cochain_dim(alg, rep, p)
    dim_z = dim_c - cx.rank(p)
    dim_b = cx.rank(p - 1) if p >= 2 else 0
    if dim_z < dim_b:
        report.error = f"negative cohomology dimension in degree {p}"
    report.metrics.update({"p": p, "dim_C": dim_c, "dim_Z": dim_z, "dim_B": dim_b, "dim_H": dim_z - dim_b})
    outputs, primary = {}, None
    if args.cochain:
        f = io.parse_cochain(io.load_json(args.cochain), alg, rep.dim_v)
        primary = io.dump_cochain(coboundary(alg, rep, f))
        outputs["coboundary"] = primary
    return Result(report, outputs, primary)


def cmd_derivations(args) -> Result:
    alg = _algebra(args)
    bad = _require_valid(alg, "derivations")
    if bad is not None:
        return Result(bad)
    basis = derivation_basis(alg)
    report = Report("derivations")
    report.extend(check_der_subalgebra(alg), prefix="subalgebra")
    report.extend(check_inn_ideal(alg), prefix="ideal")
    inner = [alg.ad(w).flatten() for w in _wedge_basis(alg)]
    report.metrics.update({"dim": len(basis), "dim_inner": rank(inner) if inner else 0})
    maps = [io.dump_linear_map(m) for m in basis]
    return Result(report.sorted(), {"basis": maps}, maps)


def _wedge_basis(alg):
    return [Wedge.basis(c) for c in combos(alg.dim, alg.n - 1)]


def _linear_map(path: str, rows: int, cols: int):
    return io.parse_linear_map(io.load_json(path), rows, cols)


def _lambdas(args):
    if not args.lambdas:
        return DEFAULT_LAMBDAS
    try:
        return [parse_scalar(x) for x in args.lambdas]
    except NHomLieError as exc:
        raise NHomLieError(f"--lambda: {exc}") from None


def cmd_deform(args) -> Result:
    alg = _algebra(args)
    bad = _require_valid(alg, "deform")
    if bad is not None:
        return Result(bad)
    N = _linear_map(args.N, alg.dim, alg.dim) if args.N else None
    report = Report("deform")
    if args.family:
        fam = io.parse_family(io.load_json(args.family), alg)
    elif N is not None:
        nij = is_hom_nijenhuis(alg, N)
        if not nij.passed:
            report.extend(nij, prefix="nijenhuis")
            return Result(report.sorted())
        fam = deform_from_nijenhuis(alg, N)
    else:
        raise NHomLieError("deform needs --family or --N")
    report.extend(check_deformation(alg, fam), prefix="deformation")
    if N is not None:
        report.extend(check_trivial(alg, fam, N, _lambdas(args)), prefix="trivial")
    primary = io.dump_family(fam)
    return Result(report.sorted(), {"family": primary}, primary)


def cmd_nijenhuis(args) -> Result:
    alg = _algebra(args)
    bad = _require_valid(alg, "nijenhuis")
    if bad is not None:
        return Result(bad)
    N = _linear_map(args.N, alg.dim, alg.dim)
    report = is_hom_nijenhuis(alg, N)
    report.command = "nijenhuis"
    outputs, primary = {}, None
    if not any(d.location == ("commute",) for d in report.defects):
        primary = io.dump_table(nijenhuis_bracket(alg, N, alg.n - 1).table)
        outputs["bracket"] = primary
    return Result(report, outputs, primary)


def cmd_o_operator(args) -> Result:
    alg = _algebra(args)
    bad = _require_valid(alg, "o-operator")
    if bad is not None:
        return Result(bad)
    rep = _representation(alg, args.rep)
    bad = _require_rep(rep, "o-operator")
    if bad is not None:
        return Result(bad)
    T = _linear_map(args.T, alg.dim, rep.dim_v)
    report = is_hom_o_operator(alg, rep, T)
    report.command = "o-operator"
    lift = o_operator_lift(alg, rep, T)
    report.metrics["lift_nijenhuis"] = lift_is_nijenhuis(alg, rep, T).passed
    primary = io.dump_linear_map(lift)
    return Result(report, {"lift": primary}, primary)


def cmd_extend(args) -> Result:
    alg = _algebra(args)
    bad = _require_valid(alg, "extend")
    if bad is not None:
        return Result(bad)
    D = io.parse_generalized_derivation(io.load_json(args.D), alg)
    report = is_generalized_derivation(alg, D)
    report.command = "extend"
    ext = extend(alg, D)
    report.metrics["extension_valid"] = extension_is_valid(alg, D)
    report.metrics["dim"] = ext.dim
    outputs = {"algebra": io.dump_algebra(ext)}
    if args.D2 or args.x:
        if not (args.D2 and args.x):
            raise NHomLieError("--D2 and --x go together")
        D2 = io.parse_generalized_derivation(io.load_json(args.D2), alg)
        x = _vector(args.x, alg.dim, "--x")
        iso, theta = extension_isomorphism(alg, D, D2, x)
        report.extend(iso, prefix="isomorphism")
        outputs["theta"] = io.dump_linear_map(theta)
    return Result(report.sorted(), outputs, outputs["algebra"])


def _vector(text: str, dim: int, flag: str) -> tuple:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != dim:
        raise NHomLieError(f"{flag}: expected {dim} comma-separated rationals")
    try:
        return tuple(parse_scalar(p) for p in parts)
    except NHomLieError as exc:
        raise NHomLieError(f"{flag}: {exc}") from None


def cmd_dual_rep(args) -> Result:
    alg = _algebra(args)
    bad = _require_valid(alg, "dual-rep")
    if bad is not None:
        return Result(bad)
    rep = _representation(alg, args.rep)
    if not args.naive:
        bad = _require_rep(rep, "dual-rep")
        if bad is not None:
            return Result(bad)
    dual = naive_dual(rep) if args.naive else dual_representation(rep)
    report = check_representation(dual, check_algebra=False)
    report.command = "dual-rep"
    report.metrics.update({"naive": bool(args.naive), "dimV": dual.dim_v})
    primary = io.dump_representation(dual)
    return Result(report, {"representation": primary}, primary)


def cmd_semidirect(args) -> Result:
    alg = _algebra(args)
    bad = _require_valid(alg, "semidirect")
    if bad is not None:
        return Result(bad)
    rep = _representation(alg, args.rep)
    bad = _require_rep(rep, "semidirect")
    if bad is not None:
        return Result(bad)
    prod = semidirect_product(alg, rep, check=False)
    report = _algebra_report(prod, "semidirect")
    primary = io.dump_algebra(prod)
    return Result(report, {"algebra": primary}, primary)


def cmd_fixtures(args) -> Result:
    names = [args.name] if args.name else sorted(FIXTURES)
    outputs = {name: io.dump_algebra(FIXTURES[name]()) for name in names}
    report = Report("fixtures")
    report.metrics["count"] = len(names)
    primary = outputs[names[0]] if args.name else outputs
    return Result(report, {"fixtures": outputs}, primary)


def _add_algebra(p: argparse.ArgumentParser) -> None:
    p.add_argument("algebra", nargs="?", help="algebra JSON file")
    p.add_argument("--fixture", choices=sorted(FIXTURES), help="use a built-in algebra instead of a file")


def _add_rep(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rep", default="adjoint", help="adjoint, dual-adjoint or a representation JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nhl", description="Exact computations with n-Hom-Lie algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--out", help="write the constructed object as JSON to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        # let values such as -1/2 through as arguments rather than options
        p._negative_number_matcher = _NEGATIVE
        p.set_defaults(func=fn)
        return p

    _add_algebra(add("validate", cmd_validate, "automorphism, Hom-Fundamental and Hom-Leibniz checks"))
    p = add("cohomology", cmd_cohomology, "dimensions of cochains, cocycles, coboundaries and cohomology")
    _add_algebra(p)
    _add_rep(p)
    p.add_argument("--p", type=int, default=1, help="cochain degree (default 1)")
    p.add_argument("--cochain", help="cochain JSON file; its coboundary is emitted")
    _add_algebra(add("derivations", cmd_derivations, "basis of Der(g) plus closure and ideal checks"))
    p = add("deform", cmd_deform, "check a deformation family, or generate one from a Nijenhuis operator")
    _add_algebra(p)
    p.add_argument("--family", help="deformation family JSON file")
    p.add_argument("--N", help="linear map JSON file for N")
    p.add_argument("--lambda", dest="lambdas", nargs="+", metavar="L", help="sample points for the triviality check")
    p = add("nijenhuis", cmd_nijenhuis, "Hom-Nijenhuis operator check")
    _add_algebra(p)
    p.add_argument("--N", required=True, help="linear map JSON file for N")
    p = add("o-operator", cmd_o_operator, "Hom-O-operator check and its lift")
    _add_algebra(p)
    _add_rep(p)
    p.add_argument("--T", required=True, help="linear map JSON file for T: V -> g")
    p = add("extend", cmd_extend, "generalized derivation check and extension")
    _add_algebra(p)
    p.add_argument("--D", required=True, help="generalized derivation JSON file")
    p.add_argument("--D2", help="second generalized derivation for the isomorphism check")
    p.add_argument("--x", help="alpha-fixed vector with D - D2 = ad_x, comma separated")
    p = add("dual-rep", cmd_dual_rep, "dual representation and its check")
    _add_algebra(p)
    _add_rep(p)
    p.add_argument("--naive", action="store_true", help="use the untwisted dual")
    p = add("semidirect", cmd_semidirect, "semidirect product with a representation")
    _add_algebra(p)
    _add_rep(p)
    p = add("fixtures", cmd_fixtures, "dump the built-in algebras")
    p.add_argument("name", nargs="?", choices=sorted(FIXTURES))
    return parser


def render_json(result: Result) -> str:
    data = result.report.to_json()
    if result.outputs:
        data["outputs"] = to_plain(result.outputs)
    return io.dumps(data)


def render_text(result: Result) -> str:
    r = result.report.sorted()
    lines = [f"{r.command}: {r.verdict}"]
    if r.error:
        lines.append(f"  error: {r.error}")
    for k in sorted(r.metrics):
        lines.append(f"  {k} = {r.metrics[k]}")
    shown = r.defects[:20]
    for d in shown:
        extra = f" ({d.note})" if d.note else ""
        lines.append(f"  defect at {to_plain(d.location)}{extra}")
    if len(r.defects) > len(shown):
        lines.append(f"  ... {len(r.defects) - len(shown)} more defects")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except NHomLieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if args.format == "json":
            report = Report(args.command.replace("_", "-"), error=str(exc))
            sys.stdout.write(io.dumps(report.to_json()))
        return EXIT_INPUT
    if args.out and result.primary is not None:
        Path(args.out).write_text(io.dumps(result.primary), encoding="utf-8")
    sys.stdout.write(render_json(result) if args.format == "json" else render_text(result))
    if result.report.error is not None:
        return EXIT_INPUT
    return EXIT_PASS if result.report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
