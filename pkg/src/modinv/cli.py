"""Command-line driver: parse a group spec, run one check, print a JSON report.

Exit codes: 0 definitive answer, 2 inconclusive, 3 bad input, 4 budget
exceeded, 5 internal contradiction.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import catalog
from .criteria import (
    INCONCLUSIVE,
    case_report,
    check_fixed_point_free,
    check_isolated,
    check_theorem_a,
    example47_gorenstein_data,
    gorenstein_example47,
    verify_section2_identities,
)
from .errors import (
    BudgetExceeded,
    DimMismatch,
    FieldMismatch,
    InvalidArgument,
    InvalidParameters,
    ModinvError,
    NotAModule,
    PreconditionFailed,
    TheoremContradicted,
)
from .gf import GF
from .group import (
    DEFAULT_MAX_LINES,
    DEFAULT_MAX_ORDER,
    MatGroup,
    _classified,
    dual_group,
    kernel_subgroup_of_W,
    transvection_subgroup,
)
from .invariants import certify_polynomiality, default_dmax, fixed_subspace, minimal_generators
from .linalg import Subspace, as_matrix
from .ring import HPoly

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_BUDGET, EXIT_CONTRADICTION = 0, 2, 3, 4, 5

INPUT_ERRORS = (InvalidArgument, InvalidParameters, DimMismatch, FieldMismatch, NotAModule,
                PreconditionFailed, OSError, ValueError, KeyError, TypeError)


# -- group specs ----------------------------------------------------------------------


def parse_field(desc: dict) -> GF:
    return GF(int(desc["p"]), int(desc.get("k", 1)), desc.get("modulus"))


def parse_matrix(field: GF, rows, n: int) -> np.ndarray:
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InvalidArgument(f"generator is not {n}x{n}")
    return as_matrix(field, rows)


def group_from_spec(spec: dict, max_order: int | None = None) -> tuple[MatGroup, dict]:
    """Build the group described by a GroupSpecFile dict; also return its budgets."""
    field = parse_field(spec["field"])
    n = int(spec["dim"])
    budgets = dict(spec.get("budgets") or {})
    if max_order is not None:
        budgets["max_order"] = max_order
    gens = [parse_matrix(field, g, n) for g in spec.get("generators", [])]
    group = MatGroup(field, gens, n=n, budget=int(budgets.get("max_order", DEFAULT_MAX_ORDER)),
                     name=spec.get("name"))
    return group, budgets


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _check_order(order: int, max_order: int | None) -> None:
    if max_order is not None and order > max_order:
        raise BudgetExceeded(f"group order {order} exceeds --max-order {max_order}", reached=order)


def group_from_catalog(name: str, max_order: int | None = None) -> MatGroup:
    """Catalog names:

    ``sl:N,Q``  ``example47:P,L,N[,K]``  ``scalar:P:D1,D2,...``  ``trivial:P,N``
    ``unitriangular:N,P[,K]``  ``monomial:M,N``

    Orders are known in closed form, so the budget is checked before any closure runs.
    """
    kind, _, rest = name.partition(":")
    if kind == "sl":
        n, q = _ints(rest)
        _check_order(catalog.sl_order(n, q), max_order)
        group = catalog.build_slnq_natural(n, q)
    elif kind == "example47":
        vals = _ints(rest)
        p, l, n = vals[:3]
        k = vals[3] if len(vals) > 3 else 1
        _check_order(p * l, max_order)
        group = catalog.build_example47(catalog.Example47Params.make(p, l, n, k=k))
    elif kind == "scalar":
        p, _, diag = rest.partition(":")
        group = catalog.build_scalar_rep(GF(int(p)), _ints(diag))
    elif kind == "trivial":
        p, n = _ints(rest)
        group = catalog.build_trivial(GF(p), n)
    elif kind == "unitriangular":
        vals = _ints(rest)
        n, p = vals[:2]
        k = vals[2] if len(vals) > 2 else 1
        _check_order((p ** k) ** (n * (n - 1) // 2), max_order)
        group = catalog.build_unitriangular(n, GF(p, k))
    elif kind == "monomial":
        m, n = _ints(rest)
        _check_order(m ** (n - 1) * math.factorial(n), max_order)
        group = catalog.build_monomial(m, n)
    else:
        raise InvalidArgument(f"unknown catalog entry {name!r}")
    if max_order is not None:
        group.budget = max_order
        _check_order(group.order, max_order)
    return group


def load_group(args) -> tuple[MatGroup, dict]:
    if args.catalog:
        return group_from_catalog(args.catalog, args.max_order), {}
    if not args.spec:
        raise InvalidArgument("give a spec file or --catalog NAME")
    with open(args.spec, encoding="utf-8") as fh:
        spec = json.load(fh)
    return group_from_spec(spec, args.max_order)


def _budget(args, budgets: dict, key: str, default):
    value = getattr(args, key)
    if value is not None:
        return value
    return budgets.get(key, default)


# -- subcommands ------------------------------------------------------------------------
# Each returns (report dict, exit code).


def cmd_order(group, args, budgets):
    return {"name": group.name, "field": group.field.describe(), "dim": group.n,
            "order": group.order}, EXIT_OK


def cmd_classify(group, args, budgets):
    classes = _classified(group)
    dets: dict[int, int] = {}
    for c in classes:
        dets[c.det] = dets.get(c.det, 0) + 1
    return {
        "order": group.order,
        "in_SL": group.in_sl(),
        "identity": sum(c.is_identity for c in classes),
        "transvections": sum(c.is_transvection for c in classes),
        "pseudo_reflections": sum(c.is_pseudo_reflection for c in classes),
        "p_elements": sum(c.is_p_element for c in classes),
        "determinants": [{"det": group.field.coeffs(d), "count": dets[d]} for d in sorted(dets)],
    }, EXIT_OK


def cmd_transvections(group, args, budgets):
    t = transvection_subgroup(group)
    return {"G_order": group.order, "T_order": t.order,
            "generators": t.describe()["generators"]}, EXIT_OK


def cmd_invariants(group, args, budgets):
    dmax = _budget(args, budgets, "dmax", None) or default_dmax(group)
    dims = [1] + [fixed_subspace(group, d).dim for d in range(1, dmax + 1)]
    degrees = sorted(d for d, _ in minimal_generators(group, dmax))
    return {"dmax": dmax, "dims": dims, "generator_degrees": degrees}, EXIT_OK


def cmd_certify(group, args, budgets):
    report = certify_polynomiality(group, _budget(args, budgets, "dmax", None))
    code = EXIT_INCONCLUSIVE if report.status == INCONCLUSIVE else EXIT_OK
    return report.to_dict(with_generators=True), code


def cmd_theorem_a(group, args, budgets):
    report = check_theorem_a(group, _budget(args, budgets, "dmax", None),
                             max_lines=_budget(args, budgets, "max_lines", DEFAULT_MAX_LINES))
    body = report.to_dict()
    out = {"verdict": body.pop("verdict"),
           "generator_degrees": report.direct_check.generator_degrees}
    out.update(body)
    code = EXIT_INCONCLUSIVE if report.verdict == INCONCLUSIVE else EXIT_OK
    return out, code


def cmd_isolated(group, args, budgets):
    report = check_isolated(group, _budget(args, budgets, "dmax", None),
                            max_lines=_budget(args, budgets, "max_lines", DEFAULT_MAX_LINES))
    code = EXIT_INCONCLUSIVE if report.isolated == "Inconclusive" else EXIT_OK
    return report.to_dict(), code


def cmd_fpf(group, args, budgets):
    return {"fixed_point_free": check_fixed_point_free(group),
            "dual_fixed_point_free": check_fixed_point_free(dual_group(group))}, EXIT_OK


def cmd_section2(group, args, budgets):
    F, n = group.field, group.n
    for flag in ("w", "vprime", "v", "y"):
        if getattr(args, flag) is None:
            raise InvalidArgument(f"section2-verify needs --{flag}")
    w = Subspace.span(F, as_matrix(F, json.loads(args.w)).reshape(-1, n), n)
    vprime = Subspace.span(F, as_matrix(F, json.loads(args.vprime)).reshape(-1, n), n)
    v = as_matrix(F, [json.loads(args.v)]).ravel()
    y = HPoly.parse(F, n, args.y)
    h = kernel_subgroup_of_W(group, w)
    witness = verify_section2_identities(y, vprime, v, h, w)
    out = {"H_order": h.order}
    out.update(witness.to_dict())
    return out, EXIT_OK


def cmd_case_report(group, args, budgets):
    return case_report(group, _budget(args, budgets, "dmax", None)), EXIT_OK


def _example47_params(args):
    for flag in ("p", "l", "n"):
        if getattr(args, flag) is None:
            raise InvalidArgument(f"needs --{flag}")
    return catalog.Example47Params.make(args.p, args.l, args.n, k=args.k)


def cmd_example47(args):
    params = _example47_params(args)
    group = catalog.build_example47(params)
    spec = {"name": group.name}
    spec.update(group.describe())
    spec["order"] = group.order
    return spec, EXIT_OK


def cmd_gorenstein47(args):
    params = _example47_params(args)
    data = example47_gorenstein_data(params)
    F = params.field
    result = gorenstein_example47(args.p, args.l, args.n, k=args.k, a=params.a)
    return {
        "p": args.p, "l": args.l, "n": args.n, "k": args.k,
        "a": F.coeffs(params.a.code),
        "scalars": [F.coeffs(c) for c in data["scalars"]],
        "det": F.coeffs(data["det"]),
        "gorenstein": result,
        "l_divides_p_minus_1": (args.p - 1) % args.l == 0,
    }, EXIT_OK


GROUP_COMMANDS = {
    "order": cmd_order,
    "classify": cmd_classify,
    "transvections": cmd_transvections,
    "invariants": cmd_invariants,
    "certify": cmd_certify,
    "theorem-a": cmd_theorem_a,
    "isolated": cmd_isolated,
    "fpf": cmd_fpf,
    "section2-verify": cmd_section2,
    "case-report": cmd_case_report,
}
PARAM_COMMANDS = {"example47": cmd_example47, "gorenstein47": cmd_gorenstein47}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modinv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dmax", type=int)
    common.add_argument("--max-order", type=int)
    common.add_argument("--max-lines", type=int)
    common.add_argument("--json-indent", type=int, default=2)
    for name in GROUP_COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("spec", nargs="?", help="GroupSpecFile JSON path")
        p.add_argument("--catalog", help="built-in group, e.g. sl:2,3 or example47:3,2,3")
        if name == "section2-verify":
            p.add_argument("--w", help="JSON rows spanning W")
            p.add_argument("--vprime", help="JSON rows spanning V'")
            p.add_argument("--v", help="JSON vector v")
            p.add_argument("--y", help="polynomial terms '[c] e1 .. en' separated by ';'")
    for name in PARAM_COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--p", type=int)
        p.add_argument("--l", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--k", type=int, default=1)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        if args.command in PARAM_COMMANDS:
            report, code = PARAM_COMMANDS[args.command](args)
        else:
            group, budgets = load_group(args)
            report, code = GROUP_COMMANDS[args.command](group, args, budgets)
    except TheoremContradicted as exc:
        print(f"theorem contradicted: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ModinvError, *INPUT_ERRORS) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    indent = args.json_indent if args.json_indent > 0 else None
    out.write(json.dumps(report, indent=indent) + "\n")
    return code


def main() -> None:
    sys.exit(run())
