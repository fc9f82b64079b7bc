"""Command line front end.

Every operation is exposed over a JSON exchange format.  Document-valued
flags accept either inline JSON (anything starting with ``{`` or ``[``)
or a path to a JSON file.  Exit codes: 0 success, 1 malformed input,
2 precondition violation (the diagnostic names the violated condition).
Identical inputs and flags produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .adc import RatRegion, ac, adc, adc_contains, adc_intersect_intervals
from .aspace import AMapFin, FinASpace, amap_violations, product, separate, verify_anormal
from .draft import Draft, embed, realize, refine_at, refine_sequence, urysohn, validate_draft
from .errors import MalformedInputError, PreconditionError
from .lgroup import (
    FnGroup,
    Term,
    completeness_check,
    eta_check,
    eval_term,
    max_of_group,
    render_term,
    seminorm,
    sw_approximate,
    sw_conditions,
)
from .pwl import IntPwl, pwl_combine, pwl_eval, pwl_norm, pwl_sample, pwl_value_group
from .rationals import format_rat, parse_rat


class _Parser(argparse.ArgumentParser):
    # Usage problems count as malformed input: exit 1, not argparse's 2.
    def error(self, message: str):  # noqa: D102
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_doc(arg: str) -> object:
    text = arg
    if not arg.lstrip().startswith(("{", "[")):
        try:
            with open(arg, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise MalformedInputError(f"cannot read {arg!r}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON: {exc}") from exc


def _load_subset(space, arg: str) -> frozenset[str]:
    doc = _load_doc(arg)
    if not isinstance(doc, list) or not all(isinstance(x, str) for x in doc):
        raise MalformedInputError("subset must be a JSON array of labels")
    return space.subset(doc)


def _load_rat_list(arg: str) -> list[Fraction]:
    return [parse_rat(part) for part in arg.split(",")] if arg else []


def _emit(doc: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        for line in text_lines(doc):
            print(line)


def _kv_lines(doc: dict):
    def lines(d):
        for key in sorted(d):
            yield f"{key}: {json.dumps(d[key], sort_keys=True, ensure_ascii=False)}"

    return lines(doc)


# ---------------------------------------------------------------- handlers


def _cmd_adc(args) -> dict:
    region = RatRegion.from_json(_load_doc(args.region))
    result = adc(region)
    if args.contains is not None:
        return {"member": adc_contains(result, args.contains)}
    return result.to_json_dict()


def _cmd_ac(args) -> dict:
    space = FinASpace.from_json(_load_doc(args.space))
    region = RatRegion.from_json(_load_doc(args.region))
    return {"points": sorted(ac(space, region))}


def _cmd_adc_intersect(args) -> dict:
    doc = _load_doc(args.intervals)
    if not isinstance(doc, list):
        raise MalformedInputError("intervals must be a JSON list of [lo, hi] pairs")
    pairs = []
    for item in doc:
        if not isinstance(item, list) or len(item) != 2:
            raise MalformedInputError(f"bad interval: {item!r}")
        pairs.append((parse_rat(item[0]), parse_rat(item[1])))
    return adc_intersect_intervals(pairs).to_json_dict()


def _cmd_aspace_check(args) -> dict:
    amap = AMapFin.from_json(_load_doc(args.map))
    violations = amap_violations(amap)
    return {"a_map": not violations, "violations": violations}


def _cmd_aspace_product(args) -> dict:
    left = FinASpace.from_json(_load_doc(args.left))
    right = FinASpace.from_json(_load_doc(args.right))
    return product(left, right).to_json_dict()


def _cmd_aspace_separate(args) -> dict:
    space = FinASpace.from_json(_load_doc(args.space))
    a = _load_subset(space, args.a)
    b = _load_subset(space, args.b)
    u, v = separate(space, a, b, args.policy)
    return {"u": sorted(u), "v": sorted(v)}


def _cmd_aspace_normal(args) -> dict:
    space = FinASpace.from_json(_load_doc(args.space))
    return verify_anormal(space).to_json_dict()


def _cmd_draft_validate(args) -> dict:
    d = Draft.from_json(_load_doc(args.input))
    return validate_draft(d).to_json_dict()


def _cmd_draft_refine(args) -> dict:
    d = Draft.from_json(_load_doc(args.input))
    if args.at is None and args.levels is None:
        raise MalformedInputError("need --at or --levels")
    if args.at is not None:
        d = refine_at(d, parse_rat(args.at), args.policy)
    if args.levels is not None:
        d = refine_sequence(d, _load_rat_list(args.levels), args.policy)
    return d.to_json_dict()


def _cmd_draft_realize(args) -> dict:
    d = Draft.from_json(_load_doc(args.input))
    return realize(d).to_json_dict()


def _cmd_draft_urysohn(args) -> dict:
    space = FinASpace.from_json(_load_doc(args.space))
    a = _load_subset(space, args.a)
    b = _load_subset(space, args.b)
    f = urysohn(space, a, b, parse_rat(args.alpha), parse_rat(args.beta))
    return f.to_json_dict()


def _cmd_draft_embed(args) -> dict:
    space = FinASpace.from_json(_load_doc(args.space))
    fns = embed(space)
    return {"functions": [f.to_json_dict() for f in fns]}


def _cmd_lgroup_norm(args) -> dict:
    if args.values is not None:
        doc = _load_doc(args.values)
        if not isinstance(doc, dict):
            raise MalformedInputError("values must be a label-to-rational map")
        values = {x: parse_rat(v) for x, v in doc.items()}
    else:
        if args.group is None or args.term is None:
            raise MalformedInputError("need --values, or both --group and --term")
        group = FnGroup.from_json(_load_doc(args.group))
        term = Term.from_json(_load_doc(args.term))
        values = eval_term(group, term)
    return {"norm": format_rat(seminorm(values))}


def _cmd_lgroup_max(args) -> dict:
    group = FnGroup.from_json(_load_doc(args.group))
    return max_of_group(group).to_json_dict()


def _cmd_lgroup_sw_check(args) -> dict:
    group = FnGroup.from_json(_load_doc(args.group))
    return sw_conditions(group).to_json_dict()


def _cmd_lgroup_approx(args) -> dict:
    group = FnGroup.from_json(_load_doc(args.group))
    doc = _load_doc(args.target)
    if not isinstance(doc, dict):
        raise MalformedInputError("target must be a label-to-rational map")
    target = {x: parse_rat(v) for x, v in doc.items()}
    term = sw_approximate(group, target, parse_rat(args.eps))
    values = eval_term(group, term)
    error = seminorm({x: values[x] - target[x] for x in target})
    return {
        "term": term.to_json_dict(),
        "rendered": render_term(term),
        "error": format_rat(error),
    }


def _cmd_lgroup_eta(args) -> dict:
    space = FinASpace.from_json(_load_doc(args.space))
    return eta_check(space).to_json_dict()


def _cmd_lgroup_complete(args) -> dict:
    group = FnGroup.from_json(_load_doc(args.group))
    return completeness_check(group).to_json_dict()


def _cmd_pwl_eval(args) -> dict:
    f = IntPwl.from_json(_load_doc(args.fn))
    return {"value": format_rat(pwl_eval(f, parse_rat(args.at)))}


def _cmd_pwl_combine(args) -> dict:
    f = IntPwl.from_json(_load_doc(args.left))
    g = IntPwl.from_json(_load_doc(args.right))
    return pwl_combine(f, g, args.op).to_json_dict()


def _cmd_pwl_norm(args) -> dict:
    f = IntPwl.from_json(_load_doc(args.fn))
    return {"norm": format_rat(pwl_norm(f))}


def _cmd_pwl_valuegroup(args) -> dict:
    fns = []
    if args.fns is not None:
        doc = _load_doc(args.fns)
        if not isinstance(doc, list):
            raise MalformedInputError("fns must be a JSON list of functions")
        fns = [IntPwl.from_json(item) for item in doc]
    return {"denominator": pwl_value_group(fns, parse_rat(args.at))}


def _cmd_pwl_sample(args) -> dict:
    doc = _load_doc(args.fns)
    if not isinstance(doc, list):
        raise MalformedInputError("fns must be a JSON list of functions")
    fns = [IntPwl.from_json(item) for item in doc]
    points = _load_rat_list(args.points)
    return pwl_sample(fns, points).to_json_dict()


# ------------------------------------------------------------------ parser


def build_parser() -> _Parser:
    parser = _Parser(prog="arithspace", description=__doc__)
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), default="json")

    top = parser.add_subparsers(dest="command", required=True)

    p = top.add_parser("adc", parents=[fmt], help="admissible denominators of a region")
    p.add_argument("--region", required=True)
    p.add_argument("--contains", type=int, default=None, metavar="N")
    p.set_defaults(handler=_cmd_adc)

    p = top.add_parser("ac", parents=[fmt], help="carrier points admissible for a region")
    p.add_argument("--space", required=True)
    p.add_argument("--region", required=True)
    p.set_defaults(handler=_cmd_ac)

    p = top.add_parser(
        "adc-intersect", parents=[fmt], help="admissible denominators of a directed intersection"
    )
    p.add_argument("--intervals", required=True)
    p.set_defaults(handler=_cmd_adc_intersect)

    sp = top.add_parser("aspace", help="carrier operations").add_subparsers(
        dest="subcommand", required=True
    )
    p = sp.add_parser("check", parents=[fmt], help="is a pointwise map denominator-decreasing?")
    p.add_argument("--map", required=True)
    p.set_defaults(handler=_cmd_aspace_check)
    p = sp.add_parser("product", parents=[fmt], help="product carrier with lcm denominators")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(handler=_cmd_aspace_product)
    p = sp.add_parser("separate", parents=[fmt], help="separate two disjoint subsets")
    p.add_argument("--space", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--policy", choices=("left", "right"), default="left")
    p.set_defaults(handler=_cmd_aspace_separate)
    p = sp.add_parser("normal", parents=[fmt], help="separation witnesses for a finite carrier")
    p.add_argument("--space", required=True)
    p.set_defaults(handler=_cmd_aspace_normal)

    sp = top.add_parser("draft", help="level-draft operations").add_subparsers(
        dest="subcommand", required=True
    )
    p = sp.add_parser("validate", parents=[fmt], help="check the draft axioms")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(handler=_cmd_draft_validate)
    p = sp.add_parser("refine", parents=[fmt], help="insert one or more new levels")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--at", default=None, metavar="P/Q")
    p.add_argument("--levels", default=None, metavar="P/Q,P/Q,…")
    p.add_argument("--policy", choices=("left", "right"), default="left")
    p.set_defaults(handler=_cmd_draft_refine)
    p = sp.add_parser("realize", parents=[fmt], help="build a function from a draft")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(handler=_cmd_draft_realize)
    p = sp.add_parser("urysohn", parents=[fmt], help="separate two sets at given values")
    p.add_argument("--space", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.set_defaults(handler=_cmd_draft_urysohn)
    p = sp.add_parser("embed", parents=[fmt], help="embed a carrier into a rational cube")
    p.add_argument("--space", required=True)
    p.set_defaults(handler=_cmd_draft_embed)

    sp = top.add_parser("lgroup", help="function-group operations").add_subparsers(
        dest="subcommand", required=True
    )
    p = sp.add_parser("norm", parents=[fmt], help="sup norm of a value map or term")
    p.add_argument("--values", default=None)
    p.add_argument("--group", default=None)
    p.add_argument("--term", default=None)
    p.set_defaults(handler=_cmd_lgroup_norm)
    p = sp.add_parser("max", parents=[fmt], help="spectrum with spectral denominators")
    p.add_argument("--group", required=True)
    p.set_defaults(handler=_cmd_lgroup_max)
    p = sp.add_parser("sw-check", parents=[fmt], help="density conditions with diagnostics")
    p.add_argument("--group", required=True)
    p.set_defaults(handler=_cmd_lgroup_sw_check)
    p = sp.add_parser("approx", parents=[fmt], help="approximate a target by a term")
    p.add_argument("--group", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--eps", required=True)
    p.set_defaults(handler=_cmd_lgroup_approx)
    p = sp.add_parser("eta", parents=[fmt], help="rebuild a carrier from its functions")
    p.add_argument("--space", required=True)
    p.set_defaults(handler=_cmd_lgroup_eta)
    p = sp.add_parser("complete", parents=[fmt], help="is the group all compatible functions?")
    p.add_argument("--group", required=True)
    p.set_defaults(handler=_cmd_lgroup_complete)

    sp = top.add_parser("pwl", help="integer piecewise-linear operations").add_subparsers(
        dest="subcommand", required=True
    )
    p = sp.add_parser("eval", parents=[fmt], help="evaluate at a rational point")
    p.add_argument("--fn", required=True)
    p.add_argument("--at", required=True)
    p.set_defaults(handler=_cmd_pwl_eval)
    p = sp.add_parser("combine", parents=[fmt], help="exact +, -, max, min")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--op", required=True)
    p.set_defaults(handler=_cmd_pwl_combine)
    p = sp.add_parser("norm", parents=[fmt], help="sup norm")
    p.add_argument("--fn", required=True)
    p.set_defaults(handler=_cmd_pwl_norm)
    p = sp.add_parser("valuegroup", parents=[fmt], help="value-group denominator at a point")
    p.add_argument("--at", required=True)
    p.add_argument("--fns", default=None)
    p.set_defaults(handler=_cmd_pwl_valuegroup)
    p = sp.add_parser("sample", parents=[fmt], help="restrict functions to finitely many points")
    p.add_argument("--fns", required=True)
    p.add_argument("--points", required=True, metavar="P/Q,P/Q,…")
    p.set_defaults(handler=_cmd_pwl_sample)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.handler(args)
    except MalformedInputError as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 2
    _emit(doc, args.format, _kv_lines)
    return 0


if __name__ == "__main__":
    sys.exit(main())
