"""Finitely generated unital function groups on finite carriers.

A function group is a finite carrier plus a finite list of rational-valued
generators; the constant 1 is always implicitly present.  Elements are
lattice-group terms over the generators, evaluated pointwise.  Per point,
the subgroup of the rationals generated by the generator values and 1 is
(1/d)Z for a unique d; these spectral denominators make the carrier into a
new arithmetic carrier, and comparing them with the original denominators
decides whether the group is dense in (hence, at this finite scale, equal
to) the full group of denominator-compatible functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .aspace import FinASpace
from .divlat import divides, group_index, lcm_div
from .errors import MalformedInputError, PreconditionError
from .rationals import format_rat, parse_rat

ValueMap = dict[str, Fraction]

OPS_BINARY = ("+", "-", "∨", "∧")  # the lattice join/meet render as "∨"/"∧"
OP_JOIN = "∨"
OP_MEET = "∧"


@dataclass(frozen=True)
class Term:
    """Expression tree over generator indices and integer constants.

    ``op`` is one of "+", "-", "∨", "∧", "const", "gen"; "-" is unary
    negation with one argument and subtraction with two.
    """

    op: str
    args: tuple["Term", ...] = ()
    value: int | None = None
    index: int | None = None

    def to_json_dict(self) -> dict:
        if self.op == "const":
            return {"op": "const", "value": self.value}
        if self.op == "gen":
            return {"op": "gen", "index": self.index}
        return {"op": self.op, "args": [a.to_json_dict() for a in self.args]}

    @classmethod
    def from_json(cls, doc: object) -> "Term":
        if not isinstance(doc, dict) or "op" not in doc:
            raise MalformedInputError(f"bad term node: {doc!r}")
        op = doc["op"]
        if op == "const":
            v = doc.get("value")
            if isinstance(v, bool) or not isinstance(v, int):
                raise MalformedInputError(f"const needs an integer value: {doc!r}")
            return const(v)
        if op == "gen":
            i = doc.get("index")
            if isinstance(i, bool) or not isinstance(i, int) or i < 0:
                raise MalformedInputError(f"gen needs a nonnegative index: {doc!r}")
            return gen(i)
        if op not in OPS_BINARY:
            raise MalformedInputError(f"unknown term operator: {op!r}")
        args = doc.get("args")
        if not isinstance(args, list):
            raise MalformedInputError(f"term node needs args: {doc!r}")
        parsed = tuple(cls.from_json(a) for a in args)
        if op == "-" and len(parsed) == 1:
            return cls("-", parsed)
        if len(parsed) != 2:
            raise MalformedInputError(f"operator {op!r} takes two arguments")
        return cls(op, parsed)


def gen(i: int) -> Term:
    return Term("gen", index=i)


def const(v: int) -> Term:
    return Term("const", value=v)


def add(a: Term, b: Term) -> Term:
    if a.op == "const" and a.value == 0:
        return b
    if b.op == "const" and b.value == 0:
        return a
    return Term("+", (a, b))


def neg(a: Term) -> Term:
    if a.op == "const":
        return const(-a.value)
    return Term("-", (a,))


def sub(a: Term, b: Term) -> Term:
    return Term("-", (a, b))


def join(a: Term, b: Term) -> Term:
    return Term(OP_JOIN, (a, b))


def meet(a: Term, b: Term) -> Term:
    return Term(OP_MEET, (a, b))


def smul(a: Term, m: int) -> Term:
    """Integer multiple as a balanced doubling tree of additions."""
    if m == 0:
        return const(0)
    if m < 0:
        return neg(smul(a, -m))
    if m == 1:
        return a
    half = smul(a, m // 2)
    doubled = Term("+", (half, half))
    return doubled if m % 2 == 0 else Term("+", (doubled, a))


def render_term(t: Term) -> str:
    """ASCII rendering, generators named g1, g2, ..."""

    def walk(node: Term, parent: str | None) -> str:
        if node.op == "const":
            return str(node.value)
        if node.op == "gen":
            return f"g{node.index + 1}"
        if node.op == "-" and len(node.args) == 1:
            inner = walk(node.args[0], "-")
            return f"-{inner}"
        a = walk(node.args[0], node.op)
        b = walk(node.args[1], node.op)
        sym = {"+": "+", "-": "-", OP_JOIN: "max", OP_MEET: "min"}[node.op]
        if sym in ("max", "min"):
            return f"{sym}({a}, {b})"
        body = f"{a} {sym} {b}"
        return f"({body})" if parent in ("max", "min", "-") else body

    return walk(t, None)


@dataclass(frozen=True)
class FnGroup:
    """Carrier plus generator list; generator k is a total value map."""

    space: FinASpace
    generators: tuple[tuple[tuple[str, Fraction], ...], ...]

    @classmethod
    def make(
        cls, space: FinASpace, generators: Sequence[Mapping[str, Fraction]]
    ) -> "FnGroup":
        rows = []
        for k, g in enumerate(generators):
            if set(g) != set(space.labels):
                raise MalformedInputError(f"generator {k} must cover the carrier")
            rows.append(tuple((x, Fraction(g[x])) for x in space.labels))
        return cls(space, tuple(rows))

    def generator_value(self, k: int, label: str) -> Fraction:
        for x, v in self.generators[k]:
            if x == label:
                return v
        raise MalformedInputError(f"unknown point: {label!r}")

    def generator_map(self, k: int) -> ValueMap:
        return dict(self.generators[k])

    def values_at(self, label: str) -> list[Fraction]:
        return [dict(g)[label] for g in self.generators]

    def to_json_dict(self) -> dict:
        return {
            "space": self.space.to_json_dict(),
            "generators": [
                {x: format_rat(v) for x, v in g} for g in self.generators
            ],
        }

    @classmethod
    def from_json(cls, doc: object) -> "FnGroup":
        if not isinstance(doc, dict) or set(doc) != {"space", "generators"}:
            raise MalformedInputError('group must be {"space":…, "generators":…}')
        space = FinASpace.from_json(doc["space"])
        gens = doc["generators"]
        if not isinstance(gens, list):
            raise MalformedInputError("generators must be a list of value maps")
        parsed = []
        for g in gens:
            if not isinstance(g, dict):
                raise MalformedInputError("each generator must be a value map")
            parsed.append({x: parse_rat(v) for x, v in g.items()})
        return cls.make(space, parsed)


def eval_term(group: FnGroup, term: Term) -> ValueMap:
    """Pointwise evaluation; shared subtrees are evaluated once."""
    labels = group.space.labels
    memo: dict[int, ValueMap] = {}

    def walk(node: Term) -> ValueMap:
        key = id(node)
        if key in memo:
            return memo[key]
        if node.op == "const":
            out = {x: Fraction(node.value) for x in labels}
        elif node.op == "gen":
            if node.index >= len(group.generators):
                raise MalformedInputError(
                    f"generator index {node.index} out of range "
                    f"(group has {len(group.generators)})"
                )
            out = group.generator_map(node.index)
        elif node.op == "-" and len(node.args) == 1:
            inner = walk(node.args[0])
            out = {x: -inner[x] for x in labels}
        else:
            a, b = walk(node.args[0]), walk(node.args[1])
            if node.op == "+":
                out = {x: a[x] + b[x] for x in labels}
            elif node.op == "-":
                out = {x: a[x] - b[x] for x in labels}
            elif node.op == OP_JOIN:
                out = {x: max(a[x], b[x]) for x in labels}
            else:
                out = {x: min(a[x], b[x]) for x in labels}
        memo[key] = out
        return out

    return walk(term)


def seminorm(values: Mapping[str, Fraction]) -> Fraction:
    """Sup norm of a value map (the unit-induced norm in function form)."""
    if not values:
        raise PreconditionError("empty carrier has no seminorm", condition="nonempty carrier")
    return max(abs(Fraction(v)) for v in values.values())


def value_group(group: FnGroup, label: str) -> int:
    """Spectral denominator at a point: the subgroup of the rationals
    generated by the generator values there together with 1 is (1/d)Z;
    returns d."""
    return group_index(group.values_at(label))


def separates(group: FnGroup) -> bool:
    """Do the generators distinguish every pair of points?  (A generator
    family separates iff the group it generates does, since terms agree
    wherever all generators do.)"""
    return _nonseparated_pair(group) is None


def _nonseparated_pair(group: FnGroup) -> tuple[str, str] | None:
    labels = group.space.labels
    for i, x in enumerate(labels):
        for y in labels[i + 1 :]:
            if all(
                group.generator_value(k, x) == group.generator_value(k, y)
                for k in range(len(group.generators))
            ):
                return (x, y)
    return None


@dataclass(frozen=True)
class MaxResult:
    """The spectrum of a separating function group: same points, spectral
    denominators, and the identity point correspondence."""

    space: FinASpace
    correspondence: tuple[tuple[str, str], ...]

    def to_json_dict(self) -> dict:
        return {
            "space": self.space.to_json_dict(),
            "points_map": {a: b for a, b in self.correspondence},
        }


def max_of_group(group: FnGroup) -> MaxResult:
    """Spectrum with spectral denominators.

    For separating function groups every unital homomorphism to the reals
    is evaluation at a carrier point, so the spectrum is the carrier
    itself with denominator the per-point value-group index.
    """
    pair = _nonseparated_pair(group)
    if pair is not None:
        raise PreconditionError(
            f"generators do not separate {pair[0]} and {pair[1]}",
            condition="separating",
        )
    zeta = {x: value_group(group, x) for x in group.space.labels}
    return MaxResult(
        FinASpace.make(zeta),
        tuple((x, x) for x in group.space.labels),
    )


@dataclass(frozen=True)
class SwReport:
    """Diagnostics for the two density conditions: separation, and
    spectral denominator equal to the carrier denominator at every point."""

    ok: bool
    separating: bool
    unseparated_pair: tuple[str, str] | None
    mismatches: tuple[tuple[str, int, int], ...]  # (point, zeta, spectral)

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "separating": self.separating,
            "unseparated_pair": list(self.unseparated_pair)
            if self.unseparated_pair
            else None,
            "mismatches": [
                {"point": x, "zeta": z, "spectral": d} for x, z, d in self.mismatches
            ],
        }


def sw_conditions(group: FnGroup) -> SwReport:
    pair = _nonseparated_pair(group)
    mismatches = tuple(
        (x, z, value_group(group, x))
        for x, z in group.space.items
        if value_group(group, x) != z
    )
    return SwReport(
        ok=pair is None and not mismatches,
        separating=pair is None,
        unseparated_pair=pair,
        mismatches=mismatches,
    )


@dataclass(frozen=True)
class EtaReport:
    """Result of rebuilding a carrier from its own function group.

    The canonical generators (per-point indicator scaled to 1/zeta, plus
    the unit) separate points and have value group (1/zeta(x))Z at x, so
    the spectrum reproduces the carrier point-for-point with equal
    denominators.
    """

    ok: bool
    space: FinASpace
    spectral: FinASpace
    correspondence: tuple[tuple[str, str], ...]
    generator_count: int

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "space": self.space.to_json_dict(),
            "spectral": self.spectral.to_json_dict(),
            "bijection": {a: b for a, b in self.correspondence},
            "generator_count": self.generator_count,
        }


def canonical_generators(space: FinASpace) -> list[ValueMap]:
    """Scaled indicators 1/zeta(x) at x (zero elsewhere) plus the unit."""
    gens: list[ValueMap] = []
    for x, z in space.items:
        gens.append(
            {y: (Fraction(1, z) if y == x else Fraction(0)) for y in space.labels}
        )
    gens.append({y: Fraction(1) for y in space.labels})
    return gens


def eta_check(space: FinASpace) -> EtaReport:
    for x, z in space.items:
        if z == 0:
            raise PreconditionError(
                f"point {x} has denominator 0: its value fiber is the whole real "
                "line, which is not finitely generated over the rationals",
                condition="zeta >= 1 everywhere",
            )
    group = FnGroup.make(space, canonical_generators(space))
    result = max_of_group(group)
    matches = result.space == space
    return EtaReport(
        ok=matches,
        space=space,
        spectral=result.space,
        correspondence=result.correspondence,
        generator_count=len(group.generators),
    )


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with g = gcd(a, b) >= 0 and s*a + t*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _ext_gcd_list(nums: Sequence[int]) -> tuple[int, list[int]]:
    """gcd of a nonempty list with one set of integer combination weights."""
    g, coeffs = nums[0], [1]
    if g < 0:
        g, coeffs = -g, [-1]
    for n in nums[1:]:
        g2, s, t = _ext_gcd(g, n)
        coeffs = [c * s for c in coeffs]
        coeffs.append(t)
        g = g2
    return g, coeffs


def _exact_match_term(group: FnGroup, label: str, target: Fraction) -> Term:
    """A term whose value at ``label`` is exactly ``target``.

    Writes the target as an integer combination of the generator values
    and 1 at the point, which exists precisely because the target lies in
    the value group there.
    """
    vals = group.values_at(label)
    q = math.lcm(*(v.denominator for v in vals)) if vals else 1
    basis = [v.numerator * (q // v.denominator) for v in vals] + [q]
    g, coeffs = _ext_gcd_list(basis)
    scaled = target * q
    if scaled.denominator != 1 or scaled.numerator % g != 0:
        raise PreconditionError(
            f"target value {format_rat(target)} at {label} is outside the value "
            f"group (1/{q // g})Z",
            condition="target in value group",
        )
    s = scaled.numerator // g
    out = const(coeffs[-1] * s)
    for k, c in enumerate(coeffs[:-1]):
        out = add(out, smul(gen(k), c * s))
    return out


def _one_sided_term(
    group: FnGroup, target: Mapping[str, Fraction], x: str, y: str
) -> Term:
    """A term t with t(x) >= target(x) and t(y) <= target(y).

    Take a separating generator g, the simplest rational a/b strictly
    between g(x) and g(y), and the smallest multiple m of b (in absolute
    value) clearing both slope bounds; then m*g - m*(a/b) works.
    """
    from .rationals import simplest_between

    k = next(
        k
        for k in range(len(group.generators))
        if group.generator_value(k, x) != group.generator_value(k, y)
    )
    gx, gy = group.generator_value(k, x), group.generator_value(k, y)
    cut = simplest_between(min(gx, gy), max(gx, gy))
    b = cut.denominator
    fx, fy = Fraction(target[x]), Fraction(target[y])
    if gy < cut < gx:
        bound = max(fy / (gy - cut), fx / (gx - cut))
        m = 0 if bound <= 0 else b * math.ceil(bound / b)
    else:
        bound = min(fy / (gy - cut), fx / (gx - cut))
        m = 0 if bound >= 0 else b * math.floor(bound / b)
    q = -m * cut
    assert q.denominator == 1
    return add(smul(gen(k), m), const(q.numerator))


def _pair_term(
    group: FnGroup,
    target: Mapping[str, Fraction],
    exact: Mapping[str, Term],
    values: Mapping[str, ValueMap],
    x: str,
    y: str,
) -> Term:
    """A term agreeing with the target at both x and y, by the standard
    four-way case split on how the two exact-match terms overshoot."""
    fx, fy = Fraction(target[x]), Fraction(target[y])
    h, k = exact[x], exact[y]
    kx, hy = values[y][x], values[x][y]
    if kx >= fx and hy >= fy:
        return meet(h, k)
    if kx <= fx and hy <= fy:
        return join(h, k)
    if kx <= fx and hy >= fy:
        return join(meet(h, _one_sided_term(group, target, x, y)), k)
    return meet(join(h, _one_sided_term(group, target, y, x)), k)


def _two_point_solve(
    group: FnGroup, target: Mapping[str, Fraction], x: str, y: str, k: int
) -> Term | None:
    """m*g + q through both target points, when it has integer m, q."""
    gx, gy = group.generator_value(k, x), group.generator_value(k, y)
    if gx == gy:
        return None
    m = (Fraction(target[x]) - Fraction(target[y])) / (gx - gy)
    if m.denominator != 1:
        return None
    q = Fraction(target[x]) - m * gx
    if q.denominator != 1:
        return None
    return add(smul(gen(k), m.numerator), const(q.numerator))


def sw_approximate(
    group: FnGroup, target: Mapping[str, Fraction], eps: Fraction
) -> Term:
    """A term within ``eps`` of the target in the sup norm.

    Requires the density conditions and, at every point, a target value
    inside the value group there.  Simple candidates are tried first (the
    generators, two-point affine solves, per-point exact matches); the
    general construction joins, over the points, the meets of per-pair
    matching terms, and is exact on a finite carrier.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise MalformedInputError(f"eps must be positive, got {eps}")
    report = sw_conditions(group)
    if not report.ok:
        if not report.separating:
            raise PreconditionError(
                f"generators do not separate {report.unseparated_pair[0]} and "
                f"{report.unseparated_pair[1]}",
                condition="separating",
            )
        x, z, d = report.mismatches[0]
        raise PreconditionError(
            f"value group at {x} is (1/{d})Z but the carrier denominator is {z}",
            condition="zeta equals spectral denominator",
        )
    labels = group.space.labels
    if set(target) != set(labels):
        raise MalformedInputError("target must cover exactly the carrier")
    target = {x: Fraction(v) for x, v in target.items()}
    for x, z in group.space.items:
        if not divides(target[x].denominator, z):
            raise PreconditionError(
                f"target value {format_rat(target[x])} at {x} is outside the "
                f"value group (1/{z})Z",
                condition="target in value group",
            )

    def within(term: Term) -> bool:
        vals = eval_term(group, term)
        return seminorm({x: vals[x] - target[x] for x in labels}) <= eps

    for k in range(len(group.generators)):
        cand = gen(k)
        if within(cand):
            return cand
    for i, x in enumerate(labels):
        for y in labels[i + 1 :]:
            for k in range(len(group.generators)):
                cand = _two_point_solve(group, target, x, y, k)
                if cand is not None and within(cand):
                    return cand
    exact = {x: _exact_match_term(group, x, target[x]) for x in labels}
    for x in labels:
        if within(exact[x]):
            return exact[x]
    values = {x: eval_term(group, exact[x]) for x in labels}
    per_point: list[Term] = []
    for x in labels:
        row: Term | None = None
        for y in labels:
            t = exact[x] if y == x else _pair_term(group, target, exact, values, x, y)
            row = t if row is None else meet(row, t)
        per_point.append(row)
    out = per_point[0]
    for t in per_point[1:]:
        out = join(out, t)
    assert within(out)
    return out


@dataclass(frozen=True)
class CompletenessReport:
    """Whether the generated group already contains every function allowed
    by the carrier denominators, witnessed constructively when it does."""

    complete: bool
    conditions: SwReport
    detail: str
    witnesses: tuple[tuple[str, Term], ...] = field(default=())

    def to_json_dict(self) -> dict:
        return {
            "complete": self.complete,
            "conditions": self.conditions.to_json_dict(),
            "detail": self.detail,
            "witnesses": {x: t.to_json_dict() for x, t in self.witnesses},
        }


def completeness_check(group: FnGroup) -> CompletenessReport:
    """Decide whether the group equals the full group of
    denominator-compatible functions on its carrier.

    With every carrier denominator positive, that full group is the
    product of the (1/zeta(x))Z fibers; the group fills it exactly when
    the density conditions hold, and then sub-fiber targets are realised
    exactly by terms (returned as witnesses).  Separation keeps evaluation
    faithful, so nothing is collapsed.
    """
    for x, z in group.space.items:
        if z == 0:
            raise PreconditionError(
                f"point {x} has denominator 0: completeness is not decidable "
                "from rational data on such a fiber",
                condition="zeta >= 1 everywhere",
            )
    report = sw_conditions(group)
    if not report.ok:
        if not report.separating:
            detail = (
                f"points {report.unseparated_pair[0]} and "
                f"{report.unseparated_pair[1]} are not separated"
            )
        else:
            x, z, d = report.mismatches[0]
            detail = (
                f"value group at {x} is (1/{d})Z, strictly inside (1/{z})Z: "
                f"the function with value 1/{z} at {x} is unreachable"
            )
        return CompletenessReport(False, report, detail)
    labels = group.space.labels
    if not labels:
        return CompletenessReport(True, report, "empty carrier")
    spacing = Fraction(1, lcm_div([z for _, z in group.space.items]))
    eps = spacing / 2
    witnesses = []
    for x in labels:
        target = {
            y: (Fraction(1, group.space.zeta_of(x)) if y == x else Fraction(0))
            for y in labels
        }
        witnesses.append((x, sw_approximate(group, target, eps)))
    return CompletenessReport(
        True,
        report,
        "every denominator-compatible function is an exact term value",
        tuple(witnesses),
    )
