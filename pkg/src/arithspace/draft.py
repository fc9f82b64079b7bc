"""Level drafts on finite carriers: validation, refinement, realisation.

An [alpha, beta]-draft fixes a finite sorted set of rational levels
(containing both endpoints) and, per level r, a lower set ``down(r)`` and
an upper set ``up(r)`` of points.  The four axioms are

  D1  up(alpha) = down(beta) = whole carrier,
  D2  down(r) | up(r) covers the carrier at every level,
  D3  down(r) and up(s) are disjoint whenever r < s,
  D4  points in up(r) & down(s) (r <= s) must admit a denominator
      compatible with some rational in [r, s].

A draft abstracts the sublevel/superlevel sets of a denominator-decreasing
function; ``realize`` rebuilds such a function, and ``urysohn`` combines
the two steps to separate two sets at prescribed values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .adc import RatRegion, adc, interval_region, point_region
from .aspace import FinASpace, SeparationPolicy, separate, subset_to_json
from .divlat import divides, divisors
from .errors import MalformedInputError, PreconditionError
from .rationals import format_rat, parse_rat

Subset = frozenset[str]


@dataclass(frozen=True)
class Draft:
    """Rows are (level, down-set, up-set), ascending by level."""

    space: FinASpace
    alpha: Fraction
    beta: Fraction
    rows: tuple[tuple[Fraction, Subset, Subset], ...]

    @classmethod
    def make(
        cls,
        space: FinASpace,
        alpha: Fraction,
        beta: Fraction,
        down: Mapping[Fraction, Iterable[str]],
        up: Mapping[Fraction, Iterable[str]],
    ) -> "Draft":
        if set(down) != set(up):
            raise MalformedInputError("down and up must be keyed by the same levels")
        rows = tuple(
            (Fraction(r), space.subset(down[r]), space.subset(up[r]))
            for r in sorted(down)
        )
        return cls(space, Fraction(alpha), Fraction(beta), rows)

    @cached_property
    def levels(self) -> tuple[Fraction, ...]:
        return tuple(r for r, _, _ in self.rows)

    @cached_property
    def down(self) -> dict[Fraction, Subset]:
        return {r: d for r, d, _ in self.rows}

    @cached_property
    def up(self) -> dict[Fraction, Subset]:
        return {r: u for r, _, u in self.rows}

    def to_json_dict(self) -> dict:
        return {
            "space": self.space.to_json_dict(),
            "alpha": format_rat(self.alpha),
            "beta": format_rat(self.beta),
            "levels": [
                {
                    "r": format_rat(r),
                    "down": subset_to_json(d),
                    "up": subset_to_json(u),
                }
                for r, d, u in self.rows
            ],
        }

    @classmethod
    def from_json(cls, doc: object) -> "Draft":
        if not isinstance(doc, dict) or set(doc) != {"space", "alpha", "beta", "levels"}:
            raise MalformedInputError(
                'draft must be {"space":…, "alpha":…, "beta":…, "levels":…}'
            )
        space = FinASpace.from_json(doc["space"])
        levels = doc["levels"]
        if not isinstance(levels, list):
            raise MalformedInputError("levels must be a list")
        down: dict[Fraction, list[str]] = {}
        up: dict[Fraction, list[str]] = {}
        for row in levels:
            if not isinstance(row, dict) or set(row) != {"r", "down", "up"}:
                raise MalformedInputError(f"bad level row: {row!r}")
            r = parse_rat(row["r"])
            if r in down:
                raise MalformedInputError(f"duplicate level {format_rat(r)}")
            if not isinstance(row["down"], list) or not isinstance(row["up"], list):
                raise MalformedInputError("down/up must be label arrays")
            down[r], up[r] = row["down"], row["up"]
        return cls.make(space, parse_rat(doc["alpha"]), parse_rat(doc["beta"]), down, up)


@dataclass(frozen=True)
class RatFunction:
    """A rational-valued function on a carrier, with its target interval.

    Values satisfy lo <= f(x) <= hi and den f(x) divides the carrier
    denominator at x, i.e. the function is a denominator-decreasing map
    into [lo, hi].
    """

    space: FinASpace
    values: tuple[tuple[str, Fraction], ...]
    lo: Fraction
    hi: Fraction

    @classmethod
    def make(
        cls,
        space: FinASpace,
        values: Mapping[str, Fraction],
        lo: Fraction,
        hi: Fraction,
    ) -> "RatFunction":
        if set(values) != set(space.labels):
            raise MalformedInputError("values must cover exactly the carrier")
        lo, hi = Fraction(lo), Fraction(hi)
        pairs = []
        for x in space.labels:
            v = Fraction(values[x])
            if not lo <= v <= hi:
                raise MalformedInputError(
                    f"value {format_rat(v)} at {x} outside [{lo}, {hi}]"
                )
            if not divides(v.denominator, space.zeta_of(x)):
                raise MalformedInputError(
                    f"value {format_rat(v)} at {x} does not decrease the "
                    f"denominator {space.zeta_of(x)}"
                )
            pairs.append((x, v))
        return cls(space, tuple(pairs), lo, hi)

    def value_of(self, label: str) -> Fraction:
        for x, v in self.values:
            if x == label:
                return v
        raise MalformedInputError(f"unknown point: {label!r}")

    def value_map(self) -> dict[str, Fraction]:
        return dict(self.values)

    def to_json_dict(self) -> dict:
        return {
            "values": {x: format_rat(v) for x, v in self.values},
            "lo": format_rat(self.lo),
            "hi": format_rat(self.hi),
        }

    @classmethod
    def from_json(cls, doc: object, space: FinASpace) -> "RatFunction":
        if not isinstance(doc, dict) or set(doc) != {"values", "lo", "hi"}:
            raise MalformedInputError('function must be {"values":…, "lo":…, "hi":…}')
        if not isinstance(doc["values"], dict):
            raise MalformedInputError("values must be a label-to-rational map")
        return cls.make(
            space,
            {x: parse_rat(v) for x, v in doc["values"].items()},
            parse_rat(doc["lo"]),
            parse_rat(doc["hi"]),
        )


@dataclass(frozen=True)
class DraftCheck:
    ok: bool
    kind: str | None = None  # "structure" or the violated axiom "D1".."D4"
    message: str | None = None

    def to_json_dict(self) -> dict:
        return {"ok": self.ok, "kind": self.kind, "message": self.message}


def validate_draft(d: Draft) -> DraftCheck:
    """Check the draft axioms D1-D4, reporting the first violation found.

    Structural defects (missing endpoints, levels out of range) are
    reported with kind "structure", distinct from axiom violations.
    """
    x_all = d.space.label_set()
    levels = d.levels
    if len(set(levels)) != len(levels) or tuple(sorted(levels)) != levels:
        return DraftCheck(False, "structure", "levels must be strictly increasing")
    if d.alpha > d.beta:
        return DraftCheck(False, "structure", "alpha must be <= beta")
    if not levels or levels[0] != d.alpha or levels[-1] != d.beta:
        return DraftCheck(
            False, "structure", "alpha and beta must be the extreme levels"
        )
    if d.up[d.alpha] != x_all or d.down[d.beta] != x_all:
        return DraftCheck(
            False, "D1", "up(alpha) and down(beta) must be the whole carrier"
        )
    for r in levels:
        if d.down[r] | d.up[r] != x_all:
            missing = sorted(x_all - (d.down[r] | d.up[r]))
            return DraftCheck(
                False, "D2", f"down({r}) and up({r}) miss {missing}"
            )
    for i, r in enumerate(levels):
        for s in levels[i + 1 :]:
            bad = d.down[r] & d.up[s]
            if bad:
                return DraftCheck(
                    False,
                    "D3",
                    f"down({r}) meets up({s}) at {sorted(bad)}",
                )
    for i, r in enumerate(levels):
        for s in levels[i:]:
            region = point_region(r) if r == s else interval_region(r, s)
            admissible = adc(region)
            for x in sorted(d.up[r] & d.down[s]):
                if d.space.zeta_of(x) not in admissible:
                    return DraftCheck(
                        False,
                        "D4",
                        f"D4 violated at r={r}, s={s}, point {x}",
                    )
    return DraftCheck(True)


def _require_valid(d: Draft) -> None:
    check = validate_draft(d)
    if not check.ok:
        raise PreconditionError(check.message or "invalid draft", condition=check.kind)


def refine_at(d: Draft, lam: Fraction, policy: SeparationPolicy = "left") -> Draft:
    """Insert a new level strictly between two adjacent existing levels.

    The candidate lower set collects points that cannot reach [lam, b],
    the candidate upper set those that cannot reach [a, lam]; separating
    the two and complementing gives the new row, and the result is again a
    draft refining the input.
    """
    _require_valid(d)
    lam = Fraction(lam)
    if lam in d.levels:
        raise PreconditionError(
            f"level {format_rat(lam)} already present", condition="new level"
        )
    if not d.alpha < lam < d.beta:
        raise PreconditionError(
            f"level {format_rat(lam)} outside ({d.alpha}, {d.beta})",
            condition="level inside (alpha, beta)",
        )
    a = max(r for r in d.levels if r < lam)
    b = min(r for r in d.levels if r > lam)
    x_all = d.space.label_set()
    middle = d.up[a] & d.down[b]
    ac_right = _ac_between(d.space, lam, b)
    ac_left = _ac_between(d.space, a, lam)
    cand_a = d.down[a] | (middle - ac_right)
    cand_b = d.up[b] | (middle - ac_left)
    u, v = separate(d.space, cand_a, cand_b, policy)
    new_row = (lam, x_all - v, x_all - u)
    rows = tuple(sorted(d.rows + (new_row,), key=lambda row: row[0]))
    return Draft(d.space, d.alpha, d.beta, rows)


def _ac_between(space: FinASpace, lo: Fraction, hi: Fraction) -> Subset:
    admissible = adc(interval_region(lo, hi) if lo != hi else point_region(lo))
    return frozenset(x for x, z in space.items if z in admissible)


def refine_sequence(
    d: Draft, lams: Sequence[Fraction], policy: SeparationPolicy = "left"
) -> Draft:
    """Fold ``refine_at`` over a finite schedule, skipping known levels."""
    out = d
    for lam in lams:
        if Fraction(lam) in out.levels:
            continue
        out = refine_at(out, lam, policy)
    return out


def _admissible_value(lo: Fraction, hi: Fraction, zeta: int) -> Fraction:
    """Deterministic choice of a rational in [lo, hi] whose denominator
    divides ``zeta``: smallest admissible denominator, then smallest value.

    Candidate denominators are the divisors of ``zeta`` in increasing
    order (every positive natural, in increasing order, when zeta == 0);
    candidate n succeeds iff ceil(n*lo) <= floor(n*hi), and then the value
    is ceil(n*lo)/n.
    """
    if zeta > 0:
        candidates: Iterable[int] = divisors(zeta)
    elif lo == hi:
        candidates = range(1, lo.denominator + 1)
    else:
        candidates = range(1, math.ceil(1 / (hi - lo)) + 1)
    for n in candidates:
        p = math.ceil(n * lo)
        if p <= math.floor(n * hi):
            return Fraction(p, n)
    raise PreconditionError(
        f"no admissible value in [{lo}, {hi}] for denominator {zeta}",
        condition="D4",
    )


def realize(d: Draft) -> RatFunction:
    """Build a function whose sublevel/superlevel sets respect the draft.

    Per point the admissible window is [l, u] with l the largest level
    whose up-set contains the point and u the smallest level whose
    down-set does; D3 makes l <= u and D4 guarantees an admissible value
    inside the window.
    """
    _require_valid(d)
    values: dict[str, Fraction] = {}
    for x, zeta in d.space.items:
        l = max(r for r in d.levels if x in d.up[r])
        u = min(r for r in d.levels if x in d.down[r])
        values[x] = _admissible_value(l, u, zeta)
    return RatFunction.make(d.space, values, d.alpha, d.beta)


def is_realisation(f: RatFunction, d: Draft) -> bool:
    """Does ``f`` send every down-set below and every up-set above its level?"""
    return all(
        all(f.value_of(x) <= r for x in d.down[r])
        and all(f.value_of(x) >= r for x in d.up[r])
        for r in d.levels
    )


def urysohn(
    space: FinASpace,
    a: frozenset[str],
    b: frozenset[str],
    alpha: Fraction,
    beta: Fraction,
) -> RatFunction:
    """A denominator-decreasing function into [alpha, beta] that is
    constantly alpha on A and constantly beta on B.

    Requires A and B disjoint, every point's denominator admissible for
    [alpha, beta], every A-point's for alpha, and every B-point's for
    beta; the failing condition and a witnessing point are reported
    otherwise.
    """
    a, b = space.subset(a), space.subset(b)
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha > beta:
        raise PreconditionError(
            f"alpha={format_rat(alpha)} exceeds beta={format_rat(beta)}",
            condition="alpha <= beta",
        )
    overlap = a & b
    if overlap:
        raise PreconditionError(
            f"A and B intersect at {sorted(overlap)}", condition="A disjoint from B"
        )
    whole = adc(
        interval_region(alpha, beta) if alpha != beta else point_region(alpha)
    )
    for x, z in space.items:
        if z not in whole:
            raise PreconditionError(
                f"X within AC[alpha,beta] fails at point {x}: denominator {z} "
                f"admits no rational in [{format_rat(alpha)}, {format_rat(beta)}]",
                condition="X within AC[alpha,beta]",
            )
    at_alpha = adc(point_region(alpha))
    for x in sorted(a):
        if space.zeta_of(x) not in at_alpha:
            raise PreconditionError(
                f"A within AC(alpha) fails at point {x}: den({format_rat(alpha)})="
                f"{alpha.denominator} does not divide {space.zeta_of(x)}",
                condition="A within AC{alpha}",
            )
    at_beta = adc(point_region(beta))
    for x in sorted(b):
        if space.zeta_of(x) not in at_beta:
            raise PreconditionError(
                f"B within AC(beta) fails at point {x}: den({format_rat(beta)})="
                f"{beta.denominator} does not divide {space.zeta_of(x)}",
                condition="B within AC{beta}",
            )
    if alpha == beta:
        return RatFunction.make(
            space, {x: alpha for x in space.labels}, alpha, beta
        )
    whole_set = space.label_set()
    d = Draft.make(
        space,
        alpha,
        beta,
        down={alpha: a, beta: whole_set},
        up={alpha: whole_set, beta: b},
    )
    return realize(d)


def separating_map(space: FinASpace, x: str, y: str) -> RatFunction:
    """A denominator-decreasing map into [0, 1] with f(x)=0 and f(y)=1."""
    if x == y:
        raise PreconditionError(
            f"points must be distinct, got {x!r} twice", condition="x != y"
        )
    space.zeta_of(x)  # validates membership
    space.zeta_of(y)
    return urysohn(space, frozenset({x}), frozenset({y}), Fraction(0), Fraction(1))


def denominator_witness(space: FinASpace, x: str) -> RatFunction:
    """A map into [0, 1] taking at ``x`` a value of denominator exactly
    zeta(x); only possible when zeta(x) >= 1, since no rational has
    denominator 0."""
    zeta = space.zeta_of(x)
    if zeta == 0:
        raise PreconditionError(
            f"point {x} has denominator 0; a witness value would have to be "
            "irrational, which is not representable here",
            condition="zeta(x) >= 1",
        )
    lam = Fraction(1, zeta)
    return urysohn(space, frozenset(), frozenset({x}), Fraction(0), lam)


def embed(space: FinASpace) -> list[RatFunction]:
    """A finite family of maps into [0, 1] that jointly embeds the carrier.

    Separating maps handle each pair of distinct points, denominator
    witnesses pin each point's denominator exactly, so the induced map
    into the product cube is injective and the image vector of each point
    has denominator equal to zeta there.
    """
    for x, z in space.items:
        if z == 0:
            raise PreconditionError(
                f"point {x} has denominator 0; no finite family of rational "
                "maps pins an unconstrained point",
                condition="zeta >= 1 everywhere",
            )
    labels = space.labels
    out = [
        separating_map(space, x, y)
        for i, x in enumerate(labels)
        for y in labels[i + 1 :]
    ]
    out.extend(denominator_witness(space, x) for x in labels)
    return out
