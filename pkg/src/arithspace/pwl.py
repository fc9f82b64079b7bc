"""Continuous piecewise-affine functions on [0, 1] with integer coefficients.

Each piece is a line z1*x + z2 with integer z1, z2; pieces meet
continuously at rational breakpoints, and crossings of integer lines are
always rational, so the class is closed under +, -, max and min with
exact arithmetic throughout.  At a rational point p/q the values such
functions can take form the subgroup (1/q)Z: an integer combination
z1*(p/q) + z2 has denominator dividing q, and the extended Euclidean
algorithm provides z1, z2 with z1*p + z2*q = 1, hence a value 1/q.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .aspace import FinASpace
from .divlat import divides, group_index
from .errors import MalformedInputError, PreconditionError
from .lgroup import FnGroup
from .rationals import format_rat, parse_rat

Piece = tuple[int, int]  # (z1, z2) meaning x -> z1*x + z2

COMBINE_OPS = ("+", "-", "∨", "∧")
_OP_ALIASES = {
    "+": "+", "add": "+",
    "-": "-", "sub": "-",
    "∨": "∨", "max": "∨", "or": "∨",
    "∧": "∧", "min": "∧", "and": "∧",
}


def _piece_value(piece: Piece, x: Fraction) -> Fraction:
    z1, z2 = piece
    return z1 * x + z2


@dataclass(frozen=True)
class IntPwl:
    """Canonical form: breakpoints strictly increasing from 0 to 1, one
    integer-coefficient piece per consecutive pair (left-closed), and no
    two adjacent pieces equal."""

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Piece, ...]

    @classmethod
    def make(
        cls, breakpoints: Sequence[Fraction], pieces: Sequence[Piece]
    ) -> "IntPwl":
        bps = [Fraction(b) for b in breakpoints]
        if len(bps) < 2 or bps[0] != 0 or bps[-1] != 1:
            raise MalformedInputError("breakpoints must run from 0 to 1")
        if any(b >= c for b, c in zip(bps, bps[1:])):
            raise MalformedInputError("breakpoints must be strictly increasing")
        if len(pieces) != len(bps) - 1:
            raise MalformedInputError("need exactly one piece per interval")
        ps: list[Piece] = []
        for z1, z2 in pieces:
            if isinstance(z1, bool) or isinstance(z2, bool):
                raise MalformedInputError("coefficients must be integers")
            if not isinstance(z1, int) or not isinstance(z2, int):
                raise MalformedInputError("coefficients must be integers")
            ps.append((z1, z2))
        for i in range(len(ps) - 1):
            at = bps[i + 1]
            if _piece_value(ps[i], at) != _piece_value(ps[i + 1], at):
                raise MalformedInputError(
                    f"pieces {i} and {i + 1} disagree at {format_rat(at)}"
                )
        # Canonicalize: merge runs of identical pieces.
        out_bps = [bps[0]]
        out_ps: list[Piece] = []
        for i, p in enumerate(ps):
            if out_ps and out_ps[-1] == p:
                out_bps[-1] = bps[i + 1]
                continue
            out_ps.append(p)
            out_bps.append(bps[i + 1])
        return cls(tuple(out_bps), tuple(out_ps))

    @classmethod
    def from_line(cls, z1: int, z2: int) -> "IntPwl":
        return cls.make((Fraction(0), Fraction(1)), ((z1, z2),))

    @classmethod
    def constant(cls, c: int) -> "IntPwl":
        return cls.from_line(0, c)

    def to_json_dict(self) -> dict:
        return {
            "breakpoints": [format_rat(b) for b in self.breakpoints],
            "pieces": [{"z1": z1, "z2": z2} for z1, z2 in self.pieces],
        }

    @classmethod
    def from_json(cls, doc: object) -> "IntPwl":
        if not isinstance(doc, dict) or set(doc) != {"breakpoints", "pieces"}:
            raise MalformedInputError(
                'function must be {"breakpoints": […], "pieces": […]}'
            )
        if not isinstance(doc["breakpoints"], list) or not isinstance(
            doc["pieces"], list
        ):
            raise MalformedInputError("breakpoints and pieces must be lists")
        bps = [parse_rat(b) for b in doc["breakpoints"]]
        pieces = []
        for p in doc["pieces"]:
            if not isinstance(p, dict) or set(p) != {"z1", "z2"}:
                raise MalformedInputError(f"bad piece: {p!r}")
            pieces.append((p["z1"], p["z2"]))
        return cls.make(bps, pieces)


def pwl_eval(f: IntPwl, x: Fraction) -> Fraction:
    """Value at a rational point of [0, 1]."""
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise PreconditionError(
            f"{format_rat(x)} outside [0, 1]", condition="0 <= x <= 1"
        )
    i = min(bisect_right(f.breakpoints, x) - 1, len(f.pieces) - 1)
    return _piece_value(f.pieces[i], x)


def _aligned(f: IntPwl, g: IntPwl) -> tuple[list[Fraction], list[Piece], list[Piece]]:
    """Both piece lists re-cut onto the merged breakpoint grid."""
    grid = sorted(set(f.breakpoints) | set(g.breakpoints))

    def cut(h: IntPwl) -> list[Piece]:
        out = []
        for lo in grid[:-1]:
            i = min(bisect_right(h.breakpoints, lo) - 1, len(h.pieces) - 1)
            out.append(h.pieces[i])
        return out

    return grid, cut(f), cut(g)


def pwl_combine(f: IntPwl, g: IntPwl, op: str) -> IntPwl:
    """Exact +, -, max or min of two functions.

    For the lattice operations new breakpoints appear where pieces cross;
    the crossing of integer lines z1*x+z2 and w1*x+w2 is the rational
    (w2-z2)/(z1-w1), so the result stays in the class.
    """
    op = _OP_ALIASES.get(op)
    if op is None:
        raise MalformedInputError(f"unknown operation; use one of {COMBINE_OPS}")
    grid, fp, gp = _aligned(f, g)
    if op in ("+", "-"):
        sign = 1 if op == "+" else -1
        pieces = [
            (z1 + sign * w1, z2 + sign * w2) for (z1, z2), (w1, w2) in zip(fp, gp)
        ]
        return IntPwl.make(grid, pieces)
    use_max = op == "∨"
    out_bps: list[Fraction] = [grid[0]]
    out_ps: list[Piece] = []

    def emit(hi: Fraction, piece: Piece) -> None:
        out_ps.append(piece)
        out_bps.append(hi)

    for (lo, hi), (z1, z2), (w1, w2) in zip(zip(grid, grid[1:]), fp, gp):
        cells = [(lo, hi)]
        if z1 != w1:
            crossing = Fraction(w2 - z2, z1 - w1)
            if lo < crossing < hi:
                cells = [(lo, crossing), (crossing, hi)]
        for a, b in cells:
            mid = (a + b) / 2
            va, vb = _piece_value((z1, z2), mid), _piece_value((w1, w2), mid)
            better = (z1, z2) if (va >= vb) == use_max else (w1, w2)
            emit(b, better)
    return IntPwl.make(out_bps, out_ps)


def pwl_norm(f: IntPwl) -> Fraction:
    """Sup norm; affine pieces peak at interval ends, so breakpoints suffice."""
    return max(abs(pwl_eval(f, b)) for b in f.breakpoints)


def pwl_value_group(fs: Sequence[IntPwl], x: Fraction) -> int:
    """Denominator d with value group (1/d)Z at the rational point x.

    An empty list stands for the whole class, whose value group at p/q is
    (1/q)Z by the extended Euclidean argument; a nonempty list restricts
    to the subgroup generated by the listed functions' values and 1.
    """
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise PreconditionError(
            f"{format_rat(x)} outside [0, 1]", condition="0 <= x <= 1"
        )
    if not fs:
        return x.denominator
    return group_index([pwl_eval(f, x) for f in fs])


def pwl_is_amap(f: IntPwl, samples: Iterable[Fraction]) -> bool:
    """Check den f(x) divides den x at each sample; integer coefficients
    make this automatic, so a failure means a corrupted function value."""
    return all(
        divides(pwl_eval(f, Fraction(x)).denominator, Fraction(x).denominator)
        for x in samples
    )


def pwl_sample(fs: Sequence[IntPwl], points: Sequence[Fraction]) -> FnGroup:
    """Restrict functions to finitely many rational points of [0, 1].

    The resulting carrier takes each point's own denominator, and the
    restrictions become generators of a function group on it.
    """
    pts = [Fraction(p) for p in points]
    if len(set(pts)) != len(pts):
        raise PreconditionError("sample points must be distinct", condition="distinct points")
    for p in pts:
        if not 0 <= p <= 1:
            raise PreconditionError(
                f"{format_rat(p)} outside [0, 1]", condition="0 <= x <= 1"
            )
    space = FinASpace.make({format_rat(p): p.denominator for p in pts})
    generators = [
        {format_rat(p): pwl_eval(f, p) for p in pts} for f in fs
    ]
    return FnGroup.make(space, generators)
