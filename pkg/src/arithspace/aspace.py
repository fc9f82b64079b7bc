"""Finite discrete carriers with a denominator attached to each point.

A finite discrete carrier is a set of labelled points together with a
natural number (the denominator, 0 meaning unconstrained) at each point.
Maps between carriers must carry each point's denominator to one of its
divisors.  On finite discrete carriers every subset is clopen, so the
topological separation axioms hold for free and the arithmetic one is
witnessed constructively.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Mapping

from .divlat import _nat, divides, lcm_div
from .errors import MalformedInputError, PreconditionError

SeparationPolicy = Literal["left", "right"]


@dataclass(frozen=True)
class FinASpace:
    """Finite carrier: label-sorted pairs (label, denominator)."""

    items: tuple[tuple[str, int], ...]

    @classmethod
    def make(cls, zeta: Mapping[str, int]) -> "FinASpace":
        pairs = []
        for label, z in zeta.items():
            if not isinstance(label, str) or not label:
                raise MalformedInputError(f"bad point label: {label!r}")
            pairs.append((label, _nat(z)))
        return cls(tuple(sorted(pairs)))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.items)

    def label_set(self) -> frozenset[str]:
        return frozenset(self.labels)

    def zeta_of(self, label: str) -> int:
        for cand, z in self.items:
            if cand == label:
                return z
        raise MalformedInputError(f"unknown point: {label!r}")

    def subset(self, labels: Iterable[str]) -> frozenset[str]:
        """Validate and freeze a subset given as an iterable of labels."""
        out = frozenset(labels)
        unknown = out - self.label_set()
        if unknown:
            raise MalformedInputError(f"labels not in carrier: {sorted(unknown)}")
        return out

    def to_json_dict(self) -> dict:
        return {"points": {label: z for label, z in self.items}}

    @classmethod
    def from_json(cls, doc: object) -> "FinASpace":
        if not isinstance(doc, dict) or set(doc) != {"points"}:
            raise MalformedInputError('carrier must be {"points": {...}}')
        pts = doc["points"]
        if not isinstance(pts, dict):
            raise MalformedInputError("points must be a label-to-natural map")
        return cls.make(pts)


def subset_to_json(subset: frozenset[str]) -> list[str]:
    return sorted(subset)


@dataclass(frozen=True)
class AMapFin:
    """A map between finite carriers, given pointwise."""

    source: FinASpace
    target: FinASpace
    assignment: tuple[tuple[str, str], ...]

    @classmethod
    def make(
        cls, source: FinASpace, target: FinASpace, assignment: Mapping[str, str]
    ) -> "AMapFin":
        missing = source.label_set() - set(assignment)
        if missing:
            raise MalformedInputError(
                f"assignment not total; missing {sorted(missing)}"
            )
        extra = set(assignment) - source.label_set()
        if extra:
            raise MalformedInputError(f"assignment of unknown points {sorted(extra)}")
        bad = [y for y in assignment.values() if y not in target.label_set()]
        if bad:
            raise MalformedInputError(f"assignment into unknown points {sorted(bad)}")
        return cls(source, target, tuple(sorted(assignment.items())))

    def apply(self, label: str) -> str:
        for x, y in self.assignment:
            if x == label:
                return y
        raise MalformedInputError(f"unknown point: {label!r}")

    def to_json_dict(self) -> dict:
        return {
            "source": self.source.to_json_dict(),
            "target": self.target.to_json_dict(),
            "assignment": {x: y for x, y in self.assignment},
        }

    @classmethod
    def from_json(cls, doc: object) -> "AMapFin":
        if not isinstance(doc, dict) or set(doc) != {"source", "target", "assignment"}:
            raise MalformedInputError(
                'map must be {"source":…, "target":…, "assignment":…}'
            )
        if not isinstance(doc["assignment"], dict):
            raise MalformedInputError("assignment must be a label-to-label map")
        return cls.make(
            FinASpace.from_json(doc["source"]),
            FinASpace.from_json(doc["target"]),
            doc["assignment"],
        )


def check_amap(f: AMapFin) -> bool:
    """True iff the map decreases denominators at every point.

    Continuity is vacuous on finite discrete carriers, so this is the
    whole morphism condition.
    """
    return all(
        divides(f.target.zeta_of(y), f.source.zeta_of(x)) for x, y in f.assignment
    )


def amap_violations(f: AMapFin) -> list[dict]:
    """Points where the denominator-decreasing law fails, with their data."""
    out = []
    for x, y in f.assignment:
        zs, zt = f.source.zeta_of(x), f.target.zeta_of(y)
        if not divides(zt, zs):
            out.append({"point": x, "image": y, "source_zeta": zs, "target_zeta": zt})
    return out


def compose(g: AMapFin, f: AMapFin) -> AMapFin:
    """The composite g . f (apply f first)."""
    if f.target != g.source:
        raise MalformedInputError("composition mismatch: target of f != source of g")
    return AMapFin.make(
        f.source, g.target, {x: g.apply(y) for x, y in f.assignment}
    )


def identity_amap(space: FinASpace) -> AMapFin:
    return AMapFin.make(space, space, {x: x for x in space.labels})


def _pair_label(a: str, b: str) -> str:
    return f"({a},{b})"


def product(left: FinASpace, right: FinASpace) -> FinASpace:
    """Cartesian product carrier; each pair's denominator is the lcm of the
    factors' denominators, so both projections decrease denominators."""
    zeta = {
        _pair_label(a, b): lcm_div([za, zb])
        for a, za in left.items
        for b, zb in right.items
    }
    return FinASpace.make(zeta)


def product_projections(
    left: FinASpace, right: FinASpace
) -> tuple[FinASpace, AMapFin, AMapFin]:
    """The product carrier together with its two projections."""
    prod = product(left, right)
    first = {_pair_label(a, b): a for a, _ in left.items for b, _ in right.items}
    second = {_pair_label(a, b): b for a, _ in left.items for b, _ in right.items}
    return prod, AMapFin.make(prod, left, first), AMapFin.make(prod, right, second)


def pair_into_product(
    f: AMapFin, g: AMapFin
) -> AMapFin:
    """The induced map z -> (f(z), g(z)) into the product of the targets."""
    if f.source != g.source:
        raise MalformedInputError("pairing requires a common source")
    prod = product(f.target, g.target)
    return AMapFin.make(
        f.source, prod, {x: _pair_label(f.apply(x), g.apply(x)) for x in f.source.labels}
    )


@dataclass(frozen=True)
class AnormalReport:
    """Witness data showing a finite discrete carrier is arithmetically normal.

    Compactness and closedness of denominator-divisor preimages are
    automatic on a finite discrete carrier; for each pair of distinct
    points the singleton and its complement are disjoint opens covering
    everything, so the leftover-denominator condition holds vacuously.
    """

    space: FinASpace
    pair_witnesses: tuple[tuple[str, str, tuple[str, ...], tuple[str, ...]], ...]

    @property
    def ok(self) -> bool:
        return True

    def to_json_dict(self) -> dict:
        return {
            "ok": True,
            "compact_hausdorff": "finite discrete carrier",
            "divisor_preimages_closed": "every subset of a finite discrete carrier is closed",
            "pair_witnesses": [
                {"x": x, "y": y, "u": list(u), "v": list(v)}
                for x, y, u, v in self.pair_witnesses
            ],
        }


def verify_anormal(space: FinASpace) -> AnormalReport:
    """Produce separation witnesses for every pair of distinct points."""
    labels = space.labels
    witnesses = []
    for x in labels:
        for y in labels:
            if x >= y:
                continue
            u = (x,)
            v = tuple(l for l in labels if l != x)
            witnesses.append((x, y, u, v))
    return AnormalReport(space, tuple(witnesses))


def separate(
    space: FinASpace,
    a: frozenset[str],
    b: frozenset[str],
    policy: SeparationPolicy = "left",
) -> tuple[frozenset[str], frozenset[str]]:
    """Disjoint opens U >= A and V >= B whose complement has denominator 0.

    Leftover points with nonzero denominator join U under the default
    ("left") policy and V under "right"; points with denominator 0 join
    neither.  Any assignment respecting the three output conditions would
    do, so the policy exists purely for reproducibility.
    """
    a, b = space.subset(a), space.subset(b)
    overlap = a & b
    if overlap:
        raise PreconditionError(
            f"A and B intersect at {sorted(overlap)}", condition="A disjoint from B"
        )
    if policy not in ("left", "right"):
        raise MalformedInputError(f"unknown policy: {policy!r}")
    u, v = set(a), set(b)
    for x, z in space.items:
        if x in a or x in b or z == 0:
            continue
        (u if policy == "left" else v).add(x)
    return frozenset(u), frozenset(v)
