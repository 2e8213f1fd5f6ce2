"""Curvature of regions in pictures over the relator, in units of pi.

A region with corner degrees `d_1, ..., d_k` has curvature `(2 - k) + sum(2 / d_i)`. A corner can
only have degree 2 when some length-2 closed path through it has a trivial label, so the corner
table of a coefficient theory bounds how curved a region can be.

Two neighbouring corners that are both of degree 2 force their partner corners to be neighbours
as well; when no choice of partners is adjacent the pair cannot occur together.
"""
from __future__ import annotations

import dataclasses
import itertools
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from asphere.star_graph import Degree2Label, build_star_graph, degree2_labels
from asphere.theory import CoefficientTheory, ContradictoryTheoryError
from asphere.words import MixedWord, relator as default_relator


class InvalidShapeError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class RegionShape:
    degrees: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.degrees:
            raise InvalidShapeError("a region needs at least one corner")
        low = [d for d in self.degrees if d < 2]
        if low:
            raise InvalidShapeError(f"corner degrees must be at least 2, got {low[0]}")

    @classmethod
    def of(cls, *degrees: int) -> RegionShape:
        return cls(tuple(degrees))

    @classmethod
    def with_twos(cls, twos: int, size: int = 9) -> RegionShape:
        return cls((2,) * twos + (3,) * (size - twos))

    def __str__(self) -> str:
        return "(" + ", ".join(str(d) for d in self.degrees) + ")"


def region_curvature(shape: RegionShape) -> Fraction:
    k = len(shape.degrees)
    return Fraction(2 - k) + sum((Fraction(2, d) for d in shape.degrees), Fraction(0))


def total_curvature(shapes: Iterable[RegionShape]) -> Fraction:
    return sum((region_curvature(shape) for shape in shapes), Fraction(0))


def format_pi(value: Fraction) -> str:
    if value == 0:
        return "0"
    sign = "-" if value < 0 else ""
    num, den = abs(value.numerator), value.denominator
    head = "π" if num == 1 else f"{num}π"
    return f"{sign}{head}" if den == 1 else f"{sign}{head}/{den}"


@dataclasses.dataclass(frozen=True)
class Corner:
    symbol: str
    edge: str
    labels: Tuple[Degree2Label, ...]
    partners: FrozenSet[str]

    @property
    def name(self) -> str:
        return f"v_{self.symbol}"

    @property
    def capable(self) -> bool:
        return bool(self.partners)


@dataclasses.dataclass(frozen=True)
class CornerTable:
    theory: CoefficientTheory
    corners: Tuple[Corner, ...]

    @property
    def capable(self) -> Tuple[str, ...]:
        return tuple(corner.symbol for corner in self.corners if corner.capable)

    def corner(self, symbol: str) -> Corner:
        for corner in self.corners:
            if corner.symbol == symbol:
                return corner
        raise KeyError(symbol)

    def adjacent(self, x: str, y: str) -> bool:
        ring = [corner.symbol for corner in self.corners]
        i, j = ring.index(x), ring.index(y)
        return x != y and (i - j) % len(ring) in (1, len(ring) - 1)

    def to_json(self) -> List[Dict[str, object]]:
        return [
            {
                "corner": corner.name,
                "edge": corner.edge,
                "labels": [{"label": label.text, "status": str(label.status)} for label in corner.labels],
                "partners": sorted(corner.partners),
            }
            for corner in self.corners
        ]


def corner_table(th: CoefficientTheory, relator: Optional[MixedWord] = None) -> CornerTable:
    if not th.consistent:
        raise ContradictoryTheoryError(f"theory {th} is contradictory: {th.witness}")
    relator = relator if relator is not None else default_relator()
    graph = build_star_graph([relator])
    labels = degree2_labels(relator, th)
    text = {edge.id: edge.text for edge in graph.edges}
    corners = []
    for edge in graph.edges:
        through = tuple(label for label in labels if edge.id in label.edges)
        partners = frozenset(
            text[other]
            for label in through
            if label.admissible
            for other in label.edges
            if other != edge.id or label.edges[0] == label.edges[1]
        )
        corners.append(Corner(edge.text, edge.id, through, partners))
    return CornerTable(th, tuple(corners))


@dataclasses.dataclass(frozen=True)
class CurvatureBound:
    value: Fraction
    shape: RegionShape
    capable: Tuple[str, ...]
    excluded: Tuple[Tuple[str, str], ...]
    chosen: Tuple[str, ...]

    @property
    def text(self) -> str:
        return format_pi(self.value)

    def to_json(self) -> Dict[str, object]:
        return {
            "num": self.value.numerator,
            "den": self.value.denominator,
            "text": self.text,
            "shape": list(self.shape.degrees),
            "capable": [f"v_{symbol}" for symbol in self.capable],
            "excluded": [[f"v_{x}", f"v_{y}"] for x, y in self.excluded],
        }


def excluded_pairs(table: CornerTable) -> List[Tuple[str, str]]:
    """Adjacent capable corners whose partners can never sit next to each other."""
    pairs = []
    for x, y in itertools.combinations(table.capable, 2):
        if not table.adjacent(x, y):
            continue
        compatible = any(
            table.adjacent(p, q) for p in table.corner(x).partners for q in table.corner(y).partners if p != q
        )
        if not compatible:
            pairs.append((x, y))
    return pairs


def curvature_upper_bound(th: CoefficientTheory, relator: Optional[MixedWord] = None) -> CurvatureBound:
    table = corner_table(th, relator)
    capable = table.capable
    excluded = excluded_pairs(table)
    blocked = {frozenset(pair) for pair in excluded}
    chosen: Tuple[str, ...] = ()
    for size in range(len(capable), 0, -1):
        for subset in itertools.combinations(capable, size):
            if not any(frozenset(pair) in blocked for pair in itertools.combinations(subset, 2)):
                chosen = subset
                break
        if chosen:
            break
    shape = RegionShape.with_twos(len(chosen), len(table.corners))
    return CurvatureBound(region_curvature(shape), shape, capable, tuple(excluded), chosen)


@dataclasses.dataclass(frozen=True)
class DistributionStep:
    """A positively curved region paired with a neighbour that absorbs its curvature."""

    citation: str
    region: Fraction
    neighbour: RegionShape
    printed: Fraction

    @property
    def total(self) -> Fraction:
        return self.region + region_curvature(self.neighbour)

    @property
    def closes(self) -> bool:
        return self.total <= 0


_LEMMA5 = "Lemma 5 (a=g, f=i^-1, e=b)"
_LEMMA6 = "Lemma 6 (a=d^-1, c=f, h=e)"
_LEMMA7 = "Lemma 7 (a=d^-1, c=f, e=b)"

DISTRIBUTION_STEPS: Tuple[DistributionStep, ...] = tuple(
    DistributionStep(citation, Fraction(region), RegionShape(degrees), Fraction(printed))
    for citation, region, degrees, printed in (
        (_LEMMA5, "1/6", (2, 2, 2, 3, 3, 3, 3, 3, 4), "0"),
        (_LEMMA6, "1/6", (2, 2, 2, 2, 3, 3, 4, 4, 4), "0"),
        (_LEMMA7, "1/3", (2, 3, 3, 3, 3, 3, 3, 3, 3), "-1/3"),
        (_LEMMA7, "1/6", (2, 2, 2, 3, 3, 3, 3, 3, 4), "0"),
        (_LEMMA7, "1/3", (2, 2, 3, 3, 3, 3, 3, 3, 3), "0"),
        (_LEMMA7, "1/6", (2, 3, 3, 3, 3, 3, 3, 3, 3), "-1/2"),
        (_LEMMA7, "1/6", (2, 2, 3, 3, 3, 3, 3, 3, 4), "-1/3"),
        (_LEMMA7, "1/6", (2, 2, 3, 3, 3, 3, 3, 3, 3), "-1/6"),
    )
)

# Printed with ten corners for a nine-corner region; dropping one 3 matches the printed bound.
LEMMA7_PRINTED_DEGREES: Tuple[int, ...] = (2, 2, 2, 2, 3, 3, 3, 3, 3, 4)


def nine_corner_readings(degrees: Sequence[int] = LEMMA7_PRINTED_DEGREES) -> Dict[Tuple[int, ...], Fraction]:
    """Curvature of every nine-corner shape obtained by dropping one entry."""
    readings: Dict[Tuple[int, ...], Fraction] = {}
    for i in range(len(degrees)):
        kept = tuple(degrees[:i]) + tuple(degrees[i + 1 :])
        readings.setdefault(kept, region_curvature(RegionShape(kept)))
    return readings


if __name__ == "__main__":
    from rich.console import Console

    console = Console()
    for relations in ((), ("a=d^-1",), ("a=d^-1", "c=f^-1")):
        bound = curvature_upper_bound(CoefficientTheory.of(*relations))
        console.print(relations, bound.text, bound.shape, bound.excluded)
