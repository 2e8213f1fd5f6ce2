from __future__ import annotations

import random
from fractions import Fraction
from typing import Tuple

import pytest

from asphere.curvature import (
    DISTRIBUTION_STEPS,
    InvalidShapeError,
    RegionShape,
    corner_table,
    curvature_upper_bound,
    excluded_pairs,
    format_pi,
    nine_corner_readings,
    region_curvature,
    total_curvature,
)
from asphere.theory import CoefficientTheory, ContradictoryTheoryError

LEMMA3_THEORIES = ["a=d^-1", "a=d", "d=g^-1", "d=g", "a=g^-1", "a=g", "h=e", "h=b"]


class TestRegionCurvature:
    printed_values: list[tuple[Tuple[int, ...], Fraction]] = [
        ((3, 3, 3, 3, 3, 3, 3, 3, 3), Fraction(-1)),
        ((2, 2, 3, 3, 3, 3, 3, 3, 3), Fraction(-1, 3)),
        ((2, 2, 2, 3, 3, 3, 3, 3, 3), Fraction(0)),
        ((2, 2, 2, 3, 3, 3, 3, 3, 4), Fraction(-1, 6)),
        ((2, 3, 3, 3, 3, 3, 3, 3, 3), Fraction(-2, 3)),
        ((2, 2, 2, 2, 3, 3, 4, 4, 4), Fraction(-1, 6)),
    ]

    @pytest.mark.parametrize("degrees,expected", printed_values)
    def test_printed_values(self, degrees: Tuple[int, ...], expected: Fraction) -> None:
        assert region_curvature(RegionShape(degrees)) == expected

    @pytest.mark.parametrize("degrees", [(), (1, 3, 3), (3, 0)])
    def test_invalid(self, degrees: Tuple[int, ...]) -> None:
        with pytest.raises(InvalidShapeError):
            RegionShape(degrees)

    def test_permutation_invariant(self) -> None:
        rng = random.Random(3)
        for _ in range(200):
            degrees = [rng.randint(2, 7) for _ in range(rng.randint(1, 10))]
            shuffled = list(degrees)
            rng.shuffle(shuffled)
            assert region_curvature(RegionShape(tuple(degrees))) == region_curvature(RegionShape(tuple(shuffled)))

    def test_lower_degree_is_more_curved(self) -> None:
        rng = random.Random(5)
        for _ in range(200):
            degrees = [rng.randint(2, 7) for _ in range(rng.randint(1, 10))]
            i = rng.randrange(len(degrees))
            if degrees[i] == 2:
                continue
            lowered = degrees[:i] + [degrees[i] - 1] + degrees[i + 1 :]
            assert region_curvature(RegionShape(tuple(lowered))) > region_curvature(RegionShape(tuple(degrees)))

    def test_cube_budget(self) -> None:
        assert total_curvature([RegionShape.of(3, 3, 3, 3)] * 6) == 4

    def test_with_twos(self) -> None:
        assert RegionShape.with_twos(3).degrees == (2, 2, 2, 3, 3, 3, 3, 3, 3)

    @pytest.mark.parametrize(
        "value,text",
        [
            (Fraction(-1), "-π"),
            (Fraction(-1, 3), "-π/3"),
            (Fraction(0), "0"),
            (Fraction(-2, 3), "-2π/3"),
            (Fraction(2, 3), "2π/3"),
            (Fraction(4), "4π"),
        ],
    )
    def test_format_pi(self, value: Fraction, text: str) -> None:
        assert format_pi(value) == text


class TestCornerTable:
    @pytest.mark.parametrize(
        "relations,capable",
        [
            (("a=d^-1",), {"a", "d"}),
            ((), set()),
            (("a=d^-1", "a=g^-1", "d=g"), {"a", "d", "g"}),
            (("h=b",), {"h", "b"}),
        ],
    )
    def test_capable_corners(self, relations: Tuple[str, ...], capable: set) -> None:
        assert set(corner_table(CoefficientTheory.of(*relations)).capable) == capable

    def test_partners(self) -> None:
        table = corner_table(CoefficientTheory.of("a=d^-1"))
        assert table.corner("a").partners == {"d"}
        assert table.corner("d").partners == {"a"}
        assert table.corner("a").name == "v_a"

    def test_ring(self) -> None:
        table = corner_table(CoefficientTheory())
        assert [corner.symbol for corner in table.corners] == list("bcdefghia")
        assert table.adjacent("a", "b")
        assert table.adjacent("c", "d")
        assert not table.adjacent("a", "c")

    @pytest.mark.parametrize(
        "relations,excluded",
        [
            (("a=d^-1", "c=f^-1"), [("c", "d")]),
            (("a=d^-1", "c=i^-1"), []),
        ],
    )
    def test_excluded_pairs_need_adjacent_partners(self, relations: Tuple[str, ...], excluded: list) -> None:
        assert excluded_pairs(corner_table(CoefficientTheory.of(*relations))) == excluded

    def test_contradictory(self) -> None:
        with pytest.raises(ContradictoryTheoryError):
            corner_table(CoefficientTheory.of("a=d^-1", "a=d"))

    def test_json(self) -> None:
        data = corner_table(CoefficientTheory.of("a=d^-1")).to_json()
        assert [entry["corner"] for entry in data] == [f"v_{symbol}" for symbol in "bcdefghia"]
        assert data[-1]["partners"] == ["d"]


class TestCurvatureUpperBound:
    @pytest.mark.parametrize("relation", LEMMA3_THEORIES)
    def test_single_relation(self, relation: str) -> None:
        bound = curvature_upper_bound(CoefficientTheory.of(relation))
        assert len(bound.capable) == 2
        assert bound.value == Fraction(-1, 3)
        assert bound.shape.degrees == (2, 2, 3, 3, 3, 3, 3, 3, 3)

    def test_two_families(self) -> None:
        bound = curvature_upper_bound(CoefficientTheory.of("a=d^-1", "c=f^-1"))
        assert bound.value == 0
        assert bound.shape.degrees == (2, 2, 2, 3, 3, 3, 3, 3, 3)
        assert ("c", "d") in bound.excluded
        assert len(bound.chosen) == 3

    def test_empty(self) -> None:
        bound = curvature_upper_bound(CoefficientTheory())
        assert bound.value == -1
        assert bound.text == "-π"
        assert bound.capable == ()

    def test_open_case(self) -> None:
        bound = curvature_upper_bound(CoefficientTheory.of("d=g", "f=i", "h=e"))
        assert len(bound.capable) == 6
        assert bound.excluded == (("f", "g"),)
        assert bound.value == Fraction(2, 3)

    def test_json(self) -> None:
        data = curvature_upper_bound(CoefficientTheory.of("a=d^-1", "c=f^-1")).to_json()
        assert (data["num"], data["den"], data["text"]) == (0, 1, "0")
        assert ["v_c", "v_d"] in data["excluded"]


class TestDistributionSteps:
    @pytest.mark.parametrize("step", DISTRIBUTION_STEPS, ids=lambda step: step.citation)
    def test_printed_totals(self, step) -> None:
        assert step.total == step.printed
        assert step.closes

    def test_region_values_are_positive(self) -> None:
        assert all(step.region > 0 for step in DISTRIBUTION_STEPS)

    def test_ten_corner_reading(self) -> None:
        readings = nine_corner_readings()
        assert readings == {
            (2, 2, 2, 3, 3, 3, 3, 3, 4): Fraction(-1, 6),
            (2, 2, 2, 2, 3, 3, 3, 3, 4): Fraction(1, 6),
            (2, 2, 2, 2, 3, 3, 3, 3, 3): Fraction(1, 3),
        }
