from __future__ import annotations

import pytest

from asphere.cases import (
    S_LABELS,
    S_TEXT,
    WEIGHT_PATTERNS,
    CaseSpec,
    InconsistentCaseError,
    UnknownLabelError,
    Verdict,
    _table,
    canonicalize,
    classify,
    closed_cases,
    enumerate_cases,
    largest_consistent_subset,
    remark_checks,
    symmetry_action,
    symmetry_preserves_relator,
    theorem_exceptions,
    unpaired_exceptions,
)
from asphere.curvature import curvature_upper_bound
from asphere.theory import CoefficientTheory
from asphere.weight_test import check_weight_test
from asphere.words import parse_coefficients


def _label(text: str):
    return parse_coefficients(text)


class TestSymmetry:
    action_values = [
        ("ad", "ci"),
        ("he^-1", "he^-1"),
        ("hb^-1", "eb^-1"),
        ("ag", "cf"),
        ("dg^-1", "fi^-1"),
    ]

    @pytest.mark.parametrize("label,image", action_values)
    def test_action(self, label: str, image: str) -> None:
        assert symmetry_action(_label(label)) == _label(image)

    def test_involution(self) -> None:
        for label in S_LABELS:
            assert symmetry_action(symmetry_action(label)) == label

    def test_unknown_label(self) -> None:
        with pytest.raises(UnknownLabelError):
            symmetry_action(_label("ab"))

    def test_relator_is_preserved(self) -> None:
        assert symmetry_preserves_relator()


class TestCanonicalize:
    canonical_values = [
        (("ci",), ("ad",)),
        (("he^-1",), ("he^-1",)),
        (("cf", "fi"), ("ag", "dg")),
    ]

    @pytest.mark.parametrize("labels,expected", canonical_values)
    def test_canonicalize(self, labels, expected) -> None:
        assert canonicalize(CaseSpec.of(*labels)) == CaseSpec.of(*expected)

    def test_idempotent_and_constant_on_orbits(self) -> None:
        for case in closed_cases():
            canonical = canonicalize(case)
            assert canonicalize(canonical) == canonical
            assert canonicalize(case.image()) == canonical


class TestEnumerateCases:
    def test_no_labels(self) -> None:
        assert enumerate_cases(0) == [CaseSpec(())]

    def test_one_label(self) -> None:
        cases = enumerate_cases(1)
        assert sorted(label for case in cases for label in case.labels) == sorted(
            ["ad", "ad^-1", "ag", "ag^-1", "dg", "dg^-1", "he^-1", "hb^-1"]
        )

    def test_pairs_in_one_family_saturate(self) -> None:
        family = set(range(6))
        for case in enumerate_cases(2):
            assert len(family & set(case.admitted)) <= 1

    def test_saturated_and_consistent(self) -> None:
        for case in enumerate_cases(3):
            assert case.consistent
            assert case.saturated

    def test_range(self) -> None:
        with pytest.raises(ValueError):
            enumerate_cases(16)

    def test_bound_is_symmetric(self) -> None:
        for case in closed_cases():
            if case.n > 3:
                continue
            assert curvature_upper_bound(case.theory).value == curvature_upper_bound(case.image().theory).value


class TestClassify:
    def test_weight_test_case(self) -> None:
        report = classify(CaseSpec.of("ad", "ag", "dg^-1"))
        assert report.verdict is Verdict.ASPHERICAL_WEIGHT_TEST
        assert report.citation == "Lemma 1(1)"
        assert report.weights is not None
        assert report.weight_report is not None and report.weight_report.passed

    def test_curvature_case(self) -> None:
        report = classify(CaseSpec.of("ad"))
        assert report.verdict is Verdict.ASPHERICAL_CURVATURE
        assert report.bound.text == "-π/3"
        assert report.citation == "Lemma 3(1)"

    def test_empty_case(self) -> None:
        report = classify(CaseSpec(()))
        assert report.verdict is Verdict.ASPHERICAL_CURVATURE
        assert report.bound.value == -1

    def test_exceptional_case(self) -> None:
        report = classify(CaseSpec.of("dg^-1", "fi^-1", "he^-1"))
        assert report.verdict is Verdict.EXCEPTIONAL
        assert report.citation == "Theorem(1)"
        assert not report.aspherical

    def test_inconsistent(self) -> None:
        with pytest.raises(InconsistentCaseError):
            classify(CaseSpec.of("ad", "ad^-1"))

    def test_json(self) -> None:
        data = classify(CaseSpec.of("ad")).to_json()
        assert data["admitted"] == ["ad"]
        assert data["relations"] == "a=d^-1"
        assert data["N"] == 1
        assert data["bound_value"] == {"num": -1, "den": 3}


class TestTables:
    def test_exception_count(self) -> None:
        patterns = theorem_exceptions()
        assert len(patterns) == 55
        assert len([p for p in patterns if p.hypothesis.item == 3]) == 3

    def test_first_exception(self) -> None:
        first = theorem_exceptions()[0]
        assert [str(relation) for relation in first.relations] == ["d=g", "f=i", "h=e"]

    def test_exceptions_are_consistent_and_open(self) -> None:
        for pattern in theorem_exceptions():
            th = pattern.theory()
            assert th.consistent, pattern.citation
            report = classify(CaseSpec.from_theory(th))
            assert not report.aspherical, pattern.citation

    def test_unpaired_exceptions_are_listed_and_not_self_mirrored(self) -> None:
        listed = theorem_exceptions()
        for pattern in unpaired_exceptions():
            assert pattern in listed
            case = CaseSpec.from_theory(pattern.theory())
            assert case.image() != case

    def test_weight_lemmas_are_not_exceptions(self) -> None:
        weight_keys = set(_table("1")) | set(_table("2"))
        assert not weight_keys & set(_table("theorem"))


class TestWeightPatterns:
    @pytest.mark.parametrize("pattern", WEIGHT_PATTERNS, ids=lambda pattern: pattern.name)
    def test_substitution_and_weights(self, pattern) -> None:
        th = CoefficientTheory(pattern.core)
        assert pattern.applies(th)
        assert pattern.reduces_to_relator(th)
        assert check_weight_test(pattern.graph(), pattern.weights(), th).passed


class TestRemarks:
    def test_all_hold(self) -> None:
        checks = remark_checks()
        assert [check.item for check in checks] == list(range(4, 21))
        failed = [check for check in checks if not check.holds]
        assert not failed, failed

    @pytest.mark.parametrize("family", ["adg", "cfi"])
    def test_at_most_three(self, family: str) -> None:
        x, y, z = family
        relations = [f"{x}={y}^-1", f"{x}={y}", f"{x}={z}^-1", f"{x}={z}", f"{y}={z}^-1", f"{y}={z}"]
        assert largest_consistent_subset(relations) == 3

    def test_label_text(self) -> None:
        assert S_TEXT[0] == "ad"
        assert len(S_TEXT) == 15
