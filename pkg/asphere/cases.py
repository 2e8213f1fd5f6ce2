"""Relation cases for s(t) and their classification.

A case is a set of degree-2 labels that are trivial. Cases are considered up to the coefficient
involution that, together with `t <-> t^-1`, carries the relator to a cyclic form of itself.
The classifier tries, in order:

1. A weight-test pattern: the case contains the core relations of a substitution whose star
   graph carries a known weight function.
2. A curvature bound of at most `-pi/3` from the corner table.
3. A curvature lemma from the hypothesis tables.
4. The list of open exceptional cases.

Whatever is left still needs a curvature distribution argument.
"""
from __future__ import annotations

import dataclasses
import enum
import functools
import itertools
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from asphere.curvature import CurvatureBound, curvature_upper_bound
from asphere.hypotheses import CURVATURE_LEMMAS, Pattern, compact, load_hypotheses
from asphere.star_graph import StarGraph, build_star_graph
from asphere.theory import CoefficientTheory, ContradictoryTheoryError, Relation, WordClass, entails, normalize_word
from asphere.weight_test import WeightFunction, WeightReport, check_weight_test
from asphere.words import (
    CoeffSymbol,
    CoeffWord,
    MixedWord,
    StableLetter,
    cyclic_key,
    cyclically_equal,
    eliminate_variable,
    parse_coefficients,
    parse_relator,
    relator,
)

S_TEXT: Tuple[str, ...] = (
    "ad",
    "ad^-1",
    "ag",
    "ag^-1",
    "dg",
    "dg^-1",
    "cf",
    "cf^-1",
    "ci",
    "ci^-1",
    "fi",
    "fi^-1",
    "he^-1",
    "hb^-1",
    "eb^-1",
)
S_LABELS: Tuple[CoeffWord, ...] = tuple(parse_coefficients(text) for text in S_TEXT)

SYMMETRY: Dict[str, CoeffSymbol] = {
    "a": CoeffSymbol("c", -1),
    "b": CoeffSymbol("b", -1),
    "c": CoeffSymbol("a", -1),
    "d": CoeffSymbol("i", -1),
    "e": CoeffSymbol("h", -1),
    "f": CoeffSymbol("g", -1),
    "g": CoeffSymbol("f", -1),
    "h": CoeffSymbol("e", -1),
    "i": CoeffSymbol("d", -1),
}

CURVATURE_CUTOFF = Fraction(-1, 3)

_S_INDEX = {cyclic_key(label): index for index, label in enumerate(S_LABELS)}


class UnknownLabelError(ValueError):
    pass


class InconsistentCaseError(ValueError):
    pass


def label_index(label: CoeffWord) -> int:
    try:
        return _S_INDEX[cyclic_key(label)]
    except KeyError:
        raise UnknownLabelError(f"{compact(label)} is not a degree-2 label of s(t)") from None


def apply_symmetry(word: Sequence[CoeffSymbol]) -> CoeffWord:
    image = []
    for symbol in word:
        target = SYMMETRY.get(symbol.name)
        if target is None:
            raise UnknownLabelError(f"no image for coefficient {symbol.name!r}")
        image.append(target if symbol.sign == 1 else target.inverse())
    return tuple(image)


def symmetry_action(label: CoeffWord) -> CoeffWord:
    return S_LABELS[label_index(apply_symmetry(S_LABELS[label_index(label)]))]


@functools.lru_cache(maxsize=None)
def _sigma_indices() -> Tuple[int, ...]:
    return tuple(label_index(apply_symmetry(label)) for label in S_LABELS)


def mirrored_relator(w: Optional[MixedWord] = None) -> MixedWord:
    """The relator with the involution applied to coefficients and `t` swapped with `t^-1`."""
    w = w if w is not None else relator()
    letters = []
    for letter in w.letters:
        if isinstance(letter, StableLetter):
            letters.append(letter.inverse())
        else:
            letters.extend(apply_symmetry((letter,)))
    return MixedWord(tuple(letters), cyclic=True)


def symmetry_preserves_relator() -> bool:
    return cyclically_equal(mirrored_relator(), relator())


def theory_of(indices: Iterable[int]) -> CoefficientTheory:
    return CoefficientTheory(tuple(Relation.from_label(S_LABELS[i]) for i in sorted(set(indices))))


def trivial_labels(th: CoefficientTheory) -> Tuple[int, ...]:
    return tuple(
        i for i, label in enumerate(S_LABELS) if normalize_word(th, label, cyclic=True).kind is WordClass.TRIVIAL
    )


def saturate(indices: Iterable[int]) -> Optional[Tuple[int, ...]]:
    """Every label made trivial by the given ones, or None when they contradict each other."""
    th = theory_of(indices)
    if not th.consistent:
        return None
    return trivial_labels(th)


@dataclasses.dataclass(frozen=True)
class CaseSpec:
    admitted: Tuple[int, ...]

    @classmethod
    def of(cls, *labels: str) -> CaseSpec:
        return cls(tuple(sorted({label_index(parse_coefficients(text)) for text in labels})))

    @classmethod
    def from_theory(cls, th: CoefficientTheory) -> CaseSpec:
        if not th.consistent:
            raise InconsistentCaseError(f"theory {th} is contradictory: {th.witness}")
        return cls(trivial_labels(th))

    @property
    def n(self) -> int:
        return len(self.admitted)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(S_TEXT[i] for i in self.admitted)

    @functools.cached_property
    def theory(self) -> CoefficientTheory:
        return theory_of(self.admitted)

    @property
    def consistent(self) -> bool:
        return self.theory.consistent

    @property
    def saturated(self) -> bool:
        return saturate(self.admitted) == self.admitted

    def closure(self) -> CaseSpec:
        return self if self.saturated else CaseSpec.from_theory(self.theory)

    def image(self) -> CaseSpec:
        sigma = _sigma_indices()
        return CaseSpec(tuple(sorted(sigma[i] for i in self.admitted)))

    def relations_text(self) -> str:
        return ", ".join(str(Relation.from_label(S_LABELS[i])) for i in self.admitted)

    def __str__(self) -> str:
        return "{" + ", ".join(self.labels) + "}"


def canonicalize(case: CaseSpec) -> CaseSpec:
    return min(case, case.image(), key=lambda c: c.admitted)


@functools.lru_cache(maxsize=None)
def closed_cases() -> Tuple[CaseSpec, ...]:
    """Every consistent label set that is closed under entailment."""
    found = []
    for size in range(len(S_LABELS) + 1):
        for subset in itertools.combinations(range(len(S_LABELS)), size):
            if saturate(subset) == subset:
                found.append(CaseSpec(subset))
    return tuple(found)


def enumerate_cases(n: int) -> List[CaseSpec]:
    if not 0 <= n <= len(S_LABELS):
        raise ValueError(f"N must be between 0 and {len(S_LABELS)}, got {n}")
    return [case for case in closed_cases() if case.n == n and canonicalize(case) == case]


@functools.lru_cache(maxsize=None)
def pattern_key(pattern: Pattern) -> Optional[Tuple[int, ...]]:
    th = pattern.theory()
    if not th.consistent:
        return None
    return canonicalize(CaseSpec.from_theory(th)).admitted


def theorem_exceptions() -> List[Pattern]:
    return [pattern for hypothesis in load_hypotheses().theorem for pattern in hypothesis.expand()]


@functools.lru_cache(maxsize=None)
def _table(kind: str) -> Dict[Tuple[int, ...], Tuple[str, ...]]:
    tables = load_hypotheses()
    if kind == "theorem":
        patterns = theorem_exceptions()
    elif kind == "curvature":
        patterns = tables.patterns(CURVATURE_LEMMAS)
    else:
        patterns = tables.patterns(frozenset({int(kind)}))
    found: Dict[Tuple[int, ...], List[str]] = {}
    for pattern in patterns:
        key = pattern_key(pattern)
        if key is not None:
            found.setdefault(key, []).append(pattern.citation)
    return {key: tuple(citations) for key, citations in found.items()}


def unpaired_exceptions() -> List[Pattern]:
    """Listed exceptions whose image under the coefficient involution is not listed itself."""
    listed: Dict[Pattern, CaseSpec] = {}
    for pattern in theorem_exceptions():
        th = pattern.theory()
        if th.consistent:
            listed[pattern] = CaseSpec.from_theory(th)
    cases = set(listed.values())
    return [pattern for pattern, case in listed.items() if case.image() not in cases]


def citations(case: CaseSpec, kind: str) -> Tuple[str, ...]:
    return _table(kind).get(canonicalize(case.closure()).admitted, ())


@dataclasses.dataclass(frozen=True)
class WeightPattern:
    lemma: int
    core: Tuple[Relation, ...]
    r1: str
    r2: str
    zero: Tuple[str, ...]
    stable: str = "tx"

    @property
    def name(self) -> str:
        return f"Lemma {self.lemma} pattern ({', '.join(str(relation) for relation in self.core)})"

    def relators(self) -> Tuple[MixedWord, MixedWord]:
        return parse_relator(self.r1, stable=self.stable), parse_relator(self.r2, stable=self.stable)

    def graph(self) -> StarGraph:
        return build_star_graph(list(self.relators()))

    def weights(self) -> WeightFunction:
        return WeightFunction.zero_on(self.graph(), self.zero)

    def applies(self, th: CoefficientTheory) -> bool:
        return all(entails(th, relation) for relation in self.core)

    def reduces_to_relator(self, th: CoefficientTheory) -> bool:
        r1, r2 = self.relators()
        return cyclically_equal(eliminate_variable(r1, r2, "x", th), relator(), th)


def _core(*texts: str) -> Tuple[Relation, ...]:
    return tuple(Relation.parse(text) for text in texts)


WEIGHT_PATTERNS: Tuple[WeightPattern, ...] = (
    WeightPattern(
        1,
        _core("a=d^-1", "a=g^-1", "d=g"),
        "x c t x^-1 e t f t x^-1 h t i",
        "x^-1 t^-1 a t t",
        ("gamma1", "gamma7", "eta1", "eta2"),
    ),
    WeightPattern(
        2,
        _core("a=d^-1", "a=g", "d=g^-1"),
        "x t c x^-1 e t f x h t i",
        "x^-1 t^-1 a t",
        ("gamma2", "gamma3", "eta2", "eta3"),
    ),
    WeightPattern(
        2,
        _core("a=d", "a=g^-1", "d=g^-1"),
        "x t c x e t f x^-1 h t i",
        "x^-1 t^-1 a t",
        ("gamma4", "gamma5", "eta2", "eta3"),
    ),
)


class Verdict(str, enum.Enum):
    ASPHERICAL_WEIGHT_TEST = "aspherical-weight-test"
    """A weight-test pattern applies and its weight function passes."""
    ASPHERICAL_CURVATURE = "aspherical-curvature"
    """Regions are negatively curved, or a curvature lemma covers the case."""
    DISTRIBUTION_NEEDED = "distribution-needed"
    """Positive curvature has to be distributed to neighbouring regions."""
    EXCEPTIONAL = "exceptional"
    """One of the open cases."""


@dataclasses.dataclass
class ClassificationReport:
    case: CaseSpec
    verdict: Verdict
    bound: CurvatureBound
    citation: Optional[str] = None
    notes: List[str] = dataclasses.field(default_factory=list)
    weights: Optional[WeightFunction] = None
    weight_report: Optional[WeightReport] = None

    @property
    def aspherical(self) -> bool:
        return self.verdict in (Verdict.ASPHERICAL_WEIGHT_TEST, Verdict.ASPHERICAL_CURVATURE)

    def to_json(self) -> Dict[str, object]:
        return {
            "admitted": list(self.case.labels),
            "relations": self.case.relations_text(),
            "N": self.case.n,
            "verdict": self.verdict.value,
            "bound": self.bound.text,
            "bound_value": {"num": self.bound.value.numerator, "den": self.bound.value.denominator},
            "citation": self.citation,
            "notes": list(self.notes),
            "weights": None if self.weights is None else self.weights.to_json(),
        }


def _weight_test(case: CaseSpec) -> Optional[ClassificationReport]:
    for variant in (case, case.image()):
        th = variant.theory
        for pattern in WEIGHT_PATTERNS:
            if not pattern.applies(th):
                continue
            notes = []
            if variant is not case:
                notes.append("checked on the image under the coefficient involution")
            if not pattern.reduces_to_relator(th):
                notes.append(f"{pattern.name}: substitution does not reproduce the relator")
                continue
            weights = pattern.weights()
            report = check_weight_test(pattern.graph(), weights, th)
            if not report.passed:
                notes.append(f"{pattern.name}: weight test {report.verdict.value}")
                continue
            cited = citations(case, str(pattern.lemma))
            return ClassificationReport(
                case,
                Verdict.ASPHERICAL_WEIGHT_TEST,
                curvature_upper_bound(case.theory),
                citation=cited[0] if cited else pattern.name,
                notes=notes,
                weights=weights,
                weight_report=report,
            )
    return None


def classify(case: CaseSpec) -> ClassificationReport:
    if not case.consistent:
        raise InconsistentCaseError(f"case {case} is contradictory: {case.theory.witness}")
    try:
        found = _weight_test(case)
    except ContradictoryTheoryError as exc:
        raise InconsistentCaseError(str(exc)) from exc
    if found is not None:
        return found

    bound = curvature_upper_bound(case.theory)
    cited = citations(case, "curvature")
    if bound.value <= CURVATURE_CUTOFF:
        return ClassificationReport(case, Verdict.ASPHERICAL_CURVATURE, bound, cited[0] if cited else None)
    if cited:
        return ClassificationReport(case, Verdict.ASPHERICAL_CURVATURE, bound, cited[0], list(cited[1:]))
    exceptional = citations(case, "theorem")
    if exceptional:
        return ClassificationReport(case, Verdict.EXCEPTIONAL, bound, exceptional[0], list(exceptional[1:]))
    return ClassificationReport(case, Verdict.DISTRIBUTION_NEEDED, bound)


@dataclasses.dataclass(frozen=True)
class RemarkCheck:
    item: int
    statement: str
    holds: bool
    detail: str = ""


CONTRADICTIONS: Tuple[Tuple[int, str, str, str], ...] = (
    (4, "a=d^-1", "a=d", "d^2 = 1"),
    (5, "a=g^-1", "a=g", "g^2 = 1"),
    (6, "d=g^-1", "d=g", "g^2 = 1"),
    (7, "c=f^-1", "c=f", "f^2 = 1"),
    (8, "c=i^-1", "c=i", "i^2 = 1"),
    (9, "f=i^-1", "f=i", "i^2 = 1"),
)

FAMILIES: Tuple[Tuple[int, Tuple[str, ...]], ...] = (
    (10, ("a=d^-1", "a=d", "a=g^-1", "a=g", "d=g^-1", "d=g")),
    (11, ("c=f^-1", "c=f", "c=i^-1", "c=i", "f=i^-1", "f=i")),
)

TRIANGLES: Tuple[Tuple[int, Tuple[str, str, str]], ...] = (
    (12, ("a=d^-1", "a=g^-1", "d=g")),
    (13, ("a=d^-1", "a=g", "d=g^-1")),
    (14, ("a=d", "a=g^-1", "d=g^-1")),
    (15, ("a=d", "a=g", "d=g")),
    (16, ("c=i^-1", "c=f^-1", "f=i")),
    (17, ("c=i^-1", "c=f", "f=i^-1")),
    (18, ("c=i", "c=f^-1", "f=i^-1")),
    (19, ("c=i", "c=f", "f=i")),
    (20, ("h=e", "h=b", "e=b")),
)


def largest_consistent_subset(relations: Sequence[str]) -> int:
    parsed = [Relation.parse(text) for text in relations]
    best = 0
    for size in range(len(parsed) + 1):
        for subset in itertools.combinations(parsed, size):
            th = CoefficientTheory(subset)
            if th.consistent:
                held = sum(entails(th, relation) for relation in parsed)
                best = max(best, held)
    return best


def remark_checks() -> List[RemarkCheck]:
    checks = []
    for item, first, second, expected in CONTRADICTIONS:
        witness = CoefficientTheory.of(first, second).witness
        checks.append(
            RemarkCheck(item, f"{first} and {second} contradict", str(witness) == expected, str(witness))
        )
    for item, family in FAMILIES:
        most = largest_consistent_subset(family)
        checks.append(RemarkCheck(item, f"at most three of {', '.join(family)}", most == 3, f"largest: {most}"))
    for item, triangle in TRIANGLES:
        ok = all(
            entails(CoefficientTheory.of(*pair), Relation.parse(third))
            for pair, third in ((tuple(r for r in triangle if r != t), t) for t in triangle)
        )
        checks.append(RemarkCheck(item, f"any two of {', '.join(triangle)} give the third", ok))
    return checks
