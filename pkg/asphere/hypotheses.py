"""Hypothesis tables shipped in `data/hypotheses.toml`.

Each item lists relations that always hold and, optionally, a set of labels of which exactly one
more is trivial. Items with such a set expand to one pattern per label.
"""
from __future__ import annotations

import dataclasses
import functools
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import rtoml

from asphere.theory import CoefficientTheory, Relation
from asphere.words import CoeffWord, format_letters, parse_coefficients

DATA_FILE = Path(__file__).parent / "data" / "hypotheses.toml"

CURVATURE_LEMMAS = frozenset({3, 4, 5, 6, 7})


class HypothesisFileError(ValueError):
    pass


def compact(label: CoeffWord) -> str:
    return format_letters(label).replace(" ", "")


@dataclasses.dataclass(frozen=True)
class Hypothesis:
    number: int
    item: int
    relations: Tuple[Relation, ...]
    choices: Tuple[CoeffWord, ...] = ()
    note: Optional[str] = None

    @property
    def citation(self) -> str:
        return f"Theorem({self.item})" if self.number == 0 else f"Lemma {self.number}({self.item})"

    @property
    def text(self) -> str:
        base = ", ".join(str(relation) for relation in self.relations)
        if not self.choices:
            return base
        return f"{base} and R in {{{', '.join(compact(choice) for choice in self.choices)}}}"

    def expand(self) -> List[Pattern]:
        if not self.choices:
            return [Pattern(self, None)]
        return [Pattern(self, choice) for choice in self.choices]


@dataclasses.dataclass(frozen=True)
class Pattern:
    hypothesis: Hypothesis
    choice: Optional[CoeffWord]

    @property
    def relations(self) -> Tuple[Relation, ...]:
        extra = () if self.choice is None else (Relation.from_label(self.choice),)
        return self.hypothesis.relations + extra

    @property
    def citation(self) -> str:
        if self.choice is None:
            return self.hypothesis.citation
        return f"{self.hypothesis.citation}, R={compact(self.choice)}"

    def theory(self) -> CoefficientTheory:
        return CoefficientTheory(self.relations)


@dataclasses.dataclass(frozen=True)
class HypothesisTables:
    lemmas: Tuple[Hypothesis, ...]
    theorem: Tuple[Hypothesis, ...]

    def lemma(self, number: int) -> Tuple[Hypothesis, ...]:
        return tuple(hypothesis for hypothesis in self.lemmas if hypothesis.number == number)

    def patterns(self, numbers: Optional[frozenset] = None) -> List[Pattern]:
        return [
            pattern
            for hypothesis in self.lemmas
            if numbers is None or hypothesis.number in numbers
            for pattern in hypothesis.expand()
        ]


def _hypothesis(entry: Dict[str, Any], number: int) -> Hypothesis:
    try:
        return Hypothesis(
            number=number,
            item=int(entry["item"]),
            relations=tuple(Relation.parse(text) for text in entry["relations"]),
            choices=tuple(parse_coefficients(text) for text in entry.get("choices", [])),
            note=entry.get("note"),
        )
    except (KeyError, ValueError) as exc:
        raise HypothesisFileError(f"bad hypothesis entry {entry!r}: {exc}") from exc


def load_hypotheses(path: Optional[Path] = None) -> HypothesisTables:
    if path is None:
        return _default_tables()
    data = rtoml.load(path)
    lemmas = tuple(_hypothesis(entry, int(entry.get("number", 0))) for entry in data.get("lemma", []))
    theorem = tuple(_hypothesis(entry, 0) for entry in data.get("theorem", []))
    return HypothesisTables(lemmas, theorem)


@functools.lru_cache(maxsize=None)
def _default_tables() -> HypothesisTables:
    return load_hypotheses(DATA_FILE)
