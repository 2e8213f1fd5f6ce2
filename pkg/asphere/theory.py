"""Coefficient theories: equations `x = y` / `x = y^-1` between coefficient symbols.

The closure is a union-find over signed symbols. Every merge is mirrored on the inverses, and
the identity is a single self-inverse node. Over a torsion-free group a symbol equal to its own
inverse is trivial, so such classes collapse onto the identity; the theory is contradictory as
soon as a symbol assumed nontrivial ends up there (witness `x^2 = 1` or `x = 1`).
"""
from __future__ import annotations

import dataclasses
import enum
import functools
import re
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

from asphere.words import CoeffSymbol, CoeffWord, cyclically_reduce, format_letters, reduce_letters

Node = Tuple[str, int]

ONE: Node = ("1", 1)

DEFAULT_TRIVIAL: FrozenSet[str] = frozenset("b")
DEFAULT_NONTRIVIAL: FrozenSet[str] = frozenset("acdfgi")

_RELATION = re.compile(r"^\s*([a-z])\s*=\s*([a-z])\s*(\^-1|\^\{-1\}|⁻¹)?\s*$")


class ContradictoryTheoryError(ValueError):
    pass


def _inverse(node: Node) -> Node:
    return node if node == ONE else (node[0], -node[1])


class SignedUnionFind:
    def __init__(self) -> None:
        self.p: Dict[Hashable, Hashable] = {}
        self.r: Dict[Hashable, int] = {}

    def find(self, x: Hashable) -> Hashable:
        p = self.p
        if x not in p:
            p[x] = x
            self.r[x] = 0
            return x
        # path halving
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def _union(self, a: Hashable, b: Hashable) -> bool:
        pa, pb = self.find(a), self.find(b)
        if pa == pb:
            return False
        ra, rb = self.r[pa], self.r[pb]
        if ra < rb:
            self.p[pa] = pb
        elif rb < ra:
            self.p[pb] = pa
        else:
            self.p[pb] = pa
            self.r[pa] = ra + 1
        return True

    def union(self, a: Node, b: Node) -> bool:
        merged = self._union(a, b)
        self._union(_inverse(a), _inverse(b))
        return merged

    def same(self, a: Node, b: Node) -> bool:
        return self.find(a) == self.find(b)


@dataclasses.dataclass(frozen=True)
class Relation:
    """`left = right^sign`."""

    left: str
    right: str
    sign: int = 1

    def __str__(self) -> str:
        return f"{self.left}={self.right}" if self.sign == 1 else f"{self.left}={self.right}^-1"

    @classmethod
    def parse(cls, text: str) -> Relation:
        match = _RELATION.match(text)
        if match is None:
            raise ValueError(f"not a relation: {text!r}")
        return cls(match.group(1), match.group(2), -1 if match.group(3) else 1)

    def as_label(self) -> CoeffWord:
        """The word that is trivial exactly when the relation holds."""
        return (CoeffSymbol(self.left), CoeffSymbol(self.right, -self.sign))

    @classmethod
    def from_label(cls, word: CoeffWord) -> Relation:
        if len(word) != 2:
            raise ValueError(f"only two-letter labels read as relations, got {format_letters(word)!r}")
        x, y = word
        return cls(x.name, y.name, -x.sign * y.sign)


@dataclasses.dataclass(frozen=True)
class Witness:
    symbol: str
    power: int

    def __str__(self) -> str:
        return f"{self.symbol} = 1" if self.power == 1 else f"{self.symbol}^{self.power} = 1"


@dataclasses.dataclass(frozen=True)
class _Closure:
    representatives: Dict[Node, Optional[Node]]
    nontrivial_classes: FrozenSet[Node]
    witness: Optional[Witness]


def _witness(uf: SignedUnionFind, symbols: Iterable[str], nontrivial: FrozenSet[str]) -> Optional[Witness]:
    for symbol in symbols:
        if symbol not in nontrivial:
            continue
        if uf.same((symbol, 1), ONE):
            return Witness(symbol, 1)
        if uf.same((symbol, 1), (symbol, -1)):
            return Witness(symbol, 2)
    return None


def _collapse_involutions(uf: SignedUnionFind, alphabet: Sequence[str]) -> None:
    for symbol in alphabet:
        if uf.same((symbol, 1), (symbol, -1)):
            uf.union((symbol, 1), ONE)


@dataclasses.dataclass(frozen=True)
class CoefficientTheory:
    relations: Tuple[Relation, ...] = ()
    trivial: FrozenSet[str] = DEFAULT_TRIVIAL
    nontrivial: FrozenSet[str] = DEFAULT_NONTRIVIAL

    @classmethod
    def of(cls, *relations: str, **kwargs: FrozenSet[str]) -> CoefficientTheory:
        return cls(tuple(Relation.parse(text) for text in relations), **kwargs)

    @classmethod
    def free(cls) -> CoefficientTheory:
        """No relations and no assumptions: plain free reduction."""
        return cls(trivial=frozenset(), nontrivial=frozenset())

    def with_relations(self, *relations: Relation) -> CoefficientTheory:
        return dataclasses.replace(self, relations=self.relations + tuple(relations))

    @property
    def alphabet(self) -> Tuple[str, ...]:
        names = set(self.trivial) | set(self.nontrivial)
        for relation in self.relations:
            names.update((relation.left, relation.right))
        return tuple(sorted(names))

    @functools.cached_property
    def _closure(self) -> _Closure:
        alphabet = self.alphabet
        uf = SignedUnionFind()
        uf.find(ONE)
        for symbol in sorted(self.trivial):
            uf.union((symbol, 1), ONE)
        witness = _witness(uf, alphabet, self.nontrivial)
        for relation in self.relations:
            uf.union((relation.left, 1), (relation.right, relation.sign))
            if witness is None:
                preferred = [relation.right, relation.left, *alphabet]
                witness = _witness(uf, preferred, self.nontrivial)
            _collapse_involutions(uf, alphabet)
        if witness is None:
            witness = _witness(uf, alphabet, self.nontrivial)

        members: Dict[Hashable, List[Node]] = {}
        for symbol in alphabet:
            for sign in (1, -1):
                members.setdefault(uf.find((symbol, sign)), []).append((symbol, sign))
        one = uf.find(ONE)
        representatives: Dict[Node, Optional[Node]] = {}
        nontrivial_classes = set()
        for root, nodes in members.items():
            if root == one:
                for node in nodes:
                    representatives[node] = None
                continue
            best = min(nodes, key=lambda node: (node[0], node[1] != 1))
            for node in nodes:
                representatives[node] = best
            if any(name in self.nontrivial for name, _ in nodes):
                nontrivial_classes.add(best)
        return _Closure(representatives, frozenset(nontrivial_classes), witness)

    @property
    def witness(self) -> Optional[Witness]:
        return self._closure.witness

    @property
    def consistent(self) -> bool:
        return self._closure.witness is None

    @property
    def status(self) -> str:
        return "consistent" if self.consistent else "contradictory"

    def _require_consistent(self) -> _Closure:
        closure = self._closure
        if closure.witness is not None:
            raise ContradictoryTheoryError(f"theory {self} is contradictory: {closure.witness}")
        return closure

    def representative(self, symbol: CoeffSymbol) -> Optional[CoeffSymbol]:
        """Class representative of a signed symbol, or None when it is trivial."""
        closure = self._require_consistent()
        node = (symbol.name, symbol.sign)
        if node not in closure.representatives:
            return symbol
        best = closure.representatives[node]
        return None if best is None else CoeffSymbol(*best)

    def is_nontrivial(self, symbol: CoeffSymbol) -> bool:
        best = self.representative(symbol)
        if best is None:
            return False
        node = (best.name, 1)
        return node in self._closure.nontrivial_classes or (best.name, -1) in self._closure.nontrivial_classes

    def __str__(self) -> str:
        return "{" + ", ".join(str(relation) for relation in self.relations) + "}"

    def to_json(self) -> Dict[str, object]:
        return {
            "relations": [str(relation) for relation in self.relations],
            "trivial": sorted(self.trivial),
            "nontrivial": sorted(self.nontrivial),
            "status": self.status,
            "witness": None if self.witness is None else str(self.witness),
        }


def close(th: CoefficientTheory) -> CoefficientTheory:
    closed = dataclasses.replace(th, relations=tuple(dict.fromkeys(th.relations)))
    closed._closure  # noqa: B018
    return closed


def entails(th: CoefficientTheory, rel: Relation) -> bool:
    left = th.representative(CoeffSymbol(rel.left))
    right = th.representative(CoeffSymbol(rel.right, rel.sign))
    return left == right


class WordClass(str, enum.Enum):
    TRIVIAL = "trivial"
    """The word reduces to the identity."""
    NONTRIVIAL_POWER = "nontrivial-power"
    """A nonzero power of one nontrivial symbol; never the identity in a torsion-free group."""
    UNKNOWN = "unknown"
    """Nothing the theory can decide."""


@dataclasses.dataclass(frozen=True)
class Normalized:
    kind: WordClass
    word: CoeffWord = ()
    base: Optional[str] = None
    power: int = 0

    def __str__(self) -> str:
        if self.kind is WordClass.NONTRIVIAL_POWER:
            return f"{self.kind.value}({self.base}, {self.power})"
        if self.kind is WordClass.UNKNOWN:
            return f"{self.kind.value}({format_letters(self.word)})"
        return self.kind.value


def normalize_word(th: CoefficientTheory, w: CoeffWord, cyclic: bool = False) -> Normalized:
    rewritten = [r for r in (th.representative(symbol) for symbol in w) if r is not None]
    reduce = cyclically_reduce if cyclic else reduce_letters
    reduced: CoeffWord = reduce(rewritten)  # type: ignore[operator,assignment]
    if not reduced:
        return Normalized(WordClass.TRIVIAL)
    names = {symbol.name for symbol in reduced}
    if len(names) == 1 and th.is_nontrivial(reduced[0]):
        # Reduced words in one symbol are x^n or x^-n.
        return Normalized(WordClass.NONTRIVIAL_POWER, reduced, reduced[0].name, reduced[0].sign * len(reduced))
    return Normalized(WordClass.UNKNOWN, reduced)
