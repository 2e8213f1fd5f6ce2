"""Words over the free product of the coefficient group with a free group on stable letters.

Coefficients are formal symbols: the letters `a` to `i` unless more are declared. Stable letters
are the declared identifiers, `t` by default. Cases handled by the rewriting helpers:

1. Free cancellation of `x x^-1` for coefficients and stable letters alike.
2. Coefficients rewritten through a coefficient theory before cancelling, so `a d` vanishes
   once `a = d^-1` is known and a trivial coefficient between `t` and `t^-1` lets them cancel.
3. Cyclic reduction of relators, with cyclic conjugation and inversion as the equivalence.
4. Substituting a word for a stable letter, and solving a second relator for a letter to
   eliminate it from the first.

The group arithmetic runs in a sympy `FreeGroup` on the letters a word uses; `MixedWord` keeps
the split into coefficient and stable letters that the group itself does not know about.
"""
from __future__ import annotations

import dataclasses
import functools
import re
from typing import (
    TYPE_CHECKING,
    Any,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
    Type,
    Union,
)

from sympy.combinatorics.free_groups import FreeGroup, FreeGroupElement, free_group

if TYPE_CHECKING:
    from asphere.theory import CoefficientTheory

COEFFICIENTS: FrozenSet[str] = frozenset("abcdefghi")
STABLE_LETTERS: Tuple[str, ...] = ("t",)

RELATOR_TEXT = "a t b t c t^-1 d t e t f t^-1 g t h t i t^-1"

_LETTER = re.compile(r"[A-Za-z]")
_EXPONENT = re.compile(r"\^(?:\{(-?1)\}|(-?1))|(⁻¹)")


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class UndeclaredSymbolError(ValueError):
    def __init__(self, symbol: str, position: int) -> None:
        super().__init__(f"undeclared symbol {symbol!r} at position {position}")
        self.symbol = symbol
        self.position = position


class SubstitutionError(ValueError):
    pass


@dataclasses.dataclass(frozen=True, order=True)
class CoeffSymbol:
    name: str
    sign: int = 1

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("coefficient symbols need a name")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be 1 or -1, got {self.sign}")

    def inverse(self) -> CoeffSymbol:
        return CoeffSymbol(self.name, -self.sign)

    def __str__(self) -> str:
        return self.name if self.sign == 1 else f"{self.name}^-1"


@dataclasses.dataclass(frozen=True, order=True)
class StableLetter:
    name: str
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"exponent must be 1 or -1, got {self.sign}")

    def inverse(self) -> StableLetter:
        return StableLetter(self.name, -self.sign)

    def __str__(self) -> str:
        return self.name if self.sign == 1 else f"{self.name}^-1"


Letter = Union[CoeffSymbol, StableLetter]
CoeffWord = Tuple[CoeffSymbol, ...]


def _token(letter: Letter) -> Tuple[int, str, int]:
    return (int(isinstance(letter, StableLetter)), letter.name, letter.sign)


@functools.lru_cache(maxsize=None)
def _free_group(names: Tuple[str, ...]) -> Tuple[FreeGroup, Dict[str, FreeGroupElement]]:
    group = free_group(names)[0]
    return group, {symbol.name: generator for symbol, generator in zip(group.symbols, group.generators)}


def _kinds(*words: Sequence[Letter]) -> Dict[str, Type[Letter]]:
    return {letter.name: type(letter) for word in words for letter in word}


def _encode(letters: Sequence[Letter], names: Iterable[str]) -> FreeGroupElement:
    group, generators = _free_group(tuple(sorted(set(names))))
    element = group.identity
    for letter in letters:
        generator = generators[letter.name]
        element = element * (generator if letter.sign == 1 else generator**-1)
    return element


def _decode(element: FreeGroupElement, kinds: Mapping[str, Type[Letter]]) -> Tuple[Letter, ...]:
    letters: List[Letter] = []
    for symbol, exponent in element.array_form:
        letter = kinds[symbol.name](symbol.name, 1 if exponent > 0 else -1)
        letters.extend([letter] * abs(exponent))
    return tuple(letters)


@functools.lru_cache(maxsize=65536)
def _reduce(letters: Tuple[Letter, ...], cyclic: bool) -> Tuple[Letter, ...]:
    if not letters:
        return ()
    kinds = _kinds(letters)
    element = _encode(letters, kinds)
    if cyclic:
        element = element.cyclic_reduction()
    return _decode(element, kinds)


def reduce_letters(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    return _reduce(tuple(letters), False)


def cyclically_reduce(letters: Sequence[Letter]) -> Tuple[Letter, ...]:
    return _reduce(tuple(letters), True)


def invert(letters: Sequence[Letter]) -> Tuple[Letter, ...]:
    return tuple(letter.inverse() for letter in reversed(letters))


def format_letters(letters: Iterable[Letter]) -> str:
    return " ".join(str(letter) for letter in letters)


@functools.lru_cache(maxsize=65536)
def _conjugates(letters: Tuple[Letter, ...]) -> Tuple[Tuple[Letter, ...], ...]:
    if not letters:
        return ((),)
    kinds = _kinds(letters)
    element = _encode(letters, kinds).cyclic_reduction()
    if element.is_identity:
        return ((),)
    return tuple(sorted((_decode(conjugate, kinds) for conjugate in element.cyclic_conjugates()), key=format_letters))


def rotations(letters: Sequence[Letter]) -> List[Tuple[Letter, ...]]:
    """Distinct cyclic conjugates of the cyclically reduced word."""
    return list(_conjugates(tuple(letters)))


@functools.lru_cache(maxsize=65536)
def _cyclic_key(letters: Tuple[Letter, ...]) -> Tuple[Tuple[int, str, int], ...]:
    candidates = _conjugates(letters) + _conjugates(invert(letters))
    return min(tuple(_token(letter) for letter in candidate) for candidate in candidates)


def cyclic_key(letters: Sequence[Letter]) -> Tuple[Tuple[int, str, int], ...]:
    """Key shared by every cyclic conjugate of a word and of its inverse."""
    return _cyclic_key(tuple(letters))


@dataclasses.dataclass(frozen=True, eq=False)
class MixedWord:
    letters: Tuple[Letter, ...] = ()
    cyclic: bool = False

    def __str__(self) -> str:
        return format_letters(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def _key(self) -> Tuple[Any, ...]:
        if self.cyclic:
            # Least printed cyclic conjugate.
            return (True, min(format_letters(rotation) for rotation in rotations(self.letters)))
        return (False, tuple(_token(letter) for letter in self.letters))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MixedWord):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def inverse(self) -> MixedWord:
        return MixedWord(invert(self.letters), self.cyclic)

    def as_cyclic(self) -> MixedWord:
        return MixedWord(self.letters, cyclic=True)

    @property
    def stable_letters(self) -> Tuple[StableLetter, ...]:
        return tuple(letter for letter in self.letters if isinstance(letter, StableLetter))

    @property
    def coefficients(self) -> CoeffWord:
        return tuple(letter for letter in self.letters if isinstance(letter, CoeffSymbol))

    def occurrences(self) -> List[Tuple[StableLetter, CoeffWord]]:
        """Pair every stable letter with the coefficient segment that follows it, reading cyclically."""
        first = next((i for i, letter in enumerate(self.letters) if isinstance(letter, StableLetter)), None)
        if first is None:
            return []
        rotated = self.letters[first:] + self.letters[:first]
        pairs: List[Tuple[StableLetter, List[CoeffSymbol]]] = []
        for letter in rotated:
            if isinstance(letter, StableLetter):
                pairs.append((letter, []))
            else:
                pairs[-1][1].append(letter)
        return [(letter, tuple(segment)) for letter, segment in pairs]

    def to_json(self) -> List[Dict[str, Any]]:
        return [
            {
                "kind": "stable" if isinstance(letter, StableLetter) else "coeff",
                "name": letter.name,
                "sign": letter.sign,
            }
            for letter in self.letters
        ]

    @classmethod
    def from_json(cls, items: Iterable[Dict[str, Any]], cyclic: bool = False) -> MixedWord:
        letters: List[Letter] = []
        for item in items:
            kind = StableLetter if item["kind"] == "stable" else CoeffSymbol
            letters.append(kind(item["name"], int(item.get("sign", 1))))
        return cls(tuple(letters), cyclic)


def parse_word(
    text: str,
    stable: Iterable[str] = STABLE_LETTERS,
    coefficients: Iterable[str] = COEFFICIENTS,
    cyclic: bool = False,
) -> MixedWord:
    stable_names = set(stable)
    coefficient_names = set(coefficients)
    letters: List[Letter] = []
    position = 0
    while position < len(text):
        if text[position].isspace():
            position += 1
            continue
        if not _LETTER.match(text, position):
            raise WordSyntaxError(f"unexpected {text[position]!r}", position)
        name = text[position]
        start = position
        position += 1
        sign = 1
        if position < len(text) and text[position] in "^⁻":
            exponent = _EXPONENT.match(text, position)
            if exponent is None:
                raise WordSyntaxError("malformed exponent", position)
            value = exponent.group(1) or exponent.group(2)
            sign = -1 if exponent.group(3) or value == "-1" else 1
            position = exponent.end()
        if name in stable_names:
            letters.append(StableLetter(name, sign))
        elif name in coefficient_names:
            letters.append(CoeffSymbol(name, sign))
        else:
            raise UndeclaredSymbolError(name, start)
    return MixedWord(tuple(letters), cyclic)


def parse_relator(text: str, stable: Iterable[str] = STABLE_LETTERS) -> MixedWord:
    return parse_word(text, stable=stable, cyclic=True)


def parse_coefficients(text: str) -> CoeffWord:
    return parse_word(text, stable=()).coefficients


def relator() -> MixedWord:
    return parse_relator(RELATOR_TEXT)


def equation_length(w: MixedWord) -> int:
    return len(w.stable_letters)


def is_singular(w: MixedWord) -> bool:
    return sum(letter.sign for letter in w.stable_letters) == 0


def rewrite_coefficients(letters: Iterable[Letter], th: Optional[CoefficientTheory]) -> List[Letter]:
    if th is None:
        return list(letters)
    rewritten: List[Letter] = []
    for letter in letters:
        if isinstance(letter, StableLetter):
            rewritten.append(letter)
            continue
        representative = th.representative(letter)
        if representative is not None:
            rewritten.append(representative)
    return rewritten


def free_reduce(w: MixedWord, th: Optional[CoefficientTheory] = None) -> MixedWord:
    letters = rewrite_coefficients(w.letters, th)
    reduced = cyclically_reduce(letters) if w.cyclic else reduce_letters(letters)
    return MixedWord(reduced, w.cyclic)


def cyclic_forms(w: MixedWord) -> Set[MixedWord]:
    """Rotations starting at a stable letter, with their inverses.

    A relator with n stable letters has at most 2n forms. Words without stable letters use every
    rotation of the word and of its inverse.
    """
    conjugates = rotations(w.letters)
    starts = [c for c in conjugates if c and isinstance(c[0], StableLetter)] or conjugates
    return {MixedWord(form) for start in starts for form in (start, invert(start))}


def cyclically_equal(u: MixedWord, w: MixedWord, th: Optional[CoefficientTheory] = None) -> bool:
    return cyclic_key(free_reduce(u.as_cyclic(), th).letters) == cyclic_key(free_reduce(w.as_cyclic(), th).letters)


_PENDING = "__pending__"


def apply_substitution(
    w: MixedWord,
    letter: str,
    replacement: MixedWord,
    th: Optional[CoefficientTheory] = None,
) -> MixedWord:
    if not replacement.letters:
        raise SubstitutionError(f"an empty replacement would erase {letter!r}")
    if not any(isinstance(x, StableLetter) and x.name == letter for x in w.letters):
        raise SubstitutionError(f"{letter!r} does not occur in {w}")
    letters = rewrite_coefficients(w.letters, th)
    by_letters = rewrite_coefficients(replacement.letters, th)
    kinds = _kinds(letters, by_letters)
    names = set(kinds) | {_PENDING}
    _, generators = _free_group(tuple(sorted(names)))
    word = _encode(letters, names)
    by = _encode(by_letters, names)
    gen = generators[letter]
    if by.is_independent(gen):
        word = word.eliminate_words({gen: by})
    else:
        # Go through a fresh generator so the replacement is never rewritten again.
        pending = generators[_PENDING]
        word = word.eliminate_words({gen: pending}).eliminate_words({pending: by})
    if w.cyclic:
        word = word.cyclic_reduction()
    return MixedWord(_decode(word, kinds), w.cyclic)


def solve_for(r: MixedWord, letter: str) -> MixedWord:
    """Solve the relator `r = 1` for a letter that occurs in it exactly once."""
    kinds = _kinds(r.letters)
    if letter not in kinds:
        raise SubstitutionError(f"{r} does not uniquely solve for {letter!r} (0 occurrences)")
    _, generators = _free_group(tuple(sorted(kinds)))
    element = _encode(r.letters, kinds).cyclic_reduction()
    count = element.generator_count(generators[letter])
    if count != 1:
        raise SubstitutionError(f"{r} does not uniquely solve for {letter!r} ({count} occurrences)")
    letters = _decode(element, kinds)
    i = next(i for i, x in enumerate(letters) if x.name == letter)
    rotated = element.cyclic_subword(i, i + len(element))
    rest = rotated.subword(1, len(rotated))
    # x^e W = 1 gives x = W^-1 when e = 1 and x = W when e = -1.
    solution = rest.inverse() if letters[i].sign == 1 else rest
    return MixedWord(_decode(solution, kinds))


def eliminate_variable(
    r1: MixedWord,
    r2: MixedWord,
    letter: str,
    th: Optional[CoefficientTheory] = None,
) -> MixedWord:
    return apply_substitution(r1.as_cyclic(), letter, solve_for(r2, letter), th)
