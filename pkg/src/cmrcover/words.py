"""Alphabets, words and validated forbidden sets.

A word is a plain tuple of symbol names.  Symbols are opaque tokens; their
order in the :class:`Alphabet` fixes every iteration order in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence, Union

from .errors import (
    EmptySet,
    EmptyWordForbidden,
    IdenticalWords,
    ParseError,
    RedundantWord,
    SymbolOutsideAlphabet,
)

Word = tuple  # tuple[str, ...]
EPSILON: Word = ()
EPSILON_NAME = "ε"

WordLike = Union[str, Sequence[str]]


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise ValueError("alphabet must contain at least one symbol")
        for s in symbols:
            if not isinstance(s, str) or not s or s.split() != [s]:
                raise ValueError(f"invalid symbol name {s!r}")
            if s == EPSILON_NAME or s.startswith("#"):
                raise ValueError(f"reserved symbol name {s!r}")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in alphabet {symbols}")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    @classmethod
    def parse(cls, text: str) -> "Alphabet":
        """Whitespace- or comma-separated names; a single bare token is split into characters."""
        tokens = text.replace(",", " ").split()
        if len(tokens) == 1 and len(tokens[0]) > 1:
            tokens = list(tokens[0])
        return cls(tuple(tokens))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise SymbolOutsideAlphabet(f"symbol {symbol!r} is not in alphabet {self.symbols}") from None

    @property
    def single_char(self) -> bool:
        return all(len(s) == 1 for s in self.symbols)

    def word(self, w: WordLike) -> Word:
        """Coerce a string or symbol sequence into a word over this alphabet."""
        if isinstance(w, str):
            text = w.strip()
            if text in ("", EPSILON_NAME):
                return EPSILON
            if self.single_char:
                syms = tuple("".join(text.split()))
            else:
                syms = tuple(text.split())
        else:
            syms = tuple(w)
        for s in syms:
            self.index(s)
        return syms

    def show(self, w: Sequence[str]) -> str:
        if not w:
            return EPSILON_NAME
        return ("" if self.single_char else " ").join(w)

    def key(self, w: Sequence[str]) -> tuple:
        """Lexicographic sort key in alphabet order."""
        return tuple(self._index[s] for s in w)

    def shortlex(self, w: Sequence[str]) -> tuple:
        return (len(w), self.key(w))


def is_subword(u: Sequence[str], x: Sequence[str]) -> bool:
    u, x = tuple(u), tuple(x)
    k = len(u)
    if k == 0:
        return True
    return any(x[i:i + k] == u for i in range(len(x) - k + 1))


def is_prefix(u: Sequence[str], x: Sequence[str]) -> bool:
    return len(u) <= len(x) and tuple(x[: len(u)]) == tuple(u)


def is_suffix(u: Sequence[str], x: Sequence[str]) -> bool:
    return len(u) <= len(x) and tuple(x[len(x) - len(u):]) == tuple(u)


def prefix_suffix_stats(w1: Sequence[str], w2: Sequence[str]) -> tuple:
    """Return (longest common prefix length, longest common suffix length)."""
    w1, w2 = tuple(w1), tuple(w2)
    if w1 == w2:
        raise IdenticalWords(f"words are identical: {w1}")
    rho = 0
    for a, b in zip(w1, w2):
        if a != b:
            break
        rho += 1
    sigma = 0
    for a, b in zip(reversed(w1), reversed(w2)):
        if a != b:
            break
        sigma += 1
    return rho, sigma


@dataclass(frozen=True)
class ForbiddenSet:
    alphabet: Alphabet
    words: tuple

    @property
    def n_max(self) -> int:
        return max(len(w) for w in self.words)

    @property
    def equal_lengths(self) -> bool:
        return len({len(w) for w in self.words}) == 1

    @property
    def is_degenerate(self) -> bool:
        """True when every symbol is forbidden, so the only allowed word is ε."""
        return all((s,) in self.words for s in self.alphabet)

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def show(self) -> str:
        return "{" + ", ".join(self.alphabet.show(w) for w in self.words) + "}"

    def __str__(self):
        return f"F={self.show()} over {{{', '.join(self.alphabet)}}}"


def validate_forbidden_set(raw_words: Iterable[WordLike], alphabet: Alphabet) -> ForbiddenSet:
    words = set()
    for raw in raw_words:
        w = alphabet.word(raw)
        if not w:
            raise EmptyWordForbidden("the empty word cannot be forbidden")
        words.add(w)
    if not words:
        raise EmptySet("forbidden set is empty")
    ordered = tuple(sorted(words, key=alphabet.shortlex))
    for u, w in combinations(ordered, 2):
        # shortlex order puts the shorter word first
        if is_subword(u, w):
            raise RedundantWord(alphabet.show(u), alphabet.show(w))
    return ForbiddenSet(alphabet, ordered)


def minimal_words(words: Iterable[Sequence[str]]) -> list:
    """Drop every word containing another member as a subword.

    The result forbids exactly the same words as the input, so it is the
    canonical way to turn an arbitrary word list into a valid forbidden set.
    """
    ws = sorted({tuple(w) for w in words}, key=len)
    kept = []
    for w in ws:
        if not any(is_subword(u, w) for u in kept):
            kept.append(w)
    return kept


def parse_forbidden_text(text: str) -> ForbiddenSet:
    alphabet = None
    raw = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if alphabet is None:
            head, sep, rest = stripped.partition(":")
            if not sep or head.strip() != "alphabet":
                raise ParseError(f"line {lineno}: expected 'alphabet: ...' header")
            names = rest.split()
            if not names:
                raise ParseError(f"line {lineno}: empty alphabet")
            try:
                alphabet = Alphabet(tuple(names))
            except ValueError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
            continue
        raw.append(stripped)
    if alphabet is None:
        raise ParseError("missing 'alphabet:' header")
    return validate_forbidden_set(raw, alphabet)


def format_forbidden_text(fset: ForbiddenSet) -> str:
    lines = ["alphabet: " + " ".join(fset.alphabet)]
    lines += [fset.alphabet.show(w) for w in fset.words]
    return "\n".join(lines) + "\n"
