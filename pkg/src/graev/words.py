"""Finite-support points, signed letters, words, and the free group.

Points are finitely supported sequences of naturals.  The alphabet is
the set of points together with their formal inverses and a designated
identity letter ``e``; the identity ELEMENT of the free group is the
one-letter word ``e``, never the empty word.

Text formats (bit-exact, shared with the CLI and test fixtures):

* letter   -- ``e``, ``x:1,0,2`` for a positive point, ``X:1,0,2`` for
  its inverse, ``x:`` for the all-zero point;
* word     -- letters separated by whitespace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .dyadic import Dyadic, ONE, ZERO


class WordFormatError(ValueError):
    """Malformed word/letter/point text."""


@dataclass(frozen=True)
class Point:
    """A finite-support sequence of naturals; trailing zeros are stripped."""

    entries: tuple[int, ...] = ()

    def __post_init__(self):
        entries = tuple(self.entries)
        if any(not isinstance(n, int) or n < 0 for n in entries):
            raise ValueError(f"point entries must be naturals: {entries!r}")
        while entries and entries[-1] == 0:
            entries = entries[:-1]
        object.__setattr__(self, "entries", entries)

    @property
    def support(self) -> int:
        return len(self.entries)

    def __call__(self, n: int) -> int:
        return self.entries[n] if n < len(self.entries) else 0

    def __str__(self):
        return ",".join(str(n) for n in self.entries)


ZERO_POINT = Point()


def project(x: Point, n: int) -> Point:
    """Zero out every coordinate at index >= n."""
    if n < 0:
        raise ValueError("projection index must be a natural")
    return Point(x.entries[:n])


def parse_point(text: str) -> Point:
    """Parse a comma-separated list of naturals; empty text is the zero point."""
    text = text.strip()
    if not text:
        return ZERO_POINT
    try:
        return Point(tuple(int(tok) for tok in text.split(",")))
    except ValueError as exc:
        raise WordFormatError(f"bad point {text!r}: {exc}") from None


@dataclass(frozen=True)
class Letter:
    """A signed point (sign +1 or -1) or the identity letter (sign 0)."""

    sign: int
    point: Point | None

    def __post_init__(self):
        if self.sign == 0:
            if self.point is not None:
                raise ValueError("identity letter carries no point")
        elif self.sign in (1, -1):
            if self.point is None:
                raise ValueError("signed letter needs a point")
        else:
            raise ValueError(f"bad sign {self.sign!r}")

    @property
    def is_identity(self) -> bool:
        return self.sign == 0

    def inverse(self) -> "Letter":
        return Letter(-self.sign, self.point)

    def __str__(self):
        if self.sign == 0:
            return "e"
        tag = "x" if self.sign > 0 else "X"
        return f"{tag}:{self.point}"


E = Letter(0, None)


def pos(p: Point | Iterable[int]) -> Letter:
    return Letter(1, p if isinstance(p, Point) else Point(tuple(p)))


def neg(p: Point | Iterable[int]) -> Letter:
    return Letter(-1, p if isinstance(p, Point) else Point(tuple(p)))


def ultrametric(a: Letter, b: Letter) -> Dyadic:
    """Distance on the extended alphabet.

    Same-sign point letters are at distance 2**-n, n the first index of
    disagreement; any pair of opposite signs, and any point letter
    against ``e``, are at distance 1.
    """
    if a == b:
        return ZERO
    if a.is_identity or b.is_identity or a.sign != b.sign:
        return ONE
    p, q = a.point.entries, b.point.entries
    n = 0
    while a.point(n) == b.point(n):
        n += 1
    # distinct canonical points must disagree within max support
    assert n <= max(len(p), len(q))
    return Dyadic(1, n)


@dataclass(frozen=True)
class Word:
    """A nonempty sequence of letters; not necessarily irreducible."""

    letters: tuple[Letter, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        if not letters:
            raise ValueError("words are nonempty; the identity is the word 'e'")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, i) -> Letter:
        return self.letters[i]

    def __str__(self):
        return format_word(self)


IDENTITY_WORD = Word((E,))


def is_irreducible(w: Word) -> bool:
    if len(w) == 1:
        return True
    for i, letter in enumerate(w.letters):
        if letter.is_identity:
            return False
        if i + 1 < len(w) and w.letters[i + 1] == letter.inverse():
            return False
    return True


def reduce_word(letters: Iterable[Letter]) -> Word:
    """The unique irreducible word equal to the given one in the free group.

    Cancels adjacent inverse pairs and drops identity letters; an empty
    residue becomes the one-letter identity word.
    """
    stack: list[Letter] = []
    for letter in letters:
        if letter.is_identity:
            continue
        if stack and stack[-1] == letter.inverse():
            stack.pop()
        else:
            stack.append(letter)
    return Word(tuple(stack)) if stack else IDENTITY_WORD


def multiply(w: Word, v: Word) -> Word:
    """Group multiplication: reduce the concatenation."""
    return reduce_word(w.letters + v.letters)


def invert(w: Word) -> Word:
    """Free-group inverse: reverse the word and invert every letter."""
    if w == IDENTITY_WORD:
        return IDENTITY_WORD
    return Word(tuple(letter.inverse() for letter in reversed(w.letters)))


def parse_letter(token: str) -> Letter:
    if token == "e":
        return E
    if token.startswith("x:"):
        return pos(parse_point(token[2:]))
    if token.startswith("X:"):
        return neg(parse_point(token[2:]))
    raise WordFormatError(f"bad letter token {token!r}")


def parse_word(text: str) -> Word:
    tokens = text.split()
    if not tokens:
        raise WordFormatError("empty word text; the identity is written 'e'")
    return Word(tuple(parse_letter(tok) for tok in tokens))


def format_word(w: Word) -> str:
    return " ".join(str(letter) for letter in w.letters)
