"""Non-crossing involutions ("matches") on index intervals.

A match on {m,...,n} is an involution with no crossing pattern
i < j < theta(i) < theta(j); fixed points are allowed.  Matches are the
combinatorial backbone of the pre-norm: the number of matches on k
points is the k-th Motzkin number.

Text format: comma-separated arcs ``i-j`` with i < j, fixed points
omitted; the empty string is the identity match.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence


class MatchNotClosedError(ValueError):
    """A restriction maps some index outside the requested range."""


def is_match(mapping: Sequence[int], start: int = 0) -> bool:
    """True iff the mapping is an involution on its interval with no crossing."""
    n = len(mapping)
    end = start + n - 1
    if any(not (start <= t <= end) for t in mapping):
        return False
    if any(mapping[mapping[i] - start] != start + i for i in range(n)):
        return False
    for i in range(n):
        ti = mapping[i]
        for j in range(i + 1, n):
            tj = mapping[j]
            if start + j < ti < tj:
                return False
    return True


@dataclass(frozen=True)
class Match:
    """A validated match, stored as absolute targets with an offset."""

    start: int
    targets: tuple[int, ...]

    def __post_init__(self):
        targets = tuple(self.targets)
        object.__setattr__(self, "targets", targets)
        if not targets:
            raise ValueError("matches live on nonempty intervals")
        if not is_match(targets, self.start):
            raise ValueError(f"not a match on [{self.start}..{self.end}]: {targets}")

    @classmethod
    def identity(cls, start: int, end: int) -> "Match":
        return cls(start, tuple(range(start, end + 1)))

    @property
    def end(self) -> int:
        return self.start + len(self.targets) - 1

    @property
    def size(self) -> int:
        return len(self.targets)

    def __call__(self, i: int) -> int:
        if not (self.start <= i <= self.end):
            raise IndexError(f"{i} outside [{self.start}..{self.end}]")
        return self.targets[i - self.start]

    def arcs(self) -> Iterator[tuple[int, int]]:
        for i, t in enumerate(self.targets):
            if self.start + i < t:
                yield self.start + i, t

    def __str__(self):
        return format_match(self)


def enumerate_matches(start: int, end: int) -> Iterator[Match]:
    """Yield every match on {start,...,end} once, in lexicographic target order.

    Recursive first-element branching: the first index is a fixed point,
    or pairs with some k, splitting the interval into independent inner
    and outer segments.
    """
    if start > end:
        raise ValueError("need start <= end")
    for targets in _enum(start, end):
        yield Match(start, tuple(targets))


def _enum(lo: int, hi: int) -> Iterator[list[int]]:
    if lo > hi:
        yield []
        return
    for rest in _enum(lo + 1, hi):
        yield [lo] + rest
    for k in range(lo + 1, hi + 1):
        for inner in _enum(lo + 1, k - 1):
            for outer in _enum(k + 1, hi):
                yield [k] + inner + [lo] + outer


def count_matches(size: int) -> int:
    """Number of matches on an interval of the given size (Motzkin number)."""
    if size < 0:
        raise ValueError("size must be a natural")
    counts = [1, 1]
    while len(counts) <= size:
        k = len(counts)
        counts.append(counts[k - 1] + sum(counts[i] * counts[k - 2 - i] for i in range(k - 1)))
    return counts[size]


def restrict_match(match: Match, k: int, l: int) -> Match:
    """Restrict to {k,...,l}; raises MatchNotClosedError if some index escapes."""
    if not (match.start <= k <= l <= match.end):
        raise ValueError(f"[{k}..{l}] not inside [{match.start}..{match.end}]")
    targets = []
    for i in range(k, l + 1):
        t = match(i)
        if not (k <= t <= l):
            raise MatchNotClosedError(f"index {i} maps to {t} outside [{k}..{l}]")
        targets.append(t)
    return Match(k, tuple(targets))


def format_match(match: Match) -> str:
    return ",".join(f"{i}-{j}" for i, j in match.arcs())


def parse_match(text: str, start: int, end: int) -> Match:
    """Parse the arc list over the declared interval [start..end]."""
    targets = list(range(start, end + 1))
    text = text.strip()
    if text:
        for arc in text.split(","):
            try:
                a, b = arc.split("-")
                i, j = int(a), int(b)
            except ValueError:
                raise ValueError(f"bad arc {arc!r}") from None
            if not (start <= i < j <= end):
                raise ValueError(f"arc {arc!r} outside [{start}..{end}]")
            targets[i - start] = j
            targets[j - start] = i
    return Match(start, tuple(targets))
