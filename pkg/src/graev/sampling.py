"""Deterministic pools and seeded generators for property runs."""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from .dyadic import Dyadic, ZERO
from .words import E, Letter, Point, Word, neg, pos


def point_box(max_support: int, max_entry: int) -> list[Point]:
    """All canonical points with support <= max_support and entries
    <= max_entry, in a fixed deterministic order."""
    out = [Point(())]
    for support in range(1, max_support + 1):
        for head in itertools.product(range(max_entry + 1), repeat=support - 1):
            for last in range(1, max_entry + 1):
                out.append(Point(head + (last,)))
    return out


def letter_box(points: Sequence[Point], include_identity: bool = True) -> list[Letter]:
    letters: list[Letter] = [E] if include_identity else []
    for p in points:
        letters.append(pos(p))
        letters.append(neg(p))
    return letters


def octave_grid(max_exp: int, include_zero: bool = True) -> list[Dyadic]:
    """Dyadic grid 2**-max_exp .. 1, optionally with 0, ascending."""
    grid = [Dyadic(1, k) for k in range(max_exp, -1, -1)]
    return ([ZERO] + grid) if include_zero else grid


def random_irreducible_word(
    rng: random.Random, letters: Sequence[Letter], max_length: int, min_length: int = 1
) -> Word:
    """Seeded random irreducible word: letters drawn from the pool,
    rejecting the identity letter and immediate cancellations."""
    pool = [l for l in letters if not l.is_identity]
    if not pool:
        raise ValueError("need at least one non-identity letter")
    length = rng.randint(min_length, max_length)
    out: list[Letter] = []
    while len(out) < length:
        letter = pool[rng.randrange(len(pool))]
        if out and letter == out[-1].inverse():
            continue
        out.append(letter)
    return Word(tuple(out))


def seeded_words(
    seed: int,
    count: int,
    max_length: int,
    letters: Sequence[Letter],
) -> list[Word]:
    rng = random.Random(seed)
    return [random_irreducible_word(rng, letters, max_length) for _ in range(count)]
