import itertools

import pytest

from graev.dyadic import Dyadic, ONE, ZERO
from graev.words import (
    E,
    IDENTITY_WORD,
    Letter,
    Point,
    Word,
    WordFormatError,
    ZERO_POINT,
    format_word,
    invert,
    is_irreducible,
    multiply,
    neg,
    parse_point,
    parse_word,
    pos,
    project,
    reduce_word,
    ultrametric,
)


def test_point_canonical_no_trailing_zeros():
    assert Point((1, 0)).entries == (1,)
    assert Point((0, 0, 0)).entries == ()
    assert Point((0, 1)).entries == (0, 1)
    assert Point((1, 2)).support == 2
    with pytest.raises(ValueError):
        Point((1, -1))


def test_point_call_beyond_support():
    x = Point((1, 2))
    assert x(0) == 1 and x(1) == 2 and x(5) == 0


def test_project():
    assert project(Point((1, 2, 3)), 2) == Point((1, 2))
    assert project(Point((1, 2, 3)), 0) == ZERO_POINT
    assert project(ZERO_POINT, 5) == ZERO_POINT
    assert project(Point((1, 2)), 7) == Point((1, 2))
    # canonical after truncation: [0,1] cut at 1 leaves the zero point
    assert project(Point((0, 1)), 1) == ZERO_POINT


def test_letter_inverse_involution():
    a = pos((1, 2))
    assert a.inverse() == neg((1, 2))
    assert a.inverse().inverse() == a
    assert E.inverse() == E


def test_ultrametric_spec_values():
    assert ultrametric(pos((1,)), pos((1, 2))) == Dyadic(1, 1)
    assert ultrametric(E, E) == ZERO
    assert ultrametric(pos((1,)), neg((1,))) == ONE
    assert ultrametric(pos((1,)), E) == ONE
    assert ultrametric(neg((1,)), E) == ONE
    assert ultrametric(pos((1, 1)), pos((2, 1))) == ONE
    assert ultrametric(neg((1,)), neg((1, 2))) == Dyadic(1, 1)
    assert ultrametric(pos((1, 2)), pos((1, 2))) == ZERO


def test_ultrametric_symmetry_and_inverse_invariance():
    pool = [E, pos((1,)), neg((1,)), pos((1, 2)), neg((0, 1)), pos(()), neg((2,))]
    for a, b in itertools.product(pool, repeat=2):
        assert ultrametric(a, b) == ultrametric(b, a)
        assert ultrametric(a, b) == ultrametric(a.inverse(), b.inverse())
        assert (ultrametric(a, b) == ZERO) == (a == b)


def test_ultrametric_inequality_same_sign():
    points = [Point(t) for t in itertools.product(range(3), repeat=3)]
    letters = [pos(p) for p in points]
    for a, b, c in itertools.product(letters, repeat=3):
        assert ultrametric(a, b) <= max(ultrametric(a, c), ultrametric(b, c))


def test_projection_distance_bound():
    for entries in itertools.product(range(3), repeat=4):
        x = Point(entries)
        for n in range(5):
            y = project(x, n)
            if x != y:
                assert ultrametric(pos(x), pos(y)) <= Dyadic(1, n)


def test_reduce_spec_examples():
    p, q = Point((1,)), Point((2,))
    assert reduce_word([pos(p), neg(p)]) == IDENTITY_WORD
    assert reduce_word([pos(p), E, pos(q)]) == Word((pos(p), pos(q)))
    assert reduce_word([pos(p), pos(q), neg(q), neg(p)]) == IDENTITY_WORD


def test_reduce_idempotent_and_fixes_irreducible():
    w = Word((pos((1,)), neg((2,)), pos((1,))))
    assert is_irreducible(w)
    assert reduce_word(w.letters) == w
    noisy = Word((E, pos((1,)), pos((2,)), neg((2,)), neg((2,)), E))
    reduced = reduce_word(noisy.letters)
    assert reduced == Word((pos((1,)), neg((2,))))
    assert reduce_word(reduced.letters) == reduced
    assert is_irreducible(reduced)


def test_group_laws_random():
    import random

    rng = random.Random(7)
    pool = [pos((1,)), neg((1,)), pos((2,)), neg((2,)), pos((0, 1)), neg((0, 1))]

    def rand_word():
        return reduce_word([rng.choice(pool) for _ in range(rng.randint(1, 6))])

    for _ in range(200):
        w, v, u = rand_word(), rand_word(), rand_word()
        assert multiply(multiply(w, v), u) == multiply(w, multiply(v, u))
        assert multiply(w, IDENTITY_WORD) == w
        assert multiply(IDENTITY_WORD, w) == w
        assert multiply(w, invert(w)) == IDENTITY_WORD
        assert invert(invert(w)) == w


def test_invert_examples():
    p, q = Point((1,)), Point((2,))
    assert invert(IDENTITY_WORD) == IDENTITY_WORD
    assert invert(Word((pos(p), neg(q)))) == Word((pos(q), neg(p)))
    assert invert(Word((pos(p),))) == Word((neg(p),))


def test_word_nonempty():
    with pytest.raises(ValueError):
        Word(())


def test_parse_and_format_roundtrip():
    texts = [
        "e",
        "x:1,0,2",
        "X:1,0,2",
        "x:",
        "x:1 X:2 x:0,1",
        "X:1 x:1,1",
    ]
    for text in texts:
        assert format_word(parse_word(text)) == text
    assert parse_word("x:1,0") == Word((pos((1,)),))  # canonicalized point
    assert parse_point("0,1") == Point((0, 1))
    assert parse_point("") == ZERO_POINT


def test_parse_rejects_garbage():
    for bad in ["", "y:1", "x:1;2", "x:-1", "ee"]:
        with pytest.raises(WordFormatError):
            parse_word(bad)


def test_letter_validation():
    with pytest.raises(ValueError):
        Letter(2, Point((1,)))
    with pytest.raises(ValueError):
        Letter(0, Point((1,)))
    with pytest.raises(ValueError):
        Letter(1, None)
