"""Shared fixture builders for the test suite."""

from __future__ import annotations

import itertools

from graev.dyadic import Dyadic
from graev.scales import FiniteMetricGroup, word_metric_group


def s3_group() -> FiniteMetricGroup:
    """The six permutations of three points with a weighted word metric
    (generators: both rotations at 1/2, one transposition at 1/4)."""
    perms = [
        (0, 1, 2),
        (1, 2, 0),
        (2, 0, 1),
        (1, 0, 2),
        (0, 2, 1),
        (2, 1, 0),
    ]
    names = ("id", "r", "rr", "s01", "s12", "s02")

    def compose(p, q):  # p after q
        return tuple(p[q[i]] for i in range(3))

    table = tuple(
        tuple(perms.index(compose(perms[i], perms[j])) for j in range(6)) for i in range(6)
    )
    weights = {"r": Dyadic(1, 1), "rr": Dyadic(1, 1), "s01": Dyadic(1, 2)}
    return word_metric_group(names, table, weights)


def klein_group() -> FiniteMetricGroup:
    """Z2 x Z2 with every nonidentity element at distance 1/2."""
    names = ("1", "a", "b", "c")
    table = (
        (0, 1, 2, 3),
        (1, 0, 3, 2),
        (2, 3, 0, 1),
        (3, 2, 1, 0),
    )
    half = Dyadic(1, 1)
    metric = tuple(
        tuple(Dyadic(0) if i == j else half for j in range(4)) for i in range(4)
    )
    return FiniteMetricGroup(names, table, metric)


def all_points(max_support: int, max_entry: int):
    from graev.words import Point

    out = [Point(())]
    for support in range(1, max_support + 1):
        for head in itertools.product(range(max_entry + 1), repeat=support - 1):
            for last in range(1, max_entry + 1):
                out.append(Point(head + (last,)))
    return out
