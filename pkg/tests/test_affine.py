from fractions import Fraction

from graev.affine import (
    Interval,
    affine_of,
    dyadic_in,
    evaluate_min,
    min_dominates,
)
from graev.dyadic import Dyadic


def F(n, d=1):
    return Fraction(n, d)


def test_interval_intersection():
    a = Interval(F(0), F(10))
    b = Interval(F(3), None)
    c = a.intersect(b)
    assert (c.lo, c.hi) == (F(3), F(10))
    assert a.intersect(Interval(F(20), None)).is_empty()
    # closed single point survives, open does not
    pt = Interval(F(5), F(5), lo_open=False, hi_open=False)
    assert not pt.is_empty()
    assert Interval(F(5), F(5)).is_empty()


def test_min_dominates_holds():
    # min{128 r, r + 1/4} >= r on (0, 1/2]
    upper = [affine_of(128, 0), affine_of(1, Dyadic(1, 2))]
    lower = [affine_of(1, 0)]
    dom = Interval(F(0), F(1, 2), lo_open=True, hi_open=False)
    assert min_dominates(upper, lower, dom) is None
    assert min_dominates(upper, lower, dom, strict=True) is None


def test_min_dominates_finds_violation():
    # 2 r fails to dominate min{16 r, r + 1} just above r = 1/14:
    # 2 r < 16 r always fails, but 2 r < r + 1 holds for r < 1.
    upper = [affine_of(2, 0)]
    lower = [affine_of(16, 0), affine_of(1, 1)]
    dom = Interval(F(0), F(10), lo_open=True, hi_open=False)
    r = min_dominates(upper, lower, dom)
    assert r is not None
    assert evaluate_min(upper, r) < evaluate_min(lower, r)
    # and the violation really is confined to r < 1
    assert r < 1


def test_strict_catches_equality():
    upper = [affine_of(1, 0)]
    lower = [affine_of(1, 0)]
    dom = Interval(F(0), F(1), lo_open=True, hi_open=False)
    assert min_dominates(upper, lower, dom) is None
    assert min_dominates(upper, lower, dom, strict=True) is not None


def test_non_dyadic_crossover_is_exact():
    # min{96 r, r + 1/2} crosses r-dominance questions at r = 1/190;
    # check domination of 96 r by the envelope on both sides of it.
    env = [affine_of(96, 0), affine_of(1, Dyadic(1, 1))]
    # envelope >= 50 r fails for large r (envelope flattens to r + 1/2)
    r = min_dominates(env, [affine_of(50, 0)], Interval(F(0), None, lo_open=True))
    assert r is not None and evaluate_min(env, r) < 50 * r
    # envelope >= r holds globally
    assert min_dominates(env, [affine_of(1, 0)], Interval(F(0), None)) is None


def test_dyadic_in():
    for lo, hi in [(F(1, 190), F(1, 189)), (F(0), F(1, 3)), (F(7, 8), F(9, 8))]:
        d = dyadic_in(lo, hi)
        assert lo < d.as_fraction() < hi
