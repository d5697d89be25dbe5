"""Exact comparison of min-of-affine functions on rational intervals.

The scale checkers reduce every universally-quantified-over-r condition
to statements of the form  min_i f_i(r) >= min_j g_j(r)  on an interval,
with affine f_i, g_j.  A violation happens at some r iff some f_i lies
below every g_j there; for affine functions that violation set is an
intersection of intervals with rational endpoints, so the check is
exact.  Fractions appear only inside this engine; every value the
package reports stays dyadic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dyadic import Dyadic

Affine = tuple[Fraction, Fraction]  # (slope, intercept)


@dataclass(frozen=True)
class Interval:
    """An interval with rational endpoints; None means unbounded."""

    lo: Fraction | None
    hi: Fraction | None
    lo_open: bool = True
    hi_open: bool = True

    def is_empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        if self.lo < self.hi:
            return False
        if self.lo == self.hi:
            return self.lo_open or self.hi_open
        return True

    def intersect(self, other: "Interval") -> "Interval":
        if other.lo is None:
            lo, lo_open = self.lo, self.lo_open
        elif self.lo is None or other.lo > self.lo:
            lo, lo_open = other.lo, other.lo_open
        elif other.lo < self.lo:
            lo, lo_open = self.lo, self.lo_open
        else:
            lo, lo_open = self.lo, self.lo_open or other.lo_open
        if other.hi is None:
            hi, hi_open = self.hi, self.hi_open
        elif self.hi is None or other.hi < self.hi:
            hi, hi_open = other.hi, other.hi_open
        elif other.hi > self.hi:
            hi, hi_open = self.hi, self.hi_open
        else:
            hi, hi_open = self.hi, self.hi_open or other.hi_open
        return Interval(lo, hi, lo_open, hi_open)

    def sample(self) -> Fraction:
        """Some rational inside a nonempty interval."""
        if self.is_empty():
            raise ValueError("empty interval")
        if self.lo is None and self.hi is None:
            return Fraction(0)
        if self.lo is None:
            return self.hi - 1 if self.hi_open else self.hi
        if self.hi is None:
            return self.lo + 1 if self.lo_open else self.lo
        if self.lo == self.hi:
            return self.lo
        return (self.lo + self.hi) / 2


def affine_of(slope: Dyadic | int, intercept: Dyadic | int) -> Affine:
    def frac(v):
        return v.as_fraction() if isinstance(v, Dyadic) else Fraction(v)

    return frac(slope), frac(intercept)


def evaluate_min(affines: Sequence[Affine], r: Fraction) -> Fraction:
    return min(s * r + c for s, c in affines)


def _below_region(f: Affine, g: Affine, allow_equal: bool) -> Interval:
    """The region {r : f(r) < g(r)}, or {r : f(r) <= g(r)} if allow_equal."""
    ds = f[0] - g[0]
    dc = g[1] - f[1]
    # f < g  <=>  ds * r < dc
    if ds == 0:
        if dc > 0 or (allow_equal and dc == 0):
            return Interval(None, None)
        return Interval(Fraction(0), Fraction(0))  # empty
    bound = dc / ds
    if ds > 0:
        return Interval(None, bound, hi_open=not allow_equal)
    return Interval(bound, None, lo_open=not allow_equal)


def min_dominates(
    upper: Sequence[Affine],
    lower: Sequence[Affine],
    domain: Interval,
    strict: bool = False,
) -> Fraction | None:
    """Verify min(upper) >= min(lower) on the domain (> when strict).

    Returns None when the inequality holds everywhere on the domain;
    otherwise some rational r in the domain where it fails.  Exact: the
    failure set is a finite union of rational intervals.
    """
    if not upper or not lower:
        raise ValueError("need at least one affine on each side")
    for f in upper:
        # failure at r  <=>  f(r) < every g(r)   (<= when strict)
        region = domain
        for g in lower:
            region = region.intersect(_below_region(f, g, allow_equal=strict))
            if region.is_empty():
                break
        if not region.is_empty():
            return region.sample()
    return None


def dyadic_in(lo: Fraction, hi: Fraction) -> Dyadic:
    """Some dyadic strictly inside a nonempty open rational interval."""
    if not lo < hi:
        raise ValueError("need lo < hi")
    k = 0
    while Fraction(1, 1 << k) >= hi - lo:
        k += 1
    n = (lo * (1 << k)).__floor__() + 1
    candidate = Fraction(n, 1 << k)
    if candidate <= lo or candidate >= hi:
        k += 1
        n = (lo * (1 << k)).__floor__() + 1
    return Dyadic(n, k)
