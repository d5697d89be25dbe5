"""Exact dyadic rationals p / 2**q.

Every distance, norm and scale value in this package is a dyadic
rational, so all arithmetic here is exact integer arithmetic.
"""

from __future__ import annotations

import re
from fractions import Fraction

_FORMAT = re.compile(r"^(-?\d+)(?:/2\^(\d+))?$")


class Dyadic:
    """A rational of the form numerator / 2**exponent.

    Canonical form keeps the numerator odd unless the exponent is 0, so
    equal values have identical (numerator, exponent) pairs.  Instances
    are immutable by convention; all operations return new values.
    """

    __slots__ = ("num", "exp")

    def __init__(self, num: int, exp: int = 0):
        if not isinstance(num, int) or not isinstance(exp, int):
            raise TypeError("Dyadic components must be integers")
        if exp < 0:
            num <<= -exp
            exp = 0
        if num == 0:
            exp = 0
        else:
            while exp > 0 and not num & 1:
                num >>= 1
                exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic values are immutable")

    @classmethod
    def pow2(cls, k: int) -> "Dyadic":
        """The value 2**k (k may be negative)."""
        if k >= 0:
            return cls(1 << k)
        return cls(1, -k)

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Parse the text format: `p/2^q`, or a bare integer."""
        m = _FORMAT.match(text.strip())
        if m is None:
            raise ValueError(f"not a dyadic literal: {text!r}")
        num = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) is not None else 0
        return cls(num, exp)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int):
            return Dyadic(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        q = max(self.exp, o.exp)
        return Dyadic((self.num << (q - self.exp)) + (o.num << (q - o.exp)), q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        q = max(self.exp, o.exp)
        return Dyadic((self.num << (q - self.exp)) - (o.num << (q - o.exp)), q)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Dyadic(-self.num, self.exp)

    def __abs__(self):
        return Dyadic(abs(self.num), self.exp)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Dyadic(self.num * o.num, self.exp + o.exp)

    __rmul__ = __mul__

    # -- comparisons --------------------------------------------------

    def _key_pair(self, o: "Dyadic"):
        q = max(self.exp, o.exp)
        return self.num << (q - self.exp), o.num << (q - o.exp)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.exp == o.exp

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._key_pair(o)
        return a < b

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._key_pair(o)
        return a <= b

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._key_pair(o)
        return a > b

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._key_pair(o)
        return a >= b

    def __hash__(self):
        return hash((self.num, self.exp))

    def __bool__(self):
        return self.num != 0

    def __str__(self):
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/2^{self.exp}"

    def __repr__(self):
        return f"Dyadic({self.num}, {self.exp})"


ZERO = Dyadic(0)
ONE = Dyadic(1)
