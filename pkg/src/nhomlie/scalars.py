"""Exact scalars.

Everything in the package works over ``fractions.Fraction``.  Algorithms only
use the field operations together with the integer literals 0 and 1, so any
type that mixes with ``int`` the same way can stand in for ``Fraction``.
``GF`` builds such a type for a prime field; it exists for randomized stress
tests and is never used by the CLI.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import InputError


def parse_scalar(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.

    Floats are refused so that no binary rounding can leak in.
    """
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if not isinstance(value, str):
        raise InputError(f"not a rational: {value!r}")
    text = value.strip()
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise InputError(f"not a rational: {value!r}") from None
    if q == 0:
        raise InputError(f"zero denominator in {value!r}")
    return Fraction(p, q)


def format_scalar(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@lru_cache(maxsize=None)
def GF(p: int) -> type:
    """Return the element type of the prime field with ``p`` elements."""
    if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")

    class ModP:
        __slots__ = ("v",)
        modulus = p

        def __init__(self, v=0):
            if isinstance(v, Fraction):
                v = v.numerator * pow(v.denominator, -1, p)
            elif isinstance(v, ModP):
                v = v.v
            self.v = int(v) % p

        @staticmethod
        def _lift(other):
            if isinstance(other, ModP):
                return other
            if isinstance(other, (int, Fraction)):
                return ModP(other)
            return None

        def __add__(self, other):
            o = self._lift(other)
            return NotImplemented if o is None else ModP(self.v + o.v)

        __radd__ = __add__

        def __sub__(self, other):
            o = self._lift(other)
            return NotImplemented if o is None else ModP(self.v - o.v)

        def __rsub__(self, other):
            o = self._lift(other)
            return NotImplemented if o is None else ModP(o.v - self.v)

        def __mul__(self, other):
            o = self._lift(other)
            return NotImplemented if o is None else ModP(self.v * o.v)

        __rmul__ = __mul__

        def __truediv__(self, other):
            o = self._lift(other)
            if o is None:
                return NotImplemented
            if o.v == 0:
                raise ZeroDivisionError("division by zero in GF(%d)" % p)
            return ModP(self.v * pow(o.v, -1, p))

        def __rtruediv__(self, other):
            o = self._lift(other)
            return NotImplemented if o is None else o / self

        def __neg__(self):
            return ModP(-self.v)

        def __pos__(self):
            return self

        def __pow__(self, k: int):
            if k < 0:
                return ModP(pow(pow(self.v, -1, p), -k, p))
            return ModP(pow(self.v, k, p))

        def __eq__(self, other):
            o = self._lift(other)
            return NotImplemented if o is None else self.v == o.v

        def __hash__(self):
            return hash((p, self.v))

        def __bool__(self):
            return self.v != 0

        def __repr__(self):
            return f"GF({p})({self.v})"

    ModP.__name__ = f"GF{p}"
    return ModP
