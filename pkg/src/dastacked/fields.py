"""Exact scalar fields: the rationals and prime fields F_p.

Rationals are plain :class:`fractions.Fraction` values.  Prime-field
residues are :class:`Residue` instances, which support the same operator
protocol so that the linear algebra and rewriting code never needs to know
which field it runs over.
"""

from __future__ import annotations

from fractions import Fraction


class FieldMismatch(ValueError):
    pass


class Residue:
    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Residue":
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.p)
        return Residue(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Residue(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Residue({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Field:
    """A field descriptor: ``Field.rationals()`` or ``Field.prime(p)``."""

    def __init__(self, p: int | None = None):
        if p is not None:
            if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
                raise ValueError(f"{p} is not prime")
        self.p = p

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value) -> Fraction | Residue:
        """Coerce an int, Fraction or numeric string into the field."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.p is None:
            if isinstance(value, Residue):
                raise FieldMismatch("residue given to the rationals")
            return Fraction(value)
        if isinstance(value, Residue):
            if value.p != self.p:
                raise FieldMismatch(f"F_{value.p} vs F_{self.p}")
            return value
        value = Fraction(value)
        if value.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator {value.denominator} vanishes in F_{self.p}")
        return Residue(value.numerator, self.p) / value.denominator

    def format(self, c) -> str:
        return str(c)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"F{self.p}"

    def describe(self) -> str:
        return "Q" if self.p is None else f"F {self.p}"
