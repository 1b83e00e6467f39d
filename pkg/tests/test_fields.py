from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dastacked.fields import Field, FieldMismatch, Residue


def test_rationals_are_fractions():
    Q = Field.rationals()
    assert Q("-2/4") == Fraction(-1, 2)
    assert isinstance(Q(3), Fraction)


def test_prime_field_canonical_residues():
    F = Field.prime(7)
    assert F(-1).v == 6
    assert F("1/2").v == 4
    assert F(3) * F(5) == F(1)
    with pytest.raises(ZeroDivisionError):
        F("1/7")


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        Field.prime(9)


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        Residue(1, 5) + Residue(1, 7)
    with pytest.raises(FieldMismatch):
        Field.rationals()(Residue(1, 5))


@given(st.integers(1, 6), st.integers(-50, 50))
def test_residue_inverse(a, b):
    F = Field.prime(7)
    x = F(a)
    assert x * x.inverse() == F.one
    assert (F(b) / x) * x == F(b)
