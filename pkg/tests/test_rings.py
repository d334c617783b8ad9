from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from germforge.errors import DivisionByZero, MixedRings, PrecisionExhausted, UnsupportedRing
from germforge.rings import QQ, PAdic, PAdicRing, RationalFunctionField, parse_ring, ring_from_descriptor, valuation

Z5 = PAdicRing(5, 20)
rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x.numerator) < 10**6)
residues = st.integers(min_value=0, max_value=5**20 - 1)


def test_rational_sum():
    assert QQ(Fraction(1, 3)) + QQ(Fraction(1, 6)) == Fraction(1, 2)


def test_padic_inverse_of_two():
    R = PAdicRing(5, 4)
    inv = R(1) / R(2)
    # oracle: modular inverse from the standard library
    assert inv.residue() == pow(2, -1, 625) == 313
    assert (inv * 2).residue() == 1
    # 63 is the inverse modulo 5^3 only
    assert PAdicRing(5, 3)(Fraction(1, 2)).residue() == 63


def test_multiplicative_identity():
    x = Z5(1234)
    assert x * 1 == x
    assert QQ(Fraction(-7, 3)) * 1 == Fraction(-7, 3)


@pytest.mark.parametrize(
    "ring,x,expected",
    [
        (QQ, Fraction(-3, 2), Fraction(3, 2)),
        (PAdicRing(3, 10), 9, Fraction(1, 9)),
        (PAdicRing(5, 20), (-3) ** 7, Fraction(1)),
        (PAdicRing(5, 20), Fraction(1, 25), Fraction(25)),
    ],
)
def test_abs_value(ring, x, expected):
    assert ring.abs_value(ring(x)) == expected


def test_ratfunc_has_no_abs():
    K = RationalFunctionField(["c1"])
    with pytest.raises(UnsupportedRing):
        K.abs_value(K.gen("c1"))


def test_division_errors():
    with pytest.raises(PrecisionExhausted):
        Z5(0).inverse()
    x = Z5(1) / Z5(5**12)  # certified only modulo 5^-4
    with pytest.raises(PrecisionExhausted):
        x - x
    K = RationalFunctionField(["c"])
    with pytest.raises(DivisionByZero):
        K.specialize(1 / K.gen("c"), {"c": 0})


def test_mixed_rings():
    with pytest.raises(MixedRings):
        Z5(1) + PAdicRing(3, 5)(1)
    with pytest.raises(MixedRings):
        QQ(Z5(2))


def test_precision_loss_is_tracked():
    x = Z5(5)  # valuation 1
    y = Z5(1) / x
    assert y.val == -1 and y.prec == 18
    assert (y * x) == 1
    # a sum keeps the smaller precision
    assert (PAdicRing(5, 3)(1) + Z5(1)).prec == 3


def test_padic_json_round_trip():
    for x in (Z5(0), Z5(7), Z5(Fraction(1, 25)), Z5(-1)):
        obj = Z5.to_json(x)
        assert Z5.from_json(obj) == x
    assert Z5.to_json(Z5(7))["digits"] == "21" + "0" * 18
    assert Z5.to_json(Z5(-1))["digits"] == "4" * 20


def test_ratfunc_json_round_trip():
    K = RationalFunctionField(["c1", "c2"])
    c1, c2 = K.gens
    x = (2 * c1**2 - c2) / (3 * c1 + 6)
    assert K.from_json(K.to_json(x)) == x
    assert K.specialize(x, {"c1": 1, "c2": 1}) == Fraction(1, 9)


def test_parse_ring_and_descriptor():
    for text in ("QQ", "padic:7:9", "ratfunc:a,b"):
        R = parse_ring(text)
        assert ring_from_descriptor(R.descriptor()) == R
    with pytest.raises(ValueError):
        parse_ring("reals")
    with pytest.raises(ValueError):
        PAdicRing(6, 5)


def test_valuation():
    assert valuation(250, 5) == 3
    with pytest.raises(ValueError):
        valuation(0, 5)


@given(residues, residues, residues)
def test_padic_associativity(a, b, c):
    x, y, z = Z5(a), Z5(b), Z5(c)
    assert (x * y) * z == x * (y * z)
    assert (x + y) + z == x + (y + z)


@given(residues, residues)
def test_padic_ultrametric(a, b):
    x, y = Z5(a), Z5(b)
    assert Z5.abs_value(x + y) <= max(Z5.abs_value(x), Z5.abs_value(y))


@given(rationals, rationals)
def test_abs_multiplicative(a, b):
    assert QQ.abs_value(a * b) == QQ.abs_value(a) * QQ.abs_value(b)
    if a and b:
        R = PAdicRing(5, 30)
        assert R.abs_value(R(a) * R(b)) == R.abs_value(R(a)) * R.abs_value(R(b))


@given(rationals)
def test_padic_agrees_with_rationals(a):
    # reduction mod p^M commutes with field operations on p-integral inputs
    R = PAdicRing(5, 12)
    if a.denominator % 5 == 0:
        return
    x = R(a)
    assert (x * R(a.denominator)).residue() == a.numerator % 5**12


def test_padic_is_unhashable_and_immutable():
    x = Z5(3)
    with pytest.raises(TypeError):
        hash(x)
    with pytest.raises(AttributeError):
        x.val = 2
    assert isinstance(x, PAdic)
