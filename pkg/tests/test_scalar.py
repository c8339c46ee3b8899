from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import residue, valuation
from ultracoalg import (
    DivisionByZeroOrImprecise,
    InsufficientPrecision,
    PadicScalar,
    PrimeMismatch,
    arith,
    eq_to_precision,
    valuation_norm,
)

P = 5
nonzero = st.integers(-10 ** 9, 10 ** 9).filter(bool)
rationals = st.fractions(max_denominator=10 ** 6).filter(bool)


def test_from_int_normalizes():
    x = PadicScalar.from_int(250, P, 10)
    assert (x.valuation, x.unit) == (3, 2)
    assert x.abs_precision == 13


def test_zero_kinds():
    z = PadicScalar.zero(P)
    o = PadicScalar.approx_zero(P, 7)
    assert z.is_exact_zero and z.is_zero and not z.is_approx_zero
    assert o.is_approx_zero and o.is_zero and o.abs_precision == 7
    assert valuation_norm(o) == (7, Fraction(1, 5 ** 7))
    assert valuation_norm(z)[1] == 0


def test_cancellation_leaves_approximate_zero():
    a = PadicScalar.from_rational(Fraction(1, 3), P, 10)
    d = a - a
    assert d.is_approx_zero and d.abs_precision == 10


def test_precision_drops_under_cancellation():
    a = PadicScalar.from_int(1, P, 10)
    b = PadicScalar.from_int(1 + 5 ** 4, P, 10)
    d = b - a
    assert d.valuation == 4 and d.rel_precision == 6


def test_division_by_approximate_zero_raises():
    with pytest.raises(DivisionByZeroOrImprecise):
        PadicScalar.one(P) / PadicScalar.approx_zero(P, 5)
    with pytest.raises(DivisionByZeroOrImprecise):
        PadicScalar.one(P) / PadicScalar.zero(P)


def test_prime_mismatch():
    with pytest.raises(PrimeMismatch):
        PadicScalar.one(5) + PadicScalar.one(7)


def test_eq_to_precision_undecided():
    x = PadicScalar.from_int(1, P, 5)
    with pytest.raises(InsufficientPrecision):
        eq_to_precision(x, x, 8)
    assert eq_to_precision(x, x, 5)
    assert not eq_to_precision(x, PadicScalar.from_int(2, P, 5), 1)


def test_residue_requires_integrality():
    with pytest.raises(ValueError):
        PadicScalar.from_rational(Fraction(1, 5), P).residue(3)


def test_arith_dispatch():
    a, b = PadicScalar.from_int(6, P), PadicScalar.from_int(4, P)
    assert arith("add", a, b) == a + b
    assert arith("div", a, b) == a / b
    with pytest.raises(ValueError):
        arith("pow", a, b)


@given(rationals)
def test_from_rational_matches_oracle(q):
    x = PadicScalar.from_rational(q, P, 20)
    assert x.valuation == valuation(q, P)
    scaled = q / Fraction(P) ** x.valuation
    assert x.unit == residue(scaled, P, 20)


@given(nonzero, nonzero)
def test_product_valuations_add(a, b):
    x, y = PadicScalar.from_int(a, P), PadicScalar.from_int(b, P)
    assert (x * y).valuation == x.valuation + y.valuation
    assert (x * y).norm() == x.norm() * y.norm()


@given(nonzero, nonzero)
def test_ultrametric_inequality(a, b):
    x, y = PadicScalar.from_int(a, P), PadicScalar.from_int(b, P)
    assert (x + y).norm() <= max(x.norm(), y.norm())


@settings(max_examples=50)
@given(rationals, rationals)
def test_field_identities(q, r):
    x, y = PadicScalar.from_rational(q, P, 30), PadicScalar.from_rational(r, P, 30)
    assert eq_to_precision((x * y) / y, x, 20 + x.valuation)
    assert eq_to_precision((x + y) - y, x, min(x.abs_precision, y.abs_precision))


@given(rationals)
def test_serialization_roundtrip(q):
    x = PadicScalar.from_rational(q, P, 12)
    assert PadicScalar.from_dict(x.to_dict()) == x
    assert PadicScalar.parse(str(x)) == x


def test_parse_zero_forms():
    assert PadicScalar.parse("O(5^4)") == PadicScalar.approx_zero(5, 4)
    assert PadicScalar.parse("0", 5).is_exact_zero
    with pytest.raises(ValueError):
        PadicScalar.parse("5^0 * 5 + O(5^3)")


def test_immutable():
    with pytest.raises(AttributeError):
        PadicScalar.one(P).unit = 3
