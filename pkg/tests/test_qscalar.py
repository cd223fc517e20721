from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seamrep.qscalar import (
    GENERIC,
    DenominatorVanishes,
    GenericScalar,
    LaurentPoly,
    UnityOrder,
    cyclotomic_coeffs,
    qfact,
    qnum,
    qnum_poly,
    qnum_pretty,
    root_backend,
    scalar_from_json,
    scalar_to_json,
    specialize,
)


def test_qnum_one_is_one():
    assert qnum(1) == GENERIC.one()


def test_qnum_two_is_beta():
    assert qnum(2) == GENERIC.from_laurent(LaurentPoly({1: 1, -1: 1}))
    assert qnum(2) == GENERIC.beta()


def test_qnum_negative_mirror():
    for m in range(0, 7):
        assert qnum(-m) == -qnum(m)


def test_qnum_values_at_order_six():
    b = root_backend(6)
    assert qnum(2, b) == b.one()
    assert qnum(3, b).is_zero()
    assert qnum(4, b) == b.from_int(-1)


def test_qnum_vanishing_at_order_three():
    assert qnum(3, root_backend(3)).is_zero()


def test_qfact_empty_product():
    assert qfact(0) == GENERIC.one()


def test_qfact_unrolled():
    assert qfact(3) == qnum(1) * qnum(2) * qnum(3)


def test_qfact_vanishes_at_order_six():
    assert qfact(3, root_backend(6)).is_zero()


def test_specialize_beta_at_order_three():
    # oracle: x + x^2 mod x^2 + x + 1 is -1
    b = root_backend(3)
    assert specialize(GENERIC.beta(), b) == b.from_int(-1)


def test_specialize_ratio_at_order_six():
    b = root_backend(6)
    assert specialize(qnum(3) / qnum(2), b).is_zero()


def test_specialize_vanishing_denominator():
    with pytest.raises(DenominatorVanishes):
        specialize(GENERIC.one() / qnum(3), root_backend(6))


def test_qnum_times_q_minus_qinv():
    q_minus = LaurentPoly({1: 1, -1: -1})
    for m in range(-8, 9):
        lhs = qnum_poly(m) * q_minus
        rhs = LaurentPoly({m: 1, -m: -1}) if m else LaurentPoly.zero()
        assert lhs == rhs


@pytest.mark.parametrize("N", range(3, 15))
def test_root_vanishing_pattern(N):
    b = root_backend(N)
    ell = b.order.ell
    for m in range(1, 4 * ell + 1):
        assert qnum(m, b).is_zero() == (m % ell == 0)


def test_critical_ratio_never_vanishes():
    # [ (r+r')l ] / [ r'l ] specializes to something nonzero
    for N in range(3, 11):
        b = root_backend(N)
        ell = b.order.ell
        for r in range(1, 3):
            for rp in range(1, 3):
                ratio = qnum((r + rp) * ell) / qnum(rp * ell)
                assert not specialize(ratio, b).is_zero()


def test_order_requires_n_at_least_three():
    with pytest.raises(ValueError):
        UnityOrder(2)
    with pytest.raises(ValueError):
        UnityOrder(1)


def test_unity_order_ell():
    assert UnityOrder(6).ell == 3
    assert UnityOrder(3).ell == 3
    assert UnityOrder(8).ell == 4
    assert UnityOrder(7).ell == 7


def test_cyclotomic_polys():
    assert cyclotomic_coeffs(1) == (-1, 1)
    assert cyclotomic_coeffs(2) == (1, 1)
    assert cyclotomic_coeffs(4) == (1, 0, 1)
    assert cyclotomic_coeffs(6) == (1, -1, 1)
    assert cyclotomic_coeffs(12) == (1, 0, -1, 0, 1)


def _scalars(draw_num, draw_den):
    num = LaurentPoly({e: c for e, c in draw_num})
    den = LaurentPoly({e: c for e, c in draw_den})
    if den.is_zero():
        den = LaurentPoly.one()
    return GenericScalar(num, den)


coeff = st.integers(min_value=-4, max_value=4).map(Fraction)
poly_items = st.lists(
    st.tuples(st.integers(min_value=-3, max_value=3), coeff), max_size=4
)


@given(poly_items, poly_items, poly_items)
@settings(max_examples=60, deadline=None)
def test_generic_field_axioms(a_items, b_items, c_items):
    a = _scalars(a_items, [(0, Fraction(1))])
    b = _scalars(b_items, [(0, Fraction(1))])
    c = _scalars(c_items, [(0, Fraction(1))])
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert a * a.inverse() == GENERIC.one()


@given(poly_items, poly_items)
@settings(max_examples=60, deadline=None)
def test_fraction_normal_form_is_canonical(n_items, d_items):
    num = LaurentPoly({e: c for e, c in n_items})
    den = LaurentPoly({e: c for e, c in d_items})
    if den.is_zero():
        den = LaurentPoly.one()
    a = GenericScalar(num, den)
    scale = LaurentPoly({2: Fraction(3), -1: Fraction(-7)})
    b = GenericScalar(num * scale, den * scale)
    assert a == b
    assert hash(a) == hash(b)


def test_root_field_axioms():
    b = root_backend(12)
    x = qnum(5, b)
    y = qnum(7, b)
    z = b.from_int(3) + b.zeta_power(2)
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert not x.is_zero()
    assert x * x.inverse() == b.one()


def test_scalar_json_round_trip():
    vals = [
        qnum(3) / qnum(2),
        GENERIC.from_fraction(Fraction(-7, 3)),
        GENERIC.zero(),
        qnum(5, root_backend(8)),
        root_backend(5).zeta_power(3),
    ]
    for v in vals:
        assert scalar_from_json(scalar_to_json(v)) == v


def test_qnum_pretty():
    assert qnum_pretty(qnum(3) / qnum(2)) == "[3]/[2]"
    assert qnum_pretty(qnum(2) * qnum(2)) == "[2]^2"
    assert qnum_pretty(GENERIC.one()) == "1"
    assert qnum_pretty(GENERIC.zero()) == "0"
    assert qnum_pretty(-qnum(5)) == "-[5]"
    assert qnum_pretty(qnum(4) / qnum(2)) == "[4]/[2]"
    assert qnum_pretty(GENERIC.from_fraction(Fraction(3, 2))) == "3/2"
