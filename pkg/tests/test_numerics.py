import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bindilog.errors import UndefinedConditionError
from bindilog.numerics import EXTENDED, FLOAT64, Extended, KahanAccumulator, kahan_sum


def exact_sum(terms):
    return sum((Fraction(t) for t in terms), Fraction(0))


def test_single_term():
    acc = KahanAccumulator().add(1.0)
    assert acc.value == 1.0
    assert acc.abs_total == 1.0
    assert acc.count == 1


def test_compensation_recovers_cancelled_bits():
    terms = [1.0, 1e-17, -1.0]
    assert sum(terms) == 0.0
    acc = kahan_sum(terms)
    assert acc.value == 1e-17
    assert Fraction(acc.value) == Fraction(1e-17) == exact_sum(terms)


def test_full_cancellation():
    acc = kahan_sum([1.0, -1.0, 1.0, -1.0])
    assert acc.value == 0
    assert acc.abs_total == 4
    with pytest.raises(UndefinedConditionError):
        acc.condition_number()
    with pytest.raises(UndefinedConditionError):
        acc.error_bound()


@pytest.mark.parametrize("terms, cond", [([1, 2, 3], 1.0), ([3, -1], 2.0)])
def test_condition_number_examples(terms, cond):
    assert kahan_sum([float(t) for t in terms]).condition_number() == cond


def test_relative_bound_binary64():
    assert kahan_sum([1.0, 2.0]).relative_error_bound() == 2 * 2.0**-53
    acc = kahan_sum([3.0, -1.0, -0.5])  # cond 4.5 / 1.5 = 3
    assert acc.relative_error_bound() == 6 * 2.0**-53


def test_relative_bound_three_halves():
    acc = kahan_sum([1.25, -0.25])  # sum 1, abs 1.5
    assert acc.condition_number() == 1.5
    assert acc.relative_error_bound() == 3 * 2.0**-53


def test_relative_bound_extended():
    prec = Extended(bits=96)
    acc = kahan_sum([prec.scalar(1), prec.scalar(2)], prec)
    assert acc.relative_error_bound() == 2 * prec.eps
    assert prec.eps == mpmath.ldexp(1, -96)


def test_complex_terms_are_compensated_componentwise():
    terms = [1 + 1j, 1e-17 - 1e-17j, -1 - 1j]
    acc = kahan_sum(terms)
    assert acc.value == complex(1e-17, -1e-17)


def test_extended_compensation():
    e = EXTENDED
    big = e.scalar(1)
    small = mpmath.ldexp(1, -130)
    acc = kahan_sum([big, e.scalar(small), -big], e)
    assert acc.value == small


def test_signed_zero_branch_behaviour():
    above = FLOAT64.log(complex(-1.0, 0.0))
    below = FLOAT64.log(complex(-1.0, -0.0))
    assert above.imag == math.pi
    assert below.imag == -math.pi
    assert above.imag - below.imag == 2 * math.pi


def test_abs_is_zero_only_at_zero():
    assert FLOAT64.abs(0.0) == 0
    assert FLOAT64.abs(complex(0.0, -0.0)) == 0
    assert FLOAT64.abs(5e-324) > 0
    assert EXTENDED.abs(EXTENDED.scalar(-2)) == 2


def test_scalar_coercion():
    assert isinstance(FLOAT64.scalar(np.float64(1.5)), float)
    assert isinstance(FLOAT64.scalar(np.complex128(1 + 2j)), complex)
    assert FLOAT64.is_complex(FLOAT64.scalar(1j))
    z = EXTENDED.scalar(0.5 - 0.25j)
    assert EXTENDED.is_complex(z) and z.imag == -0.25
    assert EXTENDED.scalar(Fraction(1, 4)) == 0.25


def test_close():
    assert FLOAT64.close(1.0, 1.0 + 2.0**-52)
    assert not FLOAT64.close(1.0, 1.0 + 1e-14)


mixed_terms = st.lists(
    st.tuples(
        st.floats(min_value=1.0, max_value=10.0),
        st.integers(min_value=-5, max_value=5),
        st.booleans(),
    ).map(lambda t: (t[0] * 10.0 ** t[1]) * (-1 if t[2] else 1)),
    min_size=2,
    max_size=60,
)


@settings(max_examples=300, deadline=None)
@given(mixed_terms)
def test_compensated_never_worse_than_naive(terms):
    reference = exact_sum(terms)
    naive = 0.0
    for t in terms:
        naive += t
    comp = kahan_sum(terms).value
    assert abs(Fraction(comp) - reference) <= abs(Fraction(naive) - reference)


@settings(max_examples=300, deadline=None)
@given(mixed_terms, st.integers(min_value=-60, max_value=60), st.booleans())
def test_condition_number_scale_invariant(terms, exponent, negate):
    # power-of-two scalars scale every term exactly
    scale = (-1 if negate else 1) * 2.0**exponent
    acc = kahan_sum(terms)
    if acc.value == 0:
        return
    scaled = kahan_sum([t * scale for t in terms])
    assert scaled.condition_number() == pytest.approx(acc.condition_number(), rel=4 * 2.0**-52)


@settings(max_examples=300, deadline=None)
@given(mixed_terms, st.floats(min_value=1e-3, max_value=1e3), st.booleans())
def test_condition_number_scale_invariant_inexact_scalar(terms, scale, negate):
    # rounding t * scale moves each term by half an ulp, which the sum amplifies by kappa;
    # the uncompensated |t| tally adds up to n ulps more
    scale = -scale if negate else scale
    acc = kahan_sum(terms)
    if acc.value == 0:
        return
    scaled = kahan_sum([t * scale for t in terms])
    kappa = acc.condition_number()
    tol = 2 * 2.0**-53 * (len(terms) + kappa + 4)
    assert scaled.condition_number() == pytest.approx(kappa, rel=tol)


@settings(max_examples=300, deadline=None)
@given(mixed_terms)
def test_error_bound_covers_actual_error(terms):
    acc = kahan_sum(terms)
    if acc.value == 0:
        return
    assert abs(Fraction(acc.value) - exact_sum(terms)) <= Fraction(acc.error_bound())


def test_random_lists_against_extended_reference():
    rng = np.random.default_rng(7)
    ctx = mpmath.MPContext()
    ctx.prec = 300
    for _ in range(200):
        n = rng.integers(2, 80)
        terms = (rng.uniform(1, 10, n) * 10.0 ** rng.integers(-5, 6, n) * rng.choice([-1, 1], n)).tolist()
        ref = ctx.fsum(terms)
        naive = 0.0
        for t in terms:
            naive += t
        acc = kahan_sum(terms)
        assert abs(acc.value - ref) <= abs(naive - ref)
        if acc.value:
            assert abs(acc.value - ref) <= acc.error_bound()
