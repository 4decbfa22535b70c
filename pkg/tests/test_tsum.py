from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from latsum.errors import ConditioningError, DomainError, NotTSummable, TruncationBudgetExceeded
from latsum.families import one_dim_power, polynomial_family, quadratic_power, signed_one_dim_power
from latsum.oracles import eta
from latsum.polynomials import parse_polynomial
from latsum.scalar import TorusPoint, root_of_unity
from latsum.tsum import finite_difference, t_sum, t_sum_periodic, t_sum_sequence

# Reference values frozen from 30-digit evaluations.
ZETA2 = 1.64493406684822643647241516665
CATALAN = 0.915965594177219015054603514932
# sum_{n != 0} e(n/3) |1/4 + n|^(-1/2), by Abel-type summation
SHIFTED_THIRD = complex(-1.09560520703908027092707112483, -0.160594385943307337456540238469)


def test_finite_difference_examples():
    sq = lambda m: m[0] ** 2
    for n in range(-5, 6):
        assert finite_difference(sq, 0, 3, (n,)) == 0
    assert finite_difference(lambda m: abs(m[0]), 0, 1, (1,), excluded=[(0,)]) == 1
    inv = lambda m: m[0] ** -2.0
    assert abs(finite_difference(inv, 0, 2, (5,)) - (1 / 25 - 2 / 16 + 1 / 9)) < 1e-15


def test_alternating_examples():
    z = root_of_unity([1], 2)
    r = t_sum(one_dim_power(2), z)
    assert abs(r.value + ZETA2) < 1e-9
    assert abs(t_sum(one_dim_power(-1), z).value + 0.5) < 1e-12
    r = t_sum(polynomial_family(parse_polynomial("x0^2", 1)), z, excluded=())
    assert r.value == 0 and r.error_estimate == 0


def test_error_estimate_is_honest():
    z = root_of_unity([1], 2)
    for s in (2, 0.5, -1.5 + 2j, -3.2 + 0.1j):
        r = t_sum(one_dim_power(s), z, tol=1e-10)
        ref = -2 * eta(s).value
        assert abs(r.value - ref) <= r.error_estimate + 1e-12
        assert r.error_estimate <= 1e-9


def test_shifted_series():
    r = t_sum(one_dim_power(0.5), root_of_unity([1], 3), offset=[0.25])
    assert abs(r.value - SHIFTED_THIRD) < 1e-9
    # x = 1/2, z = -1: the terms n and -1-n cancel, leaving minus the excluded n = 0 term
    assert abs(t_sum(one_dim_power(2), root_of_unity([1], 2), offset=[0.5]).value + 4) < 1e-10


def test_errors():
    with pytest.raises(NotTSummable):
        t_sum(one_dim_power(2), root_of_unity([0], 2))
    with pytest.raises(ConditioningError):
        t_sum(one_dim_power(2), TorusPoint((Fraction(1, 10**5),)))
    with pytest.raises(DomainError):
        t_sum(one_dim_power(2), root_of_unity([1], 2), offset=[1.5])
    with pytest.raises(DomainError):
        t_sum(one_dim_power(2), root_of_unity([1], 2), excluded=())
    with pytest.raises(TruncationBudgetExceeded) as info:
        t_sum(one_dim_power(2), root_of_unity([1], 2), tol=1e-14, max_points=200)
    assert info.value.partial is not None


def test_periodic_weights():
    b = [1, -1]
    assert abs(t_sum_periodic(one_dim_power(2), b).value + ZETA2) < 1e-9
    assert t_sum_periodic(one_dim_power(2), [0, 0, 0]).value == 0
    chi4 = [0, 1, 0, -1]
    assert abs(t_sum_periodic(signed_one_dim_power(2), chi4).value - 2 * CATALAN) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.floats(-2.5, 3.0), st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(2, 5), Fraction(5, 6)]),
       st.floats(-0.45, 0.45))
def test_order_independence(s, phase, x):
    f = one_dim_power(s)
    z = TorusPoint((phase,))
    a = t_sum(f, z, offset=[x], tol=1e-11)
    if "order" not in a.method:  # exact polynomial path
        return
    b = t_sum(f, z, offset=[x], tol=1e-11, order=a.method["order"] + 2)
    assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate + 1e-13


def test_axis_independence_in_two_dimensions():
    f = quadratic_power([[1, 0], [0, 1]], 0.6)
    z = root_of_unity([1, 1], 3)
    a = t_sum(f, z, axes=[0], tol=1e-9)
    b = t_sum(f, z, axes=[1], tol=1e-9)
    c = t_sum(f, z, tol=1e-9)
    assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate
    assert abs(a.value - c.value) <= a.error_estimate + c.error_estimate
    with pytest.raises(NotTSummable):
        t_sum(f, root_of_unity([1, 0], 3), axes=[1])


def test_convolution_identity():
    s = 0.5
    f = one_dim_power(s)
    z = root_of_unity([1], 3)
    shifts, weights = (0, 1, -2), (2.0, -0.5, 1.25)

    def a(pts):
        n = pts[..., 0]
        safe = np.where(n == 0, 1, n).astype(float)
        return np.where(n == 0, 0, f.evaluate_array(safe[..., None]))

    def ca(pts):
        return sum(c * z.power((-m,)) * a(pts - m) for m, c in zip(shifts, weights))

    base = t_sum_sequence(a, z, 1, -s, tol=1e-11)
    conv = t_sum_sequence(ca, z, 1, -s, tol=1e-11, reach=2)
    assert abs(conv.value - sum(weights) * base.value) < 1e-9
    assert abs(base.value - t_sum(f, z, tol=1e-11).value) < 1e-10


def test_polynomial_vanishing_any_root():
    p = polynomial_family(parse_polynomial("x0^3", 1))
    for den in (2, 3, 7):
        r = t_sum(p, root_of_unity([1], den), excluded=[(0,), (2,)])
        assert abs(r.value + 8 * root_of_unity([1], den).power((2,))) < 1e-12


def test_continuity_in_phase():
    from latsum.scalar import TorusPoint
    base = t_sum(one_dim_power(-1.5), TorusPoint((1 / 3,))).value
    gaps = [abs(t_sum(one_dim_power(-1.5), TorusPoint((1 / 3 + h,))).value - base) for h in (1e-4, 1e-6, 1e-8)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-6
