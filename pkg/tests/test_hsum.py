import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from latsum.errors import NotHSummable
from latsum.families import (diagonal_even_power, one_dim_power, polynomial_family, quadratic_power,
                             signed_one_dim_power)
from latsum.hsum import h_sum, h_sum_polynomial, h_sum_translated, is_h_summable
from latsum.oracles import direct_lattice_sum, euler_maclaurin_zeta, hurwitz_zeta
from latsum.polynomials import parse_polynomial
from latsum.scalar import root_of_unity
from latsum.tsum import t_sum

PI2 = 9.86960440108935861883449099988
ZETA2 = 1.64493406684822643647241516665
# zeta_H(2, 1/3) + zeta_H(2, 2/3), 30-digit reference
HURWITZ_THIRDS = 13.1594725347858114917793213332


def test_examples():
    assert abs(h_sum(one_dim_power(2)).value - 2 * ZETA2) < 1e-9
    assert abs(h_sum(one_dim_power(-1)).value + 1 / 6) < 1e-10
    for s in (0.3, 2, -1.5 + 4j):
        assert h_sum(signed_one_dim_power(s)).value == 0


def test_polynomial_examples():
    assert h_sum_polynomial(polynomial_family(parse_polynomial("x0^2", 1))).value == 0
    assert h_sum(polynomial_family(parse_polynomial("1", 1))).value == -1
    cube = polynomial_family(parse_polynomial("x0^3", 1))
    F = [(0,), (2,), (-2,), (3,)]
    assert h_sum_polynomial(cube, F).value == -27


def test_truth_table_examples():
    assert not is_h_summable(1, 1, 1, "lattice")
    assert is_h_summable(1, 1, -1, "lattice")
    assert not is_h_summable(2, 1, -1, "H-group")


def test_refuses_non_summable():
    with pytest.raises(NotHSummable):
        h_sum(one_dim_power(1))
    with pytest.raises(NotHSummable):
        h_sum(quadratic_power([[1, 0], [0, 1]], 1))


@settings(max_examples=25, deadline=None)
@given(st.floats(-3.0, 4.0).filter(lambda s: abs(s - 1) > 0.15), st.floats(-2, 2))
def test_modulus_independence(re, im):
    f = one_dim_power(complex(re, im))
    a = h_sum(f, modulus=2, min_gap=1e-2)
    b = h_sum(f, modulus=3, min_gap=1e-2)
    assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate + 1e-12


def test_scaling_covariance_from_t_sums():
    # sum over lambda^N = 1 of F_f(0, lambda) equals N^(k-s) times the h-sum
    for f, N in ((one_dim_power(0.4), 3), (quadratic_power([[2, 1], [1, 2]], 0.8), 2)):
        h = h_sum(f, tol=1e-11).value
        total = h
        for idx in np.ndindex(*([N] * f.k)):
            if any(idx):
                total += t_sum(f, root_of_unity(idx, N), tol=1e-11).value
        assert abs(total - N ** (f.k - f.s) * h) < 1e-9


def test_agrees_with_absolute_convergence():
    f = quadratic_power([[2, 1], [1, 2]], 1.5)
    ref = direct_lattice_sum(f.evaluate_array, 2, 3.0)
    assert abs(h_sum(f).value - ref.value) < 1e-8
    assert abs(h_sum(one_dim_power(3)).value - 2 * euler_maclaurin_zeta(3).value) < 1e-9


def test_extra_exclusions():
    f = one_dim_power(-0.5)
    F = [(0,), (1,), (-3,)]
    assert abs(h_sum(f, F).value - (h_sum(f).value - 1 - 3**0.5)) < 1e-10


def test_translated_examples():
    assert abs(h_sum_translated(one_dim_power(2), [0.5], excluded=()).value - PI2) < 1e-8
    r = h_sum_translated(one_dim_power(2), [1 / 3], excluded=())
    assert abs(r.value - HURWITZ_THIRDS) < 1e-8
    ref = hurwitz_zeta(2, 1 / 3).value + hurwitz_zeta(2, 2 / 3).value
    assert abs(r.value - ref) < 1e-8


def test_translated_two_dimensional():
    f = quadratic_power([[1, 0], [0, 1]], 1.5)
    x = np.array([0.0, 0.3])
    r = h_sum_translated(f, x, excluded=())
    ref = direct_lattice_sum(lambda p: f.evaluate_array(p + x), 2, 3.0, excluded=())
    assert abs(r.value - ref.value) < 1e-8


def test_translated_continues_analytically():
    # below the convergence line: value matches the Hurwitz continuation
    for s in (0.5, -1.5, 0.3 + 2j):
        x = 0.25
        r = h_sum_translated(one_dim_power(s), [x], excluded=())
        ref = hurwitz_zeta(s, x).value + hurwitz_zeta(s, 1 - x).value
        assert abs(r.value - ref) < 1e-8


def test_translated_integer_offset_shifts_exclusions():
    f = one_dim_power(2)
    a = h_sum_translated(f, [1.0], excluded=[(-1,)])
    assert abs(a.value - 2 * ZETA2) < 1e-9


def test_quartic_form_modulus_independence():
    f = diagonal_even_power(2, 2, 0.9)
    a = h_sum(f, modulus=2)
    b = h_sum(f, modulus=3)
    assert abs(a.value - b.value) < 1e-8
