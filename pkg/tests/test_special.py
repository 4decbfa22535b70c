import math
from fractions import Fraction

import pytest

from latsum.errors import DomainError, NotPositiveDefinite, PoleDetected, PoleParameter
from latsum.oracles import direct_lattice_sum, power_sum_integrand
from latsum.polynomials import parse_polynomial
from latsum.special import SpecialProblem, binomial_coefficients, compute_exclusion_set, special_G, special_G_limit

EPSTEIN_2 = 6.02681203969194012354626019273  # 4 zeta(2) beta(2)
PI_OVER_4_VALUE = -1.21460183660255169038433915418  # -2 + pi/4


def P(text, k=2):
    return parse_polynomial(text, k)


def test_exclusion_sets():
    assert compute_exclusion_set(P("x0^2+x1^2-x0")) == {(0, 0), (1, 0)}
    assert compute_exclusion_set(P("x0^2+x1^2+1")) == {(0, 0)}
    expected = {(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)}
    assert compute_exclusion_set(P("x0^4+x1^4-3")) == expected
    with pytest.raises(NotPositiveDefinite):
        compute_exclusion_set(P("x0^2-x1^2"))
    with pytest.raises(NotPositiveDefinite):
        compute_exclusion_set(P("x0^3+x1^2"))


def test_binomial_coefficients():
    assert binomial_coefficients(1, 5) == [1] * 5
    assert binomial_coefficients(2, 5) == [1, 2, 3, 4, 5]
    assert binomial_coefficients(Fraction(1, 2), 3)[2] == Fraction(3, 8)


def test_homogeneous_case():
    prob = SpecialProblem(P("x0^2+x1^2"))
    assert abs(special_G(prob, 2).value - EPSTEIN_2) < 1e-8


def test_inhomogeneous_against_direct_sum():
    prob = SpecialProblem(P("x0^2+x1^2-x0"), [(0, 0), (1, 0)])
    ref = direct_lattice_sum(power_sum_integrand(prob.P.evaluate_array, 2), 2, 4.0, prob.excluded)
    assert abs(special_G(prob, 2).value - ref.value) < 1e-8


def test_integer_values():
    prob = SpecialProblem(P("x0^2+x1^2-x0"), [(0, 0), (1, 0)])
    assert special_G(prob, 0).value == -2
    assert special_G(prob, -1).value == 0
    prob = SpecialProblem(P("x0^2+x1^2+1"))
    assert special_G(prob, -2).value == -1


def test_excluded_set_must_cover_nonpositive_points():
    with pytest.raises(DomainError):
        SpecialProblem(P("x0^2+x1^2-x0"), [(0, 0)])


def test_pi_over_four():
    prob = SpecialProblem(P("x0^2+x1^2-x0"), [(0, 0), (1, 0)])
    r = special_G_limit(prob, 0)
    assert abs(r.value - PI_OVER_4_VALUE) < 1e-4
    # the h-sum value at 0 differs from the continuation by pi/4
    assert abs(r.value - special_G(prob, 0).value - math.pi / 4) < 1e-4


def test_pole_detection():
    prob = SpecialProblem(P("x0^2+x1^2"))
    with pytest.raises(PoleDetected) as info:
        special_G_limit(prob, 1)
    assert abs(info.value.residue - math.pi) < 2e-2
    with pytest.raises(PoleParameter):
        special_G(prob, 1)


def test_quartic_holomorphic_across_exceptional_set():
    prob = SpecialProblem(P("x0^4+x1^4"))
    assert prob.in_exceptional_set(-0.5)
    lim = special_G_limit(prob, -0.5).value
    assert abs(lim - special_G(prob, -0.5).value) < 1e-5
    # s = k/d is the one genuine pole
    with pytest.raises(PoleDetected):
        special_G_limit(prob, 0.5)


def test_one_dimensional_continuation():
    prob = SpecialProblem(P("x0^2+x0+1", 1))
    for s0 in (0, -1):
        lim = special_G_limit(prob, s0).value
        assert abs(lim - special_G(prob, s0).value) < 1e-5
