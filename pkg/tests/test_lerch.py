import numpy as np
import pytest

from latsum.errors import DomainError
from latsum.families import one_dim_power, quadratic_power, signed_one_dim_power
from latsum.fourier import fourier_transform
from latsum.hsum import h_sum
from latsum.lerch import extrapolate_to_origin, freg, functional_equation_check, lerch_F, psi, side_a, side_b
from latsum.oracles import direct_lattice_sum
from latsum.polynomials import parse_polynomial
from latsum.families import polynomial_family
from latsum.scalar import root_of_unity
from latsum.tsum import t_sum

ZETA2 = 1.64493406684822643647241516665
PI2_OVER_3 = 3.28986813369645287294483033329


def test_lerch_examples():
    z = root_of_unity([1], 2)
    assert abs(lerch_F(one_dim_power(2), [0.0], z).value + ZETA2) < 1e-9
    x = 0.5
    ref = direct_lattice_sum(lambda p: (-1.0) ** p[:, 0] * np.abs(x + p[:, 0]) ** -2.0, 1, 2.0)
    assert abs(lerch_F(one_dim_power(2), [x], z).value - ref.value) < 1e-9
    p = polynomial_family(parse_polynomial("x0^2", 1))
    assert lerch_F(p, [0.0], z).value == 0


def test_poisson_residual():
    r = freg(one_dim_power(1.7), [0.3], [0.4])
    assert r.side == "both"
    assert r.residual <= 1e-8


def test_origin_is_h_sum():
    r = freg(one_dim_power(2), [0.0], [0.0])
    assert r.side == "h_sum"
    assert abs(r.value - PI2_OVER_3) < 1e-9


def test_side_a_recomposition():
    f = one_dim_power(2)
    y = 0.25
    a = side_a(f, [0.0], [y]).value
    manual = t_sum(f, root_of_unity([1], 4)).value - fourier_transform(f).evaluate([y])
    assert abs(a - manual) < 1e-9


def test_single_side_points():
    f = one_dim_power(1.7)
    assert freg(f, [0.0], [0.3]).side == "a"
    assert freg(f, [0.3], [0.0]).side == "b"
    with pytest.raises(DomainError):
        side_a(f, [0.2], [0.0])
    with pytest.raises(DomainError):
        side_b(f, [0.0], [0.2])
    with pytest.raises(DomainError):
        freg(f, [1.2], [0.1])


@pytest.mark.parametrize("f,x,y", [
    (signed_one_dim_power(0.6), [-0.2], [0.35]),
    (one_dim_power(0.4 + 1j), [0.15], [-0.3]),
    (quadratic_power([[1, 0], [0, 1]], 0.6), [0.2, -0.1], [0.3, 0.25]),
])
def test_poisson_identity_families(f, x, y):
    r = freg(f, x, y, tol=1e-10)
    assert r.residual <= 1e-8


def test_psi():
    assert abs(psi([0.25], [1.0]) - 1j) < 1e-15
    assert abs(psi([0.5, 0.5], [1.0, 1.0]) - 1) < 1e-15


def test_extrapolation_reaches_h_sum():
    f = one_dim_power(1.7)
    value, err = extrapolate_to_origin(f, [0.4])
    assert abs(value - h_sum(f).value) < 1e-4


def test_functional_equation_examples():
    assert functional_equation_check(one_dim_power(0.5)) <= 1e-9
    assert functional_equation_check(one_dim_power(0.3)) <= 1e-7
    assert functional_equation_check(quadratic_power([[1, 0], [0, 1]], 0.6)) <= 1e-6
    assert functional_equation_check(signed_one_dim_power(0.4)) <= 1e-12
