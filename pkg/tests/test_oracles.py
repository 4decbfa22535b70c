import pytest

from latsum.errors import DomainError, OracleFailure, PoleError
from latsum.oracles import (dirichlet_beta, direct_lattice_sum, euler_maclaurin_zeta, eta, hurwitz_zeta,
                            power_sum_integrand, reflection_residual)

ZETA2 = 1.64493406684822643647241516665
CATALAN = 0.915965594177219015054603514932
EPSTEIN_2 = 6.02681203969194012354626019273
ZETA_06 = -1.95266144822400059334454239634
BETA_06 = 0.694887059108900917269838886548
ETA_05_3I = complex(0.997091432527484834123972448231, 0.52479272474703985505938617841)


def test_zeta_examples():
    assert abs(euler_maclaurin_zeta(2).value - ZETA2) < 1e-11
    assert abs(euler_maclaurin_zeta(-1).value + 1 / 12) < 1e-11
    assert abs(euler_maclaurin_zeta(0.6).value - ZETA_06) < 1e-11
    assert abs(dirichlet_beta(2).value - CATALAN) < 1e-11
    assert abs(dirichlet_beta(0.6).value - BETA_06) < 1e-11
    assert abs(eta(0.5 + 3j).value - ETA_05_3I) < 1e-11


def test_accuracy_claims_hold():
    for s in (2, 0.5, -1.5, -7.3, 0.5 + 14j, -12):
        r = euler_maclaurin_zeta(s)
        other = hurwitz_zeta(s, 1.0)
        assert r.accuracy >= 0 and abs(r.value - other.value) <= r.accuracy + 1e-15


def test_errors():
    with pytest.raises(PoleError):
        euler_maclaurin_zeta(1)
    with pytest.raises(DomainError):
        hurwitz_zeta(2, 1.5)
    with pytest.raises(OracleFailure):
        direct_lattice_sum(lambda p: 1 / abs(p[:, 0]), 1, 1.0)


def test_direct_sums():
    r = direct_lattice_sum(lambda p: p[:, 0] ** -2.0, 1, 2.0)
    assert abs(r.value - 2 * ZETA2) < 1e-9
    r = direct_lattice_sum(lambda p: (p[:, 0] ** 2 + p[:, 1] ** 2) ** -2.0, 2, 4.0)
    assert abs(r.value - EPSTEIN_2) < 1e-9
    f = power_sum_integrand(lambda p: p[:, 0] ** 4 + p[:, 1] ** 4, 1)
    a = direct_lattice_sum(f, 2, 4.0)
    b = direct_lattice_sum(f, 2, 4.0, radii=[24, 48, 96, 192, 384, 768])
    assert abs(a.value - b.value) < 1e-8


def test_cross_agreement():
    # direct sums against Euler-Maclaurin identities
    for s in (2, 2.5, 3, 4.2, 6):
        r = direct_lattice_sum(lambda p, s=s: abs(p[:, 0]) ** -s, 1, s)
        assert abs(r.value - 2 * euler_maclaurin_zeta(s).value) < 1e-8
    for s in (1.5, 2, 2.5, 3, 4):
        r = direct_lattice_sum(lambda p, s=s: (p[:, 0] ** 2 + p[:, 1] ** 2) ** -s, 2, 2 * s)
        ref = 4 * euler_maclaurin_zeta(s).value * dirichlet_beta(s).value
        assert abs(r.value - ref) < 1e-8


def test_reflection():
    for s in (-0.5, 0.3, 2.5):
        assert reflection_residual(s) < 1e-9
