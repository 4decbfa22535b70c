from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from latsum.errors import ParseError
from latsum.polynomials import (SparsePolynomial, format_polynomial, graded_power_components, homogeneous_decompose,
                                is_positive_definite, parse_polynomial, reduction_ratio)


def test_parse_examples():
    p = parse_polynomial("x0^2 + x1^2 - x0", 2)
    assert p.terms == {(2, 0): 1, (0, 2): 1, (1, 0): -1}
    c = parse_polynomial("3", 1)
    assert c.terms == {(0,): 3}
    q = parse_polynomial("x0^4 + x1^4", 2)
    assert q.is_homogeneous() and q.degree == 4


def test_parse_rationals_and_products():
    p = parse_polynomial("1/2*x0*x1 - 0.25*x1^2 + 2*x0*x0", 2)
    assert p.evaluate((3, 4)) == Fraction(6) - 4 + 18


@pytest.mark.parametrize("text", ["x0^", "x2", "x0 +* 1", "(x0)", "x0^-1", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_polynomial(text, 2)


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
exps = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exps, coeffs, max_size=6).map(lambda d: SparsePolynomial(2, d))


@given(polys)
def test_format_parse_round_trip(p):
    assert parse_polynomial(format_polynomial(p), 2) == p


@given(polys, polys, st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_ring_operations_match_evaluation(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)
    assert (p - q).evaluate(pt) == p.evaluate(pt) - q.evaluate(pt)


@given(polys)
def test_homogeneous_decomposition_sums_back(p):
    parts = homogeneous_decompose(p)
    total = SparsePolynomial(2)
    for j, part in enumerate(parts):
        assert part.is_zero() or (part.is_homogeneous() and part.degree == j)
        total = total + part
    assert total == p


def test_decompose_examples():
    parts = homogeneous_decompose(parse_polynomial("x0^2+x1^2-x0", 2))
    assert parts[0].is_zero()
    assert parts[1] == parse_polynomial("-x0", 2)
    assert parts[2] == parse_polynomial("x0^2+x1^2", 2)
    assert len(homogeneous_decompose(parse_polynomial("5", 1))) == 1


def test_positive_definite_examples():
    r = is_positive_definite(parse_polynomial("x0^2+x1^2", 2))
    assert r.positive and abs(r.minimum - 1) < 1e-9
    r = is_positive_definite(parse_polynomial("x0^2-x1^2", 2))
    assert not r.positive
    w = np.array(r.witness)
    assert w[0] ** 2 - w[1] ** 2 <= 0
    r = is_positive_definite(parse_polynomial("x0^4+x1^4", 2))
    assert r.positive and abs(r.minimum - 0.5) < 1e-9
    assert 0 < r.lower_bound <= r.minimum


def test_reduction_ratio_components():
    P = parse_polynomial("x0^2+x1^2-x0", 2)
    comps = reduction_ratio(P)
    r1 = graded_power_components(comps, 1)
    assert set(r1) == {1}
    assert r1[1].numerator == parse_polynomial("x0", 2) and r1[1].base_power == 1
    r2 = graded_power_components(comps, 2)
    assert set(r2) == {2}
    assert r2[2].numerator == parse_polynomial("x0^2", 2) and r2[2].base_power == 2


def test_reduction_ratio_against_pointwise_values():
    P = parse_polynomial("x0^2+2*x1^2 + x0 - 3*x1 + 5", 2)
    pd = homogeneous_decompose(P)[2]
    comps = reduction_ratio(P)
    rng = np.random.default_rng(1)
    for pt in rng.normal(size=(5, 2)):
        R = float((pd.evaluate(pt) - P.evaluate(pt)) / pd.evaluate(pt))
        for e in (1, 2, 3):
            total = sum(float(c.evaluate(pt)) for c in graded_power_components(comps, e).values())
            assert abs(total - R**e) <= 1e-12 * max(1, abs(R**e))
