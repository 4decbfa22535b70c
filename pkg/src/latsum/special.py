"""Analytic continuation of ``G(s) = sum_{n not in F} P(n)^(-s)`` for inhomogeneous ``P``.

Write ``P = P_d (1 - R)`` with ``R = (P_d - P) / P_d``.  Expanding
``(1 - R)^(-s)`` to order ``m`` splits the series into an absolutely
convergent remainder ``e_m(s)`` and finitely many homogeneous pieces
``B_j = sum_e a_e(s) (R^e)_j P_d^(-s)`` of degree ``-(d s + j)``, each of
which is h-summed.  The piece with ``d s + j = k`` and ``j`` even is the
only obstruction; it vanishes identically unless ``s`` lies in the
exceptional set ``E = {(k - j)/d : j even, j >= 0}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError, NotPositiveDefinite, PoleDetected, PoleParameter, TruncationBudgetExceeded
from .families import LinearCombination, rational_homogeneous
from .fourier import _richardson
from .hsum import MIN_GAP, _integer_value, h_sum
from .polynomials import (SparsePolynomial, graded_power_components, homogeneous_decompose, is_positive_definite,
                          reduction_ratio)
from .scalar import EPS, accurate_sum
from .tsum import MAX_POINTS, SAFETY, SumResult, normalize_points, shell_max

LIMIT_STEPS = (0.04, 0.02, 0.01)
_TAIL_TERMS = 60


def compute_exclusion_set(P: SparsePolynomial) -> frozenset:
    """Lattice points with ``P(n) <= 0``, together with the origin."""
    parts = homogeneous_decompose(P)
    d = len(parts) - 1
    pd = parts[d]
    if d == 0 or d % 2:
        raise NotPositiveDefinite("the top homogeneous part must have positive even degree")
    cert = is_positive_definite(pd)
    if not cert.positive:
        raise NotPositiveDefinite(f"top part is not positive definite (witness {cert.witness})")
    c = cert.lower_bound if cert.lower_bound > 0 else cert.minimum / 2
    # |P_j(x)| <= b_j |x|^j, and c r^d > sum_j b_j r^j once r >= max(1, sum b_j / c)
    b = sum(float(sum(abs(v) for v in parts[j].terms.values())) for j in range(d))
    R0 = max(1.0, b / c)
    r = math.floor(R0)
    k = P.k
    out = {(0,) * k}
    for idx in np.ndindex(*([2 * r + 1] * k)):
        n = tuple(i - r for i in idx)
        if sum(t * t for t in n) <= R0 * R0 and P.evaluate(n) <= 0:
            out.add(n)
    return frozenset(out)


def binomial_coefficients(s, count: int) -> list:
    """``a_0 .. a_{count-1}`` with ``(1 - t)^(-s) = sum a_e t^e``; exact for rational ``s``."""
    exact = isinstance(s, (int, Fraction))
    a = [Fraction(1) if exact else 1 + 0j]
    for e in range(count - 1):
        a.append(a[-1] * (s + e) / (e + 1))
    return a[:count]


@dataclass
class SpecialProblem:
    P: SparsePolynomial
    excluded: frozenset = None
    parts: list = field(init=False)

    def __post_init__(self):
        needed = compute_exclusion_set(self.P)
        if self.excluded is None:
            self.excluded = needed
        else:
            given = normalize_points(self.excluded, self.P.k) | {(0,) * self.P.k}
            missing = needed - given
            if missing:
                raise DomainError(f"excluded set misses lattice points with P <= 0: {sorted(missing)}")
            self.excluded = frozenset(given)
        self.parts = homogeneous_decompose(self.P)

    @property
    def k(self) -> int:
        return self.P.k

    @property
    def d(self) -> int:
        return len(self.parts) - 1

    @property
    def top(self) -> SparsePolynomial:
        return self.parts[-1]

    def exceptional_index(self, s) -> int | None:
        """The even ``j >= 0`` with ``d s + j = k`` when ``s`` lies in ``E``, else ``None``."""
        v = complex(s) * self.d
        n = _integer_value(self.k - v)
        if n is None or n < 0 or n % 2:
            return None
        return n

    def in_exceptional_set(self, s) -> bool:
        return self.exceptional_index(s) is not None

    def default_order(self, s) -> int:
        return max(1, math.ceil(self.k + 1 - self.d * complex(s).real - 1e-12) + 4)


def _critical_numerator(problem: SpecialProblem, s0: Fraction, j0: int) -> SparsePolynomial:
    """Numerator of ``B_{j0}(s0)`` over ``P_d^{j0}`` (exact)."""
    comps = reduction_ratio(problem.P)
    a = binomial_coefficients(s0, j0 + 1)
    pd = problem.top
    total = SparsePolynomial(problem.k)
    for e in range(j0 + 1):
        part = graded_power_components(comps, e).get(j0)
        if part is None:
            continue
        total = total + part.numerator * pd ** (j0 - e) * a[e]
    return total


def _pieces(problem: SpecialProblem, s: complex, m: int) -> dict[int, LinearCombination]:
    comps = reduction_ratio(problem.P)
    a = binomial_coefficients(complex(s), m)
    grouped: dict[int, list] = {}
    for e in range(m):
        for j, elem in graded_power_components(comps, e).items():
            if elem.numerator.is_zero() or a[e] == 0:
                continue
            grouped.setdefault(j, []).append(rational_homogeneous(elem, s, scale=a[e]))
    return {j: LinearCombination(tuple(fs), tuple([1.0] * len(fs))) for j, fs in sorted(grouped.items())}


def _remainder_sum(problem: SpecialProblem, s: complex, m: int, tol: float,
                   max_points: int) -> tuple[complex, float, int, int]:
    """``e_m(s) = sum_{n not in F} P_d(n)^(-s) E_m(s, R(n))`` by direct truncation."""
    k, d = problem.k, problem.d
    q = m + d * s.real
    if q <= k:
        raise DomainError(f"expansion order {m} too small at s = {s}")
    L = _TAIL_TERMS + int(2 * abs(s))
    a = binomial_coefficients(s, m + L + 1)
    head = a[:m]
    tail_coeffs = a[m:]
    F = problem.excluded
    reach = max(max(abs(c) for c in v) for v in F)
    R = max(16, 2 * reach + 2)
    while True:
        grids = np.meshgrid(*([np.arange(-R, R + 1)] * k), indexing="ij")
        pts = np.stack(grids, axis=-1).reshape(-1, k).astype(float)
        keep = np.ones(len(pts), dtype=bool)
        for v in F:
            keep &= np.any(pts != np.asarray(v, dtype=float), axis=1)
        x = pts[keep]
        pd = problem.top.evaluate_array(x)
        pv = problem.P.evaluate_array(x)
        t = 1.0 - pv / pd
        pds = np.exp(-s * np.log(pd))
        small = np.abs(t) <= 0.5
        ser = np.zeros(len(x), dtype=complex)
        for c in reversed(tail_coeffs):
            ser = ser * t + c
        ser = ser * t**m
        poly = np.zeros(len(x), dtype=complex)
        for c in reversed(head):
            poly = poly * t + c
        direct = np.exp(-s * np.log(np.where(small, 1.0, pv))) - pds * poly
        vals = np.where(small, pds * ser, direct)
        full = np.zeros(len(pts), dtype=complex)
        full[keep] = vals
        cube = full.reshape([2 * R + 1] * k)
        C = shell_max(cube, R, R) * float(R) ** q
        tail = SAFETY * C * k * 2**k * float(R) ** (k - q) / (q - k)
        if tail <= tol:
            rounding = SAFETY * EPS * float(np.sum(np.abs(np.where(small, 0.0, pds * poly))))
            return accurate_sum(vals), tail + rounding, int(keep.sum()), R
        next_R = math.ceil(R * min(max((tail / tol) ** (1.0 / (q - k)) * 1.2, 1.5), 8.0))
        if (2 * next_R + 1) ** k > max_points:
            partial = SumResult(accurate_sum(vals), tail, int(keep.sum()), {"path": "remainder"})
            raise TruncationBudgetExceeded(f"remainder sum did not reach {tol:g} within {max_points} points", partial)
        R = next_R


def _finite_value(problem: SpecialProblem, n: int) -> complex:
    """``-sum_{v in F} P(v)^(-n)`` for an integer ``n <= 0`` (with ``0^0 = 1``)."""
    total = Fraction(0)
    for v in problem.excluded:
        total += Fraction(problem.P.evaluate(v)) ** (-n)
    return complex(-total)


def special_G(problem: SpecialProblem, s, order: int | None = None, tol: float = 1e-9,
              min_gap: float = MIN_GAP, max_points: int = MAX_POINTS) -> SumResult:
    """h-sum ``G(s)`` of ``sum_{n not in F} P(n)^(-s)``."""
    s = complex(s)
    n = _integer_value(s)
    if n is not None and n <= 0:
        return SumResult(_finite_value(problem, n), 0.0, len(problem.excluded), {"path": "finite"})
    j0 = problem.exceptional_index(s)
    if j0 is not None:
        s0 = Fraction(problem.k - j0, problem.d)
        if not _critical_numerator(problem, s0, j0).is_zero():
            raise PoleParameter(f"s = {s0} lies in the exceptional set and G is not h-summable there",
                                limit=lambda: special_G_limit(problem, s0, tol=tol))
    m = problem.default_order(s) if order is None else int(order)
    if m + problem.d * s.real <= problem.k:
        raise DomainError(f"expansion order {m} needs m + d Re s > k")
    pieces = _pieces(problem, s, m)
    count = max(len(pieces), 1)
    value, err, used, R = _remainder_sum(problem, s, m, tol / 2, max_points)
    parts = {}
    for j, fam in pieces.items():
        if j == j0:
            continue
        r = h_sum(fam, problem.excluded, tol=tol / (2 * count), min_gap=min_gap)
        value += r.value
        err += r.error_estimate
        used += r.terms_used
        parts[str(j)] = {"re": r.value.real, "im": r.value.imag}
    method = {"path": "special", "order": m, "remainder_radius": R, "pieces": parts}
    return SumResult(value, err, used, method)


def special_G_limit(problem: SpecialProblem, s0, steps: Sequence[float] = LIMIT_STEPS, tol: float = 1e-8,
                    min_gap: float = 1e-3) -> SumResult:
    """Limit of the continuation at ``s0`` from values at ``s0 +- delta``.

    Symmetric and antisymmetric combinations are extrapolated in ``delta^2``;
    a nonzero antisymmetric part is a simple pole and raises
    :class:`PoleDetected` with the residue estimate.
    """
    s0 = complex(s0)
    steps = list(steps)
    sym, res, err = [], [], 0.0
    for dlt in steps:
        gp = special_G(problem, s0 + dlt, tol=tol, min_gap=min_gap)
        gm = special_G(problem, s0 - dlt, tol=tol, min_gap=min_gap)
        sym.append((gp.value + gm.value) / 2)
        res.append(dlt * (gp.value - gm.value) / 2)
        err = max(err, gp.error_estimate + gm.error_estimate)
    ratio = (steps[0] / steps[1]) ** 2 if len(steps) > 1 else 4.0
    limit, lerr = _richardson(sym, ratio)
    residue, rerr = _richardson(res, ratio)
    if abs(residue) > max(1e-6 * max(1.0, abs(limit)), 100 * (rerr + err * steps[0])):
        raise PoleDetected(f"simple pole at s = {s0} with residue {residue:.6g}", residue)
    return SumResult(limit, lerr + err, 0, {"path": "limit", "steps": steps, "residue": {"re": residue.real,
                                                                                          "im": residue.imag}})


__all__ = [
    "SpecialProblem",
    "compute_exclusion_set",
    "binomial_coefficients",
    "special_G",
    "special_G_limit",
]
