"""Independent reference values: direct lattice sums, Euler-Maclaurin zeta
functions and a reflection-formula cross-check.

Nothing here calls the summation engines, so agreement with them is a real
check.  These routines favour clarity over speed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError, OracleFailure, PoleError


@dataclass(frozen=True)
class OracleResult:
    value: complex
    accuracy: float
    method: str


# -- direct sums ---------------------------------------------------------------

def _box_shells(f: Callable[[np.ndarray], np.ndarray], k: int, radii: Sequence[int],
                excluded: frozenset) -> list[complex]:
    """Partial sums of ``f`` over the cubes ``|n|_inf <= R`` for each ``R`` in ``radii``."""
    sums = []
    total_re, total_im = [], []
    prev = -1
    for R in radii:
        # points with prev < |n|_inf <= R, one slab along the first axis at a time
        for i0 in range(-R, R + 1):
            rest = [np.arange(-R, R + 1)] * (k - 1)
            grids = np.meshgrid(*rest, indexing="ij") if k > 1 else []
            pts = np.stack([np.full(grids[0].shape if k > 1 else (1,), i0)] + list(grids), axis=-1).reshape(-1, k)
            norm = np.max(np.abs(pts), axis=1)
            pts = pts[norm > prev]
            if excluded:
                keep = np.ones(len(pts), dtype=bool)
                for v in excluded:
                    keep &= np.any(pts != np.asarray(v), axis=1)
                pts = pts[keep]
            if len(pts):
                vals = np.asarray(f(pts.astype(float)), dtype=complex)
                total_re.append(math.fsum(vals.real))
                total_im.append(math.fsum(vals.imag))
        sums.append(complex(math.fsum(total_re), math.fsum(total_im)))
        prev = R
    return sums


def direct_lattice_sum(f: Callable[[np.ndarray], np.ndarray], k: int, decay: float, excluded: Iterable | None = None,
                       radii: Sequence[int] | None = None) -> OracleResult:
    """``sum_{n not in F} f(n)`` for ``|f(n)| ~ |n|^-decay`` with ``decay > k``.

    ``F`` defaults to the origin.

    Cube sums at the radii are extrapolated assuming the truncation error
    expands in powers ``R^(k - decay - j)``; the accuracy claim is the change
    produced by the last extrapolation step.
    """
    if decay <= k:
        raise OracleFailure(f"series is not absolutely convergent (decay {decay} <= {k})")
    if excluded is None:
        excluded = [(0,) * k]
    F = frozenset(tuple(int(c) for c in np.atleast_1d(v)) for v in excluded)
    if any(len(v) != k for v in F):
        raise DomainError("excluded points have the wrong dimension")
    if radii is None:
        top = 1024 if k == 1 else (512 if k == 2 else 64)
        radii = [top // 2**i for i in range(5, -1, -1)]
    radii = list(radii)
    sums = _box_shells(f, k, radii, F)
    # solve S_i = S + sum_j c_j R_i^(k - decay - j) for the leading unknowns
    n = len(radii)
    A = np.zeros((n, n))
    for i, R in enumerate(radii):
        A[i, 0] = 1.0
        for j in range(1, n):
            A[i, j] = float(R) ** (k - decay - (j - 1))
    b = np.array(sums)
    sol = np.linalg.solve(A, b)
    A2 = A[1:, : n - 1]
    sol2 = np.linalg.solve(A2, b[1:])
    acc = abs(sol[0] - sol2[0])
    return OracleResult(complex(sol[0]), float(acc), f"direct cube sums to R={radii[-1]} with extrapolation")


def power_sum_integrand(P: Callable[[np.ndarray], np.ndarray], s: complex) -> Callable[[np.ndarray], np.ndarray]:
    """``n -> P(n)^(-s)`` for a positive polynomial function ``P``."""
    s = complex(s)
    return lambda pts: np.exp(-s * np.log(np.asarray(P(pts), dtype=float)))


# -- zeta functions ---------------------------------------------------------------

_BERNOULLI = (Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30), Fraction(5, 66),
              Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510))


def _cutoff(s: complex) -> int:
    """Cutoff balancing the Euler-Maclaurin remainder against rounding in the head sum."""
    if s.real >= 0:
        return 30 + int(abs(s))
    best, best_n = math.inf, 30
    for n in range(5, 31 + int(abs(s))):
        lead = n ** (1 - s.real) / max(abs(s - 1), 1e-300)
        rounding = 1e-16 * lead * n
        rising = 1.0
        for i in range(17):
            rising *= abs(s + i)
        trunc = rising / (2 * math.pi) ** 17 * 2 * n ** (-s.real - 16)
        if rounding + trunc < best:
            best, best_n = rounding + trunc, n
    return best_n


def hurwitz_zeta(s, a: float) -> OracleResult:
    """``zeta(s, a) = sum_{n >= 0} (n + a)^-s`` by Euler-Maclaurin with 8 Bernoulli terms."""
    s = complex(s)
    if not 0 < a <= 1:
        raise DomainError("Hurwitz parameter must lie in (0, 1]")
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    N = _cutoff(s)
    terms = [cmath.exp(-s * math.log(n + a)) for n in range(N)]
    head = sum(terms)
    x = N + a
    lx = math.log(x)
    val = head + cmath.exp((1 - s) * lx) / (s - 1) + cmath.exp(-s * lx) / 2
    rising = s  # s (s+1) ... (s + 2j - 2)
    last = 0j
    for j, B in enumerate(_BERNOULLI, start=1):
        term = float(B) / math.factorial(2 * j) * rising * cmath.exp((-s - 2 * j + 1) * lx)
        val += term
        last = term
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    scale = sum(abs(t) for t in terms) + abs(val)
    return OracleResult(complex(val), abs(last) + 1e-15 * scale, "Euler-Maclaurin")


def euler_maclaurin_zeta(s) -> OracleResult:
    r = hurwitz_zeta(s, 1.0)
    return OracleResult(r.value, r.accuracy, "Euler-Maclaurin zeta")


def dirichlet_beta(s) -> OracleResult:
    """``beta(s) = 4^-s (zeta(s, 1/4) - zeta(s, 3/4))``."""
    s = complex(s)
    a = hurwitz_zeta(s, 0.25)
    b = hurwitz_zeta(s, 0.75)
    scale = cmath.exp(-s * math.log(4))
    return OracleResult(scale * (a.value - b.value), abs(scale) * (a.accuracy + b.accuracy), "Hurwitz combination")


def eta(s) -> OracleResult:
    """Alternating zeta ``(1 - 2^(1-s)) zeta(s)``."""
    s = complex(s)
    z = euler_maclaurin_zeta(s)
    f = 1 - cmath.exp((1 - s) * math.log(2))
    return OracleResult(f * z.value, abs(f) * z.accuracy, "Euler-Maclaurin eta")


def reflection_residual(s: float) -> float:
    """``|zeta(s) - 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)|`` for real ``s``."""
    s = float(s)
    lhs = euler_maclaurin_zeta(s).value
    rhs = 2**s * math.pi ** (s - 1) * math.sin(math.pi * s / 2) * math.gamma(1 - s) * euler_maclaurin_zeta(1 - s).value
    return abs(lhs - rhs)


__all__ = [
    "OracleResult",
    "direct_lattice_sum",
    "power_sum_integrand",
    "hurwitz_zeta",
    "euler_maclaurin_zeta",
    "dirichlet_beta",
    "eta",
    "reflection_residual",
]
