"""h-summation of homogeneous lattice series.

For ``f`` homogeneous of degree ``-s`` the sum over ``N Z^k`` is ``N^-s`` times
the sum over ``Z^k``, while averaging the twisted sums over the ``N``-torsion
of the torus picks out exactly that sublattice.  Hence

    sum'_{n != 0} f(n) = (N^(k-s) - 1)^(-1) * sum_{lambda^N = 1, lambda != 1} F_f(0, lambda)

and every term on the right is a t-sum.  Translated sums ``sum f(x+n)`` are
reduced to this case by Taylor expansion in ``x``.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from .errors import (ConditioningError, DomainError, ExcludedParameter, NotHSummable, TruncationBudgetExceeded,
                     UnsupportedError)
from .families import HomogeneousFamily, PowerFamily, TaylorPiece
from .scalar import EPS, accurate_sum, complex_pow, root_of_unity
from .tsum import MAX_POINTS, SAFETY, SumResult, normalize_points, origin_set, t_sum

MODULI = (2, 3, 5)
MIN_GAP = 0.1
_INT_TOL = 1e-12


def _integer_value(s: complex) -> int | None:
    s = complex(s)
    if abs(s.imag) > _INT_TOL or abs(s.real - round(s.real)) > _INT_TOL:
        return None
    return int(round(s.real))


def is_h_summable(k: int, s: complex, eps: int, mode: str = "lattice") -> bool:
    """Summability predicate for a family of degree ``-s`` and parity ``eps``.

    ``lattice``: sum over ``n != 0``; fails only for ``(s, eps) = (k, 1)``.
    ``translated``: sum of ``f(x+n)``; fails for ``(s, eps) = (k-i, (-1)^i)``, ``i >= 0``.
    ``H-group``: fails for ``(s, eps) = (k-m, (-1)^m)``, ``m >= 0``.
    """
    n = _integer_value(s)
    if mode == "lattice":
        return not (n == k and eps == 1)
    if mode in ("translated", "H-group", "h-group", "group"):
        if n is None or n > k:
            return True
        i = k - n
        return eps != (-1) ** i
    raise DomainError(f"unknown summability mode {mode!r}")


def choose_modulus(k: int, s: complex, min_gap: float = MIN_GAP) -> tuple[int, complex]:
    """Smallest ``N`` in (2, 3, 5) with ``|N^(k-s) - 1| >= min_gap``."""
    for N in MODULI:
        gap = complex_pow(N, k - complex(s)) - 1
        if abs(gap) >= min_gap:
            return N, gap
    raise ConditioningError(f"|N^(k-s) - 1| < {min_gap} for every N in {MODULI} at s = {complex(s)}")


def _exclusion_correction(family: HomogeneousFamily, points: Iterable[tuple]) -> complex:
    total = 0j
    for v in points:
        if any(v) or family.is_polynomial:
            total += family.evaluate(np.asarray(v, dtype=float))
    return total


def torsion_sum(family: HomogeneousFamily, N: int, tol: float = 1e-10) -> SumResult:
    """``sum_{lambda^N = 1, lambda != 1} F_f(0, lambda)`` over the nontrivial torsion.

    For even families ``F_f(0, lambda) = F_f(0, 1/lambda)`` and each conjugate pair
    is evaluated once.
    """
    k = family.k
    seen = set()
    value = 0j
    err = 0.0
    used = 0
    count = 0
    for idx in np.ndindex(*([N] * k)):
        if not any(idx) or idx in seen:
            continue
        neg = tuple((-a) % N for a in idx)
        mult = 1
        if family.parity == 1 and neg != idx:
            seen.add(neg)
            mult = 2
        r = t_sum(family, root_of_unity(idx, N), tol=tol / N**k)
        value += mult * r.value
        err += mult * r.error_estimate
        used += r.terms_used
        count += 1
    return SumResult(value, err, used, {"path": "torsion", "modulus": N, "t_sums": count})


def h_sum_polynomial(family: HomogeneousFamily, excluded=None) -> SumResult:
    """Exact value ``-sum_{v in F} f(v)`` of a polynomial series (``F`` defaults to empty)."""
    if not family.is_polynomial:
        raise UnsupportedError("family is not a polynomial")
    F = normalize_points(excluded, family.k)
    return SumResult(-_exclusion_correction(family, F), 0.0, len(F), {"path": "polynomial"})


def h_sum(family: HomogeneousFamily, excluded=None, tol: float = 1e-10, modulus: int | None = None,
          min_gap: float = MIN_GAP) -> SumResult:
    """h-sum of ``sum_{n not in F} f(n)``; ``F`` always contains the origin."""
    k = family.k
    F = origin_set(k) | normalize_points(excluded, k)
    if family.is_polynomial:
        return h_sum_polynomial(family, F)
    s = complex(family.s)
    if not is_h_summable(k, s, family.parity, "lattice"):
        raise NotHSummable(f"family of degree -{k} with even parity is not h-summable")
    extra = [v for v in F if any(v)]
    correction = _exclusion_correction(family, extra)
    if family.parity == -1:
        return SumResult(-correction, 0.0, len(extra), {"path": "parity"})
    if modulus is None:
        N, gap = choose_modulus(k, s, min_gap)
    else:
        N = int(modulus)
        gap = complex_pow(N, k - s) - 1
        if abs(gap) < EPS:
            raise ConditioningError(f"N^(k-s) = 1 for N = {N}")
    r = torsion_sum(family, N, tol=tol * min(abs(gap), 1.0))
    method = dict(r.method, path="h_sum", gap=abs(gap))
    return SumResult(r.value / gap - correction, r.error_estimate / abs(gap), r.terms_used, method)


def default_expansion_order(family: HomogeneousFamily, margin: int = 5) -> int:
    return max(1, math.ceil(family.k + margin - complex(family.s).real - 1e-12))


_SERIES_EXTRA = 24


def _remainders(family: PowerFamily, x: np.ndarray, pts: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    """``f(x+n) - sum_{i<m} g_i(n)`` for lattice points ``pts``.

    Where the Taylor series visibly converges the tail ``sum_{i>=m} g_i`` is used,
    which avoids cancellation; elsewhere the difference is formed directly.
    """
    coeffs = family.taylor_coefficients(pts, x, m + _SERIES_EXTRA)
    head = sum(coeffs[:m])
    tail = sum(coeffs[m:])
    last = np.abs(coeffs[-1]) + np.abs(coeffs[-2])
    direct = family.evaluate_array(pts + x) - head
    use_series = last <= 1e-17 * np.maximum(np.abs(tail), 1e-300)
    return np.where(use_series, tail, direct), np.abs(head) * EPS * (~use_series)


def h_sum_translated(family: PowerFamily, offset, excluded=None, order: int | None = None, tol: float = 1e-10,
                     max_points: int = MAX_POINTS) -> SumResult:
    """h-sum of ``sum_{n not in F} f(x+n)`` for ``x`` not in ``Z^k`` (``F`` defaults to empty)."""
    k = family.k
    x = np.atleast_1d(np.asarray(offset, dtype=float))
    if x.shape != (k,):
        raise DomainError(f"offset must be a point of R^{k}")
    F = normalize_points(excluded, k)
    if np.all(x == np.round(x)):
        shift = tuple(int(c) for c in np.round(x))
        moved = {tuple(a + b for a, b in zip(v, shift)) for v in F}
        if (0,) * k not in moved:
            raise DomainError("integral offset puts the singularity on the lattice; exclude it")
        return h_sum(family, moved, tol=tol)
    if family.is_polynomial:
        total = _exclusion_correction(family, [tuple(np.asarray(v) + x) for v in F])
        return SumResult(-total, 0.0, len(F), {"path": "polynomial"})
    if not isinstance(family, PowerFamily):
        raise UnsupportedError("translated sums need a family with exact derivatives")
    s = complex(family.s)
    if not is_h_summable(k, s, family.parity, "translated"):
        raise ExcludedParameter(f"s = {s} with parity {family.parity} is excluded for translated sums")
    m = default_expansion_order(family) if order is None else int(order)
    q = m + s.real
    if q <= k:
        raise DomainError(f"expansion order {m} too small: need m + Re s > {k}")

    xr = float(np.linalg.norm(x))
    rho = 2 * xr + m
    near = []
    c = math.ceil(rho)
    for idx in np.ndindex(*([2 * c + 1] * k)):
        n = tuple(i - c for i in idx)
        if math.sqrt(sum(t * t for t in n)) <= rho:
            near.append(n)
    near_set = frozenset(near)

    near_pts = [n for n in near if n not in F]
    near_vals = family.evaluate_array(np.asarray(near_pts, dtype=float) + x) if near_pts else np.zeros(0)
    value = accurate_sum(near_vals)
    err = 0.0
    used = len(near_pts)

    skip = near_set | F | origin_set(k)
    pieces = []
    for i in range(m):
        g = TaylorPiece(family, tuple(float(t) for t in x), i)
        r = h_sum(g, skip, tol=tol / m)
        value += r.value
        err += r.error_estimate
        used += r.terms_used
        pieces.append({"order": i, "value": {"re": r.value.real, "im": r.value.imag}})

    R = max(c + 4, 16)
    while True:
        axes = [np.arange(-R, R + 1)] * k
        grids = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=-1).astype(float)
        keep = np.ones(len(pts), dtype=bool)
        norms = np.linalg.norm(pts, axis=1)
        keep &= norms > rho
        if F:
            fset = np.array(sorted(F), dtype=float)
            for v in fset:
                keep &= np.any(pts != v, axis=1)
        rem, rnd = _remainders(family, x, pts[keep], m)
        full = np.zeros(len(pts), dtype=complex)
        full[keep] = rem
        cube = full.reshape([2 * R + 1] * k)
        shell = 0.0
        for ax in range(k):
            for sl in (0, -1):
                shell = max(shell, float(np.max(np.abs(np.take(cube, sl, axis=ax)))))
        tail = SAFETY * shell * k * 2**k * R**k / (q - k)
        if tail <= tol:
            total = accurate_sum(rem)
            method = {"path": "translated", "order": m, "near_radius": rho, "radius": R, "pieces": pieces}
            return SumResult(value + total, err + tail + SAFETY * float(np.sum(rnd)), used + int(keep.sum()), method)
        next_R = math.ceil(R * min(max((tail / tol) ** (1.0 / (q - k)) * 1.2, 1.5), 8.0))
        if (2 * next_R + 1) ** k > max_points:
            partial = SumResult(value + accurate_sum(rem), err + tail, used + int(keep.sum()), {"path": "translated"})
            raise TruncationBudgetExceeded(f"tolerance {tol:g} not reached within {max_points} points", partial)
        R = next_R


__all__ = [
    "is_h_summable",
    "choose_modulus",
    "torsion_sum",
    "h_sum",
    "h_sum_polynomial",
    "h_sum_translated",
    "default_expansion_order",
]
