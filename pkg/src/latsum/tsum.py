"""t-summation of twisted lattice series by finite-difference acceleration.

For ``z != 1`` on the torus the series ``sum' f(x+n) z^n`` is summed as

    prod_j (1 - z_j)^(-m_j) * sum_n (prod_j Delta_j^(m_j) a)(n) z^n

where ``a`` is the zero-extended lattice function ``n -> f(x+n)`` and
``Delta_j a(n) = a(n) - a(n - e_j)``.  The accelerated terms decay like
``|n|^(p - M)`` with ``M = sum m_j``, so the truncated box sum converges
absolutely; the box is grown until an outer-shell tail estimate meets the
tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import ConditioningError, DomainError, NotTSummable, TruncationBudgetExceeded
from .families import HomogeneousFamily
from .scalar import EPS, TorusPoint, accurate_sum, root_of_unity, torsion_points

DEFAULT_MARGIN = 4
SAFETY = 10.0
MIN_ONE_MINUS_Z = 1e-3
MAX_POINTS = 6_000_000
EPS_EXTENDED = float(np.finfo(np.longdouble).eps)


@dataclass
class SumResult:
    value: complex
    error_estimate: float
    terms_used: int
    method: dict = field(default_factory=dict)

    def __post_init__(self):
        self.value = complex(self.value)
        self.error_estimate = float(abs(self.error_estimate))


def normalize_points(points: Iterable[Sequence[int]] | None, k: int) -> frozenset:
    if points is None:
        return frozenset()
    out = set()
    for p in points:
        t = tuple(int(c) for c in np.atleast_1d(p))
        if len(t) != k:
            raise DomainError(f"lattice point {t} is not in Z^{k}")
        out.add(t)
    return frozenset(out)


def origin_set(k: int) -> frozenset:
    return frozenset({(0,) * k})


def as_torus_point(z, k: int) -> TorusPoint:
    if isinstance(z, TorusPoint):
        tp = z
    else:
        tp = TorusPoint(tuple(np.atleast_1d(z).tolist()) if not isinstance(z, (tuple, list)) else tuple(z))
    if tp.k != k:
        raise DomainError(f"torus point has dimension {tp.k}, expected {k}")
    return tp


def finite_difference(a: Callable[[tuple], complex], axis: int, order: int, n: Sequence[int],
                      excluded: Iterable[Sequence[int]] = ()) -> complex:
    """``(Delta_axis^order a)(n)`` with ``a`` set to zero on ``excluded``."""
    if order < 0:
        raise DomainError("difference order must be non-negative")
    n = tuple(int(c) for c in n)
    F = normalize_points(excluded, len(n))
    total = 0j
    for j in range(order + 1):
        m = list(n)
        m[axis] -= j
        m = tuple(m)
        if m in F:
            continue
        total += (-1) ** j * math.comb(order, j) * complex(a(m))
    return total


def lattice_values(family: HomogeneousFamily, offset: np.ndarray, excluded: frozenset,
                   ranges: Sequence[tuple[int, int]], extended: bool = False) -> np.ndarray:
    """``f(offset + n)`` on the box ``prod [lo_i, hi_i]``, zero on ``excluded``.

    With ``extended`` the values are computed in ``np.clongdouble``.
    """
    k = family.k
    axes = [np.arange(lo, hi + 1) for lo, hi in ranges]
    grids = np.meshgrid(*axes, indexing="ij")
    rdt = np.longdouble if extended else float
    pts = np.stack([g.astype(rdt) + rdt(offset[i]) for i, g in enumerate(grids)], axis=-1)
    singular = ~np.any(pts != 0, axis=-1)
    mask = np.zeros(singular.shape, dtype=bool)
    for v in excluded:
        idx = tuple(v[i] - ranges[i][0] for i in range(k))
        if all(0 <= idx[i] < len(axes[i]) for i in range(k)):
            mask[idx] = True
    if np.any(singular & ~mask):
        raise DomainError("lattice series hits the singularity of f; exclude that point")
    if np.any(singular):
        pts[singular] = 1.0
    with np.errstate(all="ignore"):
        if extended:
            vals = np.asarray(family.evaluate_array_extended(pts), dtype=np.clongdouble)
        else:
            vals = np.asarray(family.evaluate_array(pts), dtype=complex)
    vals[mask] = 0
    if not np.all(np.isfinite(vals)):
        raise DomainError("non-finite family value on the lattice")
    return vals


def choose_order(p: float, k: int, margin: int = DEFAULT_MARGIN) -> int:
    return max(math.ceil(p - 1e-12) + k + 1 + margin, 0)


def split_order(M: int, axes: Sequence[int]) -> dict[int, int]:
    q, r = divmod(M, len(axes))
    return {j: q + (1 if i < r else 0) for i, j in enumerate(axes)}


def _outer_shell_max(b: np.ndarray) -> float:
    mx = 0.0
    for ax in range(b.ndim):
        for sl in (0, -1):
            face = np.take(b, sl, axis=ax)
            if face.size:
                mx = max(mx, float(np.max(np.abs(face))))
    return mx


def shell_max(arr: np.ndarray, R: int, r: int) -> float:
    """``max |arr[n]|`` over ``|n|_inf = r`` for an array indexed by ``n + R``."""
    k = arr.ndim
    inner = tuple(slice(R - r, R + r + 1) for _ in range(k))
    cube = np.abs(arr[inner])
    return _outer_shell_max(cube)


def decay_constant(b: np.ndarray, a: np.ndarray, R: int, M: int, q: float, r_min: int,
                   eps: float = EPS) -> tuple[float, float]:
    """Fit ``|b(n)| <= C |n|^-q`` on shells whose values stand above rounding noise.

    Returns ``(C, noise)`` where ``noise`` is the rounding level of the
    differenced values on the outermost shell.
    """
    amp = 4.0 * eps * 2.0**M
    best = None
    fallback = 0.0
    r = R
    outer_noise = None
    while r >= max(r_min, 1):
        sm = shell_max(b, R, r)
        noise = amp * shell_max(a, R, r)
        if outer_noise is None:
            outer_noise = noise
        c = sm * float(r) ** q
        fallback = max(fallback, c)
        if sm > 100.0 * noise:
            best = c if best is None else max(best, c)
            break
        r //= 2
    return (fallback if best is None else best), float(outer_noise or 0.0)


def _polynomial_t_sum(family, z: TorusPoint, x: np.ndarray, F: frozenset) -> SumResult:
    total = 0j
    for v in F:
        total += family.evaluate(np.asarray(v, dtype=float) + x) * z.power(v)
    return SumResult(-total, 0.0, len(F), {"path": "polynomial", "excluded": len(F)})


def t_sum(family: HomogeneousFamily, z, offset=None, excluded=None, tol: float = 1e-10,
          order: int | None = None, axes: Sequence[int] | None = None, margin: int = DEFAULT_MARGIN,
          max_points: int = MAX_POINTS) -> SumResult:
    """t-convergent sum of ``sum_{n not in F} f(x+n) z^n`` for ``z != 1``.

    ``excluded`` defaults to the origin.  ``axes`` restricts the differenced
    coordinates to a subset of those with ``z_j != 1``.
    """
    k = family.k
    z = as_torus_point(z, k)
    x = np.zeros(k) if offset is None else np.atleast_1d(np.asarray(offset, dtype=float))
    if x.shape != (k,) or np.any(np.abs(x) >= 1):
        raise DomainError("offset must lie in the open box (-1, 1)^k")
    F = origin_set(k) if excluded is None else normalize_points(excluded, k)
    if z.is_one():
        raise NotTSummable("t-summation needs z != 1")
    nonunit = [j for j in range(k) if not z.is_one_at(j)]
    if axes is None:
        J = nonunit
    else:
        J = sorted(set(int(a) for a in axes))
        if not J or any(j not in nonunit for j in J):
            raise NotTSummable("differencing axes must have z_j != 1")
    if family.is_polynomial:
        return _polynomial_t_sum(family, z, x, F)
    reach = max((max(abs(c) for c in v) for v in F), default=0)
    return _accelerated_sum(lambda ranges: lattice_values(family, x, F, ranges, extended=True), z, k,
                            family.growth_exponent(),
                            J, order, margin, reach, tol, max_points)


def t_sum_sequence(values: Callable[[np.ndarray], np.ndarray], z, k: int, growth: float, tol: float = 1e-10,
                   order: int | None = None, axes: Sequence[int] | None = None, margin: int = DEFAULT_MARGIN,
                   reach: int = 0, max_points: int = MAX_POINTS) -> SumResult:
    """t-sum of ``sum_n a(n) z^n`` for a general lattice function ``a``.

    ``values`` maps an integer array of shape ``(..., k)`` to ``a`` at those
    points.  ``a`` must agree with a function of polynomial growth
    ``|n|^growth`` whose differences decay accordingly (e.g. a finite
    combination of shifted homogeneous families) outside ``|n| <= reach``.
    """
    z = as_torus_point(z, k)
    if z.is_one():
        raise NotTSummable("t-summation needs z != 1")
    nonunit = [j for j in range(k) if not z.is_one_at(j)]
    J = nonunit if axes is None else sorted(set(int(a) for a in axes))
    if not J or any(j not in nonunit for j in J):
        raise NotTSummable("differencing axes must have z_j != 1")

    def box(ranges):
        grids = np.meshgrid(*[np.arange(lo, hi + 1) for lo, hi in ranges], indexing="ij")
        return np.asarray(values(np.stack(grids, axis=-1)), dtype=complex)

    return _accelerated_sum(box, z, k, float(growth), J, order, margin, reach, tol, max_points)


def _accelerated_sum(box, z: TorusPoint, k: int, p: float, J: list, order, margin: int, reach: int, tol: float,
                     max_points: int) -> SumResult:
    cond = min(abs(z.one_minus(j)) for j in J)
    if cond < MIN_ONE_MINUS_Z:
        raise ConditioningError(f"min |1 - z_j| = {cond:.3g} is below {MIN_ONE_MINUS_Z}")
    M = choose_order(p, k, margin) if order is None else int(order)
    q = M - p
    if q <= k:
        raise NotTSummable(f"difference order {M} too small for growth exponent {p}")
    m = split_order(M, J)
    denom = 1 + 0j
    for j in J:
        denom *= z.one_minus(j) ** m[j]

    R = max(8, 2 * M, reach + M + 1)
    while True:
        ranges = [(-R - m.get(i, 0), R) for i in range(k)]
        a = box(ranges)
        eps = EPS_EXTENDED if a.dtype == np.clongdouble else EPS
        b = a
        for j in J:
            if m[j]:
                b = np.diff(b, n=m[j], axis=j)
        ns = np.arange(-R, R + 1)
        zn = np.ones((1,) * k, dtype=complex)
        for j in range(k):
            shape = [1] * k
            shape[j] = ns.size
            zn = zn * z.axis_powers(j, ns).reshape(shape)
        terms = np.asarray(b * zn, dtype=complex)
        total = accurate_sum(terms)
        # a is indexed from -R - m_j along the differenced axes; align it with b
        a_al = a[tuple(slice(m.get(i, 0), None) for i in range(k))]
        C, noise = decay_constant(b, a_al, R, M, q, reach + M + 1, eps)
        tail = SAFETY * C * k * 2**k * float(R) ** (k - q) / (q - k) / abs(denom)
        rounding = SAFETY * (eps * math.sqrt(math.comb(2 * M, M)) * float(np.sqrt(np.sum(np.abs(a) ** 2)))
                             + EPS * float(np.sum(np.abs(terms)))) / abs(denom)
        npts = b.size
        value = total / denom
        method = {"path": "finite_difference", "order": M, "axes": {str(j): m[j] for j in J},
                  "radius": R, "growth_exponent": p, "decay_exponent": q}
        if tail <= tol:
            return SumResult(value, tail + rounding, npts, method)
        next_R = math.ceil(R * min(max((tail / tol) ** (1.0 / (q - k)) * 1.2, 1.5), 8.0))
        if (2 * next_R + M + 1) ** k > max_points:
            partial = SumResult(value, tail + rounding, npts, method)
            raise TruncationBudgetExceeded(
                f"tolerance {tol:g} not reached within {max_points} lattice points (tail {tail:.3g})", partial)
        R = next_R


def t_sum_periodic(family: HomogeneousFamily, weights, offset=None, excluded=None,
                   tol: float = 1e-10) -> SumResult:
    """``sum' b(n) f(x+n)`` for a period-``N`` weight ``b`` with zero mean.

    ``weights`` is an array of shape ``(N,)*k`` (exact rationals allowed).
    """
    k = family.k
    b = np.asarray(weights, dtype=object)
    if b.ndim != k or len(set(b.shape)) != 1:
        raise DomainError(f"weights must have shape (N,)*{k}")
    N = b.shape[0]
    total = sum(b.ravel().tolist(), Fraction(0)) if all(
        isinstance(v, (int, Fraction)) for v in b.ravel()) else complex(np.sum(b.astype(complex)))
    if (total != 0) if not isinstance(total, complex) else (abs(total) > 1e-12 * max(1.0, float(np.max(np.abs(b.astype(complex)))))):
        raise NotTSummable("periodic weight must have zero mean over a period")
    bc = b.astype(complex)
    if not np.any(bc):
        return SumResult(0j, 0.0, 0, {"path": "periodic", "modulus": N, "characters": 0})
    # b(n) = sum_a bhat(a) e(a.n / N)
    bhat = np.fft.fftn(bc) / N**k
    value = 0j
    err = 0.0
    used = 0
    chars = 0
    for idx in np.ndindex(*b.shape):
        if not any(idx):
            continue
        c = complex(bhat[idx])
        if abs(c) < 1e-15 * float(np.max(np.abs(bc))):
            continue
        r = t_sum(family, root_of_unity(idx, N), offset=offset, excluded=excluded, tol=tol / (N**k))
        value += c * r.value
        err += abs(c) * r.error_estimate
        used += r.terms_used
        chars += 1
    return SumResult(value, err, used, {"path": "periodic", "modulus": N, "characters": chars})


__all__ = [
    "SumResult",
    "finite_difference",
    "t_sum",
    "t_sum_periodic",
    "t_sum_sequence",
    "lattice_values",
    "choose_order",
    "torsion_points",
]
