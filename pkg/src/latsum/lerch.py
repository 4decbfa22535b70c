"""The two-variable series ``F_f(x, z)`` and its regularisation.

``F_f(x, z) = sum_{n != 0} f(x+n) z^n``.  For ``x, y`` in the open box the
Poisson identity

    F_f(x, E(y)) - psi(-x, y) fhat(y) = -f(x) + psi(-x, y) F_fhat(y, E(-x))

relates the series of ``f`` to that of its transform; either side defines the
regularised value, and at ``(0, 0)`` that value is the h-sum of ``f``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError
from .families import HomogeneousFamily
from .fourier import _richardson, fourier_transform
from .hsum import h_sum
from .scalar import TorusPoint, torus_from_reals
from .tsum import SumResult, as_torus_point, t_sum


def psi(x, y) -> complex:
    """``exp(2 pi i x.y)``."""
    return cmath.exp(2j * math.pi * float(np.dot(x, y)))


def lerch_F(fam: HomogeneousFamily, x, z, excluded=None, tol: float = 1e-10) -> SumResult:
    """``F_f(x, z)`` for ``x`` in the open box and ``z != 1`` (exact or float phases)."""
    z = z if isinstance(z, TorusPoint) else as_torus_point(z, fam.k)
    return t_sum(fam, z, offset=x, excluded=excluded, tol=tol)


@dataclass
class RegularizedEvaluation:
    x: tuple
    y: tuple
    side: str
    value: complex
    error_estimate: float
    side_a: complex | None = None
    side_b: complex | None = None
    residual: float | None = None


def _check_box(v, k: int, name: str) -> np.ndarray:
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if v.shape != (k,) or np.any(np.abs(v) >= 1):
        raise DomainError(f"{name} must lie in the open box (-1, 1)^{k}")
    return v


def side_a(fam: HomogeneousFamily, x, y, tol: float = 1e-10, pair=None) -> SumResult:
    """``F_f(x, E(y)) - psi(-x, y) fhat(y)`` for ``y != 0``."""
    x = _check_box(x, fam.k, "x")
    y = _check_box(y, fam.k, "y")
    if not np.any(y):
        raise DomainError("side (a) needs y != 0")
    pair = fourier_transform(fam) if pair is None else pair
    r = t_sum(fam, torus_from_reals(y), offset=x, tol=tol)
    value = r.value - psi(-x, y) * pair.evaluate(y)
    return SumResult(value, r.error_estimate, r.terms_used, dict(r.method, side="a"))


def side_b(fam: HomogeneousFamily, x, y, tol: float = 1e-10, pair=None) -> SumResult:
    """``-f(x) + psi(-x, y) F_fhat(y, E(-x))`` for ``x != 0``."""
    x = _check_box(x, fam.k, "x")
    y = _check_box(y, fam.k, "y")
    if not np.any(x):
        raise DomainError("side (b) needs x != 0")
    pair = fourier_transform(fam) if pair is None else pair
    r = t_sum(pair.dual, torus_from_reals(-x), offset=y, tol=tol / max(abs(pair.constant), 1e-300))
    value = -fam.evaluate(x) + psi(-x, y) * pair.constant * r.value
    return SumResult(value, abs(pair.constant) * r.error_estimate, r.terms_used, dict(r.method, side="b"))


def freg(fam: HomogeneousFamily, x, y, tol: float = 1e-10) -> RegularizedEvaluation:
    """Regularised value ``F_f^reg(x, y)`` with both sides and their residual where defined."""
    k = fam.k
    x = _check_box(x, k, "x")
    y = _check_box(y, k, "y")
    xt, yt = tuple(x.tolist()), tuple(y.tolist())
    if not np.any(x) and not np.any(y):
        r = h_sum(fam, tol=tol)
        return RegularizedEvaluation(xt, yt, "h_sum", r.value, r.error_estimate)
    pair = fourier_transform(fam)
    a = side_a(fam, x, y, tol, pair) if np.any(y) else None
    b = side_b(fam, x, y, tol, pair) if np.any(x) else None
    if a is not None and b is not None:
        return RegularizedEvaluation(xt, yt, "both", a.value, a.error_estimate + b.error_estimate, a.value, b.value,
                                     abs(a.value - b.value))
    if a is not None:
        return RegularizedEvaluation(xt, yt, "a", a.value, a.error_estimate, side_a=a.value)
    return RegularizedEvaluation(xt, yt, "b", b.value, b.error_estimate, side_b=b.value)


def extrapolate_to_origin(fam: HomogeneousFamily, y0, scales: Sequence[float] = (0.2, 0.1, 0.05),
                          tol: float = 1e-11) -> tuple[complex, float]:
    """Richardson extrapolation of side (a) at ``x = 0``, ``y = t*y0`` to ``t -> 0``."""
    y0 = np.atleast_1d(np.asarray(y0, dtype=float))
    scales = list(scales)
    vals = [side_a(fam, np.zeros(fam.k), t * y0, tol).value for t in scales]
    return _richardson(vals, scales[0] / scales[1])


def functional_equation_check(fam: HomogeneousFamily, tol: float = 1e-10) -> float:
    """``|sum' f(n) - sum' fhat(n)|`` with both sides as h-sums."""
    pair = fourier_transform(fam)
    lhs = h_sum(fam, tol=tol)
    rhs = h_sum(pair.dual, tol=tol / max(abs(pair.constant), 1e-300))
    return abs(lhs.value - pair.constant * rhs.value)


__all__ = [
    "psi",
    "lerch_F",
    "RegularizedEvaluation",
    "side_a",
    "side_b",
    "freg",
    "extrapolate_to_origin",
    "functional_equation_check",
]
