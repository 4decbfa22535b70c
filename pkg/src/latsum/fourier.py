"""Fourier transforms of homogeneous families as tempered distributions.

Convention: ``fhat(y) = int f(x) exp(2 pi i x.y) dx``.  A family of type
``(-s, eps)`` transforms into one of type ``(-(k - s), eps)``; the constants
below are validated against :func:`mollified_transform_oracle`.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import DomainError, NotExtendable, OracleFailure, UnsupportedError
from .families import (HomogeneousFamily, PowerFamily, diagonal_even_power, one_dim_power, quadratic_power,
                       signed_one_dim_power)
from .hsum import _integer_value
from .scalar import gamma


@dataclass(frozen=True)
class FourierPair:
    """``fhat = constant * dual`` for ``source`` homogeneous of type ``(-s, eps)``."""

    source: HomogeneousFamily
    dual: HomogeneousFamily
    constant: complex

    def evaluate(self, y) -> complex:
        return self.constant * self.dual.evaluate(y)

    def transformed_family(self) -> HomogeneousFamily:
        return self.dual.scaled(self.constant)


def is_admissible(k: int, s: complex, eps: int) -> bool:
    """``(-s, eps)`` has a homogeneous extension whose transform has one as well.

    Excluded: ``s = k + e`` or ``s = -e`` with ``eps = (-1)^e`` for some ``e >= 0``.
    """
    n = _integer_value(s)
    if n is None:
        return True
    for e in (n - k, -n):
        if e >= 0 and eps == (-1) ** e:
            return False
    return True


def radial_constant(k: int, alpha: complex) -> complex:
    """``c_k(alpha)`` with ``|x|^-alpha -> c_k(alpha) |y|^(alpha - k)`` on R^k."""
    alpha = complex(alpha)
    return (cmath.exp((alpha - k / 2) * math.log(math.pi)) * gamma((k - alpha) / 2) / gamma(alpha / 2))


def signed_constant(alpha: complex) -> complex:
    """``sgn(x)|x|^-alpha -> C sgn(y)|y|^(alpha - 1)`` on R."""
    alpha = complex(alpha)
    return 1j * cmath.exp((alpha - 0.5) * math.log(math.pi)) * gamma((2 - alpha) / 2) / gamma((1 + alpha) / 2)


def _inverse(Q: list[list[Fraction]]) -> tuple[list[list[Fraction]], Fraction]:
    """Exact inverse and determinant by Gauss-Jordan elimination."""
    n = len(Q)
    A = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(Q)]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            raise DomainError("singular quadratic form")
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        p = A[c][c]
        det *= p
        A[c] = [v / p for v in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [row[n:] for row in A], det


def fourier_transform(fam: HomogeneousFamily) -> FourierPair:
    """Closed-form transform of a supported family."""
    if not isinstance(fam, PowerFamily):
        raise UnsupportedError("Fourier transforms are available for power families only")
    k, s, eps = fam.k, complex(fam.s), fam.parity
    kind = fam.kind
    if kind not in ("OneDimPower", "SignedOneDimPower", "QuadraticPower") and not (
            kind == "DiagonalEvenPower" and fam.params.get("r") == 1):
        raise UnsupportedError(f"no closed-form transform for {kind}")
    if not is_admissible(k, s, eps):
        raise NotExtendable(f"type (-{s}, {eps}) has no homogeneous transform pair in dimension {k}")
    scale = fam.scale
    if kind == "OneDimPower":
        return FourierPair(fam, one_dim_power(1 - s), scale * radial_constant(1, s))
    if kind == "SignedOneDimPower":
        return FourierPair(fam, signed_one_dim_power(1 - s), scale * signed_constant(s))
    if kind == "DiagonalEvenPower":
        return FourierPair(fam, diagonal_even_power(k, 1, (k - s) / 2), scale * radial_constant(k, s))
    Q = [[Fraction(c) for c in row] for row in fam.params["Q"]]
    Qinv, det = _inverse(Q)
    c = radial_constant(k, s) / math.sqrt(det)
    return FourierPair(fam, quadratic_power(Qinv, (k - s) / 2), scale * c)


# -- independent quadrature oracle -------------------------------------------

_DELTA0 = 0.04
_LEVELS = 5


def _gauss_taylor(delta: float, y: float, odd: bool, order: int) -> np.ndarray:
    """Taylor coefficients at 0 of ``exp(-pi delta x^2) * (cos|sin)(2 pi x y)``."""
    g = np.zeros(order + 1)
    for n in range(0, order // 2 + 1):
        g[2 * n] = (-math.pi * delta) ** n / math.factorial(n)
    t = np.zeros(order + 1)
    w = 2 * math.pi * y
    for n in range(order + 1):
        if (n % 2 == 1) == odd:
            t[n] = (-1) ** (n // 2) * w**n / math.factorial(n)
    return np.convolve(g, t)[: order + 1]


def _half_line(alpha: float, delta: float, y: float, odd: bool) -> float:
    """Finite part of ``int_0^inf x^-alpha exp(-pi delta x^2) trig(2 pi x y) dx``."""

    nsub = max(0, math.floor(alpha - 1 + 1e-12) + 1)
    full = _gauss_taylor(delta, y, odd, nsub + 4)
    coeffs = full[:nsub]
    trig = math.sin if odd else math.cos

    def head(x):
        # (g(x) - Taylor polynomial of degree < nsub) / x^nsub, regular at 0
        if x < 1e-3:
            return sum(c * x ** (j - nsub) for j, c in enumerate(full) if j >= nsub)
        g = math.exp(-math.pi * delta * x * x) * trig(2 * math.pi * x * y)
        return (g - sum(c * x**j for j, c in enumerate(coeffs))) / x**nsub

    inner, _ = quad(head, 0.0, 1.0, weight="alg", wvar=(nsub - alpha, 0.0), limit=400, epsabs=1e-14, epsrel=1e-13)
    for j, c in enumerate(coeffs):
        if c:
            inner += c / (j + 1 - alpha)
    outer, _ = quad(lambda x: x**-alpha * math.exp(-math.pi * delta * x * x), 1.0, np.inf,
                    weight="sin" if odd else "cos", wvar=2 * math.pi * y, limlst=200)
    return inner + outer


def _radial(k: int, alpha: float, delta: float, rho: float) -> float:
    """Mollified transform of ``|x|^-alpha`` on R^k at ``|y| = rho`` via the Hankel transform."""
    from scipy.special import gamma as sgamma, jv

    if alpha >= k:
        raise OracleFailure("radial oracle needs alpha < k")
    nu = k / 2 - 1
    w = 2 * math.pi * rho
    j0 = (w / 2) ** nu / sgamma(nu + 1)

    def smooth(r):
        # J_nu(w r) / r^nu * exp(-pi delta r^2), regular at r = 0
        if r < 1e-8:
            return j0 * math.exp(-math.pi * delta * r * r)
        return jv(nu, w * r) / r**nu * math.exp(-math.pi * delta * r * r)

    L = math.sqrt(40.0 / (math.pi * delta))
    pts = np.linspace(0.0, L, int(2 * w * L / math.pi) + 2)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        total, _ = quad(smooth, 0.0, pts[1], weight="alg", wvar=(k - 1 - alpha, 0.0), limit=200, epsabs=1e-14)
        for a, b in zip(pts[1:-1], pts[2:]):
            v, _ = quad(lambda r: r ** (k - 1 - alpha) * smooth(r), a, b, limit=200, epsabs=1e-14, epsrel=1e-12)
            total += v
    return 2 * math.pi * rho ** (1 - k / 2) * total


def _richardson(values: Sequence[complex], ratio: float = 2.0) -> tuple[complex, float]:
    """Extrapolate ``values[i] ~ V + c_1 h_i + c_2 h_i^2 + ...`` with ``h_i = h_0 / ratio^i``."""
    T = [list(values)]
    for j in range(1, len(values)):
        prev = T[-1]
        f = ratio**j
        T.append([(f * prev[i + 1] - prev[i]) / (f - 1) for i in range(len(prev) - 1)])
    best = T[-1][0]
    err = abs(T[-1][0] - T[-2][-1]) if len(T) > 1 else float("inf")
    return complex(best), float(err)


def mollified_transform_oracle(fam, y, deltas: Sequence[float] | None = None, tol: float = 1e-5,
                               parity: int | None = None) -> complex:
    """Transform at ``y`` of ``f * exp(-pi delta |x|^2)``, extrapolated to ``delta -> 0``.

    ``fam`` is a supported power family or, for ``k = 1``, a plain callable
    (whose parity may be given).  Raises :class:`OracleFailure` when the
    extrapolation does not settle to ``tol`` (relative).
    """

    y = np.atleast_1d(np.asarray(y, dtype=float))
    if not np.any(y):
        raise DomainError("the oracle needs y != 0")
    rho = float(np.linalg.norm(y))
    if deltas is None:
        deltas = [_DELTA0 * min(rho * rho, 1.0) / 2**i for i in range(_LEVELS)]
    deltas = list(deltas)

    if callable(fam) and not isinstance(fam, HomogeneousFamily):
        yy = float(y[0])

        def one(delta):
            out = 0j
            if parity in (None, 1):
                ev, _ = quad(lambda x: (fam(x) + fam(-x)) / 2 * math.exp(-math.pi * delta * x * x), 0, np.inf,
                             weight="cos", wvar=2 * math.pi * yy)
                out += 2 * ev
            if parity in (None, -1):
                od, _ = quad(lambda x: (fam(x) - fam(-x)) / 2 * math.exp(-math.pi * delta * x * x), 0, np.inf,
                             weight="sin", wvar=2 * math.pi * yy)
                out += 2j * od
            return out
    else:
        if not isinstance(fam, PowerFamily):
            raise UnsupportedError("oracle supports power families and callables")
        s = complex(fam.s)
        if s.imag != 0:
            raise OracleFailure("oracle supports real exponents only")
        alpha = s.real
        kind = fam.kind
        if kind == "OneDimPower":
            def one(delta):
                return 2 * _half_line(alpha, delta, abs(float(y[0])), False)
        elif kind == "SignedOneDimPower":
            def one(delta):
                return 2j * math.copysign(1.0, y[0]) * _half_line(alpha, delta, abs(float(y[0])), True)
        elif kind == "DiagonalEvenPower" and fam.params.get("r") == 1:
            def one(delta):
                return _radial(fam.k, alpha, delta, rho)
        elif kind == "QuadraticPower":
            # substitute x = Q^(-1/2) u: fhat(y) = det(Q)^(-1/2) * radial(|Q^(-1/2) y|)
            Q = np.array([[float(Fraction(c)) for c in row] for row in fam.params["Q"]])
            w, V = np.linalg.eigh(Q)
            yt = V @ ((V.T @ y) / np.sqrt(w))
            r2 = float(np.linalg.norm(yt))

            def one(delta):
                if fam.k == 1:
                    return 2 * _half_line(alpha, delta, r2, False) / math.sqrt(float(np.prod(w)))
                return _radial(fam.k, alpha, delta, r2) / math.sqrt(float(np.prod(w)))
        else:
            raise UnsupportedError(f"oracle does not handle {kind}")
        one = _scaled(one, fam.scale)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        values = [one(d) for d in deltas]
    ratio = deltas[0] / deltas[1] if len(deltas) > 1 else 2.0
    value, err = _richardson(values, ratio)
    if not err <= tol * max(1.0, abs(value)):
        raise OracleFailure(f"mollifier extrapolation did not settle (spread {err:.2e})")
    return value


def _scaled(fn: Callable[[float], complex], c: complex) -> Callable[[float], complex]:
    return lambda d: complex(c) * fn(d)


__all__ = [
    "FourierPair",
    "fourier_transform",
    "is_admissible",
    "radial_constant",
    "signed_constant",
    "mollified_transform_oracle",
]
