"""Homogeneous function families on R^k minus the origin.

Every concrete family is stored as ``scale * num(x) * base(x)^(-w)`` with
``num`` homogeneous of degree ``a`` and ``base`` homogeneous of even degree
``d`` and positive away from the origin.  Such an ``f`` satisfies
``f(tx) = t^(-s) f(x)`` with ``s = d*w - a`` and ``f(-x) = (-1)^a f(x)``.

Derivatives are exact: the Taylor coefficients of ``t -> f(v + t u)`` are
computed by truncated power-series ("jet") arithmetic on numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError, ParseError, UnsupportedError
from .polynomials import GradedRational, SparsePolynomial, is_positive_definite

MAX_DERIVATIVE_ORDER = 16


# -- jet arithmetic -----------------------------------------------------------

def jet_mul(a: list, b: list, order: int) -> list:
    out = []
    for n in range(order + 1):
        acc = 0
        for i in range(max(0, n - len(b) + 1), min(n, len(a) - 1) + 1):
            acc = acc + a[i] * b[n - i]
        out.append(acc)
    return out


def polynomial_jet(p: SparsePolynomial, points: np.ndarray, direction: Sequence[float], order: int) -> list:
    """Taylor coefficients in ``t`` of ``p(points + t*direction)`` up to ``order``."""
    points = np.asarray(points, dtype=float)
    shape = points.shape[:-1]
    out = [np.zeros(shape) for _ in range(order + 1)]
    for e, c in p.items():
        term = [np.full(shape, float(c))]
        for i, ei in enumerate(e):
            if not ei:
                continue
            u = float(direction[i])
            v = points[..., i]
            factor = [math.comb(ei, l) * v ** (ei - l) * u**l for l in range(min(ei, order) + 1)]
            term = jet_mul(term, factor, order)
        for n, t in enumerate(term):
            out[n] = out[n] + t
    return out


def jet_power(b: list, alpha: complex, order: int) -> list:
    """Taylor coefficients of ``b(t)^alpha`` given those of ``b`` (``b_0 > 0``)."""
    b0 = b[0]
    alpha = complex(alpha)
    if alpha.imag == 0:
        g0 = np.power(b0, alpha.real).astype(complex)
    else:
        g0 = np.exp(alpha * np.log(b0))
    g = [g0]
    nb = len(b)
    for n in range(1, order + 1):
        acc = 0
        for j in range(1, min(n, nb - 1) + 1):
            acc = acc + ((alpha + 1) * j - n) * b[j] * g[n - j]
        g.append(acc / (n * b0))
    return g


# -- families -----------------------------------------------------------------

class HomogeneousFamily:
    """Interface shared by all families.

    Subclasses provide ``k``, ``s`` (complex, ``f(tx) = t^-s f(x)``), ``parity``
    and :meth:`evaluate_array`.
    """

    k: int
    s: complex
    parity: int

    @property
    def is_polynomial(self) -> bool:
        return False

    def growth_exponent(self) -> float:
        return -complex(self.s).real

    def evaluate_array(self, points: np.ndarray) -> np.ndarray:  # pragma: no cover - interface
        raise NotImplementedError

    def evaluate_array_extended(self, points: np.ndarray) -> np.ndarray:
        """Values in ``np.clongdouble``; families without a dedicated path round up from double."""
        return np.asarray(self.evaluate_array(points), dtype=complex).astype(np.clongdouble)

    def evaluate(self, x) -> complex:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if x.shape != (self.k,):
            raise DomainError(f"expected a point in R^{self.k}")
        if not self.is_polynomial and not np.any(x):
            raise DomainError("family is not defined at the origin")
        return complex(self.evaluate_array(x[None, :])[0])

    def scaled(self, c: complex) -> "HomogeneousFamily":
        return LinearCombination((self,), (complex(c),))

    def describe(self) -> dict:
        return {"kind": type(self).__name__, "k": self.k, "s": _cplx(self.s), "parity": self.parity}


def _cplx(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


@dataclass(frozen=True)
class PowerFamily(HomogeneousFamily):
    """``scale * num(x) * base(x)^(-w)``."""

    num: SparsePolynomial
    base: SparsePolynomial
    w: complex
    scale: complex = 1.0
    kind: str = "RationalHomogeneous"
    params: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "w", complex(self.w))
        object.__setattr__(self, "scale", complex(self.scale))
        if self.num.k != self.base.k:
            raise ValueError("numerator and base live in different dimensions")
        if not self.num.is_homogeneous() or not self.base.is_homogeneous():
            raise ValueError("numerator and base must be homogeneous")
        if self.base.degree % 2:
            raise ValueError("base must have even degree")

    @property
    def k(self) -> int:
        return self.num.k

    @property
    def num_degree(self) -> int:
        return max(self.num.degree, 0)

    @property
    def s(self) -> complex:
        return self.base.degree * self.w - self.num_degree

    @property
    def parity(self) -> int:
        return -1 if self.num_degree % 2 else 1

    @property
    def is_polynomial(self) -> bool:
        if self.base.degree <= 0 or self.w == 0:
            return True
        return self.w.imag == 0 and self.w.real <= 0 and self.w.real == math.floor(self.w.real)

    def as_polynomial(self) -> tuple[SparsePolynomial, complex]:
        """``(p, scale)`` with ``f = scale * p`` for polynomial families."""
        if not self.is_polynomial:
            raise UnsupportedError("family is not a polynomial")
        n = 0 if self.base.degree <= 0 else int(-self.w.real)
        return self.num * self.base**n, self.scale

    def evaluate_array(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        num = self.num.evaluate_array(points)
        if self.is_polynomial:
            p, c = self.as_polynomial()
            return c * p.evaluate_array(points).astype(complex)
        base = self.base.evaluate_array(points)
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.w.imag == 0:
                powv = np.power(base, -self.w.real).astype(complex)
            else:
                powv = np.exp(-self.w * np.log(base))
        return self.scale * num * powv

    def evaluate_array_extended(self, points: np.ndarray) -> np.ndarray:
        """As :meth:`evaluate_array` but in extended precision, to keep high-order differences clean."""
        ld = np.longdouble
        points = np.asarray(points, dtype=ld)
        if self.is_polynomial:
            p, c = self.as_polynomial()
            return np.clongdouble(c) * p.evaluate_array(points, ld).astype(np.clongdouble)
        num = self.num.evaluate_array(points, ld)
        base = self.base.evaluate_array(points, ld)
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.w.imag == 0:
                powv = np.power(base, -ld(self.w.real)).astype(np.clongdouble)
            else:
                powv = np.exp(-np.clongdouble(self.w) * np.log(base))
        return np.clongdouble(self.scale) * num * powv

    def taylor_coefficients(self, points: np.ndarray, direction: Sequence[float], order: int) -> list:
        """Coefficients of ``t^i`` in ``f(points + t*direction)``, ``i = 0..order``."""
        points = np.asarray(points, dtype=float)
        nj = polynomial_jet(self.num, points, direction, order)
        if self.is_polynomial:
            p, c = self.as_polynomial()
            return [c * t for t in polynomial_jet(p, points, direction, order)]
        bj = polynomial_jet(self.base, points, direction, order)
        if np.any(bj[0] <= 0):
            raise DomainError("Taylor expansion requested at a point where the family is singular")
        gj = jet_power(bj, -self.w, order)
        return [self.scale * t for t in jet_mul(nj, gj, order)]

    def axis_derivative(self, axis: int, order: int, x) -> complex:
        """Exact ``order``-th partial derivative along ``axis`` at ``x``."""
        if order > MAX_DERIVATIVE_ORDER:
            raise UnsupportedError(f"derivative order {order} exceeds {MAX_DERIVATIVE_ORDER}")
        x = np.atleast_1d(np.asarray(x, dtype=float))
        u = np.zeros(self.k)
        u[axis] = 1.0
        coeffs = self.taylor_coefficients(x[None, :], u, order)
        return complex(coeffs[order][0]) * math.factorial(order)

    def directional_derivative(self, direction: Sequence[float], order: int, x) -> complex:
        if order > MAX_DERIVATIVE_ORDER:
            raise UnsupportedError(f"derivative order {order} exceeds {MAX_DERIVATIVE_ORDER}")
        x = np.atleast_1d(np.asarray(x, dtype=float))
        coeffs = self.taylor_coefficients(x[None, :], direction, order)
        return complex(coeffs[order][0]) * math.factorial(order)

    def scaled(self, c: complex) -> "PowerFamily":
        return replace(self, scale=self.scale * complex(c))

    def describe(self) -> dict:
        d = super().describe()
        d.update(kind=self.kind, scale=_cplx(self.scale))
        d.update({k: (_cplx(v) if isinstance(v, complex) else v) for k, v in self.params.items()})
        return d


@dataclass(frozen=True)
class TaylorPiece(HomogeneousFamily):
    """``g_i(v)``: the coefficient of ``t^i`` in ``f(v + t*direction)``.

    Homogeneous of type ``(-(s+i), (-1)^i eps)`` when ``f`` has type ``(-s, eps)``.
    """

    parent: PowerFamily
    direction: tuple
    order: int

    @property
    def k(self) -> int:
        return self.parent.k

    @property
    def s(self) -> complex:
        return self.parent.s + self.order

    @property
    def parity(self) -> int:
        return self.parent.parity * (-1) ** self.order

    @property
    def is_polynomial(self) -> bool:
        return self.parent.is_polynomial

    def evaluate_array(self, points: np.ndarray) -> np.ndarray:
        if self.order > MAX_DERIVATIVE_ORDER:
            raise UnsupportedError(f"derivative order {self.order} exceeds {MAX_DERIVATIVE_ORDER}")
        points = np.asarray(points, dtype=float)
        bad = ~np.any(points != 0, axis=-1)
        if np.any(bad) and not self.is_polynomial:
            safe = points.copy()
            safe[bad] = 1.0
            out = self.parent.taylor_coefficients(safe, self.direction, self.order)[self.order]
            out = np.asarray(out, dtype=complex)
            out[bad] = np.nan
            return out
        return np.asarray(self.parent.taylor_coefficients(points, self.direction, self.order)[self.order], dtype=complex)


@dataclass(frozen=True)
class LinearCombination(HomogeneousFamily):
    """``sum c_i f_i`` over families of one common type."""

    families: tuple
    coefficients: tuple

    def __post_init__(self):
        if not self.families:
            raise ValueError("empty linear combination")
        f0 = self.families[0]
        for f in self.families[1:]:
            if f.k != f0.k or abs(complex(f.s) - complex(f0.s)) > 1e-12 or f.parity != f0.parity:
                raise ValueError("linear combination of families of different type")

    @property
    def k(self) -> int:
        return self.families[0].k

    @property
    def s(self) -> complex:
        return complex(self.families[0].s)

    @property
    def parity(self) -> int:
        return self.families[0].parity

    @property
    def is_polynomial(self) -> bool:
        return all(f.is_polynomial for f in self.families)

    def evaluate_array(self, points: np.ndarray) -> np.ndarray:
        out = 0
        for f, c in zip(self.families, self.coefficients):
            out = out + complex(c) * f.evaluate_array(points)
        return np.asarray(out, dtype=complex)

    def evaluate_array_extended(self, points: np.ndarray) -> np.ndarray:
        out = 0
        for f, c in zip(self.families, self.coefficients):
            out = out + np.clongdouble(c) * f.evaluate_array_extended(points)
        return np.asarray(out, dtype=np.clongdouble)

    def scaled(self, c: complex) -> "LinearCombination":
        return LinearCombination(self.families, tuple(complex(c) * x for x in self.coefficients))


# -- constructors -------------------------------------------------------------

def _x2(k: int = 1) -> SparsePolynomial:
    return SparsePolynomial(k, {(2,): 1}) if k == 1 else SparsePolynomial.quadratic_form(np.eye(k, dtype=int).tolist())


def one_dim_power(s: complex) -> PowerFamily:
    """``|x|^(-s)`` on R."""
    s = complex(s)
    return PowerFamily(SparsePolynomial.constant(1, 1), _x2(), s / 2, kind="OneDimPower", params={"s": s})


def signed_one_dim_power(s: complex) -> PowerFamily:
    """``sgn(x) |x|^(-s)`` on R."""
    s = complex(s)
    return PowerFamily(SparsePolynomial.variable(1, 0), _x2(), (s + 1) / 2, kind="SignedOneDimPower", params={"s": s})


def quadratic_power(Q: Sequence[Sequence], exponent: complex) -> PowerFamily:
    """``(x.Qx)^(-exponent)``; homogeneous of degree ``-2*exponent``."""
    Qf = [[Fraction(c) for c in row] for row in Q]
    k = len(Qf)
    if any(len(row) != k for row in Qf) or any(Qf[i][j] != Qf[j][i] for i in range(k) for j in range(k)):
        raise DomainError("Q must be a symmetric square matrix")
    base = SparsePolynomial.quadratic_form(Qf)
    if not is_positive_definite(base).positive:
        raise DomainError("Q must be positive definite")
    return PowerFamily(SparsePolynomial.constant(k, 1), base, complex(exponent), kind="QuadraticPower",
                       params={"Q": [[str(c) for c in row] for row in Qf], "exponent": complex(exponent)})


def diagonal_even_power(k: int, r: int, exponent: complex) -> PowerFamily:
    """``(x_1^(2r) + ... + x_k^(2r))^(-exponent)``."""
    if r < 1:
        raise DomainError("r must be a positive integer")
    terms = {}
    for i in range(k):
        e = [0] * k
        e[i] = 2 * r
        terms[tuple(e)] = 1
    return PowerFamily(SparsePolynomial.constant(k, 1), SparsePolynomial(k, terms), complex(exponent),
                       kind="DiagonalEvenPower", params={"r": r, "exponent": complex(exponent)})


def rational_homogeneous(element: GradedRational, s_extra: complex, scale: complex = 1.0) -> PowerFamily:
    """``N(x) * P_d(x)^(-(w + s_extra))`` for ``element = N / P_d^w``."""
    return PowerFamily(element.numerator, element.base, element.base_power + complex(s_extra), scale=scale,
                       kind="RationalHomogeneous", params={"base_power": element.base_power, "s_extra": complex(s_extra)})


def polynomial_family(p: SparsePolynomial, scale: complex = 1.0) -> PowerFamily:
    if not p.is_homogeneous():
        raise DomainError("polynomial family must be homogeneous")
    return PowerFamily(p, SparsePolynomial.constant(p.k, 1), 0, scale=scale, kind="Polynomial")


def growth_exponent(fam: HomogeneousFamily) -> float:
    return fam.growth_exponent()


def evaluate(fam: HomogeneousFamily, x) -> complex:
    return fam.evaluate(x)


def axis_derivative(fam: PowerFamily, axis: int, order: int, x) -> complex:
    return fam.axis_derivative(axis, order, x)


# -- CLI mini-format ----------------------------------------------------------

def parse_complex(text: str) -> complex:
    """Parse ``a``, ``a+bi`` or ``a-bi`` (``j`` also accepted)."""
    t = str(text).strip().replace(" ", "").replace("i", "j")
    if t.endswith("j") and (t in ("j", "+j", "-j") or t[-2] in "+-"):
        t = t[:-1] + "1j"
    try:
        return complex(t)
    except ValueError:
        raise ParseError(f"cannot parse complex number {text!r}") from None


def parse_family(text: str, k: int | None = None) -> PowerFamily:
    """Parse ``power:s=..``, ``signed-power:s=..``, ``quadform:Q=[[..]];s=..``,
    ``diag-even:r=..;s=..`` (optionally ``;k=..``)."""
    if ":" not in text:
        raise ParseError(f"family spec {text!r} lacks a 'kind:' prefix", 0)
    kind, _, rest = text.partition(":")
    fields = {}
    for part in filter(None, rest.split(";")):
        key, eq, val = part.partition("=")
        if not eq:
            raise ParseError(f"expected key=value, got {part!r}", text.find(part))
        fields[key.strip()] = val.strip()
    try:
        s = parse_complex(fields["s"])
    except KeyError:
        raise ParseError("family spec needs s=...", len(text)) from None
    kind = kind.strip()
    if kind == "power":
        return one_dim_power(s)
    if kind == "signed-power":
        return signed_one_dim_power(s)
    if kind == "quadform":
        if "Q" not in fields:
            raise ParseError("quadform needs Q=[[...]]", len(text))
        return quadratic_power(_parse_matrix(fields["Q"]), s)
    if kind == "diag-even":
        kk = int(fields.get("k", k if k is not None else 2))
        return diagonal_even_power(kk, int(fields.get("r", 1)), s)
    raise ParseError(f"unknown family kind {kind!r}", 0)


def _parse_matrix(text: str) -> list[list[Fraction]]:
    rows = text.replace(" ", "").strip("[]").split("],[")
    try:
        return [[Fraction(c.strip().strip("[]")) for c in row.split(",")] for row in rows]
    except ValueError:
        raise ParseError(f"cannot parse matrix {text!r}") from None
