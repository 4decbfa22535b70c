"""Sparse multivariate polynomials with exact rational coefficients.

Also contains the text parser used by the CLI, homogeneous decomposition,
a sampling-based positive-definiteness test and the graded ring elements
``N(x) / P_d(x)^w`` needed for inhomogeneous zeta sums.

Grammar (whitespace is ignored)::

    poly   := ["+"|"-"] term (("+"|"-") term)*
    term   := factor ("*" factor)*
    factor := number | "x" index ["^" integer]
    number := integer | integer "/" integer | decimal
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ParseError

Exponent = tuple[int, ...]


class SparsePolynomial:
    """Immutable polynomial in ``k`` variables, ``{exponent tuple: Fraction}``."""

    __slots__ = ("k", "_terms", "_hash")

    def __init__(self, k: int, terms: Mapping[Sequence[int], object] | None = None):
        self.k = int(k)
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.k or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for k={self.k}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, k: int, c) -> "SparsePolynomial":
        return cls(k, {(0,) * k: c})

    @classmethod
    def variable(cls, k: int, i: int) -> "SparsePolynomial":
        exp = [0] * k
        exp[i] = 1
        return cls(k, {tuple(exp): 1})

    @classmethod
    def quadratic_form(cls, Q: Sequence[Sequence]) -> "SparsePolynomial":
        k = len(Q)
        terms: dict[Exponent, Fraction] = {}
        for i in range(k):
            for j in range(k):
                exp = [0] * k
                exp[i] += 1
                exp[j] += 1
                terms[tuple(exp)] = terms.get(tuple(exp), Fraction(0)) + Fraction(Q[i][j])
        return cls(k, terms)

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.k, Fraction(0))

    # arithmetic
    def _check(self, other: "SparsePolynomial") -> None:
        if other.k != self.k:
            raise ValueError("polynomials in different numbers of variables")

    def _coerce(self, other) -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            self._check(other)
            return other
        return SparsePolynomial.constant(self.k, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return SparsePolynomial(self.k, terms)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial(self.k, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return SparsePolynomial(self.k, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = SparsePolynomial.constant(self.k, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, SparsePolynomial):
            return self.k == other.k and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == SparsePolynomial.constant(self.k, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.k, frozenset(self._terms.items())))
        return self._hash

    # evaluation
    def evaluate(self, point: Sequence) -> Fraction | float | complex:
        """Exact when the point is rational (ints or Fractions)."""
        if len(point) != self.k:
            raise ValueError("point has the wrong dimension")
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for xi, ei in zip(point, e):
                if ei:
                    term = term * xi**ei
            total = total + term
        return total

    def evaluate_array(self, points: np.ndarray, dtype=float) -> np.ndarray:
        """Float evaluation on an array of shape ``(..., k)`` (``dtype`` may be ``np.longdouble``)."""
        points = np.asarray(points, dtype=dtype)
        out = np.zeros(points.shape[:-1], dtype=dtype)
        for e, c in self._terms.items():
            term = np.full(points.shape[:-1], dtype(c.numerator) / dtype(c.denominator), dtype=dtype)
            for i, ei in enumerate(e):
                if ei:
                    term = term * points[..., i] ** ei
            out = out + term
        return out

    def derivative(self, i: int) -> "SparsePolynomial":
        terms = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return SparsePolynomial(self.k, terms)

    def gradient_bound(self) -> float:
        """Upper bound for the gradient norm on the closed unit ball."""
        return math.sqrt(sum(sum(abs(float(c)) * e[i] for e, c in self._terms.items()) ** 2 for i in range(self.k)))

    def __repr__(self):
        return f"SparsePolynomial({self.k}, {format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


def format_polynomial(p: SparsePolynomial) -> str:
    """Canonical text form, parseable by :func:`parse_polynomial`."""
    if p.is_zero():
        return "0"
    pieces = []
    for e in sorted(p._terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
        c = p._terms[e]
        sign = "-" if c < 0 else "+"
        c = abs(c)
        factors = [f"x{i}" + (f"^{ei}" if ei > 1 else "") for i, ei in enumerate(e) if ei]
        if c != 1 or not factors:
            factors.insert(0, str(c))
        pieces.append((sign, "*".join(factors)))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


_TOKEN = re.compile(
    r"(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?(?:/\d+)?|\.\d+(?:[eE][+-]?\d+)?)|(?P<var>x\d+)|(?P<op>[+\-*^])"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {ch!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), pos))
        pos = m.end()
    return tokens


def parse_polynomial(text: str, k: int) -> SparsePolynomial:
    """Parse a polynomial in ``x0 .. x{k-1}`` (see module docstring)."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial", 0)
    i = 0
    result = SparsePolynomial(k)

    def peek():
        return tokens[i] if i < len(tokens) else None

    def parse_factor():
        nonlocal i
        tok = peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(text))
        kind, val, pos = tok
        if kind == "num":
            i += 1
            try:
                return SparsePolynomial.constant(k, Fraction(val))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad number {val!r}", pos) from None
        if kind == "var":
            i += 1
            idx = int(val[1:])
            if idx >= k:
                raise ParseError(f"variable {val} out of range for k={k}", pos)
            poly = SparsePolynomial.variable(k, idx)
            nxt = peek()
            if nxt is not None and nxt[1] == "^":
                i += 1
                exp_tok = peek()
                if exp_tok is None or exp_tok[0] != "num" or not exp_tok[1].isdigit():
                    raise ParseError("expected a non-negative integer exponent", exp_tok[2] if exp_tok else len(text))
                i += 1
                poly = poly ** int(exp_tok[1])
            return poly
        raise ParseError(f"unexpected token {val!r}", pos)

    def parse_term():
        nonlocal i
        term = parse_factor()
        while peek() is not None and peek()[1] == "*":
            i += 1
            term = term * parse_factor()
        return term

    sign = 1
    if peek()[1] in "+-":
        sign = -1 if peek()[1] == "-" else 1
        i += 1
    result = result + sign * parse_term()
    while peek() is not None:
        kind, val, pos = peek()
        if val not in "+-" or kind != "op":
            raise ParseError(f"expected '+' or '-', got {val!r}", pos)
        i += 1
        sign = -1 if val == "-" else 1
        result = result + sign * parse_term()
    return result


def homogeneous_decompose(p: SparsePolynomial) -> list[SparsePolynomial]:
    """Return ``[P_0, ..., P_d]`` with ``P_j`` the degree-``j`` part of ``p``."""
    d = max(p.degree, 0)
    parts: list[dict] = [dict() for _ in range(d + 1)]
    for e, c in p.items():
        parts[sum(e)][e] = c
    return [SparsePolynomial(p.k, t) for t in parts]


def _sphere_grid(k: int, n: int) -> np.ndarray:
    """Points on the unit sphere in R^k with spacing about pi/n."""
    if k == 1:
        return np.array([[1.0], [-1.0]])
    if k == 2:
        th = np.linspace(0, 2 * np.pi, 4 * n, endpoint=False)
        return np.stack([np.cos(th), np.sin(th)], axis=-1)
    if k == 3:
        th = np.linspace(0, np.pi, n + 1)
        ph = np.linspace(0, 2 * np.pi, 2 * n, endpoint=False)
        T, P = np.meshgrid(th, ph, indexing="ij")
        pts = np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T)], axis=-1)
        return pts.reshape(-1, 3)
    # k > 3: random directions plus the coordinate axes
    rng = np.random.default_rng(12345)
    pts = rng.normal(size=(200 * n * k, k))
    pts = np.concatenate([pts, np.eye(k), -np.eye(k)])
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


@dataclass(frozen=True)
class DefinitenessResult:
    positive: bool
    minimum: float
    lower_bound: float
    witness: tuple[float, ...] | None = None

    def __iter__(self):
        yield self.positive
        yield self.minimum if self.positive else self.witness

    def __bool__(self):
        return self.positive


def is_positive_definite(pd: SparsePolynomial, max_refinements: int = 6) -> DefinitenessResult:
    """Check ``P_d(x) > 0`` on the unit sphere by Lipschitz-refined sampling.

    Returns the sampled minimum (polished by local optimisation) and a lower
    bound ``min - L h`` where ``L`` bounds the gradient and ``h`` the grid gap.
    Heuristic certification, adequate for k <= 3 and low degree.
    """
    if not pd.is_homogeneous():
        raise ValueError("is_positive_definite expects a homogeneous polynomial")
    k = pd.k
    if pd.is_zero():
        return DefinitenessResult(False, 0.0, 0.0, tuple([1.0] + [0.0] * (k - 1)))
    lip = pd.gradient_bound()
    n = 32
    for _ in range(max_refinements):
        pts = _sphere_grid(k, n)
        vals = pd.evaluate_array(pts)
        i = int(np.argmin(vals))
        vmin = float(vals[i])
        direction = _polish_minimum(pd, pts[i])
        vmin = min(vmin, float(pd.evaluate_array(direction[None, :])[0]))
        if vmin <= 0:
            w = pts[i] if vals[i] <= 0 else direction
            w = np.where(np.abs(w) < 1e-12, 0.0, w)
            nz = np.flatnonzero(w)
            if nz.size and w[nz[0]] < 0 and pd.degree % 2 == 0:
                w = -w
            return DefinitenessResult(False, vmin, vmin, tuple(float(c) for c in w))
        gap = np.pi / n if k > 1 else 0.0
        lower = vmin - lip * gap
        if lower > 0:
            return DefinitenessResult(True, vmin, lower)
        n *= 2
    return DefinitenessResult(True, vmin, max(lower, 0.0))


def _polish_minimum(pd: SparsePolynomial, start: np.ndarray) -> np.ndarray:
    from scipy.optimize import minimize

    k = pd.k
    if k == 1:
        return start
    def fun(v):
        v = v / np.linalg.norm(v)
        return float(pd.evaluate_array(v[None, :])[0])
    res = minimize(fun, start, method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000})
    v = res.x / np.linalg.norm(res.x)
    return v if fun(v) <= fun(start) else start


@dataclass(frozen=True)
class GradedRational:
    """The element ``numerator(x) / base(x)^base_power`` (numerator homogeneous)."""

    numerator: SparsePolynomial
    base: SparsePolynomial
    base_power: int

    @property
    def degree(self) -> int:
        if self.numerator.is_zero():
            return 0
        return self.numerator.degree - self.base_power * self.base.degree

    def evaluate(self, point: Sequence):
        return self.numerator.evaluate(point) / self.base.evaluate(point) ** self.base_power

    def evaluate_array(self, points: np.ndarray) -> np.ndarray:
        return self.numerator.evaluate_array(points) / self.base.evaluate_array(points) ** self.base_power


def reduction_ratio(p: SparsePolynomial) -> list[GradedRational]:
    """Components of ``R = (P_d - P) / P_d`` of degrees ``-1 .. -d``."""
    parts = homogeneous_decompose(p)
    d = len(parts) - 1
    pd = parts[d]
    return [GradedRational(-parts[d - i], pd, 1) for i in range(1, d + 1)]


def graded_power_components(r_components: Iterable[GradedRational], e: int) -> dict[int, GradedRational]:
    """Homogeneous components of ``R^e``: ``j -> (R^e)_j`` of degree ``-j``.

    Every component is returned over the common base ``P_d^e``; zero
    numerators are dropped.
    """
    comps = list(r_components)
    if not comps:
        return {}
    base = comps[0].base
    d = base.degree
    k = base.k
    # clear denominators: R = (sum_i N_i P_d^(1 - w_i)) / P_d
    numer = SparsePolynomial(k)
    for c in comps:
        if c.base != base:
            raise ValueError("components must share the same base polynomial")
        if c.base_power > 1:
            raise ValueError("expected components over P_d^1")
        numer = numer + c.numerator * base ** (1 - c.base_power)
    if e == 0:
        return {0: GradedRational(SparsePolynomial.constant(k, 1), base, 0)}
    power = numer**e
    out = {}
    for deg, part in enumerate(homogeneous_decompose(power)):
        if part.is_zero():
            continue
        j = e * d - deg
        out[j] = GradedRational(part, base, e)
    return out
