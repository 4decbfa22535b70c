"""Complex scalar utilities: powers of positive reals, the gamma function,
compensated accumulation and exact-phase torus points."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, PoleError

EPS = np.finfo(float).eps


def complex_pow(base: float, exponent: complex) -> complex:
    """``base ** exponent`` for a positive real base, principal logarithm."""
    if not base > 0:
        raise DomainError(f"complex_pow needs a positive base, got {base!r}")
    exponent = complex(exponent)
    if exponent == 0:
        return 1 + 0j
    if exponent.imag == 0:
        return complex(base ** exponent.real)
    return cmath.exp(exponent * math.log(base))


def complex_pow_array(base: np.ndarray, exponent: complex) -> np.ndarray:
    """Vectorised :func:`complex_pow`; entries of ``base`` must be positive."""
    exponent = complex(exponent)
    base = np.asarray(base, dtype=float)
    if exponent.imag == 0:
        return np.power(base, exponent.real).astype(complex)
    return np.exp(exponent * np.log(base))


# Lanczos coefficients, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def _loggamma_lanczos(z: complex) -> complex:
    # valid for Re z >= 0.5
    z = z - 1
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def gamma(z: complex) -> complex:
    """Complex gamma function (Lanczos approximation with reflection)."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"gamma has a pole at {z.real:g}")
    if z.imag == 0 and z.real == math.floor(z.real) and z.real <= 171:
        return complex(math.factorial(int(z.real) - 1))
    if z.real < 0.5:
        # reduce the argument first so that sin(pi z) keeps its relative accuracy near the poles
        n = round(z.real)
        sin_pz = (-1) ** (n % 2) * cmath.sin(math.pi * (z - n))
        return math.pi / (sin_pz * gamma(1 - z))
    return cmath.exp(_loggamma_lanczos(z))


class Accumulator:
    """Neumaier-compensated complex summation with a rounding bound.

    The bound is the heuristic ``eps * count * max|term|``.
    """

    def __init__(self) -> None:
        self._re = 0.0
        self._re_c = 0.0
        self._im = 0.0
        self._im_c = 0.0
        self.count = 0
        self.max_magnitude = 0.0

    @staticmethod
    def _neumaier(total: float, comp: float, x: float) -> tuple[float, float]:
        t = total + x
        if abs(total) >= abs(x):
            comp += (total - t) + x
        else:
            comp += (x - t) + total
        return t, comp

    def add(self, value: complex) -> None:
        value = complex(value)
        self._re, self._re_c = self._neumaier(self._re, self._re_c, value.real)
        self._im, self._im_c = self._neumaier(self._im, self._im_c, value.imag)
        self.count += 1
        self.max_magnitude = max(self.max_magnitude, abs(value))

    def extend(self, values: Iterable[complex] | np.ndarray) -> None:
        arr = np.asarray(values, dtype=complex).ravel()
        if arr.size == 0:
            return
        # fsum returns the correctly rounded partial sum of the block
        self._re, self._re_c = self._neumaier(self._re, self._re_c, math.fsum(arr.real))
        self._im, self._im_c = self._neumaier(self._im, self._im_c, math.fsum(arr.imag))
        self.count += arr.size
        self.max_magnitude = max(self.max_magnitude, float(np.max(np.abs(arr))))

    @property
    def value(self) -> complex:
        return complex(self._re + self._re_c, self._im + self._im_c)

    @property
    def rounding_bound(self) -> float:
        return float(EPS * max(self.count, 1) * self.max_magnitude)


def accurate_sum(values: np.ndarray) -> complex:
    """Correctly rounded (per component) sum of a complex array."""
    arr = np.asarray(values, dtype=complex).ravel()
    return complex(math.fsum(arr.real), math.fsum(arr.imag))


def _reduce_phase(p) -> Fraction | float:
    if isinstance(p, (int, Fraction)):
        return Fraction(p) % 1
    return float(p) % 1.0


@dataclass(frozen=True)
class TorusPoint:
    """A point of the torus ``T^k`` stored by its phases (in turns).

    Exact points carry :class:`~fractions.Fraction` phases; ``z_j = exp(2 pi i phase_j)``.
    Float phases are accepted for generic torus points.
    """

    phases: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "phases", tuple(_reduce_phase(p) for p in self.phases))

    @property
    def k(self) -> int:
        return len(self.phases)

    @property
    def exact(self) -> bool:
        return all(isinstance(p, Fraction) for p in self.phases)

    @property
    def denominator(self) -> int | None:
        if not self.exact:
            return None
        return math.lcm(*(p.denominator for p in self.phases)) if self.phases else 1

    def is_one_at(self, j: int) -> bool:
        return self.phases[j] == 0

    def is_one(self) -> bool:
        return all(p == 0 for p in self.phases)

    @property
    def values(self) -> tuple[complex, ...]:
        return tuple(_phase_exp(p) for p in self.phases)

    def power_phase(self, n: Sequence[int]):
        """Phase of ``z^n`` reduced mod 1 (exact for rational phases)."""
        total = sum((p * int(ni) for p, ni in zip(self.phases, n)), Fraction(0) if self.exact else 0.0)
        return _reduce_phase(total)

    def power(self, n: Sequence[int]) -> complex:
        return _phase_exp(self.power_phase(n))

    def axis_powers(self, j: int, ns: np.ndarray) -> np.ndarray:
        """``z_j ** n`` for an integer array ``ns``."""
        ns = np.asarray(ns, dtype=np.int64)
        p = self.phases[j]
        if isinstance(p, Fraction):
            num, den = p.numerator, p.denominator
            r = np.mod(ns * num, den)
            table = np.exp(2j * np.pi * np.arange(den) / den)
            return table[r]
        return np.exp(2j * np.pi * np.mod(ns * p, 1.0))

    def one_minus(self, j: int) -> complex:
        """``1 - z_j`` computed without cancellation."""
        p = self.phases[j]
        theta = float(p)
        return -2j * math.sin(math.pi * theta) * cmath.exp(1j * math.pi * theta)

    def conjugate(self) -> "TorusPoint":
        return TorusPoint(tuple(-p for p in self.phases))

    def __mul__(self, other: "TorusPoint") -> "TorusPoint":
        return TorusPoint(tuple(a + b for a, b in zip(self.phases, other.phases)))


def _phase_exp(p) -> complex:
    if isinstance(p, Fraction):
        # exact values at the quarter turns
        q = p * 4
        if q.denominator == 1:
            return (1 + 0j, 1j, -1 + 0j, -1j)[int(q) % 4]
    return cmath.exp(2j * math.pi * float(p))


def root_of_unity(numerators: Sequence[int], denominator: int) -> TorusPoint:
    """The point ``z`` with ``z_i = exp(2 pi i a_i / N)``."""
    if denominator < 1:
        raise DomainError("root_of_unity needs a positive denominator")
    return TorusPoint(tuple(Fraction(int(a), int(denominator)) for a in numerators))


def torsion_points(k: int, n: int, include_one: bool = False) -> list[TorusPoint]:
    """All points of ``T^k`` with ``z^n = 1``, in lexicographic order."""
    out = []
    for idx in np.ndindex(*([n] * k)):
        if not include_one and not any(idx):
            continue
        out.append(root_of_unity(idx, n))
    return out


def torus_from_reals(y: Sequence[float]) -> TorusPoint:
    """The image of ``y`` under ``y -> (exp 2 pi i y_1, ..., exp 2 pi i y_k)``."""
    return TorusPoint(tuple(y))
