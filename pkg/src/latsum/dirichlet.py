"""Dirichlet characters, Gauss sums and L-functions from twisted lattice sums.

For primitive ``chi`` mod ``q``, ``sum_a conj(chi)(a) e(a n / q) = chi(n) tau(conj chi)``,
so with ``f`` of parity ``chi(-1)``

    L(chi, s) = (2 tau(conj chi))^(-1) * sum_a conj(chi)(a) F_f(0, e(a/q)),

``f = |x|^-s`` or ``sgn(x)|x|^-s``.  Each ``F_f(0, e(a/q))`` is a t-sum.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError, NotSupported
from .families import one_dim_power, signed_one_dim_power
from .scalar import root_of_unity
from .tsum import SumResult, t_sum

MAX_MODULUS = 1000


def _factor(q: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= q:
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            out.append((p, e))
        p += 1
    if q > 1:
        out.append((q, 1))
    return out


def _order(g: int, n: int) -> int:
    x, k = g % n, 1
    while x != 1:
        x = x * g % n
        k += 1
    return k


def _local_generators(p: int, e: int) -> list[tuple[int, int]]:
    """Generators of ``(Z/p^e)^*`` with their orders."""
    pe = p**e
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [(3, 2)]
        return [(pe - 1, 2), (5, 2 ** (e - 2))]
    phi = pe - pe // p
    for g in range(2, pe):
        if math.gcd(g, p) == 1 and _order(g, pe) == phi:
            return [(g, phi)]
    raise AssertionError("no primitive root found")  # pragma: no cover


def _crt_lift(g: int, pe: int, q: int) -> int:
    """The residue mod ``q`` congruent to ``g`` mod ``pe`` and to 1 mod ``q / pe``."""
    rest = q // pe
    if rest == 1:
        return g % q
    # x = 1 + rest * t with x = g mod pe
    t = ((g - 1) * pow(rest, -1, pe)) % pe
    return (1 + rest * t) % q


@dataclass(frozen=True)
class DirichletCharacter:
    """A character mod ``q`` given by exact phases ``chi(a) = e(phase[a])`` (``None`` where ``chi(a) = 0``)."""

    modulus: int
    phases: tuple

    @property
    def values(self) -> tuple[complex, ...]:
        return tuple(0j if p is None else _e(p) for p in self.phases)

    def __call__(self, n: int) -> complex:
        p = self.phases[int(n) % self.modulus]
        return 0j if p is None else _e(p)

    @property
    def parity(self) -> int:
        if self.modulus <= 2:
            return 1
        return 1 if self.phases[self.modulus - 1] == 0 else -1

    @property
    def is_trivial(self) -> bool:
        return all(p is None or p == 0 for p in self.phases)

    @property
    def conductor(self) -> int:
        q = self.modulus
        for d in sorted(d for d in range(1, q + 1) if q % d == 0):
            if all(self.phases[a] == 0 for a in range(1, q) if math.gcd(a, q) == 1 and a % d == 1 % d):
                return d
        return q  # pragma: no cover

    @property
    def primitive(self) -> bool:
        return self.conductor == self.modulus

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(None if p is None else (-p) % 1 for p in self.phases))


def _e(p: Fraction) -> complex:
    q = p * 4
    if q.denominator == 1:
        return (1 + 0j, 1j, -1 + 0j, -1j)[int(q) % 4]
    return cmath.exp(2j * math.pi * float(p))


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All characters mod ``q``; index 0 is the principal character.

    Characters are indexed lexicographically by the exponents ``(j_1, ...)``
    with ``chi(g_i) = e(j_i / ord(g_i))`` for the generators ``g_i`` taken in
    increasing order of the prime (``-1`` before ``5`` for powers of 2).
    """
    if not 1 <= q <= MAX_MODULUS:
        raise DomainError(f"modulus must lie in [1, {MAX_MODULUS}]")
    gens = []
    for p, e in _factor(q):
        for g, n in _local_generators(p, e):
            gens.append((_crt_lift(g, p**e, q), n))
    # discrete logarithms of every unit w.r.t. the generators
    logs = {1 % q: (0,) * len(gens)}
    for i, (g, n) in enumerate(gens):
        new = {}
        for a, v in logs.items():
            x = a
            for t in range(n):
                w = list(v)
                w[i] = t
                new[x] = tuple(w)
                x = x * g % q
        logs = new
    out = []
    for js in np.ndindex(*[n for _, n in gens]) if gens else [()]:
        phases = [None] * q
        for a, v in logs.items():
            phases[a] = sum((Fraction(j * t, n) for j, t, (_, n) in zip(js, v, gens)), Fraction(0)) % 1
        if q == 1:
            phases = [Fraction(0)]
        out.append(DirichletCharacter(q, tuple(phases)))
    return out


def character(q: int, index: int) -> DirichletCharacter:
    chars = enumerate_characters(q)
    if not 0 <= index < len(chars):
        raise DomainError(f"character index {index} out of range for modulus {q} ({len(chars)} characters)")
    return chars[index]


def character_from_values(values: Sequence) -> DirichletCharacter:
    """Character from its value table ``chi(0), ..., chi(q-1)`` (must be a character)."""
    q = len(values)
    phases = []
    for a, v in enumerate(values):
        v = complex(v)
        if abs(v) < 1e-12:
            phases.append(None)
            continue
        if abs(abs(v) - 1) > 1e-9:
            raise DomainError("character values must be 0 or roots of unity")
        ph = Fraction(cmath.phase(v) / (2 * math.pi)).limit_denominator(4 * q) % 1
        phases.append(ph)
    chi = DirichletCharacter(q, tuple(phases))
    for c in enumerate_characters(q):
        if c.phases == chi.phases:
            return c
    raise DomainError("value table is not a Dirichlet character")


def gauss_sum(chi: DirichletCharacter) -> complex:
    q = chi.modulus
    return sum(chi(a) * cmath.exp(2j * math.pi * a / q) for a in range(q))


def l_function(chi: DirichletCharacter, s, tol: float = 1e-10) -> SumResult:
    """``L(chi, s)`` for primitive nontrivial ``chi`` and any complex ``s``."""
    if chi.is_trivial:
        raise NotSupported("the principal character is not covered; use the zeta function")
    if not chi.primitive:
        raise NotSupported(f"character mod {chi.modulus} is imprimitive (conductor {chi.conductor})")
    q = chi.modulus
    eps = chi.parity
    fam = one_dim_power(s) if eps == 1 else signed_one_dim_power(s)
    cbar = chi.conjugate()
    tau = gauss_sum(cbar)
    total = 0j
    err = 0.0
    used = 0
    for a in range(1, q // 2 + 1):
        c = cbar(a)
        if c == 0:
            continue
        # a and q - a contribute equally: conj(chi)(-a) F(0, e(-a/q)) = conj(chi)(a) F(0, e(a/q))
        mult = 1 if 2 * a == q else 2
        r = t_sum(fam, root_of_unity([a], q), tol=tol / q)
        total += mult * c * r.value
        err += mult * r.error_estimate
        used += r.terms_used
    value = total / (2 * tau)
    return SumResult(value, err / (2 * abs(tau)), used, {"path": "dirichlet", "modulus": q, "parity": eps})


__all__ = [
    "DirichletCharacter",
    "enumerate_characters",
    "character",
    "character_from_values",
    "gauss_sum",
    "l_function",
]
