"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are rational coordinate vectors over the power basis
1, zeta, ..., zeta^(phi(m)-1), multiplied modulo the m-th cyclotomic
polynomial.  Galois automorphisms are stored purely by the exponent k
of the action zeta -> zeta^k.  All arithmetic is exact (``Fraction``
coordinates); floating point enters only through :func:`embed`.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd


def euler_phi(m: int) -> int:
    """Euler totient of a positive integer."""
    if m < 1:
        raise ValueError("m must be positive")
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def _poly_trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_divmod(num, den):
    """Polynomial division over the rationals, coefficients low to high."""
    num = [Fraction(c) for c in num]
    den = _poly_trim([Fraction(c) for c in den])
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    rem = list(num)
    for k in range(len(num) - len(den), -1, -1):
        if k + len(den) - 1 >= len(rem):
            continue
        factor = rem[k + len(den) - 1] / den[-1]
        if factor == 0:
            continue
        quot[k] = factor
        for j, d in enumerate(den):
            rem[k + j] -= factor * d
    return quot, _poly_trim(rem)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, low to high.

    Computed by exact division of x^m - 1 by the cyclotomic polynomials
    of the proper divisors of m.
    """
    # x^m - 1
    poly = [Fraction(0)] * (m + 1)
    poly[0], poly[m] = Fraction(-1), Fraction(1)
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod(poly, cyclotomic_polynomial(d))
            if rem:
                raise AssertionError(f"x^{m}-1 not divisible by Phi_{d}")
    ints = []
    for c in poly:
        if c.denominator != 1:
            raise AssertionError("cyclotomic polynomial is not integral")
        ints.append(int(c))
    return tuple(ints)


@dataclass(frozen=True)
class CyclotomicField:
    """The field Q(zeta_m) with zeta_m = exp(2*pi*i/m)."""

    m: int
    degree: int
    minpoly: tuple[int, ...]  # coefficients of Phi_m, low to high, monic

    def __repr__(self):
        return f"CyclotomicField(m={self.m})"


@lru_cache(maxsize=None)
def cyclotomic_field(m: int) -> CyclotomicField:
    if m < 1:
        raise ValueError("conductor must be positive")
    return CyclotomicField(m=m, degree=euler_phi(m), minpoly=cyclotomic_polynomial(m))


class FieldElement:
    """An element of Q(zeta_m), held as exact power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: CyclotomicField, coords):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != field.degree:
            raise ValueError(
                f"need {field.degree} coordinates for Q(zeta_{field.m}), got {len(coords)}"
            )
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, *_):
        raise AttributeError("FieldElement is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(field: CyclotomicField) -> "FieldElement":
        return FieldElement(field, (0,) * field.degree)

    @staticmethod
    def one(field: CyclotomicField) -> "FieldElement":
        return FieldElement(field, (1,) + (0,) * (field.degree - 1))

    @staticmethod
    def from_rational(field: CyclotomicField, value) -> "FieldElement":
        return FieldElement(field, (Fraction(value),) + (0,) * (field.degree - 1))

    @staticmethod
    def zeta_power(field: CyclotomicField, power: int = 1) -> "FieldElement":
        raw = [Fraction(0)] * field.m
        raw[power % field.m] = Fraction(1)
        return reduce(field, raw)

    # -- ring structure -----------------------------------------------

    def _check_same(self, other):
        if self.field is not other.field and self.field != other.field:
            raise ValueError("elements of different fields")

    def __add__(self, other):
        self._check_same(other)
        return FieldElement(self.field, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check_same(other)
        return FieldElement(self.field, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, [a * other for a in self.coords])
        self._check_same(other)
        n = self.field.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(other.coords):
                if b != 0:
                    prod[i + j] += a * b
        return reduce(self.field, prod)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.field, self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        # Solve a(x) * self(x) = 1 (mod Phi_m) in Q[x].
        r0 = [Fraction(c) for c in self.field.minpoly]
        r1 = _poly_trim([Fraction(c) for c in self.coords])
        s0, s1 = [], [Fraction(1)]
        while True:
            quot, rem = _poly_divmod(r0, r1)
            s_new = _poly_sub(s0, _poly_mul(quot, s1))
            if not rem:
                break
            r0, r1, s0, s1 = r1, rem, s1, s_new
        # r1 is the gcd, a nonzero constant since Phi_m is irreducible.
        const = r1[0]
        inv_coeffs = [c / const for c in s1]
        return reduce(self.field, inv_coeffs)

    def __repr__(self):
        return f"FieldElement(m={self.field.m}, coords={self.coords})"


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _poly_trim(out)


def reduce(field: CyclotomicField, raw_coeffs) -> FieldElement:
    """Canonicalise coefficients over 1, zeta, ..., zeta^(len-1).

    Divides by the minimal polynomial so the result lives on the
    degree-phi(m) power basis.  Input may have any length.
    """
    _, rem = _poly_divmod([Fraction(c) for c in raw_coeffs], field.minpoly)
    rem = rem + [Fraction(0)] * (field.degree - len(rem))
    return FieldElement(field, rem[: field.degree])


@dataclass(frozen=True)
class GaloisAuto:
    """The automorphism zeta -> zeta^k of Q(zeta_m), gcd(k, m) = 1."""

    field: CyclotomicField
    k: int

    def __post_init__(self):
        if gcd(self.k % self.field.m, self.field.m) != 1:
            raise ValueError(f"exponent {self.k} not coprime to {self.field.m}")

    @property
    def order(self) -> int:
        """Multiplicative order of k modulo m."""
        m, k = self.field.m, self.k % self.field.m
        power, order = k, 1
        while power != 1 % m:
            power = (power * k) % m
            order += 1
        return order

    def compose(self, other: "GaloisAuto") -> "GaloisAuto":
        if self.field != other.field:
            raise ValueError("automorphisms of different fields")
        return GaloisAuto(self.field, (self.k * other.k) % self.field.m)

    def power(self, j: int) -> "GaloisAuto":
        return GaloisAuto(self.field, pow(self.k, j, self.field.m))


def conjugation(field: CyclotomicField) -> GaloisAuto:
    """Complex conjugation zeta -> zeta^(m-1)."""
    return GaloisAuto(field, field.m - 1)


def apply_galois(auto: GaloisAuto, x: FieldElement) -> FieldElement:
    """Image of ``x`` under the automorphism, computed exactly."""
    if auto.field != x.field:
        raise ValueError("automorphism and element live in different fields")
    m = x.field.m
    raw = [Fraction(0)] * m
    for t, c in enumerate(x.coords):
        if c != 0:
            raw[(t * auto.k) % m] += c
    return reduce(x.field, raw)


def embed(x: FieldElement, root_index: int = 1) -> complex:
    """Numerical image of ``x`` at zeta_m^root_index, gcd(root_index, m) = 1.

    root_index 1 is the canonical embedding.
    """
    m = x.field.m
    if gcd(root_index % m, m) != 1:
        raise ValueError(f"root index {root_index} not coprime to {m}")
    root = cmath.exp(2j * cmath.pi * root_index / m)
    value = 0j
    for c in reversed(x.coords):
        value = value * root + float(c)
    return value


def change_basis(x: FieldElement, basis) -> tuple[Fraction, ...]:
    """Exact coordinates of ``x`` in a new Q-basis of the field.

    Raises ValueError if the proposed basis does not span the field.
    """
    basis = list(basis)
    n = x.field.degree
    if len(basis) != n:
        raise ValueError(f"need {n} basis elements, got {len(basis)}")
    # Columns are the power-basis coordinates of the new basis vectors.
    mat = [[Fraction(b.coords[i]) for b in basis] for i in range(n)]
    rhs = [Fraction(c) for c in x.coords]
    # Gaussian elimination with exact pivoting.
    cols = list(range(n))
    for col in range(n):
        pivot = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if pivot is None:
            raise ValueError("basis is singular")
        mat[col], mat[pivot] = mat[pivot], mat[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = 1 / mat[col][col]
        mat[col] = [v * inv for v in mat[col]]
        rhs[col] *= inv
        for r in range(n):
            if r != col and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [v - factor * w for v, w in zip(mat[r], mat[col])]
                rhs[r] -= factor * rhs[col]
    del cols
    return tuple(rhs)


def reconstruct(field: CyclotomicField, basis, coords) -> FieldElement:
    """Inverse of :func:`change_basis`: sum of coords[i] * basis[i]."""
    acc = FieldElement.zero(field)
    for c, b in zip(coords, basis):
        acc = acc + b * Fraction(c)
    return acc
