"""Local-invariant admissibility, maximal-order discriminants and the
normalized-minimum-determinant bounds they imply.

Primes enter only through their norms: a local invariant is a fraction
a/m_P attached to a labelled finite prime of norm N(P), real infinite
places carry the invariant 1/2 each, and complex places contribute
nothing.  A set of invariants is admissible exactly when it sums to an
integer; the least common multiple of the local indices is then the
index of a division algebra realising them, and the discriminant of its
maximal orders is an explicit product of prime powers.  All discriminant
arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class HasseInvariant:
    """One finite-prime local invariant a/m_p at a prime of norm ``norm``."""

    label: str
    norm: int
    a: int
    m_p: int

    def __post_init__(self):
        if self.norm < 2:
            raise ValueError("prime norm must be at least 2")
        if not (0 <= self.a < self.m_p):
            raise ValueError(f"need 0 <= a < m_p, got {self.a}/{self.m_p}")
        if math.gcd(self.a, self.m_p) != 1:
            raise ValueError(f"a and m_p must be coprime, got {self.a}/{self.m_p}")

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.m_p)


@dataclass(frozen=True)
class HasseInvariantSet:
    """Finite-prime invariants plus the count of ramified real places.

    Each ramified real place carries the invariant 1/2 implicitly.
    """

    finite: tuple[HasseInvariant, ...]
    ramified_real_count: int = 0

    def __post_init__(self):
        if self.ramified_real_count < 0:
            raise ValueError("ramified real count cannot be negative")


def admissible(invariants: HasseInvariantSet) -> bool:
    """True when the invariants sum to an integer (mod 1 condition)."""
    total = sum((inv.value for inv in invariants.finite), Fraction(0))
    total += Fraction(invariants.ramified_real_count, 2)
    return total.denominator == 1


def algebra_index(invariants: HasseInvariantSet) -> int:
    """LCM of all local indices, counting 2 per ramified real place."""
    if not admissible(invariants):
        raise ValueError("invariant set is not admissible")
    index = 1
    for inv in invariants.finite:
        index = math.lcm(index, inv.m_p)
    if invariants.ramified_real_count > 0:
        index = math.lcm(index, 2)
    return index


def maximal_order_discriminant(invariants: HasseInvariantSet, n: int):
    """Exponent per ramified finite prime and total discriminant norm.

    The exponent at a prime of local index m_p is (m_p - 1) * n^2 / m_p;
    unramified primes (m_p = 1) do not appear.  Returns
    (list of (norm, exponent), product of norm^exponent).
    """
    if n != algebra_index(invariants):
        raise ValueError(
            f"index mismatch: n={n} but invariants give {algebra_index(invariants)}"
        )
    factors = []
    total = 1
    for inv in invariants.finite:
        if inv.m_p == 1:
            continue
        exponent = (inv.m_p - 1) * n * n // inv.m_p
        factors.append((inv.norm, exponent))
        total *= inv.norm**exponent
    return factors, total


def table3_row(index_form: str, k: int, center_degree: int, p1: int = 2, p2: int = 3) -> HasseInvariantSet:
    """The optimal finite invariants for an even-index algebra over a
    totally real degree-m center with all real places ramified.

    ``index_form`` "4k" (index 4k, any k) uses local index 4k at both
    smallest primes; the second numerator is 2k-1 for odd m and 4k-1
    for even m (the even-m case must make the finite invariants sum to
    an integer on their own).  ``index_form`` "2k" (index 2k, k odd)
    uses numerators 1/k and (k-1)/k for even m, and (k-2 mod 2k)/2k
    plus 1/k for odd m.  Degenerate entries with local index 1 stand
    for unramified primes.
    """
    if k < 1 or center_degree < 1:
        raise ValueError("k and center degree must be positive")
    if index_form == "4k":
        pair = [(1, 4 * k), ((2 * k - 1) if center_degree % 2 else (4 * k - 1), 4 * k)]
    elif index_form == "2k":
        if k % 2 == 0:
            raise ValueError("the 2k rows require odd k")
        if center_degree % 2 == 1:
            pair = [((k - 2) % (2 * k), 2 * k), (1 % k, k)]
        else:
            pair = [(1 % k, k), ((k - 1) % k, k)]
    else:
        raise ValueError("index_form must be '4k' or '2k'")
    return HasseInvariantSet(
        finite=(
            HasseInvariant("P1", p1, pair[0][0], pair[0][1]),
            HasseInvariant("P2", p2, pair[1][0], pair[1][1]),
        ),
        ramified_real_count=center_degree,
    )


@dataclass(frozen=True)
class CenterDescriptor:
    """A totally real or general number field seen through the data the
    discriminant formulas consume: degree, signature, the two smallest
    prime norms and the field discriminant."""

    degree: int
    real_places: int
    complex_pairs: int
    p1: int
    p2: int
    field_discriminant: int = 1

    def __post_init__(self):
        if self.degree != self.real_places + 2 * self.complex_pairs:
            raise ValueError("degree must equal r1 + 2*r2")
        if not (2 <= self.p1 <= self.p2):
            raise ValueError("need prime norms 2 <= p1 <= p2")
        if self.field_discriminant < 1:
            raise ValueError("field discriminant is given by absolute value")


def center_q() -> CenterDescriptor:
    return CenterDescriptor(degree=1, real_places=1, complex_pairs=0, p1=2, p2=3)


def min_discriminant_bound(center: CenterDescriptor, n: int, all_real_ramified: bool = True) -> int:
    """Smallest possible maximal-order discriminant norm at index n.

    With ``all_real_ramified`` the center must be totally real and every
    infinite place ramifies; the answer then depends on n mod 4 and the
    parity of the center degree.  Without it the general results apply,
    split by how many real places the center has when 2 exactly
    divides n.
    """
    if n < 1:
        raise ValueError("index must be positive")
    p1, p2 = center.p1, center.p2
    k = n // 2
    if all_real_ramified:
        if center.complex_pairs != 0:
            raise ValueError("all_real_ramified needs a totally real center")
        if n % 2 != 0:
            raise ValueError("an odd-index algebra cannot ramify real places")
        if n % 4 == 0:
            return (p1 * p2) ** (n * (n - 1))
        if center.degree % 2 == 0:
            return (p1 * p2) ** (k * (k - 1))
        return p1 ** (n * (n - 1)) * p2 ** (k * (k - 1))
    if n % 2 == 1 or n % 4 == 0:
        return (p1 * p2) ** (n * (n - 1))
    if center.real_places >= 2:
        return (p1 * p2) ** (k * (k - 1))
    if center.real_places == 1:
        return p1 ** (n * (n - 1)) * p2 ** (k * (k - 1))
    raise ValueError("no bound stated for 2||n over a center with no real place")


def z_discriminant(center_disc_norm: int, field_disc: int, n: int) -> int:
    """Discriminant over the rationals from the center-level one:
    norm(d) * field_discriminant^(n^2)."""
    if center_disc_norm < 1 or field_disc < 1:
        raise ValueError("discriminants are given by absolute value")
    return center_disc_norm * field_disc ** (n * n)


def delta_bound(z_disc: int, n: int) -> float:
    """Normalized minimum determinant of an order code with the given
    discriminant over Z: (1/|d|)^(1/2n)."""
    if z_disc < 1:
        raise ValueError("discriminant must be at least 1")
    return math.exp(-math.log(z_disc) / (2 * n))


def volume_from_z_disc(z_disc: int):
    """Fundamental volume sqrt(|d|); exact integer when |d| is a square."""
    if z_disc < 1:
        raise ValueError("discriminant must be at least 1")
    root = math.isqrt(z_disc)
    if root * root == z_disc:
        return root
    return math.sqrt(z_disc)


# Reference value: an orthogonally shaped 16-dimensional lattice in
# M_4(C) cannot beat delta = 1/16.
ORTHOGONAL_SHAPING_DELTA_16DIM = 1.0 / 16.0
