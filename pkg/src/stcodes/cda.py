"""Cyclic algebra left-regular representations and quaternion block form.

A cyclic algebra (E/K, sigma, gamma) acts on itself by left
multiplication; the matrix of that action in the basis 1, u, ..., u^(n-1)
is the left-regular representation.  When the center is totally real,
gamma is negative and sigma^(n/2) acts as complex conjugation, a fixed
permutation-plus-scaling conjugation turns every representation matrix
into a grid of 2x2 Alamouti blocks, i.e. an element of M_(n/2)(H).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

import numpy as np

from .linalg import ZERO_TOL
from .numberfield import (
    CyclotomicField,
    FieldElement,
    GaloisAuto,
    apply_galois,
    embed,
)


@dataclass(frozen=True)
class CyclicAlgebraSpec:
    """Data of a cyclic algebra (E/K, sigma, gamma) of index n.

    ``gamma`` is rational; whether it is a non-norm element (making the
    algebra a division algebra) is recorded as free-text provenance in
    ``division_note`` and is not verified computationally.
    """

    field: CyclotomicField
    sigma: GaloisAuto
    n: int
    gamma: Fraction
    center_degree: int = 1
    name: str = ""
    division_note: str = ""

    def __post_init__(self):
        if self.sigma.field != self.field:
            raise ValueError("sigma does not act on the declared field")
        if self.gamma == 0:
            raise ValueError("gamma must be nonzero")
        if self.sigma.order != self.n:
            raise ValueError(
                f"sigma has order {self.sigma.order}, expected index {self.n}"
            )


def alamouti_algebra() -> CyclicAlgebraSpec:
    """(Q(i)/Q, conjugation, -1), the Hamiltonian quaternions."""
    from .numberfield import conjugation, cyclotomic_field

    field = cyclotomic_field(4)
    return CyclicAlgebraSpec(
        field=field,
        sigma=conjugation(field),
        n=2,
        gamma=Fraction(-1),
        name="alamouti",
        division_note="norm form a^2 + b^2 never equals -1 over Q(i)/Q",
    )


def mido_algebra() -> CyclicAlgebraSpec:
    """(Q(zeta_5)/Q, zeta -> zeta^3, -8/9), index 4."""
    from .numberfield import cyclotomic_field

    field = cyclotomic_field(5)
    return CyclicAlgebraSpec(
        field=field,
        sigma=GaloisAuto(field, 3),
        n=4,
        gamma=Fraction(-8, 9),
        name="mido",
        division_note="2 is totally inert in Q(zeta_5)/Q, so -8/9 is a non-norm element",
    )


def six_antenna_algebra() -> CyclicAlgebraSpec:
    """(Q(zeta_7)/Q, zeta -> zeta^3, -3/4), index 6."""
    from .numberfield import cyclotomic_field

    field = cyclotomic_field(7)
    return CyclicAlgebraSpec(
        field=field,
        sigma=GaloisAuto(field, 3),
        n=6,
        gamma=Fraction(-3, 4),
        name="six_antenna",
        division_note="3 mod 7 generates (Z/7)*, so -3/4 is a non-norm element",
    )


def left_regular(alg: CyclicAlgebraSpec, xs) -> np.ndarray:
    """Left multiplication matrix of x0 + u x1 + ... + u^(n-1) x_(n-1).

    Column j carries sigma^j applied to the cyclically shifted
    coefficient list; entries strictly above the diagonal pick up the
    factor gamma from the wrap-around u^n = gamma.
    """
    xs = list(xs)
    if len(xs) != alg.n:
        raise ValueError(f"need {alg.n} coefficients, got {len(xs)}")
    n = alg.n
    gamma = float(alg.gamma)
    out = np.empty((n, n), dtype=complex)
    for j in range(n):
        sig_j = alg.sigma.power(j)
        for i in range(n):
            value = embed(apply_galois(sig_j, xs[(i - j) % n]))
            out[i, j] = gamma * value if i < j else value
    return out


def left_regular_exact(alg: CyclicAlgebraSpec, xs) -> list[list[FieldElement]]:
    """Exact-coordinate variant of :func:`left_regular`.

    Returns an n x n grid of field elements with gamma folded in as a
    rational scalar, suitable for exact determinant checks.
    """
    xs = list(xs)
    if len(xs) != alg.n:
        raise ValueError(f"need {alg.n} coefficients, got {len(xs)}")
    n = alg.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            value = apply_galois(alg.sigma.power(j), xs[(i - j) % n])
            if i < j:
                value = value * alg.gamma
            row.append(value)
        rows.append(row)
    return rows


def exact_det(matrix: list[list[FieldElement]]) -> FieldElement:
    """Exact determinant of a grid of field elements (Gaussian elimination)."""
    n = len(matrix)
    work = [list(row) for row in matrix]
    fld = work[0][0].field
    det_acc = FieldElement.one(fld)
    sign = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if not work[r][col].is_zero()), None)
        if pivot is None:
            return FieldElement.zero(fld)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            sign = -sign
        piv = work[col][col]
        det_acc = det_acc * piv
        piv_inv = piv.inverse()
        for r in range(col + 1, n):
            if work[r][col].is_zero():
                continue
            factor = work[r][col] * piv_inv
            work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    if sign < 0:
        det_acc = -det_acc
    return det_acc


@dataclass(frozen=True)
class QuaternionizerData:
    """Permutation and energy-balance data of the quaternionizing map."""

    perm: np.ndarray  # (n, n) 0/1 permutation matrix
    balance: np.ndarray  # length-n positive diagonal

    def __post_init__(self):
        p = np.asarray(self.perm)
        if not (
            np.all((p == 0) | (p == 1))
            and np.all(p.sum(axis=0) == 1)
            and np.all(p.sum(axis=1) == 1)
        ):
            raise ValueError("perm is not a permutation matrix")
        if np.any(np.asarray(self.balance) == 0):
            raise ValueError("balance matrix must be invertible")

    @property
    def matrix(self) -> np.ndarray:
        """The combined map B P as a dense matrix."""
        return self.balance[:, None] * self.perm


def build_quaternionizer(n_t: int, gamma) -> QuaternionizerData:
    """Permutation P and balance B = diag(sqrt|gamma|, |gamma|, ...).

    P pairs each column with the column carrying its conjugate: row i
    (1-indexed) points at column (i+1)/2 for odd i and (i+n_t)/2 for
    even i.
    """
    if n_t % 2 != 0:
        raise ValueError("the quaternion block form needs an even matrix size")
    gamma = Fraction(gamma)
    if gamma >= 0:
        raise ValueError("gamma must be negative")
    perm = np.zeros((n_t, n_t), dtype=int)
    for i in range(1, n_t + 1):
        j = (i + 1) // 2 if i % 2 == 1 else (i + n_t) // 2
        perm[i - 1, j - 1] = 1
    mag = float(abs(gamma))
    balance = np.array([mag ** 0.5 if i % 2 == 0 else mag for i in range(n_t)])
    return QuaternionizerData(perm=perm, balance=balance)


def quaternionize(x, q: QuaternionizerData) -> np.ndarray:
    """Similarity transform (BP) x (BP)^(-1).

    Being a similarity, it preserves the determinant exactly; for the
    algebras built here it lands in Alamouti block form.
    """
    x = np.asarray(x, dtype=complex)
    n = q.perm.shape[0]
    if x.shape != (n, n):
        raise ValueError(f"shape mismatch: matrix {x.shape} vs map size {n}")
    bp = q.matrix
    bp_inv = q.perm.T * (1.0 / q.balance)[None, :]
    return bp @ x @ bp_inv


def is_alamouti_blocks(x, tol: float = ZERO_TOL) -> bool:
    """True when every 2x2 block [[a, b], [c, d]] has d = a*, c = -b*.

    Residuals are measured against each block's own Frobenius norm, so
    zero blocks pass.
    """
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] % 2 or x.shape[1] % 2:
        raise ValueError(f"need even dimensions, got {x.shape}")
    for bi in range(0, x.shape[0], 2):
        for bj in range(0, x.shape[1], 2):
            block = x[bi : bi + 2, bj : bj + 2]
            scale = np.linalg.norm(block)
            if scale == 0.0:
                continue
            if abs(block[1, 1] - block[0, 0].conjugate()) > tol * scale:
                return False
            if abs(block[1, 0] + block[0, 1].conjugate()) > tol * scale:
                return False
    return True


def reduced_norm_check(alg: CyclicAlgebraSpec, xs, tol: float = 1e-8):
    """Determinant of the left-regular matrix plus a rationality flag.

    The determinant of a cyclic-algebra representation lies in the
    center; for integral coefficients and rational gamma it is rational
    with denominator dividing denominator(gamma)^(n-1).  The flag is
    True when the numerical determinant is consistent with that.
    """
    d = complex(np.linalg.det(left_regular(alg, xs)))
    scale = max(abs(d), 1.0)
    if abs(d.imag) > tol * scale:
        return d, False
    denom = alg.gamma.denominator ** (alg.n - 1)
    scaled = d.real * denom
    return d, abs(scaled - round(scaled)) <= tol * denom * scale
