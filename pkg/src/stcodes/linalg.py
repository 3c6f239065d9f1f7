"""Dense complex/real linear algebra shared by every code construction.

Complex matrices are plain numpy arrays of complex dtype.  The central
object is the row-major realification map flattening an (m, n) complex
matrix into a real vector of length 2*m*n by interleaving real and
imaginary parts.  The map is an isometry between the Frobenius and
Euclidean norms, which is what turns ML detection of a complex matrix
lattice into a real closest-point problem.
"""

from __future__ import annotations

import numpy as np

# A quantity is treated as zero when its magnitude does not exceed
# ZERO_TOL times the natural scale of the operands (for inner products,
# the product of the operands' Frobenius norms).
ZERO_TOL = 1e-9


class RankDeficiencyError(ArithmeticError):
    """A matrix expected to have full column rank does not."""


def realify(x) -> np.ndarray:
    """Flatten a complex matrix row by row into (re, im, re, im, ...) form.

    The map is real-linear and norm preserving.
    """
    flat = np.asarray(x, dtype=complex).reshape(-1)
    out = np.empty(2 * flat.size)
    out[0::2] = flat.real
    out[1::2] = flat.imag
    return out


def frob_inner(a, b) -> float:
    """Re(Tr(a b^H)), the real Frobenius inner product of two matrices.

    Equals the Euclidean dot product of ``realify(a)`` and ``realify(b)``.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    # vdot conjugates its first argument: sum(conj(b) * a) = Tr(a b^H)
    return float(np.real(np.vdot(b, a)))


def is_zero(value: float, scale: float, tol: float = ZERO_TOL) -> bool:
    """Zero test at relative tolerance ``tol`` against ``scale``."""
    return abs(value) <= tol * max(scale, 1e-300)


def qr_decompose(b, tol: float = ZERO_TOL):
    """QR factorisation with nonnegative diagonal and no column pivoting.

    Column order is preserved, so the sparsity of ``r`` reflects the
    Gram-Schmidt orthogonalisation of the columns in their given order.
    Pivoting would destroy exactly the zero pattern the decoding
    complexity analysis reads off ``r``.

    Raises RankDeficiencyError when a column is linearly dependent on
    its predecessors within the relative tolerance.
    """
    b = np.asarray(b, dtype=float)
    if b.ndim != 2 or b.shape[0] < b.shape[1] or b.shape[1] == 0:
        raise ValueError(f"need a tall or square nonempty matrix, got {b.shape}")
    q, r = np.linalg.qr(b, mode="reduced")
    # Sign-normalise so r agrees with classical Gram-Schmidt.
    signs = np.sign(np.diag(r)).copy()
    signs[signs == 0.0] = 1.0
    q = q * signs
    r = signs[:, None] * r
    col_norms = np.linalg.norm(b, axis=0)
    diag = np.diag(r)
    if np.any(diag <= tol * np.maximum(col_norms, 1e-300)):
        raise RankDeficiencyError("matrix does not have full column rank")
    return q, r


def det(x) -> complex:
    """Determinant of a square complex matrix."""
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError(f"determinant needs a square matrix, got {x.shape}")
    return complex(np.linalg.det(x))
