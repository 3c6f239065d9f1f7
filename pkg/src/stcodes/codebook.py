"""Constructors for the shipped space-time lattice codes.

Every code is a :class:`CodeSpec`: an ordered real basis of dispersion
matrices plus a global scale.  The basis ORDER is part of the contract,
because the zero pattern of the sphere-decoder R matrix, and with it
the decoding complexity, is read off in that order.  Each constructor
documents its ordering.

Coefficient vectors are real; a codeword is scale * sum(g[i] * B[i]).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .numberfield import (
    FieldElement,
    GaloisAuto,
    apply_galois,
    cyclotomic_field,
    embed,
)


@dataclass(frozen=True)
class CodeSpec:
    """A space-time lattice code given by K real dispersion matrices."""

    name: str
    n_t: int
    T: int
    basis: np.ndarray  # (K, n_t, T) complex
    scale: float = 1.0
    n_r_typical: int = 1
    nvd: str = "proved"  # "proved" | "none" | "nonintegral-basis"
    kappa_hint: int | None = None
    notes: str = ""

    def __post_init__(self):
        basis = np.ascontiguousarray(np.asarray(self.basis, dtype=complex))
        if basis.ndim != 3 or basis.shape[1:] != (self.n_t, self.T):
            raise ValueError(f"basis shape {basis.shape} does not match code size")
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def K(self) -> int:
        return self.basis.shape[0]

    @property
    def dimension_rate(self) -> float:
        """Real lattice dimensions per channel use, K / T."""
        return self.K / self.T

    def encode(self, g) -> np.ndarray:
        return encode(self, g)

    def scaled(self, factor: float) -> "CodeSpec":
        """Same lattice rescaled by a positive factor."""
        return replace(self, scale=self.scale * float(factor))


def encode(code: CodeSpec, g) -> np.ndarray:
    """Linear dispersion map scale * sum g[i] * B[i]."""
    g = np.asarray(g, dtype=float)
    if g.shape != (code.K,):
        raise ValueError(f"coefficient vector must have length {code.K}")
    return code.scale * np.tensordot(g, code.basis, axes=(0, 0))


@dataclass(frozen=True)
class Constellation:
    """A per-coordinate real alphabet, usually symmetric PAM."""

    points: tuple[float, ...]
    label: str

    def __post_init__(self):
        if not self.points:
            raise ValueError("empty constellation")


def pam(q: int) -> Constellation:
    """Size-q PAM {-q+1, ..., -3, -1, 1, 3, ..., q-1}; q must be even."""
    if q < 2 or q % 2:
        raise ValueError("PAM size must be even and at least 2")
    return Constellation(points=tuple(float(v) for v in range(-q + 1, q, 2)), label=f"pam{q}")


# ---------------------------------------------------------------------------
# 2x2 codes
# ---------------------------------------------------------------------------


def alamouti() -> CodeSpec:
    """The 2x2 orthogonal code; coordinates are the four quaternion units."""
    basis = np.array(
        [
            [[1, 0], [0, 1]],
            [[1j, 0], [0, -1j]],
            [[0, -1], [1, 0]],
            [[0, 1j], [1j, 0]],
        ],
        dtype=complex,
    )
    return CodeSpec(
        name="alamouti", n_t=2, T=2, basis=basis, n_r_typical=1,
        nvd="proved", kappa_hint=1,
        notes="codeword [[x1, -x2*], [x2, x1*]], x = g1+i g2, g3+i g4",
    )


def a2_code() -> CodeSpec:
    """Index-2 algebra over Q(sqrt 3): fully diverse but with no known
    complexity reduction; kept as a negative control."""
    s3 = np.sqrt(3.0)
    basis = np.array(
        [
            [[1, 0], [0, 1]],
            [[s3, 0], [0, -s3]],
            [[0, -1], [1, 0]],
            [[0, s3], [s3, 0]],
        ],
        dtype=complex,
    )
    return CodeSpec(
        name="a2", n_t=2, T=2, basis=basis, n_r_typical=1,
        nvd="proved", kappa_hint=4,
        notes="codeword [[x1+x2 s3, -x3+x4 s3], [x3+x4 s3, x1-x2 s3]]",
    )


# ---------------------------------------------------------------------------
# 4x4 quasi-orthogonal MISO code
# ---------------------------------------------------------------------------


def quasi_orth_dort() -> CodeSpec:
    """Rate-one 4x4 code from the index-2 algebra with center Q(sqrt 2).

    Two conjugate 2x2 Alamouti-type blocks on the diagonal; basis order
    is the natural-order enumeration g1..g8 with a_j = g_(2j-1)+i g_(2j).
    """
    z8 = np.exp(2j * np.pi / 8)
    zc = z8.conjugate()

    def two_block(upper, lower):
        out = np.zeros((4, 4), dtype=complex)
        out[:2, :2] = upper
        out[2:, 2:] = lower
        return out

    def anti(a, b):
        return np.array([[0, a], [b, 0]], dtype=complex)

    basis = np.array(
        [
            np.diag([1, 1, 1, 1]).astype(complex),
            np.diag([1j, -1j, 1j, -1j]),
            np.diag([z8, zc, -z8, -zc]),
            np.diag([1j * z8, -1j * zc, -1j * z8, 1j * zc]),
            two_block(anti(-1, 1), anti(-1, 1)),
            two_block(anti(1j, 1j), anti(1j, 1j)),
            two_block(anti(-zc, z8), anti(zc, -z8)),
            two_block(anti(1j * zc, 1j * z8), anti(-1j * zc, -1j * z8)),
        ]
    )
    return CodeSpec(
        name="quasi_orth_dort", n_t=4, T=4, basis=basis, n_r_typical=1,
        nvd="proved", kappa_hint=4,
        notes="natural-order code of the Q(i,sqrt2)/Q(sqrt2) algebra, gamma=-1",
    )


# ---------------------------------------------------------------------------
# 4x4 rate-two MIDO codes
# ---------------------------------------------------------------------------

_A4_INTEGRAL = "integral"
_A4_HALF_IMAGINARY = "half_imaginary"


def _zeta5_basis(variant: str) -> list[FieldElement]:
    field = cyclotomic_field(5)
    zp = lambda k: FieldElement.zeta_power(field, k)
    one = FieldElement.one(field)
    if variant == _A4_INTEGRAL:
        return [one - zp(1), zp(1) - zp(2), zp(2) - zp(3), zp(3) - zp(4)]
    if variant == _A4_HALF_IMAGINARY:
        half, quarter = Fraction(1, 2), Fraction(1, 4)
        return [
            one,
            (zp(1) + zp(4)) * half,
            (zp(1) - zp(4)) * half,
            (zp(2) - zp(3)) * quarter,
        ]
    raise ValueError(f"unknown basis variant {variant!r}")


def _fd_block_matrix(y, sy, r) -> np.ndarray:
    """The energy-balanced Alamouti-block matrix over (y_i, sigma(y_i))."""
    y1, y2, y3, y4 = y
    s1, s2, s3, s4 = sy
    c = np.conjugate
    return np.array(
        [
            [y1, -r**2 * c(y2), -r**3 * s4, -r * c(s3)],
            [r**2 * y2, c(y1), r * s3, -r**3 * c(s4)],
            [r * y3, -r**3 * c(y4), s1, -r**2 * c(s2)],
            [r**3 * y4, r * c(y3), r**2 * s2, c(s1)],
        ],
        dtype=complex,
    )


def mido_a4(variant: str = _A4_INTEGRAL) -> CodeSpec:
    """Rate-two 4x4 code from (Q(zeta_5)/Q, zeta->zeta^3, -8/9).

    Sixteen coordinates, four per algebra coefficient y_1..y_4, in that
    order; coordinate t of y_i weighs the t-th ring basis element.  The
    ``integral`` variant uses the Z-basis 1-z, z-z^2, z^2-z^3, z^3-z^4
    (NVD after rescaling the matrices by 9); ``half_imaginary`` uses a
    non-integral basis with two real and two purely imaginary elements,
    which buys one more level of decoder separation at the price of a
    smaller minimum determinant.
    """
    if variant == "A4_integral":
        variant = _A4_INTEGRAL
    field = cyclotomic_field(5)
    sigma = GaloisAuto(field, 3)
    ring_basis = _zeta5_basis(variant)
    r = (8.0 / 9.0) ** 0.25
    matrices = []
    for slot in range(4):
        for w in ring_basis:
            y = [0j] * 4
            sy = [0j] * 4
            y[slot] = embed(w)
            sy[slot] = embed(apply_galois(sigma, w))
            matrices.append(_fd_block_matrix(y, sy, r))
    suffix = "" if variant == _A4_INTEGRAL else "_half_imag"
    return CodeSpec(
        name=f"mido_a4{suffix}",
        n_t=4, T=4, basis=np.array(matrices), n_r_typical=2,
        nvd="proved" if variant == _A4_INTEGRAL else "nonintegral-basis",
        kappa_hint=12 if variant == _A4_INTEGRAL else 10,
        notes="gamma=-8/9 left unscaled; matrices times 9 have integer determinants >= 1",
    )


def mido_a4_half_imag() -> CodeSpec:
    return mido_a4(_A4_HALF_IMAGINARY)


# Golden-ratio shaping constants shared by the punctured rate-two codes.
_THETA = (1.0 + np.sqrt(5.0)) / 2.0
_SIGMA_THETA = (1.0 - np.sqrt(5.0)) / 2.0
_ALPHA = 1.0 + 1j - 1j * _THETA
_SIGMA_ALPHA = 1.0 + 1j - 1j * _SIGMA_THETA

# One complex value per real coordinate of x_j = alpha*(a + b*theta),
# a, b Gaussian integers: coordinates are (Re a, Im a, Re b, Im b).
_GOLDEN_VALUES = [
    (_ALPHA, _SIGMA_ALPHA),
    (1j * _ALPHA, 1j * _SIGMA_ALPHA),
    (_ALPHA * _THETA, _SIGMA_ALPHA * _SIGMA_THETA),
    (1j * _ALPHA * _THETA, 1j * _SIGMA_ALPHA * _SIGMA_THETA),
]

# Volume of this lattice is 5^4 * 2^8 and its minimum determinant is 1
# exactly when the matrices carry the fourth-root normalisation below.
_C1_SCALE = 5.0 ** -0.25


def _c1_matrix(x, sx) -> np.ndarray:
    x0, x1, x2, x3 = x
    s0, s1, s2, s3 = sx
    return np.array(
        [
            [x0, 1j * s3, 1j * x2, 1j * s1],
            [x1, s0, 1j * x3, 1j * s2],
            [x2, s1, x0, 1j * s3],
            [x3, s2, x1, s0],
        ],
        dtype=complex,
    )


def _golden_dispersion(matrix_fn, name, **meta) -> CodeSpec:
    matrices = []
    for slot in range(4):
        for value, sigma_value in _GOLDEN_VALUES:
            x = [0j] * 4
            sx = [0j] * 4
            x[slot] = value
            sx[slot] = sigma_value
            matrices.append(matrix_fn(x, sx))
    return CodeSpec(
        name=name, n_t=4, T=4, basis=np.array(matrices),
        scale=_C1_SCALE, n_r_typical=2, **meta,
    )


def mido_c1() -> CodeSpec:
    """Rate-two punctured code over Q(i, sqrt 5) with Golden-code shaping.

    Coordinates run x_0..x_3, four per symbol: (Re a, Im a, Re b, Im b)
    of x_j = alpha (a + b theta).
    """
    return _golden_dispersion(
        _c1_matrix, "mido_c1", nvd="proved", kappa_hint=14,
        notes="gamma=i puncturing with cubic shaping",
    )


def _c3_matrix(x, sx) -> np.ndarray:
    z8 = np.exp(2j * np.pi / 8)
    x0, x1, x2, x3 = x
    s0, s1, s2, s3 = sx
    return np.array(
        [
            [x0, -1j * s3, -z8 * x2, -z8 * s1],
            [x1, s0, -z8 * x3, -z8 * s2],
            [z8 * x2, z8 * s1, x0, -1j * s3],
            [z8 * x3, z8 * s2, x1, s0],
        ],
        dtype=complex,
    )


def mido_c3() -> CodeSpec:
    """Variant of mido_c1 with gamma=-i and an eighth-root column/row
    twist that makes column pairs (1,3) and (2,4) bilinearly orthogonal
    without changing any determinant."""
    return _golden_dispersion(
        _c3_matrix, "mido_c3", nvd="proved", kappa_hint=14,
        notes="determinants equal the untwisted gamma=-i code's",
    )


def _c2_matrix(x, sx) -> np.ndarray:
    x0, x1, x2, x3 = x
    s0, s1, s2, s3 = sx
    c = np.conjugate
    return np.array(
        [
            [x0, -c(x2), 1j * s3, 1j * c(s1)],
            [x2, c(x0), s1, -c(s3)],
            [x1, -c(x3), s0, -c(s2)],
            [x3, c(x1), s2, c(s0)],
        ],
        dtype=complex,
    )


def mido_c2() -> CodeSpec:
    """Row/column-permuted puncturing of the Q(zeta_20) code with integer
    coefficients restricted so that sigma^2 interacts with conjugation.

    x_0, x_1 range over a + i b z + c z^2 + i d z^3 and x_2, x_3 over
    a(1+i) + b(1-i) z + c(1+i) z^2 + d(1-i) z^3, a..d integers,
    z = zeta_20.  Coordinates come four per symbol (a, b, c, d) in the
    symbol order x_0, x_2, x_1, x_3: the two symbols filling the left
    column pair come first, which is the order in which the persistent
    orthogonality relations (x_0 against x_2, x_1 against x_3) occupy
    the leading block of the decoder's R matrix.
    """
    field = cyclotomic_field(20)
    sigma = GaloisAuto(field, 17)  # fixes i = zeta^5, sends zeta_5 to zeta_5^2
    zp = lambda k: FieldElement.zeta_power(field, k)
    plain = [zp(0), zp(6), zp(2), zp(8)]  # 1, i z, z^2, i z^3
    mixed = [
        zp(0) + zp(5),  # 1 + i
        zp(1) - zp(6),  # (1 - i) z
        zp(2) + zp(7),  # (1 + i) z^2
        zp(3) - zp(8),  # (1 - i) z^3
    ]
    matrices = []
    for slot in (0, 2, 1, 3):
        for w in plain if slot < 2 else mixed:
            x = [0j] * 4
            sx = [0j] * 4
            x[slot] = embed(w)
            sx[slot] = embed(apply_galois(sigma, w))
            matrices.append(_c2_matrix(x, sx))
    return CodeSpec(
        name="mido_c2", n_t=4, T=4, basis=np.array(matrices), n_r_typical=2,
        nvd="proved", kappa_hint=12,
        notes="rows 1,3 and 2,4 of the unpermuted form are orthonormal",
    )


# ---------------------------------------------------------------------------
# 6x6 codes
# ---------------------------------------------------------------------------


def _zeta7_basis(variant: str) -> list[FieldElement]:
    field = cyclotomic_field(7)
    zp = lambda k: FieldElement.zeta_power(field, k)
    if variant == "power":
        return [zp(k) for k in range(6)]
    if variant == _A4_HALF_IMAGINARY:
        half = Fraction(1, 2)
        return [
            FieldElement.one(field),
            (zp(1) + zp(6)) * half,
            (zp(2) + zp(5)) * half,
            (zp(1) - zp(6)) * half,
            (zp(2) - zp(5)) * half,
            (zp(3) - zp(4)) * half,
        ]
    raise ValueError(f"unknown basis variant {variant!r}")


def _six_block_matrix(x, sx, ssx, r) -> np.ndarray:
    """Three stacked-Alamouti 6x2 blocks over (x_i, sigma x_i, sigma^2 x_i)."""
    x0, x1, x2, x3, x4, x5 = x
    s0, s1, s2, s3, s4, s5 = sx
    t0, t1, t2, t3, t4, t5 = ssx
    c = np.conjugate
    block_a = [
        [x0, -r * c(x1)],
        [r * x1, c(x0)],
        [x2, -r * c(x3)],
        [r * x3, c(x2)],
        [x4, -r * c(x5)],
        [r * x5, c(x4)],
    ]
    block_b = [
        [-r**2 * s5, -r * c(s4)],
        [r * s4, -r**2 * c(s5)],
        [s0, -r * c(s1)],
        [r * s1, c(s0)],
        [s2, -r * c(s3)],
        [r * s3, c(s2)],
    ]
    block_c = [
        [-r**2 * t3, -r * c(t2)],
        [r * t2, -r**2 * c(t3)],
        [-r**2 * t5, -r * c(t4)],
        [r * t4, -r**2 * c(t5)],
        [t0, -r * c(t1)],
        [r * t1, c(t0)],
    ]
    return np.hstack(
        [np.array(block_a), np.array(block_b), np.array(block_c)]
    ).astype(complex)


def code_6x3(variant: str = "power") -> CodeSpec:
    """Rate-six 6x6 code from (Q(zeta_7)/Q, zeta->zeta^3, -3/4).

    36 coordinates, six per symbol x_0..x_5 in that order.  The default
    ``power`` variant puts coordinates on the power basis 1..zeta^5.
    ``half_imaginary`` reorders onto three real plus three purely
    imaginary basis elements for extra decoder separation.
    """
    field = cyclotomic_field(7)
    sigma = GaloisAuto(field, 3)
    ring_basis = _zeta7_basis(variant)
    r = np.sqrt(3.0) / 2.0
    matrices = []
    for slot in range(6):
        for w in ring_basis:
            x = [0j] * 6
            sx = [0j] * 6
            ssx = [0j] * 6
            x[slot] = embed(w)
            sx[slot] = embed(apply_galois(sigma, w))
            ssx[slot] = embed(apply_galois(sigma.power(2), w))
            matrices.append(_six_block_matrix(x, sx, ssx, r))
    suffix = "" if variant == "power" else "_half_imag"
    return CodeSpec(
        name=f"code_6x3{suffix}",
        n_t=6, T=6, basis=np.array(matrices), n_r_typical=3,
        nvd="proved" if variant == "power" else "nonintegral-basis",
        kappa_hint=30 if variant == "power" else 27,
        notes="conjugated left-regular representation, gamma=-3/4",
    )


def code_6x3_half_imag() -> CodeSpec:
    return code_6x3(_A4_HALF_IMAGINARY)


# 1-indexed coordinates removed when puncturing the 6x6 code down to two
# receive antennas: three coordinates from each of x_2..x_5.
PUNCTURED_6X2 = (13, 14, 15, 19, 20, 21, 25, 26, 27, 31, 32, 33)


def code_6x2() -> CodeSpec:
    """Smart puncturing of the half-imaginary 6x6 code to rate four.

    Keeps all coordinates of x_0 and x_1 (whose four three-coordinate
    groups decode separately) and drops three coordinates from each of
    x_2..x_5, preserving every orthogonality relation of the parent.
    """
    parent = code_6x3(_A4_HALF_IMAGINARY)
    keep = [i for i in range(parent.K) if (i + 1) not in PUNCTURED_6X2]
    return CodeSpec(
        name="code_6x2", n_t=6, T=6,
        basis=parent.basis[keep], scale=parent.scale, n_r_typical=2,
        nvd="nonintegral-basis", kappa_hint=15,
        notes=f"puncture of {parent.name}: dropped coordinates {PUNCTURED_6X2}",
    )


# ---------------------------------------------------------------------------
# Structural baseline: stacked independent Alamouti blocks
# ---------------------------------------------------------------------------


def sr_unrotated() -> CodeSpec:
    """Four independent Alamouti blocks with an eighth-root twist on the
    off-diagonal blocks.  Without constellation rotation this code has
    zero determinants (no full diversity); it is shipped only as a
    structural baseline and makes no NVD claim."""
    z8 = np.exp(2j * np.pi / 8)
    small = alamouti().basis
    matrices = []
    for corner, factor in (((0, 0), 1.0), ((0, 2), z8), ((2, 0), z8), ((2, 2), 1.0)):
        for b in small:
            big = np.zeros((4, 4), dtype=complex)
            big[corner[0] : corner[0] + 2, corner[1] : corner[1] + 2] = factor * b
            matrices.append(big)
    return CodeSpec(
        name="sr_unrotated", n_t=4, T=4, basis=np.array(matrices), n_r_typical=2,
        nvd="none", kappa_hint=None,
        notes="independent blocks A, B, C, D placed as [[A, z8*B], [z8*C, D]]",
    )


# ---------------------------------------------------------------------------
# Registry, shaping and export
# ---------------------------------------------------------------------------

CODE_FACTORIES = {
    "alamouti": alamouti,
    "quasi_orth_dort": quasi_orth_dort,
    "a2": a2_code,
    "mido_a4": mido_a4,
    "mido_a4_half_imag": mido_a4_half_imag,
    "mido_c1": mido_c1,
    "mido_c2": mido_c2,
    "mido_c3": mido_c3,
    "code_6x3": code_6x3,
    "code_6x3_half_imag": code_6x3_half_imag,
    "code_6x2": code_6x2,
    "sr_unrotated": sr_unrotated,
}


def get_code(name: str) -> CodeSpec:
    try:
        return CODE_FACTORIES[name]()
    except KeyError:
        raise ValueError(f"unknown code {name!r}; see list-codes") from None


def gram_matrix(code: CodeSpec) -> np.ndarray:
    """K x K real Gram matrix of the scaled dispersion basis."""
    flat = code.scale * code.basis.reshape(code.K, -1)
    return np.real(flat @ flat.conj().T)


def spherical_codebook(code: CodeSpec, alphabet, size: int, node_budget: int = 20_000_000):
    """The ``size`` lowest-energy codewords with coefficients from
    ``alphabet``, ties broken by lexicographically smallest coefficient
    vector.  Returns (g_matrix, codewords) sorted by Frobenius norm.

    Uses sphere enumeration over the coefficient box with a growing
    radius, so the full box never needs to be materialised.
    """
    points = np.asarray(
        alphabet.points if isinstance(alphabet, Constellation) else alphabet, dtype=float
    )
    gram = gram_matrix(code)
    r_upper = np.linalg.cholesky(gram).T  # ||X(g)||_F^2 = ||r_upper @ g||^2
    total = len(points) ** code.K
    if size > total:
        raise ValueError(f"asked for {size} codewords of {total} available")

    # Radius schedule: start at the energy of the all-smallest-magnitude
    # corner, grow geometrically until enough points fall inside.
    base = points[np.argmin(np.abs(points))]
    radius2 = float(np.full(code.K, base) @ gram @ np.full(code.K, base)) * 1.05 + 1e-9
    while True:
        found = _enumerate_in_sphere(r_upper, points, radius2, node_budget)
        if found is not None and len(found) >= size:
            break
        radius2 *= 1.3
    # Recompute each energy by the one canonical quadratic form and round
    # so that mathematically tied energies sort purely by coefficient order.
    keyed = []
    for _, g in found:
        gv = np.array(g)
        energy = float(gv @ gram @ gv)
        keyed.append((round(energy, 9), g))
    keyed.sort()
    chosen = keyed[:size]
    g_matrix = np.array([g for _, g in chosen], dtype=float)
    codewords = np.array([encode(code, g) for g in g_matrix])
    return g_matrix, codewords


def _enumerate_in_sphere(r_upper, points, radius2, node_budget):
    """All (norm^2, g) with ||r_upper @ g||^2 <= radius2, depth-first.

    Levels run from the last coordinate down; acc[i] carries the partial
    row sums sum_(j>level) r_upper[i, j] * g[j] for the rows not yet fixed.
    """
    k = r_upper.shape[0]
    sorted_points = points[np.argsort(np.abs(points))]
    results = []
    state = {"nodes": 0}
    g = np.zeros(k)

    def descend(level, acc, partial):
        diag = r_upper[level, level]
        for value in sorted_points:
            state["nodes"] += 1
            if state["nodes"] > node_budget:
                raise _BudgetExceeded
            term = acc[level] + diag * value
            cost = partial + term * term
            if cost > radius2:
                continue
            g[level] = value
            if level == 0:
                results.append((cost, tuple(g)))
            else:
                descend(level - 1, acc[:level] + value * r_upper[:level, level], cost)

    try:
        descend(k - 1, np.zeros(k), 0.0)
    except _BudgetExceeded:
        return None
    return results


class _BudgetExceeded(Exception):
    pass


def write_datasheet(code: CodeSpec, path) -> None:
    """Plain-text tabular dump of a code for cross-implementation checks.

    Header lines are key=value; data rows are
    ``index,row,col,re,im`` with 1-based basis index and full-precision
    floats.  The scale is NOT folded into the entries.
    """
    lines = [
        "# space-time code datasheet",
        f"name={code.name}",
        f"n_t={code.n_t}",
        f"T={code.T}",
        f"K={code.K}",
        f"scale={code.scale!r}",
        "columns=index,row,col,re,im",
    ]
    for idx in range(code.K):
        for row in range(code.n_t):
            for col in range(code.T):
                v = code.basis[idx, row, col]
                lines.append(f"{idx + 1},{row},{col},{float(v.real)!r},{float(v.imag)!r}")
    with open(path, "w", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")
