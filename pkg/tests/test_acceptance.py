"""Acceptance suite: one test per numbered criterion, each printing a
PASS line when its assertions hold (run with -s to see them inline).

Everything here is pinned: expected values, tolerances and sample
counts.  The one documented exception is the quaternion-block claim for
the punctured Q(zeta_20) code, kept as a strict xfail with the analysis
in its reason string.
"""

from fractions import Fraction

import numpy as np
import pytest

from stcodes import bounds as bounds_mod
from stcodes.cda import (
    build_quaternionizer,
    is_alamouti_blocks,
    left_regular,
    mido_algebra,
    quaternionize,
    six_antenna_algebra,
)
from stcodes.channelsim import SimConfig, export_csv, run_bler
from stcodes.codebook import CodeSpec, encode, get_code, gram_matrix, pam
from stcodes.fastdecode import (
    complexity_estimate,
    discover_pattern,
    effective_generator,
    exhaustive_ml,
    sphere_decode,
)
from stcodes.latticemetrics import min_det_search, normalized_min_det, volume
from stcodes.linalg import frob_inner, qr_decompose, realify
from stcodes.numberfield import FieldElement, cyclotomic_field

from conftest import random_channel


def report(criterion, text):
    print(f"ACCEPTANCE {criterion}: PASS - {text}")


# ---------------------------------------------------------------------------
# 1. Orthogonality pattern / kappa table
# ---------------------------------------------------------------------------

KAPPA_EXPECTED = [
    ("alamouti", 1, "4|S|^1"),
    ("quasi_orth_dort", 4, "2|S|^4"),
    ("mido_a4", 12, "2|S|^12"),
    ("mido_a4_half_imag", 10, "4|S|^10"),
    ("code_6x3", 30, "2|S|^30"),
    ("code_6x3_half_imag", 27, "4|S|^27"),
    ("code_6x2", 15, "4|S|^15"),
]


def test_criterion_1_kappa_table():
    for name, kappa, worst in KAPPA_EXPECTED:
        code = get_code(name)
        mask = discover_pattern(code, sample_count=200, seed=20260809, tol=1e-9)
        estimate = complexity_estimate(mask)
        assert estimate.kappa == kappa, (name, estimate.kappa)
        assert estimate.worst_case == worst, (name, estimate.worst_case)
    # Table row "4x2 ... 10 ... 37.50%": rate-two 4x4 at its best basis
    code = get_code("mido_a4_half_imag")
    assert (code.K - 10) / code.K == pytest.approx(0.375)
    report(1, "kappa table reproduced for all seven pattern-bearing codes")


# ---------------------------------------------------------------------------
# 2. Quaternionic embedding
# ---------------------------------------------------------------------------


def test_criterion_2_quaternionic_embedding():
    rng = np.random.default_rng(20260809)
    for algebra in (mido_algebra(), six_antenna_algebra()):
        q = build_quaternionizer(algebra.n, algebra.gamma)
        for _ in range(100):
            xs = [
                FieldElement(
                    algebra.field,
                    [Fraction(int(v)) for v in rng.integers(-5, 6, algebra.field.degree)],
                )
                for _ in range(algebra.n)
            ]
            image = quaternionize(left_regular(algebra, xs), q)
            assert is_alamouti_blocks(image, tol=1e-9)
    report(2, "conjugated left-regular images land in Alamouti-block form (n=4 and n=6)")


# ---------------------------------------------------------------------------
# 3. C1 lattice figures
# ---------------------------------------------------------------------------


def test_criterion_3_c1_lattice_figures():
    code = get_code("mido_c1")
    vol = volume(code)
    assert vol == pytest.approx(160000.0, rel=1e-6)
    search = min_det_search(code, 2, seed=20260809)
    assert search.mode == "structured"
    assert search.mindet == pytest.approx(1.0, rel=1e-6)
    delta = normalized_min_det(code, search.mindet, 4)
    assert delta == pytest.approx(0.05, rel=1e-6)
    report(3, f"volume={vol:.6f}, mindet={search.mindet:.8f}, delta={delta:.8f}")


# ---------------------------------------------------------------------------
# 4. Bound calculator
# ---------------------------------------------------------------------------


def test_criterion_4_bound_calculator():
    disc = bounds_mod.min_discriminant_bound(bounds_mod.center_q(), 4)
    assert disc == 2**12 * 3**12 == 2176782336
    delta = bounds_mod.delta_bound(disc, 4)
    assert f"{delta:.4g}" == "0.06804"
    assert bounds_mod.ORTHOGONAL_SHAPING_DELTA_16DIM == 0.0625
    assert bounds_mod.volume_from_z_disc(disc) == 6**6
    report(4, f"min discriminant 6^12={disc}, delta bound {delta:.6f}, reference 0.0625")


# ---------------------------------------------------------------------------
# 5. Appendix formulas
# ---------------------------------------------------------------------------


def test_criterion_5_invariant_table():
    checked = 0
    for k in (1, 2, 3):
        for m in (1, 2, 3):
            row = bounds_mod.table3_row("4k", k, m)
            assert bounds_mod.admissible(row)
            assert bounds_mod.algebra_index(row) == 4 * k
            checked += 1
            if k % 2 == 1:
                row = bounds_mod.table3_row("2k", k, m)
                assert bounds_mod.admissible(row)
                assert bounds_mod.algebra_index(row) == 2 * k
                checked += 1
    _, disc = bounds_mod.maximal_order_discriminant(bounds_mod.table3_row("4k", 1, 1), 4)
    assert disc == bounds_mod.min_discriminant_bound(bounds_mod.center_q(), 4)
    report(5, f"{checked} invariant-table instantiations admissible with stated index")


# ---------------------------------------------------------------------------
# 6. Decoder ML-exactness
# ---------------------------------------------------------------------------


def test_criterion_6_decoder_exactness():
    rng = np.random.default_rng(20260809)
    code = get_code("alamouti")
    points = pam(4)
    pts = np.asarray(points.points)
    for _ in range(10_000):
        g = pts[rng.integers(0, 4, 4)]
        h = random_channel(rng, 1, 2)
        y = h @ encode(code, g) + 0.8 * random_channel(rng, 1, 2)
        fast = sphere_decode(code, y, h, points)
        slow = exhaustive_ml(code, y, h, points)
        assert abs(fast.metric - slow.metric) < 1e-9
        assert np.array_equal(fast.g, slow.g)

    code = get_code("mido_c2")
    points = pam(2)
    pts = np.asarray(points.points)
    pattern = complexity_estimate(discover_pattern(code, sample_count=60, seed=1))
    for _ in range(500):
        g = pts[rng.integers(0, 2, 16)]
        h = random_channel(rng, 2, 4)
        y = h @ encode(code, g) + 0.5 * random_channel(rng, 2, 4)
        fast = sphere_decode(code, y, h, points)
        grouped = sphere_decode(code, y, h, points, use_groups=True, report=pattern)
        slow = exhaustive_ml(code, y, h, points)  # 65536-candidate oracle
        assert abs(fast.metric - slow.metric) < 1e-9
        assert np.array_equal(fast.g, slow.g)
        assert abs(grouped.metric - slow.metric) < 1e-9
        assert np.array_equal(grouped.g, slow.g)
    report(6, "sphere decoder identical to the exhaustive oracle on 10500 noisy trials")


# ---------------------------------------------------------------------------
# 7. Order-code NVD
# ---------------------------------------------------------------------------


def test_criterion_7_order_code_nvd():
    code = get_code("quasi_orth_dort")
    search = min_det_search(code, 2)  # 5^8 box, exhaustive
    assert search.mode == "exhaustive"
    assert search.zero_dets == 0
    assert search.mindet >= 1.0 - 1e-9

    rescaled = get_code("mido_a4").scaled(9.0)
    search_a4 = min_det_search(rescaled, 1, seed=20260809, samples=1_000_000)
    assert search_a4.mode == "structured"
    assert search_a4.zero_dets == 0
    assert search_a4.mindet >= 1.0 - 1e-6
    report(
        7,
        f"natural-order mindet {search.mindet:.9f} >= 1; rescaled a4 sampled "
        f"mindet {search_a4.mindet:.6f} >= 1",
    )


# ---------------------------------------------------------------------------
# 8. Simulation (property-based)
# ---------------------------------------------------------------------------

SIM_SEED = 20260809
SIM_GRID = (8.0, 12.0, 16.0, 20.0)


@pytest.fixture(scope="module")
def a4_curve():
    config = SimConfig(code="mido_a4", n_r=2, alphabet="pam2",
                       snr_db=SIM_GRID, frames=20_000, seed=SIM_SEED)
    return run_bler(config)


@pytest.fixture(scope="module")
def c2_point_16db():
    config = SimConfig(code="mido_c2", n_r=2, alphabet="pam2",
                       snr_db=(16.0,), frames=20_000, seed=SIM_SEED)
    return run_bler(config)[0]


def test_criterion_8_bler_decreases(a4_curve):
    blers = [p.bler for p in a4_curve]
    for left, right in zip(a4_curve, a4_curve[1:]):
        decreasing = right.bler < left.bler
        overlapping = right.bler + right.ci95 >= left.bler - left.ci95
        assert decreasing or overlapping, (left, right)
    # the overall trend must be a genuine decrease, not just overlap
    assert blers[-1] < blers[0]
    report(8, "BLER " + " > ".join(f"{b:.5f}" for b in blers) + " over 8..20 dB")


def test_criterion_8_c2_worse_than_a4_at_16db(a4_curve, c2_point_16db):
    a4_16 = next(p for p in a4_curve if p.snr_db == 16.0)
    assert c2_point_16db.bler >= a4_16.bler
    report(8, f"c2 BLER {c2_point_16db.bler:.5f} >= a4 BLER {a4_16.bler:.5f} at 16 dB")


def test_criterion_8_identical_seed_identical_csv(tmp_path):
    config = SimConfig(code="mido_a4", n_r=2, alphabet="pam2",
                       snr_db=(12.0,), frames=500, seed=SIM_SEED)
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    export_csv(run_bler(config), first)
    export_csv(run_bler(config), second)
    assert first.read_bytes() == second.read_bytes()
    # worker count cannot change the bytes either
    chunked = SimConfig(code="mido_a4", n_r=2, alphabet="pam2",
                        snr_db=(12.0,), frames=500, seed=SIM_SEED, workers=3)
    third = tmp_path / "c.csv"
    export_csv(run_bler(chunked), third)
    assert third.read_bytes() == first.read_bytes()
    report(8, "bit-identical CSV under repeated seeds and worker-count changes")


# ---------------------------------------------------------------------------
# 9. Invariant suites (cross-module property checks)
# ---------------------------------------------------------------------------


def test_criterion_9_isometry_and_inner_product():
    rng = np.random.default_rng(99)
    for _ in range(1000):
        a = random_channel(rng, 2, 4)
        b = random_channel(rng, 2, 4)
        assert np.linalg.norm(a) == pytest.approx(np.linalg.norm(realify(a)), rel=1e-12)
        assert frob_inner(a, b) == pytest.approx(
            float(np.dot(realify(a), realify(b))), rel=1e-12, abs=1e-12
        )
    report(9, "realification is an isometry and preserves inner products")


def test_criterion_9_determinant_similarity_invariance():
    rng = np.random.default_rng(98)
    q = build_quaternionizer(4, Fraction(-8, 9))
    for _ in range(200):
        x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        assert abs(np.linalg.det(quaternionize(x, q))) == pytest.approx(
            abs(np.linalg.det(x)), rel=1e-10
        )
    report(9, "|det| invariant under the quaternionizing conjugation")


def test_criterion_9_delta_scale_invariance():
    code = get_code("mido_c1")
    base = normalized_min_det(code, 1.0, 4)
    for s in (0.5, 2.0, np.sqrt(5.0)):
        assert normalized_min_det(code.scaled(s), s**4, 4) == pytest.approx(base, abs=1e-9)
    report(9, "normalized minimum determinant is scale invariant")


def test_criterion_9_mask_predicts_r_zeros():
    rng = np.random.default_rng(97)
    for name in ("alamouti", "quasi_orth_dort", "mido_a4", "mido_a4_half_imag", "mido_c2"):
        code = get_code(name)
        mask = discover_pattern(code, sample_count=60, seed=2)
        n_r = max(code.n_r_typical, (code.K + 2 * code.T - 1) // (2 * code.T))
        for _ in range(50):
            h = random_channel(rng, n_r, code.n_t)
            _, r = qr_decompose(effective_generator(code, h).matrix)
            for j in range(code.K):
                for i in range(j):
                    if all(mask[k, j] for k in range(i + 1)):
                        assert abs(r[i, j]) <= 1e-9 * abs(r[i, i])
    report(9, "prefix-closed mask entries appear as exact zeros of R (50 channels/code)")


def test_criterion_9_field_axioms():
    rng = np.random.default_rng(96)
    field = cyclotomic_field(5)
    one = FieldElement.one(field)
    for _ in range(500):
        x, y, z = (
            FieldElement(field, [Fraction(int(v)) for v in rng.integers(-6, 7, 4)])
            for _ in range(3)
        )
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        if not x.is_zero():
            assert x * x.inverse() == one
    report(9, "field axioms hold exactly on 500 random triples")


def test_criterion_9_alamouti_membership():
    rng = np.random.default_rng(95)
    for name in ("mido_a4", "code_6x3", "code_6x2"):
        code = get_code(name)
        for _ in range(50):
            word = encode(code, rng.integers(-4, 5, code.K).astype(float))
            assert is_alamouti_blocks(word, tol=1e-9)
    report(9, "quaternion-block membership holds for the blocked constructions")


@pytest.mark.xfail(
    strict=True,
    reason=(
        "stated invariant: every mido_c2 codeword passes the quaternion "
        "block test; in fact the construction leaves the upper-right 2x2 "
        "block a unit factor i away from Alamouti form, so membership in "
        "M_2(H) fails no matter the basis ordering"
    ),
)
def test_criterion_9_c2_alamouti_membership_documented_failure():
    rng = np.random.default_rng(94)
    code = get_code("mido_c2")
    word = encode(code, rng.integers(-4, 5, 16).astype(float))
    assert is_alamouti_blocks(word, tol=1e-9)


def test_criterion_9_energy_normalization_exact():
    import itertools

    from stcodes.channelsim import normalization_factor

    code = get_code("alamouti")
    factor = normalization_factor(code, pam(2))
    scaled = code.scaled(factor)
    mean = np.mean(
        [
            np.sum(np.abs(encode(scaled, np.array(g, dtype=float))) ** 2) / scaled.T
            for g in itertools.product(pam(2).points, repeat=4)
        ]
    )
    assert mean == pytest.approx(scaled.n_t, rel=1e-9)
    report(9, "codebook-average energy per channel use equals the policy constant")
