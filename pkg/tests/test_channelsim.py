import itertools

import numpy as np
import pytest

from stcodes.channelsim import (
    BlerPoint,
    SimConfig,
    export_csv,
    normalization_factor,
    parse_alphabet,
    run_bler,
    sample_channel,
    wilson_halfwidth,
    write_metadata,
)
from stcodes.codebook import encode, get_code, pam


def test_sample_channel_statistics():
    rng = np.random.default_rng(1)
    draws = sample_channel(100, 1000, rng)
    variance = np.mean(np.abs(draws) ** 2)
    assert variance == pytest.approx(1.0, abs=0.02)
    mean = np.mean(draws)
    assert abs(mean) < 3.0 / np.sqrt(draws.size)


def test_sample_channel_deterministic():
    a = sample_channel(3, 4, np.random.default_rng(7))
    b = sample_channel(3, 4, np.random.default_rng(7))
    assert np.array_equal(a, b)


def test_parse_alphabet():
    assert parse_alphabet("pam4").points == (-3.0, -1.0, 1.0, 3.0)
    with pytest.raises(ValueError):
        parse_alphabet("qam16")


def test_normalization_matches_full_codebook_average():
    # over the full PAM box the average energy is exact, no sampling
    code = get_code("alamouti")
    alphabet = pam(2)
    factor = normalization_factor(code, alphabet)
    scaled = code.scaled(factor)
    energies = [
        np.sum(np.abs(encode(scaled, np.array(g, dtype=float))) ** 2) / scaled.T
        for g in itertools.product(alphabet.points, repeat=4)
    ]
    assert np.mean(energies) == pytest.approx(scaled.n_t, rel=1e-9)


def test_wilson_halfwidth_bounds():
    assert wilson_halfwidth(0, 100) > 0
    assert wilson_halfwidth(50, 100) < 0.2
    with pytest.raises(ValueError):
        wilson_halfwidth(0, 0)


def test_run_bler_zero_noise_is_error_free():
    config = SimConfig(
        code="alamouti", n_r=1, alphabet="pam2",
        snr_db=(float("inf"),), frames=50, seed=3,
    )
    (point,) = run_bler(config)
    assert point.block_errors == 0
    assert point.bler == 0.0


def test_run_bler_deterministic_and_worker_invariant():
    base = dict(code="alamouti", n_r=1, alphabet="pam4", snr_db=(6.0, 14.0), frames=200, seed=11)
    first = run_bler(SimConfig(**base))
    second = run_bler(SimConfig(**base))
    assert first == second
    chunked = run_bler(SimConfig(**base, workers=3))
    assert chunked == first


def test_run_bler_spherical_mode():
    config = SimConfig(
        code="alamouti", n_r=1, alphabet="pam4", snr_db=(10.0,),
        frames=100, seed=5, shaping="spherical", spherical_size=16,
    )
    (point,) = run_bler(config)
    assert 0.0 <= point.bler <= 1.0
    again = run_bler(config)
    assert again[0] == point


def test_sim_config_validation():
    with pytest.raises(ValueError):
        SimConfig(code="alamouti", n_r=1, alphabet="pam2", snr_db=(), frames=10, seed=0)
    with pytest.raises(ValueError):
        SimConfig(code="alamouti", n_r=1, alphabet="pam2", snr_db=(1.0,), frames=0, seed=0)
    with pytest.raises(ValueError):
        SimConfig(code="alamouti", n_r=1, alphabet="pam2", snr_db=(1.0,), frames=10,
                  seed=0, shaping="spherical")


def test_export_csv_round_trip(tmp_path):
    points = [
        BlerPoint(snr_db=12.0, frames=20000, block_errors=413, bler=413 / 20000,
                  ci95=wilson_halfwidth(413, 20000)),
        BlerPoint(snr_db=16.0, frames=20000, block_errors=3, bler=3 / 20000,
                  ci95=wilson_halfwidth(3, 20000)),
    ]
    path = tmp_path / "out.csv"
    export_csv(points, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "snr_db,frames,errors,bler,ci95"
    assert len(lines) == 3
    for line, point in zip(lines[1:], points):
        snr, frames, errors, bler, ci = line.split(",")
        assert float(snr) == point.snr_db
        assert int(frames) == point.frames
        assert int(errors) == point.block_errors
        assert float(bler) == point.bler  # full precision round trip
        assert float(ci) == point.ci95


def test_export_csv_empty(tmp_path):
    path = tmp_path / "empty.csv"
    export_csv([], path)
    assert path.read_text() == "snr_db,frames,errors,bler,ci95\n"


def test_metadata_sidecar(tmp_path):
    config = SimConfig(code="mido_a4", n_r=2, alphabet="pam2", snr_db=(8.0,), frames=5, seed=1)
    path = tmp_path / "run.meta"
    write_metadata(path, config, extra={"elapsed_s": 1})
    text = path.read_text()
    assert "code=mido_a4" in text
    assert "seed=1" in text
    assert "normalization_constant=4" in text
    assert "version=stcodes-" in text
