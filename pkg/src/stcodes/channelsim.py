"""Coherent Rayleigh-fading Monte-Carlo simulation producing BLER-vs-SNR
tables for any shipped code.

Model: Y = H X + N with i.i.d. unit-variance complex Gaussian channel
entries, perfect channel knowledge at the receiver, and exact ML
decoding per frame.  SNR convention (the reference never pins one):
the codebook is scaled so its average energy per channel use equals
n_t, making the received signal power per receive antenna n_t, and
SNR = n_t / noise variance per complex entry.  The convention and the
scaling factor are echoed in the run metadata.

Determinism: every frame draws from its own generator seeded by
(seed, point index, frame index), so results are bit identical no
matter how frames are chunked across workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .codebook import CodeSpec, Constellation, get_code, gram_matrix, pam, spherical_codebook
from .fastdecode import sphere_decode


@dataclass(frozen=True)
class SimConfig:
    code: str
    n_r: int
    alphabet: str  # "pam2", "pam4", ...
    snr_db: tuple[float, ...]
    frames: int
    seed: int
    shaping: str = "linear"  # "linear" | "spherical"
    spherical_size: int = 0  # codebook size for spherical shaping
    workers: int = 1
    node_budget: int = 50_000_000

    def __post_init__(self):
        if self.frames < 1:
            raise ValueError("need at least one frame per point")
        if not self.snr_db:
            raise ValueError("empty SNR grid")
        if self.shaping not in ("linear", "spherical"):
            raise ValueError(f"unknown shaping mode {self.shaping!r}")
        if self.shaping == "spherical" and self.spherical_size < 1:
            raise ValueError("spherical shaping needs a codebook size")


@dataclass(frozen=True)
class BlerPoint:
    snr_db: float
    frames: int
    block_errors: int
    bler: float
    ci95: float  # Wilson 95% half-width


def wilson_halfwidth(errors: int, n: int, z: float = 1.959963984540054) -> float:
    """Half-width of the Wilson 95% score interval for errors/n."""
    if n < 1:
        raise ValueError("need at least one trial")
    p = errors / n
    denom = 1.0 + z * z / n
    return float((z / denom) * np.sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)))


def sample_channel(n_r: int, n_t: int, rng) -> np.ndarray:
    """i.i.d. circularly symmetric complex Gaussian entries, unit variance."""
    return (rng.standard_normal((n_r, n_t)) + 1j * rng.standard_normal((n_r, n_t))) / np.sqrt(2.0)


def parse_alphabet(label: str) -> Constellation:
    if label.startswith("pam"):
        return pam(int(label[3:]))
    raise ValueError(f"unknown alphabet {label!r}")


def normalization_factor(code: CodeSpec, alphabet: Constellation) -> float:
    """Scaling that brings the average codeword energy per channel use
    to n_t under uniform linear-dispersion symbols.

    The cross terms vanish exactly over a symmetric alphabet, so the
    average is E[g^2] * trace(gram) and no sampling is involved.
    """
    points = np.asarray(alphabet.points)
    mean_square = float(np.mean(points**2))
    avg_energy_per_use = mean_square * float(np.trace(gram_matrix(code))) / code.T
    return float(np.sqrt(code.n_t / avg_energy_per_use))


def _spherical_normalization(code: CodeSpec, codewords) -> float:
    avg = float(np.mean([np.sum(np.abs(w) ** 2) for w in codewords])) / code.T
    return float(np.sqrt(code.n_t / avg))


def _chunk_ranges(total: int, chunks: int):
    size = (total + chunks - 1) // chunks
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)]


def _linear_chunk(args) -> int:
    code, points, sigma, seed, pt_idx, lo, hi, n_r, node_budget = args
    alphabet = np.sort(np.asarray(points))
    q = len(alphabet)
    errors = 0
    for frame in range(lo, hi):
        rng = np.random.default_rng((seed, pt_idx, frame))
        g = alphabet[rng.integers(0, q, code.K)]
        h = sample_channel(n_r, code.n_t, rng)
        x = code.encode(g)
        noise = sigma * sample_channel(n_r, code.T, rng)
        y = h @ x + noise
        decoded = sphere_decode(code, y, h, alphabet, node_budget=node_budget)
        if not np.array_equal(decoded.g, g):
            errors += 1
    return errors


def _spherical_chunk(args) -> int:
    codewords, sigma, seed, pt_idx, lo, hi, n_r, n_t, t_len = args
    count = len(codewords)
    flat = codewords.reshape(count, n_t, t_len)
    errors = 0
    for frame in range(lo, hi):
        rng = np.random.default_rng((seed, pt_idx, frame))
        message = int(rng.integers(0, count))
        h = sample_channel(n_r, n_t, rng)
        noise = sigma * sample_channel(n_r, t_len, rng)
        y = h @ flat[message] + noise
        received = np.einsum("rn,cnt->crt", h, flat).reshape(count, -1)
        metrics = np.sum(np.abs(y.reshape(-1)[None, :] - received) ** 2, axis=1)
        if int(np.argmin(metrics)) != message:
            errors += 1
    return errors


def run_bler(config: SimConfig) -> list[BlerPoint]:
    """Monte-Carlo block error rates over the configured SNR grid."""
    code = get_code(config.code)
    alphabet = parse_alphabet(config.alphabet)
    if config.shaping == "linear":
        factor = normalization_factor(code, alphabet)
        scaled = code.scaled(factor)
        payload = ("linear", scaled, alphabet.points)
    else:
        _, codewords = spherical_codebook(code, alphabet, config.spherical_size)
        factor = _spherical_normalization(code, codewords)
        payload = ("spherical", code, factor * codewords)

    points_out = []
    for pt_idx, snr_db in enumerate(config.snr_db):
        if np.isinf(snr_db):
            sigma = 0.0
        else:
            sigma = float(np.sqrt(code.n_t / (10.0 ** (snr_db / 10.0))))
        ranges = _chunk_ranges(config.frames, max(config.workers, 1) * 4)
        if payload[0] == "linear":
            jobs = [
                (payload[1], payload[2], sigma, config.seed, pt_idx, lo, hi,
                 config.n_r, config.node_budget)
                for lo, hi in ranges
            ]
            worker = _linear_chunk
        else:
            jobs = [
                (payload[2], sigma, config.seed, pt_idx, lo, hi,
                 config.n_r, code.n_t, code.T)
                for lo, hi in ranges
            ]
            worker = _spherical_chunk
        if config.workers > 1:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                errors = sum(pool.map(worker, jobs))
        else:
            errors = sum(map(worker, jobs))
        points_out.append(
            BlerPoint(
                snr_db=float(snr_db),
                frames=config.frames,
                block_errors=int(errors),
                bler=errors / config.frames,
                ci95=float(wilson_halfwidth(errors, config.frames)),
            )
        )
    return points_out


def export_csv(points, destination) -> None:
    """CSV with header snr_db,frames,errors,bler,ci95; full-precision
    floats, LF line endings."""
    lines = ["snr_db,frames,errors,bler,ci95"]
    for p in points:
        lines.append(f"{p.snr_db!r},{p.frames},{p.block_errors},{p.bler!r},{p.ci95!r}")
    with open(destination, "w", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


def write_metadata(destination, config: SimConfig, extra: dict | None = None) -> None:
    """Plain key=value sidecar echoing the configuration."""
    code = get_code(config.code)
    pairs = {
        "version": f"stcodes-{__version__}",
        "code": config.code,
        "n_r": config.n_r,
        "alphabet": config.alphabet,
        "snr_db": ",".join(repr(float(s)) for s in config.snr_db),
        "frames": config.frames,
        "seed": config.seed,
        "shaping": config.shaping,
        "spherical_size": config.spherical_size,
        "workers": config.workers,
        "normalization": "codebook-average energy per channel use = n_t",
        "normalization_constant": code.n_t,
        "snr_definition": "received power per receive antenna / noise variance per complex entry",
    }
    if extra:
        pairs.update(extra)
    with open(destination, "w", newline="\n") as handle:
        for key, value in pairs.items():
            handle.write(f"{key}={value}\n")
