"""Lattice-level figures of merit for a code: Gram matrix, fundamental
parallelotope volume, minimum-determinant search and the normalized
minimum determinant.

The true minimum determinant of an infinite lattice is out of numerical
reach; the search here is exhaustive over a coefficient box when the box
is small enough and otherwise structured (all weight-one and weight-two
vectors plus seeded random samples).  Order-theoretic lower bounds from
:mod:`stcodes.bounds` supply the values the search results are compared
against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codebook import CodeSpec, encode, gram_matrix
from .linalg import RankDeficiencyError

EXHAUSTIVE_BUDGET = 10_000_000
RANDOM_SAMPLES = 1_000_000


def gram(code: CodeSpec) -> np.ndarray:
    """K x K matrix of real Frobenius inner products of the scaled basis."""
    return gram_matrix(code)


def volume(code: CodeSpec) -> float:
    """Fundamental parallelotope volume, sqrt(det(gram))."""
    g = gram_matrix(code)
    sign, logdet = np.linalg.slogdet(g)
    if sign <= 0 or not np.isfinite(logdet):
        raise RankDeficiencyError(f"{code.name}: dispersion matrices are not independent")
    return float(np.exp(0.5 * logdet))


def _det_batch(code: CodeSpec, gs: np.ndarray) -> np.ndarray:
    """|det| of the codewords for a (N, K) block of coefficient vectors."""
    words = code.scale * np.tensordot(gs, code.basis, axes=(1, 0))
    return np.abs(np.linalg.det(words))


def _structured_vectors(K: int, r: int, seed: int, samples: int):
    """Weight-1 and weight-2 box vectors, then seeded random box vectors."""
    values = [v for v in range(-r, r + 1) if v != 0]
    weight1 = []
    for i in range(K):
        for v in values:
            g = np.zeros(K)
            g[i] = v
            weight1.append(g)
    yield np.array(weight1)
    weight2 = []
    for i in range(K):
        for j in range(i + 1, K):
            for vi in values:
                for vj in values:
                    g = np.zeros(K)
                    g[i], g[j] = vi, vj
                    weight2.append(g)
    yield np.array(weight2)
    rng = np.random.default_rng(seed)
    remaining = samples
    while remaining > 0:
        chunk = min(remaining, 100_000)
        block = rng.integers(-r, r + 1, size=(chunk, K)).astype(float)
        block = block[np.any(block != 0.0, axis=1)]
        if len(block):
            yield block
        remaining -= chunk


def _exhaustive_vectors(K: int, r: int, chunk: int = 100_000):
    values = np.arange(-r, r + 1, dtype=float)
    n = len(values)
    total = n**K
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        block = np.empty((len(idx), K))
        rem = idx.copy()
        for pos in range(K - 1, -1, -1):
            block[:, pos] = values[rem % n]
            rem //= n
        block = block[np.any(block != 0.0, axis=1)]
        if len(block):
            yield block


@dataclass(frozen=True)
class MinDetResult:
    mindet: float
    g_min: np.ndarray
    mode: str  # "exhaustive" | "structured"
    search_range: int
    zero_dets: int  # candidates whose determinant vanished (within 1e-12)


def min_det_search(
    code: CodeSpec,
    search_range: int,
    budget: int = EXHAUSTIVE_BUDGET,
    seed: int = 0,
    samples: int = RANDOM_SAMPLES,
) -> MinDetResult:
    """Smallest |det| over nonzero coefficient vectors in [-r, r]^K.

    Exhaustive when the box has at most ``budget`` points, otherwise
    structured sampling; the mode actually used is reported, never an
    error.  The zero vector is excluded by construction.
    """
    if search_range < 1:
        raise ValueError("search range must be at least 1")
    K = code.K
    box = (2 * search_range + 1) ** K
    if box <= budget:
        mode = "exhaustive"
        blocks = _exhaustive_vectors(K, search_range)
    else:
        mode = "structured"
        blocks = _structured_vectors(K, search_range, seed, samples)
    best = np.inf
    best_g = None
    zero_dets = 0
    for block in blocks:
        dets = _det_batch(code, block)
        zero_dets += int(np.sum(dets <= 1e-12))
        keep = dets > 1e-12
        if not np.any(keep):
            continue
        local = np.argmin(dets[keep])
        value = dets[keep][local]
        if value < best:
            best = float(value)
            best_g = block[keep][local].copy()
    if best_g is None:
        raise RankDeficiencyError("every sampled codeword had zero determinant")
    return MinDetResult(best, best_g, mode, search_range, zero_dets)


def normalized_min_det(code: CodeSpec, mindet: float, n: int) -> float:
    """mindet / volume^(n/K): minimum determinant after rescaling the
    lattice to a unit fundamental parallelotope.  Scale invariant."""
    if mindet <= 0:
        raise ValueError("normalized minimum determinant needs mindet > 0")
    return mindet / volume(code) ** (n / code.K)


@dataclass(frozen=True)
class NvdReport:
    ok: bool
    lower_bound: float
    min_seen: float
    zero_dets: int
    mode: str


def check_nvd(
    code: CodeSpec,
    search_range: int,
    lower_bound: float,
    budget: int = EXHAUSTIVE_BUDGET,
    seed: int = 0,
    samples: int = RANDOM_SAMPLES,
) -> NvdReport:
    """Every sampled nonzero coefficient vector should give
    |det| >= lower_bound - 1e-6; zero determinants are counted and
    reported (they mean the code lacks full diversity)."""
    result = min_det_search(code, search_range, budget=budget, seed=seed, samples=samples)
    min_seen = 0.0 if result.zero_dets else result.mindet
    ok = result.zero_dets == 0 and result.mindet >= lower_bound - 1e-6
    return NvdReport(ok, lower_bound, min_seen, result.zero_dets, result.mode)


@dataclass(frozen=True)
class LatticeReport:
    """Everything the ``analyze`` command prints for one code."""

    name: str
    K: int
    n_t: int
    gram: np.ndarray
    volume: float
    mindet: float
    g_min: np.ndarray
    delta: float
    mode: str
    search_range: int
    zero_dets: int


def analyze_code(
    code: CodeSpec, search_range: int = 2, budget: int = EXHAUSTIVE_BUDGET, seed: int = 0,
    samples: int = RANDOM_SAMPLES,
) -> LatticeReport:
    g = gram_matrix(code)
    vol = volume(code)
    result = min_det_search(code, search_range, budget=budget, seed=seed, samples=samples)
    delta = result.mindet / vol ** (code.n_t / code.K) if result.zero_dets == 0 else 0.0
    return LatticeReport(
        name=code.name,
        K=code.K,
        n_t=code.n_t,
        gram=g,
        volume=vol,
        mindet=result.mindet if result.zero_dets == 0 else 0.0,
        g_min=result.g_min,
        delta=delta,
        mode=result.mode,
        search_range=search_range,
        zero_dets=result.zero_dets,
    )


def format_report(report: LatticeReport) -> str:
    """Plain-text tabular form of a lattice report."""
    lines = [
        "# lattice analysis",
        f"name={report.name}",
        f"K={report.K}",
        f"n_t={report.n_t}",
        f"volume={report.volume!r}",
        f"mindet={report.mindet!r}",
        f"delta={report.delta!r}",
        f"search_mode={report.mode}",
        f"search_range={report.search_range}",
        f"zero_determinants={report.zero_dets}",
        "achieving_g=" + ",".join(repr(float(v)) for v in report.g_min),
        "gram_rows=index,values",
    ]
    for i, row in enumerate(report.gram):
        lines.append(f"{i + 1}," + ",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"
