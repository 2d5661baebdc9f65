"""Brute-force simulation oracle and empirical-distribution machinery.

Distances are simulated literally: draw two points with i.i.d. standard
normal coordinates and take the Euclidean norm of their difference.
This is the independent check against the analytic law and its sampler.

Randomness comes from numpy's PCG64 generator (ziggurat normal variates,
Marsaglia-Tsang gamma variates).  Work is split into fixed-size blocks
and every block gets its own substream seeded by ``SeedSequence((seed,
block_index))``, so output is byte-identical no matter how many worker
threads process the blocks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Callable

import numpy as np

if TYPE_CHECKING:  # pragma: no cover
    from .distribution import DistanceDistribution

__all__ = [
    "SampleSource",
    "EmpiricalSample",
    "KsResult",
    "SampleMoments",
    "simulate_pairs",
    "ecdf",
    "ks_one_sample",
    "ks_two_sample",
    "sample_moments",
]

# Asymptotic Kolmogorov-Smirnov critical coefficient at alpha = 0.01.
KS_COEFF_01 = 1.63


class SampleSource(Enum):
    DIRECT_SIMULATION = "direct_simulation"
    ANALYTIC_SAMPLER = "analytic_sampler"
    EXTERNAL = "external"


@dataclass(frozen=True)
class EmpiricalSample:
    """A sorted collection of non-negative distances with provenance."""

    values: np.ndarray
    k: float
    source: SampleSource
    seed: int | None = None

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size < 1:
            raise ValueError("sample needs at least one value")
        if np.any(values < 0.0) or not np.all(np.isfinite(values)):
            raise ValueError("distances must be finite and non-negative")
        if np.any(np.diff(values) < 0.0):
            values = np.sort(values)
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class KsResult:
    statistic: float
    critical_value_01: float
    n_effective: float
    passed: bool


@dataclass(frozen=True)
class SampleMoments:
    """Empirical counterpart of the closed-form moment set."""

    raw: tuple[float, float, float, float]
    central: tuple[float, float, float]
    skewness: float
    kurtosis: float
    n: int = field(default=0)


def _substream(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, index))))


def _check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise ValueError("seed must be an integer")
    if seed < 0:
        raise ValueError("seed must be non-negative")
    return int(seed)


def _blocked_draw(
    n: int,
    seed: int,
    block: int,
    draw: Callable[[np.random.Generator, int], np.ndarray],
    threads: int = 1,
) -> np.ndarray:
    """Concatenate per-block draws; block boundaries fix the streams."""
    sizes = []
    remaining = n
    while remaining > 0:
        sizes.append(min(block, remaining))
        remaining -= sizes[-1]

    def one(idx_size):
        idx, size = idx_size
        return draw(_substream(seed, idx), size)

    jobs = list(enumerate(sizes))
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(one, jobs))
    else:
        parts = [one(job) for job in jobs]
    return np.concatenate(parts)


def simulate_pairs(k: int, n: int, seed: int, threads: int = 1) -> EmpiricalSample:
    """Distances between n pairs of k-dimensional standard normal points.

    k must be a whole number: the direct simulation has no meaning for
    fractional dimensions.  Deterministic for fixed (k, n, seed),
    regardless of thread count.
    """
    kf = float(k)
    if not (np.isfinite(kf) and kf >= 1 and kf == int(kf)):
        raise ValueError(f"simulate_pairs needs an integer dimension k >= 1, got {k}")
    ki = int(kf)
    if n < 1:
        raise ValueError("n must be at least 1")
    seed = _check_seed(seed)

    def draw(rng: np.random.Generator, size: int) -> np.ndarray:
        psi = rng.standard_normal((size, ki))
        gam = rng.standard_normal((size, ki))
        return np.linalg.norm(psi - gam, axis=1)

    block = max(256, (1 << 21) // ki)
    values = _blocked_draw(n, seed, block, draw, threads)
    return EmpiricalSample(
        np.sort(values), k=kf, source=SampleSource.DIRECT_SIMULATION, seed=seed
    )


def ecdf(sample: EmpiricalSample, r) -> float | np.ndarray:
    """Fraction of sample values <= r (right-continuous step function)."""
    pos = np.searchsorted(sample.values, r, side="right")
    out = pos / sample.n
    return float(out) if np.ndim(r) == 0 else out


def ks_one_sample(sample: EmpiricalSample, dist: "DistanceDistribution") -> KsResult:
    """Exact sup-distance between the sample ECDF and the analytic CDF."""
    if sample.source is SampleSource.DIRECT_SIMULATION and sample.k != dist.k:
        raise ValueError(
            f"dimension mismatch: sample simulated at k={sample.k}, "
            f"law has k={dist.k}"
        )
    n = sample.n
    cdf_vals = np.atleast_1d(dist.cdf(sample.values))
    steps = np.arange(1, n + 1) / n
    statistic = float(max(np.max(steps - cdf_vals), np.max(cdf_vals - (steps - 1.0 / n))))
    critical = KS_COEFF_01 / math.sqrt(n)
    return KsResult(statistic, critical, float(n), statistic < critical)


def ks_two_sample(a: EmpiricalSample, b: EmpiricalSample) -> KsResult:
    """Sup-distance between two sample ECDFs."""
    grid = np.concatenate([a.values, b.values])
    fa = np.searchsorted(a.values, grid, side="right") / a.n
    fb = np.searchsorted(b.values, grid, side="right") / b.n
    statistic = float(np.max(np.abs(fa - fb)))
    n_eff = a.n * b.n / (a.n + b.n)
    critical = KS_COEFF_01 / math.sqrt(n_eff)
    return KsResult(statistic, critical, n_eff, statistic < critical)


def sample_moments(sample: EmpiricalSample) -> SampleMoments:
    """Sample raw moments 1..4, central moments 2..4, skewness, kurtosis.

    Central quantities are accumulated about the sample mean, so no
    large-number cancellation occurs.  Skewness and kurtosis are NaN for
    degenerate (zero variance) samples.
    """
    if sample.n < 4:
        raise ValueError(f"need at least 4 values for sample moments, got {sample.n}")
    v = sample.values
    raw = tuple(float(np.mean(v**i)) for i in range(1, 5))
    d = v - raw[0]
    central = tuple(float(np.mean(d**i)) for i in range(2, 5))
    mu2, mu3, mu4 = central
    if mu2 > 0.0:
        skewness = mu3 / mu2**1.5
        kurtosis = mu4 / mu2**2
    else:
        skewness = math.nan
        kurtosis = math.nan
    return SampleMoments(raw, central, skewness, kurtosis, n=sample.n)
