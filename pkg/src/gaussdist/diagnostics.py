"""Applying the distance law to data: significance, fit, effective dimension.

The null model throughout is a dataset whose standardized features are
independent standard normals, in which case all pairwise distances
follow the analytic law for k = number of features.  Pairwise distances
from one dataset are statistically dependent (they share points), so fit
reports carry a dependence caveat rather than pretending the KS test is
exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distribution import DistanceDistribution
from .moments import central_moment, raw_moment
from .montecarlo import (
    EmpiricalSample,
    KsResult,
    SampleSource,
    _substream,
    ks_one_sample,
)

__all__ = [
    "DatasetMatrix",
    "FitReport",
    "ContrastRow",
    "standardize",
    "pairwise_distances",
    "distance_pvalue",
    "effective_dimension",
    "fit_report",
    "relative_contrast_curve",
]

@dataclass(frozen=True)
class DatasetMatrix:
    """A numeric dataset: rows are observations, columns are features.

    The standardized flag records provenance: data produced by
    standardize() has zero-mean, unit-sd columns (divisor n-1) to within
    1e-9.  Constructing with standardized=True asserts the caller's data
    already satisfies that convention; it is trusted, not re-verified.
    """

    data: np.ndarray
    standardized: bool = False

    def __post_init__(self) -> None:
        data = np.asarray(self.data, dtype=float)
        if data.ndim != 2:
            raise ValueError("dataset must be a 2-D matrix")
        rows, cols = data.shape
        if rows < 2 or cols < 1:
            raise ValueError(f"dataset needs >= 2 rows and >= 1 column, got {rows}x{cols}")
        if not np.all(np.isfinite(data)):
            raise ValueError("dataset contains non-finite values; missing data is rejected")
        data = data.copy()
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @property
    def rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def cols(self) -> int:
        return int(self.data.shape[1])


def standardize(data: DatasetMatrix) -> DatasetMatrix:
    """Transform every column to zero mean, unit sample sd (divisor n-1)."""
    means = data.data.mean(axis=0)
    sds = data.data.std(axis=0, ddof=1)
    # A column of identical values has zero range exactly, even when
    # mean subtraction leaves rounding residue in the sd.
    spread = data.data.max(axis=0) - data.data.min(axis=0)
    constant = np.flatnonzero((spread == 0.0) | (sds == 0.0))
    if constant.size:
        raise ValueError(
            f"column {int(constant[0])} is constant; standardization is undefined "
            "for zero-variance features"
        )
    return DatasetMatrix((data.data - means) / sds, standardized=True)


def pairwise_distances(data: DatasetMatrix) -> EmpiricalSample:
    """All rows*(rows-1)/2 Euclidean distances between rows, sorted."""
    if not data.standardized:
        raise ValueError(
            "pairwise distances against the null law need standardized data; "
            "call standardize() first or pass data that already is"
        )
    x = data.data
    sq = np.sum(x**2, axis=1)
    gram = x @ x.T
    d2 = sq[:, None] + sq[None, :] - 2.0 * gram
    iu = np.triu_indices(data.rows, k=1)
    values = np.sqrt(np.maximum(d2[iu], 0.0))
    return EmpiricalSample(
        np.sort(values), k=float(data.cols), source=SampleSource.EXTERNAL
    )


def distance_pvalue(dist: DistanceDistribution, observed: float, tail: str) -> float:
    """Probability of a distance at least as extreme as the one observed.

    tail='lower' asks how unusually close the pair is (the
    nearest-neighbor question); tail='upper' how unusually far.
    """
    if tail not in ("lower", "upper"):
        raise ValueError(f"tail must be 'lower' or 'upper', got {tail!r}")
    if tail == "lower":
        return dist.cdf(observed)
    return dist.survival(observed)


def effective_dimension(mean_distance: float) -> float:
    """The real dimension whose theoretical mean distance matches the input.

    Inverts the first raw moment, which is strictly increasing in k, by
    bisection; clamped at 1 when the observed mean is below the k = 1
    mean.
    """
    if not (math.isfinite(mean_distance) and mean_distance >= 0.0):
        raise ValueError("mean distance must be finite and non-negative")
    if mean_distance <= raw_moment(1.0, 1):
        return 1.0
    lo, hi = 1.0, max(2.0, mean_distance**2)
    while raw_moment(hi, 1) < mean_distance:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if raw_moment(mid, 1) < mean_distance:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12 * hi:
            break
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class FitReport:
    """Goodness of fit of observed pairwise distances to the null law."""

    k: float
    n_pairs: int
    ks: KsResult
    mean_observed: float
    mean_expected: float
    variance_observed: float
    variance_expected: float
    effective_dimension: float
    dependence_caveat: bool = True

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n_pairs": self.n_pairs,
            "ks_statistic": self.ks.statistic,
            "ks_critical_01": self.ks.critical_value_01,
            "ks_passed": self.ks.passed,
            "mean_observed": self.mean_observed,
            "mean_expected": self.mean_expected,
            "variance_observed": self.variance_observed,
            "variance_expected": self.variance_expected,
            "effective_dimension": self.effective_dimension,
            "dependence_caveat": self.dependence_caveat,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "FitReport":
        ks = KsResult(
            statistic=payload["ks_statistic"],
            critical_value_01=payload["ks_critical_01"],
            n_effective=float(payload["n_pairs"]),
            passed=payload["ks_passed"],
        )
        return cls(
            k=payload["k"],
            n_pairs=payload["n_pairs"],
            ks=ks,
            mean_observed=payload["mean_observed"],
            mean_expected=payload["mean_expected"],
            variance_observed=payload["variance_observed"],
            variance_expected=payload["variance_expected"],
            effective_dimension=payload["effective_dimension"],
            dependence_caveat=payload["dependence_caveat"],
        )


def fit_report(data: DatasetMatrix) -> FitReport:
    """Compare a dataset's pairwise distances to the independent-feature null."""
    if data.rows < 10:
        raise ValueError(f"fit report needs at least 10 rows, got {data.rows}")
    sample = pairwise_distances(data)
    law = DistanceDistribution(float(data.cols))
    ks = ks_one_sample(sample, law)
    mean_obs = float(np.mean(sample.values))
    var_obs = float(np.var(sample.values, ddof=1))
    return FitReport(
        k=float(data.cols),
        n_pairs=sample.n,
        ks=ks,
        mean_observed=mean_obs,
        mean_expected=raw_moment(float(data.cols), 1),
        variance_observed=var_obs,
        variance_expected=central_moment(float(data.cols), 2),
        effective_dimension=effective_dimension(mean_obs),
        dependence_caveat=True,
    )


@dataclass(frozen=True)
class ContrastRow:
    """Farthest/nearest neighbor distances of one query point."""

    k: int
    d_max: float
    d_min: float
    contrast: float


def relative_contrast_curve(
    k_values, n_points: int, seed: int
) -> list[ContrastRow]:
    """Nearest/farthest neighbor contrast of a random query, per dimension.

    For each k, simulates n_points standard normal points plus one query
    point and reports (Dmax - Dmin) / Dmin.  Rows are deterministic per
    (seed, k), so repeating a k with the same seed repeats its row.
    """
    ks = [int(k) for k in k_values]
    if not ks:
        raise ValueError("need at least one dimension")
    if any(k < 1 for k in ks):
        raise ValueError("dimensions must be >= 1")
    if n_points < 3:
        raise ValueError(f"need at least 3 points, got {n_points}")
    rows = []
    for k in ks:
        rng = _substream(seed, k)
        points = rng.standard_normal((n_points, k))
        query = rng.standard_normal(k)
        d = np.linalg.norm(points - query, axis=1)
        d_min = float(d.min())
        d_max = float(d.max())
        if d_min <= 0.0:
            raise RuntimeError("query point coincides with a data point")
        rows.append(ContrastRow(k, d_max, d_min, (d_max - d_min) / d_min))
    return rows
