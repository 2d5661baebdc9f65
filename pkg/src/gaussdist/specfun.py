"""Special-function kernel: log-gamma, regularized incomplete gamma, gamma ratios.

Everything here is self-contained (numpy only) and accepts scalars or
arrays.  The incomplete gamma functions follow the classic regime split:
a power series for the lower function when x < a + 1, and a modified
Lentz continued fraction for the upper function when x >= a + 1.  The
other tail is always obtained by complement, so P + Q == 1 holds to
machine precision by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpecFunConfig",
    "DEFAULT_CONFIG",
    "ConvergenceError",
    "log_gamma",
    "reg_gamma_p",
    "reg_gamma_q",
    "gamma_ratio",
]


class ConvergenceError(RuntimeError):
    """An iterative evaluation failed to reach tolerance within its budget."""


@dataclass(frozen=True)
class SpecFunConfig:
    """Convergence control for the iterative incomplete-gamma evaluations."""

    rel_tolerance: float = 1e-12
    max_iterations: int = 300

    def __post_init__(self) -> None:
        if not 0.0 < self.rel_tolerance < 1e-3:
            raise ValueError(
                f"rel_tolerance must lie in (0, 1e-3), got {self.rel_tolerance}"
            )
        if self.max_iterations < 50:
            raise ValueError(
                f"max_iterations must be at least 50, got {self.max_iterations}"
            )


DEFAULT_CONFIG = SpecFunConfig()

_HALF_LN_2PI = 0.9189385332046727  # ln(2*pi)/2

# Lanczos approximation, g = 7, 9 terms.  Gives ~1e-15 relative accuracy
# on Gamma over the positive axis, which comfortably meets the 1e-13
# requirement on ln Gamma for x in [0.5, 1e6].
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# Asymptotic expansion Gamma(x + 1/2) / Gamma(x) = sqrt(x) * sum c_i x^-i,
# derived from the Stirling series; truncation error < 1e-22 relative for
# x > 64.  Exact rationals: 1, -1/8, 1/128, 5/1024, -21/32768, -399/262144,
# 869/4194304, 39325/33554432, -334477/2147483648, -28717403/17179869184,
# 59697183/274877906944.
_HALF_STEP_COEF = (
    1.0,
    -0.125,
    0.0078125,
    0.0048828125,
    -0.000640869140625,
    -0.001522064208984375,
    0.0002071857452392578,
    0.0011719763278961182,
    -0.00015575299039483070,
    -0.0016715728561393917,
    0.00021717708659707569,
)


def _as_float_array(x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def log_gamma(x):
    """Natural log of the gamma function for x > 0.

    Accepts a scalar or array; relative error is below 1e-13 for
    x in [0.5, 1e6] (away from the zeros at x = 1 and x = 2, where the
    absolute error is at machine level).
    """
    arr, scalar = _as_float_array(x)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise ValueError("log_gamma requires finite x > 0")
    z = arr - 1.0
    series = np.full_like(z, _LANCZOS_COEF[0])
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        series += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    out = _HALF_LN_2PI + (z + 0.5) * np.log(t) - t + np.log(series)
    return float(out) if scalar else out


def _prefactor(a, x):
    """x^a e^-x / Gamma(a), evaluated in log space; 0 where x == 0."""
    out = np.zeros_like(x)
    pos = x > 0.0
    if np.any(pos):
        xp = x[pos]
        out[pos] = np.exp(a * np.log(xp) - xp - log_gamma(a))
    return out


def _lower_series(a, x, config: SpecFunConfig) -> np.ndarray:
    """P(a, x) by the power series; requires x < a + 1 elementwise."""
    # The 0.1 factor on the termination tests keeps the final error an
    # order of magnitude inside rel_tolerance (the stopping increment
    # only bounds the remaining tail up to the contraction ratio).
    stop = 0.1 * config.rel_tolerance
    term = np.ones_like(x)
    total = np.ones_like(x)
    rate = np.full_like(x, a)
    for _ in range(config.max_iterations):
        rate += 1.0
        term *= x / rate
        total += term
        if np.all(term <= stop * total):
            break
    else:
        raise ConvergenceError(
            f"incomplete gamma series did not converge for a={a} "
            f"within {config.max_iterations} iterations"
        )
    return total * _prefactor(a, x) / a


def _upper_continued_fraction(a, x, config: SpecFunConfig) -> np.ndarray:
    """Q(a, x) by the Lentz-style continued fraction; requires x >= a + 1."""
    big = 4.503599627370496e15
    biginv = 2.220446049250313e-16
    stop = 0.1 * config.rel_tolerance
    y = np.full_like(x, 1.0 - a)
    z = x + y + 1.0
    c = np.zeros_like(x)
    pkm2 = np.ones_like(x)
    qkm2 = x.copy()
    pkm1 = x + 1.0
    qkm1 = z * x
    ans = pkm1 / qkm1
    for _ in range(config.max_iterations):
        c += 1.0
        y += 1.0
        z += 2.0
        yc = y * c
        pk = pkm1 * z - pkm2 * yc
        qk = qkm1 * z - qkm2 * yc
        nonzero = qk != 0.0
        ratio = np.where(nonzero, pk / np.where(nonzero, qk, 1.0), ans)
        delta = np.where(nonzero, np.abs(ans - ratio), np.inf)
        ans = ratio
        pkm2, pkm1 = pkm1, pk
        qkm2, qkm1 = qkm1, qk
        rescale = np.abs(pk) > big
        if np.any(rescale):
            scale = np.where(rescale, biginv, 1.0)
            pkm2 = pkm2 * scale
            pkm1 = pkm1 * scale
            qkm2 = qkm2 * scale
            qkm1 = qkm1 * scale
        if np.all(delta <= stop * np.abs(ans)):
            break
    else:
        raise ConvergenceError(
            f"incomplete gamma continued fraction did not converge for a={a} "
            f"within {config.max_iterations} iterations"
        )
    return ans * _prefactor(a, x)


def _reg_gamma_both(a: float, x, config: SpecFunConfig):
    arr, scalar = _as_float_array(x)
    if not (np.isfinite(a) and a > 0.0):
        raise ValueError("incomplete gamma requires finite a > 0")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0):
        raise ValueError("incomplete gamma requires finite x >= 0")
    work = np.atleast_1d(arr).astype(float)
    p = np.empty_like(work)
    q = np.empty_like(work)
    lower = work < a + 1.0
    if np.any(lower):
        pl = _lower_series(a, work[lower], config)
        p[lower] = pl
        q[lower] = 1.0 - pl
    if np.any(~lower):
        qu = _upper_continued_fraction(a, work[~lower], config)
        q[~lower] = qu
        p[~lower] = 1.0 - qu
    if scalar:
        return float(p[0]), float(q[0])
    shape = arr.shape
    return p.reshape(shape), q.reshape(shape)


def reg_gamma_p(a, x, config: SpecFunConfig = DEFAULT_CONFIG):
    """Regularized lower incomplete gamma P(a, x), in [0, 1].

    Computed directly from the power series when x < a + 1 (no
    cancellation against 1), by complement of the continued fraction
    otherwise.
    """
    return _reg_gamma_both(a, x, config)[0]


def reg_gamma_q(a, x, config: SpecFunConfig = DEFAULT_CONFIG):
    """Regularized upper incomplete gamma Q(a, x) = Gamma(a, x)/Gamma(a).

    Monotone non-increasing in x; evaluated by continued fraction in the
    tail (x >= a + 1) so small survival probabilities keep full relative
    precision.
    """
    return _reg_gamma_both(a, x, config)[1]


def _half_step_ratio(x: float) -> float:
    """Gamma(x + 1/2) / Gamma(x) by asymptotic series, for x > 64."""
    s = 0.0
    for c in reversed(_HALF_STEP_COEF):
        s = s / x + c
    return math.sqrt(x) * s


def gamma_ratio(num: float, den: float) -> float:
    """Gamma(num) / Gamma(den) without forming either gamma value.

    Integer offsets between num and den are reduced exactly through the
    recurrence Gamma(z + 1) = z Gamma(z), so ratios like
    Gamma(x + 1)/Gamma(x) are exact at any magnitude.  A remaining
    half-integer offset uses the asymptotic series when the argument is
    large (den > 64); everything else falls back to
    exp(log_gamma(num) - log_gamma(den)).
    """
    if not (np.isfinite(num) and np.isfinite(den) and num > 0.0 and den > 0.0):
        raise ValueError("gamma_ratio requires finite positive arguments")
    if num == den:
        return 1.0
    if num < den:
        return 1.0 / gamma_ratio(den, num)
    delta = num - den
    steps = int(math.floor(delta))
    frac = delta - steps
    if frac == 0.0:
        base = 1.0
    elif frac == 0.5 and den > 64.0:
        base = _half_step_ratio(den)
    else:
        base = math.exp(log_gamma(den + frac) - log_gamma(den))
    result = base
    for i in range(steps):
        result *= den + frac + i
    return result
