"""Monte Carlo side: sample noise, build the lag auto-covariance matrix,
diagonalize its Gram matrix and compare with the analytic law.

The object under study is X = (1/T) * sum_{t=s+1}^{s+T} eps_t eps_{t-s}'
for iid mean-0 variance-1 noise columns eps_t, and the spectrum of the
Gram matrix A = X X'.  Every statistic is compared against the law at
the finite-sample ratio y_T = p/T (not a nominal limit value), since the
finite-T expectation expands in powers of y_T.

Reproducibility: noise is drawn from the counter-based Philox-4x64
generator whose two 64-bit key words are (master seed, replicate index).
Replicate streams are therefore independent of execution order and
thread count, and aggregation is an ordered reduction over replicate
index, so a config maps to a bit-identical summary every time.  The
worker-thread count comes from the LAGSPEC_THREADS environment variable
(default 1).
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt

import numpy as np

from . import law
from .eigh import symmetric_eigenvalues
from .moments import moment_closed_form

DISTRIBUTIONS = ("gaussian", "rademacher", "uniform")
MAX_DIMENSION = 2000
NEGATIVE_CLAMP_REL = 1e-10     # clamp threshold relative to lambda_max
NEAR_ZERO_REL = 1e-8           # "numerically null" threshold for rank counts


@dataclass(frozen=True)
class EnsembleConfig:
    """Fully describes one simulation run (and hence its output)."""

    p: int
    T: int
    lag: int = 1
    distribution: str = "gaussian"
    replicates: int = 1
    seed: int = 0
    max_moment_order: int = 4

    def __post_init__(self):
        if self.p < 2 or self.T < 2:
            raise ValueError("p and T must both be >= 2")
        if self.p > MAX_DIMENSION:
            raise ValueError(f"p capped at {MAX_DIMENSION} (dense solver)")
        if self.lag < 1:
            raise ValueError("lag must be >= 1")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution {self.distribution!r}; "
                             f"pick one of {DISTRIBUTIONS}")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.max_moment_order < 1:
            raise ValueError("max_moment_order must be >= 1")

    @property
    def y_T(self) -> float:
        return self.p / self.T


def sample_noise(p: int, n: int, distribution: str,
                 key: tuple[int, int]) -> np.ndarray:
    """p x n array of iid mean-0 variance-1 entries.

    ``key`` is the (seed, stream) pair loaded verbatim into the two
    Philox key words; the same key always reproduces the same array.
    """
    if p < 1 or n < 1:
        raise ValueError("matrix dimensions must be positive")
    if distribution not in DISTRIBUTIONS:
        raise ValueError(f"unknown distribution {distribution!r}; "
                         f"pick one of {DISTRIBUTIONS}")
    bit_gen = np.random.Philox(key=np.array(key, dtype=np.uint64))
    rng = np.random.Generator(bit_gen)
    if distribution == "gaussian":
        return rng.standard_normal((p, n))
    if distribution == "rademacher":
        return rng.integers(0, 2, size=(p, n)).astype(float) * 2.0 - 1.0
    half_width = sqrt(3.0)
    return rng.uniform(-half_width, half_width, size=(p, n))


def build_lag_autocov(noise: np.ndarray, lag: int, T: int) -> np.ndarray:
    """(1/T) * sum_t (column t)(column t-lag)' from T+lag noise columns.

    Implemented as one product of the two shifted column slabs; the
    result is p x p and generally not symmetric.
    """
    p, ncols = noise.shape
    if ncols != T + lag:
        raise ValueError(f"need exactly T+lag={T + lag} columns, got {ncols}")
    recent = noise[:, lag:lag + T]
    lagged = noise[:, 0:T]
    return (recent @ lagged.T) / T


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of one Gram matrix, sorted descending.

    ``clamped`` counts tiny negative eigenvalues (roundoff from a PSD
    matrix) that were snapped to zero.
    """

    eigenvalues: np.ndarray
    clamped: int = 0

    @property
    def l1(self) -> float:
        return float(self.eigenvalues[0])


def gram_spectrum(X: np.ndarray) -> Spectrum:
    """Full eigenvalue set of A = X X' via the in-package solver.

    A is explicitly symmetrized to kill roundoff asymmetry before the
    Householder/QL pipeline runs.  Eigenvalues below the relative clamp
    threshold are snapped to 0 (counted); a genuinely negative one, or a
    trace mismatch, raises instead of being papered over.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError(f"X must be square, got shape {X.shape}")
    if not np.isfinite(X).all():
        raise ValueError("X contains non-finite entries")
    A = X @ X.T
    A = 0.5 * (A + A.T)
    trace = float(np.trace(A))
    values = symmetric_eigenvalues(A)[::-1].copy()
    top = max(values[0], 0.0)
    floor = -NEGATIVE_CLAMP_REL * top
    if values[-1] < floor:
        raise RuntimeError(
            f"eigenvalue {values[-1]!r} below PSD clamp floor {floor!r}")
    negative = values < 0.0
    clamped = int(negative.sum())
    values[negative] = 0.0
    total = float(values.sum())
    if abs(total - trace) > 1e-8 * max(1.0, abs(trace)):
        raise RuntimeError(
            f"eigenvalue sum {total!r} disagrees with trace {trace!r}")
    return Spectrum(eigenvalues=values, clamped=clamped)


def empirical_moments(spectrum: Spectrum, K: int) -> list[float]:
    """[m_1 .. m_K] with m_k = (1/p) * sum_j lambda_j^k."""
    if K < 1:
        raise ValueError("K must be >= 1")
    values = spectrum.eigenvalues
    return [float(np.mean(values ** k)) for k in range(1, K + 1)]


@dataclass(frozen=True)
class EmpiricalSummary:
    """Aggregated ensemble statistics next to their theoretical targets."""

    config: EnsembleConfig
    y_T: float
    moments_empirical: list[float]
    moments_theoretical: list[float]
    lambda_max_mean: float
    lambda_max_se: float
    b_theoretical: float
    ks_distance: float
    warnings: dict
    lambda_max_by_replicate: list[float]
    moments_by_replicate: list[list[float]] = field(repr=False)
    near_zero_counts: list[int] = field(repr=False)
    eigenvalues_by_replicate: list[np.ndarray] = field(repr=False)

    def to_jsonable(self) -> dict:
        """Plain-dict view for JSON output (eigenvalue dumps excluded)."""
        cfg = self.config
        return {
            "config": {
                "p": cfg.p, "T": cfg.T, "lag": cfg.lag,
                "distribution": cfg.distribution,
                "replicates": cfg.replicates, "seed": cfg.seed,
                "max_moment_order": cfg.max_moment_order,
            },
            "y_T": self.y_T,
            "moments_empirical": self.moments_empirical,
            "moments_theoretical": self.moments_theoretical,
            "lambda_max_mean": self.lambda_max_mean,
            "lambda_max_se": self.lambda_max_se,
            "b_theoretical": self.b_theoretical,
            "ks_distance": self.ks_distance,
            "warnings": self.warnings,
            "lambda_max_by_replicate": self.lambda_max_by_replicate,
            "near_zero_counts": self.near_zero_counts,
        }


def ks_distance(sorted_values: np.ndarray, cdf_values: np.ndarray) -> float:
    """sup |F_empirical - F| for a sorted sample against F at the sample."""
    n = len(sorted_values)
    if n == 0:
        raise ValueError("empty sample")
    grid = np.arange(n + 1) / n
    return float(np.maximum(np.abs(cdf_values - grid[:-1]),
                            np.abs(cdf_values - grid[1:])).max())


def _worker_count() -> int:
    raw = os.environ.get("LAGSPEC_THREADS", "1")
    try:
        count = int(raw)
    except ValueError:
        raise ValueError(f"LAGSPEC_THREADS must be an integer, got {raw!r}")
    return max(count, 1)


def run_ensemble(config: EnsembleConfig) -> EmpiricalSummary:
    """Run all replicates and aggregate against the law at y_T.

    Replicates are embarrassingly parallel (independent Philox streams)
    and reduced in replicate order; a failing replicate aborts the whole
    run rather than silently degrading the averages.
    """
    def one_replicate(index: int):
        noise = sample_noise(config.p, config.T + config.lag,
                             config.distribution, (config.seed, index))
        X = build_lag_autocov(noise, config.lag, config.T)
        spectrum = gram_spectrum(X)
        values = spectrum.eigenvalues
        near_zero = int((values <= NEAR_ZERO_REL * max(spectrum.l1, 0.0)).sum())
        return (values, empirical_moments(spectrum, config.max_moment_order),
                spectrum.l1, near_zero, spectrum.clamped)

    workers = _worker_count()
    indices = range(config.replicates)
    if workers == 1:
        results = [one_replicate(i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one_replicate, indices))

    eigenvalues = [r[0] for r in results]
    per_replicate_moments = [r[1] for r in results]
    lambda_maxima = [r[2] for r in results]
    near_zero_counts = [r[3] for r in results]
    clamp_total = sum(r[4] for r in results)

    K = config.max_moment_order
    moments_empirical = [float(np.mean([m[k] for m in per_replicate_moments]))
                         for k in range(K)]
    y_exact = Fraction(config.p, config.T)
    moments_theoretical = [float(moment_closed_form(k, y_exact))
                           for k in range(1, K + 1)]

    pooled = np.sort(np.concatenate(eigenvalues))
    distance = ks_distance(pooled, law.cdf(pooled, config.y_T))

    lam_mean = float(np.mean(lambda_maxima))
    lam_se = (float(np.std(lambda_maxima, ddof=1)) / sqrt(len(lambda_maxima))
              if len(lambda_maxima) > 1 else 0.0)

    return EmpiricalSummary(
        config=config,
        y_T=config.y_T,
        moments_empirical=moments_empirical,
        moments_theoretical=moments_theoretical,
        lambda_max_mean=lam_mean,
        lambda_max_se=lam_se,
        b_theoretical=law.support_endpoints(config.y_T).b,
        ks_distance=distance,
        warnings={"clamped_negative_eigenvalues": clamp_total},
        lambda_max_by_replicate=[float(v) for v in lambda_maxima],
        moments_by_replicate=per_replicate_moments,
        near_zero_counts=near_zero_counts,
        eigenvalues_by_replicate=eigenvalues,
    )
