"""Monte Carlo for trace products of correlated GOE matrices.

The family A^(1), A^(2), ... consists of real symmetric N x N matrices
with entries a_ij / sqrt(N), where each entry process {a_ij^(r)}_r (i <= j)
is an independent stationary Gaussian sequence: off-diagonal entries have
autocovariance V(r - r'), diagonal entries 2 V(r - r'), and distinct
entries are independent.  A single fixed r is a standard GOE matrix.
The degenerate case N = 1 follows the scalar convention (variance V(0),
no diagonal doubling) so that the normalized trace product reduces to the
weighted pairing sum computed by the scalar_moments module.

The estimated observable is the normalized trace (1/N) Tr(A^(1)...A^(n)).

Determinism contract: every sample draws from its own counter-based
Philox stream keyed by (seed, sample_index), and estimates reduce the
per-sample traces in sample-index order, so results are bit-identical
regardless of worker count or scheduling.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import DimensionMismatch, InsufficientGrid, InvalidConfig
from .kernels import KernelSpec

_SQRT2 = math.sqrt(2.0)
_U64_MAX = 2 ** 64 - 1


@dataclass(frozen=True)
class RmtConfig:
    """One Monte Carlo experiment: matrix size, product length, kernel, seed.

    The product has 2k factors (2k + 1 for the odd probe).  `shift` starts
    the factor window at index shift + 1; the generator is stationary, so
    shifted windows are equal in law.
    """

    n_dim: int
    k: int
    kernel: KernelSpec
    samples: int
    seed: int
    odd_probe: bool = False
    shift: int = 0

    def validate(self) -> None:
        if self.n_dim < 1:
            raise InvalidConfig(f"matrix dimension must be >= 1, got {self.n_dim}")
        if self.k < 1:
            raise InvalidConfig(f"k must be >= 1 (product length 2k >= 2), got {self.k}")
        if self.samples < 1:
            raise InvalidConfig(f"samples must be positive, got {self.samples}")
        if not 0 <= self.seed <= _U64_MAX:
            raise InvalidConfig("seed must fit in 64 unsigned bits")
        if self.shift < 0:
            raise InvalidConfig(f"shift must be non-negative, got {self.shift}")
        if not isinstance(self.kernel, KernelSpec):
            raise InvalidConfig("kernel must be a KernelSpec")

    def to_json_obj(self) -> dict:
        return {
            "N": self.n_dim,
            "k": self.k,
            "kernel": self.kernel.to_json_obj(),
            "samples": self.samples,
            "seed": self.seed,
            "odd_probe": self.odd_probe,
            "shift": self.shift,
        }


@dataclass(frozen=True)
class MomentEstimate:
    """Sample mean of the normalized trace with its statistical envelope."""

    mean: float
    stderr: float
    var_trace: float
    samples: int
    n_factors: int
    config: RmtConfig

    def to_json_obj(self, reference=None) -> dict:
        obj = {
            "config": {**self.config.to_json_obj(), "n_factors": self.n_factors},
            "mean": self.mean,
            "stderr": self.stderr,
            "var_trace": self.var_trace,
            "samples": self.samples,
            "reference_Bk": reference,
            "z_score": None,
        }
        if reference is not None and self.stderr > 0.0:
            obj["z_score"] = (self.mean - reference) / self.stderr
        return obj


def _sample_rng(seed: int, sample_index: int) -> np.random.Generator:
    # Distinct samples sit 2**128 counter steps apart: disjoint streams.
    return np.random.Generator(
        np.random.Philox(key=seed, counter=sample_index << 128)
    )


def _packed_processes(rng, kernel, n_seq: int, width: int) -> np.ndarray:
    """Draw `width` independent stationary sequences of length n_seq.

    Each column is a zero-mean Gaussian sequence with autocovariance
    V(r - r').  Geometric kernels use the exact stationary AR(1) recursion
    x_r = p x_{r-1} + sqrt(1 - p^2) xi_r; tabulated kernels map fresh
    normals through a factor of the n_seq x n_seq Toeplitz matrix.
    """
    z = rng.standard_normal((n_seq, width))
    if kernel.is_geometric:
        p = kernel.p
        innov = math.sqrt(1.0 - p * p)
        x = np.empty_like(z)
        x[0] = z[0]
        for r in range(1, n_seq):
            x[r] = p * x[r - 1] + innov * z[r]
        return x
    factor = kernel.factor(n_seq)
    return factor @ z


def _family_arrays(rng, n_dim, k_factors, kernel, shift):
    """The packed upper triangles of one sample's factor matrices."""
    iu = np.triu_indices(n_dim)
    diag_cols = np.flatnonzero(iu[0] == iu[1])
    width = n_dim * (n_dim + 1) // 2
    x = _packed_processes(rng, kernel, k_factors + shift, width)
    x = x[shift:]
    if n_dim > 1:
        # Doubled diagonal variance (the GOE law).  N = 1 keeps the scalar
        # convention instead: a single entry of variance V(0), so the trace
        # product reduces to the plain weighted pairing sum.
        x[:, diag_cols] *= _SQRT2
    x *= 1.0 / math.sqrt(n_dim)
    return x, iu


def _unpack_symmetric(row, n_dim, iu):
    mat = np.zeros((n_dim, n_dim))
    mat[iu] = row
    mat[iu[1], iu[0]] = row
    return mat


def generate_family(cfg: RmtConfig, sample_index: int,
                    n_factors: int | None = None) -> list:
    """The matrices A^(shift+1)..A^(shift+n_factors) of one sample.

    A pure function of (seed, sample_index) and the config; reordering or
    parallelizing samples never changes any matrix.
    """
    cfg.validate()
    if sample_index < 0:
        raise InvalidConfig(f"sample_index must be >= 0, got {sample_index}")
    if n_factors is None:
        n_factors = 2 * cfg.k
    rng = _sample_rng(cfg.seed, sample_index)
    x, iu = _family_arrays(rng, cfg.n_dim, n_factors, cfg.kernel, cfg.shift)
    return [_unpack_symmetric(x[r], cfg.n_dim, iu) for r in range(n_factors)]


def trace_product_sample(family) -> float:
    """(1/N) Tr of the left-to-right product of the family.

    Full product then diagonal sum, in fixed order, for reproducibility;
    no stochastic trace estimation.
    """
    mats = list(family)
    if not mats:
        raise DimensionMismatch("family is empty")
    n = mats[0].shape[0]
    for mat in mats:
        if mat.ndim != 2 or mat.shape != (n, n):
            raise DimensionMismatch(
                f"expected square matrices of one size, got {mat.shape} vs ({n}, {n})"
            )
    prod = mats[0]
    for mat in mats[1:]:
        prod = prod @ mat
    return float(np.trace(prod)) / n


def _trace_chunk(cfg: RmtConfig, n_factors: int, start: int, stop: int) -> np.ndarray:
    n_dim = cfg.n_dim
    iu = np.triu_indices(n_dim)
    out = np.empty(stop - start)
    for s in range(start, stop):
        rng = _sample_rng(cfg.seed, s)
        x, _ = _family_arrays(rng, n_dim, n_factors, cfg.kernel, cfg.shift)
        prod = _unpack_symmetric(x[0], n_dim, iu)
        for r in range(1, n_factors):
            prod = prod @ _unpack_symmetric(x[r], n_dim, iu)
        out[s - start] = float(np.trace(prod)) / n_dim
    return out


def _chunk_worker(args):
    return _trace_chunk(*args)


def _collect_traces(cfg, n_factors, workers):
    if workers <= 1 or cfg.samples < 2 * workers:
        return _trace_chunk(cfg, n_factors, 0, cfg.samples)
    bounds = np.linspace(0, cfg.samples, workers + 1).astype(int)
    jobs = [(cfg, n_factors, int(bounds[i]), int(bounds[i + 1]))
            for i in range(workers) if bounds[i] < bounds[i + 1]]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_chunk_worker, jobs))
    # Chunks are contiguous and ordered by start index, so the concatenation
    # reproduces the sequential trace array exactly.
    return np.concatenate(parts)


def _estimate_from_traces(traces, n_factors, cfg) -> MomentEstimate:
    n_samples = traces.shape[0]
    mean = float(np.sum(traces)) / n_samples
    if n_samples >= 2:
        var = float(np.sum((traces - mean) ** 2)) / (n_samples - 1)
    else:
        var = float("nan")
    stderr = math.sqrt(var / n_samples) if n_samples >= 2 else float("nan")
    return MomentEstimate(mean, stderr, var, n_samples, n_factors, cfg)


def estimate_moment(cfg: RmtConfig, *, workers: int = 1) -> MomentEstimate:
    """Mean and stderr of the normalized trace over cfg.samples families."""
    cfg.validate()
    if cfg.samples < 2:
        raise InvalidConfig("samples must be >= 2 for a standard error")
    n_factors = 2 * cfg.k
    traces = _collect_traces(cfg, n_factors, workers)
    return _estimate_from_traces(traces, n_factors, cfg)


def odd_moment_probe(cfg: RmtConfig, *, workers: int = 1) -> MomentEstimate:
    """Estimate for a (2k+1)-factor product; its mean must vanish."""
    cfg.validate()
    if cfg.samples < 2:
        raise InvalidConfig("samples must be >= 2 for a standard error")
    n_factors = 2 * cfg.k + 1
    traces = _collect_traces(cfg, n_factors, workers)
    return _estimate_from_traces(traces, n_factors, cfg)


@dataclass(frozen=True)
class VarianceDecayPoint:
    n_dim: int
    var_trace: float
    mean: float
    stderr: float


def variance_decay_probe(cfg: RmtConfig, n_grid, *, workers: int = 1) -> list:
    """Sample variance of the normalized trace across a grid of N values.

    Whether the variance actually decays is for the caller (or a test) to
    judge; this only reports the per-N numbers.
    """
    n_grid = list(n_grid)
    if len(set(n_grid)) < 2:
        raise InsufficientGrid("need at least two distinct N values")
    points = []
    for n_dim in n_grid:
        est = estimate_moment(replace(cfg, n_dim=int(n_dim)), workers=workers)
        points.append(VarianceDecayPoint(int(n_dim), est.var_trace,
                                         est.mean, est.stderr))
    return points
