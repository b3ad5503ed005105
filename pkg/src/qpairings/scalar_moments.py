"""Weighted pairing sums computed by an open-arc dynamic program.

The geometric weight p**(m - l) of an arc factorizes over the unit gaps it
spans, so the sum over pairings can be scanned site by site: the state is
the number m of open arcs, each site either opens an arc (m -> m+1) or
closes one (m -> m-1, with multiplicity m when any open arc may close, or
1 under the non-crossing stack discipline), and every gap multiplies the
weight of a state by p**m.  Cost is O(k^2) time, O(k) state; general
kernels do not factorize this way and are served only by enumeration.

Two backends: exact rational arithmetic, and a renormalized log-space
float path that reaches k in the thousands without under- or overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import InvalidWeight, NoSignChange
from .pairings import PairingClass


class Backend:
    """Arithmetic backend tag for the dynamic program."""

    EXACT = "exact"
    LOG_SPACE = "logspace"

    CHOICES = (EXACT, LOG_SPACE)


@dataclass(frozen=True)
class DpState:
    """Snapshot after processing one site.

    values[m] is the weighted sum over prefixes with m open arcs: exact
    Fractions for the exact backend, log-values (-inf for zero) for the
    log-space backend.
    """

    site: int
    values: tuple
    backend: str


def _validate_weight(p, backend, allow_p_above_one):
    if p <= 0:
        raise InvalidWeight(f"weight must be positive, got {p}")
    if p > 1:
        if backend == Backend.LOG_SPACE:
            raise InvalidWeight(f"log-space backend requires p <= 1, got {p}")
        if not allow_p_above_one:
            raise InvalidWeight(
                f"p = {p} > 1 rejected; pass allow_p_above_one=True to override"
            )


def _exact_steps(k: int, p: Fraction, closing_mult_is_count: bool):
    n = 2 * k
    p_pow = [p ** m for m in range(k + 1)]
    values = [Fraction(0)] * (k + 1)
    values[0] = Fraction(1)
    for site in range(1, n + 1):
        if site > 1:
            values = [v * p_pow[m] if v else v for m, v in enumerate(values)]
        new = [Fraction(0)] * (k + 1)
        for m, v in enumerate(values):
            if not v:
                continue
            if m < k:
                new[m + 1] += v
            if m:
                new[m - 1] += v * m if closing_mult_is_count else v
        band = min(site, n - site)
        for m in range(band + 1, k + 1):
            new[m] = Fraction(0)
        values = new
        yield site, values


def _log_steps(k: int, p: float, closing_mult_is_count: bool):
    n = 2 * k
    m = np.arange(k + 1)
    gap = p ** m.astype(float)
    close_mult = m.astype(float) if closing_mult_is_count else np.ones(k + 1)
    values = np.zeros(k + 1)
    values[0] = 1.0
    offset = 0.0  # log of the scale factored out of `values`
    for site in range(1, n + 1):
        if site > 1:
            values = values * gap
        new = np.zeros(k + 1)
        new[1:] += values[:-1]
        new[:-1] += close_mult[1:] * values[1:]
        band = min(site, n - site)
        if band < k:
            new[band + 1:] = 0.0
        top = new.max()
        if top <= 0.0:
            raise InvalidWeight(f"state vector vanished at site {site} (p={p})")
        values = new / top
        offset += math.log(top)
        yield site, values, offset


def _run_dp(k, p, pairing_class, backend, allow_p_above_one):
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if backend not in Backend.CHOICES:
        raise ValueError(f"unknown backend {backend!r}")
    closing = pairing_class == PairingClass.ALL
    if backend == Backend.EXACT:
        p = Fraction(p)
        _validate_weight(p, backend, allow_p_above_one)
        if k == 0:
            return Fraction(1)
        for _site, values in _exact_steps(k, p, closing):
            pass
        return values[0]
    p = float(p)
    _validate_weight(p, backend, allow_p_above_one)
    if k == 0:
        return 0.0
    for _site, values, offset in _log_steps(k, p, closing):
        pass
    return offset + math.log(values[0])


def scalar_moment_dp(k: int, p, backend: str = Backend.EXACT, *,
                     allow_p_above_one: bool = False):
    """Sum over all pairings of 2k points of p**(total span).

    Exact backend takes a rational p and returns a Fraction; the log-space
    backend returns log of the sum as a float.
    """
    return _run_dp(k, p, PairingClass.ALL, backend, allow_p_above_one)


def noncrossing_moment_dp(k: int, p, backend: str = Backend.EXACT, *,
                          allow_p_above_one: bool = False):
    """Same scan restricted to non-crossing pairings; equals B_k(p)."""
    return _run_dp(k, p, PairingClass.NON_CROSSING, backend, allow_p_above_one)


def dp_trajectory(k: int, p, pairing_class: str = PairingClass.ALL,
                  backend: str = Backend.EXACT) -> Iterator[DpState]:
    """Yield the DP state after each site; for inspection and invariants."""
    closing = pairing_class == PairingClass.ALL
    if backend == Backend.EXACT:
        p = Fraction(p)
        _validate_weight(p, backend, False)
        for site, values in _exact_steps(k, p, closing):
            yield DpState(site, tuple(values), Backend.EXACT)
        return
    p = float(p)
    _validate_weight(p, backend, False)
    for site, values, offset in _log_steps(k, p, closing):
        logs = np.full(k + 1, -math.inf)
        nz = values > 0.0
        logs[nz] = np.log(values[nz]) + offset
        yield DpState(site, tuple(float(v) for v in logs), Backend.LOG_SPACE)


@dataclass(frozen=True)
class GrowthPoint:
    """One sample of the growth statistic (1/k) log S_k(p)."""

    k: int
    p: float
    log_moment: float
    growth_rate: float


@dataclass(frozen=True)
class GrowthCurve:
    points: tuple
    extrapolated_limit: float
    method: str

    def to_json_obj(self) -> dict:
        return {
            "points": [
                {"k": pt.k, "p": pt.p, "log_moment": pt.log_moment,
                 "growth_rate": pt.growth_rate}
                for pt in self.points
            ],
            "extrapolation": {
                "limit_estimate": self.extrapolated_limit,
                "method": self.method,
            },
        }


EXTRAPOLATION_METHOD = "linear fit of growth_rate against 1/k over the top half of the k grid"


def _extrapolate(points):
    half = points[len(points) // 2:]
    if len(half) < 2:
        return half[-1].growth_rate, "single point, no extrapolation (finite-k value)"
    inv_k = np.array([1.0 / pt.k for pt in half])
    rates = np.array([pt.growth_rate for pt in half])
    slope, intercept = np.polyfit(inv_k, rates, 1)
    del slope
    return float(intercept), EXTRAPOLATION_METHOD + " (finite-k estimate)"


def growth_curve(k_list, p: float, pairing_class: str = PairingClass.ALL) -> GrowthCurve:
    """Growth statistic (1/k) log S_k(p) over an ascending k grid.

    The extrapolated k -> infinity limit is a labeled estimate, reported
    alongside the raw finite-k points, never in their place.
    """
    k_list = list(k_list)
    if not k_list:
        raise ValueError("k grid must be non-empty")
    if any(k <= 0 for k in k_list):
        raise ValueError("k grid entries must be positive")
    if sorted(set(k_list)) != k_list:
        raise ValueError("k grid must be strictly ascending")
    points = []
    for k in k_list:
        log_moment = _run_dp(k, p, pairing_class, Backend.LOG_SPACE, False)
        points.append(GrowthPoint(k, float(p), log_moment, log_moment / k))
    limit, method = _extrapolate(points)
    return GrowthCurve(tuple(points), limit, method)


@dataclass(frozen=True)
class PcBracket:
    """Bisection bracket for the sign change of the extrapolated growth."""

    p_lo: float
    p_hi: float
    k_probe: int
    tol: float
    iterations: int
    k_grid: tuple
    pairing_class: str
    method: str

    @property
    def width(self) -> float:
        return self.p_hi - self.p_lo

    def to_json_obj(self) -> dict:
        return {
            "p_lo": self.p_lo,
            "p_hi": self.p_hi,
            "width": self.width,
            "k_probe": self.k_probe,
            "tol": self.tol,
            "iterations": self.iterations,
            "k_grid": list(self.k_grid),
            "pairing_class": self.pairing_class,
            "method": self.method,
            "estimate_caveat": "finite-k estimate of the critical weight, not a proven value",
        }


def _probe_grid(k_probe):
    grid = sorted({max(1, k_probe // 8), max(1, k_probe // 4),
                   max(1, k_probe // 2), k_probe})
    return grid


def pc_bracket(p_lo: float, p_hi: float, k_probe: int, tol: float,
               pairing_class: str = PairingClass.ALL) -> PcBracket:
    """Bisect on p for the sign change of the extrapolated growth estimate.

    The growth sign is evaluated from a small k grid ending at k_probe by
    the same extrapolation that growth_curve reports.  Requires a negative
    estimate at p_lo and a positive one at p_hi; the returned interval is a
    finite-k bracket of the critical weight, explicitly not a proven value.
    """
    if not 0.0 < p_lo <= p_hi <= 1.0:
        raise InvalidWeight(f"need 0 < p_lo <= p_hi <= 1, got ({p_lo}, {p_hi})")
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if k_probe < 1:
        raise ValueError(f"k_probe must be positive, got {k_probe}")
    grid = _probe_grid(k_probe)

    def growth_sign(p):
        return growth_curve(grid, p, pairing_class).extrapolated_limit

    g_lo = growth_sign(p_lo)
    g_hi = growth_sign(p_hi)
    if not (g_lo < 0.0 < g_hi):
        raise NoSignChange(
            f"extrapolated growth is {g_lo:+.4e} at p={p_lo} and {g_hi:+.4e} "
            f"at p={p_hi}; need a negative-to-positive bracket"
        )
    lo, hi = float(p_lo), float(p_hi)
    iterations = 0
    while hi - lo > tol and iterations < 200:
        mid = 0.5 * (lo + hi)
        if growth_sign(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        iterations += 1
    return PcBracket(lo, hi, k_probe, float(tol), iterations, tuple(grid),
                     pairing_class, EXTRAPOLATION_METHOD)
