"""Cross-validation of the independent computation routes.

Each check pits two or more routes against each other: enumeration vs
closed-form counts, the recurrence tables vs the enumeration oracle, the
open-arc DP vs both, and the log-space backend vs exact arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import pairings, qcatalan, scalar_moments
from .pairings import PairingClass
from .scalar_moments import Backend


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check(name, passed, detail=""):
    return CheckResult(name, bool(passed), detail)


def run_selfcheck() -> list:
    results = []

    counts_ok = True
    for k in range(7):
        streamed_all = sum(1 for _ in pairings.enumerate_pairings(k, PairingClass.ALL))
        streamed_nc = sum(1 for _ in pairings.enumerate_pairings(k, PairingClass.NON_CROSSING))
        if streamed_all != pairings.all_pairing_count(k):
            counts_ok = False
        if streamed_nc != pairings.catalan_number(k):
            counts_ok = False
    results.append(_check("stream counts match closed forms (k <= 6)", counts_ok))

    filter_ok = True
    for k in range(7):
        nc = list(pairings.enumerate_pairings(k, PairingClass.NON_CROSSING))
        filtered = [pg for pg in pairings.enumerate_pairings(k, PairingClass.ALL)
                    if pairings.is_non_crossing(pg)]
        if nc != filtered:
            filter_ok = False
    results.append(_check("non-crossing stream equals filtered all-stream (k <= 6)", filter_ok))

    bk = qcatalan.bk_recurrence(16)
    oracle_ok = all(
        bk.entry(k) == pairings.weighted_sum_poly(k, PairingClass.NON_CROSSING)
        for k in range(9)
    )
    results.append(_check("B_k recurrence equals enumeration oracle (k <= 8)", oracle_ok))

    report = qcatalan.bk_phi_consistency(16, bk_table=bk)
    results.append(_check("B_k(p) == p^k phi_k(p^2) (k <= 16)", report.all_passed))

    phi = qcatalan.phi_recurrence(16)
    catalan_ok = all(
        phi.entry(k).eval_exact(1) == pairings.catalan_number(k)
        for k in range(17)
    )
    results.append(_check("phi_k(1) equals Catalan numbers (k <= 16)", catalan_ok))

    dp_ok = True
    for k in range(1, 7):
        poly = pairings.weighted_sum_poly(k, PairingClass.ALL)
        for p in (Fraction(1, 3), Fraction(2, 5), Fraction(1)):
            if scalar_moments.scalar_moment_dp(k, p) != poly.eval_exact(p):
                dp_ok = False
    results.append(_check("open-arc DP equals all-pairings oracle (k <= 6)", dp_ok))

    nc_dp_ok = all(
        scalar_moments.noncrossing_moment_dp(k, Fraction(3, 7))
        == bk.entry(k).eval_exact(3, 7)
        for k in range(1, 11)
    )
    results.append(_check("non-crossing DP equals B_k table (k <= 10)", nc_dp_ok))

    log_ok = True
    for k in (5, 12, 25):
        for cls, fn in ((PairingClass.ALL, scalar_moments.scalar_moment_dp),
                        (PairingClass.NON_CROSSING, scalar_moments.noncrossing_moment_dp)):
            exact = fn(k, Fraction(7, 10))
            logval = fn(k, 0.7, Backend.LOG_SPACE)
            if abs(math.log(float(exact)) - logval) > 1e-9:
                log_ok = False
    results.append(_check("log-space backend matches exact within 1e-9 (k <= 25)", log_ok))

    curve = scalar_moments.growth_curve([1], 0.37)
    results.append(_check("growth at k=1 equals log p",
                          abs(curve.points[0].growth_rate - math.log(0.37)) < 1e-12))

    return results


def format_results(results) -> str:
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status}  {r.name.ljust(width)}"
        if r.detail:
            line += f"  {r.detail}"
        lines.append(line)
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines)
