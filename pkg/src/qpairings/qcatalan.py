"""Weighted non-crossing pairing polynomials and their q-Catalan form.

B_k(p) is the sum of p**(total span) over non-crossing pairings of 2k
points.  It satisfies the convolution recurrence

    B_k = sum_{i=1..k} p**(2i-1) * B_{i-1} * B_{k-i},    B_0 = 1,

obtained by conditioning on the partner 2i of point 1: the arc (1, 2i)
spans 2i-1 gaps, encloses an independent block of i-1 pairs, and leaves
k-i pairs to its right.  B_1 = p follows (the single pairing of two points
has span 1).  Factoring the minimal span p**k out of B_k leaves a
polynomial in p**2: B_k(p) = p**k * phi_k(p**2), where phi_k obeys the
Carlitz-style recurrence

    phi_k = sum_{i=1..k} x**(i-1) * phi_{i-1} * phi_{k-i},   phi_0 = 1.

phi_k(1) is the k-th Catalan number and reversing phi_k's coefficients at
its degree k(k-1)/2 gives the classical q-Catalan polynomial (the x -> 1/x
rewrite up to a monomial).
"""

from __future__ import annotations

from dataclasses import dataclass

from .pairings import catalan_number  # noqa: F401  (re-exported convenience)
from .polynomial import WeightPoly


@dataclass(frozen=True)
class BkTable:
    """Entries 0..k_max of the weighted non-crossing sum B_k(p)."""

    entries: tuple

    @property
    def k_max(self) -> int:
        return len(self.entries) - 1

    def entry(self, k: int) -> WeightPoly:
        return self.entries[k]

    def to_json_obj(self) -> dict:
        return {
            "k_max": self.k_max,
            "entries": [{"k": k, **poly.to_json_obj()}
                        for k, poly in enumerate(self.entries)],
        }

    def csv_rows(self):
        """(k, exponent, coefficient-string) triples, sorted."""
        for k, poly in enumerate(self.entries):
            for e in sorted(poly.terms):
                yield k, e, str(poly.terms[e])


@dataclass(frozen=True)
class PhiTable:
    """Entries 0..k_max of the span-refined Catalan polynomial phi_k(x)."""

    entries: tuple

    @property
    def k_max(self) -> int:
        return len(self.entries) - 1

    def entry(self, k: int) -> WeightPoly:
        return self.entries[k]

    def to_json_obj(self) -> dict:
        return {
            "k_max": self.k_max,
            "entries": [{"k": k, **poly.to_json_obj()}
                        for k, poly in enumerate(self.entries)],
        }

    def csv_rows(self):
        for k, poly in enumerate(self.entries):
            for e in sorted(poly.terms):
                yield k, e, str(poly.terms[e])


def bk_recurrence(k_max: int) -> BkTable:
    """Build B_0..B_k_max by the arc-decomposition recurrence."""
    if k_max < 0:
        raise ValueError(f"k_max must be non-negative, got {k_max}")
    entries = [WeightPoly.one()]
    for k in range(1, k_max + 1):
        acc = WeightPoly.zero()
        for i in range(1, k + 1):
            acc = acc + (entries[i - 1] * entries[k - i]).shift(2 * i - 1)
        entries.append(acc)
    return BkTable(tuple(entries))


def phi_recurrence(k_max: int) -> PhiTable:
    """Build phi_0..phi_k_max by the Carlitz-style recurrence."""
    if k_max < 0:
        raise ValueError(f"k_max must be non-negative, got {k_max}")
    entries = [WeightPoly.one()]
    for k in range(1, k_max + 1):
        acc = WeightPoly.zero()
        for i in range(1, k + 1):
            acc = acc + (entries[i - 1] * entries[k - i]).shift(i - 1)
        entries.append(acc)
    return PhiTable(tuple(entries))


def q_catalan_reversal(k: int, phi_table: PhiTable | None = None) -> WeightPoly:
    """phi_k with coefficients reversed at its actual degree k(k-1)/2.

    This realizes the substitution x -> 1/x followed by clearing the
    denominator, i.e. the standard q-Catalan normalization of phi_k.
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if phi_table is None or phi_table.k_max < k:
        phi_table = phi_recurrence(k)
    return phi_table.entry(k).reverse(k * (k - 1) // 2)


@dataclass(frozen=True)
class ConsistencyEntry:
    k: int
    passed: bool
    first_mismatch_exponent: int | None


@dataclass(frozen=True)
class ConsistencyReport:
    entries: tuple

    @property
    def all_passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_json_obj(self) -> dict:
        return {
            "all_passed": self.all_passed,
            "entries": [
                {"k": e.k, "passed": e.passed,
                 "first_mismatch_exponent": e.first_mismatch_exponent}
                for e in self.entries
            ],
        }


def bk_phi_consistency(k_max: int, bk_table: BkTable | None = None,
                       phi_table: PhiTable | None = None) -> ConsistencyReport:
    """Check B_k(p) == p**k * phi_k(p**2) for every k <= k_max.

    Failures are data, not exceptions: each entry records pass/fail and the
    first exponent at which the two sides disagree.
    """
    if bk_table is None or bk_table.k_max < k_max:
        bk_table = bk_recurrence(k_max)
    if phi_table is None or phi_table.k_max < k_max:
        phi_table = phi_recurrence(k_max)
    results = []
    for k in range(k_max + 1):
        lhs = bk_table.entry(k)
        rhs = phi_table.entry(k).substitute_square().shift(k)
        if lhs == rhs:
            results.append(ConsistencyEntry(k, True, None))
        else:
            diff = {e for e in set(lhs.terms) | set(rhs.terms)
                    if lhs.coefficient(e) != rhs.coefficient(e)}
            results.append(ConsistencyEntry(k, False, min(diff)))
    return ConsistencyReport(tuple(results))
