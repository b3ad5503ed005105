"""Enumeration of pair partitions of {1,..,2k} and their geometric weights.

This module is the brute-force oracle for everything else: it streams
pairings in a canonical order, tests the non-crossing property, and sums
weights either as an exact polynomial in the decay parameter p or as a
float against an arbitrary covariance kernel.
"""

from __future__ import annotations

import math
from typing import Iterator, NamedTuple

from .errors import CapExceeded
from .polynomial import WeightPoly


class PairingClass:
    """Two-valued tag: all pairings, or non-crossing pairings only."""

    ALL = "all"
    NON_CROSSING = "nc"

    CHOICES = (ALL, NON_CROSSING)


class Pairing(NamedTuple):
    """Perfect matching of {1,..,2k} as pairs (l, m), l < m, sorted by l."""

    pairs: tuple

    @property
    def k(self) -> int:
        return len(self.pairs)

    def validate(self) -> None:
        """Raise ValueError unless the pair list is a canonical matching."""
        seen = set()
        last_first = 0
        for pair in self.pairs:
            if len(pair) != 2:
                raise ValueError(f"not a pair: {pair!r}")
            l, m = pair
            if not (1 <= l < m):
                raise ValueError(f"pair ({l},{m}) violates l < m or 1-based indexing")
            if l <= last_first:
                raise ValueError("pairs not sorted by strictly increasing first element")
            last_first = l
            seen.add(l)
            seen.add(m)
        n = 2 * len(self.pairs)
        if seen != set(range(1, n + 1)):
            raise ValueError(f"endpoints are not exactly 1..{n}")


def is_non_crossing(pairing: Pairing) -> bool:
    """False iff two pairs (a,b), (c,d) interleave as a < c < b < d."""
    pairs = pairing.pairs
    for i, (a, b) in enumerate(pairs):
        for c, d in pairs[i + 1:]:
            # c > a always holds in canonical order
            if c < b < d:
                return False
    return True


def weight_exponent(pairing: Pairing) -> int:
    """Sum of pair spans m - l; the exponent of p in the pairing's weight."""
    return sum(m - l for l, m in pairing.pairs)


def _stream(unmatched, noncrossing):
    # unmatched: ascending tuple of still-unpaired points.  The smallest one
    # is paired with each admissible larger point in increasing order, which
    # yields pairings in lexicographic order on the sorted pair list.
    if not unmatched:
        yield ()
        return
    a = unmatched[0]
    rest = unmatched[1:]
    for idx, b in enumerate(rest):
        if noncrossing:
            # Every point strictly between a and b must still be unmatched
            # (a matched one would have a partner < a, hence a crossing),
            # and there must be an even number of them so they can pair
            # among themselves under the new arc.
            if idx != b - a - 1 or idx % 2:
                continue
        first = (a, b)
        for sub in _stream(rest[:idx] + rest[idx + 1:], noncrossing):
            yield (first,) + sub


def enumerate_pairings(k: int, pairing_class: str = PairingClass.ALL) -> Iterator[Pairing]:
    """Stream every pairing of {1,..,2k} in the given class exactly once.

    Order is deterministic and canonical: lexicographic on the sorted pair
    list.  k = 0 yields the single empty pairing.  The stream is lazy; the
    full list (size (2k-1)!! for the all-pairings class) is never built.
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if pairing_class not in PairingClass.CHOICES:
        raise ValueError(f"unknown pairing class {pairing_class!r}")
    noncrossing = pairing_class == PairingClass.NON_CROSSING
    for pairs in _stream(tuple(range(1, 2 * k + 1)), noncrossing):
        yield Pairing(pairs)


def all_pairing_count(k: int) -> int:
    """(2k)! / (2^k k!) = (2k-1)!!, the number of pairings of 2k points."""
    return math.factorial(2 * k) // (2 ** k * math.factorial(k))


def catalan_number(k: int) -> int:
    """(2k)! / (k! (k+1)!), the number of non-crossing pairings of 2k points."""
    return math.comb(2 * k, k) // (k + 1)


_U64_MAX = 2 ** 64 - 1


def count_pairings(k: int, pairing_class: str = PairingClass.ALL) -> int:
    """Closed-form class count; rejects counts beyond a 64-bit counter."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if pairing_class == PairingClass.ALL:
        count = all_pairing_count(k)
    elif pairing_class == PairingClass.NON_CROSSING:
        count = catalan_number(k)
    else:
        raise ValueError(f"unknown pairing class {pairing_class!r}")
    if count > _U64_MAX:
        raise CapExceeded(f"count for k={k} exceeds the 64-bit counter range")
    return count


# Default enumeration caps: worst case stays around a minute of desk time.
DEFAULT_ALL_CAP = 9
DEFAULT_NC_CAP = 14


def _check_cap(k, pairing_class, max_k):
    if max_k is None:
        max_k = DEFAULT_ALL_CAP if pairing_class == PairingClass.ALL else DEFAULT_NC_CAP
    if k > max_k:
        raise CapExceeded(
            f"k={k} exceeds the enumeration cap {max_k} for class {pairing_class!r}"
        )


def weighted_sum_poly(k: int, pairing_class: str = PairingClass.ALL,
                      max_k: int | None = None) -> WeightPoly:
    """Exact sum of p**weight_exponent over the class, as a polynomial in p.

    Evaluating the result at p = 1 recovers the class count.  Enforces the
    enumeration cap (default 9 for all pairings, 14 for non-crossing).
    """
    _check_cap(k, pairing_class, max_k)
    counts: dict[int, int] = {}
    for pairing in enumerate_pairings(k, pairing_class):
        e = weight_exponent(pairing)
        counts[e] = counts.get(e, 0) + 1
    return WeightPoly(counts)


def weighted_sum_general(k: int, pairing_class: str, kernel,
                         max_k: int | None = None) -> float:
    """Float sum over the class of the product of kernel values V(m - l).

    The kernel must cover lags 1..2k-1; a missing lag raises KernelDomain.
    Unlike the geometric weight this does not factorize over gaps, so only
    this enumeration route serves general kernels.
    """
    _check_cap(k, pairing_class, max_k)
    values = [kernel.value(lag) for lag in range(2 * k)]
    total = 0.0
    for pairing in enumerate_pairings(k, pairing_class):
        w = 1.0
        for l, m in pairing.pairs:
            w *= values[m - l]
        total += w
    return total
