import random

import pytest

from qpairings.errors import CapExceeded, KernelDomain
from qpairings.kernels import KernelSpec
from qpairings.pairings import (
    DEFAULT_ALL_CAP,
    DEFAULT_NC_CAP,
    Pairing,
    PairingClass,
    all_pairing_count,
    catalan_number,
    count_pairings,
    enumerate_pairings,
    is_non_crossing,
    weight_exponent,
    weighted_sum_general,
    weighted_sum_poly,
)
from qpairings.polynomial import WeightPoly

ALL = PairingClass.ALL
NC = PairingClass.NON_CROSSING


def pairs_of(k, cls):
    return [p.pairs for p in enumerate_pairings(k, cls)]


def test_k2_all_examples():
    assert pairs_of(2, ALL) == [
        ((1, 2), (3, 4)),
        ((1, 3), (2, 4)),
        ((1, 4), (2, 3)),
    ]


def test_k2_nc_examples():
    assert pairs_of(2, NC) == [((1, 2), (3, 4)), ((1, 4), (2, 3))]


def test_k0_single_empty_pairing():
    for cls in (ALL, NC):
        listed = list(enumerate_pairings(0, cls))
        assert listed == [Pairing(())]


def test_k3_nc_count_is_five():
    assert len(pairs_of(3, NC)) == 5


@pytest.mark.parametrize("k", range(7))
def test_stream_counts_match_closed_forms(k):
    assert sum(1 for _ in enumerate_pairings(k, ALL)) == all_pairing_count(k)
    assert sum(1 for _ in enumerate_pairings(k, NC)) == catalan_number(k)


@pytest.mark.parametrize("k", range(7))
def test_nc_stream_is_filtered_all_stream(k):
    filtered = [p for p in enumerate_pairings(k, ALL) if is_non_crossing(p)]
    assert list(enumerate_pairings(k, NC)) == filtered


@pytest.mark.parametrize("k", range(1, 7))
def test_canonical_order_is_lexicographic(k):
    listed = pairs_of(k, ALL)
    assert listed == sorted(listed)


def test_every_pairing_is_valid():
    for p in enumerate_pairings(4, ALL):
        p.validate()


def test_invalid_inputs():
    with pytest.raises(ValueError):
        list(enumerate_pairings(-1, ALL))
    with pytest.raises(ValueError):
        list(enumerate_pairings(2, "bogus"))


def test_validate_rejects_bad_pairings():
    with pytest.raises(ValueError):
        Pairing(((2, 1),)).validate()  # l >= m
    with pytest.raises(ValueError):
        Pairing(((1, 2), (2, 3))).validate()  # reused endpoint
    with pytest.raises(ValueError):
        Pairing(((3, 4), (1, 2))).validate()  # unsorted firsts
    with pytest.raises(ValueError):
        Pairing(((1, 3),)).validate()  # endpoints not 1..2k


def test_is_non_crossing_examples():
    assert is_non_crossing(Pairing(((1, 3), (2, 4)))) is False
    assert is_non_crossing(Pairing(((1, 4), (2, 3)))) is True
    assert is_non_crossing(Pairing(((1, 2), (3, 6), (4, 5)))) is True


def test_weight_exponent_examples():
    assert weight_exponent(Pairing(((1, 2), (3, 4)))) == 2
    assert weight_exponent(Pairing(((1, 4), (2, 3)))) == 4
    assert weight_exponent(Pairing(((1, 6), (2, 5), (3, 4)))) == 9


@pytest.mark.parametrize("k", range(1, 7))
def test_weight_exponent_bounds_and_parity(k):
    for p in enumerate_pairings(k, ALL):
        e = weight_exponent(p)
        assert k <= e <= k * k
        assert e % 2 == k % 2


def test_weighted_sum_poly_examples():
    assert weighted_sum_poly(1, ALL) == WeightPoly({1: 1})
    assert weighted_sum_poly(2, ALL) == WeightPoly({2: 1, 4: 2})
    assert weighted_sum_poly(2, NC) == WeightPoly({2: 1, 4: 1})
    assert weighted_sum_poly(3, NC) == WeightPoly({3: 1, 5: 2, 7: 1, 9: 1})


@pytest.mark.parametrize("k", range(7))
def test_weighted_sum_poly_at_one_is_count(k):
    assert weighted_sum_poly(k, ALL).eval_exact(1) == all_pairing_count(k)
    assert weighted_sum_poly(k, NC).eval_exact(1) == catalan_number(k)


def test_enumeration_caps():
    with pytest.raises(CapExceeded):
        weighted_sum_poly(DEFAULT_ALL_CAP + 1, ALL)
    with pytest.raises(CapExceeded):
        weighted_sum_poly(DEFAULT_NC_CAP + 1, NC)
    # override: a tighter cap rejects, a looser one admits
    with pytest.raises(CapExceeded):
        weighted_sum_poly(3, ALL, max_k=2)
    assert weighted_sum_poly(10, NC, max_k=10).eval_exact(1) == catalan_number(10)


def test_count_pairings_values_and_guard():
    assert [count_pairings(k, ALL) for k in range(5)] == [1, 1, 3, 15, 105]
    assert [count_pairings(k, NC) for k in range(5)] == [1, 1, 2, 5, 14]
    assert all_pairing_count(18) > 2 ** 64 - 1
    with pytest.raises(CapExceeded):
        count_pairings(18, ALL)
    assert catalan_number(37) > 2 ** 64 - 1
    with pytest.raises(CapExceeded):
        count_pairings(37, NC)
    # the stream itself never rejects on count
    assert next(iter(enumerate_pairings(18, NC))).k == 18


def test_weighted_sum_general_geometric_matches_poly():
    kernel = KernelSpec.geometric(0.5)
    assert weighted_sum_general(2, ALL, kernel) == pytest.approx(0.375, rel=1e-12)
    rng = random.Random(7)
    for k in range(1, 8):
        p = rng.uniform(0.05, 0.95)
        kern = KernelSpec.geometric(p)
        for cls in (ALL, NC):
            expected = weighted_sum_poly(k, cls).eval_f64(p)
            assert weighted_sum_general(k, cls, kern) == pytest.approx(expected, rel=1e-12)


def test_weighted_sum_general_flat_and_single_pair():
    ones = KernelSpec.table([1.0] * 4)
    assert weighted_sum_general(2, ALL, ones) == pytest.approx(3.0)
    kernel = KernelSpec.table([2.0, 0.25])
    assert weighted_sum_general(1, ALL, kernel) == pytest.approx(0.25)


def test_weighted_sum_general_kernel_domain():
    short = KernelSpec.table([1.0, 0.5])  # lags 0..1 only, k=2 needs lag 3
    with pytest.raises(KernelDomain):
        weighted_sum_general(2, ALL, short)


def test_weighted_sum_general_respects_cap():
    with pytest.raises(CapExceeded):
        weighted_sum_general(10, ALL, KernelSpec.geometric(0.5))
