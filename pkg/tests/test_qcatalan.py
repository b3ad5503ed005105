import pytest

from qpairings.pairings import PairingClass, enumerate_pairings, weight_exponent, weighted_sum_poly
from qpairings.polynomial import WeightPoly
from qpairings.qcatalan import (
    BkTable,
    bk_phi_consistency,
    bk_recurrence,
    catalan_number,
    phi_recurrence,
    q_catalan_reversal,
)

NC = PairingClass.NON_CROSSING


def test_catalan_values():
    assert [catalan_number(k) for k in range(7)] == [1, 1, 2, 5, 14, 42, 132]


def test_bk_small_entries():
    bk = bk_recurrence(3)
    assert bk.entry(0) == WeightPoly.one()
    assert bk.entry(1) == WeightPoly({1: 1})
    assert bk.entry(2) == WeightPoly({2: 1, 4: 1})
    assert bk.entry(3) == WeightPoly({3: 1, 5: 2, 7: 1, 9: 1})


def test_b4_at_one_is_catalan_four():
    assert bk_recurrence(4).entry(4).eval_exact(1) == 14


@pytest.mark.parametrize("k", range(9))
def test_bk_matches_enumeration_oracle(k):
    assert bk_recurrence(k).entry(k) == weighted_sum_poly(k, NC)


@pytest.mark.parametrize("k", range(1, 13))
def test_bk_exponent_range_and_count(k):
    entry = bk_recurrence(k).entry(k)
    assert entry.min_exponent() == k
    assert entry.degree() == k * k
    assert entry.eval_exact(1) == catalan_number(k)


def test_phi_small_entries():
    phi = phi_recurrence(3)
    assert phi.entry(0) == WeightPoly.one()
    assert phi.entry(1) == WeightPoly.one()
    assert phi.entry(2) == WeightPoly({0: 1, 1: 1})
    assert phi.entry(3) == WeightPoly({0: 1, 1: 2, 2: 1, 3: 1})


def test_phi_catalan_degree_and_positivity():
    phi = phi_recurrence(25)
    for k in range(26):
        entry = phi.entry(k)
        assert entry.eval_exact(1) == catalan_number(k)
        assert entry.degree() == k * (k - 1) // 2
        assert all(c > 0 for c in entry.terms.values())


def test_q_catalan_reversal_examples():
    assert q_catalan_reversal(1) == WeightPoly.one()
    assert q_catalan_reversal(2) == WeightPoly({0: 1, 1: 1})  # palindromic
    assert q_catalan_reversal(3) == WeightPoly({0: 1, 1: 1, 2: 2, 3: 1})


def test_q_catalan_reversal_is_involution_against_phi():
    phi = phi_recurrence(8)
    for k in range(1, 9):
        reversed_once = q_catalan_reversal(k, phi_table=phi)
        assert reversed_once.reverse(k * (k - 1) // 2) == phi.entry(k)


def test_consistency_report_passes():
    report = bk_phi_consistency(12)
    assert report.all_passed
    assert [e.k for e in report.entries] == list(range(13))
    assert all(e.first_mismatch_exponent is None for e in report.entries)


def test_consistency_report_flags_mismatch():
    bk = bk_recurrence(3)
    tampered = list(bk.entries)
    tampered[2] = tampered[2] + WeightPoly({6: 1})  # bogus extra term
    report = bk_phi_consistency(3, bk_table=BkTable(tuple(tampered)))
    assert not report.all_passed
    bad = [e for e in report.entries if not e.passed]
    assert [e.k for e in bad] == [2]
    assert bad[0].first_mismatch_exponent == 6


@pytest.mark.parametrize("k", range(2, 7))
def test_wigner_split_subsum(k):
    # pairings that join point 1 to point 2k contribute p^(2k-1) * B_{k-1}
    subsum = WeightPoly.zero()
    for pairing in enumerate_pairings(k, NC):
        if (1, 2 * k) in pairing.pairs:
            subsum = subsum + WeightPoly.monomial(weight_exponent(pairing))
    expected = bk_recurrence(k - 1).entry(k - 1).shift(2 * k - 1)
    assert subsum == expected


def test_tables_reject_negative_k_max():
    with pytest.raises(ValueError):
        bk_recurrence(-1)
    with pytest.raises(ValueError):
        phi_recurrence(-1)


def test_table_json_and_csv_shapes():
    bk = bk_recurrence(2)
    obj = bk.to_json_obj()
    assert obj["k_max"] == 2
    assert obj["entries"][2] == {"k": 2, "terms": [[2, "1"], [4, "1"]]}
    rows = list(bk.csv_rows())
    assert rows == [(0, 0, "1"), (1, 1, "1"), (2, 2, "1"), (2, 4, "1")]
