from fractions import Fraction

import pytest

from sedf.params import ABPair, ParamSet, enumerate_params, feasible_ab_pairs, parse_params, scvp_admissible, scvp_counts

import oracles


def test_enumeration_matches_brute_force():
    assert [P.astuple() for P in enumerate_params(120)] == oracles.brute_params(120)
    assert [P.astuple() for P in enumerate_params(300, 3, 9)] == oracles.brute_params(300, 3, 9)


def test_enumeration_examples():
    L = [P.astuple() for P in enumerate_params(50, 2, 2)]
    assert (45, 2, 22, 11) in L and (28, 2, 9, 3) in L
    assert [P for P in L if P[0] == 5] == [(5, 2, 2, 1)]
    assert all(v > m * k for v, m, k, _ in L)


def test_enumeration_rejects_small_vmax():
    with pytest.raises(ValueError):
        enumerate_params(4)


def test_paramset_validation():
    with pytest.raises(ValueError):
        ParamSet(10, 2, 3, 2)
    assert parse_params("(243,11,22,20)") == ParamSet(243, 11, 22, 20)
    assert str(ParamSet(5, 2, 2, 1)) == "(5,2,2,1)"


def test_feasible_pairs_examples():
    assert feasible_ab_pairs(5, 20) == [ABPair(1, 3)]
    assert feasible_ab_pairs(5, 21) == []
    assert feasible_ab_pairs(6, 9) == [ABPair(1, 2)]
    assert feasible_ab_pairs(6, 10) == []
    assert feasible_ab_pairs(26, 12) == [ABPair(1, 2), ABPair(1, 3)]
    assert feasible_ab_pairs(7, 196) == [ABPair(3, 5)]
    assert ABPair(1, 9) in feasible_ab_pairs(11, 20)
    with pytest.raises(ValueError):
        feasible_ab_pairs(2, 4)


def test_no_pairs_for_m_3_and_4():
    for lam in range(1, 5001):
        assert feasible_ab_pairs(3, lam) == [] and feasible_ab_pairs(4, lam) == []


def test_scvp_examples():
    g0, gp, gm = scvp_counts(ParamSet(2401, 37, 60, 54), ABPair(5, 7))
    assert g0 == Fraction(9212, 15)
    assert not scvp_admissible(ParamSet(2401, 37, 60, 54), ABPair(5, 7))
    assert scvp_counts(ParamSet(5832, 8, 595, 425), ABPair(2, 3))[0] == 2079
    assert scvp_counts(ParamSet(243, 11, 22, 20), ABPair(1, 9)) == (0, 110, 132)
    assert scvp_admissible(ParamSet(243, 11, 22, 20), ABPair(1, 9))


@pytest.mark.parametrize("P", [(2401, 37, 60, 54), (5832, 8, 595, 425), (243, 11, 22, 20), (2401, 7, 280, 196)])
def test_scvp_counts_match_oracle(P):
    P = ParamSet(*P)
    for ab in feasible_ab_pairs(P.m, P.lam):
        ours = scvp_counts(P, ab)
        ref = oracles.scvp_counts_from_sums(*P.astuple(), ab.a, ab.b)
        assert [Fraction(int(r.p), int(r.q)) for r in ref] == list(ours)
        assert sum(ours) == P.v - 1
