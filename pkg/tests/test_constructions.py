import hashlib

import pytest

from sedf.constructions import (
    M11_S,
    M11_X,
    M11_Y,
    MatrixGF,
    ProjPoint,
    construct_k2plus1,
    construct_m11_sedf,
    construct_paley_pds,
    m11_orbits,
    mat_mul,
    mat_pow,
    orbit_of_point,
    paley_sedf,
    proj_equal,
    sedf_from_pds,
)
from sedf.designs import verify_pds, verify_sedf
from sedf.formats import dump_family
from sedf.groups import GroupSpec

import oracles
from reference_data import B, O1

I5 = MatrixGF.identity(3, 5)
W_PRINTED = MatrixGF(3, ((1, 1, 0, 0, 2), (0, 2, 1, 1, 2), (0, 2, 0, 1, 1), (2, 1, 2, 2, 1), (2, 1, 0, 1, 0)))


def test_matrix_constants_checksum():
    blob = repr([M11_X.entries, M11_Y.entries, M11_S.entries]).encode()
    assert hashlib.sha256(blob).hexdigest()[:16] == "036b4dd9600999bf"


def test_printed_identities():
    assert proj_equal(mat_pow(M11_X, 2), I5)
    assert proj_equal(mat_pow(M11_Y, 4), I5)
    W = mat_mul(M11_X, M11_Y)
    assert W == W_PRINTED
    assert proj_equal(mat_pow(W, 11), I5)
    assert proj_equal(mat_pow(M11_S, 11), W)
    assert mat_pow(I5, 7) == I5


def test_proj_equal_is_scalar_equality():
    assert proj_equal(I5, I5.scale(2))
    assert not proj_equal(I5, M11_X)


def test_matrix_errors():
    with pytest.raises(ValueError):
        mat_mul(I5, MatrixGF.identity(3, 4))
    with pytest.raises(ValueError):
        mat_mul(I5, MatrixGF.identity(5, 5))
    with pytest.raises(ValueError):
        MatrixGF(4, ((1,),))


def test_projective_normalisation():
    assert ProjPoint(3, (0, 2, 1)).coords == (0, 1, 2)
    with pytest.raises(ValueError):
        ProjPoint(3, (0, 0, 0))


def test_orbit_under_identity_is_a_point():
    x = ProjPoint(3, (1, 2, 0, 0, 1))
    assert orbit_of_point(x, I5) == [x]


def test_first_orbit_is_printed_o1():
    W = mat_mul(M11_X, M11_Y)
    orb = orbit_of_point(ProjPoint(3, (1, 0, 0, 0, 0)), W)
    assert set(orb) == {ProjPoint(3, x) for x in O1}


def test_orbits_partition_pg43():
    orbits = m11_orbits()
    assert [len(o) for o in orbits] == [11] * 11
    pts = [p for o in orbits for p in o]
    assert len(set(pts)) == 121


def test_m11_family_matches_printed_sets():
    F = construct_m11_sedf()
    assert [set(s) for s in F.sets] == [set(b) for b in B]


def test_m11_family_is_verified():
    F = construct_m11_sedf()
    rep = verify_sedf(F)
    assert rep.passed and rep.near_complete
    assert F.declared == (243, 11, 22, 20)
    for s in F.sets:
        r = verify_pds(F.group, s, (243, 22, 1, 2))
        assert r.passed and r.regular and r.nontrivial
    assert oracles.is_pds((3,) * 5, list(F.sets[4]), 243, 22, 1, 2)


def test_m11_serialisation_is_deterministic():
    assert dump_family(construct_m11_sedf()) == dump_family(construct_m11_sedf())


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6, 7])
def test_k2plus1(k):
    F = construct_k2plus1(k)
    assert F.declared == (k * k + 1, 2, k, 1)
    assert verify_sedf(F).passed
    assert oracles.is_sedf(F.group.factors, F.sets, 1)


def test_k2plus1_rejects_small_k():
    with pytest.raises(ValueError):
        construct_k2plus1(1)


def test_paley_pds():
    assert construct_paley_pds(5) == [1, 4]
    assert construct_paley_pds(13) == [1, 3, 4, 9, 10, 12]
    D = construct_paley_pds(17)
    assert len(D) == 8
    assert verify_pds(GroupSpec((17,)), [(x,) for x in D], (17, 8, 3, 4)).passed
    for bad in (7, 15, 2):
        with pytest.raises(ValueError):
            construct_paley_pds(bad)


def test_sedf_from_pds():
    F = sedf_from_pds(GroupSpec((5,)), [(1,), (4,)])
    assert [set(s) for s in F.sets] == [{(1,), (4,)}, {(2,), (3,)}]
    for p in (13, 17, 29):
        F = paley_sedf(p)
        assert F.declared == (p, 2, (p - 1) // 2, (p - 1) // 4)
        assert verify_sedf(F).passed


def test_sedf_from_pds_precondition():
    with pytest.raises(ValueError):
        sedf_from_pds(GroupSpec((13,)), [(1,), (2,), (3,), (4,), (5,), (6,)])
