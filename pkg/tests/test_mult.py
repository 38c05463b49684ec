import pytest

from pcanon.coxeter import AFFINE, FINITE, system
from pcanon.fock import multipartitions_of
from pcanon.hecke import kl_basis
from pcanon.mult import (MultiplicityQuery, decomposition_matrix, hecke_decomposition_number, parabolic_pkl,
                         parabolic_representatives, pkl_at_one, schur_decomposition_number)

N2 = {((2,), (2,)): 1, ((2,), (1, 1)): 1, ((1, 1), (2,)): 0, ((1, 1), (1, 1)): 1}


def test_J_empty_reduces_to_pkl():
    for kind, n, L in [(FINITE, 3, 3), (AFFINE, 2, 4)]:
        W = system(kind, n)
        els = list(W.enumerate_up_to_length(L))
        for y in els:
            for w in els:
                want = kl_basis(W, y).coeff(w).at_one()
                assert parabolic_pkl(W, y, w) == want
                assert pkl_at_one(W, y, w, None) == want


def test_prime_pkl_matches_p_canonical():
    W = system(AFFINE, 2)
    y = W.element((0, 1, 0))
    assert pkl_at_one(W, y, W.gen(0), None) == 1
    assert pkl_at_one(W, y, W.gen(0), 2) == 2
    assert pkl_at_one(W, y, W.element((0, 1)), 2) == 1


def test_parabolic_representative_check():
    W = system(FINITE, 3)
    assert parabolic_representatives(W, W.identity(), {1}, ()) == W.gen(1)
    with pytest.raises(ValueError):
        parabolic_representatives(W, W.identity(), {1}, {1})


@pytest.mark.parametrize("p", [None, 2])
def test_level_one_n2_matrix(p):
    M = decomposition_matrix(2, 2, (4,), (0,), p, "schur")
    assert {(a[0], b[0]): v for (a, b), v in M.items()} == N2


def test_diagonal_and_orbit_gate():
    M = decomposition_matrix(3, 2, (5,), (1,), None, "schur")
    labels = multipartitions_of(3, 1)
    for lam in labels:
        assert M[(lam, lam)] == 1
    assert M[(((3,),), ((1, 1, 1),))] == 1
    q = MultiplicityQuery(2, ((3,),), ((2, 1),), (5,), (1,))
    r = schur_decomposition_number(q)
    assert r.value == 0 and not r.orbit_match
    assert r.details["orbit_lambda"] != r.details["orbit_mu"]


def test_hecke_gate():
    M = decomposition_matrix(2, 2, (4,), (0,), None, "hecke")
    assert M[(((2,),), ((2,),))] is None
    assert M[(((2,),), ((1, 1),))] == 1
    assert M[(((1, 1),), ((1, 1),))] == 1


def test_constraint_violations():
    bad_congruence = MultiplicityQuery(2, ((2,),), ((2,),), (3,), (0,))
    assert any("mod e" in v for v in bad_congruence.violations())
    with pytest.raises(ValueError):
        schur_decomposition_number(bad_congruence)
    small_m = MultiplicityQuery(2, ((2,),), ((2,),), (2,), (0,))
    assert "m_1 <= n" in small_m.violations()
    sizes = MultiplicityQuery(2, ((2,),), ((1,),), (4,), (0,))
    assert "|lambda| != |mu|" in sizes.violations()
    with pytest.raises(ValueError):
        hecke_decomposition_number(sizes)
    assert MultiplicityQuery(2, ((2,),), ((2,), ()), (4,), (0,)).violations() == ["level mismatch"]


def test_higher_level_is_conditional():
    q = MultiplicityQuery(2, ((1,), ()), ((), (1,)), (2, 2), (0, 0))
    r = schur_decomposition_number(q)
    assert r.conditional and r.value == 1
    with pytest.raises(ValueError):
        schur_decomposition_number(q, strict=True)
    q.order_regime_confirmed = True
    assert not schur_decomposition_number(q).conditional
    M = decomposition_matrix(1, 2, (2, 2), (0, 0))
    assert M[(((), (1,)), ((1,), ()))] == 0
