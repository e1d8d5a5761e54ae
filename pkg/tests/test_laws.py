import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import DIAG, ROW, dm
from dualmp.errors import NotAMember, NotInvertible, ShapeMismatch
from dualmp.families import FAMILIES, INVERTIBLE_LEFT, RECTANGULAR, SQUARE
from dualmp.inverse import ndmpi, penrose_check
from dualmp.laws import (
    CHECKERS,
    Pair,
    check_commutation_consequences,
    check_fol,
    check_rol_commuting,
    check_rol_dmpgi_link,
    check_rol_essential,
    check_rol_invertible,
    check_rol_plain,
    check_rol_single,
    check_rol_via_123,
    inner_123_candidates,
    inner_inverse_lemma,
)
from dualmp.matrix import (
    DualMatrix,
    random_columns_orthonormal,
    random_dual,
    random_dual_unitary,
    random_essential,
)

I2 = DualMatrix.identity(2)


def holds_fully(rep):
    return all(rep.premises_hold) and rep.conclusion_holds


# single-condition converse: (AB)^N = B^N A^N holds but the premise does not.
# Found by scripts/search_single_counterexample.py (seed 0) and confirmed exactly.
SINGLE_A = dm([[0, -1], [0, 1]], [[0, 0], [0, -1]])
SINGLE_B = dm([[0, 0], [1, 0]], [[1, -1], [0, 0]])


@pytest.mark.parametrize("name", sorted(CHECKERS))
def test_identity_pair(name):
    A = DualMatrix.identity(3)
    rep = CHECKERS[name](A, A)
    assert holds_fully(rep) and rep.implication_respected


def test_essential_orthonormal_left():
    A = random_columns_orthonormal(5, 3, seed=0)
    B = random_dual(3, 4, 2, seed=1)
    assert holds_fully(check_rol_essential(A, B))


def test_essential_counterexample_pair():
    rep = check_rol_essential(ROW, DIAG)
    assert rep.conclusion_holds and not rep.premises_hold[1]


def test_plain_counterexample_pair_values():
    rep = check_rol_plain(ROW, DIAG)
    assert rep.conclusion_holds and not rep.premises_hold[1]
    p = Pair(ROW, DIAG)
    lhs = DIAG @ p.BN @ ROW.H @ ROW @ DIAG
    rhs = ROW.H @ ROW @ DIAG
    assert lhs.allclose(dm([[1, 0], [0, 0]]), 0)
    assert rhs.allclose(dm([[1, 0], [0, 0]], [[0, 0], [1, 0]]), 0)
    assert p.ABN.allclose(dm([[1], [0]]), 0) and p.BNAN.allclose(dm([[1], [0]]), 0)


def test_plain_orthonormal_left_essential_right():
    A = random_columns_orthonormal(4, 3, seed=2)
    B = random_essential(3, 3, 2, seed=3)
    assert holds_fully(check_rol_plain(A, B))


def test_single_orthonormal_left_unitary_right():
    A = random_columns_orthonormal(5, 3, seed=4)
    B = random_dual_unitary(3, seed=5)
    assert holds_fully(check_rol_single(A, B))


def test_single_converse_witness():
    rep = check_rol_single(SINGLE_A, SINGLE_B)
    assert rep.conclusion_residual == 0 and not rep.premises_hold[0]
    assert rep.implication_respected


def test_dmpgi_link_unitary_pair():
    A, B = random_dual_unitary(3, seed=0), random_dual_unitary(3, seed=1)
    rep = check_rol_dmpgi_link(A, B)
    assert rep.applicable and holds_fully(rep)


def test_dmpgi_link_not_applicable():
    A, B = FAMILIES["infinitesimal-product"](3)
    rep = check_rol_dmpgi_link(A, B)
    assert not rep.applicable and not rep.premises_hold[0] and rep.implication_respected


def test_commuting_diagonal():
    A, B = dm(np.diag([2.0, 0.5, 1.0]), np.diag([1.0, 2.0, -1.0])), dm(np.diag([1.0, 3.0, 0.5]), np.diag([0.0, 1.0, 1.0]))
    assert holds_fully(check_rol_commuting(A, B))


def test_commuting_random_respects_implication():
    A, B = random_dual(3, 3, 2, seed=6), random_dual(3, 3, 2, seed=7)
    rep = check_rol_commuting(A, B)
    assert not all(rep.premises_hold) and rep.implication_respected


def test_fol_counterexample_pair():
    rep = check_fol(DIAG, I2)
    assert rep.conclusion_holds and not rep.premises_hold[2]
    p = Pair(DIAG, I2)
    assert (p.AN @ DIAG @ I2.H @ DIAG.H).allclose(dm([[1, 0], [0, 0]]), 0)
    assert (I2.H @ DIAG.H).allclose(DIAG, 0)
    assert p.ABN.allclose(dm([[1, 0], [0, 0]]), 0)


def test_fol_classical_commuting_hermitian():
    U = random_dual_unitary(3, seed=8).std
    A = DualMatrix.real((U * [2.0, 1.0, 0.0]) @ U.conj().T)
    B = DualMatrix.real((U * [0.5, 3.0, 0.0]) @ U.conj().T)
    assert holds_fully(check_fol(A, B))


def test_fol_requires_square():
    with pytest.raises(ShapeMismatch):
        check_fol(ROW, DIAG)


def test_invertible_identity_left():
    # with Â = I the first premise reads B̂_e* = B̂*, so it needs B̂_n = 0
    B = random_essential(3, 3, 2, seed=9)
    rep = check_rol_invertible(DualMatrix.identity(3), B)
    assert holds_fully(rep)
    rep = check_rol_invertible(DualMatrix.identity(3), random_dual(3, 3, 2, seed=9))
    assert rep.conclusion_holds and not rep.premises_hold[0]


@pytest.mark.parametrize("seed", range(10))
def test_invertible_scalar_left_essential_right(seed):
    A, B = FAMILIES["scalar-left/essential-right"](seed)
    assert holds_fully(check_rol_invertible(A, B))


def test_invertible_diagonal_pair():
    A = dm(np.diag([2.0, -1.0, 0.5]), np.diag([1.0, 0.0, 3.0]))
    B = dm(np.diag([1.0, 0.0, 4.0]), np.diag([2.0, 0.0, 1.0]))
    assert holds_fully(check_rol_invertible(A, B))


def test_invertible_unitary_left_premises_fail():
    # a generic unitary does not map range(B) into itself, so the second premise fails
    A, B = random_dual_unitary(4, seed=10), random_essential(4, 4, 2, seed=11)
    rep = check_rol_invertible(A, B)
    assert not rep.premises_hold[1] and rep.implication_respected


def test_invertible_generic_left():
    A, B = random_dual(3, 3, 3, seed=12), random_dual(3, 3, 2, seed=13)
    rep = check_rol_invertible(A, B)
    assert rep.implication_respected


def test_invertible_requires_invertible_left():
    with pytest.raises(NotInvertible):
        check_rol_invertible(DIAG, I2)


def test_consequences():
    A = random_columns_orthonormal(5, 3, seed=14)
    B = random_dual(3, 4, 2, seed=15)
    rep = check_commutation_consequences(A, B)
    assert rep.implied and all(rep.consequences_hold.values())
    I = DualMatrix.identity(2)
    assert max(check_commutation_consequences(I, I).consequence_residuals.values()) == 0
    rep = check_commutation_consequences(ROW, DIAG)
    assert not rep.implied and rep.implication_respected


def test_inner_lemma():
    A = random_dual(3, 4, 2, seed=16)
    assert inner_inverse_lemma(A, ndmpi(A)).holds
    with pytest.raises(NotAMember):
        inner_inverse_lemma(A, ndmpi(A) + DualMatrix.real(np.ones((4, 3))))


@pytest.mark.parametrize("seed", range(5))
def test_inner_lemma_on_generated_candidates(seed):
    B = random_essential(4, 3, 2, seed=seed)
    cands = inner_123_candidates(B, count=8, seed=seed)
    assert len(cands) > 1  # the structured directions survive the filter
    for X in cands:
        assert penrose_check(B, X, which=(1, 2, 3)).all_pass
        rep = inner_inverse_lemma(B, X)
        assert rep.member_123 and rep.left_residual <= 1e-9


def test_via_123_examples():
    rep = check_rol_via_123(ROW, DIAG)
    assert rep.conclusion_holds and all(rep.premises_hold)
    A, B = random_dual(3, 3, 2, seed=17), random_dual(3, 3, 2, seed=18)
    rep = check_rol_via_123(A, B)
    assert not rep.conclusion_holds and not rep.premises_hold[0]
    assert rep.notes["equivalence_respected"]


@given(st.sampled_from(sorted(CHECKERS)), st.integers(0, 10_000), st.sampled_from([1e-3, 1e-6, 1e-9, 1e-12]))
def test_tightening_tol_never_makes_premises_true(name, seed, tol):
    fams = INVERTIBLE_LEFT if name == "invertible" else SQUARE
    A, B = FAMILIES[fams[seed % len(fams)]](seed)
    loose = CHECKERS[name](A, B, tol)
    tight = CHECKERS[name](A, B, tol / 100)
    for a, b in zip(loose.premises_hold, tight.premises_hold):
        assert a or not b


@pytest.mark.parametrize("family", RECTANGULAR + SQUARE)
def test_small_battery(family):
    for seed in range(25):
        A, B = FAMILIES[family](seed)
        p = Pair(A, B)
        for name in ("essential", "plain", "single", "dmpgi", "commuting", "123"):
            rep = CHECKERS[name](A, B, ctx=p)
            assert rep.implication_respected and rep.notes.get("equivalence_respected", True)
        assert check_commutation_consequences(A, B, ctx=p).implication_respected
