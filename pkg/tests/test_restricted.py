import numpy as np
import pytest
from hypothesis import given, strategies as st

from rlct import linalg
from rlct.errors import ClosureError, VerificationFailure
from rlct.restricted import (
    PClosure,
    PPolynomial,
    RestrictedAlgebra,
    adjoint_pmap_consistency,
    from_subalgebra,
    is_abelian,
    is_p_nilpotent,
    is_p_unipotent,
    is_torus,
    jacobson_s_terms,
    minimal_p_polynomial,
    toral_basis,
)
from rlct.truncpoly import TruncPoly
from rlct.witt import Derivation, witt_algebra

P = 3
W = witt_algebra(P, 2)


def vecs(alg=W):
    return st.lists(st.integers(0, alg.p - 1), min_size=alg.dim, max_size=alg.dim).map(np.array)


def t1():
    return Derivation.from_terms(P, 2, [(TruncPoly.xi(1, P, 2), 1)]).vector()


def d1():
    return Derivation.d(1, P, 2).vector()


@given(vecs())
def test_s_terms_vanish_against_zero(x):
    for s in jacobson_s_terms(x, np.zeros_like(x), W):
        assert not s.any()


@given(vecs(), vecs())
def test_jacobson_formula(x, y):
    lhs = W.pmap((x + y) % P)
    rhs = (W.pmap(x) + W.pmap(y) + sum(jacobson_s_terms(x, y, W))) % P
    assert np.array_equal(lhs, rhs)


def test_commuting_elements_add():
    x, y = t1(), Derivation.from_terms(P, 2, [(TruncPoly.xi(2, P, 2), 2)]).vector()
    assert not W.bracket(x, y).any()
    assert all(not s.any() for s in jacobson_s_terms(x, y, W))


@given(vecs())
def test_adjoint_consistency(x):
    assert adjoint_pmap_consistency(x, W)


def test_jordan_chevalley_examples():
    xs, xn = PClosure(t1(), W).jordan_chevalley()
    assert np.array_equal(xs, t1()) and not xn.any()
    xs, xn = PClosure(d1(), W).jordan_chevalley()
    assert not xs.any() and np.array_equal(xn, d1())
    xs, xn = PClosure(np.zeros(W.dim, dtype=np.int64), W).jordan_chevalley()
    assert not xs.any() and not xn.any()


@given(vecs())
def test_jordan_chevalley_properties(x):
    pc = PClosure(x, W)
    xs, xn = pc.jordan_chevalley()
    assert np.array_equal((xs + xn) % P, x % P)
    assert not W.bracket(xs, xn).any()
    assert is_p_nilpotent(xn, W)
    assert is_torus(PClosure(xs, W).powers, W)
    # the minimal p-polynomial annihilates x
    assert not minimal_p_polynomial(x, W).evaluate_on(x, W).any()


def test_minimal_polynomials():
    assert minimal_p_polynomial(t1(), W) == PPolynomial([-1, 1], P)   # T^p - T
    assert minimal_p_polynomial(d1(), W) == PPolynomial([0, 1], P)    # T^p
    assert PPolynomial([-1, 1], P).ordinary() == (0, 2, 0, 1)
    assert PPolynomial([0, 1], P).shift(1).degree == 2


def test_witt_one_variable_table():
    W1 = witt_algebra(P, 1)
    A = from_subalgebra(W1, np.eye(W1.dim, dtype=np.int64))
    for i in range(W1.dim):
        for j in range(W1.dim):
            assert np.array_equal(A.bracket(A.basis_vector(i), A.basis_vector(j)),
                                  W1.bracket(W1.basis_vector(W1.R.monomials[i], 1),
                                             W1.basis_vector(W1.R.monomials[j], 1)))
    A2 = RestrictedAlgebra.from_json(A.to_json(), P)
    assert np.array_equal(A2.sc, A.sc) and np.array_equal(A2.pmap_basis, A.pmap_basis)


def test_non_closed_subspace_rejected():
    W1 = witt_algebra(P, 1)
    rows = np.array([W1.basis_vector((0,), 1), W1.basis_vector((2,), 1)])
    with pytest.raises(ClosureError):
        from_subalgebra(W1, rows)


def test_bad_structure_constants():
    sc = np.zeros((2, 2, 2), dtype=np.int64)
    sc[0, 1, 1] = 1
    with pytest.raises(VerificationFailure):
        RestrictedAlgebra(P, ["a", "b"], sc, np.zeros((2, 2)))


def test_tori_and_unipotent_spans():
    span = np.array([d1()])
    assert not is_torus(span, W)
    assert is_p_unipotent(span, W)
    T = np.array([t1(), Derivation.from_terms(P, 2, [(TruncPoly.xi(2, P, 2), 2)]).vector()])
    assert is_abelian(T, W) and is_torus(T, W)
    assert linalg.rank(toral_basis(T, W), P) == 2
    assert not is_abelian(np.array([d1(), t1()]), W)
