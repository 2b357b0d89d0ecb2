import numpy as np
import pytest
from hypothesis import given, strategies as st

from rlct import linalg
from rlct.errors import InvalidForm
from rlct.poisson import (
    build_contact,
    build_lr,
    hamiltonian_kernel_and_image,
    hamiltonian_map,
    phi_lambda,
    poisson_algebra,
    poisson_bracket,
    realize_l_in_poisson,
)
from rlct.truncpoly import TruncPoly

P = 3


def polys(n=2, p=P):
    return st.lists(st.integers(0, p - 1), min_size=p ** n, max_size=p ** n).map(
        lambda v: TruncPoly.from_vector(v, p, n))


def x(i, n=2, p=P):
    return TruncPoly.var(i, p, n)


def test_bracket_examples():
    for r in (1, 2):
        n = 2 * r
        for i in range(1, r + 1):
            assert poisson_bracket(x(i, n), x(i + r, n)) == 1
            assert poisson_bracket(x(i + r, n), x(i, n)) == -1
        assert poisson_bracket(x(1, n), TruncPoly.one(P, n)).is_zero()
    with pytest.raises(ValueError):
        poisson_bracket(x(1, 3), x(2, 3))


@given(polys(), polys(), polys())
def test_poisson_axioms(f, g, h):
    assert poisson_bracket(f, g) == -poisson_bracket(g, f)
    jac = poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f)) \
        + poisson_bracket(h, poisson_bracket(f, g))
    assert jac.is_zero()
    # Leibniz in the second slot
    assert poisson_bracket(f, g * h) == poisson_bracket(f, g) * h + g * poisson_bracket(f, h)


@given(polys(), polys())
def test_hamiltonian_field_acts_by_bracket(f, g):
    assert hamiltonian_map(f).apply(g) == poisson_bracket(f, g)


@given(polys(), polys())
def test_algebra_bracket_matches_polynomial_bracket(f, g):
    A = poisson_algebra(1, P)
    assert A.bracket_poly(f, g) == poisson_bracket(f, g)


def test_hamiltonian_of_constant_is_zero():
    assert hamiltonian_map(TruncPoly.one(P, 2)).is_zero()
    assert hamiltonian_kernel_and_image(1, P)[:2] == (1, 8)


def test_pmap_examples():
    A = poisson_algebra(1, P)
    one = TruncPoly.one(P, 2)
    assert A.pmap_poly(one) == one
    assert A.pmap_poly(x(1) * x(2)) == x(1) * x(2)
    assert A.pmap_poly(x(1)).is_zero()
    U = poisson_algebra(1, P, center="unipotent")
    assert U.pmap_poly(one).is_zero()
    with pytest.raises(ValueError):
        poisson_algebra(1, P, center="other")


def test_small_algebra():
    L = build_lr(2, P)
    t1, x1 = L.basis_vector(2), L.basis_vector(1)
    assert np.array_equal(L.bracket(t1, x1), x1)
    assert not L.bracket(L.basis_vector(3), x1).any()
    assert np.array_equal(L.pmap(x1), L.basis_vector(0))
    _, M, rep = realize_l_in_poisson(2, P)
    assert rep["injective"] and M.shape == (81, 4)


def test_phi_lambda():
    A = poisson_algebra(1, P)
    F = phi_lambda(np.zeros(A.dim, dtype=np.int64), A)
    assert np.array_equal(F.matrix, np.eye(A.dim, dtype=np.int64))
    bad = np.zeros(A.dim, dtype=np.int64)
    bad[1] = 1  # x_1 lies in the derived subalgebra
    with pytest.raises(InvalidForm):
        phi_lambda(bad, A)


@pytest.mark.parametrize("p", [3, 5])
def test_contact_carrier(p):
    C = build_contact(1, p)
    assert C.c == 2
    assert linalg.rank(C.theta, p) == p ** 3
    rng = np.random.default_rng(p)
    for _ in range(10):
        v = rng.integers(0, p, C.dim)
        assert np.array_equal(C.Theta_inv(C.Theta(v)), v)
        w = rng.integers(0, p, C.dim)
        assert np.array_equal(C.bracket(v, w), (-C.bracket(w, v)) % p)
        assert np.array_equal(C.ad(v) @ w % p, C.bracket(v, w))


def test_contact_derived_dimension():
    assert build_contact(1, 3).derived().shape[0] == 26
    assert build_contact(1, 5).derived().shape[0] == 125
