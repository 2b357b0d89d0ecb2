import numpy as np
import pytest
from hypothesis import given, strategies as st

from rlct import upoly
from rlct.errors import EnvelopeError, OutsideOmegaBeta
from rlct.invariants import (
    BetaForm,
    SymbolicPolynomial,
    char_poly,
    char_poly_matrix,
    determinant_symbolic,
    dickson_coefficients,
    dickson_product,
    gl_generators,
    natural_module,
    p_power_support,
    phi_semisimple_invariance,
    phi_via_beta,
    q_polynomial,
    roots_form_group,
    split_torus_char_poly,
)
from rlct.tori import agt2_torus, gl_elements
from rlct.witt import Derivation, witt_algebra

P = 3


def berkowitz(M, p):
    """Division-free characteristic polynomial, lowest degree first."""
    M = np.asarray(M, dtype=object)
    vect = [1]
    for r in range(M.shape[0]):
        a, R, C, S = M[r, r], M[r, :r], M[:r, r], M[:r, :r]
        t = [1, -a]
        X = C
        for _ in range(r):
            t.append(-(R @ X))
            X = S @ X
        vect = [sum(t[i - j] * vect[j] for j in range(len(vect)) if 0 <= i - j < len(t)) % p
                for i in range(r + 2)]
    return upoly.trim([int(c) for c in reversed(vect)], p)


def mats(n, p=P):
    return st.lists(st.integers(0, p - 1), min_size=n * n, max_size=n * n).map(
        lambda v: np.array(v, dtype=np.int64).reshape(n, n))


@given(mats(6))
def test_char_poly_against_berkowitz(A):
    assert char_poly_matrix(A, P) == berkowitz(A, P)


@given(mats(5))
def test_char_poly_block_triangular(A):
    B = np.zeros((7, 7), dtype=np.int64)
    B[:5, :5] = A
    B[5:, 5:] = [[1, 2], [0, 1]]
    B[:5, 5:] = 1
    lhs = char_poly_matrix(B, P)
    rhs = upoly.mul(char_poly_matrix(A, P), char_poly_matrix(B[5:, 5:], P), P)
    assert lhs == rhs


def test_char_poly_of_zero_and_constant_submodule():
    W = witt_algebra(P, 2)
    M = natural_module(W)
    assert char_poly(M, np.zeros(W.dim, dtype=np.int64)) == (0,) * 9 + (1,)
    rng = np.random.default_rng(0)
    for _ in range(10):
        x = rng.integers(0, P, W.dim)
        A = M(x)
        # constants form a submodule killed by every derivation
        assert not A[:, 0].any()
        assert char_poly(M, x) == upoly.mul((0, 1), char_poly_matrix(A[1:, 1:], P), P)


def test_natural_module_is_restricted():
    W = witt_algebra(P, 2)
    rows = np.eye(W.dim, dtype=np.int64)[::3]
    assert natural_module(W).check_basis(rows) == []


def test_dickson_one_variable():
    prod = dickson_product(1, P)
    y = SymbolicPolynomial.var(0, 1, P)
    # Π_a (T - a y) = T^3 - y^2 T
    assert prod[1] == -(y * y)
    assert prod[3] == SymbolicPolynomial.const(1, 1, P)


@pytest.mark.parametrize("m", [1, 2])
def test_dickson_degrees_and_invariance(m):
    coeffs = dickson_coefficients(m, P)
    for i, c in enumerate(coeffs[:-1]):
        assert c.is_homogeneous() and c.degree() == P ** m - P ** i
        for A in gl_generators(m, P):
            assert c.linear_substitute(A) == c


def test_dickson_envelope():
    with pytest.raises(EnvelopeError):
        dickson_product(3, 5)


def test_symbolic_arithmetic():
    x, y = SymbolicPolynomial.var(0, 2, P), SymbolicPolynomial.var(1, 2, P)
    assert (x + y) ** 3 == x.frobenius() + y.frobenius()
    assert determinant_symbolic([[x, y], [y, x]]) == x * x - y * y
    assert ((x * y + y) * x).divide_exact(x) == x * y + y
    assert (x + y).evaluate([1, 1]) == 2
    assert SymbolicPolynomial.const(3, 2, P).is_zero()


def test_split_torus_polynomial():
    cp = split_torus_char_poly((1, 2), P)
    assert p_power_support(cp, P)
    assert roots_form_group(cp, P)
    assert cp == upoly.power((0, 2, 0, 1), 3, P)


def test_beta_form():
    W = witt_algebra(P, 2)
    T = agt2_torus("W", 2, P).basis
    beta = BetaForm([W.index((0, 0), 1), W.index((0, 0), 2)], P)
    assert beta(list(T)) == 1
    x = T[0]
    assert phi_via_beta(x, W, beta, 2, 0) == 1
    d1 = Derivation.d(1, P, 2).vector()
    with pytest.raises(OutsideOmegaBeta):
        phi_via_beta(d1, W, beta, 0, 0)
    # an F_p-point of the torus has d = 1 < mu, so Q falls back
    x = (T[0] + 2 * T[1]) % P
    q = q_polynomial(x, W, 2, 0)
    assert q.degenerate and q.d == 1
    assert not q.poly.evaluate_on(x, W).any()


def test_phi_invariant_under_semisimple_part():
    rep = phi_semisimple_invariance("W", 2, P, 20, np.random.default_rng(3))
    assert rep["ok"]


def test_psi_invariant_under_torus_normalizer():
    from rlct.tori import weyl_substitution
    W = witt_algebra(P, 2)
    M = natural_module(W)
    T = agt2_torus("W", 2, P).basis
    x = (T[0] + T[1]) % P
    base = char_poly(M, x)
    for A in list(gl_elements(2, P))[::7]:
        Phi, _ = weyl_substitution(A, P)
        assert char_poly(M, Phi @ x % P) == base


def test_ell_readings_are_reported_separately():
    from rlct.invariants import ell_values
    rep = ell_values("W", 2, P, np.random.default_rng(5), samples=20)
    assert rep["mu"] == 2 and rep["ell_from_d"] == 0
    assert rep["rank_estimate"] >= 2
