"""Poisson algebra P(2r), the small algebra l_r, and the contact algebra.

Elements of P(2r) and of the contact algebra are truncated polynomials;
coordinate vectors are taken in the monomial basis.
"""

from functools import lru_cache

import numpy as np

from . import linalg
from .cartan import contact_condition, derived_subalgebra
from .errors import ContactNormalizationError, InvalidForm, VerificationFailure
from .restricted import RestrictedAlgebra
from .truncpoly import TruncPoly, ring
from .witt import Derivation, cartan_form, hamiltonian_matrix, witt_algebra


def poisson_bracket(f, g):
    """Σ_i ∂_i f ∂_{i+r} g - ∂_{i+r} f ∂_i g in 2r variables."""
    if f.n != g.n or f.p != g.p:
        raise ValueError("elements live in different rings")
    if f.n % 2:
        raise ValueError("the Poisson bracket needs an even number of variables")
    r = f.n // 2
    out = TruncPoly.zero(f.p, f.n)
    for i in range(1, r + 1):
        out = out + f.partial(i) * g.partial(i + r) - f.partial(i + r) * g.partial(i)
    return out


def hamiltonian_map(f):
    """D_H(f) = Σ_i (∂_i f)∂_{i+r} - (∂_{i+r} f)∂_i."""
    r = f.n // 2
    pairs = []
    for i in range(1, r + 1):
        pairs.append((f.partial(i), i + r))
        pairs.append((-f.partial(i + r), i))
    return Derivation.from_terms(f.p, f.n, pairs)


def _is_toral_exponent(a, r):
    a = tuple(a)
    if not any(a):
        return True
    for i in range(r):
        e = [0] * (2 * r)
        e[i] = e[i + r] = 1
        if a == tuple(e):
            return True
    return False


class PoissonAlgebra(RestrictedAlgebra):
    """P(2r) as a restricted Lie algebra on the monomial basis.

    Args:
        r: half the number of variables.
        p: prime.
        center: "toral" (1^[p] = 1) or "unipotent" (1^[p] = 0).
    """

    def __init__(self, r, p, center="toral", verify=True):
        if center not in ("toral", "unipotent"):
            raise ValueError("center must be 'toral' or 'unipotent'")
        self.r = r
        self.n = 2 * r
        self.center = center
        R = ring(p, self.n)
        self.R = R
        W = witt_algebra(p, self.n)
        self.H = hamiltonian_matrix(r, p)
        N = R.N
        sc = np.zeros((N, N, N), dtype=np.int64)
        for i in range(N):
            # ad(x^a) = operator of D_H(x^a); sc[i, j, :] = column j
            sc[i] = W.op(self.H[:, i]).T
        pm = np.zeros((N, N), dtype=np.int64)
        for i, e in enumerate(R.monomials):
            if _is_toral_exponent(e, r) and (any(e) or center == "toral"):
                pm[i, i] = 1
        labels = ["x^" + "".join(map(str, e)) for e in R.monomials]
        super().__init__(p, labels, sc, pm, verify=verify)

    def ad(self, u):
        W = witt_algebra(self.p, self.n)
        return W.op(self.H @ np.asarray(u, dtype=np.int64) % self.p)

    def bracket(self, u, v):
        return self.ad(u) @ np.asarray(v, dtype=np.int64) % self.p

    # polynomial-level helpers
    def vec(self, f):
        return f.vector()

    def poly(self, v):
        return TruncPoly.from_vector(v, self.p, self.n)

    def bracket_poly(self, f, g):
        return self.poly(self.bracket(f.vector(), g.vector()))

    def pmap_poly(self, f):
        return self.poly(self.pmap(f.vector()))

    def element_json(self, f):
        d = f.to_json()
        d.update({"structure": "poisson", "r": self.r, "center": self.center})
        return d

    def derived(self):
        """Basis rows of P(2r)^(1)."""
        E = linalg.EchelonBasis(self.dim, self.p)
        for i in range(self.dim):
            E.add(self.ad_basis[i].T[i + 1:])
        return E.basis()


@lru_cache(maxsize=None)
def poisson_algebra(r, p, center="toral"):
    return PoissonAlgebra(r, p, center)


def build_lr(r, p):
    """The algebra with basis z, x_1, t_1..t_r and [t_i, x_1] = δ_{i1} x_1.

    p-map: t_i -> t_i, x_1 -> z, z -> z.
    """
    labels = ["z", "x1"] + ["t%d" % i for i in range(1, r + 1)]
    d = r + 2
    sc = np.zeros((d, d, d), dtype=np.int64)
    sc[2, 1, 1] = 1
    sc[1, 2, 1] = -1
    pm = np.zeros((d, d), dtype=np.int64)
    pm[0, 0] = 1
    pm[1, 0] = 1
    for i in range(2, d):
        pm[i, i] = 1
    return RestrictedAlgebra(p, labels, sc, pm)


def lr_images(r, p):
    """z -> 1, x_1 -> 1 + x_{r+1}, t_i -> x_i(1 + x_{i+r}), as polynomials."""
    n = 2 * r
    one = TruncPoly.one(p, n)
    imgs = [one, one + TruncPoly.var(r + 1, p, n)]
    for i in range(1, r + 1):
        imgs.append(TruncPoly.var(i, p, n) * (one + TruncPoly.var(i + r, p, n)))
    return imgs


def realize_l_in_poisson(r, p):
    """Realize l_r inside P(2r) and verify it is a restricted isomorphism.

    Returns:
        (basis rows of the image, map matrix with columns the images of
        z, x_1, t_1..t_r, report dict). Raises VerificationFailure on any
        mismatch.
    """
    P = poisson_algebra(r, p)
    L = build_lr(r, p)
    M = np.array([f.vector() for f in lr_images(r, p)], dtype=np.int64).T
    report = {"bracket_failures": [], "pmap_failures": []}
    for i in range(L.dim):
        for j in range(L.dim):
            lhs = P.bracket(M[:, i], M[:, j])
            rhs = M @ L.sc[i, j] % p
            if ((lhs - rhs) % p).any():
                report["bracket_failures"].append((L.labels[i], L.labels[j]))
        lhs = P.pmap(M[:, i])
        rhs = M @ L.pmap_basis[i] % p
        if ((lhs - rhs) % p).any():
            report["pmap_failures"].append(L.labels[i])
    if linalg.rank(M, p) != L.dim:
        report["injective"] = False
    else:
        report["injective"] = True
    if report["bracket_failures"] or report["pmap_failures"] or not report["injective"]:
        raise VerificationFailure("realization of l_r is not an isomorphism", witness=report)
    return M.T.copy(), M, report


class PhiLambda:
    """f -> f + λ(f)·1 for a linear form λ vanishing on P(2r)^(1)."""

    def __init__(self, lam, P):
        lam = np.asarray(lam, dtype=np.int64) % P.p
        D = P.derived()
        if (D @ lam % P.p).any():
            raise InvalidForm("λ does not vanish on the derived subalgebra")
        self.lam = lam
        self.P = P
        self.matrix = np.eye(P.dim, dtype=np.int64)
        self.matrix[0] = (self.matrix[0] + lam) % P.p  # index 0 is the constant 1

    def __call__(self, v):
        return self.matrix @ np.asarray(v, dtype=np.int64) % self.P.p


def phi_lambda(lam, P):
    return PhiLambda(lam, P)


class ContactAlgebra:
    """The ring in 2r+1 variables carrying the bracket pulled back from K''.

    The identification uses Θ_0(D) = ω_K(D), which is checked to be a
    bijection K''(n) -> 𝔄_n. Θ = c·Θ_0^{-1} with one scalar c fixed so that
    <1+x_n, x_r x_{2r}(1+x_n)> = 2 x_r x_{2r}(1+x_n); the p-map does not
    depend on c because c^{p-1} = 1.
    """

    def __init__(self, r, p):
        self.r = r
        self.p = p
        self.n = n = 2 * r + 1
        self.W = W = witt_algebra(p, n)
        self.Kpp = contact_condition(n, p)
        R = ring(p, n)
        self.R = R
        self.dim = R.N
        w = cartan_form("K", n, p)
        # evaluation of ω_K on the whole W(n) basis
        Ev = np.zeros((R.N, W.dim), dtype=np.int64)
        for (i,), g in w.components.items():
            Ev[:, (i - 1) * R.N:i * R.N] = R.mult_matrix(g.vector())
        self.Ev = Ev % p
        T0 = Ev @ self.Kpp.vectors.T % p
        if T0.shape[0] != T0.shape[1] or linalg.rank(T0, p) != R.N:
            raise ContactNormalizationError("ω_K evaluation is not a bijection from K''")
        # columns: Θ_0^{-1}(monomial) in W coordinates
        self.theta0_inv = self.Kpp.vectors.T @ linalg.inverse(T0, p) % p
        self.c = 1
        self.c = self._normalize()
        self.theta = self.theta0_inv * self.c % p

    def _normalize(self):
        p, r, n = self.p, self.r, self.n
        one = TruncPoly.one(p, n)
        f = one + TruncPoly.var(n, p, n)
        g = TruncPoly.var(r, p, n) * TruncPoly.var(2 * r, p, n) * f
        b = self.bracket(f.vector(), g.vector())  # with c = 1
        target = g.scale(2).vector()
        for c in range(1, p):
            if not ((c * b - target) % p).any():
                return c
        raise ContactNormalizationError(
            "no scalar multiple of the evaluated bracket gives 2 x_r x_2r (1+x_n)")

    def Theta(self, v):
        """W(n) coordinates of Θ(v)."""
        return self.theta @ np.asarray(v, dtype=np.int64) % self.p

    def Theta_inv(self, D):
        ci = linalg.inv_mod(self.c, self.p)
        return ci * (self.Ev @ np.asarray(D, dtype=np.int64)) % self.p

    def derivation(self, f):
        return self.W.derivation(self.Theta(f.vector()))

    def ad(self, u):
        T = self.theta
        ci = linalg.inv_mod(self.c, self.p)
        A = self.W.ad(self.Theta(u))
        return ci * (self.Ev @ (A @ T % self.p)) % self.p

    def bracket(self, u, v):
        p = self.p
        th = self.theta0_inv * self.c % p
        Du = th @ np.asarray(u, dtype=np.int64) % p
        Dv = th @ np.asarray(v, dtype=np.int64) % p
        ci = linalg.inv_mod(self.c, p)
        return ci * (self.Ev @ self.W.bracket(Du, Dv)) % p

    def pmap(self, u):
        return self.Theta_inv(self.W.pmap(self.Theta(u)))

    def poly(self, v):
        return TruncPoly.from_vector(v, self.p, self.n)

    def bracket_poly(self, f, g):
        return self.poly(self.bracket(f.vector(), g.vector()))

    def pmap_poly(self, f):
        return self.poly(self.pmap(f.vector()))

    def element_json(self, f):
        d = f.to_json()
        d.update({"structure": "contact", "r": self.r, "center": "toral"})
        return d

    def derived(self):
        """Basis rows (carrier coordinates) of K(n) = K''(n)^(1)."""
        K = derived_subalgebra(self.Kpp)
        return linalg.row_basis(self.Theta_inv(K.vectors.T).T, self.p)

    def torus_generators(self):
        """x_i(1+x_{r+i}) for i <= r, and Σ x_i x_{r+i} - x_{2r+1}."""
        p, r, n = self.p, self.r, self.n
        one = TruncPoly.one(p, n)
        gens = [TruncPoly.var(i, p, n) * (one + TruncPoly.var(i + r, p, n)) for i in range(1, r + 1)]
        s = TruncPoly.zero(p, n)
        for i in range(1, r + 1):
            s = s + TruncPoly.var(i, p, n) * TruncPoly.var(i + r, p, n)
        gens.append(s - TruncPoly.var(n, p, n))
        return gens

    def standard_torus(self):
        """1+x_n and x_i x_{r+i}, i <= r."""
        p, r, n = self.p, self.r, self.n
        gens = [TruncPoly.one(p, n) + TruncPoly.var(n, p, n)]
        gens += [TruncPoly.var(i, p, n) * TruncPoly.var(i + r, p, n) for i in range(1, r + 1)]
        return gens


@lru_cache(maxsize=None)
def build_contact(r, p):
    return ContactAlgebra(r, p)


def hamiltonian_kernel_and_image(r, p):
    """(dim ker D_H, dim im D_H, dim H''(2r))."""
    from .cartan import annihilator_of_form

    M = hamiltonian_matrix(r, p)
    rk = linalg.rank(M, p)
    return ring(p, 2 * r).N - rk, rk, annihilator_of_form("H", 2 * r, p).dim

