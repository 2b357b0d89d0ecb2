"""Generic machinery for restricted Lie algebras over F_p.

Functions here accept any "algebra" object exposing

    p, dim, bracket(u, v), pmap(u), ad(u)

on coordinate vectors. WittAlgebra, RestrictedAlgebra and the Poisson
algebra all satisfy this.
"""

import numpy as np

from . import linalg, upoly
from .errors import ClosureError, VerificationFailure


class RestrictedAlgebra:
    """A restricted Lie algebra given by structure constants and basis p-map.

    Args:
        p: prime.
        labels: basis labels.
        sc: array of shape (dim, dim, dim); sc[i, j, k] is the e_k coefficient
            of [e_i, e_j].
        pmap_basis: array of shape (dim, dim); row i is e_i^[p].
        verify: check antisymmetry, Jacobi and ad(e_i^[p]) = (ad e_i)^p.
    """

    def __init__(self, p, labels, sc, pmap_basis, verify=True):
        self.p = p
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.sc = np.asarray(sc, dtype=np.int64) % p
        self.pmap_basis = np.asarray(pmap_basis, dtype=np.int64).reshape(self.dim, self.dim) % p
        if self.sc.shape != (self.dim,) * 3:
            raise ValueError("structure constant array has the wrong shape")
        self._adb = None
        if verify:
            self.verify()

    @property
    def ad_basis(self):
        # ad_basis[i] is the matrix of ad e_i
        if self._adb is None:
            self._adb = np.transpose(self.sc, (0, 2, 1)).copy()
        return self._adb

    def bracket(self, u, v):
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return np.einsum("i,j,ijk->k", u, v, self.sc) % self.p

    def ad(self, u):
        return np.tensordot(np.asarray(u, dtype=np.int64), self.ad_basis, axes=1) % self.p

    def pmap(self, u):
        return p_power_general(u, self)

    def basis_vector(self, i):
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def verify(self):
        p, d = self.p, self.dim
        sc = self.sc
        if ((sc + np.transpose(sc, (1, 0, 2))) % p).any():
            raise VerificationFailure("structure constants are not antisymmetric")
        if np.any(sc[np.arange(d), np.arange(d)]):
            raise VerificationFailure("[e_i, e_i] is nonzero")
        # float64 matmuls are exact here: every partial sum stays far below 2^53
        scf = sc.astype(np.float64)
        rows = scf.reshape(d, d * d)
        pairs = scf.reshape(d * d, d)
        for i in range(d):
            # [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j], indexed (j, k, l)
            t1 = (scf[i] @ rows).reshape(d, d, d)
            t2 = (pairs @ scf[:, i, :]).reshape(d, d, d)
            t3 = np.transpose((scf[:, i, :] @ rows).reshape(d, d, d), (1, 0, 2))
            bad = np.rint(t1 + t2 + t3).astype(np.int64) % p
            if bad.any():
                j, k, l = np.argwhere(bad)[0]
                raise VerificationFailure(
                    "Jacobi identity fails", witness={"triple": [int(i), int(j), int(k)]})
        for i in range(d):
            lhs = self.ad(self.pmap_basis[i])
            rhs = linalg.matpow(self.ad_basis[i], p, p)
            if ((lhs - rhs) % p).any():
                raise VerificationFailure(
                    "ad of a basis p-th power differs from the p-th power of ad",
                    witness={"basis": self.labels[i]})

    def to_json(self):
        sc = []
        for i, j, k in np.argwhere(self.sc):
            if i < j:
                sc.append([int(i), int(j), int(k), int(self.sc[i, j, k])])
        return {
            "dim": self.dim,
            "labels": self.labels,
            "sc": sc,
            "pmap": [[i, [int(c) for c in self.pmap_basis[i]]] for i in range(self.dim)],
        }

    @classmethod
    def from_json(cls, obj, p, verify=True):
        d = obj["dim"]
        sc = np.zeros((d, d, d), dtype=np.int64)
        for i, j, k, c in obj["sc"]:
            sc[i, j, k] = c
            sc[j, i, k] = -c
        pm = np.zeros((d, d), dtype=np.int64)
        for i, row in obj["pmap"]:
            pm[i] = row
        return cls(p, obj["labels"], sc, pm, verify=verify)


def from_subalgebra(ambient, rows, labels=None, verify=True):
    """Abstract algebra on the span of rows (a basis in ambient coordinates).

    The rows are put in reduced echelon form first so the basis is
    canonical. Raises ClosureError when the span is not closed under the
    ambient bracket or p-map.
    """
    p = ambient.p
    B = linalg.row_basis(rows, p)
    d = B.shape[0]
    E = linalg.EchelonBasis(B.shape[1], p)
    E.add(B)
    sc = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        brs = (ambient.ad(B[i]) @ B[i + 1:].T % p).T
        if brs.shape[0] and E.reduce(brs).any():
            raise ClosureError("span is not closed under the bracket")
        if brs.shape[0]:
            coords = E.coordinates(brs)
            sc[i, i + 1:] = coords
            sc[i + 1:, i] = -coords
    pm = np.array([ambient.pmap(b) for b in B], dtype=np.int64).reshape(d, -1)
    if d and E.reduce(pm).any():
        raise ClosureError("span is not closed under the p-map")
    pmc = E.coordinates(pm) if d else np.zeros((0, 0), dtype=np.int64)
    if labels is None:
        labels = ["b%d" % i for i in range(d)]
    alg = RestrictedAlgebra(p, labels, sc % p, pmc, verify=verify)
    alg.embedding = B
    return alg


def jacobson_s_terms(x, y, alg):
    """The s_i(x, y), i = 1..p-1, from ad(λx + y)^{p-1}(x) = Σ i s_i λ^{i-1}."""
    p = alg.p
    ax, ay = alg.ad(x), alg.ad(y)
    # coeffs[k] = coefficient of λ^k
    coeffs = [np.asarray(x, dtype=np.int64) % p]
    for _ in range(p - 1):
        new = [ay @ c % p for c in coeffs] + [np.zeros_like(coeffs[0])]
        for k, c in enumerate(coeffs):
            new[k + 1] = (new[k + 1] + ax @ c) % p
        coeffs = new
    return [coeffs[i - 1] * linalg.inv_mod(i, p) % p for i in range(1, p)]


def p_power_general(x, alg):
    """p-map of an arbitrary element from the basis p-map, term by term.

    Uses (c e)^[p] = c^p e^[p] = c e^[p] over F_p and Jacobson's formula
    to add one basis term at a time.
    """
    p = alg.p
    x = np.asarray(x, dtype=np.int64) % p
    acc = np.zeros_like(x)
    out = np.zeros_like(x)
    for b in np.nonzero(x)[0]:
        c = int(x[b])
        y = np.zeros_like(x)
        y[b] = c
        out = out + c * alg.pmap_basis[b]
        if acc.any():
            for s in jacobson_s_terms(acc, y, alg):
                out = out + s
        acc = acc + y
        out %= p
    return out % p


def iterate_pmap(x, alg, k):
    for _ in range(k):
        x = alg.pmap(x)
    return x


class PPolynomial:
    """Σ c_i T^{p^i} with F_p coefficients c_0..c_m."""

    def __init__(self, coeffs, p):
        c = [int(a) % p for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)
        self.p = p

    @property
    def degree(self):
        """p-degree m (the polynomial has ordinary degree p^m)."""
        return len(self.coeffs) - 1

    @property
    def monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def ordinary(self):
        """Coefficient tuple of the ordinary polynomial in T."""
        if not self.coeffs:
            return ()
        out = [0] * (self.p ** self.degree + 1)
        for i, c in enumerate(self.coeffs):
            out[self.p ** i] = c
        return upoly.trim(out, self.p)

    def evaluate_on(self, x, alg):
        """Σ c_i x^{[p]^i} in the algebra."""
        out = np.zeros(alg.dim, dtype=np.int64)
        y = np.asarray(x, dtype=np.int64) % self.p
        for i, c in enumerate(self.coeffs):
            out = (out + c * y) % self.p
            if i + 1 < len(self.coeffs):
                y = alg.pmap(y)
        return out

    def shift(self, k):
        """Compose with T^{p^k}: Σ c_i T^{p^{i+k}}."""
        return PPolynomial((0,) * k + self.coeffs, self.p)

    def __eq__(self, other):
        return isinstance(other, PPolynomial) and (self.p, self.coeffs) == (other.p, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return upoly.to_str(self.ordinary())

    def to_json(self):
        return {"p": self.p, "coeffs": list(self.coeffs)}


class PClosure:
    """The p-subalgebra (kx)_p with its Fitting decomposition.

    Attributes:
        x: the element.
        powers: rows x, x^[p], ..., x^{[p]^{d-1}} (a basis of (kx)_p).
        d: dim (kx)_p.
        relation: coefficients a_0..a_{d-1} with x^{[p]^d} = Σ a_i x^{[p]^i}.
        F: d x d matrix of the p-map on (kx)_p in the basis `powers`
            (columns are images).
        torus_part: basis rows of the part where the p-map is bijective.
        nil_part: basis rows of the part where it is nilpotent.
    """

    def __init__(self, x, alg):
        p = alg.p
        self.p = p
        self.x = np.asarray(x, dtype=np.int64) % p
        E = linalg.EchelonBasis(alg.dim, p)
        powers = []
        y = self.x
        while y.any() and E.add(y):
            powers.append(y)
            y = alg.pmap(y)
        self.d = len(powers)
        self.powers = np.array(powers, dtype=np.int64).reshape(self.d, alg.dim)
        self.next_power = y
        if self.d:
            rel = linalg.solve(self.powers.T, y, p)
            if rel is None:
                raise VerificationFailure("p-power sequence left its own span")
        else:
            rel = np.zeros(0, dtype=np.int64)
        self.relation = rel % p
        d = self.d
        F = np.zeros((d, d), dtype=np.int64)
        for i in range(d - 1):
            F[i + 1, i] = 1
        if d:
            F[:, d - 1] = self.relation
        self.F = F
        Fm = linalg.matpow(F, d, p)
        im = linalg.row_basis(Fm.T, p)  # column space of F^d, as rows
        ker = linalg.nullspace(Fm, p)
        self._im_coords = im
        self._ker_coords = ker
        self.torus_part = linalg.matmul(im, self.powers, p) if d else self.powers
        self.nil_part = linalg.matmul(ker, self.powers, p) if d else self.powers

    def jordan_chevalley(self):
        """(x_s, x_n) with x_s in the torus part and x_n in the nil part."""
        p = self.p
        if not self.d:
            return self.x.copy(), self.x.copy()
        # x has coordinate e_0 in the powers basis
        A = np.concatenate([self._im_coords, self._ker_coords], axis=0).T
        e0 = np.zeros(self.d, dtype=np.int64)
        e0[0] = 1
        c = linalg.solve(A, e0, p)
        k = self._im_coords.shape[0]
        xs_c = linalg.matmul(c[:k], self._im_coords, p) if k else np.zeros(self.d, dtype=np.int64)
        xs = linalg.matmul(xs_c, self.powers, p)
        return xs, (self.x - xs) % p

    def minimal_polynomial(self):
        """Monic p-polynomial T^{p^d} - Σ a_i T^{p^i} annihilating x."""
        c = [(-a) % self.p for a in self.relation] + [1]
        return PPolynomial(c, self.p)


def p_closure(x, alg):
    return PClosure(x, alg)


def jordan_chevalley(x, alg):
    return PClosure(x, alg).jordan_chevalley()


def minimal_p_polynomial(x, alg):
    return PClosure(x, alg).minimal_polynomial()


def d_of(x, alg):
    return PClosure(x, alg).d


def _pmap_matrix_on(V, alg):
    """Matrix (in V-coordinates, rows) of the p-map restricted to span V.

    Assumes V is abelian and p-closed, so the p-map is F_p-linear there.
    Returns None when V is not p-closed.
    """
    p = alg.p
    E = linalg.EchelonBasis(alg.dim, p)
    E.add(V)
    imgs = np.array([alg.pmap(v) for v in V], dtype=np.int64).reshape(len(V), -1)
    if E.reduce(imgs).any():
        return None
    # coordinates relative to V itself
    C = linalg.solve(V.T, imgs.T, p)
    return C  # column j = coordinates of v_j^[p]


def is_abelian(V, alg):
    V = np.atleast_2d(V)
    p = alg.p
    for i in range(len(V)):
        A = alg.ad(V[i])
        if (A @ V[i + 1:].T % p).any():
            return False
    return True


def is_torus(V, alg):
    """Abelian, p-closed, with bijective p-map."""
    V = linalg.row_basis(np.atleast_2d(V), alg.p)
    if V.shape[0] == 0:
        return True
    if not is_abelian(V, alg):
        return False
    C = _pmap_matrix_on(V, alg)
    if C is None:
        return False
    return linalg.rank(C, alg.p) == V.shape[0]


def toral_basis(V, alg):
    """F_p-basis of {t in V : t^[p] = t} if it spans V, else None."""
    p = alg.p
    V = linalg.row_basis(np.atleast_2d(V), p)
    if V.shape[0] == 0:
        return V
    if not is_torus(V, alg):
        return None
    C = _pmap_matrix_on(V, alg)
    K = linalg.nullspace((C - np.eye(len(V), dtype=np.int64)) % p, p)
    if K.shape[0] != V.shape[0]:
        return None
    return linalg.matmul(K, V, p)


def is_p_nilpotent(x, alg, modulo=None):
    """Whether some x^{[p]^k} is 0 (or lies in the span `modulo`)."""
    p = alg.p
    E = linalg.EchelonBasis(alg.dim, p)
    if modulo is not None and len(modulo):
        E.add(modulo)
    y = np.asarray(x, dtype=np.int64) % p
    for _ in range(alg.dim + 1):
        if E.contains(y):
            return True
        y = alg.pmap(y)
    return E.contains(y)


def is_p_unipotent(V, alg, modulo=None):
    """Every basis element of V is p-nilpotent (modulo an ideal if given)."""
    return all(is_p_nilpotent(v, alg, modulo) for v in np.atleast_2d(V))


def adjoint_pmap_consistency(x, alg):
    """ad(x^[p]) == (ad x)^p."""
    p = alg.p
    return not ((alg.ad(alg.pmap(x)) - linalg.matpow(alg.ad(x), p, p)) % p).any()
