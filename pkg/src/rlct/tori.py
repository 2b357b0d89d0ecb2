"""Tori, centralizers, weight decompositions and the GL_n(F_p) substitutions.

Tori are given by basis rows in the coordinates of some ambient algebra
object. For W(n) and its subalgebras the ambient is the WittAlgebra; for
the contact algebra it is the ContactAlgebra carrier.
"""

import itertools

import numpy as np

from . import linalg
from .cartan import build_family
from .errors import NotInvertible, NotSemisimple, VerificationFailure
from .restricted import PClosure, is_abelian, is_torus, toral_basis
from .truncpoly import Substitution, TruncPoly, ring
from .witt import Derivation, witt_algebra


class Torus:
    """A split torus: basis rows t_1..t_mu with t_i^[p] = t_i."""

    def __init__(self, ambient, rows, label="", inside=None):
        self.ambient = ambient
        self.p = ambient.p
        self.basis = np.atleast_2d(np.asarray(rows, dtype=np.int64) % self.p)
        self.label = label
        self.inside = inside  # SubalgebraBasis the torus is meant to lie in
        self.report = {}

    @property
    def mu(self):
        return self.basis.shape[0]

    def verify(self):
        """Fill and return the verification report."""
        A, p = self.ambient, self.p
        rep = {"label": self.label, "generators": self.mu}
        rep["independent"] = linalg.rank(self.basis, p) == self.mu
        rep["abelian"] = is_abelian(self.basis, A)
        rep["generators_toral"] = all(not ((A.pmap(t) - t) % p).any() for t in self.basis)
        rep["is_torus"] = is_torus(self.basis, A)
        tb = toral_basis(self.basis, A) if rep["is_torus"] else None
        rep["split"] = tb is not None
        rep["dim"] = linalg.rank(self.basis, p)
        if self.inside is not None:
            rep["in_algebra"] = self.inside.contains_all(self.basis)
        self.report = rep
        return rep

    def ad_matrices(self, carrier=None):
        if carrier is None:
            return [self.ambient.ad(t) for t in self.basis]
        return [carrier(t) for t in self.basis]


# filtrations


def witt_f0(rows, p, n):
    """dim of span(rows) ∩ W(n)_(0) for rows in W(n) coordinates."""
    W = witt_algebra(p, n)
    rows = linalg.row_basis(rows, p)
    neg = W.degrees < 0
    return rows.shape[0] - linalg.rank(rows[:, neg], p)


def contact_degree(exp):
    """Degree with x_1..x_{2r} of weight 1 and x_{2r+1} of weight 2."""
    return sum(exp[:-1]) + 2 * exp[-1]


def contact_f0(rows, p, n):
    """dim of span(rows) ∩ K_(0), the contact filtration piece of degree >= 0.

    A carrier element f corresponds to a derivation of degree
    contact_degree - 2, so K_(0) is spanned by monomials of weight >= 2.
    """
    R = ring(p, n)
    rows = linalg.row_basis(rows, p)
    low = np.array([contact_degree(e) < 2 for e in R.monomials])
    return rows.shape[0] - linalg.rank(rows[:, low], p)


def f0(T, filtration="witt"):
    if filtration == "witt":
        return witt_f0(T.basis, T.p, T.ambient.n)
    if filtration == "contact":
        return contact_f0(T.basis, T.p, T.ambient.n)
    raise ValueError("unknown filtration %r" % filtration)


# the listed generic tori


def _xi(i, p, n):
    return TruncPoly.xi(i, p, n)


def w_torus_generators(n, p):
    return [Derivation.from_terms(p, n, [(_xi(i, p, n), i)]) for i in range(1, n + 1)]


def s_torus_generators(n, p):
    xn = TruncPoly.var(n, p, n)
    return [
        Derivation.from_terms(p, n, [(_xi(i, p, n), i), (-xn, n)]) for i in range(1, n)
    ]


def h_torus_generators(r, p, variant="corrected"):
    """(1+x_i)∂_i - x_{i+r}∂_{i+r}; the printed variant has ∂_{r+1} in the last term."""
    n = 2 * r
    gens = []
    for i in range(1, r + 1):
        first = i
        if variant == "printed" and i == r:
            first = r + 1
        gens.append(Derivation.from_terms(
            p, n, [(_xi(i, p, n), first), (-TruncPoly.var(i + r, p, n), i + r)]))
    return gens


def agt2_torus(kind, n, p, variant="corrected", strict=True):
    """The listed torus with f_0 = 0 for W(n), S(n), H(n) or K(n).

    Args:
        kind: "W", "S", "H" or "K".
        n: number of variables of the ambient W(n) (2r for H, 2r+1 for K).
        variant: for H, "corrected" or "printed".
        strict: raise VerificationFailure unless the torus is a split torus
            of the expected dimension inside the algebra with f_0 = 0.
    Returns:
        Torus with .report filled, including "f0" and "ok".
    """
    if kind == "K":
        from .poisson import build_contact

        C = build_contact((n - 1) // 2, p)
        rows = np.array([f.vector() for f in C.torus_generators()])
        T = Torus(C, rows, "K(%d) listed torus" % n)
        rep = T.verify()
        Krows = C.derived()
        E = linalg.EchelonBasis(C.dim, p)
        E.add(Krows)
        rep["in_algebra"] = not E.reduce(rows).any()
        rep["expected_dim"] = (n - 1) // 2 + 1
        rep["f0"] = contact_f0(rows, p, n)
        rep["f0_witt_filtration"] = witt_f0(np.array([C.Theta(v) for v in rows]), p, n)
    else:
        W = witt_algebra(p, n)
        if kind == "W":
            gens, expected = w_torus_generators(n, p), n
        elif kind == "S":
            gens, expected = s_torus_generators(n, p), n - 1
        elif kind == "H":
            gens, expected = h_torus_generators(n // 2, p, variant), n // 2
        else:
            raise ValueError("unknown kind %r" % (kind,))
        rows = np.array([D.vector() for D in gens])
        T = Torus(W, rows, "%s(%d) listed torus" % (kind, n), inside=build_family(kind, n, p))
        rep = T.verify()
        rep["expected_dim"] = expected
        rep["f0"] = witt_f0(rows, p, n)
    rep["ok"] = bool(
        rep["is_torus"] and rep["split"] and rep["in_algebra"]
        and rep["dim"] == rep["expected_dim"] and rep["f0"] == 0
    )
    T.report = rep
    if strict and not rep["ok"]:
        raise VerificationFailure("listed torus for %s(%d) failed" % (kind, n), witness=rep)
    return T


def h_torus(r, p):
    """Builder for H(2r): try the corrected list, fall back to the printed one.

    Returns (Torus, note) where note records which variant verified and
    whether it matches the image of the W(r) torus under D_H∘phi.
    """
    T = agt2_torus("H", 2 * r, p, "corrected", strict=False)
    note = {"variant": "corrected", "corrected_ok": T.report["ok"]}
    if not T.report["ok"]:
        Tp = agt2_torus("H", 2 * r, p, "printed", strict=False)
        note["printed_ok"] = Tp.report["ok"]
        if Tp.report["ok"]:
            T, note["variant"] = Tp, "printed"
    from .embeddings import phi_H

    E = phi_H(r, p, check_membership=False)
    img = np.array([E(D.vector()) for D in w_torus_generators(r, p)])
    Ti = Torus(witt_algebra(p, 2 * r), img, "image of W(r) torus", inside=build_family("H", 2 * r, p))
    rep = Ti.verify()
    note["image_torus_ok"] = rep["is_torus"] and rep["split"] and rep["in_algebra"]
    note["image_torus_f0"] = witt_f0(img, p, 2 * r)
    # the swap x_i <-> x_{i+r} preserves H and carries one list onto the other
    swap = _swap_conjugation(r, p)
    moved = np.array([swap(v) for v in img])
    note["conjugate_under_swap"] = bool(
        linalg.rank(np.concatenate([moved, T.basis]), p) == r
    )
    return T, note


def _swap_conjugation(r, p):
    n = 2 * r
    imgs = [TruncPoly.var(i + r if i <= r else i - r, p, n) for i in range(1, n + 1)]
    sub = Substitution(imgs)
    return lambda v: conjugate_vector(sub, v, p, n)


# conjugation by substitution automorphisms


def conjugation_matrices(sub):
    M = sub.matrix()
    Minv = sub.inverse_matrix()
    return M, Minv


def conjugate_vector(sub, v, p, n, mats=None):
    """Φ(D) = μ∘D∘μ^{-1} in W(n) coordinates."""
    W = witt_algebra(p, n)
    M, Minv = mats if mats is not None else conjugation_matrices(sub)
    O = M @ (W.op(v) @ Minv % p) % p
    R = W.R
    cols = [O[:, R.weights[j]] for j in range(n)]  # images of x_1..x_n
    return np.concatenate(cols) % p


def conjugation_matrix(sub, p, n):
    """Matrix of Φ on all of W(n)."""
    W = witt_algebra(p, n)
    mats = conjugation_matrices(sub)
    cols = [conjugate_vector(sub, W.basis_vector(e, l), p, n, mats)
            for l in range(1, n + 1) for e in W.R.monomials]
    return np.array(cols, dtype=np.int64).T


def weyl_substitution(A, p):
    """Substitution ξ_i -> Π_j ξ_j^{A_ji} and its action on the W(n) torus.

    Returns:
        (Φ matrix on W(n), induced matrix B on the torus basis
        (1+x_i)∂_i, with Φ(t_i) = Σ_k B[k, i] t_k). Raises NotInvertible
        for singular A and VerificationFailure if the torus is not
        normalized.
    """
    A = np.asarray(A, dtype=np.int64) % p
    n = A.shape[0]
    if linalg.det(A, p) == 0:
        raise NotInvertible("matrix is singular mod %d" % p)
    one = TruncPoly.one(p, n)
    imgs = []
    for i in range(n):
        prod = one
        for j in range(n):
            prod = prod * (_xi(j + 1, p, n) ** int(A[j, i]))
        imgs.append(prod - one)
    sub = Substitution(imgs)
    Phi = conjugation_matrix(sub, p, n)
    T = np.array([D.vector() for D in w_torus_generators(n, p)]).T  # columns
    img = Phi @ T % p
    B = linalg.solve(T, img, p)
    if B is None:
        raise VerificationFailure("substitution does not normalize the torus", witness=A.tolist())
    return Phi, B % p


def gl_elements(n, p):
    for entries in itertools.product(range(p), repeat=n * n):
        A = np.array(entries, dtype=np.int64).reshape(n, n)
        if linalg.det(A, p):
            yield A


# centralizers and weights


def centralizer(rows, alg, within=None):
    """{x : [t, x] = 0 for all rows t}, optionally inside the span `within`."""
    p = alg.p
    rows = np.atleast_2d(rows)
    if within is None:
        within = np.eye(alg.dim, dtype=np.int64)
    within = np.atleast_2d(within)
    if rows.size == 0:
        return linalg.row_basis(within, p)
    stack = np.concatenate([alg.ad(t) @ within.T % p for t in rows], axis=0)
    K = linalg.nullspace(stack, p)
    if K.shape[0] == 0:
        return np.zeros((0, alg.dim), dtype=np.int64)
    return linalg.row_basis(K @ within % p, p)


def rank_estimate(rows, alg, within=None):
    return centralizer(rows, alg, within).shape[0]


class WeightDecomposition:
    """Simultaneous F_p-eigenspaces of commuting operators.

    Attributes:
        spaces: dict weight tuple -> basis rows (carrier coordinates).
    """

    def __init__(self, ops, p, within=None):
        self.p = p
        ops = [np.asarray(A, dtype=np.int64) % p for A in ops]
        self.mu = len(ops)
        N = ops[0].shape[0] if ops else 0
        if within is None:
            within = np.eye(N, dtype=np.int64)
        within = np.atleast_2d(within)
        self.carrier_dim = within.shape[0]
        spaces = {}
        total = 0
        for lam in itertools.product(range(p), repeat=self.mu):
            stack = np.concatenate(
                [(A - l * np.eye(N, dtype=np.int64)) @ within.T % p for A, l in zip(ops, lam)],
                axis=0,
            )
            K = linalg.nullspace(stack, p)
            if K.shape[0]:
                spaces[lam] = linalg.row_basis(K @ within % p, p)
                total += K.shape[0]
        if total != self.carrier_dim:
            raise NotSemisimple(
                "weight spaces span %d of %d dimensions" % (total, self.carrier_dim))
        self.spaces = spaces

    def dims(self):
        return {lam: V.shape[0] for lam, V in self.spaces.items()}

    def weights(self):
        return sorted(self.spaces)

    def to_json(self):
        return [{"lambda": list(lam), "dim": int(V.shape[0])} for lam, V in sorted(self.spaces.items())]


def weight_decomposition(T, carrier="adjoint", within=None):
    """Decompose the adjoint representation (or the natural module) under T.

    carrier: "adjoint" for the ambient algebra, "module" for the truncated
    ring acted on by derivations (W(n) ambients only), or a callable t ->
    matrix.
    """
    if carrier == "adjoint":
        ops = [T.ambient.ad(t) for t in T.basis]
    elif carrier == "module":
        ops = [T.ambient.op(t) for t in T.basis]
    else:
        ops = [carrier(t) for t in T.basis]
    return WeightDecomposition(ops, T.p, within)


# the θ frame


class ThetaFrame:
    """ξ_i = 1+x_i, θ_i = ξ_i∂_i - ξ_n∂_n (i < n), θ_n = ξ_n∂_n.

    zeta is (ξ_1⋯ξ_n)^{-1}, which generates the invariants of the θ_i with
    i < n; zeta_printed is the variant ξ_1⋯ξ_{n-1}ξ_n^{-1}.
    """

    def __init__(self, n, p):
        self.n, self.p = n, p
        self.W = witt_algebra(p, n)
        xi = [_xi(i, p, n) for i in range(1, n + 1)]
        self.xi = xi
        th = [Derivation.from_terms(p, n, [(xi[i - 1], i), (-xi[n - 1], n)]) for i in range(1, n)]
        th.append(Derivation.from_terms(p, n, [(xi[n - 1], n)]))
        self.theta = th
        prod = TruncPoly.one(p, n)
        for f in xi:
            prod = prod * f
        self.zeta = prod.inverse()
        printed = TruncPoly.one(p, n)
        for f in xi[:-1]:
            printed = printed * f
        self.zeta_printed = printed * xi[-1].inverse()

    def xi_power(self, a):
        out = TruncPoly.one(self.p, self.n)
        for f, e in zip(self.xi, a):
            out = out * f ** int(e)
        return out

    def torus_rows(self):
        return np.array([t.vector() for t in self.theta[:-1]])

    def check_theta_action(self):
        """θ_i(ξ^a) = (a_i - a_n) ξ^a for all i < n and all a; θ_n(ξ^a) = a_n ξ^a."""
        bad = []
        for a in itertools.product(range(self.p), repeat=self.n):
            u = self.xi_power(a)
            for i, t in enumerate(self.theta, start=1):
                c = a[i - 1] - a[-1] if i < self.n else a[-1]
                if t.apply(u) != u.scale(c):
                    bad.append((a, i))
        return bad

    def invariants(self):
        """Basis rows of the common kernel of θ_1..θ_{n-1} on the ring."""
        ops = [self.W.op(t.vector()) for t in self.theta[:-1]]
        return linalg.nullspace(np.concatenate(ops, axis=0), self.p)

    def k_zeta(self, z=None):
        z = self.zeta if z is None else z
        return np.array([(z ** k).vector() for k in range(self.p)])

    def centralizer_expected(self):
        """Rows spanning ⊕_i k[ζ]θ_i."""
        rows = []
        for t in self.theta:
            for k in range(self.p):
                rows.append(((self.zeta ** k) * t).vector())
        return linalg.row_basis(np.array(rows), self.p)

    def centralizer(self):
        return centralizer(self.torus_rows(), self.W)

    def is_module_basis(self):
        """θ_1..θ_n form a basis of W(n) over the ring."""
        rows = []
        R = self.W.R
        for t in self.theta:
            for e in R.monomials:
                rows.append((TruncPoly.monomial(e, self.p) * t).vector())
        return linalg.rank(np.array(rows), self.p) == self.W.dim


def cartan_nilpotency_check(h_rows, T_rows, alg, samples=20, rng=None):
    """Nilpotency of h = C(T) and x^{[p]^l} ∈ T for sampled x, l = dim h - dim T."""
    p = alg.p
    h = linalg.row_basis(h_rows, p)
    T = linalg.row_basis(T_rows, p)
    rep = {"dim_h": h.shape[0], "dim_t": T.shape[0]}
    # lower central series
    cur = h
    steps = 0
    while cur.shape[0] and steps <= h.shape[0]:
        E = linalg.EchelonBasis(alg.dim, p)
        for x in h:
            A = alg.ad(x)
            E.add((A @ cur.T % p).T)
        cur = E.basis()
        steps += 1
    rep["nilpotent"] = cur.shape[0] == 0
    rep["central_series_length"] = steps
    ell = h.shape[0] - T.shape[0]
    rep["ell"] = ell
    ET = linalg.EchelonBasis(alg.dim, p)
    if T.shape[0]:
        ET.add(T)
    rng = rng if rng is not None else np.random.default_rng(0)
    fails = 0
    for _ in range(samples):
        x = rng.integers(0, p, h.shape[0]) @ h % p
        y = x
        for _ in range(ell):
            y = alg.pmap(y)
        if not ET.contains(y):
            fails += 1
    rep["samples"] = samples
    rep["pmap_into_torus_failures"] = fails
    rep["ok"] = rep["nilpotent"] and fails == 0
    return rep


def closure_dimension_survey(alg, basis_rows, samples, rng):
    """Distribution of d(x) = dim (kx)_p over random x in span(basis_rows)."""
    p = alg.p
    counts = {}
    witness = None
    for _ in range(samples):
        x = rng.integers(0, p, basis_rows.shape[0]) @ basis_rows % p
        d = PClosure(x, alg).d
        counts[d] = counts.get(d, 0) + 1
        if witness is None or d > witness[0]:
            witness = (d, x)
    return counts, witness
