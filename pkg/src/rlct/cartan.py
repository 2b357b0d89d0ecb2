"""Special, Hamiltonian and contact subalgebras of W(n), built from forms.

Every subalgebra is a canonical (reduced echelon) row basis in W(n)
coordinates. The simple algebras are obtained as derived subalgebras of
the form stabilizers, and the main dimensions are cross-checked between
two constructions rather than taken from tables.
"""

import warnings
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import ParityError, SmallPrimeWarning, VerificationFailure
from .restricted import from_subalgebra
from .witt import (
    Derivation,
    cartan_form,
    hamiltonian_matrix,
    lie_derivative,
    lie_derivative_matrix,
    witt_algebra,
)
from .truncpoly import TruncPoly, ring


class SubalgebraBasis:
    """A subspace of W(n) with a canonical echelon basis.

    Attributes:
        ambient: the WittAlgebra.
        vectors: reduced echelon rows.
        label: a short name such as "S(3)".
        restricted: True once p-closure has been verified.
        meta: free-form metadata (dimension report, μ, flags).
    """

    def __init__(self, ambient, vectors, label="", restricted=False, meta=None):
        self.ambient = ambient
        self.p = ambient.p
        self.vectors = linalg.row_basis(np.asarray(vectors, dtype=np.int64).reshape(-1, ambient.dim), self.p)
        self.label = label
        self.restricted = restricted
        self.meta = dict(meta or {})
        self._ech = None
        self._alg = None

    @property
    def dim(self):
        return self.vectors.shape[0]

    @property
    def echelon(self):
        if self._ech is None:
            self._ech = linalg.EchelonBasis(self.ambient.dim, self.p)
            self._ech.add(self.vectors)
        return self._ech

    def contains(self, v):
        return self.echelon.contains(v)

    def contains_all(self, V):
        V = np.atleast_2d(V)
        return not self.echelon.reduce(V).any() if V.size else True

    def coordinates(self, V):
        return self.echelon.coordinates(V)

    def derivations(self):
        W = self.ambient
        return [W.derivation(v) for v in self.vectors]

    def is_bracket_closed(self):
        W, p = self.ambient, self.p
        for i, b in enumerate(self.vectors):
            brs = (W.ad(b) @ self.vectors[i + 1:].T % p).T
            if brs.size and self.echelon.reduce(brs).any():
                return False
        return True

    def is_p_closed(self):
        imgs = np.array([self.ambient.pmap(b) for b in self.vectors]).reshape(self.dim, -1)
        return not self.echelon.reduce(imgs).any() if self.dim else True

    def verify_restricted(self):
        ok = self.is_bracket_closed() and self.is_p_closed()
        self.restricted = ok
        return ok

    def algebra(self):
        """The abstract RestrictedAlgebra on this basis."""
        if self._alg is None:
            self._alg = from_subalgebra(self.ambient, self.vectors, verify=False)
        return self._alg

    def equals(self, other):
        return self.dim == other.dim and self.contains_all(other.vectors)

    def is_graded(self):
        """Whether the subspace is spanned by homogeneous elements."""
        W = self.ambient
        for j in np.unique(W.degrees):
            part = np.where(W.degrees == j, self.vectors, 0)
            if part.size and self.echelon.reduce(part).any():
                return False
        return True

    def to_json(self, family=None):
        W = self.ambient
        return {
            "family": family or self.label,
            "p": self.p,
            "n": W.n,
            "dim": self.dim,
            "basis": [W.derivation(v).to_json() for v in self.vectors],
        }


def derived_subalgebra(B, label=None):
    """Span of all brackets of basis pairs."""
    W, p = B.ambient, B.p
    E = linalg.EchelonBasis(W.dim, p)
    V = B.vectors
    for i in range(len(V)):
        brs = (W.ad(V[i]) @ V[i + 1:].T % p).T
        if brs.size:
            E.add(brs)
    return SubalgebraBasis(W, E.basis(), label or "[%s,%s]" % (B.label, B.label))


def derived_series(B, k):
    for _ in range(k):
        B = derived_subalgebra(B)
    return B


def whole(p, n):
    W = witt_algebra(p, n)
    return SubalgebraBasis(W, np.eye(W.dim, dtype=np.int64), "W(%d)" % n)


def annihilator_of_form(kind, n, p):
    """{D : D.ω = 0} for the volume (S) or symplectic (H) form."""
    if kind not in ("S", "H"):
        raise ValueError("annihilator_of_form handles kinds S and H")
    if kind == "H" and n % 2:
        raise ParityError("H needs an even number of variables")
    L = lie_derivative_matrix(kind, n, p)
    W = witt_algebra(p, n)
    return SubalgebraBasis(W, linalg.nullspace(L, p), "%s''(%d)" % (kind, n))


def divergence_kernel(p, n):
    W = witt_algebra(p, n)
    return SubalgebraBasis(W, linalg.nullspace(W.divergence_matrix(), p), "ker Div")


def contact_module_basis(n, p):
    """Coordinates (rows) of the submodule 𝔄_n·ω_K of 1-forms."""
    w = cartan_form("K", n, p)
    R = ring(p, n)
    rows = [w.mul(TruncPoly.monomial(e, p)).vector() for e in R.monomials]
    return np.array(rows, dtype=np.int64) % p


def contact_condition(n, p):
    """K''(n) = {D : D.ω_K ∈ 𝔄_n ω_K}."""
    if n % 2 == 0:
        raise ParityError("the contact condition needs an odd number of variables")
    L = lie_derivative_matrix("K", n, p)
    E = linalg.EchelonBasis(L.shape[0], p)
    E.add(contact_module_basis(n, p))
    resid = E.reduce(L.T)  # row per basis derivation
    W = witt_algebra(p, n)
    return SubalgebraBasis(W, linalg.left_nullspace(resid, p), "K''(%d)" % n)


def hamiltonian_image(r, p):
    """H'(2r) = image of D_H."""
    W = witt_algebra(p, 2 * r)
    M = hamiltonian_matrix(r, p)
    return SubalgebraBasis(W, M.T, "H'(%d)" % (2 * r))


MU = {
    "W": lambda n: n,
    "S": lambda n: n - 1,
    "H": lambda n: n // 2,
    "K": lambda n: (n - 1) // 2 + 1,
}


@lru_cache(maxsize=None)
def build_family(kind, n, p, check=True):
    """Canonical basis of W(n), S(n), H(n), K(n) or K''(n) with a report.

    With check=True the dimension is confirmed by an independent second
    construction and closure under bracket and p-map is verified.
    """
    W = witt_algebra(p, n)
    meta = {"kind": kind, "n": n, "p": p}
    if kind == "W":
        B = whole(p, n)
    elif kind == "S":
        if n < 2:
            raise ValueError("S(n) needs n >= 2")
        B = derived_subalgebra(divergence_kernel(p, n), "S(%d)" % n)
        if check:
            alt = derived_subalgebra(annihilator_of_form("S", n, p))
            meta["cross_check"] = "form kernel vs divergence kernel"
            if not alt.equals(B):
                raise VerificationFailure("two constructions of S(%d) disagree" % n)
    elif kind == "H":
        if n % 2:
            raise ParityError("H needs an even number of variables")
        B = derived_series(annihilator_of_form("H", n, p), 2)
        B.label = "H(%d)" % n
        if check:
            alt = derived_subalgebra(hamiltonian_image(n // 2, p))
            meta["cross_check"] = "second derived of form stabilizer vs derived of Hamiltonian image"
            if not alt.equals(B):
                raise VerificationFailure("two constructions of H(%d) disagree" % n)
    elif kind in ("K", "K''"):
        Kpp = contact_condition(n, p)
        if check and Kpp.dim != p ** n:
            raise VerificationFailure("K''(%d) has dimension %d, expected p^n" % (n, Kpp.dim))
        if kind == "K''":
            B = Kpp
        else:
            B = derived_subalgebra(Kpp, "K(%d)" % n)
    else:
        raise ValueError("unknown family %r" % (kind,))
    if check and kind != "W" and not B.verify_restricted():
        raise VerificationFailure("%s is not a restricted subalgebra" % B.label)
    if kind == "W":
        B.restricted = True
    meta["dim"] = B.dim
    base = kind.rstrip("'")
    meta["mu"] = MU[base](n) if kind in MU else None
    meta["small_prime_warning"] = (p == 3 and ((kind == "W" and n == 1) or (kind == "H" and n == 2)))
    if meta["small_prime_warning"]:
        warnings.warn("%s(%d) at p=3 lies outside the p >= 5 hypothesis" % (kind, n),
                      SmallPrimeWarning, stacklevel=2)
    meta["graded"] = B.is_graded()
    B.meta = meta
    return B


def form_divergence_identity(n, p):
    """Check D.ω_S = Div(D) ω_S for every basis derivation; return failures."""
    w = cartan_form("S", n, p)
    W = witt_algebra(p, n)
    bad = []
    for l in range(1, n + 1):
        for e in W.R.monomials:
            D = Derivation.basis_element(e, l, p)
            if lie_derivative(D, w) != w.mul(D.divergence()):
                bad.append(W.labels[W.index(e, l)])
    return bad
