"""Explicit restricted embeddings W(n-1) -> S(n), W(r) -> P(2r), W(r) -> H(2r).

Each map is materialized as a matrix between coordinate spaces and
verified exhaustively on basis pairs (brackets) and basis elements
(p-maps). Failures carry a diff report naming the offending inputs.
"""

import numpy as np

from . import linalg
from .cartan import build_family
from .errors import VerificationFailure
from .poisson import poisson_algebra
from .truncpoly import TruncPoly
from .witt import Derivation, hamiltonian_matrix, witt_algebra


class EmbeddingMap:
    """A linear map between restricted algebras, given by its matrix.

    Args:
        source, target: algebra objects (coordinate protocol).
        matrix: target.dim x source.dim array; column j is the image of
            source basis vector j.
        label: name used in reports.
        target_subspace: optional object with contains_all(rows), used to
            check that the image lands in a named subalgebra.
    """

    def __init__(self, source, target, matrix, label, target_subspace=None):
        self.source = source
        self.target = target
        self.p = source.p
        self.matrix = np.asarray(matrix, dtype=np.int64) % self.p
        self.label = label
        self.target_subspace = target_subspace
        self.report = None

    def __call__(self, v):
        return self.matrix @ np.asarray(v, dtype=np.int64) % self.p

    def verify(self, raise_on_failure=True):
        """Exhaustive bracket and p-map preservation, injectivity, membership."""
        S, T, M, p = self.source, self.target, self.matrix, self.p
        bad_br, bad_pm = [], []
        for i in range(S.dim):
            lhs = M @ S.ad(_unit(i, S.dim)) % p  # columns: M[e_i, e_j]
            rhs = T.ad(M[:, i]) @ M % p          # columns: [M e_i, M e_j]
            diff = np.nonzero(((lhs - rhs) % p).any(axis=0))[0]
            for j in diff:
                if j > i:
                    bad_br.append({
                        "pair": [_label(S, i), _label(S, j)],
                        "image_of_bracket": lhs[:, j].tolist(),
                        "bracket_of_images": rhs[:, j].tolist(),
                    })
        for i in range(S.dim):
            e = _unit(i, S.dim)
            lhs = M @ S.pmap(e) % p
            rhs = T.pmap(M[:, i])
            if ((lhs - rhs) % p).any():
                bad_pm.append({
                    "element": _label(S, i),
                    "image_of_pmap": lhs.tolist(),
                    "pmap_of_image": rhs.tolist(),
                })
        rank = linalg.rank(M, p)
        inside = True
        if self.target_subspace is not None:
            inside = self.target_subspace.contains_all(M.T)
        self.report = {
            "label": self.label,
            "source_dim": S.dim,
            "rank": rank,
            "injective": rank == S.dim,
            "bracket_pairs_checked": S.dim * (S.dim - 1) // 2,
            "bracket_failures": bad_br,
            "pmap_elements_checked": S.dim,
            "pmap_failures": bad_pm,
            "image_in_target": inside,
        }
        ok = not bad_br and not bad_pm and rank == S.dim and inside
        self.report["ok"] = ok
        if not ok and raise_on_failure:
            raise VerificationFailure("%s failed verification" % self.label, witness=self.report)
        return self.report


def _unit(i, d):
    e = np.zeros(d, dtype=np.int64)
    e[i] = 1
    return e


def _label(alg, i):
    labels = getattr(alg, "labels", None)
    return labels[i] if labels else str(i)


def _lift(f, n):
    """View a polynomial in n-1 variables as one in n variables."""
    return f.embed(n, list(range(1, f.n + 1)))


def sigma_derivation(D):
    """D -> D - Div(D) x_n ∂_n, for D in W(n-1) viewed inside W(n)."""
    n = D.n + 1
    p = D.p
    coeffs = [_lift(f, n) for f in D.coeffs] + [TruncPoly.zero(p, n)]
    div = _lift(D.divergence(), n)
    coeffs[n - 1] = coeffs[n - 1] - div * TruncPoly.var(n, p, n)
    return Derivation(coeffs)


def sigma(n, p, check_membership=True):
    """W(n-1) -> S(n)."""
    if n < 2:
        raise ValueError("sigma needs n >= 2")
    S = witt_algebra(p, n - 1)
    T = witt_algebra(p, n)
    cols = [sigma_derivation(S.derivation(_unit(i, S.dim))).vector() for i in range(S.dim)]
    target = build_family("S", n, p) if check_membership else None
    return EmbeddingMap(S, T, np.array(cols).T, "sigma_%d" % n, target)


def phi_poly(D):
    """Σ f_j ∂_j -> Σ x_j f_j(x_{r+1}, ..., x_{2r}) in 2r variables."""
    r, p = D.n, D.p
    out = TruncPoly.zero(p, 2 * r)
    shift = list(range(r + 1, 2 * r + 1))
    for j, f in enumerate(D.coeffs, start=1):
        out = out + TruncPoly.var(j, p, 2 * r) * f.embed(2 * r, shift)
    return out


def phi(r, p):
    """W(r) -> P(2r)."""
    S = witt_algebra(p, r)
    P = poisson_algebra(r, p)
    cols = [phi_poly(S.derivation(_unit(i, S.dim))).vector() for i in range(S.dim)]
    return EmbeddingMap(S, P, np.array(cols).T, "phi_%d" % r, _Everything())


def phi_H(r, p, check_membership=True):
    """D_H ∘ phi: W(r) -> H(2r)."""
    base = phi(r, p)
    M = hamiltonian_matrix(r, p) @ base.matrix % p
    target = build_family("H", 2 * r, p) if check_membership else None
    return EmbeddingMap(base.source, witt_algebra(p, 2 * r), M, "D_H o phi_%d" % r, target)


class _Everything:
    def contains_all(self, rows):
        return True
