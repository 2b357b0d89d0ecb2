import numpy as np
import pytest

from rlct.embeddings import EmbeddingMap, phi, phi_H, phi_poly, sigma, sigma_derivation
from rlct.errors import VerificationFailure
from rlct.truncpoly import TruncPoly
from rlct.witt import Derivation, witt_algebra

P = 3


def test_sigma_on_euler_terms():
    n = 3
    for j in (1, 2):
        D = Derivation.from_terms(P, n - 1, [(TruncPoly.var(j, P, n - 1), j)])
        expected = Derivation.from_terms(P, n, [(TruncPoly.var(j, P, n), j),
                                                (-TruncPoly.var(n, P, n), n)])
        img = sigma_derivation(D)
        assert img == expected
        assert img.divergence().is_zero()


def test_sigma_images_are_divergence_free():
    W = witt_algebra(P, 1)
    for i in range(W.dim):
        D = W.derivation(np.eye(W.dim, dtype=np.int64)[i])
        assert sigma_derivation(D).divergence().is_zero()


def test_phi_on_euler_terms():
    r = 2
    for j in (1, 2):
        D = Derivation.from_terms(P, r, [(TruncPoly.var(j, P, r), j)])
        assert phi_poly(D) == TruncPoly.var(j, P, 2 * r) * TruncPoly.var(j + r, P, 2 * r)
    assert phi_poly(Derivation.d(1, P, r)) == TruncPoly.var(1, P, 2 * r)


@pytest.mark.parametrize("make", [lambda: sigma(2, P), lambda: phi(1, P), lambda: phi_H(1, P)])
def test_embeddings_verify(make):
    rep = make().verify()
    assert rep["ok"] and rep["injective"] and rep["image_in_target"]


def test_broken_map_reports_witness():
    good = phi(1, P)
    M = good.matrix.copy()
    M[:, [0, 1]] = M[:, [1, 0]]
    bad = EmbeddingMap(good.source, good.target, M, "swapped")
    with pytest.raises(VerificationFailure) as exc:
        bad.verify()
    w = exc.value.witness
    assert not w["ok"]
    assert w["bracket_failures"] or w["pmap_failures"]
    rep = bad.verify(raise_on_failure=False)
    assert rep["label"] == "swapped" and not rep["ok"]
