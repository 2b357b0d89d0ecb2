import numpy as np
import pytest

from rlct import linalg
from rlct.cartan import (
    SubalgebraBasis,
    annihilator_of_form,
    build_family,
    contact_condition,
    derived_subalgebra,
    divergence_kernel,
    hamiltonian_image,
)
from rlct.errors import ParityError
from rlct.truncpoly import TruncPoly
from rlct.witt import Derivation, witt_algebra


@pytest.mark.parametrize("n,p", [(2, 3), (3, 3), (2, 5)])
def test_special_dimension(n, p):
    assert build_family("S", n, p).dim == (n - 1) * (p ** n - 1)


@pytest.mark.parametrize("n,p", [(2, 3), (4, 3), (2, 5)])
def test_hamiltonian_dimension(n, p):
    assert build_family("H", n, p).dim == p ** n - 2


@pytest.mark.parametrize("n,p,expected", [(3, 3, 26), (3, 5, 125)])
def test_contact_dimension(n, p, expected):
    # p^n, minus one when p divides n + 3
    assert build_family("K", n, p).dim == expected
    assert build_family("K''", n, p).dim == p ** n


def test_parity_errors():
    with pytest.raises(ParityError):
        build_family("H", 3, 3)
    with pytest.raises(ParityError):
        contact_condition(2, 3)
    with pytest.raises(ValueError):
        build_family("S", 1, 3)
    with pytest.raises(ValueError):
        build_family("X", 2, 3)


@pytest.mark.parametrize("r,p", [(1, 3), (2, 3), (1, 5)])
def test_hamiltonian_image_and_kernel(r, p):
    n = 2 * r
    img = hamiltonian_image(r, p)
    # D_H kills only constants
    assert img.dim == p ** n - 1
    H2 = annihilator_of_form("H", n, p)
    assert H2.contains_all(img.vectors)
    assert H2.dim - img.dim == 2 * r


@pytest.mark.parametrize("kind,n", [("S", 2), ("S", 3), ("H", 2), ("H", 4), ("K", 3)])
def test_restricted_and_graded(kind, n):
    B = build_family(kind, n, 3)
    assert B.is_bracket_closed()
    assert B.is_p_closed()
    # K is graded only for the weighted contact grading
    assert B.meta["graded"] == (kind != "K")


def test_divergence_kernel_matches_form_annihilator():
    for n in (2, 3):
        assert annihilator_of_form("S", n, 3).equals(divergence_kernel(3, n))


def test_contact_condition_examples():
    p, n = 3, 3
    Kpp = contact_condition(n, p)
    D = Derivation.d(3, p, n).scale(2)
    assert Kpp.contains(D.vector())
    # ∂_1 sends the contact form to -dx_2
    assert not Kpp.contains(Derivation.d(1, p, n).vector())
    x2 = TruncPoly.var(2, p, n)
    assert Kpp.contains((Derivation.d(1, p, n) + Derivation.from_terms(p, n, [(x2, 3)])).vector())


def test_derived_of_abelian_is_zero():
    W = witt_algebra(3, 2)
    ab = SubalgebraBasis(W, np.array([Derivation.d(1, 3, 2).vector(), Derivation.d(2, 3, 2).vector()]))
    assert derived_subalgebra(ab).dim == 0


def test_json_shape():
    d = build_family("S", 2, 3).to_json("S")
    assert d["dim"] == 8
