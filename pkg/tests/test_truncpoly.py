import json

import pytest
from hypothesis import given, strategies as st

from rlct.errors import ArityMismatch, DivisionByZero, ModulusMismatch, RelationViolation
from rlct.truncpoly import FpScalar, Substitution, TruncPoly, ring


def polys(p=3, n=2):
    R = ring(p, n)
    return st.lists(st.integers(0, p - 1), min_size=R.N, max_size=R.N).map(
        lambda v: TruncPoly.from_vector(v, p, n))


def x(i, p=3, n=2):
    return TruncPoly.var(i, p, n)


def test_scalar_examples():
    assert FpScalar(2, 3) + FpScalar(2, 3) == FpScalar(1, 3)
    assert FpScalar(2, 5).inv() == FpScalar(3, 5)
    with pytest.raises(DivisionByZero):
        FpScalar(0, 3).inv()
    with pytest.raises(ModulusMismatch):
        FpScalar(1, 3) + FpScalar(1, 5)


def test_nonprime_rejected():
    with pytest.raises(ValueError):
        TruncPoly.zero(4, 1)


def test_truncation_and_units():
    assert (x(1) ** 2 * x(1)).is_zero()
    assert TruncPoly.xi(1, 3, 2) ** 3 == TruncPoly.one(3, 2)
    f = x(1) + x(1) * x(2)
    assert TruncPoly.one(3, 2) * f == f


def test_partials():
    assert (x(1) * x(2)).partial(1) == x(2)
    for i in (1, 2):
        for j in (1, 2):
            assert TruncPoly.xi(j, 3, 2).partial(i) == (1 if i == j else 0)
    assert x(2).partial(1).is_zero()
    with pytest.raises(IndexError):
        x(1).partial(3)
    with pytest.raises(IndexError):
        TruncPoly.var(0, 3, 2)


def test_mismatch_errors():
    with pytest.raises(ArityMismatch):
        x(1) + TruncPoly.var(1, 3, 3)
    with pytest.raises(ModulusMismatch):
        x(1) * TruncPoly.var(1, 5, 2)


def test_inverse():
    u = TruncPoly.one(3, 2) + x(1) + x(1) * x(2)
    assert u * u.inverse() == 1
    assert u ** -2 * u ** 2 == 1
    with pytest.raises(DivisionByZero):
        x(1).inverse()


@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == 0


@given(polys(), polys())
def test_leibniz(f, g):
    for i in (1, 2):
        assert (f * g).partial(i) == f.partial(i) * g + f * g.partial(i)


@given(polys(5, 2))
def test_pth_power_of_nilpotent(f):
    c = f.constant_term()
    assert ((f - c) ** 5).is_zero()


@given(polys())
def test_json_roundtrip(f):
    obj = json.loads(json.dumps(f.to_json()))
    assert TruncPoly.from_json(obj) == f


def test_substitution():
    one = TruncPoly.one(3, 2)
    ident = Substitution([x(1), x(2)])
    f = x(1) * x(2) + x(2) ** 2
    assert ident(f) == f
    s = Substitution([x(1) + x(2) + x(1) * x(2), x(2)])
    assert s.is_automorphism()
    assert s(TruncPoly.xi(1, 3, 2)) == TruncPoly.xi(1, 3, 2) * TruncPoly.xi(2, 3, 2)
    with pytest.raises(RelationViolation):
        Substitution([one + x(1), x(2)])
    assert not Substitution([x(1), x(1)]).is_automorphism()


@given(polys(), polys())
def test_substitution_is_multiplicative(f, g):
    s = Substitution([x(1) + x(2) ** 2, x(2) + x(1) * x(2)])
    assert s(f * g) == s(f) * s(g)
    assert s(f + g) == s(f) + s(g)
