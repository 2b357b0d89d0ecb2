"""The Witt algebra W(n) of derivations of the truncated ring, and forms.

Two layers live here. Derivation and DiffForm are explicit sparse objects
meant for readable computations and serialization. WittAlgebra is the
coordinate layer used for bulk linear algebra: an element is a vector of
length n*p^n whose l-th block of length p^n holds the coefficients of the
∂_{l+1} component.
"""

import itertools
from functools import lru_cache

import numpy as np

from .errors import ArityMismatch, DegreeError, ModulusMismatch, ParityError
from .truncpoly import TruncPoly, ring


class Derivation:
    """D = Σ f_j ∂_j with f_j truncated polynomials."""

    __slots__ = ("p", "n", "coeffs")

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a derivation needs n >= 1 coefficients")
        self.p = coeffs[0].p
        self.n = len(coeffs)
        for f in coeffs:
            if f.p != self.p:
                raise ModulusMismatch("coefficient moduli differ")
            if f.n != self.n:
                raise ArityMismatch("coefficient in %d variables, expected %d" % (f.n, self.n))
        self.coeffs = coeffs

    @classmethod
    def zero(cls, p, n):
        return cls([TruncPoly.zero(p, n)] * n)

    @classmethod
    def basis_element(cls, exp, i, p):
        """x^exp ∂_i with 1-based i."""
        n = len(exp)
        if not 1 <= i <= n:
            raise IndexError("∂ index %d out of range" % i)
        c = [TruncPoly.zero(p, n)] * n
        c[i - 1] = TruncPoly.monomial(exp, p)
        return cls(c)

    @classmethod
    def d(cls, i, p, n):
        return cls.basis_element((0,) * n, i, p)

    @classmethod
    def from_terms(cls, p, n, pairs):
        """Build Σ f ∂_i from (f, i) pairs."""
        c = [TruncPoly.zero(p, n)] * n
        for f, i in pairs:
            c[i - 1] = c[i - 1] + f
        return cls(c)

    def _check(self, other):
        if self.p != other.p:
            raise ModulusMismatch("moduli differ")
        if self.n != other.n:
            raise ArityMismatch("variable counts differ")

    def apply(self, f):
        if f.p != self.p or f.n != self.n:
            raise ArityMismatch("polynomial does not live in this ring")
        out = TruncPoly.zero(self.p, self.n)
        for j, c in enumerate(self.coeffs):
            if c.terms:
                out = out + c * f.partial(j + 1)
        return out

    __call__ = apply

    def bracket(self, other):
        self._check(other)
        return Derivation(
            [self.apply(g) - other.apply(f) for f, g in zip(self.coeffs, other.coeffs)]
        )

    def p_power(self):
        """Operator p-th power, evaluated on the generators x_1..x_n."""
        out = []
        for j in range(1, self.n + 1):
            u = TruncPoly.var(j, self.p, self.n)
            for _ in range(self.p):
                u = self.apply(u)
            out.append(u)
        return Derivation(out)

    def divergence(self):
        out = TruncPoly.zero(self.p, self.n)
        for j, f in enumerate(self.coeffs):
            out = out + f.partial(j + 1)
        return out

    def __add__(self, other):
        self._check(other)
        return Derivation([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return Derivation([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Derivation([-a for a in self.coeffs])

    def scale(self, c):
        return Derivation([a.scale(c) for a in self.coeffs])

    def __mul__(self, c):
        if isinstance(c, TruncPoly):
            return Derivation([c * a for a in self.coeffs])
        return self.scale(int(c))

    __rmul__ = __mul__

    def is_zero(self):
        return all(f.is_zero() for f in self.coeffs)

    def graded_parts(self):
        """Map degree j -> homogeneous component of degree j (|a| = j+1)."""
        degs = sorted({sum(e) - 1 for f in self.coeffs for e in f.terms})
        return {
            j: Derivation([f.homogeneous_part(j + 1) for f in self.coeffs]) for j in degs
        }

    def filtration_level(self):
        """Smallest degree with nonzero component; None for the zero derivation."""
        degs = [sum(e) - 1 for f in self.coeffs for e in f.terms]
        return min(degs) if degs else None

    def vector(self):
        return np.concatenate([f.vector() for f in self.coeffs])

    @classmethod
    def from_vector(cls, vec, p, n):
        N = p ** n
        vec = np.asarray(vec)
        return cls([TruncPoly.from_vector(vec[l * N:(l + 1) * N], p, n) for l in range(n)])

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        parts = ["(%r)*d%d" % (f, j + 1) for j, f in enumerate(self.coeffs) if f.terms]
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"p": self.p, "n": self.n, "coeffs": [f.to_json() for f in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        return cls([TruncPoly.from_json(c) for c in obj["coeffs"]])


def bracket(D, E):
    return D.bracket(E)


def p_power(D):
    return D.p_power()


def divergence(D):
    return D.divergence()


class WittAlgebra:
    """Coordinate model of W(n) over F_p. Use witt_algebra(p, n)."""

    def __init__(self, p, n):
        self.p = p
        self.n = n
        self.R = ring(p, n)
        self.N = self.R.N
        self.dim = n * self.N
        mdeg = self.R.degrees
        self.degrees = np.concatenate([mdeg - 1] * n)
        self.labels = [
            "x^%s d%d" % ("".join(map(str, e)), l + 1)
            for l in range(n)
            for e in self.R.monomials
        ]

    def index(self, exp, i):
        return (i - 1) * self.N + self.R.index(exp)

    def basis_vector(self, exp, i):
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.index(exp, i)] = 1
        return v

    def blocks(self, v):
        return np.asarray(v, dtype=np.int64).reshape(self.n, self.N)

    def op(self, v):
        """N x N matrix of the derivation v acting on the truncated ring."""
        B = self.blocks(v)
        M = np.zeros((self.N, self.N), dtype=np.int64)
        for l in range(self.n):
            if B[l].any():
                M += self.R.mult_matrix(B[l]) @ self.R.deriv[l]
        return M % self.p

    def bracket(self, u, v):
        U, V = self.blocks(u), self.blocks(v)
        Ou, Ov = self.op(u), self.op(v)
        out = (Ou @ V.T - Ov @ U.T).T % self.p
        return out.reshape(-1)

    def pmap(self, v):
        O = self.op(v)
        out = np.zeros((self.n, self.N), dtype=np.int64)
        for j in range(self.n):
            u = np.zeros(self.N, dtype=np.int64)
            u[self.R.weights[j]] = 1  # x_{j+1}
            for _ in range(self.p):
                u = O @ u % self.p
            out[j] = u
        return out.reshape(-1)

    def ad(self, v):
        """dim x dim matrix of ad v."""
        B = self.blocks(v)
        O = self.op(v)
        A = np.zeros((self.dim, self.dim), dtype=np.int64)
        N = self.N
        for l in range(self.n):
            A[l * N:(l + 1) * N, l * N:(l + 1) * N] += O
            for k in range(self.n):
                dkf = self.R.deriv[k] @ B[l] % self.p
                if dkf.any():
                    A[l * N:(l + 1) * N, k * N:(k + 1) * N] -= self.R.mult_matrix(dkf)
        return A % self.p

    def apply(self, v, f):
        return self.op(v) @ np.asarray(f, dtype=np.int64) % self.p

    def divergence_matrix(self):
        return np.concatenate(list(self.R.deriv), axis=1) % self.p

    def derivation(self, v):
        return Derivation.from_vector(v, self.p, self.n)

    def vector(self, D):
        return D.vector()

    def graded_basis(self, j):
        return np.nonzero(self.degrees == j)[0]

    def filtration_mask(self, j):
        """Coordinates spanning the filtration piece of degrees >= j."""
        return self.degrees >= j


@lru_cache(maxsize=None)
def witt_algebra(p, n):
    return WittAlgebra(p, n)


# differential forms


def perm_sign(seq):
    """Sign of the permutation sorting seq, or 0 if seq has repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class DiffForm:
    """An r-form Σ g_I dx_I with I ranging over sorted r-subsets of 1..n."""

    __slots__ = ("p", "n", "degree", "components")

    def __init__(self, p, n, degree, components=None):
        if not 0 <= degree <= n:
            raise DegreeError("degree %d outside 0..%d" % (degree, n))
        self.p, self.n, self.degree = p, n, degree
        comp = {}
        for I, g in (components or {}).items():
            I = tuple(I)
            if len(I) != degree or list(I) != sorted(set(I)):
                raise DegreeError("subset %r is not a sorted %d-subset" % (I, degree))
            if not g.is_zero():
                comp[I] = comp.get(I, TruncPoly.zero(p, n)) + g
                if comp[I].is_zero():
                    del comp[I]
        self.components = comp

    @classmethod
    def zero(cls, p, n, degree):
        return cls(p, n, degree)

    @classmethod
    def function(cls, g):
        return cls(g.p, g.n, 0, {(): g})

    @classmethod
    def dx(cls, i, p, n):
        return cls(p, n, 1, {(i,): TruncPoly.one(p, n)})

    @classmethod
    def from_unsorted(cls, p, n, idx, g):
        """g dx_{idx[0]}∧... with arbitrary index order."""
        s = perm_sign(idx)
        if s == 0:
            return cls.zero(p, n, len(idx))
        return cls(p, n, len(idx), {tuple(sorted(idx)): g.scale(s)})

    def _check(self, other):
        if (self.p, self.n) != (other.p, other.n):
            raise ArityMismatch("forms live over different rings")

    def __add__(self, other):
        self._check(other)
        if self.degree != other.degree:
            raise DegreeError("cannot add forms of degrees %d and %d" % (self.degree, other.degree))
        comp = dict(self.components)
        for I, g in other.components.items():
            comp[I] = comp[I] + g if I in comp else g
        return DiffForm(self.p, self.n, self.degree, comp)

    def __neg__(self):
        return DiffForm(self.p, self.n, self.degree, {I: -g for I, g in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def mul(self, g):
        """Multiply by a function g."""
        return DiffForm(self.p, self.n, self.degree, {I: g * h for I, h in self.components.items()})

    def scale(self, c):
        return DiffForm(self.p, self.n, self.degree, {I: h.scale(c) for I, h in self.components.items()})

    def is_zero(self):
        return not self.components

    def coefficient(self, I):
        return self.components.get(tuple(I), TruncPoly.zero(self.p, self.n))

    def __eq__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        return (self.p, self.n, self.degree, self.components) == (
            other.p, other.n, other.degree, other.components)

    def __hash__(self):
        return hash((self.degree, frozenset(self.components.items())))

    def __repr__(self):
        if not self.components:
            return "0"
        return " + ".join(
            "(%r)%s" % (self.components[I], "".join("dx%d" % i for i in I) or "")
            for I in sorted(self.components)
        )

    def vector(self):
        """Coordinates: components in lex order of subsets, each a ring vector."""
        subsets = list(itertools.combinations(range(1, self.n + 1), self.degree))
        return np.concatenate([self.coefficient(I).vector() for I in subsets])

    def to_json(self):
        return {
            "degree": self.degree,
            "components": [
                {"subset": list(I), "poly": self.components[I].to_json()}
                for I in sorted(self.components)
            ],
        }

    @classmethod
    def from_json(cls, obj, p, n):
        comp = {tuple(c["subset"]): TruncPoly.from_json(c["poly"]) for c in obj["components"]}
        return cls(p, n, obj["degree"], comp)


def wedge(a, b):
    a._check(b)
    deg = a.degree + b.degree
    if deg > a.n:
        raise DegreeError("wedge degree %d exceeds n=%d" % (deg, a.n))
    out = DiffForm.zero(a.p, a.n, deg)
    for I, f in a.components.items():
        for J, g in b.components.items():
            out = out + DiffForm.from_unsorted(a.p, a.n, I + J, f * g)
    return out


def exterior_d(u):
    """du = Σ ∂_i(u) dx_i for a function u."""
    return DiffForm(u.p, u.n, 1, {(i,): u.partial(i) for i in range(1, u.n + 1)})


def eval_one_form(w, D):
    """w(D) = Σ g_i D(x_i) for w = Σ g_i dx_i."""
    if w.degree != 1:
        raise DegreeError("expected a 1-form")
    out = TruncPoly.zero(w.p, w.n)
    for (i,), g in w.components.items():
        out = out + g * D.coeffs[i - 1]
    return out


def _lie_one_form(E, w):
    # (E.w)(D) = E(w(D)) - w([E, D]) evaluated on the basis ∂_j
    comp = {}
    for j in range(1, w.n + 1):
        dj = Derivation.d(j, w.p, w.n)
        comp[(j,)] = E.apply(eval_one_form(w, dj)) - eval_one_form(w, E.bracket(dj))
    return DiffForm(w.p, w.n, 1, comp)


def lie_derivative(E, w):
    """Action of the derivation E on the form w."""
    if (E.p, E.n) != (w.p, w.n):
        raise ArityMismatch("derivation and form live over different rings")
    if w.degree == 0:
        return DiffForm.function(E.apply(w.coefficient(())))
    out = DiffForm.zero(w.p, w.n, w.degree)
    for I, g in w.components.items():
        # factors f_1 = g dx_{i1}, f_k = dx_{ik}
        factors = [DiffForm(w.p, w.n, 1, {(I[0],): g})]
        factors += [DiffForm.dx(i, w.p, w.n) for i in I[1:]]
        for k in range(len(factors)):
            term = None
            for m, f in enumerate(factors):
                piece = _lie_one_form(E, f) if m == k else f
                term = piece if term is None else wedge(term, piece)
            out = out + term
    return out


def cartan_form(kind, n, p):
    """The volume, symplectic and contact forms."""
    if kind == "S":
        return DiffForm(p, n, n, {tuple(range(1, n + 1)): TruncPoly.one(p, n)})
    if kind == "H":
        if n % 2:
            raise ParityError("the symplectic form needs an even number of variables")
        r = n // 2
        return DiffForm(p, n, 2, {(i, i + r): TruncPoly.one(p, n) for i in range(1, r + 1)})
    if kind == "K":
        if n % 2 == 0:
            raise ParityError("the contact form needs an odd number of variables")
        r = (n - 1) // 2
        comp = {(n,): TruncPoly.one(p, n)}
        for i in range(1, r + 1):
            comp[(i,)] = TruncPoly.var(i + r, p, n)
            comp[(i + r,)] = -TruncPoly.var(i, p, n)
        return DiffForm(p, n, 1, comp)
    raise ValueError("unknown form kind %r" % kind)


def lie_derivative_matrix(kind, n, p):
    """Matrix of the linear map D -> D.ω (in form coordinates) on the W(n) basis."""
    W = witt_algebra(p, n)
    w = cartan_form(kind, n, p)
    cols = []
    for l in range(1, n + 1):
        for e in W.R.monomials:
            cols.append(lie_derivative(Derivation.basis_element(e, l, p), w).vector())
    return np.array(cols, dtype=np.int64).T % p


def operator_commutator_check(D, E):
    """Compare [D,E] with the operator commutator on each generator."""
    B = D.bracket(E)
    for i in range(1, D.n + 1):
        x = TruncPoly.var(i, D.p, D.n)
        if B.apply(x) != D.apply(E.apply(x)) - E.apply(D.apply(x)):
            return False
    return True


__all__ = [
    "Derivation",
    "DiffForm",
    "WittAlgebra",
    "witt_algebra",
    "bracket",
    "p_power",
    "divergence",
    "wedge",
    "exterior_d",
    "eval_one_form",
    "lie_derivative",
    "lie_derivative_matrix",
    "cartan_form",
    "perm_sign",
    "hamiltonian_matrix",
]


def hamiltonian_matrix(r, p):
    """Matrix of f -> Σ_i (∂_i f)∂_{i+r} - (∂_{i+r} f)∂_i from the ring into W(2r)."""
    n = 2 * r
    R = ring(p, n)
    M = np.zeros((n * R.N, R.N), dtype=np.int64)
    for i in range(r):
        M[(i + r) * R.N:(i + r + 1) * R.N] += R.deriv[i]
        M[i * R.N:(i + 1) * R.N] -= R.deriv[i + r]
    return M % p
