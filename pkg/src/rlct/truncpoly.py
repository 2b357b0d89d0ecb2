"""Prime field scalars and the truncated polynomial ring k[x_1..x_n]/(x_i^p).

Variables are numbered from 1 in the public API. Monomials are exponent
tuples; the monomial basis is ordered lexicographically, which is the
order itertools.product produces, so the index of a monomial is just its
exponent vector read as a base-p numeral.
"""

import itertools
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import (
    ArityMismatch,
    DivisionByZero,
    ModulusMismatch,
    NotInvertible,
    RelationViolation,
)


def _is_prime(p):
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def check_prime(p):
    if not isinstance(p, (int, np.integer)) or not _is_prime(int(p)) or p < 3:
        raise ValueError("modulus must be a prime >= 3, got %r" % (p,))
    return int(p)


class FpScalar:
    """An element of F_p."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.p = check_prime(p)
        self.value = int(value) % self.p

    def _coerce(self, other):
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise ModulusMismatch("moduli %d and %d differ" % (self.p, other.p))
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpScalar(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpScalar(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpScalar(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpScalar(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.value, self.p)

    def inv(self):
        if self.value == 0:
            raise DivisionByZero("0 is not invertible mod %d" % self.p)
        return FpScalar(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        if isinstance(other, (int, np.integer)):
            other = FpScalar(other, self.p)
        self._coerce(other)
        return self * other.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        return FpScalar(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return "FpScalar(%d, %d)" % (self.value, self.p)


def fp_arith(a, b, op):
    """Binary/unary residue arithmetic dispatch: op in add, mul, inv, neg."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "neg":
        return -a
    raise ValueError("unknown op %r" % op)


class TruncRing:
    """Shared tables for one (p, n). Obtain instances through ring(p, n)."""

    def __init__(self, p, n):
        self.p = check_prime(p)
        if n < 0:
            raise ValueError("n must be non-negative")
        self.n = n
        self.N = p ** n
        self.monomials = list(itertools.product(range(p), repeat=n))
        self.exps = np.array(self.monomials, dtype=np.int64).reshape(self.N, n)
        self.weights = np.array([p ** (n - 1 - i) for i in range(n)], dtype=np.int64)
        self.degrees = self.exps.sum(axis=1)
        self._prod = None
        self._deriv = None

    def index(self, exp):
        return int(np.dot(exp, self.weights)) if self.n else 0

    @property
    def prod_table(self):
        """prod_table[a, b] = index of x^a x^b, or -1 when it vanishes."""
        if self._prod is None:
            s = self.exps[:, None, :] + self.exps[None, :, :]
            ok = np.all(s < self.p, axis=2)
            idx = (s * self.weights).sum(axis=2)
            self._prod = np.where(ok, idx, -1)
        return self._prod

    @property
    def deriv(self):
        """deriv[i] is the N x N matrix of ∂_{i+1} on coefficient vectors."""
        if self._deriv is None:
            mats = np.zeros((self.n, self.N, self.N), dtype=np.int64)
            for i in range(self.n):
                src = np.nonzero(self.exps[:, i] > 0)[0]
                dst = src - self.weights[i]
                mats[i, dst, src] = self.exps[src, i] % self.p
            self._deriv = mats
        return self._deriv

    def mult_matrix(self, vec):
        """Matrix of multiplication by the element with coefficient vector vec."""
        vec = np.asarray(vec, dtype=np.int64)
        M = np.zeros((self.N, self.N), dtype=np.int64)
        P = self.prod_table
        for a in np.nonzero(vec)[0]:
            cols = np.nonzero(P[a] >= 0)[0]
            M[P[a, cols], cols] += vec[a]
        return M % self.p

    def mul_vec(self, u, v):
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        out = np.zeros(self.N, dtype=np.int64)
        P = self.prod_table
        for a in np.nonzero(u)[0]:
            cols = np.nonzero((P[a] >= 0) & (v != 0))[0]
            np.add.at(out, P[a, cols], u[a] * v[cols])
        return out % self.p


@lru_cache(maxsize=None)
def ring(p, n):
    return TruncRing(p, n)


class TruncPoly:
    """Immutable sparse element of the truncated polynomial ring.

    Args:
        p: prime modulus.
        n: number of variables.
        terms: mapping from exponent tuples to integer coefficients. Zero
            coefficients are pruned; exponents must lie in [0, p).
    """

    __slots__ = ("p", "n", "terms", "_hash")

    def __init__(self, p, n, terms=None):
        self.p = check_prime(p)
        self.n = n
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(a) for a in e)
            if len(e) != n:
                raise ArityMismatch("exponent %r has wrong length for n=%d" % (e, n))
            if any(a < 0 or a >= p for a in e):
                raise ValueError("exponent %r out of range for p=%d" % (e, p))
            c = int(c) % p
            if c:
                clean[e] = (clean.get(e, 0) + c) % p
                if not clean[e]:
                    del clean[e]
        self.terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def _raw(cls, p, n, terms):
        obj = cls.__new__(cls)
        obj.p, obj.n, obj.terms, obj._hash = p, n, terms, None
        return obj

    @classmethod
    def zero(cls, p, n):
        return cls._raw(check_prime(p), n, {})

    @classmethod
    def one(cls, p, n):
        return cls.constant(1, p, n)

    @classmethod
    def constant(cls, c, p, n):
        return cls(p, n, {(0,) * n: c})

    @classmethod
    def var(cls, i, p, n):
        """The generator x_i (1-based)."""
        if not 1 <= i <= n:
            raise IndexError("variable index %d out of range 1..%d" % (i, n))
        e = [0] * n
        e[i - 1] = 1
        return cls(p, n, {tuple(e): 1})

    @classmethod
    def xi(cls, i, p, n):
        """ξ_i = 1 + x_i, a unit of the ring."""
        return cls.one(p, n) + cls.var(i, p, n)

    @classmethod
    def monomial(cls, exp, p, c=1):
        return cls(p, len(exp), {tuple(exp): c})

    @classmethod
    def from_vector(cls, vec, p, n):
        R = ring(p, n)
        vec = np.asarray(vec, dtype=np.int64) % p
        return cls._raw(p, n, {R.monomials[i]: int(vec[i]) for i in np.nonzero(vec)[0]})

    def vector(self):
        R = ring(self.p, self.n)
        v = np.zeros(R.N, dtype=np.int64)
        for e, c in self.terms.items():
            v[R.index(e)] = c
        return v

    # structure
    def _check(self, other):
        if self.p != other.p:
            raise ModulusMismatch("moduli %d and %d differ" % (self.p, other.p))
        if self.n != other.n:
            raise ArityMismatch("variable counts %d and %d differ" % (self.n, other.n))

    def _lift(self, other):
        if isinstance(other, TruncPoly):
            self._check(other)
            return other
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise ModulusMismatch("moduli differ")
            other = other.value
        if isinstance(other, (int, np.integer)):
            return TruncPoly.constant(int(other), self.p, self.n)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        t = dict(self.terms)
        p = self.p
        for e, c in other.terms.items():
            v = (t.get(e, 0) + c) % p
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return TruncPoly._raw(p, self.n, t)

    __radd__ = __add__

    def __neg__(self):
        return TruncPoly._raw(self.p, self.n, {e: (-c) % self.p for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        c = int(c) % self.p
        if not c:
            return TruncPoly.zero(self.p, self.n)
        return TruncPoly._raw(self.p, self.n, {e: c * v % self.p for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, np.integer, FpScalar)):
            if isinstance(other, FpScalar) and other.p != self.p:
                raise ModulusMismatch("moduli differ")
            return self.scale(int(other))
        if not isinstance(other, TruncPoly):
            return NotImplemented
        self._check(other)
        p = self.p
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if any(a >= p for a in e):
                    continue
                v = (t.get(e, 0) + c1 * c2) % p
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return TruncPoly._raw(p, self.n, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = TruncPoly.one(self.p, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self):
        """Multiplicative inverse; exists iff the constant term is nonzero."""
        c = self.constant_term()
        if c == 0:
            raise DivisionByZero("element with zero constant term is not a unit")
        ci = pow(c, self.p - 2, self.p)
        u = TruncPoly.one(self.p, self.n) - self.scale(ci)  # nilpotent part
        # (c(1-u))^{-1} = c^{-1} Σ u^k, finite since u is nilpotent
        out = TruncPoly.one(self.p, self.n)
        term = out
        for _ in range(self.n * (self.p - 1)):
            term = term * u
            if term.is_zero():
                break
            out = out + term
        return out.scale(ci)

    def partial(self, i):
        """Formal partial derivative ∂_i (1-based)."""
        if not 1 <= i <= self.n:
            raise IndexError("variable index %d out of range 1..%d" % (i, self.n))
        k = i - 1
        t = {}
        p = self.p
        for e, c in self.terms.items():
            a = e[k]
            if a == 0:
                continue
            v = c * a % p
            if v:
                e2 = e[:k] + (a - 1,) + e[k + 1:]
                t[e2] = v
        return TruncPoly._raw(p, self.n, t)

    def constant_term(self):
        return self.terms.get((0,) * self.n, 0)

    def coeff(self, exp):
        return self.terms.get(tuple(exp), 0)

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Largest total degree of a term, or -1 for zero."""
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self):
        return min((sum(e) for e in self.terms), default=-1)

    def homogeneous_part(self, d):
        return TruncPoly._raw(self.p, self.n, {e: c for e, c in self.terms.items() if sum(e) == d})

    def embed(self, n_new, positions):
        """Rename variables: x_i goes to x_{positions[i-1]} in n_new variables."""
        t = {}
        for e, c in self.terms.items():
            e2 = [0] * n_new
            for a, pos in zip(e, positions):
                e2[pos - 1] = a
            t[tuple(e2)] = c
        return TruncPoly._raw(self.p, n_new, t)

    def __eq__(self, other):
        if isinstance(other, TruncPoly):
            return self.p == other.p and self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, np.integer)):
            return self == TruncPoly.constant(int(other), self.p, self.n)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.n, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mon = "*".join(
                "x%d" % (i + 1) if a == 1 else "x%d^%d" % (i + 1, a)
                for i, a in enumerate(e) if a
            )
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            else:
                parts.append("%d*%s" % (c, mon))
        return " + ".join(parts)

    def to_json(self):
        return {
            "p": self.p,
            "n": self.n,
            "terms": [{"exp": list(e), "coeff": self.terms[e]} for e in sorted(self.terms)],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(obj["p"], obj["n"], {tuple(t["exp"]): t["coeff"] for t in obj["terms"]})


def poly_mul(f, g):
    return f * g


def partial(f, i):
    return f.partial(i)


class Substitution:
    """Algebra endomorphism of the truncated ring given by x_i -> images[i-1].

    Images must have zero constant term, otherwise x_i^p = 0 is not
    preserved and RelationViolation is raised.
    """

    def __init__(self, images):
        images = list(images)
        if not images:
            raise ValueError("need at least one image")
        self.p = images[0].p
        self.n = len(images)
        for k, f in enumerate(images):
            if f.p != self.p:
                raise ModulusMismatch("image moduli differ")
            if f.n != self.n:
                raise ArityMismatch("image %d lives in %d variables, expected %d" % (k + 1, f.n, self.n))
            if f.constant_term():
                raise RelationViolation("image of x_%d has nonzero constant term" % (k + 1))
        self.images = images
        # powers[i][a] = images[i]^a
        self._powers = [[f ** a for a in range(self.p)] for f in images]
        self._matrix = None

    def __call__(self, f):
        if f.p != self.p or f.n != self.n:
            raise ArityMismatch("argument does not match the substitution's ring")
        out = TruncPoly.zero(self.p, self.n)
        for e, c in f.terms.items():
            term = TruncPoly.constant(c, self.p, self.n)
            for i, a in enumerate(e):
                if a:
                    term = term * self._powers[i][a]
            out = out + term
        return out

    def matrix(self):
        """N x N matrix whose columns are the images of the monomial basis."""
        if self._matrix is None:
            R = ring(self.p, self.n)
            M = np.zeros((R.N, R.N), dtype=np.int64)
            for j, e in enumerate(R.monomials):
                M[:, j] = self(TruncPoly.monomial(e, self.p)).vector()
            self._matrix = M
        return self._matrix

    def is_automorphism(self):
        return linalg.rank(self.matrix(), self.p) == ring(self.p, self.n).N

    def inverse_matrix(self):
        try:
            return linalg.inverse(self.matrix(), self.p)
        except NotInvertible:
            raise NotInvertible("substitution is not an automorphism") from None


def substitute(images):
    return Substitution(images)


def is_automorphism(handle):
    return handle.is_automorphism()
