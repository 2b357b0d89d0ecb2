"""Dense linear algebra over the prime field F_p.

Matrices are numpy int64 arrays with entries reduced to [0, p). All
routines are exact; nothing here touches floating point.
"""

import numpy as np

from .errors import NotInvertible


def inv_mod(a, p):
    """Inverse of a nonzero residue mod p."""
    a %= p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse mod %d" % p)
    return pow(int(a), p - 2, p)


def as_fp(M, p):
    return np.asarray(M, dtype=np.int64) % p


def rref(M, p):
    """Fully reduced row echelon form.

    Returns:
        (R, pivots) where R has the same shape as M and pivots lists the
        pivot column of each nonzero row, in order.
    """
    R = as_fp(M, p).copy()
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = (R[r] * inv_mod(int(R[r, c]), p)) % p
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            R[nzr] = (R[nzr] - np.outer(col[nzr], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M, p):
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def nullspace(M, p):
    """Basis of {v : M v = 0}, returned as the rows of an array."""
    M = as_fp(M, p)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref(M, p)
    free = [c for c in range(cols) if c not in set(piv)]
    N = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        N[k, f] = 1
        for i, pc in enumerate(piv):
            N[k, pc] = (-R[i, f]) % p
    return N


def left_nullspace(M, p):
    return nullspace(np.asarray(M).T, p)


def solve(A, b, p):
    """One solution x of A x = b, or None if the system is inconsistent."""
    A = as_fp(A, p)
    b = as_fp(b, p)
    vec = b.ndim == 1
    B = b.reshape(A.shape[0], -1)
    aug = np.concatenate([A, B], axis=1)
    R, piv = rref(aug, p)
    n = A.shape[1]
    if any(c >= n for c in piv):
        return None
    X = np.zeros((n, B.shape[1]), dtype=np.int64)
    for i, c in enumerate(piv):
        X[c] = R[i, n:]
    return X[:, 0] if vec else X


def inverse(A, p):
    A = as_fp(A, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise NotInvertible("matrix is not square")
    R, piv = rref(np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1), p)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise NotInvertible("matrix is singular mod %d" % p)
    return R[:, n:].copy()


def matmul(A, B, p):
    # entries < p and inner dimension small enough that int64 never overflows
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % p


def matpow(A, e, p):
    A = as_fp(A, p)
    out = np.eye(A.shape[0], dtype=np.int64)
    while e:
        if e & 1:
            out = matmul(out, A, p)
        A = matmul(A, A, p)
        e >>= 1
    return out


def row_basis(V, p):
    """Reduced basis of the row space of V."""
    V = as_fp(V, p)
    if V.shape[0] == 0:
        return V.reshape(0, V.shape[1] if V.ndim == 2 else 0)
    R, piv = rref(V, p)
    return R[: len(piv)].copy()


def intersect(U, V, p):
    """Basis of rowspace(U) ∩ rowspace(V)."""
    U = row_basis(U, p)
    V = row_basis(V, p)
    if U.shape[0] == 0 or V.shape[0] == 0:
        return np.zeros((0, U.shape[1]), dtype=np.int64)
    N = left_nullspace(np.concatenate([U, V], axis=0), p)
    W = matmul(N[:, : U.shape[0]], U, p)
    return row_basis(W, p)


def det(A, p):
    A = as_fp(A, p).copy()
    n = A.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(A[c:, c])[0]
        if nz.size == 0:
            return 0
        k = c + int(nz[0])
        if k != c:
            A[[c, k]] = A[[k, c]]
            d = -d
        piv = int(A[c, c])
        d = d * piv % p
        iv = inv_mod(piv, p)
        below = A[c + 1:, c].copy()
        if below.any():
            A[c + 1:] = (A[c + 1:] - np.outer(below * iv % p, A[c])) % p
    return d % p


class EchelonBasis:
    """Incrementally maintained reduced echelon basis of a subspace of F_p^N.

    Useful when vectors arrive one batch at a time (spanning closures,
    derived algebras) and membership must be tested cheaply.
    """

    def __init__(self, N, p):
        self.N = N
        self.p = p
        self.rows = np.zeros((0, N), dtype=np.int64)
        self.pivots = []

    @property
    def dim(self):
        return len(self.pivots)

    def reduce(self, V):
        """Residuals of the rows of V modulo the current span."""
        V = as_fp(np.atleast_2d(V), self.p)
        if not self.pivots:
            return V
        coeff = V[:, self.pivots]
        return (V - coeff @ self.rows) % self.p

    def contains(self, v):
        return not self.reduce(v).any()

    def add(self, V):
        """Add rows of V; return the number of new dimensions."""
        Rz = self.reduce(V)
        Rz = Rz[np.any(Rz, axis=1)]
        if Rz.shape[0] == 0:
            return 0
        new, piv = rref(Rz, self.p)
        new = new[: len(piv)]
        # clear the new pivot columns out of the old rows
        if self.pivots:
            c = self.rows[:, piv]
            self.rows = (self.rows - c @ new) % self.p
        allrows = np.concatenate([self.rows, new], axis=0)
        allpiv = self.pivots + piv
        order = np.argsort(allpiv, kind="stable")
        self.rows = allrows[order]
        self.pivots = [allpiv[i] for i in order]
        return len(piv)

    def coordinates(self, V):
        """Coordinates of rows of V in terms of self.rows (assumes membership)."""
        V = as_fp(np.atleast_2d(V), self.p)
        return V[:, self.pivots].copy()

    def basis(self):
        return self.rows.copy()
