"""Characteristic polynomials of module actions, Dickson invariants, and the
p-polynomial Q(T; x) with its coefficient functions.

Identities that the theory states for polynomial functions are checked
either symbolically (as exact polynomial identities) or pointwise as
identities of polynomials in T. Comparing scalar values of p-th powers
over F_p would be vacuous, since a^p = a there.
"""

import itertools

import numpy as np

from . import linalg, upoly
from .errors import EnvelopeError, OutsideOmegaBeta
from .restricted import PClosure, PPolynomial


class SymbolicPolynomial:
    """Sparse polynomial over F_p in m variables with unbounded exponents."""

    __slots__ = ("m", "p", "terms")

    def __init__(self, m, p, terms=None):
        self.m, self.p = m, p
        t = {}
        for e, c in (terms or {}).items():
            c %= p
            if c:
                e = tuple(e)
                v = (t.get(e, 0) + c) % p
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        self.terms = t

    @classmethod
    def var(cls, i, m, p):
        e = [0] * m
        e[i] = 1
        return cls(m, p, {tuple(e): 1})

    @classmethod
    def const(cls, c, m, p):
        return cls(m, p, {(0,) * m: c})

    def __add__(self, o):
        if isinstance(o, int):
            o = SymbolicPolynomial.const(o, self.m, self.p)
        t = dict(self.terms)
        for e, c in o.terms.items():
            v = (t.get(e, 0) + c) % self.p
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        out = SymbolicPolynomial(self.m, self.p)
        out.terms = t
        return out

    __radd__ = __add__

    def __neg__(self):
        return SymbolicPolynomial(self.m, self.p, {e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, int):
            return SymbolicPolynomial(self.m, self.p, {e: c * o for e, c in self.terms.items()})
        t = {}
        p = self.p
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = (t.get(e, 0) + c1 * c2) % p
        return SymbolicPolynomial(self.m, p, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = SymbolicPolynomial.const(1, self.m, self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def frobenius(self, k=1):
        """f^{p^k}, computed termwise (valid in characteristic p)."""
        q = self.p ** k
        return SymbolicPolynomial(self.m, self.p, {tuple(a * q for a in e): c for e, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, o):
        return isinstance(o, SymbolicPolynomial) and (self.m, self.p, self.terms) == (o.m, o.p, o.terms)

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def evaluate(self, point):
        v = 0
        for e, c in self.terms.items():
            term = c
            for a, x in zip(e, point):
                term = term * pow(int(x), a, self.p)
            v += term
        return v % self.p

    def linear_substitute(self, A):
        """y_i -> Σ_j A[i, j] y_j."""
        A = np.asarray(A, dtype=np.int64) % self.p
        lin = []
        for i in range(self.m):
            s = SymbolicPolynomial(self.m, self.p)
            for j in range(self.m):
                if A[i, j]:
                    s = s + SymbolicPolynomial.var(j, self.m, self.p) * int(A[i, j])
            lin.append(s)
        out = SymbolicPolynomial(self.m, self.p)
        cache = {}
        for e, c in self.terms.items():
            term = SymbolicPolynomial.const(c, self.m, self.p)
            for i, a in enumerate(e):
                if a:
                    key = (i, a)
                    if key not in cache:
                        cache[key] = lin[i] ** a
                    term = term * cache[key]
            out = out + term
        return out

    def divide_exact(self, d):
        """Quotient q with self = q*d, or None if d does not divide exactly.

        Multivariate division by the lexicographically leading term.
        """
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.p
        lead = max(d.terms)
        lc_inv = linalg.inv_mod(d.terms[lead], p)
        rem = SymbolicPolynomial(self.m, p, dict(self.terms))
        q = SymbolicPolynomial(self.m, p)
        while not rem.is_zero():
            e = max(rem.terms)
            if any(a < b for a, b in zip(e, lead)):
                return None
            c = rem.terms[e] * lc_inv % p
            mono = SymbolicPolynomial(self.m, p, {tuple(a - b for a, b in zip(e, lead)): c})
            q = q + mono
            rem = rem - mono * d
        return q

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mon = "*".join(
                ("y%d" % (i + 1)) if a == 1 else "y%d^%d" % (i + 1, a)
                for i, a in enumerate(e) if a
            )
            parts.append(str(c) if not mon else (mon if c == 1 else "%d*%s" % (c, mon)))
        return " + ".join(parts)

    def to_json(self):
        return {
            "m": self.m,
            "p": self.p,
            "terms": [{"exp": list(e), "coeff": self.terms[e]} for e in sorted(self.terms)],
        }


def determinant_symbolic(M):
    """Determinant of a small square matrix of SymbolicPolynomials (Laplace)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    out = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * determinant_symbolic(minor)
        if j % 2:
            term = -term
        out = term if out is None else out + term
    return out


DICKSON_ENVELOPE = {3: 3, 5: 2}


def dickson_product(m, p, force=False):
    """Π_{a ∈ F_p^m} (T - Σ a_i y_i) as a polynomial in T over F_p[y].

    Returns:
        dict T-degree -> SymbolicPolynomial in y_1..y_m.
    """
    if not force and m > DICKSON_ENVELOPE.get(p, 1):
        raise EnvelopeError("Dickson expansion for m=%d at p=%d is outside the envelope" % (m, p))
    # variables: y_1..y_m, then T as index m
    k = m + 1
    prod = SymbolicPolynomial.const(1, k, p)
    T = SymbolicPolynomial.var(m, k, p)
    for a in itertools.product(range(p), repeat=m):
        lin = T
        for i, ai in enumerate(a):
            if ai:
                lin = lin - SymbolicPolynomial.var(i, k, p) * ai
        prod = prod * lin
    out = {}
    for e, c in prod.terms.items():
        deg = e[m]
        poly = out.setdefault(deg, SymbolicPolynomial(m, p))
        out[deg] = poly + SymbolicPolynomial(m, p, {e[:m]: c})
    return {d: f for d, f in out.items() if not f.is_zero()}


def dickson_coefficients(m, p, force=False):
    """[ψ_{p^0}, ..., ψ_{p^{m-1}}, 1]: coefficients of T^{p^i} in the product."""
    prod = dickson_product(m, p, force)
    zero = SymbolicPolynomial(m, p)
    return [prod.get(p ** i, zero) for i in range(m)] + [prod[p ** m]]


def gl_generators(m, p):
    """A transvection, a diagonal matrix with a primitive root, and an m-cycle."""
    gens = []
    if m >= 2:
        E = np.eye(m, dtype=np.int64)
        E[0, 1] = 1
        gens.append(E)
    g = next(x for x in range(2, p) if all(pow(x, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1))) if p > 2 else 1
    D = np.eye(m, dtype=np.int64)
    D[0, 0] = g
    gens.append(D)
    if m >= 2:
        P = np.roll(np.eye(m, dtype=np.int64), 1, axis=0)
        gens.append(P)
    return gens


def _prime_factors(k):
    out, q = set(), 2
    while q * q <= k:
        while k % q == 0:
            out.add(q)
            k //= q
        q += 1
    if k > 1:
        out.add(k)
    return out


# characteristic polynomials


def hessenberg(A, p):
    """Upper Hessenberg matrix similar to A over F_p."""
    H = linalg.as_fp(A, p).copy()
    n = H.shape[0]
    for j in range(n - 2):
        nz = np.nonzero(H[j + 1:, j])[0]
        if nz.size == 0:
            continue
        k = j + 1 + int(nz[0])
        if k != j + 1:
            H[[j + 1, k]] = H[[k, j + 1]]
            H[:, [j + 1, k]] = H[:, [k, j + 1]]
        piv_inv = linalg.inv_mod(int(H[j + 1, j]), p)
        for i in range(j + 2, n):
            if H[i, j]:
                f = H[i, j] * piv_inv % p
                H[i] = (H[i] - f * H[j + 1]) % p
                H[:, j + 1] = (H[:, j + 1] + f * H[:, i]) % p
    return H


def char_poly_matrix(A, p):
    """det(T·I - A) as a coefficient tuple (lowest degree first)."""
    H = hessenberg(A, p)
    n = H.shape[0]
    polys = [np.array([1], dtype=np.int64)]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = np.zeros(m + 1, dtype=np.int64)
        cur[1:] += prev
        cur[:m] -= H[m - 1, m - 1] * prev
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = prod * H[i, i - 1] % p
            if prod == 0:
                break
            c = H[i - 1, m - 1] * prod % p
            if c:
                q = polys[i - 1]
                cur[:len(q)] -= c * q
        polys.append(cur % p)
    return upoly.trim(polys[n], p)


class ModuleAction:
    """A restricted representation given by x -> matrix on coordinates."""

    def __init__(self, alg, rho, N):
        self.alg = alg
        self.rho = rho
        self.N = N
        self.p = alg.p

    def __call__(self, x):
        return self.rho(x) % self.p

    def check_basis(self, basis_rows):
        """Bracket compatibility on pairs and restrictedness on elements."""
        p = self.p
        bad = []
        mats = [self(b) for b in basis_rows]
        for i, b in enumerate(basis_rows):
            pm = self(self.alg.pmap(b))
            if ((pm - linalg.matpow(mats[i], p, p)) % p).any():
                bad.append(("pmap", i))
            for j in range(i + 1, len(basis_rows)):
                lhs = self(self.alg.bracket(b, basis_rows[j]))
                rhs = mats[i] @ mats[j] - mats[j] @ mats[i]
                if ((lhs - rhs) % p).any():
                    bad.append(("bracket", i, j))
        return bad


def natural_module(W):
    """W(n) acting on the truncated ring by derivations."""
    return ModuleAction(W, W.op, W.N)


def char_poly(M, x):
    return char_poly_matrix(M(x), M.p)


def psi(M, x, i):
    cp = char_poly(M, x)
    return cp[i] if i < len(cp) else 0


# Q(T; x) and its coefficients


class QResult:
    """Q(T; x) with the coefficients φ_0..φ_mu and a degeneracy flag."""

    def __init__(self, poly, phis, ell, degenerate, d):
        self.poly = poly
        self.phis = phis
        self.ell = ell
        self.degenerate = degenerate
        self.d = d


def q_polynomial(x, alg, mu, ell):
    """The p-polynomial Σ φ_i(x) T^{p^{i+ell}} with φ_mu = 1.

    With v_j = x^{[p]^{j+ell}}, Q is the unique relation v_mu = -Σ φ_j v_j
    when v_0..v_{mu-1} are independent and span v_mu. Otherwise the
    minimal p-polynomial of x is returned with degenerate = True.
    """
    p = alg.p
    pc = PClosure(x, alg)
    y = np.asarray(x, dtype=np.int64) % p
    for _ in range(ell):
        y = alg.pmap(y)
    v = []
    for _ in range(mu + 1):
        v.append(y)
        y = alg.pmap(y)
    V = np.array(v[:mu], dtype=np.int64)
    if linalg.rank(V, p) == mu:
        sol = linalg.solve(V.T, v[mu], p)
        if sol is not None:
            phis = [int(-c) % p for c in sol] + [1]
            poly = PPolynomial([0] * ell + phis, p)
            return QResult(poly, phis, ell, False, pc.d)
    return QResult(pc.minimal_polynomial(), None, ell, True, pc.d)


class BetaForm:
    """Alternating mu-linear form: the minor on fixed coordinate slots."""

    def __init__(self, slots, p):
        self.slots = list(slots)
        self.p = p
        self.mu = len(self.slots)

    def __call__(self, vectors):
        M = np.array([np.asarray(v)[self.slots] for v in vectors], dtype=np.int64).T
        return linalg.det(M, self.p)

    def kills(self, rows):
        """Whether every row has zero coordinates on the slots."""
        rows = np.atleast_2d(rows)
        return not rows[:, self.slots].any()


def phi_via_beta(x, alg, beta, i, ell):
    """φ_i(x) = -β(v_0, .., v_mu (slot i), .., v_{mu-1}) / β(v_0, .., v_{mu-1}).

    Here v_j = x^{[p]^{j+ell}}. Raises OutsideOmegaBeta if the denominator
    vanishes.
    """
    p = alg.p
    mu = beta.mu
    if i == mu:
        return 1
    v = []
    y = np.asarray(x, dtype=np.int64) % p
    for _ in range(ell):
        y = alg.pmap(y)
    for _ in range(mu + 1):
        v.append(y)
        y = alg.pmap(y)
    den = beta(v[:mu])
    if den == 0:
        raise OutsideOmegaBeta("β vanishes on the p-power family of x")
    num_vecs = list(v[:mu])
    num_vecs[i] = v[mu]
    return (-beta(num_vecs)) * linalg.inv_mod(den, p) % p


def torus_phi_symbolic(T_rows, beta, ell, p):
    """φ_i on the torus point Σ y_i t_i as exact polynomials in y.

    Uses (Σ y_i t_i)^{[p]^k} = Σ y_i^{p^k} t_i for a toral basis, so every
    β value is a Moore-type determinant times β(t_1, .., t_mu).

    Returns:
        list of SymbolicPolynomial φ_0..φ_{mu-1}, or None if β(t) = 0.
    """
    mu = beta.mu
    base = beta(list(T_rows))
    if base == 0:
        return None

    def moore(powers):
        rows = []
        for k in powers:
            rows.append([SymbolicPolynomial.var(i, mu, p).frobenius(k) for i in range(mu)])
        return determinant_symbolic(rows)

    idx = [j + ell for j in range(mu)]
    den = moore(idx)
    out = []
    for i in range(mu):
        pw = list(idx)
        pw[i] = mu + ell
        num = -moore(pw)
        q = num.divide_exact(den)
        if q is None:
            raise ArithmeticError("Moore quotient is not a polynomial")
        out.append(q)
    return out


def split_torus_char_poly(c, p):
    """Π_{a ∈ F_p^mu} (T - a·c) for a point c ∈ F_p^mu."""
    roots = [sum(ai * ci for ai, ci in zip(a, c)) % p for a in itertools.product(range(p), repeat=len(c))]
    return upoly.from_roots(roots, p)


def p_power_support(cp, p):
    """Whether all nonzero coefficients sit at degrees p^k."""
    powers = set()
    q = 1
    while q < len(cp):
        powers.add(q)
        q *= p
    return all(i in powers for i in upoly.support(cp))


def roots_form_group(cp, p):
    """Whether the F_p-roots of cp are closed under addition."""
    rs = set(upoly.roots(cp, p))
    return all((a + b) % p in rs for a in rs for b in rs)


ELL = {"W": 0, "S": 1}


def degree_minus_one_slots(W):
    """Coordinates of the constant coefficients of ∂_1..∂_n."""
    return [int(i) for i in np.nonzero(W.degrees == -1)[0]]


def torus_beta(T_rows, W, kill_f0=True):
    """A β on degree -1 slots (kernel contains 𝔤_(0)) with β(t_1..t_mu) != 0.

    Falls back to pivot slots of the torus basis when kill_f0 is False.
    """
    p = W.p
    rows = np.asarray(T_rows, dtype=np.int64) % p
    if kill_f0:
        cand = degree_minus_one_slots(W)
        _, piv = linalg.rref(rows[:, cand], p)
        if len(piv) < rows.shape[0]:
            return None
        return BetaForm([cand[j] for j in piv], p)
    _, piv = linalg.rref(rows, p)
    return BetaForm(piv, p)


def _q_at_point(phis, c, ell, mu, p):
    out = [0] * (p ** (mu + ell) + 1)
    for j, f in enumerate(phis):
        out[p ** (j + ell)] = f.evaluate(c)
    out[p ** (mu + ell)] = 1
    return upoly.trim(out, p)


def _sample(B, rng):
    return rng.integers(0, B.p, B.dim) @ B.vectors % B.p


def restriction_identity_check(kind, n, p, samples, rng, max_tries=None):
    """Identities linking P_{𝔄_n}, Q and the Dickson coefficients.

    All comparisons are exact equalities of polynomials in T, or of
    symbolic polynomials on the torus.

    Returns:
        report dict; "ok" is the conjunction of the individual checks.
    """
    from .cartan import build_family
    from .tori import agt2_torus

    B = build_family(kind, n, p)
    W = B.ambient
    M = natural_module(W)
    T = agt2_torus(kind, n, p)
    mu = T.mu
    N = W.N
    ell = ELL.get(kind)
    rep = {"kind": kind, "n": n, "p": p, "mu": mu, "ell": ell}
    prod = dickson_product(mu, p)
    zero = SymbolicPolynomial(mu, p)
    psis = [prod.get(p ** i, zero) for i in range(mu)]

    # (a) toral points: P_{𝔄}(T;t) against the torus product and Dickson values
    e = N // p ** mu
    toral = []
    for c in itertools.product(range(p), repeat=mu):
        t = np.array(c, dtype=np.int64) @ T.basis % p
        P = char_poly(M, t)
        U0 = split_torus_char_poly(c, p)
        dick = upoly.trim([prod.get(k, zero).evaluate(c) for k in range(p ** mu + 1)], p)
        toral.append({
            "point": list(c),
            "P_equals_power_of_torus_product": P == upoly.power(U0, e, p),
            "dickson_values_equal_torus_product": dick == U0,
        })
    rep["toral_exponent"] = e
    rep["toral_points"] = toral
    ok = all(r["P_equals_power_of_torus_product"] and r["dickson_values_equal_torus_product"] for r in toral)

    # Q on the torus through the β-formula, symbolically and pointwise
    if ell is not None:
        beta = torus_beta(T.basis, W)
        phis = torus_phi_symbolic(T.basis, beta, ell, p) if beta is not None else None
        if phis is None:
            rep["torus_q"] = {"status": "no β with β(t) != 0"}
            ok = False
        else:
            sym = all(phis[j] == psis[j].frobenius(ell) for j in range(mu))
            pts = []
            for c in itertools.product(range(p), repeat=mu):
                Q = _q_at_point(phis, c, ell, mu, p)
                target = upoly.power(split_torus_char_poly(c, p), p ** ell, p)
                pts.append(Q == target)
            rep["torus_q"] = {
                "beta_slots": [W.labels[s] for s in beta.slots],
                "phi_equals_dickson_power_symbolically": sym,
                "Q_equals_torus_product_power_at_all_points": all(pts),
                "points": len(pts),
            }
            ok = ok and sym and all(pts)

    # (b), (c) semisimple samples
    tries = max_tries or 20 * samples
    found, exps, bad = 0, {}, []
    non_pp = 0
    groups = True
    attempts = 0
    while found < samples and attempts < tries:
        attempts += 1
        xs, _ = PClosure(_sample(B, rng), W).jordan_chevalley()
        pc = PClosure(xs, W)
        # regular semisimple: (kx_s)_p is a torus of dimension mu
        if pc.d != mu:
            continue
        P = char_poly(M, xs)
        Q = pc.minimal_polynomial().ordinary()
        qdeg = len(Q) - 1
        k = N // qdeg
        match = N % qdeg == 0 and P == upoly.power(Q, k, p)
        exps[k] = exps.get(k, 0) + 1
        if not match:
            bad.append(xs.tolist())
        if not p_power_support(P, p):
            non_pp += 1
        groups = groups and roots_form_group(P, p)
        found += 1
    rep["semisimple"] = {
        "samples": found,
        "attempts": attempts,
        "exponents": {str(k): v for k, v in sorted(exps.items())},
        "P_equals_Q_power_failures": bad[:3],
        "non_p_power_coefficients": non_pp,
        "roots_form_group": groups,
    }
    ok = ok and found == samples and not bad and non_pp == 0 and groups
    rep["ok"] = bool(ok)
    return rep


def phi_beta_agreement(kind, n, p, samples, rng, max_tries=None):
    """φ_via_beta against q_polynomial on random x in Ω_β."""
    from .cartan import build_family

    B = build_family(kind, n, p)
    W = B.ambient
    ell = ELL[kind]
    mu = B.meta["mu"]
    slots = degree_minus_one_slots(W)[:mu]
    beta = BetaForm(slots, p)
    found = agree = attempts = 0
    bad = []
    tries = max_tries or 20 * samples
    while found < samples and attempts < tries:
        attempts += 1
        x = _sample(B, rng)
        try:
            vals = [phi_via_beta(x, W, beta, i, ell) for i in range(mu + 1)]
        except OutsideOmegaBeta:
            continue
        found += 1
        q = q_polynomial(x, W, mu, ell)
        if not q.degenerate and list(q.phis) == vals:
            agree += 1
        elif len(bad) < 3:
            bad.append(x.tolist())
    return {"kind": kind, "n": n, "p": p, "samples": found, "attempts": attempts,
            "agree": agree, "failures": bad, "ok": found == samples and agree == found}


def phi_semisimple_invariance(kind, n, p, samples, rng, max_tries=None):
    """φ_i(x) = φ_i(x_s) for x in Ω_β with nilpotent part in 𝔤_(0).

    β uses only degree -1 slots, so its kernel contains 𝔤_(0).
    """
    from .cartan import build_family

    B = build_family(kind, n, p)
    W = B.ambient
    ell = ELL[kind]
    mu = B.meta["mu"]
    beta = BetaForm(degree_minus_one_slots(W)[:mu], p)
    low = W.degrees == -1
    found = agree = attempts = 0
    tries = max_tries or 50 * samples
    while found < samples and attempts < tries:
        attempts += 1
        x = _sample(B, rng)
        xs, xn = PClosure(x, W).jordan_chevalley()
        if xn[low].any():
            continue
        try:
            a = [phi_via_beta(x, W, beta, i, ell) for i in range(mu)]
            b = [phi_via_beta(xs, W, beta, i, ell) for i in range(mu)]
        except OutsideOmegaBeta:
            continue
        found += 1
        agree += a == b
    return {"samples": found, "attempts": attempts, "agree": agree,
            "ok": found > 0 and agree == found}


def hamiltonian_char_poly_shape(r, p, samples, rng):
    """Support of P_{𝔄_{2r}}(T; D_H f) for random f."""
    from .witt import hamiltonian_matrix, witt_algebra

    W = witt_algebra(p, 2 * r)
    H = hamiltonian_matrix(r, p)
    allowed = {p ** (r + i) for i in range(r + 1)}
    supports = set()
    bad = []
    for _ in range(samples):
        f = rng.integers(0, p, W.N)
        P = char_poly_matrix(W.op(H @ f % p), p)
        s = set(upoly.support(P))
        supports |= s
        if not s <= allowed and len(bad) < 3:
            bad.append(f.tolist())
    return {"r": r, "p": p, "samples": samples, "allowed_degrees": sorted(allowed),
            "observed_degrees": sorted(supports), "failures": bad, "ok": not bad}


def closure_survey(kind, n, p, samples, rng):
    """Distribution of d(x) over random x, with the largest witness."""
    from .cartan import build_family

    B = build_family(kind, n, p)
    W = B.ambient
    counts = {}
    witness = None
    for _ in range(samples):
        x = _sample(B, rng)
        d = PClosure(x, W).d
        counts[d] = counts.get(d, 0) + 1
        if witness is None or d > witness[0]:
            witness = (d, x.tolist())
    return {"counts": {str(k): v for k, v in sorted(counts.items())},
            "max_d": witness[0] if witness else 0, "witness": witness[1] if witness else None}


def ell_values(kind, n, p, rng, samples=50, max_d=None):
    """The two readings of ell, kept apart.

    ell_from_d uses the largest d(x) seen (d - mu); ell_from_rank uses the
    smallest Fitting null component of ad x over the samples (rank - mu).
    Over F_p both are sample estimates (d from below, rank from above).
    """
    from .cartan import build_family

    B = build_family(kind, n, p)
    W = B.ambient
    mu = B.meta["mu"]
    if max_d is None:
        max_d = max(PClosure(_sample(B, rng), W).d for _ in range(samples))
    V = B.vectors.T
    best = B.dim
    for _ in range(samples):
        x = _sample(B, rng)
        A = linalg.matpow(W.ad(x), B.dim, p)
        best = min(best, B.dim - linalg.rank(A @ V % p, p))
    return {"mu": mu, "max_d": max_d, "ell_from_d": max_d - mu,
            "rank_estimate": best, "ell_from_rank": best - mu}
