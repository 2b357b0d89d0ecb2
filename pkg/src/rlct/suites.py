"""Named verification suites producing deterministic JSON check reports.

Each check is a dict {id, paper_ref, status, detail}. The paper_ref field
holds a short neutral description of the identity being checked.
"""

import zlib
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .cartan import (
    annihilator_of_form,
    build_family,
    divergence_kernel,
    form_divergence_identity,
    hamiltonian_image,
)
from .embeddings import phi, phi_H, sigma
from .errors import RlctError
from .invariants import (
    closure_survey,
    dickson_coefficients,
    ell_values,
    gl_generators,
    hamiltonian_char_poly_shape,
    phi_beta_agreement,
    phi_semisimple_invariance,
    restriction_identity_check,
)
from .poisson import (
    build_contact,
    hamiltonian_kernel_and_image,
    phi_lambda,
    poisson_algebra,
    realize_l_in_poisson,
)
from .restricted import PClosure, adjoint_pmap_consistency, is_p_unipotent, jacobson_s_terms
from .tori import (
    ThetaFrame,
    agt2_torus,
    cartan_nilpotency_check,
    centralizer,
    gl_elements,
    h_torus,
    weight_decomposition,
    weyl_substitution,
)
from .truncpoly import TruncPoly, check_prime
from .witt import operator_commutator_check, witt_algebra

SUITES = ("embeddings", "forms", "cartan", "poisson", "contact", "tori",
          "weights", "weyl", "invariants", "restricted")

ENVELOPE = 375  # bound on N·p^N for the ambient W(N) without --force


@dataclass
class SuiteConfig:
    suite: str
    p: int = 3
    n: int = None
    r: int = None
    family: str = None
    seed: int = 0
    samples: int = 100
    force: bool = False
    exhaustive: bool = False
    center: str = "toral"
    flags: dict = field(default_factory=dict)

    def params(self):
        return {
            "suite": self.suite, "p": self.p, "n": self.n, "r": self.r,
            "family": self.family, "seed": self.seed, "samples": self.samples,
            "force": self.force, "exhaustive": self.exhaustive, "center": self.center,
        }


class UsageError(RlctError):
    pass


def rng_for(cfg, check_id):
    """Independent stream per check, derived from the seed and the check id."""
    ss = np.random.SeedSequence([cfg.seed & (2 ** 64 - 1), zlib.crc32(check_id.encode())])
    return np.random.default_rng(ss)


def in_envelope(N, p):
    return N * p ** N <= ENVELOPE


def require_envelope(cfg, N):
    if not cfg.force and not in_envelope(N, cfg.p):
        raise UsageError("W(%d) at p=%d is outside the envelope; pass --force" % (N, cfg.p))


def check(cid, ref, ok, detail=None, skip=False):
    status = "skip" if skip else ("pass" if ok else "fail")
    return {"id": cid, "paper_ref": ref, "status": status, "detail": _plain(detail)}


def _plain(x):
    """JSON-safe copy with numpy scalars and arrays converted."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


# default parameter ranges per prime


def _sigma_ns(cfg):
    if cfg.n is not None:
        return [cfg.n]
    return [2, 3] if cfg.p == 3 else [2]


def _rs(cfg):
    if cfg.r is not None:
        return [cfg.r]
    return [1, 2] if cfg.p == 3 else [1]


def _ns(cfg):
    if cfg.n is not None:
        return [cfg.n]
    return [1, 2, 3] if cfg.p == 3 else [1, 2]


# suites


def suite_embeddings(cfg):
    out = []
    for n in _sigma_ns(cfg):
        require_envelope(cfg, n)
        rep = sigma(n, cfg.p).verify(raise_on_failure=False)
        out.append(check("embeddings.sigma.n%d" % n,
                         "D - Div(D) x_n d_n embeds W(n-1) into S(n) as restricted algebras",
                         rep["ok"], _summary(rep)))
    for r in _rs(cfg):
        require_envelope(cfg, 2 * r)
        rep = phi(r, cfg.p).verify(raise_on_failure=False)
        out.append(check("embeddings.phi.r%d" % r,
                         "sum f_j d_j -> sum x_j f_j(x_{r+1..2r}) embeds W(r) into P(2r)",
                         rep["ok"], _summary(rep)))
        rep = phi_H(r, cfg.p).verify(raise_on_failure=False)
        out.append(check("embeddings.phi_H.r%d" % r,
                         "Hamiltonian map composed with phi embeds W(r) into H(2r)",
                         rep["ok"], _summary(rep)))
    return out


def _summary(rep):
    keys = ("rank", "injective", "bracket_pairs_checked", "pmap_elements_checked", "image_in_target")
    d = {k: rep[k] for k in keys}
    d["bracket_failures"] = rep["bracket_failures"][:3]
    d["pmap_failures"] = rep["pmap_failures"][:3]
    return d


def suite_forms(cfg):
    out = []
    for n in _ns(cfg):
        require_envelope(cfg, n)
        bad = form_divergence_identity(n, cfg.p)
        out.append(check("forms.volume_divergence.n%d" % n,
                         "Lie derivative of the volume form equals divergence times the form",
                         not bad, {"failures": bad[:5]}))
        A = annihilator_of_form("S", n, cfg.p)
        K = divergence_kernel(cfg.p, n)
        out.append(check("forms.volume_stabilizer_is_divergence_kernel.n%d" % n,
                         "stabilizer of the volume form equals the divergence kernel",
                         A.equals(K), {"stabilizer_dim": A.dim, "kernel_dim": K.dim}))
        W = witt_algebra(cfg.p, n)
        rng = rng_for(cfg, "forms.operator_commutator.n%d" % n)
        ok = True
        for _ in range(min(cfg.samples, 50)):
            D = W.derivation(rng.integers(0, cfg.p, W.dim))
            E = W.derivation(rng.integers(0, cfg.p, W.dim))
            ok = ok and operator_commutator_check(D, E)
        out.append(check("forms.operator_commutator.n%d" % n,
                         "bracket of derivations is the operator commutator",
                         ok, {"samples": min(cfg.samples, 50)}))
    return out


def suite_cartan(cfg):
    out = []
    p = cfg.p
    for n in _ns(cfg):
        require_envelope(cfg, n)
        W = witt_algebra(p, n)
        out.append(check("cartan.dim_W.n%d" % n, "dim W(n) = n p^n by basis enumeration",
                         W.dim == n * p ** n and len(W.labels) == W.dim, {"dim": W.dim}))
    kinds = []
    for n in _ns(cfg):
        if n >= 2:
            kinds.append(("S", n))
        if n % 2 == 0:
            kinds.append(("H", n))
        if n % 2 == 1 and n >= 3:
            kinds.append(("K", n))
    for kind, n in kinds:
        B = build_family(kind, n, p)
        expected = {
            "S": (n - 1) * (p ** n - 1),
            "H": p ** n - 2,
            "K": p ** n - (1 if (n + 3) % p == 0 else 0),
        }[kind]
        out.append(check("cartan.dim_%s.n%d" % (kind, n),
                         "dimension of the simple subalgebra agrees with two constructions",
                         B.dim == expected and B.restricted,
                         {"dim": B.dim, "expected": expected, "restricted": B.restricted,
                          "cross_check": B.meta.get("cross_check"), "graded": B.meta["graded"]}))
        if kind == "H":
            r = n // 2
            ker, im, hpp = hamiltonian_kernel_and_image(r, p)
            Hp = hamiltonian_image(r, p)
            out.append(check("cartan.hamiltonian_image.n%d" % n,
                             "image of the Hamiltonian map has kernel k and codimension 2r in the form stabilizer",
                             ker == 1 and hpp - im == 2 * r and Hp.dim == im,
                             {"kernel": ker, "image": im, "stabilizer": hpp}))
        if kind == "K":
            Kpp = build_family("K''", n, p)
            out.append(check("cartan.contact_stabilizer.n%d" % n,
                             "contact stabilizer has dimension p^n",
                             Kpp.dim == p ** n, {"dim": Kpp.dim}))
    return out


def suite_poisson(cfg):
    out = []
    p = cfg.p
    for r in _rs(cfg):
        require_envelope(cfg, 2 * r)
        P = poisson_algebra(r, p, cfg.center)
        n = 2 * r
        one = TruncPoly.one(p, n)
        try:
            _, M, rep = realize_l_in_poisson(r, p)
            ok, detail = True, rep
        except RlctError as e:
            ok, detail = False, getattr(e, "witness", str(e))
        out.append(check("poisson.l_realization.r%d" % r,
                         "z, 1+x_{r+1}, x_i(1+x_{i+r}) realize l_r with its p-map",
                         ok, detail))
        # bracket table [t_i, 1+x_{r+1}] = δ_{i1}(1+x_{r+1})
        u = one + TruncPoly.var(r + 1, p, n)
        table = []
        for i in range(1, r + 1):
            t = TruncPoly.var(i, p, n) * (one + TruncPoly.var(i + r, p, n))
            b = P.bracket_poly(t, u)
            table.append(b == (u if i == 1 else TruncPoly.zero(p, n)))
        out.append(check("poisson.delta_table.r%d" % r,
                         "[x_i(1+x_{i+r}), 1+x_{r+1}] = delta_{i1}(1+x_{r+1})",
                         all(table), {"rows": table}))
        up = P.pmap_poly(u)
        out.append(check("poisson.unit_shift_pmap.r%d" % r, "(1+x_{r+1})^[p] = 1",
                         up == one, {"value": up.to_json()}))
        tor = []
        for i in range(1, r + 1):
            t = TruncPoly.var(i, p, n) * (one + TruncPoly.var(i + r, p, n))
            tor.append(P.pmap_poly(t) == t)
        out.append(check("poisson.torus_pmap.r%d" % r, "(x_i(1+x_{i+r}))^[p] = x_i(1+x_{i+r})",
                         all(tor), {"rows": tor}))
        # φ_λ
        D = P.derived()
        comp = linalg.nullspace(D, p)  # forms vanishing on P^(1)
        rng = rng_for(cfg, "poisson.phi_lambda.r%d" % r)
        lam = rng.integers(1, p) * comp[0] % p
        F = phi_lambda(lam, P)
        fixed = not ((F.matrix @ D.T - D.T) % p).any()
        brk = True
        for i in range(P.dim):
            A = P.ad(F.matrix[:, i])
            lhs = F.matrix @ P.ad_basis[i] % p
            if ((A @ F.matrix - lhs) % p).any():
                brk = False
                break
        inv = linalg.rank(F.matrix, p) == P.dim
        out.append(check("poisson.phi_lambda.r%d" % r,
                         "f -> f + lambda(f) fixes the derived algebra and is a Lie automorphism",
                         fixed and brk and inv,
                         {"fixes_derived": fixed, "preserves_brackets": brk, "bijective": inv,
                          "lambda_support": np.nonzero(lam)[0].tolist()}))
        out.append(check("poisson.derived_codim.r%d" % r, "P(2r)^(1) has codimension 1",
                         D.shape[0] == P.dim - 1, {"dim": int(D.shape[0])}))
    return out


def suite_contact(cfg):
    out = []
    p = cfg.p
    r = cfg.r or 1
    n = 2 * r + 1
    require_envelope(cfg, n)
    try:
        C = build_contact(r, p)
    except RlctError as e:
        return [check("contact.theta_bijective.r%d" % r, "contact form evaluation is bijective",
                      False, str(e))]
    out.append(check("contact.theta_bijective.r%d" % r,
                     "contact form evaluation is a bijection from the contact stabilizer",
                     linalg.rank(C.theta, p) == C.dim, {"scale": C.c}))
    one = TruncPoly.one(p, n)
    u = one + TruncPoly.var(n, p, n)
    q = TruncPoly.var(r, p, n) * TruncPoly.var(2 * r, p, n)
    b1 = C.bracket_poly(q, u)
    out.append(check("contact.bracket_q_u.r%d" % r, "<x_r x_2r, 1+x_n> = 0",
                     b1.is_zero(), {"value": b1.to_json()}))
    b2 = C.bracket_poly(u, q * u)
    detail = {"value": b2.to_json()}
    if b2 == (q * u).scale(2):
        # the two summands are recorded only when their total is reproduced
        detail["summand_one"] = C.bracket_poly(one, q * u).to_json()
        detail["summand_x_n"] = C.bracket_poly(TruncPoly.var(n, p, n), q * u).to_json()
    out.append(check("contact.bracket_u_qu.r%d" % r, "<1+x_n, x_r x_2r (1+x_n)> = 2 x_r x_2r (1+x_n)",
                     b2 == (q * u).scale(2), detail))
    pu = C.pmap_poly(u)
    out.append(check("contact.pmap_u.r%d" % r, "(1+x_n)^[p] = 1+x_n", pu == u, {"value": pu.to_json()}))
    pq = C.pmap_poly(q * u)
    out.append(check("contact.pmap_qu.r%d" % r, "(x_r x_2r (1+x_n))^[p] = x_r x_2r",
                     pq == q, {"value": pq.to_json()}))
    K = C.derived()
    uni = is_p_unipotent(np.eye(C.dim, dtype=np.int64), C, modulo=K)
    out.append(check("contact.quotient_unipotent.r%d" % r,
                     "the contact stabilizer modulo its derived algebra is p-unipotent",
                     uni, {"quotient_dim": C.dim - int(K.shape[0])}))
    return out


def _tori_targets(cfg):
    if cfg.n is not None:
        n = cfg.n
        kinds = ["W"] + (["S"] if n >= 2 else []) + (["H"] if n % 2 == 0 else []) \
            + (["K"] if n % 2 == 1 and n >= 3 else [])
        return [(k, n) for k in kinds]
    if cfg.p == 3:
        return [("W", 1), ("W", 2), ("W", 3), ("S", 2), ("S", 3), ("H", 2), ("H", 4), ("K", 3)]
    return [("W", 1), ("W", 2), ("S", 2), ("H", 2), ("K", 3)]


def suite_tori(cfg):
    out = []
    p = cfg.p
    for kind, n in _tori_targets(cfg):
        require_envelope(cfg, n)
        T = agt2_torus(kind, n, p, strict=False)
        rep = dict(T.report)
        if kind == "H":
            _, note = h_torus(n // 2, p)
            rep["builder"] = note
        out.append(check("tori.listed.%s%d" % (kind, n),
                         "listed torus is a split torus of dimension mu inside the algebra with f_0 = 0",
                         rep["ok"], rep))
    if cfg.n is None or cfg.n in (2, 3):
        for n in ([cfg.n] if cfg.n else [2, 3]):
            F = ThetaFrame(n, p)
            bad = F.check_theta_action()
            out.append(check("tori.theta_action.n%d" % n,
                             "theta_i acts diagonally on the xi monomials",
                             not bad, {"failures": [list(map(list, b[:1])) + [b[1]] for b in bad[:3]]}))
            inv = F.invariants()
            kz = F.k_zeta()
            inv_ok = inv.shape[0] == p and linalg.rank(np.concatenate([inv, kz]), p) == p
            printed = linalg.rank(np.concatenate([inv, F.k_zeta(F.zeta_printed)]), p)
            out.append(check("tori.invariants_k_zeta.n%d" % n,
                             "torus invariants in the ring are k[zeta]",
                             inv_ok, {"dim": int(inv.shape[0]),
                                      "rank_with_alternative_zeta": printed}))
            Cz = F.centralizer()
            Ce = F.centralizer_expected()
            c_ok = Cz.shape[0] == n * p and Ce.shape[0] == n * p and linalg.rank(
                np.concatenate([Cz, Ce]), p) == n * p
            out.append(check("tori.centralizer_frame.n%d" % n,
                             "centralizer of the torus is the sum of k[zeta] theta_i",
                             c_ok and F.is_module_basis(), {"dim": int(Cz.shape[0])}))
    if cfg.n is None or cfg.n == 2:
        W = witt_algebra(p, 2)
        T = agt2_torus("W", 2, p)
        h = centralizer(T.basis, W)
        rep = cartan_nilpotency_check(h, T.basis, W, samples=20, rng=rng_for(cfg, "tori.cartan.W2"))
        out.append(check("tori.cartan.W2", "centralizer of the torus is a nilpotent Cartan subalgebra",
                         rep["ok"], rep))
    return out


def _family_within(kind, n, p):
    if kind == "W":
        return None
    return build_family(kind, n, p).vectors


def weights_report(kind, n, p):
    T = agt2_torus(kind, n, p)
    dec = weight_decomposition(T, "adjoint", _family_within(kind, n, p))
    return dec


def suite_weights(cfg):
    out = []
    p = cfg.p
    if cfg.family:
        targets = [(cfg.family, cfg.n)]
    elif p == 3:
        targets = [("W", 2), ("S", 3), ("H", 4)]
    else:
        targets = [("W", 2), ("S", 2), ("H", 2)]
    for kind, n in targets:
        require_envelope(cfg, n)
        dec = weights_report(kind, n, p)
        dims = dec.dims()
        mu = dec.mu
        zero = tuple([0] * mu)
        nonzero = sorted({d for lam, d in dims.items() if lam != zero})
        full = len(dims) == p ** mu
        detail = {"weights": dec.to_json(), "zero_dim": dims.get(zero, 0),
                  "nonzero_dims": nonzero, "total": sum(dims.values())}
        out.append(check("weights.%s%d" % (kind, n),
                         "adjoint weights under the listed torus fill F_p^mu with equal nonzero root spaces",
                         full and len(nonzero) == 1, detail))
    return out


def weyl_data(n, p, exhaustive=True):
    mats = list(gl_elements(n, p)) if exhaustive else gl_generators(n, p)
    data = []
    for A in mats:
        Phi, B = weyl_substitution(A, p)
        data.append((A, Phi, B))
    return data


def suite_weyl(cfg):
    p = cfg.p
    n = cfg.n or 2
    require_envelope(cfg, n)
    out = []
    data = weyl_data(n, p, cfg.exhaustive or (n == 2 and p == 3))
    out.append(check("weyl.normalizes.n%d" % n, "every substitution automorphism normalizes the torus",
                     True, {"elements": len(data)}))
    key = lambda M: tuple((np.asarray(M) % p).ravel().tolist())
    induced = {key(A): key(B) for A, _, B in data}
    inj = len(set(induced.values())) == len(induced)
    hom = True
    if cfg.exhaustive or (n == 2 and p == 3):
        for A1, _, B1 in data:
            for A2, _, B2 in data:
                prod = key(A1 @ A2 % p)
                if induced[prod] != key(B1 @ B2 % p):
                    hom = False
                    break
            if not hom:
                break
        onto = set(induced.values()) == set(induced.keys())
    else:
        onto = None
    transpose = all(key(B) == key(linalg.inverse(A, p).T) for A, _, B in data)
    out.append(check("weyl.induced_map.n%d" % n,
                     "A -> induced matrix on the torus is an injective homomorphism onto GL_n(F_p)",
                     inj and hom and onto is not False,
                     {"injective": inj, "homomorphism": hom, "onto": onto, "order": len(data),
                      "induced_is_inverse_transpose": transpose}))
    # orbit constancy: Φ carries g_λ into g_{λ'}
    T = agt2_torus("W", n, p)
    dec = weight_decomposition(T)
    bad = []
    for A, Phi, B in data:
        Binv_T = linalg.inverse(B.T % p, p)
        for lam, V in dec.spaces.items():
            lam2 = tuple((Binv_T @ np.array(lam)) % p)
            V2 = dec.spaces.get(tuple(int(x) for x in lam2))
            img = (Phi @ V.T % p).T
            if V2 is None or V2.shape[0] != V.shape[0] or linalg.rank(np.concatenate([V2, img]), p) != V.shape[0]:
                bad.append({"A": A.tolist(), "lambda": list(lam)})
    out.append(check("weyl.orbit_constancy.n%d" % n,
                     "substitutions permute weight spaces along induced character orbits",
                     not bad, {"failures": bad[:3]}))
    return out


def suite_invariants(cfg):
    p = cfg.p
    out = []
    ms = [1, 2] if p == 3 else [1, 2]
    for m in ms:
        coeffs = dickson_coefficients(m, p)
        from .invariants import dickson_product
        prod = dickson_product(m, p)
        off = [d for d in prod if d not in {p ** i for i in range(m + 1)}]
        inv = all(c.linear_substitute(g) == c for c in coeffs[:-1] for g in gl_generators(m, p))
        degs = all(coeffs[i].is_homogeneous() and coeffs[i].degree() == p ** m - p ** i for i in range(m))
        out.append(check("invariants.dickson.m%d" % m,
                         "Dickson coefficients are GL_m(F_p)-invariant and supported on p-power degrees",
                         not off and inv and degs,
                         {"off_degrees": off, "invariant": inv, "degrees_ok": degs,
                          "coefficients": [str(c) for c in coeffs]}))
    s = min(cfg.samples, 50)
    if cfg.family:
        targets = [(cfg.family, cfg.n)]
    elif p == 3:
        targets = [("W", 2), ("S", 3)]
    else:
        targets = [("W", 2)]
    for kind, n in targets:
        require_envelope(cfg, n)
        rep = restriction_identity_check(kind, n, p, s, rng_for(cfg, "invariants.restriction.%s%d" % (kind, n)))
        out.append(check("invariants.restriction.%s%d" % (kind, n),
                         "characteristic polynomial on toral points and semisimple samples is a power of Q",
                         rep["ok"], rep))
        if kind in ("W", "S"):
            rep = phi_beta_agreement(kind, n, p, s if kind == "S" else cfg.samples,
                                     rng_for(cfg, "invariants.beta.%s%d" % (kind, n)))
            out.append(check("invariants.beta.%s%d" % (kind, n),
                             "ratio of beta values reproduces the coefficients of Q",
                             rep["ok"], rep))
        if kind == "S":
            rep = phi_semisimple_invariance(kind, n, p, 20, rng_for(cfg, "invariants.semisimple.%s%d" % (kind, n)))
            out.append(check("invariants.semisimple.%s%d" % (kind, n),
                             "coefficients of Q agree on x and x_s when the nilpotent part lies in g_(0)",
                             rep["ok"], rep))
            k = cfg.flags.get("survey", 10000)
            rep = closure_survey(kind, n, p, k, rng_for(cfg, "invariants.closure.%s%d" % (kind, n)))
            out.append(check("invariants.closure.%s%d" % (kind, n),
                             "one-generated p-subalgebras have dimension at most mu+1, attained",
                             rep["max_d"] == build_family(kind, n, p).meta["mu"] + 1,
                             {"samples": k, "counts": rep["counts"], "witness": rep["witness"],
                              "ell": ell_values(kind, n, p, rng_for(cfg, "invariants.ell.%s%d" % (kind, n)),
                                                max_d=rep["max_d"])}))
    if not cfg.family and p == 3:
        rep = hamiltonian_char_poly_shape(2, p, s, rng_for(cfg, "invariants.hamiltonian_shape.r2"))
        out.append(check("invariants.hamiltonian_shape.r2",
                         "characteristic polynomial of D_H(f) on the ring is a p-polynomial in T^(p^r)",
                         rep["ok"], rep))
    return out


def jordan_chevalley_oracle(x, alg):
    """x_s as x^{[p]^K}: K >= d and K a multiple of the p-map period on the torus part."""
    pc = PClosure(x, alg)
    d = pc.d
    seq = [np.asarray(x) % alg.p]
    for _ in range(d):
        seq.append(alg.pmap(seq[-1]))
    start = seq[-1]
    y, L = alg.pmap(start), 1
    while ((y - start) % alg.p).any():
        y = alg.pmap(y)
        L += 1
    K = -(-d // L) * L if d else 0
    y = np.asarray(x) % alg.p
    for _ in range(K):
        y = alg.pmap(y)
    return y


def jc_properties(x, alg):
    """The five properties of the Jordan-Chevalley output, plus the oracle."""
    p = alg.p
    pc = PClosure(x, alg)
    xs, xn = pc.jordan_chevalley()
    E = linalg.EchelonBasis(alg.dim, p)
    if pc.d:
        E.add(pc.powers)
    from .restricted import is_p_nilpotent, is_torus
    props = {
        "sum": not ((xs + xn - x) % p).any(),
        "in_closure": bool(E.contains(xs) and E.contains(xn)),
        "commute": not alg.bracket(xs, xn).any(),
        "semisimple": is_torus(PClosure(xs, alg).powers, alg) if xs.any() else True,
        "nilpotent": is_p_nilpotent(xn, alg),
        "oracle": not ((jordan_chevalley_oracle(x, alg) - xs) % p).any(),
    }
    return props


def suite_restricted(cfg):
    p = cfg.p
    out = []
    algs = [("W2", witt_algebra(p, 2)), ("P2", poisson_algebra(1, p, cfg.center))]
    for name, A in algs:
        rng = rng_for(cfg, "restricted.jacobson.%s" % name)
        bad = []
        for _ in range(cfg.samples if cfg.samples else 200):
            x = rng.integers(0, p, A.dim)
            y = rng.integers(0, p, A.dim)
            lhs = A.pmap((x + y) % p)
            rhs = (A.pmap(x) + A.pmap(y) + sum(jacobson_s_terms(x, y, A))) % p
            if ((lhs - rhs) % p).any() and len(bad) < 3:
                bad.append({"x": x.tolist(), "y": y.tolist()})
        out.append(check("restricted.jacobson.%s" % name,
                         "(x+y)^[p] = x^[p] + y^[p] + sum s_i(x,y)", not bad,
                         {"samples": cfg.samples, "failures": bad}))
        rng = rng_for(cfg, "restricted.jordan_chevalley.%s" % name)
        fails = []
        adj = True
        for _ in range(cfg.samples):
            x = rng.integers(0, p, A.dim)
            props = jc_properties(x, A)
            if not all(props.values()) and len(fails) < 3:
                fails.append({"x": x.tolist(), "props": props})
            adj = adj and adjoint_pmap_consistency(x, A)
        out.append(check("restricted.jordan_chevalley.%s" % name,
                         "x = x_s + x_n in (kx)_p, commuting, semisimple plus p-nilpotent, matching x^[p]^K",
                         not fails, {"samples": cfg.samples, "failures": fails}))
        out.append(check("restricted.adjoint_pmap.%s" % name, "ad(x^[p]) = (ad x)^p",
                         adj, {"samples": cfg.samples}))
    return out


RUNNERS = {
    "embeddings": suite_embeddings,
    "forms": suite_forms,
    "cartan": suite_cartan,
    "poisson": suite_poisson,
    "contact": suite_contact,
    "tori": suite_tori,
    "weights": suite_weights,
    "weyl": suite_weyl,
    "invariants": suite_invariants,
    "restricted": suite_restricted,
}


def run_suite(cfg):
    """Run one suite (or "all") and return the checks sorted by id."""
    check_prime(cfg.p)
    if cfg.p < 3:
        raise UsageError("p must be at least 3")
    if cfg.suite == "all":
        names = SUITES
    elif cfg.suite in RUNNERS:
        names = (cfg.suite,)
    else:
        raise UsageError("unknown suite %r" % cfg.suite)
    checks = []
    for name in names:
        checks.extend(RUNNERS[name](cfg))
    return sorted(checks, key=lambda c: c["id"])


def make_report(tool_params, checks):
    summary = {"pass": 0, "fail": 0, "skip": 0}
    for c in checks:
        summary[c["status"]] += 1
    return {"tool": "rlct", "params": tool_params, "checks": checks, "summary": summary}

