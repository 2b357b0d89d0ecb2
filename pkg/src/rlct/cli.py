"""Command line front end: rlct {construct,verify,weights,weyl,dickson,invariants}."""

import argparse
import json
import sys
import warnings

from .errors import EnvelopeError, RlctError
from .suites import (
    SUITES,
    SuiteConfig,
    UsageError,
    in_envelope,
    make_report,
    run_suite,
    suite_invariants,
    suite_weights,
    suite_weyl,
    weights_report,
    weyl_data,
)

FAMILIES = ("W", "S", "H", "K", "K''", "P")


def _common(sp, family=True):
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--n", type=int)
    sp.add_argument("--r", type=int)
    if family:
        sp.add_argument("--family", choices=FAMILIES)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--out")
    sp.add_argument("--force", action="store_true")
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--center", choices=("toral", "unipotent"), default="toral")


def build_parser():
    ap = argparse.ArgumentParser(prog="rlct", description="Restricted Lie algebras of Cartan type over F_p")
    sub = ap.add_subparsers(dest="cmd", required=True)
    sp = sub.add_parser("construct", help="basis of W, S, H, K, K'' or the Poisson algebra")
    _common(sp)
    sp = sub.add_parser("verify", help="run a named verification suite")
    sp.add_argument("--suite", required=True)
    _common(sp)
    sp = sub.add_parser("weights", help="adjoint weight decomposition under the listed torus")
    _common(sp)
    sp = sub.add_parser("weyl", help="substitution automorphisms normalizing the W(n) torus")
    _common(sp, family=False)
    sp = sub.add_parser("dickson", help="Dickson coefficients as symbolic polynomials")
    sp.add_argument("--m", type=int, required=True)
    _common(sp, family=False)
    sp = sub.add_parser("invariants", help="characteristic polynomial and Q identities")
    _common(sp)
    return ap


def _config(args, suite):
    return SuiteConfig(
        suite=suite, p=args.p, n=args.n, r=args.r, family=getattr(args, "family", None),
        seed=args.seed, samples=args.samples, force=args.force,
        exhaustive=args.exhaustive, center=args.center,
    )


def _emit(obj, args):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args):
    from .cartan import build_family
    from .poisson import poisson_algebra

    fam = args.family or "W"
    if fam == "P":
        r = args.r or 1
        N = 2 * r
        if not args.force and not in_envelope(N, args.p):
            raise UsageError("P(%d) at p=%d is outside the envelope; pass --force" % (N, args.p))
        P = poisson_algebra(r, args.p, args.center)
        return {"family": "P", "p": args.p, "r": r, "center": args.center, "dim": P.dim,
                "basis": list(P.labels), "derived_dim": int(P.derived().shape[0])}, 0
    if args.n is None:
        raise UsageError("--n is required")
    if not args.force and not in_envelope(args.n, args.p):
        raise UsageError("W(%d) at p=%d is outside the envelope; pass --force" % (args.n, args.p))
    B = build_family(fam, args.n, args.p)
    out = B.to_json(fam)
    out["meta"] = {k: v for k, v in B.meta.items() if k not in ("p", "n")}
    return out, 0


def _report(args, cfg, checks):
    rep = make_report(cfg.params(), checks)
    return rep, 0 if rep["summary"]["fail"] == 0 else 1


def cmd_verify(args):
    if args.suite not in SUITES and args.suite != "all":
        raise UsageError("unknown suite %r; choose from %s or all" % (args.suite, ", ".join(SUITES)))
    cfg = _config(args, args.suite)
    return _report(args, cfg, run_suite(cfg))


def cmd_weights(args):
    fam = args.family or "W"
    if fam not in ("W", "S", "H"):
        raise UsageError("weights supports the families W, S and H")
    n = args.n or 2
    cfg = _config(args, "weights")
    cfg.family, cfg.n = fam, n
    rep, code = _report(args, cfg, suite_weights(cfg))
    rep["weights"] = weights_report(fam, n, args.p).to_json()
    return rep, code


def cmd_weyl(args):
    n = args.n or 2
    cfg = _config(args, "weyl")
    cfg.n = n
    rep, code = _report(args, cfg, suite_weyl(cfg))
    data = weyl_data(n, args.p, args.exhaustive)
    rep["group"] = {
        "order": len(data) if args.exhaustive else None,
        "elements": [{"A": A.tolist(), "induced": B.tolist()} for A, _, B in data],
    }
    return rep, code


def cmd_dickson(args):
    from .invariants import dickson_coefficients

    coeffs = dickson_coefficients(args.m, args.p, force=args.force)
    out = []
    for i, c in enumerate(coeffs):
        d = c.to_json()
        d["T_degree"] = args.p ** i
        d["text"] = str(c)
        out.append(d)
    return out, 0


def cmd_invariants(args):
    fam = args.family or "W"
    if fam not in ("W", "S", "H"):
        raise UsageError("invariants supports the families W, S and H")
    cfg = _config(args, "invariants")
    cfg.family = fam
    cfg.n = args.n or {"W": 2, "S": 3, "H": 4}[fam]
    cfg.flags["survey"] = max(args.samples, 1) * 10
    return _report(args, cfg, suite_invariants(cfg))


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "weights": cmd_weights,
    "weyl": cmd_weyl,
    "dickson": cmd_dickson,
    "invariants": cmd_invariants,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            obj, code = COMMANDS[args.cmd](args)
    except (UsageError, EnvelopeError) as e:
        sys.stderr.write("rlct: %s\n" % e)
        return 2
    except (ValueError, RlctError) as e:
        sys.stderr.write("rlct: %s\n" % e)
        return 2
    _emit(obj, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
