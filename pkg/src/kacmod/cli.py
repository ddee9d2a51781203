"""Command-line front end: root-datum dumps, character q-expansions,
identity checks, transformation-law verifiers and the acceptance suite.

Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage
error.  JSON output is deterministic: fixed key order, floats at 15
significant digits, complex numbers as [re, im] pairs.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import qseries as qs
from .characters import (CharacterRequest, character,
                         check_denominator_identity)
from .config import Config
from .lattice import Weight, frac_to_str, level, weight_to_json
from .modular import (PSI_I_ARROWS, YPoint, default_sample, poisson_check,
                      sin_product, smatrix, verify_S, verify_T,
                      verify_props, verify_sl2_closure)
from .roots import RootSystemCtx, enumerate_dominant, from_dynkin_labels
from .suite import run_suite
from .superalg import (check_bracket_relations, osp_action_matrix,
                       osp_irreducible_dim, super_character,
                       super_denominator, super_denominator_height_cap)
from .characters import anti_invariant, conformal_anomaly
from .lattice import norm_sq
from .roots import rho


def _f(x: float):
    return float(f"{x:.15g}")


def _c(x: complex):
    x = complex(x)
    return [_f(x.real), _f(x.imag)]


def _jsonable(obj):
    if isinstance(obj, complex):
        return _c(obj)
    if isinstance(obj, float):
        return _f(obj)
    if isinstance(obj, Fraction):
        return frac_to_str(obj)
    if isinstance(obj, Weight):
        return weight_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item") and callable(obj.item):
        return _jsonable(obj.item())  # numpy scalars
    return obj


def _emit(payload, as_json):
    if as_json:
        print(json.dumps(_jsonable(payload), indent=2))
    else:
        print(json.dumps(_jsonable(payload)))


def _parse_complex(s):
    return complex(s.replace(" ", "").replace("i", "j"))


def _point_from_args(args, l) -> YPoint:
    if getattr(args, "tau", None) is None:
        return default_sample(l)
    z = tuple(_parse_complex(v) for v in (args.z or "").split(",")) \
        if getattr(args, "z", None) else default_sample(l).z
    if len(z) != l:
        raise SystemExit(2)
    t = _parse_complex(args.t) if getattr(args, "t", None) else 0.05
    return YPoint(_parse_complex(args.tau), z, t)


def _report_payload(rep):
    return {
        "lhs": rep.lhs, "rhs": rep.rhs,
        "abs_err": rep.abs_err, "rel_err": rep.rel_err,
        "pass": rep.passed, "metadata": rep.metadata,
    }


# -- subcommand handlers -----------------------------------------------------

def cmd_roots(args, cfg):
    ctx = RootSystemCtx.build(args.rank)
    payload = {
        "rank": ctx.rank,
        "labels": list(ctx.labels),
        "colabels": list(ctx.colabels),
        "simple_roots_I": [weight_to_json(a) for a in ctx.simple_roots_I],
        "simple_roots_II": [weight_to_json(a) for a in ctx.simple_roots_II],
        "fundamental_weights_I": [weight_to_json(w) for w in ctx.fund_weights_I],
        "fundamental_weights_II": [weight_to_json(w) for w in ctx.fund_weights_II],
        "rho": weight_to_json(ctx.rho),
        "level_table_I": [frac_to_str(x) for x in ctx.level_table("I")],
        "level_table_II": [frac_to_str(x) for x in ctx.level_table("II")],
    }
    _emit(payload, args.json)
    return 0


def cmd_weights(args, cfg):
    lams = enumerate_dominant(args.rank, args.level)
    payload = {
        "rank": args.rank, "level": args.level, "count": len(lams),
        "weights": [{"index": i, "weight": weight_to_json(w)}
                    for i, w in enumerate(lams)],
    }
    _emit(payload, args.json)
    return 0


def cmd_char(args, cfg):
    l = args.rank
    labels = [int(x) for x in args.labels.split(",")]
    lam = from_dynkin_labels(l, labels)
    k = int(level(lam))
    ctx = RootSystemCtx.build(l)
    req = CharacterRequest(ctx, lam, k, args.sharp, args.twisted, args.depth)
    ch = character(req)
    payload = {
        "rank": l, "labels": labels, "level": k, "sharp": args.sharp,
        "twisted": args.twisted, "depth": args.depth,
        "conformal_anomaly": frac_to_str(conformal_anomaly(lam)),
        "truncation": {"height_cap": ch.height_cap, "q_cap": ch.q_cap},
        "apex": weight_to_json(ch.apex),
        "q_expansion": qs.qexpansion_json(ch),
    }
    _emit(payload, args.json)
    return 0


def cmd_check(args, cfg):
    if args.what != "denominator":
        raise SystemExit(2)
    rep = check_denominator_identity(args.rank, args.depth, args.twisted)
    payload = {"check": "denominator", "rank": args.rank, "depth": args.depth,
               "twisted": args.twisted, "pass": rep["equal"],
               "mismatches": rep["mismatches"],
               "first_mismatch_q": rep["first_mismatch_q"],
               "terms": rep["terms"]}
    _emit(payload, args.json)
    return 0 if rep["equal"] else 1


def cmd_smatrix(args, cfg):
    sm = smatrix(args.kind, args.level, args.rank)
    payload = {
        "kind": sm.kind, "level": sm.k, "rank": args.rank,
        "index": [weight_to_json(w) for w in sm.index],
        "entries": [[_c(e) for e in row] for row in sm.entries],
    }
    _emit(payload, True)
    return 0


def cmd_verify(args, cfg):
    l = args.rank
    if args.what == "s-lemma":
        y = _point_from_args(args, l)
        rep = verify_S(args.which, Weight.zero(l) if args.level == 0
                       else enumerate_dominant(l, args.level)[args.index],
                       args.level, y, args.tol, cfg.theta_tol)
    elif args.what == "t-lemma":
        y = _point_from_args(args, l)
        rep = verify_T(args.which, Weight.zero(l) if args.level == 0
                       else enumerate_dominant(l, args.level)[args.index],
                       args.level, y, args.tol, 1e-12)
    elif args.what == "prop":
        y = _point_from_args(args, l)
        lam = enumerate_dominant(l, args.level)[args.index]
        rep = verify_props(args.which, lam, args.level, y, args.tol,
                           cfg.theta_tol, args.law)
    elif args.what == "sl2":
        out = verify_sl2_closure(l, args.level, args.tol, cfg.theta_tol)
        out_psi = verify_sl2_closure(l, args.level, args.tol, cfg.theta_tol,
                                     arrows=PSI_I_ARROWS, include_gram=False)
        ok = out["pass"] and out_psi["pass"]
        _emit({"verify": "sl2", "rank": l, "level": args.level, "pass": ok,
               "closure": out, "psi_I_closure": out_psi}, True)
        return 0 if ok else 1
    elif args.what == "poisson":
        import random
        rng = random.Random(20240 + 7)
        reports = []
        for _ in range(5):
            a = tuple(complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.5, 0.5))
                      for _ in range(l))
            tau = complex(rng.uniform(-0.9, 0.9), rng.uniform(0.5, 2.0))
            reports.append(poisson_check(l, a, tau, args.tol))
        ok = all(r.passed for r in reports)
        _emit({"verify": "poisson", "rank": l, "pass": ok,
               "reports": [_report_payload(r) for r in reports]}, True)
        return 0 if ok else 1
    elif args.what == "sinprod":
        bad = []
        for n in range(2, args.nmax + 1):
            prod, closed = sin_product(n)
            if abs(prod / closed - 1) > args.tol:
                bad.append(n)
        _emit({"verify": "sinprod", "nmax": args.nmax, "pass": not bad,
               "failures": bad}, True)
        return 0 if not bad else 1
    else:
        raise SystemExit(2)
    _emit({"verify": args.what, "which": args.which,
           **_report_payload(rep)}, True)
    return 0 if rep.passed else 1


def cmd_super(args, cfg):
    if args.what == "verify":
        hc = super_denominator_height_cap(args.rank, args.depth)
        sd = super_denominator(args.rank, args.depth, hc)
        anti = anti_invariant(Weight.zero(args.rank), "I", True, args.depth, hc)
        shifted = anti.shift_apex_delta(
            norm_sq(rho(args.rank)) / (2 * (2 * args.rank + 1)))
        den_ok = sd == shifted
        char_ok = True
        ctx = RootSystemCtx.build(args.rank)
        for lam in enumerate_dominant(args.rank, args.level):
            sch = super_character(lam, args.depth)
            tw = character(
                CharacterRequest(ctx, lam, args.level, "I", True, args.depth),
                height_cap=sch.height_cap)
            if sch != tw.shift_apex_delta(conformal_anomaly(lam)):
                char_ok = False
        ok = den_ok and char_ok
        _emit({"super": "verify", "rank": args.rank, "level": args.level,
               "depth": args.depth, "denominator_pass": den_ok,
               "character_pass": char_ok, "pass": ok}, True)
        return 0 if ok else 1
    if args.what == "osp":
        n = args.N
        lam = Fraction(2 * n)
        dim = osp_irreducible_dim(n)
        bad = check_bracket_relations(lam, 2 * n + 6)
        payload = {
            "super": "osp", "N": n, "lambda_H": frac_to_str(lam),
            "dim": dim, "brackets_exact": not bad,
            "basis": [f"w_{i}" for i in range(dim)],
            "action_matrices": {
                g: [[frac_to_str(c) for c in row]
                    for row in osp_action_matrix(g, lam, dim - 1)]
                for g in ("E", "H", "F", "e", "f")},
        }
        _emit(payload, True)
        return 0
    raise SystemExit(2)


def cmd_suite(args, cfg):
    results = run_suite(quick=args.quick, cfg=cfg)
    ok = all(r["pass"] for r in results)
    if args.report:
        # timings stay on the console; the report file is byte-reproducible
        stripped = [{k: v for k, v in r.items() if k != "seconds"}
                    for r in results]
        with open(args.report, "w") as fh:
            json.dump(_jsonable({"pass": ok, "threads": cfg.threads,
                                 "results": stripped}), fh, indent=2)
    print(f"suite: {'PASS' if ok else 'FAIL'} "
          f"({sum(r['pass'] for r in results)}/{len(results)} criteria)")
    return 0 if ok else 1


# -- parser ------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="kacmod",
        description="Characters, theta series and modular transformation "
                    "laws of the twisted affine root system BC_l^(2).")
    p.add_argument("--config", default=None, help="key=value config file")
    sub = p.add_subparsers(dest="cmd", required=True)

    q = sub.add_parser("roots", help="dump the root datum")
    q.add_argument("--rank", type=int, required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(fn=cmd_roots)

    q = sub.add_parser("weights", help="dominant weights of a level")
    q.add_argument("--rank", type=int, required=True)
    q.add_argument("--level", type=int, required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(fn=cmd_weights)

    q = sub.add_parser("char", help="normalized (twisted) character")
    q.add_argument("--rank", type=int, required=True)
    q.add_argument("--labels", required=True,
                   help="comma-separated Dynkin labels m0,...,ml")
    q.add_argument("--depth", type=int, default=8)
    q.add_argument("--twisted", action="store_true")
    q.add_argument("--sharp", choices=("I", "II"), default="I")
    q.add_argument("--json", action="store_true")
    q.set_defaults(fn=cmd_char)

    q = sub.add_parser("check", help="identity checks")
    q.add_argument("what", choices=("denominator",))
    q.add_argument("--rank", type=int, required=True)
    q.add_argument("--depth", type=int, default=10)
    q.add_argument("--twisted", action="store_true")
    q.add_argument("--json", action="store_true")
    q.set_defaults(fn=cmd_check)

    q = sub.add_parser("smatrix", help="transformation matrices")
    q.add_argument("--kind", choices=("aI", "aI_II", "aII_I", "aII"),
                   required=True)
    q.add_argument("--rank", type=int, required=True)
    q.add_argument("--level", type=int, required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(fn=cmd_smatrix)

    q = sub.add_parser("verify", help="numerical transformation laws")
    q.add_argument("what", choices=("s-lemma", "t-lemma", "prop", "sl2",
                                    "poisson", "sinprod"))
    q.add_argument("--which", default="4.2",
                   help="lemma 4.2..4.5 or proposition 4.6..4.9")
    q.add_argument("--rank", type=int, default=1)
    q.add_argument("--level", type=int, default=2)
    q.add_argument("--index", type=int, default=0,
                   help="index into the dominant-weight list")
    q.add_argument("--law", choices=("S", "T"), default="S")
    q.add_argument("--tau", default=None, help="complex, e.g. 0.37+1.13i")
    q.add_argument("--z", default=None, help="comma-separated complex values")
    q.add_argument("--t", default=None)
    q.add_argument("--tol", type=float, default=1e-6)
    q.add_argument("--nmax", type=int, default=50)
    q.set_defaults(fn=cmd_verify)

    q = sub.add_parser("super", help="superalgebra checks")
    q.add_argument("what", choices=("verify", "osp"))
    q.add_argument("--rank", type=int, default=1)
    q.add_argument("--level", type=int, default=2)
    q.add_argument("--depth", type=int, default=8)
    q.add_argument("--N", type=int, default=3)
    q.set_defaults(fn=cmd_super)

    q = sub.add_parser("suite", help="run the acceptance battery")
    q.add_argument("--quick", action="store_true",
                   help="restrict to the rank {1,2} subset")
    q.add_argument("--report", default=None, help="write JSON results here")
    q.set_defaults(fn=cmd_suite)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = Config.load(args.config)
    try:
        return args.fn(args, cfg)
    except (ValueError, KeyError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
