"""The acceptance battery: every headline identity and transformation law,
each runnable standalone and bundled for the CLI and the test suite."""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction

from . import qseries as qs
from .characters import (CharacterRequest, anti_invariant, character,
                         check_denominator_identity, conformal_anomaly)
from .config import Config
from .lattice import Weight, inner, norm_sq
from .modular import (PSI_I_ARROWS, YPoint, eval_character, eval_qseries,
                      point_to_weight, sample_points, sin_product,
                      poisson_check, transition, verify_S, verify_T,
                      verify_props, verify_sl2_closure, weight_to_point)
from .roots import (RootSystemCtx, enumerate_dominant, phi_involution, rho)
from .superalg import (check_bracket_relations, osp_irreducible_dim,
                       super_character, super_denominator,
                       super_denominator_height_cap, verma_reducible,
                       integrable)


def _crit_denominator(quick, twisted, cfg):
    ranks = (1, 2) if quick else (1, 2, 3)
    reports = []
    for l in ranks:
        rep = check_denominator_identity(l, depth=10, twisted=twisted)
        reports.append(rep)
    return {"pass": all(r["equal"] for r in reports), "reports": reports}


def criterion_1(quick=False, cfg=None):
    """Denominator identity, coefficientwise exact, l in {1,2,3}, depth 10."""
    return _crit_denominator(quick, False, cfg)


def criterion_2(quick=False, cfg=None):
    """Twisted denominator identity, same ranks and depth."""
    return _crit_denominator(quick, True, cfg)


def criterion_3(quick=False, cfg=None):
    """Super-denominator equals the twisted anti-invariant route, depth 8."""
    details = []
    for l in (1, 2):
        hc = super_denominator_height_cap(l, 8)
        sd = super_denominator(l, 8, hc)
        anti = anti_invariant(Weight.zero(l), "I", True, 8, hc)
        shifted = anti.shift_apex_delta(norm_sq(rho(l)) / (2 * (2 * l + 1)))
        details.append({"rank": l, "equal": sd == shifted,
                        "terms": len(sd.terms)})
    return {"pass": all(d["equal"] for d in details), "details": details}


def criterion_4(quick=False, cfg=None):
    """chi_0 = 1 to depth 12 (l <= 3); untwisted characters nonnegative with
    apex coefficient 1 for all level-2 dominant weights, l <= 2, depth 8."""
    details = []
    ranks = (1, 2) if quick else (1, 2, 3)
    for l in ranks:
        ctx = RootSystemCtx.build(l)
        ch = character(CharacterRequest(ctx, Weight.zero(l), 0, "I", False, 12))
        ok = (ch.terms == {(0,) * (l + 1): 1} and ch.apex == Weight.zero(l))
        details.append({"check": f"chi_0 rank {l}", "pass": ok})
    for l in (1, 2):
        ctx = RootSystemCtx.build(l)
        for lam in enumerate_dominant(l, 2):
            ch = character(CharacterRequest(ctx, lam, 2, "I", False, 8))
            ok = (all(c >= 0 for c in ch.terms.values())
                  and ch.terms.get((0,) * (l + 1)) == 1
                  and ch.apex == (lam - Weight.delta_weight(l).scale(
                      conformal_anomaly(lam))))
            details.append({"check": f"chi nonneg rank {l}", "pass": ok})
    return {"pass": all(d["pass"] for d in details), "details": details}


def criterion_5(quick=False, cfg=None):
    """Super-character equals the twisted character termwise, depth 8,
    through independent code paths."""
    details = []
    for l in (1, 2):
        ctx = RootSystemCtx.build(l)
        for lam in enumerate_dominant(l, 2):
            sch = super_character(lam, 8)
            tw = character(CharacterRequest(ctx, lam, 2, "I", True, 8),
                           height_cap=sch.height_cap)
            ok = sch == tw.shift_apex_delta(conformal_anomaly(lam))
            details.append({"rank": l, "pass": ok, "terms": len(sch.terms)})
    return {"pass": all(d["pass"] for d in details), "details": details}


def _lemma_points(l):
    return sample_points(l, 3)


def criterion_6(quick=False, cfg=None):
    """S-transformation laws of the four transformation lemmas at three
    generic points, rel err <= 1e-6; corollary constants at 1e-8; formal
    series cross-check at depth 12."""
    cfg = cfg or Config()
    worst = 0.0
    details = []
    ranks = (1,) if quick else (1, 2)
    for l in ranks:
        pts = _lemma_points(l)
        for lemma in ("4.2", "4.3", "4.4", "4.5"):
            for lam in enumerate_dominant(l, 2):
                for y in pts:
                    rep = verify_S(lemma, lam, 2, y, cfg.tol, cfg.theta_tol)
                    worst = max(worst, rep.rel_err)
                    details.append({"lemma": lemma, "rank": l,
                                    "rel_err": rep.rel_err, "pass": rep.passed})
            rep0 = verify_S(lemma, Weight.zero(l), 0, pts[0], 1e-8, 1e-12)
            details.append({"lemma": lemma + " corollary", "rank": l,
                            "rel_err": rep0.rel_err, "pass": rep0.passed})
    # formal q-expansion cross-check of chi at depth 12, Im tau = 1.1
    l = 1
    ctx = RootSystemCtx.build(l)
    y = YPoint(0.21 + 1.1j, (0.13 + 0.06j,), 0.04)
    for lam in enumerate_dominant(l, 2):
        ch = character(CharacterRequest(ctx, lam, 2, "I", False, 12))
        v_formal = eval_qseries(ch, "I", y)
        v_direct = eval_character(lam, "I", False, y, 1e-12)
        rel = abs(v_formal - v_direct) / abs(v_direct)
        details.append({"lemma": "series cross-check", "rank": l,
                        "rel_err": rel, "pass": rel <= 1e-6})
        worst = max(worst, rel)
    return {"pass": all(d["pass"] for d in details), "worst_rel_err": worst,
            "checks": len(details)}


def criterion_7(quick=False, cfg=None):
    """T-transformation laws with exact phases (type II swaps the twist),
    agreement to 1e-10."""
    cfg = cfg or Config()
    worst = 0.0
    details = []
    ranks = (1,) if quick else (1, 2)
    for l in ranks:
        pts = _lemma_points(l)
        for lemma in ("4.2", "4.3", "4.4", "4.5"):
            for lam in enumerate_dominant(l, 2):
                for y in pts:
                    rep = verify_T(lemma, lam, 2, y, cfg.phase_tol, 1e-12)
                    worst = max(worst, rep.rel_err)
                    details.append({"lemma": lemma, "rank": l,
                                    "rel_err": rep.rel_err, "pass": rep.passed})
    return {"pass": all(d["pass"] for d in details), "worst_rel_err": worst,
            "checks": len(details)}


def criterion_8(quick=False, cfg=None):
    """Propositions for normalized characters (S and T laws, conformal
    anomaly phases); the type-II S-law is the Kac-Peterson case."""
    cfg = cfg or Config()
    worst = 0.0
    details = []
    ranks = (1,) if quick else (1, 2)
    for l in ranks:
        y = _lemma_points(l)[0]
        for prop in ("4.6", "4.7", "4.8", "4.9"):
            for lam in enumerate_dominant(l, 2):
                for law in ("S", "T"):
                    rep = verify_props(prop, lam, 2, y, cfg.tol,
                                       cfg.theta_tol, law)
                    worst = max(worst, rep.rel_err)
                    details.append({"prop": prop, "law": law, "rank": l,
                                    "rel_err": rep.rel_err,
                                    "pass": rep.passed})
    return {"pass": all(d["pass"] for d in details), "worst_rel_err": worst,
            "checks": len(details)}


def criterion_9(quick=False, cfg=None):
    """Mapping table of the S/T arrows between the three character families
    (least squares), Gram rank 3|P_{2,+}|, and the closure of the fourth
    family under S and T."""
    cfg = cfg or Config()
    rep = verify_sl2_closure(1, 2, cfg.tol, cfg.theta_tol)
    rep_psi = verify_sl2_closure(1, 2, cfg.tol, cfg.theta_tol,
                                 arrows=PSI_I_ARROWS, include_gram=False)
    return {"pass": rep["pass"] and rep_psi["pass"],
            "arrows": rep["arrows"] + rep_psi["arrows"],
            "gram_rank": rep["gram_rank"],
            "expected_gram_rank": rep["expected_gram_rank"]}


def criterion_10(quick=False, cfg=None):
    """Poisson resummation on Z^l (5 seeded random (a, tau) per rank,
    rel err <= 1e-8) and the sine product formula for 2 <= N <= 50."""
    cfg = cfg or Config()
    rng = random.Random(20240 + 7)
    details = []
    ranks = (1, 2) if quick else (1, 2, 3)
    for l in ranks:
        for _ in range(5):
            a = tuple(complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.5, 0.5))
                      for _ in range(l))
            tau = complex(rng.uniform(-0.9, 0.9), rng.uniform(0.5, 2.0))
            rep = poisson_check(l, a, tau, cfg.poisson_tol)
            details.append({"rank": l, "rel_err": rep.rel_err,
                            "pass": rep.passed})
    sine_ok = True
    for n in range(2, 51):
        prod, closed = sin_product(n)
        if abs(prod / closed - 1) > 1e-10:
            sine_ok = False
    details.append({"check": "sine product 2..50", "pass": sine_ok})
    return {"pass": all(d["pass"] for d in details), "checks": len(details)}


def criterion_11(quick=False, cfg=None):
    """osp(1|2): bracket identities exact on w_0..w_20; dim L(N alpha) =
    2N+1 for N <= 10; Verma reducibility iff lambda(H) in 2Z_{>=0}."""
    details = []
    for lam in (Fraction(0), Fraction(4), Fraction(-1), Fraction(1, 2),
                Fraction(7, 3), Fraction(9)):
        bad = check_bracket_relations(lam, 20)
        details.append({"check": f"brackets lambda(H)={lam}", "pass": not bad})
    dims_ok = all(osp_irreducible_dim(N) == 2 * N + 1 for N in range(11))
    details.append({"check": "dim L(N alpha) = 2N+1, N <= 10", "pass": dims_ok})
    red_ok = all(verma_reducible(x) == expected for x, expected in (
        (Fraction(-1), False), (Fraction(1, 2), False), (Fraction(1), False),
        (Fraction(3), False), (Fraction(0), True), (Fraction(2), True),
        (Fraction(10), True)))
    details.append({"check": "reducible iff lambda(H) in 2Z>=0", "pass": red_ok})
    return {"pass": all(d["pass"] for d in details), "details": details}


def criterion_12(quick=False, cfg=None):
    """Coordinate geometry: the transition map squares to the identity, the
    phi involution and its projection intertwining hold exactly, and the
    commutative diagrams hold to 1e-12 on 100 random points."""
    rng = random.Random(991)
    n_pts = 30 if quick else 100
    exact_ok = True
    worst = 0.0
    for _ in range(n_pts):
        l = rng.choice((1, 2, 3))
        # rational layer: exact
        w = Weight(tuple(Fraction(rng.randint(-40, 40), rng.choice((1, 2, 4)))
                         for _ in range(l)),
                   Fraction(rng.randint(-20, 20), 2),
                   Fraction(rng.randint(-20, 20), 2))
        if phi_involution(phi_involution(w)) != w:
            exact_ok = False
        if phi_involution(w.project_finite("I")) != \
                phi_involution(w).project_finite("II"):
            exact_ok = False
        lhs = inner(phi_involution(w), phi_involution(w))
        if lhs != inner(w, w):
            exact_ok = False
        # complex layer
        y = YPoint(complex(rng.uniform(-1, 1), rng.uniform(0.4, 2.2)),
                   tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                         for _ in range(l)),
                   complex(rng.uniform(-1, 1), rng.uniform(-1, 1)))
        yy = transition(transition(y))
        worst = max(worst, abs(yy.tau - y.tau), abs(yy.t - y.t),
                    max(abs(a - b) for a, b in zip(yy.z, y.z)))
        # triangle: phi^(I) = transition o phi^(II) on the complex domain
        v = point_to_weight("II", y)
        y_I = weight_to_point("I", v)
        ty = transition(y)
        worst = max(worst, abs(y_I.tau - ty.tau), abs(y_I.t - ty.t),
                    max(abs(a - b) for a, b in zip(y_I.z, ty.z)))
        # involution square: phi^(II)(phi(v)) = phi^(I)(v)
        y_phi = weight_to_point("II", phi_involution(v))
        y_dir = weight_to_point("I", v)
        worst = max(worst, abs(y_phi.tau - y_dir.tau), abs(y_phi.t - y_dir.t),
                    max(abs(a - b) for a, b in zip(y_phi.z, y_dir.z)))
        # chart round trip
        rt = weight_to_point("II", point_to_weight("II", y))
        worst = max(worst, abs(rt.tau - y.tau), abs(rt.t - y.t),
                    max(abs(a - b) for a, b in zip(rt.z, y.z)))
    return {"pass": exact_ok and worst <= 1e-12, "exact_layer": exact_ok,
            "worst_complex_err": worst, "points": n_pts}


CRITERIA = (
    ("1 denominator identity", criterion_1),
    ("2 twisted denominator identity", criterion_2),
    ("3 super-denominator identity", criterion_3),
    ("4 character positivity / chi_0", criterion_4),
    ("5 super-character = twisted character", criterion_5),
    ("6 S-transformation lemmas", criterion_6),
    ("7 T-transformation lemmas", criterion_7),
    ("8 character transformation propositions", criterion_8),
    ("9 SL2(Z) closure and Gram rank", criterion_9),
    ("10 Poisson resummation / sine product", criterion_10),
    ("11 osp(1|2) structure", criterion_11),
    ("12 coordinate geometry", criterion_12),
)


def run_suite(quick=False, cfg=None, echo=print):
    cfg = cfg or Config()
    results = []
    for name, fn in CRITERIA:
        t0 = time.time()
        out = fn(quick=quick, cfg=cfg)
        out["name"] = name
        out["seconds"] = round(time.time() - t0, 3)
        results.append(out)
        if echo:
            status = "PASS" if out["pass"] else "FAIL"
            echo(f"[{status}] criterion {name}  ({out['seconds']:.2f}s)")
    return results
