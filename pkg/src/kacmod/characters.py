"""Formal theta series, (twisted) Weyl anti-invariants, product-form
denominators and normalized characters.

All series live below an apex in the cone apex - Z_{>=0}.Pi.  A level-m theta
orbit has the normal form

    sum_{nu in coset + m Z^l} (sign) e^{nu + (m/2) Lambda0 - (|nu|^2/2m) delta},

independent of the delta representative of its weight; the anti-invariants
sum such orbits over the finite Weyl group of either numeration (the type-II
route runs through the type-II signed-permutation action and provides an
independent grouping of the same W-sum).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import qseries as qs
from .lattice import Weight, inner, level, norm_sq
from .qseries import QSeries
from .roots import (RootSystemCtx, classify, dynkin_labels, enumerate_dominant,
                    is_positive, rho, root_coords)
from .weyl import enumerate_finite, enumerate_ker_psi_finite, finite_reflection


def is_integral_weight(w: Weight) -> bool:
    """Member of the weight lattice P (up to the delta coefficient)."""
    try:
        fr = [Fraction(c) for c in w.eps]
        lev = Fraction(2 * w.lambda0)
    except (TypeError, ValueError):
        return False
    if lev.denominator != 1:
        return False
    pars = {c % 1 for c in fr}
    if not pars <= {0, Fraction(1, 2)}:
        return False
    if len(pars) > 1:
        return False
    # half-integer finite part occurs exactly at odd level
    if pars == {Fraction(1, 2)} and lev % 2 == 0:
        return False
    if pars in ({0}, set()) and lev % 2 == 1:
        return False
    return True


def is_dominant(w: Weight) -> bool:
    labels = dynkin_labels(w.rank, w)
    return all(Fraction(m).denominator == 1 and m >= 0 for m in labels)


def theta_height_bound(l, m, base_norm_sq, depth) -> int:
    """Total height of any term with q-offset <= depth in a level-m theta
    orbit below an apex with squared finite norm base_norm_sq."""
    wnorm = math.sqrt(l * (l + 1) * (2 * l + 1) / 6)
    b = math.sqrt(float(base_norm_sq))
    r = math.sqrt(float(base_norm_sq) + 2 * m * depth)
    return math.ceil((2 * l + 1) * depth + wnorm * (b + r)) + 2


def default_height_cap(l, k, depth) -> int:
    m = k + 2 * l + 1
    base = max((norm_sq(lam + rho(l)) for lam in enumerate_dominant(l, k)),
               default=norm_sq(rho(l)))
    return theta_height_bound(l, m, base, depth) + 2 * l + 2


# ---------------------------------------------------------------------------
# Theta orbits
# ---------------------------------------------------------------------------

def _accumulate_theta(out: QSeries, coset_f, m: int, sign: int, twisted: bool):
    """Add one level-m theta orbit (coset coset_f) into out, whose apex must
    dominate the orbit.  Twisted orbits weight nu = coset + m*gamma by
    (-1)^(sum gamma_i).  Works in doubled integer coordinates."""
    l = out.rank
    apex2 = [2 * Fraction(c) for c in out.apex.eps]
    if any(a.denominator != 1 for a in apex2):
        raise ValueError("apex finite part not in the half-integer lattice")
    apex2 = [int(a) for a in apex2]
    cos2 = [2 * Fraction(c) for c in coset_f]
    if any(c.denominator != 1 for c in cos2):
        raise ValueError("coset not in the half-integer lattice")
    cos2 = [int(c) for c in cos2]
    base_nsq = sum(a * a for a in apex2)  # 4 |apex_f|^2
    qeff = out.q_cap if out.q_cap is not None else out.height_cap
    r2 = base_nsq + 8 * m * qeff  # 4 (|apex|^2 + 2 m qeff)
    rad = math.isqrt(r2) + 1
    ranges = []
    for c in cos2:
        lo = math.ceil((-rad - c) / (2 * m))
        hi = math.floor((rad - c) / (2 * m))
        ranges.append(range(lo, hi + 1))
    hcap, qcap = out.height_cap, out.q_cap

    def rec(i, nu2, gsum):
        if i == l:
            nsq = sum(x * x for x in nu2)
            num = nsq - base_nsq
            if num < 0:
                raise AssertionError("term above apex; apex not dominant")
            x, rem = divmod(num, 8 * m)
            if rem:
                raise AssertionError("non-integral q-offset")
            if qcap is not None and x > qcap:
                return
            vec = [x]
            acc = 2 * x  # 2x + partial sums of (apex - nu)
            tot = x
            for a, v in zip(apex2, nu2):
                d2, r2_ = divmod(a - v, 2)
                if r2_:
                    raise AssertionError("non-integral finite offset")
                acc += d2
                if acc < 0:
                    raise AssertionError("offset outside the positive cone")
                vec.append(acc)
                tot += acc
            if hcap is not None and tot > hcap:
                return
            c = sign
            if twisted and gsum % 2:
                c = -c
            out.add_term(tuple(vec), c)
            return
        c0 = cos2[i]
        for g in ranges[i]:
            v = c0 + 2 * m * g
            if v * v <= r2:
                rec(i + 1, nu2 + [v], gsum + g)

    rec(0, [], 0)


def alcove_rep(vec, m):
    """Dominant alcove representative of a finite vector modulo m Z^l and
    signed permutations: coordinates folded into [0, m/2], sorted descending."""
    out = []
    for x in vec:
        r = Fraction(x) % m
        if 2 * r > m:
            r = m - r
        out.append(r)
    return tuple(sorted(out, reverse=True))


def theta_formal(lam: Weight, sharp="I", twisted=False, depth=8,
                 height_cap=None) -> QSeries:
    """The formal level-k theta orbit of lam (k = level(lam) > 0).

    The result does not depend on the numeration: the two translation
    lattices agree modulo delta, so only the evaluation maps differ."""
    if sharp not in ("I", "II"):
        raise ValueError(f"sharp must be 'I' or 'II', got {sharp!r}")
    k = level(lam)
    if not (Fraction(k).denominator == 1 and k > 0):
        raise ValueError(f"theta series requires positive integer level, got {k}")
    if not is_integral_weight(lam):
        raise ValueError("theta series requires an integral weight")
    k = int(k)
    lam = lam.canonical()
    l = lam.rank
    apex_f = alcove_rep(lam.eps, k)
    apex_nsq = sum(c * c for c in apex_f)
    apex = Weight(apex_f, -apex_nsq / (2 * k), Fraction(k, 2))
    out = QSeries(l, apex, {}, height_cap, depth)
    _accumulate_theta(out, lam.eps, k, 1, twisted)
    return out


# ---------------------------------------------------------------------------
# Anti-invariants
# ---------------------------------------------------------------------------

def anti_invariant(lam: Weight, sharp="I", twisted=False, depth=8,
                   height_cap=None) -> QSeries:
    """A_{lam+rho} (twisted: A^psi_{lam+rho}) as a truncated series.

    lam must be dominant of even level k >= 0; the apex is
    (lam + rho) - (|lam+rho|^2 / 2(k+2l+1)) delta with coefficient 1."""
    if sharp not in ("I", "II"):
        raise ValueError(f"sharp must be 'I' or 'II', got {sharp!r}")
    lam = lam.canonical()
    l = lam.rank
    k = level(lam)
    if Fraction(k).denominator != 1 or k < 0 or int(k) % 2 != 0:
        raise ValueError(f"dominant weight of even nonnegative level required, got level {k}")
    if not is_dominant(lam):
        raise ValueError("lambda is not dominant")
    m = int(k) + 2 * l + 1
    base = (lam + rho(l)).canonical()
    apex = Weight(base.eps, -norm_sq(base) / (2 * m), base.lambda0)
    out = QSeries(l, apex, {}, height_cap, depth)

    if sharp == "I":
        if not twisted:
            for u in enumerate_finite(l, "I"):
                _accumulate_theta(out, u.apply_vec(base.eps), m, u.det(), False)
        else:
            # rewriting over W_{f;m}^(I): psi is +1 there and the s_{alpha_l}
            # coset enters with the same epsilon prefactor
            s_l = finite_reflection(l, Weight.eps_basis(l, l), "I")
            for u in enumerate_ker_psi_finite(l):
                sgn = u.det()
                _accumulate_theta(out, u.apply_vec(base.eps), m, sgn, True)
                us = u.compose(s_l)
                _accumulate_theta(out, us.apply_vec(base.eps), m, sgn, True)
    else:
        # W_f^(II) acts by signed permutations of the type-II coordinates and
        # lies in Ker psi, so the twisted sum carries plain epsilon signs
        for u in enumerate_finite(l, "II"):
            mu = u.act(base, "II")
            _accumulate_theta(out, mu.eps, m, u.det(), twisted)
    return out


# ---------------------------------------------------------------------------
# Product-form denominators, Verma characters
# ---------------------------------------------------------------------------

def _middle_pairs(l):
    for i in range(1, l + 1):
        for j in range(i + 1, l + 1):
            yield i, j


def denominator_factors(l, twisted, depth, height_cap=None):
    """The explicit factor list of the (twisted) denominator, high delta
    degree first.  Short-root binomials flip sign in the twisted case."""
    caps = dict(height_cap=height_cap, q_cap=depth)
    s_sign = 1 if twisted else -1
    delta = Weight.delta_weight(l)
    factors = []
    for n in range(depth, 0, -1):
        for _ in range(l):
            factors.append(qs.binomial_factor(delta.scale(n), -1, **caps))
        for i in range(1, l + 1):
            e = Weight.eps_basis(l, i)
            for s in (1, -1):
                factors.append(
                    qs.binomial_factor(delta.scale(n) + e.scale(s), s_sign, **caps))
                if n % 2 == 1:
                    factors.append(
                        qs.binomial_factor(delta.scale(n) + e.scale(2 * s), -1, **caps))
        for i, j in _middle_pairs(l):
            ei, ej = Weight.eps_basis(l, i), Weight.eps_basis(l, j)
            for si in (1, -1):
                for sj in (1, -1):
                    factors.append(qs.binomial_factor(
                        delta.scale(n) + ei.scale(si) + ej.scale(sj), -1, **caps))
    for i in range(1, l + 1):
        factors.append(qs.binomial_factor(Weight.eps_basis(l, i), s_sign, **caps))
    for i, j in _middle_pairs(l):
        ei, ej = Weight.eps_basis(l, i), Weight.eps_basis(l, j)
        for sj in (1, -1):
            factors.append(qs.binomial_factor(ei + ej.scale(sj), -1, **caps))
    return factors


def denominator_product(l, twisted=False, depth=8, height_cap=None) -> QSeries:
    """Remark-style product form of A_rho (A^psi_rho when twisted), expanded
    exactly: e^{rho - (|rho|^2/2(2l+1)) delta} times the infinite product
    over imaginary, short, middle and long families."""
    acc = QSeries.one(l, height_cap, depth)
    for f in denominator_factors(l, twisted, depth, height_cap):
        acc = qs.mul(acc, f)
    r = rho(l)
    lead = Weight(r.eps, -norm_sq(r) / (2 * (2 * l + 1)), r.lambda0)
    return qs.mul(acc, QSeries.monomial(lead, 1, height_cap, depth))


def positive_roots_up_to_height(l, hmax):
    """(root, multiplicity) for the positive roots of total height <= hmax."""
    out = []
    delta = Weight.delta_weight(l)
    for n in range(0, hmax // (2 * l + 1) + 2):
        d = delta.scale(n)
        if n >= 1:
            h = root_coords(d)
            if sum(h) <= hmax:
                out.append((d, l))
        cands = []
        for i in range(1, l + 1):
            e = Weight.eps_basis(l, i)
            for s in (1, -1):
                cands.append(d + e.scale(s))
                if n % 2 == 1:
                    cands.append(d + e.scale(2 * s))
        for i, j in _middle_pairs(l):
            ei, ej = Weight.eps_basis(l, i), Weight.eps_basis(l, j)
            for si in (1, -1):
                for sj in (1, -1):
                    cands.append(d + ei.scale(si) + ej.scale(sj))
        for w in cands:
            if classify(w) is not None and is_positive(w):
                h = root_coords(w)
                if h is not None and all(x >= 0 for x in h) and sum(h) <= hmax:
                    out.append((w, 1))
    return out


def verma_character(Lambda: Weight, depth: int) -> QSeries:
    """ch M(Lambda) = e^Lambda prod (1 - e^{-alpha})^{-mult}, exact up to
    total height `depth` (delta slices of a Verma character are infinite, so
    the truncation is by height)."""
    l = Lambda.rank
    acc = QSeries.monomial(Lambda.canonical(), 1, depth, None)
    for alpha, mult in positive_roots_up_to_height(l, depth):
        g = qs.geometric_factor(alpha, depth, None)
        for _ in range(mult):
            acc = qs.mul(acc, g)
    return acc


# ---------------------------------------------------------------------------
# Normalized characters
# ---------------------------------------------------------------------------

def conformal_anomaly(Lambda: Weight) -> Fraction:
    """c_Lambda, computed on the canonical (delta-free) representatives."""
    l = Lambda.rank
    lam = Lambda.canonical()
    r = rho(l)
    top = lam + r
    return norm_sq(top) / (2 * inner(Weight.delta_weight(l), top)) \
        - norm_sq(r) / (2 * inner(Weight.delta_weight(l), r))


@dataclass
class CharacterRequest:
    ctx: RootSystemCtx
    lam: Weight
    k: int
    sharp: str = "I"
    twisted: bool = False
    depth: int = 8

    def __post_init__(self):
        self.lam = self.lam.canonical()
        if self.lam.rank != self.ctx.rank:
            raise ValueError("rank mismatch between lambda and context")
        if level(self.lam) != self.k:
            raise ValueError(f"level(lambda) = {level(self.lam)} != k = {self.k}")
        if self.k % 2 != 0 or self.k < 0:
            raise ValueError("even nonnegative level required")
        if not is_dominant(self.lam):
            raise ValueError("lambda is not dominant")


def character(req: CharacterRequest, height_cap=None) -> QSeries:
    """chi_Lambda = A_{Lambda+rho} / A_rho (twisted variants with A^psi),
    by graded series division; the output apex is Lambda - c_Lambda delta."""
    l = req.ctx.rank
    if height_cap is None:
        height_cap = default_height_cap(l, req.k, req.depth)
    num = anti_invariant(req.lam, req.sharp, req.twisted, req.depth, height_cap)
    den = anti_invariant(Weight.zero(l), req.sharp, req.twisted, req.depth,
                         height_cap)
    return qs.divide(num, den)


def check_denominator_identity(l, depth=10, twisted=False) -> dict:
    """Coefficientwise comparison of the Weyl-sum and product routes."""
    anti = anti_invariant(Weight.zero(l), "I", twisted, depth, None)
    prod = denominator_product(l, twisted, depth, None)
    rep = qs.diff_report(anti, prod)
    rep.update(rank=l, depth=depth, twisted=twisted,
               pass_=rep["equal"], terms=len(anti.terms))
    return rep
