"""osp(1|2) Verma modules and the affine super root datum B^(1)(0,l):
super-denominator and super-characters through an explicit product/Weyl-sum
route, independent of the theta-orbit code path.

The super system shares the GCM of BC_l^(2) with odd node l; its real roots
form the non-reduced system with long roots at every delta offset, odd roots
being the short family.  osp(1|2) actions use the basis w_i = f^i/i!.v; the
odd-index e-action coefficient is the one forced by [e,f] = H.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import qseries as qs
from .characters import (conformal_anomaly, is_dominant, theta_height_bound,
                         _middle_pairs)
from .lattice import Weight, inner, level, norm_sq
from .qseries import QSeries
from .roots import RootSystemCtx, coroot, rho, root_coords, simple_roots_I
from .weyl import AffineWeylElement, enumerate_finite, epsilon, psi

# ---------------------------------------------------------------------------
# osp(1|2)
# ---------------------------------------------------------------------------

GENERATORS = ("E", "H", "F", "e", "f")


def osp_action(generator, i, lambda_H):
    """Action of a generator on w_i in M(lambda): list of (index, coeff).

    H.w_i = (lam-2i) w_i, f.w_i = (i+1) w_{i+1},
    e.w_i = -w_{i-1} (i even), ((lam-i+1)/i) w_{i-1} (i odd), e.w_0 = 0;
    E = e^2 and F = -f^2 via the bracket relations."""
    if i < 0:
        raise ValueError("negative basis index")
    lam = Fraction(lambda_H)
    if generator == "H":
        return [(i, lam - 2 * i)]
    if generator == "f":
        return [(i + 1, Fraction(i + 1))]
    if generator == "e":
        if i == 0:
            return []
        if i % 2 == 0:
            return [(i - 1, Fraction(-1))]
        c = Fraction(lam - i + 1, i)
        return [(i - 1, c)] if c else []
    if generator == "E":
        return _compose_actions("e", "e", i, lam)
    if generator == "F":
        return [(j, -c) for j, c in _compose_actions("f", "f", i, lam)]
    raise ValueError(f"unknown generator {generator!r}")


def _compose_actions(g1, g2, i, lam):
    out = {}
    for j, c in osp_action(g2, i, lam):
        for j2, c2 in osp_action(g1, j, lam):
            out[j2] = out.get(j2, Fraction(0)) + c * c2
    return [(j, c) for j, c in sorted(out.items()) if c != 0]


def apply_op(generator, vec, lam):
    """Apply a generator to a vector {index: coeff}."""
    out = {}
    for i, c in vec.items():
        for j, c2 in osp_action(generator, i, lam):
            out[j] = out.get(j, Fraction(0)) + c * c2
    return {j: c for j, c in out.items() if c != 0}


def bracket(g1, g2, vec, lam, odd_pair):
    """[g1, g2] on a vector: anticommutator for two odd generators,
    commutator otherwise."""
    a = apply_op(g1, apply_op(g2, vec, lam), lam)
    b = apply_op(g2, apply_op(g1, vec, lam), lam)
    sign = 1 if odd_pair else -1
    out = dict(a)
    for j, c in b.items():
        out[j] = out.get(j, Fraction(0)) + sign * c
    return {j: c for j, c in out.items() if c != 0}


_ODD = {"e", "f"}

# (g1, g2, expected as scalar multiple of a generator action or of identity)
BRACKET_RELATIONS = (
    ("H", "E", "E", 4),
    ("H", "F", "F", -4),
    ("E", "F", "H", 2),
    ("H", "e", "e", 2),
    ("H", "f", "f", -2),
    ("e", "f", "H", 1),
    ("e", "e", "E", 2),
    ("f", "f", "F", -2),
)


def check_bracket_relations(lambda_H, i_max=20):
    """Operator identities of the super bracket on w_0..w_{i_max}; returns
    the list of violated relations (empty = all exact)."""
    lam = Fraction(lambda_H)
    bad = []
    for g1, g2, target, mult in BRACKET_RELATIONS:
        odd_pair = g1 in _ODD and g2 in _ODD
        for i in range(i_max + 1):
            got = bracket(g1, g2, {i: Fraction(1)}, lam, odd_pair)
            want = {j: mult * c for j, c in apply_op(target, {i: Fraction(1)}, lam).items()}
            want = {j: c for j, c in want.items() if c != 0}
            if got != want:
                bad.append((g1, g2, i, got, want))
    return bad


def singular_indices(lambda_H, i_max):
    """Indices i >= 1 with e.w_i = 0 (onset of a proper submodule)."""
    lam = Fraction(lambda_H)
    return [i for i in range(1, i_max + 1) if not osp_action("e", i, lam)]


def verma_reducible(lambda_H, i_max=None):
    lam = Fraction(lambda_H)
    if i_max is None:
        # comfortably past the submodule onset at i = lambda(H) + 1
        i_max = 4 * max(0, int(lam)) + 8 if lam.denominator == 1 else 8
    return bool(singular_indices(lam, i_max))


def osp_irreducible_dim(N: int) -> int:
    """dim L(N alpha): the Verma module with lambda(H) = 2N is truncated at
    the first singular index."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    lam = Fraction(2 * N)
    idx = singular_indices(lam, 4 * N + 8)
    if not idx:
        raise ValueError(f"no proper submodule found for lambda(H) = {lam}")
    return idx[0]


def osp_action_matrix(generator, lambda_H, i_max):
    """Dense matrix of a generator on w_0..w_{i_max} (columns act on w_j;
    images beyond the window are dropped)."""
    mat = [[Fraction(0)] * (i_max + 1) for _ in range(i_max + 1)]
    for j in range(i_max + 1):
        for i, c in osp_action(generator, j, Fraction(lambda_H)):
            if i <= i_max:
                mat[i][j] = c
    return mat


# ---------------------------------------------------------------------------
# The super root datum of B^(1)(0,l)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuperRootDatum:
    ctx: RootSystemCtx

    @property
    def rank(self):
        return self.ctx.rank

    @staticmethod
    def build(l):
        return SuperRootDatum(RootSystemCtx.build(l))

    def parity(self, w: Weight) -> str:
        """Parity through the root-lattice homomorphism: the alpha_l
        coefficient mod 2 (tau = {l})."""
        coords = root_coords(w)
        if coords is None:
            raise ValueError("not in the root lattice")
        return "odd" if coords[-1] % 2 else "even"

    def positive_roots(self, depth, height_cap):
        """(root, multiplicity, parity) for the positive roots of the
        non-reduced super system within the caps: short and middle families
        at every delta offset, long at every delta offset (unlike the
        twisted system), imaginary with multiplicity l."""
        l = self.rank
        delta = Weight.delta_weight(l)
        out = []

        def keep(w):
            h = root_coords(w)
            if h is None or any(n < 0 for n in h) or not any(h):
                return False
            if depth is not None and h[0] > depth:
                return False
            if height_cap is not None and sum(h) > height_cap:
                return False
            return True

        n = 0
        while True:
            d = delta.scale(n)
            found = False
            if n >= 1 and keep(d):
                out.append((d, l, "even"))
                found = True
            cands = []
            for i in range(1, l + 1):
                e = Weight.eps_basis(l, i)
                for s in (1, -1):
                    cands.append((d + e.scale(s), "odd"))
                    cands.append((d + e.scale(2 * s), "even"))
            for i, j in _middle_pairs(l):
                ei, ej = Weight.eps_basis(l, i), Weight.eps_basis(l, j)
                for si in (1, -1):
                    for sj in (1, -1):
                        cands.append((d + ei.scale(si) + ej.scale(sj), "even"))
            for w, par in cands:
                if keep(w):
                    out.append((w, 1, par))
                    found = True
            if not found and n > 0:
                break
            n += 1
        return out


def integrable(Lambda: Weight) -> bool:
    """L(Lambda) is integrable iff the labels at 0..l-1 are nonnegative
    integers and the label at l is a nonnegative even integer (dominant with
    even level)."""
    l = Lambda.rank
    labels = [inner(coroot(a), Lambda) for a in simple_roots_I(l)]
    for i, m in enumerate(labels):
        m = Fraction(m)
        if m.denominator != 1 or m < 0:
            return False
        if i == l and int(m) % 2 != 0:
            return False
    return True


def super_denominator_height_cap(l, depth):
    return theta_height_bound(l, 2 * l + 1, norm_sq(rho(l)), depth) + 2 * l + 2


def super_denominator(l, depth=8, height_cap=None) -> QSeries:
    """e^rho prod_{even +}(1-e^{-a})^mult / prod_{odd +}(1-e^{-a})^mult,
    expanded from the super parity decomposition (a code path independent of
    the twisted theta route).  Apex e^rho, no delta normalization."""
    if height_cap is None:
        height_cap = super_denominator_height_cap(l, depth)
    datum = SuperRootDatum.build(l)
    acc = QSeries.monomial(rho(l), 1, height_cap, depth)
    for w, mult, par in datum.positive_roots(depth, height_cap):
        if par == "even":
            f = qs.binomial_factor(w, -1, height_cap, depth)
        else:
            f = qs.geometric_factor(w, height_cap, depth)
        for _ in range(mult):
            acc = qs.mul(acc, f)
    return acc


def _psi_weyl_sum(l, base: Weight, height_cap, depth) -> QSeries:
    """sum_w epsilon(w) psi(w) e^{w(base)} over the affine Weyl group,
    enumerated as pairs (finite part, translation) acting through the weyl
    module."""
    m = int(level(base))
    out = QSeries(l, base, {}, height_cap, depth)
    qeff = depth if depth is not None else height_cap
    nsq = float(norm_sq(Weight(base.eps)))
    rad = math.sqrt(nsq + 2 * m * qeff) + 1.0
    ranges = []
    for c in base.eps:
        lo = math.ceil((-rad - float(c)) / m)
        hi = math.floor((rad - float(c)) / m)
        ranges.append(range(lo, hi + 1))
    gammas = list(itertools.product(*ranges))
    for u in enumerate_finite(l, "I"):
        for g in gammas:
            w = AffineWeylElement(u, g)
            img = w.act(base)
            off = root_coords(base - img)
            if off is None:
                raise AssertionError("Weyl image escaped the root lattice")
            if any(n < 0 for n in off):
                raise AssertionError("Weyl image above the apex")
            out.add_term(off, epsilon(w) * psi(w))
    return out


def super_character(Lambda: Weight, depth=8, height_cap=None) -> QSeries:
    """sch L(Lambda) = sum_w eps(w) psi(w) sch M(w(Lambda+rho)-rho) with
    sch M(mu) = e^mu prod_{odd}(1-e^{-a})^mult / prod_{even}(1-e^{-a})^mult.
    Apex Lambda (no conformal normalization)."""
    l = Lambda.rank
    Lambda = Lambda.canonical()
    if not integrable(Lambda):
        raise ValueError("Lambda is not integrable (dominant with even level)")
    k = int(level(Lambda))
    if height_cap is None:
        height_cap = theta_height_bound(
            l, k + 2 * l + 1, norm_sq(Lambda + rho(l)), depth) + 2 * l + 2
    base = (Lambda + rho(l)).canonical()
    acc = _psi_weyl_sum(l, base, height_cap, depth)
    datum = SuperRootDatum.build(l)
    for w, mult, par in datum.positive_roots(depth, height_cap):
        if par == "odd":
            f = qs.binomial_factor(w, -1, height_cap, depth)
        else:
            f = qs.geometric_factor(w, height_cap, depth)
        for _ in range(mult):
            acc = qs.mul(acc, f)
    return qs.mul(acc, QSeries.monomial(-rho(l), 1, height_cap, depth))
