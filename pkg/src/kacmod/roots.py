"""The BC_l^(2) root datum: simple roots in both numerations, root
classification with multiplicities and super parity, fundamental weights,
dominant-weight enumeration, special indices, and the involution phi
exchanging the two coordinate systems.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .lattice import HALF, Weight, coroot, inner, level

RANK_CAP = 6


def labels(l):
    """Marks a: delta = sum a_i alpha_i."""
    return (1,) + (2,) * l


def colabels(l):
    return (2,) * l + (1,)


def simple_roots_I(l):
    roots = [Weight.delta_weight(l) - Weight.eps_basis(l, 1).scale(2)]
    for i in range(1, l):
        roots.append(Weight.eps_basis(l, i) - Weight.eps_basis(l, i + 1))
    roots.append(Weight.eps_basis(l, l))
    return roots


def simple_roots_II(l):
    si = simple_roots_I(l)
    return [si[l - i] for i in range(l + 1)]


def simple_roots(l, sharp):
    if sharp == "I":
        return simple_roots_I(l)
    if sharp == "II":
        return simple_roots_II(l)
    raise ValueError(f"sharp must be 'I' or 'II', got {sharp!r}")


def cartan_matrix(l):
    """GCM rows a_{j,i} = (alpha_j^vee, alpha_i)."""
    si = simple_roots_I(l)
    return [[inner(coroot(aj), ai) for ai in si] for aj in si]


# ---------------------------------------------------------------------------
# Root classification (real short/middle/long + imaginary, with super parity)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootInfo:
    weight: Weight
    length_class: str   # "short" | "middle" | "long" | "imaginary"
    parity: str         # "even" | "odd"
    multiplicity: int


def classify(w: Weight):
    """Membership test in the BC_l^(2) root set; None if not a root.

    Real roots: +-eps_i + r*delta (short, odd parity),
    +-eps_i +- eps_j + r*delta (middle), +-2eps_i + (2r+1)*delta (long);
    imaginary roots are the nonzero integer multiples of delta (mult l).
    Only exact rational inputs are classified.
    """
    l = w.rank
    if not all(isinstance(c, (int, Fraction)) for c in (*w.eps, w.delta, w.lambda0)):
        return None
    if w.lambda0 != 0:
        return None
    r = Fraction(w.delta)
    if r.denominator != 1:
        return None
    nz = [(i, c) for i, c in enumerate(w.eps) if c != 0]
    if not nz:
        if r != 0:
            return RootInfo(w, "imaginary", "even", l)
        return None
    if len(nz) == 1:
        c = nz[0][1]
        if c in (1, -1):
            return RootInfo(w, "short", "odd", 1)
        if c in (2, -2) and Fraction(r) % 2 == 1:
            return RootInfo(w, "long", "even", 1)
        return None
    if len(nz) == 2:
        if all(c in (1, -1) for _, c in nz):
            return RootInfo(w, "middle", "even", 1)
    return None


def positive_real_roots(l, max_height):
    """All positive real roots whose total height (in simple roots) is
    <= max_height, together with their RootInfo."""
    out = []
    # height of beta_f + n*delta grows with n; n <= max_height suffices
    for n in range(0, max_height + 1):
        for w in _real_roots_at_delta(l, n):
            h = height_vector(w)
            if h is not None and sum(h) <= max_height:
                out.append(classify(w))
    return [ri for ri in out if ri is not None]


def _real_roots_at_delta(l, n):
    d = Weight.delta_weight(l).scale(n)
    for i in range(1, l + 1):
        e = Weight.eps_basis(l, i)
        for s in (1, -1):
            w = d + e.scale(s)
            if is_positive(w):
                yield w
            w = d + e.scale(2 * s)
            if is_positive(w) and n % 2 == 1:
                yield w
    for i in range(1, l + 1):
        for j in range(i + 1, l + 1):
            ei, ej = Weight.eps_basis(l, i), Weight.eps_basis(l, j)
            for si in (1, -1):
                for sj in (1, -1):
                    w = d + ei.scale(si) + ej.scale(sj)
                    if is_positive(w):
                        yield w


def height_vector(w: Weight):
    """Coordinates (n_0..n_l) of w in the simple-root basis of type I, or
    None if w is not a nonnegative integer combination.

    n_0 is the delta coefficient; n_j = 2 n_0 + (eps_1 + .. + eps_j)."""
    v = root_coords(w)
    if v is None:
        return None
    return v if all(n >= 0 for n in v) else None


def root_coords(w: Weight):
    """Integer coordinates of w in the alpha-basis, or None."""
    if w.lambda0 != 0:
        return None
    x = Fraction(w.delta)
    if x.denominator != 1:
        return None
    coords = [int(x)]
    acc = 2 * x
    for j in range(w.rank):
        acc += Fraction(w.eps[j])
        if acc.denominator != 1:
            return None
        coords.append(int(acc))
    return tuple(coords)


def is_positive(w: Weight):
    h = height_vector(w)
    return h is not None and any(n > 0 for n in h)


# ---------------------------------------------------------------------------
# Special indices
# ---------------------------------------------------------------------------

def special_indices(l):
    """Indices i0 with delta - a_{i0} alpha_{i0} a positive multiple of a
    positive root.  Returns {index: (p, root)} with the witness pair."""
    d = Weight.delta_weight(l)
    a = labels(l)
    si = simple_roots_I(l)
    out = {}
    for i0 in range(l + 1):
        target = d - si[i0].scale(a[i0])
        for p in range(1, 5):
            cand = target.scale(Fraction(1, p))
            info = classify(cand)
            if info is not None and is_positive(cand):
                out[i0] = (p, cand)
                break
    return out


# ---------------------------------------------------------------------------
# Fundamental weights, rho
# ---------------------------------------------------------------------------

def finite_fundamental_weight(l, i, sharp="I"):
    """varpi_i^(sharp), 1 <= i <= l."""
    if sharp == "I":
        if i < l:
            v = [Fraction(1)] * i + [Fraction(0)] * (l - i)
        else:
            v = [HALF] * l
        return Weight(tuple(v))
    w = Weight.zero(l)
    for j in range(1, i + 1):
        w = w + Weight.eps_basis_II(l, j)
    return w


def rho_f(l, sharp="I"):
    if sharp == "I":
        return Weight(tuple(Fraction(2 * (l - i) + 1, 2)
                            for i in range(1, l + 1)))
    w = Weight.zero(l)
    for i in range(1, l + 1):
        w = w + Weight.eps_basis_II(l, i).scale(l - i + 1)
    return w


def fundamental_weight_I(l, j):
    """Lambda_j^(I), canonical representative (delta coefficient 0)."""
    if j == 0:
        return Weight.lambda0_I(l)
    if j < l:
        return (finite_fundamental_weight(l, j) + Weight.lambda0_I(l)).canonical()
    return (finite_fundamental_weight(l, l) + Weight.lambda0_I(l).scale(HALF)).canonical()


def fundamental_weights_I(l):
    return [fundamental_weight_I(l, j) for j in range(l + 1)]


def fundamental_weights_II(l):
    # Lambda_j^(II) == Lambda_{l-j}^(I) modulo C.delta; same canonical reps.
    fw = fundamental_weights_I(l)
    return [fw[l - j] for j in range(l + 1)]


def rho(l):
    w = Weight.zero(l)
    for fwj in fundamental_weights_I(l):
        w = w + fwj
    return w.canonical()


def from_dynkin_labels(l, m):
    """sum m_j Lambda_j^(I) as a canonical weight; m has l+1 entries."""
    if len(m) != l + 1:
        raise ValueError(f"expected {l + 1} labels, got {len(m)}")
    w = Weight.zero(l)
    for mj, fwj in zip(m, fundamental_weights_I(l)):
        w = w + fwj.scale(mj)
    return w.canonical()


def dynkin_labels(l, w: Weight):
    """Pairings (alpha_i^vee, w) in the type-I numeration."""
    return tuple(inner(coroot(a), w) for a in simple_roots_I(l))


def enumerate_dominant(l, k):
    """P_{k,+} mod C.delta for even k >= 0, ordered lexicographically by the
    type-I Dynkin label vector (m_0, ..., m_l)."""
    if k % 2 != 0 or k < 0:
        raise ValueError(f"level must be even and nonnegative, got {k}")
    out = []
    for m in _label_vectors(l, k):
        out.append(from_dynkin_labels(l, m))
    return out


def _label_vectors(l, k):
    # 2*(m_0 + ... + m_{l-1}) + m_l = k; descending lexicographic order in
    # (m_0, ..., m_l), so the basic weight Lambda_0 comes first at k = 2
    vecs = []
    for head in itertools.product(range(k // 2 + 1), repeat=l):
        rest = k - 2 * sum(head)
        if rest >= 0:
            vecs.append(head + (rest,))
    vecs.sort(reverse=True)
    return vecs


# ---------------------------------------------------------------------------
# The involution phi = t_{(eps_1+..+eps_l)/2} o w_0^{A_l} o zeta
# ---------------------------------------------------------------------------

def phi_involution(w: Weight) -> Weight:
    """Isometry with phi(eps_i^(I)) = eps_i^(II), phi(delta) = delta,
    phi(Lambda0^(I)) = 2 Lambda0^(II); an involution."""
    l = w.rank
    c = w.lambda0
    eps = tuple(c - w.eps[l - 1 - i] for i in range(l))
    d = w.delta + HALF * sum(w.eps) - Fraction(l, 4) * c
    return Weight(eps, d, c)


# ---------------------------------------------------------------------------
# Bundled context
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootSystemCtx:
    rank: int
    simple_roots_I: tuple
    simple_roots_II: tuple
    labels: tuple
    colabels: tuple
    fund_weights_I: tuple
    fund_weights_II: tuple
    rho: Weight
    rho_f_I: Weight
    rho_f_II: Weight

    @staticmethod
    def build(l):
        if l < 1:
            raise ValueError("rank must be >= 1")
        return RootSystemCtx(
            rank=l,
            simple_roots_I=tuple(simple_roots_I(l)),
            simple_roots_II=tuple(simple_roots_II(l)),
            labels=labels(l),
            colabels=colabels(l),
            fund_weights_I=tuple(fundamental_weights_I(l)),
            fund_weights_II=tuple(fundamental_weights_II(l)),
            rho=rho(l),
            rho_f_I=rho_f(l, "I"),
            rho_f_II=rho_f(l, "II"),
        )

    def level_table(self, sharp="I"):
        fw = self.fund_weights_I if sharp == "I" else self.fund_weights_II
        return tuple(level(w) for w in fw)
