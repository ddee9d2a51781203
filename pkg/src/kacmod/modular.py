"""Complex-analytic evaluation on the coordinate domain Y = H x C^l x C,
the SL2(Z)-action, the four finite transformation matrices, and numerical
verifiers for the S/T transformation laws of (twisted) anti-invariants and
normalized characters, Poisson resummation, and the SL2(Z) closure of the
character spans.

Conventions.  A point (tau, z, t) corresponds to the weight
2*pi*i(-(tau/2) Lambda0^(I) + sum z_i eps_i + t delta) in numeration I and
2*pi*i(-tau Lambda0^(II) + sum z_i eps_i^(II) + t delta) in numeration II.
Evaluating e^lambda at such a weight turns a level-k theta orbit into

    e^{2 pi i k t} sum_gamma e^{pi i k tau |gamma + a|^2
                                 + 2 pi i k <gamma + a, z>},   a = pr(lambda)/k,

so the SL2(Z)-action's t-shift is implemented with the plain square norm
sum z_i^2 (the literal projection pr carries one factor of 2*pi*i).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .lattice import Weight, inner, level, norm_sq
from .roots import (enumerate_dominant, phi_involution, rho, rho_f)
from .weyl import enumerate_finite

TWO_PI_I = 2j * math.pi

S_MAT = ((0, -1), (1, 0))
T_MAT = ((1, 1), (0, 1))


class DegeneratePointError(ValueError):
    """The denominator vanishes (to threshold) at the requested point."""


@dataclass(frozen=True)
class YPoint:
    tau: complex
    z: tuple
    t: complex = 0.0

    def __post_init__(self):
        if not self.tau.imag > 0:
            raise ValueError(f"Im(tau) must be positive, got {self.tau}")
        object.__setattr__(self, "z", tuple(complex(c) for c in self.z))

    @property
    def rank(self):
        return len(self.z)


def default_sample(l) -> YPoint:
    """The documented generic point: away from the zeros of A_rho."""
    return YPoint(0.37 + 1.13j,
                  tuple(0.11 * j + 0.07j * j for j in range(1, l + 1)),
                  0.05)


def sample_points(l, n) -> list:
    """Deterministic generic points with Im(tau) >= 1."""
    pts = []
    for s in range(n):
        tau = (0.37 - 0.11 * s % 1.7) + (1.13 + 0.17 * (s % 5)) * 1j
        z = tuple((0.11 * j - 0.029 * s) + (0.07 * j + 0.021 * s + 0.013 * j * s % 0.4) * 1j
                  for j in range(1, l + 1))
        pts.append(YPoint(tau, z, 0.05 - 0.037 * s))
    return pts


# ---------------------------------------------------------------------------
# Coordinate maps
# ---------------------------------------------------------------------------

def point_to_weight(sharp, y: YPoint) -> Weight:
    """(phi^(sharp))^{-1}: the complexified weight of a Y-point."""
    l = y.rank
    if sharp == "I":
        w = Weight.lambda0_I(l).scale(-y.tau / 2)
        for i in range(1, l + 1):
            w = w + Weight.eps_basis(l, i).scale(y.z[i - 1])
    elif sharp == "II":
        w = Weight.lambda0_II(l).scale(-y.tau)
        for i in range(1, l + 1):
            w = w + Weight.eps_basis_II(l, i).scale(y.z[i - 1])
    else:
        raise ValueError(f"sharp must be 'I' or 'II', got {sharp!r}")
    w = w + Weight.delta_weight(l).scale(y.t)
    return w.scale(TWO_PI_I)


def weight_to_point(sharp, v: Weight) -> YPoint:
    """phi^(sharp), defined on the domain Re (v, delta) > 0."""
    l = v.rank
    d = Weight.delta_weight(l)
    pairing = complex(inner(v, d))
    if not pairing.real > 0:
        raise ValueError("weight outside the domain: Re (v, delta) <= 0")
    tau = -pairing / TWO_PI_I
    if sharp == "I":
        z = tuple(complex(inner(v, Weight.eps_basis(l, i))) / TWO_PI_I
                  for i in range(1, l + 1))
        lam0 = Weight.lambda0_I(l).scale(Fraction(1, 2))
    elif sharp == "II":
        z = tuple(complex(inner(v, Weight.eps_basis_II(l, i))) / TWO_PI_I
                  for i in range(1, l + 1))
        lam0 = Weight.lambda0_II(l)
    else:
        raise ValueError(f"sharp must be 'I' or 'II', got {sharp!r}")
    t = complex(inner(v, lam0)) / TWO_PI_I
    return YPoint(tau, z, t)


def transition(y: YPoint) -> YPoint:
    """phi^(sharp) o (phi^(flat))^{-1}: an involution of Y."""
    l = y.rank
    z = tuple(-y.z[l - 1 - i] - y.tau / 2 for i in range(l))
    t = y.t + l * y.tau / 8 + sum(y.z) / 2
    return YPoint(y.tau, z, t)


def pr(sharp, y: YPoint) -> Weight:
    """pr^(sharp)(y): the finite projection of (phi^(sharp))^{-1}(y); its
    eps^(sharp) coefficients are 2*pi*i*z_i."""
    return point_to_weight(sharp, y).project_finite(sharp)


def z_norm_sq(y: YPoint) -> complex:
    """sum z_i^2 = |pr^(sharp)(y)|^2 / (2 pi i)^2; the square norm entering
    the SL2(Z)-action and the transformation laws."""
    return sum(c * c for c in y.z)


def sl2_act(g, y: YPoint, sharp="I") -> YPoint:
    """((a tau + b)/(c tau + d), z/(c tau + d), t - c |z|^2 / 2(c tau + d)).

    `sharp` records which numeration the coordinate tuple is read in; the
    formula itself uses the tuple's own entries."""
    (a, b), (c, d) = g
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant 1")
    den = c * y.tau + d
    if den == 0:
        raise ValueError("singular c*tau + d")
    tau = (a * y.tau + b) / den
    z = tuple(zi / den for zi in y.z)
    t = y.t - c * z_norm_sq(y) / (2 * den)
    return YPoint(tau, z, t)


def s_point(y: YPoint, sharp="I") -> YPoint:
    return sl2_act(S_MAT, y, sharp)


def t_point(y: YPoint) -> YPoint:
    return YPoint(y.tau + 1, y.z, y.t)


# ---------------------------------------------------------------------------
# Theta evaluation by certified lattice sums
# ---------------------------------------------------------------------------

def _shell_radius(l, decay, log_c, tol):
    """Smallest R >= 1 with sum_{j>=R} (2j+3)^l exp(log_c - decay j^2) < tol."""
    if decay <= 0:
        raise ValueError("nonconvergent parameters: quadratic decay <= 0")
    shells = []
    j = 1
    while True:
        le = log_c - decay * j * j + l * math.log(2 * j + 3)
        shells.append(math.exp(le) if le > -700 else 0.0)
        if le < -700 or (j > 4 and shells[-1] < tol * 1e-6):
            break
        j += 1
        if j > 10_000:
            raise ValueError("nonconvergent parameters: tail does not decay")
    tail = 0.0
    radius = len(shells) + 1
    for idx in range(len(shells) - 1, -1, -1):
        tail += shells[idx]
        if tail >= tol:
            radius = idx + 2
            break
    else:
        radius = 1
    return radius


def _box(center, radius):
    ranges = []
    for c in center:
        lo = math.ceil(-radius - c)
        hi = math.floor(radius - c)
        ranges.append(range(lo, hi + 1))
    out = [()]
    for r in ranges:
        out = [v + (g,) for v in out for g in r]
    return out


def eval_theta(lam: Weight, sharp="I", twisted=False, y: YPoint = None,
               tol=1e-10) -> complex:
    """Level-k theta orbit of lam evaluated at y through the sharp chart:
    e^{2 pi i k t} sum_gamma [psi(t_gamma)] e^{pi i k tau |gamma+a|^2
    + 2 pi i k <gamma+a, z>} with a = pr^(sharp)(lam)/k; the Gaussian tail is
    bounded below tol."""
    l = lam.rank
    k = level(lam)
    if Fraction(k).denominator != 1 or k <= 0:
        raise ValueError(f"positive integer level required, got {k}")
    k = int(k)
    if sharp == "I":
        a = [float(c) / k for c in lam.eps]
    else:
        eps2, _, _ = lam.to_type_II_coords()
        a = [float(c) / k for c in eps2]
    tau, z, t = y.tau, y.z, y.t
    im_tau = tau.imag
    if im_tau <= 0:
        raise ValueError("Im(tau) must be positive")
    w = [zi.imag / im_tau for zi in z]
    decay = math.pi * k * im_tau
    log_c = decay * sum(x * x for x in w)
    radius = _shell_radius(l, decay, log_c, tol)
    center = [ai + wi for ai, wi in zip(a, w)]
    total = 0.0 + 0.0j
    for gamma in _box(center, radius):
        x = [g + ai for g, ai in zip(gamma, a)]
        expo = (1j * math.pi * k * tau * sum(v * v for v in x)
                + TWO_PI_I * k * sum(v * zi for v, zi in zip(x, z)))
        term = cmath.exp(expo)
        if twisted and sum(gamma) % 2:
            term = -term
        total += term
    return cmath.exp(TWO_PI_I * k * t) * total


def eval_anti_invariant(lam: Weight, sharp="I", twisted=False,
                        y: YPoint = None, tol=1e-10) -> complex:
    """A_{lam+rho} (A^psi when twisted) as a function on Y through the sharp
    chart: the epsilon(-psi)-weighted sum of theta orbits over W_f^(sharp)."""
    l = lam.rank
    base = (lam + rho(l)).canonical()
    nw = 2 ** l * math.factorial(l)
    tol_u = tol / nw
    total = 0.0 + 0.0j
    for u in enumerate_finite(l, sharp):
        if sharp == "I":
            mu = u.act(base, "I")
            sgn = u.det()
            if twisted and u.neg_count() % 2:
                sgn = -sgn
        else:
            mu = u.act(base, "II")
            sgn = u.det()  # W_f^(II) lies in Ker psi
        total += sgn * eval_theta(mu, sharp, twisted, y, tol_u)
    return total


def eval_character(lam: Weight, sharp="I", twisted=False, y: YPoint = None,
                   tol=1e-10, den_threshold=1e-10) -> complex:
    """chi_lam (chi^psi when twisted) at y: the ratio of anti-invariants.
    Raises DegeneratePointError when |A_rho(y)| falls below the threshold."""
    l = lam.rank
    den = eval_anti_invariant(Weight.zero(l), sharp, twisted, y, tol)
    if abs(den) < den_threshold:
        raise DegeneratePointError(
            f"denominator {abs(den):.3e} below threshold at tau={y.tau}; "
            "move the sample point")
    num = eval_anti_invariant(lam, sharp, twisted, y, tol)
    return num / den


def eval_qseries(series, sharp, y: YPoint) -> complex:
    """Evaluate a formal series at y by substituting the chart weight;
    cross-check route for the lattice sums."""
    v = point_to_weight(sharp, y)
    total = 0.0 + 0.0j
    for vec, c in series.sorted_items():
        total += c * cmath.exp(complex(inner(series.weight_of(vec), v)))
    return total


def macdonald_specialization(l, sharp="I", twisted=False, direction=None,
                             offset=None, s=0.0, tau=1.13j, t=0.0, tol=1e-10):
    """Evaluate A_rho (A^psi_rho) along the line z = direction*s + offset.

    Hook for the eta-product specializations; no specific identification is
    asserted (the specialization is not pinned down in the source material)."""
    direction = direction or (1.0,) * l
    offset = offset or (0.0,) * l
    z = tuple(d * s + o for d, o in zip(direction, offset))
    return eval_anti_invariant(Weight.zero(l), sharp, twisted,
                               YPoint(tau, z, t), tol)


# ---------------------------------------------------------------------------
# The four transformation matrices
# ---------------------------------------------------------------------------

_KINDS = ("aI", "aI_II", "aII_I", "aII")


@dataclass
class SMatrix:
    kind: str
    k: int
    index: list
    entries: list  # row-major complex


def _phase(arg: Fraction) -> complex:
    """exp(-2 pi i arg) from an exact rational argument reduced mod 1."""
    r = Fraction(arg) % 1
    return cmath.exp(-TWO_PI_I * float(r))


def smatrix_entry(kind, k, lam: Weight, mu: Weight) -> complex:
    """Entry a^(kind)(lam, mu); lam may be any exact weight (the lemmas feed
    phi-images of dominant weights into the mixed kinds)."""
    l = lam.rank
    m = k + 2 * l + 1
    rfI = rho_f(l, "I")
    rfII = rho_f(l, "II")
    if kind == "aI":
        x = lam.project_finite("I") + rfI
        yv = mu.project_finite("I") + rfI
        grp, use_psi = "I", True
    elif kind == "aI_II":
        x = lam.project_finite("II") + phi_involution(rfI)
        yv = mu.project_finite("II") + rfII
        grp, use_psi = "II", False
    elif kind == "aII_I":
        x = lam.project_finite("I") + phi_involution(rfII)
        yv = mu.project_finite("I") + rfI
        grp, use_psi = "I", False
    elif kind == "aII":
        x = lam.project_finite("II") + rfII
        yv = mu.project_finite("II") + rfII
        grp, use_psi = "II", False
    else:
        raise ValueError(f"kind must be one of {_KINDS}, got {kind!r}")
    total = 0.0 + 0.0j
    for u in enumerate_finite(l, grp):
        sgn = u.det()
        if use_psi and u.neg_count() % 2:
            sgn = -sgn
        total += sgn * _phase(Fraction(inner(u.act(x, grp), yv), m))
    return total


def smatrix(kind, k, l) -> SMatrix:
    """The full table over the canonical ordering of P_{k,+} mod C.delta."""
    index = enumerate_dominant(l, k)
    entries = [[smatrix_entry(kind, k, lam, mu) for mu in index]
               for lam in index]
    return SMatrix(kind, k, index, entries)


def smatrix_entry_via_ker_psi(k, lam: Weight, mu: Weight) -> complex:
    """a^(I) through the index-2 subgroup rewriting (cross-check route)."""
    from .weyl import enumerate_ker_psi_finite, finite_reflection
    l = lam.rank
    m = k + 2 * l + 1
    rfI = rho_f(l, "I")
    x = lam.project_finite("I") + rfI
    yv = mu.project_finite("I") + rfI
    s_l = finite_reflection(l, Weight.eps_basis(l, l), "I")
    total = 0.0 + 0.0j
    for u in enumerate_ker_psi_finite(l):
        sgn = u.det()
        total += sgn * _phase(Fraction(inner(u.act(x, "I"), yv), m))
        us = u.compose(s_l)
        total += sgn * _phase(Fraction(inner(us.act(x, "I"), yv), m))
    return total


# ---------------------------------------------------------------------------
# Verification reports
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    passed: bool
    metadata: dict = field(default_factory=dict)


def make_report(lhs, rhs, tol, lam=None, y=None, **metadata) -> VerificationReport:
    abs_err = abs(lhs - rhs)
    scale = abs(rhs)
    rel_err = abs_err / scale if scale > 0 else math.inf
    if scale < 1e-8:
        passed = abs_err <= tol
    else:
        passed = rel_err <= tol
    metadata.setdefault("tol", tol)
    if lam is not None:
        metadata["lambda_eps"] = [str(c) for c in lam.eps]
        metadata["lambda_level"] = str(level(lam))
    if y is not None:
        metadata["y"] = {"tau": [y.tau.real, y.tau.imag],
                         "z": [[c.real, c.imag] for c in y.z],
                         "t": [complex(y.t).real, complex(y.t).imag]}
    return VerificationReport(lhs, rhs, abs_err, rel_err, passed, metadata)


_I_POW = (1 + 0j, 1j, -1 + 0j, -1j)


def i_power(n) -> complex:
    return _I_POW[n % 4]


def _sqrt_tau_over_i(tau, l) -> complex:
    return cmath.sqrt(tau / 1j) ** l


# Each lemma: (sharp of its invariant, lhs twisted, S-matrix kind,
#              target sharp, target twisted, first S-matrix argument phi?)
_LEMMAS = {
    "4.2": ("I", False, "aI_II", "II", True, True),
    "4.3": ("I", True, "aI", "I", True, False),
    "4.4": ("II", False, "aII", "II", False, False),
    "4.5": ("II", True, "aII_I", "I", False, True),
}

_COROLLARY_CONST = {
    "4.2": lambda l: i_power(-l * l),
    "4.3": lambda l: (1 + 0j) if (l * (l - 1) // 2) % 2 == 0 else (-1 + 0j),
    "4.4": lambda l: i_power(-l * l),
    "4.5": lambda l: i_power(-l * l),
}

# T-laws: lemmas 4.4/4.5 swap the twist of the right-hand side
_T_SWAP = {"4.2": False, "4.3": False, "4.4": True, "4.5": True}


def verify_S(lemma, lam: Weight, k, y: YPoint, tol=1e-6, theta_tol=1e-10):
    """S-transformation law of one of the four lemmas at one sample point.
    With lam = 0 and k = 0 the corollary form (constant instead of the
    mu-sum) is checked."""
    if lemma not in _LEMMAS:
        raise ValueError(f"unknown lemma {lemma!r}")
    sharp, twisted, kind, tsharp, ttwisted, use_phi = _LEMMAS[lemma]
    l = lam.rank
    m = k + 2 * l + 1
    sy = s_point(y, sharp)
    lhs = eval_anti_invariant(lam, sharp, twisted, sy, theta_tol)
    pref = _sqrt_tau_over_i(y.tau, l)
    if k == 0:
        rhs = pref * _COROLLARY_CONST[lemma](l) * eval_anti_invariant(
            Weight.zero(l), tsharp, ttwisted, y, theta_tol)
        return make_report(lhs, rhs, tol, lam=lam, y=y, lemma=lemma,
                           law="S-corollary", rank=l, k=k,
                           theta_tol=theta_tol)
    first = phi_involution(lam) if use_phi else lam
    acc = 0.0 + 0.0j
    for mu in enumerate_dominant(l, k):
        acc += smatrix_entry(kind, k, first, mu) * eval_anti_invariant(
            mu, tsharp, ttwisted, y, theta_tol)
    rhs = m ** (-l / 2) * pref * acc
    return make_report(lhs, rhs, tol, lam=lam, y=y, lemma=lemma, law="S",
                       rank=l, k=k, theta_tol=theta_tol)


def verify_T(lemma, lam: Weight, k, y: YPoint, tol=1e-10, theta_tol=1e-12):
    """T-transformation law (second display) of one of the four lemmas; the
    phase is computed from the exact rational |pi^(sharp)(lam+rho)|^2."""
    if lemma not in _LEMMAS:
        raise ValueError(f"unknown lemma {lemma!r}")
    sharp, twisted, _, _, _, _ = _LEMMAS[lemma]
    l = lam.rank
    m = k + 2 * l + 1
    lhs = eval_anti_invariant(lam, sharp, twisted, t_point(y), theta_tol)
    nsq = norm_sq((lam + rho(l)).canonical().project_finite(sharp))
    phase = cmath.exp(1j * math.pi * float(Fraction(nsq, m) % 2))
    rhs_twisted = (not twisted) if _T_SWAP[lemma] else twisted
    rhs = phase * eval_anti_invariant(lam, sharp, rhs_twisted, y, theta_tol)
    return make_report(lhs, rhs, tol, lam=lam, y=y, lemma=lemma, law="T",
                       rank=l, k=k, theta_tol=theta_tol)


# Propositions for normalized characters: same table, with chi in place of A
_PROPS = {
    "4.6": "4.2",
    "4.7": "4.3",
    "4.8": "4.4",
    "4.9": "4.5",
}

_PROP_CONST = {
    "4.6": lambda l: i_power(l * l),
    "4.7": lambda l: (1 + 0j) if (l * (l - 1) // 2) % 2 == 0 else (-1 + 0j),
    "4.8": lambda l: i_power(l * l),
    "4.9": lambda l: i_power(l * l),
}


def verify_props(prop, lam: Weight, k, y: YPoint, tol=1e-6, theta_tol=1e-10,
                 law="S"):
    """S- or T-law of Propositions for the normalized (twisted-)characters,
    including the conformal-anomaly phase in the T-laws."""
    if prop not in _PROPS:
        raise ValueError(f"unknown proposition {prop!r}")
    lemma = _PROPS[prop]
    sharp, twisted, kind, tsharp, ttwisted, use_phi = _LEMMAS[lemma]
    l = lam.rank
    m = k + 2 * l + 1
    if law == "S":
        sy = s_point(y, sharp)
        lhs = eval_character(lam, sharp, twisted, sy, theta_tol)
        first = phi_involution(lam) if use_phi else lam
        acc = 0.0 + 0.0j
        for mu in enumerate_dominant(l, k):
            acc += smatrix_entry(kind, k, first, mu) * eval_character(
                mu, tsharp, ttwisted, y, theta_tol)
        rhs = m ** (-l / 2) * _PROP_CONST[prop](l) * acc
        return make_report(lhs, rhs, tol, lam=lam, y=y, prop=prop, law="S",
                           rank=l, k=k, theta_tol=theta_tol)
    if law == "T":
        lhs = eval_character(lam, sharp, twisted, t_point(y), theta_tol)
        nsq_l = norm_sq((lam + rho(l)).canonical().project_finite(sharp))
        nsq_r = norm_sq(rho(l).project_finite(sharp))
        arg = Fraction(nsq_l, m) - Fraction(nsq_r, 2 * l + 1)
        phase = cmath.exp(1j * math.pi * float(arg % 2))
        rhs_twisted = (not twisted) if _T_SWAP[lemma] else twisted
        rhs = phase * eval_character(lam, sharp, rhs_twisted, y, theta_tol)
        return make_report(lhs, rhs, tol, lam=lam, y=y, prop=prop, law="T",
                           rank=l, k=k, theta_tol=theta_tol)
    raise ValueError(f"law must be 'S' or 'T', got {law!r}")


# ---------------------------------------------------------------------------
# SL2(Z) closure of the character spans (section-5 mapping table)
# ---------------------------------------------------------------------------

_FAMILIES = {
    "I": ("I", False),
    "II": ("II", False),
    "psiI": ("I", True),
    "psiII": ("II", True),
}

SL2_ARROWS = (
    ("S", "II", "II"),
    ("S", "I", "psiII"),
    ("S", "psiII", "I"),
    ("T", "I", "I"),
    ("T", "II", "psiII"),
    ("T", "psiII", "II"),
)

PSI_I_ARROWS = (("S", "psiI", "psiI"), ("T", "psiI", "psiI"))


def _family_samples(l, k, fam, points, theta_tol):
    sharp, twisted = _FAMILIES[fam]
    lams = enumerate_dominant(l, k)
    return np.array([[eval_character(lam, sharp, twisted, y, theta_tol)
                      for lam in lams] for y in points])


def verify_sl2_closure(l, k, tol=1e-6, theta_tol=1e-10, n_points=None,
                       arrows=SL2_ARROWS, include_gram=True,
                       points=None) -> dict:
    """Least-squares closure of the six S/T arrows between the character
    families, plus the Gram rank of the three families' samples.

    k = 0 collapses every family to the constant 1 and is reported as the
    degenerate case (not a failure)."""
    lams = enumerate_dominant(l, k)
    dim = len(lams)
    if k == 0:
        return {"degenerate": True, "rank": l, "k": k, "pass": True,
                "arrows": [], "gram_rank": 1, "expected_gram_rank": 1}
    n_points = n_points or max(2 * dim + 2, 8)
    if points is None:
        points = sample_points(l, n_points)
        # resample once if the target family samples are ill-conditioned
        probe = np.array([[eval_character(lam, "II", False, y, theta_tol)
                           for lam in lams] for y in points])
        if np.linalg.cond(probe) > 1e10:
            points = sample_points(l, n_points + 4)[4:]
    cache = {}

    def fam_matrix(fam, pts, key):
        if (fam, key) not in cache:
            cache[(fam, key)] = _family_samples(l, k, fam, pts, theta_tol)
        return cache[(fam, key)]

    results = []
    all_pass = True
    for mat, src, dst in arrows:
        src_sharp, src_twisted = _FAMILIES[src]
        if mat == "S":
            gpts = [s_point(y, src_sharp) for y in points]
        else:
            gpts = [t_point(y) for y in points]
        transformed = np.array(
            [[eval_character(lam, src_sharp, src_twisted, gy, theta_tol)
              for lam in lams] for gy in gpts])
        target = fam_matrix(dst, points, "base")
        res_max = 0.0
        for col in range(dim):
            v = transformed[:, col]
            sol, _, _, _ = np.linalg.lstsq(target, v, rcond=None)
            resid = float(np.linalg.norm(target @ sol - v) / np.linalg.norm(v))
            res_max = max(res_max, resid)
        ok = bool(res_max <= tol)
        all_pass = all_pass and ok
        results.append({"g": mat, "source": src, "target": dst,
                        "residual": res_max, "pass": ok})
    out = {"degenerate": False, "rank": l, "k": k, "arrows": results,
           "pass": all_pass}
    if include_gram:
        stack = np.hstack([fam_matrix(f, points, "base")
                           for f in ("I", "II", "psiII")])
        svals = np.linalg.svd(stack, compute_uv=False)
        grank = int((svals > svals[0] * 1e-8).sum())
        out["gram_rank"] = grank
        out["expected_gram_rank"] = 3 * dim
        out["pass"] = out["pass"] and grank == 3 * dim
    return out


# ---------------------------------------------------------------------------
# Poisson resummation and the sine product
# ---------------------------------------------------------------------------

def _gaussian_sum(l, q, shift, lin, tol):
    """sum_{m in Z^l} exp(pi i q |m + shift|^2 + 2 pi i <lin, m>) with
    Im(q) > 0; shift, lin complex vectors; certified Gaussian tail."""
    im_q = q.imag
    if im_q <= 0:
        raise ValueError("Im(q) must be positive")
    re_s = [c.real for c in shift]
    # |term| = exp(-pi im_q |m + re_s + u|^2 + const), with the linear parts
    # folded into the completed square
    u = [(q.real * c.imag + li.imag) / im_q
         for c, li in zip(shift, lin)]
    center = [rs + ui for rs, ui in zip(re_s, u)]
    # conservative constant: evaluate the real exponent at the center
    def real_exponent(m):
        x = [mi + ci for mi, ci in zip(m, shift)]
        e = 1j * math.pi * q * sum(v * v for v in x) \
            + TWO_PI_I * sum(li * mi for li, mi in zip(lin, m))
        return e.real
    m0 = tuple(round(-c) for c in center)
    log_c = real_exponent(m0) + math.pi * im_q * sum(
        (a + b) ** 2 for a, b in zip(m0, center))
    radius = _shell_radius(l, math.pi * im_q, log_c, tol)
    total = 0.0 + 0.0j
    for m in _box(center, radius + 1):
        x = [mi + ci for mi, ci in zip(m, shift)]
        e = 1j * math.pi * q * sum(v * v for v in x) \
            + TWO_PI_I * sum(li * mi for li, mi in zip(lin, m))
        total += cmath.exp(e)
    return total


def poisson_check(l, a, tau, tol=1e-8) -> VerificationReport:
    """Self-dual-lattice Poisson resummation:
    sum exp(pi i (-1/tau)|m+a|^2) = (tau/i)^{l/2} sum exp(pi i tau |m|^2
    + 2 pi i <a, m>)."""
    a = tuple(complex(c) for c in a)
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("Im(tau) must be positive")
    lhs = _gaussian_sum(l, -1 / tau, a, (0.0,) * l, tol * 1e-2)
    rhs = _sqrt_tau_over_i(tau, l) * _gaussian_sum(
        l, tau, (0.0,) * l, a, tol * 1e-2)
    return make_report(lhs, rhs, tol, law="poisson", rank=l,
                       tau=(tau.real, tau.imag))


def sin_product(n: int):
    """prod_{k=1}^{n-1} sin(k pi / n) and its closed form n / 2^(n-1)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    prod = 1.0
    for k in range(1, n):
        prod *= math.sin(k * math.pi / n)
    return prod, n / 2 ** (n - 1)
