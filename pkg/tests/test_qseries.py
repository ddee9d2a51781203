from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import kacmod.qseries as qs
from kacmod.lattice import Weight
from kacmod.qseries import QSeries
from kacmod.roots import from_dynkin_labels, rho, simple_roots_I

CAPS = dict(height_cap=8, q_cap=None)


def sparse_series(l=2, height_cap=8):
    """Random sparse series; apexes lie in the root lattice so that sums of
    any two are defined."""
    vec = st.tuples(*([st.integers(0, 3)] * (l + 1)))

    def build(apex_coords, items):
        apex = Weight.zero(l)
        for n, alpha in zip(apex_coords, simple_roots_I(l)):
            apex = apex + alpha.scale(n)
        s = QSeries(l, apex, {}, height_cap, None)
        for v, c in items:
            s.add_term(v, c)
        return s

    return st.builds(
        build,
        st.lists(st.integers(-2, 2), min_size=l + 1, max_size=l + 1),
        st.lists(st.tuples(vec, st.integers(-4, 4)), max_size=5),
    )


def test_monomial_multiplication():
    l = 2
    lam = from_dynkin_labels(l, (1, 0, 0))
    mu = from_dynkin_labels(l, (0, 1, 0))
    prod = qs.mul(QSeries.monomial(lam, 1, **CAPS), QSeries.monomial(mu, 1, **CAPS))
    assert prod == QSeries.monomial(lam + mu, 1, **CAPS)


@given(sparse_series())
@settings(max_examples=40)
def test_one_is_neutral(a):
    assert qs.mul(a, QSeries.one(2, *a.caps())) == a


def test_geometric_series_inverts_binomial():
    l = 1
    alpha = simple_roots_I(l)[1]
    b = qs.binomial_factor(alpha, -1, 12, None)
    g = qs.geometric_factor(alpha, 12, None)
    assert qs.mul(b, g) == QSeries.one(l, 12, None)


@given(sparse_series(), sparse_series(), sparse_series())
@settings(max_examples=30, deadline=None)
def test_ring_axioms(a, b, c):
    assert qs.mul(a, b) == qs.mul(b, a)
    assert qs.mul(qs.mul(a, b), c) == qs.mul(a, qs.mul(b, c))
    lhs = qs.mul(a, qs.add(b, c))
    rhs = qs.add(qs.mul(a, b), qs.mul(a, c))
    assert lhs == rhs


@given(sparse_series(height_cap=10), sparse_series(height_cap=10))
@settings(max_examples=30, deadline=None)
def test_truncation_is_multiplicative(a, b):
    # truncating inputs to a lower cap then multiplying equals multiplying
    # then truncating
    def cut(s, h):
        out = QSeries(s.rank, s.apex, {}, h, s.q_cap)
        for v, c in s.terms.items():
            out.add_term(v, c)
        return out

    low = 5
    direct = cut(qs.mul(a, b), low)
    trunced = qs.mul(cut(a, low), cut(b, low))
    assert direct == trunced


def test_invert_examples():
    l = 1
    alpha = simple_roots_I(l)[1]
    inv = qs.invert_unit(qs.binomial_factor(alpha, -1, 9, None))
    assert inv == qs.geometric_factor(alpha, 9, None)
    r = rho(l)
    inv_mono = qs.invert_unit(QSeries.monomial(r, 1, 9, None))
    assert inv_mono == QSeries.monomial(-r, 1, 9, None)


@given(sparse_series())
@settings(max_examples=30, deadline=None)
def test_invert_round_trip(a):
    zero = (0,) * 3
    a.set_term(zero, 1)  # force a unit leading coefficient
    inv = qs.invert_unit(a)
    assert qs.mul(a, inv) == QSeries.one(2, *a.caps())


def test_invert_requires_unit():
    l = 1
    s = qs.binomial_factor(simple_roots_I(l)[1], -1, 6, None)
    s.set_term((0, 0), 2)
    with pytest.raises(ValueError):
        qs.invert_unit(s)


def test_add_requires_lattice_apex_difference():
    l = 1
    a = QSeries.monomial(Weight((Fraction(1, 3),)), 1, **CAPS)
    b = QSeries.one(l, **CAPS)
    with pytest.raises(ValueError):
        qs.add(a, b)


def test_add_over_componentwise_max_apex():
    l = 1
    alpha0, alpha1 = simple_roots_I(l)
    a = QSeries.monomial(alpha0, 1, **CAPS)       # apex alpha_0
    b = QSeries.monomial(alpha1.scale(2), 3, **CAPS)
    s = qs.add(a, b)
    assert s.apex == alpha0 + alpha1.scale(2)
    assert s.coefficient(alpha0) == 1 and s.coefficient(alpha1.scale(2)) == 3


def test_delta_expansion():
    l = 1
    lam = from_dynkin_labels(l, (1, 0))
    mono = QSeries.monomial(lam, 1, **CAPS)
    exp = qs.delta_expansion(mono)
    assert exp == {Fraction(0): [(lam, 1)]}
    # slice totals add up to the full term count
    s = qs.mul(qs.binomial_factor(simple_roots_I(l)[0], -1, 8, None),
               qs.geometric_factor(simple_roots_I(l)[1], 8, None))
    exp = qs.delta_expansion(s)
    assert sum(len(v) for v in exp.values()) == len(s.terms)


def test_weyl_polynomial_constant_slice():
    # q-degree-0 slice of the l=1 denominator product: e^rho (1 - e^{-eps_1}),
    # matching the finite Weyl sum sum_u eps(u) e^{u(rho)}
    from kacmod.characters import denominator_product

    prod = denominator_product(1, False, 6, None)
    slice0 = qs.delta_expansion(prod)[Fraction(0)]
    r = rho(1)
    apex_delta = prod.apex.delta
    want = {
        (r + Weight.delta_weight(1).scale(apex_delta)): 1,
        (r - Weight.eps_basis(1, 1)
         + Weight.delta_weight(1).scale(apex_delta)): -1,
    }
    assert {w: c for w, c in slice0} == want


def test_diff_report():
    l = 1
    a = QSeries.one(l, 6, None)
    b = qs.binomial_factor(simple_roots_I(l)[0], -1, 6, None)
    rep = qs.diff_report(a, b)
    assert not rep["equal"] and rep["first_mismatch_q"] == 1
    assert qs.diff_report(a, a)["equal"]
