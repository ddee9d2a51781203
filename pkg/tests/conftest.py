from fractions import Fraction

import pytest
from hypothesis import strategies as st

from kacmod.lattice import Weight
from kacmod.roots import RootSystemCtx


@pytest.fixture(scope="session")
def ctx1():
    return RootSystemCtx.build(1)


@pytest.fixture(scope="session")
def ctx2():
    return RootSystemCtx.build(2)


@pytest.fixture(scope="session")
def ctx3():
    return RootSystemCtx.build(3)


def small_fractions(max_num=12, denominators=(1, 2, 3, 4)):
    return st.builds(Fraction,
                     st.integers(-max_num, max_num),
                     st.sampled_from(denominators))


def weights(l, max_num=12):
    return st.builds(
        lambda eps, d, c: Weight(tuple(eps), d, c),
        st.lists(small_fractions(max_num), min_size=l, max_size=l),
        small_fractions(max_num),
        small_fractions(max_num),
    )


def integral_weights(l, max_label=3):
    """Random elements of the weight lattice P (canonical reps)."""
    from kacmod.roots import from_dynkin_labels

    return st.builds(
        lambda m: from_dynkin_labels(l, m),
        st.lists(st.integers(-max_label, max_label), min_size=l + 1,
                 max_size=l + 1),
    )
