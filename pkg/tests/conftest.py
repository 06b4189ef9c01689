import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from triperm.ffring import ReducedPoly
from triperm.trigroup import TriangularPermutation

SMALL_PRIMES = [2, 3, 5, 7]


@st.composite
def reduced_polys(draw, p=None, arity=None, max_size=81):
    if p is None:
        p = draw(st.sampled_from(SMALL_PRIMES))
    if arity is None:
        top = 0
        while p ** (top + 1) <= max_size:
            top += 1
        arity = draw(st.integers(0, top))
    coeffs = draw(st.lists(st.integers(0, p - 1), min_size=p**arity, max_size=p**arity))
    return ReducedPoly(p, arity, coeffs)


@st.composite
def triangular_maps(draw, p=None, n=None, max_size=81, maximal=False):
    if p is None:
        p = draw(st.sampled_from([2, 3, 5]))
    if n is None:
        top = 1
        while p ** (top + 1) <= max_size:
            top += 1
        n = draw(st.integers(1, top))
    comps = []
    for i in range(n):
        c = draw(st.lists(st.integers(0, p - 1), min_size=p**i, max_size=p**i))
        if maximal and c[-1] == 0:
            c[-1] = draw(st.integers(1, p - 1))
        comps.append(ReducedPoly(p, i, c))
    return TriangularPermutation(p, n, tuple(comps))


def T(p, *terms):
    """TriangularPermutation from one {exponents: coeff} dict per component."""
    return TriangularPermutation.from_terms(p, list(terms))


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20261019))


settings.register_profile("default", deadline=None)
settings.load_profile("default")
