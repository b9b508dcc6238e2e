import random
from fractions import Fraction

import pytest

from koszul.algebra import Element, FreeModel, de_rham_model, window_keys


@pytest.fixture(scope="session")
def derham2():
    return de_rham_model(2)


@pytest.fixture(scope="session")
def derham3():
    return de_rham_model(3)


def random_element(model, rng, max_poly_degree=2, max_form_degree=None,
                   n_terms=3, coeff_pool=(-2, -1, 1, 2, 3)):
    """Deterministic pseudo-random sparse element for property tests."""
    keys = window_keys(model, max_poly_degree, max_form_degree)
    out = Element(model)
    for _ in range(n_terms):
        k = rng.choice(keys)
        c = Fraction(rng.choice(coeff_pool), rng.choice((1, 2)))
        out = out + Element(model, {k: c})
    return out


def random_homogeneous(model, rng, degree, max_poly_degree=2, n_terms=2,
                       coeff_pool=(-2, -1, 1, 2)):
    keys = [k for k in window_keys(model, max_poly_degree)
            if model.key_degree(k) == degree]
    if not keys:
        return Element(model)
    out = Element(model)
    for _ in range(n_terms):
        out = out + Element(model, {rng.choice(keys): Fraction(rng.choice(coeff_pool))})
    return out


@pytest.fixture
def rng():
    return random.Random(20240517)
