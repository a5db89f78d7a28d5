"""Shared fixtures: code constructions and cached heavy region computations."""

from fractions import Fraction

import pytest

from srr import build_catalog, compute_region, family_generator


@pytest.fixture(scope="session")
def catalog_of():
    cache = {}

    def get(family, k):
        key = (family, k)
        if key not in cache:
            cache[key] = build_catalog(family_generator(family, k))
        return cache[key]

    return get


@pytest.fixture(scope="session")
def region_of(catalog_of):
    cache = {}

    def get(family, k):
        key = (family, k)
        if key not in cache:
            cat = catalog_of(family, k)
            cache[key] = compute_region(cat, [Fraction(1)] * cat.n)
        return cache[key]

    return get
