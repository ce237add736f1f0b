"""Pluecker vectors, the map phi, and reduction modulo its image."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropgrass.pvector import (
    INF,
    PlueckerVector,
    basis_vector,
    d_subsets,
    parse_subset,
    phi,
    subset_key,
)


def test_subset_enumeration():
    assert d_subsets(2, 4) == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    assert len(d_subsets(3, 7)) == 35
    assert subset_key((1, 3, 7)) == "137"
    assert parse_subset("137") == (1, 3, 7)


def test_phi_block_sums():
    a = [1, 2, 3, 4]
    v = phi(a, 2)
    assert v[(1, 2)] == 3 and v[(3, 4)] == 7 and v[(1, 4)] == 5


def test_arithmetic_and_json():
    w = basis_vector(2, 4, (1, 2)) + basis_vector(2, 4, (3, 4))
    assert w[(1, 2)] == 1 and w[(1, 3)] == 0
    assert (w - w) == PlueckerVector(2, 4, {})
    assert PlueckerVector.from_json(w.to_json()) == w
    winf = PlueckerVector(2, 4, {(1, 2): INF, (1, 3): Fraction(1, 2)})
    assert PlueckerVector.from_json(winf.to_json()) == winf


def test_reduce_mod_phi_idempotent_and_kills_phi():
    a = [Fraction(1), Fraction(-2), Fraction(3), Fraction(0), Fraction(5)]
    v = phi(a, 2)
    assert v.reduce_mod_phi() == PlueckerVector(2, 5, {})
    w = basis_vector(2, 5, (1, 2))
    r = w.reduce_mod_phi()
    assert r.reduce_mod_phi() == r


@given(
    st.lists(st.integers(-20, 20), min_size=5, max_size=5),
    st.lists(st.integers(-20, 20), min_size=10, max_size=10),
)
@settings(max_examples=60, deadline=None)
def test_equals_mod_phi_invariance(a, coords):
    w = PlueckerVector(2, 5, dict(zip(d_subsets(2, 5), coords)))
    shifted = w + phi(a, 2)
    assert w.equals_mod_phi(shifted)
    assert w.reduce_mod_phi() == shifted.reduce_mod_phi()


def test_infinite_coordinates_block_phi_reduction():
    w = PlueckerVector(2, 4, {(1, 2): INF})
    with pytest.raises(ValueError):
        w.reduce_mod_phi()


def test_dimension_mismatch():
    w = PlueckerVector(2, 4, {})
    v = PlueckerVector(2, 5, {})
    with pytest.raises(ValueError):
        _ = w + v
