from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cosetlab import groups as gr
from cosetlab.errors import GroupMismatchError, ParseError

from conftest import ALL_GROUPS, heis, finperm, intvec, lampbs


def heis_matrix(x):
    return np.array([[1, x.a, x.c], [0, 1, x.b], [0, 0, 1]], dtype=object)


def from_matrix(m):
    return gr.Heis(int(m[0][1]), int(m[1][2]), int(m[0][2]))


# --- worked examples ---------------------------------------------------------

def test_heis_product_matches_matrix_example():
    x, y = gr.Heis(1, 0, 0), gr.Heis(0, 1, 0)
    assert x * y == gr.Heis(1, 1, 1)
    assert from_matrix(heis_matrix(x).dot(heis_matrix(y))) == gr.Heis(1, 1, 1)


def test_lampbs_product_example():
    x, y = gr.LampBS(1, 1, 2), gr.LampBS(1, 0, 2)
    assert x * y == gr.LampBS(3, 1, 2)


def test_heis_inverse_formula():
    for a, b, c in [(1, 2, 3), (-4, 5, 0), (0, 0, 7)]:
        assert gr.Heis(a, b, c).inverse() == gr.Heis(-a, -b, -c + a * b)


def test_perm_cycle_inverse():
    g = gr.FinPerm.from_mapping({0: 2, 2: 1, 1: 0})
    assert g.inverse() == gr.FinPerm.from_mapping({0: 1, 1: 2, 2: 0})
    assert gr.FinPerm(()).inverse() == gr.FinPerm(())


def test_conjugate_heis_example():
    for b in (-3, 1, 7):
        assert gr.conjugate(gr.Heis(0, b, 0), gr.Heis(1, 0, 0)) == gr.Heis(1, 0, -b)


def test_affq_rule():
    x = gr.AffQ(Fraction(1, 2), Fraction(3))
    y = gr.AffQ(Fraction(2), Fraction(-1, 3))
    assert x * y == gr.AffQ(Fraction(1, 2) + 3 * 2, Fraction(-1))


def test_perm_prunes_fixed_points():
    g = gr.FinPerm.from_mapping({0: 1, 1: 0, 5: 5})
    assert g == gr.FinPerm.from_cycles((0, 1))
    assert 5 not in g.support
    assert (g * g).support == frozenset()


def test_invalid_values_rejected():
    with pytest.raises(ValueError):
        gr.AffQ(Fraction(1), Fraction(0))
    with pytest.raises(ValueError):
        gr.LampBS(Fraction(1, 3), 0, 2)
    with pytest.raises(ValueError):
        gr.FinPerm.from_mapping({0: 1, 1: 1})


def test_tag_mismatch():
    with pytest.raises(GroupMismatchError):
        gr.Heis(1, 0, 0) * gr.IntVec((1, 2, 3))
    with pytest.raises(GroupMismatchError):
        gr.LampBS(0, 1, 2) * gr.LampBS(0, 1, 3)
    with pytest.raises(GroupMismatchError):
        gr.IntVec((1,)) * gr.IntVec((1, 2))


# --- properties ---------------------------------------------------------------

@pytest.mark.parametrize("tag", sorted(ALL_GROUPS))
def test_associativity_and_identity_bulk(tag):
    rng = random.Random(hash(tag) & 0xFFFF)
    sample = {
        "heis": gr.Heis(0, 0, 0), "zd": gr.IntVec((0, 0, 0)), "lampbs": gr.LampBS(0, 0, 3),
        "affq": gr.AffQ(Fraction(0), Fraction(1)), "perm": gr.FinPerm(()), "cyc": gr.Cyc(0, 10),
    }[tag]
    e = sample.identity()
    for _ in range(10_000 if tag in ("heis", "zd", "cyc") else 2_000):
        x, y, z = (gr.random_like(sample, rng, 6) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * e == x == e * x
        assert x * x.inverse() == e


@settings(max_examples=300)
@given(heis(), heis())
def test_heis_agrees_with_unitriangular_matrices(x, y):
    assert from_matrix(heis_matrix(x).dot(heis_matrix(y))) == x * y


@settings(max_examples=200)
@given(finperm(7), finperm(7))
def test_perm_is_function_composition(x, y):
    xy = x * y
    for i in range(9):
        assert xy(i) == x(y(i))
    assert xy.support <= x.support | y.support


@settings(max_examples=200)
@given(finperm(6), finperm(6))
def test_perm_conjugate_relabels_support(s, g):
    c = gr.conjugate(s, g)
    assert c.support == frozenset(s(i) for i in g.support)


@settings(max_examples=200)
@given(st.sampled_from(sorted(ALL_GROUPS)), st.data())
def test_conjugation_is_automorphism(tag, data):
    strat = ALL_GROUPS[tag]()
    t, x, y = data.draw(strat), data.draw(strat), data.draw(strat)
    assert gr.conjugate(t, x * y) == gr.conjugate(t, x) * gr.conjugate(t, y)
    assert gr.conjugate(t.identity(), x) == x


@settings(max_examples=300)
@given(st.sampled_from(sorted(ALL_GROUPS)), st.data())
def test_encoding_round_trip(tag, data):
    x = data.draw(ALL_GROUPS[tag]())
    assert gr.parse_element(gr.encode(x)) == x
    p = gr.Pair(x, x.inverse())
    assert gr.parse_element(gr.encode(p)) == p


def test_encoding_examples():
    assert gr.encode(gr.Heis(1, 0, 0)) == "heis:1,0,0"
    assert gr.encode(gr.LampBS(Fraction(3, 2), 1, 2)) == "lampbs[p=2]:3/2,1"
    assert gr.encode(gr.FinPerm.from_cycles((0, 2, 1))) == "perm:(0 2 1)"
    assert gr.parse_element("perm:()") == gr.FinPerm(())
    with pytest.raises(ParseError):
        gr.parse_element("heis:1,2")
    with pytest.raises(ParseError):
        gr.parse_element("pair(heis:0,0,0;perm:())")


@settings(max_examples=100)
@given(lampbs(), lampbs())
def test_lampbs_denominators_stay_p_powers(x, y):
    b = Fraction((x * y).b)
    d = b.denominator
    while d % 2 == 0:
        d //= 2
    assert d == 1


@settings(max_examples=50)
@given(st.lists(heis(), min_size=1, max_size=20), heis())
def test_vectorized_right_multiply_matches_scalar(xs, s):
    arr = gr.to_array(xs)
    out = gr.array_right_multiply(arr, s)
    assert [tuple(r) for r in out.tolist()] == [(y.a, y.b, y.c) for y in (x * s for x in xs)]
    left = gr.array_left_multiply(s, arr)
    assert [tuple(r) for r in left.tolist()] == [(y.a, y.b, y.c) for y in (s * x for x in xs)]


@settings(max_examples=50)
@given(st.lists(intvec(3), min_size=1, max_size=10), intvec(3))
def test_vectorized_zd(xs, s):
    out = gr.array_right_multiply(gr.to_array(xs), s)
    assert [tuple(r) for r in out.tolist()] == [(x * s).coords for x in xs]


def test_power():
    t = gr.LampBS(0, 1, 2)
    assert gr.power(t, 3) == gr.LampBS(0, 3, 2)
    assert gr.power(t, -2) == gr.LampBS(0, -2, 2)
    assert gr.power(gr.Heis(1, 1, 0), 0) == gr.Heis(0, 0, 0)
