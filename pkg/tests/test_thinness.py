from __future__ import annotations

import random
from fractions import Fraction

import pytest

from cosetlab import cosets as cs
from cosetlab import groups as gr
from cosetlab.errors import ConfigurationError, PreconditionError
from cosetlab.folner import Box, FiniteSet, HeisBox, affq_rect, affq_rect_sizes
from cosetlab.thinness import (
    DoubleCosetQuery, SubgroupCharacter, correlation_bound_check, correlation_sum, in_double_coset,
    induced_firmness_curve, partition_total, thinness_ratio, thinness_sup,
)


def brute_thinness(F, L, Y):
    """max over y in Y and x in F y of #{g in F : x^-1 g y in L}, by the double sum."""
    best = 0
    for yk in Y:
        y = L.lift(yk)
        for f in F:
            x = f * y
            best = max(best, sum(1 for g in F if in_double_coset(g, x, L, y)))
    return Fraction(best, len(F))


def random_instance(rng, kind):
    if kind == "lampbs":
        e, L = gr.LampBS(0, 0, 2), rng.choice([cs.LampBSBase(2), cs.LampBSNormal(2)])
    else:
        e, L = gr.IntVec((0, 0)), rng.choice([cs.ZdSlice(2, 1), cs.ZdSlice(2, 2)])
    size = rng.randint(1, 200)
    pool = {gr.random_like(e, rng, 4) for _ in range(size)}
    F = FiniteSet(pool)
    Y = [L.key(gr.random_like(e, rng, 4)) for _ in range(3)]
    return F, L, list(dict.fromkeys(Y))


@pytest.mark.parametrize("kind", ["lampbs", "zd"])
def test_grouping_matches_double_sum(kind):
    rng = random.Random(21 if kind == "lampbs" else 22)
    for _ in range(25):
        F, L, Y = random_instance(rng, kind)
        assert len(F) <= 200
        assert thinness_ratio(DoubleCosetQuery(L, F, Y)) == brute_thinness(F, L, Y)


def test_explicit_x_window():
    L = cs.ZdSlice(2, 2)
    F = Box(2).generate(4)
    e = gr.IntVec((0, 0))
    assert thinness_ratio(DoubleCosetQuery(L, F, [L.key(e)], X=[0])) == Fraction(1, 4)
    assert thinness_ratio(DoubleCosetQuery(L, F, [L.key(e)], X=[99])) == 0


def test_window_monotone():
    rng = random.Random(23)
    L = cs.LampBSBase(2)
    F = FiniteSet({gr.random_like(gr.LampBS(0, 0, 2), rng, 3) for _ in range(80)})
    Y = list(dict.fromkeys(L.key(gr.random_like(gr.LampBS(0, 0, 2), rng, 4)) for _ in range(12)))
    vals = [thinness_ratio(DoubleCosetQuery(L, F, Y[:k])) for k in range(1, len(Y) + 1)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("gen,n,L", [
    (HeisBox(), 2, cs.HeisCenter()), (Box(2), 7, cs.ZdSlice(2, 1)), (affq_rect(), 6, cs.AffScale()),
])
def test_partition_identity(gen, n, L):
    assert partition_total(gen.generate(n), L) == 1


@pytest.mark.parametrize("n", [1, 2, 5, 16, 33])
def test_affq_rectangle_certified(n):
    res = thinness_sup(affq_rect().generate(n), cs.AffScale())
    assert res.certified and res.method == "affine-fibres"
    assert res.ratio == Fraction(1, n)


@pytest.mark.parametrize("nb,na", [(2, 5), (5, 2), (3, 3), (1, 4)])
def test_affq_exact_sup_is_one_over_translations(nb, na):
    F = affq_rect_sizes(lambda n: nb, lambda n: na).generate(1)
    res = thinness_sup(F, cs.AffScale())
    rng = random.Random(nb * 10 + na)
    e = gr.AffQ(Fraction(0), Fraction(1))
    Y = [cs.AffScale().key(gr.random_like(e, rng, 3)) for _ in range(15)]
    # the window sup never beats the certified value
    assert brute_thinness(F, cs.AffScale(), Y) <= res.ratio
    if res.certified:
        assert res.ratio == Fraction(1, nb)
    assert res.ratio <= max(Fraction(1, na), Fraction(1, nb))


def test_normal_case_is_certified():
    res = thinness_sup(Box(2).generate(9), cs.ZdSlice(2, 2))
    assert res.certified and res.ratio == Fraction(1, 9)


def test_window_method_is_uncertified():
    res = thinness_sup(HeisBox().generate(1), cs.Trivial(identity=gr.Heis(0, 0, 0)))
    assert res.certified and res.ratio == Fraction(1, 27)
    rng = random.Random(3)
    F = FiniteSet({gr.random_like(gr.LampBS(0, 0, 2), rng, 3) for _ in range(30)})
    res = thinness_sup(F, cs.LampBSBase(2), [(1, Fraction(0))])
    assert not res.certified and res.method == "window"


def test_grouped_correlation_matches_full_double_sum():
    rng = random.Random(31)
    L = cs.ZdSlice(2, 2)
    phi = SubgroupCharacter(L, (((Fraction(1, 4),), Fraction(1, 2)), ((Fraction(1, 2),), Fraction(1, 2))))
    for _ in range(20):
        F = FiniteSet({gr.random_like(gr.IntVec((0, 0)), rng, 4) for _ in range(30)})
        u = gr.random_like(gr.IntVec((0, 0)), rng, 4)
        assert correlation_sum(F, phi, u, L) == correlation_sum(F, phi, u)


@pytest.mark.parametrize("kind", ["lampbs", "zd"])
def test_correlation_bound_holds_exactly(kind):
    rng = random.Random(41 if kind == "lampbs" else 42)
    for _ in range(25):
        F, L, _ = random_instance(rng, kind)
        if isinstance(L, cs.LampBSNormal):
            L = cs.LampBSBase(2)
        if len(F) > 60:
            F = FiniteSet(list(F)[:60])
        pts = (((Fraction(rng.randint(0, 3), 4),), Fraction(1)),)
        phi = SubgroupCharacter(L, pts)
        assert phi.exact
        u = gr.random_like(next(iter(F)), rng, 3)
        rep = correlation_bound_check(F, phi, u, L)
        assert rep.certified and rep.holds
        assert isinstance(rep.C_sq, Fraction)


def test_indicator_correlation_equals_coset_norm():
    L = cs.ZdSlice(2, 2)
    phi = SubgroupCharacter(L, (((Fraction(0),), Fraction(1)),))
    F = Box(2).generate(5)
    rep = correlation_bound_check(F, phi, gr.IntVec((0, 0)), L)
    assert rep.C_sq == Fraction(1, 25) and rep.bound == Fraction(1, 5)


def test_float_character_bound():
    L = cs.ZdSlice(2, 2)
    phi = SubgroupCharacter(L, (((Fraction(1, 3),), Fraction(1)),))
    assert not phi.exact
    rep = correlation_bound_check(Box(2).generate(6), phi, gr.IntVec((1, 1)), L)
    assert rep.holds and rep.C <= float(rep.bound) + 1e-12


def test_character_validation():
    with pytest.raises(ConfigurationError):
        SubgroupCharacter(cs.ZdSlice(2, 2), (((Fraction(0),), Fraction(1, 2)),))
    phi = SubgroupCharacter(cs.AffScale(), (((Fraction(0),), Fraction(1)),))
    with pytest.raises(PreconditionError):
        phi(gr.AffQ(Fraction(0), Fraction(2)))
    with pytest.raises(PreconditionError):
        DoubleCosetQuery(cs.ZdSlice(2, 2), [], [0])
    with pytest.raises(ConfigurationError):
        DoubleCosetQuery(cs.ZdSlice(2, 2), Box(2).generate(1), [])


def test_induced_firmness_curve_affq():
    e = gr.AffQ(Fraction(0), Fraction(1))
    rng = random.Random(5)
    translates = [e] + [gr.random_like(e, rng, 3) for _ in range(5)]
    curve = induced_firmness_curve(affq_rect(), cs.AffScale(), translates, 10, nmin=2)
    for pt in curve:
        assert pt.certified and pt.bound == Fraction(1, pt.n)
        assert pt.worst <= pt.bound
    assert all(a.bound > b.bound for a, b in zip(curve, curve[1:]))
