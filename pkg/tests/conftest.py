from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from cosetlab import groups as gr

small = st.integers(min_value=-6, max_value=6)


def heis():
    return st.builds(gr.Heis, small, small, small)


def intvec(d=2):
    return st.builds(lambda c: gr.IntVec(tuple(c)), st.lists(small, min_size=d, max_size=d))


def dyadic(p=2, kmax=3):
    return st.builds(lambda n, k: Fraction(n, p ** k), st.integers(-20, 20), st.integers(0, kmax))


def lampbs(p=2):
    return st.builds(lambda b, a: gr.LampBS(b, a, p), dyadic(p), st.integers(-3, 3))


def affq():
    nonzero = st.sampled_from([Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(3), Fraction(-2, 3)])
    return st.builds(gr.AffQ, st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4)), nonzero)


def finperm(n=6):
    return st.permutations(list(range(n))).map(gr.FinPerm.from_images)


def cyc(m=12):
    return st.integers(0, m - 1).map(lambda r: gr.Cyc(r, m))


ALL_GROUPS = {
    "heis": heis,
    "zd": intvec,
    "lampbs": lampbs,
    "affq": affq,
    "perm": finperm,
    "cyc": cyc,
}
