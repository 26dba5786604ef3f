"""Thin subgroups and the correlation bound for induced representations.

For a subgroup L and a finite set F the thinness ratio is

    sup_{x, y} |F ∩ x L y^-1| / |F|.

For a fixed y, g lies in x L y^-1 iff g y lies in x L, so the count for the
best x is the largest multiplicity of a key of F·y in G/L.  Induced vectors
built from a positive-definite phi supported in L satisfy

    |(1/|F|^2) sum_{s,t in F} phi(u^-1 s^-1 t u)| <= max_k m_k(F u) / |F|,

because only pairs with s u L = t u L contribute and |phi| <= 1.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import cosets as cs
from . import groups as gr
from .ell2 import avg_norm_sq_delta, coset_multiplicities
from .errors import ConfigurationError, PreconditionError
from .folner import DEFAULT_BUDGET, FiniteSet, FolnerGen
from .gns import _root_of_unity
from .scalars import abs2

__all__ = [
    "DoubleCosetQuery", "thinness_ratio", "in_double_coset", "ThinnessResult", "thinness_sup",
    "SubgroupCharacter", "CorrelationReport", "correlation_sum", "correlation_bound_check",
    "FirmnessPoint", "induced_firmness_curve", "partition_total",
]


def in_double_coset(g, x, L: cs.Subgroup, y) -> bool:
    """g in x L y^-1, tested as x^-1 g y in L."""
    return L.contains(x.inverse() * g * y)


@dataclass
class DoubleCosetQuery:
    """Window for sup_{x in X, y in Y} |F ∩ x L y^-1| / |F|.

    ``X=None`` means every coset of L (handled by grouping, so the sup
    over x is exact).  X and Y hold coset keys of G/L.
    """

    L: cs.Subgroup
    F: Iterable
    Y: list
    X: list | None = None

    def __post_init__(self):
        if not isinstance(self.F, FiniteSet):
            self.F = FiniteSet(self.F)
        if len(self.F) == 0:
            raise PreconditionError("thinness of an empty set")
        if not self.Y or (self.X is not None and not self.X):
            raise ConfigurationError("windows X and Y must be nonempty")


def _count_for_y(F: FiniteSet, L: cs.Subgroup, y, X) -> int:
    if X is None:
        counts = coset_multiplicities(F.right_translate(y) if y != y.identity() else F, L)
        return counts[0]
    keys = Counter(L.key(f * y) for f in F)
    return max(keys.get(x, 0) for x in X)


def thinness_ratio(q: DoubleCosetQuery) -> Fraction:
    best = 0
    for yk in q.Y:
        best = max(best, _count_for_y(q.F, q.L, q.L.lift(yk), q.X))
    return Fraction(best, len(q.F))


def partition_total(F: FiniteSet, L: cs.Subgroup) -> Fraction:
    """sum over cosets xL meeting F of |F ∩ xL| / |F|; equals 1 exactly."""
    return Fraction(sum(coset_multiplicities(F, L)), len(F))


@dataclass(frozen=True)
class ThinnessResult:
    ratio: Fraction
    certified: bool
    method: str


def _is_normal(L: cs.Subgroup) -> bool:
    return isinstance(L, (cs.FullGroup, cs.Trivial)) or bool(getattr(L, "is_normal", False))


def thinness_sup(F: FiniteSet, L: cs.Subgroup, Y: list | None = None) -> ThinnessResult:
    """The supremum over all x, y, with a certificate when one is available.

    * L normal: x L y^-1 = x y^-1 L, so y = e already gives the exact sup.
    * L = AffScale in AffQ: x L y^-1 = {(b_x - alpha b_y, alpha)}.  With
      b_y = 0 the count is the largest b-fibre of F; with b_y != 0 each
      a-value and each b-value is met at most once, so the count is at
      most min(#a-values, #b-values).  The larger of the two is an upper
      bound, and the y = e value a lower bound; equality certifies.
    * Otherwise the sup is taken over the supplied window Y (uncertified).
    """
    n = len(F)
    e = next(iter(F)).identity()
    base = _count_for_y(F, L, e, None)
    if _is_normal(L):
        return ThinnessResult(Fraction(base, n), True, "normal")
    if isinstance(L, cs.AffScale):
        n_a = len({f.a for f in F})
        n_b = len({f.b for f in F})
        upper = max(base, min(n_a, n_b))
        if Y:
            base = max(base, max(_count_for_y(F, L, L.lift(k), None) for k in Y))
        return ThinnessResult(Fraction(upper, n), upper == base, "affine-fibres")
    Y = Y or [L.key(e)]
    return ThinnessResult(thinness_ratio(DoubleCosetQuery(L, F, Y)), False, "window")


# --- correlation bound ------------------------------------------------------------

def _subgroup_coords(L: cs.Subgroup, g) -> tuple:
    if isinstance(L, cs.LampBSBase):
        return (int(g.b),)
    if isinstance(L, cs.ZdSlice):
        return tuple(c for i, c in enumerate(g.coords) if i != L.j - 1)
    if isinstance(L, cs.HeisCenter):
        return (g.c,)
    if isinstance(L, cs.FullGroup) and isinstance(g, gr.IntVec):
        return g.coords
    raise PreconditionError(f"no coordinates declared for {type(L).__name__}")


@dataclass(frozen=True)
class SubgroupCharacter:
    """phi(g) = sum_k w_k exp(2 pi i <theta_k, coord(g)>) for g in L, and 0 off L.

    A convex combination of characters of an abelian L, hence positive
    definite on L with |phi| <= 1; extended by zero it is positive definite
    on G.  Exact when every 4 theta is integral.
    """

    L: cs.Subgroup
    points: tuple

    def __post_init__(self):
        pts = tuple((tuple(Fraction(t) for t in th), Fraction(w)) for th, w in self.points)
        if any(w <= 0 for _, w in pts) or sum(w for _, w in pts) != 1:
            raise ConfigurationError("weights must be positive and sum to 1")
        object.__setattr__(self, "points", pts)

    @property
    def exact(self) -> bool:
        return all((4 * t).denominator == 1 for th, _ in self.points for t in th)

    def __call__(self, g):
        if not self.L.contains(g):
            return Fraction(0)
        c = _subgroup_coords(self.L, g)
        if not self.exact:
            return sum(float(w) * complex(_root_of_unity(sum((t * x for t, x in zip(th, c)), Fraction(0))))
                       for th, w in self.points)
        total = Fraction(0)
        for th, w in self.points:
            total = total + w * _root_of_unity(sum((t * x for t, x in zip(th, c)), Fraction(0)))
        return total


def correlation_sum(F: Iterable, phi, u, L: cs.Subgroup | None = None):
    """sum_{s,t in F} phi(u^-1 s^-1 t u), grouped by the L-coset of s u when L is given."""
    F = list(F)
    ui = u.inverse()
    total = Fraction(0)
    if L is None:
        for s in F:
            left = ui * s.inverse()
            for t in F:
                total = total + phi(left * t * u)
        return total
    groups: dict = {}
    for s in F:
        groups.setdefault(L.key(s * u), []).append(s)
    for members in groups.values():
        for s in members:
            left = ui * s.inverse()
            for t in members:
                total = total + phi(left * t * u)
    return total


@dataclass
class CorrelationReport:
    C_sq: object          # |(1/|F|^2) sum phi(...)|^2, exact when phi is
    bound: Fraction       # thinness ratio over a window containing the key of u
    certified: bool
    holds: bool

    @property
    def C(self) -> float:
        return math.sqrt(float(self.C_sq))


def correlation_bound_check(F: Iterable, phi, u, L: cs.Subgroup, Y: list | None = None) -> CorrelationReport:
    """C = |(1/|F|^2) sum_{s,t in F} phi(u^-1 s^-1 t u)| against the thinness ratio.

    The ratio is taken over all x and over y in Y; the check is certified
    when Y contains the key of u (the y that the bound actually needs).
    The comparison C^2 <= ratio^2 is exact for exact phi.
    """
    F = F if isinstance(F, FiniteSet) else FiniteSet(F)
    n = len(F)
    total = correlation_sum(F, phi, u, L)
    uk = L.key(u)
    Y = list(Y) if Y is not None else [uk]
    bound = thinness_ratio(DoubleCosetQuery(L, F, Y))
    if isinstance(total, complex):
        c_sq = abs(total) ** 2 / n ** 4
        holds = c_sq <= float(bound) ** 2 + 1e-12
    else:
        c_sq = Fraction(abs2(total)) / n ** 4
        holds = c_sq <= bound ** 2
    return CorrelationReport(c_sq, bound, uk in Y, holds)


# --- firmness curve -----------------------------------------------------------------

@dataclass(frozen=True)
class FirmnessPoint:
    n: int
    size: int
    bound: Fraction
    certified: bool
    worst: Fraction
    worst_translate: object


def induced_firmness_curve(fgen: FolnerGen, L: cs.Subgroup, translates: list, nmax: int,
                           nmin: int = 1, budget: int = DEFAULT_BUDGET) -> list[FirmnessPoint]:
    """Per n: the certified thinness sup and the worst ||A_{F u} f||^2 over the translates.

    f is the induced vector of the indicator of L, whose correlation sum
    is the coset multiplicity sum of F u in G/L.
    """
    out = []
    for n in range(nmin, nmax + 1):
        F = fgen.generate(n, budget)
        th = thinness_sup(F, L, [L.key(u) for u in translates])
        worst, arg = Fraction(-1), None
        for u in translates:
            val = avg_norm_sq_delta(F.right_translate(u), L)
            if val > worst:
                worst, arg = val, u
        out.append(FirmnessPoint(n, len(F), th.ratio, th.certified, worst, arg))
    return out
