"""Finite sets, Følner-type generators, and exact Følner defects."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable


from . import groups as gr
from .cosets import Subgroup, act_right_cH, HeisCenter, ZdSlice
from .errors import BudgetError, PreconditionError

DEFAULT_BUDGET = 2_000_000


class FiniteSet:
    """An explicit finite set of group elements (or coset keys), kept in generation order."""

    __slots__ = ("elements", "_members", "_array")

    def __init__(self, elements: Iterable, *, check: bool = True):
        self.elements = tuple(elements)
        self._members = None
        self._array = None
        if check and len(self.members) != len(self.elements):
            raise ValueError("FiniteSet elements must be distinct")

    @property
    def members(self) -> frozenset:
        if self._members is None:
            self._members = frozenset(self.elements)
        return self._members

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.members

    def __eq__(self, other):
        return isinstance(other, FiniteSet) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"FiniteSet(<{len(self)} elements>)"

    def as_array(self):
        """Cached int64 coordinate array (Heis / IntVec only), else None."""
        if self._array is None:
            self._array = gr.to_array(self.elements)
        return self._array

    def right_translate(self, s) -> FiniteSet:
        return FiniteSet((x * s for x in self.elements), check=False)

    def left_translate(self, s) -> FiniteSet:
        return FiniteSet((s * x for x in self.elements), check=False)

    def inverse(self) -> FiniteSet:
        return FiniteSet((x.inverse() for x in self.elements), check=False)


# --- generators ------------------------------------------------------------------

class FolnerGen:
    """Base class: ``size(n)`` is computed without materializing the set."""

    gen_id = "abstract"

    def size(self, n: int) -> int:
        raise NotImplementedError

    def _elements(self, n: int):
        raise NotImplementedError

    def generate(self, n: int, budget: int = DEFAULT_BUDGET) -> FiniteSet:
        if n < 1:
            raise ValueError("n must be at least 1")
        size = self.size(n)
        if size > budget:
            raise BudgetError(f"{self.gen_id} at n={n} has {size} elements (budget {budget})",
                              requested=size, budget=budget)
        return FiniteSet(self._elements(n), check=False)


@dataclass(frozen=True)
class Box(FolnerGen):
    """[0, scale*n)^d (shape 'half') or [-scale*n, scale*n]^d (shape 'sym') in Z^d."""

    d: int = 1
    shape: str = "half"
    scale: int = 1

    def __post_init__(self):
        if self.shape not in ("half", "sym"):
            raise ValueError(f"unknown box shape {self.shape!r}")

    @property
    def gen_id(self):
        return f"box[d={self.d},{self.shape},scale={self.scale}]"

    def _range(self, n):
        m = self.scale * n
        return range(m) if self.shape == "half" else range(-m, m + 1)

    def size(self, n):
        return len(self._range(n)) ** self.d

    def _elements(self, n):
        return (gr.IntVec(c) for c in itertools.product(self._range(n), repeat=self.d))


@dataclass(frozen=True)
class HeisBox(FolnerGen):
    """{(a, b, c) : |a|, |b| <= n, |c| <= n^2}."""

    gen_id = "heisbox"

    def size(self, n):
        return (2 * n + 1) ** 2 * (2 * n * n + 1)

    def _elements(self, n):
        r, rc = range(-n, n + 1), range(-n * n, n * n + 1)
        return (gr.Heis(a, b, c) for a in r for b in r for c in rc)


@dataclass(frozen=True)
class SymBall(FolnerGen):
    """All permutations of {0, ..., n}, the nested finite symmetric groups in Sym_0(N)."""

    gen_id = "symball"

    def size(self, n):
        return math.factorial(n + 1)

    def _elements(self, n):
        return (gr.FinPerm.from_images(p) for p in itertools.permutations(range(n + 1)))


@dataclass(frozen=True)
class LampBSGrid(FolnerGen):
    """{(j / p^n, 0) : 0 <= j < p^(2n)} inside the normal subgroup Z[1/p]."""

    p: int = 2

    @property
    def gen_id(self):
        return f"lampbs-grid[p={self.p}]"

    def size(self, n):
        return self.p ** (2 * n)

    def _elements(self, n):
        den = self.p ** n
        return (gr.LampBS(Fraction(j, den), 0, self.p) for j in range(self.p ** (2 * n)))


@dataclass(frozen=True)
class SemidirectRect(FolnerGen):
    """Products B_n A_n for finite families B_n in a normal subgroup and A_n in a complement."""

    bgen: Callable[[int], list]
    agen: Callable[[int], list]
    name: str = "rect"

    @property
    def gen_id(self):
        return f"semidirect-rect[{self.name}]"

    def size(self, n):
        return len(self.bgen(n)) * len(self.agen(n))

    def _elements(self, n):
        return (b * a for b in self.bgen(n) for a in self.agen(n))


def affq_rect() -> SemidirectRect:
    """B_n = {(j, 1) : 1 <= j <= n} translations, A_n = {(0, 2^i) : 0 <= i < n} dilations."""
    return SemidirectRect(
        bgen=lambda n: [gr.AffQ(Fraction(j), Fraction(1)) for j in range(1, n + 1)],
        agen=lambda n: [gr.AffQ(Fraction(0), Fraction(2) ** i) for i in range(n)],
        name="affq",
    )


def affq_rect_sizes(nb: Callable[[int], int], na: Callable[[int], int]) -> SemidirectRect:
    """AffQ rectangle with |B_n| = nb(n) translations and |A_n| = na(n) dilations."""
    return SemidirectRect(
        bgen=lambda n: [gr.AffQ(Fraction(j), Fraction(1)) for j in range(1, nb(n) + 1)],
        agen=lambda n: [gr.AffQ(Fraction(0), Fraction(2) ** i) for i in range(na(n))],
        name="affq-sized",
    )


@dataclass(frozen=True)
class TranslatedSeq(FolnerGen):
    """F_n s_n for a base generator and a right translation sequence."""

    base: FolnerGen
    translate: Callable[[int], object]

    @property
    def gen_id(self):
        return f"translated[{self.base.gen_id}]"

    def size(self, n):
        return self.base.size(n)

    def _elements(self, n):
        s = self.translate(n)
        return (x * s for x in self.base._elements(n))


@dataclass(frozen=True)
class QuotientRect(FolnerGen):
    """Key boxes [-n, n]^2 in Heis/center (or [-n, n] in Z^d/slice); a set of coset keys."""

    H: Subgroup

    def __post_init__(self):
        if not isinstance(self.H, (HeisCenter, ZdSlice)):
            raise PreconditionError("QuotientRect supports HeisCenter and ZdSlice quotients")

    @property
    def gen_id(self):
        return f"quotient-rect[{type(self.H).__name__}]"

    def size(self, n):
        return (2 * n + 1) ** 2 if isinstance(self.H, HeisCenter) else 2 * n + 1

    def _elements(self, n):
        r = range(-n, n + 1)
        if isinstance(self.H, HeisCenter):
            return ((a, b) for a in r for b in r)
        return iter(r)


# --- defects ---------------------------------------------------------------------

def _ratio(F: FiniteSet, image_hits: int) -> Fraction:
    if len(F) == 0:
        raise PreconditionError("defect of an empty set")
    return Fraction(2 * (len(F) - image_hits), len(F))


def left_defect(F: FiniteSet, t) -> Fraction:
    """|F symmetric-difference tF| / |F|."""
    return _ratio(F, sum(1 for x in F if t * x in F))


def right_defect(F: FiniteSet, t) -> Fraction:
    """|F symmetric-difference Ft| / |F|."""
    return _ratio(F, sum(1 for x in F if x * t in F))


def triple_right_defect(F, s, H: Subgroup) -> Fraction:
    """|F symmetric-difference c_H(s)F| / |F| for a finite set F of keys in G/H."""
    F = F if isinstance(F, FiniteSet) else FiniteSet(F)
    return _ratio(F, sum(1 for k in F if act_right_cH(s, k, H) in F))


# --- adversarial right translates -------------------------------------------------

@dataclass(frozen=True)
class AdversarialResult:
    """Outcome of :func:`adversarial_translate`; ``s`` is None when the search ran out."""

    s: object
    ratio: Fraction | None
    tried: int
    status: str
    method: str = ""

    @property
    def found(self) -> bool:
        return self.status == "found"


def _disjoint_from_translate(F: FiniteSet, u) -> bool:
    return not any(x * u in F for x in F)


def _heis_candidates(F: FiniteSet, t):
    C = max(abs(x.c) for x in F)
    X = max(max(abs(x.a), abs(x.b)) for x in F)
    need = 2 * C + X * abs(t.b) + abs(t.c) + 1
    if t.a != 0:
        beta = -(-need // abs(t.a))
        yield gr.Heis(0, beta, 0), "closed-form"
    if t.b != 0:
        alpha = -(-need // abs(t.b))
        yield gr.Heis(alpha, 0, 0), "closed-form"


def _perm_candidates(F: FiniteSet, t):
    used = set(t.support)
    for x in F:
        used |= x.support
    fresh, i = [], 0
    while len(fresh) < len(t.support):
        if i not in used:
            fresh.append(i)
        i += 1
    swaps = {}
    for a, b in zip(sorted(t.support), fresh):
        swaps[a], swaps[b] = b, a
    yield gr.FinPerm.from_mapping(swaps), "closed-form"


def _lampbs_candidates(F: FiniteSet, t):
    k = 0
    while True:
        yield gr.LampBS(Fraction(0), k, t.p), "closed-form"
        k += 1


def _check_precondition(t):
    if isinstance(t, gr.Heis) and t.is_central():
        raise PreconditionError(f"{gr.encode(t)} is central: its conjugacy class is finite")
    if isinstance(t, (gr.IntVec, gr.Cyc)):
        raise PreconditionError("abelian groups have only finite conjugacy classes")
    if t == t.identity():
        raise PreconditionError("the identity has a finite conjugacy class")


def adversarial_translate(F: FiniteSet, t, search_budget: int = 1000, seed: int = 0) -> AdversarialResult:
    """Find s with F and F(s t s^-1) disjoint, so that |Fs symdiff Fst| / |F| = 2.

    Closed-form candidates are tried first (Heis, FinPerm, LampBS), then a
    seeded random search with growing scale.  Every candidate is verified.
    """
    _check_precondition(t)
    if isinstance(t, gr.Heis):
        closed = _heis_candidates(F, t)
    elif isinstance(t, gr.FinPerm):
        closed = _perm_candidates(F, t)
    elif isinstance(t, gr.LampBS) and t.a == 0:
        closed = _lampbs_candidates(F, t)
    else:
        closed = iter(())
    tried = 0
    for s, method in closed:
        if tried >= search_budget:
            break
        tried += 1
        if _disjoint_from_translate(F, gr.conjugate(s, t)):
            return AdversarialResult(s, right_defect(F.right_translate(s), t), tried, "found", method)
    rng = random.Random(seed)
    sample = next(iter(F))
    scale = 4
    while tried < search_budget:
        tried += 1
        s = gr.random_like(sample, rng, scale)
        if _disjoint_from_translate(F, gr.conjugate(s, t)):
            return AdversarialResult(s, right_defect(F.right_translate(s), t), tried, "found", "random")
        if tried % 16 == 0:
            scale *= 2
    return AdversarialResult(None, None, tried, "exhausted")


def translate_ratio(F: FiniteSet, s, t) -> Fraction:
    """|Fs symdiff Fst| / |F|, the quantity reported by adversarial_translate."""
    return right_defect(F.right_translate(s), t)
