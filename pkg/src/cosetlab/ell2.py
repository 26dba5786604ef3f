"""Exact computations in the left regular representation on l^2(G/H).

Vectors are finitely supported maps from coset keys to exact scalars.  The
main quantity is the squared norm of the ergodic average of the identity
coset indicator,

    || (1/|F|) sum_{s in F} pi(s) delta_{eH} ||^2 = (1/|F|^2) sum_k m_k^2,

where m_k counts the elements of F landing in coset k.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable

import numpy as np

from .cosets import Subgroup
from .errors import ConfigurationError, PreconditionError
from .folner import DEFAULT_BUDGET, FiniteSet, FolnerGen
from . import groups as gr
from .scalars import abs2, conj

__all__ = [
    "SparseVector", "inner", "apply", "average", "avg_norm_sq_delta",
    "coset_multiplicities", "coset_multiplicities_array", "translated_avg_norm_sq_delta", "weak_pairing_curve",
    "average_over_keys", "all_orbits_infinite",
]


class SparseVector:
    """Finitely supported function G/H -> exact scalars; zeros are never stored."""

    __slots__ = ("space", "data")

    def __init__(self, space: Subgroup, data=None):
        self.space = space
        self.data = {k: v for k, v in (data or {}).items() if v != 0}

    @classmethod
    def delta(cls, key, space: Subgroup) -> SparseVector:
        return cls(space, {key: Fraction(1)})

    @classmethod
    def delta_identity(cls, identity, space: Subgroup) -> SparseVector:
        return cls.delta(space.key(identity), space)

    def _same_space(self, other):
        if self.space != other.space:
            raise ConfigurationError("vectors live on different coset spaces")

    def __add__(self, other):
        self._same_space(other)
        out = dict(self.data)
        for k, v in other.data.items():
            out[k] = out.get(k, 0) + v
        return SparseVector(self.space, out)

    def __sub__(self, other):
        return self + other * (-1)

    def __mul__(self, c):
        return SparseVector(self.space, {k: v * c for k, v in self.data.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SparseVector) and self.space == other.space and self.data == other.data

    def __len__(self):
        return len(self.data)

    def __getitem__(self, k):
        return self.data.get(k, 0)

    def support(self):
        return set(self.data)

    def norm_sq(self) -> Fraction:
        return sum((abs2(v) for v in self.data.values()), Fraction(0))

    def __repr__(self):
        return f"SparseVector({len(self.data)} entries)"


def inner(v: SparseVector, w: SparseVector):
    """sum_k v(k) * conj(w(k)); linear in the first slot."""
    v._same_space(w)
    small, big = (v, w) if len(v) <= len(w) else (w, v)
    total = Fraction(0)
    for k in small.data:
        if k in big.data:
            total = total + v.data[k] * conj(w.data[k])
    return total


def apply(s, v: SparseVector) -> SparseVector:
    """(pi(s) v)(s k) = v(k)."""
    H = v.space
    return SparseVector(H, {H.act(s, k): x for k, x in v.data.items()})


def average(F: Iterable, v: SparseVector) -> SparseVector:
    """(1/|F|) sum_{s in F} pi(s) v, exact."""
    F = list(F)
    if not F:
        raise PreconditionError("average over an empty set")
    H = v.space
    acc: dict = {}
    for s in F:
        for k, x in v.data.items():
            k2 = H.act(s, k)
            acc[k2] = acc.get(k2, 0) + x
    n = len(F)
    return SparseVector(H, {k: x / n if isinstance(x, Fraction) else x * Fraction(1, n) for k, x in acc.items()})


def average_over_keys(keys: Iterable, v: SparseVector) -> SparseVector:
    """Average of pi(x) v over canonical lifts x of a set of keys in L/H."""
    H = v.space
    return average([H.lift(k) for k in keys], v)


def _count_rows(keys: np.ndarray) -> np.ndarray:
    """Multiplicities of equal rows of a 2D int64 array."""
    if keys.shape[1] == 1:
        _, counts = np.unique(keys[:, 0], return_counts=True)
        return counts
    lo = keys.min(axis=0)
    span = keys.max(axis=0) - lo + 1
    if float(np.prod(span.astype(np.float64))) < 2 ** 62:
        flat = np.zeros(keys.shape[0], dtype=np.int64)
        for j in range(keys.shape[1]):
            flat = flat * int(span[j]) + (keys[:, j] - lo[j])
        _, counts = np.unique(flat, return_counts=True)
        return counts
    _, counts = np.unique(keys, axis=0, return_counts=True)
    return counts


def coset_multiplicities_array(arr: np.ndarray, H: Subgroup) -> np.ndarray:
    """Multiplicities of cosets for an int64 coordinate array of Heis / IntVec elements."""
    keys = H.keys_array(arr)
    if keys is None:
        raise PreconditionError(f"{type(H).__name__} has no vectorized key map")
    return _count_rows(keys)


def coset_multiplicities(F: Iterable, H: Subgroup, *, vectorize: bool = True) -> list[int]:
    """Sizes m_k = |{s in F : sH = k}| over the cosets k meeting F (sorted descending)."""
    if vectorize and isinstance(F, FiniteSet):
        arr = F.as_array()
        if arr is not None:
            keys = H.keys_array(arr)
            if keys is not None:
                return sorted((int(c) for c in _count_rows(keys)), reverse=True)
    return sorted(Counter(H.key(s) for s in F).values(), reverse=True)


def _norm_from_counts(counts, size: int) -> Fraction:
    if size == 0:
        raise PreconditionError("average over an empty set")
    return Fraction(sum(m * m for m in counts), size * size)


def avg_norm_sq_delta(F: Iterable, H: Subgroup, *, vectorize: bool = True) -> Fraction:
    """|| (1/|F|) sum_{s in F} pi(s) delta_{eH} ||^2 by hash-grouping cosets."""
    if not isinstance(F, FiniteSet):
        F = list(F)
    counts = coset_multiplicities(F, H, vectorize=vectorize)
    return _norm_from_counts(counts, len(F))


def translated_avg_norm_sq_delta(F: FiniteSet, s, H: Subgroup, *, vectorize: bool = True) -> Fraction:
    """avg_norm_sq_delta(F s, H) without materializing F s when a vectorized path exists."""
    if vectorize:
        arr = F.as_array()
        if arr is not None:
            moved = gr.array_right_multiply(arr, s)
            keys = H.keys_array(moved) if moved is not None else None
            if keys is not None:
                return _norm_from_counts(_count_rows(keys), len(F))
    return avg_norm_sq_delta((x * s for x in F), H, vectorize=False)


def weak_pairing_curve(fgen: FolnerGen, v: SparseVector, w: SparseVector, nmax: int,
                       budget: int = DEFAULT_BUDGET) -> list:
    """<w, A_{F_n} v> for n = 1..nmax, exact."""
    out = []
    for n in range(1, nmax + 1):
        F = fgen.generate(n, budget)
        out.append(inner(w, average(F, v)))
    return out


def all_orbits_infinite(H: Subgroup, L: Subgroup) -> bool:
    """Declared regime for the catalog triples: True when every L-orbit on G/H is infinite.

    In that regime the projection onto L-invariant vectors kills every
    finitely supported vector.  Only the catalog cases are answered.
    """
    from . import cosets as cs

    table = {
        (cs.Trivial, cs.FullGroup): True,       # infinite G acting on itself
        (cs.HeisCenter, cs.FullGroup): True,
        (cs.ZdSlice, cs.FullGroup): True,
        (cs.LampBSBase, cs.LampBSNormal): True,
        (cs.SymFix, cs.FullGroup): True,
        (cs.AffScale, cs.FullGroup): True,
        (cs.AffScale, cs.AffScale): False,      # the identity coset is a fixed point
        (cs.HeisCenter, cs.HeisCenter): False,  # normal H acts trivially on G/H
    }
    try:
        return table[(type(H), type(L))]
    except KeyError:
        raise ConfigurationError(f"no declared orbit regime for ({type(H).__name__}, {type(L).__name__})")
