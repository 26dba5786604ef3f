"""Subgroup descriptors, canonical coset keys and the actions on G/H.

Every descriptor fixes a canonical representative for each left coset gH and
returns a hashable *key* for it.  Keys are plain Python values (tuples,
Fractions, ints, or group elements) so they can be used directly as dict keys
in sparse vectors.

Choice of representatives, per pair (G, H):

=================  =====================================================
Trivial            the element itself
FullGroup          the empty tuple
SymFix(K)          the tuple (g(k) for k in sorted K)
LampBSBase(p)      (a, b mod p^a Z) with the residue in [0, p^a)
LampBSNormal(p)    the exponent a
LampBSActing(p)    the translation part b
HeisCenter         (a, b)
ZdSlice(d, j)      the j-th coordinate (1-based)
AffScale           the translation part b
FiniteSubgroup     the coset member with the least ``sort_key``
=================  =====================================================
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import groups as gr
from .errors import ConfigurationError, PreconditionError

__all__ = [
    "Subgroup", "Trivial", "FullGroup", "SymFix", "LampBSBase", "LampBSNormal",
    "LampBSActing", "HeisCenter", "ZdSlice", "AffScale", "FiniteSubgroup",
    "canonicalize", "act_left", "act_right_cH", "lift", "identity_key", "fmt_key",
]


class Subgroup:
    """Base descriptor.  Subclasses override ``key``/``lift``/``contains``."""

    element_type: type | tuple = object
    is_normal: bool = False

    def _accept(self, g):
        if not isinstance(g, self.element_type):
            raise ConfigurationError(
                f"{type(self).__name__} is not a subgroup of the group of {gr.encode(g)}")

    def key(self, g):
        raise NotImplementedError

    def lift(self, k):
        raise NotImplementedError

    def contains(self, g) -> bool:
        raise NotImplementedError

    def act(self, s, k):
        return self.key(s * self.lift(k))

    def normalizes(self, s) -> bool:
        """Whether s lies in N_G(H); only answered for the supported cases."""
        self._accept(s)
        if self.is_normal:
            return True
        raise PreconditionError(f"normalizer test not supported for {self!r}")

    def random_member(self, rng: random.Random, scale: int = 5):
        raise NotImplementedError

    def keys_array(self, arr: np.ndarray) -> np.ndarray | None:
        """Vectorized keys for int64 coordinate rows, when the key is a coordinate slice."""
        return None

    def fmt_key(self, k) -> str:
        return str(k)


@dataclass(frozen=True)
class Trivial(Subgroup):
    """H = {e}; ``identity`` is optional and only used for sampling."""

    identity: object = None
    is_normal = True

    def _accept(self, g):
        if not isinstance(g, gr._Element):
            raise ConfigurationError(f"not a group element: {g!r}")

    def key(self, g):
        self._accept(g)
        return g

    def lift(self, k):
        return k

    def act(self, s, k):
        return s * k

    def contains(self, g):
        return g == g.identity()

    def random_member(self, rng, scale=5):
        if self.identity is None:
            raise ConfigurationError("Trivial() needs an identity to sample from")
        return self.identity

    def keys_array(self, arr):
        return arr

    def fmt_key(self, k):
        return gr.encode(k)


@dataclass(frozen=True)
class FullGroup(Subgroup):
    identity: object
    is_normal = True

    def _accept(self, g):
        if not gr.same_group(g, self.identity):
            raise ConfigurationError(f"{gr.encode(g)} is not in the group of {gr.encode(self.identity)}")

    def key(self, g):
        self._accept(g)
        return ()

    def lift(self, k):
        return self.identity

    def act(self, s, k):
        return ()

    def contains(self, g):
        return gr.same_group(g, self.identity)

    def random_member(self, rng, scale=5):
        return gr.random_like(self.identity, rng, scale)

    def keys_array(self, arr):
        return np.zeros((arr.shape[0], 1), dtype=np.int64)

    def fmt_key(self, k):
        return "*"


@dataclass(frozen=True)
class SymFix(Subgroup):
    """L_K: finitely supported permutations fixing every point of K."""

    K: tuple
    element_type = gr.FinPerm

    def __post_init__(self):
        object.__setattr__(self, "K", tuple(sorted(set(self.K))))
        if not self.K or self.K[0] < 0:
            raise ConfigurationError("SymFix needs a nonempty set of nonnegative points")

    def key(self, g):
        self._accept(g)
        m = g.mapping
        return tuple(m.get(k, k) for k in self.K)

    def lift(self, k):
        if len(k) != len(self.K) or len(set(k)) != len(k):
            raise ConfigurationError(f"{k} is not an injective tuple on {self.K}")
        m = dict(zip(self.K, k))
        rest_dom = sorted((set(self.K) | set(k)) - set(self.K))
        rest_img = sorted((set(self.K) | set(k)) - set(k))
        m.update(zip(rest_dom, rest_img))
        return gr.FinPerm.from_mapping(m)

    def act(self, s, k):
        m = s.mapping
        return tuple(m.get(y, y) for y in k)

    def contains(self, g):
        self._accept(g)
        return not (g.support & set(self.K))

    def random_member(self, rng, scale=5):
        pts = [i for i in range(max(self.K) + scale + 2) if i not in self.K]
        img = pts[:]
        rng.shuffle(img)
        return gr.FinPerm.from_mapping(zip(pts, img))

    def fmt_key(self, k):
        return "perm/fix{" + ",".join(map(str, self.K)) + "}:" + ",".join(map(str, k))


def _pow(p: int, a: int) -> Fraction:
    return Fraction(p) ** a


@dataclass(frozen=True)
class LampBSBase(Subgroup):
    """H = {(n, 0) : n in Z} inside Z[1/p] x| Z."""

    p: int = 2
    element_type = gr.LampBS

    def _accept(self, g):
        super()._accept(g)
        if g.p != self.p:
            raise ConfigurationError(f"prime mismatch: {g.p} vs {self.p}")

    def key(self, g):
        self._accept(g)
        return (g.a, g.b % _pow(self.p, g.a))

    def lift(self, k):
        a, r = k
        return gr.LampBS(r, a, self.p)

    def contains(self, g):
        self._accept(g)
        return g.a == 0 and g.b.denominator == 1

    def random_member(self, rng, scale=5):
        return gr.LampBS(Fraction(rng.randint(-scale, scale)), 0, self.p)

    def fmt_key(self, k):
        return f"lampbs[p={self.p}]/base:{k[0]},{gr._fmt_frac(k[1])}"


@dataclass(frozen=True)
class LampBSNormal(Subgroup):
    """L = {(b, 0) : b in Z[1/p]}, the normal subgroup Z[1/p]."""

    p: int = 2
    element_type = gr.LampBS
    is_normal = True

    def _accept(self, g):
        super()._accept(g)
        if g.p != self.p:
            raise ConfigurationError(f"prime mismatch: {g.p} vs {self.p}")

    def key(self, g):
        self._accept(g)
        return g.a

    def lift(self, k):
        return gr.LampBS(Fraction(0), k, self.p)

    def act(self, s, k):
        return s.a + k

    def contains(self, g):
        self._accept(g)
        return g.a == 0

    def random_member(self, rng, scale=5):
        return gr.LampBS(Fraction(rng.randint(-scale, scale), self.p ** rng.randint(0, 3)), 0, self.p)

    def fmt_key(self, k):
        return f"lampbs[p={self.p}]/normal:{k}"


@dataclass(frozen=True)
class LampBSActing(Subgroup):
    """The acting copy of Z, {(0, a)}; cosets are indexed by the translation part."""

    p: int = 2
    element_type = gr.LampBS

    def _accept(self, g):
        super()._accept(g)
        if g.p != self.p:
            raise ConfigurationError(f"prime mismatch: {g.p} vs {self.p}")

    def key(self, g):
        self._accept(g)
        return g.b

    def lift(self, k):
        return gr.LampBS(k, 0, self.p)

    def contains(self, g):
        self._accept(g)
        return g.b == 0

    def random_member(self, rng, scale=5):
        return gr.LampBS(Fraction(0), rng.randint(-scale, scale), self.p)

    def fmt_key(self, k):
        return f"lampbs[p={self.p}]/acting:{gr._fmt_frac(k)}"


@dataclass(frozen=True)
class HeisCenter(Subgroup):
    element_type = gr.Heis
    is_normal = True

    def key(self, g):
        self._accept(g)
        return (g.a, g.b)

    def lift(self, k):
        return gr.Heis(k[0], k[1], 0)

    def act(self, s, k):
        return (s.a + k[0], s.b + k[1])

    def contains(self, g):
        self._accept(g)
        return g.a == 0 and g.b == 0

    def random_member(self, rng, scale=5):
        return gr.Heis(0, 0, rng.randint(-scale, scale))

    def keys_array(self, arr):
        return arr[:, :2]

    def fmt_key(self, k):
        return f"heis/center:{k[0]},{k[1]}"


@dataclass(frozen=True)
class ZdSlice(Subgroup):
    """Z^(d-1) embedded in Z^d with coordinate ``j`` (1-based) equal to zero."""

    d: int
    j: int
    element_type = gr.IntVec
    is_normal = True

    def __post_init__(self):
        if not 1 <= self.j <= self.d:
            raise ConfigurationError(f"slice coordinate {self.j} outside 1..{self.d}")

    def _accept(self, g):
        super()._accept(g)
        if len(g.coords) != self.d:
            raise ConfigurationError(f"dimension mismatch: {len(g.coords)} vs {self.d}")

    def key(self, g):
        self._accept(g)
        return g.coords[self.j - 1]

    def lift(self, k):
        c = [0] * self.d
        c[self.j - 1] = k
        return gr.IntVec(tuple(c))

    def act(self, s, k):
        return s.coords[self.j - 1] + k

    def contains(self, g):
        self._accept(g)
        return g.coords[self.j - 1] == 0

    def random_member(self, rng, scale=5):
        c = [rng.randint(-scale, scale) for _ in range(self.d)]
        c[self.j - 1] = 0
        return gr.IntVec(tuple(c))

    def keys_array(self, arr):
        return arr[:, self.j - 1:self.j]

    def fmt_key(self, k):
        return f"zd/slice{self.j}:{k}"


@dataclass(frozen=True)
class AffScale(Subgroup):
    """{0} x| Q* inside the affine group of Q."""

    element_type = gr.AffQ

    def key(self, g):
        self._accept(g)
        return g.b

    def lift(self, k):
        return gr.AffQ(k, Fraction(1))

    def act(self, s, k):
        return s.b + s.a * k

    def contains(self, g):
        self._accept(g)
        return g.b == 0

    def random_member(self, rng, scale=5):
        a = Fraction(rng.randint(1, scale), rng.randint(1, scale)) * rng.choice((1, -1))
        return gr.AffQ(Fraction(0), a)

    def fmt_key(self, k):
        return f"affq/scale:{gr._fmt_frac(k)}"


@dataclass(frozen=True)
class FiniteSubgroup(Subgroup):
    """An explicitly listed finite subgroup."""

    elements: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        els = frozenset(self.elements)
        object.__setattr__(self, "elements", els)
        if not els:
            raise ConfigurationError("FiniteSubgroup needs at least the identity")
        e = next(iter(els)).identity()
        if e not in els:
            raise ConfigurationError("FiniteSubgroup must contain the identity")
        for x in els:
            if x.inverse() not in els:
                raise ConfigurationError(f"FiniteSubgroup not closed under inverse at {gr.encode(x)}")
            for y in els:
                if x * y not in els:
                    raise ConfigurationError("FiniteSubgroup not closed under multiplication")
        object.__setattr__(self, "_sample", next(iter(els)))

    def _accept(self, g):
        if not gr.same_group(g, self._sample):
            raise ConfigurationError(f"{gr.encode(g)} is not in the ambient group of this subgroup")

    def key(self, g):
        self._accept(g)
        return min((g * h for h in self.elements), key=lambda x: x.sort_key())

    def lift(self, k):
        return k

    def contains(self, g):
        return g in self.elements

    def normalizes(self, s):
        self._accept(s)
        return all(gr.conjugate(s, h) in self.elements for h in self.elements)

    def random_member(self, rng, scale=5):
        return rng.choice(sorted(self.elements, key=lambda x: x.sort_key()))

    def fmt_key(self, k):
        return "coset:" + gr.encode(k)


# --- module-level operations ----------------------------------------------------

def canonicalize(g, H: Subgroup):
    """Canonical key of the left coset gH."""
    return H.key(g)


def lift(k, H: Subgroup):
    return H.lift(k)


def identity_key(H: Subgroup, identity):
    return H.key(identity)


def act_left(s, k, H: Subgroup):
    """Left action s . (gH) = (sg)H on keys."""
    return H.act(s, k)


def act_right_cH(s, k, H: Subgroup):
    """Right normalizer action c_H(s): xH -> x s^-1 H; requires s in N_G(H)."""
    if not H.normalizes(s):
        raise PreconditionError(f"{gr.encode(s)} does not normalize {H!r}")
    return H.key(H.lift(k) * s.inverse())


def fmt_key(k, H: Subgroup) -> str:
    return H.fmt_key(k)
