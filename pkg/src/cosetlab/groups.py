"""Exact element arithmetic for the catalog of countable groups.

Catalog:

* ``IntVec``  -- Z^d under addition.
* ``Heis``    -- integer Heisenberg group, (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
* ``LampBS``  -- Z[1/p] x| Z with (b1,a1)(b2,a2) = (b1 + p^a1 b2, a1+a2).
* ``AffQ``    -- affine group Q x| Q*, (b1,a1)(b2,a2) = (b1 + a1 b2, a1 a2).
* ``FinPerm`` -- finitely supported permutations of N; (xy)(i) = x(y(i)).
* ``Cyc``     -- Z/m.
* ``Pair``    -- direct product of two elements of the same kind.

All elements are immutable and hashable; equality is structural because
every constructor stores a canonical form.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import GroupMismatchError, ParseError

__all__ = [
    "IntVec", "Heis", "LampBS", "AffQ", "FinPerm", "Cyc", "Pair",
    "multiply", "inverse", "conjugate", "identity_of", "power",
    "encode", "parse_element", "random_like", "same_group",
    "to_array", "array_right_multiply", "array_left_multiply",
]


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0 and n > 1:
        n //= p
    return n == 1


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class _Element:
    __slots__ = ()

    def _check(self, other):
        if not same_group(self, other):
            raise GroupMismatchError(f"cannot combine {encode(self)} with {encode(other)}")

    def __mul__(self, other):
        if not isinstance(other, _Element):
            return NotImplemented
        self._check(other)
        return self._mul(other)

    def __str__(self):
        return encode(self)


@dataclass(frozen=True, slots=True)
class IntVec(_Element):
    coords: tuple

    def _mul(self, o):
        return IntVec(tuple(x + y for x, y in zip(self.coords, o.coords)))

    def inverse(self):
        return IntVec(tuple(-x for x in self.coords))

    def identity(self):
        return IntVec((0,) * len(self.coords))

    def sort_key(self):
        return self.coords


@dataclass(frozen=True, slots=True)
class Heis(_Element):
    a: int
    b: int
    c: int

    def _mul(self, o):
        return Heis(self.a + o.a, self.b + o.b, self.c + o.c + self.a * o.b)

    def inverse(self):
        return Heis(-self.a, -self.b, -self.c + self.a * self.b)

    def identity(self):
        return Heis(0, 0, 0)

    def is_central(self) -> bool:
        return self.a == 0 and self.b == 0

    def as_matrix(self):
        """Upper unitriangular 3x3 integer matrix with a, b on the superdiagonal, c in the corner."""
        return ((1, self.a, self.c), (0, 1, self.b), (0, 0, 1))

    def sort_key(self):
        return (self.a, self.b, self.c)


@dataclass(frozen=True, slots=True)
class LampBS(_Element):
    """Element (b, a) of Z[1/p] x| Z; ``b`` must have a p-power denominator."""

    b: Fraction
    a: int
    p: int = 2

    def __post_init__(self):
        if not isinstance(self.b, Fraction):
            object.__setattr__(self, "b", Fraction(self.b))
        if self.p < 2:
            raise ValueError("p must be at least 2")
        if not _is_power_of(self.b.denominator, self.p):
            raise ValueError(f"{self.b} is not in Z[1/{self.p}]")

    def _scale(self, k: int, x: Fraction) -> Fraction:
        return x * self.p ** k if k >= 0 else x / self.p ** (-k)

    def _mul(self, o):
        return LampBS(self.b + self._scale(self.a, o.b), self.a + o.a, self.p)

    def inverse(self):
        return LampBS(-self._scale(-self.a, self.b), -self.a, self.p)

    def identity(self):
        return LampBS(Fraction(0), 0, self.p)

    def sort_key(self):
        return (self.a, self.b)


@dataclass(frozen=True, slots=True)
class AffQ(_Element):
    """Affine map x -> a*x + b of Q, written (b, a)."""

    b: Fraction
    a: Fraction

    def __post_init__(self):
        if not isinstance(self.b, Fraction):
            object.__setattr__(self, "b", Fraction(self.b))
        if not isinstance(self.a, Fraction):
            object.__setattr__(self, "a", Fraction(self.a))
        if self.a == 0:
            raise ValueError("AffQ scale must be nonzero")

    def _mul(self, o):
        return AffQ(self.b + self.a * o.b, self.a * o.a)

    def inverse(self):
        return AffQ(-self.b / self.a, 1 / self.a)

    def identity(self):
        return AffQ(Fraction(0), Fraction(1))

    def sort_key(self):
        return (self.b, self.a)


@dataclass(frozen=True, slots=True)
class FinPerm(_Element):
    """Finitely supported permutation stored as sorted (i, s(i)) pairs over its support."""

    pairs: tuple

    def __post_init__(self):
        dom = [i for i, _ in self.pairs]
        img = [j for _, j in self.pairs]
        if dom != sorted(set(dom)) or sorted(img) != dom:
            raise ValueError(f"not a canonical finite permutation: {self.pairs}")
        if any(i == j for i, j in self.pairs):
            raise ValueError("fixed points must not be recorded")
        if dom and dom[0] < 0:
            raise ValueError("permutations act on nonnegative integers")

    @classmethod
    def from_mapping(cls, mapping) -> FinPerm:
        return cls(tuple(sorted((i, j) for i, j in dict(mapping).items() if i != j)))

    @classmethod
    def from_cycles(cls, *cycles: Sequence[int]) -> FinPerm:
        m = {}
        for cyc in cycles:
            for k, i in enumerate(cyc):
                m[i] = cyc[(k + 1) % len(cyc)]
        return cls.from_mapping(m)

    @classmethod
    def from_images(cls, images: Sequence[int]) -> FinPerm:
        """Permutation of {0..n-1} given by its image list."""
        return cls.from_mapping(enumerate(images))

    @property
    def mapping(self) -> dict:
        return dict(self.pairs)

    @property
    def support(self) -> frozenset:
        return frozenset(i for i, _ in self.pairs)

    def __call__(self, i: int) -> int:
        for x, y in self.pairs:
            if x == i:
                return y
        return i

    def _mul(self, o):
        ms, mo = dict(self.pairs), dict(o.pairs)
        out = {}
        for i in ms.keys() | mo.keys():
            j = mo.get(i, i)
            out[i] = ms.get(j, j)
        return FinPerm.from_mapping(out)

    def inverse(self):
        return FinPerm(tuple(sorted((j, i) for i, j in self.pairs)))

    def identity(self):
        return FinPerm(())

    def cycles(self) -> list:
        m, seen, out = dict(self.pairs), set(), []
        for i, _ in self.pairs:
            if i in seen:
                continue
            cyc, j = [i], m[i]
            seen.add(i)
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = m[j]
            out.append(tuple(cyc))
        return out

    def sort_key(self):
        return (len(self.pairs), self.pairs)


@dataclass(frozen=True, slots=True)
class Cyc(_Element):
    r: int
    m: int

    def __post_init__(self):
        if self.m < 1 or not 0 <= self.r < self.m:
            raise ValueError(f"bad residue {self.r} mod {self.m}")

    @classmethod
    def of(cls, r: int, m: int) -> Cyc:
        return cls(r % m, m)

    def _mul(self, o):
        return Cyc((self.r + o.r) % self.m, self.m)

    def inverse(self):
        return Cyc((-self.r) % self.m, self.m)

    def identity(self):
        return Cyc(0, self.m)

    def sort_key(self):
        return (self.r,)


@dataclass(frozen=True, slots=True)
class Pair(_Element):
    left: _Element
    right: _Element

    def __post_init__(self):
        if type(self.left) is not type(self.right):
            raise GroupMismatchError("Pair components must share a tag")

    def _mul(self, o):
        return Pair(self.left * o.left, self.right * o.right)

    def inverse(self):
        return Pair(self.left.inverse(), self.right.inverse())

    def identity(self):
        return Pair(self.left.identity(), self.right.identity())

    def sort_key(self):
        return (self.left.sort_key(), self.right.sort_key())


def _signature(x):
    if isinstance(x, IntVec):
        return (IntVec, len(x.coords))
    if isinstance(x, LampBS):
        return (LampBS, x.p)
    if isinstance(x, Cyc):
        return (Cyc, x.m)
    if isinstance(x, Pair):
        return (Pair, _signature(x.left), _signature(x.right))
    return (type(x),)


def same_group(x, y) -> bool:
    return _signature(x) == _signature(y)


def multiply(x, y):
    return x * y


def inverse(x):
    return x.inverse()


def identity_of(x):
    return x.identity()


def conjugate(t, x):
    """t x t^-1."""
    return t * x * t.inverse()


def power(x, k: int):
    result, base = x.identity(), (x if k >= 0 else x.inverse())
    for _ in range(abs(k)):
        result = result * base
    return result


# --- text encoding ---------------------------------------------------------

def encode(x) -> str:
    if isinstance(x, IntVec):
        return "zd:" + ",".join(map(str, x.coords))
    if isinstance(x, Heis):
        return f"heis:{x.a},{x.b},{x.c}"
    if isinstance(x, LampBS):
        return f"lampbs[p={x.p}]:{_fmt_frac(x.b)},{x.a}"
    if isinstance(x, AffQ):
        return f"affq:{_fmt_frac(x.b)},{_fmt_frac(x.a)}"
    if isinstance(x, FinPerm):
        cyc = sorted(x.cycles())
        return "perm:" + ("".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()")
    if isinstance(x, Cyc):
        return f"cyc[m={x.m}]:{x.r}"
    if isinstance(x, Pair):
        return f"pair({encode(x.left)};{encode(x.right)})"
    raise TypeError(f"not a group element: {x!r}")


_HEAD = re.compile(r"^([a-z]+)(?:\[(\w+)=(-?\d+)\])?:(.*)$", re.S)


def _split_pair(body: str):
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == ";" and depth == 0:
            return body[:i], body[i + 1:]
    raise ParseError(f"pair body without ';': {body!r}")


def parse_element(text: str):
    """Inverse of :func:`encode`."""
    text = text.strip()
    try:
        if text.startswith("pair(") and text.endswith(")"):
            left, right = _split_pair(text[5:-1])
            return Pair(parse_element(left), parse_element(right))
        m = _HEAD.match(text)
        if not m:
            raise ParseError(f"unrecognized element encoding {text!r}")
        tag, pname, pval, body = m.groups()
        if tag == "perm":
            cycles = re.findall(r"\(([^()]*)\)", body)
            if re.sub(r"\([^()]*\)", "", body).strip():
                raise ParseError(f"bad cycle notation {body!r}")
            return FinPerm.from_cycles(*[tuple(int(t) for t in c.split()) for c in cycles if c.strip()])
        parts = [s.strip() for s in body.split(",")]
        if tag == "zd":
            return IntVec(tuple(int(s) for s in parts))
        if tag == "heis":
            a, b, c = (int(s) for s in parts)
            return Heis(a, b, c)
        if tag == "lampbs":
            if pname != "p":
                raise ParseError("lampbs needs [p=...]")
            b, a = parts
            return LampBS(Fraction(b), int(a), int(pval))
        if tag == "affq":
            b, a = parts
            return AffQ(Fraction(b), Fraction(a))
        if tag == "cyc":
            if pname != "m":
                raise ParseError("cyc needs [m=...]")
            (r,) = parts
            return Cyc(int(r), int(pval))
    except ParseError:
        raise
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse {text!r}: {exc}") from exc
    raise ParseError(f"unknown tag in {text!r}")


# --- sampling ----------------------------------------------------------------

def random_like(x, rng: random.Random, scale: int = 5):
    """A random element of the group of ``x``; coordinates roughly bounded by ``scale``."""
    ri = lambda: rng.randint(-scale, scale)  # noqa: E731
    if isinstance(x, IntVec):
        return IntVec(tuple(ri() for _ in x.coords))
    if isinstance(x, Heis):
        return Heis(ri(), ri(), ri())
    if isinstance(x, LampBS):
        k = rng.randint(0, 3)
        return LampBS(Fraction(ri(), x.p ** k), rng.randint(-3, 3), x.p)
    if isinstance(x, AffQ):
        a = Fraction(rng.randint(1, scale), rng.randint(1, scale)) * rng.choice((1, -1))
        return AffQ(Fraction(ri(), rng.randint(1, scale)), a)
    if isinstance(x, FinPerm):
        pts = list(range(scale + 1))
        rng.shuffle(pts)
        return FinPerm.from_images(pts)
    if isinstance(x, Cyc):
        return Cyc(rng.randrange(x.m), x.m)
    if isinstance(x, Pair):
        return Pair(random_like(x.left, rng, scale), random_like(x.right, rng, scale))
    raise TypeError(f"no sampler for {x!r}")


# --- vectorized arithmetic for integer-coordinate groups ----------------------

_I64_SAFE = 2 ** 62


def to_array(elements: Iterable) -> np.ndarray | None:
    """Stack Heis / IntVec elements as an int64 array; None for other kinds or huge entries."""
    elements = list(elements)
    if not elements:
        return None
    first = elements[0]
    if isinstance(first, Heis):
        rows = [(x.a, x.b, x.c) for x in elements]
    elif isinstance(first, IntVec):
        rows = [x.coords for x in elements]
    else:
        return None
    if max(abs(v) for r in rows for v in r) >= 2 ** 31:
        return None
    return np.array(rows, dtype=np.int64).reshape(len(rows), -1)


def _fits(arr: np.ndarray, s) -> bool:
    bound = int(np.abs(arr).max()) if arr.size else 0
    coords = (s.a, s.b, s.c) if isinstance(s, Heis) else s.coords
    m = max(abs(v) for v in coords) if coords else 0
    return (bound + 1) * (m + 1) * 4 < _I64_SAFE


def array_right_multiply(arr: np.ndarray, s) -> np.ndarray | None:
    """Rows g of ``arr`` mapped to g*s; None when int64 could overflow."""
    if not _fits(arr, s):
        return None
    if isinstance(s, Heis):
        out = arr.copy()
        out[:, 0] += s.a
        out[:, 1] += s.b
        out[:, 2] += s.c + arr[:, 0] * s.b
        return out
    if isinstance(s, IntVec):
        return arr + np.asarray(s.coords, dtype=np.int64)
    return None


def array_left_multiply(s, arr: np.ndarray) -> np.ndarray | None:
    """Rows g of ``arr`` mapped to s*g; None when int64 could overflow."""
    if not _fits(arr, s):
        return None
    if isinstance(s, Heis):
        out = arr.copy()
        out[:, 0] += s.a
        out[:, 1] += s.b
        out[:, 2] += s.c + s.a * arr[:, 1]
        return out
    if isinstance(s, IntVec):
        return arr + np.asarray(s.coords, dtype=np.int64)
    return None
