"""Contracting triples: every finite subset of L conjugates into H.

If t F t^-1 lies in H then, with s = t^-1, every element of F s lands in
the single coset s H, so the average of pi(f s) delta_{eH} over F is a
unit vector.  The mean ergodic theorem fails with norm exactly 1, while
weak pairings against delta_{eH} still vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import cosets as cs
from . import groups as gr
from .ell2 import avg_norm_sq_delta
from .errors import PreconditionError
from .folner import DEFAULT_BUDGET, FiniteSet, FolnerGen

__all__ = ["ContractingTriple", "HNNZp", "SymK", "FlabbyRecord", "flabby_demo", "index_growth", "coset_count_growth"]


class ContractingTriple:
    H: cs.Subgroup
    name = "abstract"

    def in_L(self, g) -> bool:
        raise NotImplementedError

    def _candidate(self, F: FiniteSet):
        raise NotImplementedError

    def contract(self, F) -> object:
        """An element t with t f t^-1 in H for every f in F, verified before it is returned."""
        F = list(F)
        if not F:
            raise PreconditionError("contract needs a nonempty set")
        bad = [f for f in F if not self.in_L(f)]
        if bad:
            raise PreconditionError(f"{gr.encode(bad[0])} is not in L")
        t = self._candidate(F)
        for f in F:
            if not self.H.contains(gr.conjugate(t, f)):
                raise AssertionError(f"conjugator {gr.encode(t)} failed on {gr.encode(f)}")
        return t


@dataclass(frozen=True)
class HNNZp(ContractingTriple):
    """Gamma_p = Z[1/p] x| Z with H = Z (the base) and L = Z[1/p] (the normal subgroup).

    t = (0, k) conjugates (b, 0) to (p^k b, 0), so k = the largest
    p-exponent of a denominator in F is the least admissible k.
    """

    p: int = 2

    @property
    def H(self):
        return cs.LampBSBase(self.p)

    @property
    def L(self):
        return cs.LampBSNormal(self.p)

    @property
    def name(self):
        return f"hnn[p={self.p}]"

    def in_L(self, g) -> bool:
        return isinstance(g, gr.LampBS) and g.p == self.p and g.a == 0

    def _candidate(self, F):
        k = 0
        for f in F:
            d = Fraction(f.b).denominator
            e = 0
            while d > 1:
                d //= self.p
                e += 1
            k = max(k, e)
        return gr.LampBS(Fraction(0), k, self.p)


@dataclass(frozen=True)
class SymK(ContractingTriple):
    """Finitary permutations of N with H = the pointwise stabilizer of K and L = everything.

    The conjugator is the involution swapping K (in increasing order) with
    the |K| least integers outside K and outside every support in F.
    """

    K: tuple = (0,)

    def __post_init__(self):
        object.__setattr__(self, "K", tuple(sorted(set(self.K))))

    @property
    def H(self):
        return cs.SymFix(self.K)

    @property
    def L(self):
        return cs.FullGroup(gr.FinPerm(()))

    @property
    def name(self):
        return f"sym[K={','.join(map(str, self.K))}]"

    def in_L(self, g) -> bool:
        return isinstance(g, gr.FinPerm)

    def fresh_points(self, F) -> list:
        used = set(self.K)
        for f in F:
            used |= f.support
        fresh, i = [], 0
        while len(fresh) < len(self.K):
            if i not in used:
                fresh.append(i)
            i += 1
        return fresh

    def _candidate(self, F):
        M = self.fresh_points(F)
        return gr.FinPerm.from_cycles(*[(k, m) for k, m in zip(self.K, M)])


@dataclass(frozen=True)
class FlabbyRecord:
    n: int
    size: int
    conjugator: object
    translate: object
    norm_sq: Fraction
    weak_pairing: Fraction


def flabby_demo(T: ContractingTriple, fgen: FolnerGen, nmax: int, nmin: int = 1,
                budget: int = DEFAULT_BUDGET) -> list[FlabbyRecord]:
    """Per n: t = contract(F_n), s_n = t^-1, ||A_{F_n s_n} delta_{eH}||^2 and <delta_{eH}, A delta_{eH}>."""
    H = T.H
    out = []
    for n in range(nmin, nmax + 1):
        F = fgen.generate(n, budget)
        t = T.contract(F)
        s = t.inverse()
        moved = F.right_translate(s)
        norm = avg_norm_sq_delta(moved, H)
        e_key = H.key(s.identity())
        hits = sum(1 for x in moved if H.key(x) == e_key)
        out.append(FlabbyRecord(n, len(F), t, s, norm, Fraction(hits, len(F))))
    return out


def index_growth(T: HNNZp, k: int) -> int:
    """[H_k : H] with H_k = p^-k Z, counted by enumerating keys of H in H_k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    H = T.H
    den = T.p ** k
    keys = {H.key(gr.LampBS(Fraction(j, den), 0, T.p)) for j in range(2 * den)}
    return len(keys)


def coset_count_growth(T: ContractingTriple, fgen: FolnerGen, nmax: int,
                       budget: int = DEFAULT_BUDGET) -> list[int]:
    """Number of distinct H-cosets met by F_n; unbounded growth reflects [L : H] = infinity."""
    return [len({T.H.key(x) for x in fgen.generate(n, budget)}) for n in range(1, nmax + 1)]
