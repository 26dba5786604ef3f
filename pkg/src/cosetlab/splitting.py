"""The orthogonal splitting H^H = H^L + Cobnd(L, H) on finite testbeds.

For H <= L <= N_G(H) and a unitary representation pi, the H-invariant
vectors split orthogonally into L-invariant vectors and the closed span of
v - pi(s) v (v H-invariant, s in L).  On finite groups all three spaces
are computed exactly by row reduction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

import numpy as np

from . import groups as gr
from .errors import PreconditionError
from .linalg import Echelon, nullspace
from .scalars import abs2, conj, to_scalar

__all__ = [
    "generate_group", "normalizer", "FiniteRep", "regular_rep", "permutation_rep", "sign_twisted_rep",
    "invariant_subspace", "coboundary_subspace", "verify_splitting", "SplittingReport",
    "testbed_instances", "coboundary_inequality_check",
]


def generate_group(gens: list, identity=None) -> list:
    """All elements of the finite group generated by ``gens``, in BFS order from the identity."""
    if identity is None:
        if not gens:
            raise ValueError("need a generator or an identity element")
        identity = gens[0].identity()
    seen = {identity}
    order = [identity]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for s in gens:
            y = x * s
            if y not in seen:
                seen.add(y)
                order.append(y)
    return order


def normalizer(G: list, H: list) -> list:
    Hs = set(H)
    return [s for s in G if all(gr.conjugate(s, h) in Hs for h in H)]


# --- representations ------------------------------------------------------------

@dataclass
class FiniteRep:
    """A representation of a finite group given by a matrix for every element.

    ``mats[s]`` is either a monomial action stored as a pair
    (image index list, scalar list) meaning pi(s) e_j = c_j e_{img[j]},
    or a dense matrix (list of rows).  Dense float matrices make the rep
    a float-mode rep.
    """

    elements: list
    dim: int
    mats: dict
    name: str = ""
    exact: bool = True
    _dense: dict = field(default_factory=dict, repr=False)

    def dense(self, s) -> list:
        if s not in self._dense:
            m = self.mats[s]
            if isinstance(m, tuple):
                img, coef = m
                M = [[Fraction(0)] * self.dim for _ in range(self.dim)]
                for j, (i, c) in enumerate(zip(img, coef)):
                    M[i][j] = c
            else:
                M = m
            self._dense[s] = M
        return self._dense[s]

    def apply(self, s, v: list) -> list:
        m = self.mats[s]
        if isinstance(m, tuple):
            img, coef = m
            out = [Fraction(0)] * self.dim
            for j, (i, c) in enumerate(zip(img, coef)):
                out[i] = to_scalar(c * v[j]) if self.exact else c * v[j]
            return out
        return [sum(m[i][j] * v[j] for j in range(self.dim)) for i in range(self.dim)]

    def check_homomorphism(self, pairs=None) -> bool:
        """pi(s) pi(t) = pi(st) on the given pairs (all pairs by default); pi(e) = I."""
        e = self.elements[0].identity()
        basis = [[Fraction(int(i == j)) for i in range(self.dim)] for j in range(self.dim)]
        if any(not self._same(self.apply(e, b), b) for b in basis):
            return False
        pairs = pairs if pairs is not None else [(s, t) for s in self.elements for t in self.elements]
        for s, t in pairs:
            for b in basis:
                if not self._same(self.apply(s, self.apply(t, b)), self.apply(s * t, b)):
                    return False
        return True

    def _same(self, x, y) -> bool:
        if self.exact:
            return x == y
        return bool(np.allclose(np.array(x, dtype=complex), np.array(y, dtype=complex), atol=1e-10))


def regular_rep(elements: list) -> FiniteRep:
    """Left regular representation: pi(s) e_x = e_{sx}."""
    idx = {x: i for i, x in enumerate(elements)}
    ones = [Fraction(1)] * len(elements)
    mats = {s: ([idx[s * x] for x in elements], ones) for s in elements}
    return FiniteRep(list(elements), len(elements), mats, "regular")


def _coset_key(x, K: list):
    return min((x * k for k in K), key=lambda y: y.sort_key())


def permutation_rep(elements: list, K: list) -> FiniteRep:
    """Permutation representation on left cosets G/K."""
    keys = []
    seen = set()
    for x in elements:
        k = _coset_key(x, K)
        if k not in seen:
            seen.add(k)
            keys.append(k)
    idx = {k: i for i, k in enumerate(keys)}
    ones = [Fraction(1)] * len(keys)
    mats = {s: ([idx[_coset_key(s * k, K)] for k in keys], ones) for s in elements}
    return FiniteRep(list(elements), len(keys), mats, f"perm[G/K,|K|={len(K)}]")


def _sign(p: gr.FinPerm) -> int:
    return (-1) ** sum(len(c) - 1 for c in p.cycles())


def sign_twisted_rep(elements: list) -> FiniteRep:
    """pi(s) e_x = sign(s) e_{sx} on a permutation group: a monomial, non-permutation rep."""
    idx = {x: i for i, x in enumerate(elements)}
    mats = {}
    for s in elements:
        c = Fraction(_sign(s))
        mats[s] = ([idx[s * x] for x in elements], [c] * len(elements))
    return FiniteRep(list(elements), len(elements), mats, "sign-twisted regular")


def float_rep(rep: FiniteRep, seed: int = 0) -> FiniteRep:
    """Conjugate an exact rep by a random real orthogonal matrix: a dense float-mode rep."""
    rng = np.random.default_rng(seed)
    Q, _ = np.linalg.qr(rng.standard_normal((rep.dim, rep.dim)))
    mats = {}
    for s in rep.elements:
        P = np.array([[float(x) for x in r] for r in rep.dense(s)])
        mats[s] = (Q @ P @ Q.T).tolist()
    return FiniteRep(rep.elements, rep.dim, mats, rep.name + " (float)", exact=False)


# --- subspaces ------------------------------------------------------------------

def _small_generating_set(S: list) -> list:
    gens, span = [], {S[0].identity()}
    for s in S:
        if s not in span:
            gens.append(s)
            span = set(generate_group(gens, S[0].identity()))
    return gens


def invariant_subspace(rep: FiniteRep, S: list) -> list:
    """Basis of {v : pi(s) v = v for s in S}; generators of <S> suffice."""
    gens = _small_generating_set(S)
    n = rep.dim
    if not rep.exact:
        if not gens:
            return np.eye(n).tolist()
        A = np.vstack([np.array(rep.mats[s], dtype=float) - np.eye(n) for s in gens])
        _, sv, Vh = np.linalg.svd(A)
        r = int(np.sum(sv > 1e-10))
        return Vh[r:].conj().tolist()
    rows = []
    for s in gens:
        M = rep.dense(s)
        for i in range(n):
            row = {j: M[i][j] for j in range(n) if M[i][j] != 0}
            row[i] = row.get(i, 0) - 1
            rows.append({j: v for j, v in row.items() if v != 0})
    if not rows:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    ech = Echelon(n)
    for r in rows:
        ech.add(r)
    return nullspace(ech.dense_rows(), n) if ech.rank else [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]


def _check_nested(G: list, H: list, L: list):
    Hs, Ls = set(H), set(L)
    if not Hs <= Ls:
        raise PreconditionError("H must be contained in L")
    for s in L:
        for h in H:
            if gr.conjugate(s, h) not in Hs:
                raise PreconditionError(f"{gr.encode(s)} in L does not normalize H")


def coboundary_subspace(rep: FiniteRep, H: list, L: list) -> list:
    """Basis of span{v - pi(s) v : v in H^H, s in L}."""
    _check_nested(rep.elements, H, L)
    VH = invariant_subspace(rep, H)
    n = rep.dim
    if not rep.exact:
        cols = [np.array(v) - np.array(rep.apply(s, v)) for v in VH for s in L]
        if not cols:
            return []
        A = np.array(cols).T
        U, sv, _ = np.linalg.svd(A, full_matrices=False)
        r = int(np.sum(sv > 1e-10))
        return U[:, :r].T.tolist()
    ech = Echelon(n)
    for v in VH:
        for s in L:
            pv = rep.apply(s, v)
            ech.add([to_scalar(a - b) for a, b in zip(v, pv)])
            if ech.rank == n:
                break
    return ech.dense_rows()


@dataclass
class SplittingReport:
    name: str
    dim_H: int
    dim_L: int
    dim_cobnd: int
    crossterm: object
    pass_: bool
    counterexample: str | None = None

    def as_dict(self) -> dict:
        return {"group": self.name, "dims": [self.dim_H, self.dim_L, self.dim_cobnd],
                "crossterm": str(self.crossterm), "pass": self.pass_,
                **({"counterexample": self.counterexample} if self.counterexample else {})}


def verify_splitting(rep: FiniteRep, H: list, L: list, name: str = "") -> SplittingReport:
    """dim H^H = dim H^L + dim Cobnd and <u, w> = 0 for u in H^L, w in Cobnd."""
    VH = invariant_subspace(rep, H)
    VL = invariant_subspace(rep, L)
    C = coboundary_subspace(rep, H, L)
    dH, dL, dC = len(VH), len(VL), len(C)
    if rep.exact:
        cross = Fraction(0)
        for u in VL:
            for w in C:
                ip = sum((a * conj(b) for a, b in zip(u, w)), Fraction(0))
                cross = max(cross, abs2(ip))
        ok_cross = cross == 0
        cross_report = cross
    else:
        cross_report = 0.0
        for u in VL:
            for w in C:
                cross_report = max(cross_report, abs(np.vdot(np.array(w), np.array(u))))
        ok_cross = cross_report <= 1e-10
    ok = ok_cross and dH == dL + dC
    cx = None
    if not ok:
        cx = f"dims {dH} vs {dL}+{dC}, crossterm {cross_report}"
    return SplittingReport(name or rep.name, dH, dL, dC, cross_report, ok, cx)


# --- testbeds -------------------------------------------------------------------

def _cyc(m):
    return generate_group([gr.Cyc(1, m)])


def _sym(n):
    return [gr.FinPerm.from_images(p) for p in permutations(range(n))]


def _sub(gens, identity):
    return generate_group(gens, identity)


def testbed_instances() -> list:
    """(name, rep, H, L) instances with |G| <= 120 covering cyclic, symmetric and product groups."""
    out = []
    tr = gr.FinPerm.from_cycles

    for m in (4, 6, 8, 12):
        G = _cyc(m)
        e = gr.Cyc(0, m)
        out.append((f"Z/{m} regular, H=1, L=G", regular_rep(G), [e], G))
        for d in (2, 3):
            if m % d == 0:
                H = _sub([gr.Cyc(m // d, m)], e)
                out.append((f"Z/{m} regular, H=<{m // d}>, L=G", regular_rep(G), H, G))

    e = gr.FinPerm(())
    S3, S4 = _sym(3), _sym(4)
    A3 = _sub([tr((0, 1, 2))], e)
    out.append(("S3 regular, H=1, L=A3", regular_rep(S3), [e], A3))
    out.append(("S3 regular, H=A3, L=S3", regular_rep(S3), A3, S3))
    out.append(("S3 sign-twisted, H=1, L=S3", sign_twisted_rep(S3), [e], S3))

    V4 = _sub([tr((0, 1), (2, 3)), tr((0, 2), (1, 3))], e)
    A4 = _sub([tr((0, 1, 2)), tr((0, 1), (2, 3))], e)
    D4 = _sub([tr((0, 1, 2, 3)), tr((0, 2))], e)
    H01 = _sub([tr((0, 1))], e)
    L0123 = _sub([tr((0, 1)), tr((2, 3))], e)
    out.append(("S4 regular, H=V4, L=S4", regular_rep(S4), V4, S4))
    out.append(("S4 regular, H=V4, L=A4", regular_rep(S4), V4, A4))
    out.append(("S4 regular, H=V4, L=D4", regular_rep(S4), V4, D4))
    out.append(("S4 regular, H=<(01)>, L=<(01),(23)>", regular_rep(S4), H01, L0123))
    stab0 = [g for g in S4 if g(0) == 0]
    out.append(("S4 regular, H=Stab(0), L=Stab(0)", regular_rep(S4), stab0, stab0))
    out.append(("S4 on S4/Stab(0), H=V4, L=S4", permutation_rep(S4, stab0), V4, S4))
    out.append(("S4 sign-twisted, H=V4, L=A4", sign_twisted_rep(S4), V4, A4))

    S5 = _sym(5)
    A5_gens = [tr((0, 1, 2)), tr((0, 1, 2, 3, 4))]
    A5 = _sub(A5_gens, e)
    stab01 = [g for g in S5 if g(0) == 0 and g(1) == 1]
    N01 = normalizer(S5, _sub([tr((0, 1))], e))
    out.append(("S5 on S5/Stab(0,1), H=1, L=A5", permutation_rep(S5, stab01), [e], A5))
    out.append(("S5 on S5/A5, H=A5, L=S5", permutation_rep(S5, A5), A5, S5))
    out.append(("S5 regular, H=<(01)>, L=N(<(01)>)", regular_rep(S5), _sub([tr((0, 1))], e), N01))

    Z2xZ4 = generate_group([gr.Pair(gr.Cyc(1, 2), gr.Cyc(0, 4)), gr.Pair(gr.Cyc(0, 2), gr.Cyc(1, 4))])
    pe = gr.Pair(gr.Cyc(0, 2), gr.Cyc(0, 4))
    out.append(("Z/2xZ/4 regular, H=Z/2x0, L=G", regular_rep(Z2xZ4), _sub([gr.Pair(gr.Cyc(1, 2), gr.Cyc(0, 4))], pe), Z2xZ4))
    S3xS3 = generate_group([gr.Pair(tr((0, 1)), e), gr.Pair(tr((0, 1, 2)), e),
                            gr.Pair(e, tr((0, 1))), gr.Pair(e, tr((0, 1, 2)))])
    qe = gr.Pair(e, e)
    H = _sub([gr.Pair(tr((0, 1, 2)), e)], qe)
    out.append(("S3xS3 regular, H=A3x1, L=G", regular_rep(S3xS3), H, S3xS3))
    return out


# --- averaging bound --------------------------------------------------------------

def coboundary_inequality_check(m: int, h: int, l: int, F_keys: list, s0: int, rng: random.Random) -> tuple:
    """Exact check of ||A_F v - u||^2 <= defect^2 ||w||^2 on the regular rep of Z/m.

    H = <h>, L = <l> with H <= L.  F is a set of keys of L/H (canonical
    coset representatives), s0 in L, u random L-invariant, w random
    H-invariant, v = u + w - pi(s0) w.  Returns (lhs, rhs, defect).
    """
    from .cosets import FiniteSubgroup
    from .folner import triple_right_defect

    e = gr.Cyc(0, m)
    G = _cyc(m)
    H = _sub([gr.Cyc(h % m, m)], e)
    L = _sub([gr.Cyc(l % m, m)], e)
    if not set(H) <= set(L):
        raise PreconditionError("H must be contained in L")
    rep = regular_rep(G)
    Hsub = FiniteSubgroup(frozenset(H))

    def rand_invariant(S):
        orbit_val = {}
        v = []
        for x in G:
            k = Hsub.key(x) if S is H else min((x * t for t in S), key=lambda y: y.sort_key())
            if k not in orbit_val:
                orbit_val[k] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            v.append(orbit_val[k])
        return v

    u = rand_invariant(L)
    w = rand_invariant(H)
    s = gr.Cyc(s0, m)
    pw = rep.apply(s, w)
    v = [a + b - c for a, b, c in zip(u, w, pw)]
    Fk = [Hsub.key(gr.Cyc(k, m)) for k in F_keys]
    Fk = list(dict.fromkeys(Fk))
    acc = [Fraction(0)] * m
    for x in Fk:
        pv = rep.apply(x, v)
        acc = [a + b for a, b in zip(acc, pv)]
    avg = [a / len(Fk) for a in acc]
    lhs = sum(((a - b) ** 2 for a, b in zip(avg, u)), Fraction(0))
    defect = triple_right_defect(Fk, s, Hsub)
    rhs = defect ** 2 * sum((x * x for x in w), Fraction(0))
    return lhs, rhs, defect
