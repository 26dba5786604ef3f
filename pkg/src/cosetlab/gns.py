"""GNS construction from positive-definite functions on finite windows.

For a positive-definite function phi the GNS space is spanned by formal
vectors e_x (x in G) with

    <e_y, e_x> = phi(x^-1 y),

and G acts by pi(g) e_x = e_{gx}.  A window is a finite list of keys in
G/H; for a bi-H-invariant phi the Gram matrix M[i][j] = phi(x_i^-1 x_j)
does not depend on the lifts x_i, which :func:`build_gram` checks.

Exact mode works over Q(i).  Square roots are not available there, so the
exact GNS basis is orthogonal rather than orthonormal: B^H M B = diag(D)
with positive rational D.  Float mode returns an orthonormal basis.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import groups as gr
from .cosets import Subgroup
from .errors import ConfigurationError, NotPSDError, PreconditionError
from .linalg import conj_transpose, hermitian_ldl, matmul
from .scalars import GaussRat, I, abs2, conj, to_scalar

__all__ = [
    "PosDefFn", "DeltaAtH", "ConstOne", "BochnerTorus", "GramWindow", "PSDVerdict",
    "GNSBasis", "CompressedRep", "build_gram", "gram_of_elements", "psd_check",
    "gns_quotient", "compressed_rep", "ball_window", "gns_inner", "gns_average",
    "gns_coordinates", "FLOAT_PSD_TOL",
]

FLOAT_PSD_TOL = 1e-9
HERMITIAN_TOL = 1e-12


# --- positive-definite functions -----------------------------------------------

class PosDefFn:
    """A normalized positive-definite function, bi-invariant under ``invariance``."""

    invariance: Subgroup | None = None

    def __call__(self, g):
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class DeltaAtH(PosDefFn):
    """phi = 1 on H and 0 off H; its GNS space is l^2(G/H)."""

    H: Subgroup

    @property
    def invariance(self):
        return self.H

    def __call__(self, g):
        return Fraction(int(self.H.contains(g)))

    def describe(self):
        return {"kind": "delta-at-H", "H": type(self.H).__name__}


@dataclass(frozen=True)
class ConstOne(PosDefFn):
    """phi = 1 everywhere; the trivial one-dimensional representation."""

    invariance = None

    def __call__(self, g):
        return Fraction(1)

    def describe(self):
        return {"kind": "const-one"}


def _root_of_unity(q: Fraction):
    """exp(2 pi i q), exact when 4q is an integer, else a Python complex."""
    q = q - math.floor(q)
    if (4 * q).denominator == 1:
        return [Fraction(1), I, Fraction(-1), GaussRat(0, -1)][int(4 * q)]
    return complex(math.cos(2 * math.pi * q), math.sin(2 * math.pi * q))


@dataclass(frozen=True)
class BochnerTorus(PosDefFn):
    """phi(g) = sum_k w_k chi_{theta_k}(normal part of g): the Fourier transform of a finite measure.

    ``points`` is a tuple of (theta, weight), theta a tuple of rationals
    (one per coordinate) read modulo 1, weights positive rationals with
    total 1.  Supported groups:

    * ``IntVec``: chi_theta(n) = exp(2 pi i <theta, n>).
    * ``LampBS`` over Z[1/p]: a single coordinate theta = j/m with m prime
      to p, and chi_theta(u / p^k) = exp(2 pi i j u p^-k / m) with p^-k
      taken mod m.  This is a character of Z[1/p]; the dilation acts on it
      by theta -> p theta, whose orbits are finite.  phi ignores the acting
      coordinate and is bi-invariant under the acting subgroup exactly when
      the point set is closed under theta -> p theta.
    * ``Cyc``: chi_theta(r) = exp(2 pi i theta r) with m theta integral.

    ``dual_actions`` lists multipliers c (e.g. -1 for inversion, p for the
    dilation); the constructor checks that the weighted point set is
    invariant under theta -> c theta.
    """

    points: tuple
    dual_actions: tuple = ()
    invariance: Subgroup | None = field(default=None, compare=False)

    def __post_init__(self):
        pts = []
        for theta, w in self.points:
            theta = tuple(Fraction(t) % 1 for t in (theta if isinstance(theta, (tuple, list)) else (theta,)))
            w = Fraction(w)
            if w <= 0:
                raise ConfigurationError("Bochner weights must be positive")
            pts.append((theta, w))
        object.__setattr__(self, "points", tuple(pts))
        if sum(w for _, w in pts) != 1:
            raise ConfigurationError("Bochner weights must sum to 1")
        measure = self._measure(pts)
        for c in self.dual_actions:
            moved = self._measure([(tuple((c * t) % 1 for t in th), w) for th, w in pts])
            if moved != measure:
                raise ConfigurationError(f"point set is not invariant under theta -> {c} theta")

    @staticmethod
    def _measure(pts):
        out: dict = {}
        for th, w in pts:
            out[th] = out.get(th, 0) + w
        return out

    def _char(self, theta, g):
        if isinstance(g, gr.IntVec):
            if len(theta) != len(g.coords):
                raise ConfigurationError("torus point dimension does not match Z^d")
            return _root_of_unity(sum((t * c for t, c in zip(theta, g.coords)), Fraction(0)))
        if isinstance(g, gr.LampBS):
            (t,) = theta
            m, p = t.denominator, g.p
            if math.gcd(m, p) != 1:
                raise PreconditionError(f"theta={t} has denominator sharing a factor with p={p}")
            b = Fraction(g.b)
            k = 0
            while b.denominator != 1:
                b *= p
                k += 1
            residue = (b.numerator * pow(p, -k, m)) % m if m > 1 else 0
            return _root_of_unity(Fraction(t.numerator * residue, m))
        if isinstance(g, gr.Cyc):
            (t,) = theta
            if (t * g.m).denominator != 1:
                raise PreconditionError(f"theta={t} is not a character of Z/{g.m}")
            return _root_of_unity(t * g.r)
        raise PreconditionError(f"BochnerTorus cannot evaluate on {gr.encode(g)}")

    def __call__(self, g):
        if not self.exact:
            return sum(float(w) * complex(self._char(theta, g)) for theta, w in self.points)
        total = Fraction(0)
        for theta, w in self.points:
            total = total + w * self._char(theta, g)
        return to_scalar(total)

    @property
    def exact(self) -> bool:
        return all((4 * t).denominator == 1 for th, _ in self.points for t in th)

    def describe(self):
        return {"kind": "bochner-torus",
                "points": [[[str(t) for t in th], str(w)] for th, w in self.points],
                "dual_actions": list(self.dual_actions)}


# --- Gram windows ---------------------------------------------------------------

@dataclass
class GramWindow:
    keys: list
    lifts: list
    matrix: list
    exact: bool
    H: Subgroup | None = None

    @property
    def size(self):
        return len(self.keys)


def _entries_equal(a, b) -> bool:
    if isinstance(a, complex) or isinstance(b, complex):
        return abs(complex(a) - complex(b)) <= HERMITIAN_TOL
    return a == b


def gram_of_elements(phi: PosDefFn, elements: list) -> GramWindow:
    """M[i][j] = phi(x_i^-1 x_j) for explicit group elements (no quotient)."""
    M = [[phi(x.inverse() * y) for y in elements] for x in elements]
    return GramWindow(list(elements), list(elements), M, _all_exact(M))


def build_gram(phi: PosDefFn, window: list, H: Subgroup, *, relift_checks: int = 3,
               seed: int = 0) -> GramWindow:
    """Gram matrix on a window of keys in G/H using canonical lifts.

    Each entry is recomputed ``relift_checks`` times with lifts moved by
    random elements of H; a mismatch means phi is not bi-H-invariant.
    """
    if len(set(window)) != len(window):
        raise ConfigurationError("window keys must be distinct")
    lifts = [H.lift(k) for k in window]
    G = gram_of_elements(phi, lifts)
    rng = random.Random(seed)
    for _ in range(relift_checks):
        rows = [x * H.random_member(rng) for x in lifts]
        cols = [y * H.random_member(rng) for y in lifts]
        for i, x in enumerate(rows):
            for j, y in enumerate(cols):
                if not _entries_equal(phi(x.inverse() * y), G.matrix[i][j]):
                    raise PreconditionError(
                        f"phi is not invariant under H: entry ({i},{j}) depends on the lift")
    return GramWindow(list(window), lifts, G.matrix, G.exact, H)


def ball_window(centers: list, generators: list, radius: int, H: Subgroup) -> list:
    """Keys reachable from the centers' cosets by at most ``radius`` generator steps (both signs)."""
    steps = []
    for s in generators:
        steps.append(s)
        if s.inverse() != s:
            steps.append(s.inverse())
    seen, order = set(), []
    q = deque()
    for c in centers:
        k = H.key(c)
        if k not in seen:
            seen.add(k)
            order.append(k)
            q.append((k, 0))
    while q:
        k, d = q.popleft()
        if d == radius:
            continue
        for s in steps:
            k2 = H.act(s, k)
            if k2 not in seen:
                seen.add(k2)
                order.append(k2)
                q.append((k2, d + 1))
    return order


# --- PSD check and GNS quotient -------------------------------------------------

@dataclass
class PSDVerdict:
    psd: bool
    mode: str
    pivots: list | None = None
    witness: str | None = None
    min_eig: float | None = None
    rank: int | None = None


def _all_exact(M) -> bool:
    return all(isinstance(v, (int, Fraction, GaussRat)) for r in M for v in r)


def _as_complex_array(M) -> np.ndarray:
    return np.array([[complex(x) for x in r] for r in M], dtype=complex)


def psd_check(gram: GramWindow | list) -> PSDVerdict:
    """Exact pivoted LDL in exact mode; smallest eigenvalue in float mode."""
    M = gram.matrix if isinstance(gram, GramWindow) else gram
    exact = gram.exact if isinstance(gram, GramWindow) else _all_exact(M)
    if exact:
        res = hermitian_ldl(M)
        return PSDVerdict(res.psd, "exact", res.pivots, res.witness, None, res.rank if res.psd else None)
    A = _as_complex_array(M)
    if not np.allclose(A, A.conj().T, atol=HERMITIAN_TOL, rtol=0):
        from .errors import NotHermitianError
        raise NotHermitianError("Gram matrix is not Hermitian to 1e-12")
    ev = np.linalg.eigvalsh(A)
    scale = max(1.0, float(np.trace(A).real))
    lo = float(ev[0]) if len(ev) else 0.0
    ok = lo >= -FLOAT_PSD_TOL * scale
    rank = int(np.sum(ev > FLOAT_PSD_TOL * scale))
    return PSDVerdict(ok, "float", None, None if ok else f"eigenvalue {lo:.3e}", lo, rank)


@dataclass
class GNSBasis:
    """Columns of B are GNS vectors u_a = sum_j B[j][a] e_{x_j} with <u_b, u_a> = D[a] delta_ab.

    Exact mode: D holds positive rationals.  Float mode: D is all ones.
    """

    B: list
    D: list
    rank: int
    exact: bool


def _unit_lower_inverse(L, n):
    Linv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            s = Fraction(0)
            for k in range(j, i):
                if L[i][k] != 0 and Linv[k][j] != 0:
                    s = s + L[i][k] * Linv[k][j]
            Linv[i][j] = to_scalar(-s)
    return Linv


def gns_quotient(gram: GramWindow) -> GNSBasis:
    """Orthogonal basis of the window span modulo the null space of the Gram form."""
    M = gram.matrix
    n = len(M)
    if gram.exact:
        res = hermitian_ldl(M)
        if not res.psd:
            raise NotPSDError(res.witness)
        r = res.rank
        # P M P^T = L D L^H  ==>  (L^-1 P) M (L^-1 P)^H = D; B = P^T L^-H.
        Linv = _unit_lower_inverse(res.L, n)
        LinvH = conj_transpose(Linv)
        B = [[Fraction(0)] * r for _ in range(n)]
        for row in range(n):
            for a in range(r):
                B[res.order[row]][a] = LinvH[row][a]
        return GNSBasis(B, list(res.D[:r]), r, True)
    verdict = psd_check(gram)
    if not verdict.psd:
        raise NotPSDError(verdict.witness)
    A = _as_complex_array(M)
    ev, V = np.linalg.eigh(A)
    scale = max(1.0, float(np.trace(A).real))
    keep = ev > FLOAT_PSD_TOL * scale
    Bf = V[:, keep] / np.sqrt(ev[keep])
    r = int(keep.sum())
    return GNSBasis(Bf.tolist(), [1.0] * r, r, False)


# --- compressed representation --------------------------------------------------

@dataclass
class CompressedRep:
    """R[a][b] = <pi(g) u_b, u_a> in the (unnormalized) GNS basis.

    ``matrix`` is the compression to the window span in the orthonormal
    basis u_a / sqrt(D[a]) (floats).  ``leakage`` is
    sum_b ||(I - P) pi(g) u_b||^2 / D[b], exact in exact mode.
    """

    R: list
    D: list
    closed: bool
    unitary: bool
    leakage: object
    matrix: np.ndarray
    op_norm: float


def compressed_rep(phi: PosDefFn, gram: GramWindow, g, basis: GNSBasis | None = None) -> CompressedRep:
    basis = basis or gns_quotient(gram)
    xs = gram.lifts
    N = [[phi(x.inverse() * (g * y)) for y in xs] for x in xs]
    if gram.H is not None:
        keyset = set(gram.keys)
        closed = all(gram.H.act(g, k) in keyset for k in gram.keys)
    else:
        closed = all(g * y in set(xs) for y in xs)
    r = basis.rank
    D = basis.D
    if basis.exact and not any(isinstance(v, complex) for row in N for v in row):
        B = basis.B
        R = matmul(conj_transpose(B), matmul(N, B)) if r else []
        # U = D^-1/2 R D^-1/2 is unitary iff R^H D^-1 R = D.
        Dinv_R = [[R[a][b] / D[a] for b in range(r)] for a in range(r)]
        G2 = matmul(conj_transpose(R), Dinv_R) if r else []
        unitary = all(G2[a][b] == (D[a] if a == b else 0) for a in range(r) for b in range(r))
        leak = Fraction(0)
        for b in range(r):
            col = sum((abs2(R[a][b]) / (D[a] * D[b]) for a in range(r)), Fraction(0))
            leak += 1 - col
        U = np.array([[complex(R[a][b]) / math.sqrt(D[a] * D[b]) for b in range(r)] for a in range(r)],
                     dtype=complex).reshape(r, r)
    else:
        Bf = np.array([[complex(v) for v in row] for row in basis.B], dtype=complex).reshape(len(xs), r)
        Nf = _as_complex_array(N) if xs else np.zeros((0, 0), dtype=complex)
        Df = np.array([float(d) for d in D])
        Rf = Bf.conj().T @ Nf @ Bf
        U = Rf / np.sqrt(np.outer(Df, Df)) if r else Rf
        R = Rf.tolist()
        unitary = bool(np.allclose(U.conj().T @ U, np.eye(r), atol=1e-10)) if r else True
        leak = float(r - np.sum(np.abs(U) ** 2))
    op = float(np.linalg.norm(U, 2)) if r else 0.0
    return CompressedRep(R, list(D), closed, unitary, leak, U, op)


# --- GNS-side vector computations ------------------------------------------------

def gns_inner(phi: PosDefFn, c: dict, d: dict):
    """<sum c_x e_x, sum d_y e_y> = sum_{x,y} c_x conj(d_y) phi(y^-1 x)."""
    total = Fraction(0)
    for x, cx in c.items():
        for y, dy in d.items():
            total = total + cx * conj(dy) * phi(y.inverse() * x)
    return to_scalar(total) if not isinstance(total, complex) else total


def gns_average(F, c: dict) -> dict:
    """(1/|F|) sum_{s in F} pi(s) applied to a formal combination of e_x."""
    F = list(F)
    if not F:
        raise PreconditionError("average over an empty set")
    out: dict = {}
    for s in F:
        for x, cx in c.items():
            out[s * x] = out.get(s * x, 0) + cx
    n = len(F)
    return {x: to_scalar(v * Fraction(1, n)) for x, v in out.items() if v != 0}


def gns_coordinates(gram: GramWindow, basis: GNSBasis, coeffs: list) -> list:
    """alpha_a with  v = sum_a alpha_a u_a  modulo the null space, for v = sum_j coeffs[j] e_{x_j}.

    alpha_a = <v, u_a> / D[a] = (B^H M c)[a] / D[a].
    """
    M = gram.matrix
    n = len(M)
    Mc = [sum((M[i][j] * coeffs[j] for j in range(n)), Fraction(0)) for i in range(n)]
    out = []
    for a in range(basis.rank):
        s = sum((conj(basis.B[i][a]) * Mc[i] for i in range(n)), Fraction(0))
        out.append(to_scalar(s / basis.D[a]) if basis.exact else complex(s) / basis.D[a])
    return out
