"""Convergence diagnostics: conjugacy classes, firm sequences, transfer, Rajchman, rigidity."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import cosets as cs
from . import groups as gr
from .ell2 import translated_avg_norm_sq_delta
from .errors import PreconditionError
from .folner import DEFAULT_BUDGET, FolnerGen

__all__ = [
    "FCReport", "fc_probe", "fc_series_heis", "FirmPoint", "firm_demo",
    "TransferResult", "transfer_search", "OrthonormalFamily", "RajchmanReport", "rajchman_demo",
    "RigidReport", "rigid_orbit_check",
]

FINITE = "finite-class-certified"
INFINITE = "infinite-class-certified"
INCONCLUSIVE = "inconclusive"


# --- conjugacy classes ------------------------------------------------------------

@dataclass
class FCReport:
    group: str
    element: str
    orbit: list
    verdict: str
    method: str


def _group_id(g) -> str:
    return gr.encode(g).split(":", 1)[0]


def fc_probe(g, generators: list, budget: int = 1000, modulo: cs.Subgroup | None = None) -> FCReport:
    """Conjugacy class of g (or of gH in G/H for normal H) by breadth-first conjugation.

    Heis and abelian groups are decided by rule: in Heis the class of
    (a, b, c) is {(a, b, c + alpha b - beta a)}, finite iff a = b = 0.
    Otherwise a closed orbit within the budget certifies finiteness and an
    open one is inconclusive.
    """
    gid, enc = _group_id(g), gr.encode(g)
    if modulo is None:
        if isinstance(g, (gr.IntVec, gr.Cyc)):
            return FCReport(gid, enc, [g], FINITE, "abelian")
        if isinstance(g, gr.Heis):
            if g.is_central():
                return FCReport(gid, enc, [g], FINITE, "central")
            sample = [gr.conjugate(gr.Heis(al, be, 0), g) for al, be in ((0, 0), (1, 0), (0, 1), (2, 0), (0, 2))]
            return FCReport(gid, enc, list(dict.fromkeys(sample)), INFINITE, "heis-rule")
    key = (lambda x: modulo.key(x)) if modulo is not None else (lambda x: x)
    steps = []
    for s in generators:
        steps += [s, s.inverse()]
    start = key(g)
    rep = {start: g}
    q = deque([start])
    while q:
        k = q.popleft()
        x = rep[k]
        for s in steps:
            y = gr.conjugate(s, x)
            ky = key(y)
            if ky not in rep:
                if len(rep) >= budget:
                    return FCReport(gid, enc, list(rep), INCONCLUSIVE, "bfs-budget")
                rep[ky] = y
                q.append(ky)
    return FCReport(gid, enc, list(rep), FINITE, "bfs-closed")


def fc_series_heis(radius: int = 3, budget: int = 200) -> list[str]:
    """The FC series of Heis probed on the box |a|, |b|, |c| <= radius.

    Stage 1 collects elements with a finite class (the center); stage 2
    works modulo the center, where every class is finite.
    """
    gens = [gr.Heis(1, 0, 0), gr.Heis(0, 1, 0)]
    r = range(-radius, radius + 1)
    box = [gr.Heis(a, b, c) for a in r for b in r for c in r]
    stage1 = [x for x in box if fc_probe(x, gens, budget).verdict == FINITE]
    if not all(x.is_central() for x in stage1):
        raise AssertionError("finite classes outside the center")
    stages = ["center"]
    Z = cs.HeisCenter()
    if all(fc_probe(x, gens, budget, modulo=Z).verdict == FINITE for x in box):
        stages.append("G")
    return stages


# --- firm sequences -----------------------------------------------------------------

@dataclass(frozen=True)
class FirmPoint:
    n: int
    size: int
    max_value: Fraction
    min_value: Fraction
    constant: bool
    bound: Fraction | None


def firm_demo(fgen: FolnerGen, H: cs.Subgroup, translates: list, nmax: int, nmin: int = 1,
              bound: Callable[[int], Fraction] | None = None, budget: int = DEFAULT_BUDGET) -> list[FirmPoint]:
    """Per n, the range of avg_norm_sq_delta(F_n s, H) over the translates s."""
    out = []
    for n in range(nmin, nmax + 1):
        F = fgen.generate(n, budget)
        vals = [translated_avg_norm_sq_delta(F, s, H) for s in translates]
        out.append(FirmPoint(n, len(F), max(vals), min(vals), len(set(vals)) == 1,
                             bound(n) if bound else None))
    return out


def firm_monotone(points: list[FirmPoint], start: int = 2) -> bool:
    """max values non-increasing for n >= start."""
    tail = [p.max_value for p in points if p.n >= start]
    return all(a >= b for a, b in zip(tail, tail[1:]))


# --- transfer lemma ------------------------------------------------------------------

@dataclass
class TransferResult:
    status: str
    t: object = None
    achieved: Fraction | None = None
    beta_hat: Fraction | None = None
    n: int | None = None
    double_average: Fraction | None = None
    interchange_ok: bool | None = None
    averages: list = field(default_factory=list)


def transfer_search(phi: Callable, fgen: FolnerGen, K: list, m: int, nmax: int,
                    budget: int = DEFAULT_BUDGET) -> TransferResult:
    """Find t_m in some F_n with (1/|K|) sum_{s in K} phi(s t_m) >= beta_hat - 1/m.

    beta_hat is the running maximum of the Følner averages of phi over
    n <= nmax, a finite-scale surrogate for the limsup.  At the first n
    whose double average (1/|F|) sum_t (1/|K|) sum_s phi(s t) reaches
    beta_hat - 1/m, the best t in F_n is returned.  The averaging
    interchange (sum over t first vs. over s first) is checked exactly.
    """
    if m < 1 or not K:
        raise PreconditionError("need m >= 1 and a nonempty K")
    try:
        sets = [fgen.generate(n, budget) for n in range(1, nmax + 1)]
        avgs = [sum((Fraction(phi(t)) for t in F), Fraction(0)) / len(F) for F in sets]
    except KeyError:
        return TransferResult("inconclusive")
    beta = max(avgs)
    target = beta - Fraction(1, m)
    for n, F in enumerate(sets, start=1):
        try:
            shifted = [sum((Fraction(phi(s * t)) for s in K), Fraction(0)) / len(K) for t in F]
            by_s = [sum((Fraction(phi(s * t)) for t in F), Fraction(0)) / len(F) for s in K]
        except KeyError:
            return TransferResult("inconclusive", beta_hat=beta, averages=avgs)
        double = sum(shifted, Fraction(0)) / len(F)
        interchange = double == sum(by_s, Fraction(0)) / len(K)
        if double >= target:
            best = max(range(len(F)), key=lambda i: (shifted[i], -i))
            return TransferResult("found", F.elements[best], shifted[best], beta, n, double, interchange, avgs)
    return TransferResult("inconclusive", beta_hat=beta, averages=avgs)


# --- Rajchman lemma -------------------------------------------------------------------

@dataclass
class OrthonormalFamily:
    """Rows of ``values`` are functions on an m-point uniform probability space.

    Orthonormal for <f, g> = (1/m) sum_x f(x) g(x).
    """

    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        G = self.values @ self.values.T / self.m
        if not np.allclose(G, np.eye(len(self.values)), atol=1e-10, rtol=0):
            raise PreconditionError("family is not orthonormal to 1e-10")

    @property
    def m(self) -> int:
        return self.values.shape[1]

    @property
    def size(self) -> int:
        return self.values.shape[0]

    @classmethod
    def random(cls, m: int, size: int, seed: int) -> OrthonormalFamily:
        """Orthonormalized Gaussian vectors scaled by sqrt(m); reproducible from the seed."""
        if size > m:
            raise PreconditionError("an orthonormal family cannot exceed the dimension")
        rng = np.random.default_rng(seed)
        Q, R = np.linalg.qr(rng.standard_normal((m, size)))
        Q = Q * np.sign(np.diag(R))
        return cls(Q.T * math.sqrt(m))

    @classmethod
    def scaled_basis(cls, m: int, size: int) -> OrthonormalFamily:
        """sqrt(m) e_k for k < size."""
        return cls(np.eye(m)[:size] * math.sqrt(m))


@dataclass
class RajchmanReport:
    sup_curve: np.ndarray        # sup_x |avg_n(x)| for n = 1..nmax
    l2_curve: np.ndarray         # ||avg_n||_2 (equals 1/sqrt(n) up to rounding)
    squares: list                # square indices n^2 <= nmax
    square_sup: list             # sup at those indices
    bridge_ok: bool
    bridge_worst: float          # max over m of the bridging gap minus its bound
    combinatorial_ok: bool
    square_bound_ok: bool

    def sup_at(self, n: int) -> float:
        return float(self.sup_curve[n - 1])


def _square_gap_ok(m: int) -> bool:
    """m - floor(sqrt m)^2 <= 1 + 2 sqrt(m), in integers."""
    r = math.isqrt(m)
    d = m - r * r - 1
    return d <= 0 or d * d <= 4 * m


def rajchman_demo(fam: OrthonormalFamily, nmax: int) -> RajchmanReport:
    """Sup-norm decay of the Cesàro averages along all indices and along squares.

    Checks, for every n <= nmax with r = floor(sqrt n):
      |avg_n - (r^2/n) avg_{r^2}| <= ((n - r^2)/n) max_k ||phi_k||_inf, pointwise;
      n - r^2 <= 1 + 2 sqrt(n) (exact integers);
      sup avg_{r^2} <= sqrt(m) ||avg_{r^2}||_2 = sqrt(m) / r.
    """
    if fam.size < nmax:
        raise PreconditionError("family smaller than nmax")
    V = fam.values[:nmax]
    S = np.cumsum(V, axis=0)
    idx = np.arange(1, nmax + 1)[:, None]
    A = S / idx
    sup = np.abs(A).max(axis=1)
    l2 = np.sqrt((A ** 2).mean(axis=1))
    sup_norm = np.abs(V).max()
    worst = -np.inf
    comb = True
    for n in range(1, nmax + 1):
        r = math.isqrt(n)
        gap = np.abs(A[n - 1] - (r * r / n) * A[r * r - 1]).max()
        bound = (n - r * r) / n * sup_norm
        worst = max(worst, gap - bound)
        comb = comb and _square_gap_ok(n)
    squares = [r * r for r in range(1, math.isqrt(nmax) + 1)]
    ssup = [float(sup[q - 1]) for q in squares]
    sq_ok = all(ssup[i] <= math.sqrt(fam.m) / (i + 1) * (1 + 1e-12) for i in range(len(squares)))
    return RajchmanReport(sup, l2, squares, ssup, bool(worst <= 1e-12), float(worst), comb, sq_ok)


# --- rigid pairs ------------------------------------------------------------------------

@dataclass
class RigidReport:
    verdict: str            # rigid | invariant-vector | non-rigid | counterexample
    off_orbit_value: object
    counterexample: tuple | None = None


def rigid_orbit_check(phi, window: list) -> RigidReport:
    """For phi on AffQ, bi-invariant under the scaling subgroup, check phi depends only on [b = 0].

    The scaling subgroup fixes 0 and acts transitively on the nonzero
    rationals, so a bi-invariant phi takes one value on b = 0 (namely
    phi(e) = 1) and one value c on b != 0.  c = 0 is the orthogonality
    pattern of a rigid pair; c = 1 means a G-invariant vector.
    """
    lookup = phi.__getitem__ if isinstance(phi, dict) else phi
    e = gr.AffQ(Fraction(0), Fraction(1))
    one = lookup(e)
    if one != 1:
        return RigidReport("counterexample", None, (gr.encode(e), one))
    off_ref, off_val = None, None
    for g in window:
        if not isinstance(g, gr.AffQ):
            raise PreconditionError("rigid_orbit_check expects AffQ elements")
        v = lookup(g)
        if g.b == 0:
            if v != one:
                return RigidReport("counterexample", off_val, (gr.encode(e), gr.encode(g)))
        elif off_ref is None:
            off_ref, off_val = g, v
        elif v != off_val:
            return RigidReport("counterexample", off_val, (gr.encode(off_ref), gr.encode(g)))
    if off_ref is None:
        raise PreconditionError("window contains no element with b != 0")
    if off_val == 0:
        verdict = "rigid"
    elif off_val == 1:
        verdict = "invariant-vector"
    else:
        verdict = "non-rigid"
    return RigidReport(verdict, off_val)
