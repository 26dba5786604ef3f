"""Small exact linear algebra over Q and Q(i).

Matrices are lists of rows.  Entries may be ``int``, ``Fraction`` or
:class:`~cosetlab.scalars.GaussRat`; everything is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotHermitianError
from .scalars import GaussRat, conj, to_scalar

__all__ = [
    "Echelon", "rank", "nullspace", "column_basis", "matmul", "conj_transpose",
    "identity", "is_hermitian", "LDLResult", "hermitian_ldl", "is_zero_matrix",
]


def _clean(x):
    return to_scalar(x)


def _frac_or_gauss(x):
    return x if isinstance(x, (Fraction, GaussRat)) else Fraction(x)


class Echelon:
    """Incremental reduced row echelon basis of a row space over Q(i).

    Rows are stored as sparse dicts ``col -> value`` with a leading 1 at
    the pivot column.  ``add`` returns True when the row was independent.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    def reduce(self, row: dict) -> dict:
        row = {c: v for c, v in row.items() if v != 0}
        for p in sorted(self.rows):
            if p in row:
                f = row[p]
                for c, v in self.rows[p].items():
                    nv = row.get(c, 0) - f * v
                    if nv == 0:
                        row.pop(c, None)
                    else:
                        row[c] = _clean(nv)
        return row

    def add(self, row) -> bool:
        if not isinstance(row, dict):
            row = {c: v for c, v in enumerate(row) if v != 0}
        row = self.reduce(row)
        if not row:
            return False
        p = min(row)
        lead = _frac_or_gauss(row[p])
        row = {c: _clean(_frac_or_gauss(v) / lead) for c, v in row.items()}
        # back-substitute into existing rows to keep the form reduced
        for q, r in self.rows.items():
            if p in r:
                f = r[p]
                for c, v in row.items():
                    nv = r.get(c, 0) - f * v
                    if nv == 0:
                        r.pop(c, None)
                    else:
                        r[c] = _clean(nv)
        self.rows[p] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def dense_rows(self) -> list[list]:
        return [[self.rows[p].get(c, Fraction(0)) for c in range(self.ncols)] for p in self.pivots()]


def rank(rows) -> int:
    rows = list(rows)
    if not rows:
        return 0
    ech = Echelon(len(rows[0]))
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(rows, ncols: int | None = None) -> list[list]:
    """Basis of {x : A x = 0} for A given by rows; one vector per free column."""
    rows = list(rows)
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(rows[0])
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    piv = set(ech.pivots())
    basis = []
    for f in range(ncols):
        if f in piv:
            continue
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for p, r in ech.rows.items():
            if f in r:
                x[p] = _clean(-r[f])
        basis.append(x)
    return basis


def column_basis(cols) -> list[list]:
    """A basis (in echelon form) of the span of the given column vectors."""
    cols = list(cols)
    if not cols:
        return []
    ech = Echelon(len(cols[0]))
    for c in cols:
        ech.add(c)
    return ech.dense_rows()


def matmul(A, B):
    m, k = len(A), len(B)
    n = len(B[0]) if B else 0
    out = [[Fraction(0)] * n for _ in range(m)]
    for i in range(m):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a == 0:
                continue
            Bt = B[t]
            row = out[i]
            for j in range(n):
                if Bt[j] != 0:
                    row[j] = row[j] + a * Bt[j]
    return [[_clean(x) for x in r] for r in out]


def conj_transpose(A):
    if not A:
        return []
    return [[conj(A[i][j]) for i in range(len(A))] for j in range(len(A[0]))]


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def is_zero_matrix(A) -> bool:
    return all(x == 0 for r in A for x in r)


def is_hermitian(M, tol: float | None = None) -> bool:
    n = len(M)
    for i in range(n):
        if len(M[i]) != n:
            return False
        for j in range(i, n):
            if tol is None:
                if M[i][j] != conj(M[j][i]):
                    return False
            elif abs(complex(M[i][j]) - complex(M[j][i]).conjugate()) > tol:
                return False
    return True


@dataclass
class LDLResult:
    """Outcome of the pivoted Hermitian elimination.

    ``psd`` is the verdict.  ``pivots`` lists the diagonal pivots met in
    order.  When ``psd`` is False, ``witness`` explains why: either a
    negative pivot value or a nonzero entry coupling a zero pivot.
    ``order`` is the symmetric permutation applied, ``L`` the unit lower
    factor in that order and ``D`` the pivot list (length n), so that
    P M P^T = L diag(D) L^H when ``psd`` is True.
    """

    psd: bool
    pivots: list
    rank: int
    witness: str | None = None
    order: list | None = None
    L: list | None = None
    D: list | None = None


def _real(x) -> Fraction:
    x = to_scalar(x)
    if isinstance(x, GaussRat):
        raise NotHermitianError(f"non-real diagonal entry {x}")
    return Fraction(x)


def hermitian_ldl(M) -> LDLResult:
    """Exact diagonally pivoted LDL^H of a Hermitian matrix.

    At each step the largest remaining diagonal entry is the pivot.  If it
    is negative the matrix is not PSD.  If it is zero, every remaining
    entry must vanish, else some 2x2 principal minor is negative.
    """
    if not is_hermitian(M):
        raise NotHermitianError("matrix is not Hermitian")
    n = len(M)
    A = [[_clean(x) for x in r] for r in M]
    order = list(range(n))
    L = [[Fraction(0)] * n for _ in range(n)]
    D = [Fraction(0)] * n
    pivots = []
    for k in range(n):
        best = max(range(k, n), key=lambda i: (_real(A[i][i]), -i))
        d = _real(A[best][best])
        if best != k:
            A[k], A[best] = A[best], A[k]
            for r in A:
                r[k], r[best] = r[best], r[k]
            order[k], order[best] = order[best], order[k]
            L[k], L[best] = L[best], L[k]
        if d < 0:
            pivots.append(d)
            return LDLResult(False, pivots, k, f"negative pivot {d} at step {k}", order)
        if d == 0:
            for i in range(k, n):
                for j in range(k, n):
                    if A[i][j] != 0:
                        return LDLResult(False, pivots, k,
                                         f"zero pivot with nonzero coupling entry {A[i][j]} at step {k}", order)
            for i in range(k, n):
                L[i][i] = Fraction(1)
            return LDLResult(True, pivots, k, None, order, L, D)
        pivots.append(d)
        D[k] = d
        L[k][k] = Fraction(1)
        for i in range(k + 1, n):
            L[i][k] = _clean(A[i][k] / d)
        for i in range(k + 1, n):
            lik = A[i][k]
            if lik == 0:
                continue
            for j in range(k + 1, n):
                akj = A[k][j]
                if akj != 0:
                    A[i][j] = _clean(A[i][j] - lik * akj / d)
    return LDLResult(True, pivots, n, None, order, L, D)
