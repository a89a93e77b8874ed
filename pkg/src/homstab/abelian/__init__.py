"""Exact integer linear algebra.

Hermite and Smith normal forms, integer solving, lattice membership and
inclusion, cokernel presentations. Everything is exact: entries are Python
ints, and the compiled kernels fall back to them on overflow.

>>> smith_normal_form(IntMatrix([[2, 4], [6, 8]])).diag
(2, 4)
>>> lattice_member((1, 0), IntMatrix.from_columns([(1, 2)])).member
False
"""
from __future__ import annotations

import operator
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _backend
from ._backend import BACKEND

__all__ = [
    "BACKEND",
    "IntMatrix",
    "SmithForm",
    "FgAbGroup",
    "Membership",
    "Inclusion",
    "hermite_normal_form",
    "smith_normal_form",
    "lattice_member",
    "lattice_subset",
    "cokernel",
    "determinant",
    "rank",
]


class IntMatrix:
    """Immutable integer matrix, row-major.

    Shapes with a zero dimension are allowed; pass ``rows``/``cols`` when
    the data alone cannot carry the shape (e.g. a ``2 x 0`` matrix).
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable[int]] = (), rows: int | None = None,
                 cols: int | None = None):
        data = tuple(tuple(operator.index(v) for v in row) for row in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if rows == 0:
            data = ()
        elif not data and cols == 0:
            data = ((),) * rows
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"ragged or mis-sized data for a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self._data = data

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], rows: int | None = None) -> IntMatrix:
        columns = [tuple(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("row count required for a matrix with no columns")
            rows = len(columns[0])
        if any(len(c) != rows for c in columns):
            raise ValueError("columns have inconsistent lengths")
        return cls([[c[i] for c in columns] for i in range(rows)], rows, len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(v for row in self._data for v in row)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> IntMatrix:
        if self.rows == 0 or self.cols == 0:
            return IntMatrix.zeros(self.cols, self.rows)
        return IntMatrix._trusted(zip(*self._data), self.cols, self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._data[i][j]

    @classmethod
    def _trusted(cls, data, rows: int, cols: int) -> IntMatrix:
        # internal: data is already a well-shaped sequence of int rows
        self = object.__new__(cls)
        self.rows = rows
        self.cols = cols
        self._data = tuple(map(tuple, data)) if rows else ()
        return self

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        m, k, n = self.rows, self.cols, other.cols
        if m == 0 or n == 0 or k == 0:
            return IntMatrix.zeros(m, n)
        try:
            a = np.array(self._data, dtype=np.int64)
            b = np.array(other._data, dtype=np.int64)
        except OverflowError:
            a = b = None
        if a is not None:
            bound = int(np.abs(a).max()) * int(np.abs(b).max()) * k
            if bound < 2**53:
                # every partial sum is an integer below 2**53: float64 is exact
                prod = (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
                return IntMatrix._trusted(prod.tolist(), m, n)
            if bound < 2**62:
                return IntMatrix._trusted((a @ b).tolist(), m, n)
        # exact fallback on Python ints, skipping zero entries
        out = [[0] * n for _ in range(m)]
        brows = other._data
        for i, row in enumerate(self._data):
            acc = out[i]
            for t, v in enumerate(row):
                if v:
                    for j, w in enumerate(brows[t]):
                        if w:
                            acc[j] += v * w
        return IntMatrix._trusted(out, m, n)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} for {self.cols} columns")
        if self.rows == 0:
            return ()
        return (self @ IntMatrix._trusted([[v] for v in vec], len(vec), 1)).column(0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, rows={self.rows}, cols={self.cols})"


@dataclass(frozen=True)
class SmithForm:
    """``A == U @ S @ V`` with ``U``, ``V`` unimodular.

    ``U_inv``/``V_inv`` are carried along because every consumer (kernels,
    cokernels, coordinates in homology) needs them and they come for free
    from the elimination.
    """

    S: IntMatrix
    U: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix
    diag: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.diag)


@dataclass(frozen=True)
class FgAbGroup:
    """Z^free_rank + Z/t1 + ... + Z/tk with t1 | t2 | ... | tk, all > 1.

    ``generators`` lists free generators first, then one per torsion factor.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()
    generators: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if any(t <= 1 for t in self.torsion):
            raise ValueError(f"torsion coefficients must exceed 1: {self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"torsion does not form a divisibility chain: {self.torsion}")
        if self.generators and len(self.generators) != self.free_rank + len(self.torsion):
            raise ValueError("generator count does not match the group")

    @property
    def order(self) -> tuple[int, ...]:
        """Per-generator order, 0 meaning infinite."""
        return (0,) * self.free_rank + self.torsion

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Membership:
    member: bool
    coefficients: tuple[int, ...] | None = None


@dataclass(frozen=True)
class Inclusion:
    """Outcome of ``lattice_subset``.

    On success ``coefficients[j]`` expresses column ``j`` of the sub-lattice
    in the columns of the super-lattice; on failure ``witness`` is the
    first column that is not a member.
    """

    contained: bool
    coefficients: tuple[tuple[int, ...], ...] = ()
    witness: tuple[int, ...] | None = None
    witness_index: int | None = None


def _as_matrix(A) -> IntMatrix:
    return A if isinstance(A, IntMatrix) else IntMatrix(A)


def hermite_normal_form(A, backend: str | None = None) -> tuple[IntMatrix, IntMatrix]:
    """Row-style HNF: returns ``(H, U)`` with ``H == U @ A``, ``U`` unimodular.

    The nonzero rows of ``H`` are in echelon form with positive pivots and
    entries above each pivot reduced into ``[0, pivot)``. Zero rows sit at
    the bottom. To reduce a lattice spanned by columns, pass the transpose.
    """
    A = _as_matrix(A)
    H, U = _backend.hermite_reduce(A.tolist(), A.rows, A.cols, backend)
    return IntMatrix._trusted(H, A.rows, A.cols), IntMatrix._trusted(U, A.rows, A.rows)


def smith_normal_form(A, backend: str | None = None) -> SmithForm:
    A = _as_matrix(A)
    m, n = A.shape
    S, L, LinvT, RT, Rinv = _backend.smith_reduce(A.tolist(), m, n, backend)
    S = IntMatrix._trusted(S, m, n) if m and n else IntMatrix.zeros(m, n)
    diag = []
    for i in range(min(m, n)):
        if S[i, i] == 0:
            break
        diag.append(S[i, i])
    return SmithForm(
        S=S,
        U=IntMatrix._trusted(LinvT, m, m).T,
        V=IntMatrix._trusted(Rinv, n, n),
        U_inv=IntMatrix._trusted(L, m, m),
        V_inv=IntMatrix._trusted(RT, n, n).T,
        diag=tuple(diag),
    )


def rank(A) -> int:
    return smith_normal_form(A).rank


def determinant(A) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = _as_matrix(A)
    n = A.rows
    if A.cols != n:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = A.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def lattice_member(b: Sequence[int], L) -> Membership:
    """Decide whether ``b`` is an integer combination of the columns of ``L``.

    A member comes back with coefficients ``x`` satisfying ``L @ x == b``.
    A lattice with no columns contains only the zero vector.
    """
    L = _as_matrix(L)
    b = tuple(operator.index(v) for v in b)
    if len(b) != L.rows:
        raise ValueError(f"vector of length {len(b)} against a lattice in Z^{L.rows}")
    x = _solve_columns(b, *hermite_normal_form(L.T))
    if x is None:
        return Membership(False)
    return Membership(True, x)


def _solve_columns(b, H, U):
    # rows of H span the column lattice of L, and H == U @ L.T
    y = [0] * H.rows
    rest = list(b)
    p = 0
    for j in range(H.cols):
        pivot_row = p < H.rows and H[p, j] != 0 and all(H[p, k] == 0 for k in range(j))
        if pivot_row:
            piv = H[p, j]
            if rest[j] % piv:
                return None
            q = rest[j] // piv
            if q:
                row = H.row(p)
                for k in range(j, H.cols):
                    rest[k] -= q * row[k]
            y[p] = q
            p += 1
        elif rest[j]:
            return None
    if any(rest):
        return None
    return U.T.apply(y)


def lattice_subset(Lsub, Lsup) -> Inclusion:
    """Decide whether the column lattice of ``Lsub`` lies inside that of ``Lsup``."""
    Lsub = _as_matrix(Lsub)
    Lsup = _as_matrix(Lsup)
    if Lsub.rows != Lsup.rows:
        raise ValueError(f"lattices live in Z^{Lsub.rows} and Z^{Lsup.rows}")
    H, U = hermite_normal_form(Lsup.T)
    coeffs = []
    for j, col in enumerate(Lsub.columns()):
        x = _solve_columns(col, H, U)
        if x is None:
            return Inclusion(False, witness=col, witness_index=j)
        coeffs.append(x)
    return Inclusion(True, tuple(coeffs))


def cokernel(A) -> FgAbGroup:
    """``Z^rows / (column span of A)`` with generators as integer vectors."""
    A = _as_matrix(A)
    snf = smith_normal_form(A)
    r = snf.rank
    free = [snf.U.column(i) for i in range(r, A.rows)]
    tors_idx = [i for i in range(r) if snf.diag[i] > 1]
    return FgAbGroup(
        free_rank=A.rows - r,
        torsion=tuple(snf.diag[i] for i in tors_idx),
        generators=tuple(free + [snf.U.column(i) for i in tors_idx]),
    )

