"""Matrices over the free algebra, with tensor-leg operations on (C^2)^n.

Index convention: a multi-index ``(i1, ..., in)`` maps to the flat index
``sum(ik * 2**(n-k))`` (row-major, leg 1 slowest).  So ``A (x) B`` has
entries ``A[i][k] * B[j][l]`` at row ``2*i + j`` and column ``2*k + l``.
"""

from __future__ import annotations

from typing import Callable, List, Sequence, Tuple

from .ncalg import ONE_ELEMENT, ZERO_ELEMENT, AlgElement, StarTable, DEFAULT_STAR, star
from .scalars import ZERO, ParamScalar, scalar

LEG_DIM = 2


class DimensionError(ValueError):
    pass


class SingularMatrixError(ZeroDivisionError):
    pass


def _elem(x) -> AlgElement:
    if isinstance(x, AlgElement):
        return x
    if isinstance(x, str):
        return AlgElement.gen(x)
    return AlgElement.const(x)


class AlgMatrix:
    """Dense rectangular matrix with AlgElement entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        rows = [tuple(_elem(x) for x in row) for row in entries]
        if not rows or any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
            raise DimensionError("matrix must be rectangular and non-empty")
        self.entries: Tuple[Tuple[AlgElement, ...], ...] = tuple(rows)
        self.rows = len(rows)
        self.cols = len(rows[0])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "AlgMatrix":
        return cls([[ZERO_ELEMENT] * (cols or rows) for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "AlgMatrix":
        return cls([[ONE_ELEMENT if i == j else ZERO_ELEMENT for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: Tuple[int, int]) -> AlgElement:
        i, j = ij
        return self.entries[i][j]

    def map(self, f: Callable[[AlgElement], AlgElement]) -> "AlgMatrix":
        return AlgMatrix([[f(x) for x in row] for row in self.entries])

    def is_scalar(self) -> bool:
        return all(x.is_scalar() for row in self.entries for x in row)

    def scalar_entries(self) -> List[List[ParamScalar]]:
        return [[x.scalar_value() for x in row] for row in self.entries]

    def __add__(self, other: "AlgMatrix") -> "AlgMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return AlgMatrix([[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self) -> "AlgMatrix":
        return self.map(lambda x: -x)

    def __sub__(self, other: "AlgMatrix") -> "AlgMatrix":
        return self + (-other)

    def scale(self, c) -> "AlgMatrix":
        c = scalar(c)
        return self.map(lambda x: x.scale(c))

    def __matmul__(self, other: "AlgMatrix") -> "AlgMatrix":
        return matmul(self, other)

    def __mul__(self, other):
        if isinstance(other, AlgMatrix):
            return matmul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def transpose(self) -> "AlgMatrix":
        return AlgMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    @property
    def T(self) -> "AlgMatrix":
        return self.transpose()

    def trace(self) -> AlgElement:
        if self.rows != self.cols:
            raise DimensionError("trace of a non-square matrix")
        out = ZERO_ELEMENT
        for i in range(self.rows):
            out = out + self.entries[i][i]
        return out

    def nonzero_positions(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(self.rows) for j in range(self.cols) if self.entries[i][j]]

    def __repr__(self) -> str:
        from .dsl import format_matrix
        return f"AlgMatrix({format_matrix(self)})"


def matrix(rows: Sequence[Sequence]) -> AlgMatrix:
    return AlgMatrix(rows)


def matmul(A: AlgMatrix, B: AlgMatrix) -> AlgMatrix:
    if A.cols != B.rows:
        raise DimensionError(f"cannot multiply {A.shape} by {B.shape}")
    out = []
    for i in range(A.rows):
        row = []
        Ai = A.entries[i]
        for j in range(B.cols):
            acc = ZERO_ELEMENT
            for k in range(A.cols):
                a = Ai[k]
                if not a:
                    continue
                b = B.entries[k][j]
                if b:
                    acc = acc + a * b
            row.append(acc)
        out.append(row)
    return AlgMatrix(out)


def matadd(A: AlgMatrix, B: AlgMatrix) -> AlgMatrix:
    return A + B


def scalar_mul(c, A: AlgMatrix) -> AlgMatrix:
    return A.scale(c)


def mat_product(*factors: AlgMatrix) -> AlgMatrix:
    out = factors[0]
    for f in factors[1:]:
        out = matmul(out, f)
    return out


def _n_legs(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 1 or 1 << n != dim:
        raise DimensionError(f"dimension {dim} is not a power of 2")
    return n


def _multi(flat: int, n: int) -> Tuple[int, ...]:
    return tuple((flat >> (n - 1 - k)) & 1 for k in range(n))


def _flat(multi: Sequence[int]) -> int:
    out = 0
    for i in multi:
        out = 2 * out + i
    return out


def leg_embed(A: AlgMatrix, n_legs: int, legs: Sequence[int]) -> AlgMatrix:
    """Act as ``A`` on the listed legs (1-based, in A's own leg order), identity elsewhere."""
    legs = tuple(legs)
    k = len(legs)
    if A.rows != A.cols or A.rows != LEG_DIM ** k:
        raise DimensionError(f"{A.shape} matrix cannot act on {k} legs")
    if len(set(legs)) != k or not all(1 <= l <= n_legs for l in legs):
        raise ValueError(f"bad leg subset {legs} for {n_legs} legs")
    others = [l for l in range(1, n_legs + 1) if l not in legs]
    N = LEG_DIM ** n_legs
    out = [[ZERO_ELEMENT] * N for _ in range(N)]
    for I in range(N):
        mi = _multi(I, n_legs)
        for J in range(N):
            mj = _multi(J, n_legs)
            if any(mi[l - 1] != mj[l - 1] for l in others):
                continue
            a = _flat([mi[l - 1] for l in legs])
            b = _flat([mj[l - 1] for l in legs])
            out[I][J] = A.entries[a][b]
    return AlgMatrix(out)


def kron(A: AlgMatrix, B: AlgMatrix) -> AlgMatrix:
    """``A (x) B``; entries are ``A_ik * B_jl`` with the A factor on the left."""
    out = []
    for i in range(A.rows):
        for j in range(B.rows):
            out.append([A.entries[i][k] * B.entries[j][l]
                        for k in range(A.cols) for l in range(B.cols)])
    return AlgMatrix(out)


def permutation_P(n_legs: int = 2, swap: Tuple[int, int] = (1, 2)) -> AlgMatrix:
    """Flip operator exchanging two legs."""
    p, q = swap
    N = LEG_DIM ** n_legs
    out = [[ZERO_ELEMENT] * N for _ in range(N)]
    for J in range(N):
        m = list(_multi(J, n_legs))
        m[p - 1], m[q - 1] = m[q - 1], m[p - 1]
        out[_flat(m)][J] = ONE_ELEMENT
    return AlgMatrix(out)


def partial_transpose(A: AlgMatrix, leg: int) -> AlgMatrix:
    if A.rows != A.cols:
        raise DimensionError("partial transpose needs a square matrix")
    n = _n_legs(A.rows)
    if not 1 <= leg <= n:
        raise ValueError(f"leg {leg} out of range")
    out = [[ZERO_ELEMENT] * A.cols for _ in range(A.rows)]
    for I in range(A.rows):
        mi = list(_multi(I, n))
        for J in range(A.cols):
            mj = list(_multi(J, n))
            mi2, mj2 = list(mi), list(mj)
            mi2[leg - 1], mj2[leg - 1] = mj[leg - 1], mi[leg - 1]
            out[_flat(mi2)][_flat(mj2)] = A.entries[I][J]
    return AlgMatrix(out)


def partial_trace(A: AlgMatrix, leg: int) -> AlgMatrix:
    if A.rows != A.cols:
        raise DimensionError("partial trace needs a square matrix")
    n = _n_legs(A.rows)
    if not 1 <= leg <= n or n < 1:
        raise ValueError(f"leg {leg} out of range")
    M = LEG_DIM ** (n - 1)
    out = [[ZERO_ELEMENT] * M for _ in range(M)]
    for I in range(M):
        ri = list(_multi(I, n - 1))
        for J in range(M):
            rj = list(_multi(J, n - 1))
            acc = ZERO_ELEMENT
            for s in range(LEG_DIM):
                fi = _flat(ri[:leg - 1] + [s] + ri[leg - 1:])
                fj = _flat(rj[:leg - 1] + [s] + rj[leg - 1:])
                acc = acc + A.entries[fi][fj]
            out[I][J] = acc
    return AlgMatrix(out)


def dagger(A: AlgMatrix, table: StarTable = DEFAULT_STAR) -> AlgMatrix:
    return AlgMatrix([[star(A.entries[i][j], table) for i in range(A.rows)] for j in range(A.cols)])


def conjugate(A: AlgMatrix, table: StarTable = DEFAULT_STAR) -> AlgMatrix:
    """Entrywise star without transposition (``M^*``)."""
    return A.map(lambda x: star(x, table))


# ---- exact linear algebra on parameter-valued matrices -------------------

def _scalar_grid(A: AlgMatrix) -> List[List[ParamScalar]]:
    if not A.is_scalar():
        raise ValueError("matrix has non-scalar entries")
    return A.scalar_entries()


def _det(m: List[List[ParamScalar]]) -> ParamScalar:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    out = ZERO
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


def determinant(A: AlgMatrix) -> ParamScalar:
    if A.rows != A.cols:
        raise DimensionError("determinant of a non-square matrix")
    return _det(_scalar_grid(A))


def adjugate(A: AlgMatrix) -> AlgMatrix:
    m = _scalar_grid(A)
    n = len(m)
    if n == 1:
        return AlgMatrix([[1]])
    adj = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            c = _det(minor)
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return AlgMatrix(adj)


def invert_numeric(A: AlgMatrix) -> AlgMatrix:
    """Exact inverse of a parameter-valued matrix via the adjugate."""
    if A.rows != A.cols:
        raise DimensionError("inverse of a non-square matrix")
    d = determinant(A)
    if not d:
        raise SingularMatrixError("matrix is singular over Q(h, r)")
    return adjugate(A).scale(d.inverse())


def rank(A: AlgMatrix) -> int:
    """Rank over the field Q(h, r), by Gaussian elimination."""
    m = [list(row) for row in _scalar_grid(A)]
    rows, cols = len(m), len(m[0])
    rk = 0
    for c in range(cols):
        piv = next((i for i in range(rk, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = m[rk][c].inverse()
        for i in range(rows):
            if i != rk and m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[rk])]
        rk += 1
    return rk


def specialize(A: AlgMatrix, h, r=0) -> AlgMatrix:
    return A.map(lambda x: x.specialize(h, r))
