"""
Exact rational matrices on top of sympy's DomainMatrix over QQ.

Zero-sized shapes are common here (a vertex with dimension 0), so every helper
handles them explicitly instead of relying on the dense backend for them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Matrix = DomainMatrix
Rational = int | Fraction


def _qq(x) -> object:
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, int):
        return QQ(x)
    if QQ.of_type(x):
        return x
    return QQ(int(x))


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def qmat(rows: Iterable[Sequence[Rational]], nrows: int | None = None, ncols: int | None = None) -> DomainMatrix:
    data = [[_qq(v) for v in row] for row in rows]
    m = len(data) if nrows is None else nrows
    n = ncols if ncols is not None else (len(data[0]) if data else 0)
    if m == 0 or n == 0:
        return zeros(m, n)
    if len(data) != m or any(len(r) != n for r in data):
        raise ValueError(f"Ragged rows for a {m}x{n} matrix")
    return DomainMatrix(data, (m, n), QQ)


def zeros(m: int, n: int) -> DomainMatrix:
    return DomainMatrix([[QQ(0)] * n for _ in range(m)], (m, n), QQ)


def identity(n: int) -> DomainMatrix:
    return qmat([[1 if i == j else 0 for j in range(n)] for i in range(n)], n, n)


def rows(a: DomainMatrix) -> list[list[Fraction]]:
    m, n = a.shape
    if m == 0:
        return []
    if n == 0:
        return [[] for _ in range(m)]
    return [[_frac(v) for v in row] for row in a.to_list()]


def entry(a: DomainMatrix, i: int, j: int) -> Fraction:
    return rows(a)[i][j]


def is_zero(a: DomainMatrix) -> bool:
    return all(v == 0 for row in rows(a) for v in row)


def equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    return a.shape == b.shape and rows(a) == rows(b)


def mul(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"Cannot multiply {a.shape} by {b.shape}")
    if 0 in (a.shape[0], a.shape[1], b.shape[1]):
        return zeros(a.shape[0], b.shape[1])
    return a.matmul(b)


def transpose(a: DomainMatrix) -> DomainMatrix:
    m, n = a.shape
    if 0 in a.shape:
        return zeros(n, m)
    return a.transpose().to_dense()


def hstack(blocks: Sequence[DomainMatrix], nrows: int) -> DomainMatrix:
    for b in blocks:
        if b.shape[0] != nrows:
            raise ValueError(f"Block with {b.shape[0]} rows in a {nrows}-row stack")
    filled = [b for b in blocks if b.shape[1]]
    if nrows == 0 or not filled:
        return zeros(nrows, sum(b.shape[1] for b in blocks))
    if len(filled) == 1:
        return filled[0]
    return filled[0].hstack(*filled[1:]).to_dense()


def vstack(blocks: Sequence[DomainMatrix], ncols: int) -> DomainMatrix:
    for b in blocks:
        if b.shape[1] != ncols:
            raise ValueError(f"Block with {b.shape[1]} columns in a {ncols}-column stack")
    filled = [b for b in blocks if b.shape[0]]
    if ncols == 0 or not filled:
        return zeros(sum(b.shape[0] for b in blocks), ncols)
    if len(filled) == 1:
        return filled[0]
    return filled[0].vstack(*filled[1:]).to_dense()


def block(grid: Sequence[Sequence[DomainMatrix]], row_sizes: Sequence[int], col_sizes: Sequence[int]) -> DomainMatrix:
    return vstack([hstack(list(line), r) for line, r in zip(grid, row_sizes)], sum(col_sizes))


def select_rows(a: DomainMatrix, idx: Sequence[int]) -> DomainMatrix:
    if not idx or a.shape[1] == 0:
        return zeros(len(idx), a.shape[1])
    return a.extract(list(idx), list(range(a.shape[1]))).to_dense()


def select_cols(a: DomainMatrix, idx: Sequence[int]) -> DomainMatrix:
    if not idx or a.shape[0] == 0:
        return zeros(a.shape[0], len(idx))
    return a.extract(list(range(a.shape[0])), list(idx)).to_dense()


def rref(a: DomainMatrix) -> tuple[DomainMatrix, tuple[int, ...]]:
    if 0 in a.shape:
        return a, ()
    r, pivots = a.rref()
    return r, tuple(pivots)


def rank(a: DomainMatrix) -> int:
    if 0 in a.shape:
        return 0
    return len(rref(a)[1])


def kernel(a: DomainMatrix) -> DomainMatrix:
    """Columns form a basis of {v : a v = 0}."""
    m, n = a.shape
    if n == 0:
        return zeros(0, 0)
    if m == 0:
        return identity(n)
    basis = a.nullspace()
    if basis.shape[0] == 0:
        return zeros(n, 0)
    return basis.transpose().to_dense()


def column_basis(a: DomainMatrix) -> DomainMatrix:
    """Pivot columns of a: a basis of its column space."""
    if 0 in a.shape:
        return zeros(a.shape[0], 0)
    return select_cols(a, rref(a)[1])


def complement(a: DomainMatrix) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    Pivot columns of a and standard basis indices completing them to a basis.

    Both index tuples come from the echelon form of [a | I], so the choice is
    deterministic.
    """
    m, k = a.shape
    if m == 0:
        return (), ()
    _, pivots = rref(hstack([a, identity(m)], m))
    own = tuple(p for p in pivots if p < k)
    extra = tuple(p - k for p in pivots if p >= k)
    return own, extra


def inverse(a: DomainMatrix) -> DomainMatrix:
    m, n = a.shape
    if m != n:
        raise ValueError(f"Cannot invert a {m}x{n} matrix")
    if m == 0:
        return a
    return a.inv()


def flatten(a: DomainMatrix) -> list[Fraction]:
    return [v for row in rows(a) for v in row]


def reshape(values: Sequence[Rational], m: int, n: int) -> DomainMatrix:
    return qmat([[values[i * n + j] for j in range(n)] for i in range(m)], m, n)


def format_matrix(a: DomainMatrix) -> str:
    return "; ".join(" ".join(str(v) for v in row) for row in rows(a))
