"""Exact rational dense linear algebra: matrices, rank-3 tensors, products.

Scalars are `fractions.Fraction`; every operation here is exact and no
tolerance parameter exists anywhere in the package.  Dimensions in this
problem domain are tiny (graded components of dimension 0..6), so storage
is dense and the algorithms are the straightforward cubic ones.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatch, SingularMatrix

Scalar = Fraction
Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

_SCALAR_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def scalar_from_string(text: str) -> Fraction:
    """Parse a scalar literal, either "p" or "p/q" in decimal digits."""
    if not isinstance(text, str) or not _SCALAR_RE.match(text.strip()):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text.strip())


def format_scalar(value: Fraction) -> str:
    return str(value)


def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def basis_vector(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vector_add(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vector_scale(c: Fraction, u: Vector) -> Vector:
    return tuple(c * a for a in u)


def dot(u: Vector, v: Vector) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths differ: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), ZERO)


class Matrix:
    """Dense matrix of exact rationals, immutable after construction."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence]):
        if rows < 0 or cols < 0:
            raise DimensionMismatch("matrix dimensions must be non-negative")
        grid = tuple(tuple(Fraction(x) for x in row) for row in data)
        if len(grid) != rows or any(len(row) != cols for row in grid):
            raise DimensionMismatch(f"expected a {rows}x{cols} entry grid")
        self.rows = rows
        self.cols = cols
        self.data = grid

    @classmethod
    def _wrap(cls, rows: int, cols: int, data: tuple) -> "Matrix":
        # Internal fast path: data must already be a tuple grid of Fractions.
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m.data = data
        return m

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> "Matrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, data)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._wrap(
            n, n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._wrap(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def column(cls, values: Iterable) -> "Matrix":
        vec = as_vector(values)
        return cls._wrap(len(vec), 1, tuple((v,) for v in vec))

    @classmethod
    def row(cls, values: Iterable) -> "Matrix":
        vec = as_vector(values)
        return cls._wrap(1, len(vec), (vec,))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, {self.data!r})"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        odata = other.data
        out = []
        for arow in self.data:
            row = [ZERO] * other.cols
            for k, aik in enumerate(arow):
                if aik:
                    brow = odata[k]
                    for j, bkj in enumerate(brow):
                        if bkj:
                            row[j] += aik * bkj
            out.append(tuple(row))
        return Matrix._wrap(self.rows, other.cols, tuple(out))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch("matrix shapes differ")
        return Matrix._wrap(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.data, other.data)
            ),
        )

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        return Matrix._wrap(
            self.rows, self.cols, tuple(tuple(c * x for x in row) for row in self.data)
        )

    def transpose(self) -> "Matrix":
        return Matrix._wrap(
            self.cols, self.rows, tuple(tuple(row[i] for row in self.data) for i in range(self.cols))
        )

    def kron(self, other: "Matrix") -> "Matrix":
        # Left factor is the most significant index of the product.
        rows = self.rows * other.rows
        cols = self.cols * other.cols
        out = []
        for arow in self.data:
            for brow in other.data:
                row = []
                for a in arow:
                    if a:
                        row.extend(a * b for b in brow)
                    else:
                        row.extend(ZERO for _ in brow)
                out.append(tuple(row))
        return Matrix._wrap(rows, cols, tuple(out))

    def apply(self, vec: Vector) -> Vector:
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        return tuple(
            sum((row[j] * vec[j] for j in range(self.cols) if vec[j]), ZERO)
            for row in self.data
        )

    def column_vector(self, j: int) -> Vector:
        return tuple(row[j] for row in self.data)

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.rows
        work = [list(row) for row in self.data]
        result = ONE
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col]), None)
            if pivot is None:
                return ZERO
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                result = -result
            p = work[col][col]
            result *= p
            for r in range(col + 1, n):
                f = work[r][col] / p
                if f:
                    work[r] = [x - f * y for x, y in zip(work[r], work[col])]
        return result

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        work = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(self.data)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col]), None)
            if pivot is None:
                raise SingularMatrix(f"matrix of size {n} has zero determinant")
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
            p = work[col][col]
            if p != ONE:
                work[col] = [x / p for x in work[col]]
            prow = work[col]
            for r in range(n):
                if r != col and work[r][col]:
                    f = work[r][col]
                    work[r] = [x - f * y for x, y in zip(work[r], prow)]
        return Matrix._wrap(n, n, tuple(tuple(row[n:]) for row in work))


def mat_inverse(m: Matrix) -> Matrix:
    """Exact inverse; raises SingularMatrix when the determinant vanishes."""
    return m.inverse()


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product with the left factor as the most significant index."""
    return a.kron(b)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns (least-index pivots)."""
    work = [list(row) for row in m.data]
    pivots: list[int] = []
    r = 0
    for col in range(m.cols):
        if r == m.rows:
            break
        pivot = next((i for i in range(r, m.rows) if work[i][col]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        p = work[r][col]
        if p != ONE:
            work[r] = [x / p for x in work[r]]
        prow = work[r]
        for i in range(m.rows):
            if i != r and work[i][col]:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], prow)]
        pivots.append(col)
        r += 1
    return Matrix._wrap(m.rows, m.cols, tuple(tuple(row) for row in work)), tuple(pivots)


class Tensor3:
    """Dense rank-3 tensor of exact rationals indexed (i, j, k)."""

    __slots__ = ("dim0", "dim1", "dim2", "data")

    def __init__(self, dim0: int, dim1: int, dim2: int, data: Sequence):
        grid = tuple(tuple(tuple(Fraction(x) for x in row) for row in plane) for plane in data)
        if (
            len(grid) != dim0
            or any(len(plane) != dim1 for plane in grid)
            or any(len(row) != dim2 for plane in grid for row in plane)
        ):
            raise DimensionMismatch(f"expected a {dim0}x{dim1}x{dim2} entry grid")
        self.dim0 = dim0
        self.dim1 = dim1
        self.dim2 = dim2
        self.data = grid

    @classmethod
    def _wrap(cls, dim0: int, dim1: int, dim2: int, data: tuple) -> "Tensor3":
        t = object.__new__(cls)
        t.dim0 = dim0
        t.dim1 = dim1
        t.dim2 = dim2
        t.data = data
        return t

    @classmethod
    def zeros(cls, dim0: int, dim1: int, dim2: int) -> "Tensor3":
        return cls._wrap(
            dim0, dim1, dim2, tuple(tuple((ZERO,) * dim2 for _ in range(dim1)) for _ in range(dim0))
        )

    @classmethod
    def from_entries(cls, dim0: int, dim1: int, dim2: int, entries: dict) -> "Tensor3":
        grid = [[[ZERO] * dim2 for _ in range(dim1)] for _ in range(dim0)]
        for (i, j, k), value in entries.items():
            grid[i][j][k] = Fraction(value)
        return cls._wrap(
            dim0, dim1, dim2, tuple(tuple(tuple(row) for row in plane) for plane in grid)
        )

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.dim0, self.dim1, self.dim2)

    def __getitem__(self, index: tuple[int, int, int]) -> Fraction:
        i, j, k = index
        return self.data[i][j][k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.dims == other.dims and self.data == other.data

    def __repr__(self) -> str:
        return f"Tensor3({self.dim0}x{self.dim1}x{self.dim2})"


def contract(tensor: Tensor3, axis: int, operand: Union[Matrix, Sequence]) -> Union[Matrix, Tensor3]:
    """Contract one tensor axis against a vector or a matrix.

    A vector removes the axis and returns the matrix over the two remaining
    axes in index order.  A matrix (contracted against its row index)
    replaces the axis size by the matrix's column count.
    """
    if axis not in (0, 1, 2):
        raise DimensionMismatch(f"axis must be 0, 1 or 2, got {axis}")
    dims = tensor.dims
    data = tensor.data
    if isinstance(operand, Matrix):
        if operand.rows != dims[axis]:
            raise DimensionMismatch(
                f"axis {axis} has size {dims[axis]} but matrix has {operand.rows} rows"
            )
        c = operand.cols
        if axis == 0:
            out = tuple(
                tuple(
                    tuple(
                        sum((data[b][j][k] * operand.data[b][a] for b in range(dims[0])), ZERO)
                        for k in range(dims[2])
                    )
                    for j in range(dims[1])
                )
                for a in range(c)
            )
            return Tensor3._wrap(c, dims[1], dims[2], out)
        if axis == 1:
            out = tuple(
                tuple(
                    tuple(
                        sum((data[i][b][k] * operand.data[b][a] for b in range(dims[1])), ZERO)
                        for k in range(dims[2])
                    )
                    for a in range(c)
                )
                for i in range(dims[0])
            )
            return Tensor3._wrap(dims[0], c, dims[2], out)
        out = tuple(
            tuple(
                tuple(
                    sum((data[i][j][b] * operand.data[b][a] for b in range(dims[2])), ZERO)
                    for a in range(c)
                )
                for j in range(dims[1])
            )
            for i in range(dims[0])
        )
        return Tensor3._wrap(dims[0], dims[1], c, out)

    vec = as_vector(operand)
    if len(vec) != dims[axis]:
        raise DimensionMismatch(
            f"axis {axis} has size {dims[axis]} but vector has length {len(vec)}"
        )
    if axis == 0:
        grid = tuple(
            tuple(
                sum((vec[i] * data[i][j][k] for i in range(dims[0])), ZERO)
                for k in range(dims[2])
            )
            for j in range(dims[1])
        )
        return Matrix._wrap(dims[1], dims[2], grid)
    if axis == 1:
        grid = tuple(
            tuple(
                sum((vec[j] * data[i][j][k] for j in range(dims[1])), ZERO)
                for k in range(dims[2])
            )
            for i in range(dims[0])
        )
        return Matrix._wrap(dims[0], dims[2], grid)
    grid = tuple(
        tuple(
            sum((vec[k] * data[i][j][k] for k in range(dims[2])), ZERO)
            for j in range(dims[1])
        )
        for i in range(dims[0])
    )
    return Matrix._wrap(dims[0], dims[1], grid)


def format_matrix(m: Matrix) -> list[str]:
    """Aligned row strings for terminal output."""
    if m.rows == 0 or m.cols == 0:
        return [f"[ ] ({m.rows}x{m.cols})"]
    cells = [[format_scalar(x) for x in row] for row in m.data]
    widths = [max(len(cells[i][j]) for i in range(m.rows)) for j in range(m.cols)]
    return [
        "[ " + "  ".join(cell.rjust(w) for cell, w in zip(row, widths)) + " ]" for row in cells
    ]


def matrix_literal(m: Matrix) -> str:
    """Compact single-line matrix form used in witnesses."""
    return "[" + ", ".join("[" + ", ".join(format_scalar(x) for x in row) + "]" for row in m.data) + "]"


def vector_literal(v: Vector) -> str:
    return "(" + ", ".join(format_scalar(x) for x in v) + ")"
