"""Field-generic exact linear algebra.

Gaussian elimination with first-nonzero pivoting; no pivot heuristics are
needed because every entry is an exact field element.
"""

from __future__ import annotations

from .errors import DependenceError, DimensionError, FieldMismatchError, SingularMapError


class Matrix:
    """A dense row-major matrix over one exact field. Immutable."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, data, cols: int | None = None):
        rows = tuple(tuple(field.of(x) for x in row) for row in data)
        self.field = field
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else (cols or 0)
        for row in rows:
            if len(row) != self.cols:
                raise DimensionError("ragged rows in matrix literal")
        self.data = rows

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, field, entries) -> "Matrix":
        return cls(field, [[x] for x in entries])

    @classmethod
    def from_columns(cls, field, columns, rows: int | None = None) -> "Matrix":
        cols = [list(c) for c in columns]
        if rows is None:
            if not cols:
                raise DimensionError("from_columns needs an explicit row count when empty")
            rows = len(cols[0])
        for c in cols:
            if len(c) != rows:
                raise DimensionError("columns of unequal length")
        return cls(field, [[cols[j][i] for j in range(len(cols))] for i in range(rows)])

    # -- helpers ------------------------------------------------------

    def _coerce(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")

    def row(self, i: int) -> tuple:
        return self.data[i]

    def col(self, j: int) -> tuple:
        return tuple(self.data[i][j] for i in range(self.rows))

    def vector(self) -> tuple:
        """Entries of a single-column matrix as a flat tuple."""
        if self.cols != 1:
            raise DimensionError(f"not a column vector: {self.rows}x{self.cols}")
        return tuple(self.data[i][0] for i in range(self.rows))

    def entry(self, i: int, j: int):
        return self.data[i][j]

    def is_zero(self) -> bool:
        return not any(any(x for x in row) for row in self.data)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._coerce(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in addition")
        return Matrix(
            self.field,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ],
            cols=self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._coerce(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in subtraction")
        return Matrix(
            self.field,
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ],
            cols=self.cols,
        )

    def scale(self, scalar) -> "Matrix":
        s = self.field.of(scalar)
        return Matrix(self.field, [[s * x for x in row] for row in self.data], cols=self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [[-x for x in row] for row in self.data], cols=self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._coerce(other)
        if self.cols != other.rows:
            raise DimensionError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        z = self.field.zero
        out = []
        for i in range(self.rows):
            ri = self.data[i]
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = ri[k]
                    if a:
                        acc = acc + a * other.data[k][j]
                row.append(acc)
            out.append(row)
        return Matrix(self.field, out, cols=other.cols)

    def apply(self, vec) -> tuple:
        """Matrix-vector product on a flat tuple."""
        if len(vec) != self.cols:
            raise DimensionError(f"vector of length {len(vec)} for {self.cols} columns")
        z = self.field.zero
        out = []
        for i in range(self.rows):
            acc = z
            ri = self.data[i]
            for k, v in enumerate(vec):
                if v:
                    acc = acc + ri[k] * v
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.cols == self.cols
            and other.data == self.data
        )

    def __hash__(self):
        return hash((self.field, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(
            " ".join(self.field.fmt(x) for x in row) for row in self.data
        )
        return f"Matrix({self.rows}x{self.cols}: {body})"


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row-echelon form and the tuple of pivot columns."""
    field = m.field
    data = [list(row) for row in m.data]
    pivots = []
    r = 0
    for c in range(m.cols):
        pivot_row = None
        for i in range(r, m.rows):
            if data[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        data[r], data[pivot_row] = data[pivot_row], data[r]
        inv = field.inv(data[r][c])
        data[r] = [inv * x for x in data[r]]
        for i in range(m.rows):
            if i != r and data[i][c]:
                f = data[i][c]
                data[i] = [x - f * y for x, y in zip(data[i], data[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return (Matrix(field, data, cols=m.cols) if m.rows else m), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix) -> list[Matrix]:
    """Basis of {v : Mv = 0} as column vectors; size cols - rank."""
    field = m.field
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero] * m.cols
        v[fc] = field.one
        for row_idx, pc in enumerate(pivots):
            v[pc] = -reduced.data[row_idx][fc]
        basis.append(Matrix.column(field, v))
    return basis


def solve(m: Matrix, b: Matrix) -> Matrix | None:
    """Some particular solution of Mv = b, or None when inconsistent."""
    if b.rows != m.rows or b.cols != 1:
        raise DimensionError(f"right-hand side must be {m.rows}x1, got {b.rows}x{b.cols}")
    m._coerce(b)
    field = m.field
    aug = Matrix(
        field,
        [list(m.data[i]) + [b.data[i][0]] for i in range(m.rows)],
    )
    reduced, pivots = rref(aug)
    if m.cols in pivots:
        return None
    v = [field.zero] * m.cols
    for row_idx, pc in enumerate(pivots):
        v[pc] = reduced.data[row_idx][m.cols]
    return Matrix.column(field, v)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionError("only square matrices invert")
    field = m.field
    n = m.rows
    ident = Matrix.identity(field, n)
    aug = Matrix(
        field,
        [list(m.data[i]) + list(ident.data[i]) for i in range(n)],
    )
    reduced, pivots = rref(aug)
    if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
        raise SingularMapError("matrix is singular")
    return Matrix(field, [list(reduced.data[i][n:]) for i in range(n)])


def extend_to_basis(vectors: list[Matrix], ambient_dim: int, field=None) -> list[Matrix]:
    """Extend independent column vectors to a full basis of the ambient space.

    The inputs come first, followed by standard-basis vectors chosen greedily
    by lowest index.  Dependent input raises DependenceError naming the first
    redundant vector.
    """
    if field is None:
        if not vectors:
            raise DimensionError("empty input needs an explicit field")
        field = vectors[0].field
    cols = []
    for idx, v in enumerate(vectors):
        if v.rows != ambient_dim or v.cols != 1:
            raise DimensionError(f"vector {idx} is not {ambient_dim}x1")
        if v.field != field:
            raise FieldMismatchError("mixed fields in basis extension")
        cols.append(v.vector())
        if len(rref(Matrix.from_columns(field, cols, ambient_dim))[1]) != len(cols):
            raise DependenceError(idx)
    result = list(vectors)
    current_rank = len(cols)
    for j in range(ambient_dim):
        if current_rank == ambient_dim:
            break
        e = [field.zero] * ambient_dim
        e[j] = field.one
        trial = cols + [tuple(e)]
        if len(rref(Matrix.from_columns(field, trial, ambient_dim))[1]) == len(trial):
            cols = trial
            result.append(Matrix.column(field, e))
            current_rank += 1
    return result
