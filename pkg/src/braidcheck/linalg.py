"""Dense exact linear algebra over Q and Q(zeta_n).

Entries are mpq/int/Cyclo scalars (see cyclotomic).  Rank and determinant use
fraction-free Bareiss elimination; kernel, inverse and solve use exact
Gauss-Jordan.  Both are exact; the choice is internal and does not affect
results.
"""

from __future__ import annotations

from gmpy2 import mpq

from .cyclotomic import sc_inv
from .errors import DimensionMismatch, SingularError

_ZERO = mpq(0)
_ONE = mpq(1)


class Matrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[_ZERO] * cols for _ in range(rows)]
        else:
            # ints are promoted to mpq so that elimination never hits
            # Python's float-producing int division
            self.data = [
                [mpq(v) if isinstance(v, int) else v for v in r] for r in data
            ]
            if len(self.data) != rows or any(len(r) != cols for r in self.data):
                raise DimensionMismatch(f"expected {rows}x{cols} data")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def identity(n):
        m = Matrix(n, n)
        for i in range(n):
            m.data[i][i] = _ONE
        return m

    @staticmethod
    def zeros(rows, cols):
        return Matrix(rows, cols)

    @staticmethod
    def from_rows(rows_list):
        r = len(rows_list)
        c = len(rows_list[0]) if r else 0
        return Matrix(r, c, rows_list)

    @staticmethod
    def column(entries):
        return Matrix(len(entries), 1, [[e] for e in entries])

    def copy(self):
        return Matrix(self.rows, self.cols, self.data)

    # -- basics -----------------------------------------------------------

    def __getitem__(self, rc):
        return self.data[rc[0]][rc[1]]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(
            self.data[i][j] == other.data[i][j]
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("addition shape mismatch")
        return Matrix(
            self.rows,
            self.cols,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
        )

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("subtraction shape mismatch")
        return Matrix(
            self.rows,
            self.cols,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
        )

    def scale(self, s):
        return Matrix(self.rows, self.cols, [[s * v for v in r] for r in self.data])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = Matrix(self.rows, other.cols)
        od = out.data
        bd = other.data
        for i, row in enumerate(self.data):
            oi = od[i]
            for k, a in enumerate(row):
                if not a:
                    continue
                bk = bd[k]
                for j, b in enumerate(bk):
                    if b:
                        oi[j] = oi[j] + a * b
        return out

    __mul__ = __matmul__

    def transpose(self):
        return Matrix(self.cols, self.rows, [list(c) for c in zip(*self.data)]) if self.rows else Matrix(self.cols, 0)

    def kron(self, other):
        out = Matrix(self.rows * other.rows, self.cols * other.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.data[i][j]
                if not a:
                    continue
                for k in range(other.rows):
                    for l in range(other.cols):
                        b = other.data[k][l]
                        if b:
                            out.data[i * other.rows + k][j * other.cols + l] = a * b
        return out

    def is_zero(self):
        return all(not v for r in self.data for v in r)

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionMismatch("hstack shape mismatch")
        return Matrix(
            self.rows,
            self.cols + other.cols,
            [ra + rb for ra, rb in zip(self.data, other.data)],
        )

    def submatrix(self, row_idx, col_idx):
        return Matrix(
            len(row_idx),
            len(col_idx),
            [[self.data[i][j] for j in col_idx] for i in row_idx],
        )

    # -- elimination -------------------------------------------------------

    def rank(self):
        """Exact rank via fraction-free (Bareiss-style) elimination."""
        m = [row[:] for row in self.data]
        rows, cols = self.rows, self.cols
        prev = _ONE
        pr = 0
        for pc in range(cols):
            if pr >= rows:
                break
            pivot_row = None
            for r in range(pr, rows):
                if m[r][pc]:
                    pivot_row = r
                    break
            if pivot_row is None:
                continue
            if pivot_row != pr:
                m[pr], m[pivot_row] = m[pivot_row], m[pr]
            piv = m[pr][pc]
            mp = m[pr]
            for r in range(pr + 1, rows):
                mr = m[r]
                f = mr[pc]
                for c in range(pc + 1, cols):
                    mr[c] = (piv * mr[c] - f * mp[c]) / prev
                mr[pc] = _ZERO
            prev = piv
            pr += 1
        return pr

    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot column list)."""
        m = [row[:] for row in self.data]
        rows, cols = self.rows, self.cols
        pivots = []
        pr = 0
        for pc in range(cols):
            if pr >= rows:
                break
            pivot_row = None
            for r in range(pr, rows):
                if m[r][pc]:
                    pivot_row = r
                    break
            if pivot_row is None:
                continue
            if pivot_row != pr:
                m[pr], m[pivot_row] = m[pivot_row], m[pr]
            inv = sc_inv(m[pr][pc])
            m[pr] = [inv * v for v in m[pr]]
            for r in range(rows):
                if r != pr and m[r][pc]:
                    f = m[r][pc]
                    mp = m[pr]
                    mr = m[r]
                    for c in range(pc, cols):
                        mr[c] = mr[c] - f * mp[c]
            pivots.append(pc)
            pr += 1
        return Matrix(rows, cols, m), pivots

    def kernel_basis(self):
        """Basis of the right null space, as a (cols x nullity) matrix."""
        R, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        out = Matrix(self.cols, len(free))
        for k, fc in enumerate(free):
            out.data[fc][k] = _ONE
            for r, pc in enumerate(pivots):
                v = R.data[r][fc]
                if v:
                    out.data[pc][k] = -v
        return out

    def inverse(self):
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = self.hstack(Matrix.identity(n))
        R, pivots = aug.rref()
        if len(pivots) < n or pivots[:n] != list(range(n)):
            rank = sum(1 for p in pivots if p < n)
            raise SingularError(rank, n)
        return Matrix(n, n, [row[n:] for row in R.data])

    def solve_right(self, rhs):
        """Solve self @ X = rhs exactly; raises SingularError on rank deficiency
        or inconsistency (rank certificate attached)."""
        if rhs.rows != self.rows:
            raise DimensionMismatch("solve shape mismatch")
        aug = self.hstack(rhs)
        R, pivots = aug.rref()
        rank = sum(1 for p in pivots if p < self.cols)
        if any(p >= self.cols for p in pivots):
            raise SingularError(rank, self.cols)
        X = Matrix(self.cols, rhs.cols)
        for r, pc in enumerate(pivots):
            for j in range(rhs.cols):
                X.data[pc][j] = R.data[r][self.cols + j]
        # verify when underdetermined (free variables default to zero)
        if rank < self.cols and not (self @ X) == rhs:
            raise SingularError(rank, self.cols)
        return X

    def det(self):
        """Determinant via fraction-free elimination."""
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.rows
        m = [row[:] for row in self.data]
        prev = _ONE
        sign = 1
        for k in range(n):
            pivot_row = None
            for r in range(k, n):
                if m[r][k]:
                    pivot_row = r
                    break
            if pivot_row is None:
                return _ZERO
            if pivot_row != k:
                m[k], m[pivot_row] = m[pivot_row], m[k]
                sign = -sign
            piv = m[k][k]
            for r in range(k + 1, n):
                mr = m[r]
                mk = m[k]
                f = mr[k]
                for c in range(k + 1, n):
                    mr[c] = (piv * mr[c] - f * mk[c]) / prev
                mr[k] = _ZERO
            prev = piv
        d = m[n - 1][n - 1]
        return d if sign > 0 else -d

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


def mat_rank(m: Matrix) -> int:
    return m.rank()


def mat_inverse(m: Matrix) -> Matrix:
    return m.inverse()
