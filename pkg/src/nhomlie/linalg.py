"""Dense exact matrices and row reduction.

Vectors are plain tuples of scalars.  ``Matrix`` is immutable; every
operation returns a new instance.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import InputError, StructuralError


def zero_vector(n: int) -> tuple:
    return (0,) * n


def unit_vector(n: int, i: int) -> tuple:
    return tuple(1 if j == i else 0 for j in range(n))


def vadd(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def is_zero(v: Iterable) -> bool:
    return not any(v)


class Matrix:
    """An exact ``rows x cols`` matrix acting on column vectors."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(tuple(r) for r in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise InputError(f"matrix entries do not match shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [tuple(r) for r in rows]
        if not rows:
            raise InputError("from_rows needs at least one row")
        return cls(len(rows), len(rows[0]), rows)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Sequence]) -> "Matrix":
        cols = len(columns)
        return cls(rows, cols, [[columns[j][i] for j in range(cols)] for i in range(rows)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [unit_vector(n, i) for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls(n, n, [[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int) -> "Matrix":
        return cls(rows, cols, [[1 if (a, b) == (i, j) else 0 for b in range(cols)] for a in range(rows)])

    @classmethod
    def block_diag(cls, a: "Matrix", b: "Matrix") -> "Matrix":
        top = [list(r) + [0] * b.cols for r in a.entries]
        bottom = [[0] * a.cols + list(r) for r in b.entries]
        return cls(a.rows + b.rows, a.cols + b.cols, top + bottom)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def _check_same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, [vadd(a, b) for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, [vsub(a, b) for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [tuple(-x for x in r) for r in self.entries])

    def scale(self, c) -> "Matrix":
        return Matrix(self.rows, self.cols, [vscale(c, r) for r in self.entries])

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise InputError(f"cannot compose {self.shape} with {other.shape}")
            cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
            return Matrix(
                self.rows,
                other.cols,
                [[_dot(r, c) for c in cols] for r in self.entries],
            )
        v = tuple(other)
        if len(v) != self.cols:
            raise InputError(f"vector of length {len(v)} does not fit a {self.shape} matrix")
        return tuple(_dot(r, v) for r in self.entries)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def flatten(self) -> tuple:
        """Entries in row-major (lexicographic ``(row, col)``) order."""
        return tuple(x for r in self.entries for x in r)

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise StructuralError("only square matrices can be inverted")
        n = self.rows
        aug = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(self.entries)]
        red, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise StructuralError("matrix is singular")
        return Matrix(n, n, [row[n:] for row in red[:n]])

    def is_invertible(self) -> bool:
        return self.is_square and rank([list(r) for r in self.entries]) == self.rows

    def power(self, k: int) -> "Matrix":
        if not self.is_square:
            raise InputError("powers need a square matrix")
        base = self.inverse() if k < 0 else self
        result = Matrix.identity(self.rows)
        for _ in range(abs(k)):
            result = result @ base
        return result


def _dot(u, v):
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def _reciprocal(x):
    # int / int would silently produce a float
    return Fraction(1, x) if isinstance(x, int) else 1 / x


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row-echelon form by Gauss-Jordan elimination.

    Returns the reduced rows (zero rows last) and the pivot column indices.
    Pivots are chosen left to right, top to bottom, so the result is canonical.
    """
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = _reciprocal(m[r][c])
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of ``{x : A x = 0}`` read off the RREF; one vector per free column."""
    if not rows:
        return [unit_vector(ncols, j) for j in range(ncols)]
    red, pivots = rref(rows)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][f]
        basis.append(tuple(v))
    return basis


def _integer_row(row: Sequence) -> list[int]:
    den = 1
    for x in row:
        if x and isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    if den == 1:
        ints = [int(x) for x in row]
    else:
        ints = [(x.numerator * (den // x.denominator) if isinstance(x, Fraction) else x * den) if x else 0 for x in row]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g > 1 else ints


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank.

    Rational input is cleared of denominators and eliminated fraction-free
    over the integers (each new row is divided by its content to keep entries
    small).  Other field types fall back to Gauss-Jordan.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    if not all(isinstance(x, (int, Fraction)) for r in rows for x in r):
        return len(rref(rows)[1])
    m = [_integer_row(r) for r in rows]
    m = [r for r in m if any(r)]
    rk = 0
    ncols = len(rows[0])
    for c in range(ncols):
        pr = next((i for i in range(len(m)) if m[i][c]), None)
        if pr is None:
            continue
        piv = m.pop(pr)
        rk += 1
        a = piv[c]
        nxt = []
        for r in m:
            b = r[c]
            if b:
                r = [a * x - b * y for x, y in zip(r, piv)]
                g = 0
                for x in r:
                    g = gcd(g, x)
                if g == 0:
                    continue
                if g > 1:
                    r = [x // g for x in r]
            nxt.append(r)
        m = nxt
        if not m:
            break
    return rk


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    """Whether ``v`` lies in the span of ``basis`` (rank test)."""
    if not basis:
        return is_zero(v)
    return rank(list(basis) + [list(v)]) == rank(basis)
