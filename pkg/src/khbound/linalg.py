"""Exact integer matrices and the Cartan/Coxeter matrix algebra.

Everything here works on Python ints, so entries never overflow and no
floating point is involved.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class NotUnimodular(ValueError):
    """Raised when a matrix expected to be invertible over Z is not."""


class IntMatrix:
    """Immutable dense matrix of arbitrary-precision integers (row-major)."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
        else:
            width = ncols or 0
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntMatrix):
            return self.shape == other.shape and self._rows == other._rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"

    def __str__(self) -> str:
        if not self._rows:
            return "[]"
        width = max(len(str(x)) for r in self._rows for x in r)
        return "\n".join("[" + " ".join(str(x).rjust(width) for x in r) + "]" for r in self._rows)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(zip(*self._rows), ncols=self.nrows) if self.nrows else IntMatrix.zeros(self.ncols, 0)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        _same_shape(self, other)
        return IntMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        _same_shape(self, other)
        return IntMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * x for x in r] for r in self._rows], self.ncols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other._rows)) if other.nrows else [()] * other.ncols
        return IntMatrix(
            [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in self._rows],
            ncols=other.ncols,
        )

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product with a column vector."""
        if len(vec) != self.ncols:
            raise ValueError(f"vector of length {len(vec)} for {self.shape} matrix")
        return tuple(sum(x * y for x, y in zip(r, vec)) for r in self._rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_lower_triangular(self) -> bool:
        return all(self._rows[i][j] == 0 for i in range(self.nrows) for j in range(i + 1, self.ncols))


def _same_shape(a: IntMatrix, b: IntMatrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def determinant(a: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if not a.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = a.nrows
    if n == 0:
        return 1
    m = a.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _triangular_inverse(c: IntMatrix) -> IntMatrix:
    # lower triangular with diagonal entries +-1: forward substitution stays integral
    n = c.nrows
    inv = [[0] * n for _ in range(n)]
    for j in range(n):
        inv[j][j] = c[j, j]  # 1/(+-1) == +-1
        for i in range(j + 1, n):
            s = sum(c[i, k] * inv[k][j] for k in range(j, i))
            inv[i][j] = -s * c[i, i]
    return IntMatrix(inv, ncols=n)


def _general_inverse(c: IntMatrix) -> IntMatrix:
    n = c.nrows
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(c.rows)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    out = []
    for row in aug:
        tail = row[n:]
        if any(x.denominator != 1 for x in tail):
            raise NotUnimodular("inverse is not integral")
        out.append([int(x) for x in tail])
    return IntMatrix(out, ncols=n)


def unimodular_inverse(c: IntMatrix) -> IntMatrix:
    """Integral inverse of a square matrix with determinant +-1.

    Lower triangular inputs with unit diagonal (every Cartan matrix of an
    acyclic quiver) use forward substitution; anything else goes through
    exact rational Gauss-Jordan.
    """
    if not c.is_square():
        raise NotUnimodular(f"non-square matrix {c.shape}")
    if c.is_lower_triangular():
        if any(c[i, i] not in (1, -1) for i in range(c.nrows)):
            raise NotUnimodular("triangular matrix with a non-unit diagonal entry")
        return _triangular_inverse(c)
    det = determinant(c)
    if abs(det) != 1:
        raise NotUnimodular(f"determinant {det}")
    return _general_inverse(c)


def coxeter_phi(c: IntMatrix) -> IntMatrix:
    """Inverse Coxeter matrix -C (C^-1)^T of an algebra with Cartan matrix C."""
    return -(c @ unimodular_inverse(c).T)


def m_matrix(c: IntMatrix, d: int) -> IntMatrix:
    """(-1)^(d-1) C (C^-1)^T - I, the map whose cokernel bounds KH_{-1}."""
    if d < 2:
        raise ValueError("d must be at least 2")
    sign = -1 if d % 2 == 0 else 1
    return (c @ unimodular_inverse(c).T).scale(sign) - IntMatrix.identity(c.nrows)


def permutation_matrix(perm: Sequence[int]) -> IntMatrix:
    """Matrix P with P e_j = e_perm[j]."""
    n = len(perm)
    rows = [[0] * n for _ in range(n)]
    for j, i in enumerate(perm):
        rows[i][j] = 1
    return IntMatrix(rows, ncols=n)
