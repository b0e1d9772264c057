"""Smith normal form over Z and cokernels as finitely generated abelian groups."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .linalg import IntMatrix

INFINITE = math.inf


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SnfResult:
    """u @ m @ v == d with u, v unimodular and d in Smith form."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d[i, i] for i in range(min(self.d.shape)))


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        fs = tuple(int(f) for f in self.invariant_factors)
        if any(f <= 1 for f in fs):
            raise ValueError(f"invariant factors must exceed 1: {fs}")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise ValueError(f"invariant factors do not form a divisibility chain: {fs}")
        object.__setattr__(self, "invariant_factors", fs)

    @property
    def torsion_order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def is_cyclic(self) -> bool:
        return self.free_rank + len(self.invariant_factors) <= 1

    def __str__(self) -> str:
        parts = [f"Z/{f}" for f in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " ⊕ ".join(parts) if parts else "0"


def _pick_pivot(a, rows, cols):
    best = None
    for i in rows:
        for j in cols:
            x = a[i][j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
    return best


def smith_normal_form(m: IntMatrix) -> SnfResult:
    """Diagonalise ``m`` by unimodular row and column operations.

    The pivot is always a nonzero entry of least absolute value, ties broken
    by lowest row then lowest column, so the output is a function of the input.
    """
    n, k = m.shape
    a = m.tolist()
    u = IntMatrix.identity(n).tolist()
    v = IntMatrix.identity(k).tolist()

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for r in a:
                r[i], r[j] = r[j], r[i]
            for r in v:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    for t in range(min(n, k)):
        piv = _pick_pivot(a, range(t, n), range(t, k))
        if piv is None:
            break
        _, i, j = piv
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            for i in range(t + 1, n):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, k):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            rest = _pick_pivot(a, range(t + 1, n), [t])
            rest_c = _pick_pivot(a, [t], range(t + 1, k))
            cand = [c for c in (rest, rest_c) if c is not None]
            if cand:
                # a remainder survived: it is smaller than the pivot, promote it
                _, i, j = min(cand, key=lambda c: (c[0], c[1], c[2]))
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, k) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return SnfResult(IntMatrix(u, ncols=n), IntMatrix(a, ncols=k), IntMatrix(v, ncols=k))


def group_from_diagonal(diagonal: Sequence[int], nrows: int) -> AbelianGroup:
    nonzero = [x for x in diagonal if x]
    return AbelianGroup(nrows - len(nonzero), tuple(x for x in nonzero if x > 1))


def cokernel(m: IntMatrix) -> AbelianGroup:
    """Z^rows / m Z^cols, with ``m`` acting on column vectors."""
    return group_from_diagonal(smith_normal_form(m).diagonal, m.nrows)


def element_order(m: IntMatrix, vec: Sequence[int], snf: SnfResult | None = None):
    """Order of the class of ``vec`` in coker(m); ``INFINITE`` if it has none."""
    if len(vec) != m.nrows:
        raise DimensionMismatch(f"vector of length {len(vec)}, matrix has {m.nrows} rows")
    snf = snf or smith_normal_form(m)
    w = snf.u.apply(vec)
    diag = snf.diagonal
    order = 1
    for i, x in enumerate(w):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if x:
                return INFINITE
            continue
        order = math.lcm(order, di // math.gcd(x, di))
    return order


def is_generating_set(m: IntMatrix, vecs: Sequence[Sequence[int]]) -> bool:
    """True iff the classes of ``vecs`` generate coker(m)."""
    for vec in vecs:
        if len(vec) != m.nrows:
            raise DimensionMismatch(f"vector of length {len(vec)}, matrix has {m.nrows} rows")
    extended = IntMatrix(
        [list(row) + [vec[i] for vec in vecs] for i, row in enumerate(m.rows)],
        ncols=m.ncols + len(vecs),
    )
    return cokernel(extended).is_trivial()


def determinantal_invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    """Diagonal of the Smith form from gcds of k x k minors.

    Exponential in the matrix size; only meant to cross-check
    :func:`smith_normal_form` on small inputs.
    """
    from itertools import combinations

    from .linalg import determinant

    n, k = m.shape
    divisors = [1]
    for size in range(1, min(n, k) + 1):
        g = 0
        for rs in combinations(range(n), size):
            for cs in combinations(range(k), size):
                g = math.gcd(g, determinant(IntMatrix([[m[r, c] for c in cs] for r in rs])))
                if g == 1:
                    break
            if g == 1:
                break
        divisors.append(g)
    out = []
    for prev, cur in zip(divisors, divisors[1:]):
        out.append(cur // prev if prev else 0)
    return tuple(out)
