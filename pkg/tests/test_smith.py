import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from khbound.linalg import IntMatrix, determinant, permutation_matrix
from khbound.smith import (
    INFINITE,
    AbelianGroup,
    DimensionMismatch,
    cokernel,
    determinantal_invariant_factors,
    element_order,
    is_generating_set,
    smith_normal_form,
)

THREE_DIM = IntMatrix([[0, -3], [3, -9]])


def kleinian(m):
    n = m - 1
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][0] = -1
        rows[i][i] = -2 if i == 0 else -1
        if i + 1 < n:
            rows[i][i + 1] = 1
    return IntMatrix(rows)


def check_snf(a):
    r = smith_normal_form(a)
    assert r.u @ a @ r.v == r.d
    assert abs(determinant(r.u)) == 1 and abs(determinant(r.v)) == 1
    diag = r.diagonal
    assert all(x >= 0 for x in diag)
    for i in range(r.d.nrows):
        for j in range(r.d.ncols):
            if i != j:
                assert r.d[i, j] == 0
    for x, y in zip(diag, diag[1:]):
        assert (y == 0) if x == 0 else (y % x == 0)
    return r


@pytest.mark.parametrize(
    "rows, diag",
    [
        ([[0, -3], [3, -9]], (3, 3)),
        ([[-2, 1], [-1, -1]], (1, 3)),
        ([[0, 0], [0, 0]], (0, 0)),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], (1, 1, 1)),
        ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], (2, 6, 12)),
    ],
)
def test_snf_examples(rows, diag):
    assert check_snf(IntMatrix(rows)).diagonal == diag


def test_snf_is_deterministic():
    a = IntMatrix([[4, 6, 8], [3, -5, 7], [0, 2, 2]])
    assert smith_normal_form(a) == smith_normal_form(a)


@settings(max_examples=300, deadline=None)
@given(
    st.integers(1, 6).flatmap(
        lambda n: st.integers(1, 6).flatmap(
            lambda k: st.lists(st.lists(st.integers(-30, 30), min_size=k, max_size=k), min_size=n, max_size=n)
        )
    )
)
def test_snf_against_sympy(rows):
    a = IntMatrix(rows)
    r = check_snf(a)
    ours = tuple(x for x in r.diagonal if x)
    theirs = tuple(abs(int(x)) for x in invariant_factors(sympy.Matrix(rows), domain=sympy.ZZ) if x)
    assert ours == theirs


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_snf_against_determinantal_divisors(rows):
    a = IntMatrix(rows)
    assert smith_normal_form(a).diagonal == determinantal_invariant_factors(a)


class TestCokernel:
    def test_three_dim(self):
        assert cokernel(THREE_DIM) == AbelianGroup(0, (3, 3))
        assert str(cokernel(THREE_DIM)) == "Z/3 ⊕ Z/3"

    @pytest.mark.parametrize("m", [2, 3, 4, 5, 9])
    def test_kleinian(self, m):
        assert cokernel(kleinian(m)) == AbelianGroup(0, (m,))

    def test_free(self):
        assert cokernel(IntMatrix.zeros(2, 2)) == AbelianGroup(2, ())
        assert str(cokernel(IntMatrix.zeros(2, 2))) == "Z^2"

    def test_non_square(self):
        # Z^3 / <(2,0,0), (0,4,0)> = Z/2 + Z/4 + Z
        a = IntMatrix([[2, 0], [0, 4], [0, 0]])
        assert cokernel(a) == AbelianGroup(1, (2, 4))
        assert cokernel(IntMatrix([[1, 2, 3]])) == AbelianGroup(0, ())

    def test_group_validation(self):
        with pytest.raises(ValueError):
            AbelianGroup(0, (2, 3))
        with pytest.raises(ValueError):
            AbelianGroup(0, (1, 2))
        assert AbelianGroup(0, ()).is_trivial()
        assert AbelianGroup(0, (2, 6)).torsion_order == 12
        assert str(AbelianGroup(1, (5,))) == "Z/5 ⊕ Z"

    @pytest.mark.parametrize("seed", range(20))
    def test_permutation_invariance(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 6)
        a = IntMatrix([[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)])
        p = list(range(n))
        q = list(range(n))
        rng.shuffle(p)
        rng.shuffle(q)
        assert cokernel(permutation_matrix(p) @ a @ permutation_matrix(q)) == cokernel(a)


def brute_order(a, vec, limit=200):
    """Least n with n * vec in the integer column span of a (small a only)."""
    import itertools

    lattice = set()
    cols = [a.column(j) for j in range(a.ncols)]
    rng = range(-40, 41)
    for coeffs in itertools.product(rng, repeat=len(cols)):
        lattice.add(tuple(sum(c * col[i] for c, col in zip(coeffs, cols)) for i in range(a.nrows)))
    for n in range(1, limit):
        if tuple(n * x for x in vec) in lattice:
            return n
    return INFINITE


class TestElementOrder:
    def test_kleinian_generator(self):
        assert element_order(kleinian(5), (0, 0, 0, -1)) == 5

    def test_three_dim_generators(self):
        assert element_order(THREE_DIM, (1, 0)) == 3
        assert element_order(THREE_DIM, (-1, -3)) == 3
        assert brute_order(THREE_DIM, (1, 0)) == 3
        assert brute_order(THREE_DIM, (-1, -3)) == 3

    def test_image_is_trivial(self):
        a = IntMatrix([[4, 1], [2, 7]])
        assert element_order(a, a.column(0)) == 1

    def test_infinite(self):
        assert element_order(IntMatrix([[2], [0]]), (0, 1)) == INFINITE
        assert element_order(IntMatrix([[2], [0]]), (1, 0)) == 2

    def test_mismatch(self):
        with pytest.raises(DimensionMismatch):
            element_order(THREE_DIM, (1, 0, 0))
        with pytest.raises(DimensionMismatch):
            is_generating_set(THREE_DIM, [(1,)])

    @pytest.mark.parametrize("vec", [(1, 0), (0, 1), (2, 1), (1, 1), (3, 0), (0, 0)])
    def test_brute_force(self, vec):
        assert element_order(THREE_DIM, vec) == brute_order(THREE_DIM, vec)


def brute_generates(a, vecs, span=6):
    """Do the columns of a plus vecs reach every unit vector with small coefficients?"""
    import itertools

    gens = [a.column(j) for j in range(a.ncols)] + [tuple(v) for v in vecs]
    reached = set()
    for coeffs in itertools.product(range(-span, span + 1), repeat=len(gens)):
        reached.add(tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(a.nrows)))
    units = [tuple(int(i == j) for i in range(a.nrows)) for j in range(a.nrows)]
    return all(u in reached for u in units)


class TestGenerating:
    def test_three_dim(self):
        # the column lattice is 3Z x 3Z, so (-1, -3) = 2 * (1, 0) in the cokernel
        assert not is_generating_set(THREE_DIM, [(1, 0), (-1, -3)])
        assert not brute_generates(THREE_DIM, [(1, 0), (-1, -3)])
        assert is_generating_set(THREE_DIM, [(1, 0), (0, 1)])
        assert brute_generates(THREE_DIM, [(1, 0), (0, 1)])
        assert is_generating_set(THREE_DIM, [(1, 0), (-1, -2)])
        assert not is_generating_set(THREE_DIM, [(1, 0)])
        assert not is_generating_set(THREE_DIM, [(1, 0), (2, 0)])

    def test_kleinian(self):
        assert is_generating_set(kleinian(4), [(0, 0, -1)])

    def test_empty(self):
        assert is_generating_set(IntMatrix.identity(3), [])
        assert not is_generating_set(THREE_DIM, [])
