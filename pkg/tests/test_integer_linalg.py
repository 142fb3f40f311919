"""Exact integer matrix routines: HNF, SNF, kernels, lattice comparison.

Randomized checks are seeded; invariant factors are cross-checked with
the gcd-of-minors oracle computed independently in this file.
"""

import itertools
import math
import random

import pytest

from arcring.integer_linalg import (
    IntMatrix,
    determinant,
    hermite_normal_form,
    in_column_span,
    invariant_factors,
    is_unimodular,
    kernel_basis,
    lattice_equal,
    rank,
    smith_normal_form,
    solve_in_column_span,
)


def random_matrix(rng, rows, cols, bound=6):
    return IntMatrix(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]
    )


def minors_gcd_invariant_factors(M):
    """Oracle: d_k = gcd of all k x k minors, factors are d_k / d_(k-1)."""

    def minor_det(rows, cols):
        sub = IntMatrix([[M.data[r][c] for c in cols] for r in rows])
        return determinant(sub)

    factors = []
    prev = 1
    for k in range(1, min(M.rows, M.cols) + 1):
        g = 0
        for rows in itertools.combinations(range(M.rows), k):
            for cols in itertools.combinations(range(M.cols), k):
                g = math.gcd(g, minor_det(rows, cols))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


def test_constructor_and_shape():
    m = IntMatrix([[1, 2], [3, 4]])
    assert m.shape == (2, 2)
    assert m.column(1) == [2, 4]
    assert m.transpose().data == [[1, 3], [2, 4]]
    with pytest.raises(ValueError):
        IntMatrix([[1, 2], [3]])
    empty = IntMatrix([], cols=3)
    assert empty.shape == (0, 3)


def test_matmul():
    a = IntMatrix([[1, 2], [3, 4]])
    b = IntMatrix([[0, 1], [1, 0]])
    assert (a @ b).data == [[2, 1], [4, 3]]
    assert a.mul_vector([1, 1]) == [3, 7]
    with pytest.raises(ValueError):
        a @ IntMatrix([[1, 2, 3]])


def test_determinant_examples():
    assert determinant(IntMatrix([[2, 0], [0, 3]])) == 6
    assert determinant(IntMatrix([[1, 2], [3, 4]])) == -2
    assert determinant(IntMatrix.identity(4)) == 1
    assert determinant(IntMatrix.zeros(3, 3)) == 0
    with pytest.raises(ValueError):
        determinant(IntMatrix([[1, 2, 3]]))


def test_determinant_multiplicative():
    rng = random.Random(1)
    for _ in range(25):
        a = random_matrix(rng, 4, 4)
        b = random_matrix(rng, 4, 4)
        assert determinant(a @ b) == determinant(a) * determinant(b)


def test_hermite_normal_form_properties():
    rng = random.Random(2)
    for trial in range(30):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = random_matrix(rng, rows, cols)
        h, u = hermite_normal_form(m)
        assert is_unimodular(u)
        assert (u @ m).data == h.data
        # row echelon with positive pivots and reduced entries above
        pivots = []
        for r in range(h.rows):
            nz = [c for c in range(h.cols) if h.data[r][c] != 0]
            if not nz:
                continue
            p = nz[0]
            assert h.data[r][p] > 0
            if pivots:
                assert p > pivots[-1][1]
            for rr in range(r):
                assert 0 <= h.data[rr][p] < h.data[r][p]
            pivots.append((r, p))


def test_smith_normal_form_examples():
    _, d, _ = smith_normal_form(IntMatrix([[2, 0], [0, 3]]))
    assert d.data == [[1, 0], [0, 6]]
    _, d, _ = smith_normal_form(IntMatrix.zeros(2, 3))
    assert d.data == [[0, 0, 0], [0, 0, 0]]
    _, d, _ = smith_normal_form(IntMatrix.identity(3))
    assert d.data == IntMatrix.identity(3).data


def test_smith_normal_form_decomposition():
    rng = random.Random(3)
    for trial in range(30):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = random_matrix(rng, rows, cols)
        u, d, v = smith_normal_form(m)
        assert is_unimodular(u) and is_unimodular(v)
        assert (u @ m @ v).data == d.data
        diagonal = [d.data[i][i] for i in range(min(rows, cols))]
        for i in range(d.rows):
            for j in range(d.cols):
                if i != j:
                    assert d.data[i][j] == 0
        nonzero = [x for x in diagonal if x != 0]
        assert all(x > 0 for x in nonzero)
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0
        assert diagonal[len(nonzero):] == [0] * (len(diagonal) - len(nonzero))


def test_invariant_factors_against_minors_gcd():
    rng = random.Random(4)
    for trial in range(20):
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), bound=4)
        assert invariant_factors(m) == minors_gcd_invariant_factors(m)


def test_invariant_factors_examples():
    assert invariant_factors(IntMatrix([[2, 0], [0, 3]])) == [1, 6]
    assert invariant_factors(IntMatrix([[2, 4], [4, 8]])) == [2]
    assert invariant_factors(IntMatrix.identity(3)) == [1, 1, 1]
    assert invariant_factors(IntMatrix.zeros(2, 2)) == []


def kernel_lattice(M):
    basis = kernel_basis(M)
    return IntMatrix(basis, cols=M.cols).transpose()


def test_kernel_examples():
    # generators may differ by sign or unimodular change; compare lattices
    assert lattice_equal(kernel_lattice(IntMatrix([[1, 1]])), IntMatrix([[1], [-1]]))
    assert lattice_equal(kernel_lattice(IntMatrix([[2, 4]])), IntMatrix([[2], [-1]]))
    assert kernel_basis(IntMatrix([[1, 0], [0, 1]])) == []
    assert lattice_equal(kernel_lattice(IntMatrix.zeros(2, 2)), IntMatrix.identity(2))


def test_kernel_saturated():
    # kernel vectors stay primitive: dividing by any prime must leave Z
    rng = random.Random(5)
    for trial in range(30):
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(2, 5))
        basis = kernel_basis(m)
        assert len(basis) == m.cols - rank(m)
        for vec in basis:
            assert m.mul_vector(vec) == [0] * m.rows
        if basis:
            # the kernel lattice is saturated: no invariant factor above 1
            stacked = IntMatrix(basis, cols=m.cols)
            assert all(f == 1 for f in invariant_factors(stacked))


def test_rank_plus_nullity():
    rng = random.Random(6)
    for trial in range(30):
        m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        assert rank(m) + len(kernel_basis(m)) == m.cols
        assert rank(m) == rank(m.transpose())


def test_unimodularity():
    assert is_unimodular(IntMatrix.identity(3))
    assert is_unimodular(IntMatrix([[1, 5], [0, -1]]))
    assert not is_unimodular(IntMatrix([[2, 0], [0, 1]]))
    assert not is_unimodular(IntMatrix([[1, 2, 3]]))


def test_solve_in_column_span():
    m = IntMatrix([[1, 0], [0, 2], [1, 1]])
    sol = solve_in_column_span(m, [3, 4, 5])
    assert sol == [3, 2]
    assert m.mul_vector(sol) == [3, 4, 5]
    # [0, 1, ...] needs half the second column
    assert solve_in_column_span(m, [0, 1, 0]) is None
    assert in_column_span(m, [1, 2, 2])
    assert not in_column_span(m, [0, 1, 1])


def test_solve_random_roundtrip():
    rng = random.Random(7)
    for trial in range(30):
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        coeffs = [rng.randint(-5, 5) for _ in range(m.cols)]
        target = m.mul_vector(coeffs)
        sol = solve_in_column_span(m, target)
        assert sol is not None
        assert m.mul_vector(sol) == target


def test_lattice_equal_examples():
    a = IntMatrix([[1, 0], [0, 1]])
    b = IntMatrix([[1, 1], [0, 1]])
    assert lattice_equal(a, b)
    assert lattice_equal(a, IntMatrix([[2, 1], [1, 1]]))
    assert not lattice_equal(a, IntMatrix([[2, 0], [0, 1]]))
    # same span over Q, different lattice
    assert not lattice_equal(IntMatrix([[1], [0]]), IntMatrix([[2], [0]]))


def test_lattice_equal_under_unimodular_change():
    rng = random.Random(8)
    for trial in range(20):
        m = random_matrix(rng, 4, 3)
        # right-multiplying by a unimodular matrix preserves the span
        u = IntMatrix.identity(3)
        for _ in range(6):
            i, j = rng.sample(range(3), 2)
            c = rng.randint(-2, 2)
            new = [row[:] for row in u.data]
            for r in range(3):
                new[r][j] += c * new[r][i]
            u = IntMatrix(new)
        assert is_unimodular(u)
        assert lattice_equal(m, m @ u)
