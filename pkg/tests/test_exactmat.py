import random

from kummerlab.exactmat import (
    det_bareiss,
    det_fraction,
    hnf_basis,
    hnf_rows,
    left_kernel_basis,
    mat_mul,
    saturation_basis,
    snf,
    symmetric_diagonalize,
)


def rand_matrix(rng, rows, cols, lim=12):
    return [[rng.randrange(-lim, lim + 1) for _ in range(cols)] for _ in range(rows)]


def test_det_agrees_with_fraction_elimination():
    rng = random.Random(1)
    for _ in range(100):
        n = rng.randrange(1, 6)
        a = rand_matrix(rng, n, n)
        assert det_bareiss(a) == det_fraction(a)


def test_hnf_row_space_preserved():
    rng = random.Random(2)
    for _ in range(100):
        rows, cols = rng.randrange(1, 5), rng.randrange(1, 5)
        a = rand_matrix(rng, rows, cols)
        h, u = hnf_rows(a)
        assert mat_mul(u, a) == h
        assert abs(det_bareiss(u)) == 1


def test_snf_transforms_and_divisibility():
    rng = random.Random(3)
    for _ in range(300):
        rows, cols = rng.randrange(1, 6), rng.randrange(1, 6)
        a = rand_matrix(rng, rows, cols)
        d, u, v = snf(a)
        prod = mat_mul(mat_mul(u, a), v)
        for i in range(rows):
            for j in range(cols):
                expect = d[i] if i == j and i < len(d) else 0
                assert prod[i][j] == expect
        assert abs(det_bareiss(u)) == 1
        assert abs(det_bareiss(v)) == 1
        nz = [x for x in d if x]
        for x, y in zip(nz, nz[1:]):
            assert y % x == 0


def test_saturation_basis_index():
    basis, index = saturation_basis([[2, 0], [0, 3]], 2)
    assert index == 6
    assert hnf_basis(basis) == [[1, 0], [0, 1]]
    basis, index = saturation_basis([[2, 4]], 2)
    assert index == 2
    assert basis == [[1, 2]]


def test_left_kernel():
    rng = random.Random(4)
    for _ in range(100):
        rows, cols = rng.randrange(1, 6), rng.randrange(1, 6)
        a = rand_matrix(rng, rows, cols)
        kern = left_kernel_basis(a)
        for x in kern:
            assert all(sum(x[i] * a[i][j] for i in range(rows)) == 0
                       for j in range(cols))
        d, _, _ = snf(a)
        rank = sum(1 for x in d if x)
        assert len(kern) == rows - rank


def test_symmetric_diagonalize_signature_on_known_forms():
    diag = symmetric_diagonalize([[2, 0], [0, -3]])
    assert sorted(x > 0 for x in diag) == [False, True]
    # hyperbolic plane: signature (1, 1) despite zero diagonal
    diag = symmetric_diagonalize([[0, 1], [1, 0]])
    assert sorted(x > 0 for x in diag) == [False, True]
