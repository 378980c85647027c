import random
from fractions import Fraction

from k3lax.linalg import (
    exact_signature,
    functional_kernel,
    hnf_rows,
    matrix_rank,
    solve_linear,
    xgcd,
)


def test_xgcd():
    rng = random.Random(5)
    for _ in range(200):
        a, b = rng.randint(-500, 500), rng.randint(-500, 500)
        g, x, y = xgcd(a, b)
        assert g == a * x + b * y
        assert g >= 0
        if a or b:
            assert a % g == 0 and b % g == 0


def test_signature_diagonal():
    assert exact_signature([[2]]) == (1, 0, 0)
    assert exact_signature([[2, 0], [0, -4]]) == (1, 1, 0)
    assert exact_signature([[0, 1], [1, 0]]) == (1, 1, 0)
    assert exact_signature([[0, 0], [0, 0]]) == (0, 0, 2)


def test_signature_indefinite_with_zero_diagonal_block():
    # hyperbolic plane plus a negative line
    gram = [[0, 1, 0], [1, 0, 0], [0, 0, -2]]
    assert exact_signature(gram) == (1, 2, 0)


def test_hnf_canonical():
    rows = hnf_rows([[2, 4], [1, 3]])
    assert rows == [(1, 1), (0, 2)]
    # same lattice, different generators
    assert hnf_rows([[1, 3], [0, 2]]) == rows
    assert hnf_rows([[3, 7], [1, 3], [2, 4]]) == rows


def test_hnf_drops_zero_rows():
    assert hnf_rows([[0, 0], [3, 0]]) == [(3, 0)]


def test_functional_kernel():
    basis = functional_kernel([-1, 0, -1])
    assert basis == [(1, 0, -1), (0, 1, 0)]
    for row in basis:
        assert -row[0] - row[2] == 0


def test_functional_kernel_gcd_functional():
    basis = functional_kernel([2, 3])
    assert len(basis) == 1
    (row,) = basis
    assert 2 * row[0] + 3 * row[1] == 0


def test_matrix_rank():
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    assert matrix_rank([[1, 0], [0, 1]]) == 2
    assert matrix_rank([[0, 0]]) == 0


def test_solve_linear_fraction():
    x = solve_linear([[2, 1], [1, 3]], [Fraction(5), Fraction(10)])
    assert x == [Fraction(1), Fraction(3)]


def test_solve_linear_complex_rhs():
    x = solve_linear([[1, 1], [1, -1]], [complex(2, 2), complex(0, 0)])
    assert x == [complex(1, 1), complex(1, 1)]
