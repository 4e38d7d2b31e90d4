"""Matrices over sparse polynomials: powering, Kronecker products, scalar tests."""

import random
from fractions import Fraction

import pytest

from robyclif.errors import InputError
from robyclif.matrix import PolyMatrix, is_scalar_multiple_of_identity, matpoly_pow
from robyclif.poly import Poly, parse_poly

x = Poly.variable("x")
y = Poly.variable("y")
c = Poly.variable("c")


def test_identity_powers():
    eye = PolyMatrix.identity(3)
    assert matpoly_pow(eye, 5) == eye
    assert matpoly_pow(eye, 0) == eye


def test_two_by_two_square_root_of_a_form():
    m = PolyMatrix.from_rows([[0, x], [y, 0]])
    sq = matpoly_pow(m, 2)
    assert is_scalar_multiple_of_identity(sq) == x * y


def test_companion_matrix_of_a_cubic():
    comp = PolyMatrix.from_rows([[0, 0, c], [1, 0, 0], [0, 1, 0]])
    cube = matpoly_pow(comp, 3)
    assert is_scalar_multiple_of_identity(cube) == c


def test_pow_rejects_bad_input():
    rect = PolyMatrix.zeros(2, 3)
    with pytest.raises(InputError):
        matpoly_pow(rect, 2)
    with pytest.raises(InputError):
        matpoly_pow(PolyMatrix.identity(2), -1)


def test_power_addition_law_on_random_sparse_matrices():
    rng = random.Random(40961)

    def rand_matrix():
        rows = []
        for _ in range(4):
            row = []
            for _ in range(4):
                row.append(Fraction(rng.randint(-3, 3)) if rng.random() < 0.5 else 0)
            rows.append(row)
        return PolyMatrix.from_rows(rows)

    for _ in range(10):
        m = rand_matrix()
        a, b = rng.randint(0, 3), rng.randint(0, 3)
        assert matpoly_pow(m, a + b) == matpoly_pow(m, a) * matpoly_pow(m, b)


def test_scalar_multiple_detection():
    assert is_scalar_multiple_of_identity(PolyMatrix.zeros(2, 2)) == Poly.zero()
    assert is_scalar_multiple_of_identity(PolyMatrix.diagonal([x, x])) == x
    assert is_scalar_multiple_of_identity(PolyMatrix.diagonal([x, y])) is None
    assert is_scalar_multiple_of_identity(PolyMatrix.zeros(2, 3)) is None
    off = PolyMatrix.from_rows([[x, 1], [0, x]])
    assert is_scalar_multiple_of_identity(off) is None


def test_addition_and_scaling():
    a = PolyMatrix.from_rows([[x, 1], [0, y]])
    b = PolyMatrix.from_rows([[1, 0], [0, 1]])
    assert a + b == PolyMatrix.from_rows([[x + 1, 1], [0, y + 1]])
    assert a - a == PolyMatrix.zeros(2, 2)
    assert a.scaled(2).entry(0, 0) == 2 * x
    assert (a * y).entry(1, 1) == y * y
    assert (y * a).entry(0, 1) == y
    with pytest.raises(InputError):
        a + PolyMatrix.zeros(3, 3)


def test_matmul_shape_check():
    with pytest.raises(InputError):
        PolyMatrix.zeros(2, 3) * PolyMatrix.zeros(2, 3)


def test_kron_against_hand_example():
    a = PolyMatrix.from_rows([[1, 2], [3, 4]])
    b = PolyMatrix.from_rows([[0, 5], [6, 7]])
    expected = PolyMatrix.from_rows(
        [
            [0, 5, 0, 10],
            [6, 7, 12, 14],
            [0, 15, 0, 20],
            [18, 21, 24, 28],
        ]
    )
    assert a.kron(b) == expected


def test_kron_mixed_product_identity():
    a = PolyMatrix.from_rows([[x, 1], [0, x]])
    b = PolyMatrix.from_rows([[y, 2], [1, 0]])
    eye = PolyMatrix.identity(2)
    assert a.kron(eye) * eye.kron(b) == a.kron(b)
    assert eye.kron(b) * a.kron(eye) == a.kron(b)


def test_kron_of_identities():
    assert PolyMatrix.identity(2).kron(PolyMatrix.identity(3)) == PolyMatrix.identity(6)


def test_transpose_and_submatrix():
    m = PolyMatrix.from_rows([[1, x, 0], [y, 0, 2]])
    assert m.transpose() == PolyMatrix.from_rows([[1, y], [x, 0], [0, 2]])
    assert m.submatrix([1], [0, 2]) == PolyMatrix.from_rows([[y, 2]])


def test_entrywise_substitution():
    m = PolyMatrix.from_rows([["x^2 + z2*y", "z2"], [0, 1]])
    restricted = m.substitute({"z2": 0})
    assert restricted == PolyMatrix.from_rows([[x * x, 0], [0, 1]])


def test_first_nonzero():
    assert PolyMatrix.zeros(2, 2).first_nonzero() is None
    m = PolyMatrix.from_rows([[0, 0], [y, 0]])
    i, j, p = m.first_nonzero()
    assert (i, j) == (1, 0)
    assert p == y


def test_string_entries_parse_in_literals():
    m = PolyMatrix.from_rows([["3/2*x^2*y - z2", "0"], ["1", "x"]])
    assert m.entry(0, 0) == parse_poly("3/2*x^2*y - z2")
    assert m.entry(1, 1) == x


def test_display_is_row_major_nested_lists():
    m = PolyMatrix.from_rows([[x, 0], [1, y]])
    assert str(m) == "[[x, 0], [1, y]]"
