"""Free commutative algebras, regular representations, characteristic polynomials."""

import pytest

from robyclif.errors import InputError
from robyclif.freealg import (
    FreeAlgebra,
    cayley_hamilton_check,
    char_poly,
    char_poly_of_matrix,
    monogenic_algebra,
    regular_representation,
    restrict_char_poly,
    split_algebra,
)
from robyclif.matrix import PolyMatrix
from robyclif.poly import Poly, parse_poly


def test_charpoly_of_generic_two_by_two():
    m = PolyMatrix.from_rows([["a", "b"], ["c", "d"]])
    chi = char_poly_of_matrix(m)
    assert chi == parse_poly("t^2 - (a + d)*t + a*d - b*c")


def test_charpoly_of_numeric_three_by_three():
    # det = -3, trace = 16, second elementary invariant = -12 (hand computed)
    m = PolyMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 10]])
    assert char_poly_of_matrix(m) == parse_poly("t^3 - 16*t^2 - 12*t + 3")


def test_charpoly_variable_clash():
    with pytest.raises(InputError):
        char_poly_of_matrix(PolyMatrix.from_rows([["t", 0], [0, 1]]))


class TestMonogenic:
    def test_quadratic_structure_constants(self):
        a = monogenic_algebra(parse_poly("z^2 - x*y"), "z")
        assert a.basis_names == ("1", "z")
        assert a.table[1][1][0] == parse_poly("x*y")
        assert a.table[1][1][1] == Poly.zero()
        assert a.degrees == (0, 1)

    def test_nilpotent_cubic(self):
        a = monogenic_algebra(parse_poly("z^3"), "z")
        z, z2 = a._basis_coords(1), a._basis_coords(2)
        assert a.product(z, z) == z2
        assert a.product(z2, z) == [Poly.zero()] * 3
        assert a.degrees == (0, 1, 2)

    def test_rank_one(self):
        a = monogenic_algebra(parse_poly("z - c"), "z")
        assert a.rank == 1
        assert char_poly(a).poly == parse_poly("t - G1")

    def test_regular_representation_of_quadratic(self):
        a = monogenic_algebra(parse_poly("z^2 - q"), "z")
        rho = regular_representation(a)
        assert rho == PolyMatrix.from_rows([["G1", "G2*q"], ["G2", "G1"]])

    def test_quadratic_char_poly(self):
        a = monogenic_algebra(parse_poly("z^2 - q"), "z")
        chi = char_poly(a)
        assert chi.poly == parse_poly("t^2 - 2*G1*t + G1^2 - G2^2*q")

    def test_char_poly_at_the_generator_recovers_p(self):
        for text in ("z^2 - q", "z^3 - x*z - y", "z^4 - x^3*z - y^4"):
            p = parse_poly(text)
            a = monogenic_algebra(p, "z")
            point = {g: 0 for g in a.dual_names}
            point[a.dual_names[1]] = 1
            at_z = char_poly(a).poly.substitute(point)
            assert at_z == p.substitute({"z": Poly.variable("t")})

    def test_rejects_non_monic_and_missing_variable(self):
        with pytest.raises(InputError):
            monogenic_algebra(parse_poly("2*z^2 - 1"), "z")
        with pytest.raises(InputError):
            monogenic_algebra(parse_poly("x^2"), "z")
        with pytest.raises(InputError):
            monogenic_algebra(parse_poly("x*z^2"), "z")

    def test_inhomogeneous_defining_polynomial_is_ungraded(self):
        a = monogenic_algebra(parse_poly("z^2 - q"), "z")
        assert a.degrees is None


class TestSplit:
    def test_idempotents(self):
        a = split_algebra(2)
        e1, e2 = a._basis_coords(0), a._basis_coords(1)
        assert a.product(e1, e1) == e1
        assert a.product(e2, e2) == e2
        assert a.product(e1, e2) == [Poly.zero(), Poly.zero()]

    def test_unit_is_the_sum_of_idempotents(self):
        a = split_algebra(3)
        assert not a.unit_is_first_basis_element
        assert a.element_rep(a.unit) == PolyMatrix.identity(3)
        # while a monogenic presentation keeps the unit at gamma_1
        b = monogenic_algebra(parse_poly("z^2 - q"), "z")
        assert b.unit_is_first_basis_element

    def test_regular_representation_is_diagonal(self):
        a = split_algebra(3)
        rho = regular_representation(a)
        assert rho == PolyMatrix.diagonal(["x1", "x2", "x3"])

    @pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 6])
    def test_char_poly_factors_completely(self, d):
        chi = char_poly(split_algebra(d))
        expected = Poly.const(1)
        t = Poly.variable("t")
        for i in range(d):
            expected = expected * (t - Poly.variable(f"x{i + 1}"))
        assert chi.poly == expected

    def test_rejects_nonpositive_rank(self):
        with pytest.raises(InputError):
            split_algebra(0)


class TestRestriction:
    def test_substitution_on_base_variables(self):
        a = monogenic_algebra(parse_poly("z^2 - (x*y + z2^2)"), "z")
        chi = char_poly(a)
        restricted = restrict_char_poly(chi, {"z2": 0})
        assert restricted == char_poly(monogenic_algebra(parse_poly("z^2 - x*y"), "z"))

    def test_identity_bindings_are_a_no_op(self):
        chi = char_poly(monogenic_algebra(parse_poly("z^2 - q"), "z"))
        assert restrict_char_poly(chi, {"q": Poly.variable("q")}) == chi
        assert restrict_char_poly(chi, {}) == chi

    def test_dual_and_t_bindings_are_rejected(self):
        chi = char_poly(monogenic_algebra(parse_poly("z^2 - q"), "z"))
        with pytest.raises(InputError):
            restrict_char_poly(chi, {"G1": 0})
        with pytest.raises(InputError):
            restrict_char_poly(chi, {"t": 1})
        with pytest.raises(InputError):
            restrict_char_poly(chi, {"q": parse_poly("G1 + 1")})

    def test_commutes_with_restricting_the_algebra(self):
        a = monogenic_algebra(parse_poly("z^3 - x*z - y"), "z")
        bindings = {"y": parse_poly("x^2")}
        left = restrict_char_poly(char_poly(a), bindings)
        right = char_poly(a.restrict(bindings))
        assert left == right

    def test_coefficients_stay_homogeneous_in_duals(self):
        chi = char_poly(monogenic_algebra(parse_poly("z^3 - x*z - y"), "z"))
        for k, coeff in chi.coefficients().items():
            if coeff:
                assert coeff.homogeneous_degree(chi.dual_names) == chi.rank - k


class TestLaws:
    def test_commutativity_is_enforced(self):
        # gamma_2 * gamma_1 deliberately disagrees with gamma_1 * gamma_2
        table = [
            [[1, 0], [0, 1]],
            [[1, 0], [0, 0]],
        ]
        with pytest.raises(InputError, match="commutative"):
            FreeAlgebra(["u", "g"], table)

    def test_unit_law_is_enforced(self):
        table = [
            [[1, 0], [0, 2]],
            [[0, 2], [0, 0]],
        ]
        with pytest.raises(InputError, match="unit"):
            FreeAlgebra(["u", "g"], table)

    def test_associativity_is_enforced(self):
        # u is a unit, a*a = u, b*b = u, a*b = 0: (a*a)*b = b but a*(a*b) = 0
        zero3 = [0, 0, 0]
        table = [
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[0, 1, 0], [1, 0, 0], zero3],
            [[0, 0, 1], zero3, [1, 0, 0]],
        ]
        with pytest.raises(InputError, match="associative"):
            FreeAlgebra(["u", "a", "b"], table)
        skipped = FreeAlgebra(["u", "a", "b"], table, validate=False)
        assert skipped.rank == 3

    def test_graded_homogeneity_is_enforced(self):
        table = [
            [[1, 0], [0, 1]],
            [[0, 1], ["x + 1", 0]],  # x+1 is not homogeneous of degree 2
        ]
        with pytest.raises(InputError, match="homogeneous"):
            FreeAlgebra(["u", "g"], table, degrees=[0, 1])

    def test_duals_may_not_collide_with_base_variables(self):
        with pytest.raises(InputError):
            monogenic_algebra(parse_poly("z^2 - G1"), "z")
        with pytest.raises(InputError):
            monogenic_algebra(parse_poly("z^2 - t"), "z")


class TestCayleyHamilton:
    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_holds_for_split_algebras(self, d):
        assert cayley_hamilton_check(split_algebra(d)).ok

    def test_holds_for_monogenic_cubic(self):
        a = monogenic_algebra(parse_poly("z^3 - x*z - y"), "z")
        report = cayley_hamilton_check(a)
        assert report.ok
        assert report.get("cayley_hamilton").ok

    def test_fails_against_a_tampered_table(self):
        pristine = monogenic_algebra(parse_poly("z^2 - q"), "z")
        chi = char_poly(pristine)
        tampered = monogenic_algebra(parse_poly("z^2 - q - 1"), "z")
        report = cayley_hamilton_check(tampered, chi)
        assert not report.ok
        assert "entry" in report.get("cayley_hamilton").detail

    def test_shape_mismatch_is_an_input_error(self):
        chi = char_poly(split_algebra(3))
        with pytest.raises(InputError):
            cayley_hamilton_check(split_algebra(2), chi)
