from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from segre_index.errors import (
    FieldMismatchError,
    InexactDivisionError,
    SchemaError,
    ZeroElementError,
)
from segre_index.fields import RATIONALS, prime_field
from segre_index.polynomials import (
    BinaryForm,
    ExactMatrix,
    MultiPoly,
    adjugate,
    determinant,
    discriminant_quadratic,
    exact_div,
    inverse,
    kronecker_with_identity2,
    rank,
    resultant,
    rref,
    substitute_conic,
    substitute_forms,
    sylvester_matrix,
    univariate_gcd,
)

F7 = prime_field(7)


def form(*coeffs, desc=RATIONALS):
    return BinaryForm.from_coeffs(list(coeffs), desc)


def matrix(rows, desc=RATIONALS):
    return ExactMatrix.from_rows(rows, desc)


small = st.integers(min_value=-6, max_value=6)
quadratics = st.lists(small, min_size=3, max_size=3).filter(any)
cubics = st.lists(small, min_size=4, max_size=4).filter(any)


def cofactor_expansion(rows):
    # Laplace expansion along the first row, over the integers
    if len(rows) == 1:
        return rows[0][0]
    return sum(
        (-1) ** j * rows[0][j] * cofactor_expansion([row[:j] + row[j + 1 :] for row in rows[1:]])
        for j in range(len(rows))
    )


class TestBinaryForm:
    def test_ascending_coefficient_access(self):
        f = form(1, 2, 3)  # u^2 + 2uv + 3v^2
        assert f.coefficient(2) == 1
        assert f.coefficient(0) == 3
        with pytest.raises(SchemaError):
            f.coefficient(3)

    def test_product_and_power(self):
        u_minus_v = form(1, -1)
        u_plus_v = form(1, 1)
        assert (u_minus_v * u_plus_v).coeffs == form(1, 0, -1).coeffs
        assert (u_plus_v**2).coeffs == form(1, 2, 1).coeffs

    def test_compose_linear(self):
        u_squared = form(1, 0, 0)
        assert u_squared.compose_linear(1, 1, 0, 1).coeffs == form(1, 2, 1).coeffs

    def test_evaluate(self):
        assert form(1, 0, -1).evaluate(RATIONALS.element(2), RATIONALS.element(1)) == 3

    def test_degree_mismatch_on_addition(self):
        with pytest.raises(SchemaError):
            form(1, 0) + form(1, 0, 0)

    def test_field_mismatch_on_product(self):
        with pytest.raises(FieldMismatchError):
            form(1, 0) * form(1, 0, desc=F7)

    def test_exact_division(self):
        quotient = exact_div(form(1, 0, -1), form(1, -1))
        assert quotient.coeffs == form(1, 1).coeffs

    def test_exact_division_by_power_of_v(self):
        quotient = exact_div(form(0, 1, 1), form(0, 1))  # (uv + v^2) / v
        assert quotient.coeffs == form(1, 1).coeffs

    def test_inexact_division_raises(self):
        with pytest.raises(InexactDivisionError):
            exact_div(form(1, 0, 1), form(1, -1))
        with pytest.raises(ZeroElementError):
            exact_div(form(1, 0, 1), form(0, 0))

    @given(
        st.sampled_from([RATIONALS, F7]),
        st.lists(small, min_size=1, max_size=5),
        st.lists(small, min_size=1, max_size=4),
    )
    def test_exact_division_undoes_product(self, desc, f, g):
        f, g = form(*f, desc=desc), form(*g, desc=desc)
        if f.is_zero() or g.is_zero():
            return
        assert exact_div(f * g, g).coeffs == f.coeffs


class TestMultiPoly:
    def test_arithmetic_and_degree(self):
        x0 = MultiPoly.variable(RATIONALS, 2, 0)
        x1 = MultiPoly.variable(RATIONALS, 2, 1)
        p = (x0 + x1) ** 2
        assert p.coefficient((1, 1)) == 2
        assert p.total_degree == 2
        assert p.is_homogeneous()
        assert not (p + 1).is_homogeneous()

    def test_derivative(self):
        x0 = MultiPoly.variable(RATIONALS, 2, 0)
        x1 = MultiPoly.variable(RATIONALS, 2, 1)
        p = x0**3 * x1
        assert p.derivative(0).as_dict() == {(2, 1): 3}
        assert p.derivative(1).as_dict() == {(3, 0): 1}

    def test_zero_coefficients_are_dropped(self):
        p = MultiPoly.from_dict(RATIONALS, 2, {(1, 0): 0, (0, 1): "1/2"})
        assert p.terms == (((0, 1), RATIONALS.element(Fraction(1, 2))),)

    def test_bad_exponent_vector(self):
        with pytest.raises(SchemaError):
            MultiPoly.from_dict(RATIONALS, 2, {(1, 0, 0): 1})

    def test_substitute_forms(self):
        x0 = MultiPoly.variable(RATIONALS, 2, 0)
        x1 = MultiPoly.variable(RATIONALS, 2, 1)
        restricted = substitute_forms(x0 * x1, [form(1, 0), form(0, 1)])
        assert restricted.coeffs == form(0, 1, 0).coeffs

    def test_substitute_forms_rejects_inhomogeneous(self):
        x0 = MultiPoly.variable(RATIONALS, 1, 0)
        with pytest.raises(SchemaError):
            substitute_forms(x0 * x0 + x0, [form(1, 0)])

    def test_substitute_conic(self):
        x, y, z = (MultiPoly.variable(RATIONALS, 3, k) for k in range(3))
        # the conic [v^2 : u^2 : uv] lies on x*y = z^2
        curve = x * y - z * z
        pulled = substitute_conic(curve, form(0, 0, 1), form(1, 0, 0), form(0, 1, 0))
        assert pulled.is_zero()
        assert pulled.degree == 4


class TestUnivariate:
    def test_gcd_is_monic(self):
        f = [RATIONALS.element(c) for c in (2, 0, -2)]  # 2(t^2 - 1)
        g = [RATIONALS.element(c) for c in (3, -3)]  # 3(t - 1)
        assert univariate_gcd(f, g) == [1, -1]


class TestMatrices:
    def test_determinant_over_q(self):
        assert determinant(matrix([[1, 2], [3, 4]])) == -2
        assert determinant(matrix([["1/2", 1], [1, 4]])) == 1

    def test_determinant_needs_row_swap(self):
        assert determinant(matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])) == -1

    def test_determinant_over_prime_field(self):
        assert determinant(matrix([[3, 1], [1, 5]], F7)) == 0
        assert determinant(matrix([[3, 1], [1, 4]], F7)) == 4

    @settings(max_examples=60)
    @given(
        st.sampled_from([RATIONALS, F7]),
        st.integers(min_value=1, max_value=5).flatmap(
            lambda size: st.lists(
                st.lists(small, min_size=size, max_size=size), min_size=size, max_size=size
            )
        ),
    )
    def test_determinant_matches_cofactor_expansion(self, desc, rows):
        assert determinant(matrix(rows, desc)) == desc.element(cofactor_expansion(rows))

    def test_determinant_of_non_square_matrix(self):
        with pytest.raises(SchemaError):
            determinant(matrix([[1, 2, 3]]))

    def test_rref_and_rank(self):
        m = matrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
        reduced, pivots = rref(m)
        assert pivots == [0, 1]
        assert rank(m) == 2
        assert reduced.row(0) == (1, 0, 1)

    def test_inverse(self):
        m = matrix([[2, 1], [1, 1]])
        assert (m @ inverse(m)).entries == ExactMatrix.identity(RATIONALS, 2).entries
        with pytest.raises(ZeroElementError):
            inverse(matrix([[1, 2], [2, 4]]))

    @pytest.mark.parametrize(
        "rows, expected",
        [
            ([[1, 2], [3, 4]], [[4, -2], [-3, 1]]),
            ([[1, 2], [2, 4]], [[4, -2], [-2, 1]]),
            ([[1, 2, 3], [2, 4, 6], [3, 6, 9]], [[0, 0, 0], [0, 0, 0], [0, 0, 0]]),
        ],
    )
    def test_adjugate(self, rows, expected):
        assert adjugate(matrix(rows)).entries == matrix(expected).entries

    def test_adjugate_identity_for_singular_matrix(self):
        m = matrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        assert (m @ adjugate(m)).is_zero()
        assert (adjugate(m) @ m).is_zero()

    def test_kronecker_with_identity(self):
        m = matrix([[1, 2], [3, 4]])
        k = kronecker_with_identity2(m)
        assert (k.rows, k.cols) == (4, 4)
        assert k[0, 2] == 2 and k[1, 3] == 2 and k[0, 3] == 0
        assert determinant(k) == 4

    def test_stacking(self):
        m = matrix([[1, 2]])
        assert m.vstack(m).rows == 2
        assert m.hstack(m).cols == 4
        with pytest.raises(SchemaError):
            m.hstack(matrix([[1], [2]]))


class TestResultants:
    @pytest.mark.parametrize(
        "f, g, expected",
        [
            ((0, 1, 0), (1, 0, -1), -1),
            ((0, 1, 0), (1, 0, 1), 1),
            ((1, 0, 1), (1, 0, -1), 4),
            ((1, 0, 0), (0, 1, 0), 0),
        ],
    )
    def test_known_values(self, f, g, expected):
        assert resultant(form(*f), form(*g)) == expected

    def test_sylvester_shape(self):
        s = sylvester_matrix(form(1, 0, 0), form(1, 2, 3, 4))
        assert (s.rows, s.cols) == (5, 5)

    def test_resultant_over_prime_field(self):
        assert resultant(form(1, 0, 1, desc=F7), form(1, 0, -1, desc=F7)) == 4

    @given(quadratics, cubics)
    def test_swapping_arguments(self, f, g):
        f, g = form(*f), form(*g)
        assert resultant(f, g) == (-1) ** (2 * 3) * resultant(g, f)

    @given(quadratics, quadratics, st.integers(min_value=-5, max_value=5).filter(bool))
    def test_scaling_one_argument(self, f, g, scale):
        f, g = form(*f), form(*g)
        assert resultant(f * scale, g) == scale**2 * resultant(f, g)

    @settings(max_examples=40)
    @given(quadratics, quadratics, st.lists(small, min_size=4, max_size=4))
    def test_linear_change_of_variables(self, f, g, change):
        a, b, c, d = change
        f, g = form(*f), form(*g)
        moved = resultant(f.compose_linear(a, b, c, d), g.compose_linear(a, b, c, d))
        assert moved == (a * d - b * c) ** 4 * resultant(f, g)


class TestDiscriminant:
    def test_numeric(self):
        assert discriminant_quadratic(1, 0, -1) == 4

    def test_mixed_rings_raise(self):
        with pytest.raises(FieldMismatchError):
            discriminant_quadratic(RATIONALS.element(1), F7.element(1), 0)
