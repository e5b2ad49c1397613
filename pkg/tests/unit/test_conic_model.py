from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from segre_index.conic_model import (
    ConicModel,
    a_invariant,
    affine_points,
    closed_form_checks,
    conic_index,
    conic_index_factors,
    curve_monomials,
    kb_matrix,
    point_resultant,
    r_invariant,
    random_instance,
    rb_matrix,
    substitution_matrix,
    symmetric_family,
    transform_model,
    vandermonde_vb,
    verify_identity,
)
from segre_index.errors import DegenerateLineError, SchemaError, UnsupportedFieldError
from segre_index.fields import RATIONALS, make_extension, prime_field
from segre_index.gw_ring import GWClass, gw_equal
from segre_index.polynomials import BinaryForm, ExactMatrix, determinant

F101 = prime_field(101)


def points(*pairs, desc=RATIONALS):
    return tuple((desc.element(x), desc.element(y)) for x, y in pairs)


def form(*coeffs, desc=RATIONALS):
    return BinaryForm.from_coeffs(list(coeffs), desc)


SYMMETRIC_Q = (form(0, 0, 1), form(1, 0, 0), form(1, 0, 0))


class TestMonomials:
    def test_order(self):
        assert curve_monomials(3) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]

    @pytest.mark.parametrize("n", range(3, 8))
    def test_count(self, n):
        assert len(curve_monomials(n)) == comb(n + 1, 2)
        assert all(i + j <= n - 2 for i, j in curve_monomials(n)[: comb(n, 2)])


class TestConicModel:
    def test_point_count_is_checked(self):
        with pytest.raises(SchemaError):
            ConicModel(n=3, B=points((1, 2), (1, 3)), Q=SYMMETRIC_Q)

    def test_points_must_be_distinct(self):
        with pytest.raises(SchemaError):
            ConicModel(n=3, B=points((1, 2), (1, 2), (2, 3)), Q=SYMMETRIC_Q)

    def test_small_n(self):
        with pytest.raises(SchemaError):
            ConicModel(n=2, B=points((1, 2)), Q=SYMMETRIC_Q)

    def test_one_field(self):
        with pytest.raises(SchemaError):
            ConicModel(n=3, B=points((1, 2), (1, 3), (2, 3), desc=F101), Q=SYMMETRIC_Q)


class TestInterpolationMatrices:
    def test_vandermonde_example(self):
        B = points((1, 2), (1, 3), (2, 3))
        V = vandermonde_vb(B)
        assert V.to_rows() == [[1, 1, 2], [1, 1, 3], [1, 2, 3]]
        assert determinant(V) == -1

    def test_collinear_points_are_singular(self):
        assert determinant(vandermonde_vb(points((0, 0), (1, 1), (2, 2)))) == 0

    def test_wrong_point_count(self):
        with pytest.raises(SchemaError):
            vandermonde_vb(points((0, 0), (1, 1), (2, 2), (3, 5)))

    def test_rb_matrix(self):
        R = rb_matrix(points((1, 2), (1, 3), (2, 3)))
        assert R.row(0) == (1, 2, 4)

    @pytest.mark.parametrize(
        "pairs",
        [
            ((1, 2), (1, 3), (2, 3)),
            ((0, 0), (1, 1), (2, 2)),
            ((0, 0), (1, 0), (0, 1), (2, 5), (3, -1), (7, 2)),
        ],
    )
    def test_kernel_basis(self, pairs):
        B = points(*pairs)
        n = {3: 3, 6: 4}[len(B)]
        K = kb_matrix(B)
        assert (K.rows, K.cols) == (comb(n + 1, 2), n)
        assert (vandermonde_vb(B).hstack(rb_matrix(B)) @ K).is_zero()

    def test_substitution_matrix(self):
        S = substitution_matrix(form(0, 0, 1), form(1, 0, 0), form(0, 1, 0), 3)
        assert (S.rows, S.cols) == (5, 6)
        assert S.column(0) == (0, 0, 0, 0, 1)
        assert S.column(4) == (0, 1, 0, 0, 0)


class TestIdentity:
    def test_symmetric_example(self):
        model = symmetric_family([1, 2, 3])
        report = verify_identity(model)
        assert report.det_vb == -1
        assert report.r_value == 4
        assert report.a_value == 4
        assert report.v_value == 1
        assert report.passed

    def test_point_resultant(self):
        model = symmetric_family([1, 2, 3])
        assert [point_resultant(model, b) for b in model.B] == [1, 4, 1]
        assert conic_index_factors(model) == [1, 4, 1]

    def test_collinear_points_give_zero(self):
        model = ConicModel(n=3, B=points((0, 0), (1, 1), (2, 2)), Q=SYMMETRIC_Q)
        report = verify_identity(model)
        assert report.det_vb == 0
        assert report.a_value == 0
        assert report.passed

    def test_point_on_conic(self):
        model = ConicModel(n=3, B=points((1, 1), (1, 2), (2, 3)), Q=SYMMETRIC_Q)
        report = verify_identity(model)
        assert report.r_value == 0
        assert report.a_value == 0
        assert report.zero_locus_consistent
        with pytest.raises(DegenerateLineError):
            conic_index(model)

    @pytest.mark.parametrize("n", [3, 4, 5])
    @pytest.mark.parametrize("seed", range(6))
    def test_random_rational_models(self, n, seed):
        assert verify_identity(random_instance(n, 5, seed)).passed

    @pytest.mark.parametrize("seed", range(10))
    def test_random_prime_field_models(self, seed):
        assert verify_identity(random_instance(4, 5, seed, F101)).passed

    def test_scaling_the_conic(self):
        model = symmetric_family([1, 2, 5])
        scaled = ConicModel(n=3, B=model.B, Q=tuple(q * 2 for q in model.Q))
        assert a_invariant(scaled) == 2**12 * a_invariant(model)
        assert r_invariant(scaled) == 2**12 * r_invariant(model)

    def test_conic_index(self):
        model = symmetric_family([1, 2, 3])
        assert gw_equal(conic_index(model), GWClass.of(RATIONALS, [1]))

    def test_conic_index_over_extension(self):
        gaussian = make_extension(RATIONALS, [1, 0, 1])
        model = symmetric_family([1, 2, 3], gaussian)
        assert conic_index(model).base == RATIONALS


class TestClosedForm:
    @pytest.mark.parametrize("n", range(3, 7))
    def test_first_integers(self, n):
        report = closed_form_checks(list(range(1, n + 1)))
        assert report.passed, report.failed_steps
        assert [s.step for s in report.steps] == [1, 2, 3, 4]

    @settings(max_examples=15, deadline=None)
    @given(st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=5, unique=True))
    def test_distinct_integers(self, values):
        assert closed_form_checks(values).passed

    def test_over_prime_field(self):
        assert closed_form_checks([1, 5, 17, 40], F101).passed

    @pytest.mark.parametrize("values", [[1, 1, 2], [0, 1]])
    def test_invalid_values(self, values):
        with pytest.raises(SchemaError):
            closed_form_checks(values)


class TestCoordinateChanges:
    CHANGE = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]

    def test_affine_points(self):
        change = ExactMatrix.from_rows(self.CHANGE, RATIONALS)
        assert affine_points([(1, 1, 2)], change) == points(("1/2", 1))

    def test_points_at_infinity(self):
        change = ExactMatrix.from_rows(self.CHANGE, RATIONALS)
        with pytest.raises(SchemaError):
            affine_points([(1, -1, 0)], change)

    @pytest.mark.parametrize(
        "change",
        [
            [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
            [[2, 0, 1], [1, 1, 0], [0, 3, 1]],
            [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
        ],
    )
    def test_point_resultants_transport(self, change):
        model = symmetric_family([1, 2, 3, 4])
        matrix = ExactMatrix.from_rows(change, RATIONALS)
        moved = transform_model(model, matrix)
        det = determinant(matrix)
        for old, new in zip(model.B, moved.B):
            weight = matrix[0, 0] + matrix[0, 1] * old[0] + matrix[0, 2] * old[1]
            factor = (det / weight) ** 2
            assert point_resultant(moved, new) == factor * point_resultant(model, old)

    def test_identity_survives_coordinate_change(self):
        matrix = ExactMatrix.from_rows([[1, 0, 0], [1, 1, 0], [0, 3, 1]], RATIONALS)
        moved = transform_model(random_instance(4, 4, 11), matrix)
        assert verify_identity(moved).passed


class TestRandomInstance:
    def test_reproducible(self):
        assert random_instance(4, 5, 7) == random_instance(4, 5, 7)

    def test_seed_changes_instance(self):
        assert random_instance(4, 5, 7) != random_instance(4, 5, 8)

    def test_prime_field_entries(self):
        model = random_instance(3, 5, 1, F101)
        assert model.descriptor == F101
        assert all(0 <= c.value < 101 for point in model.B for c in point)

    def test_range_too_small(self):
        with pytest.raises(SchemaError):
            random_instance(5, 1, 0)

    def test_extension_fields_are_rejected(self):
        with pytest.raises(UnsupportedFieldError):
            random_instance(3, 5, 0, make_extension(RATIONALS, [1, 0, 1]))
