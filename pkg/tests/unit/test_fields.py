from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from segre_index.errors import (
    FieldMismatchError,
    SchemaError,
    UnsupportedFieldError,
    ZeroElementError,
)
from segre_index.fields import (
    RATIONALS,
    field_norm,
    field_trace,
    is_square_in_field,
    make_extension,
    parse_scalar,
    prime_field,
    smallest_nonresidue,
    square_class,
)

EISENSTEIN = make_extension(RATIONALS, [1, 1, 1])
GAUSSIAN = make_extension(RATIONALS, [1, 0, 1])
F7 = prime_field(7)
SQRT2 = make_extension(RATIONALS, [1, 0, -2])
# 3 is a non-residue mod 7
F49 = make_extension(F7, [1, 0, -3])

coordinates = st.lists(st.integers(min_value=-50, max_value=50), min_size=2, max_size=2)


class TestDescriptors:
    def test_prime_field_rejects_non_primes(self):
        with pytest.raises(SchemaError):
            prime_field(9)
        with pytest.raises(SchemaError):
            prime_field(2)

    def test_extension_must_be_monic(self):
        with pytest.raises(SchemaError):
            make_extension(RATIONALS, [2, 0, 1])

    def test_extension_towers_are_rejected(self):
        with pytest.raises(UnsupportedFieldError):
            make_extension(EISENSTEIN, [1, 0, 1])

    def test_degree_and_ground(self):
        assert EISENSTEIN.degree == 2
        assert EISENSTEIN.ground == RATIONALS
        assert F7.characteristic == 7
        assert str(F7) == "F_7"


class TestArithmetic:
    def test_rational_arithmetic(self):
        a = RATIONALS.element("3/4")
        b = RATIONALS.element(2)
        assert a + b == Fraction(11, 4)
        assert a * b == Fraction(3, 2)
        assert (a / b) == Fraction(3, 8)
        assert -a == Fraction(-3, 4)

    def test_prime_field_inverse(self):
        x = F7.element(3)
        assert x * x.inverse() == 1
        assert x.inverse() == 5

    def test_cube_root_of_unity(self):
        w = EISENSTEIN.generator()
        assert w**3 == 1
        assert w * w + w + 1 == 0
        assert w.inverse() == w * w

    def test_negative_power(self):
        x = RATIONALS.element(2)
        assert x ** -2 == Fraction(1, 4)

    def test_zero_has_no_inverse(self):
        with pytest.raises(ZeroElementError):
            F7.zero().inverse()

    def test_mixing_fields_fails(self):
        with pytest.raises(FieldMismatchError):
            RATIONALS.element(1) + F7.element(1)

    def test_ground_element_embeds_in_extension(self):
        x = EISENSTEIN.element(RATIONALS.element(5))
        assert x.in_ground()
        assert x.coords[0] == 5

    def test_parse_scalar_accepts_unicode_minus(self):
        assert parse_scalar("−3/4") == Fraction(-3, 4)
        with pytest.raises(SchemaError):
            parse_scalar("three")


class TestTraceAndNorm:
    def test_trace_and_norm_of_generator(self):
        w = EISENSTEIN.generator()
        assert field_trace(w) == -1
        assert field_norm(w) == 1

    def test_norm_of_gaussian_integer(self):
        x = GAUSSIAN.element([3, 4])
        assert field_norm(x) == 25
        assert field_trace(x) == 6


class TestSquareClasses:
    @pytest.mark.parametrize(
        "value, expected",
        [(12, 3), (-8, -2), ("3/4", 3), (81, 1), (-1, -1), ("1/2", 2)],
    )
    def test_rational_square_class(self, value, expected):
        assert square_class(RATIONALS.element(value)) == expected

    def test_prime_field_square_class(self):
        assert smallest_nonresidue(7) == 3
        assert square_class(F7.element(2)) == 1
        assert square_class(F7.element(5)) == 3

    def test_zero_has_no_square_class(self):
        with pytest.raises(ZeroElementError):
            square_class(RATIONALS.zero())

    def test_extension_square_class_unsupported(self):
        with pytest.raises(UnsupportedFieldError):
            square_class(EISENSTEIN.generator())

    @given(
        st.integers(min_value=-10**6, max_value=10**6).filter(bool),
        st.integers(min_value=1, max_value=10**4),
    )
    def test_square_class_ignores_squares(self, a, b):
        x = RATIONALS.element(a)
        assert square_class(x * b * b) == square_class(x)

    @pytest.mark.parametrize(
        "coords, expected",
        [([0, 1], True), ([-3, 0], True), ([2, 0], False), ([1, 0], True), ([0, 2], False)],
    )
    def test_squares_in_eisenstein_field(self, coords, expected):
        assert is_square_in_field(EISENSTEIN.element(coords)) is expected

    def test_squares_in_gaussian_field(self):
        assert is_square_in_field(GAUSSIAN.element([0, 2]))  # 2i = (1 + i)^2
        assert is_square_in_field(GAUSSIAN.element([-1, 0]))
        assert not is_square_in_field(GAUSSIAN.element([3, 0]))

    def test_squares_in_finite_extension(self):
        f49 = make_extension(F7, [1, 0, 1])
        # every element of F_7 is a square in F_49
        assert is_square_in_field(f49.element(3))


class TestFieldLaws:
    @pytest.mark.parametrize("desc", [SQRT2, F49, EISENSTEIN])
    @given(x=coordinates, y=coordinates)
    def test_trace_is_additive(self, desc, x, y):
        x, y = desc.element(x), desc.element(y)
        assert field_trace(x + y) == field_trace(x) + field_trace(y)

    @pytest.mark.parametrize("desc", [SQRT2, F49, EISENSTEIN])
    @given(x=coordinates, y=coordinates)
    def test_norm_is_multiplicative(self, desc, x, y):
        x, y = desc.element(x), desc.element(y)
        assert field_norm(x * y) == field_norm(x) * field_norm(y)

    @pytest.mark.parametrize("desc", [SQRT2, F49, GAUSSIAN, EISENSTEIN])
    @given(x=coordinates.filter(any))
    def test_squares_are_squares(self, desc, x):
        x = desc.element(x)
        if x.is_zero():
            return
        assert is_square_in_field(x * x)

    @given(st.integers(min_value=-10**4, max_value=10**4).filter(bool))
    def test_squares_in_ground_fields(self, a):
        assert is_square_in_field(RATIONALS.element(a) ** 2)
        if a % 7:
            assert is_square_in_field(F7.element(a) ** 2)
