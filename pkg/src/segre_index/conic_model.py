"""
Conic models of Gauss curves and the determinant identity A(B,Q) = (det V_B)^(2n)·R(B,Q).

A conic model is a set B of binom(n, 2) affine plane points together with a
parameterized conic [Q0 : Q1 : Q2] (quadratic forms in (u, v) for the
coordinates Z, X, Y). Plane curves of degree n-1 through B, pulled back along
the conic, give n binary forms of degree 2n-2 whose index matrix determinant
is A(B, Q).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from math import comb
from typing import Optional, Sequence

import numpy as np

from segre_index.errors import (
    DegenerateLineError,
    SchemaError,
    SegreIndexError,
    UnsupportedFieldError,
)
from segre_index.enumerative import elementary_symmetric
from segre_index.fields import RATIONALS, FieldDescriptor, FieldElement, FieldKind
from segre_index.gw_ring import GWClass
from segre_index.line_index import index_matrix
from segre_index.polynomials import (
    BinaryForm,
    ExactMatrix,
    adjugate,
    determinant,
    kronecker_with_identity2,
    resultant,
)

logger = logging.getLogger(__name__)

Point = tuple


def curve_monomials(n: int) -> list[tuple[int, int]]:
    """
    Exponents (i, j) of x^i y^j of degree <= n-1, in the order shared by
    V_B, R_B, K_B and the substitution matrix.

    Degrees ascend; within a degree d the order is x^d, x^(d-1)y, ..., y^d.
    The first binom(n, 2) entries have degree <= n-2.
    """
    return [(d - k, k) for d in range(n) for k in range(d + 1)]


@dataclass(frozen=True)
class ConicModel:
    """
    Args:
        n (int): At least 3.
        B (tuple): binom(n, 2) distinct affine points (b_x, b_y) in the patch Z != 0.
        Q (tuple): Quadratic forms (Q0, Q1, Q2) for the coordinates (Z, X, Y).
    """

    n: int
    B: tuple
    Q: tuple

    def __post_init__(self):
        if self.n < 3:
            raise SchemaError(f"Conic models need n >= 3, got {self.n}")
        if len(self.B) != comb(self.n, 2):
            raise SchemaError(
                f"n={self.n} needs {comb(self.n, 2)} points, got {len(self.B)}"
            )
        if len(set(self.B)) != len(self.B):
            raise SchemaError("Points of B must be distinct")
        if len(self.Q) != 3 or any(q.degree != 2 for q in self.Q):
            raise SchemaError("Q must be three quadratic forms")
        descriptors = {q.descriptor for q in self.Q} | {
            c.descriptor for point in self.B for c in point
        }
        if len(descriptors) != 1:
            raise SchemaError("B and Q must live over one field")

    @property
    def descriptor(self) -> FieldDescriptor:
        return self.Q[0].descriptor


@dataclass(frozen=True)
class IdentityReport:
    """Both sides of A(B,Q) = (det V_B)^(2n)·R(B,Q)."""

    a_value: FieldElement
    det_vb: FieldElement
    r_value: FieldElement
    v_value: FieldElement

    @property
    def lhs_equals_rhs(self) -> bool:
        return self.a_value == self.v_value * self.r_value

    @property
    def zero_locus_consistent(self) -> bool:
        return self.a_value.is_zero() == (self.v_value * self.r_value).is_zero()

    @property
    def passed(self) -> bool:
        return self.lhs_equals_rhs and self.zero_locus_consistent


def _check_points(B: Sequence[Point], n: Optional[int]) -> int:
    """Return n, inferring it from |B| = binom(n, 2) when not given."""
    if n is None:
        n = next((k for k in range(3, len(B) + 3) if comb(k, 2) >= len(B)), 0)
    if not B or len(B) != comb(n, 2):
        raise SchemaError(f"n={n} needs {comb(n, 2)} points, got {len(B)}")
    return n


def _monomial_matrix(B: Sequence[Point], exps: Sequence[tuple[int, int]]) -> ExactMatrix:
    desc = B[0][0].descriptor
    return ExactMatrix.from_rows(
        [[bx**i * by**j for i, j in exps] for bx, by in B], desc
    )


def vandermonde_vb(B: Sequence[Point], n: Optional[int] = None) -> ExactMatrix:
    """
    Interpolation matrix of the monomials of degree <= n-2 at the points of B.

    Raises:
        SchemaError: If |B| != binom(n, 2).
    """
    n = _check_points(B, n)
    return _monomial_matrix(B, curve_monomials(n)[: comb(n, 2)])


def rb_matrix(B: Sequence[Point], n: Optional[int] = None) -> ExactMatrix:
    """The monomials x^(n-1), x^(n-2)y, ..., y^(n-1) evaluated at B."""
    n = _check_points(B, n)
    return _monomial_matrix(B, curve_monomials(n)[comb(n, 2):])


def kb_matrix(B: Sequence[Point], n: Optional[int] = None) -> ExactMatrix:
    """
    K_B = [-adj(V_B)·R_B ; det(V_B)·I_n], a kernel basis of [V_B | R_B].

    Defined also when det V_B = 0, in which case the bottom block vanishes.
    """
    n = _check_points(B, n)
    desc = B[0][0].descriptor
    V = vandermonde_vb(B, n)
    R = rb_matrix(B, n)
    K = (-(adjugate(V) @ R)).vstack(ExactMatrix.identity(desc, n) * determinant(V))
    if not (V.hstack(R) @ K).is_zero():
        raise SegreIndexError("K_B is not in the kernel of [V_B | R_B]")
    return K


def substitution_matrix(
    q0: BinaryForm, q1: BinaryForm, q2: BinaryForm, n: int
) -> ExactMatrix:
    """
    Matrix of f ↦ f(Q0, Q1, Q2) on plane curves of degree n-1.

    The column for z^(n-1-i-j)·x^i·y^j holds the 2n-1 coefficients of
    Q0^(n-1-i-j)·Q1^i·Q2^j.
    """
    desc = q0.descriptor
    columns = []
    for i, j in curve_monomials(n):
        form = (q0 ** (n - 1 - i - j)) * (q1**i) * (q2**j)
        columns.append(form.coeffs)
    return ExactMatrix.from_columns(columns, desc)


def gauss_forms(model: ConicModel) -> list[BinaryForm]:
    """The n forms of degree 2n-2 read off the columns of substitution·K_B."""
    n = model.n
    product = substitution_matrix(*model.Q, n) @ kb_matrix(model.B, n)
    return [BinaryForm(2 * n - 2, product.column(i)) for i in range(n)]


def a_invariant(model: ConicModel) -> FieldElement:
    """A(B, Q): the index-matrix determinant of the pulled-back kernel curves."""
    return determinant(index_matrix(gauss_forms(model)))


def point_resultant(model: ConicModel, point: Point) -> FieldElement:
    """Res(Q1 - b_x·Q0, Q2 - b_y·Q0) for one point b."""
    q0, q1, q2 = model.Q
    bx, by = point
    return resultant(q1 - q0 * bx, q2 - q0 * by)


def conic_index_factors(model: ConicModel) -> list[FieldElement]:
    """Per-point involution classes α_b = Res(Q1 - b_x·Q0, Q2 - b_y·Q0)."""
    return [point_resultant(model, b) for b in model.B]


def r_invariant(model: ConicModel) -> FieldElement:
    """R(B, Q): the product of the per-point resultants."""
    return reduce(lambda acc, x: acc * x, conic_index_factors(model), model.descriptor.one())


def conic_index(model: ConicModel, ground: Optional[FieldDescriptor] = None) -> GWClass:
    """
    The class ⟨R(B, Q)⟩ over the ground field.

    For B over a quadratic extension and stable under conjugation, R lies in
    the ground field and is read there.

    Raises:
        DegenerateLineError: If R vanishes.
        UnsupportedFieldError: If R is not defined over the ground field.
    """
    r = r_invariant(model)
    desc = model.descriptor
    ground = ground or desc.ground
    if r.is_zero():
        raise DegenerateLineError("B meets the conic: R(B, Q) vanishes")
    if desc.is_extension:
        if not r.in_ground():
            raise UnsupportedFieldError("R(B, Q) is not defined over the ground field")
        r = ground.element(r.coords[0])
    return GWClass.of(ground, [r])


def verify_identity(model: ConicModel) -> IdentityReport:
    """Evaluate A(B,Q), det V_B and R(B,Q) and compare A with (det V_B)^(2n)·R."""
    det_vb = determinant(vandermonde_vb(model.B, model.n))
    report = IdentityReport(
        a_value=a_invariant(model),
        det_vb=det_vb,
        r_value=r_invariant(model),
        v_value=det_vb ** (2 * model.n),
    )
    logger.debug(
        "n=%d: A=%s detV=%s R=%s passed=%s",
        model.n,
        report.a_value,
        det_vb,
        report.r_value,
        report.passed,
    )
    return report


def _as_elements(values: Sequence, descriptor: Optional[FieldDescriptor]) -> list:
    if descriptor is None:
        descriptor = next(
            (v.descriptor for v in values if isinstance(v, FieldElement)), RATIONALS
        )
    return [descriptor.element(v) for v in values]


def symmetric_family(a: Sequence, descriptor: Optional[FieldDescriptor] = None) -> ConicModel:
    """
    The model B = {(a_i, a_j) : i < j}, Q = (v^2, u^2, u^2).

    Raises:
        SchemaError: If fewer than 3 values are given or two coincide.
    """
    values = _as_elements(a, descriptor)
    if len(values) < 3:
        raise SchemaError("The symmetric family needs n >= 3 values")
    if len(set(values)) != len(values):
        raise SchemaError("The values a_i must be pairwise distinct")
    desc = values[0].descriptor
    B = tuple((values[i], values[j]) for i, j in combinations(range(len(values)), 2))
    u2 = BinaryForm.from_coeffs([1, 0, 0], desc)
    v2 = BinaryForm.from_coeffs([0, 0, 1], desc)
    return ConicModel(n=len(values), B=B, Q=(v2, u2, u2))


@dataclass(frozen=True)
class StepResult:
    step: int
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ClosedFormReport:
    a: tuple
    steps: tuple

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.steps)

    @property
    def failed_steps(self) -> list[int]:
        return [s.step for s in self.steps if not s.passed]


def closed_form_checks(a: Sequence, descriptor: Optional[FieldDescriptor] = None) -> ClosedFormReport:
    """
    Check the closed-form evaluation of the symmetric family, step by step.

    1. R(B, Q) = ∏_{i<j} (a_i - a_j)^2.
    2. det V_B != 0.
    3. Column i (1-based) of Q·K_B has coefficient det(V_B)·(-1)^l·e_l(a without
       a_{n-i+1}) at u^(2n-2-2l) v^(2l), and zero at odd u-exponents.
    4. With N the coefficient matrix of the normalized columns, det N^2 equals
       ∏_{i<j} (a_i - a_j)^2, the index matrix equals N ⊗ I_2, and its
       determinant is det N^2.

    Raises:
        SchemaError: If the values repeat or there are fewer than 3.
    """
    model = symmetric_family(a, descriptor)
    # B starts with (a_1, a_2), ..., (a_1, a_n)
    values = [model.B[0][0]] + [model.B[k][1] for k in range(model.n - 1)]
    n = model.n
    desc = model.descriptor
    vandermonde_product = reduce(
        lambda acc, pair: acc * (pair[0] - pair[1]), combinations(values, 2), desc.one()
    )
    steps = []

    r = r_invariant(model)
    expected_r = vandermonde_product * vandermonde_product
    steps.append(StepResult(1, "resultant product", r == expected_r, f"R={r}"))

    det_vb = determinant(vandermonde_vb(model.B, n))
    steps.append(StepResult(2, "interpolation determinant", not det_vb.is_zero(), f"det V_B={det_vb}"))
    if det_vb.is_zero():
        steps.append(StepResult(3, "coefficient pattern", False, "det V_B vanishes"))
        steps.append(StepResult(4, "block determinant", False, "det V_B vanishes"))
        return ClosedFormReport(a=tuple(values), steps=tuple(steps))

    forms = gauss_forms(model)
    top = 2 * n - 2
    mismatches = []
    for col, form in enumerate(forms):
        rest = [v for k, v in enumerate(values) if k != n - 1 - col]
        for exponent in range(top + 1):
            if (top - exponent) % 2:
                expected = desc.zero()
            else:
                ell = (top - exponent) // 2
                expected = det_vb * ((-1) ** ell) * elementary_symmetric(rest, ell)
            if form.coefficient(exponent) != expected:
                mismatches.append((col + 1, exponent))
    steps.append(
        StepResult(
            3,
            "coefficient pattern",
            not mismatches,
            "all coefficients match" if not mismatches else f"mismatch at {mismatches}",
        )
    )

    inv = det_vb.inverse()
    normalized = [form * inv for form in forms]
    N = ExactMatrix.from_rows(
        [[normalized[col].coefficient(top - 2 * ell) for col in range(n)] for ell in range(n)],
        desc,
    )
    det_n = determinant(N)
    tilde = kronecker_with_identity2(N)
    block = index_matrix(normalized)
    det_square = det_n * det_n
    step4 = (
        det_square == expected_r
        and block == tilde
        and determinant(tilde) == det_square
        and determinant(block) == det_square
    )
    steps.append(StepResult(4, "block determinant", step4, f"det N={det_n}"))
    return ClosedFormReport(a=tuple(values), steps=tuple(steps))


def affine_points(points: Sequence[Sequence], change: ExactMatrix) -> tuple:
    """
    Apply a projective change of coordinates to points [Z : X : Y] and
    dehomogenize at Z.

    Raises:
        SchemaError: If a point lands on Z = 0.
    """
    desc = change.descriptor
    out = []
    for point in points:
        p = [
            reduce(
                lambda acc, k: acc + change[r, k] * desc.element(point[k]),
                range(3),
                desc.zero(),
            )
            for r in range(3)
        ]
        if p[0].is_zero():
            raise SchemaError(f"Point {list(map(str, point))} is sent to Z = 0")
        w = p[0].inverse()
        out.append((p[1] * w, p[2] * w))
    return tuple(out)


def transform_forms(Q: Sequence[BinaryForm], change: ExactMatrix) -> tuple:
    """New conic coordinates: Q'_r = Σ_k change[r, k]·Q_k."""
    return tuple(
        reduce(lambda acc, k: acc + Q[k] * change[r, k], range(1, 3), Q[0] * change[r, 0])
        for r in range(3)
    )


def transform_model(model: ConicModel, change: ExactMatrix) -> ConicModel:
    """
    Apply a projective change of coordinates of P^2 to a conic model.

    For each point b with weight w_b = a_11 + a_12·b_x + a_13·b_y, the point
    resultant changes by the factor (det change / w_b)^2.
    """
    one = model.descriptor.one()
    projective = [(one, bx, by) for bx, by in model.B]
    return ConicModel(
        n=model.n,
        B=affine_points(projective, change),
        Q=transform_forms(model.Q, change),
    )


def _draw(rng: np.random.Generator, low: int, high: int, size: int) -> list[int]:
    return [int(x) for x in rng.integers(low, high, size=size, endpoint=True)]


def random_instance(
    n: int, coeff_bound: int, seed: int, field: FieldDescriptor = RATIONALS
) -> ConicModel:
    """
    A reproducible random conic model.

    Points are distinct integer pairs in [-bound, bound] (residues mod p over
    F_p); the conic coefficients are drawn from the same range. The generator
    is numpy's counter-based Philox keyed by ``seed``.

    Raises:
        SchemaError: If n < 3 or the range cannot hold binom(n, 2) distinct points.
        UnsupportedFieldError: If the field is an extension.
    """
    if n < 3:
        raise SchemaError("Conic models need n >= 3")
    if field.is_extension:
        raise UnsupportedFieldError("Random models are drawn over Q or F_p")
    if field.kind is FieldKind.PRIME:
        low, high = 0, field.modulus - 1
    else:
        low, high = -coeff_bound, coeff_bound
    m = comb(n, 2)
    if (high - low + 1) ** 2 < m:
        raise SchemaError(f"Range too small for {m} distinct points")
    rng = np.random.Generator(np.random.Philox(seed))
    points: list = []
    while len(points) < m:
        candidate = tuple(field.element(c) for c in _draw(rng, low, high, 2))
        if candidate not in points:
            points.append(candidate)
    coeffs = _draw(rng, low, high, 9)
    Q = tuple(BinaryForm.from_coeffs(coeffs[3 * k:3 * k + 3], field) for k in range(3))
    return ConicModel(n=n, B=tuple(points), Q=Q)
