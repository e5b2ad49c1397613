"""
Local indices of lines on hypersurfaces of degree 2n-1.

A line on V(F) is normalized so that F = x_1·P_1(u,v) + ... + x_n·P_n(u,v) + R
with R in (x_1, ..., x_n)^2. The local index of the line is the trace form of the
determinant of the index matrix built from the P_i. For n = 2 and n = 3 the same
class is also computed from the Segre involutions: the nested discriminant for
cubic surfaces and the nodes of the plane quartic [P_1 : P_2 : P_3] for quintic
threefolds.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product as cartesian
from typing import Optional, Sequence

from sympy import Integer, Poly, Rational, symbols

from segre_index.errors import (
    DegenerateLineError,
    FieldMismatchError,
    LineNotOnHypersurfaceError,
    NonGenericCurveError,
    SchemaError,
    SegreIndexError,
    UnsupportedFieldError,
)
from segre_index.fields import (
    FieldDescriptor,
    FieldElement,
    FieldKind,
    field_norm,
    make_extension,
)
from segre_index.gw_ring import GWClass, trace_form
from segre_index.polynomials import (
    BinaryForm,
    ExactMatrix,
    MultiPoly,
    determinant,
    discriminant_quadratic,
    exact_div,
    resultant,
    rref,
    substitute_forms,
    univariate_degree,
    univariate_divmod,
    univariate_gcd,
)

logger = logging.getLogger(__name__)

MOBIUS_SHIFTS = (0, 1, -1, 2, -2, 3, -3, 5, -5, 7)
ELIMINATION_CHANGES = (
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 0, 0), (1, 1, 0), (2, 1, 1)),
    ((1, 2, 0), (0, 1, 3), (1, 0, 1)),
)


@dataclass(frozen=True)
class LineOnHypersurface:
    """
    A line ℓ ⊂ V(F) in P^(n+1).

    Args:
        n (int): F has degree 2n-1 in n+2 variables.
        F (MultiPoly): The hypersurface equation over the ground field.
        span (ExactMatrix): 2×(n+2) matrix over k(ℓ) whose rows span ℓ.
    """

    n: int
    F: MultiPoly
    span: ExactMatrix

    def __post_init__(self):
        if self.n < 2:
            raise SchemaError(f"n must be at least 2, got {self.n}")
        if self.F.nvars != self.n + 2:
            raise SchemaError(
                f"F must have {self.n + 2} variables for n={self.n}, got {self.F.nvars}"
            )
        if (self.span.rows, self.span.cols) != (2, self.n + 2):
            raise SchemaError(
                f"Line span must be 2x{self.n + 2}, got {self.span.rows}x{self.span.cols}"
            )

    @property
    def field_of_line(self) -> FieldDescriptor:
        return self.span.descriptor


@dataclass(frozen=True)
class NormalizedLine:
    """
    Normal form of a line: the P_i in coordinates [u : v : x_1 : ... : x_n].

    Args:
        P (tuple): n binary forms of degree 2n-2 over k(ℓ).
        change_of_coords (ExactMatrix): Rows s_1, s_2, c_1, ..., c_n with
            determinant 1; old coordinates are its transpose applied to
            (u, v, x_1, ..., x_n).
        R_part (MultiPoly): F in the new coordinates minus Σ x_i P_i.
    """

    P: tuple
    change_of_coords: ExactMatrix
    R_part: MultiPoly

    @property
    def n(self) -> int:
        return len(self.P)


@dataclass(frozen=True)
class NodeData:
    """
    One node of the plane quartic [P_1 : P_2 : P_3], up to Galois conjugation.

    Args:
        field (FieldDescriptor): Residue field k(ν).
        point (tuple): Homogeneous coordinates of ν over k(ν).
        nodal_quadratic (BinaryForm): q_ν over k(ν), vanishing at the two
            parameters mapping to ν.
        residual_pair (tuple): (Q_1^ν, Q_2^ν), the quotients of two linear
            forms through ν evaluated on P, divided by q_ν.
        alpha (FieldElement): Res(Q_1^ν, Q_2^ν).
    """

    field: FieldDescriptor
    point: tuple
    nodal_quadratic: BinaryForm
    residual_pair: tuple
    alpha: FieldElement

    @property
    def degree(self) -> int:
        """int: [k(ν) : k]."""
        return self.field.degree


def _lift(poly: MultiPoly, descriptor: FieldDescriptor) -> MultiPoly:
    if poly.descriptor == descriptor:
        return poly
    if descriptor.is_extension and descriptor.base == poly.descriptor:
        return poly.map_coeffs(descriptor)
    raise FieldMismatchError(
        f"Hypersurface over {poly.descriptor} cannot be read over {descriptor}"
    )


def _restrict(poly: MultiPoly, forms: Sequence[BinaryForm], degree: int) -> BinaryForm:
    if poly.is_zero():
        return BinaryForm.zero(degree, forms[0].descriptor)
    return substitute_forms(poly, forms)


def _form_as_poly(form: BinaryForm, nvars: int) -> MultiPoly:
    """Embed a binary form as a polynomial in the first two of ``nvars`` variables."""
    d = form.degree
    rest = (0,) * (nvars - 2)
    return MultiPoly.from_dict(
        form.descriptor,
        nvars,
        {(d - k, k) + rest: c for k, c in enumerate(form.coeffs) if not c.is_zero()},
    )


def normalize_line(line: LineOnHypersurface) -> NormalizedLine:
    """
    Bring F into the normal form x_1·P_1 + ... + x_n·P_n + R along the line.

    The span is completed to a basis with standard vectors outside its pivot
    columns, and the first of them is scaled so the change of coordinates has
    determinant 1.

    Raises:
        SchemaError: If F is not homogeneous of degree 2n-1 or the span has rank < 2.
        LineNotOnHypersurfaceError: If F does not vanish on the line.
    """
    n = line.n
    expected = 2 * n - 1
    if line.F.is_zero() or not line.F.is_homogeneous() or line.F.total_degree != expected:
        raise SchemaError(f"F must be a nonzero form of degree {expected}")
    desc = line.field_of_line
    F = _lift(line.F, desc)

    _, pivots = rref(line.span)
    if len(pivots) < 2:
        raise SchemaError("The rows spanning the line are linearly dependent")
    s1, s2 = line.span.row(0), line.span.row(1)
    param = [BinaryForm(1, (a, b)) for a, b in zip(s1, s2)]

    if not substitute_forms(F, param).is_zero():
        raise LineNotOnHypersurfaceError("F does not vanish identically on the line")

    complement = [k for k in range(n + 2) if k not in pivots]
    zero, one = desc.zero(), desc.one()
    rows = [list(s1), list(s2)] + [
        [one if j == k else zero for j in range(n + 2)] for k in complement
    ]
    det = determinant(ExactMatrix.from_rows(rows, desc))
    scale = det.inverse()
    rows[2] = [e * scale for e in rows[2]]
    change = ExactMatrix.from_rows(rows, desc)
    logger.debug("pivot columns %s, complement %s, scaled by %s", pivots, complement, scale)

    P = []
    for i, k in enumerate(complement):
        factor = scale if i == 0 else one
        P.append(_restrict(F.derivative(k), param, 2 * n - 2) * factor)

    nvars = n + 2
    coordinates = [
        MultiPoly.linear([change[r, k] for r in range(nvars)]) for k in range(nvars)
    ]
    remainder = F.substitute(coordinates)
    for i, form in enumerate(P):
        y = MultiPoly.variable(desc, nvars, i + 2)
        remainder = remainder - y * _form_as_poly(form, nvars)
    if not remainder.is_zero() and remainder.degree_in(range(2, nvars)) < 2:
        raise SegreIndexError("Normal form reconstruction left terms of degree < 2 in x")
    return NormalizedLine(P=tuple(P), change_of_coords=change, R_part=remainder)


def index_matrix(P: Sequence[BinaryForm]) -> ExactMatrix:
    """
    The 2n×2n index matrix of (P_1, ..., P_n).

    Column 2i holds the coefficients of u·P_i and column 2i+1 those of v·P_i,
    in the monomial basis u^(2n-1), u^(2n-2)v, ..., v^(2n-1).

    Raises:
        SchemaError: If some P_i does not have degree 2n-2.
    """
    n = len(P)
    if n == 0:
        raise SchemaError("The index matrix needs at least one form")
    if any(p.degree != 2 * n - 2 for p in P):
        raise SchemaError(f"Every P_i must have degree {2 * n - 2}")
    desc = P[0].descriptor
    if any(p.descriptor != desc for p in P):
        raise FieldMismatchError("The P_i live over different fields")
    zero = desc.zero()
    columns = []
    for p in P:
        columns.append(list(p.coeffs) + [zero])
        columns.append([zero] + list(p.coeffs))
    return ExactMatrix.from_columns(columns, desc)


def index_determinant(line: LineOnHypersurface) -> FieldElement:
    """det of the index matrix of the normalized line, an element of k(ℓ)."""
    return determinant(index_matrix(normalize_line(line).P))


def trace_class(value: FieldElement, ground: FieldDescriptor) -> GWClass:
    """
    Tr_{K/k}⟨value⟩ for value in K = k or a simple extension of k.

    Raises:
        DegenerateLineError: If value is zero.
        UnsupportedFieldError: If K is not k or an extension of k.
    """
    if value.is_zero():
        raise DegenerateLineError("non-simple line: the index determinant vanishes")
    desc = value.descriptor
    if desc == ground or (desc.is_extension and desc.base == ground):
        return trace_form(desc, value)
    raise UnsupportedFieldError(f"Cannot trace from {desc} down to {ground}")


def local_index(line: LineOnHypersurface, ground: FieldDescriptor) -> GWClass:
    """
    The local index Tr_{k(ℓ)/k}⟨det A_{P_1, ..., P_n}⟩.

    Raises:
        DegenerateLineError: If the line is not a simple zero (det A = 0).
        UnsupportedFieldError: If k(ℓ) is neither the ground field nor a simple
            extension of it.
    """
    return trace_class(index_determinant(line), ground)


def segre_alpha_n2(P1: BinaryForm, P2: BinaryForm) -> FieldElement:
    """
    Discriminant of the Segre involution on a line of a cubic surface.

    Computed as Disc_x(Disc_{u,v}(x_1·P_2 - x_2·P_1)); the result is checked
    against 16·Res(P_1, P_2).

    Raises:
        DegenerateLineError: If Res(P_1, P_2) = 0.
    """
    if P1.degree != 2 or P2.degree != 2:
        raise SchemaError("Lines on cubic surfaces have quadratic P_i")
    res = resultant(P1, P2)
    if res.is_zero():
        raise DegenerateLineError("non-simple line: Res(P_1, P_2) vanishes")
    desc = P1.descriptor
    x1 = MultiPoly.variable(desc, 2, 0)
    x2 = MultiPoly.variable(desc, 2, 1)
    pencil = [x1 * b - x2 * a for a, b in zip(P1.coeffs, P2.coeffs)]
    inner = discriminant_quadratic(*pencil)
    alpha = discriminant_quadratic(
        inner.coefficient((2, 0)), inner.coefficient((1, 1)), inner.coefficient((0, 2))
    )
    if alpha != res * 16:
        raise SegreIndexError(f"Nested discriminant {alpha} differs from 16·Res = {res * 16}")
    return alpha


# ---------------------------------------------------------------------------
# nodes of the plane quartic


def _to_sympy(value: FieldElement):
    if value.descriptor.kind is FieldKind.RATIONAL:
        return Rational(value.value.numerator, value.value.denominator)
    return Integer(value.value)


def _from_sympy(value, ground: FieldDescriptor) -> FieldElement:
    value = Rational(value)
    return ground.element(Fraction(int(value.p), int(value.q)))


def _poly_options(ground: FieldDescriptor) -> dict:
    if ground.kind is FieldKind.RATIONAL:
        return {"domain": "QQ"}
    return {"modulus": ground.modulus}


def _bezout_pieces(P: Sequence[BinaryForm], sigma, pi) -> dict:
    """
    Symmetrized divided differences B_ij in σ = s+t and π = st.

    B_ij = (P_i(s)P_j(t) - P_j(s)P_i(t)) / (s - t) for the dehomogenized P.
    """
    degree = P[0].degree
    h = [Integer(1), sigma]
    for m in range(2, degree):
        h.append(sigma * h[m - 1] - pi * h[m - 2])
    pieces = {}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        expr = Integer(0)
        for a in range(degree + 1):
            for b in range(a):
                w = (
                    P[i].coefficient(a) * P[j].coefficient(b)
                    - P[j].coefficient(a) * P[i].coefficient(b)
                )
                if not w.is_zero():
                    expr += _to_sympy(w) * pi**b * h[a - b - 1]
        pieces[(i, j)] = expr
    return pieces


def _specialize(poly: Poly, sigma_value: FieldElement, ground: FieldDescriptor) -> list:
    """Substitute σ into a Poly in (π, σ); descending coefficients in π."""
    field = sigma_value.descriptor
    top = poly.degree(0) if not poly.is_zero else 0
    coeffs = [field.zero() for _ in range(max(top, 0) + 1)]
    for (e_pi, e_sigma), c in poly.terms():
        term = field.element(_from_sympy(c, ground)) * sigma_value**e_sigma
        coeffs[top - e_pi] = coeffs[top - e_pi] + term
    return coeffs


def _has_node_at_infinity(P: Sequence[BinaryForm]) -> bool:
    lead = [p.coeffs[0] for p in P]
    if all(c.is_zero() for c in lead):
        return True
    minors = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        minors.append([lead[j] * a - lead[i] * b for a, b in zip(P[i].coeffs, P[j].coeffs)])
    if all(univariate_degree(m) < 0 for m in minors):
        return True
    return univariate_degree(univariate_gcd(*minors)) > 0


def _node_candidates(P: Sequence[BinaryForm], change) -> Optional[list]:
    """Nodes as (field, σ, π) for one elimination attempt, or None if it fails."""
    ground = P[0].descriptor
    pi, sigma = symbols("pi sigma")
    options = _poly_options(ground)
    genuine = {
        key: Poly(expr, pi, sigma, **options)
        for key, expr in _bezout_pieces(P, sigma, pi).items()
    }
    mixed = [
        BinaryForm(
            P[0].degree,
            tuple(
                reduce(lambda acc, t: acc + t, (P[k].coeffs[c] * g for k, g in enumerate(row)))
                for c in range(P[0].degree + 1)
            ),
        )
        for row in change
    ]
    pieces = _bezout_pieces(mixed, sigma, pi)
    first = Poly(pieces[(0, 1)], pi, sigma, **options)
    second = Poly(pieces[(0, 2)], pi, sigma, **options)
    if first.is_zero or second.is_zero:
        return None
    eliminant = first.resultant(second)
    if eliminant.is_zero:
        return None
    if not isinstance(eliminant, Poly):
        return None
    candidates = []
    for factor, _ in eliminant.factor_list()[1]:
        coeffs = [_from_sympy(c, ground) for c in factor.all_coeffs()]
        if len(coeffs) < 2:
            continue
        lead_inv = coeffs[0].inverse()
        monic = [c * lead_inv for c in coeffs]
        if len(monic) == 2:
            field, sigma_value = ground, -monic[1]
        else:
            field = make_extension(ground, monic)
            sigma_value = field.generator()
        common = univariate_gcd(
            *(_specialize(poly, sigma_value, ground) for poly in genuine.values())
        )
        degree = univariate_degree(common)
        if degree == 0:
            continue
        if degree != 1:
            return None
        pi_value = -common[1]
        if (sigma_value * sigma_value - pi_value * 4).is_zero():
            return None
        candidates.append((field, sigma_value, pi_value))
    if sum(field.degree for field, _, _ in candidates) != 3:
        return None
    return candidates


def _node_point(P: Sequence[BinaryForm], q: BinaryForm) -> tuple:
    field = q.descriptor
    remainders = []
    for p in P:
        _, r = univariate_divmod(p.embed(field).coeffs, q.coeffs)
        r = [field.zero()] * (2 - len(r)) + list(r)
        remainders.append(r)
    for row in (0, 1):
        point = tuple(r[row] for r in remainders)
        if any(not c.is_zero() for c in point):
            return point
    raise NonGenericCurveError("A parameter pair maps to a base point of the quartic")


def _residual_pair(P: Sequence[BinaryForm], point: tuple, q: BinaryForm) -> tuple:
    field = q.descriptor
    lifted = [p.embed(field) for p in P]
    k = next(idx for idx, c in enumerate(point) if not c.is_zero())
    pair = []
    for j in range(3):
        if j == k:
            continue
        line_image = lifted[j] * point[k] - lifted[k] * point[j]
        pair.append(exact_div(line_image, q))
    return tuple(pair)


def quartic_nodes(P1: BinaryForm, P2: BinaryForm, P3: BinaryForm) -> list[NodeData]:
    """
    Nodes of the rational plane quartic [P_1 : P_2 : P_3].

    Parameter pairs {s, t} with P(s) ∥ P(t) are found by eliminating π from
    the symmetrized divided differences in (σ, π) = (s+t, st) and factoring the
    eliminant in σ. Each irreducible factor gives a candidate residue field; a
    candidate is kept when all three divided differences share exactly one π.
    When the parameterization is not in general position (a node at the
    parameter at infinity, coincident σ values, an ambiguous fiber) the
    parameter line is shifted by a Möbius transformation and the elimination
    retried.

    Returns:
        list[NodeData]: One entry per Galois orbit; Σ [k(ν):k] = 3.

    Raises:
        UnsupportedFieldError: If the forms are not over Q or F_p.
        NonGenericCurveError: If no attempt yields three ordinary nodes.
    """
    P = (P1, P2, P3)
    if any(p.degree != 4 for p in P):
        raise SchemaError("The Gauss curve of a quintic line has quartic P_i")
    ground = P1.descriptor
    if any(p.descriptor != ground for p in P):
        raise FieldMismatchError("The P_i live over different fields")
    if ground.is_extension:
        raise UnsupportedFieldError("Node finding runs over Q or F_p only")

    for shift, change in cartesian(MOBIUS_SHIFTS, ELIMINATION_CHANGES):
        if ground.kind is FieldKind.PRIME and abs(shift) >= ground.modulus:
            continue
        shifted = [p.compose_linear(1, 0, shift, 1) for p in P]
        if _has_node_at_infinity(shifted):
            logger.debug("shift %s puts a node or base point at infinity", shift)
            continue
        candidates = _node_candidates(shifted, change)
        if candidates is None:
            logger.debug("elimination attempt with shift %s failed", shift)
            continue
        nodes = []
        for field, sigma_value, pi_value in candidates:
            q_shifted = BinaryForm(2, (field.one(), -sigma_value, pi_value))
            point = _node_point(shifted, q_shifted)
            q = q_shifted.compose_linear(1, 0, -shift, 1)
            pair = _residual_pair(P, point, q)
            alpha = resultant(*pair)
            nodes.append(
                NodeData(
                    field=field,
                    point=point,
                    nodal_quadratic=q,
                    residual_pair=pair,
                    alpha=alpha,
                )
            )
        logger.debug("found %d node orbits with shift %s", len(nodes), shift)
        return nodes
    raise NonGenericCurveError(
        "non-generic Gauss curve: could not isolate three ordinary nodes"
    )


def segre_index_n3(
    P1: BinaryForm, P2: BinaryForm, P3: BinaryForm, ground: FieldDescriptor
) -> GWClass:
    """
    Segre index of a line on a quintic threefold from the nodes of its Gauss curve.

    Returns Tr⟨∏_ν N_{k(ν)/k}(α_ν)⟩, where α_ν is the resultant of the residual
    pair at ν.

    Raises:
        DegenerateLineError: If some α_ν vanishes.
        NonGenericCurveError: Propagated from node finding.
    """
    nodes = quartic_nodes(P1, P2, P3)
    product = P1.descriptor.one()
    for node in nodes:
        alpha = node.alpha
        if alpha.is_zero():
            raise DegenerateLineError("non-simple line: a residual pair has a common root")
        product = product * (field_norm(alpha) if node.field.is_extension else alpha)
    return trace_class(product, ground)


def segre_index(line: LineOnHypersurface, ground: FieldDescriptor) -> GWClass:
    """
    Segre index of a line for n = 2 (involution discriminant) or n = 3 (nodes).

    Raises:
        UnsupportedFieldError: For n >= 4, which is handled through conic models,
            or for n = 3 lines not defined over the ground field.
    """
    normalized = normalize_line(line)
    if line.n == 2:
        return trace_class(segre_alpha_n2(*normalized.P), ground)
    if line.n == 3:
        if normalized.P[0].descriptor != ground:
            raise UnsupportedFieldError(
                "Segre indices for n = 3 need a line defined over the ground field"
            )
        return segre_index_n3(*normalized.P, ground)
    raise UnsupportedFieldError(
        "Segre indices for n >= 4 are computed through conic models"
    )
