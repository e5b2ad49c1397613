"""
Exact polynomial and matrix arithmetic over the fields of ``segre_index.fields``.

Binary forms store coefficients in descending powers of ``u``; the ascending
indexing used for the coefficients of the normalized forms is available through
``BinaryForm.coefficient``. Resultants are Sylvester determinants with the rows
of the first argument on top, and that sign convention is used everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from typing import Callable, Iterable, Optional, Sequence

from segre_index.errors import (
    FieldMismatchError,
    InexactDivisionError,
    SchemaError,
    ZeroElementError,
)
from segre_index.fields import FieldDescriptor, FieldElement, FieldKind


def _common_descriptor(values: Iterable[FieldElement]) -> FieldDescriptor:
    descriptors = {v.descriptor for v in values}
    if len(descriptors) != 1:
        raise FieldMismatchError(
            "Values come from different fields: "
            + ", ".join(sorted(str(d) for d in descriptors))
        )
    return descriptors.pop()


def _is_plain_scalar(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


# ---------------------------------------------------------------------------
# binary forms


@dataclass(frozen=True)
class BinaryForm:
    """
    A homogeneous polynomial in (u, v) of a declared degree.

    Args:
        degree (int): The declared degree d.
        coeffs (tuple): d+1 coefficients of u^d, u^(d-1)v, ..., v^d.
    """

    degree: int
    coeffs: tuple

    def __post_init__(self):
        if self.degree < 0 or len(self.coeffs) != self.degree + 1:
            raise SchemaError(
                f"A form of degree {self.degree} needs {self.degree + 1} coefficients,"
                f" got {len(self.coeffs)}"
            )
        _common_descriptor(self.coeffs)

    @classmethod
    def from_coeffs(
        cls, coeffs: Sequence, descriptor: Optional[FieldDescriptor] = None
    ) -> "BinaryForm":
        """Build a form from descending coefficients, coercing plain numbers."""
        if descriptor is None:
            descriptor = next(
                (c.descriptor for c in coeffs if isinstance(c, FieldElement)), None
            )
            if descriptor is None:
                raise SchemaError("Cannot infer the field of a form without elements")
        return cls(len(coeffs) - 1, tuple(descriptor.element(c) for c in coeffs))

    @classmethod
    def zero(cls, degree: int, descriptor: FieldDescriptor) -> "BinaryForm":
        return cls(degree, tuple(descriptor.zero() for _ in range(degree + 1)))

    @classmethod
    def constant(cls, value: FieldElement) -> "BinaryForm":
        return cls(0, (value,))

    @property
    def descriptor(self) -> FieldDescriptor:
        return self.coeffs[0].descriptor

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def coefficient(self, j: int) -> FieldElement:
        """
        Coefficient of u^j v^(d-j), the ascending-exponent indexing.

        Args:
            j (int): Exponent of u, 0 <= j <= d.
        """
        if not 0 <= j <= self.degree:
            raise SchemaError(f"Exponent {j} out of range for degree {self.degree}")
        return self.coeffs[self.degree - j]

    def _check_same(self, other: "BinaryForm") -> None:
        if other.degree != self.degree:
            raise SchemaError(
                f"Degree mismatch: {self.degree} and {other.degree}"
            )
        if other.descriptor != self.descriptor:
            raise FieldMismatchError(
                f"Forms over {self.descriptor} and {other.descriptor}"
            )

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        self._check_same(other)
        return BinaryForm(
            self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.degree, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            if other.descriptor != self.descriptor:
                raise FieldMismatchError(
                    f"Forms over {self.descriptor} and {other.descriptor}"
                )
            zero = self.descriptor.zero()
            out = [zero] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.coeffs):
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
            return BinaryForm(self.degree + other.degree, tuple(out))
        if isinstance(other, FieldElement) or _is_plain_scalar(other):
            return BinaryForm(self.degree, tuple(c * other for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "BinaryForm":
        result = BinaryForm.constant(self.descriptor.one())
        for _ in range(exponent):
            result = result * self
        return result

    def evaluate(self, u, v) -> FieldElement:
        total = self.descriptor.zero()
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                total = total + c * (u ** (self.degree - k)) * (v**k)
        return total

    def compose_linear(self, a, b, c, d) -> "BinaryForm":
        """Return f(a·u + b·v, c·u + d·v)."""
        desc = self.descriptor
        first = BinaryForm.from_coeffs([a, b], desc)
        second = BinaryForm.from_coeffs([c, d], desc)
        result = BinaryForm.zero(self.degree, desc)
        for k, coeff in enumerate(self.coeffs):
            if not coeff.is_zero():
                result = result + (first ** (self.degree - k)) * (second**k) * coeff
        return result

    def map_coeffs(
        self, fn: Callable[[FieldElement], FieldElement]
    ) -> "BinaryForm":
        return BinaryForm(self.degree, tuple(fn(c) for c in self.coeffs))

    def embed(self, descriptor: FieldDescriptor) -> "BinaryForm":
        """Coerce the coefficients into ``descriptor`` (e.g. an extension)."""
        return self.map_coeffs(descriptor.element)

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            e_u, e_v = self.degree - k, k
            mono = "".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in (("u", e_u), ("v", e_v))
                if e
            )
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts) or "0"


# ---------------------------------------------------------------------------
# univariate helpers on descending coefficient lists


def _trim(coeffs: Sequence[FieldElement]) -> list[FieldElement]:
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[0].is_zero():
        coeffs.pop(0)
    return coeffs


def univariate_divmod(
    num: Sequence[FieldElement], den: Sequence[FieldElement]
) -> tuple[list[FieldElement], list[FieldElement]]:
    """
    Long division of univariate polynomials given as descending coefficient lists.

    Returns:
        tuple: (quotient, remainder), both trimmed.

    Raises:
        ZeroElementError: If the divisor is zero.
    """
    den = _trim(den)
    if den[0].is_zero():
        raise ZeroElementError("Division by the zero polynomial")
    rem = _trim(num)
    zero = den[0].descriptor.zero()
    if len(rem) < len(den):
        return [zero], rem
    lead_inv = den[0].inverse()
    quotient = [zero] * (len(rem) - len(den) + 1)
    rem = list(rem)
    for k in range(len(quotient)):
        factor = rem[k] * lead_inv
        quotient[k] = factor
        if factor.is_zero():
            continue
        for i, d in enumerate(den):
            rem[k + i] = rem[k + i] - factor * d
    remainder = _trim(rem[len(quotient):] or [zero])
    return quotient, remainder


def univariate_gcd(*polys: Sequence[FieldElement]) -> list[FieldElement]:
    """Monic gcd of univariate polynomials (descending coefficients); [0] if all vanish."""
    result: Optional[list[FieldElement]] = None
    for poly in polys:
        poly = _trim(poly)
        if result is None:
            result = poly
            continue
        a, b = result, poly
        while not (len(b) == 1 and b[0].is_zero()):
            _, r = univariate_divmod(a, b)
            a, b = b, r
        result = a
    if result is None or result[0].is_zero():
        return result or []
    lead_inv = result[0].inverse()
    return [c * lead_inv for c in result]


def univariate_degree(poly: Sequence[FieldElement]) -> int:
    """Degree of a trimmed polynomial; -1 for the zero polynomial."""
    poly = _trim(poly)
    if len(poly) == 1 and poly[0].is_zero():
        return -1
    return len(poly) - 1


# ---------------------------------------------------------------------------
# multivariate polynomials


def _grlex_key(exps: tuple) -> tuple:
    return (sum(exps), exps)


@dataclass(frozen=True)
class MultiPoly:
    """
    A sparse multivariate polynomial.

    Args:
        descriptor (FieldDescriptor): The coefficient field.
        nvars (int): Number of variables.
        terms (tuple): Pairs (exponent tuple, nonzero coefficient), sorted in
            decreasing graded-lexicographic order.
    """

    descriptor: FieldDescriptor
    nvars: int
    terms: tuple = ()

    @classmethod
    def from_dict(
        cls, descriptor: FieldDescriptor, nvars: int, coeffs: dict
    ) -> "MultiPoly":
        terms = []
        for exps, c in coeffs.items():
            exps = tuple(exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise SchemaError(f"Bad exponent vector {exps} for {nvars} variables")
            c = descriptor.element(c)
            if not c.is_zero():
                terms.append((exps, c))
        terms.sort(key=lambda t: _grlex_key(t[0]), reverse=True)
        return cls(descriptor, nvars, tuple(terms))

    @classmethod
    def variable(cls, descriptor: FieldDescriptor, nvars: int, index: int) -> "MultiPoly":
        exps = tuple(1 if k == index else 0 for k in range(nvars))
        return cls.from_dict(descriptor, nvars, {exps: 1})

    @classmethod
    def constant(cls, descriptor: FieldDescriptor, nvars: int, value) -> "MultiPoly":
        return cls.from_dict(descriptor, nvars, {(0,) * nvars: value})

    @classmethod
    def linear(cls, coefficients: Sequence[FieldElement]) -> "MultiPoly":
        """The linear form sum_k c_k X_k."""
        desc = _common_descriptor(coefficients)
        n = len(coefficients)
        return cls.from_dict(
            desc,
            n,
            {tuple(1 if k == i else 0 for k in range(n)): c for i, c in enumerate(coefficients)},
        )

    def as_dict(self) -> dict:
        return dict(self.terms)

    def coefficient(self, exps: Sequence[int]) -> FieldElement:
        return self.as_dict().get(tuple(exps), self.descriptor.zero())

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        """int: Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e, _ in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    def _check(self, other: "MultiPoly") -> None:
        if other.nvars != self.nvars:
            raise SchemaError(f"Variable counts differ: {self.nvars} and {other.nvars}")
        if other.descriptor != self.descriptor:
            raise FieldMismatchError(
                f"Polynomials over {self.descriptor} and {other.descriptor}"
            )

    def __add__(self, other):
        if isinstance(other, FieldElement) or _is_plain_scalar(other):
            other = MultiPoly.constant(self.descriptor, self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        acc = self.as_dict()
        for exps, c in other.terms:
            acc[exps] = acc[exps] + c if exps in acc else c
        return MultiPoly.from_dict(self.descriptor, self.nvars, acc)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.descriptor, self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        if isinstance(other, FieldElement) or _is_plain_scalar(other):
            other = MultiPoly.constant(self.descriptor, self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, FieldElement) or _is_plain_scalar(other):
            c = self.descriptor.element(other)
            return MultiPoly.from_dict(
                self.descriptor, self.nvars, {e: v * c for e, v in self.terms}
            )
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                exps = tuple(a + b for a, b in zip(e1, e2))
                value = c1 * c2
                acc[exps] = acc[exps] + value if exps in acc else value
        return MultiPoly.from_dict(self.descriptor, self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultiPoly":
        result = MultiPoly.constant(self.descriptor, self.nvars, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def derivative(self, index: int) -> "MultiPoly":
        """Partial derivative with respect to variable ``index``."""
        acc = {}
        for exps, c in self.terms:
            e = exps[index]
            if e == 0:
                continue
            lowered = exps[:index] + (e - 1,) + exps[index + 1:]
            acc[lowered] = c * e
        return MultiPoly.from_dict(self.descriptor, self.nvars, acc)

    def evaluate(self, values: Sequence) -> FieldElement:
        total = self.descriptor.zero()
        for exps, c in self.terms:
            term = c
            for x, e in zip(values, exps):
                if e:
                    term = term * (x**e)
            total = total + term
        return total

    def substitute(self, polys: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace variable k by ``polys[k]`` (all polynomials in a common ring)."""
        if len(polys) != self.nvars:
            raise SchemaError(f"Need {self.nvars} substitutions, got {len(polys)}")
        target = polys[0]
        powers = _power_tables(polys, self.terms, lambda p: MultiPoly.constant(
            target.descriptor, target.nvars, 1))
        result = MultiPoly(target.descriptor, target.nvars, ())
        for exps, c in self.terms:
            term = MultiPoly.constant(target.descriptor, target.nvars, c)
            for k, e in enumerate(exps):
                if e:
                    term = term * powers[k][e]
            result = result + term
        return result

    def map_coeffs(self, descriptor: FieldDescriptor) -> "MultiPoly":
        """Coerce every coefficient into ``descriptor``."""
        return MultiPoly.from_dict(
            descriptor, self.nvars, {e: descriptor.element(c) for e, c in self.terms}
        )

    def degree_in(self, indices: Sequence[int]) -> int:
        """Smallest combined degree in the given variables over all terms."""
        return min((sum(exps[i] for i in indices) for exps, _ in self.terms), default=-1)

    def __str__(self) -> str:
        parts = []
        for exps, c in self.terms:
            mono = "*".join(
                f"x{k}" if e == 1 else f"x{k}^{e}" for k, e in enumerate(exps) if e
            )
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts) or "0"


def _power_tables(polys, terms, one_factory) -> list[list]:
    tables = []
    for k, p in enumerate(polys):
        top = max((exps[k] for exps, _ in terms), default=0)
        table = [one_factory(p)]
        for _ in range(top):
            table.append(table[-1] * p)
        tables.append(table)
    return tables


def substitute_forms(poly: MultiPoly, forms: Sequence[BinaryForm]) -> BinaryForm:
    """
    Substitute binary forms of a common degree into a homogeneous polynomial.

    Args:
        poly (MultiPoly): Homogeneous of degree e.
        forms (Sequence[BinaryForm]): One form per variable, all of degree d.

    Returns:
        BinaryForm: The degree e·d result.

    Raises:
        SchemaError: If ``poly`` is zero or not homogeneous, or the forms differ in degree.
    """
    if len(forms) != poly.nvars:
        raise SchemaError(f"Need {poly.nvars} forms, got {len(forms)}")
    if poly.is_zero() or not poly.is_homogeneous():
        raise SchemaError("Substitution requires a nonzero homogeneous polynomial")
    degrees = {f.degree for f in forms}
    if len(degrees) != 1:
        raise SchemaError("Substituted forms must share one degree")
    desc = _common_descriptor(f.descriptor.one() for f in forms)
    if poly.descriptor != desc:
        raise FieldMismatchError(
            f"Polynomial over {poly.descriptor}, forms over {desc}"
        )
    d = degrees.pop()
    e = poly.total_degree
    powers = _power_tables(
        forms, poly.terms, lambda f: BinaryForm.constant(desc.one())
    )
    result = BinaryForm.zero(e * d, desc)
    for exps, c in poly.terms:
        term = BinaryForm.constant(c)
        for k, power in enumerate(exps):
            if power:
                term = term * powers[k][power]
        result = result + term
    return result


def substitute_conic(
    curve: MultiPoly, q0: BinaryForm, q1: BinaryForm, q2: BinaryForm
) -> BinaryForm:
    """
    Pull a plane curve back along the parameterized conic [Q0 : Q1 : Q2].

    Variable k of ``curve`` is replaced by Q_k.

    Raises:
        SchemaError: If the curve is not a homogeneous polynomial in 3 variables
            or the forms are not quadratic.
    """
    if curve.nvars != 3:
        raise SchemaError("A plane curve has exactly 3 variables")
    if any(q.degree != 2 for q in (q0, q1, q2)):
        raise SchemaError("Conic parameterizations are quadratic forms")
    return substitute_forms(curve, [q0, q1, q2])


def exact_div(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """
    Divide binary forms when the division is exact.

    Args:
        f (BinaryForm): Dividend.
        g (BinaryForm): Nonzero divisor with deg g <= deg f.

    Returns:
        BinaryForm: The quotient of degree deg f - deg g.

    Raises:
        ZeroElementError: If ``g`` is zero.
        InexactDivisionError: If ``g`` does not divide ``f``.
    """
    if g.is_zero():
        raise ZeroElementError("Division by the zero form")
    if f.descriptor != g.descriptor:
        raise FieldMismatchError(f"Forms over {f.descriptor} and {g.descriptor}")
    if g.degree > f.degree:
        raise InexactDivisionError("Divisor has larger degree than dividend")
    target = f.degree - g.degree
    if f.is_zero():
        return BinaryForm.zero(target, f.descriptor)
    # leading zeros in the u-descending order are powers of v
    v_power_f = next(k for k, c in enumerate(f.coeffs) if not c.is_zero())
    v_power_g = next(k for k, c in enumerate(g.coeffs) if not c.is_zero())
    if v_power_f < v_power_g:
        raise InexactDivisionError(f"{g} does not divide {f}")
    quotient, remainder = univariate_divmod(f.coeffs, g.coeffs)
    if univariate_degree(remainder) >= 0:
        raise InexactDivisionError(f"{g} does not divide {f}")
    zero = f.descriptor.zero()
    padded = [zero] * (target + 1 - len(quotient)) + list(quotient)
    return BinaryForm(target, tuple(padded))


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class ExactMatrix:
    """
    A dense matrix of field elements in row-major order.

    Args:
        descriptor (FieldDescriptor): Field of the entries.
        rows (int): Row count.
        cols (int): Column count.
        entries (tuple): rows·cols elements.
    """

    descriptor: FieldDescriptor
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise SchemaError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries"
            )

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence], descriptor: Optional[FieldDescriptor] = None
    ) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if descriptor is None:
            descriptor = _common_descriptor(
                c for r in rows for c in r if isinstance(c, FieldElement)
            )
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise SchemaError("Ragged rows")
        cols = widths.pop() if widths else 0
        entries = tuple(descriptor.element(c) for r in rows for c in r)
        return cls(descriptor, len(rows), cols, entries)

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence], descriptor: Optional[FieldDescriptor] = None
    ) -> "ExactMatrix":
        return cls.from_rows(list(zip(*columns)), descriptor)

    @classmethod
    def zeros(cls, descriptor: FieldDescriptor, rows: int, cols: int) -> "ExactMatrix":
        return cls(descriptor, rows, cols, tuple(descriptor.zero() for _ in range(rows * cols)))

    @classmethod
    def identity(cls, descriptor: FieldDescriptor, n: int) -> "ExactMatrix":
        one, zero = descriptor.one(), descriptor.zero()
        return cls(
            descriptor, n, n, tuple(one if i == j else zero for i in range(n) for j in range(n))
        )

    def __getitem__(self, index: tuple) -> FieldElement:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[FieldElement]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_rows(
            [self.column(j) for j in range(self.cols)], self.descriptor
        )

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise SchemaError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        if self.descriptor != other.descriptor:
            raise FieldMismatchError(
                f"Matrices over {self.descriptor} and {other.descriptor}"
            )
        zero = self.descriptor.zero()
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            row = self.row(i)
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                out.append(acc)
        return ExactMatrix(self.descriptor, self.rows, other.cols, tuple(out))

    def __mul__(self, scalar) -> "ExactMatrix":
        return ExactMatrix(
            self.descriptor, self.rows, self.cols, tuple(e * scalar for e in self.entries)
        )

    __rmul__ = __mul__

    def __neg__(self) -> "ExactMatrix":
        return self * -1

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise SchemaError("Shape mismatch in matrix addition")
        return ExactMatrix(
            self.descriptor,
            self.rows,
            self.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise SchemaError("Row counts differ in horizontal stacking")
        return ExactMatrix.from_rows(
            [self.row(i) + other.row(i) for i in range(self.rows)], self.descriptor
        )

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols:
            raise SchemaError("Column counts differ in vertical stacking")
        return ExactMatrix(
            self.descriptor, self.rows + other.rows, self.cols, self.entries + other.entries
        )

    def minor(self, skip_row: int, skip_col: int) -> "ExactMatrix":
        return ExactMatrix.from_rows(
            [
                [e for j, e in enumerate(self.row(i)) if j != skip_col]
                for i in range(self.rows)
                if i != skip_row
            ],
            self.descriptor,
        )


def _bareiss_integer(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // previous
        previous = m[k][k]
    return sign * m[n - 1][n - 1]


def _gaussian_det(matrix: ExactMatrix) -> FieldElement:
    n = matrix.rows
    rows = matrix.to_rows()
    det = matrix.descriptor.one()
    for col in range(n):
        pivot = next((r for r in range(col, n) if not rows[r][col].is_zero()), None)
        if pivot is None:
            return matrix.descriptor.zero()
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        lead = rows[col][col]
        det = det * lead
        lead_inv = lead.inverse()
        for r in range(col + 1, n):
            if not rows[r][col].is_zero():
                factor = rows[r][col] * lead_inv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return det


def determinant(matrix: ExactMatrix) -> FieldElement:
    """
    Exact determinant.

    Over Q the rows are cleared of denominators and the integer matrix is
    reduced by Bareiss fraction-free elimination; other fields use Gaussian
    elimination.

    Raises:
        SchemaError: If the matrix is not square.
    """
    if not matrix.is_square():
        raise SchemaError(f"Determinant of a {matrix.rows}x{matrix.cols} matrix")
    desc = matrix.descriptor
    if desc.kind is FieldKind.RATIONAL:
        scale = 1
        integer_rows = []
        for i in range(matrix.rows):
            values = [e.value for e in matrix.row(i)]
            lcm = math.lcm(*(v.denominator for v in values)) if values else 1
            scale *= lcm
            integer_rows.append([int(v * lcm) for v in values])
        return desc.element(Fraction(_bareiss_integer(integer_rows), scale))
    return _gaussian_det(matrix)


def rref(matrix: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """
    Reduced row echelon form.

    Returns:
        tuple: (reduced matrix, pivot column indices).
    """
    rows = matrix.to_rows()
    pivots: list[int] = []
    r = 0
    for col in range(matrix.cols):
        pivot = next((i for i in range(r, matrix.rows) if not rows[i][col].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead_inv = rows[r][col].inverse()
        rows[r] = [e * lead_inv for e in rows[r]]
        for i in range(matrix.rows):
            if i != r and not rows[i][col].is_zero():
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == matrix.rows:
            break
    return ExactMatrix.from_rows(rows, matrix.descriptor), pivots


def rank(matrix: ExactMatrix) -> int:
    return len(rref(matrix)[1])


def inverse(matrix: ExactMatrix) -> ExactMatrix:
    """
    Inverse of a nonsingular square matrix by Gauss-Jordan elimination.

    Raises:
        ZeroElementError: If the matrix is singular.
    """
    n = matrix.rows
    augmented = matrix.hstack(ExactMatrix.identity(matrix.descriptor, n))
    reduced, pivots = rref(augmented)
    if pivots[:n] != list(range(n)):
        raise ZeroElementError("Singular matrix has no inverse")
    return ExactMatrix.from_rows(
        [reduced.row(i)[n:] for i in range(n)], matrix.descriptor
    )


def adjugate(matrix: ExactMatrix) -> ExactMatrix:
    """
    Classical adjugate, defined also for singular matrices.

    Satisfies M·adj(M) = adj(M)·M = det(M)·I.
    """
    if not matrix.is_square():
        raise SchemaError("Adjugate of a non-square matrix")
    n = matrix.rows
    desc = matrix.descriptor
    if n == 1:
        return ExactMatrix.identity(desc, 1)
    det = determinant(matrix)
    if not det.is_zero():
        return inverse(matrix) * det
    if rank(matrix) < n - 1:
        return ExactMatrix.zeros(desc, n, n)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            cofactor = determinant(matrix.minor(j, i))
            row.append(cofactor if (i + j) % 2 == 0 else -cofactor)
        rows.append(row)
    return ExactMatrix.from_rows(rows, desc)


def kronecker_with_identity2(matrix: ExactMatrix) -> ExactMatrix:
    """
    The Kronecker product M ⊗ I_2 with interleaved layout.

    Entry (2i+e, 2j+f) equals M[i, j] when e == f and 0 otherwise, so the
    determinant is det(M)^2.
    """
    if not matrix.is_square():
        raise SchemaError("Kronecker product with I_2 expects a square matrix")
    zero = matrix.descriptor.zero()
    n = matrix.rows
    rows = []
    for i, e in cartesian(range(n), range(2)):
        rows.append(
            [matrix[i, j] if e == f else zero for j, f in cartesian(range(n), range(2))]
        )
    return ExactMatrix.from_rows(rows, matrix.descriptor)


def sylvester_matrix(f: BinaryForm, g: BinaryForm) -> ExactMatrix:
    """
    Sylvester matrix of two forms of declared degrees m and n.

    The n shifted coefficient rows of ``f`` come first, then the m rows of ``g``.
    """
    m, n = f.degree, g.degree
    if m < 1 or n < 1:
        raise SchemaError("Resultants need forms of degree at least 1")
    if f.descriptor != g.descriptor:
        raise FieldMismatchError(f"Forms over {f.descriptor} and {g.descriptor}")
    zero = f.descriptor.zero()
    size = m + n
    rows = []
    for shift in range(n):
        rows.append([zero] * shift + list(f.coeffs) + [zero] * (size - m - 1 - shift))
    for shift in range(m):
        rows.append([zero] * shift + list(g.coeffs) + [zero] * (size - n - 1 - shift))
    return ExactMatrix.from_rows(rows, f.descriptor)


def resultant(f: BinaryForm, g: BinaryForm) -> FieldElement:
    """
    Resultant of two binary forms as the Sylvester determinant.

    Zero leading coefficients are allowed; the declared degrees fix the matrix.

    Raises:
        FieldMismatchError: If the forms live over different fields.
    """
    return determinant(sylvester_matrix(f, g))


def discriminant_quadratic(a, b, c):
    """
    Discriminant b^2 - 4ac of a·s^2 + b·st + c·t^2.

    The coefficients may be field elements, polynomials or plain numbers, as
    long as the non-plain ones share one ring.

    Raises:
        FieldMismatchError: If the coefficients come from different rings.
    """
    rings = set()
    for value in (a, b, c):
        if isinstance(value, FieldElement):
            rings.add(("element", value.descriptor))
        elif isinstance(value, MultiPoly):
            rings.add(("poly", value.descriptor, value.nvars))
        elif isinstance(value, BinaryForm):
            rings.add(("form", value.descriptor))
        elif not _is_plain_scalar(value):
            raise FieldMismatchError(f"Unsupported coefficient {value!r}")
    if len(rings) > 1:
        raise FieldMismatchError("Discriminant coefficients come from different rings")
    return b * b - 4 * a * c
