"""
Exact arithmetic over Q, prime fields F_p and simple extensions k[z]/(f).

Elements are immutable and always carry their field descriptor. Extension
elements store their coordinates on the power basis 1, z, ..., z^(d-1) as raw
scalars of the ground field (``Fraction`` for Q, ``int`` in [0, p) for F_p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from sympy import factorint, isprime
from sympy.ntheory.residue_ntheory import is_quad_residue

from segre_index.errors import (
    FactorizationBudgetError,
    FieldMismatchError,
    SchemaError,
    UnsupportedFieldError,
    ZeroElementError,
)

Scalar = Union[int, Fraction]

TRIAL_DIVISION_LIMIT = 10**6
FACTORIZATION_BIT_BUDGET = 256


class FieldKind(str, Enum):
    RATIONAL = "Q"
    PRIME = "fp"
    EXTENSION = "ext"


@dataclass(frozen=True)
class FieldDescriptor:
    """
    Description of one of the supported fields.

    Args:
        kind (FieldKind): Rational, prime field or simple extension.
        modulus (int, optional): The odd prime p for prime fields.
        base (FieldDescriptor, optional): Q or F_p for extensions.
        min_poly (tuple): Monic minimal polynomial of the generator, as raw
            base scalars in descending order (leading 1 first).
    """

    kind: FieldKind
    modulus: Optional[int] = None
    base: Optional["FieldDescriptor"] = None
    min_poly: tuple = field(default=())

    @property
    def degree(self) -> int:
        """int: Degree over the ground field (1 for Q and F_p)."""
        if self.kind is FieldKind.EXTENSION:
            return len(self.min_poly) - 1
        return 1

    @property
    def ground(self) -> "FieldDescriptor":
        """FieldDescriptor: Q or F_p underneath this field."""
        return self.base if self.kind is FieldKind.EXTENSION else self

    @property
    def is_extension(self) -> bool:
        return self.kind is FieldKind.EXTENSION

    @property
    def characteristic(self) -> int:
        ground = self.ground
        return 0 if ground.kind is FieldKind.RATIONAL else ground.modulus

    def __str__(self) -> str:
        if self.kind is FieldKind.RATIONAL:
            return "Q"
        if self.kind is FieldKind.PRIME:
            return f"F_{self.modulus}"
        return f"{self.base}[z]/({_format_poly(self.min_poly, 'z')})"

    # raw scalar helpers, only meaningful on Q and F_p

    def _reduce(self, value: Scalar) -> Scalar:
        if self.kind is FieldKind.RATIONAL:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.modulus == 0:
                raise ZeroElementError(
                    f"Denominator of {value} vanishes modulo {self.modulus}"
                )
            inverse = pow(value.denominator, -1, self.modulus)
            return value.numerator * inverse % self.modulus
        return int(value) % self.modulus

    def _divide(self, a: Scalar, b: Scalar) -> Scalar:
        if not b:
            raise ZeroElementError("Division by zero")
        if self.kind is FieldKind.RATIONAL:
            return Fraction(a) / Fraction(b)
        return a * pow(b, -1, self.modulus) % self.modulus

    def _zero_coords(self) -> tuple:
        return tuple(self.ground._reduce(0) for _ in range(self.degree))

    def element(self, value) -> "FieldElement":
        """
        Coerce a Python value into this field.

        Args:
            value: A ``FieldElement`` of this field or of its ground field,
                an ``int``, a ``Fraction``, a string ``"p/q"``, or (extensions
                only) a sequence of ground coordinates.

        Returns:
            FieldElement: The coerced element.

        Raises:
            FieldMismatchError: If a field element from an unrelated field is given.
        """
        if isinstance(value, FieldElement):
            if value.descriptor == self:
                return value
            if self.is_extension and value.descriptor == self.base:
                coords = list(self._zero_coords())
                coords[0] = value.coords[0]
                return FieldElement(self, tuple(coords))
            raise FieldMismatchError(
                f"Cannot coerce element of {value.descriptor} into {self}"
            )
        if isinstance(value, str):
            value = parse_scalar(value)
        if isinstance(value, (list, tuple)):
            if not self.is_extension or len(value) != self.degree:
                raise SchemaError(f"Coordinate vector {value!r} does not fit {self}")
            coords = tuple(
                self.base._reduce(parse_scalar(c) if isinstance(c, str) else c)
                for c in value
            )
            return FieldElement(self, coords)
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise SchemaError(f"Cannot interpret {value!r} as a field element")
        coords = list(self._zero_coords())
        coords[0] = self.ground._reduce(value)
        return FieldElement(self, tuple(coords))

    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)

    def generator(self) -> "FieldElement":
        """FieldElement: The class of z in k[z]/(f)."""
        if not self.is_extension:
            raise UnsupportedFieldError(f"{self} has no extension generator")
        coords = list(self._zero_coords())
        coords[1] = self.base._reduce(1)
        return FieldElement(self, tuple(coords))


RATIONALS = FieldDescriptor(FieldKind.RATIONAL)


def prime_field(p: int) -> FieldDescriptor:
    """
    Build the descriptor of F_p.

    Raises:
        SchemaError: If p is not an odd prime.
    """
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise SchemaError(f"Modulus must be an odd prime, got {p!r}")
    return FieldDescriptor(FieldKind.PRIME, modulus=p)


def make_extension(base: FieldDescriptor, min_poly: Sequence) -> FieldDescriptor:
    """
    Build the simple extension base[z]/(min_poly).

    Irreducibility of ``min_poly`` is the caller's responsibility.

    Args:
        base (FieldDescriptor): Q or F_p.
        min_poly (Sequence): Coefficients in descending order, leading 1 first.

    Returns:
        FieldDescriptor: The extension descriptor.

    Raises:
        UnsupportedFieldError: If ``base`` is itself an extension.
        SchemaError: If the polynomial is not monic or has degree below 2.
    """
    if base.is_extension:
        raise UnsupportedFieldError(
            "Extension towers are not supported; give one minimal polynomial "
            "over Q or F_p"
        )
    coeffs = []
    for c in min_poly:
        if isinstance(c, FieldElement):
            if c.descriptor != base:
                raise FieldMismatchError(f"Coefficient {c} is not in {base}")
            c = c.coords[0]
        elif isinstance(c, str):
            c = parse_scalar(c)
        coeffs.append(base._reduce(c))
    if len(coeffs) < 3:
        raise SchemaError("Minimal polynomial must have degree at least 2")
    if coeffs[0] != 1:
        raise SchemaError(f"Minimal polynomial must be monic, got leading {coeffs[0]}")
    return FieldDescriptor(FieldKind.EXTENSION, base=base, min_poly=tuple(coeffs))


@dataclass(frozen=True, eq=False)
class FieldElement:
    """
    An exact element of a supported field.

    Args:
        descriptor (FieldDescriptor): The field the element lives in.
        coords (tuple): Ground-field coordinates on the power basis.
    """

    descriptor: FieldDescriptor
    coords: tuple

    @property
    def value(self) -> Scalar:
        """The raw scalar of an element of Q or F_p."""
        if self.descriptor.is_extension:
            raise UnsupportedFieldError("Extension elements have no single scalar")
        return self.coords[0]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def in_ground(self) -> bool:
        """bool: True when only the constant coordinate is nonzero."""
        return not any(self.coords[1:])

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.descriptor != self.descriptor:
                raise FieldMismatchError(
                    f"Cannot combine elements of {self.descriptor} and "
                    f"{other.descriptor}"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.descriptor.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ground = self.descriptor.ground
        coords = tuple(ground._reduce(a + b) for a, b in zip(self.coords, other.coords))
        return FieldElement(self.descriptor, coords)

    __radd__ = __add__

    def __neg__(self):
        ground = self.descriptor.ground
        return FieldElement(self.descriptor, tuple(ground._reduce(-a) for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        desc = self.descriptor
        ground = desc.ground
        if not desc.is_extension:
            return FieldElement(desc, (ground._reduce(self.coords[0] * other.coords[0]),))
        d = desc.degree
        product = [ground._reduce(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                product[i + j] = ground._reduce(product[i + j] + a * b)
        return FieldElement(desc, _reduce_mod(product, desc))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        """
        Multiplicative inverse.

        Raises:
            ZeroElementError: If the element is zero.
        """
        if self.is_zero():
            raise ZeroElementError(f"{self} has no inverse")
        desc = self.descriptor
        ground = desc.ground
        if not desc.is_extension:
            return FieldElement(desc, (ground._divide(1, self.coords[0]),))
        rhs = [ground._reduce(0)] * desc.degree
        rhs[0] = ground._reduce(1)
        solution = _solve_ground(multiplication_matrix(self), rhs, ground)
        return FieldElement(desc, tuple(solution))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.descriptor.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.descriptor == other.descriptor and self.coords == other.coords
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.coords == self.descriptor.element(other).coords
            except ZeroElementError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        if self.descriptor.kind is FieldKind.RATIONAL:
            return hash(self.coords[0])
        return hash((self.descriptor, self.coords))

    def __str__(self) -> str:
        if not self.descriptor.is_extension:
            return format_scalar(self.coords[0])
        return _format_poly(tuple(reversed(self.coords)), "z")

    def __repr__(self) -> str:
        return f"FieldElement({self}, {self.descriptor})"


def _reduce_mod(product: list, desc: FieldDescriptor) -> tuple:
    """Reduce an ascending coefficient list modulo the monic minimal polynomial."""
    ground = desc.ground
    d = desc.degree
    # ascending tail of z^d = -(lower terms of min_poly)
    tail = [ground._reduce(-c) for c in reversed(desc.min_poly[1:])]
    coeffs = list(product)
    for k in range(len(coeffs) - 1, d - 1, -1):
        top = coeffs[k]
        if not top:
            continue
        coeffs[k] = ground._reduce(0)
        for i, t in enumerate(tail):
            coeffs[k - d + i] = ground._reduce(coeffs[k - d + i] + top * t)
    coeffs = coeffs[:d] + [ground._reduce(0)] * max(0, d - len(coeffs))
    return tuple(coeffs)


def multiplication_matrix(x: FieldElement) -> list[list[Scalar]]:
    """
    Matrix of multiplication by ``x`` on the power basis, as raw ground scalars.

    Column j holds the coordinates of x·z^j.
    """
    desc = x.descriptor
    if not desc.is_extension:
        raise UnsupportedFieldError(f"{x} is not in an extension field")
    z = desc.generator()
    columns = []
    current = x
    for _ in range(desc.degree):
        columns.append(current.coords)
        current = current * z
    d = desc.degree
    return [[columns[j][i] for j in range(d)] for i in range(d)]


def _solve_ground(matrix: list, rhs: list, ground: FieldDescriptor) -> list:
    """Solve a nonsingular square system over Q or F_p by Gauss-Jordan elimination."""
    n = len(matrix)
    rows = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            raise ZeroElementError("Singular system")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [ground._divide(v, lead) for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [
                    ground._reduce(a - factor * b) for a, b in zip(rows[r], rows[col])
                ]
    return [rows[i][n] for i in range(n)]


def _ground_det(matrix: list, ground: FieldDescriptor) -> Scalar:
    n = len(matrix)
    rows = [list(r) for r in matrix]
    det = ground._reduce(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return ground._reduce(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = ground._reduce(-det)
        lead = rows[col][col]
        det = ground._reduce(det * lead)
        for r in range(col + 1, n):
            if rows[r][col]:
                factor = ground._divide(rows[r][col], lead)
                rows[r] = [
                    ground._reduce(a - factor * b) for a, b in zip(rows[r], rows[col])
                ]
    return det


def field_trace(x: FieldElement) -> FieldElement:
    """
    Trace of multiplication by ``x`` from an extension down to its ground field.

    Raises:
        UnsupportedFieldError: If ``x`` is not in an extension.
    """
    matrix = multiplication_matrix(x)
    ground = x.descriptor.base
    total = ground._reduce(0)
    for i in range(len(matrix)):
        total = ground._reduce(total + matrix[i][i])
    return FieldElement(ground, (total,))


def field_norm(x: FieldElement) -> FieldElement:
    """
    Norm (determinant of multiplication by ``x``) down to the ground field.

    Raises:
        UnsupportedFieldError: If ``x`` is not in an extension.
    """
    ground = x.descriptor.base
    return FieldElement(ground, (_ground_det(multiplication_matrix(x), ground),))


def _squarefree_part(n: int) -> int:
    """Squarefree part of a positive integer."""
    result = 1
    for q, e in factorint(n, limit=TRIAL_DIVISION_LIMIT).items():
        if isprime(q):
            if e % 2:
                result *= q
            continue
        if q.bit_length() > FACTORIZATION_BIT_BUDGET:
            raise FactorizationBudgetError(
                f"Cofactor with {q.bit_length()} bits exceeds the factorization budget"
            )
        for r, e2 in factorint(q).items():
            if (e * e2) % 2:
                result *= r
    return result


@lru_cache(maxsize=None)
def smallest_nonresidue(p: int) -> int:
    """Smallest positive quadratic non-residue modulo the odd prime ``p``."""
    candidate = 2
    while is_quad_residue(candidate, p):
        candidate += 1
    return candidate


def square_class(x: FieldElement) -> FieldElement:
    """
    Canonical representative of the square class of ``x``.

    Over Q this is the signed squarefree integer s with x = s·c²; over F_p
    it is 1 or the smallest non-residue.

    Raises:
        ZeroElementError: If ``x`` is zero.
        UnsupportedFieldError: If ``x`` lives in an extension.
        FactorizationBudgetError: If the operand is too large to factor.
    """
    if x.is_zero():
        raise ZeroElementError("Zero has no square class")
    desc = x.descriptor
    if desc.kind is FieldKind.RATIONAL:
        value = x.value
        n = value.numerator * value.denominator
        sign = -1 if n < 0 else 1
        return desc.element(sign * _squarefree_part(abs(n)))
    if desc.kind is FieldKind.PRIME:
        if is_quad_residue(x.value, desc.modulus):
            return desc.one()
        return desc.element(smallest_nonresidue(desc.modulus))
    raise UnsupportedFieldError(
        "Square classes are canonicalized only over Q and F_p; "
        "use is_square_in_field for extensions"
    )


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    num, den = q.numerator, q.denominator
    return math.isqrt(num) ** 2 == num and math.isqrt(den) ** 2 == den


def _rational_sqrt(q: Fraction) -> Fraction:
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


def is_square_in_field(x: FieldElement) -> bool:
    """
    Decide whether ``x`` is a square in its own field.

    Supports Q, F_p, every extension of F_p, and quadratic extensions of Q.

    Raises:
        ZeroElementError: If ``x`` is zero.
        UnsupportedFieldError: For extensions of Q of degree above 2.
    """
    if x.is_zero():
        raise ZeroElementError("Squareness is only decided for nonzero elements")
    desc = x.descriptor
    if desc.kind is FieldKind.RATIONAL:
        return _is_rational_square(x.value)
    if desc.kind is FieldKind.PRIME:
        return pow(x.value, (desc.modulus - 1) // 2, desc.modulus) == 1
    if desc.base.kind is FieldKind.PRIME:
        order = desc.base.modulus**desc.degree
        return x ** ((order - 1) // 2) == desc.one()
    if desc.degree != 2:
        raise UnsupportedFieldError(
            "Squareness over extensions of Q is decided only in degree 2"
        )
    _, b1, b0 = desc.min_poly
    delta = b1 * b1 - 4 * b0
    a, b = x.coords
    if not b:
        return _is_rational_square(a) or _is_rational_square(a * delta)
    # x = A + B·w with w = 2z + b1, w² = delta
    big_a = a - b * b1 / 2
    big_b = b / 2
    norm = big_a * big_a - big_b * big_b * delta
    if not _is_rational_square(norm):
        return False
    n = _rational_sqrt(norm)
    for candidate in ((big_a + n) / 2, (big_a - n) / 2):
        if candidate and _is_rational_square(candidate):
            c = _rational_sqrt(candidate)
            d = big_b / (2 * c)
            if c * c + d * d * delta == big_a:
                return True
    return False


def parse_scalar(text: str) -> Fraction:
    """
    Parse a rational written as ``"p/q"`` or ``"p"``.

    Raises:
        SchemaError: If the text is not a rational number.
    """
    try:
        return Fraction(text.strip().replace("−", "-"))
    except (ValueError, ZeroDivisionError, AttributeError):
        raise SchemaError(f"Not a rational number: {text!r}")


def format_scalar(value: Scalar) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _format_poly(descending: tuple, var: str) -> str:
    degree = len(descending) - 1
    parts = []
    for k, c in enumerate(descending):
        if not c:
            continue
        e = degree - k
        coeff = format_scalar(c)
        if e == 0:
            term = coeff
        else:
            mono = var if e == 1 else f"{var}^{e}"
            term = mono if coeff == "1" else ("-" + mono if coeff == "-1" else f"{coeff}*{mono}")
        parts.append(term)
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")
