"""
The Grothendieck-Witt ring of Q and F_p.

Classes are kept as diagonal forms with square-class-reduced entries. Equality
is decided by complete invariants: rank, signature, signed discriminant and
Hasse symbols over Q; rank and discriminant over F_p.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Iterable, Optional, Union

from sympy import isprime, multiplicity, primefactors
from sympy.utilities.misc import as_int
from sympy.ntheory.residue_ntheory import is_quad_residue

from segre_index.errors import (
    FieldMismatchError,
    SchemaError,
    UnsupportedFieldError,
    ZeroElementError,
)
from segre_index.fields import (
    RATIONALS,
    FieldDescriptor,
    FieldElement,
    FieldKind,
    field_trace,
    square_class,
)

REAL = "real"


@dataclass(frozen=True)
class GWClass:
    """
    A non-degenerate diagonal form ⟨a_1, ..., a_r⟩ over ``base``.

    Use ``GWClass.of`` to build one; it reduces entries to square-class
    representatives when the base is Q or F_p.
    """

    base: FieldDescriptor
    diagonal: tuple = ()

    @classmethod
    def of(cls, base: FieldDescriptor, entries: Iterable) -> "GWClass":
        reduced = []
        for entry in entries:
            entry = base.element(entry)
            if entry.is_zero():
                raise ZeroElementError("Diagonal entries of a form must be nonzero")
            if not base.is_extension:
                entry = square_class(entry)
            reduced.append(entry)
        return cls(base, tuple(reduced))

    @classmethod
    def from_counts(
        cls, plus: int, minus: int, base: FieldDescriptor = RATIONALS
    ) -> "GWClass":
        """The class plus·⟨1⟩ + minus·⟨-1⟩."""
        if plus < 0 or minus < 0:
            raise SchemaError("Multiplicities must be nonnegative")
        return cls.of(base, [1] * plus + [-1] * minus)

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    def __add__(self, other: "GWClass") -> "GWClass":
        return gw_add(self, other)

    def __mul__(self, other: "GWClass") -> "GWClass":
        return gw_mul(self, other)

    def __str__(self) -> str:
        return render_gw(self)


@dataclass(frozen=True)
class GWInvariants:
    """
    Classical invariants of a form.

    Args:
        rank (int): Dimension.
        discriminant (FieldElement): Square class of (-1)^(r(r-1)/2)·∏a_i.
        signature (int, optional): #positive - #negative entries (Q only).
        hasse (dict): Prime -> Hasse symbol ∏_{i<j}(a_i, a_j)_p (Q only).
    """

    rank: int
    discriminant: FieldElement
    signature: Optional[int] = None
    hasse: dict = field(default_factory=dict)


def _same_base(c1: GWClass, c2: GWClass) -> FieldDescriptor:
    if c1.base != c2.base:
        raise FieldMismatchError(f"Classes over {c1.base} and {c2.base}")
    return c1.base


def gw_add(c1: GWClass, c2: GWClass) -> GWClass:
    """Orthogonal sum: concatenation of diagonals."""
    base = _same_base(c1, c2)
    return GWClass(base, c1.diagonal + c2.diagonal)


def gw_mul(c1: GWClass, c2: GWClass) -> GWClass:
    """Tensor product: all pairwise products ⟨a_i b_j⟩."""
    base = _same_base(c1, c2)
    return GWClass.of(base, [a * b for a in c1.diagonal for b in c2.diagonal])


def hyperbolic(m: int, base: FieldDescriptor = RATIONALS) -> GWClass:
    """
    m copies of the hyperbolic plane ⟨1⟩ + ⟨-1⟩.

    Raises:
        SchemaError: If m is negative.
    """
    if m < 0:
        raise SchemaError("Negative multiples of H are virtual classes")
    return GWClass.of(base, [1, -1] * m)


def _diagonalize(gram: list[list[FieldElement]]) -> list[FieldElement]:
    """Symmetric Gaussian elimination, recovering zero pivots from off-diagonal entries."""
    matrix = [list(row) for row in gram]
    diagonal = []
    while matrix:
        n = len(matrix)
        if matrix[0][0].is_zero():
            swap = next((j for j in range(1, n) if not matrix[j][j].is_zero()), None)
            if swap is not None:
                matrix[0], matrix[swap] = matrix[swap], matrix[0]
                for row in matrix:
                    row[0], row[swap] = row[swap], row[0]
            else:
                partner = next(
                    (j for j in range(1, n) if not matrix[0][j].is_zero()), None
                )
                if partner is None:
                    raise ZeroElementError("Degenerate bilinear form")
                matrix[0] = [a + b for a, b in zip(matrix[0], matrix[partner])]
                for row in matrix:
                    row[0] = row[0] + row[partner]
        pivot = matrix[0][0]
        diagonal.append(pivot)
        pivot_inv = pivot.inverse()
        matrix = [
            [matrix[i][j] - matrix[i][0] * matrix[0][j] * pivot_inv for j in range(1, n)]
            for i in range(1, n)
        ]
    return diagonal


def trace_gram(alpha: FieldElement) -> list[list[FieldElement]]:
    """Gram matrix of (x, y) ↦ Tr(α·x·y) on the power basis of α's field."""
    desc = alpha.descriptor
    z = desc.generator()
    basis = [z**i for i in range(desc.degree)]
    return [[field_trace(alpha * x * y) for y in basis] for x in basis]


def trace_form(L: FieldDescriptor, alpha: FieldElement) -> GWClass:
    """
    The trace form Tr_{L/k}⟨α⟩ as a class over the ground field k.

    Args:
        L (FieldDescriptor): Q, F_p, or a simple extension of either.
        alpha (FieldElement): Nonzero element of L.

    Returns:
        GWClass: A class of rank [L:k].

    Raises:
        ZeroElementError: If alpha is zero.
        FieldMismatchError: If alpha is not in L.
    """
    alpha = L.element(alpha)
    if alpha.is_zero():
        raise ZeroElementError("Trace forms need a nonzero element")
    if not L.is_extension:
        return GWClass.of(L, [alpha])
    return GWClass.of(L.base, _diagonalize(trace_gram(alpha)))


def _as_fraction(value: Union[int, Fraction, FieldElement]) -> Fraction:
    if isinstance(value, FieldElement):
        if value.descriptor.kind is not FieldKind.RATIONAL:
            raise UnsupportedFieldError("Hilbert symbols are computed over Q")
        return value.value
    return Fraction(value)


def _prime_place(p) -> Optional[int]:
    # sympy and gmpy hand out their own integer types
    try:
        p = int(as_int(p))
    except ValueError:
        return None
    return p if isprime(p) else None


def _legendre(a: int, p: int) -> int:
    return 1 if is_quad_residue(a % p, p) else -1


def hilbert_symbol(a, b, p: Union[int, str]) -> int:
    """
    The Hilbert symbol (a, b)_p of nonzero rationals.

    Args:
        a: Nonzero rational.
        b: Nonzero rational.
        p: A prime, or ``"real"`` for the archimedean place.

    Returns:
        int: +1 or -1.

    Raises:
        ZeroElementError: If a or b is zero.
        SchemaError: If p is neither a prime nor ``"real"``.
    """
    a, b = _as_fraction(a), _as_fraction(b)
    if not a or not b:
        raise ZeroElementError("Hilbert symbols need nonzero arguments")
    if p == REAL:
        return -1 if a < 0 and b < 0 else 1
    place = _prime_place(p)
    if place is None:
        raise SchemaError(f"Hilbert symbol place must be a prime or 'real', got {p!r}")
    p = place
    # same square classes, integral representatives
    a_int = a.numerator * a.denominator
    b_int = b.numerator * b.denominator
    alpha = multiplicity(p, abs(a_int))
    beta = multiplicity(p, abs(b_int))
    u = a_int // p**alpha
    v = b_int // p**beta
    if p != 2:
        sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
        return (
            sign
            * _legendre(u, p) ** (beta % 2)
            * _legendre(v, p) ** (alpha % 2)
        )

    def eps(x: int) -> int:
        return ((x - 1) // 2) % 2

    def omega(x: int) -> int:
        return ((x * x - 1) // 8) % 2

    exponent = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
    return -1 if exponent % 2 else 1


def _relevant_primes(*classes: GWClass) -> list[int]:
    primes = {2}
    for c in classes:
        for entry in c.diagonal:
            value = entry.value
            magnitude = abs(value.numerator * value.denominator)
            primes.update(int(q) for q in primefactors(magnitude))
    return sorted(primes)


def _hasse(c: GWClass, p: int) -> int:
    # entries grouped by value: (a, b)^(m_a·m_b) across groups, (a, a)^binom(m_a, 2) within
    counts = Counter(entry.value for entry in c.diagonal)
    symbol = 1
    for a, b in combinations(counts, 2):
        if (counts[a] * counts[b]) % 2:
            symbol *= hilbert_symbol(a, b, p)
    for a, m in counts.items():
        if (m * (m - 1) // 2) % 2:
            symbol *= hilbert_symbol(a, a, p)
    return symbol


def _signed_discriminant(c: GWClass) -> FieldElement:
    r = c.rank
    sign = -1 if (r * (r - 1) // 2) % 2 else 1
    product = reduce(lambda acc, a: acc * a, c.diagonal, c.base.element(sign))
    return square_class(product)


def gw_invariants(c: GWClass) -> GWInvariants:
    """
    Rank, signed discriminant and, over Q, signature and Hasse symbols.

    Hasse symbols are reported at 2 and at every prime dividing an entry.

    Raises:
        UnsupportedFieldError: If the base is an extension.
    """
    if c.base.is_extension:
        raise UnsupportedFieldError("Invariants are computed over Q and F_p only")
    discriminant = _signed_discriminant(c)
    if c.base.kind is FieldKind.PRIME:
        return GWInvariants(rank=c.rank, discriminant=discriminant)
    signature = sum(1 if a.value > 0 else -1 for a in c.diagonal)
    hasse = {p: _hasse(c, p) for p in _relevant_primes(c)}
    return GWInvariants(
        rank=c.rank, discriminant=discriminant, signature=signature, hasse=hasse
    )


def gw_equal(c1: GWClass, c2: GWClass) -> bool:
    """
    Decide isometry of two classes over Q or F_p.

    Raises:
        FieldMismatchError: If the bases differ.
        UnsupportedFieldError: If the base is an extension.
    """
    base = _same_base(c1, c2)
    if base.is_extension:
        raise UnsupportedFieldError("Equality is decided over Q and F_p only")
    if c1.rank != c2.rank or _signed_discriminant(c1) != _signed_discriminant(c2):
        return False
    if base.kind is FieldKind.PRIME:
        return True
    inv1, inv2 = gw_invariants(c1), gw_invariants(c2)
    if inv1.signature != inv2.signature:
        return False
    return all(_hasse(c1, p) == _hasse(c2, p) for p in _relevant_primes(c1, c2))


def _render_counts(counts: list[tuple[int, str]]) -> str:
    parts = []
    for count, label in counts:
        if count == 0:
            continue
        prefix = "" if count == 1 else str(count)
        parts.append(f"{prefix}⟨{label}⟩")
    return "+".join(parts) or "0"


def render_gw(c: GWClass) -> str:
    """
    Canonical report string for a class.

    Over Q a class isometric to a ±1 diagonal prints as ``a⟨1⟩+b⟨-1⟩``;
    other classes print their grouped diagonal. Over F_p every class prints
    as (r-1)⟨1⟩ plus one entry carrying the discriminant.
    """
    if c.rank == 0:
        return "0"
    if c.base.kind is FieldKind.RATIONAL:
        signature = gw_invariants(c).signature
        plus, minus = (c.rank + signature) // 2, (c.rank - signature) // 2
        if gw_equal(c, GWClass.from_counts(plus, minus)):
            return _render_counts([(plus, "1"), (minus, "-1")])
    if c.base.kind is FieldKind.PRIME:
        product = reduce(lambda acc, a: acc * a, c.diagonal, c.base.one())
        last = square_class(product)
        if last == 1:
            return _render_counts([(c.rank, "1")])
        return _render_counts([(c.rank - 1, "1"), (1, str(last))])
    grouped = Counter(str(a) for a in c.diagonal)
    return _render_counts([(n, label) for label, n in sorted(grouped.items())])
