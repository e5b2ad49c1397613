"""
Global counts: the top Chern number c(n) of Sym^(2n-1) S^∨ on the Grassmannian
of lines in P^(n+1), the real count (2n-1)!!, the quadratically enriched Euler
class, the Castelnuovo secant count and a splitting identity for elementary
symmetric polynomials.
"""

import logging
from math import comb, prod
from typing import Sequence

import sympy

from segre_index.errors import SchemaError, SegreIndexError
from segre_index.fields import RATIONALS, FieldDescriptor
from segre_index.gw_ring import GWClass

logger = logging.getLogger(__name__)


def _check_n(n: int, minimum: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < minimum:
        raise SchemaError(f"n must be an integer >= {minimum}, got {n!r}")


def chern_number(n: int) -> int:
    """
    Top Chern number of Sym^(2n-1) S^∨ over Gr(2, n+2).

    With Chern roots a, b of S^∨ the bundle has roots k·a + (2n-1-k)·b, and
    integration over the Grassmannian picks the coefficient of a^(n+1) b^n
    after multiplying by (a - b).

    Args:
        n (int): At least 2.

    Returns:
        int: The exact count, e.g. 27 for n=2 and 2875 for n=3.

    Raises:
        SchemaError: If n < 2.
    """
    _check_n(n, 2)
    top = 2 * n - 1
    # coeffs[i] is the coefficient of a^i b^(deg - i)
    coeffs = [1]
    for k in range(top + 1):
        weight_a, weight_b = k, top - k
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c * weight_a
            nxt[i] += c * weight_b
        coeffs = nxt
    # multiply by (a - b) and read a^(n+1) b^n
    return coeffs[n] - coeffs[n + 1]


def chern_number_expanded(n: int) -> int:
    """Independent oracle for ``chern_number`` through symbolic expansion."""
    _check_n(n, 2)
    a, b = sympy.symbols("a b")
    top = 2 * n - 1
    expr = (a - b) * sympy.Mul(*[k * a + (top - k) * b for k in range(top + 1)])
    poly = sympy.Poly(sympy.expand(expr), a, b)
    return int(poly.coeff_monomial(a ** (n + 1) * b**n))


def double_factorial(n: int) -> int:
    """(2n-1)!! = 1·3·...·(2n-1), the signed real count of lines."""
    _check_n(n, 1)
    return prod(range(1, 2 * n, 2))


def euler_class(n: int, base: FieldDescriptor = RATIONALS) -> GWClass:
    """
    (2n-1)!!⟨1⟩ + ((c(n) - (2n-1)!!)/2)·H, over Q unless another base is given.

    Raises:
        SchemaError: If n < 2.
        SegreIndexError: If c(n) and (2n-1)!! have different parity.
    """
    c = chern_number(n)
    d = double_factorial(n)
    if (c - d) % 2:
        raise SegreIndexError(f"c({n})={c} and (2n-1)!!={d} differ in parity")
    h = (c - d) // 2
    logger.debug("euler class n=%d: c=%d, signature=%d, hyperbolic=%d", n, c, d, h)
    return GWClass.from_counts(d + h, h, base)


def castelnuovo_count(n: int) -> int:
    """Count of (n-3)-planes meeting a degree 2n-2 rational curve in 2n-4 points."""
    _check_n(n, 3)
    return comb(n, 2)


def porteous_identity_check(n: int) -> bool:
    """binom(n,2)^2 - binom(n+1,2)·binom(n-1,2) == binom(n,2)."""
    _check_n(n, 3)
    return comb(n, 2) ** 2 - comb(n + 1, 2) * comb(n - 1, 2) == castelnuovo_count(n)


def elementary_symmetric(values: Sequence, k: int):
    """
    e_k of the values, with e_0 = 1 and e_k = 0 outside 0..len(values).

    Works for ints, Fractions and field elements alike.
    """
    if k < 0 or k > len(values):
        return 0
    # running coefficients of ∏ (1 + x_i t)
    table = [1] + [0] * k
    for x in values:
        for m in range(k, 0, -1):
            table[m] = table[m] + x * table[m - 1]
    return table[k]


def symmetric_identity_check(n: int, j: int, i: int, values: Sequence) -> bool:
    """
    e_(i+1)(X_1..X_n) == Σ_z e_z(X_1..X_j)·e_(i+1-z)(X_(j+1)..X_n).

    Raises:
        SchemaError: If j is outside 1..n or len(values) != n.
    """
    if len(values) != n:
        raise SchemaError(f"Expected {n} values, got {len(values)}")
    if not 1 <= j <= n:
        raise SchemaError(f"Split index j must satisfy 1 <= j <= {n}, got {j}")
    head, tail = list(values[:j]), list(values[j:])
    lhs = elementary_symmetric(values, i + 1)
    rhs = sum(
        (
            elementary_symmetric(head, z) * elementary_symmetric(tail, i + 1 - z)
            for z in range(i + 2)
        ),
        0,
    )
    return lhs == rhs
