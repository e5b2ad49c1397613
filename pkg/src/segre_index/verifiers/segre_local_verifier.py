import logging

import numpy as np

from segre_index.errors import DegenerateInputError, SchemaError
from segre_index.fields import FieldDescriptor, FieldKind
from segre_index.gw_ring import gw_equal
from segre_index.line_index import LineOnHypersurface, local_index, segre_index
from segre_index.polynomials import BinaryForm, ExactMatrix, MultiPoly, inverse
from segre_index.registry import register_verifier
from segre_index.verifiers.base_verifier import BaseVerifier, TrialResult, VerifyParams

logger = logging.getLogger(__name__)

MAX_REDRAWS = 8
EXTRA_TERMS = 3


class _Sampler:
    """Integer draws from a Philox stream, reduced into the trial field."""

    def __init__(self, seed: int, bound: int, field: FieldDescriptor):
        self.rng = np.random.Generator(np.random.Philox(seed))
        self.field = field
        if field.kind is FieldKind.PRIME:
            self.low, self.high = 0, field.modulus - 1
        else:
            self.low, self.high = -bound, bound

    def ints(self, size: int) -> list[int]:
        return [int(x) for x in self.rng.integers(self.low, self.high, size=size, endpoint=True)]

    def indices(self, upper: int, size: int) -> list[int]:
        return [int(x) for x in self.rng.integers(0, upper, size=size)]

    def form(self, degree: int) -> BinaryForm:
        return BinaryForm.from_coeffs(self.ints(degree + 1), self.field)


def _form_in(form: BinaryForm, nvars: int, x_index: int) -> MultiPoly:
    """x_(x_index) · form(u, v) as a polynomial in [u : v : x_1 : ... : x_n]."""
    d = form.degree
    terms = {}
    for k, c in enumerate(form.coeffs):
        exps = [0] * nvars
        exps[0], exps[1], exps[x_index] = d - k, k, 1
        terms[tuple(exps)] = c
    return MultiPoly.from_dict(form.descriptor, nvars, terms)


def _unimodular(sampler: _Sampler, size: int) -> ExactMatrix:
    field = sampler.field
    lower = ExactMatrix.from_rows(
        [[1 if i == j else (sampler.ints(1)[0] if j < i else 0) for j in range(size)] for i in range(size)],
        field,
    )
    upper = ExactMatrix.from_rows(
        [[1 if i == j else (sampler.ints(1)[0] if j > i else 0) for j in range(size)] for i in range(size)],
        field,
    )
    return lower @ upper


def random_line(n: int, sampler: _Sampler) -> LineOnHypersurface:
    """
    A random hypersurface of degree 2n-1 containing a known line, in hidden coordinates.

    In coordinates [u : v : x_1 : ... : x_n] the equation is Σ x_i·P_i + R with R
    in (x)^2; for n = 3 the P_i are the products Q_2·Q_3, Q_1·Q_3, Q_1·Q_2 of
    random quadratics. A random unimodular change of coordinates then hides
    the line {x = 0}.
    """
    field = sampler.field
    nvars = n + 2
    if n == 3:
        q1, q2, q3 = (sampler.form(2) for _ in range(3))
        P = [q2 * q3, q1 * q3, q1 * q2]
    else:
        P = [sampler.form(2 * n - 2) for _ in range(n)]
    F = MultiPoly(field, nvars)
    for i, p in enumerate(P):
        F = F + _form_in(p, nvars, i + 2)
    for _ in range(EXTRA_TERMS):
        exps = [0] * nvars
        for index in [2 + k for k in sampler.indices(n, 2)] + sampler.indices(nvars, 2 * n - 3):
            exps[index] += 1
        F = F + MultiPoly.from_dict(field, nvars, {tuple(exps): sampler.ints(1)[0]})

    change = _unimodular(sampler, nvars)
    hidden = F.substitute([MultiPoly.linear(change.row(k)) for k in range(nvars)])
    back = inverse(change)
    span = ExactMatrix.from_rows([back.column(0), back.column(1)], field)
    return LineOnHypersurface(n=n, F=hidden, span=span)


@register_verifier("segre-equals-local", "segre-local")
class SegreLocalVerifier(BaseVerifier):
    """Segre index against local index on random lines of cubic surfaces (n=2) or quintic threefolds (n=3)."""

    name = "segre-equals-local"

    def check_params(self, params: VerifyParams) -> None:
        if params.n not in (2, 3):
            raise SchemaError(f"segre-equals-local supports --n 2 or 3, got {params.n}")
        if params.trials < 0 or params.coeff_bound < 1:
            raise SchemaError("--trials must be >= 0 and --coeff-bound >= 1")

    def run_trial(self, index: int, seed: int, params: VerifyParams) -> TrialResult:
        sampler = _Sampler(seed, params.coeff_bound, params.field)
        for attempt in range(MAX_REDRAWS):
            line = random_line(params.n, sampler)
            try:
                local = local_index(line, params.field)
                segre = segre_index(line, params.field)
            except DegenerateInputError as e:
                logger.debug("trial %d attempt %d redrawn: %s", index, attempt, e)
                continue
            return TrialResult(index, seed, gw_equal(local, segre), f"local={local} segre={segre}")
        return TrialResult(index, seed, False, f"no generic draw in {MAX_REDRAWS} attempts")
