from functools import lru_cache

from segre_index.conic_model import ClosedFormReport, closed_form_checks
from segre_index.errors import SchemaError
from segre_index.fields import FieldDescriptor
from segre_index.registry import register_verifier
from segre_index.verifiers.base_verifier import BaseVerifier, TrialResult, VerifyParams

STEPS = 4


@lru_cache(maxsize=32)
def _closed_form(values: tuple, field: FieldDescriptor) -> ClosedFormReport:
    return closed_form_checks(values, field)


@register_verifier("symmetric-family", "closed-form")
class SymmetricFamilyVerifier(BaseVerifier):
    """
    Step-by-step evaluation of the symmetric family B = {(a_i, a_j)}, Q = (v^2, u^2, u^2).

    Each step is reported as one row; ``--a`` defaults to 1, ..., n.
    """

    name = "symmetric-family"
    unit = "step"

    def _values(self, params: VerifyParams) -> tuple:
        return tuple(params.a) if params.a else tuple(range(1, params.n + 1))

    def check_params(self, params: VerifyParams) -> None:
        values = self._values(params)
        if len(values) < 3:
            raise SchemaError("symmetric-family needs at least 3 values")
        if params.a and len(values) != params.n:
            raise SchemaError(f"--a has {len(values)} values but --n is {params.n}")

    def trial_count(self, params: VerifyParams) -> int:
        return STEPS

    def trial_seed(self, index: int, params: VerifyParams) -> int:
        return params.seed

    def run_trial(self, index: int, seed: int, params: VerifyParams) -> TrialResult:
        step = _closed_form(self._values(params), params.field).steps[index]
        return TrialResult(step.step, seed, step.passed, f"{step.name}: {step.detail}")
