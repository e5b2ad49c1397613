from segre_index.conic_model import random_instance, verify_identity
from segre_index.errors import SchemaError
from segre_index.registry import register_verifier
from segre_index.verifiers.base_verifier import BaseVerifier, TrialResult, VerifyParams


@register_verifier("conic-identity", "identity")
class ConicIdentityVerifier(BaseVerifier):
    """A(B,Q) = (det V_B)^(2n)·R(B,Q) on random conic models, degenerate draws included."""

    name = "conic-identity"

    def check_params(self, params: VerifyParams) -> None:
        if params.n < 3:
            raise SchemaError(f"conic-identity needs --n >= 3, got {params.n}")
        if params.trials < 0 or params.coeff_bound < 1:
            raise SchemaError("--trials must be >= 0 and --coeff-bound >= 1")

    def run_trial(self, index: int, seed: int, params: VerifyParams) -> TrialResult:
        model = random_instance(params.n, params.coeff_bound, seed, params.field)
        report = verify_identity(model)
        if report.a_value.is_zero():
            detail = "A=0 (degenerate)"
        else:
            detail = f"A={report.a_value}"
        return TrialResult(index, seed, report.passed, detail)
