import pytest

from segre_index.conic_model import symmetric_family
from segre_index.core import (
    castelnuovo_report,
    chern_report,
    euler_report,
    local_index_report,
    model_report,
    render_report,
    run_verification,
    sum_indices_report,
)
from segre_index.errors import SchemaError
from segre_index.fields import RATIONALS
from segre_index.polynomials import ExactMatrix, MultiPoly
from segre_index.line_index import LineOnHypersurface
from segre_index.verifiers.base_verifier import VerifyParams


def cubic_line():
    F = MultiPoly.from_dict(
        RATIONALS, 4, {(1, 1, 1, 0): 1, (2, 0, 0, 1): 1, (0, 2, 0, 1): -1}
    )
    span = ExactMatrix.from_rows([[1, 0, 0, 0], [0, 1, 0, 0]], RATIONALS)
    return LineOnHypersurface(n=2, F=F, span=span)


def fields_of(report):
    return {child.name: child.value for child in report.children if hasattr(child, "value")}


class TestReports:
    def test_euler_report(self):
        fields = fields_of(euler_report(2))
        assert fields["c"] == 27
        assert fields["signature"] == 3
        assert fields["class"] == "15⟨1⟩+12⟨-1⟩"

    def test_chern_report(self):
        report = chern_report(3)
        assert fields_of(report)["parity_check"] is True
        assert report.passed

    def test_castelnuovo_report(self):
        assert fields_of(castelnuovo_report(4))["count"] == 6

    def test_local_index_report(self):
        fields = fields_of(local_index_report(cubic_line(), RATIONALS))
        assert fields["det"] == "-1"
        assert fields["square_class"] == "-1"
        assert fields["class"] == "⟨-1⟩"

    def test_sum_of_one_line(self):
        report = sum_indices_report([cubic_line()], RATIONALS, 2)
        assert fields_of(report)["rank"] == 1
        assert report.passed

    def test_sum_compared_with_euler_class(self):
        report = sum_indices_report([cubic_line()], RATIONALS, 2, expect_euler=True)
        assert not report.passed

    def test_model_report(self):
        report = model_report(symmetric_family([1, 2, 3]))
        fields = fields_of(report)
        assert fields["A"] == "4"
        assert fields["class"] == "⟨1⟩"
        assert report.passed

    def test_render_report(self):
        assert render_report(euler_report(2), "text").startswith("n: 2\n")
        with pytest.raises(SchemaError):
            render_report(euler_report(2), "xml")

    def test_run_verification(self):
        report = run_verification("symmetric-family", VerifyParams(n=3))
        assert report.title == "verify"
        assert report.passed
