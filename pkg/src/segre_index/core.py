"""
Command implementations shared by the CLI: each builds a ``Report``.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from functools import reduce
from typing import Sequence

from segre_index.conic_model import ConicModel, conic_index, verify_identity
from segre_index.enumerative import (
    castelnuovo_count,
    chern_number,
    double_factorial,
    euler_class,
    porteous_identity_check,
)
from segre_index.errors import DegenerateLineError
from segre_index.fields import FieldDescriptor, square_class
from segre_index.gw_ring import GWClass, gw_add, gw_equal
from segre_index.line_index import (
    LineOnHypersurface,
    index_determinant,
    segre_index,
    trace_class,
)
from segre_index.registry import get_formatter, get_verifier
from segre_index.reports import Field, Report, Summary, Table
from segre_index.verifiers.base_verifier import VerifyParams

logger = logging.getLogger(__name__)


def render_report(report: Report, fmt: str) -> str:
    """
    Render a report with the formatter registered under ``fmt``.

    Raises:
        SchemaError: If no formatter is registered for ``fmt``.
    """
    return report.convert(get_formatter(fmt))


def euler_report(n: int) -> Report:
    c = chern_number(n)
    signature = double_factorial(n)
    cls = euler_class(n)
    return Report(
        "euler",
        [
            Field("n", n),
            Field("c", c),
            Field("signature", signature),
            Field("class", cls),
            Summary(f"c={c}, signature={signature}, class={cls}"),
        ],
    )


def chern_report(n: int) -> Report:
    c = chern_number(n)
    parity = (c - double_factorial(n)) % 2 == 0
    return Report(
        "chern",
        [
            Field("n", n),
            Field("c", c),
            Field("parity_check", parity),
            Summary(f"c({n})={c}", parity),
        ],
    )


def castelnuovo_report(n: int) -> Report:
    count = castelnuovo_count(n)
    identity = porteous_identity_check(n)
    return Report(
        "castelnuovo",
        [
            Field("n", n),
            Field("count", count),
            Field("porteous_identity", identity),
            Summary(f"castelnuovo({n})={count}", identity),
        ],
    )


def local_index_report(line: LineOnHypersurface, ground: FieldDescriptor) -> Report:
    """
    Raises:
        DegenerateLineError: If the line is not simple.
    """
    det = index_determinant(line)
    cls = trace_class(det, ground)
    report = Report("local-index", [Field("n", line.n), Field("field", line.field_of_line)])
    report.add_child(Field("det", det))
    if det.descriptor == ground:
        report.add_child(Field("square_class", square_class(det)))
    report.add_child(Field("class", cls))
    report.add_child(Summary(f"det={det} class={cls}"))
    return report


def segre_index_report(line: LineOnHypersurface, ground: FieldDescriptor) -> Report:
    cls = segre_index(line, ground)
    return Report(
        "segre-index",
        [Field("n", line.n), Field("class", cls), Summary(f"segre class={cls}")],
    )


def _line_class(line: LineOnHypersurface, ground: FieldDescriptor) -> tuple:
    det = index_determinant(line)
    return det, trace_class(det, ground)


def sum_indices_report(
    lines: Sequence[LineOnHypersurface],
    ground: FieldDescriptor,
    n: int,
    expect_euler: bool = False,
    max_threads: int = 1,
) -> Report:
    """
    Sum the local indices of a catalog of lines, in input order.

    Lines are evaluated concurrently on up to ``max_threads`` threads. With
    ``expect_euler`` the total is compared to the Euler class for ``n``;
    an empty catalog is never compared.

    Raises:
        DegenerateLineError: If some line is not simple.
    """
    with ThreadPoolExecutor(max_workers=max_threads) as executor:
        results = list(executor.map(lambda line: _line_class(line, ground), lines))

    table = Table("lines", ["line", "field", "det", "class"])
    for index, (line, (det, cls)) in enumerate(zip(lines, results)):
        table.add_row(index, line.field_of_line, det, cls)
    total = reduce(gw_add, (cls for _, cls in results), GWClass(ground, ()))
    logger.info("summed %d lines: rank %d", len(lines), total.rank)

    report = Report(
        "sum-indices",
        [Field("n", n), Field("lines_summed", len(lines)), table, Field("rank", total.rank)],
    )
    report.add_child(Field("class", total))
    if expect_euler and lines:
        expected = euler_class(n, ground)
        matches = gw_equal(total, expected)
        report.add_child(Field("expected", expected))
        report.add_child(
            Summary(
                f"sum={total} {'equals' if matches else 'differs from'} euler class {expected}",
                matches,
            )
        )
    else:
        report.add_child(Summary(f"sum={total}"))
    return report


def model_report(model: ConicModel) -> Report:
    identity = verify_identity(model)
    report = Report(
        "model",
        [
            Field("n", model.n),
            Field("field", model.descriptor),
            Field("A", identity.a_value),
            Field("det_VB", identity.det_vb),
            Field("R", identity.r_value),
            Field("V", identity.v_value),
            Field("lhs_equals_rhs", identity.lhs_equals_rhs),
            Field("zero_locus_consistent", identity.zero_locus_consistent),
        ],
    )
    try:
        report.add_child(Field("class", conic_index(model)))
    except DegenerateLineError:
        report.add_child(Field("class", "degenerate"))
    report.add_child(
        Summary(
            "A = (det V_B)^(2n)·R " + ("holds" if identity.passed else "FAILS"),
            identity.passed,
        )
    )
    return report


def run_verification(mode: str, params: VerifyParams) -> Report:
    """
    Run a registered verification mode.

    Raises:
        SchemaError: For unknown modes or invalid parameters.
    """
    return get_verifier(mode).run(params)
