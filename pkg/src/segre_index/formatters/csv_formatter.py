import csv
import io

import segre_index.reports as reports
from segre_index.formatters.base_formatter import BaseFormatter
from segre_index.registry import register_formatter


@register_formatter("csv")
class CsvFormatter(BaseFormatter):
    """
    Report -> CSV.

    Scalar fields become ``name,value`` rows; each table is written with its
    header after a blank separator line.
    """

    def convert_default(self, node: reports.ReportNode) -> str:
        return "".join(child.convert(self) for child in node.children)

    def convert_report(self, report: reports.Report) -> str:
        return "".join(child.convert(self) for child in report.children)

    def convert_field(self, field: reports.Field) -> str:
        return _rows([[field.name, field.value]])

    def convert_table(self, table: reports.Table) -> str:
        return "\n" + _rows([table.columns] + table.rows)

    def convert_summary(self, summary: reports.Summary) -> str:
        return _rows([["summary", summary.text]])


def _rows(rows: list) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()
