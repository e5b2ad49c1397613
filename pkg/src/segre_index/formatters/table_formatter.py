import segre_index.reports as reports
from segre_index.formatters.base_formatter import BaseFormatter
from segre_index.registry import register_formatter


@register_formatter("table", "human", "text")
class TableFormatter(BaseFormatter):
    """
    Report -> aligned plain-text output for terminals.
    """

    def convert_default(self, node: reports.ReportNode) -> str:
        return "".join(child.convert(self) for child in node.children)

    def convert_report(self, report: reports.Report) -> str:
        return "".join(child.convert(self) for child in report.children)

    def convert_field(self, field: reports.Field) -> str:
        return f"{field.name}: {_cell(field.value)}\n"

    def convert_table(self, table: reports.Table) -> str:
        cells = [table.columns] + [[_cell(v) for v in row] for row in table.rows]
        widths = [max(len(row[k]) for row in cells) for k in range(len(table.columns))]
        lines = []
        for index, row in enumerate(cells):
            lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
            if index == 0:
                lines.append("  ".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"

    def convert_summary(self, summary: reports.Summary) -> str:
        return f"{summary.text}\n"


def _cell(value) -> str:
    if isinstance(value, bool):
        return "pass" if value else "FAIL"
    return str(value)
