import json

import segre_index.reports as reports
from segre_index.formatters.base_formatter import BaseFormatter
from segre_index.registry import register_formatter


@register_formatter("json")
class JsonFormatter(BaseFormatter):
    """
    Report -> deterministic JSON.

    Node methods return JSON fragments; ``convert_report`` assembles them into
    one object keyed by field and table names, in insertion order.
    """

    def convert_default(self, node: reports.ReportNode) -> str:
        return json.dumps([json.loads(child.convert(self)) for child in node.children])

    def convert_report(self, report: reports.Report) -> str:
        document: dict = {"command": report.title}
        for child in report.children:
            fragment = json.loads(child.convert(self))
            document.update(fragment)
        document["passed"] = report.passed
        return json.dumps(document, ensure_ascii=False, indent=2) + "\n"

    def convert_field(self, field: reports.Field) -> str:
        return json.dumps({field.name: field.value}, ensure_ascii=False)

    def convert_table(self, table: reports.Table) -> str:
        rows = [dict(zip(table.columns, row)) for row in table.rows]
        return json.dumps({table.name: rows}, ensure_ascii=False)

    def convert_summary(self, summary: reports.Summary) -> str:
        return json.dumps({"summary": summary.text}, ensure_ascii=False)
