from typing import TYPE_CHECKING, Any, Optional

if TYPE_CHECKING:
    from segre_index.formatters.base_formatter import BaseFormatter


class ReportNode:
    """
    Base class for the nodes of a command report.

    Args:
        node_type (str): The type of the node.
        children (list, optional): Child nodes. Defaults to None.
    """

    def __init__(self, node_type: str, children: Optional[list] = None):
        self._node_type = node_type
        self._children = children or []

    @property
    def node_type(self) -> str:
        return self._node_type

    @property
    def children(self) -> list:
        return self._children

    def add_child(self, child: "ReportNode") -> "ReportNode":
        self._children.append(child)
        return child

    def __repr__(self):
        return f"{self.__class__.__name__}(node_type={self._node_type})"

    def convert(self, formatter: "BaseFormatter") -> str:
        return formatter.convert_default(self)


class Report(ReportNode):
    """
    Root of a report.

    Args:
        title (str): Command name, e.g. ``"euler"``.
        children (list, optional): Fields, tables and summaries in display order.
    """

    def __init__(self, title: str, children: Optional[list] = None):
        super().__init__("report", children)
        self.title = title

    @property
    def passed(self) -> bool:
        """bool: False when any summary records a failed check."""
        return all(
            child.passed is not False for child in self.children if isinstance(child, Summary)
        )

    def convert(self, formatter: "BaseFormatter") -> str:
        return formatter.convert_report(self)


class Field(ReportNode):
    """A named scalar value (stringified on construction)."""

    def __init__(self, name: str, value: Any):
        super().__init__("field")
        self.name = name
        self.value = value if isinstance(value, (bool, int)) else str(value)

    def convert(self, formatter: "BaseFormatter") -> str:
        return formatter.convert_field(self)


class Table(ReportNode):
    """
    Rows of equal width under named columns.

    Args:
        name (str): Table name, used as a key in structured formats.
        columns (list[str]): Column headers.
    """

    def __init__(self, name: str, columns: list[str]):
        super().__init__("table")
        self.name = name
        self.columns = list(columns)
        self.rows: list[list] = []

    def add_row(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"Row has {len(values)} values for {len(self.columns)} columns")
        self.rows.append([v if isinstance(v, (bool, int)) else str(v) for v in values])

    def convert(self, formatter: "BaseFormatter") -> str:
        return formatter.convert_table(self)


class Summary(ReportNode):
    """
    A closing line, optionally carrying a pass/fail verdict.

    Args:
        text (str): Human-readable summary.
        passed (bool, optional): Verdict; None when the report makes no claim.
    """

    def __init__(self, text: str, passed: Optional[bool] = None):
        super().__init__("summary")
        self.text = text
        self.passed = passed

    def convert(self, formatter: "BaseFormatter") -> str:
        return formatter.convert_summary(self)
