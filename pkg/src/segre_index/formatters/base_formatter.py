from abc import ABC, abstractmethod

import segre_index.reports as reports


class BaseFormatter(ABC):
    """
    Abstract base class for report formatters implementing the Visitor pattern.

    Each node of a report calls back into the matching ``convert_*`` method, so
    new output formats are added without touching the report classes.
    """

    @abstractmethod
    def convert_default(self, node: reports.ReportNode) -> str:
        """
        Fallback for node types without a dedicated method.

        Args:
            node (reports.ReportNode): The node to render.

        Returns:
            str: The rendered node.
        """
        pass

    @abstractmethod
    def convert_report(self, report: reports.Report) -> str:
        """
        Render a whole report.

        Args:
            report (reports.Report): The root node.

        Returns:
            str: The complete output document.
        """
        pass

    @abstractmethod
    def convert_field(self, field: reports.Field) -> str:
        pass

    @abstractmethod
    def convert_table(self, table: reports.Table) -> str:
        pass

    @abstractmethod
    def convert_summary(self, summary: reports.Summary) -> str:
        pass
