import csv
import io
import json

import pytest

from segre_index.errors import SchemaError
from segre_index.formatters.csv_formatter import CsvFormatter
from segre_index.formatters.json_formatter import JsonFormatter
from segre_index.formatters.table_formatter import TableFormatter
from segre_index.registry import (
    get_available_formatters,
    get_available_verifiers,
    get_formatter,
    get_verifier,
)
from segre_index.reports import Field, Report, Summary, Table


@pytest.fixture
def report():
    table = Table("trials", ["trial", "seed", "passed", "detail"])
    table.add_row(0, 0, True, "A=4")
    table.add_row(1, 1, False, "A=0 (degenerate)")
    return Report(
        "verify",
        [Field("mode", "conic-identity"), Field("n", 3), table, Summary("1/2 passed", False)],
    )


class TestRegistry:
    @pytest.mark.parametrize(
        "name, cls",
        [("table", TableFormatter), ("human", TableFormatter), ("TEXT", TableFormatter),
         ("json", JsonFormatter), ("csv", CsvFormatter)],
    )
    def test_get_formatter(self, name, cls):
        assert isinstance(get_formatter(name), cls)

    def test_unknown_names(self):
        with pytest.raises(SchemaError):
            get_formatter("yaml")
        with pytest.raises(SchemaError):
            get_verifier("nonsense")

    def test_available_formatters(self):
        available = dict(get_available_formatters())
        assert available["table"] == ["human", "text"]
        assert available["json"] == []
        assert list(available) == sorted(available)

    def test_available_verifiers(self):
        available = dict(get_available_verifiers())
        assert available["conic-identity"] == ["identity"]
        assert available["symmetric-family"] == ["closed-form"]
        assert available["segre-equals-local"] == ["segre-local"]


class TestReportNodes:
    def test_row_width_is_checked(self):
        with pytest.raises(ValueError):
            Table("t", ["a", "b"]).add_row(1)

    def test_passed_without_verdict(self):
        assert Report("euler", [Summary("c=27")]).passed

    def test_failed_summary(self, report):
        assert not report.passed

    def test_fields_stringify_values(self):
        assert Field("x", 2.5).value == "2.5"
        assert Field("flag", True).value is True


class TestTableFormatter:
    def test_output(self, report):
        text = report.convert(TableFormatter())
        lines = text.splitlines()
        assert lines[0] == "mode: conic-identity"
        assert lines[1] == "n: 3"
        assert lines[2].split() == ["trial", "seed", "passed", "detail"]
        assert set(lines[3].replace(" ", "")) == {"-"}
        assert lines[4].split() == ["0", "0", "pass", "A=4"]
        assert "FAIL" in lines[5]
        assert lines[-1] == "1/2 passed"


class TestJsonFormatter:
    def test_output(self, report):
        document = json.loads(report.convert(JsonFormatter()))
        assert document == {
            "command": "verify",
            "mode": "conic-identity",
            "n": 3,
            "trials": [
                {"trial": 0, "seed": 0, "passed": True, "detail": "A=4"},
                {"trial": 1, "seed": 1, "passed": False, "detail": "A=0 (degenerate)"},
            ],
            "summary": "1/2 passed",
            "passed": False,
        }

    def test_deterministic(self, report):
        assert report.convert(JsonFormatter()) == report.convert(JsonFormatter())

    def test_unicode_is_kept(self):
        text = Report("euler", [Field("class", "15⟨1⟩+12⟨-1⟩")]).convert(JsonFormatter())
        assert "15⟨1⟩+12⟨-1⟩" in text


class TestCsvFormatter:
    def test_output(self, report):
        rows = list(csv.reader(io.StringIO(report.convert(CsvFormatter()))))
        assert rows[0] == ["mode", "conic-identity"]
        assert rows[1] == ["n", "3"]
        assert rows[2] == []
        assert rows[3] == ["trial", "seed", "passed", "detail"]
        assert rows[4] == ["0", "0", "True", "A=4"]
        assert rows[-1] == ["summary", "1/2 passed"]
