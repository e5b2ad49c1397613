import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from segre_index.cli import app

SAMPLES = Path(__file__).resolve().parents[1] / "integration" / "sample_files"


@pytest.fixture
def runner():
    return CliRunner()


def sample(name: str) -> str:
    return str(SAMPLES / name)


class TestCLICommands:
    def test_version(self, runner):
        result = runner.invoke(app, ["--version"])
        assert result.exit_code == 0
        assert "segre-index version" in result.stdout

    def test_list_formats(self, runner):
        result = runner.invoke(app, ["list-formats"])
        assert result.exit_code == 0
        assert "Output formats:" in result.stdout
        assert "Verification modes:" in result.stdout
        assert "• table (aliases: human, text)" in result.stdout
        assert "• conic-identity (aliases: identity)" in result.stdout

    def test_no_command_prints_help(self, runner):
        result = runner.invoke(app, [])
        assert result.exit_code == 0
        assert "euler" in result.stdout


class TestGlobalCounts:
    def test_euler(self, runner):
        result = runner.invoke(app, ["euler", "--n", "2"])
        assert result.exit_code == 0
        assert "c=27, signature=3, class=15⟨1⟩+12⟨-1⟩" in result.stdout

    def test_euler_json(self, runner):
        result = runner.invoke(app, ["euler", "-n", "3", "--format", "json"])
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document["command"] == "euler"
        assert document["c"] == 2875
        assert document["signature"] == 15
        assert document["class"] == "1445⟨1⟩+1430⟨-1⟩"

    def test_euler_rejects_small_n(self, runner):
        result = runner.invoke(app, ["euler", "--n", "1"])
        assert result.exit_code == 2
        assert "Error:" in result.output

    def test_chern(self, runner):
        result = runner.invoke(app, ["chern", "--n", "4"])
        assert result.exit_code == 0
        assert "c(4)=698005" in result.stdout
        assert "parity_check: pass" in result.stdout

    def test_castelnuovo(self, runner):
        result = runner.invoke(app, ["castelnuovo", "--n", "5"])
        assert result.exit_code == 0
        assert "count: 10" in result.stdout
        assert "porteous_identity: pass" in result.stdout

    def test_castelnuovo_rejects_n_two(self, runner):
        result = runner.invoke(app, ["castelnuovo", "--n", "2"])
        assert result.exit_code == 2

    def test_unknown_format(self, runner):
        result = runner.invoke(app, ["euler", "--n", "2", "--format", "yaml"])
        assert result.exit_code == 2
        assert "No formatter registered" in result.output


class TestLineCommands:
    def test_local_index_of_rational_fermat_line(self, runner):
        result = runner.invoke(app, ["local-index", "--input", sample("fermat_rational_line.json")])
        assert result.exit_code == 0
        assert "det=81 class=⟨1⟩" in result.stdout
        assert "square_class: 1" in result.stdout

    @pytest.mark.parametrize("name", ["cubic_surface_line.json", "quintic_threefold_line.json"])
    def test_local_index_samples(self, runner, name):
        result = runner.invoke(app, ["local-index", "-i", sample(name)])
        assert result.exit_code == 0
        assert "det=-1 class=⟨-1⟩" in result.stdout

    def test_local_index_over_prime_field(self, runner):
        result = runner.invoke(
            app, ["local-index", "-i", sample("fermat_rational_line.json"), "--ground", "fp:7"]
        )
        assert result.exit_code == 0
        # 81 = 4 mod 7 is a square
        assert "det=4 class=⟨1⟩" in result.stdout

    def test_segre_index(self, runner):
        result = runner.invoke(app, ["segre-index", "-i", sample("cubic_surface_line.json")])
        assert result.exit_code == 0
        assert "segre class=⟨-1⟩" in result.stdout

    def test_degenerate_line_exits_with_three(self, runner, tmp_path):
        document = {
            "n": 2,
            "F": {"nvars": 4, "terms": [
                {"exps": [2, 0, 1, 0], "coeff": 1},
                {"exps": [1, 1, 0, 1], "coeff": 1},
            ]},
            "line": {"span": [[1, 0, 0, 0], [0, 1, 0, 0]]},
        }
        path = tmp_path / "degenerate.json"
        path.write_text(json.dumps(document), encoding="utf-8")
        result = runner.invoke(app, ["local-index", "-i", str(path)])
        assert result.exit_code == 3
        assert "non-simple line" in result.output

    def test_missing_input(self, runner, tmp_path):
        result = runner.invoke(app, ["local-index", "-i", str(tmp_path / "missing.json")])
        assert result.exit_code != 0

    def test_invalid_json(self, runner, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        result = runner.invoke(app, ["local-index", "-i", str(path)])
        assert result.exit_code == 2


class TestSumIndices:
    def test_fermat_cubic_matches_euler_class(self, runner):
        result = runner.invoke(
            app, ["sum-indices", "-i", sample("fermat_cubic_lines.json"), "--expect-euler"]
        )
        assert result.exit_code == 0
        assert "rank: 27" in result.stdout
        assert "equals euler class" in result.stdout

    def test_missing_line_fails(self, runner, tmp_path):
        document = json.loads(Path(sample("fermat_cubic_lines.json")).read_text(encoding="utf-8"))
        document["lines"] = document["lines"][1:]
        path = tmp_path / "partial.json"
        path.write_text(json.dumps(document), encoding="utf-8")
        result = runner.invoke(app, ["sum-indices", "-i", str(path), "--expect-euler"])
        assert result.exit_code == 4
        assert "differs from euler class" in result.stdout

    def test_empty_catalog(self, runner, tmp_path):
        document = json.loads(Path(sample("fermat_cubic_lines.json")).read_text(encoding="utf-8"))
        document["lines"] = []
        path = tmp_path / "empty.json"
        path.write_text(json.dumps(document), encoding="utf-8")
        result = runner.invoke(app, ["sum-indices", "-i", str(path), "--expect-euler"])
        assert result.exit_code == 0
        assert "sum=0" in result.stdout

    def test_thread_setting(self, runner, monkeypatch):
        monkeypatch.setenv("SEGRE_MAX_THREADS", "4")
        result = runner.invoke(app, ["sum-indices", "-i", sample("fermat_cubic_lines.json")])
        assert result.exit_code == 0

    def test_invalid_thread_setting(self, runner, monkeypatch):
        monkeypatch.setenv("SEGRE_MAX_THREADS", "many")
        result = runner.invoke(app, ["sum-indices", "-i", sample("fermat_cubic_lines.json")])
        assert result.exit_code == 2


class TestModelAndVerify:
    def test_clebsch_model(self, runner):
        result = runner.invoke(app, ["model", "-i", sample("clebsch_sextic.json"), "-f", "json"])
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document["lhs_equals_rhs"] is True
        assert document["A"] != "0"
        assert document["passed"] is True

    def test_verify_conic_identity(self, runner):
        result = runner.invoke(
            app, ["verify", "--mode", "conic-identity", "--n", "3", "--trials", "5", "--seed", "1"]
        )
        assert result.exit_code == 0
        assert "5/5 passed" in result.stdout

    def test_verify_is_deterministic(self, runner):
        args = ["verify", "-m", "identity", "-n", "4", "-t", "4", "-s", "9", "-f", "json"]
        first = runner.invoke(app, args)
        second = runner.invoke(app, args)
        assert first.exit_code == 0
        assert first.stdout == second.stdout

    def test_verify_prime_field(self, runner):
        result = runner.invoke(
            app, ["verify", "-m", "conic-identity", "-n", "3", "-t", "5", "--field", "fp:101"]
        )
        assert result.exit_code == 0
        assert "field: F_101" in result.stdout

    def test_verify_symmetric_family(self, runner):
        result = runner.invoke(app, ["verify", "-m", "symmetric-family", "--a", "1,2,3,4"])
        assert result.exit_code == 0
        assert "n: 4" in result.stdout
        assert "4/4 passed" in result.stdout

    def test_verify_segre_local(self, runner):
        result = runner.invoke(app, ["verify", "-m", "segre-local", "-n", "2", "-t", "3"])
        assert result.exit_code == 0

    def test_unknown_mode(self, runner):
        result = runner.invoke(app, ["verify", "-m", "everything"])
        assert result.exit_code == 2

    def test_bad_field(self, runner):
        result = runner.invoke(app, ["verify", "-m", "conic-identity", "--field", "fp:4"])
        assert result.exit_code == 2

    def test_output_file(self, runner, tmp_path):
        output = tmp_path / "euler.csv"
        result = runner.invoke(app, ["euler", "-n", "2", "-f", "csv", "-o", str(output)])
        assert result.exit_code == 0
        assert output.read_text(encoding="utf-8").startswith("n,2\n")

    def test_output_to_missing_directory(self, runner, tmp_path):
        output = tmp_path / "nowhere" / "euler.txt"
        result = runner.invoke(app, ["euler", "-n", "2", "-o", str(output)])
        assert result.exit_code == 1
