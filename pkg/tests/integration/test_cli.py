"""命令行集成测试：进程内调用 run_cli，检查标准输出、标准错误与退出码。

在项目根目录运行:
  pytest tests/integration/test_cli.py -v
"""

import json

import pytest

from gftv import __version__
from gftv.cli import main as cli_main
from gftv.cli.commands import verify as verify_command
from gftv.cli.main import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, run_cli
from gftv.core.errors import DegenerateMax
from gftv.db.clients.corpus_file import load_corpus
from gftv.schemas.reports import CorpusReport, Status, VerificationReport
from tests.conftest import make_params

# 小网格，保证单个用例在秒级完成
FAST = ["--samples", "512"]


def _table_rows(text: str) -> list[list[str]]:
    """去掉表头与分隔线，按空白切分数据行。"""
    return [line.split() for line in text.splitlines()[2:] if line.strip()]


# ---------------------------------------------------------------------------
# 入口与通用行为
# ---------------------------------------------------------------------------


class TestEntry:
    def test_help(self, capsys):
        assert run_cli(["--help"]) == EXIT_OK
        assert "bounds" in capsys.readouterr().out

    def test_subcommand_help(self, capsys):
        assert run_cli(["verify", "--help"]) == EXIT_OK
        assert "--theorem" in capsys.readouterr().out

    def test_version(self, capsys):
        assert run_cli(["--version"]) == EXIT_OK
        assert __version__ in capsys.readouterr().out

    def test_missing_command(self, capsys):
        assert run_cli([]) == EXIT_USAGE
        assert "gftv: error:" in capsys.readouterr().err

    def test_unknown_flag(self, capsys):
        assert run_cli(["bounds", "--bogus"]) == EXIT_USAGE
        assert "--bogus" in capsys.readouterr().err

    def test_bad_coefficient_syntax(self, capsys):
        assert run_cli(["verify", "--theorem", "t21", "--coeff", "2-0.1"]) == EXIT_USAGE
        assert "K:RE[:IM]" in capsys.readouterr().err

    def test_bad_radii(self, capsys):
        assert run_cli(["bounds", "--radii", "0.5,1.2"]) == EXIT_USAGE
        assert "configuration" in capsys.readouterr().err

    def test_config_file(self, tmp_path, capsys):
        path = tmp_path / "gftv.yaml"
        path.write_text("angular_count: 8\n", encoding="utf-8")
        assert run_cli(["bounds", "--config", str(path)]) == EXIT_USAGE

    def test_missing_config_file(self, tmp_path, capsys):
        assert run_cli(["bounds", "--config", str(tmp_path / "none.yaml")]) == EXIT_USAGE

    def test_log_file_written(self, tmp_path, capsys):
        assert run_cli(["bounds", "--theorem", "t21"]) == EXIT_OK
        text = (tmp_path / "logs" / "gftv.log").read_text(encoding="utf-8")
        assert "command_started" in text
        assert "command_finished" in text

    def test_metrics_file(self, tmp_path, capsys):
        path = tmp_path / "gftv.prom"
        code = run_cli(["verify", "--theorem", "t21", "--function", "identity", "--metrics-file", str(path), *FAST])
        assert code == EXIT_OK
        assert "gftv_verifications_total" in path.read_text(encoding="utf-8")

    def test_unexpected_domain_error_maps_to_one(self, monkeypatch, capsys):
        def boom(*args, **kwargs):
            raise DegenerateMax("w'(z0) vanishes")

        monkeypatch.setattr("gftv.cli.commands.jack.jack_check", boom)
        assert run_cli(["jack", "--coeff", "1:1"]) == EXIT_CHECK_FAILED
        assert "w'(z0) vanishes" in capsys.readouterr().err

    def test_main_exits_with_code(self, monkeypatch):
        monkeypatch.setattr("sys.argv", ["gftv", "bounds", "--theorem", "t99"])
        with pytest.raises(SystemExit) as info:
            cli_main.main()
        assert info.value.code == EXIT_USAGE


# ---------------------------------------------------------------------------
# bounds / oracle
# ---------------------------------------------------------------------------


class TestBounds:
    def test_t21_classical_value(self, capsys):
        assert run_cli(["bounds", "--theorem", "t21", "--p", "1", "--n", "1", "--alpha", "0"]) == EXIT_OK
        [row] = _table_rows(capsys.readouterr().out)
        assert row[0] == "t21"
        assert "0.5" in row

    def test_t24_invalid_range(self, capsys):
        assert run_cli(["bounds", "--theorem", "t24", "--p", "2", "--n", "1"]) == EXIT_USAGE
        assert "lambda range invalid (negative discriminant)" in capsys.readouterr().err

    def test_t24_range_and_interior(self, capsys):
        assert run_cli(["bounds", "--theorem", "t24", "--format", "records"]) == EXIT_OK
        records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        assert records[0]["lambda1"] == pytest.approx(1.0)
        assert records[0]["lambda2"] == pytest.approx(3.0)
        assert len(records) == 6
        assert all(r["bound"] is not None for r in records[1:])

    def test_all_theorems_without_selection(self, capsys):
        assert run_cli(["bounds", "--p", "2", "--n", "1"]) == EXIT_OK
        out = capsys.readouterr().out
        for name in ("t21", "t22", "t23a", "t23b", "t24"):
            assert name in out
        assert "negative discriminant" in out

    def test_classical_rows(self, capsys):
        assert run_cli(["bounds", "--theorem", "t22", "--classical", "--lambda", "1.5", "--format", "records"]) == EXIT_OK
        records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        classical = {r["theorem"]: r["bound"] for r in records if r["params"] == "classical p=1 n=1"}
        assert classical["t22"] == pytest.approx(1.5)
        assert classical["t24"] == pytest.approx(1.3)

    def test_invalid_alpha(self, capsys):
        assert run_cli(["bounds", "--theorem", "t21", "--alpha", "1"]) == EXIT_USAGE

    def test_output_file(self, tmp_path, capsys):
        path = tmp_path / "out" / "bounds.txt"
        assert run_cli(["bounds", "--theorem", "t21", "--output", str(path)]) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert path.read_text(encoding="utf-8").startswith("theorem")


class TestOracle:
    def test_t24(self, capsys):
        assert run_cli(["oracle", "--theorem", "t24", "--p", "1", "--n", "1", "--lambda", "1.5"]) == EXIT_OK
        assert "yes" in capsys.readouterr().out

    def test_t24_interior_points(self, capsys):
        assert run_cli(["oracle", "--theorem", "t24", "--format", "records"]) == EXIT_OK
        records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        assert len(records) == 5
        assert all(r["ok"] for r in records)

    def test_larger_m_reported_not_judged(self, capsys):
        code = run_cli(["oracle", "--theorem", "t21", "--alpha", "0.5", "--m", "3", "--theta-samples", "2000"])
        assert code == EXIT_OK

    def test_too_few_samples(self, capsys):
        assert run_cli(["oracle", "--theorem", "t21", "--theta-samples", "10"]) == EXIT_USAGE


# ---------------------------------------------------------------------------
# verify / sweep / search
# ---------------------------------------------------------------------------


class TestVerify:
    def test_single_function(self, capsys):
        assert run_cli(["verify", "--theorem", "t21", "--coeff", "2:0.1", *FAST]) == EXIT_OK
        [row] = _table_rows(capsys.readouterr().out)
        assert row[0] == "user"
        assert "BOTH_HOLD" in row

    def test_named_function(self, capsys):
        code = run_cli(["verify", "--theorem", "t24", "--lambda", "2", "--function", "pair:0.1", *FAST])
        assert code == EXIT_OK
        assert "monomial-pair(0.1)" in capsys.readouterr().out

    def test_records_format(self, capsys):
        code = run_cli(["verify", "--theorem", "t22", "--coeff", "2:1", "--format", "records", *FAST])
        assert code == EXIT_OK
        [record] = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        assert record["status"] == "VACUOUS"
        assert record["hyp_margin"] == float("-inf")
        assert "derivative_zero_inside" in record["notes"]

    def test_requires_function(self, capsys):
        assert run_cli(["verify", "--theorem", "t21"]) == EXIT_USAGE
        assert "--coeff" in capsys.readouterr().err

    def test_gap_violation(self, capsys):
        assert run_cli(["verify", "--theorem", "t21", "--n", "3", "--coeff", "2:0.1"]) == EXIT_USAGE

    def test_missing_lambda(self, capsys):
        assert run_cli(["verify", "--theorem", "t24", "--function", "identity", *FAST]) == EXIT_USAGE

    def test_violation_exit_code(self, monkeypatch, capsys):
        def fake_run_corpus(entries, params, grid, tol, threads):
            report = VerificationReport(
                function_id=entries[0].id,
                params=params,
                radius=grid.outer_radius,
                samples=grid.angular_count,
                tol=tol,
                hyp_margin=0.1,
                concl_margin=-0.1,
                status=Status.VIOLATION,
            )
            return CorpusReport(params=params, reports=[report])

        monkeypatch.setattr(verify_command, "run_corpus", fake_run_corpus)
        assert run_cli(["verify", "--theorem", "t21", "--function", "identity", *FAST]) == EXIT_VIOLATION
        assert "VIOLATION" in capsys.readouterr().out

    def test_corpus_file_round_trip(self, tmp_path, capsys):
        path = tmp_path / "corpus.tsv"
        assert run_cli(["corpus", "--count", "5", "--seed", "3", "--output", str(path)]) == EXIT_OK
        assert "wrote 5 entries" in capsys.readouterr().err
        code = run_cli(["verify", "--theorem", "t21", "--corpus", str(path), "--format", "records", *FAST])
        assert code == EXIT_OK
        records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        assert [r["function_id"] for r in records] == [f"rand-p1-n1-{i:05d}" for i in range(5)]

    def test_corpus_id_selection(self, tmp_path, capsys):
        path = tmp_path / "corpus.tsv"
        run_cli(["corpus", "--count", "3", "--output", str(path)])
        capsys.readouterr()
        code = run_cli(["verify", "--theorem", "t21", "--corpus", str(path), "--id", "rand-p1-n1-00001", *FAST])
        assert code == EXIT_OK
        assert len(_table_rows(capsys.readouterr().out)) == 1

    def test_unknown_corpus_id(self, tmp_path, capsys):
        path = tmp_path / "corpus.tsv"
        run_cli(["corpus", "--count", "3", "--output", str(path)])
        code = run_cli(["verify", "--theorem", "t21", "--corpus", str(path), "--id", "missing", *FAST])
        assert code == EXIT_USAGE

    def test_malformed_corpus(self, tmp_path, capsys):
        path = tmp_path / "bad.tsv"
        path.write_text("f1\t1\tone\t8\ttrue\t0\tuser\t1:1:0\n", encoding="utf-8")
        assert run_cli(["verify", "--theorem", "t21", "--corpus", str(path)]) == EXIT_USAGE
        assert "line 1" in capsys.readouterr().err

    def test_missing_corpus(self, tmp_path, capsys):
        assert run_cli(["verify", "--theorem", "t21", "--corpus", str(tmp_path / "none.tsv")]) == EXIT_USAGE


class TestSweep:
    ARGS = ["sweep", "--theorem", "t21,t24", "--p", "1,2", "--n", "1", "--count", "5", "--samples", "256"]

    def test_skips_invalid_and_reports(self, capsys):
        assert run_cli(self.ARGS) == EXIT_OK
        captured = capsys.readouterr()
        assert "skipped t24 p=2 n=1" in captured.err
        rows = _table_rows(captured.out)
        labels = [" ".join(r[:4]) for r in rows]
        assert any(label.startswith("t21 p=1") for label in labels)
        assert any(label.startswith("t24 p=1") for label in labels)
        assert all(r[-2] == "0" for r in rows)

    def test_byte_identical_reruns(self, capsys):
        run_cli(self.ARGS)
        first = capsys.readouterr().out
        run_cli(self.ARGS)
        assert capsys.readouterr().out == first

    def test_no_valid_combination(self, capsys):
        assert run_cli(["sweep", "--theorem", "t21", "--alpha", "1,2", "--count", "2"]) == EXIT_USAGE


class TestSearch:
    def test_strict_mode_none(self, capsys):
        code = run_cli(["search", "--theorem", "t21", "--trials", "50", "--radii", "0.999", "--samples", "256"])
        assert code == EXIT_OK
        assert "none" in capsys.readouterr().out

    def test_negative_delta(self, capsys):
        assert run_cli(["search", "--theorem", "t21", "--delta", "-1", "--trials", "5"]) == EXIT_USAGE


# ---------------------------------------------------------------------------
# valence / jack / corpus
# ---------------------------------------------------------------------------


class TestValence:
    def test_identity(self, capsys):
        assert run_cli(["valence", "--p", "2", "--function", "identity", *FAST]) == EXIT_OK
        [row] = _table_rows(capsys.readouterr().out)
        assert row[4] == "2"
        assert row[5] == "yes"

    def test_extra_zero_fails(self, capsys):
        # z + 2z² 在 -0.5 处另有零点
        assert run_cli(["valence", "--coeff", "2:2", "--radius", "0.9", *FAST]) == EXIT_CHECK_FAILED

    def test_bad_radius(self, capsys):
        assert run_cli(["valence", "--function", "identity", "--radius", "1.5"]) == EXIT_USAGE


class TestJack:
    def test_given_function(self, capsys):
        assert run_cli(["jack", "--coeff", "2:1", "--coeff", "3:0.2", "--format", "records"]) == EXIT_OK
        [record] = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        assert record["order"] == 2
        assert record["real_part_ok"] and record["residual_ok"] and record["second_ok"]

    def test_random_functions(self, capsys):
        assert run_cli(["jack", "--order", "2", "--count", "5", "--seed", "4", "--samples", "1024"]) == EXIT_OK
        assert len(_table_rows(capsys.readouterr().out)) == 5

    def test_bad_radius(self, capsys):
        assert run_cli(["jack", "--coeff", "1:1", "--r0", "1"]) == EXIT_USAGE


class TestCorpusCommand:
    def test_stdout(self, capsys):
        assert run_cli(["corpus", "--count", "2", "--p", "2", "--n", "2", "--function", "identity"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "# gftv corpus v1"
        data = [line for line in lines if not line.startswith("#")]
        assert [line.split("\t")[0] for line in data] == ["identity", "rand-p2-n2-00000", "rand-p2-n2-00001"]

    def test_file_loads_back(self, tmp_path, capsys):
        path = tmp_path / "c.tsv"
        assert run_cli(["corpus", "--count", "4", "--mode", "aggressive", "--output", str(path)]) == EXIT_OK
        entries = load_corpus(path)
        assert len(entries) == 4
        assert entries[0].provenance.mode == "aggressive"

    def test_bad_degree(self, capsys):
        assert run_cli(["corpus", "--count", "2", "--degree", "0"]) == EXIT_USAGE

    def test_unknown_named_function(self, capsys):
        assert run_cli(["corpus", "--function", "koebe"]) == EXIT_USAGE


def test_verify_records_are_canonically_ordered(tmp_path, capsys):
    path = tmp_path / "corpus.tsv"
    run_cli(["corpus", "--count", "3", "--function", "identity", "--output", str(path)])
    capsys.readouterr()
    run_cli(["verify", "--theorem", "t21", "--corpus", str(path), "--format", "records", *FAST])
    ids = [json.loads(line)["function_id"] for line in capsys.readouterr().out.splitlines()]
    assert ids == sorted(ids)
    assert make_params("t21").label() == "t21 p=1 n=1 alpha=0"
