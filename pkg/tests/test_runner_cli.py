import json

import pytest

from armourloss import (
    NumericalError,
    SweepSpec,
    harmonic_coefficient,
    run_single,
    run_sweep,
    selected_orders,
)
from armourloss.armour_loss import apparent_loss, shell_solution
from armourloss.cli import main, parse_value_list
from armourloss.config import SolverSettings
from armourloss.errors import ArmourLossError, ValidationError
from armourloss.runner import FULL_TRANSVERSE_ORDER, _max_workers
from armourloss.tube_transform import geometry

from conftest import make_design
from test_config import DESIGN_TEXT


class TestRunSingle:
    def test_matches_manual_composition(self, table1_design):
        result = run_single(table1_design)
        layout = table1_design.layout
        coeffs = [harmonic_coefficient(layout, m) for m in selected_orders(30)]
        tube = geometry(table1_design.armour, 1)
        loss = apparent_loss(shell_solution(coeffs, tube, layout), tube, layout)
        assert result.loss.delta_S == loss.delta_S
        assert result.tube == tube
        assert result.loss.lambda2 is None

    def test_lambda2_populated(self):
        design = make_design(r_ac=4e-5)
        assert run_single(design).loss.lambda2 > 0

    def test_tail_budget_enforced(self):
        design = make_design(solver=SolverSettings(m_max=30, tail_tol=1e-25))
        with pytest.raises(NumericalError, match="tail"):
            run_single(design)


class TestRunSweep:
    def test_rows_in_order_with_errors(self, table1_design):
        sweep = SweepSpec(parameter="N", values=(25, 200, 65))
        rows = run_sweep(table1_design, sweep)
        assert [r.value for r in rows] == [25, 200, 65]
        assert rows[0].error is None and rows[2].error is None
        assert "overlap" in rows[1].error
        assert rows[1].results == {}

    def test_both_truncations(self, table1_design):
        rows = run_sweep(table1_design, SweepSpec(parameter="N", values=(60,)),
                         both_truncations=True)
        assert set(rows[0].results) == {1, FULL_TRANSVERSE_ORDER}

    def test_single_value_matches_run_single(self, table1_design):
        rows = run_sweep(table1_design, SweepSpec(parameter="N", values=(135,)))
        assert rows[0].results[1].loss.delta_S == run_single(table1_design).loss.delta_S

    def test_thread_env(self, table1_design, monkeypatch):
        monkeypatch.setenv("ARMOUR_LOSS_THREADS", "2")
        assert _max_workers() == 2
        rows = run_sweep(table1_design, SweepSpec(parameter="N", values=(25, 65, 135)))
        assert [r.error for r in rows] == [None, None, None]
        monkeypatch.setenv("ARMOUR_LOSS_THREADS", "zero")
        with pytest.raises(ArmourLossError):
            _max_workers()
        monkeypatch.setenv("ARMOUR_LOSS_THREADS", "0")
        with pytest.raises(ArmourLossError):
            _max_workers()


class TestValueList:
    def test_range_expansion(self):
        assert parse_value_list("N", "25:55:10") == [25, 35, 45, 55]

    def test_plain_lists(self):
        assert parse_value_list("p_a", "-2.4,-4") == [-2.4, -4.0]
        assert parse_value_list("I_c", "100;200") == [100.0, 200.0]

    def test_complex_list(self):
        assert parse_value_list("mu_r", "150,-50;600,-350") == [150 - 50j, 600 - 350j]

    def test_bad_inputs(self):
        with pytest.raises(ValidationError):
            parse_value_list("N", "10:5:1")
        with pytest.raises(ValidationError):
            parse_value_list("N", "1:2")
        with pytest.raises(ValidationError):
            parse_value_list("p_a", "abc")


@pytest.fixture
def design_file(tmp_path):
    path = tmp_path / "cable.design"
    path.write_text(DESIGN_TEXT)
    return str(path)


class TestCli:
    def test_eval_csv_deterministic(self, design_file, capsys):
        assert main(["eval", design_file]) == 0
        first = capsys.readouterr().out
        assert main(["eval", design_file]) == 0
        second = capsys.readouterr().out
        assert first == second
        header, row = [l for l in first.splitlines() if not l.startswith("#")]
        assert header.startswith("loss_w_per_m,")
        assert float(row.split(",")[0]) > 0

    def test_eval_json(self, design_file, capsys):
        assert main(["eval", design_file, "--emit", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["loss"]["loss_w_per_m"] > 0
        assert payload["loss"]["lambda2"] > 0
        assert payload["tube"]["thickness_m"] > 0

    def test_eval_out_file(self, design_file, tmp_path, capsys):
        out = tmp_path / "result.csv"
        assert main(["eval", design_file, "--out", str(out)]) == 0
        assert capsys.readouterr().out == ""
        assert out.read_text().startswith("# armourloss")

    def test_eval_zero_current(self, tmp_path, capsys):
        path = tmp_path / "zero.design"
        path.write_text(DESIGN_TEXT.replace("core.current_a = 1000",
                                            "core.current_a = 0"))
        assert main(["eval", str(path)]) == 0
        row = [l for l in capsys.readouterr().out.splitlines()
               if not l.startswith("#")][1]
        assert float(row.split(",")[0]) == 0.0

    def test_eval_validation_failure_exit_2(self, tmp_path, capsys):
        path = tmp_path / "overlap.design"
        path.write_text(DESIGN_TEXT.replace("armour.wire_count = 135",
                                            "armour.wire_count = 200"))
        assert main(["eval", str(path)]) == 2
        assert "overlap" in capsys.readouterr().err

    def test_eval_numerical_failure_exit_3(self, design_file, capsys):
        path = design_file
        with open(path, "a") as fh:
            fh.write("solver.tail_tol = 1e-25\n")
        assert main(["eval", path]) == 3
        assert "tail" in capsys.readouterr().err

    def test_missing_file_exit_2(self, capsys):
        assert main(["eval", "/nonexistent.design"]) == 2

    def test_sweep_csv(self, design_file, capsys):
        assert main(["sweep", design_file, "--param", "N",
                     "--values", "25:135:55"]) == 0
        out = capsys.readouterr().out
        lines = [l for l in out.splitlines() if not l.startswith("#")]
        assert lines[0].startswith("N,loss_w_per_m,")
        assert len(lines) == 4  # header + 25, 80, 135
        assert lines[0].split(",")[-1] == "error"

    def test_sweep_both_truncations(self, design_file, capsys):
        assert main(["sweep", design_file, "--param", "N", "--values", "60;135",
                     "--both-truncations"]) == 0
        out = capsys.readouterr().out
        header = [l for l in out.splitlines() if not l.startswith("#")][0]
        assert "loss_w_per_m_m1" in header and "loss_w_per_m_m17" in header

    def test_sweep_mu_r(self, design_file, capsys):
        assert main(["sweep", design_file, "--param", "mu_r",
                     "--values", "150,-50;600,-350", "--emit", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert [row["value"] for row in payload["rows"]] == [
            {"re": 150.0, "im": -50.0}, {"re": 600.0, "im": -350.0}]

    def test_sweep_error_rows_continue(self, design_file, capsys):
        assert main(["sweep", design_file, "--param", "N",
                     "--values", "25;200;65"]) == 0
        rows = [l for l in capsys.readouterr().out.splitlines()
                if not l.startswith("#")][1:]
        assert "overlap" in rows[1]
        assert rows[0].split(",")[1] != "" and rows[2].split(",")[1] != ""

    def test_m_max_override_recorded(self, design_file, capsys):
        assert main(["eval", design_file, "--m-max", "20"]) == 0
        out = capsys.readouterr().out
        assert "# solver.m_max = 20" in out

    def test_validate_reports(self, design_file, capsys):
        assert main(["validate", design_file]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        reports = [json.loads(l) for l in lines]
        assert all(r["converged"] for r in reports)
        assert {"name", "rel_error", "main", "oracle"} <= set(reports[0])
