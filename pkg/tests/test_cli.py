import numpy as np
import pytest

from gdikit.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMeasure:
    def test_inert_pair_reports_zeros(self, tmp_path, capsys):
        out = tmp_path / "measure.csv"
        code, stdout, _ = run_cli(
            ["measure", "--agent", "constant", "--env", "uniform", "--out", str(out)], capsys
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("# subcommand=measure")
        assert lines[1] == "plasticity_bits,empowerment_bits,bound_bits,slack_bits"
        p, e, m, slack = (float(x) for x in lines[2].split(","))
        assert p < 1e-12 and e < 1e-12 and m == 3.0
        assert stdout.startswith("value_bits=")

    def test_mc_method(self, tmp_path, capsys):
        out = tmp_path / "mc.csv"
        code, _, _ = run_cli(
            [
                "measure",
                "--agent", "mirror(start=2)",
                "--env", "uniform",
                "--a", "1", "--b", "2", "--c", "2", "--d", "3",
                "--method", "mc",
                "--samples", "20000",
                "--out", str(out),
            ],
            capsys,
        )
        assert code == 0
        p = float(out.read_text().splitlines()[2].split(",")[0])
        assert abs(p - 2.0) < 0.05


class TestSweeps:
    def test_epsilon_sweep_endpoint_is_zero(self, tmp_path, capsys):
        out = tmp_path / "eps.csv"
        code, _, _ = run_cli(["sweep-epsilon", "--grid-points", "3", "--out", str(out)], capsys)
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[1] == "epsilon,arrow,plasticity_bits,ci_low,ci_high,method,seed"
        rows = [ln.split(",") for ln in lines[2:]]
        assert len(rows) == 6  # 3 grid points x 2 arrows
        last_delayed = [r for r in rows if r[0] == "1" and r[1] == "delayed"][0]
        assert float(last_delayed[2]) < 1e-12

    def test_qinit_sweep_respects_bound(self, tmp_path, capsys):
        out = tmp_path / "qinit.csv"
        code, _, _ = run_cli(["sweep-qinit", "--grid-points", "5", "--out", str(out)], capsys)
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[1] == "q_init,plasticity_bits,empowerment_bits,sum_bits,bound_bits,method,seed"
        for ln in lines[2:]:
            fields = [float(x) for x in ln.split(",")[:5]]
            assert fields[3] <= fields[4] + 1e-10

    def test_corridor_table(self, tmp_path, capsys):
        out = tmp_path / "corridor.csv"
        code, _, _ = run_cli(["corridor", "--rooms", "3", "--horizon", "3", "--out", str(out)], capsys)
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[1] == "room,plasticity_bits,empowerment_bits"
        assert len(lines) == 5  # comment, header, 3 rooms


class TestLaws:
    def test_small_suite_passes(self, tmp_path, capsys):
        out = tmp_path / "laws.csv"
        code, _, _ = run_cli(["laws", "--seeds", "4", "--out", str(out)], capsys)
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[1] == "law,seed,horizon,na,no,a,b,c,d,arrow,residual_bits,pass"
        assert len(lines) == 2 + 5 * 4
        assert all(ln.endswith("True") for ln in lines[2:])


class TestConfigHandling:
    def test_determinism_byte_identical(self, tmp_path, capsys):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["sweep-qinit", "--grid-points", "3"]
        assert main(args + ["--out", str(first)]) == 0
        assert main(args + ["--out", str(second)]) == 0
        capsys.readouterr()
        assert first.read_bytes() == second.read_bytes()

    def test_config_file_with_flag_override(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("grid-points = 3\nenv = bandit(p0=0.4,p1=0.7)\n# comment line\n")
        out = tmp_path / "eps.csv"
        code, _, _ = run_cli(
            ["sweep-epsilon", "--config", str(cfg), "--grid-points", "2", "--out", str(out)],
            capsys,
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert "grid-points=2" in lines[0]
        assert len(lines) == 2 + 2 * 2

    def test_unknown_config_key_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("bogus = 1\n")
        code, _, err = run_cli(["sweep-epsilon", "--config", str(cfg)], capsys)
        assert code == 2 and "bogus" in err


class TestErrors:
    def test_unknown_zoo_name(self, capsys):
        code, _, err = run_cli(["measure", "--agent", "nonesuch"], capsys)
        assert code == 2
        assert "unknown agent" in err

    def test_invalid_interval(self, capsys):
        code, _, err = run_cli(["measure", "--a", "3", "--b", "2"], capsys)
        assert code == 2
        assert "interval" in err

    def test_cap_exceeded(self, capsys):
        code, _, err = run_cli(["measure", "--d", "30"], capsys)
        assert code == 3
        assert "cap" in err
