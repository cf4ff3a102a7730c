import numpy as np
import pytest

from blasius_pinn.cli import main
from blasius_pinn.config import ConfigError, RunConfig, parse_config
from blasius_pinn.network import load_checkpoint
from blasius_pinn.oracle import SolutionTable

FAST_TRAIN = """
network.depth = 1
network.width = 8
network.seed = 0
adam.max_steps = 40
adam.switch_tol = 1e-12
lbfgs.max_iters = 25
grid.n = 20
"""


def write_cfg(tmp_path, text, name="run.cfg"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestConfigParsing:
    def test_defaults(self):
        cfg = parse_config("")
        assert cfg.grid.eta_m == 8.0 and cfg.grid.n == 100
        assert cfg.probe.eta0 == -5.69
        assert cfg.boundary_variant == "derivative"
        assert cfg.network_config().width == 100

    def test_sections_and_comments(self):
        cfg = parse_config(
            "# a comment\n"
            "mode = train\n"
            "network.depth = 3   # inline comment\n"
            "adam.base_lr = 2e-3\n"
            "grid.eta_m = 6.5\n"
            "paths.plot_out = plot.svg\n"
        )
        assert cfg.mode == "train"
        assert cfg.network_config().depth == 3
        assert cfg.adam_config().base_lr == 2e-3
        assert cfg.grid.eta_m == 6.5
        assert cfg.paths.plot_out == "plot.svg"

    def test_rejects_unknown_key(self):
        with pytest.raises(ConfigError):
            parse_config("network.depht = 2\n")

    def test_rejects_bad_types_and_syntax(self):
        with pytest.raises(ConfigError):
            parse_config("network.depth = two\n")
        with pytest.raises(ConfigError):
            parse_config("adam.base_lr = fast\n")
        with pytest.raises(ConfigError):
            parse_config("just some text\n")

    def test_rejects_bad_mode_and_variant(self):
        with pytest.raises(ConfigError):
            parse_config("mode = fly\n")
        with pytest.raises(ConfigError):
            parse_config("boundary_variant = strict\n")

    def test_invalid_values_surface_as_config_errors(self):
        cfg = parse_config("network.depth = 0\n")
        with pytest.raises(ConfigError):
            cfg.network_config()
        cfg = parse_config("adam.decay = 0\n")
        with pytest.raises(ConfigError):
            cfg.adam_config()

    def test_seed_override(self):
        cfg = RunConfig()
        assert cfg.network_config(seed_override=7).seed == 7


class TestCliModes:
    def test_train_writes_all_artifacts(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, FAST_TRAIN + "paths.plot_out = plot.svg\n")
        rc = main(["train", "--config", cfg, "--out", str(tmp_path)])
        assert rc == 0
        out = capsys.readouterr().out
        assert out.startswith("ok mode=train loss_total=")
        net, p = load_checkpoint(tmp_path / "checkpoint.txt")
        assert net.depth == 1 and net.width == 8 and net.seed == 0
        table = SolutionTable.from_csv(tmp_path / "solution.csv")
        assert len(table) == 20
        report = (tmp_path / "report.txt").read_text()
        assert "loss_total:" in report and "lbfgs_status:" in report
        curve = (tmp_path / "loss_curve.csv").read_text().splitlines()
        assert curve[0] == "phase,step,loss"
        assert any(line.startswith("adam,") for line in curve[1:])
        svg = (tmp_path / "plot.svg").read_text()
        assert svg.startswith("<svg") or "<svg" in svg

    def test_train_seed_flag_overrides_config(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, FAST_TRAIN)
        assert main(["train", "--config", cfg, "--out", str(tmp_path), "--seed", "3"]) == 0
        assert "seed=3" in capsys.readouterr().out
        net, _ = load_checkpoint(tmp_path / "checkpoint.txt")
        assert net.seed == 3

    def test_train_determinism_byte_identical(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, FAST_TRAIN)
        d1, d2 = tmp_path / "a", tmp_path / "b"
        assert main(["train", "--config", cfg, "--out", str(d1)]) == 0
        assert main(["train", "--config", cfg, "--out", str(d2)]) == 0
        capsys.readouterr()
        assert (d1 / "solution.csv").read_bytes() == (d2 / "solution.csv").read_bytes()
        assert (d1 / "checkpoint.txt").read_bytes() == (d2 / "checkpoint.txt").read_bytes()

    def test_solve_oracle(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, "oracle.h = 1e-3\n")
        rc = main(["solve-oracle", "--config", cfg, "--out", str(tmp_path)])
        assert rc == 0
        out = capsys.readouterr().out
        assert "s_star=0.332" in out
        table = SolutionTable.from_csv(tmp_path / "solution.csv")
        assert abs(table.fp[-1] - 1.0) <= 1e-9

    def test_compare_after_train(self, tmp_path, capsys, trained_default):
        # a fully trained checkpoint: compare needs f' to actually reach 0.99
        from blasius_pinn.network import NetworkConfig, save_checkpoint

        p, _ = trained_default
        save_checkpoint(tmp_path / "checkpoint.txt", NetworkConfig(2, 100, 0), p)
        cfg_cmp = write_cfg(
            tmp_path,
            "paths.checkpoint_in = checkpoint.txt\n"
            "paths.csv_out = compare.csv\n"
            "oracle.h = 1e-3\n",
            name="cmp.cfg",
        )
        rc = main(["compare", "--config", cfg_cmp, "--out", str(tmp_path)])
        assert rc == 0
        assert "ok mode=compare" in capsys.readouterr().out
        lines = (tmp_path / "compare.csv").read_text().splitlines()
        assert lines[0] == "field,value"
        fields = {l.split(",")[0] for l in lines[1:]}
        assert {"max_abs_err_f", "wall_curvature_pinn", "eta99_oracle"} <= fields

    def test_export_roundtrip(self, tmp_path, capsys):
        cfg_train = write_cfg(tmp_path, FAST_TRAIN)
        assert main(["train", "--config", cfg_train, "--out", str(tmp_path)]) == 0
        cfg_exp = write_cfg(
            tmp_path,
            "paths.checkpoint_in = checkpoint.txt\n"
            "paths.csv_out = export.csv\n"
            "grid.n = 33\n",
            name="exp.cfg",
        )
        assert main(["export", "--config", cfg_exp, "--out", str(tmp_path)]) == 0
        assert "rows=33" in capsys.readouterr().out
        table = SolutionTable.from_csv(tmp_path / "export.csv")
        assert len(table) == 33

    def test_probe_negative_fast(self, tmp_path, capsys):
        cfg_train = write_cfg(tmp_path, FAST_TRAIN)
        assert main(["train", "--config", cfg_train, "--out", str(tmp_path)]) == 0
        cfg_probe = write_cfg(
            tmp_path,
            "network.depth = 1\n"
            "network.width = 8\n"
            "adam.max_steps = 30\n"
            "adam.switch_tol = 1e-12\n"
            "lbfgs.max_iters = 15\n"
            "probe.n = 20\n"
            "oracle.blowup_h = 1e-3\n"
            "paths.checkpoint_in = checkpoint.txt\n"
            "paths.checkpoint_out = extended.txt\n"
            "paths.csv_out = extended.csv\n"
            "paths.report_out = probe.csv\n",
            name="probe.cfg",
        )
        rc = main(["probe-negative", "--config", cfg_probe, "--out", str(tmp_path)])
        assert rc == 0
        out = capsys.readouterr().out
        assert "ok mode=probe-negative" in out and "oracle_blowup_eta=" in out
        lines = (tmp_path / "probe.csv").read_text().splitlines()
        fields = {l.split(",")[0] for l in lines[1:]}
        assert {"pin_value", "onset_eta", "oracle_blowup_eta"} <= fields


class TestCliErrors:
    def test_missing_config_file_exits_2(self, tmp_path, capsys):
        rc = main(["train", "--config", str(tmp_path / "nope.cfg"), "--out", str(tmp_path)])
        assert rc == 2
        assert "error: config:" in capsys.readouterr().err

    def test_bad_config_key_exits_2(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, "network.shape = big\n")
        assert main(["train", "--config", cfg, "--out", str(tmp_path)]) == 2
        capsys.readouterr()

    def test_compare_without_checkpoint_exits_2(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, "oracle.h = 1e-2\n")
        assert main(["compare", "--config", cfg, "--out", str(tmp_path)]) == 2
        assert "checkpoint" in capsys.readouterr().err

    def test_corrupt_checkpoint_exits_2(self, tmp_path, capsys):
        (tmp_path / "ck.txt").write_text("garbage\n")
        cfg = write_cfg(tmp_path, "paths.checkpoint_in = ck.txt\noracle.h = 1e-2\n")
        assert main(["compare", "--config", cfg, "--out", str(tmp_path)]) == 2
        capsys.readouterr()

    def test_unknown_mode_rejected_by_argparse(self, tmp_path, capsys):
        assert main(["swim", "--out", str(tmp_path)]) == 2
        capsys.readouterr()

    def test_unwritable_output_exits_4(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, "oracle.h = 1e-2\npaths.csv_out = /proc/readonly/x.csv\n")
        rc = main(["solve-oracle", "--config", cfg, "--out", str(tmp_path)])
        assert rc == 4
        assert "error: io:" in capsys.readouterr().err

    def test_failed_run_leaves_no_partial_files(self, tmp_path, capsys):
        # atomic writes: a failing run must not leave temp or partial outputs
        cfg = write_cfg(tmp_path, "network.depth = -1\n")
        assert main(["train", "--config", cfg, "--out", str(tmp_path)]) == 2
        capsys.readouterr()
        leftovers = [f.name for f in tmp_path.iterdir() if f.name != "run.cfg"]
        assert leftovers == []
