"""Batch command-line interface.

    blasius-pinn <mode> --config <path> [--seed N] [--out DIR]

Modes: train, solve-oracle, compare, probe-negative, export.
All artifacts are written atomically (temp file + rename), so a failed run
never leaves truncated outputs.  Exit codes: 0 success, 2 config error,
3 numerical divergence, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

import numpy as np

from .analysis import compare, probe_negative, tabulate
from .config import MODES, ConfigError, RunConfig, load_config
from .grad import DivergenceError
from .network import load_checkpoint, save_checkpoint
from .optim import TrainingReport, train
from .oracle import backward_blowup, shoot
from .plotting import plot_solution_table


def _atomic(path, write_fn):
    """Write via a temp file in the target directory, then rename."""
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    os.close(fd)
    try:
        write_fn(tmp)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def _resolve(out_dir: str, path: str) -> str:
    if not path:
        return path
    if os.path.isabs(path):
        return path
    return os.path.join(out_dir, path)


def _write_training_report(path, report: TrainingReport) -> None:
    lines = [
        f"seed: {report.seed}",
        f"adam_steps: {report.adam_steps}",
        f"lbfgs_iters: {len(report.lbfgs_history)}",
        f"lbfgs_status: {report.lbfgs_status}",
        f"loss_ode: {report.final.ode:.17g}",
        f"loss_init: {report.final.init:.17g}",
        f"loss_boundary: {report.final.boundary:.17g}",
        f"loss_pin: {report.final.pin:.17g}",
        f"loss_total: {report.final.total:.17g}",
        f"best_loss: {report.best_loss:.17g}",
        f"wall_time_s: {report.wall_time_s:.3f}",
    ]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_loss_curve(path, report: TrainingReport) -> None:
    with open(path, "w") as fh:
        fh.write("phase,step,loss\n")
        for i, f in enumerate(report.adam_curve):
            fh.write(f"adam,{i},{f:.17g}\n")
        for it, f, gnorm, step in report.lbfgs_history:
            fh.write(f"lbfgs,{it},{f:.17g}\n")


def _cmd_train(cfg: RunConfig, out_dir: str, seed: int | None) -> int:
    net = cfg.network_config(seed_override=seed)
    grid = cfg.grid.build()
    p, report = train(net, cfg.adam_config(), cfg.lbfgs_config(), grid,
                      variant=cfg.boundary_variant)
    _atomic(_resolve(out_dir, cfg.paths.checkpoint_out),
            lambda tmp: save_checkpoint(tmp, net, p))
    _atomic(_resolve(out_dir, cfg.paths.report_out),
            lambda tmp: _write_training_report(tmp, report))
    _atomic(_resolve(out_dir, cfg.paths.curve_out),
            lambda tmp: _write_loss_curve(tmp, report))
    table = tabulate(p, grid.points)
    _atomic(_resolve(out_dir, cfg.paths.csv_out), table.to_csv)
    if cfg.paths.plot_out:
        _atomic(_resolve(out_dir, cfg.paths.plot_out),
                lambda tmp: plot_solution_table(table, tmp, title="PINN solution"))
    print(f"ok mode=train loss_total={report.final.total:.6g} "
          f"lbfgs_status={report.lbfgs_status} seed={net.seed}")
    return 0


def _cmd_solve_oracle(cfg: RunConfig, out_dir: str) -> int:
    res = shoot(h=cfg.oracle.h, eta_max=cfg.oracle.eta_max)
    _atomic(_resolve(out_dir, cfg.paths.csv_out), res.table.to_csv)
    if cfg.paths.plot_out:
        _atomic(_resolve(out_dir, cfg.paths.plot_out),
                lambda tmp: plot_solution_table(res.table, tmp, title="Shooting solution"))
    print(f"ok mode=solve-oracle s_star={res.s_star:.9f} h={res.h:g} "
          f"iterations={res.iterations}")
    return 0


def _require_checkpoint(cfg: RunConfig, out_dir: str):
    path = _resolve(out_dir, cfg.paths.checkpoint_in)
    if not path:
        raise ConfigError("paths.checkpoint_in is required for this mode")
    try:
        return load_checkpoint(path)
    except ValueError as err:
        raise ConfigError(str(err)) from err


def _write_kv_csv(path, pairs) -> None:
    with open(path, "w") as fh:
        fh.write("field,value\n")
        for k, v in pairs:
            fh.write(f"{k},{v:.17g}\n" if isinstance(v, float) else f"{k},{v}\n")


def _cmd_compare(cfg: RunConfig, out_dir: str) -> int:
    _, p = _require_checkpoint(cfg, out_dir)
    res = shoot(h=cfg.oracle.h, eta_max=cfg.oracle.eta_max)
    rep = compare(p, res.table)
    pairs = [
        ("max_abs_err_f", rep.max_abs_err_f),
        ("max_abs_err_fp", rep.max_abs_err_fp),
        ("max_abs_err_fpp", rep.max_abs_err_fpp),
        ("rms_err_f", rep.rms_err_f),
        ("wall_curvature_pinn", rep.wall_curvature_pinn),
        ("wall_curvature_oracle", rep.wall_curvature_oracle),
        ("eta99_pinn", rep.eta99_pinn),
        ("eta99_oracle", rep.eta99_oracle),
    ]
    _atomic(_resolve(out_dir, cfg.paths.csv_out), lambda tmp: _write_kv_csv(tmp, pairs))
    print(f"ok mode=compare wall_curvature_pinn={rep.wall_curvature_pinn:.6f} "
          f"max_abs_err_f={rep.max_abs_err_f:.3g}")
    return 0


def _cmd_probe_negative(cfg: RunConfig, out_dir: str, seed: int | None) -> int:
    _, p_prev = _require_checkpoint(cfg, out_dir)
    net = cfg.network_config(seed_override=seed)
    grid = cfg.probe.build()
    p_ext, sing = probe_negative(p_prev, net, cfg.adam_config(), cfg.lbfgs_config(), grid)
    blowup_eta = backward_blowup(sing.pin_value, cfg.oracle.blowup_h)
    _atomic(_resolve(out_dir, cfg.paths.checkpoint_out),
            lambda tmp: save_checkpoint(tmp, net, p_ext))
    table = tabulate(p_ext, grid.points)
    _atomic(_resolve(out_dir, cfg.paths.csv_out), table.to_csv)
    pairs = [
        ("pin_value", sing.pin_value),
        ("max_abs_f_edge", sing.max_abs_f_edge),
        ("max_abs_residual_edge", sing.max_abs_residual_edge),
        ("onset_eta", sing.onset_eta if sing.onset_eta is not None else float("nan")),
        ("median_fppp", sing.median_fppp),
        ("final_loss", sing.final_loss),
        ("oracle_blowup_eta", blowup_eta),
        ("converged", int(sing.converged)),
    ]
    _atomic(_resolve(out_dir, cfg.paths.report_out), lambda tmp: _write_kv_csv(tmp, pairs))
    if cfg.paths.plot_out:
        _atomic(_resolve(out_dir, cfg.paths.plot_out),
                lambda tmp: plot_solution_table(table, tmp, title="Negative-axis extension"))
    onset = "none" if sing.onset_eta is None else f"{sing.onset_eta:.4f}"
    print(f"ok mode=probe-negative onset_eta={onset} "
          f"oracle_blowup_eta={blowup_eta:.5f} final_loss={sing.final_loss:.6g}")
    return 0


def _cmd_export(cfg: RunConfig, out_dir: str) -> int:
    _, p = _require_checkpoint(cfg, out_dir)
    grid = cfg.grid.build()
    table = tabulate(p, grid.points)
    _atomic(_resolve(out_dir, cfg.paths.csv_out), table.to_csv)
    if cfg.paths.plot_out:
        _atomic(_resolve(out_dir, cfg.paths.plot_out),
                lambda tmp: plot_solution_table(table, tmp, title="PINN solution"))
    print(f"ok mode=export rows={len(table)}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="blasius-pinn", description=__doc__)
    parser.add_argument("mode", choices=MODES)
    parser.add_argument("--config", help="flat key = value config file")
    parser.add_argument("--seed", type=int, help="override network.seed")
    parser.add_argument("--out", default=".", help="directory for relative output paths")
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 2 if err.code not in (0, None) else 0

    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        cfg.mode = args.mode
        if args.mode == "train":
            return _cmd_train(cfg, args.out, args.seed)
        if args.mode == "solve-oracle":
            return _cmd_solve_oracle(cfg, args.out)
        if args.mode == "compare":
            return _cmd_compare(cfg, args.out)
        if args.mode == "probe-negative":
            return _cmd_probe_negative(cfg, args.out, args.seed)
        if args.mode == "export":
            return _cmd_export(cfg, args.out)
        raise ConfigError(f"unknown mode {args.mode!r}")
    except ConfigError as err:
        print(f"error: config: {err}", file=sys.stderr)
        return 2
    except DivergenceError as err:
        print(f"error: divergence: {err}", file=sys.stderr)
        return 3
    except OSError as err:
        print(f"error: io: {err}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
