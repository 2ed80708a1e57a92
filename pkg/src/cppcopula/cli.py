"""Command-line front end: reproduce the tables and figure data as CSV."""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .copulas import CopulaSpec, sample_copula
from .cpp import CppParams, JumpSpec, iter_cpp_chunks
from .dependence import clayton_rho
from .empirical import dot_render, write_grid_csv, write_scatter_csv
from .experiment import PAPER_LAMBDAS, PAPER_THETAS, cpp_pseudo_sample, diff_cell, limit_copula_for, noise_floor
from .quadrature import QuadratureError
from .rng import RngState

COMMANDS = ("rho-table", "sample", "simulate", "diff-mass", "figures", "noise-floor")
QUICK_N = 10**4
FIGURE_POINTS = 500
NOISE_FACTOR = 1.5
STREAM_CHUNK = 100_000


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    n: int = 10**6
    m: int = 30
    alpha: float = 20.0
    lambda_list: list = field(default_factory=lambda: list(PAPER_LAMBDAS))
    theta_list: list = field(default_factory=lambda: list(PAPER_THETAS))
    copula: str = "clayton"
    eps: float | None = None
    tau: float | None = None
    shift: tuple = (0.0, 0.0)
    out_dir: Path | None = None
    format: str = "csv"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.n < 1:
            raise ValueError("--n must be positive")
        if self.m < 2:
            raise ValueError("--m must be at least 2")
        if not self.alpha > 1:
            raise ValueError("--alpha must exceed 1")
        if any(not lam > 0 for lam in self.lambda_list):
            raise ValueError("--lambda values must be positive")

    @property
    def delimiter(self) -> str:
        return "\t" if self.format == "tsv" else ","

    @property
    def ext(self) -> str:
        return "." + self.format


def fmt(x) -> str:
    return f"{x:.6g}"


class _Sink:
    """A CSV writer on a file in out_dir, or on stdout."""

    def __init__(self, cfg: RunConfig, name: str):
        self._fh = None
        if cfg.out_dir is None:
            stream = sys.stdout
        else:
            cfg.out_dir.mkdir(parents=True, exist_ok=True)
            self._fh = stream = open(cfg.out_dir / (name + cfg.ext), "w", newline="")
        self.stream = stream
        self.writer = csv.writer(stream, delimiter=cfg.delimiter, lineterminator="\n")

    def row(self, values):
        self.writer.writerow(values)

    def flush(self):
        self.stream.flush()

    def close(self):
        if self._fh is not None:
            self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def _copula_from_config(cfg: RunConfig, theta: float | None = None) -> CopulaSpec:
    name = cfg.copula
    if name == "clayton":
        th = theta if theta is not None else (cfg.theta_list[0] if cfg.theta_list else 0.0)
        return CopulaSpec.clayton(th)
    if name == "gaussian":
        if cfg.tau is None:
            raise ValueError("--copula gaussian requires --tau")
        return CopulaSpec.gaussian(cfg.tau)
    if name == "band":
        if cfg.eps is None:
            raise ValueError("--copula band requires --eps")
        return CopulaSpec.band(cfg.eps)
    return {"indep": CopulaSpec.independence, "lower": CopulaSpec.lower, "upper": CopulaSpec.upper}[name]()


def cmd_rho_table(cfg: RunConfig) -> int:
    status = 0
    with _Sink(cfg, "rho_table") as out:
        out.row(["theta", "rho"])
        for theta in cfg.theta_list:
            try:
                rho = clayton_rho(theta, tol=1e-7)
            except (QuadratureError, ValueError) as exc:
                print(f"rho-table: theta={theta:g}: {exc}", file=sys.stderr)
                status = 1
                continue
            out.row([fmt(theta), f"{rho:.4f}"])
            out.flush()
    return status


def cmd_sample(cfg: RunConfig) -> int:
    spec = _copula_from_config(cfg)
    rng = RngState(cfg.seed)
    with _Sink(cfg, "sample") as out:
        out.row(["u", "v"])
        for i, start in enumerate(range(0, cfg.n, STREAM_CHUNK)):
            pts = sample_copula(spec, min(STREAM_CHUNK, cfg.n - start), rng.child(i))
            for u, v in pts:
                out.row([fmt(u), fmt(v)])
    return 0


def cmd_simulate(cfg: RunConfig) -> int:
    lam = cfg.lambda_list[0] if cfg.lambda_list else PAPER_LAMBDAS[0]
    params = CppParams(lam, JumpSpec(_copula_from_config(cfg), cfg.shift))
    with _Sink(cfg, "simulate") as out:
        out.row(["x", "y", "k"])
        for batch in iter_cpp_chunks(params, cfg.n, RngState(cfg.seed), STREAM_CHUNK):
            for x, y, k in zip(batch.x, batch.y, batch.jump_count):
                out.row([fmt(x), fmt(y), int(k)])
    return 0


def _floors(cfg: RunConfig):
    floors = {}
    for theta in cfg.theta_list:
        tau = limit_copula_for(JumpSpec(CopulaSpec.clayton(theta), cfg.shift)).param
        if tau not in floors:
            floors[tau] = noise_floor(tau, n=cfg.n, m=cfg.m, alpha=cfg.alpha, seed=cfg.seed)
    return floors


def cmd_diff_mass(cfg: RunConfig) -> int:
    status = 0
    floors = _floors(cfg)
    with _Sink(cfg, "diff_mass") as out:
        out.row(["lambda", "theta", "mass", "noise_floor", "raw_mass", "raw_noise_floor", "noise_dominated"])
        for theta in cfg.theta_list:
            for lam in cfg.lambda_list:
                try:
                    r = diff_cell(lam, theta, n=cfg.n, m=cfg.m, alpha=cfg.alpha, seed=cfg.seed, shift=cfg.shift)
                except (ValueError, RuntimeError) as exc:
                    print(f"diff-mass: lambda={lam:g} theta={theta:g}: {exc}", file=sys.stderr)
                    status = 1
                    continue
                raw_floor, floor = floors[r.tau]
                flag = int(r.dot_mass <= NOISE_FACTOR * floor)
                out.row([fmt(lam), fmt(theta), fmt(r.dot_mass), fmt(floor), fmt(r.mass), fmt(raw_floor), flag])
                out.flush()
    return status


def cmd_noise_floor(cfg: RunConfig) -> int:
    floors = _floors(cfg)
    with _Sink(cfg, "noise_floor") as out:
        out.row(["tau", "noise_floor", "raw_noise_floor"])
        for tau, (raw, dots) in floors.items():
            out.row([fmt(tau), fmt(dots), fmt(raw)])
    return 0


def cmd_figures(cfg: RunConfig) -> int:
    if cfg.out_dir is None:
        cfg.out_dir = Path("figures")
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    d = cfg.delimiter
    rng = RngState(cfg.seed, 10)
    for theta in cfg.theta_list:
        spec = CopulaSpec.clayton(theta)
        limit = limit_copula_for(JumpSpec(spec))
        tag = fmt(theta)
        write_scatter_csv(sample_copula(spec, FIGURE_POINTS, rng.child(1).child(int(theta * 1000 + 1000))),
                          cfg.out_dir / f"fig1_clayton_theta{tag}{cfg.ext}", d)
        write_scatter_csv(sample_copula(limit, FIGURE_POINTS, rng.child(2).child(int(theta * 1000 + 1000))),
                          cfg.out_dir / f"fig1_gauss_theta{tag}{cfg.ext}", d)
    jumps5 = JumpSpec(CopulaSpec.clayton(5.0))
    for lam in cfg.lambda_list:
        pts = cpp_pseudo_sample(lam, jumps5, FIGURE_POINTS, cfg.seed)
        write_scatter_csv(pts, cfg.out_dir / f"fig2_lambda{fmt(lam)}{cfg.ext}", d)
    for theta in cfg.theta_list:
        for lam in cfg.lambda_list:
            r = diff_cell(lam, theta, n=cfg.n, m=cfg.m, alpha=cfg.alpha, seed=cfg.seed)
            tag = f"lambda{fmt(lam)}_theta{fmt(theta)}"
            write_grid_csv(r.grid, cfg.out_dir / f"fig3_grid_{tag}{cfg.ext}", d)
            dots = dot_render(r.grid, cfg.alpha, rng.child(3).child(int(lam * 1000)).child(int(theta * 1000 + 1000)))
            write_scatter_csv(dots, cfg.out_dir / f"fig3_dots_{tag}{cfg.ext}", d)
    return 0


HANDLERS = {
    "rho-table": cmd_rho_table,
    "sample": cmd_sample,
    "simulate": cmd_simulate,
    "diff-mass": cmd_diff_mass,
    "figures": cmd_figures,
    "noise-floor": cmd_noise_floor,
}


def _float_list(values, default):
    if values is None:
        return list(default)
    out = []
    for v in values:
        out.extend(float(p) for p in str(v).split(",") if p.strip())
    return out


def _shift(text: str):
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("--shift takes two comma-separated numbers c,d")
    return tuple(parts)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cppcopula", description=__doc__)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=lambda s: int(float(s)), default=None, help="sample size (default 1e6)")
    p.add_argument("--m", type=int, default=30, help="grid resolution")
    p.add_argument("--alpha", type=float, default=20.0, help="dot scaling constant")
    p.add_argument("--lambda", dest="lambdas", action="append", help="intensity; repeatable or comma list")
    p.add_argument("--theta", dest="thetas", action="append", help="Clayton theta; repeatable or comma list")
    p.add_argument("--copula", choices=("clayton", "gaussian", "indep", "lower", "upper", "band"), default="clayton")
    p.add_argument("--eps", type=float)
    p.add_argument("--tau", type=float)
    p.add_argument("--shift", type=_shift, default=(0.0, 0.0), help="per-jump shift c,d")
    p.add_argument("--out", type=Path, help="output directory (default: stdout; figures: ./figures)")
    p.add_argument("--format", choices=("csv", "tsv"), default="csv")
    p.add_argument("--quick", action="store_true", help=f"use N={QUICK_N} for a fast run")
    return p


def config_from_args(args) -> RunConfig:
    n = args.n if args.n is not None else (QUICK_N if args.quick else 10**6)
    return RunConfig(
        command=args.command,
        seed=args.seed,
        n=n,
        m=args.m,
        alpha=args.alpha,
        lambda_list=_float_list(args.lambdas, PAPER_LAMBDAS),
        theta_list=_float_list(args.thetas, PAPER_THETAS),
        copula=args.copula,
        eps=args.eps,
        tau=args.tau,
        shift=args.shift,
        out_dir=args.out,
        format=args.format,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return HANDLERS[cfg.command](cfg)
    except (ValueError, OSError) as exc:
        print(f"cppcopula {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
