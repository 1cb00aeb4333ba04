"""Command-line entry point: generate, embed, infer, benchmark.

Every command reads its parameters from built-in defaults, overlaid by an
optional JSON config file (``--config``), overlaid by explicit flags, and is
deterministic given the resulting effective config.  Exit codes: 0 success,
2 validation, 3 data parse, 4 numeric divergence.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from .benchmark import threshold_sweep, elementwise_distances
from .datagen import (
    CGParams,
    DivergenceError,
    NoiseSpec,
    cg_trajectory,
    make_d12_dataset,
    make_motif_dataset,
)
from .embedding import DegeneratePhaseError, average_cycles, phase_embed, select_gait_series
from .fileio import (
    ParseError,
    read_cloud_csv,
    read_timeseries_csv,
    write_cloud_csv,
    write_distance_table_csv,
    write_sweep_csv,
    write_trace_csv,
)
from .groups import DihedralGroup
from .inference import InferenceConfig, TemperatureLadder, exact_posterior, run_chain, run_mc3
from .transport import TransportConfig

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PARSE = 3
EXIT_NUMERIC = 4

GENERATE_DEFAULTS: dict[str, dict] = {
    "cg": {
        "n": 3,
        "count": 150,
        "sigma": 0.5,
        "seed": 0,
        "alpha": 1.0,
        "beta": 0.0,
        "gamma": 0.5,
        "lambda_map": -1.804,
        "transient": 1000,
        "z0": [0.1, 0.1],
        "dynamical_noise": False,
        "out": None,
    },
    "d12": {"seed": 0, "sigma": 0.05, "out": None},
    "motif": {
        "n": None,
        "seed": 0,
        "sigma": 0.0,
        "motif_size": 8,
        "r_min": 0.5,
        "r_max": 1.5,
        "out": None,
    },
}

INFER_DEFAULTS: dict = {
    "input": None,
    "out": None,
    "trace_out": None,
    "sharpness": 250.0,
    "n_min": 2,
    "n_max": 30,
    "iterations": 20_000,
    "burn_in": None,
    "local_move_prob": 0.95,
    "seed": 0,
    "chains": 1,
    "ladder_ratio": 0.5,
    "swap_interval": 10,
    "exact": False,
    "p": 2.0,
}

BENCHMARK_DEFAULTS: dict = {
    "input": None,
    "out": None,
    "n_min": 2,
    "n_max": 6,
    "grid_points": 200,
    "grid_lo": None,
    "grid_hi": None,
    "p": 2.0,
}

EMBED_DEFAULTS: dict = {
    "input": None,
    "manifest": None,
    "out": None,
    "column": None,
    "condition": None,
    "subjects": None,
    "joints": None,
    "leg": None,
}


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid config JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    return data


def _merge(defaults: dict, args: argparse.Namespace) -> dict:
    """defaults <- config file <- explicit flags; unknown config keys rejected."""
    cfg = dict(defaults)
    file_cfg = _load_config_file(getattr(args, "config", None))
    unknown = sorted(set(file_cfg) - set(defaults))
    if unknown:
        raise ValueError(f"unknown config fields: {', '.join(unknown)}")
    cfg.update(file_cfg)
    for key in defaults:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    return cfg


def _require(cfg: dict, *keys: str) -> None:
    missing = [k for k in keys if cfg.get(k) is None]
    if missing:
        raise ValueError(f"missing required option(s): {', '.join('--' + k.replace('_', '-') for k in missing)}")


def _write_json(path: str | Path, doc: dict) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def cmd_generate(args: argparse.Namespace) -> int:
    kind = args.kind
    cfg = _merge(GENERATE_DEFAULTS[kind], args)
    _require(cfg, "out")
    seed = int(cfg["seed"])
    if kind == "cg":
        params = CGParams(
            alpha=cfg["alpha"],
            beta=cfg["beta"],
            gamma=cfg["gamma"],
            lambda_map=cfg["lambda_map"],
            n=int(cfg["n"]),
        )
        noise = NoiseSpec(sigma=float(cfg["sigma"]), seed=seed) if cfg["sigma"] > 0 else None
        z0 = complex(cfg["z0"][0], cfg["z0"][1])
        cloud = cg_trajectory(
            params,
            count=int(cfg["count"]),
            z0=z0,
            transient=int(cfg["transient"]),
            noise=noise,
            dynamical_noise=bool(cfg["dynamical_noise"]),
        )
    elif kind == "d12":
        cloud = make_d12_dataset(seed, sigma=float(cfg["sigma"]))
    else:
        _require(cfg, "n")
        cloud = make_motif_dataset(
            int(cfg["n"]),
            seed,
            sigma=float(cfg["sigma"]),
            motif_size=int(cfg["motif_size"]),
            radius_range=(float(cfg["r_min"]), float(cfg["r_max"])),
        )
    out = Path(cfg["out"])
    write_cloud_csv(out, cloud)
    meta = {"command": "generate", "kind": kind, "config": cfg, "points": len(cloud)}
    _write_json(out.with_suffix(out.suffix + ".meta.json"), meta)
    print(f"wrote {len(cloud)} points to {out} (seed {seed})")
    return EXIT_OK


def cmd_infer(args: argparse.Namespace) -> int:
    cfg = _merge(INFER_DEFAULTS, args)
    _require(cfg, "input", "out")
    cloud = read_cloud_csv(cfg["input"])
    burn_in = cfg["burn_in"]
    icfg = InferenceConfig(
        sharpness=float(cfg["sharpness"]),
        n_min=int(cfg["n_min"]),
        n_max=int(cfg["n_max"]),
        iterations=int(cfg["iterations"]),
        burn_in=None if burn_in is None else int(burn_in),
        local_move_prob=float(cfg["local_move_prob"]),
        seed=int(cfg["seed"]),
    )
    tcfg = TransportConfig(p=float(cfg["p"]))
    started = time.perf_counter()
    trace: list[int] | None = None
    if cfg["exact"]:
        summary = exact_posterior(cloud, icfg, tcfg)
        mode = "exact"
    elif int(cfg["chains"]) > 1:
        ladder = TemperatureLadder.geometric(
            chains=int(cfg["chains"]),
            ratio=float(cfg["ladder_ratio"]),
            swap_interval=int(cfg["swap_interval"]),
        )
        records, summary = run_mc3(cloud, icfg, ladder, tcfg)
        trace = records[0].trace
        mode = "mc3"
    else:
        record, summary = run_chain(cloud, icfg, tcfg)
        trace = record.trace
        mode = "mh"
    elapsed = time.perf_counter() - started

    trace_path = cfg["trace_out"]
    if trace_path is not None and trace is not None:
        write_trace_csv(trace_path, trace)
    doc = {
        "command": "infer",
        "mode": mode,
        "config": {k: cfg[k] for k in sorted(cfg)},
        "probs": {str(n): p for n, p in summary.probs.items()},
        "map": summary.map_estimate,
        "map_prob": summary.map_prob,
        "acceptance": summary.acceptance,
        "diagnostics": summary.diagnostics,
        "trace_path": trace_path,
        "wall_clock_s": elapsed,
    }
    _write_json(cfg["out"], doc)
    print(
        f"MAP n = {summary.map_estimate} (prob {summary.map_prob:.3f}), "
        f"{mode} over [{icfg.n_min}, {icfg.n_max}], wrote {cfg['out']}"
    )
    return EXIT_OK


def cmd_benchmark(args: argparse.Namespace) -> int:
    cfg = _merge(BENCHMARK_DEFAULTS, args)
    _require(cfg, "input", "out")
    if int(cfg["grid_points"]) < 1:
        raise ValueError(f"grid_points must be >= 1, got {cfg['grid_points']}")
    cloud = read_cloud_csv(cfg["input"])
    tcfg = TransportConfig(p=float(cfg["p"]))
    candidates = [DihedralGroup(n) for n in range(int(cfg["n_min"]), int(cfg["n_max"]) + 1)]
    if not candidates:
        raise ValueError(f"empty candidate range [{cfg['n_min']}, {cfg['n_max']}]")

    rows = []
    for G in candidates:
        for g, dist in elementwise_distances(G, cloud, tcfg):
            rows.append((G.n, g.label, dist))

    grid = None
    if cfg["grid_lo"] is not None and cfg["grid_hi"] is not None:
        grid = np.logspace(
            np.log10(float(cfg["grid_lo"])), np.log10(float(cfg["grid_hi"])), int(cfg["grid_points"])
        )
    sweep = threshold_sweep(candidates, cloud, grid, tcfg)

    prefix = Path(cfg["out"])
    distances_path = prefix.with_suffix(prefix.suffix + ".distances.csv")
    sweep_path = prefix.with_suffix(prefix.suffix + ".sweep.csv")
    windows_path = prefix.with_suffix(prefix.suffix + ".windows.json")
    write_distance_table_csv(distances_path, rows)
    write_sweep_csv(sweep_path, sweep)
    windows_doc = {
        "command": "benchmark",
        "config": {k: cfg[k] for k in sorted(cfg)},
        "candidates": list(sweep.candidates),
        "max_elementwise": {str(n): d for n, d in sorted(sweep.max_by_candidate.items())},
        "robust_windows": [
            {"lo": lo, "hi": None if np.isinf(hi) else hi, "n": n}
            for lo, hi, n in sweep.robust_windows
        ],
    }
    _write_json(windows_path, windows_doc)
    labels = [str(w["n"]) for w in windows_doc["robust_windows"]]
    print(
        f"candidates {sweep.candidates}: "
        + (f"robust windows for n in {{{', '.join(labels)}}}" if labels else "no robust window")
    )
    return EXIT_OK


def cmd_embed(args: argparse.Namespace) -> int:
    cfg = _merge(EMBED_DEFAULTS, args)
    _require(cfg, "out")
    if cfg["manifest"] is not None:
        _require(cfg, "condition")
        series_list = select_gait_series(
            cfg["manifest"],
            condition=cfg["condition"],
            subjects=cfg["subjects"],
            joints=cfg["joints"],
            leg=cfg["leg"],
            column=cfg["column"],
        )
        series = average_cycles(series_list)
        source = f"{len(series_list)} manifest series"
    else:
        _require(cfg, "input")
        series = read_timeseries_csv(cfg["input"], column=cfg["column"])
        source = str(cfg["input"])
    cloud = phase_embed(series)
    write_cloud_csv(cfg["out"], cloud)
    print(f"embedded {len(cloud)} samples from {source} onto the unit circle -> {cfg['out']}")
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _str_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symfer",
        description="Infer the dihedral symmetry of planar point clouds by Bayesian model selection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_shared(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON file with parameter values (flags override)")
        p.add_argument("--seed", type=int, help="master random seed")
        p.add_argument("--out", help="output path (or path prefix for benchmark)")

    gen = sub.add_parser("generate", help="write a synthetic point-cloud CSV")
    gen.add_argument("kind", choices=("cg", "d12", "motif"))
    add_shared(gen)
    gen.add_argument("--n", type=int, help="symmetry order of the generator")
    gen.add_argument("--count", type=int, help="number of trajectory points (cg)")
    gen.add_argument("--sigma", type=float, help="observational noise std per coordinate")
    gen.add_argument("--alpha", type=float, help="cg map coefficient")
    gen.add_argument("--beta", type=float, help="cg map coefficient")
    gen.add_argument("--gamma", type=float, help="cg map coefficient")
    gen.add_argument("--lambda-map", dest="lambda_map", type=float, help="cg map parameter")
    gen.add_argument("--transient", type=int, help="iterates discarded before recording (cg)")
    gen.add_argument("--z0", nargs=2, type=float, metavar=("RE", "IM"), help="initial point (cg)")
    gen.add_argument(
        "--dynamical-noise",
        dest="dynamical_noise",
        action="store_true",
        default=None,
        help="inject noise into the recursion instead of the observations (cg)",
    )
    gen.add_argument("--motif-size", dest="motif_size", type=int, help="points per motif")
    gen.add_argument("--r-min", dest="r_min", type=float, help="motif radius lower bound")
    gen.add_argument("--r-max", dest="r_max", type=float, help="motif radius upper bound")
    gen.set_defaults(func=cmd_generate)

    inf = sub.add_parser("infer", help="posterior over the dihedral lattice for a cloud CSV")
    add_shared(inf)
    inf.add_argument("--input", help="point-cloud CSV")
    inf.add_argument("--lambda", dest="sharpness", type=float, help="posterior sharpness")
    inf.add_argument("--iters", dest="iterations", type=int, help="MCMC iterations")
    inf.add_argument("--burn-in", dest="burn_in", type=int, help="discarded iterations (default 10%%)")
    inf.add_argument("--n-min", dest="n_min", type=int, help="lattice lower bound")
    inf.add_argument("--n-max", dest="n_max", type=int, help="lattice upper bound")
    inf.add_argument(
        "--local-move-prob", dest="local_move_prob", type=float, help="probability of n +/- 1 moves"
    )
    inf.add_argument("--chains", type=int, help="tempered chains (>1 enables coupled sampling)")
    inf.add_argument("--ladder-ratio", dest="ladder_ratio", type=float, help="geometric beta ratio")
    inf.add_argument("--swap-interval", dest="swap_interval", type=int, help="iterations between swaps")
    inf.add_argument(
        "--exact", action="store_true", default=None, help="enumerate the posterior instead of sampling"
    )
    inf.add_argument("--p", type=float, help="Wasserstein order")
    inf.add_argument("--trace-out", dest="trace_out", help="write the post-burn-in trace CSV here")
    inf.set_defaults(func=cmd_infer)

    ben = sub.add_parser("benchmark", help="deterministic threshold baseline and sweep")
    add_shared(ben)
    ben.add_argument("--input", help="point-cloud CSV")
    ben.add_argument("--n-min", dest="n_min", type=int, help="smallest candidate n")
    ben.add_argument("--n-max", dest="n_max", type=int, help="largest candidate n")
    ben.add_argument("--grid-points", dest="grid_points", type=int, help="thresholds in the sweep")
    ben.add_argument("--grid-lo", dest="grid_lo", type=float, help="sweep lower bound")
    ben.add_argument("--grid-hi", dest="grid_hi", type=float, help="sweep upper bound")
    ben.add_argument("--p", type=float, help="Wasserstein order")
    ben.set_defaults(func=cmd_benchmark)

    emb = sub.add_parser("embed", help="phase-embed a 1-D series onto the unit circle")
    add_shared(emb)
    emb.add_argument("--input", help="time-series CSV")
    emb.add_argument("--column", help="column to read from a multi-column CSV")
    emb.add_argument("--manifest", help="gait manifest JSON (overrides --input)")
    emb.add_argument("--condition", help="manifest condition to select")
    emb.add_argument("--subjects", type=_int_list, help="comma-separated subject ids")
    emb.add_argument("--joints", type=_str_list, help="comma-separated joint names")
    emb.add_argument("--leg", help="leg to select from the manifest")
    emb.set_defaults(func=cmd_embed)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DivergenceError, DegeneratePhaseError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
