"""
CLI entry point for Stage 1: simulate a size sweep.

Usage:
    python -m stages.stage_1 --config runs/xxz_z.toml
    python -m stages.stage_1 --config runs/xxz_z.toml --workers 8 --resume
    python -m stages.stage_1 --setup XXZ+z --sizes 8 10 12 14 --n-traj 100
"""
import argparse
import sys
import textwrap
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent.parent))
from config import DEFAULT_GAMMA, DEFAULT_SIZES, MAX_L

from utils.series_csv import read_series
from utils.ui import fail, print_header, print_point, print_success, print_warning
from .pipeline import simulate_run
from .run_config import load_run_config, settings_for_setup


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simulate",
        description="Stage 1: Monitored-chain trajectories over a sweep of system sizes.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=textwrap.dedent("""
        Examples:
          python -m stages.stage_1 --config xxz_z.toml
          python -m stages.stage_1 --config xxz_z.toml --workers 8 --resume
          python -m stages.stage_1 --setup XY+xx --sizes 8 10 12 14 --workers 8
          python -m stages.stage_1 --config big.toml --max-L 28 --out /scratch/runs/big
        """),
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", help="Run config (.toml or .json)")
    source.add_argument("--setup", metavar="KEY",
                        help="Catalog setup with preset couplings, e.g. XXZ+z (see `python -m stages setups`)")
    parser.add_argument("--sizes", type=int, nargs="+", default=None,
                        help=f"Even chain lengths (overrides config; --setup default {' '.join(map(str, DEFAULT_SIZES))})")
    parser.add_argument("--n-traj", type=int, default=None, dest="n_traj",
                        help="Trajectories per size (overrides config)")
    parser.add_argument("--gamma", type=float, default=None,
                        help=f"Measurement rate for --setup (default {DEFAULT_GAMMA})")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes (overrides config)")
    parser.add_argument("--seed", type=int, default=None, help="Master seed (overrides config)")
    parser.add_argument("--max-L", type=int, default=MAX_L, dest="max_L",
                        help=f"Refuse sizes above this (default {MAX_L})")
    parser.add_argument("--resume", action="store_true",
                        help="Continue from existing checkpoints instead of discarding them")
    parser.add_argument("--out", default=None, help="Output folder (default RUNS_ROOT/<name>)")
    return parser


def main(argv: list[str] | None = None):
    args = build_parser().parse_args(argv)

    try:
        if args.setup:
            gamma = DEFAULT_GAMMA if args.gamma is None else args.gamma
            settings = settings_for_setup(args.setup, gamma=gamma)
        elif args.gamma is not None:
            raise ValueError("--gamma applies to --setup only; set gamma in the config file")
        else:
            settings = load_run_config(args.config)
        settings = settings.with_overrides(
            seed=args.seed, workers=args.workers, sizes=args.sizes, n_traj=args.n_traj,
        )
        paths = simulate_run(
            settings,
            out_dir=Path(args.out) if args.out else None,
            resume=args.resume,
            max_L=args.max_L,
            progress=print,
        )
        series = read_series(paths["series"])[0]
    except (FileNotFoundError, ValueError, RuntimeError) as e:
        fail(e)

    print_header(f"{series.key}  γ={series.gamma}")
    for p in series.points:
        print_point(p.L, p.S_mean, p.S_stderr)
    if len(series.points) < 4:
        print_warning("fewer than 4 sizes: analyze will refuse this series")
    print_success(f"series → {paths['series']}")
    print(f"\n✓ Stage 1 complete — {len(series.points)} size(s) written to {paths['root']}")
