"""
Single entry point for all stages.

Usage:
    python -m stages simulate --config xxz_z.toml --workers 8
    python -m stages analyze --series runs/xxz_z/xxz_z.csv
    python -m stages report --pair runs/xxz_z/xxz_z.csv runs/xxz_z/xxz_z.ftest.json
    python -m stages setups
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))
from utils.ui import fail

COMMANDS = ("simulate", "analyze", "report", "setups")


def _setups(argv: list[str]):
    from config import DEFAULT_GAMMA
    from stages.stage_1.model import describe_catalog

    if argv:
        fail(f"'setups' takes no arguments (got {' '.join(argv)})")
    print(f"Setups (γ = {DEFAULT_GAMMA}):")
    print(describe_catalog(gamma=DEFAULT_GAMMA))


def main(argv: list[str] | None = None):
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        print(__doc__.strip())
        return
    command, rest = argv[0], argv[1:]
    if command == "simulate":
        from stages.stage_1.cli import main as run
    elif command == "analyze":
        from stages.stage_2.cli import main as run
    elif command == "report":
        from stages.stage_3.cli import main as run
    elif command == "setups":
        run = _setups
    else:
        fail(f"unknown command {command!r} (choose from {', '.join(COMMANDS)})")
    run(rest)


if __name__ == "__main__":
    main()
