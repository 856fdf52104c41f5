"""
Terminal output for the stage CLIs: sweep points, fit lines, verdicts.

Colors are dropped when stdout is not a terminal, so captured output and
redirected logs stay plain text.
"""
import math
import sys
from typing import NoReturn


class Colors:
    HEADER = "\033[95m"
    CYAN = "\033[96m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    RED = "\033[91m"
    BOLD = "\033[1m"
    END = "\033[0m"


def _paint(text: str, *codes: str) -> str:
    if not sys.stdout.isatty():
        return text
    return "".join(codes) + text + Colors.END


def print_header(text: str):
    print("\n" + _paint(f"══ {text} ══", Colors.BOLD, Colors.HEADER) + "\n")


def print_info(label: str, value):
    print(f"  {_paint(label + ':', Colors.BOLD)} {value}")


def print_point(L: int, S_mean: float, S_stderr: float):
    """One row of a size sweep."""
    print(f"  {_paint(f'L={L:>2}', Colors.BOLD)}  S = {S_mean:.6f} ± {S_stderr:.6f}")


def print_fit(label: str, slope: float, intercept: float, sse: float, variable: str):
    print_info(label, f"S = {slope:.6g}·{variable} + {intercept:.6g}  (sse {sse:.3e})")


def format_stat(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.6g}"


def print_warning(text: str):
    print("  " + _paint(f"⚠ {text}", Colors.YELLOW))


def print_success(text: str):
    print("  " + _paint(f"✓ {text}", Colors.GREEN))


def print_verdict(verdict: str, volume_law: bool):
    color = Colors.GREEN if volume_law else Colors.CYAN
    print(f"  {_paint('Verdict:', Colors.BOLD)} {_paint(verdict, color)}")


def fail(message) -> NoReturn:
    """Report a fatal CLI error on stderr and exit with status 1."""
    print(f"ERROR: {message}", file=sys.stderr)
    sys.exit(1)
