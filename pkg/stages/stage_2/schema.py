"""
JSON schema for the F-test report (Stage 2 output).

One report per series. The report echoes the series identity (model, monitor,
γ, dt, sizes) so Stage 3 can check that a series and a report belong together.
"""
import math
from dataclasses import dataclass, asdict
from typing import Any

REPORT_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    sse: float                     # Σ (weighted) squared residuals

    def __call__(self, x):
        return self.slope * x + self.intercept


@dataclass
class FTestReport:
    model: str
    monitor: str
    gamma: float
    dt: float
    sizes: list[int]
    fit_L: LinearFit
    fit_lnL: LinearFit
    F: float                       # sse_L / sse_lnL; inf when only the ln L fit is exact
    dof: tuple[int, int]
    P: float | None = None         # filled by p_value()
    verdict: str = ""
    threshold: float = 0.5
    weighted: bool = False

    @property
    def key(self) -> str:
        return f"{self.model}+{self.monitor}"

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["dof"] = list(self.dof)
        # strict JSON has no Infinity literal
        d["F"] = "inf" if math.isinf(self.F) else self.F
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "FTestReport":
        try:
            return cls(
                model=data["model"],
                monitor=data["monitor"],
                gamma=float(data["gamma"]),
                dt=float(data["dt"]),
                sizes=[int(L) for L in data["sizes"]],
                fit_L=LinearFit(**data["fit_L"]),
                fit_lnL=LinearFit(**data["fit_lnL"]),
                F=float(data["F"]),
                dof=tuple(int(v) for v in data["dof"]),
                P=None if data.get("P") is None else float(data["P"]),
                verdict=data.get("verdict", ""),
                threshold=float(data.get("threshold", 0.5)),
                weighted=bool(data.get("weighted", False)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"malformed F-test report: {e}") from e
