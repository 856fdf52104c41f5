"""
Generalized Heisenberg chain, its named presets, and monitored-operator sets.

    H = Σ_{l=1}^{L-1} Σ_α J_α σ^α_l σ^α_{l+1} + Σ_{l=1}^{L} h_z (-1)^l σ^z_l

Open boundaries: bonds run l = 1..L-1. Sites are 0-based in code; the
staggered sign for code site i is (-1)^(i+1).

The catalog at the bottom lists the (model, monitor) setups of the study,
in the same spirit as a mode catalog: a frozen record per entry plus a
by-key lookup.
"""
from dataclasses import dataclass, asdict, replace
from functools import lru_cache
from typing import Any

import numpy as np
import scipy.sparse

from config import PRESET_HZ, PRESET_JY_ANISOTROPIC, PRESET_JZ

AXES = ("x", "y", "z")
MONITOR_KINDS = ("single-site", "bond")

PAULI: dict[str, np.ndarray] = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@lru_cache(maxsize=256)
def z_signs(sites: tuple[int, ...], L: int) -> np.ndarray:
    """Product of σ^z eigenvalues (±1) on the given sites, per basis index."""
    idx = np.arange(2 ** L)
    d = np.ones(2 ** L)
    for site in sites:
        d = d * (1 - 2 * ((idx >> site) & 1))
    d.setflags(write=False)
    return d


@dataclass(frozen=True)
class ModelSpec:
    L: int
    J_x: float = 1.0
    J_y: float = 1.0
    J_z: float = 0.0
    h_z: float = 0.0
    name: str = "custom"           # preset key, or "custom" for explicit couplings

    def __post_init__(self):
        if int(self.L) != self.L or self.L < 2:
            raise ValueError(f"L must be an integer ≥ 2 (got {self.L})")
        if self.L % 2:
            raise ValueError(f"L must be even for a half-chain cut (got {self.L})")
        for key in ("J_x", "J_y", "J_z", "h_z"):
            if not np.isfinite(getattr(self, key)):
                raise ValueError(f"coupling {key} must be finite")

    @property
    def n_bonds(self) -> int:
        return self.L - 1

    @property
    def interacting(self) -> bool:
        return self.J_z != 0.0

    @property
    def integrable(self) -> bool:
        return self.h_z == 0.0

    @property
    def conserves_magnetization(self) -> bool:
        return self.J_x == self.J_y

    def with_size(self, L: int) -> "ModelSpec":
        return replace(self, L=L)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class MonitorSpec:
    kind: str = "single-site"
    axis: str = "z"
    gamma: float = 0.1

    def __post_init__(self):
        if self.kind not in MONITOR_KINDS:
            raise ValueError(f"monitor kind must be one of {MONITOR_KINDS} (got {self.kind!r})")
        if self.axis not in AXES:
            raise ValueError(f"monitor axis must be one of {AXES} (got {self.axis!r})")
        if not np.isfinite(self.gamma) or self.gamma < 0:
            raise ValueError("measurement rate must be ≥ 0")

    @property
    def label(self) -> str:
        """CSV label: 'z' for σ^z_l, 'zz' for σ^z_l σ^z_{l+1}."""
        return self.axis if self.kind == "single-site" else self.axis * 2

    @classmethod
    def from_label(cls, label: str, gamma: float) -> "MonitorSpec":
        if label in AXES:
            return cls(kind="single-site", axis=label, gamma=gamma)
        if len(label) == 2 and label[0] == label[1] and label[0] in AXES:
            return cls(kind="bond", axis=label[0], gamma=gamma)
        raise ValueError(f"unknown monitor label {label!r}")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class MonitorOperator:
    """One O_l: a Pauli on one site, or the same Pauli on two adjacent sites."""
    axis: str
    sites: tuple[int, ...]         # 0-based; (l,) or (l, l+1)

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"operator axis must be one of {AXES}")
        if len(self.sites) == 2 and self.sites[1] != self.sites[0] + 1:
            raise ValueError(f"bond operator needs adjacent sites (got {self.sites})")
        if len(self.sites) not in (1, 2):
            raise ValueError("operator must act on one site or one bond")

    @property
    def is_bond(self) -> bool:
        return len(self.sites) == 2

    def local_matrix(self) -> np.ndarray:
        """2×2 Pauli, or 4×4 σ⊗σ in the (site l, site l+1) kron order."""
        p = PAULI[self.axis]
        return np.kron(p, p) if self.is_bond else p.copy()

    def diagonal(self, L: int) -> np.ndarray | None:
        """±1 eigenvalues over the computational basis for z operators, else None."""
        if self.axis != "z":
            return None
        return z_signs(self.sites, L)

    def __str__(self) -> str:
        return "".join(f"σ^{self.axis}_{s + 1}" for s in self.sites)


@dataclass(frozen=True)
class SetupClass:
    interacting: bool
    integrable: bool
    u1_symmetric: bool

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


# ─── Presets ───────────────────────────────────────────────────────────────

PRESET_NAMES = ("XX", "XY", "XXZ", "XYZ", "XXZz", "XYZz")


def _preset_couplings(name: str) -> dict[str, float]:
    jy_aniso = PRESET_JY_ANISOTROPIC
    return {
        "XX": {"J_y": 1.0, "J_z": 0.0, "h_z": 0.0},
        "XY": {"J_y": jy_aniso, "J_z": 0.0, "h_z": 0.0},
        "XXZ": {"J_y": 1.0, "J_z": PRESET_JZ, "h_z": 0.0},
        "XYZ": {"J_y": jy_aniso, "J_z": PRESET_JZ, "h_z": 0.0},
        "XXZz": {"J_y": 1.0, "J_z": PRESET_JZ, "h_z": PRESET_HZ},
        "XYZz": {"J_y": jy_aniso, "J_z": PRESET_JZ, "h_z": PRESET_HZ},
    }[name]


def _check_preset_constraints(spec: ModelSpec) -> None:
    name = spec.name
    anisotropic = name in ("XY", "XYZ", "XYZz")
    with_jz = name in ("XXZ", "XYZ", "XXZz", "XYZz")
    with_field = name in ("XXZz", "XYZz")
    problems: list[str] = []
    if anisotropic and spec.J_x == spec.J_y:
        problems.append("J_x ≠ J_y")
    if not anisotropic and spec.J_x != spec.J_y:
        problems.append("J_x = J_y")
    if with_jz and spec.J_z == 0.0:
        problems.append("J_z ≠ 0")
    if not with_jz and spec.J_z != 0.0:
        problems.append("J_z = 0")
    if with_field and spec.h_z == 0.0:
        problems.append("h_z ≠ 0")
    if not with_field and spec.h_z != 0.0:
        problems.append("h_z = 0")
    if problems:
        raise ValueError(f"preset {name} requires {', '.join(problems)}")


def preset(name: str, L: int, **overrides: float) -> ModelSpec:
    """Named model at size L; J_x = 1 sets the energy scale. Overrides must keep the preset's constraints."""
    if name not in PRESET_NAMES:
        raise ValueError(f"unknown model preset {name!r} (choose from {', '.join(PRESET_NAMES)})")
    if L < 4 or L % 2:
        raise ValueError(f"presets need an even L ≥ 4 (got {L})")
    unknown = set(overrides) - {"J_y", "J_z", "h_z"}
    if unknown:
        raise ValueError(f"unknown coupling override(s): {', '.join(sorted(unknown))}")
    couplings = {**_preset_couplings(name), **{k: float(v) for k, v in overrides.items()}}
    spec = ModelSpec(L=L, J_x=1.0, name=name, **couplings)
    _check_preset_constraints(spec)
    return spec


# ─── Classification ────────────────────────────────────────────────────────

def classify(model: ModelSpec, monitor: MonitorSpec) -> SetupClass:
    """
    Interaction, integrability and U(1) flags of a (model, monitor) setup.

    After Jordan–Wigner, J_z and every measurement other than σ^z_l or (for
    J_x ≠ J_y) σ^x_l σ^x_{l+1} produce quartic or string terms.
    """
    quadratic_monitor = (
        (monitor.kind == "single-site" and monitor.axis == "z")
        or (monitor.kind == "bond" and monitor.axis == "x" and model.J_x != model.J_y)
    )
    return SetupClass(
        interacting=model.interacting or not quadratic_monitor,
        integrable=model.integrable,
        u1_symmetric=model.conserves_magnetization and monitor.axis == "z",
    )


def monitored_operators(model: ModelSpec, monitor: MonitorSpec) -> list[MonitorOperator]:
    """L single-site operators or L-1 bond operators, in site order."""
    if monitor.kind == "single-site":
        return [MonitorOperator(monitor.axis, (l,)) for l in range(model.L)]
    return [MonitorOperator(monitor.axis, (l, l + 1)) for l in range(model.L - 1)]


# ─── Sparse matrices (small-L oracles) ─────────────────────────────────────

def site_operator(local: np.ndarray, sites: tuple[int, ...], L: int) -> scipy.sparse.csr_matrix:
    """Embed a 2^k×2^k operator on consecutive sites; site 0 is the least-significant bit."""
    k = len(sites)
    first = sites[0]
    # Higher sites come first in a Kronecker product when site 0 is the LSB.
    high = scipy.sparse.identity(2 ** (L - first - k), dtype=complex, format="csr")
    low = scipy.sparse.identity(2 ** first, dtype=complex, format="csr")
    if k == 2:
        # local is in (site l, site l+1) order; swap to (l+1, l) for LSB-first layout
        local = local.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)
    op = scipy.sparse.kron(high, scipy.sparse.csr_matrix(local), format="csr")
    return scipy.sparse.kron(op, low, format="csr")


def operator_matrix(op: MonitorOperator, L: int) -> scipy.sparse.csr_matrix:
    return site_operator(op.local_matrix(), op.sites, L)


def bond_matrix(model: ModelSpec) -> np.ndarray:
    """h_l = Σ_α J_α σ^α ⊗ σ^α as a 4×4 Hermitian matrix."""
    return (
        model.J_x * np.kron(PAULI["x"], PAULI["x"])
        + model.J_y * np.kron(PAULI["y"], PAULI["y"])
        + model.J_z * np.kron(PAULI["z"], PAULI["z"])
    )


def staggered_sign(site: int) -> int:
    """(-1)^l for 1-based l, given a 0-based site."""
    return -1 if site % 2 == 0 else 1


def hamiltonian_matrix(model: ModelSpec) -> scipy.sparse.csr_matrix:
    L = model.L
    h = bond_matrix(model)
    H = scipy.sparse.csr_matrix((2 ** L, 2 ** L), dtype=complex)
    for l in range(L - 1):
        H = H + site_operator(h, (l, l + 1), L)
    if model.h_z != 0.0:
        for l in range(L):
            H = H + model.h_z * staggered_sign(l) * site_operator(PAULI["z"], (l,), L)
    return H


# ─── Setup catalog ─────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Setup:
    key: str
    model: str
    monitor_label: str
    description: str


SETUPS: list[Setup] = [
    Setup("XX+z", "XX", "z", "Free hopping with on-site σ^z records; Gaussian, U(1)."),
    Setup("XX+zz", "XX", "zz", "Free hopping, bond parity records make it interacting."),
    Setup("XXZ+z", "XXZ", "z", "Integrable interacting chain, U(1)."),
    Setup("XXZ+zz", "XXZ", "zz", "Integrable interacting chain, bond records, U(1)."),
    Setup("XXZz+z", "XXZz", "z", "Staggered field breaks integrability, U(1) kept."),
    Setup("XXZz+zz", "XXZz", "zz", "Non-integrable, bond records, U(1)."),
    Setup("XY+z", "XY", "z", "Anisotropic free chain; Gaussian, no U(1)."),
    Setup("XY+zz", "XY", "zz", "Anisotropic free chain made interacting by bond records."),
    Setup("XYZ+z", "XYZ", "z", "Integrable interacting chain without U(1)."),
    Setup("XYZ+zz", "XYZ", "zz", "Integrable interacting chain, bond records, no U(1)."),
    Setup("XYZz+z", "XYZz", "z", "Non-integrable, no U(1)."),
    Setup("XYZz+zz", "XYZz", "zz", "Non-integrable, bond records, no U(1)."),
    Setup("XY+x", "XY", "x", "σ^x records are fermion strings: interacting."),
    Setup("XY+xx", "XY", "xx", "σ^xσ^x records stay quadratic: Gaussian."),
]

SETUPS_BY_KEY = {s.key: s for s in SETUPS}


def setup_specs(key: str, L: int, gamma: float) -> tuple[ModelSpec, MonitorSpec]:
    s = SETUPS_BY_KEY.get(key)
    if s is None:
        raise ValueError(f"unknown setup {key!r} (choose from {', '.join(SETUPS_BY_KEY)})")
    return preset(s.model, L), MonitorSpec.from_label(s.monitor_label, gamma)


def describe_catalog(L: int = 8, gamma: float = 0.1) -> str:
    """One line per setup with its classification flags."""
    lines = []
    for s in SETUPS:
        flags = classify(*setup_specs(s.key, L, gamma))
        lines.append(
            f"- {s.key:<8} interacting={str(flags.interacting):<5} "
            f"integrable={str(flags.integrable):<5} u1={str(flags.u1_symmetric):<5} {s.description}"
        )
    return "\n".join(lines)
