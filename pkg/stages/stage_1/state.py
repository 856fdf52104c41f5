"""
Dense state vectors over the σ^z basis and the kernels that act on them.

Bit convention: site 0 (site 1 in physics notation) is the least-significant
bit of the amplitude index; bit value 0 is spin up (σ^z = +1). Every kernel
and the half-chain reshape share this convention.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .model import MonitorOperator, z_signs

SCHMIDT_CUTOFF = 1e-12
INIT_MODES = ("haar-site", "basis")


@dataclass
class StateVector:
    L: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (2 ** self.L,):
            raise ValueError(
                f"state of L={self.L} needs {2 ** self.L} amplitudes (got {self.amplitudes.shape})"
            )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> "StateVector":
        n = self.norm()
        if n == 0.0 or not np.isfinite(n):
            raise ValueError("cannot normalize a zero or non-finite state")
        self.amplitudes /= n
        return self

    def copy(self) -> "StateVector":
        return StateVector(self.L, self.amplitudes.copy())

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def product_state(L: int, spin_states) -> StateVector:
    """Tensor product of per-site (up, down) amplitude pairs, site 0 first."""
    spins = [np.asarray(s, dtype=complex) for s in spin_states]
    if len(spins) != L:
        raise ValueError(f"need {L} single-spin states (got {len(spins)})")
    for i, s in enumerate(spins):
        if s.shape != (2,):
            raise ValueError(f"spin {i + 1} must be an amplitude pair")
        if abs(np.vdot(s, s).real - 1.0) > 1e-12:
            raise ValueError(f"spin {i + 1} is not normalized")
    amps = np.ones(1, dtype=complex)
    for s in spins:
        # later sites are more significant
        amps = np.kron(s, amps)
    return StateVector(L, amps)


def random_product_state(L: int, rng: np.random.Generator, mode: str = "haar-site") -> StateVector:
    if mode == "haar-site":
        # normalized complex Gaussian pairs are uniform on the Bloch sphere
        raw = rng.standard_normal((L, 2)) + 1j * rng.standard_normal((L, 2))
        spins = raw / np.linalg.norm(raw, axis=1, keepdims=True)
        # exact renormalization of each pair before the product
        spins = [s / np.sqrt(np.vdot(s, s).real) for s in spins]
        return product_state(L, spins)
    if mode == "basis":
        bits = rng.integers(0, 2, size=L)
        amps = np.zeros(2 ** L, dtype=complex)
        amps[int(np.sum(bits << np.arange(L)))] = 1.0
        return StateVector(L, amps)
    raise ValueError(f"init mode must be one of {INIT_MODES} (got {mode!r})")


def neel_state(L: int) -> StateVector:
    """|↑↓↑↓…⟩"""
    return product_state(L, [(1, 0) if i % 2 == 0 else (0, 1) for i in range(L)])


def _check_site(state: StateVector, site: int) -> None:
    if not 0 <= site < state.L:
        raise ValueError(f"site {site} out of range for L={state.L}")


def apply_one_site(state: StateVector, gate: np.ndarray, site: int) -> StateVector:
    _check_site(state, site)
    L = state.L
    psi = state.amplitudes.reshape(2 ** (L - site - 1), 2, 2 ** site)
    state.amplitudes = np.einsum("ab,hbm->ham", gate, psi).reshape(-1)
    return state


def apply_two_site(state: StateVector, gate: np.ndarray, sites: tuple[int, int]) -> StateVector:
    """
    Apply a 4×4 gate on (l, l+1). The gate is written in kron(site l, site l+1)
    order; unitarity is not required.
    """
    l, r = sites
    _check_site(state, l)
    _check_site(state, r)
    if r != l + 1:
        raise ValueError(f"two-site gate needs adjacent sites (got {sites})")
    L = state.L
    g = np.asarray(gate, dtype=complex).reshape(2, 2, 2, 2)
    # axes: (sites above l+1, site l+1, site l, sites below l)
    psi = state.amplitudes.reshape(2 ** (L - l - 2), 2, 2, 2 ** l)
    state.amplitudes = np.einsum("ijkl,hlkm->hjim", g, psi).reshape(-1)
    return state


def apply_operator(state: StateVector, op: MonitorOperator) -> StateVector:
    if op.is_bond:
        return apply_two_site(state, op.local_matrix(), op.sites)
    return apply_one_site(state, op.local_matrix(), op.sites[0])


def expectation(state: StateVector, op: MonitorOperator) -> float:
    """⟨ψ|O|ψ⟩ for a Pauli-string monitor, clamped to [-1, 1]."""
    if op.axis == "z":
        value = float(np.dot(state.probabilities(), op.diagonal(state.L)))
    else:
        applied = apply_operator(state.copy(), op)
        value = float(np.vdot(state.amplitudes, applied.amplitudes).real)
    return min(1.0, max(-1.0, value))


@lru_cache(maxsize=32)
def _sz_diagonal(L: int) -> np.ndarray:
    d = sum(z_signs((site,), L) for site in range(L))
    d.setflags(write=False)
    return d


def total_magnetization(state: StateVector) -> float:
    """⟨S_z⟩ = Σ_l ⟨σ^z_l⟩"""
    return float(np.dot(state.probabilities(), _sz_diagonal(state.L)))


def schmidt_values(state: StateVector, cut: int | None = None) -> np.ndarray:
    """Singular values across the cut between sites [0, cut) and [cut, L)."""
    cut = state.L // 2 if cut is None else cut
    # rows: sites cut..L-1 (high bits), columns: sites 0..cut-1
    matrix = state.amplitudes.reshape(2 ** (state.L - cut), 2 ** cut)
    return np.linalg.svd(matrix, compute_uv=False)


def half_chain_entropy(state: StateVector) -> float:
    """Von Neumann entropy (nats) of sites 1..L/2."""
    if state.L % 2:
        raise ValueError(f"half-chain entropy needs even L (got {state.L})")
    lam = schmidt_values(state)
    lam = lam[lam > SCHMIDT_CUTOFF]
    p = lam ** 2
    p = p / p.sum()
    s = float(-np.sum(p * np.log(p))) + 0.0
    return min(max(s, 0.0), (state.L // 2) * np.log(2))
