"""
Homodyne measurement step for a commuting family of monitors O_l (O_l² = 1).

Two integrators of the measurement part of the stochastic Schrödinger
equation share the same noise:

  homodyne_layer        K = Π_l [cosh(c_l) + sinh(c_l) O_l],
                        c_l = dξ_l + 2γ⟨O_l⟩dt, then one renormalization.
                        Norm-preserving and exact in the exponent; the
                        production scheme.
  euler_maruyama_layer  the literal first-order increment
                        -½γdt Σ(O_l-⟨O_l⟩)²ψ + Σ dξ_l(O_l-⟨O_l⟩)ψ,
                        then renormalization. Reference only.

All ⟨O_l⟩ are taken on the state entering the layer.

Noise is counter-based: a Philox generator keyed by (master seed, trajectory)
whose counter is set from the step index, so every increment is a pure
function of (seed, trajectory, step, operator) regardless of scheduling.
"""
from dataclasses import dataclass

import numpy as np

from .model import MonitorOperator
from .state import StateVector, apply_one_site, apply_operator, apply_two_site, expectation

SCHEMES = ("exponentiated", "euler-maruyama")
NORM_TOLERANCE = 1e-8

_MASK64 = (1 << 64) - 1
_INIT_STREAM = 1 << 192     # counter block reserved for initial-state draws


@dataclass(frozen=True)
class NoiseStream:
    master_seed: int
    traj_index: int
    gamma: float
    dt: float

    @property
    def key(self) -> int:
        return (self.master_seed & _MASK64) | ((self.traj_index & _MASK64) << 64)

    @property
    def variance(self) -> float:
        return self.gamma * self.dt

    def _generator(self, counter: int) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=self.key, counter=counter))

    def standard_normals(self, step: int, n_ops: int) -> np.ndarray:
        """Unit-variance draws for one step; a prefix of a longer draw for the same step."""
        if step < 0:
            raise ValueError(f"step index must be ≥ 0 (got {step})")
        return self._generator(step << 64).standard_normal(n_ops)

    def increments(self, step: int, n_ops: int) -> np.ndarray:
        """dξ_l for l = 0..n_ops-1 at this step, each N(0, γ dt)."""
        if self.variance == 0.0:
            return np.zeros(n_ops)
        return np.sqrt(self.variance) * self.standard_normals(step, n_ops)

    def init_rng(self) -> np.random.Generator:
        """Generator for the trajectory's random initial state; disjoint from the noise counters."""
        return self._generator(_INIT_STREAM)


def draw_noise(noise: NoiseStream, step: int, op_index: int) -> float:
    if op_index < 0:
        raise ValueError(f"operator index must be ≥ 0 (got {op_index})")
    return float(noise.increments(step, op_index + 1)[op_index])


def _check_inputs(state: StateVector, monitors: list[MonitorOperator]) -> None:
    if abs(state.norm() - 1.0) > NORM_TOLERANCE:
        raise ValueError(f"measurement layer needs a normalized state (norm={state.norm():.3e})")
    for op in monitors:
        m = op.local_matrix()
        if not np.allclose(m @ m, np.eye(m.shape[0])):
            raise ValueError(f"monitor {op} is not involutory")


def _kraus_factor(op: MonitorOperator, c: float) -> np.ndarray:
    m = op.local_matrix()
    return np.cosh(c) * np.eye(m.shape[0]) + np.sinh(c) * m


def homodyne_layer(
    state: StateVector,
    monitors: list[MonitorOperator],
    noise: NoiseStream,
    step: int,
) -> StateVector:
    _check_inputs(state, monitors)
    if noise.gamma == 0.0:
        return state
    means = np.array([expectation(state, op) for op in monitors])
    dxi = noise.increments(step, len(monitors))
    coefficients = dxi + 2.0 * noise.gamma * noise.dt * means
    return apply_kraus_factors(state, monitors, coefficients).normalize()


def apply_kraus_factors(
    state: StateVector,
    monitors: list[MonitorOperator],
    coefficients,
) -> StateVector:
    """Apply exp(c_l O_l) = cosh(c_l) + sinh(c_l) O_l for each pair, up to a positive overall factor."""
    exponent_z = None
    for op, c in zip(monitors, coefficients):
        d = op.diagonal(state.L)
        if d is not None:
            # commuting diagonal factors collapse into one exponential
            exponent_z = c * d if exponent_z is None else exponent_z + c * d
        elif op.is_bond:
            apply_two_site(state, _kraus_factor(op, c), op.sites)
        else:
            apply_one_site(state, _kraus_factor(op, c), op.sites[0])
    if exponent_z is not None:
        # shift keeps exp() finite; removed by the normalization
        state.amplitudes *= np.exp(exponent_z - exponent_z.max())
    return state


def euler_maruyama_layer(
    state: StateVector,
    monitors: list[MonitorOperator],
    noise: NoiseStream,
    step: int,
) -> StateVector:
    _check_inputs(state, monitors)
    if noise.gamma == 0.0:
        return state
    psi = state.amplitudes
    dxi = noise.increments(step, len(monitors))
    increment = np.zeros_like(psi)
    for op, xi in zip(monitors, dxi):
        e = expectation(state, op)
        o_psi = apply_operator(state.copy(), op).amplitudes
        # (O - e)² ψ = (1 + e²) ψ - 2e Oψ  since O² = 1
        increment += -0.5 * noise.variance * ((1.0 + e * e) * psi - 2.0 * e * o_psi)
        increment += xi * (o_psi - e * psi)
    state.amplitudes = psi + increment
    return state.normalize()


def measurement_layer(scheme: str):
    """Layer function for a scheme name."""
    if scheme == "exponentiated":
        return homodyne_layer
    if scheme == "euler-maruyama":
        return euler_maruyama_layer
    raise ValueError(f"scheme must be one of {SCHEMES} (got {scheme!r})")
