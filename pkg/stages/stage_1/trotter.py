"""
Second-order Trotter step for the generalized Heisenberg chain.

    U(dt) = F(dt/2) · O(dt/2) · E(dt) · O(dt/2) · F(dt/2)

O and E are the products of gates on odd bonds (1-2, 3-4, …) and even
bonds (2-3, 4-5, …); F is the staggered-field layer, which is diagonal
and therefore exact. Gates are computed once per plan.
"""
from dataclasses import dataclass, replace

import numpy as np

from .model import ModelSpec, bond_matrix, staggered_sign, z_signs
from .state import StateVector, apply_two_site


@dataclass(frozen=True)
class TrotterPlan:
    L: int
    dt: float
    bond_gates_half: tuple[np.ndarray, ...]   # one per bond, exp(-i h_l dt/2)
    bond_gates_full: tuple[np.ndarray, ...]   # one per bond, exp(-i h_l dt)
    field_layer_half: tuple[np.ndarray, ...]  # per-site diagonal phases for dt/2
    field_diagonal_half: np.ndarray | None    # product of field_layer_half over the basis

    @property
    def odd_bonds(self) -> range:
        return range(0, self.L - 1, 2)

    @property
    def even_bonds(self) -> range:
        return range(1, self.L - 1, 2)

    def reversed(self) -> "TrotterPlan":
        """Plan for -dt: every factor inverted, same symmetric order."""
        return replace(
            self,
            dt=-self.dt,
            bond_gates_half=tuple(g.conj().T for g in self.bond_gates_half),
            bond_gates_full=tuple(g.conj().T for g in self.bond_gates_full),
            field_layer_half=tuple(p.conj() for p in self.field_layer_half),
            field_diagonal_half=(
                None if self.field_diagonal_half is None else self.field_diagonal_half.conj()
            ),
        )


def bond_gate(h: np.ndarray, tau: float) -> np.ndarray:
    """exp(-i h τ) for Hermitian h via eigendecomposition."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * tau)) @ v.conj().T


def build_plan(model: ModelSpec, dt: float) -> TrotterPlan:
    if not dt > 0:
        raise ValueError(f"time step must be > 0 (got {dt})")
    h = bond_matrix(model)
    half = bond_gate(h, dt / 2)
    full = bond_gate(h, dt)
    n_bonds = model.L - 1

    phases = tuple(
        np.exp(-1j * model.h_z * staggered_sign(l) * np.array([1.0, -1.0]) * dt / 2)
        for l in range(model.L)
    )
    diagonal = None
    if model.h_z != 0.0:
        diagonal = np.ones(2 ** model.L, dtype=complex)
        for l, p in enumerate(phases):
            signs = z_signs((l,), model.L)
            diagonal *= np.where(signs > 0, p[0], p[1])
        diagonal.setflags(write=False)

    return TrotterPlan(
        L=model.L,
        dt=dt,
        bond_gates_half=tuple(half for _ in range(n_bonds)),
        bond_gates_full=tuple(full for _ in range(n_bonds)),
        field_layer_half=phases,
        field_diagonal_half=diagonal,
    )


def _field(state: StateVector, plan: TrotterPlan) -> None:
    if plan.field_diagonal_half is not None:
        state.amplitudes *= plan.field_diagonal_half


def step(state: StateVector, plan: TrotterPlan) -> StateVector:
    """One unitary layer, in place."""
    if state.L != plan.L:
        raise ValueError(f"plan built for L={plan.L}, state has L={state.L}")
    _field(state, plan)
    for l in plan.odd_bonds:
        apply_two_site(state, plan.bond_gates_half[l], (l, l + 1))
    for l in plan.even_bonds:
        apply_two_site(state, plan.bond_gates_full[l], (l, l + 1))
    for l in plan.odd_bonds:
        apply_two_site(state, plan.bond_gates_half[l], (l, l + 1))
    _field(state, plan)
    return state
