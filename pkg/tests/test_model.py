import numpy as np
import pytest

from stages.stage_1.model import (
    PAULI,
    PRESET_NAMES,
    SETUPS,
    ModelSpec,
    MonitorOperator,
    MonitorSpec,
    bond_matrix,
    classify,
    describe_catalog,
    hamiltonian_matrix,
    monitored_operators,
    operator_matrix,
    preset,
    setup_specs,
    site_operator,
    staggered_sign,
)


def test_presets_fix_their_defining_couplings():
    xx = preset("XX", 8)
    assert (xx.J_x, xx.J_y, xx.J_z, xx.h_z) == (1.0, 1.0, 0.0, 0.0)
    xyzz = preset("XYZz", 8)
    assert xyzz.J_x != xyzz.J_y
    assert xyzz.J_z != 0.0 and xyzz.h_z != 0.0
    for name in PRESET_NAMES:
        assert preset(name, 4).name == name


def test_preset_rejects_bad_sizes_and_names():
    with pytest.raises(ValueError):
        preset("XXZ", 5)
    with pytest.raises(ValueError):
        preset("XXZ", 2)
    with pytest.raises(ValueError, match="unknown model preset"):
        preset("Ising", 8)


def test_preset_override_must_keep_constraints():
    assert preset("XXZ", 8, J_z=1.5).J_z == 1.5
    with pytest.raises(ValueError, match="J_z ≠ 0"):
        preset("XXZ", 8, J_z=0.0)
    with pytest.raises(ValueError, match="J_x ≠ J_y"):
        preset("XY", 8, J_y=1.0)
    with pytest.raises(ValueError, match="unknown coupling"):
        preset("XX", 8, J_w=1.0)


def test_model_spec_validation():
    with pytest.raises(ValueError, match="even"):
        ModelSpec(L=7)
    with pytest.raises(ValueError):
        ModelSpec(L=1)
    with pytest.raises(ValueError, match="finite"):
        ModelSpec(L=4, J_z=float("nan"))


def test_negative_rate_is_rejected():
    with pytest.raises(ValueError, match="measurement rate must be ≥ 0"):
        MonitorSpec(gamma=-1.0)
    with pytest.raises(ValueError):
        MonitorSpec(kind="plaquette")


def test_monitor_labels():
    assert MonitorSpec("single-site", "z").label == "z"
    assert MonitorSpec("bond", "x").label == "xx"
    assert MonitorSpec.from_label("yy", 0.2) == MonitorSpec("bond", "y", 0.2)
    with pytest.raises(ValueError):
        MonitorSpec.from_label("xz", 0.1)


@pytest.mark.parametrize("key, interacting, integrable, u1", [
    ("XX+z", False, True, True),
    ("XX+zz", True, True, True),
    ("XXZ+z", True, True, True),
    ("XXZz+z", True, False, True),
    ("XY+z", False, True, False),
    ("XY+x", True, True, False),
    ("XY+xx", False, True, False),
    ("XYZz+zz", True, False, False),
])
def test_classification(key, interacting, integrable, u1):
    flags = classify(*setup_specs(key, 8, 0.1))
    assert (flags.interacting, flags.integrable, flags.u1_symmetric) == (interacting, integrable, u1)


def test_catalog_lists_every_setup():
    lines = describe_catalog().splitlines()
    assert len(lines) == len(SETUPS) == 14
    with pytest.raises(ValueError, match="unknown setup"):
        setup_specs("XX+q", 8, 0.1)


def test_monitored_operator_sets():
    model = preset("XX", 6)
    single = monitored_operators(model, MonitorSpec("single-site", "z"))
    bonds = monitored_operators(model, MonitorSpec("bond", "x"))
    assert [op.sites for op in single] == [(l,) for l in range(6)]
    assert [op.sites for op in bonds] == [(l, l + 1) for l in range(5)]
    with pytest.raises(ValueError):
        MonitorOperator("x", (1, 3))


def test_two_site_embedding_matches_product_of_one_site_embeddings():
    L = 5
    local = np.kron(PAULI["x"], PAULI["z"])     # σ^x on site l, σ^z on site l+1
    for l in range(L - 1):
        pair = site_operator(local, (l, l + 1), L).toarray()
        product = (site_operator(PAULI["x"], (l,), L) @ site_operator(PAULI["z"], (l + 1,), L)).toarray()
        np.testing.assert_allclose(pair, product, atol=1e-14)


def test_z_diagonal_matches_dense_operator():
    L = 4
    for op in (MonitorOperator("z", (2,)), MonitorOperator("z", (1, 2))):
        dense = operator_matrix(op, L).toarray()
        np.testing.assert_allclose(np.diag(dense).real, op.diagonal(L))
        assert np.count_nonzero(dense - np.diag(np.diag(dense))) == 0


def test_hamiltonian_is_hermitian_and_xxz_conserves_magnetization():
    model = preset("XXZz", 6)
    H = hamiltonian_matrix(model).toarray()
    np.testing.assert_allclose(H, H.conj().T, atol=1e-14)
    sz = sum(site_operator(PAULI["z"], (l,), 6) for l in range(6)).toarray()
    np.testing.assert_allclose(H @ sz - sz @ H, 0.0, atol=1e-12)

    H_xy = hamiltonian_matrix(preset("XY", 6)).toarray()
    assert np.abs(H_xy @ sz - sz @ H_xy).max() > 0.1


def test_staggered_field_energy_of_neel_configuration():
    # |↑↓↑↓⟩ (index 0b1010) in a pure staggered field: Σ_l (-1)^l σ^z_l = -L
    model = ModelSpec(L=4, J_x=0.0, J_y=0.0, J_z=0.0, h_z=1.0)
    H = hamiltonian_matrix(model).toarray()
    assert H[0b1010, 0b1010].real == pytest.approx(-4.0)
    assert [staggered_sign(i) for i in range(4)] == [-1, 1, -1, 1]


@pytest.mark.parametrize("label", ["x", "y", "z", "xx", "yy", "zz"])
def test_monitors_are_involutions(label):
    for L in (2, 4):
        for op in monitored_operators(ModelSpec(L=L), MonitorSpec.from_label(label, 0.1)):
            m = op.local_matrix()
            np.testing.assert_allclose(m @ m, np.eye(m.shape[0]), atol=1e-15)
            dense = operator_matrix(op, L).toarray()
            np.testing.assert_allclose(dense @ dense, np.eye(2 ** L), atol=1e-14)


def test_xxz_bond_spectrum():
    h = bond_matrix(preset("XXZ", 4, J_z=0.5))
    np.testing.assert_allclose(np.linalg.eigvalsh(h), [-2.5, 0.5, 0.5, 1.5], atol=1e-12)
    # the two-site chain is a single bond
    H = hamiltonian_matrix(ModelSpec(L=2, J_z=0.5)).toarray()
    np.testing.assert_allclose(H, h, atol=1e-15)
