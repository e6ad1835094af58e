import math

import numpy as np
import pytest

import qmd


def test_h2_hamiltonian_ground_energy():
    h = qmd.qubit_hamiltonian(qmd.Molecule.h2(0.735), "parity2")
    assert h["n_qubits"] == 2
    assert h["exact_energy"] == pytest.approx(-1.1373, abs=1e-4)
    assert h["hf_energy"] == pytest.approx(-1.1169990, abs=1e-6)


def test_mappings_agree():
    mol = qmd.Molecule.h3plus(0.985, 0.985, 60.0)
    energies = [qmd.qubit_hamiltonian(mol, m)["exact_energy"] for m in ("jw", "parity2", "hcb+taper")]
    assert max(energies) - min(energies) < 1e-8


def test_pes_scan_minimum():
    _, r_min = qmd.pes_scan(list(np.linspace(0.3, 2.0, 35)))
    assert r_min == pytest.approx(0.735, abs=1e-3)


def test_exact_forces_antisymmetric():
    mol = qmd.Molecule.h2(0.6)
    ff = qmd.ForceField(mol)
    p = ff.compute(mol.coordinates)
    f = np.asarray(p["forces"])
    assert f.shape == (6,)
    assert f[5] > 0  # compressed bond pushes apart
    assert np.allclose(f[:3], -f[3:], atol=1e-8)


def test_shot_forces_report_covariance():
    mol = qmd.Molecule.h2(0.735)
    ff = qmd.ForceField(mol, backend="noiseless", shots=2048, seed=3)
    p = ff.compute(mol.coordinates)
    cov = np.asarray(p["covariance"])
    assert cov.shape == (6, 6)
    assert cov[5, 5] > 0
    assert ff.circuit_repetitions > 0


def test_nve_conserves_energy():
    mol = qmd.Molecule.h2(0.6)
    traj = qmd.run_nve(qmd.ForceField(mol), steps=200)
    e = np.asarray(traj["e_tot"])
    assert len(e) == 201
    assert np.ptp(e) < 1e-3
    rep = qmd.analyze(traj)
    assert abs(rep["e_tot_drift"]) < 1e-4
    assert rep["e_kin_period_fs"] is not None and math.isfinite(rep["e_kin_period_fs"])


def test_bad_options_raise():
    with pytest.raises(qmd.ConfigError):
        qmd.ForceField(qmd.Molecule.h2(0.735), backend="quantum")
    with pytest.raises(qmd.DomainError):
        qmd.run_langevin(qmd.ForceField(qmd.Molecule.h2(0.735)), steps=5)
