"""Molecular dynamics of H2 and H3+ on forces from a simulated variational quantum eigensolver."""

from ._core import (
    ConfigError,
    DomainError,
    ForceField,
    Molecule,
    NumericalError,
    analyze,
    pes_scan,
    qubit_hamiltonian,
    run_langevin,
    run_nve,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "ForceField",
    "Molecule",
    "NumericalError",
    "analyze",
    "pes_scan",
    "qubit_hamiltonian",
    "run_langevin",
    "run_nve",
]
