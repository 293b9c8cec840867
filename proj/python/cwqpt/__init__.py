"""Quantum phase transitions of Curie-Weiss models.

Model tokens: lipkin, pairing, jc-rwa, jc-crw, bilayer, heisenberg.
Spins are passed as strings ("100", "3/2").
"""

from ._core import (
    bifurcation_scan,
    critical_g,
    critical_match,
    esqpt_energy,
    fixed_points,
    ground_energy_match,
    ground_expectation,
    hamiltonian,
    lambda_of_g,
    models,
    orbit,
    portrait,
    run_cli,
    separatrix_energies,
    spectrum,
)

__all__ = [
    "bifurcation_scan",
    "critical_g",
    "critical_match",
    "esqpt_energy",
    "fixed_points",
    "ground_energy_match",
    "ground_expectation",
    "hamiltonian",
    "lambda_of_g",
    "models",
    "orbit",
    "portrait",
    "run_cli",
    "separatrix_energies",
    "spectrum",
]
