"""Quantized matrix families, pseudospectra and pseudomodes."""

from ._core import (
    BtpsError,
    bracket_order,
    build_matrix,
    dft_change_of_basis,
    eigenvalues,
    linear_hamiltonian,
    model_matrix,
    optimal_pseudomode,
    preset_names,
    pseudospectrum_grid,
    sigma_min,
    squeezed_coefficients,
    symbol_eval,
    torus_wavepacket,
)

__all__ = [
    "BtpsError",
    "bracket_order",
    "build_matrix",
    "dft_change_of_basis",
    "eigenvalues",
    "linear_hamiltonian",
    "model_matrix",
    "optimal_pseudomode",
    "preset_names",
    "pseudospectrum_grid",
    "sigma_min",
    "squeezed_coefficients",
    "symbol_eval",
    "torus_wavepacket",
]
