"""Quantum-optical scattering of a dispersive gain/loss bilayer."""

from ._core import (
    Bilayer,
    BranchAmbiguity,
    ConfigError,
    ConsistencyError,
    Error,
    InvalidArgument,
    LasingPole,
    LorentzMedium,
    NoSignChange,
    ScatteringAmplitudes,
    __version__,
    bloch_index,
    eigenvalues,
    evaluate,
    homodyne_variance,
    locate_threshold,
    mandel_q,
    noise_flux,
    permittivity,
    preset,
    pt_solution,
    reference_gaps,
    refractive_index,
    run_sweep,
    scatter,
    thermal_occupation,
)

TRAD = 1e12

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
