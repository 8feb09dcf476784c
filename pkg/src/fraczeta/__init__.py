"""Spectral zeta functions of self-similar Laplacians.

Eigenvalue spectra (closed-form, decimation, dense oracle), heat-trace
certificates, log-periodic oscillation fitting, and Mellin-split meromorphic
continuation with predicted/located pole lattices and residues.
"""

from .errors import ConfigError, ConvergenceError, DomainError
from .spectrum import (
    DecimationConfig,
    FractalModel,
    SpectrumBatch,
    decimation_graph_spectrum,
    dense_graph_spectrum,
    fractal_spectrum,
    interval_spectrum,
    load_preset,
    make_model,
    preset_names,
    toy_geometric_spectrum,
)
from .partition import (
    AsymptoticCertificate,
    OscillationProfile,
    PartitionSample,
    TailCertificate,
    asymptotic_certificate,
    fit_oscillation,
    fit_tower_profiles,
    partition_grid,
    partition_value,
    tail_certificate,
    weyl_ratio,
)
from .zeta import (
    ContinuationContext,
    MellinSplit,
    PoleEstimate,
    ZetaPoint,
    build_context,
    functional_eq_residual,
    locate_poles,
    mellin_split_numeric,
    predicted_poles,
    residue_from_oscillation,
    zeta_continued,
    zeta_direct,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticCertificate",
    "ConfigError",
    "ContinuationContext",
    "ConvergenceError",
    "DecimationConfig",
    "DomainError",
    "FractalModel",
    "MellinSplit",
    "OscillationProfile",
    "PartitionSample",
    "PoleEstimate",
    "SpectrumBatch",
    "TailCertificate",
    "ZetaPoint",
    "asymptotic_certificate",
    "build_context",
    "decimation_graph_spectrum",
    "dense_graph_spectrum",
    "fit_oscillation",
    "fit_tower_profiles",
    "fractal_spectrum",
    "functional_eq_residual",
    "interval_spectrum",
    "load_preset",
    "locate_poles",
    "make_model",
    "mellin_split_numeric",
    "partition_grid",
    "partition_value",
    "predicted_poles",
    "preset_names",
    "residue_from_oscillation",
    "tail_certificate",
    "toy_geometric_spectrum",
    "weyl_ratio",
    "zeta_continued",
    "zeta_direct",
]
