"""Hamilton-Jacobi residue methods for position-dependent-mass Schrodinger problems."""
from . import errors, polynomials
from .config import RunConfig, load_config, parse_config
from .oracle import (
    DiscretizedOperator,
    EigenResult,
    action_variable,
    contour_residue,
    count_nodes,
    discretize_pdm,
    richardson,
    solve_lowest,
    zero_residues,
)
from .profiles import (
    AmbiguityParams,
    Grid,
    MassProfile,
    PotentialSpec,
    effective_potential,
    make_ambiguity,
    mass_derivatives,
    veff_function,
)
from .qhj_core import (
    G_direct,
    G_from_coefficients,
    SampledComplexFunction,
    momentum_from_wavefunction,
    qemhj_residual,
    riccati_coefficients,
    wavefunction_from_momentum,
)
from .residue_spectra import (
    Branch,
    ClosedFormState,
    SpectralCondition,
    morse_eigenfunction,
    morse_quantization,
    pt_eigenfunction,
    pt_quantization,
)
from .swanson import SwansonParams, pseudo_hermiticity_check, similarity_map

__version__ = "0.1.0"

__all__ = [
    "errors",
    "polynomials",
    "RunConfig",
    "load_config",
    "parse_config",
    "DiscretizedOperator",
    "EigenResult",
    "action_variable",
    "contour_residue",
    "count_nodes",
    "discretize_pdm",
    "richardson",
    "solve_lowest",
    "zero_residues",
    "AmbiguityParams",
    "Grid",
    "MassProfile",
    "PotentialSpec",
    "effective_potential",
    "make_ambiguity",
    "mass_derivatives",
    "veff_function",
    "G_direct",
    "G_from_coefficients",
    "SampledComplexFunction",
    "momentum_from_wavefunction",
    "qemhj_residual",
    "riccati_coefficients",
    "wavefunction_from_momentum",
    "Branch",
    "ClosedFormState",
    "SpectralCondition",
    "morse_eigenfunction",
    "morse_quantization",
    "pt_eigenfunction",
    "pt_quantization",
    "SwansonParams",
    "pseudo_hermiticity_check",
    "similarity_map",
]
