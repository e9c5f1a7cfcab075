"""pgbag: bound-state spectra of relativistic pseudo-Gaussian oscillators.

Builds the truncated operator of a pseudo-Gaussian well in the
harmonic-oscillator energy basis through generating-function closed forms,
diagonalizes it, separates discrete levels from continuum-overlapping ones,
and maps eigenvalues to physical energies.  Two independent oracles
(Gauss-Hermite quadrature for matrix elements, a finite-difference Dirichlet
grid for the spectrum) back every production path.
"""

__version__ = "0.1.0"

from .model import (
    CoefficientSet,
    ModelParams,
    coefficients,
    eval_v,
    eval_w,
    make_params,
    taylor_coeffs,
)
from .matrix import (
    gaussian_matrix,
    hamiltonian,
    kinetic_matrix,
    moment_matrices,
    xi2_matrix,
)
from .spectrum import (
    Level,
    ScanPoint,
    SpectrumResult,
    classify,
    eigenvalues_sym,
    energies,
    nu_of,
    scan,
    solve,
)
from .oracle import (
    GridDomainError,
    GridSpectrum,
    ValidationReport,
    default_box_size,
    grid_eigenvalues,
    grid_spectrum,
    hermite_fn,
    quad_element,
    validate,
)

__all__ = [
    "__version__",
    "CoefficientSet",
    "ModelParams",
    "coefficients",
    "eval_v",
    "eval_w",
    "make_params",
    "taylor_coeffs",
    "gaussian_matrix",
    "hamiltonian",
    "kinetic_matrix",
    "moment_matrices",
    "xi2_matrix",
    "Level",
    "ScanPoint",
    "SpectrumResult",
    "classify",
    "eigenvalues_sym",
    "energies",
    "nu_of",
    "scan",
    "solve",
    "GridDomainError",
    "GridSpectrum",
    "ValidationReport",
    "default_box_size",
    "grid_eigenvalues",
    "grid_spectrum",
    "hermite_fn",
    "quad_element",
    "validate",
]
