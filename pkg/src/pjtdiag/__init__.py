"""Exact diagonalization of a two-orbital vibronic model on a truncated
two-mode Fock space.

Two degenerate orbitals, each holding one hole, couple linearly to the two
components of one doubly degenerate local vibration while a static
correlation term splits the electronic multiplets. The package assembles the
sparse vibronic matrix, computes its low-lying eigenpairs by a dense or a
block Lanczos route, and reduces them to physical observables: electronic
characters, the distortion expectation R, and the splitting delta between
the lowest vibronic level and the doublet above it. Built-in presets cover
the four neutral group-IV vacancy centers in diamond.
"""

__version__ = "0.1.0"

from .analysis import (
    ApesScanPoint,
    LevelGroup,
    SpectrumReport,
    StateOrderingError,
    TruncationWarning,
    VibronicState,
    apes_scan,
    classify_levels,
    delta_from_groups,
    delta_splitting,
    distortion_expectation,
    electronic_character,
    spectrum_report,
)
from .fock import FockBasis, build_basis, number_operator, position_operator
from .hamiltonian import (
    DETERMINANTS,
    ELECTRONIC_BASIS,
    SYMMETRY_LABELS,
    ApesPoint,
    ElectronicBasis,
    PjtParams,
    VibronicHamiltonian,
    assemble,
    classical_apes,
    couplings_from_ejt,
    ejt_from_couplings,
    pjt_coupling_block,
    w_matrix,
)
from .paramfile import ParamFileError, parse_params
from .presets import PRESETS, DefectPreset, get_preset
from .solver import (
    DEGENERACY_TOL_MEV,
    DENSE_CROSSOVER,
    ConvergenceError,
    ConvergenceStudy,
    CutoffResult,
    EigenResult,
    SolveRequest,
    converge_cutoff,
    solve,
)

__all__ = [
    "__version__",
    "ApesPoint",
    "ApesScanPoint",
    "ConvergenceError",
    "ConvergenceStudy",
    "CutoffResult",
    "DEGENERACY_TOL_MEV",
    "DENSE_CROSSOVER",
    "DETERMINANTS",
    "DefectPreset",
    "ELECTRONIC_BASIS",
    "EigenResult",
    "ElectronicBasis",
    "FockBasis",
    "LevelGroup",
    "PRESETS",
    "ParamFileError",
    "PjtParams",
    "SpectrumReport",
    "SolveRequest",
    "StateOrderingError",
    "SYMMETRY_LABELS",
    "TruncationWarning",
    "VibronicHamiltonian",
    "VibronicState",
    "apes_scan",
    "assemble",
    "build_basis",
    "classical_apes",
    "classify_levels",
    "converge_cutoff",
    "couplings_from_ejt",
    "delta_from_groups",
    "delta_splitting",
    "distortion_expectation",
    "ejt_from_couplings",
    "electronic_character",
    "get_preset",
    "number_operator",
    "parse_params",
    "pjt_coupling_block",
    "position_operator",
    "solve",
    "spectrum_report",
    "w_matrix",
]
