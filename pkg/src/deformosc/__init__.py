"""Numerics for the (p, q, alpha, nu)-deformed oscillator algebra with structure functions.

Truncated Fock representations, spectra, coherent states, correlators and a
verification suite that checks closed forms against dense matrix products.
"""

from .casimir import (
    CasimirParams,
    casimir_energy,
    check_factorial_sign_identity,
    deformed_factorial,
    effective_params,
)
from .coherent import (
    CoherentState,
    coherent_state,
    continuity_modulus,
    eigen_residual,
    overlap,
    overlap_vector,
    target_moments,
)
from .correlators import (
    MatrixElementQuery,
    expectation,
    matrix_element,
    oracle_matrix_element,
    sweep_branches,
)
from .exceptions import (
    ConventionViolation,
    DeformationError,
    DegenerateDeformation,
    GuardBandExceeded,
    InvalidParameter,
    NegativeRadicand,
    NoAdmissibleRegime,
    NonConvergence,
    NonPositiveStructureFunction,
    VanishingDenominator,
)
from .fockrep import (
    FockRep,
    build_rep,
    energy,
    hamiltonian,
    matrix_spectrum,
    normalization_constant,
    spectrum,
)
from .params import (
    STANDARD_A,
    STANDARD_B,
    DeformationParams,
    Regime,
    classify_regime,
    dual,
    random_params,
    vacuum_consistent_chi0,
    validate,
)
from .qseries import (
    SeriesResult,
    check_pq_binomial,
    deformed_exponential,
    deformed_hypergeometric_L,
    deformed_number,
    double_pochhammer,
    pochhammer,
    tau,
)
from .report import Entry, VerificationReport
from .suite import run_suite

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
