"""Ground state of the quantum Rabi model by a generalized variational method."""
from .baselines import energy_grwa, mean_photon_grwa
from .ed import EdConfig, EdResult, exact_ground
from .errors import ConvergenceError, DegenerateDenominatorError, DomainError, MissingOracleError
from .gvm import (
    GroundStateResult,
    PerturbationConfig,
    energy_explicit,
    ground_state,
    lambda_closed_form,
    mean_photon_approx,
    mean_photon_full,
    solve_lambda_exact,
)
from .model import BasisLabel, Branch, ModelParams, validate

__version__ = "0.1.0"
