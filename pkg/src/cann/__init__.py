"""Constitutive artificial neural networks for isotropic incompressible rubber.

The energy network is a sum of eight invariant terms with non-negative
weights. Training it on stress-stretch data and reading off which terms
survive yields a classical hyperelastic model with physical parameters.
"""

from .baseline_nn import MlpParams, MlpTrainResult, init_mlp, mlp_forward, mlp_gradient, mlp_loss, mlp_train
from .data import BUILTIN_NAMES, Dataset, Sample, StressUnit, builtin_dataset, convert_unit, load_csv, parse_csv, save_csv
from .discovery import (
    DiscoveredModel,
    Family,
    NamedModel,
    classify,
    closed_form_energy,
    recover_named_model,
    report,
    term_magnitudes,
)
from .energy import (
    PARAM_NAMES,
    TERM_NAMES,
    Activation,
    CannWeights,
    activation,
    derivative_weight_gradient,
    energy,
    energy_derivatives,
    energy_terms,
    energy_weight_gradient,
)
from .errors import CannError, DatasetError, DivergenceError, DomainError, StructureError
from .kinematics import (
    DeformationMode,
    DiagonalDeformation,
    GeneralInvariants,
    InvariantState,
    deformation_gradient,
    general_invariants,
    invariants,
)
from .optimizer import AdamConfig, TrainingRecord, loss_gradient, mse_loss, train_cann
from .stress import StressResult, nominal_stress, p1_terms, predict_curve, stress_weight_gradient

__version__ = "0.1.0"
