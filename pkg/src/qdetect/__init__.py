"""Numerical toolkit for quantum detection relations and value assignment.

The core objects are finite-dimensional projections and density operators.
On top of them the package implements the detection relation (a detector
property standing in for a measured one at a fixed state), the unique
consistent joint probability assignment for arbitrary projection pairs, a
four-qubit no-go construction showing detector outcomes cannot be read as
pre-existing measured values, and a counter-based Monte Carlo sampler that
certifies the correlation statements on concrete specimen ensembles.
"""

from .errors import (
    CoMeasurabilityError,
    DimensionError,
    LemmaViolationError,
    OrthogonalityError,
    PreconditionError,
    ScenarioFormatError,
    ToolkitError,
    UndefinedConditionalError,
    UnknownObservableError,
    ValidationError,
)
from .numerics import (
    CMatrix,
    DEFAULT_TOL,
    MAX_DIM,
    Tolerance,
    adjoint,
    dist,
    eigh,
    identity,
    kernel_projector,
    kron,
    mul,
    outer,
    trace,
    zeros,
)
from .observables import (
    DensityOperator,
    PMObservable,
    Projection,
    commutation_projection,
    commutator,
    commutator_defect,
    commutes,
    complement,
    derived_projection,
    orthogonal_sum,
)
from .detection import (
    DetectionCheck,
    complement_lemma_check,
    detects,
    detects_via_probability,
    rank_one_detector,
    refinement_check,
)
from .assignment import (
    AssignmentProbabilities,
    JointDistribution,
    SimulationEquality,
    assignment_probs,
    check_C1,
    check_C2,
    check_C3,
    cond_prob,
    cz_property_check,
    detection_form_equality,
    joint_distribution,
    simulation_equalities,
)
from .scenarios import (
    CommutationClaim,
    ConstraintClaim,
    ConstraintSet,
    DetectionClaim,
    Scenario,
    SignAssignment,
    SignEquation,
    build_example_44,
    build_ghsz,
    build_rt_analogue,
    enumerate_constraints,
    ghsz_sign_constraints,
    load_scenario,
    save_scenario,
    verify_example_44,
    verify_ghsz,
    verify_scenario,
)
from .ensemble import (
    Ensemble,
    SpecimenRecord,
    check_support_statements,
    detection_frequency_audit,
    sample_ensemble,
)
from .reporting import CheckResult, Report

__version__ = "0.1.0"
