"""Tripartite nonlocality, entanglement and l1-coherence of GHZ-like states
seen by uniformly accelerated observers under amplitude damping."""

from .channels import DampingParams, KrausPair, amplitude_damping_kraus, apply_damping
from .closedform import CATALOG, CoverageError, cf_eval, cf_sum_rules
from .engine import damped_scenario_state, is_x_structured, numeric_measures
from .measures import MeasureTriple, StructureError, XState, coherence_l1, extract_xstate, gte, gtn
from .qcore import (
    DensityOperator,
    LabelError,
    ModeLabel,
    ModeRegister,
    ParameterError,
    PureState,
    SizeError,
    ValidationReport,
    partial_trace,
    tensor_product,
    validate_density,
)
from .sweep import (
    BoundaryResult,
    ConfigError,
    SweepConfig,
    SweepRecord,
    emit_figure_data,
    find_boundary,
    run_audit,
    run_sweep,
    sum_rule_samples,
)
from .unruh import (
    BETA_MAX,
    GhzParams,
    SCENARIOS,
    Scenario,
    ScenarioKind,
    UnruhParams,
    build_ghz,
    scenario,
    scenario_reduced_state,
    unruh_expand,
)

__version__ = "0.1.0"
