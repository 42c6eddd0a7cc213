"""Desk-scale qubit simulator for affective-reflective state modeling."""

from .states import (
    ATOL,
    ATOL_DERIVED,
    ATOL_PURITY_LENGTH,
    MAX_QUBITS,
    BlochVector,
    DensityMatrix,
    Ensemble,
    PureState,
    basis_state,
    bloch_from_density,
    bloch_from_pure,
    density_from_pure,
    eigen2,
    inner_product,
    mix,
    pure_from_angles,
    purity,
    reduced_qubit_density,
    tensor,
)
from .gates import (
    Circuit,
    Gate,
    MeasurementOperator,
    MeasurementRecord,
    RandomSource,
    apply_gate,
    circuit_from_json,
    epr_circuit,
    epr_map,
    expectation,
    measure_operator,
    measure_qubit,
    probabilities,
    rotation_gate,
    run_circuit,
    sample_outcome_values,
    sample_register,
    standard_gate,
)
from .affect import (
    ActionTendency,
    AxisOperators,
    PsychReadout,
    ReadoutLabel,
    SatisfactionLabel,
    SatisfactionVerdict,
    axis_operators,
    classify,
    hri_valence,
    readout,
    satisfaction,
    state_from_relevance,
    trait_appraisal,
)
from .network import (
    BUNDLED_NETWORKS,
    DangerReport,
    NetworkNode,
    TransitionArc,
    TransitionNetwork,
    bundled_network,
    concurrent_activations,
    detect_danger,
    load_network,
    network_from_json,
    step,
)
from .session import (
    DeviationReport,
    JoystickInput,
    SessionState,
    TrajectorySample,
    compare_trajectories,
    new_session,
    predict_trajectory,
    read_trajectory_csv,
    script_from_json,
    session_tick,
    configure,
    trajectory_csv_text,
    trigger_collapse,
    write_trajectory_csv,
)

__version__ = "0.1.0"
