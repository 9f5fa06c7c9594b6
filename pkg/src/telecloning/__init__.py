"""Exact simulation and analytics for 1-to-2 telecloning over partially
entangled four-qubit channels."""

from .states import (
    A,
    ATOL,
    C1,
    C2,
    CHANNEL_REGISTER,
    DensityMatrix,
    MeasurementBranch,
    P,
    PROB_FLOOR,
    PROTOCOL_REGISTER,
    PureState,
    X,
    apply_unitary,
    basis_state,
    fidelity,
    is_unitary,
    measure_in_basis,
    partial_trace,
    qubit_state,
    tensor_product,
)
from .channel import (
    DisentanglementParams,
    apply_disentanglement,
    build_channel,
    build_ideal_channel,
    damp_ideal_channel,
    symmetric_state,
)
from .protocol import (
    ModifiedBellBasis,
    Outcome,
    OUTCOME_ORDER,
    OutcomeRecord,
    ProbabilisticResult,
    RunResult,
    correction_for,
    modified_bell_basis,
    run_probabilistic,
    run_protocol,
    run_protocol_over_channel,
)
from .entanglement import (
    closed_form_pair,
    closed_form_single,
    concurrence,
    global_entanglement,
    pair_concurrence,
)
from .efficiency import (
    EfficiencyReport,
    HAAR_MOMENTS,
    InputMoments,
    ancilla_efficiency,
    average_fidelity_probability,
    average_probabilities,
    best_measurement_param_for_copies,
    born_values,
    closed_form_report,
    copy_efficiency,
    moment_average_efficiency,
    moment_average_report,
    moment_average_values,
    monte_carlo_efficiency,
    monte_carlo_efficiency_over_channel,
    monte_carlo_report,
    port_efficiency,
    protocol_efficiency,
    sample_haar_inputs,
)
from .conversion import (
    ConversionResult,
    borrowed_channel_global,
    borrowed_channel_local,
    convert_global,
    convert_local,
    even_parity_rotation,
    global_conversion_steps,
    odd_parity_rotation,
    post_global_efficiencies,
    post_local_efficiencies,
    simulated_post_global_efficiencies,
    simulated_post_local_efficiencies,
    transition_threshold,
)

__version__ = "0.1.0"
