"""Graph states, stabilizer Bell operators, exact LHV bounds, and analysis tools."""

from .analysis import (
    BellValueEstimate,
    GhzSummary,
    MeasurementRecord,
    ScalingRow,
    ViolationReport,
    bell_value_from_records,
    ghz_summary_metrics,
    load_ghz_summaries,
    load_measurements,
    noisy_ghz_fidelity,
    scaling_table,
    simulate_measurements,
)
from .bell import (
    MeasurementSettings,
    MkClosedForm,
    SignedPauliSum,
    bell_operator_from_words,
    graph_bell_operator,
    mk_closed_form,
    mk_pauli_expansion,
    mk_recursive,
    operator_expectation,
)
from .errors import (
    CapacityError,
    ContractError,
    DimensionError,
    GraphBellError,
    NumericalError,
    PauliParseError,
    ValidationError,
)
from .graphs import Graph, lc_equivalent, local_complement, make_named_graph
from .lhv import (
    LhvAssignment,
    LhvBound,
    ghz_graph_bound,
    lhv_max,
    lhv_value,
    mk_bound,
    mk_bound_bruteforce,
    product_bound,
)
from .noise import (
    NoiseSpec,
    ShotEstimate,
    depolarize_all,
    depolarize_qubit,
    ghz_state,
    noisy_ghz_mk,
    sample_expectation,
    subseed,
)
from .pauli import (
    DensityMatrix,
    PauliString,
    StateVector,
    format_pauli,
    parse_pauli,
    pauli_commutes,
    pauli_expectation,
    pauli_multiply,
    pauli_to_matrix,
)
from .presets import (
    PresetSpec,
    preset_bell_operator,
    preset_bound,
    preset_stabilizer_elements,
    preset_state,
    resolve_graph_arg,
)
from .stabilizer import (
    StabilizerElement,
    apply_local_unitaries,
    conjugate_by_local_words,
    graph_generators,
    graph_state_vector,
    local_complement_words,
    stabilizer_group,
)

__version__ = "0.1.0"
