"""Entropic uncertainty sums over mutually unbiased bases in dimensions 3-5.

Construction and verification of the complete MUB sets, Shannon-entropy
uncertainty sums with the tight-bound catalog, closed-form optimal-state
families, numerical bound certification by global minimization, and a
synthetic imperfect-POVM measurement chain with count statistics.
"""

from .entropy import (
    BoundCatalogEntry,
    EntropyReport,
    ProbabilityVector,
    bound_lookup,
    born_probabilities,
    entropy_sum,
    maassen_uffink_bound,
    shannon_entropy,
)
from .exceptions import (
    BoundViolationError,
    ClassificationAmbiguousError,
    ConfigError,
    DimensionError,
    EurlabError,
    InvalidProbabilityError,
    InvalidStateError,
    NonConvergenceError,
    PovmError,
    RefinementRejectedError,
    SelectionError,
)
from .minimizer import (
    CertifiedBound,
    MinimizationConfig,
    ScanResult,
    classify_all_d5_triples,
    classify_d5_triple,
    d5_triple_class,
    minimize_entropy_sum,
    parametrize_state,
    scan_exceedance,
    state_parameters,
)
from .optstates import (
    OptimalFamilySpec,
    catalog_states,
    external_eigenstates,
    internal_eigenstates,
    optimal_states_d3,
    optimal_states_d4_quadruple,
    optimal_states_d4_with_A,
    optimal_states_d4_without_A,
    optimal_states_d5,
    refine_optimal_state,
)
from .povmsim import (
    CountRecord,
    Povm,
    SpreadEstimate,
    apply_povm,
    build_crosstalk_povm,
    build_ideal_povm,
    estimate_entropy,
    monte_carlo_spread,
    predicted_entropy_sum,
    simulate_counts,
)
from .qstate import (
    Basis,
    MubSet,
    PureState,
    basis_state,
    build_computational_basis,
    build_full_mub_set,
    check_mutually_unbiased,
    full_set_labels,
    random_state,
    select_subset,
)

__version__ = "0.1.0"
