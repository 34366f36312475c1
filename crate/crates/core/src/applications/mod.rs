//! Worked syntheses, each paired with its exact target.

pub mod beam_splitter;
pub mod dynamics;
pub mod gate;
pub mod hamiltonian;
pub mod hubbard;
pub mod registry;
pub mod rotation;
pub mod span01;
pub mod state_prep;

pub use beam_splitter::{
    conditional_beam_splitter, conditional_beam_splitter_generator, coincidence_probability, hom_exact_dynamics,
    hom_initial_state, hom_observables, hom_synthesized_dynamics, hopping,
};
pub use dynamics::{evolve, evolve_with, DynamicsTrace, Observables};
pub use gate::{
    combine, commutator_exponential, local_primitive, nested_commutator_exponential, Combine, CommutatorFormula,
    ExactTarget, Operand, Recipe, SynthesizedGate,
};
pub use hamiltonian::{kerr_encoding, nonlinear_hamiltonian, nonlinear_timeslice, number_encoding, NonlinearParams};
pub use hubbard::{
    cross_kerr, cross_kerr_generator, fermi_hubbard_gates, fswap, fswap_factors, span_conditional_beam_splitter,
    span_conditional_beam_splitter_generator, span_hopping_generator, span_indices, FermiHubbardGates,
};
pub use registry::{AppParams, ApplicationSpec, CombineChoice, Construction, FormulaChoice, Registry};
pub use rotation::{
    conditional_rotation_fock, conditional_rotation_generator, conditional_rotation_phase_space, ground_fock_state,
    rotation_autocorrelation,
};
pub use span01::{
    anharmonicity_gate, anharmonicity_generator, effective_pauli, effective_pauli_decomposition,
    effective_pauli_span01, EffectiveAxis,
};
pub use state_prep::{
    excited_fock_state, benchmark_t2_plan, heatmap, heatmap_matches, protected_generator, state_prep_exact_time,
    state_prep_protected, state_prep_t, state_prep_t2, success_probability_bound, transition_modulus,
    ProtectedPlan, SuccessReport,
};
