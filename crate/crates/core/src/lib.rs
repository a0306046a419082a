//! Two-state-vector computations for particles distributed over two boxes.
//!
//! A system is preselected in `|in⟩` and postselected in `|f⟩`. For any
//! intermediate projector `Π` the crate computes the ABL amplitude
//! `⟨f|Π|in⟩`, ABL probabilities over a complete measurement, weak values
//! `⟨f|Π|in⟩ / ⟨f|in⟩`, detailed (incoherent) and global (coherent)
//! probabilities of a set of outcomes, and transition elements `⟨f|H|in⟩`.
//!
//! ```
//! use tsvf::{abl_amplitude, build_projector, tensor, PrePostSelection, ProjectorKind, ProjectorSpec, SingleState};
//!
//! let plus = SingleState::Plus.ket().unwrap();
//! let plus_i = SingleState::PlusI.ket().unwrap();
//! let sel = PrePostSelection::new(
//!     tensor(&[plus.clone(), plus.clone(), plus]).unwrap(),
//!     tensor(&[plus_i.clone(), plus_i.clone(), plus_i]).unwrap(),
//! )
//! .unwrap();
//! let same12 = build_projector(&ProjectorSpec::new(ProjectorKind::pair_same(1, 2), 3).unwrap());
//! assert!(abl_amplitude(&sel, &same12).unwrap().norm() < 1e-12);
//! ```

pub mod engine;
pub mod error;
pub mod hilbert;
pub mod projector;
pub mod scenario;

pub use engine::{
    abl_amplitude, abl_probabilities, detailed_probability, global_probability, transition_element, weak_value,
    weak_value_sum, AblResult, Evaluator, MeasurementSet, PrePostSelection, WeakValueSum,
};
pub use error::{Error, Result};
pub use hilbert::{
    apply, inner, is_eigenstate, is_eigenstate_within, matrix_element, tensor, Amplitude, BasisLabel, Ket, Labeling,
    Operator, Side, SingleState, StateVector, MAX_PARTICLES, ZERO_TOLERANCE,
};
pub use projector::{
    are_orthogonal, are_orthogonal_within, build_hamiltonian, build_projector, is_projector, is_projector_within,
    is_resolution_of_identity, is_resolution_of_identity_within, HamiltonianSpec, HamiltonianTerm,
    ProjectorDiagnostics, ProjectorKind, ProjectorSpec, Relabel,
};
pub use scenario::{
    builtin_scenarios, lookup, run_scenario, AmplitudeValue, Category, KetSpec, OperatorSpec, Outcome, PredicateQuery,
    Preset, Query, QueryRecord, QuerySpec, Scenario, ScenarioReport, StateSpec, TermSpec,
};
