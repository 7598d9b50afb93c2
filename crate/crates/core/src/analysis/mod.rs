//! Graph- and syntax-level analyses of derived automata.

mod exits;
mod oc;
mod properties;
mod random;
mod scc;

pub use exits::{
    alive_exit_states, exit_equivalent, exit_transitions, normed_exit_transitions, normed_mask,
    normed_states, ExitAnalysis, ExitTransition,
};
pub use oc::{oc_measure, AnalysisError};
pub use properties::{
    check_bpa_property, check_pa_property, Property, PropertyReport, Verdict, Witness, WitnessKind,
};
pub use random::{generate_random_expression, random_expression};
pub use scc::{scc_decompose, SccDecomposition};
