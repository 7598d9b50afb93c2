//! Regular process expressions with sequential composition, choice, Kleene
//! star, interleaving, communication and encapsulation.
//!
//! Expressions are parsed by [`syntax`], given an operational semantics and
//! turned into finite automata by [`semantics`], and analysed by
//! [`analysis`] (strongly connected components, exit transitions, structural
//! properties). [`equivalence`] decides bisimilarity and isomorphism, and
//! [`encoding`] expresses any finite automaton as an expression.

pub mod analysis;
pub mod cli;
pub mod encoding;
pub mod equivalence;
pub mod lemmas;
pub mod semantics;
pub mod syntax;

pub use semantics::{derive, derive_automaton, Automaton, DEFAULT_MAX_STATES};
pub use syntax::{parse_expression, render_expression, Action, CommFn, Expression, Theory};
