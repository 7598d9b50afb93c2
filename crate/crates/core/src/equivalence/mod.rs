//! Strong bisimilarity, bisimulation quotients and automaton isomorphism.

mod bisim;
mod iso;

pub use bisim::{bisimilar, check_bisimulation, minimize, BisimResult};
pub use iso::{isomorphic, IsoResult};
