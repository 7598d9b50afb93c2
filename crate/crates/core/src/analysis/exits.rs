use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::scc::{scc_decompose, SccDecomposition};
use crate::semantics::Automaton;
use crate::syntax::Action;

/// A transition `(action, target)` whose target lies outside the SCC of its
/// source.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExitTransition {
    pub action: Action,
    pub target: usize,
}

/// States from which a terminating state is reachable, as a mask.
pub fn normed_mask(a: &Automaton) -> Vec<bool> {
    let preds = a.predecessors();
    let mut normed = vec![false; a.num_states()];
    let mut queue: VecDeque<usize> = a.terminating_states().into_iter().collect();
    for &s in &queue {
        normed[s] = true;
    }
    while let Some(s) = queue.pop_front() {
        for &p in &preds[s] {
            if !normed[p] {
                normed[p] = true;
                queue.push_back(p);
            }
        }
    }
    normed
}

pub fn normed_states(a: &Automaton) -> BTreeSet<usize> {
    normed_mask(a)
        .into_iter()
        .enumerate()
        .filter_map(|(s, n)| n.then_some(s))
        .collect()
}

/// `Ext(s)`: all transitions from `s` leaving its SCC.
pub fn exit_transitions(a: &Automaton, d: &SccDecomposition, s: usize) -> BTreeSet<ExitTransition> {
    a.outgoing(s)
        .iter()
        .filter(|t| !d.same_component(s, t.to))
        .map(|t| ExitTransition {
            action: t.action.clone(),
            target: t.to,
        })
        .collect()
}

/// `Extn(s)`: the exit transitions of `s` whose target is normed.
pub fn normed_exit_transitions(
    a: &Automaton,
    d: &SccDecomposition,
    s: usize,
) -> BTreeSet<ExitTransition> {
    ExitAnalysis::with_decomposition(a, d.clone()).normed_exits(s)
}

/// Members of `scc` that terminate or have a normed exit transition.
pub fn alive_exit_states(a: &Automaton, d: &SccDecomposition, scc: usize) -> BTreeSet<usize> {
    ExitAnalysis::with_decomposition(a, d.clone()).alive_exit_states(scc)
}

/// `(a, s) ~ (b, t)` iff `a == b` and `s`, `t` share an SCC.
pub fn exit_equivalent(e1: (&Action, usize), e2: (&Action, usize), d: &SccDecomposition) -> bool {
    e1.0 == e2.0 && d.same_component(e1.1, e2.1)
}

/// Cached SCC and normedness information for repeated exit queries.
#[derive(Clone, Debug)]
pub struct ExitAnalysis<'a> {
    pub automaton: &'a Automaton,
    pub scc: SccDecomposition,
    pub normed: Vec<bool>,
}

impl<'a> ExitAnalysis<'a> {
    pub fn new(automaton: &'a Automaton) -> Self {
        Self::with_decomposition(automaton, scc_decompose(automaton))
    }

    pub fn with_decomposition(automaton: &'a Automaton, scc: SccDecomposition) -> Self {
        ExitAnalysis {
            automaton,
            normed: normed_mask(automaton),
            scc,
        }
    }

    pub fn exits(&self, s: usize) -> BTreeSet<ExitTransition> {
        exit_transitions(self.automaton, &self.scc, s)
    }

    pub fn normed_exits(&self, s: usize) -> BTreeSet<ExitTransition> {
        self.automaton
            .outgoing(s)
            .iter()
            .filter(|t| !self.scc.same_component(s, t.to) && self.normed[t.to])
            .map(|t| ExitTransition {
                action: t.action.clone(),
                target: t.to,
            })
            .collect()
    }

    pub fn is_alive(&self, s: usize) -> bool {
        self.automaton.is_terminating(s) || !self.normed_exits(s).is_empty()
    }

    pub fn alive_exit_states(&self, scc: usize) -> BTreeSet<usize> {
        self.scc
            .members(scc)
            .iter()
            .copied()
            .filter(|&s| self.is_alive(s))
            .collect()
    }

    /// `Extn(s)` modulo `~`: each exit as (action, target SCC).
    pub fn normed_exit_classes(&self, s: usize) -> BTreeSet<(Action, usize)> {
        self.normed_exits(s)
            .into_iter()
            .map(|e| (e.action, self.scc.component_of(e.target)))
            .collect()
    }

    /// `{(a, label), ...}` for reports.
    pub fn render_exits(&self, exits: &BTreeSet<ExitTransition>) -> String {
        let parts: Vec<String> = exits
            .iter()
            .map(|e| format!("({}, {})", e.action, self.automaton.display_label(e.target)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}
