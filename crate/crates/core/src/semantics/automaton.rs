use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::Action;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("automaton has no states")]
    NoStates,
    #[error("initial state {0} out of range")]
    BadInitial(usize),
    #[error("transition {from} -{action}-> {to} references a missing state")]
    BadTransition {
        from: usize,
        action: Action,
        to: usize,
    },
    #[error("state ids must be exactly 0..{0}")]
    BadStateIds(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transition {
    pub from: usize,
    pub action: Action,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State {
    pub label: Option<String>,
    pub terminating: bool,
}

/// A finite labelled transition system with a termination predicate and an
/// initial state. Transitions are kept sorted by `(from, action, to)`
/// without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AutomatonJson", into = "AutomatonJson")]
pub struct Automaton {
    states: Vec<State>,
    initial: usize,
    transitions: Vec<Transition>,
    // transitions[offsets[s]..offsets[s + 1]] leave state s
    offsets: Vec<usize>,
}

impl Automaton {
    pub fn new(
        states: Vec<State>,
        initial: usize,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Result<Self, AutomatonError> {
        if states.is_empty() {
            return Err(AutomatonError::NoStates);
        }
        if initial >= states.len() {
            return Err(AutomatonError::BadInitial(initial));
        }
        let set: BTreeSet<Transition> = transitions.into_iter().collect();
        if let Some(t) = set
            .iter()
            .find(|t| t.from >= states.len() || t.to >= states.len())
        {
            return Err(AutomatonError::BadTransition {
                from: t.from,
                action: t.action.clone(),
                to: t.to,
            });
        }
        let transitions: Vec<Transition> = set.into_iter().collect();
        let mut offsets = vec![0; states.len() + 1];
        for t in &transitions {
            offsets[t.from + 1] += 1;
        }
        for i in 0..states.len() {
            offsets[i + 1] += offsets[i];
        }
        Ok(Automaton {
            states,
            initial,
            transitions,
            offsets,
        })
    }

    /// Unlabelled automaton from `(from, action, to)` triples; handy in tests.
    pub fn from_parts(
        num_states: usize,
        initial: usize,
        terminating: &[usize],
        transitions: &[(usize, &str, usize)],
    ) -> Result<Self, AutomatonError> {
        let states = (0..num_states)
            .map(|i| State {
                label: None,
                terminating: terminating.contains(&i),
            })
            .collect();
        let mut ts = Vec::with_capacity(transitions.len());
        for &(from, a, to) in transitions {
            let action = Action::new(a).expect("valid action name");
            ts.push(Transition { from, action, to });
        }
        Automaton::new(states, initial, ts)
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn is_terminating(&self, s: usize) -> bool {
        self.states[s].terminating
    }

    pub fn terminating_states(&self) -> BTreeSet<usize> {
        (0..self.num_states())
            .filter(|&s| self.is_terminating(s))
            .collect()
    }

    pub fn label(&self, s: usize) -> Option<&str> {
        self.states[s].label.as_deref()
    }

    /// The state's label, or `s<id>` when it has none.
    pub fn display_label(&self, s: usize) -> String {
        match self.label(s) {
            Some(l) => l.to_string(),
            None => format!("s{s}"),
        }
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Outgoing transitions of `s`, sorted by `(action, to)`.
    pub fn outgoing(&self, s: usize) -> &[Transition] {
        &self.transitions[self.offsets[s]..self.offsets[s + 1]]
    }

    pub fn has_transition(&self, from: usize, action: &str, to: usize) -> bool {
        self.outgoing(from)
            .iter()
            .any(|t| t.to == to && t.action.name() == action)
    }

    pub fn actions(&self) -> BTreeSet<Action> {
        self.transitions.iter().map(|t| t.action.clone()).collect()
    }

    /// Reverse adjacency: `preds[s]` lists the sources of transitions into `s`.
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut preds = vec![Vec::new(); self.num_states()];
        for t in &self.transitions {
            preds[t.to].push(t.from);
        }
        preds
    }

    /// States reachable from `s` (including `s`), as a membership vector.
    pub fn reachable_from(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            for t in self.outgoing(u) {
                if !seen[t.to] {
                    seen[t.to] = true;
                    queue.push_back(t.to);
                }
            }
        }
        seen
    }

    pub fn all_reachable(&self) -> bool {
        self.reachable_from(self.initial).iter().all(|&r| r)
    }

    /// Same automaton with states renumbered by `perm[old] = new`.
    pub fn permuted(&self, perm: &[usize]) -> Automaton {
        assert_eq!(perm.len(), self.num_states());
        let mut states = vec![
            State {
                label: None,
                terminating: false
            };
            self.num_states()
        ];
        for (old, st) in self.states.iter().enumerate() {
            states[perm[old]] = st.clone();
        }
        let transitions = self.transitions.iter().map(|t| Transition {
            from: perm[t.from],
            action: t.action.clone(),
            to: perm[t.to],
        });
        Automaton::new(states, perm[self.initial], transitions).expect("permutation is valid")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("automaton serialises");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Graphviz rendering. Terminating states are double circles; the
    /// initial state gets an arrow from an invisible point node.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph automaton {\n  rankdir=LR;\n  __start [shape=point];\n");
        for (i, st) in self.states.iter().enumerate() {
            let shape = if st.terminating {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(
                out,
                "  {i} [label=\"{}\", shape={shape}];",
                dot_escape(&self.display_label(i))
            );
        }
        let _ = writeln!(out, "  __start -> {};", self.initial);
        for t in &self.transitions {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{}\"];",
                t.from,
                t.to,
                dot_escape(t.action.name())
            );
        }
        out.push_str("}\n");
        out
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[derive(Serialize, Deserialize)]
struct StateJson {
    id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    terminating: bool,
}

#[derive(Serialize, Deserialize)]
struct AutomatonJson {
    states: Vec<StateJson>,
    initial: usize,
    transitions: Vec<Transition>,
}

impl From<Automaton> for AutomatonJson {
    fn from(a: Automaton) -> Self {
        AutomatonJson {
            states: a
                .states
                .into_iter()
                .enumerate()
                .map(|(id, st)| StateJson {
                    id,
                    label: st.label,
                    terminating: st.terminating,
                })
                .collect(),
            initial: a.initial,
            transitions: a.transitions,
        }
    }
}

impl TryFrom<AutomatonJson> for Automaton {
    type Error = AutomatonError;

    fn try_from(mut j: AutomatonJson) -> Result<Self, Self::Error> {
        j.states.sort_by_key(|s| s.id);
        let n = j.states.len();
        if j.states.iter().enumerate().any(|(i, s)| s.id != i) {
            return Err(AutomatonError::BadStateIds(n));
        }
        let states = j
            .states
            .into_iter()
            .map(|s| State {
                label: s.label,
                terminating: s.terminating,
            })
            .collect();
        Automaton::new(states, j.initial, j.transitions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Automaton {
        Automaton::from_parts(
            3,
            0,
            &[2],
            &[(1, "b", 2), (0, "a", 1), (0, "a", 1), (1, "a", 0)],
        )
        .unwrap()
    }

    #[test]
    fn sorts_and_dedups() {
        let a = sample();
        assert_eq!(a.transitions().len(), 3);
        assert_eq!(a.outgoing(0).len(), 1);
        assert_eq!(a.outgoing(1).len(), 2);
        assert_eq!(a.outgoing(1)[0].action.name(), "a");
        assert!(a.outgoing(2).is_empty());
        assert!(a.has_transition(1, "b", 2));
    }

    #[test]
    fn rejects_bad_indices() {
        assert_eq!(
            Automaton::from_parts(0, 0, &[], &[]),
            Err(AutomatonError::NoStates)
        );
        assert_eq!(
            Automaton::from_parts(2, 2, &[], &[]),
            Err(AutomatonError::BadInitial(2))
        );
        assert!(matches!(
            Automaton::from_parts(2, 0, &[], &[(0, "a", 5)]),
            Err(AutomatonError::BadTransition { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let a = sample();
        let text = a.to_json();
        assert_eq!(Automaton::from_json(&text).unwrap(), a);
        assert!(text.contains("\"initial\": 0"));
        assert!(!text.contains("label"));
        let bad = r#"{"states":[{"id":1,"terminating":false}],"initial":0,"transitions":[]}"#;
        assert!(Automaton::from_json(bad).is_err());
    }

    #[test]
    fn dot_marks_initial_and_final() {
        let dot = sample().to_dot();
        assert!(dot.contains("__start -> 0;"));
        assert!(dot.contains("2 [label=\"s2\", shape=doublecircle];"));
        assert!(dot.contains("0 -> 1 [label=\"a\"];"));
    }

    #[test]
    fn permutation_preserves_structure() {
        let a = sample();
        let b = a.permuted(&[2, 0, 1]);
        assert_eq!(b.initial(), 2);
        assert!(b.is_terminating(1));
        assert!(b.has_transition(2, "a", 0));
        assert!(b.has_transition(0, "b", 1));
    }
}
