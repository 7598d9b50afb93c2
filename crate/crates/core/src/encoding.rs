//! Encoding of an arbitrary finite automaton as an expression with
//! communication and encapsulation whose derived automaton is isomorphic to
//! the original.
//!
//! Every state `s_i` becomes a parallel component
//!
//! ```text
//! p_i = 1.(enter_i.(L_i)*.X_i)*
//! ```
//!
//! where `L_i` sums the actions of the self-loops of `s_i` and `X_i` sums
//! `leave_k_j` over the transitions `s_i -a_k-> s_j` with `j != i`, plus `1`
//! when `s_i` terminates. Empty sums are `0`. The component holding control
//! is the one that has performed its `enter` step; handing control from `i`
//! to `j` with effect `a_k` is the communication `leave_k_j | enter_j = a_k`.
//! All control actions are encapsulated.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::equivalence::{isomorphic, IsoResult};
use crate::semantics::{derive, step, Automaton, SemanticsError};
use crate::syntax::{Action, CommFn, Expression};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// Fresh control actions for an automaton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControlAlphabet {
    /// `enter[i]` gains control for state `i`.
    pub enter: Vec<Action>,
    /// `leave[k][j]` hands control to state `j` with effect action `k`.
    pub leave: Vec<Vec<Action>>,
}

impl ControlAlphabet {
    pub fn all(&self) -> BTreeSet<Action> {
        self.enter
            .iter()
            .chain(self.leave.iter().flatten())
            .cloned()
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct EncodingResult {
    /// `encap{C}(p_0 || ... || p_m' || ... || p_n)`, `m` the initial state.
    pub expression: Expression,
    pub gamma: CommFn,
    /// `p_i` for every state `i`.
    pub components: Vec<Expression>,
    /// The initial state's component after its `enter` step.
    pub initial_component: Expression,
    /// Effect actions, indexed in sorted name order.
    pub actions: Vec<Action>,
    pub control: ControlAlphabet,
}

impl EncodingResult {
    pub fn action_index(&self) -> BTreeMap<Action, usize> {
        self.actions
            .iter()
            .enumerate()
            .map(|(k, a)| (a.clone(), k))
            .collect()
    }

    /// The global expression corresponding to state `i` of the input: all
    /// components idle except `i`, which holds control.
    pub fn state_expression(&self, i: usize) -> Result<Expression, EncodingError> {
        let entered = entered_component(&self.components[i], &self.gamma)?;
        let chain = self.components.iter().enumerate().map(|(j, p)| {
            if j == i {
                entered.clone()
            } else {
                p.clone()
            }
        });
        Ok(Expression::encap(
            self.control.all(),
            Expression::par_chain(chain).expect("at least one state"),
        ))
    }

    /// JSON manifest mapping states to their control action names.
    pub fn manifest(&self) -> Manifest {
        Manifest {
            actions: self.actions.iter().map(|a| a.to_string()).collect(),
            states: (0..self.components.len())
                .map(|i| ManifestState {
                    state: i,
                    enter: self.control.enter[i].to_string(),
                    leave: self
                        .actions
                        .iter()
                        .enumerate()
                        .map(|(k, a)| (a.to_string(), self.control.leave[k][i].to_string()))
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub actions: Vec<String>,
    pub states: Vec<ManifestState>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestState {
    pub state: usize,
    pub enter: String,
    /// Effect action name -> the `leave` action that transfers control
    /// into this state with that effect.
    pub leave: BTreeMap<String, String>,
}

fn fresh(base: String, taken: &mut BTreeSet<String>) -> Action {
    let mut name = base;
    while taken.contains(&name) {
        name.push('_');
    }
    taken.insert(name.clone());
    Action::new(&name).expect("generated names are identifiers")
}

/// The unique successor of an idle component, reached by its `enter` step.
fn entered_component(p: &Expression, gamma: &CommFn) -> Result<Expression, EncodingError> {
    let mut succ = step(p, gamma).into_iter();
    match (succ.next(), succ.next()) {
        (Some((_, q)), None) => Ok(q),
        _ => Err(EncodingError::InvalidAutomaton(
            "component does not have a unique enter step".into(),
        )),
    }
}

pub fn encode_fa(f: &Automaton) -> Result<EncodingResult, EncodingError> {
    if f.num_states() == 0 {
        return Err(EncodingError::InvalidAutomaton("no states".into()));
    }
    if !f.all_reachable() {
        return Err(EncodingError::InvalidAutomaton(
            "some states are unreachable from the initial state".into(),
        ));
    }
    let n = f.num_states();
    let actions: Vec<Action> = f.actions().into_iter().collect();
    let index: BTreeMap<&Action, usize> = actions.iter().enumerate().map(|(k, a)| (a, k)).collect();

    let mut taken: BTreeSet<String> = actions.iter().map(|a| a.to_string()).collect();
    let enter: Vec<Action> = (0..n)
        .map(|i| fresh(format!("enter_{i}"), &mut taken))
        .collect();
    let leave: Vec<Vec<Action>> = (0..actions.len())
        .map(|k| {
            (0..n)
                .map(|j| fresh(format!("leave_{k}_{j}"), &mut taken))
                .collect()
        })
        .collect();
    let control = ControlAlphabet { enter, leave };

    let mut gamma = CommFn::empty();
    for (k, a) in actions.iter().enumerate() {
        for j in 0..n {
            gamma
                .insert(
                    control.enter[j].clone(),
                    control.leave[k][j].clone(),
                    a.clone(),
                )
                .expect("control pairs are distinct");
        }
    }

    let components: Vec<Expression> = (0..n)
        .map(|i| {
            // outgoing transitions are sorted by (action, target); re-sort by
            // (k, j) for the leave sum
            let mut loops = BTreeSet::new();
            let mut exits = BTreeSet::new();
            for t in f.outgoing(i) {
                let k = index[&t.action];
                if t.to == i {
                    loops.insert(k);
                } else {
                    exits.insert((k, t.to));
                }
            }
            let loop_sum = Expression::sum(
                loops
                    .into_iter()
                    .map(|k| Expression::act(actions[k].clone())),
            );
            let leave_sum = Expression::sum(
                exits
                    .into_iter()
                    .map(|(k, j)| Expression::act(control.leave[k][j].clone())),
            );
            let handoff = if f.is_terminating(i) {
                Expression::alt(leave_sum, Expression::Empty)
            } else {
                leave_sum
            };
            let body = Expression::seq(
                Expression::seq(
                    Expression::act(control.enter[i].clone()),
                    Expression::star(loop_sum),
                ),
                handoff,
            );
            Expression::seq(Expression::Empty, Expression::star(body))
        })
        .collect();

    let initial_component = entered_component(&components[f.initial()], &gamma)?;
    let chain = components.iter().enumerate().map(|(i, p)| {
        if i == f.initial() {
            initial_component.clone()
        } else {
            p.clone()
        }
    });
    let expression = Expression::encap(
        control.all(),
        Expression::par_chain(chain).expect("at least one state"),
    );

    Ok(EncodingResult {
        expression,
        gamma,
        components,
        initial_component,
        actions,
        control,
    })
}

/// Encodes `f`, derives the automaton of the encoding, and checks it is
/// isomorphic to `f`. The mapping sends states of `f` to derived states.
pub fn verify_encoding(f: &Automaton, max_states: usize) -> Result<IsoResult, EncodingError> {
    let enc = encode_fa(f)?;
    let derived = derive(&enc.expression, &enc.gamma, max_states)?;
    Ok(isomorphic(f, &derived.automaton))
}
