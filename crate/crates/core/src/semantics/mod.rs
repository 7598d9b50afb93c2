//! Operational semantics: the termination predicate, the transition
//! relation, and the finite automaton reachable from an expression.

mod automaton;

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use thiserror::Error;

pub use automaton::{Automaton, AutomatonError, State, Transition};

use crate::syntax::{render_expression, Action, CommFn, Expression};

pub const DEFAULT_MAX_STATES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("state limit exceeded: more than {limit} reachable states")]
    StateLimitExceeded { limit: usize },
}

/// Whether `e` can terminate successfully.
pub fn terminates(e: &Expression) -> bool {
    match e {
        Expression::Deadlock | Expression::Act(_) => false,
        Expression::Empty | Expression::Star(_) => true,
        Expression::Alt(p, q) => terminates(p) || terminates(q),
        Expression::Seq(p, q) | Expression::Par(p, q) => terminates(p) && terminates(q),
        Expression::Encap(_, p) => terminates(p),
    }
}

/// All `(a, e')` with `e -a-> e'`.
///
/// `g` only matters for parallel compositions; pass [`CommFn::empty`] for
/// pure interleaving.
pub fn step(e: &Expression, g: &CommFn) -> BTreeSet<(Action, Expression)> {
    let mut out = BTreeSet::new();
    step_into(e, g, &mut out);
    out
}

fn step_into(e: &Expression, g: &CommFn, out: &mut BTreeSet<(Action, Expression)>) {
    match e {
        Expression::Deadlock | Expression::Empty => {}
        Expression::Act(a) => {
            out.insert((a.clone(), Expression::Empty));
        }
        Expression::Alt(p, q) => {
            step_into(p, g, out);
            step_into(q, g, out);
        }
        Expression::Seq(p, q) => {
            for (a, p1) in step(p, g) {
                out.insert((a, Expression::Seq(Arc::new(p1), q.clone())));
            }
            if terminates(p) {
                step_into(q, g, out);
            }
        }
        Expression::Star(p) => {
            let this = Arc::new(e.clone());
            for (a, p1) in step(p, g) {
                out.insert((a, Expression::Seq(Arc::new(p1), this.clone())));
            }
        }
        Expression::Par(p, q) => {
            let left = step(p, g);
            let right = step(q, g);
            for (a, p1) in &left {
                out.insert((a.clone(), Expression::Par(Arc::new(p1.clone()), q.clone())));
            }
            for (b, q1) in &right {
                out.insert((b.clone(), Expression::Par(p.clone(), Arc::new(q1.clone()))));
            }
            if !g.is_empty() {
                for (a, p1) in &left {
                    for (b, q1) in &right {
                        if let Some(c) = g.lookup(a, b) {
                            out.insert((
                                c.clone(),
                                Expression::Par(Arc::new(p1.clone()), Arc::new(q1.clone())),
                            ));
                        }
                    }
                }
            }
        }
        Expression::Encap(h, p) => {
            for (a, p1) in step(p, g) {
                if !h.contains(&a) {
                    out.insert((a, Expression::Encap(h.clone(), Arc::new(p1))));
                }
            }
        }
    }
}

/// A derived automaton together with the expression behind each state.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub automaton: Automaton,
    pub expressions: Vec<Expression>,
}

impl Derivation {
    /// Index of the state whose expression is `e`, if reachable.
    pub fn state_of(&self, e: &Expression) -> Option<usize> {
        self.expressions.iter().position(|x| x == e)
    }
}

/// Breadth-first closure of [`step`] from `e`.
///
/// States are numbered in discovery order; successors of each state are
/// visited sorted by action name, then by rendered target, so the result is
/// fully deterministic. Each state is labelled with its rendered expression.
pub fn derive(e: &Expression, g: &CommFn, max_states: usize) -> Result<Derivation, SemanticsError> {
    if max_states == 0 {
        return Err(SemanticsError::StateLimitExceeded { limit: 0 });
    }
    let mut index: HashMap<Expression, usize> = HashMap::new();
    let mut expressions = vec![e.clone()];
    let mut labels = vec![render_expression(e)];
    index.insert(e.clone(), 0);
    let mut transitions = Vec::new();

    let mut next = 0;
    while next < expressions.len() {
        let mut succ: Vec<(Action, String, Expression)> = step(&expressions[next], g)
            .into_iter()
            .map(|(a, t)| {
                let label = match index.get(&t) {
                    Some(&id) => labels[id].clone(),
                    None => render_expression(&t),
                };
                (a, label, t)
            })
            .collect();
        succ.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
        for (action, label, target) in succ {
            let to = match index.get(&target) {
                Some(&id) => id,
                None => {
                    if expressions.len() >= max_states {
                        return Err(SemanticsError::StateLimitExceeded { limit: max_states });
                    }
                    let id = expressions.len();
                    index.insert(target.clone(), id);
                    expressions.push(target);
                    labels.push(label);
                    id
                }
            };
            transitions.push(Transition {
                from: next,
                action,
                to,
            });
        }
        next += 1;
    }

    let states = expressions
        .iter()
        .zip(labels)
        .map(|(x, label)| State {
            label: Some(label),
            terminating: terminates(x),
        })
        .collect();
    let automaton = Automaton::new(states, 0, transitions).expect("derived indices are valid");
    Ok(Derivation {
        automaton,
        expressions,
    })
}

/// The automaton of `e`; see [`derive`].
pub fn derive_automaton(
    e: &Expression,
    g: &CommFn,
    max_states: usize,
) -> Result<Automaton, SemanticsError> {
    derive(e, g, max_states).map(|d| d.automaton)
}
