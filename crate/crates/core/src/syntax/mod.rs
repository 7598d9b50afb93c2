//! Abstract syntax of process expressions.
//!
//! The language has eight constructors: deadlock `0`, the empty process `1`,
//! actions, sequential composition `.`, alternative composition `+`, unary
//! Kleene star `*`, parallel composition `||` and encapsulation
//! `encap{a,b}(p)`. See [`parse_expression`] for the concrete grammar.

mod comm;
mod parser;
mod render;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use comm::{validate_comm_fn, CommError, CommFn, CommReport, CommViolation};
pub use parser::{parse_expression, ParseError};
pub use render::render_expression;

/// Words that may not be used as action names.
pub const RESERVED: &[&str] = &["encap"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid action name {0:?}: expected [A-Za-z_][A-Za-z0-9_]* and not a reserved word")]
pub struct InvalidAction(pub String);

/// An action name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Action(Arc<str>);

impl Action {
    pub fn new(name: &str) -> Result<Self, InvalidAction> {
        if is_identifier(name) && !RESERVED.contains(&name) {
            Ok(Action(Arc::from(name)))
        } else {
            Err(InvalidAction(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Action {
    type Err = InvalidAction;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Action::new(s)
    }
}

impl TryFrom<String> for Action {
    type Error = InvalidAction;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        Action::new(&value)
    }
}

impl From<Action> for String {
    fn from(value: Action) -> Self {
        value.0.to_string()
    }
}

/// A process expression.
///
/// Equality is structural: no simplification is ever applied, so
/// `1.a` and `a` are different expressions (and different states).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expression {
    Deadlock,
    Empty,
    Act(Action),
    Seq(Arc<Expression>, Arc<Expression>),
    Alt(Arc<Expression>, Arc<Expression>),
    Star(Arc<Expression>),
    Par(Arc<Expression>, Arc<Expression>),
    Encap(BTreeSet<Action>, Arc<Expression>),
}

impl Expression {
    pub fn act(a: Action) -> Self {
        Expression::Act(a)
    }

    pub fn seq(left: Expression, right: Expression) -> Self {
        Expression::Seq(Arc::new(left), Arc::new(right))
    }

    pub fn alt(left: Expression, right: Expression) -> Self {
        Expression::Alt(Arc::new(left), Arc::new(right))
    }

    pub fn star(body: Expression) -> Self {
        Expression::Star(Arc::new(body))
    }

    pub fn par(left: Expression, right: Expression) -> Self {
        Expression::Par(Arc::new(left), Arc::new(right))
    }

    pub fn encap(blocked: BTreeSet<Action>, body: Expression) -> Self {
        Expression::Encap(blocked, Arc::new(body))
    }

    /// Left-associated `+`-chain; the empty sum is `0`.
    pub fn sum<I: IntoIterator<Item = Expression>>(terms: I) -> Self {
        terms
            .into_iter()
            .reduce(Expression::alt)
            .unwrap_or(Expression::Deadlock)
    }

    /// Left-associated `||`-chain. `None` for an empty iterator.
    pub fn par_chain<I: IntoIterator<Item = Expression>>(terms: I) -> Option<Self> {
        terms.into_iter().reduce(Expression::par)
    }

    pub fn is_star(&self) -> bool {
        matches!(self, Expression::Star(_))
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expression::Deadlock | Expression::Empty | Expression::Act(_) => 1,
            Expression::Star(p) | Expression::Encap(_, p) => 1 + p.size(),
            Expression::Seq(p, q) | Expression::Alt(p, q) | Expression::Par(p, q) => {
                1 + p.size() + q.size()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expression::Deadlock | Expression::Empty | Expression::Act(_) => 0,
            Expression::Star(p) | Expression::Encap(_, p) => 1 + p.depth(),
            Expression::Seq(p, q) | Expression::Alt(p, q) | Expression::Par(p, q) => {
                1 + p.depth().max(q.depth())
            }
        }
    }

    /// All actions occurring in the expression, including encapsulation sets.
    pub fn actions(&self) -> BTreeSet<Action> {
        let mut out = BTreeSet::new();
        self.collect_actions(&mut out);
        out
    }

    fn collect_actions(&self, out: &mut BTreeSet<Action>) {
        match self {
            Expression::Deadlock | Expression::Empty => {}
            Expression::Act(a) => {
                out.insert(a.clone());
            }
            Expression::Star(p) => p.collect_actions(out),
            Expression::Encap(h, p) => {
                out.extend(h.iter().cloned());
                p.collect_actions(out);
            }
            Expression::Seq(p, q) | Expression::Alt(p, q) | Expression::Par(p, q) => {
                p.collect_actions(out);
                q.collect_actions(out);
            }
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_expression(self))
    }
}

impl FromStr for Expression {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expression(s)
    }
}

/// The three nested expression classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    /// Regular expressions: no `||`, no `encap`.
    Bpa,
    /// Adds `||`.
    Pa,
    /// Adds `encap`.
    Acp,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Bpa => "BPA",
            Theory::Pa => "PA",
            Theory::Acp => "ACP",
        })
    }
}

/// The smallest class containing `e`.
pub fn classify_theory(e: &Expression) -> Theory {
    match e {
        Expression::Deadlock | Expression::Empty | Expression::Act(_) => Theory::Bpa,
        Expression::Star(p) => classify_theory(p),
        Expression::Seq(p, q) | Expression::Alt(p, q) => classify_theory(p).max(classify_theory(q)),
        Expression::Par(p, q) => Theory::Pa.max(classify_theory(p)).max(classify_theory(q)),
        Expression::Encap(..) => Theory::Acp,
    }
}
