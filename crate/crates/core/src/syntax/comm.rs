use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Action;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("inconsistent rules for {a} {b}: -> {first} and -> {second}")]
    Inconsistent {
        a: Action,
        b: Action,
        first: Action,
        second: Action,
    },
}

/// A finite, partial communication function.
///
/// Rules are keyed on unordered pairs, so `lookup(a, b) == lookup(b, a)`
/// always holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommFn {
    table: BTreeMap<(Action, Action), Action>,
}

fn key(a: &Action, b: &Action) -> (Action, Action) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

impl CommFn {
    /// The everywhere-undefined function (pure interleaving).
    pub fn empty() -> Self {
        CommFn::default()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    /// Adds `a b -> result`. Re-adding an identical rule is a no-op.
    pub fn insert(&mut self, a: Action, b: Action, result: Action) -> Result<(), CommError> {
        let k = key(&a, &b);
        match self.table.get(&k) {
            Some(existing) if *existing != result => Err(CommError::Inconsistent {
                a: k.0,
                b: k.1,
                first: existing.clone(),
                second: result,
            }),
            Some(_) => Ok(()),
            None => {
                self.table.insert(k, result);
                Ok(())
            }
        }
    }

    pub fn lookup(&self, a: &Action, b: &Action) -> Option<&Action> {
        self.table.get(&key(a, b))
    }

    /// Rules as `(a, b, result)` with `a <= b`, in sorted order.
    pub fn rules(&self) -> impl Iterator<Item = (&Action, &Action, &Action)> {
        self.table.iter().map(|((a, b), c)| (a, b, c))
    }

    /// Every action mentioned as an argument or a result.
    pub fn domain(&self) -> BTreeSet<Action> {
        let mut out = BTreeSet::new();
        for (a, b, c) in self.rules() {
            out.insert(a.clone());
            out.insert(b.clone());
            out.insert(c.clone());
        }
        out
    }

    /// Reads the line format `a b -> c`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, CommError> {
        let mut g = CommFn::empty();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fail = |message: String| CommError::Parse { line, message };
            let (lhs, rhs) = content
                .split_once("->")
                .ok_or_else(|| fail("expected `a b -> c`".into()))?;
            let args: Vec<&str> = lhs.split_whitespace().collect();
            let res: Vec<&str> = rhs.split_whitespace().collect();
            if args.len() != 2 || res.len() != 1 {
                return Err(fail("expected `a b -> c`".into()));
            }
            let act = |s: &str| Action::new(s).map_err(|e| fail(e.to_string()));
            g.insert(act(args[0])?, act(args[1])?, act(res[0])?)?;
        }
        Ok(g)
    }

    pub fn validate(&self) -> CommReport {
        validate_comm_fn(self)
    }
}

impl fmt::Display for CommFn {
    /// The line format read by [`CommFn::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b, c) in self.rules() {
            writeln!(f, "{a} {b} -> {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CommViolation {
    /// `γ(γ(a,b),c)` differs from `γ(a,γ(b,c))` (`None` = undefined).
    NotAssociative {
        a: Action,
        b: Action,
        c: Action,
        left: Option<Action>,
        right: Option<Action>,
    },
    /// `result` of some rule is itself an argument of the rule `pair`.
    NotHandshaking {
        result: Action,
        pair: (Action, Action),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommReport {
    pub commutative: bool,
    pub associative: bool,
    pub handshaking: bool,
    pub violations: Vec<CommViolation>,
}

pub fn validate_comm_fn(g: &CommFn) -> CommReport {
    let domain = g.domain();
    // only triples touching a defined pair can make the two sides differ
    let mut triples = BTreeSet::new();
    for (x, y, _) in g.rules() {
        for (a, b) in [(x, y), (y, x)] {
            for c in &domain {
                triples.insert((a.clone(), b.clone(), c.clone()));
                triples.insert((c.clone(), a.clone(), b.clone()));
            }
        }
    }
    let mut violations = Vec::new();
    for (a, b, c) in triples {
        let left = g.lookup(&a, &b).and_then(|ab| g.lookup(ab, &c)).cloned();
        let right = g.lookup(&b, &c).and_then(|bc| g.lookup(&a, bc)).cloned();
        if left != right {
            violations.push(CommViolation::NotAssociative {
                a,
                b,
                c,
                left,
                right,
            });
        }
    }
    let associative = violations.is_empty();

    let mut handshaking = true;
    let results: BTreeSet<&Action> = g.rules().map(|(_, _, c)| c).collect();
    for (a, b, _) in g.rules() {
        for arg in [a, b] {
            if results.contains(arg) {
                handshaking = false;
                violations.push(CommViolation::NotHandshaking {
                    result: arg.clone(),
                    pair: (a.clone(), b.clone()),
                });
            }
        }
    }

    CommReport {
        commutative: true,
        associative,
        handshaking,
        violations,
    }
}
