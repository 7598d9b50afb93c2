//! Necessary conditions for an automaton to be denoted by an expression
//! without parallel composition (`bpa`) or without communication and
//! encapsulation (`pa`). A failing report proves non-expressibility; a
//! passing one proves nothing.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::exits::ExitAnalysis;
use crate::semantics::Automaton;
use crate::syntax::Action;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Bpa,
    Pa,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// Two alive exit states of a non-trivial SCC with different `Extn`.
    ExtnMismatch,
    /// Alive exit states of a non-trivial SCC that disagree on termination.
    TerminationMismatch,
    /// An SCC with alive exit states none of which is maximal modulo `~`.
    NoMaximalState,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub scc: usize,
    pub states: Vec<usize>,
    pub labels: Vec<String>,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: Property,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
}

impl PropertyReport {
    fn from_witnesses(property: Property, witnesses: Vec<Witness>) -> Self {
        let verdict = if witnesses.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        PropertyReport {
            property,
            verdict,
            witnesses,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.property {
            Property::Bpa => "bpa",
            Property::Pa => "pa",
        };
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        };
        writeln!(f, "property {name}: {verdict}")?;
        for w in &self.witnesses {
            let kind = match w.kind {
                WitnessKind::ExtnMismatch => "extn-mismatch",
                WitnessKind::TerminationMismatch => "termination-mismatch",
                WitnessKind::NoMaximalState => "no-maximal-state",
            };
            writeln!(f, "  scc {} ({kind}): {}", w.scc, w.labels.join(", "))?;
            for d in &w.details {
                writeln!(f, "    {d}")?;
            }
        }
        Ok(())
    }
}

fn labels(ctx: &ExitAnalysis<'_>, states: &[usize]) -> Vec<String> {
    states
        .iter()
        .map(|&s| ctx.automaton.display_label(s))
        .collect()
}

/// In every non-trivial SCC, all alive exit states must have the same
/// normed exit transitions. Agreement of their termination flags is checked
/// too and reported under its own witness kind.
pub fn check_bpa_property(a: &Automaton) -> PropertyReport {
    let ctx = ExitAnalysis::new(a);
    let mut witnesses = Vec::new();
    for c in ctx.scc.nontrivial_components() {
        let alive: Vec<usize> = ctx.alive_exit_states(c).into_iter().collect();
        if alive.len() < 2 {
            continue;
        }
        let extn: Vec<_> = alive.iter().map(|&s| ctx.normed_exits(s)).collect();
        if extn.iter().any(|e| *e != extn[0]) {
            witnesses.push(Witness {
                kind: WitnessKind::ExtnMismatch,
                scc: c,
                states: alive.clone(),
                labels: labels(&ctx, &alive),
                details: alive
                    .iter()
                    .zip(&extn)
                    .map(|(&s, e)| {
                        format!("Extn({}) = {}", a.display_label(s), ctx.render_exits(e))
                    })
                    .collect(),
            });
        }
        let term: Vec<bool> = alive.iter().map(|&s| a.is_terminating(s)).collect();
        if term.iter().any(|&t| t != term[0]) {
            witnesses.push(Witness {
                kind: WitnessKind::TerminationMismatch,
                scc: c,
                states: alive.clone(),
                labels: labels(&ctx, &alive),
                details: alive
                    .iter()
                    .zip(&term)
                    .map(|(&s, t)| format!("terminates({}) = {t}", a.display_label(s)))
                    .collect(),
            });
        }
    }
    PropertyReport::from_witnesses(Property::Bpa, witnesses)
}

/// Every SCC with an alive exit state must contain a maximal one: an alive
/// exit state whose normed exits cover, up to `~`, those of every other
/// alive exit state of the SCC.
pub fn check_pa_property(a: &Automaton) -> PropertyReport {
    let ctx = ExitAnalysis::new(a);
    let mut witnesses = Vec::new();
    for c in ctx.scc.components() {
        let alive: Vec<usize> = ctx.alive_exit_states(c).into_iter().collect();
        if alive.is_empty() {
            continue;
        }
        let classes: Vec<BTreeSet<(Action, usize)>> =
            alive.iter().map(|&s| ctx.normed_exit_classes(s)).collect();
        let required: BTreeSet<(Action, usize)> = classes.iter().flatten().cloned().collect();
        if classes.iter().any(|cl| cl.is_superset(&required)) {
            continue;
        }
        let render = |set: &BTreeSet<(Action, usize)>| {
            let parts: Vec<String> = set
                .iter()
                .map(|(act, scc)| format!("({act}, C{scc})"))
                .collect();
            format!("{{{}}}", parts.join(", "))
        };
        let mut details: Vec<String> = alive
            .iter()
            .zip(&classes)
            .map(|(&s, cl)| {
                format!(
                    "Extn({}) = {} ~ {}",
                    a.display_label(s),
                    ctx.render_exits(&ctx.normed_exits(s)),
                    render(cl)
                )
            })
            .collect();
        details.push(format!("required up to ~: {}", render(&required)));
        witnesses.push(Witness {
            kind: WitnessKind::NoMaximalState,
            scc: c,
            states: alive.clone(),
            labels: labels(&ctx, &alive),
            details,
        });
    }
    PropertyReport::from_witnesses(Property::Pa, witnesses)
}
