//! Executable statements of the structural lemmas about strongly connected
//! components of derived automata.
//!
//! Each `check_*` function tests one statement on a concrete instance and
//! returns an [`Outcome`]: how many sub-cases satisfied the statement's
//! hypotheses, and every sub-case whose conclusion failed. SCCs, exits and
//! normedness are properties of the whole space of expressions; since they
//! only depend on what is reachable, they are computed by deriving from the
//! expressions involved.

mod suite;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::analysis::{oc_measure, scc_decompose, ExitAnalysis, SccDecomposition};
use crate::equivalence::bisimilar;
use crate::semantics::{derive, step, terminates, Automaton, Derivation, SemanticsError};
use crate::syntax::{Action, CommFn, Expression, Theory};

pub use suite::{run_lemma_suite, SuiteConfig, SuiteReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    OcMonotonic,
    SccShape,
    Peeling,
    BasicNoNormedExit,
    StarSteps,
    ParSteps,
    ParScc,
    SeqExitLaws,
    ParExitLaws,
    ExitEquivalence,
    ExitCompatibility,
    SccLifting,
}

impl Lemma {
    pub const ALL: [Lemma; 12] = [
        Lemma::OcMonotonic,
        Lemma::SccShape,
        Lemma::Peeling,
        Lemma::BasicNoNormedExit,
        Lemma::StarSteps,
        Lemma::ParSteps,
        Lemma::ParScc,
        Lemma::SeqExitLaws,
        Lemma::ParExitLaws,
        Lemma::ExitEquivalence,
        Lemma::ExitCompatibility,
        Lemma::SccLifting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::OcMonotonic => "oc-monotonic",
            Lemma::SccShape => "scc-shape",
            Lemma::Peeling => "peeling",
            Lemma::BasicNoNormedExit => "basic-no-normed-exit",
            Lemma::StarSteps => "star-steps",
            Lemma::ParSteps => "par-steps",
            Lemma::ParScc => "par-scc",
            Lemma::SeqExitLaws => "seq-exit-laws",
            Lemma::ParExitLaws => "par-exit-laws",
            Lemma::ExitEquivalence => "exit-equivalence",
            Lemma::ExitCompatibility => "exit-compatibility",
            Lemma::SccLifting => "scc-lifting",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub lemma: Lemma,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    /// Sub-cases whose hypotheses held, per lemma.
    pub applicable: BTreeMap<Lemma, usize>,
    pub violations: Vec<Violation>,
}

impl Outcome {
    pub fn applicable(&self, lemma: Lemma) -> usize {
        self.applicable.get(&lemma).copied().unwrap_or(0)
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: Outcome) {
        for (l, n) in other.applicable {
            *self.applicable.entry(l).or_default() += n;
        }
        self.violations.extend(other.violations);
    }

    fn hit(&mut self, lemma: Lemma) {
        *self.applicable.entry(lemma).or_default() += 1;
    }

    fn fail(&mut self, lemma: Lemma, detail: String) {
        self.violations.push(Violation { lemma, detail });
    }
}

type Exits = BTreeSet<(Action, Expression)>;

/// A derivation with its SCCs and normedness.
struct Local {
    d: Derivation,
    scc: SccDecomposition,
    normed: Vec<bool>,
}

impl Local {
    fn new(e: &Expression, limit: usize) -> Result<Self, SemanticsError> {
        let d = derive(e, &CommFn::empty(), limit)?;
        let ex = ExitAnalysis::new(&d.automaton);
        let (scc, normed) = (ex.scc, ex.normed);
        Ok(Local { d, scc, normed })
    }

    fn expr(&self, s: usize) -> &Expression {
        &self.d.expressions[s]
    }

    fn component_exprs(&self, c: usize) -> BTreeSet<Expression> {
        self.scc
            .members(c)
            .iter()
            .map(|&s| self.expr(s).clone())
            .collect()
    }

    /// The SCC of the root.
    fn root_component(&self) -> BTreeSet<Expression> {
        self.component_exprs(self.scc.component_of(0))
    }

    fn root_nontrivial(&self) -> bool {
        !self.scc.is_trivial(self.scc.component_of(0))
    }

    fn normed_exits(&self, s: usize) -> Exits {
        let mut out = BTreeSet::new();
        for t in self.d.automaton.outgoing(s) {
            if !self.scc.same_component(s, t.to) && self.normed[t.to] {
                out.insert((t.action.clone(), self.expr(t.to).clone()));
            }
        }
        out
    }

    fn is_alive(&self, s: usize) -> bool {
        self.d.automaton.is_terminating(s) || !self.normed_exits(s).is_empty()
    }

    fn contains(&self, e: &Expression) -> bool {
        self.d.state_of(e).is_some()
    }
}

/// Whether `set` is exactly a strongly connected component, and if so
/// whether it is non-trivial.
fn scc_status(set: &BTreeSet<Expression>, limit: usize) -> Result<Option<bool>, SemanticsError> {
    let Some(first) = set.iter().next() else {
        return Ok(None);
    };
    let local = Local::new(first, limit)?;
    Ok((local.root_component() == *set).then(|| local.root_nontrivial()))
}

fn same_scc(x: &Expression, y: &Expression, limit: usize) -> Result<bool, SemanticsError> {
    if x == y {
        return Ok(true);
    }
    Ok(Local::new(x, limit)?.contains(y) && Local::new(y, limit)?.contains(x))
}

fn render_set(set: &BTreeSet<Expression>) -> String {
    let parts: Vec<String> = set.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn render_exits(exits: &Exits) -> String {
    let parts: Vec<String> = exits.iter().map(|(a, e)| format!("({a}, {e})")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// `Some(q)` if every member is `p.q` for one common `q`.
fn common_right(set: &BTreeSet<Expression>) -> Option<&Expression> {
    let mut right = None;
    for e in set {
        match e {
            Expression::Seq(_, q) if right.is_none_or(|r: &Expression| r == q.as_ref()) => {
                right = Some(q.as_ref());
            }
            _ => return None,
        }
    }
    right
}

fn lefts(set: &BTreeSet<Expression>) -> BTreeSet<Expression> {
    set.iter()
        .filter_map(|e| match e {
            Expression::Seq(p, _) | Expression::Par(p, _) => Some(p.as_ref().clone()),
            _ => None,
        })
        .collect()
}

fn rights(set: &BTreeSet<Expression>) -> BTreeSet<Expression> {
    set.iter()
        .filter_map(|e| match e {
            Expression::Seq(_, q) | Expression::Par(_, q) => Some(q.as_ref().clone()),
            _ => None,
        })
        .collect()
}

/// `Some((C1, C2))` if every member is a parallel composition and the set
/// is exactly `C1 || C2`.
fn par_factors(set: &BTreeSet<Expression>) -> Option<(BTreeSet<Expression>, BTreeSet<Expression>)> {
    if !set.iter().all(|e| matches!(e, Expression::Par(..))) {
        return None;
    }
    let (l, r) = (lefts(set), rights(set));
    (l.len() * r.len() == set.len()).then_some((l, r))
}

/// OC never increases along a transition, and when it is preserved along a
/// non-empty path both ends are `p.q`, `p'.q` (or, in PA, both parallel
/// compositions).
pub fn check_oc_monotonic(d: &Derivation, theory: Theory) -> Outcome {
    let mut out = Outcome::default();
    let oc: Vec<usize> = match d.expressions.iter().map(oc_measure).collect() {
        Ok(v) => v,
        Err(_) => return out,
    };
    let a = &d.automaton;
    for t in a.transitions() {
        out.hit(Lemma::OcMonotonic);
        if oc[t.from] < oc[t.to] {
            out.fail(
                Lemma::OcMonotonic,
                format!(
                    "OC increases from {} ({}) to {} ({})",
                    d.expressions[t.from], oc[t.from], d.expressions[t.to], oc[t.to]
                ),
            );
        }
    }
    for s in 0..a.num_states() {
        let mut seen = vec![false; a.num_states()];
        let mut queue: VecDeque<usize> = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for t in a.outgoing(u) {
                if oc[t.to] == oc[s] && !seen[t.to] {
                    seen[t.to] = true;
                    queue.push_back(t.to);
                }
            }
        }
        for (t, _) in seen.iter().enumerate().filter(|(_, &v)| v) {
            let (p, q) = (&d.expressions[s], &d.expressions[t]);
            let ok = match (p, q) {
                (Expression::Seq(_, r1), Expression::Seq(_, r2)) => r1 == r2,
                (Expression::Par(..), Expression::Par(..)) => theory >= Theory::Pa,
                _ => false,
            };
            if !ok {
                out.fail(
                    Lemma::OcMonotonic,
                    format!(
                        "OC {} preserved from {p} to {q} but the shapes differ",
                        oc[s]
                    ),
                );
            }
        }
    }
    out
}

/// Every non-trivial SCC is `C'.q` or, in PA, `C1 || C2` for SCCs `C1`, `C2`
/// at least one of which is non-trivial.
pub fn check_scc_shape(
    d: &Derivation,
    theory: Theory,
    limit: usize,
) -> Result<Outcome, SemanticsError> {
    let mut out = Outcome::default();
    let scc = scc_decompose(&d.automaton);
    for c in scc.nontrivial_components() {
        out.hit(Lemma::SccShape);
        let set: BTreeSet<Expression> = scc
            .members(c)
            .iter()
            .map(|&s| d.expressions[s].clone())
            .collect();
        if common_right(&set).is_some() {
            continue;
        }
        let ok = match par_factors(&set) {
            Some((l, r)) if theory >= Theory::Pa => {
                match (scc_status(&l, limit)?, scc_status(&r, limit)?) {
                    (Some(nl), Some(nr)) => nl || nr,
                    _ => false,
                }
            }
            _ => false,
        };
        if !ok {
            out.fail(
                Lemma::SccShape,
                format!(
                    "non-trivial SCC {} has no sequential or parallel shape",
                    render_set(&set)
                ),
            );
        }
    }
    Ok(out)
}

/// Stripping common right factors from a non-trivial SCC (and splitting
/// parallel ones) ends in basic SCCs `{p'_i . q*}` whose left parts do not
/// form a non-trivial SCC. In BPA, members of basic SCCs have no normed exit
/// transitions.
pub fn check_peeling(
    d: &Derivation,
    theory: Theory,
    limit: usize,
) -> Result<Outcome, SemanticsError> {
    let mut out = Outcome::default();
    let scc = scc_decompose(&d.automaton);
    let mut work: Vec<BTreeSet<Expression>> = scc
        .nontrivial_components()
        .map(|c| {
            scc.members(c)
                .iter()
                .map(|&s| d.expressions[s].clone())
                .collect()
        })
        .collect();
    while let Some(set) = work.pop() {
        out.hit(Lemma::Peeling);
        if let Some(q) = common_right(&set) {
            let inner = lefts(&set);
            if scc_status(&inner, limit)? == Some(true) {
                work.push(inner);
                continue;
            }
            if !q.is_star() {
                out.fail(
                    Lemma::Peeling,
                    format!(
                        "{} strips to {}, which is not a non-trivial SCC, but the right factor {q} is not a star",
                        render_set(&set),
                        render_set(&inner)
                    ),
                );
                continue;
            }
            if theory == Theory::Bpa {
                out.hit(Lemma::BasicNoNormedExit);
                let local = Local::new(set.iter().next().expect("non-empty"), limit)?;
                for p in &set {
                    let s = local
                        .d
                        .state_of(p)
                        .expect("SCC members are mutually reachable");
                    let extn = local.normed_exits(s);
                    if !extn.is_empty() {
                        out.fail(
                            Lemma::BasicNoNormedExit,
                            format!(
                                "{p} in basic SCC {} has Extn {}",
                                render_set(&set),
                                render_exits(&extn)
                            ),
                        );
                    }
                }
            }
            continue;
        }
        if theory >= Theory::Pa {
            if let Some((l, r)) = par_factors(&set) {
                let (sl, sr) = (scc_status(&l, limit)?, scc_status(&r, limit)?);
                if sl.is_some() && sr.is_some() {
                    if sl == Some(true) {
                        work.push(l);
                    }
                    if sr == Some(true) {
                        work.push(r);
                    }
                    continue;
                }
            }
        }
        out.fail(
            Lemma::Peeling,
            format!("{} cannot be peeled", render_set(&set)),
        );
    }
    Ok(out)
}

/// Every state reachable from `p . q*` is `p' . q*` with `p ->* p'`, or
/// `q' . q*` with `q ->* q'` after some `p ->* p'` with `p'` terminating.
pub fn check_star_steps(
    p: &Expression,
    q: &Expression,
    limit: usize,
) -> Result<Outcome, SemanticsError> {
    let mut out = Outcome::default();
    let star = Expression::star(q.clone());
    let x = Expression::seq(p.clone(), star.clone());
    let (lx, lp, lq) = (
        Local::new(&x, limit)?,
        Local::new(p, limit)?,
        Local::new(q, limit)?,
    );
    let p_can_finish = lp.d.expressions.iter().any(terminates);
    for r in &lx.d.expressions {
        out.hit(Lemma::StarSteps);
        let ok = match r {
            Expression::Seq(l, s) if s.as_ref() == &star => {
                lp.contains(l) || (p_can_finish && lq.contains(l))
            }
            _ => false,
        };
        if !ok {
            out.fail(Lemma::StarSteps, format!("{x} reaches {r}"));
        }
    }
    Ok(out)
}

/// Every state reachable from `p || q` is `p' || q'` with `p ->* p'` and
/// `q ->* q'`.
pub fn check_par_steps(
    p: &Expression,
    q: &Expression,
    limit: usize,
) -> Result<Outcome, SemanticsError> {
    let mut out = Outcome::default();
    let x = Expression::par(p.clone(), q.clone());
    let (lx, lp, lq) = (
        Local::new(&x, limit)?,
        Local::new(p, limit)?,
        Local::new(q, limit)?,
    );
    for r in &lx.d.expressions {
        out.hit(Lemma::ParSteps);
        let ok = matches!(r, Expression::Par(l, s) if lp.contains(l) && lq.contains(s));
        if !ok {
            out.fail(Lemma::ParSteps, format!("{x} reaches {r}"));
        }
    }
    Ok(out)
}

fn product(l: &BTreeSet<Expression>, r: &BTreeSet<Expression>) -> BTreeSet<Expression> {
    l.iter()
        .flat_map(|x| r.iter().map(move |y| Expression::par(x.clone(), y.clone())))
        .collect()
}

/// `C1 || C2` is an SCC iff both factors are, and is non-trivial iff one of
/// them is. The converse is exercised by extending `C2` with a successor of
/// `q` outside it.
pub fn check_par_scc(
    p: &Expression,
    q: &Expression,
    limit: usize,
) -> Result<Outcome, SemanticsError> {
    let mut out = Outcome::default();
    let (lp, lq) = (Local::new(p, limit)?, Local::new(q, limit)?);
    let (c1, c2) = (lp.root_component(), lq.root_component());
    let prod = product(&c1, &c2);
    out.hit(Lemma::ParScc);
    match scc_status(&prod, limit)? {
        None => out.fail(
            Lemma::ParScc,
            format!("{} || {} is not an SCC", render_set(&c1), render_set(&c2)),
        ),
        Some(nontrivial) if nontrivial != (lp.root_nontrivial() || lq.root_nontrivial()) => out
            .fail(
                Lemma::ParScc,
                format!(
                    "{} || {} has non-triviality {nontrivial}, factors {} and {}",
                    render_set(&c1),
                    render_set(&c2),
                    lp.root_nontrivial(),
                    lq.root_nontrivial()
                ),
            ),
        Some(_) => {}
    }
    let outside =
        lq.d.automaton
            .outgoing(0)
            .iter()
            .find(|t| !lq.scc.same_component(0, t.to))
            .map(|t| lq.expr(t.to).clone());
    if let Some(extra) = outside {
        out.hit(Lemma::ParScc);
        let mut widened = c2.clone();
        widened.insert(extra);
        if scc_status(&product(&c1, &widened), limit)?.is_some() {
            out.fail(
                Lemma::ParScc,
                format!(
                    "{} || {} is an SCC although the right factor is not",
                    render_set(&c1),
                    render_set(&widened)
                ),
            );
        }
    }
    Ok(out)
}

/// For every non-trivial SCC `C.q` of `x.q` with `C` a non-trivial SCC:
/// `p.q` is alive iff `p` is alive and `q` is normed, and for normed `q`,
/// `Extn(p.q) = Extn(p).q`, plus the normed initial steps of `q` leaving
/// `C.q` when `p` terminates.
pub fn check_seq_exit_laws(
    x: &Expression,
    q: &Expression,
    limit: usize,
) -> Result<Outcome, SemanticsError> {
    let mut out = Outcome::default();
    let y = Expression::seq(x.clone(), q.clone());
    let ly = Local::new(&y, limit)?;
    let q_normed = Local::new(q, limit)?.normed[0];
    for c in ly.scc.nontrivial_components().collect::<Vec<_>>() {
        let set = ly.component_exprs(c);
        if common_right(&set) != Some(q) {
            continue;
        }
        let inner = lefts(&set);
        if scc_status(&inner, limit)? != Some(true) {
            continue;
        }
        out.hit(Lemma::SeqExitLaws);
        let lc = Local::new(inner.iter().next().expect("non-empty"), limit)?;
        for p in &inner {
            let sp =
                lc.d.state_of(p)
                    .expect("SCC members are mutually reachable");
            let pq = Expression::seq(p.clone(), q.clone());
            let spq = ly.d.state_of(&pq).expect("member of the SCC");
            let alive_pq = ly.is_alive(spq);
            let alive_p = lc.is_alive(sp);
            if alive_pq != (alive_p && q_normed) {
                out.fail(
                    Lemma::SeqExitLaws,
                    format!("{pq} alive: {alive_pq}; {p} alive: {alive_p}; {q} normed: {q_normed}"),
                );
            }
            if !q_normed {
                continue;
            }
            let mut expected: Exits = lc
                .normed_exits(sp)
                .into_iter()
                .map(|(a, t)| (a, Expression::seq(t, q.clone())))
                .collect();
            if terminates(p) {
                for (a, r) in step(q, &CommFn::empty()) {
                    let sr = ly.d.state_of(&r).expect("reachable through p");
                    if !set.contains(&r) && ly.normed[sr] {
                        expected.insert((a, r));
                    }
                }
            }
            let actual = ly.normed_exits(spq);
            if actual != expected {
                out.fail(
                    Lemma::SeqExitLaws,
                    format!(
                        "Extn({pq}) = {}, expected {}",
                        render_exits(&actual),
                        render_exits(&expected)
                    ),
                );
            }
        }
    }
    Ok(out)
}

/// For SCCs `C1` of `p` and `C2` of `q` that both have alive exit states,
/// `C1 || C2` has one too and `Extn(p' || q') = Extn(p') || q' ∪ p' || Extn(q')`.
pub fn check_par_exit_laws(
    p: &Expression,
    q: &Expression,
    limit: usize,
) -> Result<Outcome, SemanticsError> {
    let mut out = Outcome::default();
    let (lp, lq) = (Local::new(p, limit)?, Local::new(q, limit)?);
    let (cp, cq) = (lp.scc.component_of(0), lq.scc.component_of(0));
    let alive = |l: &Local, c: usize| l.scc.members(c).iter().any(|&s| l.is_alive(s));
    if !alive(&lp, cp) || !alive(&lq, cq) {
        return Ok(out);
    }
    out.hit(Lemma::ParExitLaws);
    let x = Expression::par(p.clone(), q.clone());
    let lx = Local::new(&x, limit)?;
    let cx = lx.scc.component_of(0);
    if !alive(&lx, cx) {
        out.fail(
            Lemma::ParExitLaws,
            format!("SCC of {x} has no alive exit state"),
        );
    }
    for &s in lp.scc.members(cp) {
        for &t in lq.scc.members(cq) {
            let (ps, qt) = (lp.expr(s), lq.expr(t));
            let pair = Expression::par(ps.clone(), qt.clone());
            let Some(st) = lx.d.state_of(&pair) else {
                out.fail(
                    Lemma::ParExitLaws,
                    format!("{pair} is not reachable from {x}"),
                );
                continue;
            };
            let mut expected: Exits = lp
                .normed_exits(s)
                .into_iter()
                .map(|(a, e)| (a, Expression::par(e, qt.clone())))
                .collect();
            expected.extend(
                lq.normed_exits(t)
                    .into_iter()
                    .map(|(a, e)| (a, Expression::par(ps.clone(), e))),
            );
            let actual = lx.normed_exits(st);
            if actual != expected {
                out.fail(
                    Lemma::ParExitLaws,
                    format!(
                        "Extn({pair}) = {}, expected {}",
                        render_exits(&actual),
                        render_exits(&expected)
                    ),
                );
            }
        }
    }
    Ok(out)
}

/// `~` is reflexive, symmetric and transitive on the transitions of `a`.
pub fn check_exit_equivalence(a: &Automaton) -> Outcome {
    const CAP: usize = 24;
    let mut out = Outcome::default();
    let ex = ExitAnalysis::new(a);
    let pairs: Vec<(Action, usize)> = a
        .transitions()
        .iter()
        .map(|t| (t.action.clone(), t.to))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .take(CAP)
        .collect();
    let eq = |x: &(Action, usize), y: &(Action, usize)| {
        crate::analysis::exit_equivalent((&x.0, x.1), (&y.0, y.1), &ex.scc)
    };
    for x in &pairs {
        out.hit(Lemma::ExitEquivalence);
        if !eq(x, x) {
            out.fail(
                Lemma::ExitEquivalence,
                format!("({}, s{}) is not related to itself", x.0, x.1),
            );
        }
        for y in &pairs {
            if eq(x, y) != eq(y, x) {
                out.fail(
                    Lemma::ExitEquivalence,
                    format!("asymmetry on s{} and s{}", x.1, y.1),
                );
            }
            for z in &pairs {
                if eq(x, y) && eq(y, z) && !eq(x, z) {
                    out.fail(
                        Lemma::ExitEquivalence,
                        format!("not transitive on s{}, s{}, s{}", x.1, y.1, z.1),
                    );
                }
            }
        }
    }
    out
}

/// `(a, p) ~ (b, q)` implies `(a, p.r) ~ (b, q.r)`, `(a, p || r) ~ (b, q || r)`
/// and `(a, r || p) ~ (b, r || q)`, for related transition targets of `x`.
pub fn check_exit_compatibility(
    x: &Expression,
    r: &Expression,
    limit: usize,
) -> Result<Outcome, SemanticsError> {
    const CAP: usize = 6;
    let mut out = Outcome::default();
    let lx = Local::new(x, limit)?;
    let targets: BTreeSet<(Action, usize)> =
        lx.d.automaton
            .transitions()
            .iter()
            .map(|t| (t.action.clone(), t.to))
            .collect();
    let mut related = Vec::new();
    for (a, s) in &targets {
        for (b, t) in &targets {
            if s < t && a == b && lx.scc.same_component(*s, *t) {
                related.push((a.clone(), *s, *t));
            }
        }
    }
    for (a, s, t) in related.into_iter().take(CAP) {
        out.hit(Lemma::ExitCompatibility);
        let (p, q) = (lx.expr(s), lx.expr(t));
        let contexts = [
            (
                Expression::seq(p.clone(), r.clone()),
                Expression::seq(q.clone(), r.clone()),
            ),
            (
                Expression::par(p.clone(), r.clone()),
                Expression::par(q.clone(), r.clone()),
            ),
            (
                Expression::par(r.clone(), p.clone()),
                Expression::par(r.clone(), q.clone()),
            ),
        ];
        for (u, v) in contexts {
            if !same_scc(&u, &v, limit)? {
                out.fail(
                    Lemma::ExitCompatibility,
                    format!(
                        "({a}, {p}) ~ ({a}, {q}) but ({a}, {u}) and ({a}, {v}) are not related"
                    ),
                );
            }
        }
    }
    Ok(out)
}

/// For bisimilar `s1` of `a` and `s2` of `b`, some SCC reachable from `s2`
/// matches every member of the SCC of `s1` up to bisimilarity; checked in
/// both directions.
pub fn check_scc_lifting(a: &Automaton, b: &Automaton) -> Outcome {
    let mut out = Outcome::default();
    let part = bisimilar(a, b).partition;
    let n = a.num_states();
    let (pa, pb) = part.split_at(n);
    lift_one_way(a, pa, b, pb, "first", &mut out);
    lift_one_way(b, pb, a, pa, "second", &mut out);
    out
}

fn lift_one_way(
    a: &Automaton,
    pa: &[usize],
    b: &Automaton,
    pb: &[usize],
    side: &str,
    out: &mut Outcome,
) {
    let (da, db) = (scc_decompose(a), scc_decompose(b));
    for s1 in 0..a.num_states() {
        let c1 = da.members(da.component_of(s1));
        let blocks: BTreeSet<usize> = c1.iter().map(|&s| pa[s]).collect();
        for s2 in (0..b.num_states()).filter(|&s2| pb[s2] == pa[s1]) {
            out.hit(Lemma::SccLifting);
            let reach = b.reachable_from(s2);
            let found = db.components().any(|c2| {
                let members = db.members(c2);
                reach[members[0]] && blocks.iter().all(|&k| members.iter().any(|&t| pb[t] == k))
            });
            if !found {
                out.fail(
                    Lemma::SccLifting,
                    format!("no SCC reachable from s{s2} matches the SCC of s{s1} in the {side} automaton"),
                );
            }
        }
    }
}
