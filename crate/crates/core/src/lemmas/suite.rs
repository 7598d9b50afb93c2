use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::analysis::random_expression;
use crate::equivalence::minimize;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Random instances each lemma must be exercised on.
    pub instances: usize,
    pub max_depth: usize,
    pub seed: u64,
    /// Instances whose state space exceeds this are skipped.
    pub max_states: usize,
    /// Give up on a lemma after this many draws per required instance.
    pub attempts_factor: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            instances: 500,
            max_depth: 6,
            seed: 0,
            max_states: 2000,
            attempts_factor: 40,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    /// Random instances on which each lemma's hypotheses held at least once.
    pub instances: BTreeMap<Lemma, usize>,
    /// Total sub-cases checked per lemma.
    pub cases: BTreeMap<Lemma, usize>,
    pub violations: Vec<Violation>,
}

impl SuiteReport {
    pub fn instances(&self, lemma: Lemma) -> usize {
        self.instances.get(&lemma).copied().unwrap_or(0)
    }

    pub fn violations_of(&self, lemma: Lemma) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.lemma == lemma)
    }

    fn record(&mut self, o: Outcome) {
        for (&l, &n) in &o.applicable {
            if n > 0 {
                *self.instances.entry(l).or_default() += 1;
                *self.cases.entry(l).or_default() += n;
            }
        }
        self.violations.extend(o.violations);
    }

    fn done(&self, lemmas: &[Lemma], want: usize) -> bool {
        lemmas.iter().all(|&l| self.instances(l) >= want)
    }
}

/// Draws random expressions until every lemma has been exercised on
/// `config.instances` instances, or the attempt budget runs out.
pub fn run_lemma_suite(config: &SuiteConfig) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = SuiteReport::default();
    let want = config.instances;
    let budget = want.saturating_mul(config.attempts_factor).max(1);
    let depth = config.max_depth;
    let limit = config.max_states;

    // whole-automaton lemmas, alternating BPA and PA inputs
    let single = [
        Lemma::OcMonotonic,
        Lemma::SccShape,
        Lemma::Peeling,
        Lemma::BasicNoNormedExit,
        Lemma::ExitEquivalence,
    ];
    for i in 0..budget {
        if report.done(&single, want) {
            break;
        }
        let theory = if i % 2 == 0 { Theory::Bpa } else { Theory::Pa };
        let e = looping(&mut rng, theory, depth);
        let Ok(d) = derive(&e, &CommFn::empty(), limit) else {
            continue;
        };
        report.record(check_oc_monotonic(&d, theory));
        report.record(check_exit_equivalence(&d.automaton));
        if let Ok(o) = check_scc_shape(&d, theory, limit) {
            report.record(o);
        }
        if let Ok(o) = check_peeling(&d, theory, limit) {
            report.record(o);
        }
    }

    type PairCheck = fn(&Expression, &Expression, usize) -> Result<Outcome, SemanticsError>;
    let pairs: [(Lemma, Theory, PairCheck); 6] = [
        (Lemma::StarSteps, Theory::Bpa, check_star_steps),
        (Lemma::ParSteps, Theory::Pa, check_par_steps),
        (Lemma::ParScc, Theory::Pa, check_par_scc),
        (Lemma::SeqExitLaws, Theory::Bpa, check_seq_exit_laws),
        (Lemma::ParExitLaws, Theory::Pa, check_par_exit_laws),
        (
            Lemma::ExitCompatibility,
            Theory::Pa,
            check_exit_compatibility,
        ),
    ];
    // smaller operands keep products and compositions tractable
    let half = depth.div_ceil(2).max(1);
    for (lemma, theory, check) in pairs {
        for _ in 0..budget {
            if report.instances(lemma) >= want {
                break;
            }
            let x = looping(&mut rng, theory, half);
            let y = random_expression(&mut rng, theory, half);
            if let Ok(o) = check(&x, &y, limit) {
                report.record(o);
            }
        }
    }

    for _ in 0..budget {
        if report.instances(Lemma::SccLifting) >= want {
            break;
        }
        let theory = if rng.gen_bool(0.5) {
            Theory::Bpa
        } else {
            Theory::Pa
        };
        let e = random_expression(&mut rng, theory, depth);
        if let Ok(a) = derive(&e, &CommFn::empty(), limit) {
            report.record(check_scc_lifting(&a.automaton, &minimize(&a.automaton)));
        }
    }
    report
}

/// A random expression, wrapped as `1.(e)*` half of the time so that
/// non-trivial SCCs are common.
fn looping(rng: &mut ChaCha8Rng, theory: Theory, depth: usize) -> Expression {
    let e = random_expression(rng, theory, depth.saturating_sub(1));
    if rng.gen_bool(0.5) {
        Expression::seq(Expression::Empty, Expression::star(e))
    } else {
        e
    }
}
