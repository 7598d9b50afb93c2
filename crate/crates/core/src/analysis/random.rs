use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::syntax::{Action, Expression, Theory};

const ALPHABET: [&str; 4] = ["a", "b", "c", "d"];

/// A pseudo-random expression of `theory` with depth at most `max_depth`.
/// The same arguments always give the same expression.
pub fn generate_random_expression(theory: Theory, max_depth: usize, seed: u64) -> Expression {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_expression(&mut rng, theory, max_depth)
}

/// Each node is a leaf with probability 1/2 (always at depth 0). Leaves are
/// `0`, `1` or one of the actions `a`..`d`; operators are drawn uniformly
/// from those of `theory`.
pub fn random_expression<R: Rng + ?Sized>(
    rng: &mut R,
    theory: Theory,
    max_depth: usize,
) -> Expression {
    if max_depth == 0 || rng.gen_bool(0.5) {
        return match rng.gen_range(0..ALPHABET.len() + 2) {
            0 => Expression::Deadlock,
            1 => Expression::Empty,
            i => Expression::Act(random_action_at(i - 2)),
        };
    }
    let ops = match theory {
        Theory::Bpa => 3,
        Theory::Pa => 4,
        Theory::Acp => 5,
    };
    let d = max_depth - 1;
    match rng.gen_range(0..ops) {
        0 => Expression::seq(
            random_expression(rng, theory, d),
            random_expression(rng, theory, d),
        ),
        1 => Expression::alt(
            random_expression(rng, theory, d),
            random_expression(rng, theory, d),
        ),
        2 => Expression::star(random_expression(rng, theory, d)),
        3 => Expression::par(
            random_expression(rng, theory, d),
            random_expression(rng, theory, d),
        ),
        _ => {
            let blocked = ALPHABET
                .iter()
                .enumerate()
                .filter(|_| rng.gen_bool(0.5))
                .map(|(i, _)| random_action_at(i))
                .collect();
            Expression::encap(blocked, random_expression(rng, theory, d))
        }
    }
}

fn random_action_at(i: usize) -> Action {
    Action::new(ALPHABET[i]).expect("alphabet names are valid")
}
