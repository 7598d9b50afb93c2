//! Test-only oracles and generators, written independently of the library
//! algorithms they check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regproc::syntax::{Action, CommFn, Expression};
use regproc::Automaton;

pub fn act(name: &str) -> Action {
    Action::new(name).unwrap()
}

/// Greatest fixpoint: start from all pairs agreeing on termination and
/// delete pairs violating the transfer condition until nothing changes.
pub fn naive_bisimilar(a: &Automaton, b: &Automaton) -> bool {
    let mut rel: BTreeSet<(usize, usize)> = BTreeSet::new();
    for s in 0..a.num_states() {
        for t in 0..b.num_states() {
            if a.is_terminating(s) == b.is_terminating(t) {
                rel.insert((s, t));
            }
        }
    }
    loop {
        let bad: Vec<(usize, usize)> = rel
            .iter()
            .copied()
            .filter(|&(s, t)| {
                let forth = a.outgoing(s).iter().all(|x| {
                    b.outgoing(t)
                        .iter()
                        .any(|y| x.action == y.action && rel.contains(&(x.to, y.to)))
                });
                let back = b.outgoing(t).iter().all(|y| {
                    a.outgoing(s)
                        .iter()
                        .any(|x| x.action == y.action && rel.contains(&(x.to, y.to)))
                });
                !(forth && back)
            })
            .collect();
        if bad.is_empty() {
            return rel.contains(&(a.initial(), b.initial()));
        }
        for p in bad {
            rel.remove(&p);
        }
    }
}

/// Random automaton with `1..=max_states` states over the first
/// `num_actions` of `a, b, c, d`.
pub fn random_automaton(rng: &mut ChaCha8Rng, max_states: usize, num_actions: usize) -> Automaton {
    let names = ["a", "b", "c", "d"];
    let n = rng.gen_range(1..=max_states);
    let density = rng.gen_range(0.05..0.4);
    let term: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    let mut edges = Vec::new();
    for s in 0..n {
        for t in 0..n {
            for name in names.iter().take(num_actions) {
                if rng.gen_bool(density) {
                    edges.push((s, *name, t));
                }
            }
        }
    }
    Automaton::from_parts(n, rng.gen_range(0..n), &term, &edges).unwrap()
}

/// Random automaton in which every state is reachable from the initial one:
/// a random spanning tree from state 0 plus random extra edges.
pub fn random_connected_automaton(
    rng: &mut ChaCha8Rng,
    max_states: usize,
    max_actions: usize,
) -> Automaton {
    let names = ["a", "b", "c", "d"];
    let n = rng.gen_range(1..=max_states);
    let k = rng.gen_range(1..=max_actions);
    let term: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    let mut edges = Vec::new();
    for t in 1..n {
        edges.push((rng.gen_range(0..t), names[rng.gen_range(0..k)], t));
    }
    for _ in 0..rng.gen_range(0..=2 * n) {
        edges.push((
            rng.gen_range(0..n),
            names[rng.gen_range(0..k)],
            rng.gen_range(0..n),
        ));
    }
    Automaton::from_parts(n, 0, &term, &edges).unwrap()
}

/// A bisimilar variant of `a`: state `s` is duplicated, the copy gets the
/// same outgoing transitions, and some incoming transitions are redirected
/// to the copy.
pub fn split_state(rng: &mut ChaCha8Rng, a: &Automaton) -> Automaton {
    let n = a.num_states();
    let s = rng.gen_range(0..n);
    let mut term: Vec<usize> = (0..n).filter(|&i| a.is_terminating(i)).collect();
    if a.is_terminating(s) {
        term.push(n);
    }
    let mut edges: Vec<(usize, String, usize)> = Vec::new();
    for t in a.transitions() {
        let to = if t.to == s && rng.gen_bool(0.5) {
            n
        } else {
            t.to
        };
        edges.push((t.from, t.action.name().to_string(), to));
        if t.from == s {
            edges.push((n, t.action.name().to_string(), to));
        }
    }
    let refs: Vec<(usize, &str, usize)> =
        edges.iter().map(|(f, a, t)| (*f, a.as_str(), *t)).collect();
    Automaton::from_parts(n + 1, a.initial(), &term, &refs).unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Termination, restated.
pub fn can_terminate(e: &Expression) -> bool {
    use Expression::*;
    match e {
        Empty | Star(_) => true,
        Deadlock | Act(_) => false,
        Alt(p, q) => can_terminate(p) || can_terminate(q),
        Seq(p, q) | Par(p, q) => can_terminate(p) && can_terminate(q),
        Encap(_, p) => can_terminate(p),
    }
}

/// Whether `e -a-> t` has a derivation, trying each rule against the shape
/// of the proposed target.
pub fn derivable(e: &Expression, a: &Action, t: &Expression, g: &CommFn) -> bool {
    use Expression::*;
    match e {
        Deadlock | Empty => false,
        Act(b) => b == a && *t == Empty,
        Alt(p, q) => derivable(p, a, t, g) || derivable(q, a, t, g),
        Seq(p, q) => {
            let left = matches!(t, Seq(p1, q1) if q1 == q && derivable(p, a, p1, g));
            left || (can_terminate(p) && derivable(q, a, t, g))
        }
        Star(p) => matches!(t, Seq(p1, s) if s.as_ref() == e && derivable(p, a, p1, g)),
        Par(p, q) => match t {
            Par(p1, q1) => {
                (q1 == q && derivable(p, a, p1, g))
                    || (p1 == p && derivable(q, a, q1, g))
                    || g.rules().any(|(b, c, r)| {
                        r == a
                            && ((derivable(p, b, p1, g) && derivable(q, c, q1, g))
                                || (derivable(p, c, p1, g) && derivable(q, b, q1, g)))
                    })
            }
            _ => false,
        },
        Encap(h, p) => {
            matches!(t, Encap(h1, p1) if h1 == h && !h.contains(a) && derivable(p, a, p1, g))
        }
    }
}

/// Structural strategy over all constructors, actions drawn from `a..d`.
pub fn arb_expression(par: bool, encap: bool) -> impl Strategy<Value = Expression> {
    let leaf = prop_oneof![
        Just(Expression::Deadlock),
        Just(Expression::Empty),
        prop::sample::select(vec!["a", "b", "c", "d"]).prop_map(|n| Expression::act(act(n))),
    ];
    leaf.prop_recursive(5, 40, 2, move |inner| {
        let mut options: Vec<BoxedStrategy<Expression>> = vec![
            (inner.clone(), inner.clone())
                .prop_map(|(p, q)| Expression::seq(p, q))
                .boxed(),
            (inner.clone(), inner.clone())
                .prop_map(|(p, q)| Expression::alt(p, q))
                .boxed(),
            inner.clone().prop_map(Expression::star).boxed(),
        ];
        if par {
            options.push(
                (inner.clone(), inner.clone())
                    .prop_map(|(p, q)| Expression::par(p, q))
                    .boxed(),
            );
        }
        if encap {
            options.push(
                (
                    prop::collection::btree_set(
                        prop::sample::select(vec!["a", "b", "c", "d"]),
                        0..3,
                    ),
                    inner,
                )
                    .prop_map(|(h, p)| Expression::encap(h.into_iter().map(act).collect(), p))
                    .boxed(),
            );
        }
        prop::strategy::Union::new(options)
    })
}

/// Small random communication function over `a..e`.
pub fn arb_comm() -> impl Strategy<Value = CommFn> {
    let names = vec!["a", "b", "c", "d", "e"];
    prop::collection::vec(
        (
            prop::sample::select(names.clone()),
            prop::sample::select(names.clone()),
            prop::sample::select(names),
        ),
        0..4,
    )
    .prop_map(|rules| {
        let mut g = CommFn::empty();
        for (x, y, z) in rules {
            let _ = g.insert(act(x), act(y), act(z));
        }
        g
    })
}

/// Adjacency as `(from, action name, to)` triples, for comparisons.
pub fn edge_set(a: &Automaton) -> BTreeSet<(usize, String, usize)> {
    a.transitions()
        .iter()
        .map(|t| (t.from, t.action.name().to_string(), t.to))
        .collect()
}

pub fn label_index(a: &Automaton) -> BTreeMap<String, usize> {
    (0..a.num_states())
        .map(|s| (a.display_label(s), s))
        .collect()
}
