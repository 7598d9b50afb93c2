mod common;

use common::{naive_bisimilar, random_automaton, random_permutation, rng, split_state};
use proptest::prelude::*;
use regproc::equivalence::{bisimilar, check_bisimulation, isomorphic, minimize};
use regproc::semantics::derive_automaton;
use regproc::syntax::CommFn;

#[test]
fn refinement_agrees_with_fixpoint_oracle() {
    let mut r = rng(11);
    let mut positives = 0;
    for i in 0..300 {
        let a = random_automaton(&mut r, 10, 3);
        let b = match i % 3 {
            0 => random_automaton(&mut r, 10, 3),
            1 => split_state(&mut r, &a),
            _ => a.permuted(&random_permutation(&mut r, a.num_states())),
        };
        let fast = bisimilar(&a, &b);
        assert_eq!(fast.bisimilar, naive_bisimilar(&a, &b), "case {i}");
        if let Some(rel) = &fast.witness_relation {
            positives += 1;
            assert!(check_bisimulation(&a, &b, rel));
        }
    }
    assert!(positives > 150);
}

#[test]
fn quotient_is_bisimilar_and_minimal() {
    let mut r = rng(12);
    for _ in 0..150 {
        let a = random_automaton(&mut r, 12, 3);
        let m = minimize(&a);
        assert!(bisimilar(&a, &m).bisimilar);
        assert!(naive_bisimilar(&a, &m));
        assert!(m.num_states() <= a.num_states());
        // no two distinct quotient states are bisimilar
        for s in 0..m.num_states() {
            for t in s + 1..m.num_states() {
                let (x, y) = (rooted(&m, s), rooted(&m, t));
                assert!(!naive_bisimilar(&x, &y));
            }
        }
        assert_eq!(minimize(&m), m);
    }
}

fn rooted(a: &regproc::Automaton, s: usize) -> regproc::Automaton {
    let n = a.num_states();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(0, s);
    let b = a.permuted(&perm);
    // permuted keeps the initial state; rebuild with the new root
    let json = b.to_json().replacen(
        &format!("\"initial\": {}", b.initial()),
        "\"initial\": 0",
        1,
    );
    regproc::Automaton::from_json(&json).unwrap()
}

#[test]
fn isomorphism_of_permutations() {
    let mut r = rng(13);
    for _ in 0..200 {
        let a = random_automaton(&mut r, 9, 2);
        let perm = random_permutation(&mut r, a.num_states());
        let b = a.permuted(&perm);
        let iso = isomorphic(&a, &b);
        assert!(iso.isomorphic);
        let map = iso.mapping.unwrap();
        assert_eq!(map[a.initial()], b.initial());
        for t in a.transitions() {
            assert!(b.has_transition(map[t.from], t.action.name(), map[t.to]));
        }
        for s in 0..a.num_states() {
            assert_eq!(a.is_terminating(s), b.is_terminating(map[s]));
        }
    }
}

#[test]
fn non_isomorphic_when_bisimilar_split() {
    let mut r = rng(14);
    for _ in 0..100 {
        let a = random_automaton(&mut r, 8, 2);
        let b = split_state(&mut r, &a);
        assert!(!isomorphic(&a, &b).isomorphic);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bisimilarity_is_an_equivalence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_automaton(&mut r, 6, 2);
        let b = split_state(&mut r, &a);
        let c = random_automaton(&mut r, 6, 2);
        prop_assert!(bisimilar(&a, &a).bisimilar);
        prop_assert_eq!(bisimilar(&a, &c).bisimilar, bisimilar(&c, &a).bisimilar);
        if bisimilar(&b, &c).bisimilar {
            prop_assert!(bisimilar(&a, &c).bisimilar);
        }
    }

    #[test]
    fn derived_automata_of_equal_expressions_are_isomorphic(e in common::arb_expression(true, false)) {
        if let Ok(a) = derive_automaton(&e, &CommFn::empty(), 300) {
            let n = a.num_states();
            let rev: Vec<usize> = (0..n).rev().collect();
            prop_assert!(isomorphic(&a, &a.permuted(&rev)).isomorphic);
        }
    }
}
