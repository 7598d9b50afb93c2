use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::semantics::Automaton;
use crate::syntax::Action;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoResult {
    pub isomorphic: bool,
    /// `mapping[s]` is the image in the second automaton of state `s` of
    /// the first; present iff isomorphic.
    pub mapping: Option<Vec<usize>>,
}

impl IsoResult {
    fn no() -> Self {
        IsoResult {
            isomorphic: false,
            mapping: None,
        }
    }
}

type Adjacency = Vec<BTreeMap<usize, Vec<Action>>>;

/// `(colour, outgoing (action, colour) pairs, incoming pairs)`.
type Signature = (usize, Vec<(Action, usize)>, Vec<(Action, usize)>);

fn adjacency(a: &Automaton) -> (Adjacency, Adjacency) {
    let mut out: Adjacency = vec![BTreeMap::new(); a.num_states()];
    let mut inc: Adjacency = vec![BTreeMap::new(); a.num_states()];
    // transitions are sorted, so label lists come out sorted as well
    for t in a.transitions() {
        out[t.from].entry(t.to).or_default().push(t.action.clone());
    }
    for t in a.transitions() {
        inc[t.to].entry(t.from).or_default().push(t.action.clone());
    }
    for m in inc.iter_mut() {
        for labels in m.values_mut() {
            labels.sort();
        }
    }
    (out, inc)
}

/// Iterated colour refinement over the disjoint union of `a` and `b`.
/// Returns one colour per state, `a`'s states first. Isomorphisms preserve
/// colours.
fn refine_colours(a: &Automaton, b: &Automaton) -> Vec<usize> {
    let autos = [a, b];
    let mut colour: Vec<usize> = {
        let mut ids: HashMap<(bool, bool), usize> = HashMap::new();
        autos
            .iter()
            .flat_map(|x| (0..x.num_states()).map(move |s| (s == x.initial(), x.is_terminating(s))))
            .map(|key| {
                let fresh = ids.len();
                *ids.entry(key).or_insert(fresh)
            })
            .collect()
    };
    let offsets = [0, a.num_states()];
    let mut count = colour.iter().copied().max().map_or(0, |m| m + 1);
    loop {
        let mut ids: HashMap<Signature, usize> = HashMap::new();
        let mut next = Vec::with_capacity(colour.len());
        for (k, x) in autos.iter().enumerate() {
            let mut preds: Vec<Vec<(Action, usize)>> = vec![Vec::new(); x.num_states()];
            for t in x.transitions() {
                preds[t.to].push((t.action.clone(), colour[offsets[k] + t.from]));
            }
            for (s, mut inc) in preds.into_iter().enumerate() {
                let mut out: Vec<(Action, usize)> = x
                    .outgoing(s)
                    .iter()
                    .map(|t| (t.action.clone(), colour[offsets[k] + t.to]))
                    .collect();
                out.sort();
                inc.sort();
                let fresh = ids.len();
                next.push(
                    *ids.entry((colour[offsets[k] + s], out, inc))
                        .or_insert(fresh),
                );
            }
        }
        let new_count = ids.len();
        colour = next;
        if new_count == count {
            return colour;
        }
        count = new_count;
    }
}

/// Exact isomorphism test: colour refinement prunes candidates, then a
/// backtracking search maps states of `a` in index order, trying images in
/// index order.
pub fn isomorphic(a: &Automaton, b: &Automaton) -> IsoResult {
    let n = a.num_states();
    if n != b.num_states() || a.transitions().len() != b.transitions().len() {
        return IsoResult::no();
    }
    let colour = refine_colours(a, b);
    let (ca, cb) = colour.split_at(n);
    let mut hist: HashMap<usize, isize> = HashMap::new();
    for &c in ca {
        *hist.entry(c).or_default() += 1;
    }
    for &c in cb {
        *hist.entry(c).or_default() -= 1;
    }
    if hist.values().any(|&v| v != 0) {
        return IsoResult::no();
    }

    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|s| (0..n).filter(|&t| cb[t] == ca[s]).collect())
        .collect();
    let (out_a, in_a) = adjacency(a);
    let (out_b, in_b) = adjacency(b);

    const NONE: usize = usize::MAX;
    let mut map = vec![NONE; n];
    let mut inv = vec![NONE; n];

    let consistent = |s: usize, t: usize, map: &[usize], inv: &[usize]| -> bool {
        let side = |adj_a: &Adjacency, adj_b: &Adjacency| {
            adj_a[s]
                .iter()
                .filter(|(k, _)| map[**k] != NONE)
                .all(|(k, labels)| adj_b[t].get(&map[*k]) == Some(labels))
                && adj_b[t]
                    .iter()
                    .filter(|(l, _)| inv[**l] != NONE)
                    .all(|(l, labels)| adj_a[s].get(&inv[*l]) == Some(labels))
        };
        side(&out_a, &out_b) && side(&in_a, &in_b)
    };

    // cursor[s] = index into candidates[s] to try next
    let mut cursor = vec![0usize; n];
    let mut s = 0;
    while s < n {
        let mut placed = false;
        while cursor[s] < candidates[s].len() {
            let t = candidates[s][cursor[s]];
            cursor[s] += 1;
            if inv[t] != NONE {
                continue;
            }
            map[s] = t;
            inv[t] = s;
            if consistent(s, t, &map, &inv) {
                placed = true;
                break;
            }
            map[s] = NONE;
            inv[t] = NONE;
        }
        if placed {
            s += 1;
            continue;
        }
        // backtrack
        cursor[s] = 0;
        if s == 0 {
            return IsoResult::no();
        }
        s -= 1;
        inv[map[s]] = NONE;
        map[s] = NONE;
    }
    IsoResult {
        isomorphic: true,
        mapping: Some(map),
    }
}
