use serde::{Deserialize, Serialize};

use crate::semantics::Automaton;

/// Partition of the states of an automaton into strongly connected
/// components.
///
/// Component ids follow the order in which Tarjan's algorithm completes
/// them, which is a reverse topological order of the condensation: every
/// transition leaving component `c` enters a component with a smaller id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SccDecomposition {
    component_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    trivial: Vec<bool>,
}

impl SccDecomposition {
    pub fn num_components(&self) -> usize {
        self.members.len()
    }

    pub fn component_of(&self, s: usize) -> usize {
        self.component_of[s]
    }

    /// Sorted member states of component `c`.
    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    /// A single state without a self-loop.
    pub fn is_trivial(&self, c: usize) -> bool {
        self.trivial[c]
    }

    pub fn same_component(&self, s: usize, t: usize) -> bool {
        self.component_of[s] == self.component_of[t]
    }

    pub fn components(&self) -> impl Iterator<Item = usize> {
        0..self.members.len()
    }

    pub fn nontrivial_components(&self) -> impl Iterator<Item = usize> + '_ {
        self.components().filter(move |&c| !self.trivial[c])
    }
}

struct Frame {
    state: usize,
    next_edge: usize,
}

/// Tarjan's algorithm, iterative. Roots are tried in index order and edges
/// in stored order, so ids are deterministic.
pub fn scc_decompose(a: &Automaton) -> SccDecomposition {
    let n = a.num_states();
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut component_of = vec![0; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut calls: Vec<Frame> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = counter;
        lowlink[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        calls.push(Frame {
            state: root,
            next_edge: 0,
        });

        while let Some(frame) = calls.last_mut() {
            let v = frame.state;
            let out = a.outgoing(v);
            if frame.next_edge < out.len() {
                let w = out[frame.next_edge].to;
                frame.next_edge += 1;
                if index[w] == UNVISITED {
                    index[w] = counter;
                    lowlink[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push(Frame {
                        state: w,
                        next_edge: 0,
                    });
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if lowlink[v] == index[v] {
                let id = members.len();
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    component_of[w] = id;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                members.push(comp);
            }
            if let Some(parent) = calls.last() {
                let p = parent.state;
                lowlink[p] = lowlink[p].min(lowlink[v]);
            }
        }
    }

    let trivial = members
        .iter()
        .map(|m| m.len() == 1 && !a.outgoing(m[0]).iter().any(|t| t.to == m[0]))
        .collect();
    SccDecomposition {
        component_of,
        members,
        trivial,
    }
}
