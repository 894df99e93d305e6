//! Dependency graphs of finite-alphabet systems by exhaustive search: an
//! update depends on an argument when changing that argument alone changes
//! the result for at least one assignment of the others.

use std::collections::BTreeSet;
use std::fmt;

use super::Gds;
use crate::dot::Dot;

/// A discrete system whose states and inputs range over finite sets.
pub trait FiniteSystem {
    type Value: Clone;
    type Input: Clone;
    /// Result of a state update; compared for equality only.
    type Next: PartialEq;
    type Output: PartialEq;

    fn state_count(&self) -> usize;
    fn input_count(&self) -> usize;
    fn output_count(&self) -> usize;
    fn state_values(&self) -> Vec<Self::Value>;
    fn input_values(&self) -> Vec<Self::Input>;
    fn update(&self, i: usize, x: &[Self::Value], u: &[Self::Input]) -> Self::Next;
    fn output(&self, r: usize, x: &[Self::Value], u: &[Self::Input]) -> Self::Output;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DepVertex {
    Input(usize),
    State(usize),
    Output(usize),
}

impl fmt::Display for DepVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DepVertex::Input(k) => write!(f, "u{}", k + 1),
            DepVertex::State(i) => write!(f, "f{}", i + 1),
            DepVertex::Output(r) => write!(f, "h{}", r + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyGraph {
    pub inputs: usize,
    pub states: usize,
    pub outputs: usize,
    pub edges: BTreeSet<(DepVertex, DepVertex)>,
}

impl DependencyGraph {
    pub fn to_dot(&self) -> String {
        let mut d = Dot::digraph("C");
        d.line("node [shape=box];");
        let vertices = (0..self.inputs)
            .map(DepVertex::Input)
            .chain((0..self.states).map(DepVertex::State))
            .chain((0..self.outputs).map(DepVertex::Output));
        for v in vertices {
            d.node(&v.to_string(), &[]);
        }
        for (from, to) in &self.edges {
            let var = match from {
                DepVertex::Input(k) => format!("u{}", k + 1),
                DepVertex::State(j) => format!("x{}", j + 1),
                DepVertex::Output(r) => format!("y{}", r + 1),
            };
            d.edge(&from.to_string(), &to.to_string(), &[("label", &var)]);
        }
        d.finish()
    }
}

pub fn dependency_graph<S: FiniteSystem>(sys: &S) -> DependencyGraph {
    let (n, m, p) = (sys.state_count(), sys.input_count(), sys.output_count());
    let xs = sys.state_values();
    let us = sys.input_values();
    let mut edges = BTreeSet::new();

    // odometer over (x_1..x_n, u_1..u_m) value indices
    let radix: Vec<usize> = (0..n).map(|_| xs.len()).chain((0..m).map(|_| us.len())).collect();
    if radix.contains(&0) {
        return DependencyGraph { inputs: m, states: n, outputs: p, edges };
    }
    let mut idx = vec![0usize; n + m];
    let materialize = |idx: &[usize]| {
        let x: Vec<S::Value> = idx[..n].iter().map(|&k| xs[k].clone()).collect();
        let u: Vec<S::Input> = idx[n..].iter().map(|&k| us[k].clone()).collect();
        (x, u)
    };
    loop {
        let (x, u) = materialize(&idx);
        let base_f: Vec<S::Next> = (0..n).map(|i| sys.update(i, &x, &u)).collect();
        let base_h: Vec<S::Output> = (0..p).map(|r| sys.output(r, &x, &u)).collect();
        for c in 0..n + m {
            let source = if c < n { DepVertex::State(c) } else { DepVertex::Input(c - n) };
            // each unordered pair of values is visited once
            for alt in idx[c] + 1..radix[c] {
                let mut varied = idx.clone();
                varied[c] = alt;
                let (vx, vu) = materialize(&varied);
                for (i, base) in base_f.iter().enumerate() {
                    if sys.update(i, &vx, &vu) != *base {
                        edges.insert((source, DepVertex::State(i)));
                    }
                }
                for (r, base) in base_h.iter().enumerate() {
                    if sys.output(r, &vx, &vu) != *base {
                        edges.insert((source, DepVertex::Output(r)));
                    }
                }
            }
        }
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < radix[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    DependencyGraph { inputs: m, states: n, outputs: p, edges }
}

impl FiniteSystem for Gds {
    type Value = bool;
    type Input = usize;
    type Next = bool;
    type Output = bool;

    fn state_count(&self) -> usize {
        self.n()
    }

    fn input_count(&self) -> usize {
        1
    }

    fn output_count(&self) -> usize {
        1
    }

    fn state_values(&self) -> Vec<bool> {
        vec![false, true]
    }

    fn input_values(&self) -> Vec<usize> {
        (1..=self.n()).collect()
    }

    fn update(&self, i: usize, x: &[bool], u: &[usize]) -> bool {
        if u[0] == i + 1 {
            self.local_update(x, i)
        } else {
            x[i]
        }
    }

    fn output(&self, _r: usize, x: &[bool], _u: &[usize]) -> bool {
        x[self.output_node()]
    }
}
