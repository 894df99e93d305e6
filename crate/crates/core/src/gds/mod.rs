//! Sequential graph dynamical systems over `{0, 1}`.
//!
//! Each step the input names one node, which is recomputed from its closed
//! neighbourhood; every other node keeps its value.

mod deps;

pub use deps::{dependency_graph, DepVertex, DependencyGraph, FiniteSystem};

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::error::{Error, Result};

/// Local update: the current state, the node being updated (0-based) and its
/// neighbours.
pub type UpdateRule = fn(&[bool], usize, &[usize]) -> bool;

/// Product of `(1 + x_j)` over the closed neighbourhood, mod 2: the node turns
/// on exactly when it and all its neighbours are off.
pub fn closed_neighborhood_nor(x: &[bool], node: usize, neighbors: &[usize]) -> bool {
    !x[node] && neighbors.iter().all(|&j| !x[j])
}

#[derive(Clone, Debug)]
pub struct Gds {
    neighbors: Vec<Vec<usize>>,
    rule: UpdateRule,
    output: usize,
}

impl Gds {
    /// `edges` are 1-based undirected pairs on nodes `1..=n`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("graph needs at least one node".into()));
        }
        let mut adj = vec![BTreeSet::new(); n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(Error::BadNode { node: v, n });
                }
            }
            if a == b {
                return Err(Error::Invalid(format!("self-loop on node {a}")));
            }
            adj[a - 1].insert(b - 1);
            adj[b - 1].insert(a - 1);
        }
        Ok(Self {
            neighbors: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
            rule: closed_neighborhood_nor,
            output: n - 1,
        })
    }

    /// Cycle `1 - 2 - ... - n - 1`.
    pub fn ring(n: usize) -> Result<Self> {
        let edges: Vec<(usize, usize)> = (1..=n).map(|i| (i, i % n + 1)).filter(|(a, b)| a != b).collect();
        Self::new(n, &edges)
    }

    pub fn with_rule(mut self, rule: UpdateRule) -> Self {
        self.rule = rule;
        self
    }

    /// Selects the observed node (1-based).
    pub fn with_output(mut self, node: usize) -> Result<Self> {
        self.check_node(node)?;
        self.output = node - 1;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.neighbors.len()
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.neighbors[node]
    }

    /// Observed node, 0-based.
    pub fn output_node(&self) -> usize {
        self.output
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, nb) in self.neighbors.iter().enumerate() {
            out.extend(nb.iter().filter(|&&j| j > i).map(|&j| (i + 1, j + 1)));
        }
        out
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node == 0 || node > self.n() {
            return Err(Error::BadNode { node, n: self.n() });
        }
        Ok(())
    }

    /// Value node `i` (0-based) would take if selected.
    pub fn local_update(&self, x: &[bool], i: usize) -> bool {
        (self.rule)(x, i, &self.neighbors[i])
    }

    /// One sequential step with input `u` (1-based node).
    pub fn step(&self, x: &[bool], u: usize) -> Result<Vec<bool>> {
        self.check_node(u)?;
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "state has {} entries, graph has {} nodes",
                x.len(),
                self.n()
            )));
        }
        let mut next = x.to_vec();
        next[u - 1] = self.local_update(x, u - 1);
        Ok(next)
    }

    pub fn simulate(&self, x0: &[bool], inputs: &[usize], steps: usize) -> Result<Trajectory> {
        if inputs.len() < steps {
            return Err(Error::Invalid(format!("{steps} steps need {steps} inputs, got {}", inputs.len())));
        }
        let mut states = vec![x0.to_vec()];
        for &u in &inputs[..steps] {
            let next = self.step(states.last().expect("nonempty"), u)?;
            states.push(next);
        }
        let outputs = states.iter().map(|x| x[self.output]).collect();
        Ok(Trajectory { states, inputs: inputs[..steps].to_vec(), outputs })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    /// `x[0..=T]`.
    pub states: Vec<Vec<bool>>,
    /// `u[0..T]`.
    pub inputs: Vec<usize>,
    /// `y[0..=T]`.
    pub outputs: Vec<bool>,
}

impl Trajectory {
    /// `t,x1,..,xn,u,y`; the input column is empty on the final row.
    pub fn to_csv(&self) -> String {
        let n = self.states.first().map_or(0, Vec::len);
        let mut out = String::from("t");
        for i in 1..=n {
            let _ = write!(out, ",x{i}");
        }
        out.push_str(",u,y\n");
        for (t, x) in self.states.iter().enumerate() {
            let _ = write!(out, "{t}");
            for &v in x {
                let _ = write!(out, ",{}", u8::from(v));
            }
            match self.inputs.get(t) {
                Some(u) => {
                    let _ = write!(out, ",{u}");
                }
                None => out.push(','),
            }
            let _ = writeln!(out, ",{}", u8::from(self.outputs[t]));
        }
        out
    }
}

/// Edge list text: one `a b` pair per line, `#` comments, optional
/// `nodes N` and `output K` directives.
pub fn parse_graph(text: &str) -> Result<Gds> {
    let mut edges = Vec::new();
    let mut nodes = None;
    let mut output = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Invalid(format!("line {}: {s:?} is not a node number", lineno + 1)))
        };
        match words[..] {
            ["nodes", k] => nodes = Some(num(k)?),
            ["output", k] => output = Some(num(k)?),
            [a, b] => edges.push((num(a)?, num(b)?)),
            _ => return Err(Error::Invalid(format!("line {}: expected `a b`", lineno + 1))),
        }
    }
    let n = nodes.unwrap_or_else(|| edges.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0));
    let g = Gds::new(n, &edges)?;
    match output {
        Some(k) => g.with_output(k),
        None => Ok(g),
    }
}

/// Parses `0101` or `0,1,0,1`.
pub fn parse_state(text: &str) -> Result<Vec<bool>> {
    text.chars()
        .filter(|c| !matches!(c, ',' | ' '))
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Invalid(format!("state entry {other:?} is not 0 or 1"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_step_from_rest() {
        let g = Gds::ring(4).unwrap();
        assert_eq!(g.step(&[false; 4], 1).unwrap(), vec![true, false, false, false]);
    }

    #[test]
    fn active_neighbour_forces_zero() {
        let g = Gds::ring(4).unwrap();
        assert_eq!(g.step(&[false, true, true, false], 3).unwrap(), vec![false, true, false, false]);
        assert_eq!(g.step(&[true, false, false, false], 4).unwrap(), vec![true, false, false, false]);
    }

    #[test]
    fn bad_node() {
        let g = Gds::ring(4).unwrap();
        assert_eq!(g.step(&[false; 4], 5), Err(Error::BadNode { node: 5, n: 4 }));
        assert_eq!(g.step(&[false; 4], 0), Err(Error::BadNode { node: 0, n: 4 }));
    }

    #[test]
    fn zero_length_run() {
        let g = Gds::ring(3).unwrap();
        let tr = g.simulate(&[true, false, false], &[], 0).unwrap();
        assert_eq!(tr.states, vec![vec![true, false, false]]);
        assert_eq!(tr.to_csv(), "t,x1,x2,x3,u,y\n0,1,0,0,,0\n");
    }

    #[test]
    fn graph_file() {
        let g = parse_graph("# ring\n1 2\n2 3\n3 4\n4 1\noutput 2\n").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.output_node(), 1);
        assert_eq!(g.edges(), vec![(1, 2), (1, 4), (2, 3), (3, 4)]);
        assert!(parse_graph("1 1\n").is_err());
        assert_eq!(parse_state("0,1,1").unwrap(), vec![false, true, true]);
    }
}
