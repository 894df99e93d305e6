//! Zero pattern of a transfer matrix as a bipartite input-output graph.

use crate::dot::Dot;
use crate::polyrat::{RationalFunction, RationalMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsityEdge {
    pub input: usize,
    pub output: usize,
    pub label: RationalFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsityStructure {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    /// Sorted by input, then output.
    pub edges: Vec<SparsityEdge>,
}

pub fn sparsity(g: &RationalMatrix) -> SparsityStructure {
    let mut edges = Vec::new();
    for input in 0..g.cols() {
        for output in 0..g.rows() {
            let entry = &g[(output, input)];
            if !entry.is_zero() {
                edges.push(SparsityEdge { input, output, label: entry.clone() });
            }
        }
    }
    SparsityStructure {
        inputs: (1..=g.cols()).map(|i| format!("u{i}")).collect(),
        outputs: (1..=g.rows()).map(|i| format!("y{i}")).collect(),
        edges,
    }
}

impl SparsityStructure {
    pub fn with_names(mut self, inputs: &[String], outputs: &[String]) -> Self {
        if inputs.len() == self.inputs.len() && outputs.len() == self.outputs.len() {
            self.inputs = inputs.to_vec();
            self.outputs = outputs.to_vec();
        }
        self
    }

    pub fn has_edge(&self, input: usize, output: usize) -> bool {
        self.edges.iter().any(|e| e.input == input && e.output == output)
    }

    /// The bare pattern, `pattern[output][input]`.
    pub fn pattern(&self) -> Vec<Vec<bool>> {
        let mut p = vec![vec![false; self.inputs.len()]; self.outputs.len()];
        for e in &self.edges {
            p[e.output][e.input] = true;
        }
        p
    }

    pub fn to_dot(&self) -> String {
        let mut d = Dot::digraph("Z");
        d.line("rankdir=LR;");
        d.line("node [shape=circle];");
        d.open("subgraph inputs");
        d.line("rank=same;");
        for (i, name) in self.inputs.iter().enumerate() {
            d.node(&format!("u{}", i + 1), &[("label", name)]);
        }
        d.close();
        d.open("subgraph outputs");
        d.line("rank=same;");
        for (i, name) in self.outputs.iter().enumerate() {
            d.node(&format!("y{}", i + 1), &[("label", name)]);
        }
        d.close();
        for e in &self.edges {
            let label = e.label.to_string();
            d.edge(&format!("u{}", e.input + 1), &format!("y{}", e.output + 1), &[("label", &label)]);
        }
        d.finish()
    }
}
