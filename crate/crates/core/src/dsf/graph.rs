use std::fmt;

use super::DynamicalStructureFunction;
use crate::dot::Dot;
use crate::polyrat::RationalFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signal {
    U(usize),
    Y(usize),
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signal::U(i) => write!(f, "u{}", i + 1),
            Signal::Y(i) => write!(f, "y{}", i + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignalEdge {
    pub from: Signal,
    pub to: Signal,
    pub label: RationalFunction,
}

/// Signals as vertices, nonzero entries of `Pbar` and `Qbar` as edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignalStructureGraph {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub edges: Vec<SignalEdge>,
}

pub fn signal_structure_graph(d: &DynamicalStructureFunction) -> SignalStructureGraph {
    let (p_bar, q_bar) = (d.p_bar(), d.q_bar());
    let mut edges = Vec::new();
    for j in 0..d.inputs() {
        for i in 0..d.outputs() {
            if !p_bar[(i, j)].is_zero() {
                edges.push(SignalEdge { from: Signal::U(j), to: Signal::Y(i), label: p_bar[(i, j)].clone() });
            }
        }
    }
    for j in 0..d.outputs() {
        for i in 0..d.outputs() {
            if !q_bar[(i, j)].is_zero() {
                edges.push(SignalEdge { from: Signal::Y(j), to: Signal::Y(i), label: q_bar[(i, j)].clone() });
            }
        }
    }
    SignalStructureGraph {
        inputs: (1..=d.inputs()).map(|i| format!("u{i}")).collect(),
        outputs: (1..=d.outputs()).map(|i| format!("y{i}")).collect(),
        edges,
    }
}

impl SignalStructureGraph {
    pub fn with_names(mut self, inputs: &[String], outputs: &[String]) -> Self {
        if inputs.len() == self.inputs.len() && outputs.len() == self.outputs.len() {
            self.inputs = inputs.to_vec();
            self.outputs = outputs.to_vec();
        }
        self
    }

    pub fn name(&self, s: Signal) -> &str {
        match s {
            Signal::U(i) => &self.inputs[i],
            Signal::Y(i) => &self.outputs[i],
        }
    }

    /// Output-to-output edges only.
    pub fn output_edges(&self) -> impl Iterator<Item = &SignalEdge> {
        self.edges.iter().filter(|e| matches!(e.from, Signal::Y(_)))
    }

    pub fn to_dot(&self) -> String {
        let mut d = Dot::digraph("W");
        d.line("node [shape=circle];");
        for i in 0..self.inputs.len() {
            d.node(&Signal::U(i).to_string(), &[("label", &self.inputs[i])]);
        }
        for i in 0..self.outputs.len() {
            d.node(&Signal::Y(i).to_string(), &[("label", &self.outputs[i])]);
        }
        for e in &self.edges {
            d.edge(&e.from.to_string(), &e.to.to_string(), &[("label", &e.label.to_string())]);
        }
        d.finish()
    }
}
