//! Computational structure of a generalized realization and its condensation
//! into subsystems.

mod lft;
mod subsystem;

pub use lft::{lft_transfer, to_lft, LftForm};
pub use subsystem::{
    finest_admissible_partition, subsystem_structure, subsystem_tf, Component, ComponentKind, SubsystemStructure,
};

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::dot::Dot;
use crate::error::{Error, Result};
use crate::polyrat::QMatrix;
use crate::realization::{Block, GeneralizedRealization, Labels};

/// A signal of the realization. The derived order (states, auxiliaries,
/// inputs, outputs; then by index) is the global variable order used for
/// block inputs and outputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X(usize),
    W(usize),
    U(usize),
    Y(usize),
}

impl Var {
    pub fn label(self, labels: &Labels) -> &str {
        match self {
            Var::X(i) => &labels.x[i],
            Var::W(i) => &labels.w[i],
            Var::U(i) => &labels.u[i],
            Var::Y(i) => &labels.y[i],
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{}", i + 1),
            Var::W(i) => write!(f, "w{}", i + 1),
            Var::U(i) => write!(f, "u{}", i + 1),
            Var::Y(i) => write!(f, "y{}", i + 1),
        }
    }
}

/// A mechanism of the realization: input source, state update, auxiliary
/// computation or output map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Input(usize),
    State(usize),
    Aux(usize),
    Output(usize),
}

impl Vertex {
    /// The variable this vertex produces.
    pub fn produces(self) -> Var {
        match self {
            Vertex::Input(i) => Var::U(i),
            Vertex::State(i) => Var::X(i),
            Vertex::Aux(i) => Var::W(i),
            Vertex::Output(i) => Var::Y(i),
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Input(i) => write!(f, "u{}", i + 1),
            Vertex::State(i) => write!(f, "f{}", i + 1),
            Vertex::Aux(i) => write!(f, "g{}", i + 1),
            Vertex::Output(i) => write!(f, "h{}", i + 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub var: Var,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompStructure {
    m: usize,
    n: usize,
    l: usize,
    p: usize,
    edges: Vec<Edge>,
    manifest: BTreeSet<Var>,
    passthrough: Vec<Option<Var>>,
    labels: Labels,
}

impl CompStructure {
    /// Vertices in index order: inputs, states, auxiliaries, outputs.
    pub fn vertices(&self) -> Vec<Vertex> {
        (0..self.vertex_count()).map(|i| self.vertex(i)).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.m + self.n + self.l + self.p
    }

    pub fn vertex(&self, i: usize) -> Vertex {
        let (m, n, l) = (self.m, self.n, self.l);
        if i < m {
            Vertex::Input(i)
        } else if i < m + n {
            Vertex::State(i - m)
        } else if i < m + n + l {
            Vertex::Aux(i - m - n)
        } else {
            Vertex::Output(i - m - n - l)
        }
    }

    pub fn index_of(&self, v: Vertex) -> usize {
        match v {
            Vertex::Input(i) => i,
            Vertex::State(i) => self.m + i,
            Vertex::Aux(i) => self.m + self.n + i,
            Vertex::Output(i) => self.m + self.n + self.l + i,
        }
    }

    /// Index of the vertex producing `var`.
    pub fn producer(&self, var: Var) -> usize {
        self.index_of(match var {
            Var::U(i) => Vertex::Input(i),
            Var::X(i) => Vertex::State(i),
            Var::W(i) => Vertex::Aux(i),
            Var::Y(i) => Vertex::Output(i),
        })
    }

    /// Edges sorted by (from, to).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_manifest(&self, var: Var) -> bool {
        self.manifest.contains(&var)
    }

    pub fn manifest_vars(&self) -> &BTreeSet<Var> {
        &self.manifest
    }

    /// For output `r`, the variable it reads unchanged (coefficient one, nothing else).
    pub fn passthrough(&self, r: usize) -> Option<Var> {
        self.passthrough[r]
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn counts(&self) -> (usize, usize, usize, usize) {
        (self.n, self.l, self.m, self.p)
    }

    pub fn vertex_label(&self, v: Vertex) -> String {
        match v {
            Vertex::Input(i) => self.labels.u[i].clone(),
            other => other.to_string(),
        }
    }

    /// DOT rendering with rectangular nodes; components of `partition`
    /// with more than one vertex, or any non-trivial block, are drawn as
    /// shaded clusters.
    pub fn to_dot(&self, partition: Option<&SubsystemStructure>) -> String {
        let mut d = Dot::digraph("C");
        d.line("rankdir=LR;");
        d.line("node [shape=box];");
        let mut clustered = vec![false; self.vertex_count()];
        if let Some(ss) = partition {
            for (k, comp) in ss.components().iter().enumerate() {
                if comp.kind != ComponentKind::Block {
                    continue;
                }
                d.open(&format!("subgraph cluster_{k}"));
                d.line("style=filled;");
                d.line("fillcolor=lightgrey;");
                d.line(&format!("label={};", crate::dot::quote(&ss.component_name(k))));
                for &v in &comp.vertices {
                    let vx = self.vertex(v);
                    d.node(&vx.to_string(), &[("label", &self.vertex_label(vx))]);
                    clustered[v] = true;
                }
                d.close();
            }
        }
        for (i, vx) in self.vertices().into_iter().enumerate() {
            if !clustered[i] {
                d.node(&vx.to_string(), &[("label", &self.vertex_label(vx))]);
            }
        }
        for e in &self.edges {
            let (a, b) = (self.vertex(e.from).to_string(), self.vertex(e.to).to_string());
            d.edge(&a, &b, &[("label", e.var.label(&self.labels))]);
        }
        d.finish()
    }
}

fn nonzero_cols(m: &QMatrix, row: usize) -> impl Iterator<Item = usize> + '_ {
    (0..m.cols()).filter(move |&j| !m[(row, j)].is_zero())
}

/// Builds the dependency graph of a linear generalized realization: an edge
/// runs from the producer of a variable to every equation with a nonzero
/// coefficient on it.
pub fn comp_structure(g: &GeneralizedRealization) -> Result<CompStructure> {
    let (n, l, m, p) = (g.n(), g.l(), g.m(), g.p());
    let atil = g.get(Block::Atil);
    if let Some(k) = (0..l).find(|&k| !atil[(k, k)].is_zero()) {
        return Err(Error::AuxSelfLoop(k + 1));
    }

    let mut cs = CompStructure {
        m,
        n,
        l,
        p,
        edges: Vec::new(),
        manifest: BTreeSet::new(),
        passthrough: vec![None; p],
        labels: g.labels().clone(),
    };

    // (target vertex, [(matrix, variable kind)]) for each equation family
    type Family = (fn(usize) -> Vertex, usize, [(Block, fn(usize) -> Var); 3]);
    let families: [Family; 3] = [
        (Vertex::State, n, [(Block::A, Var::X), (Block::Ahat, Var::W), (Block::B, Var::U)]),
        (Vertex::Aux, l, [(Block::Abar, Var::X), (Block::Atil, Var::W), (Block::Bbar, Var::U)]),
        (Vertex::Output, p, [(Block::C, Var::X), (Block::Cbar, Var::W), (Block::D, Var::U)]),
    ];
    let mut edges = Vec::new();
    for (target, count, parts) in families {
        for row in 0..count {
            let to = cs.index_of(target(row));
            for (block, var) in parts {
                for j in nonzero_cols(g.get(block), row) {
                    let v = var(j);
                    edges.push(Edge { from: cs.producer(v), to, var: v });
                }
            }
        }
    }
    edges.sort();
    cs.edges = edges;

    cs.manifest.extend((0..m).map(Var::U));
    cs.manifest.extend((0..p).map(Var::Y));
    for r in 0..p {
        let mut reads = Vec::new();
        for (block, var) in [(Block::C, Var::X as fn(usize) -> Var), (Block::Cbar, Var::W), (Block::D, Var::U)] {
            let mat = g.get(block);
            reads.extend(nonzero_cols(mat, r).map(|j| (var(j), mat[(r, j)].is_one())));
        }
        if let [(v, true)] = reads[..] {
            cs.passthrough[r] = Some(v);
            cs.manifest.insert(v);
        }
    }
    Ok(cs)
}
