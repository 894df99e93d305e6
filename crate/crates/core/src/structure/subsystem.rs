//! Maximal admissible partition (subsystem structure) and per-block transfer
//! functions.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::{CompStructure, Var, Vertex};
use crate::dot::Dot;
use crate::error::{Error, Result};
use crate::polyrat::{QMatrix, RationalMatrix, Q};
use crate::realization::{minimize_intricacy, transfer_function, Block, GeneralizedRealization, Labels};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    /// A lone input source.
    Input,
    /// A lone output that reads one manifest variable unchanged.
    Passthrough,
    /// Everything else: a dynamic or static subsystem.
    Block,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Vertex indices, ascending.
    pub vertices: Vec<usize>,
    pub kind: ComponentKind,
    /// Variables entering from other components, in global variable order.
    pub inputs: Vec<Var>,
    /// Variables leaving for other components, plus the outputs produced
    /// inside, in global variable order.
    pub outputs: Vec<Var>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsystemStructure {
    components: Vec<Component>,
    membership: Vec<usize>,
    edges: Vec<(usize, usize, Var)>,
    /// For each system output, the block-level signal it reads: `Y(r)` when
    /// the output lives inside a block, otherwise its passthrough variable.
    output_source: Vec<Var>,
    m: usize,
    labels: Labels,
    transfer: Option<Vec<RationalMatrix>>,
}

/// Finest partition of `0..vertex_count` keeping every `merge` pair together,
/// components ordered by their smallest vertex.
pub fn finest_admissible_partition(
    vertex_count: usize,
    merge: impl IntoIterator<Item = (usize, usize)>,
) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..vertex_count).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for (a, b) in merge {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        // the smaller root wins, so every root is its component's minimum
        if ra < rb {
            parent[rb] = ra;
        } else {
            parent[ra] = rb;
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; vertex_count];
    for v in 0..vertex_count {
        let r = find(&mut parent, v);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(v);
    }
    groups
}

fn boundary(c: &CompStructure, inside: &[bool]) -> (Vec<Var>, Vec<Var>) {
    let mut inputs = BTreeSet::new();
    let mut outputs = BTreeSet::new();
    for e in c.edges() {
        match (inside[e.from], inside[e.to]) {
            (false, true) => {
                inputs.insert(e.var);
            }
            (true, false) => {
                outputs.insert(e.var);
            }
            _ => {}
        }
    }
    for (v, &is_in) in inside.iter().enumerate() {
        if let (true, Vertex::Output(r)) = (is_in, c.vertex(v)) {
            outputs.insert(Var::Y(r));
        }
    }
    (inputs.into_iter().collect(), outputs.into_iter().collect())
}

pub fn subsystem_structure(c: &CompStructure) -> SubsystemStructure {
    let hidden = c.edges().iter().filter(|e| !c.is_manifest(e.var)).map(|e| (e.from, e.to));
    let groups = finest_admissible_partition(c.vertex_count(), hidden);

    let mut membership = vec![0; c.vertex_count()];
    let mut components = Vec::with_capacity(groups.len());
    for (k, vertices) in groups.into_iter().enumerate() {
        let mut inside = vec![false; c.vertex_count()];
        for &v in &vertices {
            membership[v] = k;
            inside[v] = true;
        }
        let kind = match vertices[..] {
            [v] => match c.vertex(v) {
                Vertex::Input(_) => ComponentKind::Input,
                Vertex::Output(r) if c.passthrough(r).is_some() => ComponentKind::Passthrough,
                _ => ComponentKind::Block,
            },
            _ => ComponentKind::Block,
        };
        let (inputs, outputs) = boundary(c, &inside);
        components.push(Component { vertices, kind, inputs, outputs });
    }

    let edges: BTreeSet<(usize, usize, Var)> = c
        .edges()
        .iter()
        .filter(|e| membership[e.from] != membership[e.to])
        .map(|e| (membership[e.from], membership[e.to], e.var))
        .collect();

    let (_, _, m, p) = c.counts();
    let output_source = (0..p)
        .map(|r| {
            let k = membership[c.index_of(Vertex::Output(r))];
            match components[k].kind {
                ComponentKind::Passthrough => c.passthrough(r).expect("passthrough output"),
                _ => Var::Y(r),
            }
        })
        .collect();

    SubsystemStructure {
        components,
        membership,
        edges: edges.into_iter().collect(),
        output_source,
        m,
        labels: c.labels().clone(),
        transfer: None,
    }
}

impl SubsystemStructure {
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_of(&self, vertex: usize) -> usize {
        self.membership[vertex]
    }

    /// Component indices of the blocks, in component order.
    pub fn blocks(&self) -> Vec<usize> {
        (0..self.components.len()).filter(|&k| self.components[k].kind == ComponentKind::Block).collect()
    }

    /// Condensation edges `(from component, to component, variable)`.
    pub fn edges(&self) -> &[(usize, usize, Var)] {
        &self.edges
    }

    pub fn output_source(&self) -> &[Var] {
        &self.output_source
    }

    pub fn input_count(&self) -> usize {
        self.m
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    /// Group id per system output: outputs computed in or read from the same
    /// block share an id; outputs that pass an input straight through get
    /// their own.
    pub fn output_assignment(&self, c: &CompStructure) -> Vec<usize> {
        self.output_source
            .iter()
            .enumerate()
            .map(|(r, &src)| match src {
                Var::U(_) => self.membership[c.index_of(Vertex::Output(r))],
                Var::Y(r) => self.membership[c.index_of(Vertex::Output(r))],
                other => self.membership[c.producer(other)],
            })
            .collect()
    }

    /// Display name: blocks are `S1, S2, ...`; singletons use their vertex.
    pub fn component_name(&self, k: usize) -> String {
        let comp = &self.components[k];
        match comp.kind {
            ComponentKind::Block => {
                let idx = self.components[..k].iter().filter(|c| c.kind == ComponentKind::Block).count();
                format!("S{}", idx + 1)
            }
            ComponentKind::Input => {
                let v = comp.vertices[0];
                self.labels.u[v].clone()
            }
            ComponentKind::Passthrough => {
                let v = comp.vertices[0];
                let r = v + self.labels.y.len() - self.membership.len();
                format!("h{}", r + 1)
            }
        }
    }

    /// Block transfer functions in block order, once computed.
    pub fn transfer_functions(&self) -> Option<&[RationalMatrix]> {
        self.transfer.as_deref()
    }

    /// Computes every block's transfer function from the realization.
    pub fn with_transfer_functions(mut self, c: &CompStructure, g: &GeneralizedRealization) -> Result<Self> {
        let tfs =
            self.blocks().into_iter().map(|k| subsystem_tf(c, &self.components[k], g)).collect::<Result<Vec<_>>>()?;
        self.transfer = Some(tfs);
        Ok(self)
    }

    /// Replaces the block transfer functions, e.g. to test a perturbed model.
    pub fn set_transfer_functions(&mut self, tfs: Vec<RationalMatrix>) -> Result<()> {
        let blocks = self.blocks();
        if tfs.len() != blocks.len() {
            return Err(Error::DimensionMismatch(format!("{} blocks, {} transfer functions", blocks.len(), tfs.len())));
        }
        for (k, tf) in blocks.iter().zip(&tfs) {
            let comp = &self.components[*k];
            if tf.shape() != (comp.outputs.len(), comp.inputs.len()) {
                return Err(Error::DimensionMismatch(format!("block {}", self.component_name(*k))));
            }
        }
        self.transfer = Some(tfs);
        Ok(())
    }

    /// DOT rendering: rectangular nodes, blocks filled, edges labeled by variable.
    pub fn to_dot(&self) -> String {
        let mut d = Dot::digraph("S");
        d.line("rankdir=LR;");
        d.line("node [shape=box, style=filled];");
        for (k, comp) in self.components.iter().enumerate() {
            let colour = if comp.kind == ComponentKind::Block { "burlywood" } else { "palegreen" };
            d.node(&format!("c{k}"), &[("label", &self.component_name(k)), ("fillcolor", colour)]);
        }
        for &(a, b, var) in &self.edges {
            d.edge(&format!("c{a}"), &format!("c{b}"), &[("label", var.label(&self.labels))]);
        }
        d.finish()
    }
}

fn coefficient(g: &GeneralizedRealization, eq: Vertex, var: Var) -> Q {
    let (block, row, col) = match (eq, var) {
        (Vertex::State(j), Var::X(i)) => (Block::A, j, i),
        (Vertex::State(j), Var::W(i)) => (Block::Ahat, j, i),
        (Vertex::State(j), Var::U(i)) => (Block::B, j, i),
        (Vertex::Aux(k), Var::X(i)) => (Block::Abar, k, i),
        (Vertex::Aux(k), Var::W(i)) => (Block::Atil, k, i),
        (Vertex::Aux(k), Var::U(i)) => (Block::Bbar, k, i),
        (Vertex::Output(r), Var::X(i)) => (Block::C, r, i),
        (Vertex::Output(r), Var::W(i)) => (Block::Cbar, r, i),
        (Vertex::Output(r), Var::U(i)) => (Block::D, r, i),
        _ => return Q::zero(),
    };
    g.get(block)[(row, col)].clone()
}

/// Transfer function of the subsystem formed by `component`'s vertices, from
/// its entering variables to its leaving variables (both in global order).
pub fn subsystem_tf(c: &CompStructure, component: &Component, g: &GeneralizedRealization) -> Result<RationalMatrix> {
    let mut inside = vec![false; c.vertex_count()];
    for &v in &component.vertices {
        inside[v] = true;
    }
    if let Some(e) = c.edges().iter().find(|e| inside[e.from] != inside[e.to] && !c.is_manifest(e.var)) {
        let at = if inside[e.from] { e.from } else { e.to };
        return Err(Error::InconsistentComponent { vertex: c.vertex(at).to_string(), variable: e.var.to_string() });
    }
    let (inputs, outputs) = boundary(c, &inside);

    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for &v in &component.vertices {
        match c.vertex(v) {
            Vertex::State(i) => xs.push(i),
            Vertex::Aux(k) => ws.push(k),
            _ => {}
        }
    }
    let (n, l, m, p) = (xs.len(), ws.len(), inputs.len(), outputs.len());
    let fill = |rows: &[Vertex], cols: &[Var]| {
        QMatrix::from_fn(rows.len(), cols.len(), |i, j| coefficient(g, rows[i], cols[j]))
    };
    let state_eqs: Vec<Vertex> = xs.iter().map(|&i| Vertex::State(i)).collect();
    let aux_eqs: Vec<Vertex> = ws.iter().map(|&k| Vertex::Aux(k)).collect();
    let x_vars: Vec<Var> = xs.iter().map(|&i| Var::X(i)).collect();
    let w_vars: Vec<Var> = ws.iter().map(|&k| Var::W(k)).collect();

    let mut c_loc = QMatrix::zeros(p, n);
    let mut cbar_loc = QMatrix::zeros(p, l);
    let mut d_loc = QMatrix::zeros(p, m);
    for (row, out) in outputs.iter().enumerate() {
        match *out {
            Var::X(i) => c_loc[(row, xs.binary_search(&i).expect("state inside"))] = Q::from_integer(1.into()),
            Var::W(k) => cbar_loc[(row, ws.binary_search(&k).expect("aux inside"))] = Q::from_integer(1.into()),
            Var::Y(r) => {
                let eq = Vertex::Output(r);
                for (j, &v) in x_vars.iter().enumerate() {
                    c_loc[(row, j)] = coefficient(g, eq, v);
                }
                for (j, &v) in w_vars.iter().enumerate() {
                    cbar_loc[(row, j)] = coefficient(g, eq, v);
                }
                for (j, &v) in inputs.iter().enumerate() {
                    d_loc[(row, j)] = coefficient(g, eq, v);
                }
            }
            Var::U(_) => unreachable!("inputs never leave a component"),
        }
    }

    let local = GeneralizedRealization::zeros(n, l, m, p)
        .with(Block::A, fill(&state_eqs, &x_vars))?
        .with(Block::Ahat, fill(&state_eqs, &w_vars))?
        .with(Block::B, fill(&state_eqs, &inputs))?
        .with(Block::Abar, fill(&aux_eqs, &x_vars))?
        .with(Block::Atil, fill(&aux_eqs, &w_vars))?
        .with(Block::Bbar, fill(&aux_eqs, &inputs))?
        .with(Block::C, c_loc)?
        .with(Block::Cbar, cbar_loc)?
        .with(Block::D, d_loc)?;
    let reduced = minimize_intricacy(&local).map_err(|e| match e {
        Error::IndexNotZero => Error::AlgebraicLoop,
        other => other,
    })?;
    Ok(transfer_function(&reduced))
}
