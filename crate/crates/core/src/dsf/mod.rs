//! Dynamical structure functions: direct causal dependencies among the
//! manifest signals, `y1 = Q y1 + P u`.

mod file;
mod graph;

pub use file::{dsf_to_json, parse_dsf};
pub use graph::{signal_structure_graph, Signal, SignalEdge, SignalStructureGraph};

use crate::error::{dims, Error, Result};
use crate::polyrat::{QMatrix, RationalFunction, RationalMatrix};
use crate::realization::OutputNormalForm;
use crate::structure::LftForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicalStructureFunction {
    /// `p1 x p1`, zero diagonal.
    pub q: RationalMatrix,
    /// `p1 x m`.
    pub p: RationalMatrix,
    pub c2: QMatrix,
    pub d1: QMatrix,
    pub d2: QMatrix,
    /// `output_perm[k]` is the original index of the k-th reordered output.
    pub output_perm: Vec<usize>,
}

fn unpermute(m: &RationalMatrix, perm: &[usize], cols_too: bool) -> RationalMatrix {
    let mut out = RationalMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let col = if cols_too { perm[j] } else { j };
            out[(perm[i], col)] = m[(i, j)].clone();
        }
    }
    out
}

impl DynamicalStructureFunction {
    /// Assembles a DSF in original output order (no reordering).
    pub fn from_parts(q: RationalMatrix, p: RationalMatrix, c2: QMatrix, d1: QMatrix, d2: QMatrix) -> Result<Self> {
        let (p1, m) = p.shape();
        if q.shape() != (p1, p1) {
            return Err(dims("dsf Q", q.shape(), (p1, p1)));
        }
        if c2.cols() != p1 || d1.shape() != (p1, m) || d2.shape() != (c2.rows(), m) {
            return Err(Error::DimensionMismatch("dsf constant blocks".into()));
        }
        let output_perm = (0..p1 + c2.rows()).collect();
        Ok(Self { q, p, c2, d1, d2, output_perm })
    }

    pub fn p1(&self) -> usize {
        self.q.rows()
    }

    pub fn outputs(&self) -> usize {
        self.output_perm.len()
    }

    pub fn inputs(&self) -> usize {
        self.p.cols()
    }

    /// `[[Q, 0], [C2, 0]]` in reordered output coordinates.
    pub fn q_bar_reordered(&self) -> RationalMatrix {
        let p1 = self.p1();
        let c2 = RationalMatrix::from(&self.c2);
        RationalMatrix::from_fn(self.outputs(), self.outputs(), |i, j| match (i < p1, j < p1) {
            (true, true) => self.q[(i, j)].clone(),
            (false, true) => c2[(i - p1, j)].clone(),
            _ => RationalFunction::zero(),
        })
    }

    /// `[P + (I - Q) D1; D2 - C2 D1]` in reordered output coordinates.
    pub fn p_bar_reordered(&self) -> RationalMatrix {
        let d1 = RationalMatrix::from(&self.d1);
        let i_minus_q = RationalMatrix::identity(self.p1()).sub(&self.q).expect("square");
        let top = self.p.add(&i_minus_q.mul(&d1).expect("conform")).expect("conform");
        let bottom = self.d2.sub(&self.c2.mul(&self.d1).expect("conform")).expect("conform");
        top.vstack(&RationalMatrix::from(&bottom)).expect("conform")
    }

    /// Output-on-output dependencies, indexed by original output number.
    pub fn q_bar(&self) -> RationalMatrix {
        unpermute(&self.q_bar_reordered(), &self.output_perm, true)
    }

    /// Input-to-output dependencies, indexed by original output number.
    pub fn p_bar(&self) -> RationalMatrix {
        unpermute(&self.p_bar_reordered(), &self.output_perm, false)
    }
}

pub fn dsf(nf: &OutputNormalForm) -> Result<DynamicalStructureFunction> {
    let p1 = nf.p1;
    if p1 == 0 {
        return Err(Error::NoManifestOutputs);
    }
    let a11 = RationalMatrix::from(&nf.a11);
    let b1 = RationalMatrix::from(&nf.b1);
    let (w, v) = if nf.a22.rows() == 0 {
        (a11, b1)
    } else {
        let resolvent = RationalMatrix::si_minus(&nf.a22);
        let a12 = RationalMatrix::from(&nf.a12);
        let through = resolvent.solve(&RationalMatrix::from(&nf.a21))?;
        let through_b = resolvent.solve(&RationalMatrix::from(&nf.b2))?;
        (a11.add(&a12.mul(&through)?)?, b1.add(&a12.mul(&through_b)?)?)
    };
    let s = RationalFunction::s();
    let damp: Vec<RationalFunction> = (0..p1).map(|i| &s - &w[(i, i)]).collect();
    let q =
        RationalMatrix::from_fn(p1, p1, |i, j| if i == j { RationalFunction::zero() } else { &w[(i, j)] / &damp[i] });
    let p = RationalMatrix::from_fn(p1, v.cols(), |i, j| &v[(i, j)] / &damp[i]);
    Ok(DynamicalStructureFunction {
        q,
        p,
        c2: nf.c2.clone(),
        d1: nf.d1.clone(),
        d2: nf.d2.clone(),
        output_perm: nf.output_perm.clone(),
    })
}

/// `(I - Qbar)^{-1} Pbar`, in original output order.
pub fn dsf_transfer(d: &DynamicalStructureFunction) -> Result<RationalMatrix> {
    let lhs = RationalMatrix::identity(d.outputs()).sub(&d.q_bar())?;
    lhs.solve(&d.p_bar()).map_err(|e| match e {
        Error::SingularMatrix => Error::SingularLoop,
        other => other,
    })
}

/// Splits `Qbar` into the part between outputs of the same group and the rest.
pub fn split_q(d: &DynamicalStructureFunction, assignment: &[usize]) -> Result<(RationalMatrix, RationalMatrix)> {
    if assignment.len() != d.outputs() {
        return Err(dims("split_q assignment", (assignment.len(), 1), (d.outputs(), 1)));
    }
    let q_bar = d.q_bar();
    let int = RationalMatrix::from_fn(q_bar.rows(), q_bar.cols(), |i, j| {
        if assignment[i] == assignment[j] {
            q_bar[(i, j)].clone()
        } else {
            RationalFunction::zero()
        }
    });
    let ext = q_bar.sub(&int)?;
    Ok((int, ext))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub holds: bool,
    /// `S [L | K]` with block outputs mapped to system outputs.
    pub lhs: RationalMatrix,
    /// `(I - Qint)^{-1} [Pbar | Qext]`.
    pub rhs: RationalMatrix,
    pub residual: RationalMatrix,
}

/// Checks `S [L | K] = (I - Qint)^{-1} [Pbar | Qext]`. Block outputs are
/// matched to system outputs through `Ky`, which must be a permutation.
pub fn check_relation(lft: &LftForm, d: &DynamicalStructureFunction, assignment: &[usize]) -> Result<RelationCheck> {
    let p = d.outputs();
    let is_perm = lft.ky.shape() == (p, p)
        && lft.ly.is_zero()
        && lft.ky.transpose().mul(&lft.ky).map(|m| m == QMatrix::identity(p)).unwrap_or(false);
    if !is_perm {
        return Err(Error::Invalid("block outputs do not coincide with the system outputs".into()));
    }
    let ky = RationalMatrix::from(&lft.ky);
    let routed = lft.l.hstack(&lft.k.mul(&lft.ky.transpose())?)?;
    let lhs = ky.mul(&lft.s())?.mul(&RationalMatrix::from(&routed))?;

    let (int, ext) = split_q(d, assignment)?;
    let rhs = RationalMatrix::identity(p).sub(&int)?.solve(&d.p_bar().hstack(&ext)?).map_err(|e| match e {
        Error::SingularMatrix => Error::SingularLoop,
        other => other,
    })?;
    let residual = lhs.sub(&rhs)?;
    Ok(RelationCheck { holds: residual.is_zero(), lhs, rhs, residual })
}
