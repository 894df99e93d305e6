//! Interconnection of the block transfer functions through a static
//! 0/1 routing matrix.
//!
//! With `v` the stacked block outputs and `pi` the stacked block inputs:
//! `pi = L u + K v`, `v = S pi`, `y = Ly u + Ky v`.

use num_traits::One;

use super::{SubsystemStructure, Var};
use crate::error::{Error, Result};
use crate::polyrat::{QMatrix, RationalMatrix, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LftForm {
    pub l: QMatrix,
    pub k: QMatrix,
    pub ly: QMatrix,
    pub ky: QMatrix,
    /// Block transfer functions, in block order.
    pub s_blocks: Vec<RationalMatrix>,
    /// Stacked block inputs.
    pub pi: Vec<Var>,
    /// Stacked block outputs.
    pub v: Vec<Var>,
}

impl LftForm {
    pub fn s(&self) -> RationalMatrix {
        RationalMatrix::block_diag(&self.s_blocks)
    }

    /// `[[Ly, Ky], [L, K]]`.
    pub fn routing(&self) -> QMatrix {
        self.ly.hstack(&self.ky).and_then(|top| top.vstack(&self.l.hstack(&self.k)?)).expect("routing blocks conform")
    }
}

pub fn to_lft(ss: &SubsystemStructure) -> Result<LftForm> {
    let s_blocks = ss.transfer_functions().ok_or(Error::MissingTransferFunctions)?.to_vec();
    let blocks = ss.blocks();
    let comps = ss.components();
    let pi: Vec<Var> = blocks.iter().flat_map(|&k| comps[k].inputs.iter().copied()).collect();
    let v: Vec<Var> = blocks.iter().flat_map(|&k| comps[k].outputs.iter().copied()).collect();
    let m = ss.input_count();
    let p = ss.output_source().len();
    let pos = |var: Var| {
        v.iter().position(|&x| x == var).ok_or_else(|| Error::Invalid(format!("{var} is not produced by any block")))
    };

    let mut l = QMatrix::zeros(pi.len(), m);
    let mut k = QMatrix::zeros(pi.len(), v.len());
    for (row, &var) in pi.iter().enumerate() {
        match var {
            Var::U(i) => l[(row, i)] = Q::one(),
            other => k[(row, pos(other)?)] = Q::one(),
        }
    }
    let mut ly = QMatrix::zeros(p, m);
    let mut ky = QMatrix::zeros(p, v.len());
    for (r, &src) in ss.output_source().iter().enumerate() {
        match src {
            Var::U(i) => ly[(r, i)] = Q::one(),
            other => ky[(r, pos(other)?)] = Q::one(),
        }
    }
    Ok(LftForm { l, k, ly, ky, s_blocks, pi, v })
}

/// `Ky (I - S K)^{-1} S L + Ly`.
pub fn lft_transfer(f: &LftForm) -> Result<RationalMatrix> {
    let s = f.s();
    let k = RationalMatrix::from(&f.k);
    let loop_gain = RationalMatrix::identity(s.rows()).sub(&s.mul(&k)?)?;
    let rhs = s.mul(&RationalMatrix::from(&f.l))?;
    let closed = loop_gain.solve(&rhs).map_err(|e| match e {
        Error::SingularMatrix => Error::AlgebraicLoop,
        other => other,
    })?;
    RationalMatrix::from(&f.ky).mul(&closed)?.add(&RationalMatrix::from(&f.ly))
}
