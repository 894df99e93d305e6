//! Output-coordinate normal form: a similarity `z = T x` (after reordering
//! outputs and states) under which the output map becomes `[[I, 0], [C2, 0]]`.

use num_traits::{One, Zero};

use super::StateRealization;
use crate::error::{Error, Result};
use crate::polyrat::{QMatrix, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputNormalForm {
    /// `rank(Co)`: the number of independent outputs.
    pub p1: usize,
    pub a11: QMatrix,
    pub a12: QMatrix,
    pub a21: QMatrix,
    pub a22: QMatrix,
    pub b1: QMatrix,
    pub b2: QMatrix,
    /// `(p - p1) x p1`, expresses the dependent outputs in terms of the first `p1`.
    pub c2: QMatrix,
    pub d1: QMatrix,
    pub d2: QMatrix,
    /// `output_perm[k]` is the original index of the k-th reordered output.
    pub output_perm: Vec<usize>,
    /// `state_perm[k]` is the original index of the k-th reordered state.
    pub state_perm: Vec<usize>,
    /// Transformation applied to the reordered states.
    pub t: QMatrix,
}

impl OutputNormalForm {
    pub fn n(&self) -> usize {
        self.a11.rows() + self.a22.rows()
    }

    pub fn p(&self) -> usize {
        self.p1 + self.c2.rows()
    }

    pub fn m(&self) -> usize {
        self.b1.cols()
    }

    /// The transformed realization `(T A T^{-1}, T B, C T^{-1}, D)` in
    /// reordered output coordinates.
    pub fn realization(&self) -> StateRealization {
        let a = self
            .a11
            .hstack(&self.a12)
            .and_then(|top| top.vstack(&self.a21.hstack(&self.a22)?))
            .expect("blocks conform");
        let b = self.b1.vstack(&self.b2).expect("blocks conform");
        let c = normal_output_map(self.n(), self.p1, &self.c2);
        let d = self.d1.vstack(&self.d2).expect("blocks conform");
        StateRealization::new(a, b, c, d).expect("blocks conform")
    }
}

/// `[[I, 0], [C2, 0]]` with `n` columns.
fn normal_output_map(n: usize, p1: usize, c2: &QMatrix) -> QMatrix {
    QMatrix::from_fn(p1 + c2.rows(), n, |i, j| match (i < p1, j < p1) {
        (true, true) if i == j => Q::one(),
        (false, true) => c2[(i - p1, j)].clone(),
        _ => Q::zero(),
    })
}

fn complete_perm(head: Vec<usize>, len: usize) -> Vec<usize> {
    let mut perm = head;
    let rest: Vec<usize> = (0..len).filter(|i| !perm.contains(i)).collect();
    perm.extend(rest);
    perm
}

pub fn output_normal_form(r: &StateRealization) -> Result<OutputNormalForm> {
    let (n, m, p) = (r.n(), r.m(), r.p());
    let co = r.c();
    let rows = co.independent_rows();
    let p1 = rows.len();
    if p1 == 0 {
        return Err(Error::NoManifestOutputs);
    }
    let cols = co.select_rows(&rows).rref().1;
    let output_perm = complete_perm(rows, p);
    let state_perm = complete_perm(cols, n);

    let a = r.a().select(&state_perm, &state_perm);
    let b = r.b().select_rows(&state_perm);
    let c = co.select(&output_perm, &state_perm);
    let d = r.d().select_rows(&output_perm);

    let head: Vec<usize> = (0..p1).collect();
    let tail: Vec<usize> = (p1..n).collect();
    let tail_out: Vec<usize> = (p1..p).collect();
    let c11 = c.select(&head, &head);
    let c12 = c.select(&head, &tail);
    let c21 = c.select(&tail_out, &head);

    // null-space basis of the independent rows, split as [N1; N2]
    let null = c.select_rows(&head).null_space();
    let null_cols: Vec<usize> = (0..null.cols()).collect();
    let n2 = null.select(&tail, &null_cols);
    let n2_inv = n2.inverse()?;

    let t = c11.hstack(&c12)?.vstack(&QMatrix::zeros(n - p1, p1).hstack(&n2_inv)?)?;
    let t_inv = t.inverse()?;
    let at = t.mul(&a)?.mul(&t_inv)?;
    let bt = t.mul(&b)?;
    let c2 = c21.mul(&c11.inverse()?)?;
    debug_assert_eq!(c.mul(&t_inv)?, normal_output_map(n, p1, &c2));

    let all_in: Vec<usize> = (0..m).collect();
    Ok(OutputNormalForm {
        p1,
        a11: at.select(&head, &head),
        a12: at.select(&head, &tail),
        a21: at.select(&tail, &head),
        a22: at.select(&tail, &tail),
        b1: bt.select(&head, &all_in),
        b2: bt.select(&tail, &all_in),
        c2,
        d1: d.select(&head, &all_in),
        d2: d.select(&tail_out, &all_in),
        output_perm,
        state_perm,
        t,
    })
}
