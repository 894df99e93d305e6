//! Generalized state-space realizations with auxiliary variables.
//!
//! ```text
//! x' = A x + Ahat w + B u
//! w  = Abar x + Atil w + Bbar u
//! y  = C x + Cbar w + D u
//! ```

mod file;
mod normal_form;

pub use file::{parse_realization, read_realization, realization_to_json, write_realization};
pub use normal_form::{output_normal_form, OutputNormalForm};

use crate::error::{Error, Result};
use crate::polyrat::{QMatrix, RationalMatrix};

/// The nine coefficient blocks of a generalized realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    A,
    Ahat,
    Abar,
    Atil,
    B,
    Bbar,
    C,
    Cbar,
    D,
}

impl Block {
    pub const ALL: [Block; 9] =
        [Block::A, Block::Ahat, Block::Abar, Block::Atil, Block::B, Block::Bbar, Block::C, Block::Cbar, Block::D];

    /// Key used in realization files.
    pub fn name(self) -> &'static str {
        match self {
            Block::A => "A",
            Block::Ahat => "Ahat",
            Block::Abar => "Abar",
            Block::Atil => "Atil",
            Block::B => "B",
            Block::Bbar => "Bbar",
            Block::C => "C",
            Block::Cbar => "Cbar",
            Block::D => "D",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Variable names for inputs, states, auxiliaries and outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labels {
    pub u: Vec<String>,
    pub x: Vec<String>,
    pub w: Vec<String>,
    pub y: Vec<String>,
}

impl Labels {
    pub fn default_for(n: usize, l: usize, m: usize, p: usize) -> Self {
        let names = |prefix: &str, k: usize| (1..=k).map(|i| format!("{prefix}{i}")).collect();
        Self { u: names("u", m), x: names("x", n), w: names("w", l), y: names("y", p) }
    }

    fn fits(&self, n: usize, l: usize, m: usize, p: usize) -> bool {
        self.x.len() == n && self.w.len() == l && self.u.len() == m && self.y.len() == p
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedRealization {
    n: usize,
    l: usize,
    m: usize,
    p: usize,
    blocks: [QMatrix; 9],
    labels: Labels,
}

impl GeneralizedRealization {
    /// All-zero realization with the given state, auxiliary, input and output counts.
    pub fn zeros(n: usize, l: usize, m: usize, p: usize) -> Self {
        let blocks = Block::ALL.map(|b| {
            let (r, c) = Self::shape_for(b, n, l, m, p);
            QMatrix::zeros(r, c)
        });
        Self { n, l, m, p, blocks, labels: Labels::default_for(n, l, m, p) }
    }

    fn shape_for(b: Block, n: usize, l: usize, m: usize, p: usize) -> (usize, usize) {
        match b {
            Block::A => (n, n),
            Block::Ahat => (n, l),
            Block::Abar => (l, n),
            Block::Atil => (l, l),
            Block::B => (n, m),
            Block::Bbar => (l, m),
            Block::C => (p, n),
            Block::Cbar => (p, l),
            Block::D => (p, m),
        }
    }

    pub fn shape_of(&self, b: Block) -> (usize, usize) {
        Self::shape_for(b, self.n, self.l, self.m, self.p)
    }

    pub fn set(&mut self, b: Block, value: QMatrix) -> Result<()> {
        let want = self.shape_of(b);
        if value.shape() != want {
            return Err(Error::DimensionMismatch(format!(
                "{} must be {}x{}, got {}x{}",
                b.name(),
                want.0,
                want.1,
                value.rows(),
                value.cols()
            )));
        }
        self.blocks[b.index()] = value;
        Ok(())
    }

    /// Builder form of [`GeneralizedRealization::set`].
    pub fn with(mut self, b: Block, value: QMatrix) -> Result<Self> {
        self.set(b, value)?;
        Ok(self)
    }

    pub fn set_labels(&mut self, labels: Labels) -> Result<()> {
        if !labels.fits(self.n, self.l, self.m, self.p) {
            return Err(Error::DimensionMismatch("label counts do not match n, l, m, p".into()));
        }
        self.labels = labels;
        Ok(())
    }

    pub fn get(&self, b: Block) -> &QMatrix {
        &self.blocks[b.index()]
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    /// Number of states.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Intricacy: the number of auxiliary variables.
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// `(I - Atil)^{-1}`, or `IndexNotZero` when the auxiliary equations
    /// have no unique solution.
    pub fn aux_resolvent(&self) -> Result<QMatrix> {
        QMatrix::identity(self.l).sub(self.get(Block::Atil))?.inverse().map_err(|_| Error::IndexNotZero)
    }
}

impl From<&StateRealization> for GeneralizedRealization {
    fn from(r: &StateRealization) -> Self {
        let (n, m, p) = (r.n(), r.m(), r.p());
        let mut g = Self::zeros(n, 0, m, p);
        g.blocks[Block::A.index()] = r.a.clone();
        g.blocks[Block::B.index()] = r.b.clone();
        g.blocks[Block::C.index()] = r.c.clone();
        g.blocks[Block::D.index()] = r.d.clone();
        g.labels = r.labels.clone();
        g
    }
}

/// Ordinary `(A, B, C, D)` realization: intricacy zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateRealization {
    a: QMatrix,
    b: QMatrix,
    c: QMatrix,
    d: QMatrix,
    labels: Labels,
}

impl StateRealization {
    pub fn new(a: QMatrix, b: QMatrix, c: QMatrix, d: QMatrix) -> Result<Self> {
        let n = a.rows();
        let (m, p) = (b.cols(), c.rows());
        if a.cols() != n || b.rows() != n || c.cols() != n || d.shape() != (p, m) {
            return Err(Error::DimensionMismatch(format!(
                "A {:?}, B {:?}, C {:?}, D {:?}",
                a.shape(),
                b.shape(),
                c.shape(),
                d.shape()
            )));
        }
        Ok(Self { a, b, c, d, labels: Labels::default_for(n, 0, m, p) })
    }

    pub fn with_labels(mut self, labels: Labels) -> Result<Self> {
        if !labels.fits(self.n(), 0, self.m(), self.p()) {
            return Err(Error::DimensionMismatch("label counts do not match n, m, p".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn a(&self) -> &QMatrix {
        &self.a
    }

    pub fn b(&self) -> &QMatrix {
        &self.b
    }

    pub fn c(&self) -> &QMatrix {
        &self.c
    }

    pub fn d(&self) -> &QMatrix {
        &self.d
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn m(&self) -> usize {
        self.b.cols()
    }

    pub fn p(&self) -> usize {
        self.c.rows()
    }
}

/// Eliminates the auxiliary variables: `w = (I - Atil)^{-1}(Abar x + Bbar u)`.
pub fn minimize_intricacy(g: &GeneralizedRealization) -> Result<StateRealization> {
    let m_aux = g.aux_resolvent()?;
    let left_a = g.get(Block::Ahat).mul(&m_aux)?;
    let left_c = g.get(Block::Cbar).mul(&m_aux)?;
    let a = g.get(Block::A).add(&left_a.mul(g.get(Block::Abar))?)?;
    let b = g.get(Block::B).add(&left_a.mul(g.get(Block::Bbar))?)?;
    let c = g.get(Block::C).add(&left_c.mul(g.get(Block::Abar))?)?;
    let d = g.get(Block::D).add(&left_c.mul(g.get(Block::Bbar))?)?;
    let labels = Labels { w: Vec::new(), ..g.labels.clone() };
    StateRealization::new(a, b, c, d)?.with_labels(labels)
}

/// `C (sI - A)^{-1} B + D` for constant matrices of conforming shapes.
pub fn state_space_tf(a: &QMatrix, b: &QMatrix, c: &QMatrix, d: &QMatrix) -> Result<RationalMatrix> {
    let x = RationalMatrix::si_minus(a).solve(&RationalMatrix::from(b))?;
    RationalMatrix::from(c).mul(&x)?.add(&RationalMatrix::from(d))
}

pub fn transfer_function(r: &StateRealization) -> RationalMatrix {
    state_space_tf(&r.a, &r.b, &r.c, &r.d).expect("consistent realization has a regular resolvent")
}

/// Transfer function computed from the descriptor pencil without first
/// eliminating the auxiliaries:
///
/// ```text
/// [sI - A   -Ahat  ] [x]   [B   ]
/// [-Abar    I - Atil] [w] = [Bbar] u,    y = C x + Cbar w + D u
/// ```
pub fn descriptor_transfer_function(g: &GeneralizedRealization) -> Result<RationalMatrix> {
    g.aux_resolvent()?;
    let (n, l) = (g.n, g.l);
    let si_a = RationalMatrix::si_minus(g.get(Block::A));
    let neg = |b: Block| RationalMatrix::from(&g.get(b).neg());
    let aux = RationalMatrix::from(&QMatrix::identity(l).sub(g.get(Block::Atil))?);
    let pencil = si_a.hstack(&neg(Block::Ahat))?.vstack(&neg(Block::Abar).hstack(&aux)?)?;
    let rhs = RationalMatrix::from(&g.get(Block::B).vstack(g.get(Block::Bbar))?);
    let xw = pencil.solve(&rhs)?;
    let out = RationalMatrix::from(&g.get(Block::C).hstack(g.get(Block::Cbar))?);
    debug_assert_eq!(xw.rows(), n + l);
    out.mul(&xw)?.add(&RationalMatrix::from(g.get(Block::D)))
}

fn krylov_rank(a: &QMatrix, b: &QMatrix) -> usize {
    let n = a.rows();
    let mut blocks = b.clone();
    let mut last = b.clone();
    for _ in 1..n {
        last = a.mul(&last).expect("square A");
        blocks = blocks.hstack(&last).expect("same row count");
    }
    blocks.rank()
}

/// Kalman rank test on `[B, AB, ..., A^{n-1}B]`.
pub fn is_controllable(r: &StateRealization) -> bool {
    krylov_rank(&r.a, &r.b) == r.n()
}

/// Kalman rank test on the observability matrix (via duality).
pub fn is_observable(r: &StateRealization) -> bool {
    krylov_rank(&r.a.transpose(), &r.c.transpose()) == r.n()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::RationalFunction;

    fn rf(s: &str) -> RationalFunction {
        s.parse().unwrap()
    }

    fn diagonal_example() -> StateRealization {
        StateRealization::new(
            QMatrix::from_ints(&[&[-5, 1], &[2, -4]]),
            QMatrix::from_ints(&[&[2, 1], &[4, -1]]),
            QMatrix::from_ints(&[&[1, 1], &[-4, 2]]),
            QMatrix::zeros(2, 2),
        )
        .unwrap()
    }

    #[test]
    fn integrator() {
        let r = StateRealization::new(
            QMatrix::zeros(1, 1),
            QMatrix::from_ints(&[&[1]]),
            QMatrix::from_ints(&[&[1]]),
            QMatrix::zeros(1, 1),
        )
        .unwrap();
        assert_eq!(transfer_function(&r)[(0, 0)], rf("1/s"));
    }

    #[test]
    fn diagonal_transfer_function() {
        let g = transfer_function(&diagonal_example());
        assert_eq!(g, RationalMatrix::diag(vec![rf("6/(s+3)"), rf("-6/(s+6)")]));
    }

    #[test]
    fn diagonal_example_is_minimal() {
        let r = diagonal_example();
        assert!(is_controllable(&r));
        assert!(is_observable(&r));
    }

    #[test]
    fn decoupled_state_is_uncontrollable() {
        let r = StateRealization::new(
            QMatrix::identity(2),
            QMatrix::from_ints(&[&[1], &[0]]),
            QMatrix::identity(2),
            QMatrix::zeros(2, 1),
        )
        .unwrap();
        assert!(!is_controllable(&r));
        assert!(is_observable(&r));
    }

    #[test]
    fn distinct_modes_all_ones_input_controllable() {
        // PBH: each eigenvector e_i sees a nonzero input entry
        let r = StateRealization::new(
            QMatrix::from_ints(&[&[-1, 0, 0], &[0, -2, 0], &[0, 0, 3]]),
            QMatrix::from_ints(&[&[1], &[1], &[1]]),
            QMatrix::from_ints(&[&[1, 0, 0]]),
            QMatrix::zeros(1, 1),
        )
        .unwrap();
        assert!(is_controllable(&r));
        assert!(!is_observable(&r));
    }

    #[test]
    fn zero_intricacy_is_unchanged() {
        let r = diagonal_example();
        let g = GeneralizedRealization::from(&r);
        assert_eq!(minimize_intricacy(&g).unwrap(), r);
    }

    #[test]
    fn singular_aux_loop_rejected() {
        let g = GeneralizedRealization::zeros(1, 1, 1, 1).with(Block::Atil, QMatrix::from_ints(&[&[1]])).unwrap();
        assert_eq!(minimize_intricacy(&g), Err(Error::IndexNotZero));
        assert_eq!(descriptor_transfer_function(&g), Err(Error::IndexNotZero));
    }

    #[test]
    fn aux_chain_substitutes() {
        // w1 = 2 x, w2 = 3 w1, x' = w2 + u, y = w1  =>  x' = 6x + u, y = 2x
        let g = GeneralizedRealization::zeros(1, 2, 1, 1)
            .with(Block::Ahat, QMatrix::from_ints(&[&[0, 1]]))
            .and_then(|g| g.with(Block::Abar, QMatrix::from_ints(&[&[2], &[0]])))
            .and_then(|g| g.with(Block::Atil, QMatrix::from_ints(&[&[0, 0], &[3, 0]])))
            .and_then(|g| g.with(Block::B, QMatrix::from_ints(&[&[1]])))
            .and_then(|g| g.with(Block::Cbar, QMatrix::from_ints(&[&[1, 0]])))
            .unwrap();
        let r = minimize_intricacy(&g).unwrap();
        assert_eq!(r.a(), &QMatrix::from_ints(&[&[6]]));
        assert_eq!(r.c(), &QMatrix::from_ints(&[&[2]]));
        assert_eq!(transfer_function(&r), descriptor_transfer_function(&g).unwrap());
        assert_eq!(transfer_function(&r)[(0, 0)], rf("2/(s-6)"));
    }

    #[test]
    fn shape_checked_on_set() {
        let mut g = GeneralizedRealization::zeros(2, 1, 1, 1);
        assert!(matches!(g.set(Block::Ahat, QMatrix::zeros(1, 2)), Err(Error::DimensionMismatch(_))));
    }
}
