//! Matrices of rational functions: transfer matrices, `Q(s)`, `P(s)`, `S(s)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{bareiss, poly_lcm, Polynomial, QMatrix, RationalFunction, Q};
use crate::error::{dims, Error, Result};

/// The rational `c` for which every `c * p` has integer coefficients with no
/// common factor. One when all polynomials are zero.
fn primitive_scale<'a>(polys: impl Iterator<Item = &'a Polynomial> + Clone) -> Q {
    let coeffs = || polys.clone().flat_map(|p| p.coeffs().iter()).filter(|c| !c.is_zero());
    let den = coeffs().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let content = coeffs().fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&den / c.denom()))));
    if content.is_zero() {
        Q::one()
    } else {
        Q::new(den, content)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RationalFunction>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![RationalFunction::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { RationalFunction::one() } else { RationalFunction::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RationalFunction) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Rows must share a length. An empty list gives a 0x0 matrix; use
    /// [`RationalMatrix::zeros`] for other empty shapes.
    pub fn from_rows(rows: Vec<Vec<RationalFunction>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// `sI - a` for a square constant matrix.
    pub fn si_minus(a: &QMatrix) -> Self {
        Self::from_fn(a.rows(), a.cols(), |i, j| {
            let c = RationalFunction::constant(-a[(i, j)].clone());
            if i == j {
                &c + &RationalFunction::s()
            } else {
                c
            }
        })
    }

    pub fn diag(entries: Vec<RationalFunction>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[RationalFunction] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RationalFunction::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(dims("add", self.shape(), rhs.shape()));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &rhs[(i, j)]))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(dims("sub", self.shape(), rhs.shape()));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)]))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(dims("mul", self.shape(), rhs.shape()));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] = &out[(i, j)] + &t;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| -v).collect() }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &cols)
    }

    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(dims("hstack", self.shape(), rhs.shape()));
        }
        Ok(Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn vstack(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.cols {
            return Err(dims("vstack", self.shape(), rhs.shape()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Ok(Self { rows: self.rows + rhs.rows, cols: self.cols, data })
    }

    /// Block-diagonal assembly.
    pub fn block_diag(blocks: &[RationalMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Clears denominators row by row: row `i` is multiplied by the lcm of
    /// the denominators in row `i` of `[self | rhs]`. Returns the polynomial
    /// rows of both parts and the multipliers.
    fn clear_row_denominators(&self, rhs: &Self) -> (Vec<Vec<Polynomial>>, Vec<Vec<Polynomial>>, Vec<Polynomial>) {
        let mut left = Vec::with_capacity(self.rows);
        let mut right = Vec::with_capacity(self.rows);
        let mut mults = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let l = self.row(i).iter().chain(rhs.row(i)).fold(Polynomial::one(), |acc, e| {
                if e.den().is_one() {
                    acc
                } else {
                    poly_lcm(&acc, e.den())
                }
            });
            let conv = |e: &RationalFunction| &e.num().clone() * &l.exact_div(e.den());
            let mut lrow: Vec<Polynomial> = self.row(i).iter().map(conv).collect();
            let mut rrow: Vec<Polynomial> = rhs.row(i).iter().map(conv).collect();
            // small coprime integer coefficients keep the elimination cheap
            let c = primitive_scale(lrow.iter().chain(&rrow));
            if !c.is_one() {
                lrow.iter_mut().chain(rrow.iter_mut()).for_each(|p| *p = p.scale(&c));
            }
            left.push(lrow);
            right.push(rrow);
            mults.push(l.scale(&c));
        }
        (left, right, mults)
    }

    /// Solves `self * X = rhs` exactly.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        if self.rows != self.cols || rhs.rows != self.rows {
            return Err(dims("solve", self.shape(), rhs.shape()));
        }
        let (a, b, _) = self.clear_row_denominators(rhs);
        let sol = bareiss::solve(&a, &b).ok_or(Error::SingularMatrix)?;
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                out[(i, j)] = RationalFunction::new(sol.scaled[i][j].clone(), sol.pivot.clone())?;
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(dims("inverse", self.shape(), self.shape()));
        }
        self.solve(&Self::identity(self.rows))
    }

    pub fn det(&self) -> Result<RationalFunction> {
        if self.rows != self.cols {
            return Err(dims("det", self.shape(), self.shape()));
        }
        let (a, _, mults) = self.clear_row_denominators(&Self::zeros(self.rows, 0));
        let d = bareiss::det(&a);
        let scale = mults.iter().fold(Polynomial::one(), |acc, m| &acc * m);
        RationalFunction::new(d, scale)
    }

    /// Text rows, e.g. for dumps: one vector of entry strings per row.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect()
    }
}

impl From<&QMatrix> for RationalMatrix {
    fn from(m: &QMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| RationalFunction::constant(m[(i, j)].clone()))
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = RationalFunction;
    fn index(&self, (i, j): (usize, usize)) -> &RationalFunction {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut RationalFunction {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
