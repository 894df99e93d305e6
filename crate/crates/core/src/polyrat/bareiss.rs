//! Fraction-free (Bareiss) elimination, run over Z[s] after clearing row
//! denominators.
//!
//! Every division performed during elimination and back-substitution is exact
//! in Z[s], so intermediate entries stay polynomial and no gcd work happens
//! until the caller normalizes the final quotients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Polynomial, Q};

/// Result of solving `A X = B` fraction-free.
#[derive(Clone, Debug)]
pub struct FractionFreeSolution {
    /// `det(A)`.
    pub det: Polynomial,
    /// Common denominator; `X = scaled / pivot`.
    pub pivot: Polynomial,
    /// `pivot * A^{-1} B`, polynomial entries.
    pub scaled: Vec<Vec<Polynomial>>,
}

/// Integer polynomial, ascending degree, trimmed.
type ZPoly = Vec<BigInt>;

fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let out: ZPoly = (0..a.len().max(b.len()))
        .map(|k| match (a.get(k), b.get(k)) {
            (Some(x), Some(y)) => x - y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => -y,
            (None, None) => unreachable!(),
        })
        .collect();
    trim(out)
}

/// `a / b` where the quotient is known to lie in Z[s].
fn zexact_div(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = b.len() - 1;
    if a.len() <= db {
        debug_assert!(a.is_empty(), "inexact division in Z[s]");
        return Vec::new();
    }
    let lc = &b[db];
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        if rem[k + db].is_zero() {
            continue;
        }
        let c = &rem[k + db] / lc;
        debug_assert!((&c * lc) == rem[k + db], "inexact division in Z[s]");
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact division in Z[s]");
    trim(quot)
}

fn to_poly(p: ZPoly) -> Polynomial {
    Polynomial::from_coeffs(p.into_iter().map(Q::from_integer).collect())
}

/// Scales a row of polynomials to integer coefficients, returning the factor.
fn integer_row<'a>(row: impl Iterator<Item = &'a Polynomial> + Clone) -> (BigInt, Vec<ZPoly>) {
    let den = row.clone().flat_map(|p| p.coeffs().iter()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = row.map(|p| p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect()).collect();
    (den, ints)
}

fn pick_pivot(m: &[Vec<ZPoly>], k: usize) -> Option<usize> {
    (k..m.len()).filter(|&i| !m[i][k].is_empty()).min_by_key(|&i| (m[i][k].len(), i))
}

/// Solves `a * X = b` for square `a`. Returns `None` when `det(a) = 0`.
pub fn solve(a: &[Vec<Polynomial>], b: &[Vec<Polynomial>]) -> Option<FractionFreeSolution> {
    let n = a.len();
    debug_assert_eq!(b.len(), n);
    let k_rhs = b.first().map_or(0, Vec::len);
    let width = n + k_rhs;
    let mut row_scale = BigInt::one();
    let mut m: Vec<Vec<ZPoly>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| {
            let (den, row) = integer_row(ra.iter().chain(rb));
            row_scale *= den;
            row
        })
        .collect();

    let mut negate = false;
    let mut prev: ZPoly = vec![BigInt::one()];
    for k in 0..n {
        let p = pick_pivot(&m, k)?;
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..width {
                let t = zsub(&zmul(&m[k][k], &m[i][j]), &zmul(&m[i][k], &m[k][j]));
                m[i][j] = if prev.len() == 1 && prev[0].is_one() { t } else { zexact_div(&t, &prev) };
            }
            m[i][k] = Vec::new();
        }
        prev = m[k][k].clone();
    }

    let pivot: ZPoly = if n == 0 { vec![BigInt::one()] } else { m[n - 1][n - 1].clone() };

    // back-substitution on the triangular system, scaled by the last pivot
    let mut scaled = vec![vec![ZPoly::new(); k_rhs]; n];
    for c in 0..k_rhs {
        for i in (0..n).rev() {
            let mut acc = zmul(&pivot, &m[i][n + c]);
            for j in i + 1..n {
                if !m[i][j].is_empty() {
                    acc = zsub(&acc, &zmul(&m[i][j], &scaled[j][c]));
                }
            }
            scaled[i][c] = zexact_div(&acc, &m[i][i]);
        }
    }

    let mut det = to_poly(pivot.clone()).scale(&Q::new(BigInt::one(), row_scale));
    if negate {
        det = -&det;
    }
    Some(FractionFreeSolution {
        det,
        pivot: to_poly(pivot),
        scaled: scaled.into_iter().map(|r| r.into_iter().map(to_poly).collect()).collect(),
    })
}

/// Determinant of a square polynomial matrix.
pub fn det(a: &[Vec<Polynomial>]) -> Polynomial {
    solve(a, &vec![Vec::new(); a.len()]).map_or_else(Polynomial::zero, |s| s.det)
}
