//! Exact arithmetic: rationals, polynomials in `s`, rational functions and
//! the matrices built from them.

mod bareiss;
mod parse;
mod poly;
mod qmat;
mod ratfunc;
mod rmat;

pub use parse::{fmt_q, parse_rational, parse_rational_function};
pub use poly::{poly_gcd, poly_lcm, Polynomial};
pub use qmat::QMatrix;
pub use ratfunc::{Properness, RationalFunction};
pub use rmat::RationalMatrix;

/// Exact rational scalar.
pub type Q = num_rational::BigRational;

/// Builds `a/b`. Panics when `b == 0`.
pub fn q(a: i64, b: i64) -> Q {
    Q::new(a.into(), b.into())
}
