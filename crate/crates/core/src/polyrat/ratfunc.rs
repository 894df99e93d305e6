//! Rational functions `num(s)/den(s)` kept in canonical form: coprime,
//! monic denominator, zero encoded as `0/1`. Canonical form makes structural
//! equality the same as mathematical equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::poly::{poly_gcd, Polynomial};
use super::Q;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Properness {
    Improper,
    Proper,
    StrictlyProper,
}

impl RationalFunction {
    /// Normalizes `num/den` into canonical form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.recip();
            Self { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        Self { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn s() -> Self {
        Self::from_poly(Polynomial::s())
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Q::from_integer(c.into()))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self { num: p, den: Polynomial::one() }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value as a rational constant, if it has no `s` dependence.
    pub fn as_constant(&self) -> Option<Q> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    pub fn properness(&self) -> Properness {
        match self.num.degree() {
            None => Properness::StrictlyProper,
            Some(dn) => {
                let dd = self.den.degree().unwrap_or(0);
                match dn.cmp(&dd) {
                    std::cmp::Ordering::Less => Properness::StrictlyProper,
                    std::cmp::Ordering::Equal => Properness::Proper,
                    std::cmp::Ordering::Greater => Properness::Improper,
                }
            }
        }
    }

    pub fn is_proper(&self) -> bool {
        self.properness() != Properness::Improper
    }

    pub fn is_strictly_proper(&self) -> bool {
        self.properness() == Properness::StrictlyProper
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Evaluates at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Q> for RationalFunction {
    fn from(c: Q) -> Self {
        Self::constant(c)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let g = poly_gcd(&self.den, &rhs.den);
        let a = self.den.exact_div(&g);
        let b = rhs.den.exact_div(&g);
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RationalFunction::normalize(num, &a * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // cross-cancel before multiplying to keep degrees down
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        let lc = den.leading_coeff().expect("nonzero").clone();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::recip`] to handle it.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.recip().expect("rational function division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        // the denominator is monic, so a single term is a bare power of s
        if self.den.term_count() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_rational_function(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn cancels_common_factor() {
        let f = rf(&[2, 2], &[1, 1]);
        assert_eq!(f, RationalFunction::from_int(2));
        assert_eq!(f.to_string(), "2");
    }

    #[test]
    fn keeps_coprime_pair() {
        let f = rf(&[-3], &[2, 3, 1]);
        assert_eq!(f.num(), &p(&[-3]));
        assert_eq!(f.den(), &p(&[2, 3, 1]));
        assert_eq!(f.to_string(), "-3/(s^2+3*s+2)");
    }

    #[test]
    fn diagonal_entry_reduces() {
        // (6s+36)/(s^2+9s+18) = 6/(s+3)
        let f = rf(&[36, 6], &[18, 9, 1]);
        assert_eq!(f, rf(&[6], &[3, 1]));
    }

    #[test]
    fn denominator_made_monic() {
        let f = rf(&[1], &[4, 2]);
        assert_eq!(f.den(), &p(&[2, 1]));
        assert_eq!(f.num().coeff(0), Q::new(1.into(), 2.into()));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RationalFunction::new(p(&[1]), Polynomial::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn zero_is_zero_over_one() {
        let f = rf(&[], &[5, 1]);
        assert_eq!(f, RationalFunction::zero());
        assert!(f.den().is_one());
    }

    #[test]
    fn properness_classes() {
        assert_eq!(rf(&[2], &[2, 1]).properness(), Properness::StrictlyProper);
        assert_eq!(rf(&[1, 1], &[2, 1]).properness(), Properness::Proper);
        assert_eq!(RationalFunction::s().properness(), Properness::Improper);
        assert_eq!(RationalFunction::zero().properness(), Properness::StrictlyProper);
    }

    #[test]
    fn inverse_of_s_times_s() {
        let inv_s = rf(&[1], &[0, 1]);
        assert!((&inv_s * &RationalFunction::s()).is_one());
    }

    #[test]
    fn add_with_shared_factor() {
        // 1/(s+1) + 1/((s+1)(s+2)) = (s+3)/((s+1)(s+2))
        let a = rf(&[1], &[1, 1]);
        let b = rf(&[1], &[2, 3, 1]);
        assert_eq!(&a + &b, rf(&[3, 1], &[2, 3, 1]));
        assert!((&a - &a).is_zero());
    }
}
