//! Rational functions in `t = q^{1/2}`.
//!
//! Haar-state values such as `h((bc)^k) = (-1)^k/[k+1]_q` leave the Laurent
//! ring, so every exact value downstream of the Haar state lives here.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::{forward_owned, QScalar, Rat};
use super::poly;
use crate::error::{Error, Result};

/// `num / den` in lowest terms; `den` is monic with nonzero constant term.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QFrac {
    num: QScalar,
    den: QScalar,
}

impl Default for QFrac {
    fn default() -> Self {
        Self::zero()
    }
}

impl QFrac {
    pub fn zero() -> Self {
        Self { num: QScalar::zero(), den: QScalar::one() }
    }

    pub fn one() -> Self {
        Self { num: QScalar::one(), den: QScalar::one() }
    }

    pub fn from_rat(c: Rat) -> Self {
        Self { num: QScalar::constant(c), den: QScalar::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_scalar(QScalar::from_int(n))
    }

    pub fn from_scalar(num: QScalar) -> Self {
        Self { num, den: QScalar::one() }
    }

    pub fn q() -> Self {
        Self::from_scalar(QScalar::q())
    }

    pub fn q_pow(e: i64) -> Self {
        Self::from_scalar(QScalar::q_pow(e))
    }

    pub fn t_pow(e: i64) -> Self {
        Self::from_scalar(QScalar::t_pow(e))
    }

    pub fn num(&self) -> &QScalar {
        &self.num
    }

    pub fn den(&self) -> &QScalar {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The Laurent polynomial, if the denominator is trivial.
    pub fn as_scalar(&self) -> Option<&QScalar> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        self.as_scalar().and_then(|s| s.as_constant())
    }

    /// Builds `num/den` and reduces to canonical form.
    pub fn new(num: QScalar, den: QScalar) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: QScalar, den: QScalar) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some((c, e)) = den.as_monomial() {
            return Self { num: num.shift(-e).scale(&c.recip()), den: QScalar::one() };
        }
        let (dv, dlo) = den.to_dense();
        let (nv, nlo) = num.to_dense();
        let g = poly::gcd(&nv, &dv);
        let (mut nq, mut dq) = if poly::is_one(&g) {
            (nv, dv)
        } else {
            (poly::divrem(&nv, &g).0, poly::divrem(&dv, &g).0)
        };
        // move leading coefficient of the denominator into the numerator
        let lead = dq.last().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            for c in dq.iter_mut() {
                *c = &*c * &inv;
            }
            for c in nq.iter_mut() {
                *c = &*c * &inv;
            }
        }
        // the gcd removed no powers of t from dq, since dq(0) != 0 after a shift
        let den = QScalar::from_dense(&dq, 0);
        let (den, extra) = match den.min_exp() {
            Some(lo) if lo != 0 => (den.shift(-lo), lo),
            _ => (den, 0),
        };
        let num = QScalar::from_dense(&nq, nlo - dlo - extra);
        if den.is_one() {
            return Self { num, den };
        }
        Self { num, den }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// `q -> 1/q`.
    pub fn invert_t(&self) -> Self {
        Self::normalize(self.num.invert_t(), self.den.invert_t())
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.recip()?)
    }

    pub fn eval_t(&self, t0: f64) -> f64 {
        self.num.eval_t(t0) / self.den.eval_t(t0)
    }

    pub fn eval_q(&self, q0: f64) -> f64 {
        self.num.eval_q(q0) / self.den.eval_q(q0)
    }

    pub fn eval_q_exact(&self, q0: &Rat) -> Option<Rat> {
        let n = self.num.eval_q_exact(q0)?;
        let d = self.den.eval_q_exact(q0)?;
        if d.is_zero() {
            None
        } else {
            Some(n / d)
        }
    }

    pub fn is_integral_in_q(&self) -> bool {
        self.num.is_integral_in_q() && self.den.is_integral_in_q()
    }
}

impl From<QScalar> for QFrac {
    fn from(s: QScalar) -> Self {
        Self::from_scalar(s)
    }
}

impl From<Rat> for QFrac {
    fn from(c: Rat) -> Self {
        Self::from_rat(c)
    }
}

impl<'a> Add<&'a QFrac> for &'a QFrac {
    type Output = QFrac;
    fn add(self, o: &QFrac) -> QFrac {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = &self.num + &o.num;
            if self.den.is_one() {
                return QFrac { num: n, den: QScalar::one() };
            }
            return QFrac::normalize(n, self.den.clone());
        }
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        QFrac::normalize(n, &self.den * &o.den)
    }
}

impl<'a> Sub<&'a QFrac> for &'a QFrac {
    type Output = QFrac;
    fn sub(self, o: &QFrac) -> QFrac {
        self + &(-o)
    }
}

impl<'a> Mul<&'a QFrac> for &'a QFrac {
    type Output = QFrac;
    fn mul(self, o: &QFrac) -> QFrac {
        if self.is_zero() || o.is_zero() {
            return QFrac::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return QFrac { num: &self.num * &o.num, den: QScalar::one() };
        }
        QFrac::normalize(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<'a> Div<&'a QFrac> for &'a QFrac {
    type Output = QFrac;
    fn div(self, o: &QFrac) -> QFrac {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &QFrac {
    type Output = QFrac;
    fn neg(self) -> QFrac {
        QFrac { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for QFrac {
    type Output = QFrac;
    fn neg(self) -> QFrac {
        -&self
    }
}

forward_owned!(QFrac, Add, add);
forward_owned!(QFrac, Sub, sub);
forward_owned!(QFrac, Mul, mul);
forward_owned!(QFrac, Div, div);

impl fmt::Display for QFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QFrac({})", self)
    }
}

impl Zero for QFrac {
    fn zero() -> Self {
        QFrac::zero()
    }
    fn is_zero(&self) -> bool {
        QFrac::is_zero(self)
    }
}

impl One for QFrac {
    fn one() -> Self {
        QFrac::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::laurent::rat;

    fn qpq() -> QFrac {
        &QFrac::q() + &QFrac::q_pow(-1)
    }

    #[test]
    fn reduces_to_lowest_terms() {
        let x = qpq();
        let y = (&x * &x).checked_div(&x).unwrap();
        assert_eq!(y, x);
        assert!(y.as_scalar().is_some());
    }

    #[test]
    fn inverse_round_trip() {
        let x = qpq();
        let inv = x.recip().unwrap();
        assert!((&x * &inv).is_one());
        assert!((inv.eval_t(1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn sum_of_fractions() {
        let a = QFrac::from_int(1).checked_div(&qpq()).unwrap();
        let b = &a + &a;
        assert_eq!(b.eval_q_exact(&rat(1, 2)), Some(rat(4, 5)));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(QFrac::one().recip().unwrap(), QFrac::one());
        assert!(QFrac::zero().recip().is_err());
    }
}
