//! q-integers, evaluation points and the `[n]_q ≅ b_q^n` check.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::frac::QFrac;
use super::laurent::{parse_rat, rat_to_string, QScalar, Rat};
use super::radical::QRadical;
use crate::error::{Error, Result};

/// `[n]_q = (q^n - q^{-n})/(q - q^{-1})` with `n = twice_n / 2`.
///
/// Integer `n` gives a Laurent polynomial; half-integer `n` a rational function.
pub fn q_int(twice_n: i64) -> QFrac {
    if twice_n == 0 {
        return QFrac::zero();
    }
    if twice_n % 2 == 0 {
        return QFrac::from_scalar(q_int_scalar(twice_n / 2));
    }
    // exponents of t are 2n
    let num = &QScalar::t_pow(twice_n) - &QScalar::t_pow(-twice_n);
    let den = &QScalar::t_pow(2) - &QScalar::t_pow(-2);
    QFrac::new(num, den).expect("nonzero denominator")
}

/// `[n]_q` for integer `n` as the Laurent polynomial `Σ_{k=0}^{n-1} q^{n-1-2k}`.
pub fn q_int_scalar(n: i64) -> QScalar {
    let sign = if n < 0 { -1 } else { 1 };
    let m = n.abs();
    let mut s = QScalar::zero();
    for k in 0..m {
        s.add_term(2 * (m - 1 - 2 * k), Rat::from_integer(sign.into()));
    }
    s
}

/// `q^{e/2}` as a rational function.
pub fn t_pow(e: i64) -> QFrac {
    QFrac::t_pow(e)
}

/// An evaluation point `q = q0 > 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QPoint {
    q0: f64,
    exact: Option<String>,
}

impl QPoint {
    pub fn from_f64(q0: f64) -> Result<Self> {
        if !(q0 > 0.0) || !q0.is_finite() {
            return Err(Error::Range(format!("q must be positive, got {q0}")));
        }
        Ok(Self { q0, exact: None })
    }

    pub fn from_rat(q0: &Rat) -> Result<Self> {
        let f = q0.to_f64().unwrap_or(f64::NAN);
        if !(f > 0.0) {
            return Err(Error::Range(format!("q must be positive, got {}", rat_to_string(q0))));
        }
        Ok(Self { q0: f, exact: Some(rat_to_string(q0)) })
    }

    /// Accepts `"7/10"`, `"0.5"` or `"2"`; decimals are taken as exact rationals.
    pub fn parse(s: &str) -> Result<Self> {
        let r = parse_rat(s).ok_or_else(|| Error::Parse(format!("cannot parse q = {s:?}")))?;
        Self::from_rat(&r)
    }

    pub fn q(&self) -> f64 {
        self.q0
    }

    pub fn t(&self) -> f64 {
        self.q0.sqrt()
    }

    pub fn exact(&self) -> Option<Rat> {
        self.exact.as_deref().and_then(parse_rat)
    }

    pub fn is_classical(&self) -> bool {
        self.q0 == 1.0
    }

    /// `b_q = max(q, 1/q)`.
    pub fn b_q(&self) -> f64 {
        self.q0.max(1.0 / self.q0)
    }

    pub fn eval(&self, x: &QFrac) -> f64 {
        x.eval_q(self.q0)
    }

    pub fn eval_radical(&self, x: &QRadical) -> f64 {
        x.evaluate(self).unwrap_or(f64::NAN)
    }

    /// Exact rational value, when `q` is rational and only integer powers of `q` occur.
    pub fn eval_exact(&self, x: &QFrac) -> Option<Rat> {
        let q0 = self.exact()?;
        x.eval_q_exact(&q0)
    }
}

/// Numeric value of an exact scalar. Radicands must be nonnegative at `p`.
pub trait Evaluate {
    fn evaluate(&self, p: &QPoint) -> Result<f64>;
}

impl Evaluate for QScalar {
    fn evaluate(&self, p: &QPoint) -> Result<f64> {
        Ok(self.eval_q(p.q()))
    }
}

impl Evaluate for QFrac {
    fn evaluate(&self, p: &QPoint) -> Result<f64> {
        let d = self.den().eval_q(p.q());
        if d == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num().eval_q(p.q()) / d)
    }
}

impl Evaluate for QRadical {
    fn evaluate(&self, p: &QPoint) -> Result<f64> {
        let mut acc = 0.0;
        for (r, c) in self.terms() {
            let v = r.value().eval_q(p.q());
            if v < 0.0 {
                return Err(Error::Domain(format!("radicand {} is negative at q = {}", r, p.q())));
            }
            acc += c.evaluate(p)? * v.sqrt();
        }
        Ok(acc)
    }
}

pub fn evaluate<E: Evaluate>(x: &E, p: &QPoint) -> Result<f64> {
    x.evaluate(p)
}

/// Ratios `[n]_q / b_q^n` for `n = 1..=n_max`.
pub fn bq_asymptotic_ratio(n_max: u32, p: &QPoint) -> Result<Vec<f64>> {
    if p.is_classical() {
        return Err(Error::Range("[n]_q ≅ b_q^n degenerates at q = 1".into()));
    }
    let b = p.b_q();
    Ok((1..=n_max as i64).map(|n| p.eval(&q_int(2 * n)) / b.powi(n as i32)).collect())
}

/// `[l]_q [l+1]_q` for spin `l = twice_l/2`.
pub fn laplacian_eigenvalue(twice_l: i64) -> QFrac {
    &q_int(twice_l) * &q_int(twice_l + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::laurent::rat;

    #[test]
    fn small_q_integers() {
        assert!(q_int(2).is_one());
        assert_eq!(q_int(4), &QFrac::q() + &QFrac::q_pow(-1));
        let p = QPoint::parse("2").unwrap();
        assert_eq!(p.eval_exact(&q_int(6)), Some(rat(21, 4)));
    }

    #[test]
    fn half_integer_q_integer() {
        let h = q_int(1);
        // [1/2]_q = 1/(q^{1/2} + q^{-1/2})
        let expect = QFrac::new(QScalar::one(), &QScalar::t_pow(1) + &QScalar::t_pow(-1)).unwrap();
        assert_eq!(h, expect);
        assert!((h.eval_t(1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn evaluation_examples() {
        let x = q_int(4);
        assert_eq!(evaluate(&x, &QPoint::parse("1").unwrap()).unwrap(), 2.0);
        assert_eq!(evaluate(&x, &QPoint::parse("1/2").unwrap()).unwrap(), 2.5);
        let r = QRadical::sqrt(&x).unwrap();
        let v = evaluate(&r, &QPoint::parse("1").unwrap()).unwrap();
        assert!((v - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ratio_examples() {
        let p = QPoint::parse("2").unwrap();
        let r = bq_asymptotic_ratio(2, &p).unwrap();
        assert!((r[0] - 0.5).abs() < 1e-15);
        assert!((r[1] - 0.625).abs() < 1e-15);
        assert!(bq_asymptotic_ratio(3, &QPoint::parse("1").unwrap()).is_err());
    }
}
