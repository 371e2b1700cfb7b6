//! Formal square roots of q-integer products.
//!
//! A radicand is kept squarefree in the factorisation
//! `n · t^{0|1} · Π Φ_d(t)` with `d ≥ 2`, which makes the representation
//! `Σ c_i √r_i` canonical: distinct squarefree radicands are independent
//! over ℚ(t).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::cyclotomic::{self, biguint_gcd, square_split};
use super::frac::QFrac;
use super::laurent::{forward_owned, QScalar, Rat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Radicand {
    int: BigUint,
    t_odd: bool,
    cyclo: BTreeSet<u32>,
}

impl Radicand {
    pub fn one() -> Self {
        Self { int: BigUint::one(), t_odd: false, cyclo: BTreeSet::new() }
    }

    pub fn is_one(&self) -> bool {
        self.int.is_one() && !self.t_odd && self.cyclo.is_empty()
    }

    /// The radicand as a Laurent polynomial.
    pub fn value(&self) -> QScalar {
        let mut v = QScalar::constant(Rat::from_integer(BigInt::from(self.int.clone())));
        if self.t_odd {
            v = v.shift(1);
        }
        for d in &self.cyclo {
            v = &v * &cyclotomic::cyclotomic(*d);
        }
        v
    }

    pub fn eval_t(&self, t0: f64) -> f64 {
        self.value().eval_t(t0).sqrt()
    }

    /// `√self · √other = factor · √new`.
    fn mul(&self, o: &Self) -> (QFrac, Radicand) {
        let g = biguint_gcd(&self.int, &o.int);
        let int = (&self.int / &g) * (&o.int / &g);
        let mut factor = QScalar::constant(Rat::from_integer(BigInt::from(g)));
        if self.t_odd && o.t_odd {
            factor = factor.shift(1);
        }
        let mut cyclo = BTreeSet::new();
        for d in self.cyclo.symmetric_difference(&o.cyclo) {
            cyclo.insert(*d);
        }
        for d in self.cyclo.intersection(&o.cyclo) {
            factor = &factor * &cyclotomic::cyclotomic(*d);
        }
        (QFrac::from_scalar(factor), Radicand { int, t_odd: self.t_odd ^ o.t_odd, cyclo })
    }
}

impl fmt::Display for Radicand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.int.is_one() {
            parts.push(self.int.to_string());
        }
        if self.t_odd {
            parts.push("q^(1/2)".to_string());
        }
        for d in &self.cyclo {
            parts.push(format!("Φ{}", d));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

/// `Σ c_i √r_i` with `c_i ∈ ℚ(t)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct QRadical {
    #[serde(with = "crate::serde_pairs")]
    terms: BTreeMap<Radicand, QFrac>,
}

impl QRadical {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_frac(QFrac::one())
    }

    pub fn from_frac(x: QFrac) -> Self {
        let mut terms = BTreeMap::new();
        if !x.is_zero() {
            terms.insert(Radicand::one(), x);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Radicand, &QFrac)> {
        self.terms.iter()
    }

    fn add_term(&mut self, r: Radicand, c: QFrac) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(r.clone()).or_insert_with(QFrac::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&r);
        }
    }

    /// The value as a rational function if no radical survives.
    pub fn as_frac(&self) -> Option<QFrac> {
        match self.terms.len() {
            0 => Some(QFrac::zero()),
            1 => self.terms.get(&Radicand::one()).cloned(),
            _ => None,
        }
    }

    pub fn to_frac(&self) -> Result<QFrac> {
        self.as_frac()
            .ok_or_else(|| Error::Domain(format!("value {} is not rational in q^(1/2)", self)))
    }

    /// `√x` for `x` a product of q-integer-type factors, positive for `q > 0`.
    pub fn sqrt(x: &QFrac) -> Result<Self> {
        if x.is_zero() {
            return Ok(Self::zero());
        }
        let fnum = cyclotomic::factor(x.num())
            .ok_or_else(|| Error::NonCyclotomicRadicand(x.to_string()))?;
        let fden = cyclotomic::factor(x.den())
            .ok_or_else(|| Error::NonCyclotomicRadicand(x.to_string()))?;
        let c = &fnum.content / &fden.content;
        if !c.is_positive() {
            return Err(Error::Domain(format!("negative radicand {}", x)));
        }
        let mut exps: BTreeMap<u32, i64> = BTreeMap::new();
        for (d, k) in &fnum.factors {
            *exps.entry(*d).or_insert(0) += *k as i64;
        }
        for (d, k) in &fden.factors {
            *exps.entry(*d).or_insert(0) -= *k as i64;
        }
        let a = c.numer().to_biguint().unwrap();
        let b = c.denom().to_biguint().unwrap();
        Self::assemble_sqrt(x, &a, &b, fnum.t_exp - fden.t_exp, exps)
    }

    /// `√([n_1]_q ··· [n_k]_q)` with `n_i = twice[i]/2 ≥ 0`, without factoring.
    pub fn sqrt_q_int_product(twice: &[i64]) -> Result<Self> {
        if twice.iter().any(|&n| n == 0) {
            return Ok(Self::zero());
        }
        let mut exps: BTreeMap<u32, i64> = BTreeMap::new();
        let mut t_exp = 0;
        for &n in twice {
            if n < 0 {
                return Err(Error::Domain(format!("negative q-integer [{n}/2]")));
            }
            // [n/2]_q = t^{2-n} (t^{2n} - 1)/(t^4 - 1)
            t_exp += 2 - n;
            let m = 2 * n as u32;
            for d in (3..=m).filter(|d| m % d == 0) {
                *exps.entry(d).or_insert(0) += 1;
            }
            *exps.entry(4).or_insert(0) -= 1;
        }
        let one = BigUint::one();
        Self::assemble_sqrt(&QFrac::one(), &one, &one, t_exp, exps)
    }

    /// `√((a/b) t^{t_exp} Π Φ_d^{k_d})`.
    fn assemble_sqrt(x: &QFrac, a: &BigUint, b: &BigUint, t_exp: i64, exps: BTreeMap<u32, i64>) -> Result<Self> {
        // √(a/b) = √(ab)/b
        let (s, int) = square_split(&(a * b));
        let mut coeff = QFrac::from_rat(Rat::new(BigInt::from(s), BigInt::from(b.clone())));
        let e = t_exp;
        let t_odd = e.rem_euclid(2) == 1;
        coeff = &coeff * &QFrac::t_pow(e.div_euclid(2));
        let mut cyclo = BTreeSet::new();
        for (d, k) in exps {
            if k == 0 {
                continue;
            }
            if d == 1 {
                return Err(Error::Domain(format!("radicand {} changes sign at q = 1", x)));
            }
            if k.rem_euclid(2) == 1 {
                cyclo.insert(d);
            }
            let half = k.div_euclid(2);
            if half != 0 {
                coeff = &coeff * &QFrac::from_scalar(cyclotomic::cyclotomic(d)).pow(half)?;
            }
        }
        let mut r = Self::zero();
        r.add_term(Radicand { int, t_odd, cyclo }, coeff);
        Ok(r)
    }

    pub fn scale_frac(&self, c: &QFrac) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(r, v)| (r.clone(), v * c)).collect() }
    }

    pub fn eval_t(&self, t0: f64) -> f64 {
        self.terms.iter().map(|(r, c)| c.eval_t(t0) * r.eval_t(t0)).sum()
    }

    /// Square of a single-term radical, as a plain rational function.
    pub fn square_frac(&self) -> Option<QFrac> {
        (self * self).as_frac()
    }
}

impl<'a> Add<&'a QRadical> for &'a QRadical {
    type Output = QRadical;
    fn add(self, o: &QRadical) -> QRadical {
        let mut r = self.clone();
        for (k, v) in &o.terms {
            r.add_term(k.clone(), v.clone());
        }
        r
    }
}

impl<'a> Sub<&'a QRadical> for &'a QRadical {
    type Output = QRadical;
    fn sub(self, o: &QRadical) -> QRadical {
        let mut r = self.clone();
        for (k, v) in &o.terms {
            r.add_term(k.clone(), -v);
        }
        r
    }
}

impl<'a> Mul<&'a QRadical> for &'a QRadical {
    type Output = QRadical;
    fn mul(self, o: &QRadical) -> QRadical {
        let mut r = QRadical::zero();
        for (k1, v1) in &self.terms {
            for (k2, v2) in &o.terms {
                let (f, k) = k1.mul(k2);
                r.add_term(k, &(v1 * v2) * &f);
            }
        }
        r
    }
}

impl Neg for &QRadical {
    type Output = QRadical;
    fn neg(self) -> QRadical {
        QRadical { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }
}

impl Neg for QRadical {
    type Output = QRadical;
    fn neg(self) -> QRadical {
        -&self
    }
}

forward_owned!(QRadical, Add, add);
forward_owned!(QRadical, Sub, sub);
forward_owned!(QRadical, Mul, mul);

impl From<QFrac> for QRadical {
    fn from(x: QFrac) -> Self {
        Self::from_frac(x)
    }
}

impl fmt::Display for QRadical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(r, c)| if r.is_one() { format!("{}", c) } else { format!("({})·√({})", c, r) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for QRadical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRadical({})", self)
    }
}

/// Convenience for tests and reports.
pub fn radical_to_f64(x: &QRadical, q0: f64) -> f64 {
    x.eval_t(q0.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::qint::q_int;

    #[test]
    fn fast_sqrt_agrees_with_factoring() {
        for twice in [vec![1], vec![2], vec![3, 5], vec![4, 6], vec![7, 2], vec![12, 9], vec![0, 3], vec![6, 6]] {
            let prod = twice.iter().fold(QFrac::one(), |acc, &n| &acc * &q_int(n));
            assert_eq!(QRadical::sqrt_q_int_product(&twice).unwrap(), QRadical::sqrt(&prod).unwrap(), "{twice:?}");
        }
    }

    #[test]
    fn sqrt_of_square_is_plain() {
        let two = q_int(4);
        let sq = &two * &two;
        let r = QRadical::sqrt(&sq).unwrap();
        assert_eq!(r.as_frac(), Some(two));
    }

    #[test]
    fn product_of_roots_merges() {
        let a = QRadical::sqrt(&q_int(4)).unwrap();
        let b = QRadical::sqrt(&q_int(6)).unwrap();
        let ab = &a * &b;
        let direct = QRadical::sqrt(&(&q_int(4) * &q_int(6))).unwrap();
        assert_eq!(ab, direct);
        assert_eq!((&a * &a).as_frac(), Some(q_int(4)));
    }

    #[test]
    fn integer_part() {
        let r = QRadical::sqrt(&QFrac::from_int(12)).unwrap();
        assert!((r.eval_t(1.0) - 12f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.terms().count(), 1);
    }

    #[test]
    fn half_integer_power() {
        let r = QRadical::sqrt(&QFrac::q()).unwrap();
        assert_eq!(r.as_frac(), Some(QFrac::t_pow(1)));
        let s = QRadical::sqrt(&QFrac::t_pow(1)).unwrap();
        assert!(s.as_frac().is_none());
        assert_eq!((&s * &s).as_frac(), Some(QFrac::t_pow(1)));
    }

    #[test]
    fn negative_radicand_is_domain_error() {
        assert!(matches!(QRadical::sqrt(&QFrac::from_int(-2)), Err(Error::Domain(_))));
        let t_minus_1 = QFrac::from_scalar(&QScalar::t_pow(1) - &QScalar::one());
        assert!(QRadical::sqrt(&t_minus_1).is_err());
    }
}
