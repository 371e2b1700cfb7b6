//! Laurent polynomials in `t = q^{1/2}` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Formats a rational as `n` or `n/d`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else if let Some((ip, fp)) = s.split_once('.') {
        // finite decimal, parsed exactly
        let neg = ip.trim_start().starts_with('-');
        let ip_abs: BigInt = ip.trim().trim_start_matches('-').parse().unwrap_or_default();
        let fp_n: BigInt = if fp.is_empty() { BigInt::zero() } else { fp.parse().ok()? };
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let v = Rat::new(ip_abs * &scale + fp_n, scale);
        Some(if neg { -v } else { v })
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(n))
    }
}

/// Exact scalar `Σ c_e t^e` with `t = q^{1/2}`.
///
/// Exponents are stored doubled relative to `q`, so `q^{-3/2}` has key `-3`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QScalar {
    terms: BTreeMap<i64, Rat>,
}

impl QScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat_int(n))
    }

    /// `c · t^e`.
    pub fn monomial(c: Rat, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `t^e = q^{e/2}`.
    pub fn t_pow(e: i64) -> Self {
        Self::monomial(Rat::one(), e)
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::t_pow(2 * e)
    }

    /// The deformation parameter `q`.
    pub fn q() -> Self {
        Self::t_pow(2)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (e, c) in it {
            s.add_term(e, c);
        }
        s
    }

    pub fn add_term(&mut self, e: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Returns the constant if the scalar has no `t`-dependence.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Returns `(c, e)` if the scalar is a single term `c t^e`.
    pub fn as_monomial(&self) -> Option<(Rat, i64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.terms.values().next_back()
    }

    /// True when only even powers of `t` occur, i.e. the value is a Laurent polynomial in `q`.
    pub fn is_integral_in_q(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// The substitution `t -> 1/t`, i.e. `q -> 1/q`.
    pub fn invert_t(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, v)| (-e, v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Dense coefficient vector after shifting the lowest exponent to 0.
    pub fn to_dense(&self) -> (Vec<Rat>, i64) {
        let Some(lo) = self.min_exp() else {
            return (Vec::new(), 0);
        };
        let hi = self.max_exp().unwrap();
        let mut v = vec![Rat::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (v, lo)
    }

    pub fn from_dense(v: &[Rat], shift: i64) -> Self {
        Self::from_terms(v.iter().enumerate().map(|(i, c)| (i as i64 + shift, c.clone())))
    }

    /// Numeric value at `t = t0`.
    pub fn eval_t(&self, t0: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * t0.powi(*e as i32))
            .sum()
    }

    /// Value at `q = q0`. Even exponents use integer powers of `q0` directly.
    pub fn eval_q(&self, q0: f64) -> f64 {
        let t0 = q0.sqrt();
        self.terms
            .iter()
            .map(|(e, c)| {
                let base = q0.powi(e.div_euclid(2) as i32);
                let v = if e.rem_euclid(2) == 1 { base * t0 } else { base };
                c.to_f64().unwrap_or(f64::NAN) * v
            })
            .sum()
    }

    /// Exact value at rational `q`, available when all exponents are even.
    pub fn eval_q_exact(&self, q0: &Rat) -> Option<Rat> {
        if !self.is_integral_in_q() {
            return None;
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            acc += c * rat_pow(q0, e / 2);
        }
        Some(acc)
    }
}

pub fn rat_pow(x: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

impl From<Rat> for QScalar {
    fn from(c: Rat) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn add(self, o: &QScalar) -> QScalar {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<'a> AddAssign<&'a QScalar> for QScalar {
    fn add_assign(&mut self, o: &QScalar) {
        for (e, c) in &o.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<'a> SubAssign<&'a QScalar> for QScalar {
    fn sub_assign(&mut self, o: &QScalar) {
        for (e, c) in &o.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<'a> Sub<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn sub(self, o: &QScalar) -> QScalar {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl<'a> Mul<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn mul(self, o: &QScalar) -> QScalar {
        let mut r = QScalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t {
                (&self).$m(o)
            }
        }
    };
}
pub(crate) use forward_owned;

forward_owned!(QScalar, Add, add);
forward_owned!(QScalar, Sub, sub);
forward_owned!(QScalar, Mul, mul);

fn fmt_q_power(e: i64) -> String {
    if e % 2 == 0 {
        let k = e / 2;
        if k == 1 {
            "q".to_string()
        } else {
            format!("q^{}", k)
        }
    } else {
        format!("q^({}/2)", e)
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if *e == 0 {
                write!(f, "{}", rat_to_string(&a))?;
            } else if a.is_one() {
                write!(f, "{}", fmt_q_power(*e))?;
            } else {
                write!(f, "{}*{}", rat_to_string(&a), fmt_q_power(*e))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({})", self)
    }
}

/// Wire format: list of `[twice_exponent, "n/d"]` pairs.
impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(i64, String)> = self.terms.iter().map(|(e, c)| (*e, rat_to_string(c))).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<(i64, String)> = Vec::deserialize(d)?;
        let mut r = QScalar::zero();
        for (e, c) in v {
            let c = parse_rat(&c).ok_or_else(|| serde::de::Error::custom(format!("bad rational {c}")))?;
            r.add_term(e, c);
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_arith() {
        let q = QScalar::q();
        let qi = QScalar::q_pow(-1);
        let s = &q + &qi;
        assert_eq!(s.to_string(), "q + q^-1");
        assert_eq!((&s * &s).to_string(), "q^2 + 2 + q^-2");
        assert!((&s - &s).is_zero());
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rat("7/10"), Some(rat(7, 10)));
        assert_eq!(parse_rat("0.999"), Some(rat(999, 1000)));
        assert_eq!(parse_rat("-1.5"), Some(rat(-3, 2)));
        assert_eq!(parse_rat("3"), Some(rat_int(3)));
        assert_eq!(parse_rat("1/0"), None);
    }

    #[test]
    fn exact_eval_requires_even_exponents() {
        let x = &QScalar::q() + &QScalar::q_pow(-1);
        assert_eq!(x.eval_q_exact(&rat(1, 2)), Some(rat(5, 2)));
        assert_eq!(QScalar::t_pow(1).eval_q_exact(&rat(1, 2)), None);
    }

    #[test]
    fn serde_round_trip() {
        let x = QScalar::from_terms([(-3, rat(1, 2)), (4, rat_int(-7))]);
        let js = serde_json::to_string(&x).unwrap();
        let y: QScalar = serde_json::from_str(&js).unwrap();
        assert_eq!(x, y);
    }
}
