use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::monomial::{product, Gen, Monomial};
use crate::error::{Error, Result};
use crate::qarith::{Coeff, QFrac, QRadical, QScalar};

/// An element of `ℂ_q[SU_2]` in PBW normal form.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound(serialize = "C: Serialize", deserialize = "C: Deserialize<'de>"))]
pub struct AlgebraElement<C = QFrac> {
    #[serde(with = "crate::serde_pairs")]
    terms: BTreeMap<Monomial, C>,
}

pub(crate) fn scalar<C: Coeff>(s: &QScalar) -> C {
    C::from_frac(QFrac::from_scalar(s.clone()))
}

impl<C: Coeff> Default for AlgebraElement<C> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<C: Coeff> AlgebraElement<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE, C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn gen(g: Gen) -> Self {
        Self::monomial(Monomial::gen(g), C::one())
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut r = Self::zero();
        r.add_term(m, c);
        r
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(it: I) -> Self {
        let mut r = Self::zero();
        for (m, c) in it {
            r.add_term(m, c);
        }
        r
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e = e.plus(&c);
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
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

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// `Some(g)` when every term has grade `g`.
    pub fn homogeneous_grade(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.grade());
        let g = it.next()?;
        it.all(|h| h == g).then_some(g)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(m, v)| (*m, v.times(c))))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> AlgebraElement<D> {
        AlgebraElement::from_terms(self.terms.iter().map(|(m, v)| (*m, f(v))))
    }

    pub fn multiply(&self, o: &Self) -> Self {
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let c12 = c1.times(c2);
                for (m, s) in product(*m1, *m2).iter() {
                    let v = c12.times(&scalar(s));
                    match acc.get_mut(m) {
                        Some(e) => *e = e.plus(&v),
                        None => {
                            acc.insert(*m, v);
                        }
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Self { terms: acc }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = r.multiply(self);
        }
        r
    }

    /// Counit: `ε(a) = ε(d) = 1`, `ε(b) = ε(c) = 0`.
    pub fn counit(&self) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            if m.b_pow() == 0 && m.c_pow() == 0 {
                acc = acc.plus(c);
            }
        }
        acc
    }

    /// The involution with `a* = d`, `b* = -q^{-1} c`, `c* = -q b`, `d* = a`.
    ///
    /// Coefficients are real functions of real `q`, so conjugation is trivial.
    pub fn star(&self) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            r = &r + &star_monomial(*m).scale(c);
        }
        r
    }

    /// Antipode with `S(a) = d`, `S(b) = -q b`, `S(c) = -q^{-1} c`, `S(d) = a`.
    pub fn antipode(&self) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            r = &r + &antipode_monomial(*m).scale(c);
        }
        r
    }

    /// Part of the element with left and right doubled weights `(wl, wr)`.
    pub fn weight_component(&self, wl: i64, wr: i64) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| m.bi_weight() == (wl, wr)).map(|(m, c)| (*m, c.clone())))
    }

    pub fn to_radical(&self) -> AlgebraElement<QRadical> {
        self.map(|c| c.to_radical())
    }

    /// Drops the radical layer when every coefficient is rational in `q^{1/2}`.
    pub fn try_to_frac(&self) -> Result<AlgebraElement<QFrac>> {
        let mut r = AlgebraElement::zero();
        for (m, c) in &self.terms {
            let f = c.to_frac().ok_or_else(|| Error::Domain(format!("coefficient {c} is not rational")))?;
            r.add_term(*m, f);
        }
        Ok(r)
    }

    pub fn to_json(&self) -> Result<String>
    where
        C: Serialize,
    {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self>
    where
        C: for<'de> Deserialize<'de>,
    {
        Ok(serde_json::from_str(s)?)
    }
}

fn signed_q(sign_exp: u32, q_exp: i64) -> QScalar {
    let s = QScalar::q_pow(q_exp);
    if sign_exp % 2 == 1 {
        -s
    } else {
        s
    }
}

fn star_monomial<C: Coeff>(m: Monomial) -> AlgebraElement<C> {
    // (a^i b^j c^k)* = (c*)^k (b*)^j (a*)^i = (-1)^{j+k} q^{k-j} b^k c^j d^i
    let (j, k) = (m.b_pow(), m.c_pow());
    let coeff = signed_q(j + k, k as i64 - j as i64);
    let head = if m.a_pow() > 0 { Monomial::dbc(m.a_pow(), 0, 0) } else { Monomial::abc(m.d_pow(), 0, 0) };
    let mut r = AlgebraElement::zero();
    for (mm, s) in product(Monomial::abc(0, k, j), head).iter() {
        r.add_term(*mm, scalar(&(&coeff * s)));
    }
    r
}

fn antipode_monomial<C: Coeff>(m: Monomial) -> AlgebraElement<C> {
    // S(a^i b^j c^k) = S(c)^k S(b)^j S(a)^i = (-1)^{j+k} q^{j-k} b^j c^k d^i
    let (j, k) = (m.b_pow(), m.c_pow());
    let coeff = signed_q(j + k, j as i64 - k as i64);
    let head = if m.a_pow() > 0 { Monomial::dbc(m.a_pow(), 0, 0) } else { Monomial::abc(m.d_pow(), 0, 0) };
    let mut r = AlgebraElement::zero();
    for (mm, s) in product(Monomial::abc(0, j, k), head).iter() {
        r.add_term(*mm, scalar(&(&coeff * s)));
    }
    r
}

impl<'a, C: Coeff> Add<&'a AlgebraElement<C>> for &'a AlgebraElement<C> {
    type Output = AlgebraElement<C>;
    fn add(self, o: &AlgebraElement<C>) -> AlgebraElement<C> {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }
}

impl<'a, C: Coeff> Sub<&'a AlgebraElement<C>> for &'a AlgebraElement<C> {
    type Output = AlgebraElement<C>;
    fn sub(self, o: &AlgebraElement<C>) -> AlgebraElement<C> {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.negated());
        }
        r
    }
}

impl<'a, C: Coeff> Mul<&'a AlgebraElement<C>> for &'a AlgebraElement<C> {
    type Output = AlgebraElement<C>;
    fn mul(self, o: &AlgebraElement<C>) -> AlgebraElement<C> {
        self.multiply(o)
    }
}

impl<C: Coeff> Neg for &AlgebraElement<C> {
    type Output = AlgebraElement<C>;
    fn neg(self) -> AlgebraElement<C> {
        self.map(|c| c.negated())
    }
}

impl<C: Coeff> fmt::Display for AlgebraElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    format!("({c})")
                } else if *c == C::one() {
                    m.to_string()
                } else {
                    format!("({c})·{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<C: Coeff> fmt::Debug for AlgebraElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({})", self)
    }
}

/// The generators as `QFrac` elements, in the order `a, b, c, d`.
pub fn generators() -> [AlgebraElement<QFrac>; 4] {
    Gen::ALL.map(AlgebraElement::gen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_is_involutive_anti_homomorphism() {
        let [a, b, c, d] = generators();
        for x in [&a, &b, &c, &d] {
            assert_eq!(x.star().star(), *x);
        }
        let x = &(&a * &b) + &(&c * &d);
        let y = &(&d * &c) - &b;
        assert_eq!((&x * &y).star(), &y.star() * &x.star());
        assert_eq!(a.star(), d);
    }

    #[test]
    fn fundamental_matrix_is_unitary() {
        let [a, b, c, d] = generators();
        let one = AlgebraElement::one();
        assert_eq!(&(&a * &a.star()) + &(&b * &b.star()), one);
        assert_eq!(&(&c * &c.star()) + &(&d * &d.star()), one);
        assert!((&(&a * &c.star()) + &(&b * &d.star())).is_zero());
        assert_eq!(&(&a.star() * &a) + &(&c.star() * &c), one);
        assert_eq!(&(&b.star() * &b) + &(&d.star() * &d), one);
    }

    #[test]
    fn json_round_trip() {
        let [a, b, _, d] = generators();
        let x = &(&a * &d) + &b.scale(&QFrac::q_pow(-3));
        let s = x.to_json().unwrap();
        assert_eq!(AlgebraElement::<QFrac>::from_json(&s).unwrap(), x);
    }
}
