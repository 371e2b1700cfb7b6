//! PBW monomials `a^i b^j c^k` / `d^i b^j c^k` and their products.
//!
//! Products are computed by right multiplication with single generators and
//! memoised per pair of monomials. An independent word-rewriting normaliser
//! is provided as an oracle for confluence checks.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::qarith::QScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    A,
    B,
    C,
    D,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::A, Gen::B, Gen::C, Gen::D];

    /// Position in the fundamental matrix `[[a, b], [c, d]]`.
    pub fn position(self) -> (usize, usize) {
        match self {
            Gen::A => (0, 0),
            Gen::B => (0, 1),
            Gen::C => (1, 0),
            Gen::D => (1, 1),
        }
    }

    pub fn at(i: usize, j: usize) -> Gen {
        match (i, j) {
            (0, 0) => Gen::A,
            (0, 1) => Gen::B,
            (1, 0) => Gen::C,
            _ => Gen::D,
        }
    }
}

/// A normal-form monomial. At most one of `a`, `d` is nonzero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    a: u32,
    d: u32,
    b: u32,
    c: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, d: 0, b: 0, c: 0 };

    /// `a^i b^j c^k`.
    pub fn abc(i: u32, j: u32, k: u32) -> Self {
        Self { a: i, d: 0, b: j, c: k }
    }

    /// `d^i b^j c^k`.
    pub fn dbc(i: u32, j: u32, k: u32) -> Self {
        Self { a: 0, d: i, b: j, c: k }
    }

    pub fn gen(g: Gen) -> Self {
        match g {
            Gen::A => Self::abc(1, 0, 0),
            Gen::B => Self::abc(0, 1, 0),
            Gen::C => Self::abc(0, 0, 1),
            Gen::D => Self::dbc(1, 0, 0),
        }
    }

    pub fn a_pow(self) -> u32 {
        self.a
    }

    pub fn d_pow(self) -> u32 {
        self.d
    }

    pub fn b_pow(self) -> u32 {
        self.b
    }

    pub fn c_pow(self) -> u32 {
        self.c
    }

    pub fn is_one(self) -> bool {
        self == Self::ONE
    }

    pub fn degree(self) -> u32 {
        self.a + self.d + self.b + self.c
    }

    /// Number of `a, c` minus number of `b, d`.
    pub fn grade(self) -> i64 {
        self.a as i64 + self.c as i64 - self.b as i64 - self.d as i64
    }

    /// Doubled left and right weights; the Haar state needs both to vanish.
    pub fn bi_weight(self) -> (i64, i64) {
        let (a, b, c, d) = (self.a as i64, self.b as i64, self.c as i64, self.d as i64);
        (-a - b + c + d, -a + b - c + d)
    }

    /// The generators of the monomial, left to right.
    pub fn word(self) -> Vec<Gen> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        w.extend(std::iter::repeat(Gen::A).take(self.a as usize));
        w.extend(std::iter::repeat(Gen::D).take(self.d as usize));
        w.extend(std::iter::repeat(Gen::B).take(self.b as usize));
        w.extend(std::iter::repeat(Gen::C).take(self.c as usize));
        w
    }

    /// `self = g · rest` with `rest` again normal.
    pub(crate) fn split_first(self) -> Option<(Gen, Monomial)> {
        let mut r = self;
        let g = if r.a > 0 {
            r.a -= 1;
            Gen::A
        } else if r.d > 0 {
            r.d -= 1;
            Gen::D
        } else if r.b > 0 {
            r.b -= 1;
            Gen::B
        } else if r.c > 0 {
            r.c -= 1;
            Gen::C
        } else {
            return None;
        };
        Some((g, r))
    }

    /// `self · g` in normal form.
    pub fn times_gen(self, g: Gen) -> Vec<(Monomial, QScalar)> {
        let bc = (self.b + self.c) as i64;
        let Monomial { a, d, b, c } = self;
        match g {
            Gen::B => vec![(Monomial { b: b + 1, ..self }, QScalar::one())],
            Gen::C => vec![(Monomial { c: c + 1, ..self }, QScalar::one())],
            Gen::A => {
                if d == 0 {
                    vec![(Monomial::abc(a + 1, b, c), QScalar::q_pow(bc))]
                } else {
                    // d a = 1 + q bc
                    vec![
                        (Monomial::dbc(d - 1, b, c), QScalar::q_pow(bc)),
                        (Monomial::dbc(d - 1, b + 1, c + 1), QScalar::q_pow(bc + 1)),
                    ]
                }
            }
            Gen::D => {
                if a == 0 {
                    vec![(Monomial::dbc(d + 1, b, c), QScalar::q_pow(-bc))]
                } else {
                    // a d = 1 + q^{-1} bc
                    vec![
                        (Monomial::abc(a - 1, b, c), QScalar::q_pow(-bc)),
                        (Monomial::abc(a - 1, b + 1, c + 1), QScalar::q_pow(-bc - 1)),
                    ]
                }
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, e) in [("a", self.a), ("d", self.d), ("b", self.b), ("c", self.c)] {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

type ProductCache = RwLock<HashMap<(Monomial, Monomial), Arc<Vec<(Monomial, QScalar)>>>>;

fn cache() -> &'static ProductCache {
    static C: OnceLock<ProductCache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Normal form of `x · y`.
pub fn product(x: Monomial, y: Monomial) -> Arc<Vec<(Monomial, QScalar)>> {
    if let Some(r) = cache().read().unwrap().get(&(x, y)) {
        return r.clone();
    }
    let r = Arc::new(compute_product(x, y));
    cache().write().unwrap().insert((x, y), r.clone());
    r
}

fn compute_product(x: Monomial, y: Monomial) -> Vec<(Monomial, QScalar)> {
    let Some((g, rest)) = y.split_first() else {
        return vec![(x, QScalar::one())];
    };
    let mut acc: BTreeMap<Monomial, QScalar> = BTreeMap::new();
    for (m, s) in x.times_gen(g) {
        for (m2, s2) in product(m, rest).iter() {
            let e = acc.entry(*m2).or_default();
            *e += &(&s * s2);
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Order in which the word rewriter picks a redex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
}

fn rewrite_pair(x: Gen, y: Gen) -> Option<Vec<(Vec<Gen>, QScalar)>> {
    use Gen::*;
    let q = QScalar::q;
    let qi = || QScalar::q_pow(-1);
    Some(match (x, y) {
        (B, A) => vec![(vec![A, B], q())],
        (C, A) => vec![(vec![A, C], q())],
        (C, B) => vec![(vec![B, C], QScalar::one())],
        (B, D) => vec![(vec![D, B], qi())],
        (C, D) => vec![(vec![D, C], qi())],
        (D, A) => vec![(vec![], QScalar::one()), (vec![B, C], q())],
        (A, D) => vec![(vec![], QScalar::one()), (vec![B, C], qi())],
        _ => return None,
    })
}

fn word_to_monomial(w: &[Gen]) -> Monomial {
    let mut m = Monomial::ONE;
    for g in w {
        match g {
            Gen::A => m.a += 1,
            Gen::B => m.b += 1,
            Gen::C => m.c += 1,
            Gen::D => m.d += 1,
        }
    }
    m
}

/// Normal form of a word by plain rewriting with the defining relations.
pub fn rewrite_word(word: &[Gen], strategy: RewriteStrategy) -> BTreeMap<Monomial, QScalar> {
    let mut out: BTreeMap<Monomial, QScalar> = BTreeMap::new();
    let mut stack: Vec<(Vec<Gen>, QScalar)> = vec![(word.to_vec(), QScalar::one())];
    while let Some((w, c)) = stack.pop() {
        let mut redexes = (0..w.len().saturating_sub(1)).filter(|&i| rewrite_pair(w[i], w[i + 1]).is_some());
        let pos = match strategy {
            RewriteStrategy::Leftmost => redexes.next(),
            RewriteStrategy::Rightmost => redexes.last(),
        };
        match pos {
            None => {
                let e = out.entry(word_to_monomial(&w)).or_default();
                *e += &c;
            }
            Some(i) => {
                for (rep, s) in rewrite_pair(w[i], w[i + 1]).unwrap() {
                    let mut nw = w[..i].to_vec();
                    nw.extend(rep);
                    nw.extend_from_slice(&w[i + 2..]);
                    stack.push((nw, &c * &s));
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_relations() {
        let a = Monomial::gen(Gen::A);
        let b = Monomial::gen(Gen::B);
        let d = Monomial::gen(Gen::D);
        let ba = product(b, a);
        assert_eq!(ba.as_slice(), &[(Monomial::abc(1, 1, 0), QScalar::q())]);
        let ad = product(a, d);
        assert_eq!(ad.len(), 2);
        assert_eq!(ad[0], (Monomial::ONE, QScalar::one()));
        assert_eq!(ad[1], (Monomial::abc(0, 1, 1), QScalar::q_pow(-1)));
    }

    #[test]
    fn product_matches_rewriting() {
        let ms = [
            Monomial::abc(2, 1, 0),
            Monomial::dbc(1, 0, 2),
            Monomial::abc(0, 1, 1),
            Monomial::dbc(2, 1, 1),
        ];
        for &x in &ms {
            for &y in &ms {
                let mut w = x.word();
                w.extend(y.word());
                let fast: BTreeMap<_, _> = product(x, y).iter().cloned().collect();
                assert_eq!(fast, rewrite_word(&w, RewriteStrategy::Leftmost));
                assert_eq!(fast, rewrite_word(&w, RewriteStrategy::Rightmost));
            }
        }
    }

    #[test]
    fn grades_and_weights() {
        let m = Monomial::abc(1, 2, 0);
        assert_eq!(m.grade(), -1);
        assert_eq!(Monomial::abc(0, 1, 1).bi_weight(), (0, 0));
        assert_eq!(m.to_string(), "a b^2");
    }
}
