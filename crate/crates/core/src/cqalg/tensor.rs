//! Tensor squares and cubes of the algebra, and the coproduct.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use super::element::{scalar, AlgebraElement};
use super::monomial::{product, Gen, Monomial};
use crate::qarith::{Coeff, QFrac};

/// An element of `A ⊗ A` in the monomial basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor<C = QFrac> {
    terms: BTreeMap<(Monomial, Monomial), C>,
}

impl<C: Coeff> Default for Tensor<C> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<C: Coeff> Tensor<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, k: (Monomial, Monomial), c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(e) => {
                *e = e.plus(&c);
                if e.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn simple(x: &AlgebraElement<C>, y: &AlgebraElement<C>) -> Self {
        let mut t = Self::zero();
        for (m1, c1) in x.terms() {
            for (m2, c2) in y.terms() {
                t.add_term((*m1, *m2), c1.times(c2));
            }
        }
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, v) in &o.terms {
            r.add_term(*k, v.clone());
        }
        r
    }

    pub fn multiply(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for ((x1, y1), c1) in &self.terms {
            for ((x2, y2), c2) in &o.terms {
                let c = c1.times(c2);
                let px = product(*x1, *x2);
                let py = product(*y1, *y2);
                for (mx, sx) in px.iter() {
                    for (my, sy) in py.iter() {
                        r.add_term((*mx, *my), c.times(&scalar(&(sx * sy))));
                    }
                }
            }
        }
        r
    }

    /// Applies linear maps to each tensor factor, monomial by monomial.
    pub fn map_factors(
        &self,
        fl: impl Fn(Monomial) -> AlgebraElement<C>,
        fr: impl Fn(Monomial) -> AlgebraElement<C>,
    ) -> Self {
        let mut r = Self::zero();
        for ((x, y), c) in &self.terms {
            let fx = fl(*x);
            let fy = fr(*y);
            for (mx, cx) in fx.terms() {
                for (my, cy) in fy.terms() {
                    r.add_term((*mx, *my), c.times(&cx.times(cy)));
                }
            }
        }
        r
    }

    /// The multiplication map `A ⊗ A → A`.
    pub fn multiply_out(&self) -> AlgebraElement<C> {
        let mut r = AlgebraElement::zero();
        for ((x, y), c) in &self.terms {
            for (m, s) in product(*x, *y).iter() {
                r.add_term(*m, c.times(&scalar(s)));
            }
        }
        r
    }

    /// `(id ⊗ φ)` for a functional `φ` given on monomials.
    pub fn contract_right(&self, phi: impl Fn(Monomial) -> C) -> AlgebraElement<C> {
        let mut r = AlgebraElement::zero();
        for ((x, y), c) in &self.terms {
            r.add_term(*x, c.times(&phi(*y)));
        }
        r
    }

    /// `(φ ⊗ id)` for a functional `φ` given on monomials.
    pub fn contract_left(&self, phi: impl Fn(Monomial) -> C) -> AlgebraElement<C> {
        let mut r = AlgebraElement::zero();
        for ((x, y), c) in &self.terms {
            r.add_term(*y, c.times(&phi(*x)));
        }
        r
    }
}

type CoproductCache = RwLock<HashMap<Monomial, Arc<Tensor<QFrac>>>>;

fn cache() -> &'static CoproductCache {
    static C: OnceLock<CoproductCache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

fn delta_gen(g: Gen) -> Tensor<QFrac> {
    // Δ t_{ij} = Σ_k t_{ik} ⊗ t_{kj}
    let (i, j) = g.position();
    let mut t = Tensor::zero();
    for k in 0..2 {
        t.add_term((Monomial::gen(Gen::at(i, k)), Monomial::gen(Gen::at(k, j))), QFrac::one());
    }
    t
}

/// `Δ(m)` for a single monomial, memoised.
pub fn coproduct_monomial(m: Monomial) -> Arc<Tensor<QFrac>> {
    if let Some(t) = cache().read().unwrap().get(&m) {
        return t.clone();
    }
    let t = if m.is_one() {
        let mut t = Tensor::zero();
        t.add_term((Monomial::ONE, Monomial::ONE), QFrac::one());
        t
    } else {
        let (g, rest) = m.split_first().expect("non-unit monomial");
        delta_gen(g).multiply(&coproduct_monomial(rest))
    };
    let t = Arc::new(t);
    cache().write().unwrap().insert(m, t.clone());
    t
}

pub fn coproduct<C: Coeff>(x: &AlgebraElement<C>) -> Tensor<C> {
    let mut r = Tensor::zero();
    for (m, c) in x.terms() {
        for (k, v) in coproduct_monomial(*m).terms() {
            r.add_term(*k, c.times(&C::from_frac(v.clone())));
        }
    }
    r
}

/// An element of `A ⊗ A ⊗ A`.
pub type Tensor3<C> = BTreeMap<(Monomial, Monomial, Monomial), C>;

fn add3<C: Coeff>(t: &mut Tensor3<C>, k: (Monomial, Monomial, Monomial), c: C) {
    if c.is_zero() {
        return;
    }
    let e = t.entry(k).or_insert_with(C::zero);
    *e = e.plus(&c);
    if e.is_zero() {
        t.remove(&k);
    }
}

/// `(Δ ⊗ id)(t)`.
pub fn coproduct_left<C: Coeff>(t: &Tensor<C>) -> Tensor3<C> {
    let mut r = Tensor3::new();
    for ((x, y), c) in t.terms() {
        for ((x1, x2), v) in coproduct_monomial(*x).terms() {
            add3(&mut r, (*x1, *x2, *y), c.times(&C::from_frac(v.clone())));
        }
    }
    r
}

/// `(id ⊗ Δ)(t)`.
pub fn coproduct_right<C: Coeff>(t: &Tensor<C>) -> Tensor3<C> {
    let mut r = Tensor3::new();
    for ((x, y), c) in t.terms() {
        for ((y1, y2), v) in coproduct_monomial(*y).terms() {
            add3(&mut r, (*x, *y1, *y2), c.times(&C::from_frac(v.clone())));
        }
    }
    r
}
