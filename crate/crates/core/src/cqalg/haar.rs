//! The Haar state, obtained by solving the invariance equations.
//!
//! `h` is supported on the bi-weight-zero monomials `(bc)^k`. The values
//! `u_k = h((bc)^k)` are found one degree at a time from
//! `(id ⊗ h)Δ(x) = h(x)1 = (h ⊗ id)Δ(x)` with `x = (bc)^k`; every equation of
//! the overdetermined system is checked for consistency.

use std::sync::{OnceLock, RwLock};

use super::element::AlgebraElement;
use super::monomial::Monomial;
use super::tensor::coproduct_monomial;
use crate::error::Result;
use crate::qarith::{linalg, Coeff, QFrac};

fn cache() -> &'static RwLock<Vec<QFrac>> {
    static C: OnceLock<RwLock<Vec<QFrac>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(vec![QFrac::one()]))
}

fn bc_power(m: Monomial) -> Option<u32> {
    (m.a_pow() == 0 && m.d_pow() == 0 && m.b_pow() == m.c_pow()).then_some(m.b_pow())
}

fn solve_next(known: &[QFrac]) -> Result<QFrac> {
    let k = known.len() as u32;
    let delta = coproduct_monomial(Monomial::abc(0, k, k));
    let mut rows: std::collections::BTreeMap<(bool, Monomial), (QFrac, QFrac)> = Default::default();
    for ((x, y), c) in delta.terms() {
        // (id ⊗ h): the free factor is x; (h ⊗ id): the free factor is y
        for (side, free, integrated) in [(false, *x, *y), (true, *y, *x)] {
            if let Some(j) = bc_power(integrated) {
                let e = rows.entry((side, free)).or_insert_with(|| (QFrac::zero(), QFrac::zero()));
                if j == k {
                    e.0 = &e.0 + c;
                } else {
                    e.1 = &e.1 + &(c * &known[j as usize]);
                }
            }
        }
    }
    for side in [false, true] {
        let e = rows.entry((side, Monomial::ONE)).or_insert_with(|| (QFrac::zero(), QFrac::zero()));
        e.0 = &e.0 - &QFrac::one();
    }
    let (a, b): (Vec<_>, Vec<_>) = rows.into_values().map(|(coef, known)| (vec![coef], -known)).unzip();
    Ok(linalg::solve(a, b)?.remove(0))
}

/// `h((bc)^k)`, solving and caching all lower values as needed.
pub fn haar_bc_power(k: u32) -> QFrac {
    if let Some(v) = cache().read().unwrap().get(k as usize) {
        return v.clone();
    }
    let mut w = cache().write().unwrap();
    while w.len() <= k as usize {
        let next = solve_next(&w).expect("Haar invariance system is uniquely solvable");
        w.push(next);
    }
    w[k as usize].clone()
}

/// The Haar state `h(x)`.
pub fn haar<C: Coeff>(x: &AlgebraElement<C>) -> C {
    let mut acc = C::zero();
    for (m, c) in x.terms() {
        if let Some(k) = bc_power(*m) {
            acc = acc.plus(&c.times(&C::from_frac(haar_bc_power(k))));
        }
    }
    acc
}
