//! Seeded samplers for property checks and sweeps.
//!
//! Integer coefficients are uniform on `{-3, ..., 3}`; monomials are normal
//! forms `a^i b^j c^k` or `d^i b^j c^k` of bounded total degree.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cqalg::{AlgebraElement, Gen, Monomial, Spin};
use crate::fourier::FourierArray;
use crate::matrix::Matrix;
use crate::qarith::QFrac;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn coeff(rng: &mut SampleRng) -> i64 {
    rng.gen_range(-3..=3)
}

pub fn nonzero_coeff(rng: &mut SampleRng) -> i64 {
    loop {
        let c = coeff(rng);
        if c != 0 {
            return c;
        }
    }
}

/// A normal-form monomial of total degree at most `max_degree`.
pub fn monomial(rng: &mut SampleRng, max_degree: u32) -> Monomial {
    let deg = rng.gen_range(0..=max_degree);
    let mut parts = [0u32; 3];
    for _ in 0..deg {
        parts[rng.gen_range(0..3)] += 1;
    }
    if rng.gen_bool(0.5) {
        Monomial::abc(parts[0], parts[1], parts[2])
    } else {
        Monomial::dbc(parts[0], parts[1], parts[2])
    }
}

/// Sum of `terms` random monomials with coefficients in `{-3..3}`.
pub fn element(rng: &mut SampleRng, max_degree: u32, terms: usize) -> AlgebraElement<QFrac> {
    let mut f = AlgebraElement::zero();
    for _ in 0..terms {
        f.add_term(monomial(rng, max_degree), QFrac::from_int(coeff(rng)));
    }
    f
}

/// A single monomial with a nonzero coefficient.
pub fn monomial_element(rng: &mut SampleRng, max_degree: u32) -> AlgebraElement<QFrac> {
    AlgebraElement::monomial(monomial(rng, max_degree), QFrac::from_int(nonzero_coeff(rng)))
}

pub fn word(rng: &mut SampleRng, max_len: usize) -> Vec<Gen> {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| Gen::ALL[rng.gen_range(0..4)]).collect()
}

/// A symbol on spins `0..=l_max` with integer entries in `{-3..3}`.
pub fn symbol(rng: &mut SampleRng, l_max: Spin) -> FourierArray<QFrac> {
    let mut s = FourierArray::new();
    for l in l_max.up_to() {
        let n = l.dim();
        let m = Matrix::from_fn(n, n, |_, _| QFrac::from_int(coeff(rng)));
        s.insert(l, m).expect("square block");
    }
    s
}

/// Positive weights `k/8`, `k ∈ {1, ..., 64}`, exact in binary floating point.
pub fn weight(rng: &mut SampleRng, l_max: Spin) -> BTreeMap<Spin, f64> {
    l_max.up_to().map(|l| (l, rng.gen_range(1..=64) as f64 / 8.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_given_seed() {
        let a = element(&mut rng(7), 3, 4);
        let b = element(&mut rng(7), 3, 4);
        assert_eq!(a, b);
        assert!(a.degree() <= 3);
        let w = weight(&mut rng(1), Spin::from_twice(4));
        assert!(w.values().all(|v| *v > 0.0));
    }
}
