//! Cyclotomic polynomials in `t` and factorisation of q-integer products.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::laurent::{QScalar, Rat};
use super::poly;

fn cache() -> &'static Mutex<HashMap<u32, Vec<Rat>>> {
    static C: OnceLock<Mutex<HashMap<u32, Vec<Rat>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Dense coefficients of `Φ_d(t)`.
pub fn cyclotomic_dense(d: u32) -> Vec<Rat> {
    assert!(d >= 1);
    if let Some(v) = cache().lock().unwrap().get(&d) {
        return v.clone();
    }
    let mut num = vec![Rat::zero(); d as usize + 1];
    num[0] = -Rat::one();
    num[d as usize] = Rat::one();
    for e in 1..d {
        if d % e == 0 {
            let (q, r) = poly::divrem(&num, &cyclotomic_dense(e));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    cache().lock().unwrap().insert(d, num.clone());
    num
}

pub fn cyclotomic(d: u32) -> QScalar {
    QScalar::from_dense(&cyclotomic_dense(d), 0)
}

pub fn euler_phi(n: u32) -> u32 {
    let mut n0 = n;
    let mut r = n;
    let mut p = 2;
    while p * p <= n0 {
        if n0 % p == 0 {
            while n0 % p == 0 {
                n0 /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n0 > 1 {
        r -= r / n0;
    }
    r
}

/// A factorisation `c · t^e · Π Φ_d^{k_d}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CycloFactorization {
    pub content: Rat,
    pub t_exp: i64,
    pub factors: BTreeMap<u32, u32>,
}

/// Factors a nonzero Laurent polynomial into cyclotomic factors, if possible.
pub fn factor(p: &QScalar) -> Option<CycloFactorization> {
    let (mut v, lo) = p.to_dense();
    if v.is_empty() {
        return None;
    }
    let content = v.last().unwrap().clone();
    poly::make_monic(&mut v);
    if v.iter().any(|c| !c.denom().is_one()) {
        return None;
    }
    let mut factors = BTreeMap::new();
    let mut d: u32 = 1;
    loop {
        let deg = poly::degree(&v).unwrap_or(0);
        if deg == 0 {
            break;
        }
        // φ(d) ≥ √(d/2) bounds the search
        if (d as u64) > 2 * (deg as u64) * (deg as u64) + 2 {
            return None;
        }
        if euler_phi(d) as usize <= deg {
            let phi = cyclotomic_dense(d);
            loop {
                let (q, r) = poly::divrem(&v, &phi);
                if r.is_empty() {
                    *factors.entry(d).or_insert(0) += 1;
                    v = q;
                } else {
                    break;
                }
            }
        }
        d += 1;
    }
    Some(CycloFactorization { content, t_exp: lo, factors })
}

/// Largest square dividing `n`, returned as `(s, r)` with `n = s² r` and `r` squarefree.
pub fn square_split(n: &num_bigint::BigUint) -> (num_bigint::BigUint, num_bigint::BigUint) {
    use num_bigint::BigUint;
    let mut s = BigUint::one();
    let mut r = BigUint::one();
    let mut m = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= m {
        let mut k = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            k += 1;
        }
        for _ in 0..k / 2 {
            s *= &p;
        }
        if k % 2 == 1 {
            r *= &p;
        }
        p += 1u32;
    }
    r *= m;
    (s, r)
}

pub fn biguint_gcd(a: &num_bigint::BigUint, b: &num_bigint::BigUint) -> num_bigint::BigUint {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::laurent::rat_int;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_dense(1), vec![rat_int(-1), rat_int(1)]);
        assert_eq!(cyclotomic_dense(4), vec![rat_int(1), rat_int(0), rat_int(1)]);
        assert_eq!(cyclotomic_dense(6), vec![rat_int(1), rat_int(-1), rat_int(1)]);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn factor_t12_minus_1() {
        let p = QScalar::from_terms([(12, rat_int(3)), (0, rat_int(-3))]).shift(-5);
        let f = factor(&p).unwrap();
        assert_eq!(f.content, rat_int(3));
        assert_eq!(f.t_exp, -5);
        assert_eq!(f.factors.keys().copied().collect::<Vec<_>>(), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn non_cyclotomic_rejected() {
        let p = QScalar::from_terms([(1, rat_int(1)), (0, rat_int(-2))]);
        assert!(factor(&p).is_none());
    }
}
