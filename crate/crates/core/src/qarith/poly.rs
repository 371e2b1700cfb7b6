//! Dense univariate polynomial helpers over ℚ (ascending coefficients).

use num_traits::{One, Zero};

use super::laurent::Rat;

pub fn trim(p: &mut Vec<Rat>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(&mut r);
    r
}

/// Euclidean division `a = q b + r`. Panics if `b` is zero.
pub fn divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = degree(b).expect("division by zero polynomial");
    let lb = b[db].clone();
    let mut r: Vec<Rat> = a.to_vec();
    trim(&mut r);
    if r.len() < db + 1 {
        return (Vec::new(), r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lb;
        let s = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[s + i] -= &c * bc;
        }
        q[s] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn make_monic(p: &mut [Rat]) {
    if let Some(d) = degree(p) {
        let l = p[d].clone();
        if !l.is_one() {
            for c in p.iter_mut() {
                *c = &*c / &l;
            }
        }
    }
}

/// Monic greatest common divisor. `gcd(0, 0)` is `0`.
pub fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        make_monic(&mut y);
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(&mut x);
    x
}

pub fn is_one(p: &[Rat]) -> bool {
    p.len() == 1 && p[0].is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::laurent::rat_int;

    fn p(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn gcd_of_products() {
        // (t+1)(t-2) and (t+1)(t+3)
        let a = mul(&p(&[1, 1]), &p(&[-2, 1]));
        let b = mul(&p(&[1, 1]), &p(&[3, 1]));
        assert_eq!(gcd(&a, &b), p(&[1, 1]));
    }

    #[test]
    fn division_exact() {
        let a = mul(&p(&[1, 0, 1]), &p(&[2, 3]));
        let (q, r) = divrem(&a, &p(&[2, 3]));
        assert_eq!(q, p(&[1, 0, 1]));
        assert!(r.is_empty());
    }
}
