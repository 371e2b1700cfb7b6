//! The Paley constant `M_φ = sup_t t Σ_{φ(l) ≥ t} d_l n_l`.

use std::collections::BTreeMap;

use crate::cqalg::{quantum_dim, Spin};
use crate::error::{Error, Result};
use crate::qarith::QPoint;

fn weights(phi: &BTreeMap<Spin, f64>, l_max: Spin, point: &QPoint) -> Result<Vec<(f64, f64)>> {
    let v: Vec<_> = phi
        .iter()
        .filter(|(l, _)| **l <= l_max)
        .map(|(l, t)| (*t, point.eval(&quantum_dim(*l)) * l.dim() as f64))
        .collect();
    if v.is_empty() {
        return Err(Error::Range("φ has empty support".into()));
    }
    if let Some((t, _)) = v.iter().find(|(t, _)| !(*t > 0.0)) {
        return Err(Error::Range(format!("φ must be positive, got {t}")));
    }
    Ok(v)
}

/// `M_φ` over spins `≤ l_max`. The supremum is attained at a value of `φ`:
/// between consecutive values the sum is constant and `t` increases.
pub fn paley_constant(phi: &BTreeMap<Spin, f64>, l_max: Spin, point: &QPoint) -> Result<f64> {
    let mut v = weights(phi, l_max, point)?;
    v.sort_by(|x, y| y.0.total_cmp(&x.0));
    let mut best = 0.0f64;
    let mut acc = 0.0;
    let mut k = 0;
    while k < v.len() {
        let t = v[k].0;
        while k < v.len() && v[k].0 == t {
            acc += v[k].1;
            k += 1;
        }
        best = best.max(t * acc);
    }
    Ok(best)
}

/// Quadratic reference: for each candidate threshold sum over all spins.
pub fn paley_constant_brute_force(phi: &BTreeMap<Spin, f64>, l_max: Spin, point: &QPoint) -> Result<f64> {
    let v = weights(phi, l_max, point)?;
    let mut best = 0.0f64;
    for (t, _) in &v {
        let s: f64 = v.iter().filter(|(u, _)| u >= t).map(|(_, w)| w).sum();
        best = best.max(t * s);
    }
    Ok(best)
}

/// `φ(l) = 1/(2l+1)` on spins up to `l_max`.
pub fn inverse_dimension_weight(l_max: Spin) -> BTreeMap<Spin, f64> {
    l_max.up_to().map(|l| (l, 1.0 / l.dim() as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        let one = QPoint::parse("1").unwrap();
        let phi: BTreeMap<_, _> = [(Spin::ZERO, 1.0)].into();
        assert_eq!(paley_constant(&phi, Spin::ZERO, &one).unwrap(), 1.0);
        let phi = inverse_dimension_weight(Spin::from_twice(4));
        let m = paley_constant(&phi, Spin::from_twice(4), &one).unwrap();
        assert!((m - 11.0).abs() < 1e-12);
        let scaled: BTreeMap<_, _> = phi.iter().map(|(l, t)| (*l, 3.0 * t)).collect();
        let m3 = paley_constant(&scaled, Spin::from_twice(4), &one).unwrap();
        assert!((m3 - 33.0).abs() < 1e-12);
        assert!(paley_constant(&BTreeMap::new(), Spin::ZERO, &one).is_err());
    }
}
