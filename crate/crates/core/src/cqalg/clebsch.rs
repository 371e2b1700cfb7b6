//! Product-decomposition coefficients `t^k_{ij} t^s_{pr} = Σ C^{ksm}_{ijprut} t^m_{ut}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use super::element::AlgebraElement;
use super::haar::haar;
use super::pw::{matrix_coefficients, quantum_dim};
use super::spin::Spin;
use crate::qarith::{Coeff, QRadical};

/// Index `(i, j, p, r, m, u, t)`, positions counted from `0` within each spin.
pub type ClebschKey = (usize, usize, usize, usize, Spin, usize, usize);

#[derive(Clone, Debug)]
pub struct ClebschTable {
    k: Spin,
    s: Spin,
    entries: BTreeMap<ClebschKey, QRadical>,
}

/// Spins `|k-s|, ..., k+s` occurring in `t^k ⊗ t^s`.
pub fn product_spins(k: Spin, s: Spin) -> impl Iterator<Item = Spin> {
    let lo = k.twice().abs_diff(s.twice());
    let hi = k.twice() + s.twice();
    (lo..=hi).step_by(2).map(Spin::from_twice)
}

fn cache() -> &'static RwLock<HashMap<(Spin, Spin), Arc<ClebschTable>>> {
    static C: OnceLock<RwLock<HashMap<(Spin, Spin), Arc<ClebschTable>>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All coefficients for the pair `(k, s)`, computed once and cached.
pub fn clebsch_coefficients(k: Spin, s: Spin) -> Arc<ClebschTable> {
    if let Some(t) = cache().read().unwrap().get(&(k, s)) {
        return t.clone();
    }
    let t = Arc::new(build(k, s));
    cache().write().unwrap().entry((k, s)).or_insert(t).clone()
}

/// The value stored is `(d_m / Q_t) h(t^k_{ij} t^s_{pr} (t^m_{ut})^*)`, which makes
/// the reconstruction exact; only weight-compatible `(u, t)` can be nonzero.
fn build(k: Spin, s: Spin) -> ClebschTable {
    let bk = matrix_coefficients(k);
    let bs = matrix_coefficients(s);
    let mut entries = BTreeMap::new();
    for m in product_spins(k, s) {
        let bm = matrix_coefficients(m);
        let dm = quantum_dim(m);
        for i in 0..k.dim() {
            for p in 0..s.dim() {
                let Some(u) = m.index(k.weight(i) + s.weight(p)) else { continue };
                for j in 0..k.dim() {
                    for r in 0..s.dim() {
                        let Some(t) = m.index(k.weight(j) + s.weight(r)) else { continue };
                        let x = bk.raw(i, j).multiply(bs.raw(p, r));
                        let h = haar(&x.multiply(bm.raw_star(u, t)));
                        if h.is_zero() {
                            continue;
                        }
                        let scale = &dm / &bm.q_weight(t);
                        let v = QRadical::from_frac(&h * &scale)
                            .times(bk.sqrt_ratio(i, j))
                            .times(bs.sqrt_ratio(p, r))
                            .times(bm.sqrt_ratio(u, t));
                        entries.insert((i, j, p, r, m, u, t), v);
                    }
                }
            }
        }
    }
    ClebschTable { k, s, entries }
}

impl ClebschTable {
    pub fn spins(&self) -> (Spin, Spin) {
        (self.k, self.s)
    }

    pub fn get(&self, key: &ClebschKey) -> QRadical {
        self.entries.get(key).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&ClebschKey, &QRadical)> {
        self.entries.iter()
    }

    /// Entries with the given `(i, j, p, r)`.
    pub fn row(&self, i: usize, j: usize, p: usize, r: usize) -> impl Iterator<Item = (Spin, usize, usize, &QRadical)> {
        let lo = (i, j, p, r, Spin::ZERO, 0, 0);
        let hi = (i, j, p, r, Spin::from_twice(u32::MAX), usize::MAX, usize::MAX);
        self.entries
            .range(lo..=hi)
            .map(|(key, v)| (key.4, key.5, key.6, v))
    }

    /// `Σ_m Σ_{u,t} C t^m_{ut}`, which should equal `t^k_{ij} t^s_{pr}`.
    pub fn reconstruct(&self, i: usize, j: usize, p: usize, r: usize) -> AlgebraElement<QRadical> {
        let mut acc = AlgebraElement::zero();
        for (m, u, t, c) in self.row(i, j, p, r) {
            acc = &acc + &matrix_coefficients(m).unitary(u, t).scale(c);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_spins() {
        let t = clebsch_coefficients(Spin::ZERO, Spin::ZERO);
        assert_eq!(t.get(&(0, 0, 0, 0, Spin::ZERO, 0, 0)), QRadical::one());
    }

    #[test]
    fn half_half_reconstruction() {
        let h = Spin::HALF;
        let t = clebsch_coefficients(h, h);
        let b = matrix_coefficients(h);
        for (i, j, p, r) in [(0, 0, 0, 0), (0, 0, 1, 1), (1, 0, 0, 1)] {
            let direct = b.unitary(i, j).multiply(&b.unitary(p, r));
            assert_eq!(t.reconstruct(i, j, p, r), direct);
            assert!(t.row(i, j, p, r).all(|(m, _, _, _)| m.twice() == 0 || m.twice() == 2));
        }
    }
}
