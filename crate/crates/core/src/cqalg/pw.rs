//! Matrix coefficients `t^l_{mn}` of the irreducible corepresentations.
//!
//! The spin-`l` corepresentation is realised on the degree-`2l` part of the
//! quantum plane `yx = qxy` with coaction `x ↦ a⊗x + b⊗y`, `y ↦ c⊗x + d⊗y`.
//! On the basis `v_m = x^{l-m} y^{l+m}` this yields unnormalised coefficients
//! `T_{mn}`; the unitary ones are `t_{mn} = T_{mn} √(N_n / N_m)` where the
//! normalisers `N_m` are fixed by `Σ_k t_{mk} t_{mk}^* = 1`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use super::element::AlgebraElement;
use super::haar::haar;
use super::monomial::{product, Gen, Monomial};
use super::spin::Spin;
use crate::error::Result;
use crate::matrix::Matrix;
use crate::qarith::{linalg, q_int, Coeff, QFrac, QRadical};

type PlaneElement = BTreeMap<(Monomial, u32, u32), QFrac>;

fn plane_mul(x: &PlaneElement, y: &PlaneElement) -> PlaneElement {
    let mut r = PlaneElement::new();
    for ((m1, r1, s1), c1) in x {
        for ((m2, r2, s2), c2) in y {
            // y^{s1} x^{r2} = q^{s1 r2} x^{r2} y^{s1}
            let c = c1 * c2;
            let qf = QFrac::q_pow((*s1 as i64) * (*r2 as i64));
            for (m, s) in product(*m1, *m2).iter() {
                let v = &(&c * &qf) * &QFrac::from_scalar(s.clone());
                let k = (*m, r1 + r2, s1 + s2);
                let e = r.entry(k).or_insert_with(QFrac::zero);
                *e = &*e + &v;
                if e.is_zero() {
                    r.remove(&k);
                }
            }
        }
    }
    r
}

fn plane_power(base: &PlaneElement, n: u32) -> PlaneElement {
    let mut r = PlaneElement::new();
    r.insert((Monomial::ONE, 0, 0), QFrac::one());
    for _ in 0..n {
        r = plane_mul(&r, base);
    }
    r
}

/// The spin-`l` block of the Peter-Weyl table.
#[derive(Debug)]
pub struct PwBlock {
    spin: Spin,
    t: Vec<AlgebraElement<QFrac>>,
    t_star: Vec<AlgebraElement<QFrac>>,
    norm: Vec<QFrac>,
    sqrt_ratio: Vec<QRadical>,
}

impl PwBlock {
    fn build(spin: Spin) -> Result<Self> {
        let tw = spin.twice();
        let n = spin.dim();
        let one = QFrac::one();
        let dx: PlaneElement =
            [((Monomial::gen(Gen::A), 1, 0), one.clone()), ((Monomial::gen(Gen::B), 0, 1), one.clone())].into();
        let dy: PlaneElement =
            [((Monomial::gen(Gen::C), 1, 0), one.clone()), ((Monomial::gen(Gen::D), 0, 1), one.clone())].into();
        let mut t = vec![AlgebraElement::zero(); n * n];
        for i in 0..n {
            let v = plane_mul(&plane_power(&dx, tw - i as u32), &plane_power(&dy, i as u32));
            for ((m, r, s), c) in v {
                debug_assert_eq!(r + s, tw);
                let j = s as usize;
                t[i * n + j].add_term(m, c);
            }
        }
        let t_star: Vec<_> = t.iter().map(|x| x.star()).collect();
        let norm = solve_normalisers(n, &t, &t_star)?;
        let mut sqrt_ratio = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                sqrt_ratio.push(QRadical::sqrt(&(&norm[j] / &norm[i]))?);
            }
        }
        Ok(Self { spin, t, t_star, norm, sqrt_ratio })
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn dim(&self) -> usize {
        self.spin.dim()
    }

    /// Unnormalised coefficient `T_{ij}` (indices `0..n`).
    pub fn raw(&self, i: usize, j: usize) -> &AlgebraElement<QFrac> {
        &self.t[i * self.dim() + j]
    }

    /// `T_{ij}^*`.
    pub fn raw_star(&self, i: usize, j: usize) -> &AlgebraElement<QFrac> {
        &self.t_star[i * self.dim() + j]
    }

    /// Normaliser `N_i`.
    pub fn normaliser(&self, i: usize) -> &QFrac {
        &self.norm[i]
    }

    /// `√(N_j / N_i)`, so that `t_{ij} = T_{ij} √(N_j/N_i)`.
    pub fn sqrt_ratio(&self, i: usize, j: usize) -> &QRadical {
        &self.sqrt_ratio[i * self.dim() + j]
    }

    /// Unitary coefficient `t_{ij}`.
    pub fn unitary(&self, i: usize, j: usize) -> AlgebraElement<QRadical> {
        let s = self.sqrt_ratio(i, j);
        self.raw(i, j).map(|c| QRadical::from_frac(c.clone()).times(s))
    }

    /// `Q_i = q^{-2i}` at index `i`.
    pub fn q_weight(&self, i: usize) -> QFrac {
        QFrac::q_pow(-self.spin.weight(i))
    }

    /// `Q^l` as a diagonal matrix.
    pub fn q_matrix(&self) -> Matrix<QFrac> {
        Matrix::diagonal((0..self.dim()).map(|i| self.q_weight(i)).collect())
    }

    /// Quantum dimension `d_l = [2l+1]_q`.
    pub fn quantum_dim(&self) -> QFrac {
        quantum_dim(self.spin)
    }
}

pub fn quantum_dim(l: Spin) -> QFrac {
    q_int(2 * (l.twice_i64() + 1))
}

/// `Q_i = q^{-2i}` for the doubled weight `twice_i`.
pub fn q_weight(twice_i: i64) -> QFrac {
    QFrac::q_pow(-twice_i)
}

fn solve_normalisers(n: usize, t: &[AlgebraElement<QFrac>], t_star: &[AlgebraElement<QFrac>]) -> Result<Vec<QFrac>> {
    // Σ_k N_k T_ik T_ik^* = N_i · 1 for every row i, plus N_0 = 1
    let mut rows: BTreeMap<(usize, Monomial), Vec<QFrac>> = BTreeMap::new();
    for i in 0..n {
        for k in 0..n {
            let p = t[i * n + k].multiply(&t_star[i * n + k]);
            for (m, c) in p.terms() {
                let row = rows.entry((i, *m)).or_insert_with(|| vec![QFrac::zero(); n]);
                row[k] = &row[k] + c;
            }
        }
        let row = rows.entry((i, Monomial::ONE)).or_insert_with(|| vec![QFrac::zero(); n]);
        row[i] = &row[i] - &QFrac::one();
    }
    let mut a: Vec<Vec<QFrac>> = rows.into_values().collect();
    let mut b = vec![QFrac::zero(); a.len()];
    let mut fix = vec![QFrac::zero(); n];
    fix[0] = QFrac::one();
    a.push(fix);
    b.push(QFrac::one());
    linalg::solve(a, b)
}

fn cache() -> &'static RwLock<HashMap<Spin, Arc<PwBlock>>> {
    static C: OnceLock<RwLock<HashMap<Spin, Arc<PwBlock>>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The spin-`l` block, built once and cached.
pub fn matrix_coefficients(l: Spin) -> Arc<PwBlock> {
    if let Some(b) = cache().read().unwrap().get(&l) {
        return b.clone();
    }
    let b = Arc::new(PwBlock::build(l).expect("normalisers are uniquely determined"));
    cache().write().unwrap().entry(l).or_insert(b).clone()
}

/// `(f, g) = h(f g^*)`.
pub fn l2_inner<C: Coeff>(f: &AlgebraElement<C>, g: &AlgebraElement<C>) -> C {
    haar(&f.multiply(&g.star()))
}

/// `⟨f, g⟩ = h(g^* f)`, the GNS pairing.
pub fn gns_inner<C: Coeff>(f: &AlgebraElement<C>, g: &AlgebraElement<C>) -> C {
    haar(&g.star().multiply(f))
}

/// Entrywise counit of the unnormalised block.
pub fn counit_matrix(l: Spin) -> Matrix<QFrac> {
    let b = matrix_coefficients(l);
    Matrix::from_fn(b.dim(), b.dim(), |i, j| b.raw(i, j).counit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cqalg::element::generators;

    #[test]
    fn half_spin_is_fundamental_matrix() {
        let b = matrix_coefficients(Spin::HALF);
        let [a, bb, c, d] = generators();
        assert_eq!(b.raw(0, 0), &a);
        assert_eq!(b.raw(0, 1), &bb);
        assert_eq!(b.raw(1, 0), &c);
        assert_eq!(b.raw(1, 1), &d);
        assert!(b.normaliser(1).is_one());
    }

    #[test]
    fn counit_is_identity() {
        for tw in 0..4 {
            let l = Spin::from_twice(tw);
            assert_eq!(counit_matrix(l), Matrix::identity(l.dim()));
        }
    }

    #[test]
    fn inner_product_examples() {
        let b = matrix_coefficients(Spin::HALF);
        let t11 = b.unitary(0, 0);
        assert_eq!(l2_inner(&t11, &t11), QRadical::from_frac(&QFrac::q() / &q_int(4)));
        let t12 = b.unitary(0, 1);
        assert_eq!(l2_inner(&t12, &t12), QRadical::from_frac(&QFrac::q_pow(-1) / &q_int(4)));
        let one = AlgebraElement::<QFrac>::one();
        assert!(l2_inner(&one, &one).is_one());
        let t1 = matrix_coefficients(Spin::from_twice(2));
        assert!(l2_inner(&t11, &t1.unitary(1, 1)).is_zero());
    }
}
