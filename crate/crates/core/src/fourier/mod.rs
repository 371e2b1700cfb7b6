//! Fourier analysis on the dual: transform, inverse, Hilbert-Schmidt norms
//! and the weighted `ℓ^p` norms of Fourier arrays.

pub mod inequality;
pub mod paley;
pub mod quadrature;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cqalg::{haar, matrix_coefficients, quantum_dim, AlgebraElement, Spin};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::qarith::{Coeff, QFrac, QPoint, QRadical};

pub use inequality::{inequality_ratio, write_inequality_csv, InequalityKind, InequalityParams, InequalityRow};
pub use paley::{paley_constant, paley_constant_brute_force};
pub use quadrature::{lp_norm_classical, QuadratureGrid};

/// Dimension data `n_l`, `d_l` and `Q^l` of the dual, for spins up to a cap.
#[derive(Clone, Debug)]
pub struct DualWeightTable {
    entries: BTreeMap<Spin, DualWeight>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualWeight {
    pub n: usize,
    pub d: QFrac,
    /// Diagonal of `Q^l`.
    pub q_diag: Vec<QFrac>,
}

impl DualWeightTable {
    pub fn su_q2(l_max: Spin) -> Self {
        let entries = l_max
            .up_to()
            .map(|l| {
                let q_diag = l.weights().map(|w| QFrac::q_pow(-w)).collect();
                (l, DualWeight { n: l.dim(), d: quantum_dim(l), q_diag })
            })
            .collect();
        Self { entries }
    }

    pub fn get(&self, l: Spin) -> Result<&DualWeight> {
        self.entries.get(&l).ok_or_else(|| Error::MissingSpin(l.to_string()))
    }

    pub fn spins(&self) -> impl Iterator<Item = Spin> + '_ {
        self.entries.keys().copied()
    }
}

impl DualWeight {
    pub fn trace_q(&self) -> QFrac {
        self.q_diag.iter().fold(QFrac::zero(), |a, x| &a + x)
    }

    pub fn trace_q_inv(&self) -> Result<QFrac> {
        self.q_diag.iter().try_fold(QFrac::zero(), |a, x| Ok(&a + &x.recip()?))
    }
}

/// A finitely supported family of matrices `F(l) ∈ ℂ^{n_l × n_l}`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "C: Serialize", deserialize = "C: Deserialize<'de>"))]
pub struct FourierArray<C = QRadical> {
    #[serde(with = "crate::serde_pairs")]
    blocks: BTreeMap<Spin, Matrix<C>>,
}

impl<C: Coeff> Default for FourierArray<C> {
    fn default() -> Self {
        Self { blocks: BTreeMap::new() }
    }
}

impl<C: Coeff> FourierArray<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, l: Spin, m: Matrix<C>) -> Result<()> {
        if m.rows() != l.dim() || m.cols() != l.dim() {
            return Err(Error::Dimension { expected: l.dim(), got: m.rows() });
        }
        self.blocks.insert(l, m);
        Ok(())
    }

    pub fn with(mut self, l: Spin, m: Matrix<C>) -> Result<Self> {
        self.insert(l, m)?;
        Ok(self)
    }

    pub fn get(&self, l: Spin) -> Option<&Matrix<C>> {
        self.blocks.get(&l)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (Spin, &Matrix<C>)> {
        self.blocks.iter().map(|(l, m)| (*l, m))
    }

    pub fn spins(&self) -> impl Iterator<Item = Spin> + '_ {
        self.blocks.keys().copied()
    }

    pub fn max_spin(&self) -> Option<Spin> {
        self.blocks.keys().next_back().copied()
    }

    /// Removes zero blocks.
    pub fn trimmed(mut self) -> Self {
        self.blocks.retain(|_, m| !m.is_zero());
        self
    }

    pub fn map_blocks<D: Coeff>(&self, f: impl Fn(Spin, &Matrix<C>) -> Result<Matrix<D>>) -> Result<FourierArray<D>> {
        let mut r = FourierArray::new();
        for (l, m) in &self.blocks {
            r.insert(*l, f(*l, m)?)?;
        }
        Ok(r)
    }

    /// Identity matrix on each of the given spins.
    pub fn identity(spins: impl IntoIterator<Item = Spin>) -> Self {
        let mut r = Self::new();
        for l in spins {
            r.blocks.insert(l, Matrix::identity(l.dim()));
        }
        r
    }

    /// `λ_l · I` on each spin.
    pub fn scalar_family(values: impl IntoIterator<Item = (Spin, C)>) -> Self {
        let mut r = Self::new();
        for (l, v) in values {
            r.blocks.insert(l, Matrix::identity(l.dim()).scale(&v));
        }
        r
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

impl<C: Coeff> std::fmt::Debug for FourierArray<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.blocks.iter()).finish()
    }
}

/// `f̂(l)_{ij} = h(f (t^l_{ji})^*)` for all spins up to `deg(f)/2`.
pub fn fourier_transform<C: Coeff>(f: &AlgebraElement<C>) -> FourierArray<QRadical> {
    let f = f.map(|c| c.to_radical());
    let mut out = FourierArray::new();
    for tw in 0..=f.degree() {
        let l = Spin::from_twice(tw);
        let b = matrix_coefficients(l);
        let n = l.dim();
        let m = Matrix::from_fn(n, n, |i, j| {
            let star = b.raw_star(j, i).map(|c| QRadical::from_frac(c.clone()));
            haar(&f.multiply(&star)).times(b.sqrt_ratio(j, i))
        });
        if !m.is_zero() {
            out.blocks.insert(l, m);
        }
    }
    out
}

/// `f = Σ_l d_l Tr((Q^l)^{-1} t^l F(l))`, i.e. `Σ d_l Σ_{ij} Q_j^{-1} t_{ij} F(l)_{ji}`.
pub fn inverse_fourier<C: Coeff>(f: &FourierArray<C>) -> AlgebraElement<QRadical> {
    let mut acc = AlgebraElement::zero();
    for (l, m) in f.blocks() {
        let b = matrix_coefficients(l);
        let d = quantum_dim(l);
        for i in 0..l.dim() {
            for j in 0..l.dim() {
                let fji = m.get(j, i);
                if fji.is_zero() {
                    continue;
                }
                let w = &d / &b.q_weight(j);
                let c = fji.to_radical().times(b.sqrt_ratio(i, j)).scale_frac(&w);
                acc = &acc + &b.raw(i, j).map(|x| QRadical::from_frac(x.clone())).scale(&c);
            }
        }
    }
    acc
}

/// `‖M‖²_HS = Tr((Q^l)^{-1} M M^*) = Σ_m q^{2m} Σ_n |M_{mn}|²`.
pub fn hs_norm_sq<C: Coeff>(m: &Matrix<C>, l: Spin) -> Result<C> {
    if m.rows() != l.dim() || m.cols() != l.dim() {
        return Err(Error::Dimension { expected: l.dim(), got: m.rows() });
    }
    let mut acc = C::zero();
    for i in 0..l.dim() {
        let w = C::from_frac(QFrac::q_pow(l.weight(i)));
        let mut row = C::zero();
        for j in 0..l.dim() {
            let x = m.get(i, j);
            row = row.plus(&x.times(x));
        }
        acc = acc.plus(&w.times(&row));
    }
    Ok(acc)
}

/// `Σ_l d_l ‖F(l)‖²_HS`, exactly.
pub fn dual_l2_norm_sq<C: Coeff>(f: &FourierArray<C>) -> Result<C> {
    let mut acc = C::zero();
    for (l, m) in f.blocks() {
        acc = acc.plus(&C::from_frac(quantum_dim(l)).times(&hs_norm_sq(m, l)?));
    }
    Ok(acc)
}

/// Weighted norm `(Σ d_l n_l (‖F(l)‖_HS/√n_l)^p)^{1/p}`; `p = ∞` gives `sup ‖F(l)‖_HS/√n_l`.
pub fn dual_lp_norm<C: Coeff>(f: &FourierArray<C>, p: f64, point: &QPoint) -> Result<f64> {
    let parts = per_spin_hs(f, point)?;
    dual_lp_from_parts(&parts, p, point, |_| 1.0)
}

/// `(l, ‖F(l)‖_HS)` at a numeric point.
pub fn per_spin_hs<C: Coeff>(f: &FourierArray<C>, point: &QPoint) -> Result<Vec<(Spin, f64)>> {
    f.blocks()
        .map(|(l, m)| {
            let v = hs_norm_sq(m, l)?.value_at(point)?;
            Ok((l, v.max(0.0).sqrt()))
        })
        .collect()
}

/// `ℓ^p` norm with an extra per-spin factor multiplying `‖F(l)‖_HS/√n_l`.
pub(crate) fn dual_lp_from_parts(
    parts: &[(Spin, f64)],
    p: f64,
    point: &QPoint,
    factor: impl Fn(Spin) -> f64,
) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Range(format!("p must be at least 1, got {p}")));
    }
    if p.is_infinite() {
        return Ok(parts.iter().map(|(l, hs)| hs / (l.dim() as f64).sqrt() * factor(*l)).fold(0.0, f64::max));
    }
    let mut acc = 0.0;
    for (l, hs) in parts {
        let n = l.dim() as f64;
        let d = point.eval(&quantum_dim(*l));
        acc += d * n * (hs / n.sqrt() * factor(*l)).powf(p);
    }
    Ok(acc.powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cqalg::{generators, l2_inner};
    use crate::qarith::q_int;

    #[test]
    fn transform_of_one_and_a() {
        let one = AlgebraElement::<QFrac>::one();
        let f = fourier_transform(&one);
        assert_eq!(f.spins().collect::<Vec<_>>(), vec![Spin::ZERO]);
        assert_eq!(f.get(Spin::ZERO).unwrap().get(0, 0), &QRadical::one());

        let [a, b, ..] = generators();
        let fa = fourier_transform(&a);
        let m = fa.get(Spin::HALF).unwrap();
        let expect = QRadical::from_frac(&QFrac::q() / &q_int(4));
        assert_eq!(m.get(0, 0), &expect);
        assert!(m.get(0, 1).is_zero() && m.get(1, 0).is_zero() && m.get(1, 1).is_zero());
        // b = t_{-1/2, 1/2}: f̂_{ij} = h(b t_{ji}^*) is nonzero only at (i, j) = (1, 0)
        let fb = fourier_transform(&b);
        let mb = fb.get(Spin::HALF).unwrap();
        assert!(!mb.get(1, 0).is_zero());
        assert!(mb.get(0, 1).is_zero());
    }

    #[test]
    fn round_trip_and_plancherel() {
        let [a, b, c, d] = generators();
        let f = &(&(&a * &b) + &c.scale(&QFrac::from_int(3))) - &(&d * &d);
        let ff = fourier_transform(&f);
        assert_eq!(inverse_fourier(&ff).try_to_frac().unwrap(), f);
        let lhs = QRadical::from_frac(l2_inner(&f, &f));
        assert_eq!(dual_l2_norm_sq(&ff).unwrap(), lhs);
    }

    #[test]
    fn hs_examples() {
        let l = Spin::from_twice(3);
        assert_eq!(hs_norm_sq(&Matrix::<QFrac>::identity(4), l).unwrap(), q_int(8));
        let h = Spin::HALF;
        let m = Matrix::diagonal(vec![QFrac::t_pow(-1), QFrac::t_pow(1)]);
        assert_eq!(hs_norm_sq(&m, h).unwrap(), &QFrac::q_pow(-2) + &QFrac::q_pow(2));
        let t = DualWeightTable::su_q2(Spin::from_twice(4));
        for l in t.spins() {
            let w = t.get(l).unwrap();
            assert_eq!(w.trace_q(), w.d);
            assert_eq!(w.trace_q_inv().unwrap(), w.d);
        }
    }

    #[test]
    fn lp_norm_examples() {
        let p = QPoint::parse("1/2").unwrap();
        let f = FourierArray::<QFrac>::identity([Spin::ZERO]);
        assert_eq!(dual_lp_norm(&f, 3.0, &p).unwrap(), 1.0);
        let l = Spin::from_twice(2);
        let g = FourierArray::<QFrac>::identity([l]);
        let expect = (p.eval(&q_int(6)) / 3.0).sqrt();
        assert!((dual_lp_norm(&g, f64::INFINITY, &p).unwrap() - expect).abs() < 1e-14);
        assert!(dual_lp_norm(&g, 0.5, &p).is_err());
    }
}
