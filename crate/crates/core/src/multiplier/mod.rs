//! Left Fourier multipliers `A t^l = t^l σ_A(l)`.
//!
//! On the Fourier side such an operator acts by `F(l) ↦ Q σ(l) Q^{-1} F(l)`,
//! which reduces to `σ(l) F(l)` whenever `σ(l)` commutes with `Q^l`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::cqalg::{coproduct, matrix_coefficients, quantum_dim, AlgebraElement, Spin, Tensor};
use crate::error::{Error, Result};
use crate::fourier::{fourier_transform, hs_norm_sq, inverse_fourier, FourierArray};
use crate::matrix::Matrix;
use crate::qarith::{Coeff, QFrac, QPoint, QRadical};
use crate::spectral::DiracSpec;

/// Per-spin symbol matrices; same layout and JSON schema as [`FourierArray`].
pub type MultiplierSymbol<C = QRadical> = FourierArray<C>;

fn q_diag(l: Spin, power: i64) -> Matrix<QRadical> {
    let b = matrix_coefficients(l);
    Matrix::diagonal((0..l.dim()).map(|i| QRadical::from_frac(b.q_weight(i).pow(power).expect("q-power"))).collect())
}

fn block<'a, C: Coeff>(sigma: &'a MultiplierSymbol<C>, l: Spin) -> Result<&'a Matrix<C>> {
    sigma.get(l).ok_or_else(|| Error::MissingSpin(l.to_string()))
}

fn radical_block<C: Coeff>(sigma: &MultiplierSymbol<C>, l: Spin) -> Result<Matrix<QRadical>> {
    Ok(block(sigma, l)?.map(|x| x.to_radical()))
}

/// `Af` for the multiplier with symbol `σ`; every spin of `f` must be present.
pub fn apply_symbol<C: Coeff, D: Coeff>(sigma: &MultiplierSymbol<C>, f: &AlgebraElement<D>) -> Result<AlgebraElement<QRadical>> {
    let fh = fourier_transform(f);
    let g = fh.map_blocks(|l, m| {
        let s = radical_block(sigma, l)?;
        q_diag(l, 1).mul(&s)?.mul(&q_diag(l, -1))?.mul(m)
    })?;
    Ok(inverse_fourier(&g))
}

/// The literal Fourier-side product `F(l) ↦ σ(l) F(l)`, inverted.
pub fn apply_symbol_fourier_side<C: Coeff, D: Coeff>(sigma: &MultiplierSymbol<C>, f: &AlgebraElement<D>) -> Result<AlgebraElement<QRadical>> {
    let fh = fourier_transform(f);
    let g = fh.map_blocks(|l, m| radical_block(sigma, l)?.mul(m))?;
    Ok(inverse_fourier(&g))
}

/// Coefficients of `x` along `t^l_{m0}, ..., t^l_{m,n-1}`, or `None` if `x` has
/// components outside that row.
fn row_coefficients(x: &AlgebraElement<QRadical>, l: Spin, m: usize) -> Option<Vec<QRadical>> {
    let fh = fourier_transform(x);
    let b = matrix_coefficients(l);
    let d = quantum_dim(l);
    let blk = fh.get(l);
    // h(t_{ms} t_{ab}^*) = δ δ Q_s/d_l, so x̂_{sm} = c_s Q_s / d_l
    let c: Vec<QRadical> = (0..l.dim())
        .map(|s| blk.map(|bm| bm.get(s, m).scale_frac(&(&d / &b.q_weight(s)))).unwrap_or_default())
        .collect();
    let mut rebuilt = AlgebraElement::zero();
    for (s, cs) in c.iter().enumerate() {
        rebuilt = &rebuilt + &b.unitary(m, s).scale(cs);
    }
    (rebuilt == *x).then_some(c)
}

/// Recovers `σ_A` from `A t^l_{mj} = Σ_s t^l_{ms} σ_A(l)_{sj}`, checking that
/// every row `m` gives the same matrix.
pub fn extract_symbol(
    a: impl Fn(&AlgebraElement<QRadical>) -> Result<AlgebraElement<QRadical>>,
    l_max: Spin,
) -> Result<MultiplierSymbol> {
    let mut out = FourierArray::new();
    for l in l_max.up_to() {
        let b = matrix_coefficients(l);
        let n = l.dim();
        let mut sigma: Option<Matrix<QRadical>> = None;
        for m in 0..n {
            let mut cand = Matrix::zeros(n, n);
            for j in 0..n {
                let image = a(&b.unitary(m, j))?;
                let c = row_coefficients(&image, l, m).ok_or_else(|| {
                    Error::NotCoinvariant(format!("A t^{l}_{{{m}{j}}} leaves the row span"))
                })?;
                for (s, v) in c.into_iter().enumerate() {
                    cand.set(s, j, v);
                }
            }
            match &sigma {
                None => sigma = Some(cand),
                Some(s0) if *s0 != cand => {
                    return Err(Error::NotCoinvariant(format!("rows 0 and {m} give different symbols at spin {l}")))
                }
                _ => {}
            }
        }
        out.insert(l, sigma.expect("n ≥ 1"))?;
    }
    Ok(out)
}

/// Checks `Δ(A t) = (id ⊗ A)Δ(t)` on all matrix coefficients up to `l_max`.
pub fn check_coinvariance(
    a: impl Fn(&AlgebraElement<QRadical>) -> Result<AlgebraElement<QRadical>>,
    l_max: Spin,
) -> Result<bool> {
    for l in l_max.up_to() {
        let b = matrix_coefficients(l);
        let n = l.dim();
        for m in 0..n {
            for j in 0..n {
                let lhs = coproduct(&a(&b.unitary(m, j))?);
                let mut rhs = Tensor::zero();
                for k in 0..n {
                    rhs = rhs.plus(&Tensor::simple(&b.unitary(m, k), &a(&b.unitary(k, j))?));
                }
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Symbol of the adjoint for the pairing `⟨f, g⟩ = h(g^* f)`: `σ_{A^*} = σ_A^*`.
pub fn adjoint_symbol<C: Coeff>(sigma: &MultiplierSymbol<C>) -> Result<MultiplierSymbol<QRadical>> {
    sigma.map_blocks(|_, m| Ok(m.transpose().map(|x| x.to_radical())))
}

/// Symbol of the adjoint for `(f, g) = h(f g^*)`: `Q^{-1} σ_A^* Q`.
pub fn adjoint_symbol_l2<C: Coeff>(sigma: &MultiplierSymbol<C>) -> Result<MultiplierSymbol<QRadical>> {
    sigma.map_blocks(|l, m| q_diag(l, -1).mul(&m.transpose().map(|x| x.to_radical()))?.mul(&q_diag(l, 1)))
}

/// `Σ_l d_l Tr((Q^l)^{-1} F(l) t^l σ(l))`, the ordering with the symbol on the right.
pub fn quantize<C: Coeff, D: Coeff>(sigma: &MultiplierSymbol<C>, f: &AlgebraElement<D>) -> Result<AlgebraElement<QRadical>> {
    let fh = fourier_transform(f);
    let mut acc = AlgebraElement::zero();
    for (l, fm) in fh.blocks() {
        let s = radical_block(sigma, l)?;
        let b = matrix_coefficients(l);
        let d = QRadical::from_frac(quantum_dim(l));
        let n = l.dim();
        // Σ_{i,j,k} Q_i^{-1} F_ij t_jk σ_ki
        for j in 0..n {
            for k in 0..n {
                let mut c = QRadical::zero();
                for i in 0..n {
                    let w = QRadical::from_frac(b.q_weight(i).recip()?);
                    c = &c + &(&(&w * fm.get(i, j)) * s.get(k, i));
                }
                if !c.is_zero() {
                    acc = &acc + &b.unitary(j, k).scale(&(&d * &c));
                }
            }
        }
    }
    Ok(acc)
}

/// `Σ_l d_l Tr((Q^l)^{-1} σ(l) F(l) t^l)`, the ordering with the symbol on the left.
pub fn quantize_left<C: Coeff, D: Coeff>(sigma: &MultiplierSymbol<C>, f: &AlgebraElement<D>) -> Result<AlgebraElement<QRadical>> {
    let fh = fourier_transform(f);
    let mut acc = AlgebraElement::zero();
    for (l, fm) in fh.blocks() {
        let sf = radical_block(sigma, l)?.mul(fm)?;
        let b = matrix_coefficients(l);
        let d = QRadical::from_frac(quantum_dim(l));
        for i in 0..l.dim() {
            let w = QRadical::from_frac(b.q_weight(i).recip()?);
            for j in 0..l.dim() {
                let c = &(&d * &w) * sf.get(i, j);
                if !c.is_zero() {
                    acc = &acc + &b.unitary(j, i).scale(&c);
                }
            }
        }
    }
    Ok(acc)
}

/// Largest singular value of each block at a numeric point.
pub fn operator_norms<C: Coeff>(sigma: &MultiplierSymbol<C>, point: &QPoint) -> Result<BTreeMap<Spin, f64>> {
    sigma.blocks().map(|(l, m)| Ok((l, spectral_norm(&m.to_f64(point)?)))).collect()
}

fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

/// `sup_s s (Σ_{‖σ(l)‖_op > s} d_l n_l)^{1/p - 1/q}` over spins `≤ l_max`.
///
/// Only values just below an attained norm matter; empty level sets contribute 0.
pub fn lp_lq_bound<C: Coeff>(sigma: &MultiplierSymbol<C>, p: f64, q_exp: f64, l_max: Spin, point: &QPoint) -> Result<f64> {
    if !(p > 1.0 && p <= 2.0 && q_exp >= 2.0 && q_exp.is_finite()) {
        return Err(Error::Range(format!("need 1 < p ≤ 2 ≤ q < ∞, got p = {p}, q = {q_exp}")));
    }
    let e = 1.0 / p - 1.0 / q_exp;
    let norms: Vec<(f64, f64)> = operator_norms(sigma, point)?
        .into_iter()
        .filter(|(l, _)| *l <= l_max)
        .map(|(l, v)| (v, point.eval(&quantum_dim(l)) * l.dim() as f64))
        .collect();
    let mut best = 0.0f64;
    for (v, _) in &norms {
        if *v <= 0.0 {
            continue;
        }
        let mass: f64 = norms.iter().filter(|(u, _)| u >= v).map(|(_, w)| w).sum();
        best = best.max(v * mass.powf(e));
    }
    Ok(best)
}

/// `sup_l ‖σ(l)‖_op`.
pub fn sup_operator_norm<C: Coeff>(sigma: &MultiplierSymbol<C>, point: &QPoint) -> Result<f64> {
    Ok(operator_norms(sigma, point)?.into_values().fold(0.0, f64::max))
}

/// Exact `L² → L²` norm for `‖f‖² = h(f f^*)`.
///
/// On the row `{t_{mj}}_j` the norm is `Σ_j |c_j|² Q_j / d_l`, so the operator
/// acts as `Q^{1/2} σ Q^{-1/2}` in orthonormal coordinates.
pub fn l2_operator_norm<C: Coeff>(sigma: &MultiplierSymbol<C>, point: &QPoint) -> Result<f64> {
    let mut best = 0.0f64;
    for (l, m) in sigma.blocks() {
        let mut x = m.to_f64(point)?;
        for i in 0..l.dim() {
            for j in 0..l.dim() {
                let wi = point.eval(&QFrac::q_pow(-l.weight(i)));
                let wj = point.eval(&QFrac::q_pow(-l.weight(j)));
                x[(i, j)] *= (wi / wj).sqrt();
            }
        }
        best = best.max(spectral_norm(&x));
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Seminorms {
    pub p_alpha: f64,
    pub q_gamma: f64,
}

/// `p_α(σ) = (Σ d n |λ|^{2α} ‖σ‖²_HS)^{1/2}` and `q_γ(σ) = sup |λ|^γ ‖σ‖_op`.
pub fn schwartz_seminorms<C: Coeff>(sigma: &MultiplierSymbol<C>, alpha: f64, gamma: f64, spec: &DiracSpec, point: &QPoint) -> Result<Seminorms> {
    if alpha < 0.0 || gamma < 0.0 {
        return Err(Error::Range(format!("seminorm orders must be non-negative, got α = {alpha}, γ = {gamma}")));
    }
    Ok(Seminorms { p_alpha: p_seminorm(sigma, alpha, spec, point)?, q_gamma: q_seminorm(sigma, gamma, spec, point)? })
}

pub fn p_seminorm<C: Coeff>(sigma: &MultiplierSymbol<C>, alpha: f64, spec: &DiracSpec, point: &QPoint) -> Result<f64> {
    let mut acc = 0.0;
    for (l, m) in sigma.blocks() {
        let hs = hs_norm_sq(m, l)?.value_at(point)?;
        let lam = spec.abs_eigenvalue(l, point)?;
        acc += point.eval(&quantum_dim(l)) * l.dim() as f64 * lam.powf(2.0 * alpha) * hs;
    }
    Ok(acc.max(0.0).sqrt())
}

/// `q_γ` for any real `γ`.
pub fn q_seminorm<C: Coeff>(sigma: &MultiplierSymbol<C>, gamma: f64, spec: &DiracSpec, point: &QPoint) -> Result<f64> {
    let mut best = 0.0f64;
    for (l, v) in operator_norms(sigma, point)? {
        best = best.max(spec.abs_eigenvalue(l, point)?.powf(gamma) * v);
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeminormBound {
    pub p_alpha: f64,
    /// `√(Σ d n / |λ|^β) q_{α-β/2}(σ)`.
    pub literal_rhs: f64,
    /// `√(Σ d² n / |λ|^β) q_{α+β/2}(σ)`, from `‖σ‖²_HS ≤ d_l ‖σ‖²_op`.
    pub corrected_rhs: f64,
}

impl SeminormBound {
    pub fn literal_holds(&self) -> bool {
        self.p_alpha <= self.literal_rhs * (1.0 + 1e-12)
    }

    pub fn corrected_holds(&self) -> bool {
        self.p_alpha <= self.corrected_rhs * (1.0 + 1e-12)
    }
}

/// Both sides of the comparison between `p_α` and `q`-seminorms over the support of `σ`.
pub fn seminorm_bound<C: Coeff>(sigma: &MultiplierSymbol<C>, alpha: f64, beta: f64, spec: &DiracSpec, point: &QPoint) -> Result<SeminormBound> {
    let p_alpha = p_seminorm(sigma, alpha, spec, point)?;
    let (mut s1, mut s2) = (0.0, 0.0);
    for l in sigma.spins() {
        let w = l.dim() as f64 / spec.abs_eigenvalue(l, point)?.powf(beta);
        let d = point.eval(&quantum_dim(l));
        s1 += d * w;
        s2 += d * d * w;
    }
    Ok(SeminormBound {
        p_alpha,
        literal_rhs: s1.sqrt() * q_seminorm(sigma, alpha - beta / 2.0, spec, point)?,
        corrected_rhs: s2.sqrt() * q_seminorm(sigma, alpha + beta / 2.0, spec, point)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cqalg::{generators, gns_inner, l2_inner};
    use crate::qarith::q_int;

    fn r(x: i64) -> QRadical {
        QRadical::from_frac(QFrac::from_int(x))
    }

    fn sample_symbol(l_max: Spin) -> MultiplierSymbol {
        let mut s = FourierArray::new();
        for l in l_max.up_to() {
            let n = l.dim();
            s.insert(l, Matrix::from_fn(n, n, |i, j| r(((3 * i + 5 * j + l.twice() as usize) % 7) as i64 - 3))).unwrap();
        }
        s
    }

    #[test]
    fn identity_and_scalar_symbols() {
        let [a, b, ..] = generators();
        let f = &(&a * &b) + &b;
        let id = FourierArray::<QFrac>::identity(Spin::from_twice(2).up_to());
        assert_eq!(apply_symbol(&id, &f).unwrap(), f.to_radical());
        let t = matrix_coefficients(Spin::from_twice(2)).unitary(1, 1);
        let lam = FourierArray::scalar_family(Spin::from_twice(2).up_to().map(|l| (l, QFrac::from_int(l.dim() as i64))));
        assert_eq!(apply_symbol(&lam, &t).unwrap(), t.scale(&r(3)));
        let missing = FourierArray::<QFrac>::identity([Spin::ZERO]);
        assert!(matches!(apply_symbol(&missing, &a), Err(Error::MissingSpin(_))));
    }

    #[test]
    fn right_multiplication_on_rows() {
        let s = sample_symbol(Spin::HALF);
        let b = matrix_coefficients(Spin::HALF);
        let sm = s.get(Spin::HALF).unwrap();
        for m in 0..2 {
            for j in 0..2 {
                let mut expect = AlgebraElement::zero();
                for k in 0..2 {
                    expect = &expect + &b.unitary(m, k).scale(sm.get(k, j));
                }
                assert_eq!(apply_symbol(&s, &b.unitary(m, j)).unwrap(), expect);
            }
        }
    }

    #[test]
    fn extraction_round_trip_and_coinvariance() {
        let l_max = Spin::from_twice(2);
        let s = sample_symbol(l_max);
        let a = |x: &AlgebraElement<QRadical>| apply_symbol(&s, x);
        assert_eq!(extract_symbol(a, l_max).unwrap(), s);
        assert!(check_coinvariance(a, Spin::HALF).unwrap());
        // left multiplication by a generator is not a multiplier
        let [g, ..] = generators();
        let left = |x: &AlgebraElement<QRadical>| Ok(g.to_radical().multiply(x));
        assert!(extract_symbol(left, Spin::HALF).is_err());
        assert!(!check_coinvariance(left, Spin::HALF).unwrap());
    }

    #[test]
    fn adjoints() {
        let l_max = Spin::HALF;
        let s = sample_symbol(l_max);
        let st = adjoint_symbol(&s).unwrap();
        let sl = adjoint_symbol_l2(&s).unwrap();
        let [a, bb, c, d] = generators();
        let f = &(&a + &bb.scale(&QFrac::from_int(2))) - &AlgebraElement::constant(QFrac::one());
        let g = &(&c - &d) + &AlgebraElement::constant(QFrac::from_int(3));
        let (fr, gr) = (f.to_radical(), g.to_radical());
        let af = apply_symbol(&s, &fr).unwrap();
        assert_eq!(gns_inner(&af, &gr), gns_inner(&fr, &apply_symbol(&st, &gr).unwrap()));
        assert_eq!(l2_inner(&af, &gr), l2_inner(&fr, &apply_symbol(&sl, &gr).unwrap()));
    }

    #[test]
    fn quantization_orderings() {
        let l_max = Spin::HALF;
        let s = sample_symbol(l_max);
        let [a, b, ..] = generators();
        let f = &a + &b.scale(&QFrac::from_int(-2));
        assert_eq!(quantize(&s, &f).unwrap(), apply_symbol(&s, &f).unwrap());
        assert_eq!(quantize_left(&s, &f).unwrap(), apply_symbol_fourier_side(&s, &f).unwrap());
        assert_ne!(quantize_left(&s, &f).unwrap(), quantize(&s, &f).unwrap());
        let id = FourierArray::<QFrac>::identity([Spin::ZERO, l_max]);
        assert_eq!(quantize(&id, &f).unwrap(), f.to_radical());
    }

    #[test]
    fn bounds_and_norms() {
        let pt = QPoint::parse("1/2").unwrap();
        let id = FourierArray::<QFrac>::identity(Spin::from_twice(4).up_to());
        assert!((lp_lq_bound(&id, 2.0, 2.0, Spin::from_twice(4), &pt).unwrap() - 1.0).abs() < 1e-12);
        let l = Spin::from_twice(2);
        let one = FourierArray::<QFrac>::identity([l]).map_blocks(|_, m| Ok(m.scale(&QFrac::from_int(5)))).unwrap();
        let expect = 5.0 * (pt.eval(&q_int(6)) * 3.0).powf(1.0 / 1.5 - 1.0 / 3.0);
        assert!((lp_lq_bound(&one, 1.5, 3.0, l, &pt).unwrap() - expect).abs() < 1e-9);
        assert!(lp_lq_bound(&one, 2.5, 3.0, l, &pt).is_err());
        let s = sample_symbol(l);
        let diag = FourierArray::scalar_family(l.up_to().map(|x| (x, QFrac::from_int(x.twice() as i64 + 2))));
        assert!((l2_operator_norm(&diag, &pt).unwrap() - sup_operator_norm(&diag, &pt).unwrap()).abs() < 1e-12);
        assert!(l2_operator_norm(&s, &pt).unwrap() > 0.0);
    }

    #[test]
    fn seminorm_examples() {
        let pt = QPoint::parse("1/2").unwrap();
        let spec = DiracSpec::q_deformed();
        let zero = FourierArray::<QFrac>::new();
        assert_eq!(schwartz_seminorms(&zero, 1.0, 1.0, &spec, &pt).unwrap(), Seminorms { p_alpha: 0.0, q_gamma: 0.0 });
        let id0 = FourierArray::<QFrac>::identity([Spin::ZERO]);
        let s = schwartz_seminorms(&id0, 2.0, 3.0, &spec, &pt).unwrap();
        assert!((s.p_alpha - 1.0).abs() < 1e-12 && (s.q_gamma - 1.0).abs() < 1e-12);
        assert!(schwartz_seminorms(&id0, -1.0, 0.0, &spec, &pt).is_err());
        let b = seminorm_bound(&sample_symbol(Spin::from_twice(4)), 1.0, 2.0, &spec, &pt).unwrap();
        assert!(b.corrected_holds());
    }
}
