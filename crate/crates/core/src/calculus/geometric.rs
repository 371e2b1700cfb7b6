//! The spinor Dirac operator and the Laplacian built from the
//! four-dimensional calculus.

use serde::Serialize;

use super::symbols::{lambda, q_minus_inv, symbol, Family, Frame};
use super::{partial, CalculusKind};
use crate::cqalg::{AlgebraElement, Spin};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::multiplier::apply_symbol;
use crate::qarith::{q_int, Coeff, QFrac, QPoint, QRadical};

/// A section `s_1 ⊗ e_1 + s_2 ⊗ e_2` of the spinor bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct Spinor {
    pub s1: AlgebraElement<QRadical>,
    pub s2: AlgebraElement<QRadical>,
}

/// `(D s)_α = Σ_β ∂^{αβ} s_β`.
pub fn geometric_dirac(s: &Spinor) -> Result<Spinor> {
    let k = CalculusKind::FourD;
    Ok(Spinor {
        s1: &partial(k, 0, &s.s1)? + &partial(k, 1, &s.s2)?,
        s2: &partial(k, 2, &s.s1)? + &partial(k, 3, &s.s2)?,
    })
}

/// `[[σ^a, σ^b], [σ^c, σ^d]]` acting on the coefficient vectors of a row of
/// spin-`l` matrix coefficients.
pub fn dirac_block(l: Spin, frame: Frame) -> Matrix<QRadical> {
    let n = l.dim();
    let parts = [Family::FourA, Family::FourB, Family::FourC, Family::FourD].map(|f| symbol(f, l, frame));
    Matrix::from_fn(2 * n, 2 * n, |i, j| parts[2 * (i / n) + j / n].get(i % n, j % n).clone())
}

/// The two eigenvalues of `D/λ` on spin `l`: `q^{l+1}[l]` and `-q^{-l}[l+1]`.
pub fn dirac_eigenvalues(l: Spin) -> (QFrac, QFrac) {
    let tl = l.twice_i64();
    (&QFrac::t_pow(tl + 2) * &q_int(tl), -(&QFrac::t_pow(-tl) * &q_int(tl + 2)))
}

#[derive(Clone, Debug, Serialize)]
pub struct DiracBlockCheck {
    pub l: Spin,
    /// `(D/λ - e_1)(D/λ - e_2) = 0` holds exactly.
    pub exact: bool,
    pub e1: f64,
    pub e2: f64,
    /// Multiplicities on the whole spin-`l` isotypic component.
    pub mult_e1: usize,
    pub mult_e2: usize,
    /// Largest distance from a numeric eigenvalue to `{e_1, e_2}`.
    pub max_residual: f64,
}

pub fn dirac_block_check(l: Spin, point: &QPoint) -> Result<DiracBlockCheck> {
    let n = l.dim();
    let inv_lam = QRadical::from_frac(lambda().recip()?);
    let m = dirac_block(l, Frame::Weight).scale(&inv_lam);
    let (e1, e2) = dirac_eigenvalues(l);
    let shift = |e: &QFrac| m.sub(&Matrix::identity(2 * n).scale(&QRadical::from_frac(e.clone())));
    let exact = shift(&e1)?.mul(&shift(&e2)?)?.is_zero();

    let (f1, f2) = (point.eval(&e1), point.eval(&e2));
    let tol = 1e-9 * (1.0 + f1.abs().max(f2.abs()));
    let eig = m.to_f64(point)?.complex_eigenvalues();
    let (mut mult_e1, mut mult_e2, mut max_residual) = (0, 0, 0.0f64);
    for z in eig.iter() {
        let d1 = ((z.re - f1).powi(2) + z.im.powi(2)).sqrt();
        let d2 = ((z.re - f2).powi(2) + z.im.powi(2)).sqrt();
        max_residual = max_residual.max(d1.min(d2));
        if d1 <= tol {
            mult_e1 += 1;
        } else if d2 <= tol {
            mult_e2 += 1;
        }
    }
    Ok(DiracBlockCheck { l, exact, e1: f1, e2: f2, mult_e1: mult_e1 * n, mult_e2: mult_e2 * n, max_residual })
}

/// `Δ_q = (q σ^a + q^{-1} σ^d)/(q - q^{-1})²`.
pub fn laplacian_symbol(l: Spin, frame: Frame) -> Matrix<QRadical> {
    let c = q_minus_inv();
    let k = (&c * &c).recip().expect("q - 1/q is a nonzero function");
    let a = symbol(Family::FourA, l, frame).scale(&QRadical::from_frac(&QFrac::q() * &k));
    let d = symbol(Family::FourD, l, frame).scale(&QRadical::from_frac(&QFrac::q_pow(-1) * &k));
    a.add(&d).expect("equal sizes")
}

/// Basis of the geometric frame: `e_z = q^{-2}e_a - e_d`, `e_b`, `e_c`, `θ = e_a + e_d`.
pub const GEOMETRIC_LABELS: [&str; 4] = ["ez", "eb", "ec", "theta"];

/// A symmetric-form-like tensor `Σ g_{ij} e_i ⊗ e_j` in the geometric frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    /// `(i, j, g_{ij})` with indices into [`GEOMETRIC_LABELS`].
    pub entries: Vec<(usize, usize, QFrac)>,
    /// `κ` in `Δ = κ g_{ij} ∂^i ∂^j`.
    pub prefactor: QFrac,
}

impl Metric {
    /// `g = e_c⊗e_b + q²e_b⊗e_c + (q²/(q+q^{-1}))(e_z⊗e_z - θ⊗θ)` with `κ = q/2`, as printed.
    pub fn printed() -> Self {
        let k = &QFrac::q_pow(2) * &(&QFrac::q() + &QFrac::q_pow(-1)).recip().expect("nonzero");
        Self {
            entries: vec![(2, 1, QFrac::one()), (1, 2, QFrac::q_pow(2)), (0, 0, k.clone()), (3, 3, -k)],
            prefactor: &QFrac::q() * &QFrac::from_int(2).recip().expect("nonzero"),
        }
    }

    /// Coefficients for which `κ g_{ij}∂^i∂^j` reproduces `Δ_q`:
    /// the `e_z⊗e_z - θ⊗θ` weight is `1 + q^{-2}` and `κ = 1/(2qλ²)`.
    pub fn consistent() -> Self {
        let k = &QFrac::one() + &QFrac::q_pow(-2);
        let lam = lambda();
        Self {
            entries: vec![(2, 1, QFrac::one()), (1, 2, QFrac::q_pow(2)), (0, 0, k.clone()), (3, 3, -k)],
            prefactor: (&(&QFrac::from_int(2) * &QFrac::q()) * &(&lam * &lam)).recip().expect("nonzero"),
        }
    }
}

/// Symbols of `∂^z, ∂^b, ∂^c, ∂^θ`, dual to the geometric frame:
/// `∂^z = (∂^a - ∂^d)/(1+q^{-2})`, `∂^θ = (q∂^a + q^{-1}∂^d)/(q+q^{-1})`.
pub fn geometric_partials(l: Spin, frame: Frame) -> [Matrix<QRadical>; 4] {
    let s = |f| symbol(f, l, frame);
    let c = |x: QFrac| QRadical::from_frac(x);
    let (a, d) = (s(Family::FourA), s(Family::FourD));
    let z = a.sub(&d).unwrap().scale(&c((&QFrac::one() + &QFrac::q_pow(-2)).recip().unwrap()));
    let theta = a
        .scale(&c(QFrac::q()))
        .add(&d.scale(&c(QFrac::q_pow(-1))))
        .unwrap()
        .scale(&c((&QFrac::q() + &QFrac::q_pow(-1)).recip().unwrap()));
    [z, s(Family::FourB), s(Family::FourC), theta]
}

/// Symbol of `κ Σ g_{ij} ∂^i∂^j`, where `∂^i∂^j` applies `∂^j` first.
pub fn laplacian_metric_symbol(l: Spin, frame: Frame, metric: &Metric) -> Matrix<QRadical> {
    let p = geometric_partials(l, frame);
    let mut acc = Matrix::zeros(l.dim(), l.dim());
    for (i, j, g) in &metric.entries {
        // the symbol of ∂^i∂^j is σ^i σ^j
        let term = p[*i].mul(&p[*j]).unwrap().scale(&QRadical::from_frac(g.clone()));
        acc = acc.add(&term).unwrap();
    }
    acc.scale(&QRadical::from_frac(metric.prefactor.clone()))
}

/// `Δ_q f`.
pub fn q_laplacian<C: Coeff>(f: &AlgebraElement<C>) -> Result<AlgebraElement<QRadical>> {
    let mut sym = crate::fourier::FourierArray::new();
    for l in Spin::from_twice(f.degree()).up_to() {
        sym.insert(l, laplacian_symbol(l, Frame::Algebra))?;
    }
    apply_symbol(&sym, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cqalg::matrix_coefficients;

    fn casimir(l: Spin) -> QFrac {
        let tl = l.twice_i64();
        &q_int(tl) * &q_int(tl + 2)
    }

    #[test]
    fn laplacian_is_scalar() {
        for tw in 0..6 {
            let l = Spin::from_twice(tw);
            let expect = Matrix::identity(l.dim()).scale(&QRadical::from_frac(casimir(l)));
            assert_eq!(laplacian_symbol(l, Frame::Weight), expect, "l = {l}");
            assert_eq!(laplacian_metric_symbol(l, Frame::Weight, &Metric::consistent()), expect, "metric route, l = {l}");
            if tw > 0 {
                assert_ne!(laplacian_metric_symbol(l, Frame::Weight, &Metric::printed()), expect);
            }
        }
        let t = matrix_coefficients(Spin::from_twice(2)).unitary(0, 1);
        let lt = q_laplacian(&t).unwrap();
        assert_eq!(lt, t.scale(&QRadical::from_frac(casimir(Spin::from_twice(2)))));
    }

    #[test]
    fn dirac_block_spectrum() {
        for q in ["1/2", "4/5"] {
            let pt = QPoint::parse(q).unwrap();
            for tw in 1..4 {
                let c = dirac_block_check(Spin::from_twice(tw), &pt).unwrap();
                assert!(c.exact, "{c:?}");
                assert!(c.max_residual < 1e-9, "{c:?}");
                let n = tw as usize + 1;
                assert_eq!(c.mult_e1 + c.mult_e2, 2 * n * n);
            }
        }
    }

    #[test]
    fn dirac_on_spinor_matches_block() {
        let h = Spin::HALF;
        let b = matrix_coefficients(h);
        let (a, bb) = (b.unitary(0, 0), b.unitary(0, 1));
        let ds = geometric_dirac(&Spinor { s1: a.clone(), s2: a.clone() }).unwrap();
        let r = |x: QFrac| QRadical::from_frac(x);
        // ∂^a a = (q-1)a, ∂^b a = λb, ∂^c a = 0, ∂^d a = (q^{-1}-1)a
        assert_eq!(ds.s1, &a.scale(&r(&QFrac::q() - &QFrac::one())) + &bb.scale(&r(lambda())));
        assert_eq!(ds.s2, a.scale(&r(&QFrac::q_pow(-1) - &QFrac::one())));
    }
}
