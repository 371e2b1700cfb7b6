//! `L^p` norms on the classical group `SU(2)` by product quadrature.
//!
//! Points are `[[α, β], [-β̄, ᾱ]]` with `α = √(1-u) e^{iξ₁}`, `β = √u e^{iξ₂}`.
//! In these coordinates the normalised Haar measure is `du dξ₁ dξ₂ / 4π²`;
//! `u = sin²(θ/2)` for the polar Euler angle `θ`. The `u` integral uses
//! Gauss-Legendre nodes, the angles the trapezoid rule.

use nalgebra::Complex;
use rayon::prelude::*;

use crate::cqalg::AlgebraElement;
use crate::error::{Error, Result};
use crate::qarith::{Coeff, QPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureGrid {
    pub polar: usize,
    pub angle1: usize,
    pub angle2: usize,
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self::cube(64)
    }
}

impl QuadratureGrid {
    pub fn cube(n: usize) -> Self {
        Self { polar: n, angle1: n, angle2: n }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p1 = z;
                p0 = 1.0;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// A polynomial in commuting `a, d, b, c` with float coefficients.
#[derive(Clone, Debug)]
pub struct ClassicalPolynomial {
    terms: Vec<([u32; 4], f64)>,
    max_pow: u32,
}

impl ClassicalPolynomial {
    pub fn new<C: Coeff>(f: &AlgebraElement<C>, point: &QPoint) -> Result<Self> {
        if !point.is_classical() {
            return Err(Error::Unsupported("classical quadrature requires q = 1".into()));
        }
        let mut terms = Vec::new();
        let mut max_pow = 0;
        for (m, c) in f.terms() {
            let e = [m.a_pow(), m.d_pow(), m.b_pow(), m.c_pow()];
            max_pow = max_pow.max(*e.iter().max().unwrap());
            terms.push((e, c.value_at(point)?));
        }
        Ok(Self { terms, max_pow })
    }

    /// Value at the group element with first row `(α, β)`.
    pub fn eval(&self, alpha: Complex<f64>, beta: Complex<f64>) -> Complex<f64> {
        let gens = [alpha, alpha.conj(), beta, -beta.conj()];
        let pows: Vec<Vec<Complex<f64>>> = gens
            .iter()
            .map(|g| {
                let mut v = vec![Complex::new(1.0, 0.0)];
                for k in 1..=self.max_pow as usize {
                    v.push(v[k - 1] * g);
                }
                v
            })
            .collect();
        self.terms.iter().fold(Complex::new(0.0, 0.0), |acc, (e, c)| {
            acc + pows[0][e[0] as usize] * pows[1][e[1] as usize] * pows[2][e[2] as usize] * pows[3][e[3] as usize] * *c
        })
    }
}

/// Applies `g` to `|f|` at every node and returns the weighted mean (or the max).
fn integrate(f: &ClassicalPolynomial, grid: QuadratureGrid, g: impl Fn(f64) -> f64 + Sync, sup: bool) -> f64 {
    let (x, w) = gauss_legendre(grid.polar);
    let tau = std::f64::consts::TAU;
    let parts: Vec<f64> = x
        .par_iter()
        .zip(w.par_iter())
        .map(|(xi, wi)| {
            let u = 0.5 * (xi + 1.0);
            let (ra, rb) = ((1.0 - u).max(0.0).sqrt(), u.sqrt());
            let mut acc = 0.0f64;
            for i in 0..grid.angle1 {
                let alpha = Complex::from_polar(ra, tau * i as f64 / grid.angle1 as f64);
                for j in 0..grid.angle2 {
                    let beta = Complex::from_polar(rb, tau * j as f64 / grid.angle2 as f64);
                    let v = g(f.eval(alpha, beta).norm());
                    if sup {
                        acc = acc.max(v);
                    } else {
                        acc += v;
                    }
                }
            }
            if sup {
                acc
            } else {
                0.5 * wi * acc / (grid.angle1 * grid.angle2) as f64
            }
        })
        .collect();
    if sup {
        parts.into_iter().fold(0.0, f64::max)
    } else {
        parts.into_iter().sum()
    }
}

/// `(∫_{SU(2)} |f|^p)^{1/p}` at `q = 1`; `p = ∞` gives the max over the grid.
pub fn lp_norm_classical<C: Coeff>(f: &AlgebraElement<C>, p: f64, grid: QuadratureGrid, point: &QPoint) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Range(format!("p must be at least 1, got {p}")));
    }
    let poly = ClassicalPolynomial::new(f, point)?;
    if p.is_infinite() {
        return Ok(integrate(&poly, grid, |v| v, true));
    }
    Ok(integrate(&poly, grid, |v| v.powf(p), false).powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cqalg::generators;
    use crate::qarith::QFrac;

    #[test]
    fn legendre_rule_is_exact_on_polynomials() {
        let (x, w) = gauss_legendre(7);
        for k in 0..14 {
            let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((s - exact).abs() < 1e-13, "k = {k}");
        }
    }

    #[test]
    fn norms_of_simple_functions() {
        let one = QPoint::parse("1").unwrap();
        let g = QuadratureGrid::cube(16);
        let e = AlgebraElement::<QFrac>::one();
        for p in [1.0, 1.5, 2.0, 4.0] {
            assert!((lp_norm_classical(&e, p, g, &one).unwrap() - 1.0).abs() < 1e-12);
        }
        let [a, ..] = generators();
        let n2 = lp_norm_classical(&a, 2.0, g, &one).unwrap();
        assert!((n2 - 0.5f64.sqrt()).abs() < 1e-12);
        let n4 = lp_norm_classical(&a, 4.0, g, &one).unwrap();
        let n8 = lp_norm_classical(&a, 8.0, g, &one).unwrap();
        assert!(n2 < n4 && n4 < n8 && n8 < 1.0);
        let half = QPoint::parse("1/2").unwrap();
        assert!(lp_norm_classical(&a, 2.0, g, &half).is_err());
    }
}
