//! Commutators with `|𝒟|` and their norms on products of matrix coefficients.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::{abs_dirac_apply, DiracSpec};
use crate::cqalg::{clebsch_coefficients, l2_inner, matrix_coefficients, quantum_dim, AlgebraElement, Spin};
use crate::error::Result;
use crate::qarith::{rat, Coeff, QFrac, QPoint, QRadical};

/// `∂(a)b = |𝒟|(ab) - a|𝒟|b`, exactly.
pub fn commutator_apply<C: Coeff>(a: &AlgebraElement<C>, b: &AlgebraElement<C>, spec: &DiracSpec) -> Result<AlgebraElement<QRadical>> {
    let one = rat(1, 1);
    let lhs = abs_dirac_apply(&a.multiply(b), &one, spec)?;
    let rhs = a.to_radical().multiply(&abs_dirac_apply(b, &one, spec)?);
    Ok(&lhs - &rhs)
}

fn abs_diff(spec: &DiracSpec, m: Spin, s: Spin) -> Result<QFrac> {
    Ok(&spec.abs_eigenvalue_exact(m)? - &spec.abs_eigenvalue_exact(s)?)
}

/// `‖∂(t^k_{ij}) t^s_{pr}‖²_{L²}` computed as `h(x x^*)`.
pub fn commutator_norm_sq_direct(k: Spin, s: Spin, idx: (usize, usize, usize, usize), spec: &DiracSpec) -> Result<QRadical> {
    let (i, j, p, r) = idx;
    let x = commutator_apply(&matrix_coefficients(k).unitary(i, j), &matrix_coefficients(s).unitary(p, r), spec)?;
    Ok(l2_inner(&x, &x))
}

/// The same norm through the product coefficients:
/// `Σ_m (|λ_m| - |λ_s|)² Σ_{u,t} |C^{ksm}_{ijprut}|² Q^m_t / d_m`.
pub fn commutator_norm_sq_expansion(k: Spin, s: Spin, idx: (usize, usize, usize, usize), spec: &DiracSpec) -> Result<QRadical> {
    let (i, j, p, r) = idx;
    let table = clebsch_coefficients(k, s);
    let mut acc = QRadical::zero();
    for (m, _u, t, c) in table.row(i, j, p, r) {
        let diff = abs_diff(spec, m, s)?;
        let w = &(&diff * &diff) * &(&matrix_coefficients(m).q_weight(t) / &quantum_dim(m));
        acc = &acc + &(c * c).scale_frac(&w);
    }
    Ok(acc)
}

/// The expansion as printed: `|λ_k - λ_s|² Σ_m Σ_t |C^{ksm}_{ijprtt}|² Q^m_t / d_m`.
pub fn commutator_norm_sq_literal(k: Spin, s: Spin, idx: (usize, usize, usize, usize), spec: &DiracSpec) -> Result<QRadical> {
    let diff = abs_diff(spec, k, s)?;
    Ok(diagonal_sum(k, s, idx).scale_frac(&(&diff * &diff)))
}

fn diagonal_sum(k: Spin, s: Spin, idx: (usize, usize, usize, usize)) -> QRadical {
    let (i, j, p, r) = idx;
    let table = clebsch_coefficients(k, s);
    let mut acc = QRadical::zero();
    for (m, u, t, c) in table.row(i, j, p, r) {
        if u == t {
            acc = &acc + &(c * c).scale_frac(&(&matrix_coefficients(m).q_weight(t) / &quantum_dim(m)));
        }
    }
    acc
}

/// `|λ_k - λ_s| √(Σ_m Σ_t |C_{ijprtt}|² Q^m_t/d_m) / √(Q^s_r / d_s)`.
pub fn condition_512_ratio(k: Spin, s: Spin, idx: (usize, usize, usize, usize), spec: &DiracSpec, point: &QPoint) -> Result<f64> {
    let diff = (spec.abs_eigenvalue(k, point)? - spec.abs_eigenvalue(s, point)?).abs();
    let sum = point.eval_radical(&diagonal_sum(k, s, idx)).max(0.0);
    let rhs = point.eval(&(&matrix_coefficients(s).q_weight(idx.3) / &quantum_dim(s)));
    Ok(diff * sum.sqrt() / rhs.sqrt())
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition512Row {
    pub k: String,
    pub s: String,
    pub i: usize,
    pub j: usize,
    pub p: usize,
    pub r: usize,
    pub lambda_family: String,
    pub q: String,
    pub ratio: f64,
}

/// All `(k, s, i, j, p, r)` with `k, s ≤ cap`; indices are reported from 1.
pub fn condition_512_scan(cap: Spin, spec: &DiracSpec, point: &QPoint) -> Result<Vec<Condition512Row>> {
    let pairs: Vec<(Spin, Spin)> = cap.up_to().flat_map(|k| cap.up_to().map(move |s| (k, s))).collect();
    let q = point.exact().map(|r| crate::qarith::rat_to_string(&r)).unwrap_or_else(|| point.q().to_string());
    let chunks: Vec<Result<Vec<Condition512Row>>> = pairs
        .par_iter()
        .map(|&(k, s)| {
            let mut rows = Vec::new();
            for i in 0..k.dim() {
                for j in 0..k.dim() {
                    for p in 0..s.dim() {
                        for r in 0..s.dim() {
                            let ratio = condition_512_ratio(k, s, (i, j, p, r), spec, point)?;
                            rows.push(Condition512Row {
                                k: k.to_string(),
                                s: s.to_string(),
                                i: i + 1,
                                j: j + 1,
                                p: p + 1,
                                r: r + 1,
                                lambda_family: spec.family.to_string(),
                                q: q.clone(),
                                ratio,
                            });
                        }
                    }
                }
            }
            Ok(rows)
        })
        .collect();
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

pub fn write_condition_512_csv<W: Write>(w: W, rows: &[Condition512Row]) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in rows {
        wr.serialize(r)?;
    }
    wr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cqalg::generators;

    #[test]
    fn scalar_commutes() {
        let spec = DiracSpec::classical();
        let [a, b, ..] = generators();
        let one = AlgebraElement::one();
        assert!(commutator_apply(&one, &b, &spec).unwrap().is_zero());
        assert!(!commutator_apply(&a, &a, &spec).unwrap().is_zero());
    }

    #[test]
    fn direct_equals_expansion() {
        let spec = DiracSpec::q_deformed();
        let h = Spin::HALF;
        for idx in [(0, 0, 0, 0), (0, 1, 1, 0), (1, 1, 0, 0)] {
            let d = commutator_norm_sq_direct(h, h, idx, &spec).unwrap();
            assert_eq!(d, commutator_norm_sq_expansion(h, h, idx, &spec).unwrap(), "{idx:?}");
        }
    }

    #[test]
    fn ratio_examples() {
        let half = QPoint::parse("1/2").unwrap();
        let spec = DiracSpec::classical();
        let h = Spin::HALF;
        assert_eq!(condition_512_ratio(h, h, (0, 0, 1, 1), &spec, &half).unwrap(), 0.0);
        // products with spin 0 leave t^{1/2}_{ii} unchanged
        let r = condition_512_ratio(h, Spin::ZERO, (0, 0, 0, 0), &spec, &half).unwrap();
        let norm = half.eval_radical(&l2_inner(&matrix_coefficients(h).unitary(0, 0), &matrix_coefficients(h).unitary(0, 0)));
        assert!((r - norm.sqrt()).abs() < 1e-12);
        let rows = condition_512_scan(Spin::from_twice(2), &DiracSpec::q_deformed(), &half).unwrap();
        assert!(rows.iter().all(|r| r.ratio.is_finite()));
    }
}
