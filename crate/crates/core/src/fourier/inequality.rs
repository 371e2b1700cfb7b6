//! Numeric harness for Hausdorff-Young, Paley, Hausdorff-Young-Paley,
//! Hardy-Littlewood and the `|𝒟|`-weighted Fourier inequality.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use super::paley::{inverse_dimension_weight, paley_constant};
use super::quadrature::{lp_norm_classical, QuadratureGrid};
use super::{dual_lp_from_parts, fourier_transform, per_spin_hs};
use crate::cqalg::{l2_inner, AlgebraElement, Spin};
use crate::error::{Error, Result};
use crate::qarith::{Coeff, QPoint};
use crate::spectral::DiracSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InequalityKind {
    HausdorffYoung,
    Paley,
    HyPaley,
    HardyLittlewood,
    DiracWeighted,
}

impl InequalityKind {
    pub const ALL: [InequalityKind; 5] =
        [Self::HausdorffYoung, Self::Paley, Self::HyPaley, Self::HardyLittlewood, Self::DiracWeighted];

    pub fn name(self) -> &'static str {
        match self {
            Self::HausdorffYoung => "hy",
            Self::Paley => "paley",
            Self::HyPaley => "hy-paley",
            Self::HardyLittlewood => "hl",
            Self::DiracWeighted => "cor58",
        }
    }
}

impl fmt::Display for InequalityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InequalityKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s || (s == "hausdorff-young" && *k == Self::HausdorffYoung))
            .ok_or_else(|| Error::Parse(format!("unknown inequality kind `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct InequalityParams {
    pub kind: InequalityKind,
    pub p: f64,
    /// Target exponent for the Hausdorff-Young-Paley form.
    pub b: Option<f64>,
    /// Summability exponent for the spectral forms.
    pub beta: Option<f64>,
    /// Weight `φ`; defaults to `1/(2l+1)`.
    pub phi: Option<BTreeMap<Spin, f64>>,
    pub dirac: Option<DiracSpec>,
    /// Spin cap for `φ`; defaults to the top spin of `f`.
    pub l_max: Option<Spin>,
    pub grid: QuadratureGrid,
}

impl InequalityParams {
    pub fn new(kind: InequalityKind, p: f64) -> Self {
        Self { kind, p, b: None, beta: None, phi: None, dirac: None, l_max: None, grid: QuadratureGrid::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InequalitySides {
    pub lhs: f64,
    /// Right side without the implicit constant.
    pub rhs: f64,
    pub ratio: f64,
}

/// One CSV line of an inequality sweep.
#[derive(Clone, Debug, Serialize)]
pub struct InequalityRow {
    pub kind: InequalityKind,
    pub q: String,
    pub p: f64,
    pub b: Option<f64>,
    pub beta: Option<f64>,
    pub l_max: String,
    pub seed: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

pub fn write_inequality_csv<W: Write>(w: W, rows: &[InequalityRow]) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in rows {
        wr.serialize(r)?;
    }
    wr.flush()?;
    Ok(())
}

/// `‖f‖_{L^p}`: exact for `p = 2`, classical quadrature at `q = 1` otherwise.
pub fn lp_norm<C: Coeff>(f: &AlgebraElement<C>, p: f64, grid: QuadratureGrid, point: &QPoint) -> Result<f64> {
    if p == 2.0 {
        return Ok(l2_inner(f, f).value_at(point)?.max(0.0).sqrt());
    }
    if !point.is_classical() {
        return Err(Error::Unsupported(format!("L^{p} norm at q = {} (only p = 2 away from q = 1)", point.q())));
    }
    lp_norm_classical(f, p, grid, point)
}

fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else {
        p / (p - 1.0)
    }
}

fn require_dirac(params: &InequalityParams) -> Result<(&DiracSpec, f64)> {
    let d = params.dirac.as_ref().ok_or_else(|| Error::Range("eigenvalue family required".into()))?;
    let beta = params.beta.ok_or_else(|| Error::Range("β required".into()))?;
    Ok((d, beta))
}

/// Both sides of the chosen inequality for `f`.
pub fn inequality_ratio<C: Coeff>(f: &AlgebraElement<C>, params: &InequalityParams, point: &QPoint) -> Result<InequalitySides> {
    let p = params.p;
    if !(p > 1.0 && p <= 2.0) {
        return Err(Error::Range(format!("p must lie in (1, 2], got {p}")));
    }
    let pp = conjugate(p);
    let fh = fourier_transform(f);
    let parts = per_spin_hs(&fh, point)?;
    let top = params.l_max.or(fh.max_spin()).unwrap_or(Spin::ZERO);
    let phi = || params.phi.clone().unwrap_or_else(|| inverse_dimension_weight(top));
    let phi_at = |phi: &BTreeMap<Spin, f64>, l: Spin| phi.get(&l).copied().unwrap_or(0.0);

    let (lhs, factor) = match params.kind {
        InequalityKind::HausdorffYoung => (dual_lp_from_parts(&parts, pp, point, |_| 1.0)?, 1.0),
        InequalityKind::Paley => {
            let phi = phi();
            let lhs = dual_lp_from_parts(&parts, p, point, |l| phi_at(&phi, l).powf((2.0 - p) / p))?;
            let m = paley_constant(&phi, top, point)?;
            (lhs, m.powf((2.0 - p) / p))
        }
        InequalityKind::HyPaley => {
            let b = params.b.ok_or_else(|| Error::Range("b required".into()))?;
            if !(b >= p && b <= pp) {
                return Err(Error::Range(format!("b must lie in [p, p'], got {b}")));
            }
            let phi = phi();
            let e = 1.0 / b - 1.0 / pp;
            let lhs = dual_lp_from_parts(&parts, b, point, |l| phi_at(&phi, l).powf(e))?;
            (lhs, paley_constant(&phi, top, point)?.powf(e))
        }
        InequalityKind::HardyLittlewood => {
            let (d, beta) = require_dirac(params)?;
            let lam: BTreeMap<Spin, f64> =
                parts.iter().map(|(l, _)| Ok((*l, d.abs_eigenvalue(*l, point)?))).collect::<Result<_>>()?;
            let lhs = dual_lp_from_parts(&parts, p, point, |l| lam[&l].powf(beta * (p - 2.0) / p))?;
            (lhs, 1.0)
        }
        InequalityKind::DiracWeighted => {
            let (d, beta) = require_dirac(params)?;
            let lam: BTreeMap<Spin, f64> =
                parts.iter().map(|(l, _)| Ok((*l, d.abs_eigenvalue(*l, point)?))).collect::<Result<_>>()?;
            let e = beta * (0.5 - 1.0 / p);
            (dual_lp_from_parts(&parts, p, point, |l| lam[&l].powf(e))?, 1.0)
        }
    };
    let rhs = factor * lp_norm(f, p, params.grid, point)?;
    Ok(InequalitySides { lhs, rhs, ratio: lhs / rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cqalg::generators;
    use crate::qarith::QFrac;

    #[test]
    fn plancherel_case_is_equality() {
        let [a, b, c, _] = generators();
        let f = &(&a * &b) + &c.scale(&QFrac::from_int(2));
        for q in ["1", "1/2"] {
            let pt = QPoint::parse(q).unwrap();
            let r = inequality_ratio(&f, &InequalityParams::new(InequalityKind::HausdorffYoung, 2.0), &pt).unwrap();
            assert!((r.ratio - 1.0).abs() < 1e-12, "q = {q}");
        }
    }

    #[test]
    fn ranges_are_checked() {
        let f = AlgebraElement::<QFrac>::one();
        let pt = QPoint::parse("1/2").unwrap();
        let bad = InequalityParams::new(InequalityKind::HausdorffYoung, 3.0);
        assert!(inequality_ratio(&f, &bad, &pt).is_err());
        let unsupported = InequalityParams::new(InequalityKind::HausdorffYoung, 1.5);
        assert!(matches!(inequality_ratio(&f, &unsupported, &pt), Err(Error::Unsupported(_))));
        assert_eq!("hy-paley".parse::<InequalityKind>().unwrap(), InequalityKind::HyPaley);
    }
}
