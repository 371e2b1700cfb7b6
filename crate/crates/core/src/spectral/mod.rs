//! Dirac-type operators `𝒟 t^l_{ij} = λ_l t^l_{ij}`: summability, powers of
//! `|𝒟|`, commutators `∂(a)b = |𝒟|(ab) - a|𝒟|b` and the boundedness scan.

mod commutator;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cqalg::{quantum_dim, AlgebraElement, Spin};
use crate::error::{Error, Result};
use crate::fourier::{dual_l2_norm_sq, fourier_transform, inverse_fourier, FourierArray};
use crate::matrix::Matrix;
use crate::qarith::{Coeff, QFrac, QPoint, QRadical, Rat};

pub use commutator::{
    commutator_apply, commutator_norm_sq_direct, commutator_norm_sq_expansion, commutator_norm_sq_literal,
    condition_512_ratio, condition_512_scan, write_condition_512_csv, Condition512Row,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LambdaFamily {
    /// `|λ_l| = 2l+1`.
    Classical,
    /// `|λ_l| = [2l+1]_q`.
    QDeformed,
    /// Explicit `|λ_l|`, float only.
    Table(#[serde(with = "crate::serde_pairs")] BTreeMap<Spin, f64>),
}

impl fmt::Display for LambdaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Classical => "classical",
            Self::QDeformed => "q",
            Self::Table(_) => "table",
        })
    }
}

impl FromStr for LambdaFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(Self::Classical),
            "q" | "q-deformed" | "qdeformed" => Ok(Self::QDeformed),
            _ => Err(Error::Parse(format!("unknown eigenvalue family `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiracSpec {
    pub family: LambdaFamily,
    /// Spins carrying the eigenvalue `-|λ_l|`; no operation depends on it.
    #[serde(default)]
    pub negative: BTreeSet<Spin>,
    #[serde(default)]
    pub beta: Option<f64>,
}

impl DiracSpec {
    pub fn new(family: LambdaFamily) -> Self {
        Self { family, negative: BTreeSet::new(), beta: None }
    }

    pub fn classical() -> Self {
        Self::new(LambdaFamily::Classical)
    }

    pub fn q_deformed() -> Self {
        Self::new(LambdaFamily::QDeformed)
    }

    /// `|λ_l|` as an exact scalar.
    pub fn abs_eigenvalue_exact(&self, l: Spin) -> Result<QFrac> {
        match &self.family {
            LambdaFamily::Classical => Ok(QFrac::from_int(l.dim() as i64)),
            LambdaFamily::QDeformed => Ok(quantum_dim(l)),
            LambdaFamily::Table(_) => Err(Error::Unsupported("exact eigenvalues of a float table".into())),
        }
    }

    pub fn abs_eigenvalue(&self, l: Spin, point: &QPoint) -> Result<f64> {
        let v = match &self.family {
            LambdaFamily::Table(t) => t.get(&l).copied().ok_or_else(|| Error::MissingSpin(l.to_string()))?.abs(),
            _ => point.eval(&self.abs_eigenvalue_exact(l)?),
        };
        if v == 0.0 {
            return Err(Error::Domain(format!("λ vanishes at spin {l}")));
        }
        Ok(v)
    }

    pub fn eigenvalue(&self, l: Spin, point: &QPoint) -> Result<f64> {
        let v = self.abs_eigenvalue(l, point)?;
        Ok(if self.negative.contains(&l) { -v } else { v })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SummabilityReport {
    /// Infimum of convergent β with `d_l n_l` weights.
    pub dimension: Option<f64>,
    /// The same with `n_l²` weights.
    pub dimension_plain: Option<f64>,
    /// β used for the partial-sum table.
    pub evidence_beta: f64,
    /// `(l, partial sum with d n, partial sum with n²)`.
    pub evidence: Vec<(Spin, f64, f64)>,
}

/// Analytic classification of `Σ w_l / |λ_l|^β`.
///
/// For `q ≠ 1`, `[2l+1]_q` grows like `|q|^{-2l}` up to the symmetric
/// choice of `q ↔ 1/q`, so the series are compared by their exponential
/// and polynomial growth rates.
pub fn summability_classify(spec: &DiracSpec, point: &QPoint, l_cap: Spin) -> Result<SummabilityReport> {
    let classical_q = point.is_classical();
    let (dimension, dimension_plain) = match (&spec.family, classical_q) {
        (LambdaFamily::Table(_), _) => {
            return Err(Error::Unsupported("summability of a table family needs decay metadata".into()))
        }
        // both weights are n², λ ~ n: p-series threshold
        (_, true) => (Some(3.0), Some(3.0)),
        // d n grows exponentially, λ only linearly
        (LambdaFamily::Classical, false) => (None, Some(3.0)),
        // d n / [n]^β = n [n]^{1-β}: ratio test
        (LambdaFamily::QDeformed, false) => (Some(1.0), Some(0.0)),
    };
    let evidence_beta = spec.beta.unwrap_or_else(|| dimension.or(dimension_plain).unwrap_or(3.0) + 1.0);
    let mut evidence = Vec::new();
    let (mut s1, mut s2) = (0.0, 0.0);
    for l in l_cap.up_to() {
        let lam = spec.abs_eigenvalue(l, point)?.powf(evidence_beta);
        let n = l.dim() as f64;
        s1 += point.eval(&quantum_dim(l)) * n / lam;
        s2 += n * n / lam;
        evidence.push((l, s1, s2));
    }
    Ok(SummabilityReport { dimension, dimension_plain, evidence_beta, evidence })
}

/// `|λ_l|^α` exactly, for `α` an integer or half-integer.
pub fn abs_power_exact(spec: &DiracSpec, l: Spin, alpha: &Rat) -> Result<QRadical> {
    let lam = spec.abs_eigenvalue_exact(l)?;
    let den = alpha.denom().to_string();
    let num: i64 =
        alpha.numer().to_string().parse().map_err(|_| Error::Range(format!("exponent {alpha} too large")))?;
    match den.as_str() {
        "1" => Ok(QRadical::from_frac(lam.pow(num)?)),
        "2" => QRadical::sqrt(&lam.pow(num)?),
        _ => Err(Error::Unsupported(format!("exact |𝒟|^α needs α ∈ ½ℤ, got {alpha}"))),
    }
}

/// `|𝒟|^α F`, exact; `α = 0` returns `F`.
pub fn abs_dirac_power<C: Coeff>(f: &FourierArray<C>, alpha: &Rat, spec: &DiracSpec) -> Result<FourierArray<QRadical>> {
    f.map_blocks(|l, m| {
        let s = abs_power_exact(spec, l, alpha)?;
        Ok(m.map(|x| x.to_radical().times(&s)))
    })
}

/// Per-spin factors `|λ_l|^α` at a numeric point.
pub fn abs_power_factors<C: Coeff>(f: &FourierArray<C>, alpha: f64, spec: &DiracSpec, point: &QPoint) -> Result<BTreeMap<Spin, f64>> {
    f.spins().map(|l| Ok((l, spec.abs_eigenvalue(l, point)?.powf(alpha)))).collect()
}

/// `|𝒟|^α x` for an algebra element.
pub fn abs_dirac_apply<C: Coeff>(x: &AlgebraElement<C>, alpha: &Rat, spec: &DiracSpec) -> Result<AlgebraElement<QRadical>> {
    Ok(inverse_fourier(&abs_dirac_power(&fourier_transform(x), alpha, spec)?))
}

/// `‖φ‖²_α = ‖|𝒟|^α φ‖²_{L²}`, exact.
pub fn smooth_seminorm_sq<C: Coeff>(phi: &AlgebraElement<C>, alpha: &Rat, spec: &DiracSpec) -> Result<QRadical> {
    dual_l2_norm_sq(&abs_dirac_power(&fourier_transform(phi), alpha, spec)?)
}

/// Scalar family `λ_l I` as a symbol, over spins up to `l_max`.
pub fn dirac_symbol(spec: &DiracSpec, l_max: Spin) -> Result<FourierArray<QFrac>> {
    let mut f = FourierArray::new();
    for l in l_max.up_to() {
        let mut v = spec.abs_eigenvalue_exact(l)?;
        if spec.negative.contains(&l) {
            v = -v;
        }
        f.insert(l, Matrix::identity(l.dim()).scale(&v))?;
    }
    Ok(f)
}
