//! Left-covariant first-order differential calculi on `ℂ_q[SU_2]` through
//! their partial-derivative and commutation symbols.
//!
//! A one-form is written `ω = Σ_i f_i e_i` with left coefficients. The
//! partial derivatives act as `∂^i t^l_{mj} = Σ_s t^l_{ms} σ^i_{sj}` and the
//! bimodule structure as `e_i t^l_{mj} = Σ_{s,p} t^l_{ms} (σ_i^p)_{sj} e_p`.

mod geometric;
mod growth;
mod symbols;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cqalg::{AlgebraElement, Gen, Spin};
use crate::error::{Error, Result};
use crate::fourier::FourierArray;
use crate::multiplier::{apply_symbol, MultiplierSymbol};
use crate::qarith::{Coeff, QFrac, QRadical};

pub use geometric::{
    dirac_block, dirac_block_check, dirac_eigenvalues, geometric_dirac, geometric_partials, laplacian_metric_symbol,
    laplacian_symbol, q_laplacian, DiracBlockCheck, Metric, Spinor, GEOMETRIC_LABELS,
};
pub use growth::{
    admissibility_exponent, classical_limit_error, fit_growth, growth_targets, write_growth_csv, GrowthFit, GrowthRow,
    GrowthTarget, LimitSymbols,
};
pub use symbols::{comm4_all, comm4_nonzero, comm4_vanishes, lambda, symbol, x_minus, x_plus, Family, Frame};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CalculusKind {
    /// Basis `e_0, e_+, e_-`.
    ThreeD,
    /// Basis `e_a, e_b, e_c, e_d`.
    FourD,
}

impl fmt::Display for CalculusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ThreeD => "3d",
            Self::FourD => "4d",
        })
    }
}

impl FromStr for CalculusKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "3d" | "3D" => Ok(Self::ThreeD),
            "4d" | "4D" => Ok(Self::FourD),
            _ => Err(Error::Parse(format!("unknown calculus `{s}`"))),
        }
    }
}

impl CalculusKind {
    pub fn labels(self) -> &'static [&'static str] {
        match self {
            Self::ThreeD => &["e0", "e+", "e-"],
            Self::FourD => &["ea", "eb", "ec", "ed"],
        }
    }

    pub fn dim(self) -> usize {
        self.labels().len()
    }

    /// Family of `∂^i`, in label order.
    pub fn partial_family(self, i: usize) -> Family {
        match self {
            Self::ThreeD => [Family::ThreeZero, Family::ThreePlus, Family::ThreeMinus][i],
            Self::FourD => [Family::FourA, Family::FourB, Family::FourC, Family::FourD][i],
        }
    }

    /// Family of `σ_i^p`, or `None` where it vanishes identically.
    pub fn commutation_family(self, i: usize, p: usize) -> Option<Family> {
        match self {
            Self::ThreeD => (i == p).then(|| if i == 0 { Family::YZero } else { Family::YPm }),
            Self::FourD => {
                let f = Family::Comm4 {
                    alpha: (i / 2 + 1) as u8,
                    beta: (i % 2 + 1) as u8,
                    gamma: (p / 2 + 1) as u8,
                    delta: (p % 2 + 1) as u8,
                };
                (!comm4_vanishes(f)).then_some(f)
            }
        }
    }
}

/// Symbol array of a family on the spins `0, ..., l_max`, algebra frame.
pub fn family_symbol(family: Family, l_max: Spin) -> MultiplierSymbol {
    let mut out = FourierArray::new();
    for l in l_max.up_to() {
        out.insert(l, symbol(family, l, Frame::Algebra)).expect("square symbol");
    }
    out
}

/// Spins that can occur in the Peter-Weyl expansion of `f`.
fn spin_cap<C: Coeff>(f: &AlgebraElement<C>) -> Spin {
    Spin::from_twice(f.degree())
}

/// The operator with symbol `family`, applied to `f`.
pub fn apply_family<C: Coeff>(family: Family, f: &AlgebraElement<C>) -> Result<AlgebraElement<QRadical>> {
    apply_symbol(&family_symbol(family, spin_cap(f)), f)
}

/// `∂^i f`.
pub fn partial<C: Coeff>(kind: CalculusKind, i: usize, f: &AlgebraElement<C>) -> Result<AlgebraElement<QRadical>> {
    apply_family(kind.partial_family(i), f)
}

#[derive(Clone, PartialEq)]
pub struct OneForm {
    pub kind: CalculusKind,
    /// Left coefficients, one per basis form.
    pub coeffs: Vec<AlgebraElement<QRadical>>,
}

impl OneForm {
    pub fn zero(kind: CalculusKind) -> Self {
        Self { kind, coeffs: vec![AlgebraElement::zero(); kind.dim()] }
    }

    /// `f e_i`.
    pub fn basis(kind: CalculusKind, i: usize, f: AlgebraElement<QRadical>) -> Self {
        let mut w = Self::zero(kind);
        w.coeffs[i] = f;
        w
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.kind, o.kind, "one-forms of different calculi");
        Self { kind: self.kind, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    /// `f ω`.
    pub fn left_multiply(&self, f: &AlgebraElement<QRadical>) -> Self {
        Self { kind: self.kind, coeffs: self.coeffs.iter().map(|c| f.multiply(c)).collect() }
    }

    /// Coefficients in the frame `e_z = q^{-2}e_a - e_d, e_b, e_c, θ = e_a + e_d`.
    pub fn to_geometric(&self) -> Result<[AlgebraElement<QRadical>; 4]> {
        if self.kind != CalculusKind::FourD {
            return Err(Error::Unsupported("geometric frame of the 3D calculus".into()));
        }
        let k = QRadical::from_frac((&QFrac::one() + &QFrac::q_pow(-2)).recip()?);
        let (fa, fd) = (&self.coeffs[0], &self.coeffs[3]);
        let gz = (fa - fd).scale(&k);
        let gt = (fa + &fd.scale(&QRadical::from_frac(QFrac::q_pow(-2)))).scale(&k);
        Ok([gz, self.coeffs[1].clone(), self.coeffs[2].clone(), gt])
    }

    pub fn from_geometric(g: &[AlgebraElement<QRadical>; 4]) -> Self {
        let qi2 = QRadical::from_frac(QFrac::q_pow(-2));
        let fa = &g[0].scale(&qi2) + &g[3];
        let fd = &g[3] - &g[0];
        Self { kind: CalculusKind::FourD, coeffs: vec![fa, g[1].clone(), g[2].clone(), fd] }
    }

    /// `ω g`, through the commutation symbols.
    pub fn right_multiply<C: Coeff>(&self, g: &AlgebraElement<C>) -> Result<Self> {
        let n = self.kind.dim();
        let mut out = Self::zero(self.kind);
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for p in 0..n {
                if let Some(fam) = self.kind.commutation_family(i, p) {
                    let moved = apply_family(fam, g)?;
                    out.coeffs[p] = &out.coeffs[p] + &self.coeffs[i].multiply(&moved);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, l) in self.coeffs.iter().zip(self.kind.labels()) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {l}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `df = Σ_i ∂^i(f) e_i` through the partial-derivative symbols.
pub fn exterior_d<C: Coeff>(kind: CalculusKind, f: &AlgebraElement<C>) -> Result<OneForm> {
    let coeffs = (0..kind.dim()).map(|i| partial(kind, i, f)).collect::<Result<_>>()?;
    Ok(OneForm { kind, coeffs })
}

fn g(x: Gen) -> AlgebraElement<QRadical> {
    AlgebraElement::gen(x)
}

/// Differentials of the generators as listed for each calculus.
pub fn generator_differential(kind: CalculusKind, x: Gen) -> OneForm {
    let q = QFrac::q();
    let qi = QFrac::q_pow(-1);
    let lam = lambda();
    let (row, col) = x.position();
    let partner = Gen::at(row, 1 - col);
    let mut w = OneForm::zero(kind);
    match kind {
        CalculusKind::ThreeD => {
            if col == 0 {
                // da = a e0 + q b e+, dc = c e0 + q d e+
                w.coeffs[0] = g(x);
                w.coeffs[1] = g(partner).scale(&QRadical::from_frac(q));
            } else {
                // db = a e- - q^{-2} b e0, dd = c e- - q^{-2} d e0
                w.coeffs[2] = g(partner);
                w.coeffs[0] = g(x).scale(&QRadical::from_frac(-QFrac::q_pow(-2)));
            }
        }
        CalculusKind::FourD => {
            let one = QFrac::one();
            if col == 0 {
                w.coeffs[0] = g(x).scale(&QRadical::from_frac(&q - &one));
                w.coeffs[3] = g(x).scale(&QRadical::from_frac(&qi - &one));
                w.coeffs[1] = g(partner).scale(&QRadical::from_frac(lam));
            } else {
                let ca = &(&(&qi - &one) + &(&q * &(&lam * &lam)));
                w.coeffs[0] = g(x).scale(&QRadical::from_frac(ca.clone()));
                w.coeffs[3] = g(x).scale(&QRadical::from_frac(&q - &one));
                w.coeffs[2] = g(partner).scale(&QRadical::from_frac(lam));
            }
        }
    }
    w
}

/// `e_i x` for a generator `x`, as listed for each calculus.
pub fn generator_commutation(kind: CalculusKind, i: usize, x: Gen) -> OneForm {
    let q = QFrac::q();
    let lam = lambda();
    let col = x.position().1;
    let row = x.position().0;
    let partner = Gen::at(row, 1 - col);
    let mut w = OneForm::zero(kind);
    match kind {
        CalculusKind::ThreeD => {
            // e0 f = q^{2|f|} f e0, e± f = q^{|f|} f e±, |a| = |c| = 1
            let grade = if col == 0 { 1 } else { -1 };
            let e = if i == 0 { 2 * grade } else { grade };
            w.coeffs[i] = g(x).scale(&QRadical::from_frac(QFrac::q_pow(e)));
        }
        CalculusKind::FourD => {
            let s = |c: QFrac| QRadical::from_frac(c);
            match (i, col) {
                (0, 0) => w.coeffs[0] = g(x).scale(&s(q)),
                (0, _) => w.coeffs[0] = g(x).scale(&s(QFrac::q_pow(-1))),
                (1, 0) => w.coeffs[1] = g(x),
                (1, _) => {
                    w.coeffs[1] = g(x);
                    w.coeffs[0] = g(partner).scale(&s(&q * &lam));
                }
                (2, 0) => {
                    w.coeffs[2] = g(x);
                    w.coeffs[0] = g(partner).scale(&s(&q * &lam));
                }
                (2, _) => w.coeffs[2] = g(x),
                (_, 0) => {
                    w.coeffs[3] = g(x).scale(&s(QFrac::q_pow(-1)));
                    w.coeffs[1] = g(partner).scale(&s(lam));
                }
                _ => {
                    w.coeffs[3] = g(x).scale(&s(q.clone()));
                    w.coeffs[2] = g(partner).scale(&s(lam.clone()));
                    w.coeffs[0] = g(x).scale(&s(&q * &(&lam * &lam)));
                }
            }
        }
    }
    w
}

/// `ω x` using only the generator relations.
fn right_multiply_gen(w: &OneForm, x: Gen) -> OneForm {
    let mut out = OneForm::zero(w.kind);
    for (i, c) in w.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out = out.add(&generator_commutation(w.kind, i, x).left_multiply(c));
    }
    out
}

/// `df` from the generator differentials, the Leibniz rule and the
/// generator commutation relations; independent of the symbols.
pub fn exterior_d_generators<C: Coeff>(kind: CalculusKind, f: &AlgebraElement<C>) -> OneForm {
    let mut out = OneForm::zero(kind);
    for (m, c) in f.terms() {
        let word = m.word();
        let coeff = c.to_radical();
        for k in 0..word.len() {
            let prefix = word[..k].iter().fold(AlgebraElement::constant(coeff.clone()), |acc, &x| acc.multiply(&g(x)));
            let mut w = generator_differential(kind, word[k]).left_multiply(&prefix);
            for &x in &word[k + 1..] {
                w = right_multiply_gen(&w, x);
            }
            out = out.add(&w);
        }
    }
    out
}

/// `d(fg) = (df) g + f dg`, both sides through the symbols.
pub fn check_leibniz<C: Coeff>(kind: CalculusKind, f: &AlgebraElement<C>, h: &AlgebraElement<C>) -> Result<bool> {
    let lhs = exterior_d(kind, &f.multiply(h))?;
    let rhs = exterior_d(kind, f)?.right_multiply(h)?.add(&exterior_d(kind, h)?.left_multiply(&f.to_radical()));
    Ok(lhs == rhs)
}

/// `(e_i f) h = e_i (f h)` for every basis form.
pub fn check_associativity<C: Coeff>(kind: CalculusKind, f: &AlgebraElement<C>, h: &AlgebraElement<C>) -> Result<bool> {
    let fh = f.multiply(h);
    for i in 0..kind.dim() {
        let e = OneForm::basis(kind, i, AlgebraElement::one());
        if e.right_multiply(f)?.right_multiply(h)? != e.right_multiply(&fh)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cqalg::{generators, matrix_coefficients};
    use crate::matrix::Matrix;
    use crate::multiplier::extract_symbol;

    #[test]
    fn generator_differentials_match_symbols() {
        for kind in [CalculusKind::ThreeD, CalculusKind::FourD] {
            for x in Gen::ALL {
                let f = AlgebraElement::<QFrac>::gen(x);
                assert_eq!(exterior_d(kind, &f).unwrap(), generator_differential(kind, x), "{kind} d{x:?}");
            }
        }
    }

    #[test]
    fn generator_commutation_matches_symbols() {
        for kind in [CalculusKind::ThreeD, CalculusKind::FourD] {
            for i in 0..kind.dim() {
                for x in Gen::ALL {
                    let e = OneForm::basis(kind, i, AlgebraElement::one());
                    let f = AlgebraElement::<QFrac>::gen(x);
                    assert_eq!(e.right_multiply(&f).unwrap(), generator_commutation(kind, i, x), "{kind} e{i} {x:?}");
                }
            }
        }
    }

    #[test]
    fn routes_agree_on_spin_one() {
        let l = Spin::from_twice(2);
        let b = matrix_coefficients(l);
        for kind in [CalculusKind::ThreeD, CalculusKind::FourD] {
            for (i, j) in [(0, 0), (1, 2), (2, 0)] {
                let t = b.unitary(i, j);
                assert_eq!(exterior_d(kind, &t).unwrap(), exterior_d_generators(kind, &t), "{kind} ({i},{j})");
            }
        }
    }

    #[test]
    fn leibniz_and_associativity_on_generators() {
        let [a, b, c, d] = generators();
        for kind in [CalculusKind::ThreeD, CalculusKind::FourD] {
            assert!(check_leibniz(kind, &a, &b).unwrap());
            assert!(check_leibniz(kind, &(&c * &d), &(&a + &b)).unwrap());
            assert!(check_associativity(kind, &b, &c).unwrap());
            assert!(exterior_d(kind, &AlgebraElement::<QFrac>::one()).unwrap().is_zero());
        }
    }

    #[test]
    fn geometric_frame_round_trip() {
        let [a, b, ..] = generators();
        let w = exterior_d(CalculusKind::FourD, &(&a * &b)).unwrap();
        let g = w.to_geometric().unwrap();
        assert_eq!(OneForm::from_geometric(&g), w);
        // dθ-component of df is ∂^θ f
        let p = geometric_partials(Spin::HALF, Frame::Algebra);
        let theta = apply_symbol(&{
            let mut s = FourierArray::new();
            s.insert(Spin::ZERO, Matrix::zeros(1, 1)).unwrap();
            s.insert(Spin::HALF, p[3].clone()).unwrap();
            s
        }, &a).unwrap();
        assert_eq!(exterior_d(CalculusKind::FourD, &a).unwrap().to_geometric().unwrap()[3], theta);
    }

    #[test]
    fn extracted_partial_is_the_family() {
        let l_max = Spin::from_twice(2);
        let s = extract_symbol(|f| partial(CalculusKind::ThreeD, 0, f), l_max).unwrap();
        for l in l_max.up_to() {
            let m = s.get(l).unwrap();
            assert!(m.is_diagonal());
            assert_eq!(m, &symbol(Family::ThreeZero, l, Frame::Algebra));
        }
    }
}
