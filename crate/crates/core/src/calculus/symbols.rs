//! Symbol matrices of `U_q(su_2)` elements in the spin-`l` representation.
//!
//! Everything is assembled from three building blocks, indexed by weights
//! `m, n = -l, ..., l` (the [`Frame::Weight`] frame):
//! `σ_{X_+}(m,n) = √([l-n][l+n+1]) δ_{m,n+1}`,
//! `σ_{X_-}(m,n) = √([l+n][l-n+1]) δ_{m,n-1}`,
//! `σ_{q^{H/2}}(m,n) = q^n δ_{mn}`,
//! and products of elements become products of matrices.
//! Acting on the matrix coefficients of [`crate::cqalg`] the weights are
//! reversed ([`Frame::Algebra`]).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use crate::cqalg::Spin;
use crate::matrix::Matrix;
use crate::qarith::{QFrac, QRadical};

/// Index convention for symbol matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Frame {
    /// Rows and columns labelled by the weights `-l, ..., l` of the `U_q(su_2)` module.
    Weight,
    /// Rows and columns labelled as the matrix coefficients `t^l_{ij}`; `σ_A(i,j) = σ_W(-i,-j)`.
    Algebra,
}

fn r(x: QFrac) -> QRadical {
    QRadical::from_frac(x)
}

/// `λ = 1 - q^{-2}`.
pub fn lambda() -> QFrac {
    &QFrac::one() - &QFrac::q_pow(-2)
}

/// `q - q^{-1}`.
pub fn q_minus_inv() -> QFrac {
    &QFrac::q() - &QFrac::q_pow(-1)
}

pub fn x_plus(l: Spin) -> Matrix<QRadical> {
    (*weight_symbol(Family::XPlus, l)).clone()
}

fn build_x_plus(l: Spin) -> Matrix<QRadical> {
    let tl = l.twice_i64();
    let n = l.dim();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n.saturating_sub(1) {
        let tn = l.weight(j);
        let v = QRadical::sqrt_q_int_product(&[tl - tn, tl + tn + 2]).expect("nonnegative q-integers");
        m.set(j + 1, j, v);
    }
    m
}

pub fn x_minus(l: Spin) -> Matrix<QRadical> {
    (*weight_symbol(Family::XMinus, l)).clone()
}

fn build_x_minus(l: Spin) -> Matrix<QRadical> {
    let tl = l.twice_i64();
    let n = l.dim();
    let mut m = Matrix::zeros(n, n);
    for j in 1..n {
        let tn = l.weight(j);
        let v = QRadical::sqrt_q_int_product(&[tl + tn, tl - tn + 2]).expect("nonnegative q-integers");
        m.set(j - 1, j, v);
    }
    m
}

/// `q^{kH/2}`, i.e. `diag(q^{kn})`.
pub fn q_h(l: Spin, k: i64) -> Matrix<QRadical> {
    Matrix::diagonal(l.weights().map(|tn| r(QFrac::t_pow(k * tn))).collect())
}

fn scaled(m: Matrix<QRadical>, c: QFrac) -> Matrix<QRadical> {
    m.scale(&r(c))
}

fn prod(ms: &[Matrix<QRadical>]) -> Matrix<QRadical> {
    let mut it = ms.iter();
    let first = it.next().expect("non-empty product").clone();
    it.fold(first, |acc, m| acc.mul(m).expect("square matrices of equal size"))
}

fn sum(a: &Matrix<QRadical>, b: &Matrix<QRadical>) -> Matrix<QRadical> {
    a.add(b).expect("equal sizes")
}

fn minus_identity(a: &Matrix<QRadical>) -> Matrix<QRadical> {
    a.sub(&Matrix::identity(a.rows())).expect("square")
}

/// Named symbol families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    XPlus,
    XMinus,
    QHalfH,
    /// `x^+ = q^{1/2} X_- q^{H/2}`.
    ThreePlus,
    /// `x^- = q^{1/2} X_+ q^{H/2}`.
    ThreeMinus,
    /// `x^0 = (q^{2H} - 1)/(q^2 - 1)`.
    ThreeZero,
    /// `y^± = q^H`.
    YPm,
    /// `y^0 = q^{2H}`.
    YZero,
    /// `q^H + qλ²X_-X_+ - 1`.
    FourA,
    /// `q^{1/2} λ X_- q^{-H/2}`.
    FourB,
    /// `q^{1/2} λ q^{-H/2} X_+`.
    FourC,
    /// `q^{-H} - 1`.
    FourD,
    /// `σ_{αβ}^{γδ} = (S l^{-γ}_α) l^{+β}_δ`, indices from 1.
    Comm4 { alpha: u8, beta: u8, gamma: u8, delta: u8 },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::XPlus => write!(f, "X+"),
            Self::XMinus => write!(f, "X-"),
            Self::QHalfH => write!(f, "q^(H/2)"),
            Self::ThreePlus => write!(f, "x+"),
            Self::ThreeMinus => write!(f, "x-"),
            Self::ThreeZero => write!(f, "x0"),
            Self::YPm => write!(f, "y+-"),
            Self::YZero => write!(f, "y0"),
            Self::FourA => write!(f, "sigma_a"),
            Self::FourB => write!(f, "sigma_b"),
            Self::FourC => write!(f, "sigma_c"),
            Self::FourD => write!(f, "sigma_d"),
            Self::Comm4 { alpha, beta, gamma, delta } => write!(f, "sigma_{alpha}{beta}^{gamma}{delta}"),
        }
    }
}

/// `S l^-` as a 2×2 array of `(coefficient, factors)`; `None` is zero.
fn s_l_minus(l: Spin, row: u8, col: u8) -> Option<Matrix<QRadical>> {
    // l^- = [[q^{-H/2}, q^{1/2}(q^{-1}-q) X_-], [0, q^{H/2}]], S q^{kH/2} = q^{-kH/2}, S X_- = -q^{-1} X_-
    match (row, col) {
        (1, 1) => Some(q_h(l, 1)),
        (1, 2) => Some(scaled(x_minus(l), &QFrac::t_pow(-1) * &q_minus_inv())),
        (2, 1) => None,
        (2, 2) => Some(q_h(l, -1)),
        _ => unreachable!("indices are 1 or 2"),
    }
}

fn l_plus(l: Spin, row: u8, col: u8) -> Option<Matrix<QRadical>> {
    // l^+ = [[q^{H/2}, 0], [q^{-1/2}(q - q^{-1}) X_+, q^{-H/2}]]
    match (row, col) {
        (1, 1) => Some(q_h(l, 1)),
        (1, 2) => None,
        (2, 1) => Some(scaled(x_plus(l), &QFrac::t_pow(-1) * &q_minus_inv())),
        (2, 2) => Some(q_h(l, -1)),
        _ => unreachable!("indices are 1 or 2"),
    }
}

fn build(family: Family, l: Spin) -> Matrix<QRadical> {
    let n = l.dim();
    let lam = lambda();
    match family {
        Family::XPlus => build_x_plus(l),
        Family::XMinus => build_x_minus(l),
        Family::QHalfH => q_h(l, 1),
        Family::ThreePlus => scaled(prod(&[x_minus(l), q_h(l, 1)]), QFrac::t_pow(1)),
        Family::ThreeMinus => scaled(prod(&[x_plus(l), q_h(l, 1)]), QFrac::t_pow(1)),
        Family::ThreeZero => {
            let den = (&QFrac::q_pow(2) - &QFrac::one()).recip().expect("q² ≠ 1 as a function");
            scaled(minus_identity(&q_h(l, 4)), den)
        }
        Family::YPm => q_h(l, 2),
        Family::YZero => q_h(l, 4),
        Family::FourA => {
            let xx = scaled(prod(&[x_minus(l), x_plus(l)]), &QFrac::q() * &(&lam * &lam));
            minus_identity(&sum(&q_h(l, 2), &xx))
        }
        Family::FourB => scaled(prod(&[x_minus(l), q_h(l, -1)]), &QFrac::t_pow(1) * &lam),
        Family::FourC => scaled(prod(&[q_h(l, -1), x_plus(l)]), &QFrac::t_pow(1) * &lam),
        Family::FourD => minus_identity(&q_h(l, -2)),
        Family::Comm4 { alpha, beta, gamma, delta } => match (s_l_minus(l, gamma, alpha), l_plus(l, beta, delta)) {
            (Some(x), Some(y)) => prod(&[x, y]),
            _ => Matrix::zeros(n, n),
        },
    }
}

type Cache = RwLock<HashMap<(Family, Spin), Arc<Matrix<QRadical>>>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Symbol of a family at spin `l` in the weight frame.
fn weight_symbol(family: Family, l: Spin) -> Arc<Matrix<QRadical>> {
    if let Some(m) = cache().read().unwrap().get(&(family, l)) {
        return m.clone();
    }
    let m = Arc::new(build(family, l));
    cache().write().unwrap().entry((family, l)).or_insert(m).clone()
}

/// Symbol of a family at spin `l` in the requested frame.
pub fn symbol(family: Family, l: Spin, frame: Frame) -> Matrix<QRadical> {
    let m = weight_symbol(family, l);
    match frame {
        Frame::Weight => (*m).clone(),
        Frame::Algebra => m.reflect(),
    }
}

/// The nine nonzero commutation families of the four-dimensional calculus.
pub fn comm4_nonzero() -> Vec<Family> {
    comm4_all().into_iter().filter(|f| !comm4_vanishes(*f)).collect()
}

pub fn comm4_all() -> Vec<Family> {
    let mut v = Vec::new();
    for alpha in 1..=2 {
        for beta in 1..=2 {
            for gamma in 1..=2 {
                for delta in 1..=2 {
                    v.push(Family::Comm4 { alpha, beta, gamma, delta });
                }
            }
        }
    }
    v
}

/// `l^{+1}_2 = l^{-2}_1 = 0` forces these to vanish.
pub fn comm4_vanishes(f: Family) -> bool {
    match f {
        Family::Comm4 { alpha, beta, gamma, delta } => (gamma == 2 && alpha == 1) || (beta == 1 && delta == 2),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(m: &Matrix<QRadical>) -> Vec<QFrac> {
        (0..m.rows()).map(|i| m.get(i, i).to_frac().unwrap()).collect()
    }

    #[test]
    fn lemma_examples() {
        let one = Spin::from_twice(2);
        assert_eq!(diag(&symbol(Family::QHalfH, one, Frame::Weight)), vec![QFrac::q_pow(-1), QFrac::one(), QFrac::q()]);
        let h = Spin::HALF;
        let x0 = symbol(Family::ThreeZero, h, Frame::Weight);
        assert_eq!(diag(&x0), vec![-QFrac::q_pow(-2), QFrac::one()]);
        assert_eq!(diag(&symbol(Family::YPm, h, Frame::Algebra)), vec![QFrac::q(), QFrac::q_pow(-1)]);
        for tw in 0..5 {
            let l = Spin::from_twice(tw);
            assert_eq!(symbol(Family::Comm4 { alpha: 1, beta: 2, gamma: 1, delta: 2 }, l, Frame::Weight), Matrix::identity(l.dim()));
        }
        assert_eq!(comm4_nonzero().len(), 9);
    }

    #[test]
    fn four_d_closed_forms() {
        for tw in 0..6i64 {
            let l = Spin::from_twice(tw as u32);
            let a = symbol(Family::FourA, l, Frame::Weight);
            let d = symbol(Family::FourD, l, Frame::Weight);
            for (i, tn) in l.weights().enumerate() {
                let expect = &(&(&QFrac::q_pow(tw) + &QFrac::q_pow(-tw - 2)) - &QFrac::t_pow(-2 * tn - 4)) - &QFrac::one();
                assert_eq!(a.get(i, i).to_frac().unwrap(), expect, "l = {l}, n = {tn}/2");
                assert_eq!(d.get(i, i).to_frac().unwrap(), &QFrac::t_pow(-2 * tn) - &QFrac::one());
            }
            assert!(a.is_diagonal() && d.is_diagonal());
            // ε-normalisation: all partial symbols vanish at spin 0
            if tw == 0 {
                for f in [Family::FourA, Family::FourB, Family::FourC, Family::FourD, Family::ThreePlus, Family::ThreeMinus, Family::ThreeZero] {
                    assert!(symbol(f, l, Frame::Weight).is_zero());
                }
            }
        }
    }

    #[test]
    fn q_commutator_relation() {
        for tw in 0..5 {
            let l = Spin::from_twice(tw);
            let (xp, xm) = (x_plus(l), x_minus(l));
            let lhs = xp.mul(&xm).unwrap().sub(&xm.mul(&xp).unwrap()).unwrap();
            let rhs = q_h(l, 2).sub(&q_h(l, -2)).unwrap().scale(&r(q_minus_inv().recip().unwrap()));
            assert_eq!(lhs, rhs);
        }
    }
}
