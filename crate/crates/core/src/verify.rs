//! Exact verification suites: Peter-Weyl orthogonality, Hopf axioms with
//! rewriting confluence, Fourier round trip and Plancherel.

use serde::Serialize;

use crate::cqalg::{
    coproduct, coproduct_left, coproduct_right, haar, matrix_coefficients, product, quantum_dim, rewrite_word,
    AlgebraElement, Monomial, RewriteStrategy, Spin,
};
use crate::fourier::{dual_l2_norm_sq, fourier_transform, inverse_fourier};
use crate::qarith::{Coeff, QFrac, QPoint, QRadical};
use crate::sampling;

/// Outcome of one suite.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self { name: name.into(), ..Self::default() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Both values agree exactly at a rational point, when they are rational in `q` there.
fn agree_at(x: &QRadical, y: &QRadical, point: &QPoint) -> bool {
    match (x.to_frac(), y.to_frac()) {
        (Ok(a), Ok(b)) => match (point.eval_exact(&a), point.eval_exact(&b)) {
            (Some(u), Some(v)) => u == v,
            _ => (point.eval(&a) - point.eval(&b)).abs() <= 1e-12 * (1.0 + point.eval(&b).abs()),
        },
        _ => false,
    }
}

/// `h(t_{ij}^* t'_{kl}) = δ δ_{ik} δ_{jl} / (d Q_k)` and
/// `h(t_{kl} t'^*_{ij}) = δ δ_{ik} δ_{jl} Q_j / d` for all spins up to `l_max`,
/// as exact normal forms and by exact evaluation at `point`.
pub fn orthogonality_suite(l_max: Spin, point: &QPoint) -> SuiteReport {
    let mut rep = SuiteReport::new("orthogonality");
    let spins: Vec<Spin> = l_max.up_to().collect();
    for &l in &spins {
        let bl = matrix_coefficients(l);
        let d = quantum_dim(l);
        for &lp in &spins {
            let bp = matrix_coefficients(lp);
            for i in 0..l.dim() {
                for j in 0..l.dim() {
                    let tij = bl.unitary(i, j);
                    let tij_star = tij.star();
                    for k in 0..lp.dim() {
                        for m in 0..lp.dim() {
                            let tkm = bp.unitary(k, m);
                            let same = l == lp && i == k && j == m;
                            let e1 = if same { QRadical::from_frac(&QFrac::one() / &(&d * &bl.q_weight(k))) } else { QRadical::zero() };
                            let e2 = if same { QRadical::from_frac(&bl.q_weight(j) / &d) } else { QRadical::zero() };
                            let v1 = haar(&tij_star.multiply(&tkm));
                            let v2 = haar(&tkm.multiply(&tij_star));
                            rep.check(v1 == e1 && agree_at(&v1, &e1, point), || {
                                format!("h(t^{l}_{i}{j}* t^{lp}_{k}{m}) = {v1}, expected {e1}")
                            });
                            rep.check(v2 == e2 && agree_at(&v2, &e2, point), || {
                                format!("h(t^{lp}_{k}{m} t^{l}_{i}{j}*) = {v2}, expected {e2}")
                            });
                        }
                    }
                }
            }
        }
    }
    rep
}

fn monomial_counit(m: Monomial) -> QFrac {
    AlgebraElement::<QFrac>::monomial(m, QFrac::one()).counit()
}

fn monomial_antipode(m: Monomial) -> AlgebraElement<QFrac> {
    AlgebraElement::<QFrac>::monomial(m, QFrac::one()).antipode()
}

/// Hopf axioms on one element.
fn hopf_single(x: &AlgebraElement<QFrac>, rep: &mut SuiteReport) {
    let dx = coproduct(x);
    rep.check(coproduct_left(&dx) == coproduct_right(&dx), || format!("coassociativity fails on {x}"));
    rep.check(dx.contract_left(monomial_counit) == *x, || format!("(ε⊗id)Δ ≠ id on {x}"));
    rep.check(dx.contract_right(monomial_counit) == *x, || format!("(id⊗ε)Δ ≠ id on {x}"));
    let unit = AlgebraElement::constant(x.counit());
    let left = dx.map_factors(monomial_antipode, |m| AlgebraElement::monomial(m, QFrac::one())).multiply_out();
    let right = dx.map_factors(|m| AlgebraElement::monomial(m, QFrac::one()), monomial_antipode).multiply_out();
    rep.check(left == unit, || format!("m(S⊗id)Δ ≠ ε on {x}"));
    rep.check(right == unit, || format!("m(id⊗S)Δ ≠ ε on {x}"));
    rep.check(x.star().star() == *x, || format!("** ≠ id on {x}"));
    // S(S(x)^*)^* = x
    rep.check(x.antipode().star().antipode().star() == *x, || format!("S ∘ * ∘ S ∘ * ≠ id on {x}"));
}

/// Hopf axioms, multiplicativity and confluence of the rewriting system on
/// `trials` random triples of degree at most `max_degree`.
pub fn hopf_suite(trials: usize, max_degree: u32, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("hopf");
    let mut rng = sampling::rng(seed);
    for _ in 0..trials {
        let x = sampling::element(&mut rng, max_degree, 2);
        let y = sampling::element(&mut rng, max_degree, 2);
        let z = sampling::monomial_element(&mut rng, max_degree);
        hopf_single(&x, &mut rep);
        let xy = x.multiply(&y);
        rep.check(xy.multiply(&z) == x.multiply(&y.multiply(&z)), || format!("associativity fails on ({x}, {y}, {z})"));
        rep.check(coproduct(&xy) == coproduct(&x).multiply(&coproduct(&y)), || format!("Δ not multiplicative on ({x}, {y})"));
        rep.check(xy.counit() == x.counit().times(&y.counit()), || format!("ε not multiplicative on ({x}, {y})"));
        rep.check(xy.antipode() == y.antipode().multiply(&x.antipode()), || format!("S not anti-multiplicative on ({x}, {y})"));
        rep.check(xy.star() == y.star().multiply(&x.star()), || format!("* not anti-multiplicative on ({x}, {y})"));
        // confluence: both rewriting orders and the memoised product agree
        let w = sampling::word(&mut rng, 2 * max_degree as usize);
        let left = rewrite_word(&w, RewriteStrategy::Leftmost);
        let right = rewrite_word(&w, RewriteStrategy::Rightmost);
        let mut prod = AlgebraElement::<QFrac>::one();
        for g in &w {
            prod = prod.multiply(&AlgebraElement::gen(*g));
        }
        let as_elem =
            AlgebraElement::from_terms(left.iter().map(|(m, c)| (*m, QFrac::from_scalar(c.clone()))));
        rep.check(left == right && as_elem == prod, || format!("rewriting not confluent on {w:?}"));
    }
    // products of basis monomials are memoised; spot-check against rewriting
    let m = sampling::monomial(&mut rng, max_degree);
    let n = sampling::monomial(&mut rng, max_degree);
    let mut w = m.word();
    w.extend(n.word());
    let direct: AlgebraElement<QFrac> =
        AlgebraElement::from_terms(product(m, n).iter().map(|(k, c)| (*k, QFrac::from_scalar(c.clone()))));
    let rewritten = AlgebraElement::from_terms(
        rewrite_word(&w, RewriteStrategy::Leftmost).into_iter().map(|(k, c)| (k, QFrac::from_scalar(c))),
    );
    rep.check(direct == rewritten, || format!("memoised product {m}·{n} disagrees with rewriting"));
    rep
}

/// Inverse transform of the transform and `‖f‖² = Σ d ‖f̂‖²_{HS}` on random
/// polynomials.
pub fn fourier_suite(trials: usize, max_degree: u32, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("fourier");
    let mut rng = sampling::rng(seed);
    for _ in 0..trials {
        let f = sampling::element(&mut rng, max_degree, 3);
        let fh = fourier_transform(&f);
        rep.check(inverse_fourier(&fh) == f.to_radical(), || format!("round trip fails on {f}"));
        let lhs = haar(&f.multiply(&f.star())).to_radical();
        let rhs = dual_l2_norm_sq(&fh);
        rep.check(rhs.as_ref() == Ok(&lhs), || format!("Plancherel fails on {f}: {lhs} vs {rhs:?}"));
    }
    rep
}
