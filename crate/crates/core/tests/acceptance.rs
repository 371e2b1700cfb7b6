//! The fourteen acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p suq2 --test acceptance -- --nocapture` to see the
//! table when everything passes.

use std::time::{Duration, Instant};

use suq2::calculus::{
    check_associativity, check_leibniz, classical_limit_error, dirac_block_check, exterior_d, fit_growth,
    generator_commutation, generator_differential, growth_targets, laplacian_metric_symbol, laplacian_symbol,
    q_laplacian, CalculusKind, Frame, LimitSymbols, Metric, OneForm,
};
use suq2::cqalg::{gns_inner, l2_inner, matrix_coefficients, AlgebraElement, Gen, Spin};
use suq2::fourier::paley::inverse_dimension_weight;
use suq2::fourier::{
    inequality_ratio, paley_constant, paley_constant_brute_force, FourierArray, InequalityKind, InequalityParams,
};
use suq2::matrix::Matrix;
use suq2::multiplier::{adjoint_symbol, adjoint_symbol_l2, apply_symbol, extract_symbol, lp_lq_bound, seminorm_bound};
use suq2::qarith::{q_int, Coeff, QFrac, QPoint, QRadical};
use suq2::sampling;
use suq2::spectral::{
    commutator_norm_sq_direct, commutator_norm_sq_expansion, commutator_norm_sq_literal, condition_512_scan,
    summability_classify, write_condition_512_csv, DiracSpec,
};
use suq2::verify::{fourier_suite, hopf_suite, orthogonality_suite};

const SEED: u64 = 42;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn pt(s: &str) -> QPoint {
    QPoint::parse(s).unwrap()
}

fn s(twice: u32) -> Spin {
    Spin::from_twice(twice)
}

fn casimir(l: Spin) -> QFrac {
    &q_int(l.twice_i64()) * &q_int(l.twice_i64() + 2)
}

fn c1_orthogonality() -> Outcome {
    let r = orthogonality_suite(s(3), &pt("7/10"));
    outcome(r.passed(), format!("{} identities, {} failures", r.checks, r.failures.len()))
}

fn c2_hopf() -> Outcome {
    let r = hopf_suite(500, 4, SEED);
    outcome(r.passed(), format!("{} checks on 500 triples, {} failures", r.checks, r.failures.len()))
}

fn c3_fourier() -> Outcome {
    let r = fourier_suite(200, 3, SEED);
    outcome(r.passed(), format!("{} checks on 200 polynomials, {} failures", r.checks, r.failures.len()))
}

fn c4_laplacian() -> Outcome {
    let mut ok = true;
    let mut printed_differs = 0;
    for l in s(6).up_to() {
        let tl = l.twice_i64();
        let value = casimir(l);
        let expect = Matrix::identity(l.dim()).scale(&QRadical::from_frac(value.clone()));
        ok &= laplacian_symbol(l, Frame::Algebra) == expect;
        ok &= laplacian_metric_symbol(l, Frame::Algebra, &Metric::consistent()) == expect;
        let c = &QFrac::q() - &QFrac::q_pow(-1);
        let top = &(&QFrac::q_pow(tl + 1) + &QFrac::q_pow(-tl - 1)) - &(&QFrac::q() + &QFrac::q_pow(-1));
        ok &= &top / &(&c * &c) == value;
        let b = matrix_coefficients(l);
        for m in 0..l.dim() {
            let t = b.unitary(m, l.dim() - 1 - m);
            ok &= q_laplacian(&t).unwrap() == t.scale(&QRadical::from_frac(value.clone()));
        }
        if laplacian_metric_symbol(l, Frame::Algebra, &Metric::printed()) != expect {
            printed_differs += 1;
        }
    }
    outcome(ok, format!("θ route, metric route and closed form for l <= 3; printed metric weights differ at {printed_differs} spins"))
}

fn c5_dirac() -> Outcome {
    let mut ok = true;
    let mut mults = Vec::new();
    for q in ["1/2", "4/5"] {
        for tw in 1..=3 {
            let c = dirac_block_check(s(tw), &pt(q)).unwrap();
            ok &= c.exact && c.max_residual <= 1e-9 && c.mult_e1 + c.mult_e2 == 2 * (c.l.dim() * c.l.dim());
            if q == "1/2" {
                mults.push(format!("l={}: {}+{}", c.l, c.mult_e1, c.mult_e2));
            }
        }
    }
    outcome(ok, format!("multiplicities {}", mults.join(", ")))
}

fn c6_calculus() -> Outcome {
    let mut ok = true;
    for kind in [CalculusKind::ThreeD, CalculusKind::FourD] {
        for g in Gen::ALL {
            let x = AlgebraElement::<QFrac>::gen(g);
            ok &= exterior_d(kind, &x).unwrap() == generator_differential(kind, g);
            for i in 0..kind.dim() {
                let e = OneForm::basis(kind, i, AlgebraElement::one());
                ok &= e.right_multiply(&x).unwrap() == generator_commutation(kind, i, g);
            }
        }
        let mut rng = sampling::rng(SEED);
        for _ in 0..100 {
            let f = sampling::monomial_element(&mut rng, 3);
            let h = sampling::monomial_element(&mut rng, 3);
            ok &= check_leibniz(kind, &f, &h).unwrap() && check_associativity(kind, &f, &h).unwrap();
        }
    }
    outcome(ok, "generator tables, Leibniz and bimodule associativity on 100 pairs, 3D and 4D")
}

fn c7_growth() -> Outcome {
    let p = pt("1/2");
    let mut failed = Vec::new();
    for (family, target) in growth_targets() {
        let fit = fit_growth(family, s(24), &p).unwrap();
        if !target.holds(fit.slope, 0.3) {
            failed.push(format!("{family} {:.2} vs {target}", fit.slope));
        }
    }
    let n = growth_targets().len();
    outcome(failed.is_empty(), format!("{} of {n} families within 0.3; off: {}", n - failed.len(), failed.join("; ")))
}

fn c8_classical_limit() -> Outcome {
    let p = pt("0.999");
    let lemma = s(4).up_to().map(|l| classical_limit_error(l, &p, LimitSymbols::Lemma).unwrap()).fold(0.0, f64::max);
    let three = s(4).up_to().map(|l| classical_limit_error(l, &p, LimitSymbols::ThreeD).unwrap()).fold(0.0, f64::max);
    outcome(lemma < 1e-2, format!("max error {lemma:.2e} for l <= 2 (3D calculus symbols: {three:.2e})"))
}

fn c9_hausdorff_young() -> Outcome {
    let one = pt("1");
    let mut rng = sampling::rng(SEED);
    let mut worst = 0.0f64;
    for p in [4.0 / 3.0, 1.5, 2.0] {
        let params = InequalityParams::new(InequalityKind::HausdorffYoung, p);
        for _ in 0..20 {
            let f = loop {
                let f = sampling::element(&mut rng, 3, 4);
                if !f.is_zero() {
                    break f;
                }
            };
            worst = worst.max(inequality_ratio(&f, &params, &one).unwrap().ratio);
        }
    }
    outcome(worst <= 1.0 + 1e-5, format!("max ratio {worst:.6} over 60 polynomials, 64^3 nodes"))
}

fn c10_paley() -> Outcome {
    let one = pt("1");
    let mut rng = sampling::rng(SEED);
    let mut ok = true;
    for q in ["1", "1/2"] {
        for _ in 0..20 {
            let phi = sampling::weight(&mut rng, s(6));
            ok &= paley_constant(&phi, s(6), &pt(q)).unwrap() == paley_constant_brute_force(&phi, s(6), &pt(q)).unwrap();
        }
    }
    let m = paley_constant(&inverse_dimension_weight(s(4)), s(4), &one).unwrap();
    outcome(ok && (m - 11.0).abs() < 1e-12, format!("40 random weights agree with the scan; M for 1/(2l+1), l <= 2: {m}"))
}

fn radical(s: &FourierArray<QFrac>) -> FourierArray<QRadical> {
    s.map_blocks(|_, m| Ok(m.map(|x| x.to_radical()))).unwrap()
}

fn c11_multiplier() -> Outcome {
    let mut rng = sampling::rng(SEED);
    let sym = radical(&sampling::symbol(&mut rng, s(4)));
    let extract_ok = extract_symbol(|f| apply_symbol(&sym, f), s(4)).unwrap() == sym;

    let sym = radical(&sampling::symbol(&mut rng, s(2)));
    let (st, sl) = (adjoint_symbol(&sym).unwrap(), adjoint_symbol_l2(&sym).unwrap());
    let mut basis = Vec::new();
    for l in s(2).up_to() {
        let b = matrix_coefficients(l);
        for i in 0..l.dim() {
            for j in 0..l.dim() {
                basis.push(b.unitary(i, j));
            }
        }
    }
    let mut adjoint_ok = true;
    for g in &basis {
        let (ag, lg) = (apply_symbol(&st, g).unwrap(), apply_symbol(&sl, g).unwrap());
        for f in &basis {
            let af = apply_symbol(&sym, f).unwrap();
            adjoint_ok &= gns_inner(&af, g) == gns_inner(f, &ag) && l2_inner(&af, g) == l2_inner(f, &lg);
        }
    }
    let id = FourierArray::<QFrac>::identity(s(8).up_to());
    let bound = lp_lq_bound(&id, 2.0, 2.0, s(8), &pt("1/2")).unwrap();
    outcome(
        extract_ok && adjoint_ok && bound == 1.0,
        format!("extract∘apply {extract_ok}, adjoint {adjoint_ok}, identity bound {bound}"),
    )
}

fn c12_summability() -> Outcome {
    let dim = |spec: DiracSpec, q: &str| summability_classify(&spec, &pt(q), s(8)).unwrap().dimension;
    let a = dim(DiracSpec::classical(), "1");
    let b = dim(DiracSpec::q_deformed(), "1/2");
    let c = dim(DiracSpec::classical(), "1/2");
    outcome(a == Some(3.0) && b == Some(1.0) && c.is_none(), format!("classical q=1: {a:?}, q-deformed q=1/2: {b:?}, classical q=1/2: {c:?}"))
}

fn c13_commutator() -> Outcome {
    let spec = DiracSpec::classical();
    let (mut ok, mut literal_off, mut n) = (true, 0, 0);
    for k in s(2).up_to() {
        for sp in s(2).up_to() {
            for i in 0..k.dim() {
                for j in 0..k.dim() {
                    for p in 0..sp.dim() {
                        for r in 0..sp.dim() {
                            let idx = (i, j, p, r);
                            let direct = commutator_norm_sq_direct(k, sp, idx, &spec).unwrap();
                            ok &= direct == commutator_norm_sq_expansion(k, sp, idx, &spec).unwrap();
                            literal_off += usize::from(direct != commutator_norm_sq_literal(k, sp, idx, &spec).unwrap());
                            n += 1;
                        }
                    }
                }
            }
        }
    }
    let rows = condition_512_scan(s(3), &spec, &pt("1/2")).unwrap();
    let mut csv = Vec::new();
    write_condition_512_csv(&mut csv, &rows).unwrap();
    let max = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    outcome(
        ok && !rows.is_empty() && !csv.is_empty(),
        format!("{n} exact comparisons; {} scan rows, max ratio {max:.4}; diagonal-only expansion differs on {literal_off}", rows.len()),
    )
}

fn c14_seminorms() -> Outcome {
    let spec = DiracSpec::q_deformed();
    let p = pt("1/2");
    let mut rng = sampling::rng(SEED);
    let (mut literal, mut corrected) = (0, 0);
    for _ in 0..50 {
        let sym = sampling::symbol(&mut rng, s(8));
        let b = seminorm_bound(&sym, 1.0, 2.0, &spec, &p).unwrap();
        literal += usize::from(b.literal_holds());
        corrected += usize::from(b.corrected_holds());
    }
    outcome(literal == 50, format!("stated constant holds for {literal}/50 symbols; with d_l² weights and q_(α+β/2): {corrected}/50"))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 14] = [
        (1, "Peter-Weyl orthogonality", 60, c1_orthogonality),
        (2, "Hopf axioms and confluence", 60, c2_hopf),
        (3, "Fourier round trip and Plancherel", 30, c3_fourier),
        (4, "q-Laplacian eigenvalues", 120, c4_laplacian),
        (5, "geometric Dirac eigenvalues", 120, c5_dirac),
        (6, "3D/4D calculus relations", 60, c6_calculus),
        (7, "growth exponents", 120, c7_growth),
        (8, "classical limit", 60, c8_classical_limit),
        (9, "Hausdorff-Young at q = 1", 300, c9_hausdorff_young),
        (10, "Paley constant", 60, c10_paley),
        (11, "multiplier layer", 120, c11_multiplier),
        (12, "summability classifier", 60, c12_summability),
        (13, "commutator condition", 300, c13_commutator),
        (14, "seminorm equivalence", 60, c14_seminorms),
    ];
    let mut failed = Vec::new();
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let pass = o.pass && in_time;
        let time_note = if in_time { String::new() } else { format!(" [over the {budget} s budget]") };
        println!(
            "{} criterion {n:>2} {name}: {}{time_note} ({:.1} s)",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64()
        );
        if !pass {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
