//! One function per subcommand. Each returns its tables and whether every
//! exact check held; statistical reports never fail.

use std::fs::File;
use std::io::BufWriter;

use suq2::calculus::{
    admissibility_exponent, check_associativity, check_leibniz, comm4_nonzero, dirac_block_check, exterior_d,
    exterior_d_generators, fit_growth, generator_commutation, generator_differential, growth_targets,
    laplacian_metric_symbol, laplacian_symbol, write_growth_csv, CalculusKind, Family, Frame, GrowthTarget, Metric,
    OneForm,
};
use suq2::cqalg::{gns_inner, l2_inner, matrix_coefficients, AlgebraElement, Gen, Spin};
use suq2::fourier::{inequality_ratio, write_inequality_csv, FourierArray, InequalityKind, InequalityParams, InequalityRow, QuadratureGrid};
use suq2::matrix::Matrix;
use suq2::multiplier::{
    adjoint_symbol, adjoint_symbol_l2, apply_symbol, extract_symbol, l2_operator_norm, lp_lq_bound, seminorm_bound,
    MultiplierSymbol,
};
use suq2::qarith::{q_int, Coeff, QFrac, QRadical};
use suq2::sampling;
use suq2::spectral::{
    commutator_norm_sq_direct, commutator_norm_sq_expansion, condition_512_scan, summability_classify,
    write_condition_512_csv,
};
use suq2::verify::{fourier_suite, hopf_suite, orthogonality_suite, SuiteReport};

use crate::config::RunConfig;
use crate::table::{num, pass, Table};

pub type CmdResult = Result<Outcome, String>;

pub struct Outcome {
    pub tables: Vec<Table>,
    /// All exact identities held.
    pub exact_ok: bool,
}

impl Outcome {
    fn report(tables: Vec<Table>) -> Self {
        Self { tables, exact_ok: true }
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn write_json<T: serde::Serialize>(cfg: &RunConfig, name: &str, value: &T) -> Result<(), String> {
    let path = cfg.artifact(name)?;
    let text = serde_json::to_string_pretty(value).map_err(err)? + "\n";
    std::fs::write(&path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn create(cfg: &RunConfig, name: &str) -> Result<BufWriter<File>, String> {
    let path = cfg.artifact(name)?;
    File::create(&path).map(BufWriter::new).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// Keeps file names free of shell metacharacters.
fn file_stem(name: &str) -> String {
    let mut out = String::new();
    for ch in name.chars() {
        match ch {
            '+' => out.push_str("plus"),
            '-' => out.push_str("minus"),
            c if c.is_ascii_alphanumeric() => out.push(c),
            _ if !out.ends_with('_') => out.push('_'),
            _ => {}
        }
    }
    out.trim_end_matches('_').to_string()
}

fn suite_outcome(cfg: &RunConfig, rep: SuiteReport, params: &str) -> CmdResult {
    write_json(cfg, &format!("{}.json", rep.name), &rep)?;
    for f in rep.failures.iter().take(10) {
        eprintln!("{}: {f}", rep.name);
    }
    let mut t = Table::new(format!("{} suite", rep.name), &["suite", "parameters", "checks", "failures", "status"]);
    t.push(vec![rep.name.clone(), params.into(), rep.checks.to_string(), rep.failures.len().to_string(), pass(rep.passed())]);
    Ok(Outcome { tables: vec![t], exact_ok: rep.passed() })
}

pub fn orthogonality(cfg: &RunConfig) -> CmdResult {
    let l = cfg.lmax_or(3);
    let rep = orthogonality_suite(l, &cfg.point);
    suite_outcome(cfg, rep, &format!("q={} lmax={l}", cfg.q_text))
}

pub fn hopf(cfg: &RunConfig, degree: u32) -> CmdResult {
    let trials = cfg.trials.unwrap_or(500);
    let rep = hopf_suite(trials, degree, cfg.seed);
    suite_outcome(cfg, rep, &format!("trials={trials} degree={degree} seed={}", cfg.seed))
}

pub fn fourier(cfg: &RunConfig, degree: u32) -> CmdResult {
    let trials = cfg.trials.unwrap_or(200);
    let rep = fourier_suite(trials, degree, cfg.seed);
    suite_outcome(cfg, rep, &format!("trials={trials} degree={degree} seed={}", cfg.seed))
}

fn default_beta(cfg: &RunConfig) -> Result<f64, String> {
    if let Some(b) = cfg.beta {
        return Ok(b);
    }
    let rep = summability_classify(&cfg.dirac, &cfg.point, Spin::ZERO).map_err(err)?;
    Ok(rep.dimension.or(rep.dimension_plain).unwrap_or(3.0) + 1.0)
}

pub fn inequality(cfg: &RunConfig, kind: InequalityKind, degree: u32) -> CmdResult {
    let p = cfg.p.unwrap_or(1.5);
    let trials = cfg.trials.unwrap_or(20);
    let mut params = InequalityParams::new(kind, p);
    params.grid = QuadratureGrid::cube(cfg.grid.unwrap_or(64));
    params.l_max = cfg.lmax;
    if kind == InequalityKind::HyPaley {
        params.b = Some(cfg.b.unwrap_or(p));
    }
    if matches!(kind, InequalityKind::HardyLittlewood | InequalityKind::DiracWeighted) {
        params.dirac = Some(cfg.dirac.clone());
        params.beta = Some(default_beta(cfg)?);
    }
    let mut rng = sampling::rng(cfg.seed);
    let mut rows = Vec::new();
    let mut t = Table::new(
        format!("{kind} inequality, q={}, p={p}", cfg.q_text),
        &["trial", "degree", "lhs", "rhs", "ratio"],
    );
    for i in 0..trials {
        let f = loop {
            let f = sampling::element(&mut rng, degree, 4);
            if !f.is_zero() {
                break f;
            }
        };
        let s = inequality_ratio(&f, &params, &cfg.point).map_err(err)?;
        t.push(vec![i.to_string(), f.degree().to_string(), num(s.lhs), num(s.rhs), num(s.ratio)]);
        rows.push(InequalityRow {
            kind,
            q: cfg.q_text.clone(),
            p,
            b: params.b,
            beta: params.beta,
            l_max: params.l_max.map(|l| l.to_string()).unwrap_or_else(|| "auto".into()),
            seed: cfg.seed,
            lhs: s.lhs,
            rhs: s.rhs,
            ratio: s.ratio,
        });
    }
    write_inequality_csv(create(cfg, &format!("inequality_{kind}.csv"))?, &rows).map_err(err)?;
    let max = rows.iter().map(|r| r.ratio).fold(0.0f64, f64::max);
    let mut s = Table::new("summary", &["kind", "trials", "max_ratio"]);
    s.push(vec![kind.to_string(), trials.to_string(), num(max)]);
    Ok(Outcome::report(vec![t, s]))
}

fn radical(s: &FourierArray<QFrac>) -> MultiplierSymbol {
    s.map_blocks(|_, m| Ok(m.map(|x| x.to_radical()))).expect("total map")
}

fn basis_up_to(l_max: Spin) -> Vec<AlgebraElement<QRadical>> {
    let mut out = Vec::new();
    for l in l_max.up_to() {
        let b = matrix_coefficients(l);
        for i in 0..l.dim() {
            for j in 0..l.dim() {
                out.push(b.unitary(i, j));
            }
        }
    }
    out
}

pub fn multiplier_extract(cfg: &RunConfig) -> CmdResult {
    let l_max = cfg.lmax_or(4);
    let l_adj = l_max.min(Spin::from_twice(2));
    let trials = cfg.trials.unwrap_or(3);
    let mut rng = sampling::rng(cfg.seed);
    let mut rep = SuiteReport { name: "multiplier".into(), ..SuiteReport::default() };
    let mut check = |ok: bool, what: String| {
        rep.checks += 1;
        if !ok {
            rep.failures.push(what);
        }
    };
    let basis = basis_up_to(l_adj);
    for trial in 0..trials {
        let s = radical(&sampling::symbol(&mut rng, l_max));
        let got = extract_symbol(|f| apply_symbol(&s, f), l_max).map_err(err)?;
        check(got == s, format!("trial {trial}: extracted symbol differs"));

        let s = radical(&sampling::symbol(&mut rng, l_adj));
        let (st, sl) = (adjoint_symbol(&s).map_err(err)?, adjoint_symbol_l2(&s).map_err(err)?);
        let images: Vec<_> = basis.iter().map(|f| apply_symbol(&s, f)).collect::<Result<_, _>>().map_err(err)?;
        for (g_idx, g) in basis.iter().enumerate() {
            let (ag, lg) = (apply_symbol(&st, g).map_err(err)?, apply_symbol(&sl, g).map_err(err)?);
            for (f, af) in basis.iter().zip(&images) {
                check(gns_inner(af, g) == gns_inner(f, &ag), format!("trial {trial}: h(g* Af) ≠ h((A*g)* f), g #{g_idx}"));
                check(l2_inner(af, g) == l2_inner(f, &lg), format!("trial {trial}: h(Af g*) ≠ h(f (A*g)*), g #{g_idx}"));
            }
        }
    }
    let id = FourierArray::<QFrac>::identity(l_max.up_to());
    let bound = lp_lq_bound(&id, 2.0, 2.0, l_max, &cfg.point).map_err(err)?;
    check(bound == 1.0, format!("identity bound is {bound}, expected 1"));
    for f in rep.failures.iter().take(10) {
        eprintln!("multiplier: {f}");
    }
    write_json(cfg, "multiplier_extract.json", &rep)?;
    let mut t = Table::new("multiplier symbols", &["check", "spins", "status"]);
    let failed = |key: &str| rep.failures.iter().any(|f| f.contains(key));
    t.push(vec!["extract(apply(σ)) = σ".into(), format!("l <= {l_max}"), pass(!failed("extracted"))]);
    t.push(vec!["adjoint, both pairings".into(), format!("l <= {l_adj}"), pass(!failed("≠"))]);
    t.push(vec!["identity L^2 -> L^2 bound = 1".into(), format!("l <= {l_max}"), pass(!failed("identity"))]);
    Ok(Outcome { tables: vec![t], exact_ok: rep.passed() })
}

pub fn multiplier_bound(cfg: &RunConfig) -> CmdResult {
    let l_max = cfg.lmax_or(8);
    let p = cfg.p.unwrap_or(1.5);
    let q_exp = p / (p - 1.0);
    let beta = default_beta(cfg)?;
    let alpha = 1.0;
    let trials = cfg.trials.unwrap_or(20);
    let mut rng = sampling::rng(cfg.seed);
    let header = ["symbol", "lp_lq_bound", "l2_norm", "p_alpha", "literal_rhs", "literal", "corrected_rhs", "corrected"];
    let mut t = Table::new(
        format!("multiplier bounds, q={}, p={p}, q'={q_exp}, beta={beta}, dirac={}", cfg.q_text, cfg.dirac.family),
        &header,
    );
    let mut wr = csv::Writer::from_writer(create(cfg, "multiplier_bound.csv")?);
    wr.write_record(header).map_err(err)?;
    let id = FourierArray::<QFrac>::identity(l_max.up_to());
    let mut symbols = vec![("identity".to_string(), id)];
    for i in 0..trials {
        symbols.push((format!("random {i}"), sampling::symbol(&mut rng, l_max)));
    }
    for (name, s) in symbols {
        let lp = lp_lq_bound(&s, p, q_exp, l_max, &cfg.point).map_err(err)?;
        let l2 = l2_operator_norm(&s, &cfg.point).map_err(err)?;
        let sb = seminorm_bound(&s, alpha, beta, &cfg.dirac, &cfg.point).map_err(err)?;
        let row = vec![
            name,
            num(lp),
            num(l2),
            num(sb.p_alpha),
            num(sb.literal_rhs),
            pass(sb.literal_holds()),
            num(sb.corrected_rhs),
            pass(sb.corrected_holds()),
        ];
        wr.write_record(&row).map_err(err)?;
        t.push(row);
    }
    wr.flush().map_err(err)?;
    Ok(Outcome::report(vec![t]))
}

pub fn spectrum(cfg: &RunConfig, classify: bool) -> CmdResult {
    let l_cap = cfg.lmax_or(12);
    let mut ev = Table::new(format!("|λ_l|, dirac={}, q={}", cfg.dirac.family, cfg.q_text), &["l", "abs_eigenvalue"]);
    for l in l_cap.up_to() {
        ev.push(vec![l.to_string(), num(cfg.dirac.abs_eigenvalue(l, &cfg.point).map_err(err)?)]);
    }
    if !classify {
        return Ok(Outcome::report(vec![ev]));
    }
    let rep = summability_classify(&cfg.dirac, &cfg.point, l_cap).map_err(err)?;
    write_json(cfg, "spectrum.json", &serde_json::json!({ "dirac": cfg.dirac, "q": cfg.q_text, "report": rep }))?;
    let show = |d: Option<f64>| d.map(num).unwrap_or_else(|| "none".into());
    let mut t = Table::new("summability", &["dirac", "q", "spectral_dimension", "dimension_plain_weights", "evidence_beta"]);
    t.push(vec![
        cfg.dirac.family.to_string(),
        cfg.q_text.clone(),
        show(rep.dimension),
        show(rep.dimension_plain),
        num(rep.evidence_beta),
    ]);
    let mut e = Table::new("partial sums at evidence beta", &["l", "sum_d_n", "sum_n_sq"]);
    for (l, a, b) in &rep.evidence {
        e.push(vec![l.to_string(), num(*a), num(*b)]);
    }
    Ok(Outcome::report(vec![t, e]))
}

pub fn commutator(cfg: &RunConfig, scan: bool) -> CmdResult {
    let cap = cfg.lmax_or(3);
    let exact_cap = cap.min(Spin::from_twice(2));
    let mut checks = 0usize;
    let mut failures = 0usize;
    for k in exact_cap.up_to() {
        for s in exact_cap.up_to() {
            for i in 0..k.dim() {
                for j in 0..k.dim() {
                    for p in 0..s.dim() {
                        for r in 0..s.dim() {
                            let idx = (i, j, p, r);
                            let d = commutator_norm_sq_direct(k, s, idx, &cfg.dirac).map_err(err)?;
                            let x = commutator_norm_sq_expansion(k, s, idx, &cfg.dirac).map_err(err)?;
                            checks += 1;
                            if d != x {
                                failures += 1;
                                eprintln!("commutator: k={k} s={s} idx={idx:?}: direct {d} vs expansion {x}");
                            }
                        }
                    }
                }
            }
        }
    }
    let mut t = Table::new(format!("commutator norms, dirac={}", cfg.dirac.family), &["check", "spins", "checks", "status"]);
    t.push(vec!["direct = C-expansion".into(), format!("k, s <= {exact_cap}"), checks.to_string(), pass(failures == 0)]);
    let mut tables = vec![t];
    if scan {
        let rows = condition_512_scan(cap, &cfg.dirac, &cfg.point).map_err(err)?;
        write_condition_512_csv(create(cfg, "condition_512.csv")?, &rows).map_err(err)?;
        let mut m = Table::new(format!("max commutator ratio, q={}", cfg.q_text), &["k", "s", "rows", "max_ratio"]);
        for k in cap.up_to() {
            for s in cap.up_to() {
                let (ks, ss) = (k.to_string(), s.to_string());
                let sel: Vec<f64> = rows.iter().filter(|r| r.k == ks && r.s == ss).map(|r| r.ratio).collect();
                m.push(vec![ks, ss, sel.len().to_string(), num(sel.iter().copied().fold(0.0, f64::max))]);
            }
        }
        tables.push(m);
    }
    Ok(Outcome { tables, exact_ok: failures == 0 })
}

pub fn calculus_leibniz(cfg: &RunConfig, kind: CalculusKind) -> CmdResult {
    let trials = cfg.trials.unwrap_or(100);
    let mut rep = SuiteReport { name: format!("calculus_{kind}_leibniz"), ..SuiteReport::default() };
    let mut check = |ok: bool, what: String| {
        rep.checks += 1;
        if !ok {
            rep.failures.push(what);
        }
    };
    for g in Gen::ALL {
        let x = AlgebraElement::<QFrac>::gen(g);
        check(exterior_d(kind, &x).map_err(err)? == generator_differential(kind, g), format!("d{g:?} differs from the generator table"));
        for i in 0..kind.dim() {
            let lhs = OneForm::basis(kind, i, AlgebraElement::one()).right_multiply(&x).map_err(err)?;
            check(lhs == generator_commutation(kind, i, g), format!("e_{} {g:?} differs from the relation table", kind.labels()[i]));
        }
    }
    let mut rng = sampling::rng(cfg.seed);
    for trial in 0..trials {
        let f = sampling::monomial_element(&mut rng, 3);
        let h = sampling::monomial_element(&mut rng, 3);
        check(check_leibniz(kind, &f, &h).map_err(err)?, format!("trial {trial}: Leibniz fails on ({f}, {h})"));
        check(check_associativity(kind, &f, &h).map_err(err)?, format!("trial {trial}: bimodule associativity fails on ({f}, {h})"));
        let fh = f.multiply(&h);
        check(exterior_d(kind, &fh).map_err(err)? == exterior_d_generators(kind, &fh), format!("trial {trial}: d({fh}) routes disagree"));
    }
    for f in rep.failures.iter().take(10) {
        eprintln!("calculus: {f}");
    }
    let ok = rep.passed();
    write_json(cfg, &format!("calculus_{kind}_leibniz.json"), &rep)?;
    let mut t = Table::new(format!("{kind} calculus", ), &["checks", "failures", "trials", "seed", "status"]);
    t.push(vec![rep.checks.to_string(), rep.failures.len().to_string(), trials.to_string(), cfg.seed.to_string(), pass(ok)]);
    Ok(Outcome { tables: vec![t], exact_ok: ok })
}

fn families(kind: CalculusKind) -> Vec<Family> {
    match kind {
        CalculusKind::ThreeD => vec![
            Family::XPlus,
            Family::XMinus,
            Family::QHalfH,
            Family::ThreePlus,
            Family::ThreeMinus,
            Family::ThreeZero,
            Family::YPm,
            Family::YZero,
        ],
        CalculusKind::FourD => {
            let mut v = vec![Family::FourA, Family::FourB, Family::FourC, Family::FourD];
            v.extend(comm4_nonzero());
            v
        }
    }
}

pub fn calculus_growth(cfg: &RunConfig, kind: CalculusKind) -> CmdResult {
    if cfg.point.is_classical() {
        return Err("growth fits need q ≠ 1".into());
    }
    let l_max = cfg.lmax_or(24);
    let targets = growth_targets();
    let header = ["family", "target", "slope", "slope_algebra_frame", "ratio_min", "ratio_max", "within_0.3"];
    let mut t = Table::new(format!("{kind} growth of HS norms, q={}, l <= {l_max}", cfg.q_text), &header);
    let mut wr = csv::Writer::from_writer(create(cfg, &format!("growth_{kind}_summary.csv"))?);
    wr.write_record(header).map_err(err)?;
    for f in families(kind) {
        let fit = fit_growth(f, l_max, &cfg.point).map_err(err)?;
        write_growth_csv(create(cfg, &format!("growth_{}.csv", file_stem(&fit.family)))?, &fit).map_err(err)?;
        let target = targets.iter().find(|(g, _)| *g == f).map(|(_, t)| *t).unwrap_or(GrowthTarget::Unspecified);
        let (lo, hi) = fit.ratio_range(target.exponent().unwrap_or(fit.slope));
        let verdict = match target {
            GrowthTarget::Unspecified => "-".to_string(),
            _ => pass(target.holds(fit.slope, 0.3)),
        };
        let row = vec![fit.family.clone(), target.to_string(), num(fit.slope), num(fit.slope_algebra), num(lo), num(hi), verdict];
        wr.write_record(&row).map_err(err)?;
        t.push(row);
    }
    wr.flush().map_err(err)?;
    Ok(Outcome::report(vec![t]))
}

pub fn calculus_admissible(cfg: &RunConfig, kind: CalculusKind) -> CmdResult {
    let l_max = cfg.lmax_or(12);
    let gamma = admissibility_exponent(kind, &cfg.dirac, l_max, &cfg.point).map_err(err)?;
    let mut t = Table::new("admissibility", &["kind", "dirac", "q", "lmax", "gamma"]);
    t.push(vec![kind.to_string(), cfg.dirac.family.to_string(), cfg.q_text.clone(), l_max.to_string(), num(gamma)]);
    write_json(
        cfg,
        &format!("admissible_{kind}.json"),
        &serde_json::json!({ "kind": kind.to_string(), "dirac": cfg.dirac, "q": cfg.q_text, "lmax": l_max.to_string(), "gamma": gamma }),
    )?;
    Ok(Outcome::report(vec![t]))
}

pub fn dirac_geometric(cfg: &RunConfig) -> CmdResult {
    let l_max = cfg.lmax_or(3);
    let header = ["l", "e1", "e2", "mult_e1", "mult_e2", "exact", "max_residual"];
    let mut t = Table::new(format!("eigenvalues of D/λ, q={}", cfg.q_text), &header);
    let mut wr = csv::Writer::from_writer(create(cfg, "dirac_geometric.csv")?);
    wr.write_record(header).map_err(err)?;
    let mut ok = true;
    for l in l_max.up_to().filter(|l| l.twice() > 0) {
        let c = dirac_block_check(l, &cfg.point).map_err(err)?;
        ok &= c.exact;
        let row = vec![
            l.to_string(),
            num(c.e1),
            num(c.e2),
            c.mult_e1.to_string(),
            c.mult_e2.to_string(),
            pass(c.exact),
            format!("{:.3e}", c.max_residual),
        ];
        wr.write_record(&row).map_err(err)?;
        t.push(row);
    }
    wr.flush().map_err(err)?;
    Ok(Outcome { tables: vec![t], exact_ok: ok })
}

pub fn laplacian(cfg: &RunConfig) -> CmdResult {
    let l_max = cfg.lmax_or(6);
    let header = ["l", "eigenvalue", "exact_value", "theta_route", "metric_route", "closed_form", "printed_metric"];
    let mut t = Table::new(format!("q-Laplacian [l][l+1], q={}", cfg.q_text), &header);
    let mut wr = csv::Writer::from_writer(create(cfg, "laplacian.csv")?);
    wr.write_record(header).map_err(err)?;
    let mut ok = true;
    for l in l_max.up_to() {
        let tl = l.twice_i64();
        let value = &q_int(tl) * &q_int(tl + 2);
        let expect = Matrix::identity(l.dim()).scale(&QRadical::from_frac(value.clone()));
        let theta = laplacian_symbol(l, Frame::Algebra) == expect;
        let metric = laplacian_metric_symbol(l, Frame::Algebra, &Metric::consistent()) == expect;
        // (q^{2l+1} + q^{-2l-1} - q - q^{-1}) / (q - q^{-1})²
        let c = &QFrac::q() - &QFrac::q_pow(-1);
        let num_ = &(&QFrac::q_pow(tl + 1) + &QFrac::q_pow(-tl - 1)) - &(&QFrac::q() + &QFrac::q_pow(-1));
        let closed = (&num_ / &(&c * &c)) == value;
        let printed = laplacian_metric_symbol(l, Frame::Algebra, &Metric::printed()) == expect;
        ok &= theta && metric && closed;
        let row = vec![
            l.to_string(),
            num(cfg.point.eval(&value)),
            value.to_string(),
            pass(theta),
            pass(metric),
            pass(closed),
            if printed { "matches" } else { "differs" }.to_string(),
        ];
        wr.write_record(&row).map_err(err)?;
        t.push(row);
    }
    wr.flush().map_err(err)?;
    Ok(Outcome { tables: vec![t], exact_ok: ok })
}
