//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

use std::collections::HashMap;
use std::time::Instant;

use brauer_fusion::exactnum::{int, rat, Rational};
use brauer_fusion::fusion::{
    e_operator, f_operator_closed, f_operator_general, verify_corollary32, verify_prop33, verify_scaled_idempotent,
    verify_theta_factorization, ClosedFormula, FusionConfig,
};
use brauer_fusion::rmatrix::{
    check_intertwiner_e, check_intertwiner_f, check_lemma44, check_reflection_image, check_rtt, check_unitarity,
    check_yang_baxter_family, g_mu, h_of, IdentityCheck, Sampling, YangBaxter, DEFAULT_SEED,
};
use brauer_fusion::shapes::{count_semistandard, standard_tableaux, validate_label, Group, Partition, SkewShape, StandardTableau};
use brauer_fusion::symalg::{e_tableau, fusion_e, idempotency_scalar, skew_part, ConstraintMode};
use brauer_fusion::tensorop::linalg::rank;
use brauer_fusion::tensorop::{BilinearForm, FormKind};
use brauer_fusion::{Error, GroupElement, Operator};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: &[String], summary: String) -> Self {
        if failures.is_empty() {
            Outcome { pass: true, detail: summary }
        } else {
            let shown: Vec<&String> = failures.iter().take(3).collect();
            Outcome { pass: false, detail: format!("{summary}; {} failure(s), first: {shown:?}", failures.len()) }
        }
    }
}

/// Skew shapes `λ/μ` with `|λ| ≤ max_lambda` and `1 ≤ |λ/μ| ≤ max_boxes`.
fn skew_shapes(max_lambda: usize, max_boxes: usize) -> Vec<SkewShape> {
    let mut out = Vec::new();
    for l in 1..=max_lambda {
        for lambda in Partition::all_of_size(l) {
            for mu in lambda.subpartitions() {
                let n = l - mu.size();
                if (1..=max_boxes).contains(&n) {
                    out.push(SkewShape::new(lambda.clone(), mu).unwrap());
                }
            }
        }
    }
    out
}

fn straight_tableaux(max_l: usize) -> Vec<StandardTableau> {
    (1..=max_l)
        .flat_map(Partition::all_of_size)
        .flat_map(|p| standard_tableaux(&SkewShape::straight(p)))
        .collect()
}

fn group(kind: FormKind) -> Group {
    match kind {
        FormKind::Symmetric => Group::O,
        FormKind::Alternating => Group::Sp,
    }
}

/// The group/dimension pairs swept by the operator criteria.
const FORMS: [(FormKind, usize); 4] =
    [(FormKind::Symmetric, 2), (FormKind::Symmetric, 3), (FormKind::Alternating, 2), (FormKind::Alternating, 4)];

fn m_values(kind: FormKind) -> [usize; 2] {
    match kind {
        FormKind::Symmetric => [0, 1],
        FormKind::Alternating => [0, 2],
    }
}

#[derive(Default)]
struct Cache {
    e_group: HashMap<StandardTableau, GroupElement>,
    f: HashMap<(StandardTableau, FormKind, usize, usize), Operator>,
}

impl Cache {
    fn e_lambda(&mut self, t: &StandardTableau) -> GroupElement {
        self.e_group.entry(t.clone()).or_insert_with(|| e_tableau(t).unwrap()).clone()
    }

    fn f(&mut self, cfg: &FusionConfig) -> Result<Operator, Error> {
        let key = (cfg.tableau().clone(), cfg.kind(), cfg.n_dim(), cfg.m());
        if let Some(f) = self.f.get(&key) {
            return Ok(f.clone());
        }
        let f = f_operator_general(cfg)?;
        self.f.insert(key, f.clone());
        Ok(f)
    }
}

/// Configurations with `|λ| ≤ 4`, valid labels, `N^n ≤ 256`.
fn operator_sweep() -> Vec<FusionConfig> {
    let mut out = Vec::new();
    for (kind, n_dim) in FORMS {
        for m in m_values(kind) {
            for shape in skew_shapes(4, 4) {
                if n_dim.pow(shape.n() as u32) > 256 || (m == 0 && shape.is_skew()) {
                    continue;
                }
                let lambda_ok = validate_label(shape.lambda(), group(kind), n_dim + m).unwrap();
                let mu_ok = !shape.is_skew() || validate_label(shape.mu(), group(kind), m).unwrap();
                if !(lambda_ok && mu_ok) {
                    continue;
                }
                for t in standard_tableaux(&shape) {
                    out.push(FusionConfig::new(t, kind, n_dim, m).unwrap());
                }
            }
        }
    }
    out
}

fn criterion1(cache: &mut Cache) -> Outcome {
    let mut failures = Vec::new();
    let mut tableaux = 0;
    let mut extensions = 0;
    for shape in skew_shapes(6, 5) {
        let ups = standard_tableaux(&SkewShape::straight(shape.mu().clone()));
        for omega in standard_tableaux(&shape) {
            tableaux += 1;
            let by_row = fusion_e(&omega, ConstraintMode::Row);
            let by_col = fusion_e(&omega, ConstraintMode::Column);
            let (Ok(by_row), Ok(by_col)) = (by_row, by_col) else {
                failures.push(format!("pole for {omega}"));
                continue;
            };
            if by_row != by_col {
                failures.push(format!("row/column modes differ for {omega}"));
            }
            if !shape.is_skew() && cache.e_lambda(&omega) != by_row {
                failures.push(format!("seminormal route differs for {omega}"));
            }
            for up in &ups {
                let lam = StandardTableau::join(up, &omega).unwrap();
                extensions += 1;
                let e = cache.e_lambda(&lam);
                let m = up.n();
                if skew_part(&e.theta(m), m) != by_row {
                    failures.push(format!("extraction from {lam} differs for {omega}"));
                }
            }
        }
    }
    Outcome::new(&failures, format!("{tableaux} tableaux, {extensions} extensions, three routes agree"))
}

fn criterion2(cache: &mut Cache) -> Outcome {
    let mut failures = Vec::new();
    let mut group_checks = 0;
    for t in straight_tableaux(4) {
        let e = cache.e_lambda(&t);
        let scalar = idempotency_scalar(t.shape().lambda());
        group_checks += 1;
        if &e * &e != e.scale(&scalar) {
            failures.push(format!("e^2 for {t}"));
        }
    }
    let mut op_checks = 0;
    for (kind, n_dim) in FORMS {
        for t in straight_tableaux(4) {
            if !validate_label(t.shape().lambda(), group(kind), n_dim).unwrap() {
                continue;
            }
            let cfg = FusionConfig::new(t.clone(), kind, n_dim, 0).unwrap();
            let scalar = idempotency_scalar(t.shape().lambda());
            op_checks += 1;
            match cache.f(&cfg) {
                Ok(f) if verify_scaled_idempotent(&f, &scalar) => {}
                Ok(_) => failures.push(format!("F^2 for {cfg}")),
                Err(e) => failures.push(format!("{cfg}: {e}")),
            }
        }
    }
    Outcome::new(&failures, format!("{group_checks} group elements, {op_checks} operators F"))
}

fn criterion3() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (kind, n_dim) in [(FormKind::Symmetric, 2usize), (FormKind::Symmetric, 3), (FormKind::Symmetric, 4), (FormKind::Alternating, 2), (FormKind::Alternating, 4)] {
        for t in straight_tableaux(4) {
            if n_dim.pow(t.n() as u32) > 256 || !validate_label(t.shape().lambda(), group(kind), n_dim).unwrap() {
                continue;
            }
            let cfg = FusionConfig::new(t, kind, n_dim, 0).unwrap();
            checked += 1;
            match verify_prop33(&cfg) {
                Ok(r) if r.pass() => {}
                Ok(r) => failures.push(format!("{cfg}: {r:?}")),
                Err(e) => failures.push(format!("{cfg}: {e}")),
            }
        }
    }
    Outcome::new(&failures, format!("{checked} configurations, image F = image E ∩ traceless and Q F = 0"))
}

fn criterion4(cache: &mut Cache) -> Outcome {
    let mut failures = Vec::new();
    let mut used: HashMap<ClosedFormula, usize> = HashMap::new();
    for cfg in operator_sweep() {
        let general = match cache.f(&cfg) {
            Ok(f) => f,
            Err(e) => {
                failures.push(format!("{cfg}: {e}"));
                continue;
            }
        };
        for formula in ClosedFormula::ALL {
            if formula.applicability(&cfg).is_err() {
                continue;
            }
            *used.entry(formula).or_default() += 1;
            match f_operator_closed(&cfg, formula) {
                Ok(closed) if closed == general => {}
                Ok(_) => failures.push(format!("{formula} differs for {cfg}")),
                Err(e) => failures.push(format!("{formula} for {cfg}: {e}")),
            }
        }
    }
    for formula in ClosedFormula::ALL {
        if !used.contains_key(&formula) {
            failures.push(format!("{formula} never applicable in the sweep"));
        }
    }
    let mut counts: Vec<String> = ClosedFormula::ALL.iter().map(|f| format!("{f}×{}", used.get(f).copied().unwrap_or(0))).collect();
    counts.sort();
    Outcome::new(&failures, format!("agreement with the fusion value: {}", counts.join(", ")))
}

fn criterion5() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for shape in skew_shapes(6, 4) {
        for n_dim in 1..=3 {
            let expected = count_semistandard(&shape, n_dim) as usize;
            for t in standard_tableaux(&shape) {
                checked += 1;
                let r = rank(&e_operator(&t, n_dim).unwrap());
                if r != expected {
                    failures.push(format!("{shape} N={n_dim} [{t}]: rank {r}, expected {expected}"));
                }
            }
        }
    }
    Outcome::new(&failures, format!("{checked} (tableau, N) pairs match the semistandard count"))
}

fn record(checks: &mut Vec<IdentityCheck>, failures: &mut Vec<String>, label: &str, result: Result<Vec<IdentityCheck>, Error>) {
    match result {
        Ok(cs) => {
            for c in cs {
                if !c.verdict || c.samples.len() < c.degree_bound + 1 {
                    failures.push(format!("{label}: {} {:?}", c.name, c.witness));
                }
                checks.push(c);
            }
        }
        Err(e) => failures.push(format!("{label}: {e}")),
    }
}

fn criterion6() -> Outcome {
    let sampling = Sampling::Seeded(DEFAULT_SEED);
    let mut checks = Vec::new();
    let mut failures = Vec::new();
    for (kind, n_dim) in FORMS {
        let form = BilinearForm::standard(kind, n_dim).unwrap();
        for which in YangBaxter::ALL {
            record(&mut checks, &mut failures, &format!("{which} {kind}{n_dim}"), check_yang_baxter_family(which, &form, &sampling).map(|c| vec![c]));
        }
        record(&mut checks, &mut failures, &format!("unitarity {kind}{n_dim}"), check_unitarity(&form, &sampling));
    }
    for z in [vec![int(0)], vec![rat(1, 2)], vec![int(0), int(1)], vec![int(-1), int(1)], vec![rat(1, 3), int(2)]] {
        for n_dim in [2, 3] {
            record(&mut checks, &mut failures, &format!("rtt {z:?}"), check_rtt(&z, n_dim, &sampling).map(|c| vec![c]));
        }
    }
    for shape in skew_shapes(4, 3) {
        for t in standard_tableaux(&shape) {
            for n_dim in [2, 3] {
                for z in [int(0), rat(1, 2)] {
                    record(&mut checks, &mut failures, &format!("intertwiner E [{t}]"), check_intertwiner_e(&t, n_dim, &z, &sampling).map(|c| vec![c]));
                }
            }
        }
    }
    for cfg in operator_sweep() {
        if cfg.slots() <= 3 && cfg.n_dim().pow(cfg.slots() as u32 + 1) <= 256 {
            record(&mut checks, &mut failures, &format!("intertwiner F {cfg}"), check_intertwiner_f(&cfg, &sampling).map(|c| vec![c]));
        }
    }
    for (kind, n_dim) in [(FormKind::Symmetric, 2), (FormKind::Symmetric, 3), (FormKind::Alternating, 2)] {
        let form = BilinearForm::standard(kind, n_dim).unwrap();
        for z in [vec![int(0)], vec![rat(1, 2)], vec![int(0), int(1)], vec![int(-1), int(2)]] {
            record(&mut checks, &mut failures, &format!("reflection {kind}{n_dim} {z:?}"), check_reflection_image(&z, &form, &sampling));
        }
    }
    let samples: usize = checks.iter().map(|c| c.samples.len()).sum();
    Outcome::new(&failures, format!("{} identity checks, {samples} exact samples, seed {DEFAULT_SEED}", checks.len()))
}

fn criterion7() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for m in 0..=4 {
        for mu in Partition::all_of_size(m) {
            count += 1;
            match check_lemma44(&mu, &Sampling::Seeded(DEFAULT_SEED)) {
                Ok(c) if c.verdict && c.samples.len() >= 5 => {}
                Ok(c) => failures.push(format!("{mu}: {:?}", c.witness)),
                Err(e) => failures.push(format!("{mu}: {e}")),
            }
            // every tableau of μ gives the same h
            let x = rat(31, 7);
            let shape = SkewShape::straight(mu.clone());
            let hs: Vec<Rational> = standard_tableaux(&shape).iter().map(|t| h_of(t, &x).unwrap()).collect();
            if hs.windows(2).any(|w| w[0] != w[1]) || &g_mu(&mu, &x).unwrap() * &hs[0] != int(1) {
                failures.push(format!("{mu}: h depends on the tableau"));
            }
        }
    }
    Outcome::new(&failures, format!("{count} partitions, g·h = 1 at ≥ 5 samples, h tableau-independent"))
}

fn criterion8() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (kind, n_dim) in FORMS {
        let form = BilinearForm::standard(kind, n_dim).unwrap();
        for t in straight_tableaux(4) {
            if n_dim.pow(t.n() as u32) > 256 {
                continue;
            }
            for k in 1..t.n() {
                if t.swap(k).is_none() {
                    continue;
                }
                let cfg = FusionConfig::unrestricted(t.clone(), form.clone(), 0).unwrap();
                checked += 1;
                match verify_corollary32(&cfg, k) {
                    Ok(true) => {}
                    Ok(false) => failures.push(format!("{cfg} k={k}")),
                    Err(e) => failures.push(format!("{cfg} k={k}: {e}")),
                }
            }
        }
    }
    Outcome::new(&failures, format!("{checked} admissible (tableau, k, form) triples"))
}

fn criterion9() -> Outcome {
    let mut failures = Vec::new();
    let mut runs = Vec::new();
    let two: Partition = "2".parse().unwrap();
    let two_one: Partition = "2,1".parse().unwrap();
    let mut configs: Vec<(StandardTableau, usize, usize, usize)> = Vec::new();
    for t in standard_tableaux(&SkewShape::straight(two)) {
        for (n, m_dim) in [(2, 1), (1, 2)] {
            configs.push((t.clone(), 1, n, m_dim));
            configs.push((t.clone(), 0, n, m_dim));
        }
    }
    for t in standard_tableaux(&SkewShape::straight(two_one)) {
        configs.push((t.clone(), 1, 2, 2));
        configs.push((t, 0, 2, 2));
    }
    for (t, m, n_dim, m_dim) in configs {
        match verify_theta_factorization(&t, m, n_dim, m_dim, FormKind::Symmetric) {
            Ok(r) if r.pass => runs.push(format!("[{t}] m={m} N={n_dim} M={m_dim} ({} columns)", r.columns_checked)),
            Ok(r) => failures.push(format!("[{t}] m={m} N={n_dim} M={m_dim}: {r:?}")),
            Err(e) => failures.push(format!("[{t}] m={m} N={n_dim} M={m_dim}: {e}")),
        }
    }
    Outcome::new(&failures, format!("{} restrictions factor: {}", runs.len(), runs.join("; ")))
}

fn criterion10(cache: &mut Cache) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut strict = 0;
    for cfg in operator_sweep() {
        let Ok(f) = cache.f(&cfg) else {
            failures.push(format!("{cfg}: no F"));
            continue;
        };
        let (rf, re) = (rank(&f), rank(&e_operator(cfg.tableau(), cfg.n_dim()).unwrap()));
        checked += 1;
        if rf < re {
            strict += 1;
        }
        if rf > re {
            failures.push(format!("{cfg}: rank F {rf} > rank E {re}"));
        }
    }
    Outcome::new(&failures, format!("{checked} configurations, {strict} with strict inequality"))
}

fn main() {
    let mut cache = Cache::default();
    let criteria: Vec<(&str, Box<dyn Fn(&mut Cache) -> Outcome>)> = vec![
        ("fusion consistency", Box::new(criterion1)),
        ("scaled idempotency", Box::new(criterion2)),
        ("traceless image equality", Box::new(|_| criterion3())),
        ("closed-form agreement", Box::new(criterion4)),
        ("rank oracle", Box::new(|_| criterion5())),
        ("identity certificates", Box::new(|_| criterion6())),
        ("g_mu h = 1", Box::new(|_| criterion7())),
        ("exchange relation", Box::new(|_| criterion8())),
        ("restriction factorization", Box::new(|_| criterion9())),
        ("rank monotonicity", Box::new(criterion10)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&mut cache);
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {name}: {} [{} ms]", i + 1, outcome.detail, start.elapsed().as_millis());
        if !outcome.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
