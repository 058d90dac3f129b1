use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use brauer_fusion::exactnum::int;
use brauer_fusion::fusion::{
    certify, e_operator, f_operator_general, max_dim, operator_hash, verify_corollary32, verify_prop33,
    verify_scaled_idempotent, verify_theta_factorization, FusionConfig,
};
use brauer_fusion::rmatrix::{
    check_intertwiner_e, check_intertwiner_f, check_lemma44, check_unitarity, check_yang_baxter_family,
    IdentityCheck, Sampling, YangBaxter, DEFAULT_SEED,
};
use brauer_fusion::shapes::{standard_tableaux, validate_label, Group, Partition, SkewShape, StandardTableau};
use brauer_fusion::symalg::{fusion_e, idempotency_scalar, ConstraintMode};
use brauer_fusion::tensorop::linalg::rank;
use brauer_fusion::tensorop::{BilinearForm, FormKind};
use brauer_fusion::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

const CERTIFICATE_VERSION: &str = "1";

#[derive(Parser)]
#[command(name = "brauer-fusion", version, about = "Exact fusion-procedure symmetrizers and their Brauer analogues")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the standard tableaux of λ/μ with their content sequences.
    Tableaux(ShapeArgs),
    /// Compute the fusion value e_Ω and, with --N, the operator E_Ω.
    Symmetrizer {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value = "row")]
        tableau: TableauChoice,
        #[arg(long = "N")]
        n_dim: Option<usize>,
    },
    /// Compute the operator F_Ω(M) with the general fusion procedure.
    FusionF {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value = "row")]
        tableau: TableauChoice,
        /// Write the operator and its certificate here as JSON.
        #[arg(long)]
        output: Option<String>,
    },
    /// Run verification suites over a size-bounded sweep.
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct ShapeArgs {
    #[arg(long)]
    lambda: String,
    #[arg(long, default_value = "")]
    mu: String,
}

#[derive(Args, Clone)]
struct GroupArgs {
    #[arg(long, default_value = "O")]
    form: String,
    #[arg(long = "N")]
    n_dim: usize,
    #[arg(long = "M", default_value_t = 0)]
    m_dim: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    suite: Vec<Suite>,
    #[arg(long, default_value = "O")]
    form: String,
    #[arg(long = "N", default_value_t = 2)]
    n_dim: usize,
    #[arg(long = "M", default_value_t = 0)]
    m_dim: usize,
    /// Restrict the sweep to this shape.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long, default_value = "")]
    mu: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    max_boxes: usize,
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    output: Option<String>,
    /// Record runtime_ms as 0 so repeated runs are byte-identical.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Suite {
    Idempotency,
    Prop33,
    Corollary32,
    YangBaxter,
    Intertwiners,
    Lemma44,
    ThetaFactorization,
}

#[derive(Clone, Debug)]
enum TableauChoice {
    Row,
    Column,
    /// 1-based position in the list printed by `tableaux`.
    Index(usize),
}

impl FromStr for TableauChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "row" => Ok(TableauChoice::Row),
            "col" | "column" => Ok(TableauChoice::Column),
            _ => s.parse().map(TableauChoice::Index).map_err(|_| format!("expected row, col or an index, got {s:?}")),
        }
    }
}

/// Either a usage error (exit 2) or a failed check (exit 1).
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

#[derive(Serialize)]
struct Entry {
    name: String,
    paper_ref: String,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    runtime_ms: u64,
}

#[derive(Serialize)]
struct Certificate {
    version: &'static str,
    config: serde_json::Value,
    entries: Vec<Entry>,
}

fn parse_shape(args: &ShapeArgs) -> Result<SkewShape, Failure> {
    let lambda: Partition = args.lambda.parse()?;
    let mu: Partition = args.mu.parse()?;
    Ok(SkewShape::new(lambda, mu)?)
}

fn pick_tableau(shape: &SkewShape, choice: &TableauChoice) -> Result<StandardTableau, Failure> {
    match choice {
        TableauChoice::Row => Ok(StandardTableau::row_tableau(shape)),
        TableauChoice::Column => Ok(StandardTableau::column_tableau(shape)),
        TableauChoice::Index(k) => {
            let all = standard_tableaux(shape);
            k.checked_sub(1)
                .and_then(|i| all.get(i).cloned())
                .ok_or_else(|| Failure::Usage(format!("tableau index {k} out of range 1..={}", all.len())))
        }
    }
}

fn parse_form(form: &str, n_dim: usize, m_dim: usize) -> Result<FormKind, Failure> {
    let kind: FormKind = form.parse()?;
    BilinearForm::standard(kind, n_dim)?;
    if m_dim > 0 {
        BilinearForm::standard(kind, m_dim)?;
    }
    Ok(kind)
}

fn group_of(kind: FormKind) -> Group {
    match kind {
        FormKind::Symmetric => Group::O,
        FormKind::Alternating => Group::Sp,
    }
}

fn contents(t: &StandardTableau) -> String {
    t.contents().iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_tableaux(args: &ShapeArgs) -> Result<(), Failure> {
    let shape = parse_shape(args)?;
    let all = standard_tableaux(&shape);
    let mut lines = vec![
        format!("shape {shape}: {} boxes, {} standard tableaux", shape.n(), all.len()),
        format!("row tableau contents: {}", contents(&StandardTableau::row_tableau(&shape))),
        format!("column tableau contents: {}", contents(&StandardTableau::column_tableau(&shape))),
    ];
    lines.extend(all.iter().enumerate().map(|(i, t)| format!("{:>4}  [{t}]  contents {}", i + 1, contents(t))));
    let mut out = std::io::stdout().lock();
    for line in lines {
        // a closed pipe (e.g. `| head`) just ends the listing
        if writeln!(out, "{line}").is_err() {
            break;
        }
    }
    Ok(())
}

fn cmd_symmetrizer(shape: &ShapeArgs, choice: &TableauChoice, n_dim: Option<usize>) -> Result<(), Failure> {
    let t = pick_tableau(&parse_shape(shape)?, choice)?;
    let e = fusion_e(&t, ConstraintMode::Row)?;
    println!("tableau [{t}]");
    println!("terms {}", e.len());
    println!("{e}");
    if let Some(n) = n_dim {
        let op = e_operator(&t, n)?;
        println!("rank of E on (C^{n})^{}: {}", t.n(), rank(&op));
    }
    Ok(())
}

fn cmd_fusion_f(group: &GroupArgs, shape: &ShapeArgs, choice: &TableauChoice, output: Option<&str>) -> Result<(), Failure> {
    let kind = parse_form(&group.form, group.n_dim, group.m_dim)?;
    let t = pick_tableau(&parse_shape(shape)?, choice)?;
    let cfg = FusionConfig::new(t, kind, group.n_dim, group.m_dim)?;
    let f = match f_operator_general(&cfg) {
        Ok(f) => f,
        Err(e @ Error::PoleAtLimit(_)) => return Err(Failure::Check(format!("FATAL {cfg}: {e}"))),
        Err(e) => return Err(e.into()),
    };
    println!("{cfg}");
    println!("rank {}", rank(&f));
    println!("nonzeros {}", f.nnz());
    println!("sha256 {}", operator_hash(&f));
    let operator = serde_json::to_string(&f.to_json()).expect("triplets serialize");
    match output {
        Some(path) => {
            let cert = certify(&cfg)?;
            let doc = serde_json::json!({ "version": CERTIFICATE_VERSION, "certificate": cert, "operator": f.to_json() });
            write_json(path, &doc)?;
            if !cert.pass() {
                return Err(Failure::Check(format!("certificate for {cfg} has failing checks")));
            }
        }
        None => println!("operator {operator}"),
    }
    Ok(())
}

fn write_json(path: &str, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("certificate serializes");
    std::fs::write(path, text + "\n").map_err(|e| Failure::Usage(format!("cannot write {path}: {e}")))
}

/// Work item of a suite: a name, its reference, and a closure producing `(pass, witness)`.
type Job = (String, &'static str, Box<dyn FnOnce() -> (bool, Option<String>) + Send>);

struct Sweep {
    kind: FormKind,
    form: BilinearForm,
    n_dim: usize,
    m_dim: usize,
    shapes: Vec<SkewShape>,
    sampling: Sampling,
}

impl Sweep {
    fn new(args: &VerifyArgs) -> Result<Self, Failure> {
        let kind = parse_form(&args.form, args.n_dim, args.m_dim)?;
        let shapes = match &args.lambda {
            Some(l) => {
                let shape = parse_shape(&ShapeArgs { lambda: l.clone(), mu: args.mu.clone() })?;
                if !validate_label(shape.lambda(), group_of(kind), args.n_dim + args.m_dim)? {
                    return Err(Failure::Usage(format!("{} does not label an irreducible representation", shape.lambda())));
                }
                vec![shape]
            }
            None => (1..=args.max_boxes).flat_map(Partition::all_of_size).map(SkewShape::straight).collect(),
        };
        Ok(Sweep {
            kind,
            form: BilinearForm::standard(kind, args.n_dim)?,
            n_dim: args.n_dim,
            m_dim: args.m_dim,
            shapes,
            sampling: Sampling::Seeded(args.seed),
        })
    }

    fn fits(&self, dim: usize, slots: usize) -> bool {
        dim.checked_pow(slots as u32).is_some_and(|d| d <= max_dim())
    }

    /// Straight tableaux whose shape labels an irreducible representation at `M = 0`.
    fn valid_straight(&self) -> Vec<StandardTableau> {
        self.shapes
            .iter()
            .filter(|s| !s.is_skew() && self.fits(self.n_dim, s.n()))
            .filter(|s| validate_label(s.lambda(), group_of(self.kind), self.n_dim).unwrap_or(false))
            .flat_map(standard_tableaux)
            .collect()
    }

    fn label(&self) -> String {
        format!("{}{}", self.kind, self.n_dim)
    }
}

fn identity_jobs(out: &mut Vec<Job>, prefix: String, run: impl FnOnce() -> brauer_fusion::Result<Vec<IdentityCheck>> + Send + 'static) {
    // identity checks report their own names, so run eagerly inside one job per call
    out.push((prefix, "sampled rational identity", Box::new(move || match run() {
        Ok(checks) => {
            let failed: Vec<String> =
                checks.iter().filter(|c| !c.verdict).map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())).collect();
            let names: Vec<&str> = checks.iter().map(|c| c.name.as_str()).collect();
            if failed.is_empty() {
                (true, None)
            } else {
                (false, Some(format!("{failed:?} of {names:?}")))
            }
        }
        Err(e) => (false, Some(e.to_string())),
    })));
}

fn suite_jobs(suite: Suite, sweep: &Sweep) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    let label = sweep.label();
    match suite {
        Suite::Idempotency => {
            for t in sweep.valid_straight() {
                let scalar = idempotency_scalar(t.shape().lambda());
                let n = sweep.n_dim;
                let kind = sweep.kind;
                jobs.push((
                    format!("idempotency {label} [{t}]"),
                    "F² = (l!/dim U)·F and E² = (l!/dim U)·E",
                    Box::new(move || {
                        let run = || -> brauer_fusion::Result<(bool, bool)> {
                            let cfg = FusionConfig::new(t.clone(), kind, n, 0)?;
                            let e = e_operator(&t, n)?;
                            let f = f_operator_general(&cfg)?;
                            Ok((verify_scaled_idempotent(&e, &scalar), verify_scaled_idempotent(&f, &scalar)))
                        };
                        match run() {
                            Ok((true, true)) => (true, None),
                            Ok((e, f)) => (false, Some(format!("E ok: {e}, F ok: {f}"))),
                            Err(e) => (false, Some(e.to_string())),
                        }
                    }),
                ));
            }
        }
        Suite::Prop33 => {
            for t in sweep.valid_straight() {
                let (n, kind) = (sweep.n_dim, sweep.kind);
                jobs.push((
                    format!("prop33 {label} [{t}]"),
                    "image of F is the traceless part of the image of E",
                    Box::new(move || match FusionConfig::new(t, kind, n, 0).and_then(|cfg| verify_prop33(&cfg)) {
                        Ok(r) if r.pass() => (true, None),
                        Ok(r) => (false, Some(format!("{r:?}"))),
                        Err(e) => (false, Some(e.to_string())),
                    }),
                ));
            }
        }
        Suite::Corollary32 => {
            for shape in sweep.shapes.iter().filter(|s| !s.is_skew() && sweep.fits(sweep.n_dim, s.n())) {
                for t in standard_tableaux(shape) {
                    for k in (1..t.n()).filter(|&k| t.swap(k).is_some()) {
                        let (t, form) = (t.clone(), sweep.form.clone());
                        jobs.push((
                            format!("corollary32 {label} [{t}] k={k}"),
                            "exchange relation for adjacent standard tableaux",
                            Box::new(move || match FusionConfig::unrestricted(t, form, 0).and_then(|cfg| verify_corollary32(&cfg, k)) {
                                Ok(pass) => (pass, None),
                                Err(e) => (false, Some(e.to_string())),
                            }),
                        ));
                    }
                }
            }
        }
        Suite::YangBaxter => {
            for which in YangBaxter::ALL {
                let (form, sampling) = (sweep.form.clone(), sweep.sampling.clone());
                identity_jobs(&mut jobs, format!("yang-baxter {label} {which}"), move || {
                    check_yang_baxter_family(which, &form, &sampling).map(|c| vec![c])
                });
            }
            let (form, sampling) = (sweep.form.clone(), sweep.sampling.clone());
            identity_jobs(&mut jobs, format!("yang-baxter {label} unitarity"), move || check_unitarity(&form, &sampling));
        }
        Suite::Intertwiners => {
            for shape in &sweep.shapes {
                for t in standard_tableaux(shape) {
                    if !sweep.fits(sweep.n_dim, t.n() + 1) {
                        continue;
                    }
                    let (n, sampling) = (sweep.n_dim, sweep.sampling.clone());
                    let t2 = t.clone();
                    identity_jobs(&mut jobs, format!("intertwiners E N={n} [{t}]"), move || {
                        check_intertwiner_e(&t2, n, &int(0), &sampling).map(|c| vec![c])
                    });
                    let cfg = FusionConfig::new(t.clone(), sweep.kind, sweep.n_dim, sweep.m_dim);
                    if let Ok(cfg) = cfg {
                        let sampling = sweep.sampling.clone();
                        identity_jobs(&mut jobs, format!("intertwiners F {label} M={} [{t}]", sweep.m_dim), move || {
                            check_intertwiner_f(&cfg, &sampling).map(|c| vec![c])
                        });
                    }
                }
            }
        }
        Suite::Lemma44 => {
            let mut seen = std::collections::BTreeSet::new();
            for shape in &sweep.shapes {
                for m in 0..=shape.n() {
                    for mu in Partition::all_of_size(m) {
                        if !seen.insert(mu.clone()) {
                            continue;
                        }
                        let sampling = sweep.sampling.clone();
                        identity_jobs(&mut jobs, format!("lemma44 mu={mu}"), move || check_lemma44(&mu, &sampling).map(|c| vec![c]));
                    }
                }
            }
        }
        Suite::ThetaFactorization => {
            let total = sweep.n_dim + sweep.m_dim;
            for shape in sweep.shapes.iter().filter(|s| !s.is_skew()) {
                if !validate_label(shape.lambda(), group_of(sweep.kind), total).unwrap_or(false)
                    || total.pow(shape.n() as u32) > 1000
                {
                    continue;
                }
                for t in standard_tableaux(shape) {
                    for m in 0..t.n() {
                        let (t, n, mm, kind) = (t.clone(), sweep.n_dim, sweep.m_dim, sweep.kind);
                        jobs.push((
                            format!("theta-factorization {kind} N={n} M={mm} [{t}] m={m}"),
                            "restriction of F to the traceless part factors as E ⊗ F",
                            Box::new(move || match verify_theta_factorization(&t, m, n, mm, kind) {
                                Ok(r) => (r.pass, if r.pass { None } else { Some(format!("{r:?}")) }),
                                Err(e) => (false, Some(e.to_string())),
                            }),
                        ));
                    }
                }
            }
        }
    }
    jobs
}

fn run_jobs(jobs: Vec<Job>, timings: bool) -> Vec<Entry> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len().max(1));
    let queue = std::sync::Mutex::new(jobs);
    let results = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let Some((name, paper_ref, job)) = queue.lock().unwrap().pop() else { break };
                let start = Instant::now();
                let (pass, witness) = job();
                let runtime_ms = if timings { start.elapsed().as_millis() as u64 } else { 0 };
                results.lock().unwrap().push(Entry { name, paper_ref: paper_ref.to_string(), pass, witness, runtime_ms });
            });
        }
    });
    let mut entries = results.into_inner().unwrap();
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    entries
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let sweep = Sweep::new(args)?;
    let mut suites = args.suite.clone();
    suites.sort();
    suites.dedup();
    let jobs: Vec<Job> = suites.iter().flat_map(|&s| suite_jobs(s, &sweep)).collect();
    let entries = run_jobs(jobs, !args.no_timings);
    let config = serde_json::json!({
        "suite": suites.iter().map(|s| s.to_possible_value().unwrap().get_name().to_string()).collect::<Vec<_>>(),
        "form": sweep.kind.to_string(),
        "N": args.n_dim,
        "M": args.m_dim,
        "lambda": args.lambda,
        "mu": args.mu,
        "seed": args.seed,
        "max_boxes": args.max_boxes,
    });
    let failed = entries.iter().filter(|e| !e.pass).count();
    let total = entries.len();
    let table: Vec<String> = entries
        .iter()
        .map(|e| format!("{} {}{}", if e.pass { "PASS" } else { "FAIL" }, e.name, e.witness.as_ref().map_or(String::new(), |w| format!(": {w}"))))
        .collect();
    let cert = Certificate { version: CERTIFICATE_VERSION, config, entries };
    match &args.output {
        Some(path) => {
            write_json(path, &cert)?;
            table.iter().for_each(|l| println!("{l}"));
        }
        None => {
            table.iter().for_each(|l| eprintln!("{l}"));
            println!("{}", serde_json::to_string_pretty(&cert).expect("certificate serializes"));
        }
    }
    eprintln!("{} of {total} checks passed", total - failed);
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} check(s) failed")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Tableaux(shape) => cmd_tableaux(shape),
        Command::Symmetrizer { shape, tableau, n_dim } => cmd_symmetrizer(shape, tableau, *n_dim),
        Command::FusionF { group, shape, tableau, output } => cmd_fusion_f(group, shape, tableau, output.as_deref()),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
