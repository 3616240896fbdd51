//! `fqprog` command line.
//!
//! Every command prints a human-readable report, or with `--json` a single
//! JSON document whose keys are listed on each report type below. Exit codes:
//! 0 pass, 1 verification failure, 2 input error, 3 resource limit.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fqprog::campaign::{random_verify, verify_exhaustive, CampaignConfig, CampaignReport, CAMPAIGN_ORACLE_LIMITS};
use fqprog::structure::to_progression;
use fqprog::text::{parse_biset_file, parse_set_file, parse_space_file};
use fqprog::{
    decompose, dilate_example, entropic_distance, growth_report, uniform_entropy, verify_decomposition, Block,
    DoublingStats, Error, Field, GrowthReport, Poly, PolySet, Subspace, VerificationReport,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "fqprog", version, about = "Subspaces of F_q[t], progression decompositions and sumset diagnostics")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Field as `p^r` (or `p`); used by files without a `field` header.
    #[arg(long, global = true, default_value = "2")]
    field: String,
    /// Modulus coefficients `c0,c1,...,1` for an extension field.
    #[arg(long, global = true)]
    modulus: Option<String>,
    /// Seed for random campaigns.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Size ceiling for enumerations and materialised sets.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap: u64,
    /// Structured output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the span of the generators in a space file.
    Decompose { file: PathBuf },
    /// Decompose and verify every subspace of Pol(n).
    VerifyExhaustive {
        #[arg(long)]
        n: usize,
        /// Also compare with the brute-force structural dimension.
        #[arg(long)]
        oracle: bool,
    },
    /// Decompose and verify seeded random subspaces.
    RandomVerify {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 6)]
        max_dim: usize,
        #[arg(long, default_value_t = 12)]
        max_deg: usize,
        /// Skip the brute-force oracle comparison.
        #[arg(long)]
        no_oracle: bool,
    },
    /// Sizes of A+A, A+tA, A-A and the doubling constants of a set file.
    SumsetStats {
        file: PathBuf,
        /// Also report |nA|.
        #[arg(long)]
        iterate: Option<usize>,
    },
    /// Growth of the set of sums of a_i(t)·u^i, i = 1..n, deg a_i < m, over F_p.
    DilateExample { p: u32, n: usize, m: usize },
    /// Growth of a set of bivariate polynomials under t- and u-dilation.
    Growth { file: PathBuf },
    /// Entropies and entropic distances of uniform distributions on 1 to 3 set files.
    Entropy {
        #[arg(required = true, num_args = 1..=3)]
        files: Vec<PathBuf>,
    },
    /// Greedy covering of B by translates of A - A.
    Cover { a: PathBuf, b: PathBuf },
}

enum Failure {
    Verification(String),
    Input(String),
    Limit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Limit(e.to_string()),
            Error::Invariant(_) => Failure::Verification(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

trait Report: Serialize {
    fn human(&self) -> String;
}

fn emit<R: Report>(r: &R, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(r).expect("serialisable report"));
    } else {
        print!("{}", r.human());
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: fqprog::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn cap(c: &Common) -> usize {
    usize::try_from(c.cap).unwrap_or(usize::MAX)
}

fn field(c: &Common) -> Result<Field, Failure> {
    Ok(Field::from_spec(&c.field, c.modulus.as_deref())?)
}

fn load_set(path: &Path, c: &Common) -> Result<PolySet, Failure> {
    let f = field(c)?;
    let set = with_path(path, parse_set_file(&read(path)?, Some(&f)))?;
    if set.len() > cap(c) {
        return Err(Failure::Limit(format!("{}: {} elements exceed cap {}", path.display(), set.len(), c.cap)));
    }
    Ok(set)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// `decompose --json` keys: `field`, `basis`, `dim`, `weak_dim`, `rank`,
/// `blocks` (`[{d, y}]`), `progression_proper`, `verification`
/// (`ordering_strict`, `sum_direct`, `span_equal`, `rank`, `weak_dim`, `minimal`), `passed`.
#[derive(Serialize)]
struct DecomposeReport {
    field: String,
    basis: Vec<Poly>,
    dim: usize,
    weak_dim: usize,
    rank: usize,
    blocks: Vec<Block>,
    progression_proper: bool,
    verification: VerificationReport,
    passed: bool,
}

impl Report for DecomposeReport {
    fn human(&self) -> String {
        let mut s = format!("field F_{}\n", self.field);
        s += "echelon basis:\n";
        for b in &self.basis {
            s += &format!("  {}\n", b.pretty());
        }
        s += &format!("dim {}  weak_dim {}  rank {}\n", self.dim, self.weak_dim, self.rank);
        s += "blocks:\n";
        for b in &self.blocks {
            s += &format!("  Pol({})·({})\n", b.d, b.y.pretty());
        }
        let v = &self.verification;
        s += &format!(
            "ordering strict: {}\nsum direct: {}\nspan equal: {}\nrank = weak_dim: {}\nproper progression: {}\n{}\n",
            yes(v.ordering_strict),
            yes(v.sum_direct),
            yes(v.span_equal),
            yes(v.minimal),
            yes(self.progression_proper),
            verdict(self.passed)
        );
        s
    }
}

fn cmd_decompose(path: &Path, c: &Common) -> Outcome {
    let f = field(c)?;
    let (f, gens) = with_path(path, parse_space_file(&read(path)?, Some(&f)))?;
    let v = Subspace::span(&f, &gens)?;
    let d = decompose(&v)?;
    let verification = verify_decomposition(&v, &d)?;
    let progression_proper = to_progression(&d, &Poly::zero(&f))?.is_proper();
    let passed = verification.passed() && d.rank() == v.weak_dim();
    let r = DecomposeReport {
        field: f.spec(),
        basis: v.basis().to_vec(),
        dim: v.dim(),
        weak_dim: v.weak_dim(),
        rank: d.rank(),
        blocks: d.blocks().to_vec(),
        progression_proper,
        verification,
        passed,
    };
    emit(&r, c.json);
    Ok(passed)
}

/// `verify-exhaustive --json` and `random-verify --json` keys: `field`,
/// `instances`, `expected_instances` (exhaustive only), `failures`,
/// `oracle_checked`, `oracle_skipped`, `cells` (`[{dim, weak_dim, count}]`),
/// `failure_details` (`[{basis, reason}]`), `passed`, plus `seed`,
/// `max_dim`, `max_deg` for random runs.
#[derive(Serialize)]
struct CampaignOutput {
    #[serde(flatten)]
    report: CampaignReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_deg: Option<usize>,
    passed: bool,
}

impl Report for CampaignOutput {
    fn human(&self) -> String {
        let r = &self.report;
        let mut s = format!("field F_{}\n", r.field);
        if let Some(seed) = self.seed {
            s += &format!("seed {seed}\n");
        }
        s += &format!("instances {}", r.instances);
        if let Some(e) = r.expected_instances {
            s += &format!(" (expected {e})");
        }
        s += &format!("\nfailures {}\n", r.failures);
        s += &format!("oracle checked {} skipped {}\n", r.oracle_checked, r.oracle_skipped);
        s += "dim weak_dim count\n";
        for cell in &r.cells {
            s += &format!("{:>3} {:>8} {:>5}\n", cell.dim, cell.weak_dim, cell.count);
        }
        for fr in &r.failure_details {
            s += &format!("failure: [{}] {}\n", fr.basis.join(" | "), fr.reason);
        }
        s += verdict(self.passed);
        s.push('\n');
        s
    }
}

fn cmd_verify_exhaustive(n: usize, oracle: bool, c: &Common) -> Outcome {
    let f = field(c)?;
    let limits = oracle.then_some(CAMPAIGN_ORACLE_LIMITS);
    let report = verify_exhaustive(&f, n, c.cap as u128, limits.as_ref())?;
    let passed = report.passed();
    emit(
        &CampaignOutput {
            report,
            seed: None,
            max_dim: None,
            max_deg: None,
            passed,
        },
        c.json,
    );
    Ok(passed)
}

fn cmd_random_verify(samples: usize, max_dim: usize, max_deg: usize, no_oracle: bool, c: &Common) -> Outcome {
    if samples > cap(c) {
        return Err(Error::CapExceeded {
            what: "random samples",
            needed: samples as u128,
            cap: c.cap as u128,
        }
        .into());
    }
    let cfg = CampaignConfig {
        field: field(c)?,
        max_dim,
        max_deg,
        samples,
        seed: c.seed,
        oracle: (!no_oracle).then_some(CAMPAIGN_ORACLE_LIMITS),
    };
    let report = random_verify(&cfg);
    let passed = report.passed();
    emit(
        &CampaignOutput {
            report,
            seed: Some(c.seed),
            max_dim: Some(max_dim),
            max_deg: Some(max_deg),
            passed,
        },
        c.json,
    );
    Ok(passed)
}

/// `sumset-stats --json` keys: `field`, `size`, `sum_size`, `dilate_sum_size`,
/// `difference_size`, `k1_num`, `k1_den`, `k2_num`, `k2_den`, and
/// `iterated` (`{n, size}`) when requested.
#[derive(Serialize)]
struct SumsetOutput {
    field: String,
    #[serde(flatten)]
    stats: DoublingStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    iterated: Option<Iterated>,
}

#[derive(Serialize)]
struct Iterated {
    n: usize,
    size: usize,
}

fn ratio(num: u64, den: u64) -> String {
    if den == 1 {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

impl Report for SumsetOutput {
    fn human(&self) -> String {
        let st = &self.stats;
        let mut s = format!(
            "field F_{}\n|A| = {}\n|A+A| = {}\n|A+tA| = {}\n|A-A| = {}\nK_1 = {}\nK_2 = {}\n",
            self.field,
            st.size,
            st.sum_size,
            st.dilate_sum_size,
            st.difference_size,
            ratio(st.k1_num, st.k1_den),
            ratio(st.k2_num, st.k2_den)
        );
        if let Some(it) = &self.iterated {
            s += &format!("|{}A| = {}\n", it.n, it.size);
        }
        s
    }
}

fn cmd_sumset_stats(path: &Path, iterate: Option<usize>, c: &Common) -> Outcome {
    let a = load_set(path, c)?;
    let sq = (a.len() as u128) * (a.len() as u128);
    if sq > c.cap as u128 {
        return Err(Error::CapExceeded {
            what: "sumset pairs",
            needed: sq,
            cap: c.cap as u128,
        }
        .into());
    }
    let stats = a.doubling_stats()?;
    let iterated = match iterate {
        Some(n) => Some(Iterated {
            n,
            size: a.iterated_sumset(n, cap(c))?.len(),
        }),
        None => None,
    };
    emit(
        &SumsetOutput {
            field: a.field().spec(),
            stats,
            iterated,
        },
        c.json,
    );
    Ok(true)
}

/// `dilate-example --json` and `growth --json` keys: `p`, `size`,
/// `t_sum_size`, `u_sum_size`, `k1_num`, `k1_den`, `k2_num`, `k2_den`,
/// `log_k1`, `log_k2`, `log_k1_times_log_k2`, `log_size`,
/// `product_equals_log_size` (null unless every logarithm is an integer),
/// plus `n`, `m`, `expected` (`{size, t_sum_size, u_sum_size}`) and
/// `matches_expected` for `dilate-example`.
#[derive(Serialize)]
struct GrowthOutput {
    #[serde(flatten)]
    growth: GrowthReport,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    example: Option<ExampleInfo>,
}

#[derive(Serialize)]
struct ExampleInfo {
    n: usize,
    m: usize,
    expected: ExpectedSizes,
    matches_expected: bool,
}

#[derive(Serialize)]
struct ExpectedSizes {
    size: u64,
    t_sum_size: u64,
    u_sum_size: u64,
}

impl Report for GrowthOutput {
    fn human(&self) -> String {
        let g = &self.growth;
        let mut s = String::new();
        if let Some(e) = &self.example {
            s += &format!("p = {}, n = {}, m = {}\n", g.p, e.n, e.m);
        }
        s += &format!(
            "|A| = {}\n|A+tA| = {}\n|A+uA| = {}\nK_1 = {}\nK_2 = {}\n",
            g.size,
            g.t_sum_size,
            g.u_sum_size,
            ratio(g.k1_num, g.k1_den),
            ratio(g.k2_num, g.k2_den)
        );
        s += &format!(
            "log_p K_1 · log_p K_2 = {} · {} = {}\nlog_p |A| = {}\n",
            g.log_k1.as_f64(),
            g.log_k2.as_f64(),
            g.log_k1_times_log_k2.as_f64(),
            g.log_size.as_f64()
        );
        match g.product_equals_log_size {
            Some(b) => s += &format!("product equals log_p |A|: {}\n", yes(b)),
            None => s += "product equals log_p |A|: not exact\n",
        }
        if let Some(e) = &self.example {
            s += &format!("matches p^(nm), p^n|A|, p^m|A|: {}\n{}\n", yes(e.matches_expected), verdict(e.matches_expected));
        }
        s
    }
}

fn cmd_dilate_example(p: u32, n: usize, m: usize, c: &Common) -> Outcome {
    let a = dilate_example(p, n, m, cap(c))?;
    let growth = growth_report(&a)?;
    let pow = |e: usize| (p as u64).checked_pow(e as u32);
    let expected = ExpectedSizes {
        size: pow(n * m).unwrap_or(u64::MAX),
        t_sum_size: pow(n * m + n).unwrap_or(u64::MAX),
        u_sum_size: pow(n * m + m).unwrap_or(u64::MAX),
    };
    let matches_expected = growth.size == expected.size
        && growth.t_sum_size == expected.t_sum_size
        && growth.u_sum_size == expected.u_sum_size
        && growth.product_equals_log_size == Some(true);
    emit(
        &GrowthOutput {
            growth,
            example: Some(ExampleInfo {
                n,
                m,
                expected,
                matches_expected,
            }),
        },
        c.json,
    );
    Ok(matches_expected)
}

fn cmd_growth(path: &Path, c: &Common) -> Outcome {
    let f = field(c)?;
    let a = with_path(path, parse_biset_file(&read(path)?, Some(&f)))?;
    if a.len() > cap(c) {
        return Err(Failure::Limit(format!("{} elements exceed cap {}", a.len(), c.cap)));
    }
    let growth = growth_report(&a)?;
    emit(&GrowthOutput { growth, example: None }, c.json);
    Ok(true)
}

/// `entropy --json` keys: `field`, `sets` (`[{file, size, entropy, doubling_log}]`),
/// `distances` (`[{a, b, d}]`, indices into `sets`), `checks`
/// (`{nonnegative, triangle, doubling_bound}`), `passed`. Logarithms are base q.
#[derive(Serialize)]
struct EntropyOutput {
    field: String,
    #[serde(skip)]
    order: u32,
    sets: Vec<SetEntropy>,
    distances: Vec<Distance>,
    checks: EntropyChecks,
    passed: bool,
}

#[derive(Serialize)]
struct SetEntropy {
    file: String,
    size: usize,
    entropy: f64,
    doubling_log: f64,
}

#[derive(Serialize)]
struct Distance {
    a: usize,
    b: usize,
    d: f64,
}

#[derive(Serialize)]
struct EntropyChecks {
    nonnegative: bool,
    triangle: bool,
    doubling_bound: bool,
}

impl Report for EntropyOutput {
    fn human(&self) -> String {
        let mut s = format!("field F_{} (logarithms base {})\n", self.field, self.order);
        for (i, st) in self.sets.iter().enumerate() {
            s += &format!(
                "A{i} = {}: |A| = {}, H(U_A) = {:.9}, log|A+A|/|A| = {:.9}\n",
                st.file, st.size, st.entropy, st.doubling_log
            );
        }
        for d in &self.distances {
            s += &format!("d[A{};A{}] = {:.9}\n", d.a, d.b, d.d);
        }
        s += &format!(
            "nonnegative: {}\ntriangle inequality: {}\nd[A;A] <= log(|A+A|/|A|): {}\n{}\n",
            yes(self.checks.nonnegative),
            yes(self.checks.triangle),
            yes(self.checks.doubling_bound),
            verdict(self.passed)
        );
        s
    }
}

const ENTROPY_TOL: f64 = 1e-9;

fn cmd_entropy(files: &[PathBuf], c: &Common) -> Outcome {
    let sets = files.iter().map(|p| load_set(p, c)).collect::<Result<Vec<_>, _>>()?;
    let f = sets[0].field().clone();
    if sets.iter().any(|s| s.field() != &f) {
        return Err(Error::FieldMismatch.into());
    }
    for s in &sets {
        let pairs = (s.len() as u128) * (sets.iter().map(|t| t.len()).max().unwrap_or(0) as u128);
        if pairs > c.cap as u128 {
            return Err(Error::CapExceeded {
                what: "sumset pairs",
                needed: pairs,
                cap: c.cap as u128,
            }
            .into());
        }
    }
    let base = (f.order() as f64).ln();
    let k = sets.len();
    let mut dist = vec![vec![0.0; k]; k];
    let mut distances = Vec::new();
    for i in 0..k {
        for j in i..k {
            let d = entropic_distance(&sets[i], &sets[j])?;
            dist[i][j] = d;
            dist[j][i] = d;
            distances.push(Distance { a: i, b: j, d });
        }
    }
    let mut entries = Vec::new();
    let mut doubling_bound = true;
    for (i, (s, path)) in sets.iter().zip(files).enumerate() {
        let doubling_log = ((s.sumset(s)?.len() as f64) / s.len() as f64).ln() / base;
        doubling_bound &= dist[i][i] <= doubling_log + ENTROPY_TOL;
        entries.push(SetEntropy {
            file: path.display().to_string(),
            size: s.len(),
            entropy: uniform_entropy(s)?,
            doubling_log,
        });
    }
    let nonnegative = distances.iter().all(|d| d.d >= -ENTROPY_TOL);
    let mut triangle = true;
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                triangle &= dist[i][l] <= dist[i][j] + dist[j][l] + ENTROPY_TOL;
            }
        }
    }
    let passed = nonnegative && triangle && doubling_bound;
    emit(
        &EntropyOutput {
            field: f.spec(),
            order: f.order(),
            sets: entries,
            distances,
            checks: EntropyChecks {
                nonnegative,
                triangle,
                doubling_bound,
            },
            passed,
        },
        c.json,
    );
    Ok(passed)
}

/// `cover --json` keys: `field`, `a_size`, `b_size`, `sum_size`, `cover`
/// (the chosen translates), `cover_size`, `bound` (`|A+B|/|A|` as a float).
#[derive(Serialize)]
struct CoverOutput {
    field: String,
    a_size: usize,
    b_size: usize,
    sum_size: usize,
    cover: Vec<Poly>,
    cover_size: usize,
    bound: f64,
}

impl Report for CoverOutput {
    fn human(&self) -> String {
        let mut s = format!(
            "field F_{}\n|A| = {}, |B| = {}, |A+B| = {}\n|X| = {} <= |A+B|/|A| = {:.4}\nX:\n",
            self.field, self.a_size, self.b_size, self.sum_size, self.cover_size, self.bound
        );
        for x in &self.cover {
            s += &format!("  {}\n", x.pretty());
        }
        s += "B ⊆ A - A + X: yes\nPASS\n";
        s
    }
}

fn cmd_cover(a: &Path, b: &Path, c: &Common) -> Outcome {
    let a = load_set(a, c)?;
    let b = load_set(b, c)?;
    let pairs = (a.len() as u128) * (a.len().max(b.len()) as u128);
    if pairs > c.cap as u128 {
        return Err(Error::CapExceeded {
            what: "sumset pairs",
            needed: pairs,
            cap: c.cap as u128,
        }
        .into());
    }
    let x = a.ruzsa_cover(&b)?;
    let sum_size = a.sumset(&b)?.len();
    emit(
        &CoverOutput {
            field: a.field().spec(),
            a_size: a.len(),
            b_size: b.len(),
            sum_size,
            cover_size: x.len(),
            cover: x.iter().cloned().collect(),
            bound: sum_size as f64 / a.len() as f64,
        },
        c.json,
    );
    Ok(true)
}

fn run(cli: &Cli) -> Outcome {
    let c = &cli.common;
    match &cli.command {
        Command::Decompose { file } => cmd_decompose(file, c),
        Command::VerifyExhaustive { n, oracle } => cmd_verify_exhaustive(*n, *oracle, c),
        Command::RandomVerify {
            samples,
            max_dim,
            max_deg,
            no_oracle,
        } => cmd_random_verify(*samples, *max_dim, *max_deg, *no_oracle, c),
        Command::SumsetStats { file, iterate } => cmd_sumset_stats(file, *iterate, c),
        Command::DilateExample { p, n, m } => cmd_dilate_example(*p, *n, *m, c),
        Command::Growth { file } => cmd_growth(file, c),
        Command::Entropy { files } => cmd_entropy(files, c),
        Command::Cover { a, b } => cmd_cover(a, b, c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Limit(m)) => {
            eprintln!("limit: {m}");
            ExitCode::from(3)
        }
    }
}
