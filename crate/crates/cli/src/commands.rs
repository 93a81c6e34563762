//! Subcommand definitions and their drivers.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use koblab_core::catalog::{exact_kobayashi_disc, CatalogName, ExactKobayashiParams, YuDisc};
use koblab_core::holo::BoundaryGrid;
use koblab_core::metrics::{
    closed_form_estimate, degree_sweep, upper_bound_search, verify_jet, DiscFamily, JetReport, JetTarget, SearchConfig,
    SweepRow, WitnessRecord,
};
use koblab_core::schwarz::{run_suite, Lemma, SampleRow, SuiteConfig, SuiteSummary};
use koblab_core::stationarity::{
    check_stationary, verify_k_stationary_with, StationarityConfig, StationarityReport, StationarityVerdict,
};
use koblab_core::{c64, contains_disc, AnalyticDisc, ContainmentReport, MetricEstimate, ModelDomain, Verdict};
use serde::{Deserialize, Serialize};

use crate::checks::{run_checks, PaperReport, SuiteOptions};
use crate::config::{parse_range, parse_vector, FileConfig, Format, RunConfig, TargetEcho};
use crate::error::{CliError, EXIT_CHECK_FAILED, EXIT_PASS};
use crate::output::{to_csv, to_json, write_text};

#[derive(Parser, Debug)]
#[command(name = "koblab", version, about = "Higher-order Kobayashi metric bounds, certificates and checks")]
pub struct Cli {
    /// TOML file with default settings; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the anchored check suite.
    VerifyPaper(VerifyArgs),
    /// Certified upper bound for K^k at one target.
    Estimate(EstimateArgs),
    /// Parameter sweeps (CSV by default).
    #[command(subcommand)]
    Sweep(SweepCommand),
    /// Property suite for the higher-order Schwarz lemmas.
    Schwarz(SchwarzArgs),
    /// Weight solve for k-stationarity of a catalog map.
    Stationarity(StationarityArgs),
    /// Catalog discs.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Args, Debug, Clone, Default)]
pub struct GridArgs {
    /// Points per circle (power of two ≥ 8).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Comma-separated increasing radii in (0, 1].
    #[arg(long, value_delimiter = ',')]
    pub ladder: Option<Vec<f64>>,
    #[arg(long)]
    pub margin: Option<f64>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SearchArgs {
    /// Monomials beyond ζ^k (default 20k).
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub stages: Option<usize>,
    /// L-BFGS iterations per stage.
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long, value_parser = parse_family)]
    pub family: Option<DiscFamily>,
    /// Catalog discs certified and used as starting incumbents.
    #[arg(long, value_name = "NAME")]
    pub warm: Vec<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct TargetArgs {
    /// unit_disc, punctured_disc, polydisc[:n], yu_domain, ellipsoid:<m>, half_plane
    #[arg(long)]
    pub domain: Option<String>,
    /// Base point, e.g. `0,0,-1` or `0.3+0.1i`.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Comma-separated check ids.
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<String>>,
    /// Offset for the suite's sample seeds.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Corrupt the inputs of these checks (test hook).
    #[arg(long, value_delimiter = ',', hide = true)]
    pub inject: Vec<String>,
}

#[derive(Args, Debug)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Use the closed form (unit and punctured disc) instead of searching.
    #[arg(long)]
    pub closed_form: bool,
}

#[derive(Subcommand, Debug)]
pub enum SweepCommand {
    /// Upper bound against search degree N, warm-starting each degree.
    Degree(SweepDegreeArgs),
    /// Feasibility of the exact-value construction over a (t, |b|/|a|) grid.
    Feasibility(SweepFeasibilityArgs),
}

#[derive(Args, Debug)]
pub struct SweepDegreeArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_delimiter = ',', required = true)]
    pub degrees: Vec<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct SweepFeasibilityArgs {
    /// start:end:count inside (0, 1).
    #[arg(long)]
    pub t: String,
    /// start:end:count of |b|/|a| ≥ 0.
    #[arg(long)]
    pub ratio: String,
    /// Also run the containment check on every accepted disc.
    #[arg(long)]
    pub certify: bool,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Args, Debug)]
pub struct SchwarzArgs {
    #[arg(long, value_parser = parse_lemma)]
    pub lemma: Lemma,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Base point ζ₀ for the Pick form.
    #[arg(long, allow_hyphen_values = true)]
    pub base: Option<String>,
    #[arg(long)]
    pub max_factors: Option<usize>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Per-sample rows go here as CSV.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct StationarityArgs {
    /// Catalog name, e.g. `ellipsoid-k1:m=0.3,seed=7`.
    #[arg(long)]
    pub map: String,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub grid: Option<usize>,
    /// Highest Fourier mode of the weight.
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Weight samples c(e^{iθ}) go here as CSV.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    /// Resolve, certify and print a catalog disc.
    Show(CatalogShowArgs),
    /// Known catalog names.
    List,
}

#[derive(Args, Debug)]
pub struct CatalogShowArgs {
    pub name: String,
    /// Compose with ζ^k.
    #[arg(long)]
    pub lift: Option<usize>,
    /// Apply the odd-order lift this many times.
    #[arg(long, default_value_t = 0)]
    pub odd_lift: usize,
    /// Taylor coefficients printed per component.
    #[arg(long)]
    pub degree: Option<usize>,
    #[command(flatten)]
    pub grid: GridArgs,
}

fn parse_lemma(s: &str) -> Result<Lemma, String> {
    s.parse()
}

fn parse_family(s: &str) -> Result<DiscFamily, String> {
    match s {
        "affine" => Ok(DiscFamily::Affine),
        "herglotz" => Ok(DiscFamily::Herglotz),
        _ => Err(format!("unknown family '{s}' (expected affine or herglotz)")),
    }
}

/// Shared state of one invocation.
struct Ctx {
    cfg: RunConfig,
    file: FileConfig,
}

impl Ctx {
    fn new(cli: &Cli, command: &str, default_format: Format) -> Result<Self, CliError> {
        let file = match &cli.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let mut cfg = RunConfig::new(command, &file);
        cfg.format = cli.format.or(file.format).unwrap_or(default_format);
        if cli.output.is_some() {
            cfg.output = cli.output.clone();
        }
        Ok(Self { cfg, file })
    }

    fn grid(&mut self, g: &GridArgs) {
        if let Some(x) = g.grid {
            self.cfg.grid = x;
        }
        if let Some(x) = &g.ladder {
            self.cfg.ladder = x.clone();
        }
        if let Some(x) = g.margin {
            self.cfg.margin = x;
        }
    }

    fn search(&mut self, s: &SearchArgs) {
        self.cfg.degree = s.degree.or(self.cfg.degree);
        self.cfg.restarts = s.restarts.or(self.cfg.restarts);
        self.cfg.stages = s.stages.or(self.cfg.stages);
        self.cfg.iterations = s.iterations.or(self.cfg.iterations);
    }

    fn seed(&mut self, seed: Option<u64>) {
        self.cfg.seed = seed.or(self.cfg.seed);
    }

    fn target(&mut self, t: &TargetArgs) -> Result<(ModelDomain, JetTarget), CliError> {
        let name = t.domain.clone().or(self.file.domain.clone()).unwrap_or_else(|| "yu_domain".into());
        let domain: ModelDomain = name.parse()?;
        let k = t.k.or(self.file.k);
        let target = match (&t.p, domain) {
            (None, ModelDomain::YuDomain) => {
                let yu = YuDisc::target();
                let v = t.v.as_deref().map(parse_vector).transpose()?.unwrap_or(yu.v.clone());
                JetTarget::new(yu.p, v, k.unwrap_or(yu.k))?
            }
            (None, _) => return Err(CliError::usage(format!("--p is required on {domain}"))),
            (Some(p), _) => {
                let p = parse_vector(p)?;
                let v = match &t.v {
                    Some(v) => parse_vector(v)?,
                    None => {
                        let mut e = vec![c64(0.0, 0.0); p.len()];
                        e[0] = c64(1.0, 0.0);
                        e
                    }
                };
                JetTarget::new(p, v, k.unwrap_or(1))?
            }
        };
        target.check_interior(&domain)?;
        self.cfg.domain = Some(domain.id());
        self.cfg.target = Some(TargetEcho { p: target.p.clone(), v: target.v.clone(), k: target.k });
        Ok((domain, target))
    }

    fn search_config(&self, family: Option<DiscFamily>) -> Result<SearchConfig, CliError> {
        let d = SearchConfig::default();
        let cfg = SearchConfig {
            degree: self.cfg.degree,
            restarts: self.cfg.restarts.unwrap_or(d.restarts),
            stages: self.cfg.stages.unwrap_or(d.stages),
            iterations: self.cfg.iterations.unwrap_or(d.iterations),
            seed: self.cfg.require_seed()?,
            family,
            containment: self.cfg.containment()?,
            ..d
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn emit_json<T: Serialize>(&self, record: &T) -> Result<(), CliError> {
        write_text(self.cfg.output.as_deref(), &to_json(record)?)
    }

    /// JSON `record` or CSV `rows`, depending on `--format`.
    fn emit<T: Serialize, R: Serialize>(&self, record: &T, rows: &[R]) -> Result<(), CliError> {
        match self.cfg.format {
            Format::Json => self.emit_json(record),
            Format::Csv => write_text(self.cfg.output.as_deref(), &to_csv(rows)?),
        }
    }
}

fn warm_discs(names: &[String]) -> Result<Vec<AnalyticDisc>, CliError> {
    names.iter().map(|n| Ok(CatalogName::parse(n)?.resolve()?.disc)).collect()
}

fn status(passed: bool) -> i32 {
    if passed {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    }
}

/// Run a parsed command line; returns the exit code on success.
pub fn run(cli: &Cli) -> Result<i32, CliError> {
    match &cli.command {
        Command::VerifyPaper(a) => verify_paper(cli, a),
        Command::Estimate(a) => estimate(cli, a),
        Command::Sweep(SweepCommand::Degree(a)) => sweep_degree(cli, a),
        Command::Sweep(SweepCommand::Feasibility(a)) => sweep_feasibility(cli, a),
        Command::Schwarz(a) => schwarz(cli, a),
        Command::Stationarity(a) => stationarity(cli, a),
        Command::Catalog(CatalogCommand::Show(a)) => catalog_show(cli, a),
        Command::Catalog(CatalogCommand::List) => catalog_list(cli),
    }
}

fn verify_paper(cli: &Cli, a: &VerifyArgs) -> Result<i32, CliError> {
    let mut ctx = Ctx::new(cli, "verify-paper", Format::Json)?;
    ctx.grid(&a.grid);
    ctx.seed(a.seed);
    ctx.cfg.validate()?;
    let opts = SuiteOptions { containment: ctx.cfg.containment()?, seed: ctx.cfg.seed.unwrap_or(0), inject: a.inject.clone() };
    let checks = run_checks(&opts, a.only.as_deref())?;
    let report = PaperReport::new(ctx.cfg.clone(), checks);
    ctx.emit(&report, &report.checks)?;
    Ok(status(report.passed))
}

/// Flat form of an estimate for `--format csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRow {
    pub domain: String,
    pub k: usize,
    pub value: f64,
    pub kind: String,
    pub seed: Option<u64>,
}

fn estimate(cli: &Cli, a: &EstimateArgs) -> Result<i32, CliError> {
    let mut ctx = Ctx::new(cli, "estimate", Format::Json)?;
    ctx.grid(&a.grid);
    ctx.search(&a.search);
    ctx.seed(a.seed);
    ctx.cfg.validate()?;
    let (domain, target) = ctx.target(&a.target)?;
    let est: MetricEstimate = if a.closed_form {
        closed_form_estimate(&domain, &target)?
    } else {
        let cfg = ctx.search_config(a.search.family)?;
        upper_bound_search(&domain, &target, &cfg, &warm_discs(&a.search.warm)?)?.estimate
    };
    let row = EstimateRow {
        domain: est.domain.id(),
        k: est.k,
        value: est.value,
        kind: serde_json::to_value(est.kind)?.as_str().unwrap_or_default().to_string(),
        seed: est.seed,
    };
    ctx.emit(&est, &[row])?;
    Ok(EXIT_PASS)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport<R> {
    pub config: RunConfig,
    pub rows: Vec<R>,
}

fn sweep_degree(cli: &Cli, a: &SweepDegreeArgs) -> Result<i32, CliError> {
    let mut ctx = Ctx::new(cli, "sweep-degree", Format::Csv)?;
    ctx.grid(&a.grid);
    ctx.search(&a.search);
    ctx.seed(a.seed);
    ctx.cfg.validate()?;
    if a.degrees.is_empty() {
        return Err(CliError::usage("--degrees is empty"));
    }
    let (domain, target) = ctx.target(&a.target)?;
    let cfg = ctx.search_config(a.search.family)?;
    let rows: Vec<SweepRow> =
        degree_sweep(&domain, &target, &a.degrees, &cfg, &warm_discs(&a.search.warm)?)?.into_iter().map(|(r, _)| r).collect();
    ctx.emit(&SweepReport { config: ctx.cfg.clone(), rows: rows.clone() }, &rows)?;
    Ok(EXIT_PASS)
}

/// One `(t, |b|/|a|)` grid point: the closed-form condition against what
/// the constructor accepts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityRow {
    pub t: f64,
    pub ratio: f64,
    /// `(2/√t) min{2π, log(1 + 2t^{1/4})}`, compared with `ratio³`.
    pub bound: f64,
    pub condition: bool,
    pub constructed: bool,
    pub agree: bool,
    /// `max ρ∘f` on the outer ladder radius, with `--certify`.
    pub max_rho: Option<f64>,
}

fn sweep_feasibility(cli: &Cli, a: &SweepFeasibilityArgs) -> Result<i32, CliError> {
    let mut ctx = Ctx::new(cli, "sweep-feasibility", Format::Csv)?;
    ctx.grid(&a.grid);
    ctx.cfg.validate()?;
    let ts = parse_range(&a.t)?;
    let ratios = parse_range(&a.ratio)?;
    if ts.iter().any(|t| !(*t > 0.0 && *t < 1.0)) {
        return Err(CliError::usage("--t values must lie in (0, 1)"));
    }
    if ratios.iter().any(|r| *r < 0.0) {
        return Err(CliError::usage("--ratio values must be non-negative"));
    }
    let containment = ctx.cfg.containment()?;
    let mut rows = Vec::with_capacity(ts.len() * ratios.len());
    for &t in &ts {
        for &ratio in &ratios {
            let abs_a = 1.0 / (1.0 + ratio * ratio).sqrt();
            let params = ExactKobayashiParams { t, a: c64(abs_a, 0.0), b: c64(ratio * abs_a, 0.0) };
            let bound = ExactKobayashiParams::ratio_bound(t);
            let condition = ratio.powi(3) <= bound;
            let built = exact_kobayashi_disc(params).ok();
            let max_rho = match (&built, a.certify) {
                (Some(d), true) => Some(contains_disc(&ModelDomain::YuDomain, &d.disc, &containment)?.outer_max_rho()),
                _ => None,
            };
            let constructed = built.is_some();
            rows.push(FeasibilityRow { t, ratio, bound, condition, constructed, agree: condition == constructed, max_rho });
        }
    }
    let passed = rows.iter().all(|r| r.agree && r.max_rho.is_none_or(|m| m < -containment.margin));
    ctx.emit(&SweepReport { config: ctx.cfg.clone(), rows: rows.clone() }, &rows)?;
    Ok(status(passed))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchwarzRecord {
    pub config: RunConfig,
    pub summary: SuiteSummary,
    pub passed: bool,
}

fn schwarz(cli: &Cli, a: &SchwarzArgs) -> Result<i32, CliError> {
    let mut ctx = Ctx::new(cli, "schwarz", Format::Json)?;
    ctx.seed(a.seed);
    ctx.cfg.tolerance = a.tolerance.or(ctx.cfg.tolerance);
    ctx.cfg.validate()?;
    let seed = ctx.cfg.require_seed()?;
    let k = a.k.or(ctx.file.k).unwrap_or(1);
    let samples = a.samples.or(ctx.file.samples).unwrap_or(1000);
    if k == 0 || samples == 0 {
        return Err(CliError::usage("--k and --samples must be positive"));
    }
    let mut cfg = SuiteConfig::new(a.lemma, k, samples, seed);
    if let Some(b) = &a.base {
        if a.lemma != Lemma::Pick {
            return Err(CliError::usage("--base applies to --lemma pick only"));
        }
        let base = koblab_core::catalog::parse_complex(b)?;
        if !(base.norm() < 1.0) {
            return Err(CliError::usage("--base must lie in the unit disc"));
        }
        cfg = cfg.with_base(base);
    }
    if let Some(m) = a.max_factors {
        cfg.max_factors = m;
    }
    if let Some(t) = ctx.cfg.tolerance {
        cfg.tolerance = t;
    }
    let (summary, rows) = run_suite(&cfg)?;
    if let Some(path) = &a.csv {
        write_text(Some(path), &to_csv::<SampleRow>(&rows)?)?;
    }
    let record = SchwarzRecord { config: ctx.cfg.clone(), passed: summary.passed(), summary };
    ctx.emit(&record, &rows)?;
    Ok(status(record.passed))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationarityRecord {
    pub config: RunConfig,
    pub map: String,
    /// The weight samples are left out here; see `--csv`.
    pub report: StationarityReport,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightRow {
    pub index: usize,
    pub theta: f64,
    pub c: f64,
}

fn stationarity(cli: &Cli, a: &StationarityArgs) -> Result<i32, CliError> {
    let mut ctx = Ctx::new(cli, "stationarity", Format::Json)?;
    if let Some(g) = a.grid {
        ctx.cfg.grid = g;
    }
    ctx.cfg.validate()?;
    let k = a.k.or(ctx.file.k).unwrap_or(1);
    let cutoff = a.cutoff.or(ctx.file.cutoff);
    let name = CatalogName::parse(&a.map)?;
    let cfg = StationarityConfig { grid: ctx.cfg.grid, cutoff, containment: ctx.cfg.containment()? };
    let mut report = match &name.entry {
        koblab_core::catalog::CatalogEntry::EllipsoidK1(p) => verify_k_stationary_with(p, k, false, &cfg)?,
        koblab_core::catalog::CatalogEntry::EllipsoidK1Perturbed(p) => verify_k_stationary_with(p, k, true, &cfg)?,
        _ => {
            let item = name.resolve()?;
            check_stationary(&item.domain, &item.disc.compose_power(k), k, 1, &cfg)?
        }
    };
    let thetas = BoundaryGrid::nodes(report.weight.len(), 1.0);
    let rows: Vec<WeightRow> = report
        .weight
        .iter()
        .zip(&thetas)
        .enumerate()
        .map(|(index, (&c, z))| WeightRow { index, theta: z.arg().rem_euclid(std::f64::consts::TAU), c })
        .collect();
    if let Some(path) = &a.csv {
        write_text(Some(path), &to_csv(&rows)?)?;
    }
    report.weight.clear();
    ctx.cfg.domain = Some(name.resolve()?.domain.id());
    let passed = report.verdict == StationarityVerdict::Stationary;
    let record = StationarityRecord { config: ctx.cfg.clone(), map: name.entry.to_string(), report, passed };
    ctx.emit(&record, &rows)?;
    Ok(status(passed))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub config: RunConfig,
    pub name: String,
    pub domain: ModelDomain,
    pub target: TargetEcho,
    pub r: f64,
    /// `1/r`, the certified upper bound.
    pub bound: f64,
    pub exact_value: Option<f64>,
    pub jet: JetReport,
    pub containment: ContainmentReport,
    pub witness: WitnessRecord,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub name: String,
    pub domain: String,
    pub k: usize,
    pub r: f64,
    pub bound: f64,
    pub max_rho: f64,
    pub passed: bool,
}

fn catalog_show(cli: &Cli, a: &CatalogShowArgs) -> Result<i32, CliError> {
    let mut ctx = Ctx::new(cli, "catalog-show", Format::Json)?;
    ctx.grid(&a.grid);
    ctx.cfg.validate()?;
    let item = CatalogName::parse(&a.name)?.with_lift(a.lift).with_odd_lifts(a.odd_lift).resolve()?;
    let containment = contains_disc(&item.domain, &item.disc, &ctx.cfg.containment()?)?;
    let jet = verify_jet(&item.disc, &item.target)?;
    let witness = WitnessRecord::from_disc(&item.disc, a.degree.unwrap_or(item.target.k + 8))?;
    let passed = containment.verdict != Verdict::Violated && jet.satisfied(1e-9);
    let target = TargetEcho { p: item.target.p.clone(), v: item.target.v.clone(), k: item.target.k };
    ctx.cfg.domain = Some(item.domain.id());
    ctx.cfg.target = Some(target.clone());
    let row = CatalogRow {
        name: item.name.clone(),
        domain: item.domain.id(),
        k: item.target.k,
        r: item.r,
        bound: 1.0 / item.r,
        max_rho: containment.outer_max_rho(),
        passed,
    };
    let record = CatalogRecord {
        config: ctx.cfg.clone(),
        name: item.name,
        domain: item.domain,
        target,
        r: item.r,
        bound: 1.0 / item.r,
        exact_value: item.exact_value,
        jet,
        containment,
        witness,
        passed,
    };
    ctx.emit(&record, &[row])?;
    Ok(status(passed))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntryRow {
    pub name: String,
    pub example: String,
}

fn catalog_list(cli: &Cli) -> Result<i32, CliError> {
    let ctx = Ctx::new(cli, "catalog-list", Format::Json)?;
    let rows: Vec<CatalogEntryRow> = [
        ("yu-simple", "yu-simple"),
        ("yu-optimal", "yu-optimal"),
        ("yu-param:<α>,<β>", "yu-param:1.5,3"),
        ("exact-kob:<t>,<a>,<b>", "exact-kob:0.5,0.8,0.6"),
        ("ellipsoid-k1:m=<m>,seed=<n>", "ellipsoid-k1:m=0.3,seed=7"),
        ("ellipsoid-k1:m=<m>,a1=..,a2=..,alpha0=..,alpha1=..,alpha2=..,r1=0|1,r2=0|1", "ellipsoid-k1:m=0.3"),
        ("ellipsoid-k1-perturbed:<as ellipsoid-k1>", "ellipsoid-k1-perturbed:m=0.3,seed=7"),
    ]
    .into_iter()
    .map(|(n, e)| CatalogEntryRow { name: n.into(), example: e.into() })
    .collect();
    ctx.emit(&rows, &rows)?;
    Ok(EXIT_PASS)
}
