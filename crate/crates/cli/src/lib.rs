//! `weno-lab`: command-line front end for the reconstruction laboratory.
//!
//! Every option can come from a flag, from `WENO_LAB_THREADS` (threads only)
//! or from a `key = value` config file; flags win over the environment, which
//! wins over the file. Keys are the long flag names without the dashes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;
use weno_core::advect1d::{convergence_csv, convergence_study, AdvectionProblem, ConvergenceRow};
use weno_core::euler1d::{make_reference, run_problem, Averaging, EulerProblem1D};
use weno_core::euler2d::io::{fields_csv as fields_csv_2d, write_binary};
use weno_core::euler2d::{
    diagonal_asymmetry, run_problem_2d, variant_experiment, EulerProblem2D, Problem2DKind, VariantOutcome,
    VariantRequest,
};
use weno_core::{SchemeSpec, WenoError};

pub mod selftest;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_BLOWUP: u8 = 2;
pub const EXIT_SELFTEST: u8 = 3;

/// Grids of the critical-point study.
pub const TABLE2_GRIDS: [usize; 7] = [10, 20, 40, 80, 160, 320, 640];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config {path}:{line}: {msg}")]
    Config { path: String, line: usize, msg: String },
    #[error(transparent)]
    Core(#[from] WenoError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(name = "weno-lab", version, about = "Third-order WENO-Z reconstruction laboratory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandLine,
}

#[derive(Debug, Subcommand)]
pub enum CommandLine {
    /// Scalar advection grid-convergence study.
    Convergence(Options),
    /// One-dimensional Euler problem.
    Euler1d(Options),
    /// Two-dimensional Euler problem.
    Euler2d(Options),
    /// τ / β₁ robustness experiment on the double Mach reflection.
    VariantExp(Options),
    /// Randomized property checks of the weight kernels.
    KernelsSelftest(Options),
}

/// Raw option values; validated and typed by [`parse_config`].
#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Scheme name with optional parameters, e.g. `es2` or `z3:tau=tau4`.
    #[arg(long)]
    pub scheme: Option<String>,
    /// Named experiment: table2, plain-sine, strong-shock, blast, shu-osher,
    /// riemann2d, dmr.
    #[arg(long)]
    pub case: Option<String>,
    /// Multiplier applied to the default grid.
    #[arg(long, value_name = "X")]
    pub grid_scale: Option<String>,
    /// Output directory for CSV tables and field dumps.
    #[arg(long, value_name = "DIR")]
    pub out: Option<String>,
    /// `key = value` file supplying defaults for any option.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, value_name = "N", env = "WENO_LAB_THREADS")]
    pub threads: Option<String>,
    /// Write final fields (needs --out).
    #[arg(long)]
    pub dump_fields: bool,
    #[arg(long)]
    pub seed: Option<String>,
    /// Comma-separated, strictly doubling grid sizes.
    #[arg(long)]
    pub grids: Option<String>,
    #[arg(long)]
    pub cfl: Option<String>,
    #[arg(long)]
    pub dt: Option<String>,
    #[arg(long)]
    pub t_final: Option<String>,
    /// Fine grid size of a JS5 reference solution (1D only).
    #[arg(long, value_name = "N")]
    pub reference: Option<String>,
    /// Eigenvector averaging: roe or arithmetic.
    #[arg(long)]
    pub averaging: Option<String>,
    /// τ candidate of a single variant (with --beta1).
    #[arg(long)]
    pub tau: Option<String>,
    /// β₁ extension of a single variant: star:<c> or alt:<c>.
    #[arg(long)]
    pub beta1: Option<String>,
    /// Random windows per check in kernels-selftest.
    #[arg(long)]
    pub samples: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Convergence,
    Euler1d,
    Euler2d,
    VariantExp,
    KernelsSelftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Convergence => "convergence",
            Command::Euler1d => "euler1d",
            Command::Euler2d => "euler2d",
            Command::VariantExp => "variant-exp",
            Command::KernelsSelftest => "kernels-selftest",
        }
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            Command::Convergence => &["scheme", "case", "grids", "cfl", "t-final", "out", "threads"],
            Command::Euler1d => &[
                "scheme", "case", "grid-scale", "dt", "t-final", "reference", "averaging", "dump-fields", "out",
                "threads",
            ],
            Command::Euler2d => &[
                "scheme", "case", "grid-scale", "dt", "t-final", "averaging", "dump-fields", "out", "threads",
            ],
            Command::VariantExp => &["case", "grid-scale", "dt", "t-final", "tau", "beta1", "out", "threads"],
            Command::KernelsSelftest => &["seed", "samples", "out", "threads"],
        }
    }

    fn cases(self) -> &'static [&'static str] {
        match self {
            Command::Convergence => &["table2", "plain-sine"],
            Command::Euler1d => &["strong-shock", "blast", "shu-osher"],
            Command::Euler2d => &["riemann2d", "dmr"],
            Command::VariantExp => &["dmr", "variant-exp"],
            Command::KernelsSelftest => &[],
        }
    }

    fn default_case(self) -> &'static str {
        match self {
            Command::Convergence => "table2",
            Command::Euler1d => "shu-osher",
            Command::Euler2d => "riemann2d",
            Command::VariantExp | Command::KernelsSelftest => "dmr",
        }
    }
}

/// Validated settings of one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub scheme: SchemeSpec,
    pub case: String,
    pub grid_scale: Option<f64>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub dump_fields: bool,
    pub seed: u64,
    pub grids: Vec<usize>,
    pub cfl: Option<f64>,
    pub dt: Option<f64>,
    pub t_final: Option<f64>,
    pub reference: Option<usize>,
    pub averaging: Option<Averaging>,
    pub variant: Option<VariantRequest>,
    pub samples: usize,
}

/// Reads `key = value` lines; `#` starts a comment.
pub fn read_config_file(path: &Path) -> CliResult<BTreeMap<String, (String, usize)>> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut map = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| CliError::Config {
            path: path.display().to_string(),
            line: k + 1,
            msg,
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, found `{line}`")))?;
        let key = key.trim().replace('_', "-");
        if key.is_empty() {
            return Err(err(format!("missing key in `{line}`")));
        }
        map.insert(key, (value.trim().to_string(), k + 1));
    }
    Ok(map)
}

fn flag_values(o: &Options) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    let mut put = |k: &str, v: &Option<String>| {
        if let Some(v) = v {
            m.insert(k.to_string(), v.clone());
        }
    };
    put("scheme", &o.scheme);
    put("case", &o.case);
    put("grid-scale", &o.grid_scale);
    put("out", &o.out);
    put("threads", &o.threads);
    put("seed", &o.seed);
    put("grids", &o.grids);
    put("cfl", &o.cfl);
    put("dt", &o.dt);
    put("t-final", &o.t_final);
    put("reference", &o.reference);
    put("averaging", &o.averaging);
    put("tau", &o.tau);
    put("beta1", &o.beta1);
    put("samples", &o.samples);
    if o.dump_fields {
        m.insert("dump-fields".into(), "true".into());
    }
    m
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> CliResult<T> {
    value
        .parse()
        .map_err(|_| usage(format!("malformed value `{value}` for `{key}`")))
}

fn parse_positive(key: &str, value: &str) -> CliResult<f64> {
    let v: f64 = parse_num(key, value)?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(usage(format!("`{key}` must be positive, got `{value}`")));
    }
    Ok(v)
}

fn parse_bool(key: &str, value: &str) -> CliResult<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(usage(format!("malformed value `{value}` for `{key}` (expected true or false)"))),
    }
}

/// Merges flags over the config file and validates the result.
pub fn parse_config(command: Command, opts: &Options) -> CliResult<RunConfig> {
    let mut values: BTreeMap<String, String> = BTreeMap::new();
    if let Some(path) = &opts.config {
        for (key, (value, line)) in read_config_file(path)? {
            if !command.keys().contains(&key.as_str()) {
                return Err(CliError::Config {
                    path: path.display().to_string(),
                    line,
                    msg: format!("unknown key `{key}` for {}", command.name()),
                });
            }
            values.insert(key, value);
        }
    }
    for (key, value) in flag_values(opts) {
        if !command.keys().contains(&key.as_str()) {
            return Err(usage(format!("--{key} is not accepted by {}", command.name())));
        }
        values.insert(key, value);
    }
    let get = |k: &str| values.get(k).map(String::as_str);

    let scheme = SchemeSpec::parse(get("scheme").unwrap_or("es2"))?;
    let case = get("case").unwrap_or(command.default_case()).to_string();
    if !command.cases().is_empty() && !command.cases().contains(&case.as_str()) {
        return Err(usage(format!(
            "unknown case `{case}` for {}; valid cases: {}",
            command.name(),
            command.cases().join(", ")
        )));
    }
    let grids = match get("grids") {
        None => TABLE2_GRIDS.to_vec(),
        Some(list) => list
            .split(',')
            .map(|t| parse_num::<usize>("grids", t.trim()))
            .collect::<CliResult<Vec<_>>>()?,
    };
    if grids.is_empty() || grids.windows(2).any(|p| p[1] != 2 * p[0]) {
        return Err(usage(format!("`grids` must be strictly doubling, got {grids:?}")));
    }
    let threads = get("threads").map(|v| parse_num::<usize>("threads", v)).transpose()?;
    if threads == Some(0) {
        return Err(usage("`threads` must be at least 1"));
    }
    let variant = match (get("tau"), get("beta1")) {
        (None, None) => None,
        (Some(t), Some(b)) => Some(VariantRequest::parse(t, b)?),
        _ => return Err(usage("--tau and --beta1 must be given together")),
    };
    let cfg = RunConfig {
        command,
        scheme,
        case,
        grid_scale: get("grid-scale").map(|v| parse_positive("grid-scale", v)).transpose()?,
        out: get("out").map(PathBuf::from),
        threads,
        dump_fields: get("dump-fields").map(|v| parse_bool("dump-fields", v)).transpose()?.unwrap_or(false),
        seed: get("seed").map(|v| parse_num("seed", v)).transpose()?.unwrap_or(2024),
        grids,
        cfl: get("cfl").map(|v| parse_positive("cfl", v)).transpose()?,
        dt: get("dt").map(|v| parse_positive("dt", v)).transpose()?,
        t_final: get("t-final").map(|v| parse_positive("t-final", v)).transpose()?,
        reference: get("reference").map(|v| parse_num("reference", v)).transpose()?,
        averaging: get("averaging").map(str::parse).transpose()?,
        variant,
        samples: get("samples").map(|v| parse_num("samples", v)).transpose()?.unwrap_or(1000),
    };
    if cfg.dump_fields && cfg.out.is_none() {
        return Err(usage("--dump-fields needs --out DIR"));
    }
    Ok(cfg)
}

/// CSV text (advection column contract) and an aligned console table.
pub fn emit_table(rows: &[ConvergenceRow]) -> CliResult<(String, String)> {
    if rows.is_empty() {
        return Err(usage("refusing to emit an empty convergence table"));
    }
    let csv = convergence_csv(rows);
    let mut cells: Vec<Vec<String>> = vec![["N", "dt", "L1", "order", "L2", "order", "Linf", "order"]
        .map(String::from)
        .to_vec()];
    for r in rows {
        let err = |f: fn(&weno_core::advect1d::ErrorNorms) -> f64| {
            r.errors.as_ref().map_or("diverged".to_string(), |e| format!("{:.4e}", f(e)))
        };
        let ord = |k: usize| r.orders.map_or("-".to_string(), |o| format!("{:.3}", o[k]));
        cells.push(vec![
            r.n.to_string(),
            format!("{:.4e}", r.dt),
            err(|e| e.l1),
            ord(0),
            err(|e| e.l2),
            ord(1),
            err(|e| e.linf),
            ord(2),
        ]);
    }
    Ok((csv, align(&cells)))
}

fn align(cells: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..cells[0].len())
        .map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().zip(&widths).map(|(v, w)| format!("{v:>w$}")).collect();
        let _ = writeln!(s, "{}", line.join("  ").trim_end());
    }
    s
}

/// What a finished command reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub blew_up: bool,
    pub selftest_failed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.selftest_failed {
            EXIT_SELFTEST
        } else if self.blew_up {
            EXIT_BLOWUP
        } else {
            EXIT_OK
        }
    }
}

fn write_out(dir: &Path, name: &str, bytes: &[u8]) -> CliResult<PathBuf> {
    let io = |source, p: &Path| CliError::Io {
        path: p.display().to_string(),
        source,
    };
    fs::create_dir_all(dir).map_err(|e| io(e, dir))?;
    let path = dir.join(name);
    fs::write(&path, bytes).map_err(|e| io(e, &path))?;
    Ok(path)
}

fn scheme_tag(spec: &SchemeSpec) -> String {
    spec.id.to_string()
}

pub fn run_convergence(cfg: &RunConfig) -> CliResult<Outcome> {
    let mut problem = match cfg.case.as_str() {
        "plain-sine" => AdvectionProblem::plain_sine(cfg.grids[0]),
        _ => AdvectionProblem::critical_pair(cfg.grids[0]),
    };
    if let Some(c) = cfg.cfl {
        problem.cfl = c;
    }
    if let Some(t) = cfg.t_final {
        problem.t_final = t;
    }
    let rows = convergence_study(&problem, &cfg.scheme, &cfg.grids)?;
    let (csv, table) = emit_table(&rows)?;
    let mut stdout = format!("{} on {} (CFL {}, T {})\n{table}", cfg.scheme.id, cfg.case, problem.cfl, problem.t_final);
    if let Some(dir) = &cfg.out {
        let p = write_out(dir, &format!("convergence_{}_{}.csv", cfg.case, scheme_tag(&cfg.scheme)), csv.as_bytes())?;
        let _ = writeln!(stdout, "wrote {}", p.display());
    }
    Ok(Outcome {
        blew_up: rows.iter().any(|r| r.errors.is_none()),
        stdout,
        selftest_failed: false,
    })
}

pub fn run_euler1d(cfg: &RunConfig) -> CliResult<Outcome> {
    let base = EulerProblem1D::by_name(&cfg.case)?;
    let mut problem = match cfg.grid_scale {
        Some(s) => base.with_grid(((base.n as f64) * s).round().max(1.0) as usize),
        None => base,
    };
    if let Some(dt) = cfg.dt {
        problem.dt = dt;
    }
    if let Some(t) = cfg.t_final {
        problem.t_final = t;
    }
    if let Some(a) = cfg.averaging {
        problem.averaging = a;
    }
    problem.validate()?;
    let reference = cfg.reference.map(|n| make_reference(&problem, n)).transpose()?;
    let run = run_problem(&problem, &cfg.scheme, reference.as_ref().map(|r| r.rho.as_slice()))?;
    let tag = format!("{}_{}_{}", cfg.case, scheme_tag(&cfg.scheme), problem.n);
    let mut stdout = format!("case={}\nscheme={}\nN={}\n{}", cfg.case, cfg.scheme.id, problem.n, run.summary());
    if let Some(dir) = &cfg.out {
        let p = write_out(dir, &format!("{tag}_summary.txt"), stdout.as_bytes())?;
        let _ = writeln!(stdout, "wrote {}", p.display());
        if cfg.dump_fields {
            let p = write_out(dir, &format!("{tag}_fields.csv"), run.fields_csv(&problem.gas).as_bytes())?;
            let _ = writeln!(stdout, "wrote {}", p.display());
            if let Some(r) = &reference {
                let mut csv = String::from("x,rho\n");
                for (x, rho) in r.fine_x.iter().zip(&r.fine_rho) {
                    let _ = writeln!(csv, "{x:.10e},{rho:.10e}");
                }
                let p = write_out(dir, &format!("{}_reference_{}.csv", cfg.case, r.n_fine), csv.as_bytes())?;
                let _ = writeln!(stdout, "wrote {}", p.display());
            }
        }
    }
    Ok(Outcome {
        blew_up: !run.completed(),
        stdout,
        selftest_failed: false,
    })
}

fn problem_2d(cfg: &RunConfig, name: &str) -> CliResult<EulerProblem2D> {
    let mut problem = EulerProblem2D::by_name(name, cfg.grid_scale.unwrap_or(0.25))?;
    if let Some(dt) = cfg.dt {
        problem.dt = dt;
    }
    if let Some(t) = cfg.t_final {
        problem.t_final = t;
    }
    if let Some(a) = cfg.averaging {
        problem.averaging = a;
    }
    problem.validate()?;
    Ok(problem)
}

pub fn run_euler2d(cfg: &RunConfig) -> CliResult<Outcome> {
    let problem = problem_2d(cfg, &cfg.case)?;
    let run = run_problem_2d(&problem, &cfg.scheme, |_, _, _| {})?;
    let g = problem.grid;
    let tag = format!("{}_{}_{}x{}", cfg.case, scheme_tag(&cfg.scheme), g.nx, g.ny);
    let mut stdout = format!("case={}\nscheme={}\ngrid={}x{}\n{}", cfg.case, cfg.scheme.id, g.nx, g.ny, run.summary());
    if problem.kind == Problem2DKind::Riemann2D {
        let _ = writeln!(stdout, "diagonal_asymmetry={:.6e}", diagonal_asymmetry(&run.field));
    }
    if let Some(dir) = &cfg.out {
        let p = write_out(dir, &format!("{tag}_summary.txt"), stdout.as_bytes())?;
        let _ = writeln!(stdout, "wrote {}", p.display());
        if cfg.dump_fields {
            let csv = fields_csv_2d(&run.field, &problem.gas);
            let p = write_out(dir, &format!("{tag}_fields.csv"), csv.as_bytes())?;
            let _ = writeln!(stdout, "wrote {}", p.display());
            let mut bin = Vec::new();
            write_binary(&mut bin, &run.field, &problem.gas, run.t)?;
            let p = write_out(dir, &format!("{tag}_fields.bin"), &bin)?;
            let _ = writeln!(stdout, "wrote {}", p.display());
        }
    }
    Ok(Outcome {
        blew_up: !run.completed(),
        stdout,
        selftest_failed: false,
    })
}

pub fn run_variant_exp(cfg: &RunConfig) -> CliResult<Outcome> {
    let problem = problem_2d(cfg, "dmr")?;
    let requests = match cfg.variant {
        Some(v) => vec![v],
        None => VariantRequest::standard_set(),
    };
    let mut outcomes: Vec<VariantOutcome> = Vec::with_capacity(requests.len());
    for r in &requests {
        eprintln!("variant {} on {}x{}", r.label(), problem.grid.nx, problem.grid.ny);
        outcomes.push(variant_experiment(r, &problem)?);
    }
    let mut csv = String::from(VariantOutcome::CSV_HEADER);
    csv.push('\n');
    for o in &outcomes {
        csv.push_str(&o.csv_row());
        csv.push('\n');
    }
    let mut cells = vec![["variant", "result", "tv", "front_x", "min_rho", "max_rho"].map(String::from).to_vec()];
    for o in &outcomes {
        let result = match o.blew_up_at {
            Some(t) => format!("blew up t={t:.4}"),
            None => "completed".into(),
        };
        let opt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.4}"));
        cells.push(vec![
            o.label.clone(),
            result,
            opt(o.tv),
            opt(o.front_x),
            format!("{:.4}", o.min_rho),
            format!("{:.4}", o.max_rho),
        ]);
    }
    let mut stdout = align(&cells);
    if let Some(dir) = &cfg.out {
        let p = write_out(dir, "variant_exp.csv", csv.as_bytes())?;
        let _ = writeln!(stdout, "wrote {}", p.display());
    }
    Ok(Outcome {
        blew_up: outcomes.iter().any(|o| !o.completed),
        stdout,
        selftest_failed: false,
    })
}

pub fn run_selftest(cfg: &RunConfig) -> CliResult<Outcome> {
    let report = selftest::run(cfg.seed, cfg.samples)?;
    let stdout = report.render();
    if let Some(dir) = &cfg.out {
        write_out(dir, "kernels_selftest.txt", stdout.as_bytes())?;
    }
    Ok(Outcome {
        selftest_failed: !report.passed(),
        stdout,
        blew_up: false,
    })
}

pub fn execute(cfg: &RunConfig) -> CliResult<Outcome> {
    match cfg.command {
        Command::Convergence => run_convergence(cfg),
        Command::Euler1d => run_euler1d(cfg),
        Command::Euler2d => run_euler2d(cfg),
        Command::VariantExp => run_variant_exp(cfg),
        Command::KernelsSelftest => run_selftest(cfg),
    }
}

pub fn split(cli: &Cli) -> (Command, &Options) {
    match &cli.command {
        CommandLine::Convergence(o) => (Command::Convergence, o),
        CommandLine::Euler1d(o) => (Command::Euler1d, o),
        CommandLine::Euler2d(o) => (Command::Euler2d, o),
        CommandLine::VariantExp(o) => (Command::VariantExp, o),
        CommandLine::KernelsSelftest(o) => (Command::KernelsSelftest, o),
    }
}

/// Parses, configures the thread pool and runs; returns the exit code.
pub fn main_with(cli: &Cli) -> u8 {
    let (command, opts) = split(cli);
    let cfg = match parse_config(command, opts) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Some(n) = cfg.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: thread pool already configured: {e}");
        }
    }
    match execute(&cfg) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
