//! Command-line surface: subcommands over the library pipelines, file
//! formats, plot-data emission, and machine-readable certificates.
//!
//! Exit codes: 0 success, 2 validation or hypothesis failure, 3 threshold
//! refusal (density gate), 4 numeric accuracy failure. Every refusal names
//! the failed check and its measured value. All probe randomness is seeded
//! and the seed is recorded in the certificate.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::conjugation::{
    hilbert_indicator_interval, hilbert_quadrature, GrowthClass, HalfIndicator, SampledFunction,
    TailMode, TailPolicy,
};
use crate::inner::{approximate_phase, build_inner, BlaschkeInner, InnerError};
use crate::lattice::{level_set, Lattice, LatticeError, PhaseFunction};
use crate::majorant::{majorant_pipeline, verify_minorant, MajorantConfig, MajorantError, MajorantProblem};
use crate::toeplitz::{
    necessity_certificate, zero_set_pipeline, PipelineConfig, Symbol, ToeplitzError,
};
use crate::weights::{
    lower_density, regularity_report, upper_density, Family, Weight, WeightError,
    Window,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("check failed: {name} measured {measured} vs threshold {threshold}")]
    Check {
        name: String,
        measured: f64,
        threshold: f64,
    },
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Inner(#[from] InnerError),
    #[error(transparent)]
    Toeplitz(#[from] ToeplitzError),
    #[error(transparent)]
    Majorant(#[from] MajorantError),
    #[error(transparent)]
    Conjugation(#[from] crate::conjugation::ConjugationError),
}

impl CliError {
    /// 2 validation/hypothesis, 3 threshold refusal, 4 numeric accuracy.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Toeplitz(ToeplitzError::Threshold { .. })
            | CliError::Toeplitz(ToeplitzError::NotApplicable { .. }) => 3,
            CliError::Lattice(LatticeError::Threshold { .. }) => 3,
            CliError::Check { .. } => 4,
            CliError::Conjugation(crate::conjugation::ConjugationError::Accuracy { .. }) => 4,
            _ => 2,
        }
    }
}

/// Shared run parameters; every subcommand sees the same knobs.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// evaluation window "a,b"
    #[arg(long, global = true, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<Window>,
    /// tail continuation width as a multiple of the window alpha-length
    #[arg(long, global = true, default_value_t = 5.0)]
    pub tail_width: f64,
    /// root-polishing tolerance for level sets
    #[arg(long, global = true, default_value_t = 1e-11)]
    pub root_tol: f64,
    /// principal-value quadrature tolerance
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub quad_tol: f64,
    /// oracle-equivalence tolerance
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub oracle_tol: f64,
    /// grid density in points per unit alpha-length
    #[arg(long, global = true, default_value_t = 8.0)]
    pub grid_per_alpha: f64,
    /// probe count for regularity diagnostics
    #[arg(long, global = true, default_value_t = 2000)]
    pub probes: usize,
    /// seed for all probe randomness (recorded in certificates)
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// proceed past hypothesis checks, flagging them in the certificate
    #[arg(long, global = true, default_value_t = false)]
    pub force: bool,
}

impl RunConfig {
    fn tail(&self) -> TailPolicy {
        TailPolicy {
            mode: TailMode::Continuation,
            width_factor: self.tail_width,
        }
    }
}

fn parse_window(s: &str) -> Result<Window, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("window must be \"a,b\"".into());
    }
    let a: f64 = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let b: f64 = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    if !(a < b) {
        return Err("window endpoints must satisfy a < b".into());
    }
    Ok(Window { a, b })
}

#[derive(Debug, Parser)]
#[command(
    name = "innerforge",
    about = "Inner functions with prescribed phase growth: zero-set and majorant certificates"
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Regular-locally-doubling diagnostics of a weight
    WeightCheck {
        #[arg(long)]
        weight: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Level-set lattice of the phase a*alpha + b*x
    Lattice {
        #[arg(long)]
        weight: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        weight_coeff: f64,
        #[arg(long, default_value_t = 0.0)]
        linear_coeff: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Alpha-Beurling density of a lattice
    Density {
        #[arg(long)]
        weight: PathBuf,
        #[arg(long)]
        lattice: PathBuf,
        /// comma-separated alpha-lengths
        #[arg(long, value_delimiter = ',')]
        r: Vec<f64>,
        #[arg(long, default_value = "upper")]
        kind: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the inner function of a lattice
    BuildInner {
        #[arg(long)]
        weight: PathBuf,
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// also emit x,ReJ,ImJ,argJ,absJprime over this many grid points
        #[arg(long)]
        eval_out: Option<PathBuf>,
        #[arg(long, default_value_t = 2000)]
        grid: usize,
    },
    /// Inner function approximating the phase a*alpha + b*x, with the
    /// measured phase certificate
    Approximate {
        #[arg(long)]
        weight: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        weight_coeff: f64,
        #[arg(long, default_value_t = 0.0)]
        linear_coeff: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Zero-set witness for a Toeplitz kernel symbol
    ZeroSet {
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Density necessity certificate for over-dense lattices
    Necessity {
        #[arg(long)]
        weight: PathBuf,
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        #[arg(long, default_value_t = 20.0)]
        n0: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Beurling-Malliavin majorant witness
    Majorant {
        #[arg(long)]
        theta: PathBuf,
        #[arg(long)]
        omega: PathBuf,
        /// growth class of the omega samples: bounded | log | poly:K
        #[arg(long, default_value = "bounded")]
        growth: String,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        out: PathBuf,
        /// plot CSV x,omega,f_final,ratio
        #[arg(long)]
        plot_out: Option<PathBuf>,
    },
    /// Closed-form vs quadrature oracle suite
    OracleTest {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Machine-readable certificate attached to every run.
#[derive(Debug, Serialize)]
pub struct Certificate {
    pub command: String,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    pub constants: BTreeMap<String, f64>,
    pub checks: Vec<CheckEntry>,
    pub budget: BTreeMap<String, f64>,
    pub outputs: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl Certificate {
    fn new(command: &str, seed: u64) -> Self {
        Self {
            command: command.into(),
            seed,
            inputs: Vec::new(),
            constants: BTreeMap::new(),
            checks: Vec::new(),
            budget: BTreeMap::new(),
            outputs: Vec::new(),
        }
    }

    fn digest(&mut self, path: &Path) -> Result<(), CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let mut h = Sha256::new();
        h.update(&bytes);
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex_string(&h.finalize()),
        });
        Ok(())
    }

    fn check(&mut self, name: &str, measured: f64, threshold: f64, pass: bool) {
        self.checks.push(CheckEntry {
            name: name.into(),
            measured,
            threshold,
            pass,
        });
    }

    fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn write(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).expect("certificate serializes");
        std::fs::write(path, text + "\n").map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        })
    }
}

fn hex_string(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        write!(s, "{b:02x}").unwrap();
    }
    s
}

/// Write CSV series with 12-significant-digit formatting and deterministic
/// ordering. Errors on empty series.
pub fn emit_plotdata(
    headers: &[&str],
    columns: &[Vec<f64>],
    path: &Path,
) -> Result<(), CliError> {
    if columns.is_empty() || columns[0].is_empty() {
        return Err(CliError::Usage("refusing to write an empty series".into()));
    }
    assert_eq!(headers.len(), columns.len());
    let rows = columns[0].len();
    assert!(columns.iter().all(|c| c.len() == rows));
    let mut text = headers.join(",");
    text.push('\n');
    for i in 0..rows {
        for (j, col) in columns.iter().enumerate() {
            if j > 0 {
                text.push(',');
            }
            write!(text, "{:.11e}", col[i]).unwrap();
        }
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

fn read_to_string(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

fn load_family(path: &Path) -> Result<Family, CliError> {
    let text = read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn load_lattice(path: &Path, window: Option<Window>) -> Result<Lattice, CliError> {
    let text = read_to_string(path)?;
    // parse twice: once to learn the span when no window was given
    let probe = Lattice::from_text(&text, Window::new(-1e300, 1e300))?;
    if probe.is_empty() {
        return Err(CliError::Parse {
            path: path.display().to_string(),
            msg: "lattice file holds no points".into(),
        });
    }
    let window = window.unwrap_or_else(|| {
        let pts = probe.points();
        let span = pts[pts.len() - 1] - pts[0];
        let pad = span * 1e-3 + 1e-9;
        Window::new(pts[0] - pad, pts[pts.len() - 1] + pad)
    });
    Ok(Lattice::from_text(&text, window)?)
}

fn load_samples_csv(path: &Path, growth: GrowthClass) -> Result<SampledFunction, CliError> {
    let text = read_to_string(path)?;
    let mut xs = Vec::new();
    let mut vals = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 2 {
            return Err(CliError::Parse {
                path: path.display().to_string(),
                msg: format!("line {}: expected \"x,value\"", i + 1),
            });
        }
        let x: f64 = match parts[0].trim().parse() {
            Ok(v) => v,
            Err(_) if i == 0 => continue, // header row
            Err(e) => {
                return Err(CliError::Parse {
                    path: path.display().to_string(),
                    msg: format!("line {}: {e}", i + 1),
                })
            }
        };
        let v: f64 = parts[1].trim().parse().map_err(|e| CliError::Parse {
            path: path.display().to_string(),
            msg: format!("line {}: {e}", i + 1),
        })?;
        xs.push(x);
        vals.push(v);
    }
    if xs.len() < 2 {
        return Err(CliError::Parse {
            path: path.display().to_string(),
            msg: "need at least two samples".into(),
        });
    }
    if !xs.windows(2).all(|w| w[0] < w[1]) {
        return Err(CliError::Parse {
            path: path.display().to_string(),
            msg: "abscissae must be strictly increasing".into(),
        });
    }
    Ok(SampledFunction::new(xs, vals, growth))
}

#[derive(Debug, serde::Deserialize)]
struct SymbolSpec {
    weight: Family,
    #[serde(default)]
    k1: f64,
    #[serde(default)]
    h: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, serde::Deserialize)]
struct ThetaSpec {
    #[serde(default)]
    zeros: Vec<[f64; 2]>,
    #[serde(default)]
    a: f64,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    init_threads();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return 2;
        }
    };
    match dispatch(cli) {
        Ok(summary) => {
            println!("{summary}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn init_threads() {
    use std::sync::OnceLock;
    static GUARD: OnceLock<()> = OnceLock::new();
    GUARD.get_or_init(|| {
        if let Ok(v) = std::env::var("INNERFORGE_THREADS") {
            if let Ok(n) = v.parse::<usize>() {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build_global();
            }
        }
    });
}

fn dispatch(cli: Cli) -> Result<String, CliError> {
    let cfg = cli.config.clone();
    match cli.cmd {
        Command::WeightCheck { weight, out } => weight_check(&cfg, &weight, out.as_deref()),
        Command::Lattice {
            weight,
            weight_coeff,
            linear_coeff,
            out,
        } => lattice_cmd(&cfg, &weight, weight_coeff, linear_coeff, &out),
        Command::Density {
            weight,
            lattice,
            r,
            kind,
            out,
        } => density_cmd(&cfg, &weight, &lattice, &r, &kind, &out),
        Command::BuildInner {
            weight,
            lattice,
            out,
            eval_out,
            grid,
        } => build_inner_cmd(&cfg, &weight, &lattice, &out, eval_out.as_deref(), grid),
        Command::Approximate {
            weight,
            weight_coeff,
            linear_coeff,
            out,
        } => approximate_cmd(&cfg, &weight, weight_coeff, linear_coeff, &out),
        Command::ZeroSet {
            symbol,
            lattice,
            eps,
            out,
        } => zero_set_cmd(&cfg, &symbol, &lattice, eps, &out),
        Command::Necessity {
            weight,
            lattice,
            delta,
            n0,
            out,
        } => necessity_cmd(&cfg, &weight, &lattice, delta, n0, &out),
        Command::Majorant {
            theta,
            omega,
            growth,
            eps,
            out,
            plot_out,
        } => majorant_cmd(&cfg, &theta, &omega, &growth, eps, &out, plot_out.as_deref()),
        Command::OracleTest { out } => oracle_test(&cfg, out.as_deref()),
    }
}

fn weight_check(cfg: &RunConfig, weight: &Path, out: Option<&Path>) -> Result<String, CliError> {
    let fam = load_family(weight)?;
    let window = cfg.window.unwrap_or(Window { a: -60.0, b: 60.0 });
    let w = Weight::new(fam, window)?;
    let rep = regularity_report(&w, window, cfg.probes, 1.0, cfg.seed)?;
    let mut cert = Certificate::new("weight-check", cfg.seed);
    cert.digest(weight)?;
    cert.constants.insert("m".into(), rep.m);
    cert.constants.insert("M".into(), rep.big_m);
    cert.constants.insert("C_doubling".into(), rep.c_doubling);
    cert.constants.insert("kappa_hat".into(), rep.kappa_hat);
    cert.constants.insert("c_hat".into(), rep.c_hat);
    cert.constants.insert("K0_hat".into(), rep.k0_hat);
    cert.check("comparability", rep.big_m / rep.m.max(1e-300), f64::INFINITY, rep.comparability_pass);
    cert.check("doubling", rep.c_doubling, f64::INFINITY, rep.doubling_pass);
    cert.check("lower_growth", rep.c_hat, 0.0, rep.lower_growth_pass);
    if let Some(p) = out {
        cert.write(p)?;
    }
    if !cert.all_pass() && !cfg.force {
        let failed = cert.checks.iter().find(|c| !c.pass).unwrap();
        return Err(CliError::Usage(format!(
            "weight check '{}' failed with measured value {}",
            failed.name, failed.measured
        )));
    }
    Ok(format!(
        "weight-check: m={:.4} M={:.4} C={:.4} kappa_hat={:.3} all_pass={}",
        rep.m,
        rep.big_m,
        rep.c_doubling,
        rep.kappa_hat,
        rep.all_pass()
    ))
}

fn lattice_cmd(
    cfg: &RunConfig,
    weight: &Path,
    wc: f64,
    lc: f64,
    out: &Path,
) -> Result<String, CliError> {
    let fam = load_family(weight)?;
    let window = cfg.window.unwrap_or(Window { a: -60.0, b: 60.0 });
    let w = Weight::new(fam, window)?;
    let f = PhaseFunction::affine_of_weight(&w, wc, lc, window);
    let lat = level_set(&f, window, cfg.root_tol)?;
    let mut text = String::new();
    for p in lat.points() {
        writeln!(text, "{p:.17e}").unwrap();
    }
    std::fs::write(out, text).map_err(|e| CliError::Io {
        path: out.display().to_string(),
        source: e,
    })?;
    Ok(format!(
        "lattice: {} level-set points on [{}, {}] -> {}",
        lat.len(),
        window.a,
        window.b,
        out.display()
    ))
}

fn density_cmd(
    cfg: &RunConfig,
    weight: &Path,
    lattice: &Path,
    r: &[f64],
    kind: &str,
    out: &Path,
) -> Result<String, CliError> {
    let fam = load_family(weight)?;
    let lat = load_lattice(lattice, cfg.window)?;
    let w = Weight::new(fam, lat.window())?;
    let rep = match kind {
        "upper" => upper_density(&w, lat.points(), lat.window(), r)?,
        "lower" => lower_density(&w, lat.points(), lat.window(), r)?,
        _ => {
            return Err(CliError::Usage(format!(
                "unknown density kind '{kind}' (use upper|lower)"
            )))
        }
    };
    let cols: Vec<Vec<f64>> = vec![
        rep.rows.iter().map(|r| r.r).collect(),
        rep.rows.iter().map(|r| r.ratio).collect(),
        rep.rows.iter().map(|r| r.interval_left).collect(),
        rep.rows.iter().map(|r| r.interval_right).collect(),
    ];
    emit_plotdata(&["r", "ratio", "interval_left", "interval_right"], &cols, out)?;
    Ok(format!(
        "density({:?}): estimate {:.6} vs 1/(2pi) = {:.6} -> {}",
        rep.kind,
        rep.limit_estimate,
        crate::weights::DENSITY_THRESHOLD,
        out.display()
    ))
}

#[derive(Debug, Serialize)]
struct InnerDump {
    lattice: Vec<f64>,
    window: Window,
    cstar: f64,
    clark_sigma1: Vec<f64>,
    clark_sigma_minus1: Vec<f64>,
    tail: TailPolicy,
    certificate: Certificate,
}

fn build_inner_cmd(
    cfg: &RunConfig,
    weight: &Path,
    lattice: &Path,
    out: &Path,
    eval_out: Option<&Path>,
    grid: usize,
) -> Result<String, CliError> {
    let fam = load_family(weight)?;
    let lat = load_lattice(lattice, cfg.window)?;
    let window = lat.window();
    let plain = Weight::new(fam.clone(), window)?;
    let pad = cfg.tail_width * plain.alpha_length(window)? * 1.2 + 10.0;
    let w = Weight::with_alpha_padding(fam, window, pad)?;
    let inner = build_inner(&w, &lat, cfg.tail())?;

    let mut cert = Certificate::new("build-inner", cfg.seed);
    cert.digest(weight)?;
    cert.digest(lattice)?;
    cert.constants.insert("cstar".into(), inner.cstar());
    cert.budget
        .insert("tail_bound_at_window_edge".into(), inner.tail_budget(window.b));
    // node exactness and Clark identity checks
    let pts = inner.lattice().points();
    let mut node_ok = true;
    for &p in pts {
        node_ok &= inner.eval(p).map(|j| j.re == 1.0 && j.im == 0.0).unwrap_or(false);
    }
    cert.check("node_exactness", if node_ok { 0.0 } else { 1.0 }, 0.0, node_ok);
    let mut worst_clark: f64 = 0.0;
    for n in 1..pts.len() - 1 {
        let prod = inner.sigma1_at(n).unwrap() * inner.jprime_at_lambda(n).unwrap();
        worst_clark = worst_clark.max((prod - 2.0 * std::f64::consts::PI).abs());
    }
    cert.check("clark_identity", worst_clark, 1e-10, worst_clark <= 1e-10);

    let (first, last) = inner.window_node_range();
    let sigma1: Vec<f64> = (0..=(last - first))
        .map(|n| inner.sigma1_at(n).unwrap_or(f64::NAN))
        .collect();
    let sigma_m1: Vec<f64> = (0..(last - first))
        .map(|n| inner.sigma_m1_at(n).unwrap_or(f64::NAN))
        .collect();
    let dump = InnerDump {
        lattice: pts.to_vec(),
        window,
        cstar: inner.cstar(),
        clark_sigma1: sigma1,
        clark_sigma_minus1: sigma_m1,
        tail: cfg.tail(),
        certificate: cert,
    };
    std::fs::write(out, serde_json::to_string_pretty(&dump).unwrap() + "\n").map_err(|e| {
        CliError::Io {
            path: out.display().to_string(),
            source: e,
        }
    })?;

    if let Some(ep) = eval_out {
        let mut xs = Vec::with_capacity(grid + 1);
        let mut rej = Vec::with_capacity(grid + 1);
        let mut imj = Vec::with_capacity(grid + 1);
        let mut arg = Vec::with_capacity(grid + 1);
        let mut jp = Vec::with_capacity(grid + 1);
        for i in 0..=grid {
            let mut x = window.a + window.len() * i as f64 / grid as f64;
            // nudge off exact nodes so |J'| comes from the series
            if inner.jprime(x).is_err() {
                x += 1e-9 * window.len() / grid as f64;
            }
            let j = inner.eval(x)?;
            xs.push(x);
            rej.push(j.re);
            imj.push(j.im);
            arg.push(inner.arg(x)?);
            jp.push(inner.jprime(x).unwrap_or(f64::NAN));
        }
        emit_plotdata(&["x", "ReJ", "ImJ", "argJ", "absJprime"], &[xs, rej, imj, arg, jp], ep)?;
    }
    Ok(format!(
        "build-inner: {} nodes, C* = {:.6} -> {}",
        pts.len(),
        inner.cstar(),
        out.display()
    ))
}

fn approximate_cmd(
    cfg: &RunConfig,
    weight: &Path,
    wc: f64,
    lc: f64,
    out: &Path,
) -> Result<String, CliError> {
    let fam = load_family(weight)?;
    let window = cfg.window.unwrap_or(Window { a: -60.0, b: 60.0 });
    let plain = Weight::new(fam.clone(), window)?;
    let pad = cfg.tail_width * plain.alpha_length(window)? * 1.2 + 10.0;
    let w = Weight::with_alpha_padding(fam, window, pad)?;
    let f = PhaseFunction::affine_of_weight(&w, wc, lc, window);
    let (inner, pcert) = approximate_phase(&w, &f, cfg.tail(), cfg.root_tol, 100.0, cfg.force)?;
    let mut cert = Certificate::new("approximate", cfg.seed);
    cert.digest(weight)?;
    cert.constants
        .insert("sup_phase_deviation".into(), pcert.sup_deviation);
    cert.constants
        .insert("matched_const".into(), pcert.matched_const);
    cert.constants.insert("ratio_min".into(), pcert.ratio_min);
    cert.constants.insert("ratio_max".into(), pcert.ratio_max);
    cert.budget.insert("tail_budget".into(), pcert.tail_budget);
    let bound = 2.0 * std::f64::consts::PI + 0.1;
    cert.check(
        "phase_bound",
        pcert.sup_deviation,
        bound,
        pcert.sup_deviation <= bound,
    );
    cert.constants.insert("cstar".into(), inner.cstar());
    cert.write(out)?;
    if pcert.sup_deviation > bound {
        return Err(CliError::Check {
            name: "phase_bound".into(),
            measured: pcert.sup_deviation,
            threshold: bound,
        });
    }
    Ok(format!(
        "approximate: sup|f - argJ - c| = {:.4} (bound {:.4}), {} nodes -> {}",
        pcert.sup_deviation,
        bound,
        inner.lattice().len(),
        out.display()
    ))
}

fn zero_set_cmd(
    cfg: &RunConfig,
    symbol: &Path,
    lattice: &Path,
    eps: Option<f64>,
    out: &Path,
) -> Result<String, CliError> {
    let text = read_to_string(symbol)?;
    let spec: SymbolSpec = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: symbol.display().to_string(),
        msg: e.to_string(),
    })?;
    let lat = load_lattice(lattice, cfg.window)?;
    let h = spec.h.map(|rows| {
        let xs: Vec<f64> = rows.iter().map(|r| r[0]).collect();
        let vals: Vec<f64> = rows.iter().map(|r| r[1]).collect();
        SampledFunction::new(xs, vals, GrowthClass::Bounded)
    });
    let sym = Symbol {
        family: spec.weight,
        h,
        k1: spec.k1,
    };
    let pipeline_cfg = PipelineConfig {
        quad_tol: cfg.quad_tol,
        root_tol: cfg.root_tol,
        grid_per_alpha: cfg.grid_per_alpha,
        tail: cfg.tail(),
        probes: cfg.probes,
        seed: cfg.seed,
        ..PipelineConfig::default()
    };
    let wit = zero_set_pipeline(&sym, &lat, eps, &pipeline_cfg)?;

    let mut cert = Certificate::new("zero-set", cfg.seed);
    cert.digest(symbol)?;
    cert.digest(lattice)?;
    cert.constants.insert("delta".into(), wit.delta);
    cert.constants.insert("eps".into(), wit.eps);
    cert.constants
        .insert("density_estimate".into(), wit.density_estimate);
    cert.constants
        .insert("growth_exponent".into(), wit.growth.exponent);
    cert.constants.insert("c_lower".into(), wit.growth.c_lower);
    cert.constants.insert("c_upper".into(), wit.growth.c_upper);
    cert.constants
        .insert("derivative_floor".into(), wit.derivative_floor);
    cert.budget.insert("zygmund".into(), wit.zygmund);
    cert.budget
        .insert("regularization_sup".into(), wit.regularization_sup);
    cert.check(
        "density_gate",
        wit.density_estimate,
        crate::weights::DENSITY_THRESHOLD,
        wit.density_estimate < crate::weights::DENSITY_THRESHOLD,
    );
    cert.check(
        "exact_vanishing",
        wit.rows.iter().map(|r| r.t_abs).fold(0.0, f64::max),
        0.0,
        wit.rows.iter().all(|r| r.t_abs == 0.0),
    );
    cert.check(
        "derivative_floor_positive",
        wit.derivative_floor,
        0.0,
        wit.derivative_floor > 0.0,
    );

    #[derive(Serialize)]
    struct WitnessOut<'a> {
        witness: &'a crate::toeplitz::ZeroSetWitness,
        certificate: Certificate,
    }
    let payload = WitnessOut {
        witness: &wit,
        certificate: cert,
    };
    std::fs::write(out, serde_json::to_string_pretty(&payload).unwrap() + "\n").map_err(|e| {
        CliError::Io {
            path: out.display().to_string(),
            source: e,
        }
    })?;
    Ok(format!(
        "zero-set: density {:.5} < {:.5}, {} rows, floor {:.4e} -> {}",
        wit.density_estimate,
        crate::weights::DENSITY_THRESHOLD,
        wit.rows.len(),
        wit.derivative_floor,
        out.display()
    ))
}

fn necessity_cmd(
    cfg: &RunConfig,
    weight: &Path,
    lattice: &Path,
    delta: f64,
    n0: f64,
    out: &Path,
) -> Result<String, CliError> {
    let fam = load_family(weight)?;
    let lat = load_lattice(lattice, cfg.window)?;
    let w = Weight::new(fam, lat.window())?;
    let nc = necessity_certificate(&w, &lat, delta, n0)?;
    let mut cert = Certificate::new("necessity", cfg.seed);
    cert.digest(weight)?;
    cert.digest(lattice)?;
    cert.constants.insert("delta".into(), nc.delta);
    cert.constants.insert("slope".into(), nc.slope);
    cert.constants
        .insert("lower_density".into(), nc.lower_density_estimate);
    let all_exceed = nc
        .points
        .iter()
        .all(|&(a, v)| v > delta * a || a == 0.0);
    cert.check(
        "telescoped_divergence",
        nc.points.iter().map(|&(a, v)| v - delta * a).fold(f64::INFINITY, f64::min),
        0.0,
        all_exceed,
    );
    #[derive(Serialize)]
    struct Out<'a> {
        certificate: Certificate,
        necessity: &'a crate::toeplitz::NecessityCertificate,
    }
    std::fs::write(
        out,
        serde_json::to_string_pretty(&Out {
            certificate: cert,
            necessity: &nc,
        })
        .unwrap()
            + "\n",
    )
    .map_err(|e| CliError::Io {
        path: out.display().to_string(),
        source: e,
    })?;
    Ok(format!(
        "necessity: {} blocks, slope {:.4} -> {}",
        nc.points.len(),
        nc.slope,
        out.display()
    ))
}

#[allow(clippy::too_many_arguments)]
fn majorant_cmd(
    cfg: &RunConfig,
    theta: &Path,
    omega: &Path,
    growth: &str,
    eps: Option<f64>,
    out: &Path,
    plot_out: Option<&Path>,
) -> Result<String, CliError> {
    let text = read_to_string(theta)?;
    let spec: ThetaSpec = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: theta.display().to_string(),
        msg: e.to_string(),
    })?;
    let growth = GrowthClass::parse(growth)
        .ok_or_else(|| CliError::Usage(format!("unknown growth class '{growth}'")))?;
    let omega_s = load_samples_csv(omega, growth)?;
    let window = cfg.window.unwrap_or_else(|| {
        let (lo, hi) = omega_s.support();
        Window::new(lo, hi)
    });
    let problem = MajorantProblem {
        theta: BlaschkeInner::new(spec.zeros.iter().map(|z| (z[0], z[1])).collect(), spec.a),
        omega: omega_s,
        window,
        eps,
    };
    let mcfg = MajorantConfig {
        quad_tol: cfg.quad_tol,
        root_tol: cfg.root_tol,
        tail: cfg.tail(),
        probes: cfg.probes,
        seed: cfg.seed,
        ..MajorantConfig::default()
    };
    let wit = majorant_pipeline(&problem, &mcfg)?;
    let report = verify_minorant(&wit)?;

    let mut cert = Certificate::new("majorant", cfg.seed);
    cert.digest(theta)?;
    cert.digest(omega)?;
    cert.constants.insert("eps".into(), wit.eps);
    cert.constants.insert("n_fit".into(), wit.n_fit);
    cert.constants.insert("n0".into(), wit.n0 as f64);
    cert.constants.insert("delta_sinc".into(), wit.delta_sinc);
    cert.constants.insert("c_maj".into(), wit.c_maj);
    cert.constants
        .insert("nontriviality".into(), wit.nontriviality);
    cert.budget.insert("zygmund".into(), wit.zygmund);
    cert.check(
        "pointwise_domination",
        report.worst_ratio,
        1.0,
        report.worst_ratio <= 1.0 + 1e-12,
    );
    cert.check(
        "nontriviality",
        wit.nontriviality,
        1e-6,
        wit.nontriviality >= 1e-6,
    );
    cert.check(
        "sinc_exponent_budget",
        wit.delta_sinc * (wit.n0 as f64 + 1.0),
        wit.eps,
        wit.delta_sinc * (wit.n0 as f64 + 1.0) < wit.eps,
    );

    #[derive(Serialize)]
    struct Out<'a> {
        certificate: Certificate,
        witness: &'a crate::majorant::MajorantWitness,
        verification: &'a crate::majorant::MinorantReport,
    }
    std::fs::write(
        out,
        serde_json::to_string_pretty(&Out {
            certificate: cert,
            witness: &wit,
            verification: &report,
        })
        .unwrap()
            + "\n",
    )
    .map_err(|e| CliError::Io {
        path: out.display().to_string(),
        source: e,
    })?;

    if let Some(pp) = plot_out {
        let cols: Vec<Vec<f64>> = vec![
            wit.rows.iter().map(|r| r[0]).collect(),
            wit.rows.iter().map(|r| r[1]).collect(),
            wit.rows.iter().map(|r| r[2]).collect(),
            wit.rows.iter().map(|r| r[3]).collect(),
        ];
        emit_plotdata(&["x", "omega", "f_final", "ratio"], &cols, pp)?;
    }
    Ok(format!(
        "majorant: eps {:.4}, N0 {}, nontriviality {:.3e} -> {}",
        wit.eps,
        wit.n0,
        wit.nontriviality,
        out.display()
    ))
}

fn oracle_test(cfg: &RunConfig, out: Option<&Path>) -> Result<String, CliError> {
    let mut cert = Certificate::new("oracle-test", cfg.seed);
    let tol = cfg.oracle_tol;

    // single-interval closed form
    let expect = 3.0 * 2.0f64.ln() / (2.0 * std::f64::consts::PI);
    let got = hilbert_indicator_interval(0.0, 1.0, 2.0);
    cert.check(
        "indicator_closed_form",
        (got - expect).abs(),
        1e-12,
        (got - expect).abs() < 1e-12,
    );

    // 2 pi Z half-indicator: closed form vs adaptive quadrature at seeded
    // non-node points
    let window = cfg.window.unwrap_or(Window { a: -40.0, b: 40.0 });
    let pad = cfg.tail_width * window.len() * 1.2 + 10.0;
    let w = Weight::with_alpha_padding(Family::Linear { scale: 1.0 }, window, pad)?;
    let lat = Lattice::arithmetic(2.0 * std::f64::consts::PI, window);
    let u = HalfIndicator::new(&w, &lat, cfg.tail())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst = 0.0f64;
    let mut checked = 0;
    let breaks = u.breakpoints();
    while checked < 30 {
        let x: f64 = rng.gen_range(window.a..window.b);
        if breaks.iter().any(|b| (b - x).abs() < 1e-6) {
            continue;
        }
        let cf = u.hilbert(x)?;
        let q = u.hilbert_by_quadrature(x, tol * 1e-2)?;
        worst = worst.max((cf - q.value).abs() / (1.0 + cf.abs()));
        checked += 1;
    }
    cert.check("half_indicator_oracle", worst, tol, worst <= tol);

    // analytic conjugate pair: transform of 1/(1+t^2) at x = 1 is 1/2
    let n = 16000usize;
    let xs: Vec<f64> = (1..n)
        .map(|i| (-std::f64::consts::PI / 2.0 + std::f64::consts::PI * i as f64 / n as f64).tan())
        .collect();
    let vals: Vec<f64> = xs.iter().map(|&t| 1.0 / (1.0 + t * t)).collect();
    let s = SampledFunction::new(xs, vals, GrowthClass::Bounded);
    let got = hilbert_quadrature(&s, 1.0, tol * 1e-2)?.value;
    cert.check(
        "poisson_conjugate_pair",
        (got - 0.5).abs(),
        1e-4,
        (got - 0.5).abs() < 1e-4,
    );

    if let Some(p) = out {
        cert.write(p)?;
    }
    for c in &cert.checks {
        println!(
            "oracle {}: measured {:.3e} threshold {:.3e} -> {}",
            c.name,
            c.measured,
            c.threshold,
            if c.pass { "pass" } else { "FAIL" }
        );
    }
    if !cert.all_pass() {
        let failed = cert.checks.iter().find(|c| !c.pass).unwrap();
        return Err(CliError::Check {
            name: failed.name.clone(),
            measured: failed.measured,
            threshold: failed.threshold,
        });
    }
    Ok(format!("oracle-test: {} checks pass (seed {})", cert.checks.len(), cfg.seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_parser() {
        assert!(parse_window("1,2").is_ok());
        assert!(parse_window("2,1").is_err());
        assert!(parse_window("abc").is_err());
    }

    #[test]
    fn plotdata_format_and_refusals() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        emit_plotdata(&["x", "y"], &[vec![1.0], vec![0.5]], &p).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert_eq!(text.lines().next().unwrap(), "x,y");
        assert!(text.lines().nth(1).unwrap().contains("1.00000000000e0"));
        assert!(matches!(
            emit_plotdata(&["x"], &[vec![]], &p),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn exit_codes() {
        let e = CliError::Toeplitz(ToeplitzError::Threshold {
            measured: 0.3,
            threshold: 0.15,
        });
        assert_eq!(e.exit_code(), 3);
        let e = CliError::Check {
            name: "x".into(),
            measured: 1.0,
            threshold: 0.5,
        };
        assert_eq!(e.exit_code(), 4);
        let e = CliError::Usage("bad".into());
        assert_eq!(e.exit_code(), 2);
    }
}
