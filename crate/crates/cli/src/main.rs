//! Command line surface: `horn`, `qhorn`, `words`, `cheb`, `fluct`.
//!
//! Exit codes: 0 on success with all gates passing, 2 when an assertion gate
//! or membership check fails (the report is still emitted), 1 on usage or
//! structural errors. All outputs are byte-stable for identical argv; every
//! randomized command takes `--seed` (default 7).

mod emit;

use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use eigensum::chebyshev::{cheb, shifted_cheb, ChebKind};
use eigensum::fluct::{
    anticoncentration_w, clt_johansson, edge_containment, sof_experiment, xi_fluctuations,
};
use eigensum::horn::{default_tolerance, fuv_membership, horn_triples_with_cache, EigenvalueFunction};
use eigensum::linalg::{EigenvalueSequence, HermitianMatrix};
use eigensum::ncwords::{
    cyclic_classes, decompose_ij, find_separating_pair, kernel_rank, NCPoly, SeparationResult, XiLabel,
};
use eigensum::qhorn::{
    block_scale_construction, figure1_curve, inclusion_check, microstate_defect, parse_cloud_jsonl,
    parse_moment_table, qhorn_sample, QuantumHornSpec, SampleCloud,
};
use eigensum::RngState;
use emit::{read_input, to_json_bytes, write_output};

const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(name = "eigensum", version, about = "Horn inequality systems, quantum Horn body sampling and GUE fluctuation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Horn triple systems and membership checks
    #[command(subcommand)]
    Horn(HornCmd),
    /// Quantum Horn bodies: sampling, the worked example, blocks, microstates
    #[command(subcommand)]
    Qhorn(QhornCmd),
    /// Free-word calculus: orbits, decomposition, separation, kernel rank
    #[command(subcommand)]
    Words(WordsCmd),
    /// Chebyshev polynomial tables and semicircle coefficients
    #[command(subcommand)]
    Cheb(ChebCmd),
    /// Seeded Monte Carlo fluctuation experiments
    #[command(subcommand)]
    Fluct(FluctCmd),
}

#[derive(Subcommand)]
enum HornCmd {
    /// Generate the Horn system for one n (cached on disk)
    Gen {
        /// System size n
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check membership of gamma in the Horn body of alpha and beta
    Check {
        /// Nonincreasing comma list, e.g. 2,1
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        gamma: String,
        /// Tolerance; default 1e-9·(1+max|entry|)
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Truncated eigenvalue-function membership (necessary conditions up to N_max)
    Fuv {
        /// Step function JSON file {"breakpoints":[0,..],"values":[..]}
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        v: PathBuf,
        #[arg(long)]
        w: PathBuf,
        /// Largest N checked; default min(4·steps(w), 8)
        #[arg(long = "n-max")]
        n_max: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum QhornCmd {
    /// Sample spectra of a1⊗U(diag α⊗1_d)U* + a2⊗V(diag β⊗1_d)V* (JSON lines)
    Sample {
        /// Hermitian matrix JSON file {"re":[[..]],"im":[[..]]}
        #[arg(long)]
        a1: PathBuf,
        #[arg(long)]
        a2: PathBuf,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        /// Multiplicity
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The 4×4 worked example: closed-form spectrum on a t-grid
    ExampleK {
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a sampled cloud against the classical Horn body of γ₁⊗α, γ₂⊗β
    Inclusion {
        #[arg(long)]
        a1: PathBuf,
        #[arg(long)]
        a2: PathBuf,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Cloud JSON-lines file produced by `qhorn sample`
        #[arg(long)]
        cloud: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        /// Override the n·N·d ≤ 6 feasibility guard
        #[arg(long)]
        allow_large: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Block-diagonal scaling a_j = ⊕ K^{4i}·a_j^i with disjoint spectral windows
    Blocks {
        /// JSON file {"pairs":[{"a1":{..},"a2":{..}},..]}
        #[arg(long)]
        pairs: PathBuf,
        #[arg(long = "K")]
        k_scale: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest deviation of candidate mixed moments from a target table
    Microstate {
        /// Target JSON {"moments":[{"word":[1,2],"re":..,"im":..}]}
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        cand1: PathBuf,
        #[arg(long)]
        cand2: PathBuf,
        /// Highest word degree checked
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum WordsCmd {
    /// Rotation orbits of degree-p words over k letters
    Classes {
        #[arg(long, default_value_t = 2)]
        k: u8,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split y into commutator part and spanning-family coefficients
    Decompose {
        /// NCPoly JSON file {"terms":[{"word":[1,2],"re":..,"im":..}]}; `-` for stdin
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value_t = -2.0)]
        u: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 2.0)]
        v: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a Hermitian pair with spectra in [c, d] separating y from the commutators
    Separate {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        c: f64,
        /// Upper end d of the spectral window
        #[arg(long = "d-bound", allow_hyphen_values = true, default_value_t = 1.0)]
        d_bound: f64,
        #[arg(long = "n-max", default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numerical rank of the trace-evaluation map on degree-p classes at size N
    KernelRank {
        #[arg(long = "N")]
        n_dim: usize,
        #[arg(long)]
        p: usize,
        /// Row count before stabilization; must be ≥ the class count
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ChebCmd {
    /// Coefficient table of T_0..T_n or U_0..U_n (optionally shifted to [u, v])
    Table {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, requires = "v")]
        u: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "u")]
        v: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Semicircle coefficients α_1..α_n
    Alpha {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FluctCmd {
    /// CLT for normalized Chebyshev trace fluctuations of the GUE
    Clt {
        #[arg(long = "N", default_value_t = 200)]
        n_dim: usize,
        /// Number of statistics (degrees 1..=m)
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Second-order covariance of Tr(XY) against the limit formula
    Sof {
        #[arg(long = "N", default_value_t = 150)]
        n_dim: usize,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Compare against the length-2 word instead (limit 0)
        #[arg(long)]
        cross: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Centered fluctuations of the spanning family on shifted GUE pairs
    Xi {
        #[arg(long, allow_hyphen_values = true, default_value_t = -2.0)]
        u: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 2.0)]
        v: f64,
        #[arg(long = "max-degree", default_value_t = 3)]
        max_degree: usize,
        #[arg(long = "N", default_value_t = 100)]
        n_dim: usize,
        #[arg(long, default_value_t = 400)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The elementary anti-concentration bound w(m1, m2, δ)
    Anticonc {
        #[arg(long)]
        m1: f64,
        #[arg(long)]
        m2: f64,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical probability that a shifted GUE spectrum stays in [u−margin, v+margin]
    Edge {
        #[arg(long = "N", default_value_t = 200)]
        n_dim: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = -2.0)]
        u: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 2.0)]
        v: f64,
        #[arg(long, default_value_t = 0.5)]
        margin: f64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    First,
    Second,
}

impl From<Kind> for ChebKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::First => ChebKind::First,
            Kind::Second => ChebKind::Second,
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                std::process::exit(0);
            }
            let _ = e.print();
            std::process::exit(1);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}

fn cache_dir() -> PathBuf {
    std::env::var_os("HORN_CACHE_DIR").map(PathBuf::from).unwrap_or_else(|| PathBuf::from("horn_cache"))
}

fn load_matrix(path: &PathBuf) -> anyhow::Result<HermitianMatrix> {
    let text = read_input(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing Hermitian matrix from {path:?}"))
}

fn load_eigfun(path: &PathBuf) -> anyhow::Result<EigenvalueFunction> {
    let text = read_input(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing step function from {path:?}"))
}

fn load_poly(path: &PathBuf) -> anyhow::Result<NCPoly> {
    let text = read_input(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing polynomial from {path:?}"))
}

fn parse_list(text: &str, name: &str) -> anyhow::Result<EigenvalueSequence> {
    EigenvalueSequence::parse_comma_list(text).with_context(|| format!("parsing --{name}"))
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Horn(cmd) => run_horn(cmd),
        Command::Qhorn(cmd) => run_qhorn(cmd),
        Command::Words(cmd) => run_words(cmd),
        Command::Cheb(cmd) => run_cheb(cmd),
        Command::Fluct(cmd) => run_fluct(cmd),
    }
}

fn run_horn(cmd: HornCmd) -> anyhow::Result<i32> {
    match cmd {
        HornCmd::Gen { n, out } => {
            let system = horn_triples_with_cache(n, &cache_dir())?;
            write_output(&to_json_bytes(&*system)?, out.as_ref())?;
            Ok(0)
        }
        HornCmd::Check { alpha, beta, gamma, tol, out } => {
            let alpha = parse_list(&alpha, "alpha")?;
            let beta = parse_list(&beta, "beta")?;
            let gamma = parse_list(&gamma, "gamma")?;
            let tol = tol.unwrap_or_else(|| default_tolerance(&[&alpha, &beta, &gamma]));
            let _ = horn_triples_with_cache(alpha.len(), &cache_dir());
            let verdict = eigensum::horn::horn_membership(&alpha, &beta, &gamma, tol)?;
            let ok = verdict.is_member();
            write_output(&to_json_bytes(&verdict)?, out.as_ref())?;
            Ok(if ok { 0 } else { 2 })
        }
        HornCmd::Fuv { u, v, w, n_max, tol, out } => {
            let u = load_eigfun(&u)?;
            let v = load_eigfun(&v)?;
            let w = load_eigfun(&w)?;
            let n_max = n_max.unwrap_or_else(|| (4 * w.values().len()).clamp(2, 8));
            let scale = [&u, &v, &w]
                .iter()
                .flat_map(|f| f.values().iter().map(|x| x.abs()))
                .fold(0.0, f64::max);
            let tol = tol.unwrap_or(1e-9 * (1.0 + scale));
            let _ = horn_triples_with_cache(n_max, &cache_dir());
            let outcome = fuv_membership(&u, &v, &w, n_max, tol);
            let ok = outcome.is_member();
            write_output(&to_json_bytes(&outcome)?, out.as_ref())?;
            Ok(if ok { 0 } else { 2 })
        }
    }
}

fn run_qhorn(cmd: QhornCmd) -> anyhow::Result<i32> {
    match cmd {
        QhornCmd::Sample { a1, a2, alpha, beta, d, samples, seed, out } => {
            let spec = QuantumHornSpec::new(
                load_matrix(&a1)?,
                load_matrix(&a2)?,
                parse_list(&alpha, "alpha")?,
                parse_list(&beta, "beta")?,
                d,
            )?;
            let cloud = qhorn_sample(&spec, samples, RngState::new(seed))?;
            let mut bytes = Vec::new();
            cloud.write_jsonl(&mut bytes)?;
            write_output(&bytes, out.as_ref())?;
            Ok(0)
        }
        QhornCmd::ExampleK { grid, format, out } => {
            if grid < 2 {
                bail!("--grid must be at least 2");
            }
            let rows = figure1_curve(grid);
            let bytes = match format {
                Format::Csv => emit::figure_csv(&rows),
                Format::Svg => emit::figure_svg(&rows),
                Format::Json => to_json_bytes(&rows)?,
            };
            write_output(&bytes, out.as_ref())?;
            Ok(0)
        }
        QhornCmd::Inclusion { a1, a2, alpha, beta, d, cloud, tol, allow_large, out } => {
            let spec = QuantumHornSpec::new(
                load_matrix(&a1)?,
                load_matrix(&a2)?,
                parse_list(&alpha, "alpha")?,
                parse_list(&beta, "beta")?,
                d,
            )?;
            let text = read_input(&cloud)?;
            let samples = parse_cloud_jsonl(std::io::Cursor::new(text.into_bytes()))
                .with_context(|| format!("parsing cloud from {cloud:?}"))?;
            let scale = samples.iter().map(|s| s.gamma.max_abs()).fold(0.0, f64::max);
            let tol = tol.unwrap_or(1e-9 * (1.0 + scale));
            let cloud = SampleCloud { spec, base: RngState::new(0), samples };
            let outcome = inclusion_check(&cloud, tol, allow_large)?;
            let ok = outcome.is_included();
            write_output(&to_json_bytes(&outcome)?, out.as_ref())?;
            Ok(if ok { 0 } else { 2 })
        }
        QhornCmd::Blocks { pairs, k_scale, out } => {
            #[derive(serde::Deserialize)]
            struct PairsFile {
                pairs: Vec<PairEntry>,
            }
            #[derive(serde::Deserialize)]
            struct PairEntry {
                a1: HermitianMatrix,
                a2: HermitianMatrix,
            }
            #[derive(Serialize)]
            struct BlocksOut {
                a1: HermitianMatrix,
                a2: HermitianMatrix,
                windows: Vec<[f64; 2]>,
            }
            let text = read_input(&pairs)?;
            let file: PairsFile = serde_json::from_str(&text).with_context(|| format!("parsing {pairs:?}"))?;
            let pair_list: Vec<(HermitianMatrix, HermitianMatrix)> =
                file.pairs.into_iter().map(|p| (p.a1, p.a2)).collect();
            let (a1, a2) = block_scale_construction(&pair_list, k_scale)?;
            let windows = (1..=pair_list.len())
                .map(|i| {
                    let s = k_scale.powi(4 * i as i32);
                    [2.0 * s, 2.0 * s * k_scale.powi(3)]
                })
                .collect();
            write_output(&to_json_bytes(&BlocksOut { a1, a2, windows })?, out.as_ref())?;
            Ok(0)
        }
        QhornCmd::Microstate { target, cand1, cand2, m, out } => {
            #[derive(Serialize)]
            struct DefectOut {
                defect: f64,
            }
            let table = parse_moment_table(&read_input(&target)?)?;
            let defect = microstate_defect(&table, &load_matrix(&cand1)?, &load_matrix(&cand2)?, m)?;
            write_output(&to_json_bytes(&DefectOut { defect })?, out.as_ref())?;
            Ok(0)
        }
    }
}

fn run_words(cmd: WordsCmd) -> anyhow::Result<i32> {
    match cmd {
        WordsCmd::Classes { k, p, out } => {
            #[derive(Serialize)]
            struct ClassOut {
                representative: Vec<u8>,
                size: usize,
            }
            if k < 1 || p < 1 {
                bail!("require k ≥ 1 and p ≥ 1");
            }
            let classes: Vec<ClassOut> = cyclic_classes(k, p)
                .iter()
                .map(|c| ClassOut { representative: c.representative().letters().to_vec(), size: c.size() })
                .collect();
            write_output(&to_json_bytes(&classes)?, out.as_ref())?;
            Ok(0)
        }
        WordsCmd::Decompose { poly, u, v, out } => {
            #[derive(Serialize)]
            struct CoeffOut {
                label: LabelOut,
                re: f64,
                im: f64,
            }
            let y = load_poly(&poly)?;
            let (i_part, coeffs) = decompose_ij(&y, u, v)?;
            #[derive(Serialize)]
            struct DecompOut {
                i_part: NCPoly,
                j_coeffs: Vec<CoeffOut>,
            }
            let j_coeffs = coeffs
                .iter()
                .map(|(label, c)| CoeffOut { label: LabelOut::from(label), re: c.re, im: c.im })
                .collect();
            write_output(&to_json_bytes(&DecompOut { i_part, j_coeffs })?, out.as_ref())?;
            Ok(0)
        }
        WordsCmd::Separate { poly, c, d_bound, n_max, budget, seed, out } => {
            #[derive(Serialize)]
            struct SeparateOut {
                found: bool,
                draws: usize,
                #[serde(skip_serializing_if = "Option::is_none")]
                dim: Option<usize>,
                #[serde(skip_serializing_if = "Option::is_none")]
                trace_re: Option<f64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                trace_im: Option<f64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                a1: Option<HermitianMatrix>,
                #[serde(skip_serializing_if = "Option::is_none")]
                a2: Option<HermitianMatrix>,
            }
            let y = load_poly(&poly)?;
            let result = find_separating_pair(&y, c, d_bound, n_max, budget, RngState::new(seed))?;
            let (payload, code) = match result {
                SeparationResult::Found { a1, a2, dim, trace_value, draws } => (
                    SeparateOut {
                        found: true,
                        draws,
                        dim: Some(dim),
                        trace_re: Some(trace_value.re),
                        trace_im: Some(trace_value.im),
                        a1: Some(a1),
                        a2: Some(a2),
                    },
                    0,
                ),
                SeparationResult::NotFound { draws } => (
                    SeparateOut { found: false, draws, dim: None, trace_re: None, trace_im: None, a1: None, a2: None },
                    2,
                ),
            };
            write_output(&to_json_bytes(&payload)?, out.as_ref())?;
            Ok(code)
        }
        WordsCmd::KernelRank { n_dim, p, trials, seed, out } => {
            #[derive(Serialize)]
            struct RankOut {
                rank: usize,
                kernel_dim: usize,
            }
            let (rank, kernel_dim) = kernel_rank(n_dim, p, trials, RngState::new(seed))?;
            write_output(&to_json_bytes(&RankOut { rank, kernel_dim })?, out.as_ref())?;
            Ok(0)
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum LabelOut {
    Unit,
    ChebT { letter: u8, degree: usize },
    UProduct { word: Vec<u8> },
}

impl From<&XiLabel> for LabelOut {
    fn from(label: &XiLabel) -> Self {
        match label {
            XiLabel::Unit => LabelOut::Unit,
            XiLabel::ChebT { letter, degree } => LabelOut::ChebT { letter: *letter, degree: *degree },
            XiLabel::UProduct { representative } => LabelOut::UProduct { word: representative.letters().to_vec() },
        }
    }
}

fn run_cheb(cmd: ChebCmd) -> anyhow::Result<i32> {
    match cmd {
        ChebCmd::Table { kind, n, u, v, out } => {
            #[derive(Serialize)]
            struct Row {
                degree: usize,
                coeffs: Vec<f64>,
            }
            let rows: Result<Vec<Row>, _> = (0..=n)
                .map(|degree| {
                    let p = match (u, v) {
                        (Some(u), Some(v)) => shifted_cheb(kind.into(), degree, u, v)?,
                        _ => cheb(kind.into(), degree),
                    };
                    Ok::<Row, eigensum::chebyshev::ChebError>(Row { degree, coeffs: p.coeffs().to_vec() })
                })
                .collect();
            write_output(&to_json_bytes(&rows?)?, out.as_ref())?;
            Ok(0)
        }
        ChebCmd::Alpha { n, out } => {
            #[derive(Serialize)]
            struct AlphaOut {
                alpha: Vec<f64>,
            }
            if n < 1 {
                bail!("--n must be at least 1");
            }
            let alpha: Result<Vec<f64>, _> = (1..=n).map(eigensum::chebyshev::alpha_coeff).collect();
            write_output(&to_json_bytes(&AlphaOut { alpha: alpha? })?, out.as_ref())?;
            Ok(0)
        }
    }
}

fn run_fluct(cmd: FluctCmd) -> anyhow::Result<i32> {
    let report = match cmd {
        FluctCmd::Clt { n_dim, m, samples, seed, out } => {
            let report = clt_johansson(n_dim, m, samples, RngState::new(seed));
            (report, out)
        }
        FluctCmd::Sof { n_dim, samples, cross, seed, out } => {
            let x = eigensum::chebyshev::Polynomial::x();
            let (pts, qts) = if cross {
                (vec![x.clone(), x.clone()], vec![x.clone(), x.clone()])
            } else {
                (vec![x.clone()], vec![x.clone()])
            };
            let report = sof_experiment(&[x.clone()], &[x.clone()], &pts, &qts, n_dim, samples, RngState::new(seed))?;
            (report, out)
        }
        FluctCmd::Xi { u, v, max_degree, n_dim, samples, seed, out } => {
            let report = xi_fluctuations(u, v, max_degree, n_dim, samples, RngState::new(seed))?;
            (report, out)
        }
        FluctCmd::Anticonc { m1, m2, delta, out } => {
            #[derive(Serialize)]
            struct WOut {
                w: f64,
            }
            let w = anticoncentration_w(m1, m2, delta)?;
            write_output(&to_json_bytes(&WOut { w })?, out.as_ref())?;
            return Ok(0);
        }
        FluctCmd::Edge { n_dim, u, v, margin, samples, seed, out } => {
            let report = edge_containment(n_dim, u, v, margin, samples, RngState::new(seed))?;
            (report, out)
        }
    };
    let (report, out) = report;
    let ok = report.all_pass();
    write_output(&to_json_bytes(&report)?, out.as_ref())?;
    Ok(if ok { 0 } else { 2 })
}
