use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rankguard::acceptance;
use rankguard::codes::LinearCode;
use rankguard::config::{self, CodeJson, ExperimentConfig, ModeJson, ProposedParams, SchemeJson};
use rankguard::decoder::{self, CapabilityMode};
use rankguard::error::{Error, Result};
use rankguard::rank_metrics;
use rankguard::security::{self, JointDistribution};

#[derive(Parser)]
#[command(name = "rankguard", version, about = "Nested coset coding over rank-metric codes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dist {
    Uniform,
    /// Use the coset distribution stored in the scheme file.
    Scheme,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the standard scheme from a Gabidulin [l+n, k] code and print it as JSON.
    BuildScheme {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Little-endian modulus coefficients, comma separated.
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// RDIP and RGRW tables of a code pair as CSV.
    Rgrw {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        subcode: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// RDIP table of a code pair as CSV.
    Rdip {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        subcode: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Worst-case leakage to μ tapped links.
    Equivocation {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        mu: usize,
        #[arg(long, value_enum, default_value_t = Dist::Uniform)]
        dist: Dist,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Universal maximum strength: exact value, bounds and a direct check.
    Strength {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// End-to-end trials from an experiment config; one CSV row per trial.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check decoding for every (or sampled) channel within the given budgets.
    VerifyCapability {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        rho: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = decoder::DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named acceptance suite.
    Acceptance {
        suite: String,
    },
}

fn load_pair(code: &Path, subcode: Option<&Path>) -> Result<(LinearCode, LinearCode)> {
    let c1 = config::read_json::<CodeJson>(code, "code")?.to_code().map_err(|e| config::in_field("code", e))?;
    let c2 = match subcode {
        Some(p) => {
            let j: CodeJson = config::read_json(p, "subcode")?;
            if (j.q, j.m, &j.modulus) != (c1.ctx().q(), c1.ctx().m(), &c1.ctx().modulus().to_vec()) {
                return Err(Error::Config { field: "subcode".into(), reason: "field differs from the code's".into() });
            }
            j.to_code().map_err(|e| config::in_field("subcode", e))?
        }
        None => LinearCode::zero(c1.ctx().clone(), c1.n()),
    };
    Ok((c1, c2))
}

fn load_scheme(path: &Path) -> Result<rankguard::coset_scheme::NestedScheme> {
    config::read_json::<SchemeJson>(path, "scheme")?.to_scheme()
}

fn run(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::BuildScheme { q, m, l, n, k, modulus, seed, out } => {
            let s = ProposedParams { q, m, modulus, l, n, k }.build("")?.with_seed(seed);
            config::emit(out.as_deref(), &config::to_json_pretty(&SchemeJson::from_scheme(&s)))?;
        }
        Cmd::Rgrw { code, subcode, out } => {
            let (c1, c2) = load_pair(&code, subcode.as_deref())?;
            let p = rank_metrics::rdip(&c1, &c2).map_err(|e| config::in_field("subcode", e))?;
            let w = rank_metrics::weights_from_profile(&p);
            config::emit(out.as_deref(), &config::profile_csv(Some(&p), Some(&w)))?;
        }
        Cmd::Rdip { code, subcode, out } => {
            let (c1, c2) = load_pair(&code, subcode.as_deref())?;
            let p = rank_metrics::rdip(&c1, &c2).map_err(|e| config::in_field("subcode", e))?;
            config::emit(out.as_deref(), &config::profile_csv(Some(&p), None))?;
        }
        Cmd::Equivocation { scheme, mu, dist, out } => {
            let mut s = load_scheme(&scheme)?;
            if mu > s.n() {
                return Err(Error::Config { field: "mu".into(), reason: format!("mu = {mu} exceeds n = {}", s.n()) });
            }
            if let Dist::Uniform = dist {
                s = s.with_distribution(rankguard::coset_scheme::CosetDistribution::Uniform)?;
            }
            let d = JointDistribution::uniform(&s)?;
            let r = security::universal_equivocation(&s, &d, mu)?;
            config::emit(out.as_deref(), &config::to_json_pretty(&r))?;
        }
        Cmd::Strength { scheme, out } => {
            let s = load_scheme(&scheme)?;
            let d = JointDistribution::uniform(&s)?;
            let exact = security::omega_exact(&s)?;
            let bounds = security::omega_bounds(&s)?;
            let check = security::confirm_strength(&s, &d, exact.omega)?;
            let v = json!({ "omega": exact, "bounds": bounds, "check": check });
            config::emit(out.as_deref(), &config::to_json_pretty(&v))?;
        }
        Cmd::Simulate { config: path, out } => {
            let cfg = ExperimentConfig::from_json(&config::read_text(&path, "config")?)?;
            let s = cfg.validate()?;
            let n_out = cfg.n_out(&s);
            let sc = &cfg.scenario;
            let rows = match sc.mode {
                ModeJson::Sampled => decoder::simulate(&s, n_out, sc.t, sc.rho_max, sc.trials, cfg.seed)?,
                ModeJson::Exhaustive => decoder::simulate_exhaustive(&s, n_out, sc.t, sc.rho_max)?,
            };
            let out = out.or(cfg.out.as_ref().map(PathBuf::from));
            config::emit(out.as_deref(), &decoder::trials_csv(&rows))?;
        }
        Cmd::VerifyCapability { scheme, t, rho, mode, trials, budget, seed, out } => {
            let s = load_scheme(&scheme)?;
            if rho > s.n() {
                return Err(Error::Config { field: "rho".into(), reason: format!("rho = {rho} exceeds n = {}", s.n()) });
            }
            let mode = match mode {
                Mode::Exhaustive => CapabilityMode::Exhaustive,
                Mode::Sampled => CapabilityMode::Sampled { trials, seed },
            };
            let r = decoder::capability_report(&s, t, rho, mode, budget)?;
            config::emit(out.as_deref(), &config::to_json_pretty(&r))?;
            return Ok(r.verified);
        }
        Cmd::Acceptance { suite } => {
            let ids = acceptance::suite_ids(&suite)?;
            let mut all = true;
            for &id in ids {
                let r = acceptance::run_criterion(id)?;
                println!("{}", r.line());
                all &= r.passed;
            }
            return Ok(all);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("RANKGUARD_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
