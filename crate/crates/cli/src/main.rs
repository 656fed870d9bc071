//! `jastrow-lab`: model catalog, continuum verification, exchange-operator
//! algebra and lattice diagnostics.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 invalid input,
//! 3 term or dimension budget exceeded.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jastrow_core::Error;

use config::{overlay, RunConfig};
use report::write_atomic;

/// A diagnostic together with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::DimensionBudget { .. } => 3,
            Error::NoConvergence { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "jastrow-lab",
    version,
    about = "Parent Hamiltonians of Jastrow states: catalog, checks and proofs"
)]
struct Cli {
    /// key = value file; flags win over its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (default: JASTROW_LAB_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write tabular results as CSV here.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Standard output format.
    #[arg(long, global = true, value_parser = ["text", "json", "csv"])]
    format: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Registered models.
    #[command(subcommand)]
    Zoo(ZooCmd),
    /// Continuum checks of H Ψ₀ = E₀ Ψ₀.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Exact exchange-operator algebra.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Finite-grid matrix checks.
    #[command(subcommand)]
    Lattice(LatticeCmd),
}

#[derive(Subcommand, Debug)]
enum ZooCmd {
    /// List models with parameter schemas and energies.
    List {
        /// Only models on this geometry (line or ring).
        #[arg(long)]
        geometry: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Print one assembled Hamiltonian.
    Show(ModelOpts),
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Local-energy statistics over seeded configurations.
    LocalEnergy {
        #[command(flatten)]
        model: ModelOpts,
        #[command(flatten)]
        sampling: SampleOpts,
    },
    /// Contact-term cusp condition.
    Cusp(ModelOpts),
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    /// Commutator of two conserved quantities.
    Commute(AlgebraOpts),
    /// Project I₂/2m and compare with the homogeneous Hamiltonian.
    ProjectI2(AlgebraOpts),
    /// Exchange rules of π, a, a† and h.
    Rules(AlgebraOpts),
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// Exchange-operator identities, block diagonality and the lemma.
    Axioms {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        zeta: Option<i32>,
        #[command(flatten)]
        grid: GridOpts,
    },
    /// Exact diagonalization against the sampled ground state.
    Overlap {
        #[command(flatten)]
        model: ModelOpts,
        #[command(flatten)]
        grid: GridOpts,
    },
}

#[derive(Args, Debug)]
struct ModelOpts {
    #[arg(long)]
    model: Option<String>,
    /// Comma-separated key=value list.
    #[arg(long, allow_hyphen_values = true)]
    params: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// +1 bosons, -1 fermions.
    #[arg(long, allow_hyphen_values = true)]
    zeta: Option<i32>,
}

#[derive(Args, Debug)]
struct SampleOpts {
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Remove one term (external, two-body, delta, three-body, cross).
    #[arg(long)]
    drop_term: Option<String>,
}

#[derive(Args, Debug)]
struct AlgebraOpts {
    /// rational (λ/x) or rational-linear (λ/x − βx).
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Order pairs, e.g. 2,3 or 2,3;1,2.
    #[arg(long)]
    orders: Option<String>,
    /// harmonic: use h_i instead of π_i.
    #[arg(long)]
    trap: Option<String>,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    zeta: Option<i32>,
}

#[derive(Args, Debug)]
struct GridOpts {
    /// Site counts, comma-separated for a refinement study.
    #[arg(long)]
    sites: Option<String>,
    #[arg(long)]
    half_width: Option<f64>,
    /// Ring circumference for periodic grids.
    #[arg(long)]
    length: Option<f64>,
    /// periodic or box.
    #[arg(long)]
    boundary: Option<String>,
    /// Stencil order, 2 or 4.
    #[arg(long)]
    order: Option<u32>,
    #[arg(long)]
    min_overlap: Option<f64>,
    /// Export the finest Hamiltonian in coordinate format.
    #[arg(long)]
    coo: Option<PathBuf>,
}

impl ModelOpts {
    fn apply(&self, c: &mut RunConfig) {
        overlay(&mut c.model, &self.model);
        overlay(&mut c.params, &self.params);
        overlay(&mut c.n, &self.n);
        overlay(&mut c.zeta, &self.zeta);
    }
}

impl SampleOpts {
    fn apply(&self, c: &mut RunConfig) {
        overlay(&mut c.samples, &self.samples);
        overlay(&mut c.seed, &self.seed);
        overlay(&mut c.drop_term, &self.drop_term);
    }
}

impl AlgebraOpts {
    fn apply(&self, c: &mut RunConfig) {
        overlay(&mut c.family, &self.family);
        overlay(&mut c.n, &self.n);
        overlay(&mut c.orders, &self.orders);
        overlay(&mut c.trap, &self.trap);
        overlay(&mut c.budget, &self.budget);
        overlay(&mut c.zeta, &self.zeta);
    }
}

impl GridOpts {
    fn apply(&self, c: &mut RunConfig) {
        overlay(&mut c.sites, &self.sites);
        overlay(&mut c.half_width, &self.half_width);
        overlay(&mut c.length, &self.length);
        overlay(&mut c.boundary, &self.boundary);
        overlay(&mut c.order, &self.order);
        overlay(&mut c.min_overlap, &self.min_overlap);
        overlay(&mut c.coo, &self.coo);
    }
}

fn resolve(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut c = match &cli.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    overlay(&mut c.threads, &cli.threads);
    overlay(&mut c.out, &cli.out);
    overlay(&mut c.csv, &cli.csv);
    overlay(&mut c.format, &cli.format);
    match &cli.command {
        Command::Zoo(ZooCmd::List { geometry, n }) => {
            overlay(&mut c.geometry, geometry);
            overlay(&mut c.n, n);
        }
        Command::Zoo(ZooCmd::Show(m)) | Command::Verify(VerifyCmd::Cusp(m)) => m.apply(&mut c),
        Command::Verify(VerifyCmd::LocalEnergy { model, sampling }) => {
            model.apply(&mut c);
            sampling.apply(&mut c);
        }
        Command::Algebra(
            AlgebraCmd::Commute(a) | AlgebraCmd::ProjectI2(a) | AlgebraCmd::Rules(a),
        ) => a.apply(&mut c),
        Command::Lattice(LatticeCmd::Axioms { n, zeta, grid }) => {
            overlay(&mut c.n, n);
            overlay(&mut c.zeta, zeta);
            grid.apply(&mut c);
        }
        Command::Lattice(LatticeCmd::Overlap { model, grid }) => {
            model.apply(&mut c);
            grid.apply(&mut c);
        }
    }
    Ok(c)
}

fn configure_threads(c: &RunConfig) -> Result<(), Failure> {
    let threads = match c.threads {
        Some(k) => Some(k),
        None => match std::env::var("JASTROW_LAB_THREADS") {
            Ok(v) => Some(v.trim().parse().map_err(|_| {
                Failure::invalid(format!("JASTROW_LAB_THREADS: cannot parse '{v}'"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(k) = threads {
        if k == 0 {
            return Err(Failure::invalid("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| Failure::invalid(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let cfg = resolve(cli)?;
    configure_threads(&cfg)?;
    let format = cfg.format.clone().unwrap_or_else(|| "text".into());
    if !["text", "json", "csv"].contains(&format.as_str()) {
        return Err(Failure::invalid(format!("unknown format '{format}'")));
    }
    let report = match &cli.command {
        Command::Zoo(ZooCmd::List { .. }) => commands::zoo_list(&cfg)?,
        Command::Zoo(ZooCmd::Show(_)) => commands::zoo_show(&cfg)?,
        Command::Verify(VerifyCmd::LocalEnergy { .. }) => commands::verify_local_energy(&cfg)?,
        Command::Verify(VerifyCmd::Cusp(_)) => commands::verify_cusp(&cfg)?,
        Command::Algebra(AlgebraCmd::Commute(_)) => commands::algebra_commute(&cfg)?,
        Command::Algebra(AlgebraCmd::ProjectI2(_)) => commands::algebra_project_i2(&cfg)?,
        Command::Algebra(AlgebraCmd::Rules(_)) => commands::algebra_rules(&cfg)?,
        Command::Lattice(LatticeCmd::Axioms { .. }) => commands::lattice_axioms(&cfg)?,
        Command::Lattice(LatticeCmd::Overlap { .. }) => commands::lattice_overlap(&cfg)?,
    };
    let json =
        serde_json::to_string_pretty(&report.envelope(&cfg)).expect("report serializes") + "\n";
    if let Some(path) = &cfg.out {
        write_atomic(path, json.as_bytes())?;
    }
    if let (Some(path), Some(csv)) = (&cfg.csv, &report.csv) {
        write_atomic(path, csv.as_bytes())?;
    }
    match format.as_str() {
        "json" => print!("{json}"),
        "csv" => match &report.csv {
            Some(csv) => print!("{csv}"),
            None => {
                return Err(Failure::invalid(format!(
                    "'{}' has no tabular output",
                    report.command
                )))
            }
        },
        _ => {
            for line in &report.summary {
                println!("{line}");
            }
            println!("{}", if report.pass { "PASS" } else { "FAIL" });
        }
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("jastrow-lab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
