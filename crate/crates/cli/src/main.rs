use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use subtour_core::bench::{
    emit_comparison, emit_sweep, generate_instance, run_comparison, run_curvature_sweep, solve, summary_text,
    sweep_text, Algorithm, CostConfig, ExperimentConfig, InstanceFile,
};
use subtour_core::error::{Error, Result};
use subtour_core::exact::{verify_certificates, AdditiveBound, VerifyOptions};
use subtour_core::objectives::{curvature, CombinedCostObjective, CostMode, ObjectiveSpec, ValueOracle};
use subtour_core::SolveReport;

/// Max-reward Hamiltonian tours under submodular edge rewards.
#[derive(Parser)]
#[command(name = "subtour", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one instance file per (size, instance) into <out>/instances.
    Gen(Overrides),
    /// Solve one instance file and print the reports as JSON.
    Solve(SolveArgs),
    /// Run the algorithm comparison and write CSV and text summaries.
    Compare(Overrides),
    /// Run the curvature sweep and write CSV and text summaries.
    Sweep(Overrides),
    /// Check solver certificates on a small instance against exhaustive optima.
    Verify(SolveArgs),
}

#[derive(Args, Default)]
struct Overrides {
    /// TOML experiment config; defaults apply to missing keys.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated instance sizes.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Comma-separated algorithms: GT, RT, GM, GM2, GM3, LGmatching, Lmatching.
    #[arg(long, value_delimiter = ',')]
    algos: Option<Vec<Algorithm>>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    grid_h: Option<f64>,
    /// Cost weight in (1-β)·reward - β·length.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    mode: Option<CostMode>,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file (JSON).
    instance: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "GT,RT,GM,GM2,GM3")]
    algos: Vec<Algorithm>,
    /// Seed for the randomised algorithms.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Re-evaluate a cost objective in another mode.
    #[arg(long)]
    mode: Option<CostMode>,
}

impl Overrides {
    fn resolve(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::load(p)?,
            None => ExperimentConfig::default(),
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(s) = &self.sizes {
            cfg.sizes = s.clone();
        }
        if let Some(a) = &self.algos {
            cfg.algorithms = a.clone();
        }
        if let Some(o) = &self.out {
            cfg.out = o.clone();
        }
        if let Some(h) = self.grid_h {
            cfg.grid_h = h;
        }
        match (self.beta, self.mode, &mut cfg.cost) {
            (Some(beta), mode, cost) => {
                let prev = cost.map_or(CostMode::Raw, |c| c.mode);
                let offset = cost.is_some_and(|c| c.top_cost_offset);
                *cost = Some(CostConfig { beta, mode: mode.unwrap_or(prev), top_cost_offset: offset });
            }
            (None, Some(mode), Some(c)) => c.mode = mode,
            (None, Some(_), None) => return Err(Error::Config("--mode needs a cost model; pass --beta".into())),
            (None, None, _) => {}
        }
        Ok(cfg)
    }
}

fn load_instance(args: &SolveArgs) -> Result<InstanceFile> {
    let mut file = InstanceFile::load(&args.instance)?;
    if let Some(mode) = args.mode {
        file.objective = file.objective.with_mode(mode);
    }
    Ok(file)
}

fn solve_all(file: &InstanceFile, args: &SolveArgs) -> Result<Vec<SolveReport>> {
    let (inst, f) = file.build()?;
    let kappa = curvature(&ValueOracle::from_arc(f.clone()))?.kappa;
    args.algos
        .iter()
        .map(|&alg| {
            let mut r = solve(alg, &inst, &f, args.seed)?;
            r.certify(kappa);
            Ok(r)
        })
        .collect()
}

fn gen(cfg: &ExperimentConfig) -> Result<()> {
    cfg.validate()?;
    let dir = cfg.out.join("instances");
    std::fs::create_dir_all(&dir)?;
    for &n in &cfg.sizes {
        for i in 0..cfg.instances {
            let path = dir.join(format!("n{n}_i{i}.json"));
            generate_instance(&cfg.generator(n, i))?.save(&path)?;
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn print_paths(paths: &[PathBuf]) {
    for p in paths {
        eprintln!("wrote {}", p.display());
    }
}

/// Additive check for the raw and normalized reward-minus-cost objectives,
/// which may be negative and non-monotone. The shifted form is checked as a
/// ratio like any other monotone objective.
fn additive(file: &InstanceFile, n: usize) -> Result<Option<AdditiveBound>> {
    let ObjectiveSpec::Combined { base, cost, beta, mode, m_c, .. } = &file.objective else { return Ok(None) };
    let inst = file.instance()?;
    let costs = cost.resolve(&inst)?;
    let max_c = costs.iter().copied().fold(0.0, f64::max);
    let scale = match mode {
        CostMode::Shifted => return Ok(None),
        CostMode::Raw => 1.0,
        CostMode::Normalized => match m_c {
            Some(m) => *m,
            None => CombinedCostObjective::new(base.build(&inst)?, costs, *beta, *mode, n)?.normalizers().1,
        },
    };
    Ok(Some(AdditiveBound { m: beta * max_c / scale, basis_size: n }))
}

fn verify(args: &SolveArgs) -> Result<bool> {
    let file = load_instance(args)?;
    let reports = solve_all(&file, args)?;
    let (inst, f) = file.build()?;
    let opts = VerifyOptions { additive: additive(&file, inst.n())?, ..Default::default() };
    let verdicts = verify_certificates(&inst, &ValueOracle::from_arc(f), &reports, &opts)?;
    let mut ok = true;
    for v in &verdicts {
        println!(
            "{} {:<12} {:>12.4} vs {} {:>12.4} (required {:.4}, ratio {:.4})",
            if v.pass { "PASS" } else { "FAIL" },
            v.algorithm,
            v.value,
            v.reference,
            v.optimum,
            v.required,
            v.ratio
        );
        ok &= v.pass;
    }
    Ok(ok)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen(o) => gen(&o.resolve()?)?,
        Command::Solve(args) => {
            let reports = solve_all(&load_instance(&args)?, &args)?;
            println!("{}", serde_json::to_string_pretty(&reports)?);
        }
        Command::Compare(o) => {
            let cfg = o.resolve()?;
            let res = run_comparison(&cfg)?;
            print_paths(&emit_comparison(&res, &cfg.out)?);
            print!("{}", summary_text(&res));
        }
        Command::Sweep(o) => {
            let cfg = o.resolve()?;
            let res = run_curvature_sweep(&cfg)?;
            print_paths(&emit_sweep(&res, &cfg.out)?);
            print!("{}", sweep_text(&res));
        }
        Command::Verify(args) => return verify(&args),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
