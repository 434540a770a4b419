//! Thin benchmark CLI over the lanopt library.
//!
//! Subcommands: `generate` (scenario + history files), `solve` (one method
//! on one scenario), `sweep` (a full experiment from a config file), and
//! `eval` (held-out evaluation of a dumped solution). Exit codes: 0 on
//! success, 2 on validation failure, 3 on solver non-convergence.

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use lanopt::harness::{
    ambiguity_from_history, datasets_from_csv, datasets_to_csv, default_sample_space,
    generate_eval_datasets, generate_history, generate_scenario, history_from_csv,
    history_to_csv, run_sweep, ExperimentConfig, Method, ScenarioOverrides,
};
use lanopt::scenario::{defaults, validate_scenario, Scenario, ScenarioConfig};
use lanopt::solver::{
    audit_solution, bounds_log_to_csv, decisions_from_csv, decisions_to_csv, trajectory_from_csv,
    trajectory_to_csv, SolveReport, SolverConfig,
};
use lanopt::uncertainty::SampleSpace;

const EXIT_VALIDATION: u8 = 2;
const EXIT_NONCONVERGENCE: u8 = 3;

#[derive(Parser)]
#[command(name = "lanopt", version, about = "offloading and trajectory optimization benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a scenario, its task-size history, and held-out datasets.
    Generate(GenerateArgs),
    /// Solve one scenario with one method and dump the solution.
    Solve(SolveArgs),
    /// Run a full parameter sweep from an experiment config.
    Sweep(SweepArgs),
    /// Evaluate a dumped solution on held-out datasets.
    Eval(EvalArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output directory for scenario.json, history.csv, datasets.csv.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    gus: Option<usize>,
    #[arg(long)]
    uavs: Option<usize>,
    #[arg(long)]
    slots: Option<usize>,
    /// History samples per GU.
    #[arg(long, default_value_t = defaults::HISTORY_SAMPLES)]
    history_samples: usize,
    /// Held-out datasets to draw.
    #[arg(long, default_value_t = 5)]
    eval_datasets: usize,
}

#[derive(Args)]
struct SolveArgs {
    /// Scenario config JSON. Omit to generate from --seed.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value = "drcoto")]
    method: String,
    /// Ambiguity radius.
    #[arg(long, default_value_t = defaults::EPSILON)]
    eps: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// History CSV (Mbit, one column per GU). Omit to generate from --seed.
    #[arg(long)]
    history: Option<PathBuf>,
    /// Held-out datasets CSV for actual-delay statistics.
    #[arg(long)]
    datasets: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    /// Experiment config JSON.
    #[arg(long)]
    config: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    /// Scenario config JSON the solution belongs to.
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    decisions: PathBuf,
    #[arg(long)]
    trajectory: PathBuf,
    #[arg(long)]
    datasets: PathBuf,
    /// Optional output directory for actual.csv (stdout otherwise).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Eval(args) => cmd_eval(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}

fn write(path: &Path, contents: &str) -> anyhow::Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn load_scenario(path: &Path) -> anyhow::Result<(Scenario, SampleSpace)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let cfg = ScenarioConfig::from_json(&text)?;
    let (scenario, samples_bits) = cfg.to_scenario()?;
    let space = SampleSpace::from_values(samples_bits)
        .map_err(|e| anyhow!("task sample space: {e}"))?;
    Ok((scenario, space))
}

fn cmd_generate(args: GenerateArgs) -> anyhow::Result<ExitCode> {
    std::fs::create_dir_all(&args.out)?;
    let mut ov = ScenarioOverrides::default();
    ov.num_gus = args.gus;
    ov.num_uavs = args.uavs;
    ov.num_slots = args.slots;
    let scenario = generate_scenario(args.seed, &ov);
    let violations = validate_scenario(&scenario);
    if !violations.is_empty() {
        eprintln!("generated scenario is invalid:");
        for v in violations {
            eprintln!("  {v}");
        }
        return Ok(ExitCode::from(EXIT_VALIDATION));
    }
    let space = default_sample_space();
    let history = generate_history(args.seed, &scenario, &space, args.history_samples);
    let datasets = generate_eval_datasets(args.seed, &history.truths, &space, args.eval_datasets);

    let cfg = ScenarioConfig::from_scenario(&scenario, space.values());
    write(&args.out.join("scenario.json"), &cfg.to_json())?;
    write(&args.out.join("history.csv"), &history_to_csv(&history))?;
    write(&args.out.join("datasets.csv"), &datasets_to_csv(&datasets))?;
    println!(
        "wrote scenario.json, history.csv, datasets.csv to {}",
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(args: SolveArgs) -> anyhow::Result<ExitCode> {
    let Some(method) = Method::parse(&args.method) else {
        eprintln!("unknown method {:?}; expected do, so, ro, or drcoto", args.method);
        return Ok(ExitCode::from(EXIT_VALIDATION));
    };
    let (scenario, space) = match &args.config {
        Some(path) => load_scenario(path)?,
        None => (
            generate_scenario(args.seed, &ScenarioOverrides::default()),
            default_sample_space(),
        ),
    };
    let violations = validate_scenario(&scenario);
    if !violations.is_empty() {
        eprintln!("scenario is invalid:");
        for v in violations {
            eprintln!("  {v}");
        }
        return Ok(ExitCode::from(EXIT_VALIDATION));
    }

    let samples = match &args.history {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            history_from_csv(&text)?
        }
        None => generate_history(args.seed, &scenario, &space, defaults::HISTORY_SAMPLES).samples,
    };
    if samples.len() != scenario.num_gus() {
        eprintln!(
            "history has {} columns but the scenario has {} GUs",
            samples.len(),
            scenario.num_gus()
        );
        return Ok(ExitCode::from(EXIT_VALIDATION));
    }
    let amb = match ambiguity_from_history(&samples, &space, args.eps) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("ambiguity set: {e}");
            return Ok(ExitCode::from(EXIT_VALIDATION));
        }
    };

    let solver_cfg = SolverConfig::default();
    let report = match lanopt::harness::solve_method(method, &scenario, &amb, &solver_cfg) {
        Ok(r) => r,
        Err(lanopt::solver::SolveError::InvalidScenario(v)) => {
            eprintln!("scenario is invalid: {v:?}");
            return Ok(ExitCode::from(EXIT_VALIDATION));
        }
        Err(e) => {
            eprintln!("solver failed: {e}");
            return Ok(ExitCode::from(EXIT_NONCONVERGENCE));
        }
    };

    std::fs::create_dir_all(&args.out)?;
    dump_report(&args.out, method, &scenario, &report, args.eps)?;

    if let Some(path) = &args.datasets {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let datasets = datasets_from_csv(&text)?;
        let (mean, std) = lanopt::harness::evaluate_actual(&report, &datasets, &scenario);
        write(
            &args.out.join("actual.csv"),
            &format!("method,mean,std\n{},{},{}\n", method.tag(), mean, std),
        )?;
        println!("actual delay over {} datasets: mean {mean:.4} s, std {std:.4} s", datasets.len());
    }

    println!(
        "{}: objective {:.4} s in {} outer / {} benders iterations ({:.1} s)",
        method.tag(),
        report.objective,
        report.outer_iters,
        report.benders_iters,
        report.wall_time
    );

    let audit = audit_solution(
        &scenario,
        &report.decisions,
        &report.trajectories,
        &report.worst_dists,
        &amb.space,
        &solver_cfg,
        1e-6,
    );
    if !audit.is_empty() {
        eprintln!("solution audit failed:");
        for v in audit {
            eprintln!("  {v}");
        }
        return Ok(ExitCode::from(EXIT_NONCONVERGENCE));
    }
    if !report.converged || !report.benders_converged {
        eprintln!("warning: iteration budget reached before convergence");
        return Ok(ExitCode::from(EXIT_NONCONVERGENCE));
    }
    Ok(ExitCode::SUCCESS)
}

fn dump_report(
    out: &Path,
    method: Method,
    scenario: &Scenario,
    report: &SolveReport,
    eps: f64,
) -> anyhow::Result<()> {
    let quota = scenario.uavs.first().map_or(0, |u| u.quota);
    write(
        &out.join("objective.csv"),
        &format!(
            "method,I,eps,quota,objective,wall_time\n{},{},{},{},{},{}\n",
            method.tag(),
            scenario.num_gus(),
            eps,
            quota,
            report.objective,
            report.wall_time
        ),
    )?;
    let mut bounds = String::from("omega,ub,lb\n");
    for (k, r) in report.bounds_log.iter().enumerate() {
        bounds.push_str(&format!("{},{},{}\n", k + 1, r.ub, r.lb));
    }
    write(&out.join("bounds.csv"), &bounds)?;
    write(&out.join("solve_log.csv"), &bounds_log_to_csv(&report.bounds_log))?;
    write(&out.join("decisions.csv"), &decisions_to_csv(&report.decisions))?;
    write(&out.join("trajectory.csv"), &trajectory_to_csv(&report.trajectories))?;
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> anyhow::Result<ExitCode> {
    let text = std::fs::read_to_string(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))?;
    let config = ExperimentConfig::from_json(&text)?;
    if let Err(e) = config.validate() {
        eprintln!("experiment config invalid: {e}");
        return Ok(ExitCode::from(EXIT_VALIDATION));
    }
    let result = run_sweep(&config, &SolverConfig::default());
    std::fs::create_dir_all(&config.output_dir)?;
    write(&config.output_dir.join("objective.csv"), &result.objective_csv())?;
    write(&config.output_dir.join("actual.csv"), &result.actual_csv())?;
    println!(
        "wrote {} objective rows and {} actual rows to {}",
        result.objective_rows.len(),
        result.actual_rows.len(),
        config.output_dir.display()
    );
    for v in &result.trend_violations {
        eprintln!("trend violation: {v}");
    }
    if !result.failed_cells.is_empty() {
        for f in &result.failed_cells {
            eprintln!("failed cell: {f}");
        }
        return Ok(ExitCode::from(EXIT_NONCONVERGENCE));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_eval(args: EvalArgs) -> anyhow::Result<ExitCode> {
    let (scenario, _space) = load_scenario(&args.config)?;
    let violations = validate_scenario(&scenario);
    if !violations.is_empty() {
        eprintln!("scenario is invalid: {violations:?}");
        return Ok(ExitCode::from(EXIT_VALIDATION));
    }
    let dec_text = std::fs::read_to_string(&args.decisions)
        .with_context(|| format!("reading {}", args.decisions.display()))?;
    let decisions = match decisions_from_csv(&dec_text, &scenario) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("decisions file: {e}");
            return Ok(ExitCode::from(EXIT_VALIDATION));
        }
    };
    let traj_text = std::fs::read_to_string(&args.trajectory)
        .with_context(|| format!("reading {}", args.trajectory.display()))?;
    let trajectory = match trajectory_from_csv(&traj_text, &scenario) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("trajectory file: {e}");
            return Ok(ExitCode::from(EXIT_VALIDATION));
        }
    };
    let bad_dec = decisions.validate(&scenario);
    let bad_traj = trajectory.validate(&scenario, 1e-6);
    if !bad_dec.is_empty() || !bad_traj.is_empty() {
        eprintln!("solution fails validation:");
        for v in bad_dec.iter().chain(bad_traj.iter()) {
            eprintln!("  {v}");
        }
        return Ok(ExitCode::from(EXIT_VALIDATION));
    }

    let ds_text = std::fs::read_to_string(&args.datasets)
        .with_context(|| format!("reading {}", args.datasets.display()))?;
    let datasets = datasets_from_csv(&ds_text)?;
    let (mean, std) =
        lanopt::harness::evaluate_actual_raw(&decisions, &trajectory, &scenario, &datasets);
    let csv = format!("method,mean,std\neval,{mean},{std}\n");
    match &args.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            write(&dir.join("actual.csv"), &csv)?;
        }
        None => print!("{csv}"),
    }
    println!("actual delay over {} datasets: mean {mean:.4} s, std {std:.4} s", datasets.len());
    Ok(ExitCode::SUCCESS)
}
