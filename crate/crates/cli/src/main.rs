use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use nonobtuse::generators::{cell_seed, generate, Family, GenConfig};
use nonobtuse::model::{load_instance, load_solution, save_instance, save_solution};
use nonobtuse::render::{render_svg, RenderStyle};
use nonobtuse::scoring::{score_instance, update_best_known, BestKnownTable, InstanceScore};
use nonobtuse::solver::{search_checked, solve_delaunay_baseline, SolverConfig};
use nonobtuse::{verify, Instance, Solution};

const INSTANCE_SUFFIX: &str = ".instance.json";
const SOLUTION_SUFFIX: &str = ".solution.json";

#[derive(Parser)]
#[command(name = "nonobtuse", version, about = "Generate, solve, verify, score and render non-obtuse triangulation instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverName {
    Baseline,
    LocalSearch,
}

#[derive(Subcommand)]
enum Command {
    /// Write generated instances as `<uid>.instance.json`.
    Generate {
        /// Family name, repeatable; `all` for every family.
        #[arg(long = "family", required = true)]
        families: Vec<String>,
        /// Point count, repeatable.
        #[arg(long = "n", required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, env = "NONOBTUSE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Solve instances and write `<uid>.solution.json` files.
    Solve {
        #[arg(required = true)]
        instances: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "local-search")]
        solver: SolverName,
        /// Seconds per instance.
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long, env = "NONOBTUSE_SEED")]
        seed: Option<u64>,
        #[arg(long)]
        iterations: Option<usize>,
        #[arg(long)]
        restarts: Option<usize>,
        /// Solver settings as JSON; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output file, only with a single instance.
        #[arg(long, conflicts_with = "out_dir")]
        out: Option<PathBuf>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check a solution; exit status 0 when valid, 1 when not.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Score every instance in a directory against a best-known table.
    Score {
        #[arg(long)]
        instances: PathBuf,
        #[arg(long)]
        solutions: PathBuf,
        #[arg(long)]
        best_known: PathBuf,
        /// Store improved Steiner counts back into the table.
        #[arg(long)]
        update_best: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Draw an instance, and optionally a solution, as SVG.
    Render {
        instance: PathBuf,
        #[arg(long)]
        solution: Option<PathBuf>,
        /// Style overrides as JSON.
        #[arg(long)]
        style: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

fn read_instance(path: &Path) -> Result<Instance> {
    load_instance(&read(path)?).with_context(|| format!("bad instance {}", path.display()))
}

fn read_solution(path: &Path) -> Result<Solution> {
    load_solution(&read(path)?).with_context(|| format!("bad solution {}", path.display()))
}

fn emit(value: impl Serialize) {
    println!("{}", serde_json::to_string(&value).expect("output serializes"));
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .context("cannot start worker threads")
}

/// Files in `dir` ending in `suffix`, sorted by name.
fn files_with_suffix(dir: &Path, suffix: &str) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("cannot list {}", dir.display()))? {
        let path = entry?.path();
        if path.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.ends_with(suffix)) {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

fn cmd_generate(families: &[String], sizes: &[usize], count: usize, seed: u64, out_dir: &Path) -> Result<ExitCode> {
    let mut fams = Vec::new();
    for name in families {
        if name == "all" {
            fams.extend(Family::ALL);
        } else {
            fams.push(name.parse::<Family>()?);
        }
    }
    fs::create_dir_all(out_dir).with_context(|| format!("cannot create {}", out_dir.display()))?;
    for &family in &fams {
        for &n in sizes {
            for k in 0..count {
                let inst = generate(&GenConfig::new(family, n, cell_seed(seed, family, n, k)))?;
                let path = out_dir.join(format!("{}{INSTANCE_SUFFIX}", inst.uid()));
                write(&path, &save_instance(&inst))?;
                emit(json!({ "uid": inst.uid(), "family": family.name(), "n": n, "path": path }));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    instances: &[PathBuf],
    solver: SolverName,
    budget: Option<f64>,
    seed: Option<u64>,
    iterations: Option<usize>,
    restarts: Option<usize>,
    config: Option<&Path>,
    out: Option<&Path>,
    out_dir: Option<&Path>,
    jobs: usize,
) -> Result<ExitCode> {
    let mut cfg = match config {
        Some(path) => serde_json::from_slice::<SolverConfig>(&read(path)?)
            .with_context(|| format!("bad solver config {}", path.display()))?,
        None => SolverConfig::default(),
    };
    if let Some(b) = budget {
        cfg.time_budget = b;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(i) = iterations {
        cfg.max_iterations = i;
    }
    if let Some(r) = restarts {
        cfg.restarts = r;
    }
    cfg.validate()?;
    let targets: Vec<(PathBuf, Option<PathBuf>)> = match (out, out_dir) {
        (Some(file), None) => {
            if instances.len() != 1 {
                bail!("--out takes a single instance; use --out-dir for several");
            }
            vec![(instances[0].clone(), Some(file.to_path_buf()))]
        }
        (None, Some(dir)) => {
            fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            instances.iter().map(|p| (p.clone(), None)).collect()
        }
        _ => bail!("one of --out or --out-dir is required"),
    };
    let loaded: Vec<(Instance, Option<PathBuf>)> = targets
        .into_iter()
        .map(|(p, o)| read_instance(&p).map(|i| (i, o)))
        .collect::<Result<_>>()?;

    let results: Vec<Result<(Solution, serde_json::Value)>> = pool(jobs)?.install(|| {
        loaded
            .par_iter()
            .map(|(inst, _)| -> Result<(Solution, serde_json::Value)> {
                let (sol, extra) = match solver {
                    SolverName::Baseline => (solve_delaunay_baseline(inst), json!({})),
                    SolverName::LocalSearch => {
                        let outcome = search_checked(inst, &cfg, None)?;
                        let extra = json!({
                            "baseline": outcome.baseline,
                            "iterations": outcome.iterations,
                        });
                        (outcome.solution, extra)
                    }
                };
                Ok((sol, extra))
            })
            .collect()
    });

    for ((inst, file), result) in loaded.iter().zip(results) {
        let (sol, extra) = result?;
        let path = match file {
            Some(f) => f.clone(),
            None => out_dir
                .expect("directory mode")
                .join(format!("{}{SOLUTION_SUFFIX}", inst.uid())),
        };
        write(&path, &save_solution(&sol))?;
        let report = verify(inst, &sol);
        emit(json!({
            "uid": inst.uid(),
            "valid": report.valid,
            "objective": report.objective(),
            "solver": extra,
            "path": path,
        }));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(instance: &Path, solution: &Path) -> Result<ExitCode> {
    let inst = read_instance(instance)?;
    let sol = read_solution(solution)?;
    let report = verify(&inst, &sol);
    emit(&report);
    for d in &report.errors {
        eprintln!("{}: {} {:?}", d.code, d.detail, d.indices);
    }
    Ok(if report.valid { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
struct ScoreLine {
    uid: String,
    score: f64,
    solved: bool,
    valid: bool,
    feasible: bool,
    obtuse: usize,
    steiner: usize,
}

impl ScoreLine {
    fn new(uid: &str, solved: bool, valid: bool, s: InstanceScore) -> Self {
        ScoreLine {
            uid: uid.to_string(),
            score: s.value,
            solved,
            valid,
            feasible: s.feasible,
            obtuse: s.obtuse_count,
            steiner: s.steiner_count,
        }
    }
}

fn cmd_score(instances: &Path, solutions: &Path, best_known: &Path, update_best: bool, jobs: usize) -> Result<ExitCode> {
    let insts: Vec<Instance> = files_with_suffix(instances, INSTANCE_SUFFIX)?
        .iter()
        .map(|p| read_instance(p))
        .collect::<Result<_>>()?;
    let mut sols: BTreeMap<String, Solution> = BTreeMap::new();
    for p in files_with_suffix(solutions, SOLUTION_SUFFIX)? {
        let sol = read_solution(&p)?;
        sols.insert(sol.instance_uid().to_string(), sol);
    }
    let mut table = if best_known.exists() {
        BestKnownTable::from_json(&read(best_known)?).with_context(|| format!("bad table {}", best_known.display()))?
    } else {
        BestKnownTable::new()
    };

    let reports: Vec<Option<nonobtuse::VerifyReport>> = pool(jobs)?.install(|| {
        insts
            .par_iter()
            .map(|inst| sols.get(inst.uid()).map(|sol| verify(inst, sol)))
            .collect()
    });

    // a feasible solution better than the table counts as the best known one
    let mut effective = table.clone();
    for (inst, report) in insts.iter().zip(&reports) {
        if let Some(r) = report.as_ref().filter(|r| r.valid && r.obtuse_count == 0) {
            effective = update_best_known(effective, inst.uid(), r.steiner_count);
        }
    }

    let mut lines = Vec::new();
    for (inst, report) in insts.iter().zip(&reports) {
        let line = match report {
            None => {
                eprintln!("warning: no solution for {}, scored 0", inst.uid());
                ScoreLine::new(inst.uid(), false, false, InstanceScore::zero())
            }
            Some(r) => {
                if !r.valid {
                    eprintln!("warning: invalid solution for {}, scored 0", inst.uid());
                }
                ScoreLine::new(inst.uid(), true, r.valid, score_instance(r, inst.uid(), &effective)?)
            }
        };
        lines.push(line);
    }
    let total: f64 = lines.iter().map(|l| l.score).sum();
    for l in &lines {
        emit(l);
    }
    emit(json!({ "total": total, "instances": lines.len() }));

    eprintln!("{:<48} {:>9} {:>7} {:>7}", "instance", "score", "obtuse", "steiner");
    for l in &lines {
        eprintln!(
            "{:<48} {:>9.6} {:>7} {:>7}",
            l.uid, l.score, l.obtuse, l.steiner
        );
    }
    eprintln!("{:<48} {:>9.6}", "total", total);

    if update_best {
        for (uid, k) in effective.iter() {
            table = update_best_known(table, uid, k);
        }
        write(best_known, &table.to_json())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_render(instance: &Path, solution: Option<&Path>, style: Option<&Path>, out: &Path) -> Result<ExitCode> {
    let inst = read_instance(instance)?;
    let sol = solution.map(read_solution).transpose()?;
    let style = match style {
        Some(p) => serde_json::from_slice::<RenderStyle>(&read(p)?).with_context(|| format!("bad style {}", p.display()))?,
        None => RenderStyle::default(),
    };
    style.validate()?;
    write(out, render_svg(&inst, sol.as_ref(), &style).as_bytes())?;
    emit(json!({ "uid": inst.uid(), "path": out }));
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate {
            families,
            sizes,
            count,
            seed,
            out_dir,
        } => cmd_generate(&families, &sizes, count, seed, &out_dir),
        Command::Solve {
            instances,
            solver,
            budget,
            seed,
            iterations,
            restarts,
            config,
            out,
            out_dir,
            jobs,
        } => cmd_solve(
            &instances,
            solver,
            budget,
            seed,
            iterations,
            restarts,
            config.as_deref(),
            out.as_deref(),
            out_dir.as_deref(),
            jobs,
        ),
        Command::Verify { instance, solution } => cmd_verify(&instance, &solution),
        Command::Score {
            instances,
            solutions,
            best_known,
            update_best,
            jobs,
        } => cmd_score(&instances, &solutions, &best_known, update_best, jobs),
        Command::Render {
            instance,
            solution,
            style,
            out,
        } => cmd_render(&instance, solution.as_deref(), style.as_deref(), &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
