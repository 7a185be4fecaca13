//! `mwpsas` command-line front end.
//!
//! Exit codes: 0 success, 1 domain or I/O error, 2 usage error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use mwpsas::approx::{approximate_partition, deviation_bound, lower_bound, Strategy};
use mwpsas::exact::{exact_solve, Decision};
use mwpsas::format::{
    instance_digest, parse_decision, parse_graph, parse_instance, parse_part3, parse_partition,
    write_decision, write_instance, write_partition,
};
use mwpsas::generate::{generate_instance, GenParams, Variant};
use mwpsas::model::{evaluate_objective, Instance, Partition};
use mwpsas::reductions::{reduce_clique, reduce_part3_m1, reduce_part3_n1, DecisionInstance};
use mwpsas::report::{bound_lines, RunReport};
use mwpsas::sched::lpt_partition;
use mwpsas::Weight;

#[derive(Parser)]
#[command(name = "mwpsas", version, about = "Partition a weighted set whose elements share associated subsets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the approximation algorithm with an initial-partition strategy
    Solve(SolveArgs),
    /// Solve exactly by branch and bound; optionally answer a decision query
    Exact(ExactArgs),
    /// Print the threshold, lower bound and deviation bound for a strategy
    Bound(BoundArgs),
    /// Build a decision instance from a CLIQUE or 3-PARTITION input
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Generate a seeded random instance
    Gen(GenArgs),
    /// Check a partition file against an instance and evaluate it
    Verify(VerifyArgs),
    /// LPT baseline on the parallel-machine view of an N1 instance
    Lpt(LptArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Whole,
    Singletons,
    GroupM1,
}

impl From<StrategyArg> for Strategy {
    fn from(arg: StrategyArg) -> Self {
        match arg {
            StrategyArg::Whole => Strategy::Whole,
            StrategyArg::Singletons => Strategy::Singletons,
            StrategyArg::GroupM1 => Strategy::GroupM1,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    General,
    M1,
    N1,
}

impl From<VariantArg> for Variant {
    fn from(arg: VariantArg) -> Self {
        match arg {
            VariantArg::General => Variant::General,
            VariantArg::M1 => Variant::M1,
            VariantArg::N1 => Variant::N1,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "whole")]
    strategy: StrategyArg,
    /// Also compute the exact optimum for the report
    #[arg(long)]
    exact: bool,
    /// Time budget for --exact, in milliseconds
    #[arg(long)]
    timeout_ms: Option<u64>,
    /// Write the partition here
    #[arg(long)]
    partition_out: Option<PathBuf>,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Time budget in milliseconds
    #[arg(long)]
    timeout_ms: Option<u64>,
    /// Decision target C
    #[arg(long, conflicts_with = "decision")]
    target: Option<u64>,
    /// Decision file written by `reduce`; supplies the target
    #[arg(long)]
    decision: Option<PathBuf>,
    #[arg(long)]
    partition_out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "whole")]
    strategy: StrategyArg,
}

#[derive(Args)]
struct ReduceOut {
    /// Instance output file
    #[arg(long)]
    out: PathBuf,
    /// Decision file (target and provenance); defaults to the instance path with extension `.dec`
    #[arg(long)]
    decision_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// CLIQUE to a two-machine unit-weight instance
    Clique {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: ReduceOut,
    },
    /// 3-PARTITION to an M1 instance
    #[command(name = "part3-m1")]
    Part3M1 {
        #[arg(long)]
        part3: PathBuf,
        #[command(flatten)]
        out: ReduceOut,
    },
    /// 3-PARTITION to an N1 instance
    #[command(name = "part3-n1")]
    Part3N1 {
        #[arg(long)]
        part3: PathBuf,
        #[command(flatten)]
        out: ReduceOut,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m_set: usize,
    #[arg(long)]
    machines: usize,
    #[arg(long, default_value_t = 1)]
    max_weight: u64,
    #[arg(long, value_enum, default_value = "general")]
    variant: VariantArg,
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    partition: PathBuf,
}

#[derive(Args)]
struct LptArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    partition_out: Option<PathBuf>,
}

enum Failure {
    Domain(mwpsas::Error),
    Io(String),
}

impl From<mwpsas::Error> for Failure {
    fn from(err: mwpsas::Error) -> Self {
        Failure::Domain(err)
    }
}

type CmdResult = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    Ok(parse_instance(&read(path)?)?)
}

fn budget(timeout_ms: Option<u64>) -> Option<Duration> {
    timeout_ms.map(Duration::from_millis)
}

/// Re-evaluates a solver's partition before it is reported.
fn self_check(inst: &Instance, part: &Partition, claimed: Weight) -> Result<(), Failure> {
    if part.len() != inst.machines() {
        return Err(mwpsas::Error::InternalInvariant(format!(
            "partition has {} blocks, expected {}",
            part.len(),
            inst.machines()
        ))
        .into());
    }
    let value = evaluate_objective(inst, part)?;
    if value != claimed {
        return Err(mwpsas::Error::InternalInvariant(format!(
            "reported objective {claimed} but partition evaluates to {value}"
        ))
        .into());
    }
    Ok(())
}

fn blocks_text(part: &Partition) -> String {
    part.blocks()
        .iter()
        .map(|b| {
            b.iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

fn maybe_write_partition(path: &Option<PathBuf>, inst: &Instance, part: &Partition) -> Result<(), Failure> {
    if let Some(path) = path {
        write(path, &write_partition(part, Some(&instance_digest(inst))))?;
    }
    Ok(())
}

fn solve(args: SolveArgs) -> CmdResult {
    let start = Instant::now();
    let inst = load_instance(&args.instance)?;
    let strategy = Strategy::from(args.strategy);
    let init = strategy.initial_partition(&inst)?;
    let bounds = deviation_bound(&inst, &init)?;
    let approx = approximate_partition(&inst, &init)?;
    self_check(&inst, &approx.partition, approx.objective)?;
    let exact_optimum = if args.exact {
        let res = exact_solve(&inst, budget(args.timeout_ms))?;
        (!res.timed_out).then_some(res.optimum)
    } else {
        None
    };
    maybe_write_partition(&args.partition_out, &inst, &approx.partition)?;
    let report = RunReport {
        instance_digest: instance_digest(&inst),
        strategy: strategy.name().to_string(),
        f_value: approx.objective,
        bounds,
        exact_optimum,
        elapsed: start.elapsed(),
    };
    report.check()?;
    let mut out = report.to_text();
    let _ = writeln!(out, "blocks {}", blocks_text(&approx.partition));
    Ok(out)
}

fn exact(args: ExactArgs) -> CmdResult {
    let start = Instant::now();
    let inst = load_instance(&args.instance)?;
    let target = match (&args.decision, args.target) {
        (Some(path), _) => Some(parse_decision(&read(path)?, inst.clone())?.target),
        (None, t) => t.map(Weight::new),
    };
    let res = exact_solve(&inst, budget(args.timeout_ms))?;
    self_check(&inst, &res.witness, res.optimum)?;
    maybe_write_partition(&args.partition_out, &inst, &res.witness)?;

    let mut out = String::new();
    let _ = writeln!(out, "instance_digest {}", instance_digest(&inst));
    let _ = writeln!(out, "optimum {}", res.optimum);
    let _ = writeln!(out, "lower_bound {}", lower_bound(&inst));
    let _ = writeln!(out, "timed_out {}", res.timed_out);
    let _ = writeln!(out, "nodes_explored {}", res.nodes_explored);
    if let Some(c) = target {
        let decision = if res.optimum <= c {
            Decision::Yes
        } else if res.timed_out {
            Decision::Unknown
        } else {
            Decision::No
        };
        let _ = writeln!(out, "target {c}");
        let _ = writeln!(out, "decision {}", decision.name());
    }
    let _ = writeln!(out, "blocks {}", blocks_text(&res.witness));
    let _ = writeln!(out, "elapsed_us {}", start.elapsed().as_micros());
    Ok(out)
}

fn bound(args: BoundArgs) -> CmdResult {
    let inst = load_instance(&args.instance)?;
    let strategy = Strategy::from(args.strategy);
    let bounds = deviation_bound(&inst, &strategy.initial_partition(&inst)?)?;
    Ok(format!(
        "instance_digest {}\nstrategy {}\n{}",
        instance_digest(&inst),
        strategy.name(),
        bound_lines(&bounds)
    ))
}

fn emit_decision(d: DecisionInstance, out: ReduceOut) -> CmdResult {
    let decision_path = out
        .decision_out
        .unwrap_or_else(|| out.out.with_extension("dec"));
    write(&out.out, &write_instance(&d.instance))?;
    write(&decision_path, &write_decision(&d))?;
    Ok(format!(
        "source {}\nn_count {}\nm_count {}\nmachines {}\ntarget {}\ninstance {}\ndecision_file {}\n",
        d.source.name(),
        d.instance.n_count(),
        d.instance.m_count(),
        d.instance.machines(),
        d.target,
        out.out.display(),
        decision_path.display()
    ))
}

fn reduce(cmd: ReduceCommand) -> CmdResult {
    match cmd {
        ReduceCommand::Clique { graph, k, out } => {
            let g = parse_graph(&read(&graph)?)?;
            emit_decision(reduce_clique(&g, k)?, out)
        }
        ReduceCommand::Part3M1 { part3, out } => {
            let p3 = parse_part3(&read(&part3)?)?;
            emit_decision(reduce_part3_m1(&p3)?, out)
        }
        ReduceCommand::Part3N1 { part3, out } => {
            let p3 = parse_part3(&read(&part3)?)?;
            emit_decision(reduce_part3_n1(&p3)?, out)
        }
    }
}

fn gen(args: GenArgs) -> CmdResult {
    let inst = generate_instance(&GenParams {
        seed: args.seed,
        n: args.n,
        m_set: args.m_set,
        machines: args.machines,
        max_weight: args.max_weight,
        variant: args.variant.into(),
    })?;
    let text = write_instance(&inst);
    match args.out {
        Some(path) => {
            write(&path, &text)?;
            Ok(format!("instance_digest {}\n", instance_digest(&inst)))
        }
        None => Ok(text),
    }
}

fn verify(args: VerifyArgs) -> CmdResult {
    let inst = load_instance(&args.instance)?;
    let file = parse_partition(&read(&args.partition)?)?;
    file.verify_against(&inst)?;
    let value = evaluate_objective(&inst, &file.partition)?;
    Ok(format!(
        "valid true\nblocks {}\nblock_count {}\nmachines {}\nf_value {}\n",
        blocks_text(&file.partition),
        file.partition.len(),
        inst.machines(),
        value
    ))
}

fn lpt(args: LptArgs) -> CmdResult {
    let inst = load_instance(&args.instance)?;
    let res = lpt_partition(&inst)?;
    self_check(&inst, &res.partition, res.makespan)?;
    maybe_write_partition(&args.partition_out, &inst, &res.partition)?;
    Ok(format!(
        "instance_digest {}\nmakespan {}\nlower_bound {}\nfilled_idle {}\nblocks {}\n",
        instance_digest(&inst),
        res.makespan,
        lower_bound(&inst),
        res.filled_idle,
        blocks_text(&res.partition)
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Exact(args) => exact(args),
        Command::Bound(args) => bound(args),
        Command::Reduce(cmd) => reduce(cmd),
        Command::Gen(args) => gen(args),
        Command::Verify(args) => verify(args),
        Command::Lpt(args) => lpt(args),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(err)) => {
            eprintln!("error: {}: {err}", err.kind());
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
