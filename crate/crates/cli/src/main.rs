use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use pmlg_core::{
    bench_scaling, build_artifact, degree_stats, find_matches, gen_ov_instance, is_acyclic,
    is_deterministic, match_exists, random_batch, read_graph, read_ov, read_pattern,
    validate_graph, verify_batch, verify_reduction, write_graph, write_ov, write_pattern,
    BatchItem, GenMode, Variant, VerificationReport,
};

const EXIT_NO_MATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DISAGREE: u8 = 3;

/// Pattern matching in labeled graphs and Orthogonal Vectors reductions.
#[derive(Parser)]
#[command(name = "pmlg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an Orthogonal Vectors instance.
    Gen(GenArgs),
    /// Compile an instance into graph and pattern files.
    Reduce(ReduceArgs),
    /// Search a graph for a pattern.
    Match(MatchArgs),
    /// Check a reduction against the brute-force solver.
    Verify(VerifyArgs),
    /// Time the matcher on growing reductions.
    Bench(BenchArgs),
    /// Structural statistics of a graph file.
    Stats(StatsArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "random")]
    mode: GenMode,
    /// Output file; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    instance: PathBuf,
    #[arg(long, default_value = "undirected")]
    variant: Variant,
    #[arg(long)]
    binary: bool,
    /// Recorded in the metadata line.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct MatchArgs {
    graph: PathBuf,
    pattern: PathBuf,
    #[arg(long)]
    report_occurrences: bool,
    #[arg(long, default_value_t = 10)]
    limit: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Instance file; alternatively use --random or --count.
    instance: Option<PathBuf>,
    /// Generate the instance: N D SEED MODE.
    #[arg(long, num_args = 4, value_names = ["N", "D", "SEED", "MODE"], conflicts_with = "instance")]
    random: Option<Vec<String>>,
    /// Verify this many seeded random instances.
    #[arg(long, conflicts_with_all = ["instance", "random"])]
    count: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// A variant name or `all`.
    #[arg(long, default_value = "all")]
    variant: String,
    #[arg(long)]
    binary: bool,
    #[arg(long)]
    no_timings: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value = "undirected")]
    variant: Variant,
    /// Comma-separated, strictly increasing.
    #[arg(long, value_delimiter = ',', default_value = "16,32,64,128")]
    n: Vec<usize>,
    #[arg(long, default_value_t = 32)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct StatsArgs {
    graph: PathBuf,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn variants(name: &str) -> Result<Vec<Variant>> {
    if name == "all" {
        return Ok(Variant::ALL.to_vec());
    }
    name.parse::<Variant>()
        .map(|v| vec![v])
        .map_err(anyhow::Error::msg)
}

fn gen(args: GenArgs) -> Result<u8> {
    let inst = gen_ov_instance(args.n, args.d, args.seed, args.mode)?;
    let text = write_ov(&inst);
    match args.output {
        Some(path) => write(&path, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn reduce(args: ReduceArgs) -> Result<u8> {
    let inst = read_ov(&read(&args.instance)?)?;
    let art = build_artifact(&inst, args.variant, args.binary)?;
    fs::create_dir_all(&args.out_dir)?;
    write(&args.out_dir.join("graph.txt"), &write_graph(&art.graph))?;
    let names: Vec<String> = if art.patterns.len() == 1 {
        vec!["pattern.txt".into()]
    } else {
        (1..=art.patterns.len())
            .map(|k| format!("pattern{k}.txt"))
            .collect()
    };
    for (name, p) in names.iter().zip(&art.patterns) {
        write(&args.out_dir.join(name), &write_pattern(p))?;
    }
    write(
        &args.out_dir.join("meta.txt"),
        &format!("{}\n", art.meta_line(args.seed)),
    )?;
    println!("{}", art.meta_line(args.seed));
    Ok(0)
}

fn run_match(args: MatchArgs) -> Result<u8> {
    let g = read_graph(&read(&args.graph)?)?;
    let p = read_pattern(&read(&args.pattern)?)?;
    let found = if args.report_occurrences {
        let occs = find_matches(&g, &p, args.limit)?;
        for occ in &occs {
            println!("{occ}");
        }
        !occs.is_empty() || (args.limit == 0 && match_exists(&g, &p)?)
    } else {
        match_exists(&g, &p)?
    };
    println!("{}", if found { "match" } else { "no match" });
    Ok(if found { 0 } else { EXIT_NO_MATCH })
}

fn print_report(r: &VerificationReport, timings: bool) {
    print!("{}", r.to_text(timings));
    println!();
}

fn verify(args: VerifyArgs) -> Result<u8> {
    let variants = variants(&args.variant)?;
    let timings = !args.no_timings;

    if let Some(count) = args.count {
        let items: Vec<BatchItem> = random_batch(count, args.seed)
            .into_iter()
            .enumerate()
            .map(|(i, mut item)| {
                item.variant = variants[i % variants.len()];
                item.binary = item.variant.supports_binary() && (item.binary || args.binary);
                item
            })
            .collect();
        let mut disagreements = 0;
        for r in verify_batch(&items) {
            let r = r?;
            if !r.agree {
                disagreements += 1;
                print_report(&r, timings);
            }
        }
        println!("checked={} disagreements={disagreements}", items.len());
        return Ok(if disagreements == 0 { 0 } else { EXIT_DISAGREE });
    }

    let (inst, seed, mode) = match (&args.instance, &args.random) {
        (Some(path), _) => (read_ov(&read(path)?)?, None, None),
        (None, Some(r)) => {
            let n = r[0].parse().context("N")?;
            let d = r[1].parse().context("D")?;
            let seed: u64 = r[2].parse().context("SEED")?;
            let mode: GenMode = r[3].parse().map_err(anyhow::Error::msg)?;
            (gen_ov_instance(n, d, seed, mode)?, Some(seed), Some(mode))
        }
        (None, None) => bail!("give an instance file, --random or --count"),
    };
    let mut all_agree = true;
    for variant in variants {
        if args.binary && !variant.supports_binary() && args.variant == "all" {
            continue;
        }
        let mut r = verify_reduction(&inst, variant, args.binary)?;
        r.seed = seed;
        r.mode = mode;
        all_agree &= r.agree;
        print_report(&r, timings);
    }
    Ok(if all_agree { 0 } else { EXIT_DISAGREE })
}

fn bench(args: BenchArgs) -> Result<u8> {
    let report = bench_scaling(args.variant, &args.n, args.d, args.seed)?;
    print!("{}", report.to_table());
    Ok(0)
}

fn stats(args: StatsArgs) -> Result<u8> {
    let g = read_graph(&read(&args.graph)?)?;
    let violations = validate_graph(&g);
    if let Some(v) = violations.first() {
        bail!("invalid graph: {v}");
    }
    let s = degree_stats(&g);
    let flag = |r: Result<bool, _>| r.map_or_else(|_| "-".to_string(), |b: bool| b.to_string());
    println!(
        "nodes={} edges={} directed={} simple_path={} max_degree={} max_in_plus_out={} deterministic={} acyclic={}",
        s.node_count,
        s.edge_count,
        g.is_directed(),
        s.is_simple_path,
        s.max_undirected_degree,
        s.max_in_plus_out,
        flag(is_deterministic(&g)),
        flag(is_acyclic(&g)),
    );
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Reduce(a) => reduce(a),
        Command::Match(a) => run_match(a),
        Command::Verify(a) => verify(a),
        Command::Bench(a) => bench(a),
        Command::Stats(a) => stats(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
