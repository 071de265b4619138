//! `treedist`: distances between fully-labelled rooted trees and forests.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use treedist::approx::APPROXIMATION_FACTOR;
use treedist::matching::WeightedBipartiteGraph;
use treedist::tools::{self, oracle_perm_distance, oracle_rearrangement, oracle_tree_distance};
use treedist::{
    apply_op, apply_script, approximate_rearrangement, approximate_tree_distance, permutation_distance,
    recover_permutation, similar, EditOp, EditScript, Error, LabeledForest,
};

const EXIT_USAGE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_NOT_ISOMORPHIC: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "treedist",
    version,
    about = "Permutation and rearrangement distances between labelled trees"
)]
struct Cli {
    /// Emit {"distance", "script_size", "verified"} as JSON instead of plain lines.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact permutation distance between two isomorphic trees.
    Perm(PairArgs),
    /// Approximate cut-and-permute distance between two forests.
    Rearrange(PairArgs),
    /// Approximate link-and-cut distance between two trees with the same root.
    TreeRearrange(PairArgs),
    /// Print a random tree (or forest) in the tree file format.
    Gen(GenArgs),
    /// Build the two trees encoding a bipartite matching instance.
    Reduce(ReduceArgs),
    /// Brute-force distances for small inputs.
    Oracle(OracleArgs),
    /// Apply a script to a forest and check the result against a target.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct PairArgs {
    first: PathBuf,
    second: PathBuf,
    /// Print the edit script after the distance.
    #[arg(long)]
    script: bool,
    /// Print the per-step breakdown of the approximation.
    #[arg(long)]
    trace: bool,
    /// Cross-check against the brute-force oracle.
    #[arg(long)]
    oracle: bool,
    /// Write the edit script to this file.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    /// Apply a random permutation moving `k` labels to the generated tree.
    #[arg(long, value_name = "K")]
    relabel: Option<usize>,
    /// Generate a forest with this many roots instead of a tree.
    #[arg(long, conflicts_with = "relabel")]
    roots: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    graph: PathBuf,
    /// Trees are written to `<prefix>1.tree` and `<prefix>2.tree`.
    #[arg(long)]
    out_prefix: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleKind {
    Perm,
    Rearrange,
}

#[derive(Args, Debug)]
struct OracleArgs {
    kind: OracleKind,
    first: PathBuf,
    second: PathBuf,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    forest: PathBuf,
    script: PathBuf,
    target: PathBuf,
}

#[derive(Serialize)]
struct Report {
    distance: Option<usize>,
    script_size: Option<usize>,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<usize>,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        Failure { code, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(EXIT_INVALID, e.to_string())
    }
}

type CmdResult = std::result::Result<Output, Failure>;

/// What a subcommand prints, plus a nonzero exit code when a check failed.
#[derive(Default)]
struct Output {
    lines: Vec<String>,
    report: Option<Report>,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            match (&out.report, cli.json) {
                (Some(report), true) => {
                    println!("{}", serde_json::to_string(report).expect("report serializes"));
                }
                _ => {
                    for line in &out.lines {
                        println!("{line}");
                    }
                }
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Perm(a) => perm(a),
        Command::Rearrange(a) => rearrange(a),
        Command::TreeRearrange(a) => tree_rearrange(a),
        Command::Gen(a) => generate(a),
        Command::Reduce(a) => reduce(a),
        Command::Oracle(a) => oracle(a),
        Command::Verify(a) => verify(a),
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_INVALID, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::new(EXIT_INVALID, format!("{}: {e}", path.display())))
}

fn load_forest(path: &Path) -> std::result::Result<LabeledForest, Failure> {
    LabeledForest::parse(&read(path)?).map_err(|e| Failure::new(EXIT_INVALID, format!("{}: {e}", path.display())))
}

fn load_pair(first: &Path, second: &Path) -> std::result::Result<(LabeledForest, LabeledForest), Failure> {
    let (a, b) = (load_forest(first)?, load_forest(second)?);
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: b.len(),
        }
        .into());
    }
    Ok((a, b))
}

fn emit_script(args: &PairArgs, script: &EditScript, out: &mut Output) -> std::result::Result<(), Failure> {
    if let Some(path) = &args.output {
        write(path, &script.to_text())?;
    }
    if args.script {
        out.lines.extend(script.ops.iter().map(|op| op.to_string()));
    }
    Ok(())
}

/// Exit code for an approximation checked against an exact value.
fn approx_check(size: usize, exact: usize) -> u8 {
    let ok = exact <= size && size <= APPROXIMATION_FACTOR * exact && (size == 0) == (exact == 0);
    if ok {
        0
    } else {
        EXIT_VERIFY
    }
}

fn perm(args: &PairArgs) -> CmdResult {
    // trees of different sizes are reported as non-isomorphic, not as invalid input
    let (t1, t2) = (load_forest(&args.first)?, load_forest(&args.second)?);
    let not_iso = |e: Error| match e {
        Error::NotIsomorphic | Error::SizeMismatch { .. } => Failure::new(EXIT_NOT_ISOMORPHIC, e.to_string()),
        other => other.into(),
    };
    let distance = permutation_distance(&t1, &t2).map_err(not_iso)?;
    let mut out = Output::default();
    out.lines.push(distance.to_string());

    let pi = recover_permutation(&t1, &t2).map_err(not_iso)?;
    let verified = apply_op(&t1, &EditOp::Permute(pi.clone())).is_ok_and(|f| f == t2) && pi.size() == distance;
    let mut script = EditScript::new();
    if !pi.is_identity() {
        script.push(EditOp::Permute(pi));
    }
    emit_script(args, &script, &mut out)?;
    if !verified {
        out.code = EXIT_VERIFY;
    }

    let mut oracle = None;
    if args.oracle {
        let exact = oracle_perm_distance(&t1, &t2)?;
        out.lines.push(format!("oracle {exact}"));
        if exact != distance {
            out.code = EXIT_VERIFY;
        }
        oracle = Some(exact);
    }
    out.report = Some(Report {
        distance: Some(distance),
        script_size: Some(script.size()),
        verified,
        oracle,
    });
    Ok(out)
}

fn rearrange(args: &PairArgs) -> CmdResult {
    let (f1, f2) = load_pair(&args.first, &args.second)?;
    let (script, trace) = approximate_rearrangement(&f1, &f2)?;
    let size = script.size();
    let verified = apply_script(&f1, &script).is_ok_and(|f| similar(&f, &f2).unwrap_or(false));
    let mut out = Output::default();
    out.lines.push(size.to_string());
    emit_script(args, &script, &mut out)?;
    if args.trace {
        out.lines.extend(trace.to_string().lines().map(str::to_owned));
    }
    if !verified {
        out.code = EXIT_VERIFY;
    }
    let mut oracle = None;
    if args.oracle {
        let exact = oracle_rearrangement(&f1, &f2)?;
        out.lines.push(format!("oracle {exact}"));
        out.code = out.code.max(approx_check(size, exact));
        oracle = Some(exact);
    }
    out.report = Some(Report {
        distance: Some(size),
        script_size: Some(size),
        verified,
        oracle,
    });
    Ok(out)
}

fn tree_rearrange(args: &PairArgs) -> CmdResult {
    let (t1, t2) = load_pair(&args.first, &args.second)?;
    let approx = approximate_tree_distance(&t1, &t2)?;
    let (a1, a2) = &approx.anchored;
    let verified = apply_script(a1, &approx.script).is_ok_and(|f| similar(&f, a2).unwrap_or(false));
    let mut out = Output::default();
    out.lines.push(approx.size.to_string());
    // the link-and-cut form is printed when available; both act on the anchored trees
    let script = approx.link_script.as_ref().unwrap_or(&approx.script);
    emit_script(args, script, &mut out)?;
    if args.trace {
        out.lines.extend(approx.trace.to_string().lines().map(str::to_owned));
    }
    if !verified {
        out.code = EXIT_VERIFY;
    }
    let mut oracle = None;
    if args.oracle {
        let exact = oracle_tree_distance(&t1, &t2)?;
        out.lines.push(format!("oracle {exact}"));
        out.code = out.code.max(approx_check(approx.size, exact));
        oracle = Some(exact);
    }
    out.report = Some(Report {
        distance: Some(approx.size),
        script_size: Some(approx.size),
        verified,
        oracle,
    });
    Ok(out)
}

fn generate(args: &GenArgs) -> CmdResult {
    let forest = match (args.roots, args.relabel) {
        (Some(roots), _) => tools::random_forest(args.n, roots, args.seed)?,
        (None, Some(k)) => tools::random_relabel(&tools::random_tree(args.n, args.seed)?, k, args.seed)?,
        (None, None) => tools::random_tree(args.n, args.seed)?,
    };
    let text = forest.to_text();
    let mut out = Output::default();
    match &args.output {
        Some(path) => write(path, &text)?,
        None => out.lines.extend(text.lines().map(str::to_owned)),
    }
    Ok(out)
}

fn reduce(args: &ReduceArgs) -> CmdResult {
    let graph = WeightedBipartiteGraph::parse(&read(&args.graph)?)
        .map_err(|e| Failure::new(EXIT_INVALID, format!("{}: {e}", args.graph.display())))?
        .unweighted();
    let red = tools::reduce_matching(&graph)?;
    write(Path::new(&format!("{}1.tree", args.out_prefix)), &red.t1.to_text())?;
    write(Path::new(&format!("{}2.tree", args.out_prefix)), &red.t2.to_text())?;
    let mut out = Output::default();
    out.lines.push(red.len().to_string());
    out.lines.push(red.m.to_string());
    out.lines.push(red.split_count.to_string());
    Ok(out)
}

fn oracle(args: &OracleArgs) -> CmdResult {
    let (f1, f2) = load_pair(&args.first, &args.second)?;
    let distance = match args.kind {
        OracleKind::Perm => oracle_perm_distance(&f1, &f2).map_err(|e| match e {
            Error::NotIsomorphic => Failure::new(EXIT_NOT_ISOMORPHIC, e.to_string()),
            other => other.into(),
        })?,
        OracleKind::Rearrange => oracle_rearrangement(&f1, &f2)?,
    };
    let mut out = Output::default();
    out.lines.push(distance.to_string());
    out.report = Some(Report {
        distance: Some(distance),
        script_size: None,
        verified: true,
        oracle: None,
    });
    Ok(out)
}

fn verify(args: &VerifyArgs) -> CmdResult {
    let forest = load_forest(&args.forest)?;
    let target = load_forest(&args.target)?;
    if forest.len() != target.len() {
        return Err(Error::SizeMismatch {
            left: forest.len(),
            right: target.len(),
        }
        .into());
    }
    let script = EditScript::parse(&read(&args.script)?, forest.len())
        .map_err(|e| Failure::new(EXIT_INVALID, format!("{}: {e}", args.script.display())))?;
    let mut out = Output::default();
    let verified = match apply_script(&forest, &script) {
        Ok(result) if similar(&result, &target).unwrap_or(false) => {
            out.lines.push("ok".into());
            true
        }
        Ok(_) => {
            out.lines.push("mismatch".into());
            false
        }
        Err(e) => {
            out.lines.push(format!("failed: {e}"));
            false
        }
    };
    if !verified {
        out.code = EXIT_VERIFY;
    }
    out.report = Some(Report {
        distance: None,
        script_size: Some(script.size()),
        verified,
        oracle: None,
    });
    Ok(out)
}
