use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use desparity::exactalg::{IdentityReport, MultiPoly, QMode};
use desparity::gamma::{count_table, csv_triangle, expand, Basis, TableKind};
use desparity::perm::{DistributionCache, Distributions, FamilyId, Permutation};
use desparity::runner::{plan, run_tasks, Bounds, Summary, Task};
use desparity::trees::{classify, ClassKind, MinMaxTree};
use desparity::Error;
use serde_json::{json, Value};

/// Exact verification of identities for permutation statistics refined by
/// the parity of descent positions.
#[derive(Parser)]
#[command(name = "desparity", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run selected checks and print their reports.
    Verify(VerifyArgs),
    /// Print distribution polynomials or coefficient triangles.
    Table(TableArgs),
    /// Expand a symmetric family in the sym or gamma basis.
    Gamma(GammaArgs),
    /// Render the min-max tree of a word, optionally after HR operators.
    Tree(TreeArgs),
    /// Run the whole catalog and write a summary.
    Report(ReportArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Output file (standard output when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for cached distribution polynomials.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Worker threads (defaults to the number of cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Bound for checks about plain permutations.
    #[arg(long = "nmax-a")]
    nmax_a: Option<usize>,
    /// Bound for checks about signed permutations.
    #[arg(long = "nmax-b")]
    nmax_b: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check ids, repeated or comma separated.
    #[arg(long, required = true, value_delimiter = ',')]
    id: Vec<String>,
    /// Truncation applied to every selected check.
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long)]
    q: Option<QMode>,
    #[command(flatten)]
    run: RunArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["family", "kind"]))]
struct TableArgs {
    /// Distribution family, e.g. A, B_hat, P_A.
    #[arg(long)]
    family: Option<FamilyId>,
    /// Coefficient triangle: a, a_bar, b, b_bar, g, g_bar, d, d_bar.
    #[arg(long)]
    kind: Option<TableKind>,
    /// A single length.
    #[arg(long, conflicts_with = "nmax")]
    n: Option<usize>,
    /// All lengths from 1 up to this bound.
    #[arg(long)]
    nmax: Option<usize>,
    /// Evaluate distribution polynomials at q = 1 with `--q one`.
    #[arg(long)]
    q: Option<QMode>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct GammaArgs {
    /// A family symmetric in x and y, e.g. A_tilde, B_bar.
    #[arg(long)]
    family: FamilyId,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "sym")]
    basis: Basis,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TreeArgs {
    /// Word of distinct letters, e.g. 562314 or "5 6 2 3 1 4".
    #[arg(long)]
    word: String,
    /// Inorder positions of the HR operators to apply, comma separated.
    #[arg(long = "apply-psi", value_delimiter = ',')]
    apply_psi: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// Restrict the run to these ids.
    #[arg(long, value_delimiter = ',')]
    id: Option<Vec<String>>,
    #[command(flatten)]
    run: RunArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    cache: Option<PathBuf>,
}

/// Failure of a command, with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::Parse(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Table(args) => table(args),
        Command::Gamma(args) => gamma(args),
        Command::Tree(args) => tree(args),
        Command::Report(args) => report(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn distributions(cache: &Option<PathBuf>) -> Distributions {
    match cache {
        Some(dir) => Distributions::with_cache(DistributionCache::new(dir)),
        None => Distributions::new(),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    let text = if text.ends_with('\n') { text.to_string() } else { format!("{text}\n") };
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure { code: 1, message: format!("cannot write {}: {e}", path.display()) }),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Failure { code: 1, message: e.to_string() }),
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn ids(raw: &[String]) -> Vec<String> {
    raw.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn report_line(task: &Task, r: &IdentityReport) -> String {
    let status = if r.passed() { "pass" } else { "fail" };
    let scope = if task.required { "" } else { "  (recorded)" };
    let mut line =
        format!("{status}  {:<14} q={:<8} nmax={:<3} {}ms{scope}", r.id, r.qmode.name(), r.nmax, r.elapsed_ms);
    if let Some(m) = &r.first_mismatch {
        line.push_str(&format!("\n      first mismatch at n={}\n      lhs: {}\n      rhs: {}", m.n, m.lhs, m.rhs));
    }
    line
}

fn verify(args: VerifyArgs) -> Outcome {
    let selected = ids(&args.id);
    let bounds = Bounds { nmax: args.nmax, nmax_a: args.run.nmax_a, nmax_b: args.run.nmax_b };
    let tasks = plan(Some(&selected), bounds, args.q)?;
    let ctx = distributions(&args.common.cache);
    let reports = run_tasks(&tasks, &ctx, args.run.jobs)?;
    let text = match args.common.format {
        Format::Json => pretty(&reports),
        Format::Text => tasks.iter().zip(&reports).map(|(t, r)| report_line(t, r)).collect::<Vec<_>>().join("\n"),
        Format::Csv => return Err(usage("verify writes text or json")),
    };
    emit(args.common.out.as_deref(), &text)?;
    let required_failed = tasks.iter().zip(&reports).any(|(t, r)| t.required && !r.passed());
    Ok(u8::from(required_failed))
}

fn lengths(n: Option<usize>, nmax: Option<usize>) -> Result<Vec<usize>, Failure> {
    match (n, nmax) {
        (Some(n), None) => Ok(vec![n]),
        (None, Some(m)) => Ok((1..=m).collect()),
        _ => Err(usage("give either --n or --nmax")),
    }
}

fn json_int(v: &num_bigint::BigInt) -> Value {
    match i64::try_from(v) {
        Ok(i) => json!(i),
        Err(_) => json!(v.to_string()),
    }
}

fn table(args: TableArgs) -> Outcome {
    let out = args.common.out.as_deref();
    if let Some(kind) = args.kind {
        let rows: Vec<_> =
            lengths(args.n, args.nmax)?.into_iter().map(|n| count_table(n, kind)).collect::<desparity::Result<_>>()?;
        let text = match args.common.format {
            Format::Csv => match (args.n, args.nmax) {
                (None, Some(m)) => csv_triangle(kind, m)?,
                _ => {
                    let t = &rows[0];
                    let cells: Vec<String> = t.values.iter().map(|v| v.to_string()).collect();
                    format!("n,{}\n{},{}", (0..cells.len()).map(|j| format!("j{j}")).collect::<Vec<_>>().join(","), t.n, cells.join(","))
                }
            },
            Format::Json => pretty(
                &rows
                    .iter()
                    .map(|t| json!({"kind": t.kind.name(), "n": t.n, "values": t.values.iter().map(json_int).collect::<Vec<_>>()}))
                    .collect::<Vec<_>>(),
            ),
            Format::Text => rows
                .iter()
                .map(|t| format!("{}: {}", t.n, t.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")))
                .collect::<Vec<_>>()
                .join("\n"),
        };
        emit(out, &text)?;
        return Ok(0);
    }
    let family = args.family.expect("clap enforces one of --family/--kind");
    let ctx = distributions(&args.common.cache);
    let ns = lengths(args.n, args.nmax)?;
    let mut polys: Vec<(usize, MultiPoly)> = Vec::new();
    for n in ns {
        let p = ctx.get(family, n)?;
        polys.push((n, args.q.map_or(p.clone(), |m| m.apply(p))));
    }
    let single = args.n.is_some();
    let text = match args.common.format {
        Format::Text if single => polys[0].1.to_string(),
        Format::Text => polys.iter().map(|(n, p)| format!("{n}: {p}")).collect::<Vec<_>>().join("\n"),
        Format::Csv => std::iter::once("n,polynomial".to_string())
            .chain(polys.iter().map(|(n, p)| format!("{n},{p}")))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => {
            let items: Vec<Value> = polys
                .iter()
                .map(|(n, p)| json!({"family": family.name(), "n": n, "polynomial": p.to_string()}))
                .collect();
            if single {
                pretty(&items[0])
            } else {
                pretty(&items)
            }
        }
    };
    emit(out, &text)?;
    Ok(0)
}

fn gamma(args: GammaArgs) -> Outcome {
    let ctx = distributions(&args.common.cache);
    let poly = ctx.get(args.family, args.n)?.at_q_one();
    let m = args.n / 2;
    let expansion = expand(&poly, m, args.basis)?;
    let coeffs: Vec<String> = expansion.coeffs.iter().map(|c| c.to_string()).collect();
    let text = match args.common.format {
        Format::Text => format!("{} n={} m={m} basis={}: {}", args.family.name(), args.n, args.basis, coeffs.join(" ")),
        Format::Csv => format!(
            "j,coefficient\n{}",
            coeffs.iter().enumerate().map(|(j, c)| format!("{j},{c}")).collect::<Vec<_>>().join("\n")
        ),
        Format::Json => pretty(&json!({
            "family": args.family.name(),
            "n": args.n,
            "m": m,
            "basis": args.basis.name(),
            "coefficients": expansion.coeffs.iter().map(json_int).collect::<Vec<_>>(),
        })),
    };
    emit(args.common.out.as_deref(), &text)?;
    Ok(0)
}

fn tree(args: TreeArgs) -> Outcome {
    let word: Permutation = args.word.parse()?;
    let original = MinMaxTree::build(word.values())?;
    let result = original.hr_apply(&args.apply_psi)?;
    let text = match args.format {
        Format::Text => result.render(),
        Format::Json => {
            let result_word = Permutation::from_word(result.word().to_vec())?;
            let mut v = json!({
                "word": word.to_string(),
                "psi": args.apply_psi,
                "result": result_word.to_string(),
                "render": result.render(),
            });
            if result_word.is_standard() {
                for kind in ClassKind::ALL {
                    v[kind.name()] = json!(classify(&result_word, kind)?);
                }
            }
            pretty(&v)
        }
        Format::Csv => return Err(usage("tree writes text or json")),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(0)
}

fn report_text(tasks: &[Task], summary: &Summary) -> String {
    let mut lines = vec![format!(
        "required: {} passed, {} failed; recorded: {} passed, {} failed",
        summary.required.passed, summary.required.failed, summary.recorded.passed, summary.recorded.failed
    )];
    let mut required = summary.required.reports.iter();
    let mut recorded = summary.recorded.reports.iter();
    for t in tasks {
        let r = if t.required { required.next() } else { recorded.next() };
        lines.push(report_line(t, r.expect("one report per task")));
    }
    lines.join("\n")
}

fn report(args: ReportArgs) -> Outcome {
    let selected = args.id.as_ref().map(|raw| ids(raw));
    let bounds = Bounds { nmax: None, nmax_a: args.run.nmax_a, nmax_b: args.run.nmax_b };
    let tasks = plan(selected.as_deref(), bounds, None)?;
    let ctx = distributions(&args.cache);
    let summary = Summary::new(&tasks, run_tasks(&tasks, &ctx, args.run.jobs)?);
    let text = match args.format {
        Format::Json => {
            let mut v = serde_json::to_value(&summary).expect("summary serializes");
            v["nmax_a"] = json!(args.run.nmax_a);
            v["nmax_b"] = json!(args.run.nmax_b);
            pretty(&v)
        }
        Format::Text => report_text(&tasks, &summary),
        Format::Csv => return Err(usage("report writes json or text")),
    };
    if let Err(f) = emit(args.out.as_deref(), &text) {
        // keep the results when the output file cannot be written
        let _ = io::stdout().write_all(text.as_bytes());
        return Err(f);
    }
    Ok(u8::from(!summary.all_required_passed))
}
