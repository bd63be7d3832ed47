//! `loopslice` subcommands. Exit codes: 0 success, 1 failed verification or
//! internal error, 2 malformed input, 3 violated mathematical precondition.

use clap::{Args, Parser, Subcommand, ValueEnum};
use loopslice_core::branching::{graded_restriction, DominantWeight, GradedMultiplicity};
use loopslice_core::fibers::{
    invariant_map, FiberDescription, FiberSolver, InvariantPair, Stratum,
};
use loopslice_core::graded::{decomposition_remainder, gl1_algebra_check, stalk_ic, GradedDims};
use loopslice_core::lattice::{gl_normal_form, sp_so_reduce, Coweight, LatticePair};
use loopslice_core::slodowy::{build_slice_chart, SlicePoint};
use serde_json::{json, Value};

use crate::acceptance::{self, point_tuple, Config};
use crate::json::{self as lj, FormatError, MatrixJson, PairJson};

#[derive(Parser, Debug)]
#[command(
    name = "loopslice",
    version,
    about = "Exact lattice normal forms, slice fibers and graded identities"
)]
pub struct Cli {
    /// Laurent precision: series are known modulo t^precision.
    #[arg(long, global = true, env = "LOOPSLICE_PRECISION", default_value_t = 8,
          value_parser = clap::value_parser!(i64).range(2..))]
    pub precision: i64,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report format; `verify-all` defaults to text, everything else to JSON.
    #[arg(long, global = true, value_enum)]
    pub output: Option<Output>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PairContext {
    Gl,
    Osp,
}

#[derive(Args, Debug)]
pub struct PairInput {
    #[arg(long, value_enum, default_value = "gl")]
    pub context: PairContext,
    /// Pair JSON file, or `-` for stdin.
    #[arg(long, default_value = "-")]
    pub input: String,
}

#[derive(Args, Debug)]
pub struct Shape {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduce a pair and print its coweight and canonical representative.
    NormalForm(PairInput),
    /// Print only the coweight of a pair.
    OrbitIndex(PairInput),
    /// Slice chart queries.
    Slice {
        #[command(subcommand)]
        action: SliceAction,
    },
    /// Characteristic polynomials `(f, g)` of a slice point.
    Invariants {
        /// `x` as a JSON array of rows.
        #[arg(long)]
        x: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        vstar: String,
        /// Band values `a_1 … a_{m−n}`.
        #[arg(long)]
        a: String,
    },
    /// Fiber of the invariant map over `(f, g)`, given as ascending coefficient lists.
    Fiber {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Stalk dimensions and the decomposition remainder.
    Stalk(Shape),
    /// Graded restriction of a `GL_m` weight to `GL_n`.
    Branch {
        /// Dominant weight as a JSON array, e.g. `[1,0,0]`.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long)]
        n: usize,
        /// Defaults to the length of the weight.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Compare the three presentations of the `n = 1` algebra.
    AlgebraCheck {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 30)]
        order: usize,
    },
    /// Run the acceptance suite.
    VerifyAll,
}

#[derive(Subcommand, Debug)]
pub enum SliceAction {
    /// Symbolic slice matrix and grading table.
    Show(Shape),
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("precondition violated: {0}")]
    Precondition(loopslice_core::Error),
    #[error("{0}")]
    Internal(String),
    #[error("{0} of {1} criteria failed")]
    Verification(usize, usize),
}

impl From<loopslice_core::Error> for CliError {
    fn from(e: loopslice_core::Error) -> Self {
        match e {
            loopslice_core::Error::Internal(msg) => CliError::Internal(msg),
            e @ loopslice_core::Error::SeriesMismatch { .. } => CliError::Internal(e.to_string()),
            other => CliError::Precondition(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Format(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Internal(_) | CliError::Verification(..) => 1,
        }
    }
}

/// What a command produced: the JSON value and its text rendering.
pub struct Report {
    pub json: Value,
    pub text: String,
    /// `(failed, total)` when the command verified something and it failed.
    pub failed: Option<(usize, usize)>,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            failed: None,
        }
    }
}

pub fn main() -> i32 {
    let cli = Cli::parse();
    let default = if matches!(cli.command, Command::VerifyAll) {
        Output::Text
    } else {
        Output::Json
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    match cli.output.unwrap_or(default) {
        Output::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report.json).expect("serializable")
        ),
        Output::Text => print!("{}", report.text),
    }
    match report.failed {
        Some((failed, total)) => {
            let e = CliError::Verification(failed, total);
            eprintln!("error: {e}");
            e.exit_code()
        }
        None => 0,
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let prec = cli.precision;
    match &cli.command {
        Command::NormalForm(input) => normal_form(input, prec, true),
        Command::OrbitIndex(input) => normal_form(input, prec, false),
        Command::Slice {
            action: SliceAction::Show(s),
        } => slice_show(s),
        Command::Invariants { x, v, vstar, a } => invariants(x, v, vstar, a),
        Command::Fiber { f, g } => fiber(f, g),
        Command::Stalk(s) => stalk(s),
        Command::Branch { weight, n, m } => branch(weight, *n, *m),
        Command::AlgebraCheck { m, order } => algebra_check(*m, *order),
        Command::VerifyAll => verify_all(Config {
            seed: cli.seed,
            precision: prec,
        }),
    }
}

fn text_lines(lines: impl IntoIterator<Item = String>) -> String {
    lines.into_iter().map(|l| l + "\n").collect()
}

fn coweight_json(c: &Coweight) -> Value {
    json!(c.as_slice())
}

fn normal_form(input: &PairInput, prec: i64, full: bool) -> Result<Report, CliError> {
    let parsed = lj::parse_pair(&lj::read_input(&input.input)?)?;
    let v = parsed.v.to_matrix(prec)?;
    let (coweight, representative) = match input.context {
        PairContext::Gl => {
            let vstar = parsed
                .vstar
                .as_ref()
                .ok_or_else(|| FormatError::Shape("a GL pair needs \"vstar\"".into()))?
                .to_matrix(prec)?;
            let pair = LatticePair::gl(v, vstar)?;
            let nf = gl_normal_form(&pair)?;
            let canonical =
                loopslice_core::lattice::gl_canonical_pair(&nf.coweight, pair.v.rows(), prec)?;
            (
                nf.coweight,
                serde_json::to_value(PairJson::from_pair(&canonical)).expect("serializable"),
            )
        }
        PairContext::Osp => {
            let red = sp_so_reduce(&v)?;
            let canonical = red.reduced.mod_integral();
            (
                red.coweight,
                json!({ "v": MatrixJson::from_matrix(&canonical) }),
            )
        }
    };
    let context = match input.context {
        PairContext::Gl => "gl",
        PairContext::Osp => "osp",
    };
    if full {
        Ok(Report {
            failed: None,
            json: json!({ "context": context, "coweight": coweight_json(&coweight), "normal_form": representative }),
            text: text_lines([format!("{context} coweight {coweight}")]),
        })
    } else {
        Ok(Report {
            failed: None,
            json: json!({ "coweight": coweight_json(&coweight) }),
            text: text_lines([coweight.to_string()]),
        })
    }
}

fn slice_show(s: &Shape) -> Result<Report, CliError> {
    let chart = build_slice_chart(s.n, s.m)?;
    let names = chart.variable_names();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let matrix: Vec<Vec<String>> = chart
        .symbolic_matrix()
        .iter()
        .map(|row| row.iter().map(|e| e.display_with(&name_refs)).collect())
        .collect();
    let table: Vec<Value> = chart
        .grading_table()
        .into_iter()
        .map(|(c, d)| json!({ "coordinate": c.to_string(), "grading": d }))
        .collect();
    let mut text = vec![format!(
        "slice chart ({},{}), dimension {}",
        s.n,
        s.m,
        chart.dim()
    )];
    let width = matrix.iter().flatten().map(String::len).max().unwrap_or(1);
    text.extend(matrix.iter().map(|row| {
        row.iter()
            .map(|e| format!("{e:>width$}"))
            .collect::<Vec<_>>()
            .join("  ")
    }));
    text.extend(
        chart
            .grading_table()
            .into_iter()
            .map(|(c, d)| format!("{c}: {d}")),
    );
    Ok(Report {
        failed: None,
        json: json!({
            "n": s.n,
            "m": s.m,
            "dim": chart.dim(),
            "variables": names,
            "matrix": matrix,
            "grading": table,
        }),
        text: text_lines(text),
    })
}

fn invariants_json(p: &InvariantPair) -> Value {
    json!({ "f": lj::poly_json(&p.f), "g": lj::poly_json(&p.g) })
}

fn invariants(x: &str, v: &str, vstar: &str, a: &str) -> Result<Report, CliError> {
    let point = SlicePoint::new(
        lj::rational_matrix(x)?,
        lj::rational_list(v)?,
        lj::rational_list(vstar)?,
        lj::rational_list(a)?,
    )?;
    let inv = invariant_map(&point)?;
    Ok(Report {
        failed: None,
        json: invariants_json(&inv),
        text: text_lines([
            format!("f = {}", inv.f.display_with("λ")),
            format!("g = {}", inv.g.display_with("λ")),
        ]),
    })
}

fn fiber_json(d: &FiberDescription) -> Value {
    let mut stratum = json!({ "kind": d.stratum.to_string() });
    match &d.stratum {
        Stratum::Generic => {}
        Stratum::ResultantZero { index } => stratum["index"] = json!(index),
        Stratum::DoubleRoot { root } => stratum["root"] = json!(lj::rational_str(root)),
    }
    json!({
        "stratum": stratum,
        "structure": d.structure.to_string(),
        "invariants": invariants_json(&d.invariants),
        "base": lj::point_json(&d.base),
        "base_tuple": point_tuple(&d.base),
    })
}

fn fiber(f: &str, g: &str) -> Result<Report, CliError> {
    let pair = InvariantPair::new(lj::poly(f)?, lj::poly(g)?)?;
    let desc = FiberSolver::new(pair.n(), pair.m())?.fiber(&pair.f, &pair.g)?;
    Ok(Report {
        failed: None,
        text: text_lines([
            format!("stratum: {}", desc.stratum),
            format!("structure: {}", desc.structure),
            format!("base (x, a, v, v*): {}", point_tuple(&desc.base)),
        ]),
        json: fiber_json(&desc),
    })
}

fn dims_json(g: &GradedDims) -> Value {
    json!(g.pairs().map(|(d, k)| [d, k as i64]).collect::<Vec<_>>())
}

fn dims_text(g: &GradedDims) -> String {
    g.pairs()
        .map(|(d, k)| format!("{d}:{k}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn stalk(s: &Shape) -> Result<Report, CliError> {
    let stalk = stalk_ic(s.n, s.m)?;
    let rem = decomposition_remainder(s.n, s.m)?;
    Ok(Report {
        failed: None,
        json: json!({ "n": s.n, "m": s.m, "stalk": dims_json(&stalk), "remainder_shifts": rem }),
        text: text_lines([
            format!("stalk: {}", dims_text(&stalk)),
            format!("remainder shifts: {rem:?}"),
        ]),
    })
}

fn multiplicity_json(mult: &GradedMultiplicity) -> Value {
    Value::Array(
        mult.iter()
            .map(|(w, dims)| json!({ "weight": w.parts(), "q": dims_json(dims) }))
            .collect(),
    )
}

fn branch(weight: &str, n: usize, m: Option<usize>) -> Result<Report, CliError> {
    let parts: Vec<i64> = serde_json::from_str(weight).map_err(FormatError::from)?;
    let lambda = DominantWeight::new(parts)?;
    if let Some(m) = m {
        if m != lambda.rank() {
            return Err(loopslice_core::Error::Shape(format!(
                "weight has length {} but m = {m}",
                lambda.rank()
            ))
            .into());
        }
    }
    let mult = graded_restriction(&lambda, n)?;
    let text = mult
        .iter()
        .map(|(w, dims)| format!("{w}: {}", dims_text(dims)));
    Ok(Report {
        failed: None,
        json: json!({ "weight": lambda.parts(), "n": n, "m": lambda.rank(), "restriction": multiplicity_json(&mult) }),
        text: text_lines(text),
    })
}

fn algebra_check(m: usize, order: usize) -> Result<Report, CliError> {
    let c = gl1_algebra_check(m, order)?;
    let agree = c.free == c.module && c.free == c.eliminated;
    let mut report = Report::new(
        json!({
            "m": c.m,
            "order": c.order,
            "series": c.free,
            "presentations_agree": agree,
            "euler_expansion": c.euler_expansion,
        }),
        text_lines([
            format!("series to order {}: {:?}", c.order, c.free),
            format!("presentations agree: {agree}"),
            format!("Euler expansion: {}", c.euler_expansion),
        ]),
    );
    if !(agree && c.euler_expansion) {
        report.failed = Some((1, 1));
    }
    Ok(report)
}

fn verify_all(cfg: Config) -> Result<Report, CliError> {
    let results = acceptance::run_all(cfg);
    let failed = results.iter().filter(|r| !r.passed).count();
    let mut report = Report::new(
        json!({ "seed": cfg.seed, "precision": cfg.precision, "criteria": results }),
        text_lines(results.iter().map(ToString::to_string)),
    );
    if failed > 0 {
        report.failed = Some((failed, results.len()));
    }
    Ok(report)
}
