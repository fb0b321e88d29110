//! `nichols`: command-line front end for nichols-core.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use nichols_core::classifier::{
    enumerate_extensions, render_table, table_check, ClassificationRow, TableCheckReport,
};
use nichols_core::exactq::{fmt_rational, parse_rational, LaurentScalar, Rational};
use nichols_core::extension::{
    braid_spec, exponent_matrix, extended_cartan, gk_finite, relation_degrees,
};
use nichols_core::rootdata::{root_datum, Normalization, SimpleType, TypeLetter, Weight};
use nichols_core::shuffle::{
    nichols_dims, serre_expand, serre_in_kernel, BraidedSpace, EngineConfig, GradedDims, RankMode,
    SpaceDescription,
};
use nichols_core::uqsl2::{biproduct_factor_check, r_ialpha_check};
use serde::Serialize;
use serde_json::{json, Value};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "nichols",
    version,
    about = "Nichols algebras of braided U_q(g)-modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Seed for the random specializations of the rank computations.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One-vertex extensions of a simple type.
    Classify {
        #[command(flatten)]
        ty: TypeArgs,
    },
    /// Regenerate the classification table and diff it against the stored one.
    TableCheck {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
    /// Extended Cartan matrix, braiding exponents and finiteness verdict.
    Extend {
        #[command(flatten)]
        ty: TypeArgs,
        /// Weight coefficients in the fundamental weights, comma separated;
        /// repeat for several modules.
        #[arg(long, required = true, allow_hyphen_values = true)]
        weight: Vec<String>,
        #[arg(long, value_parser = rational)]
        x: Rational,
    },
    /// Graded dimensions of the Nichols algebra of a braided space.
    NicholsDims {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        /// Exact rank over Q(v) instead of modular specialization.
        #[arg(long)]
        exact: bool,
    },
    /// Compare the Hilbert series of the diagonal space with that of L(n).
    BiproductCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational)]
        x: Rational,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        #[arg(long)]
        exact: bool,
    },
    /// Build the relation between F and L(n) and check it is killed by the symmetrizer.
    RelationCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational)]
        x: Rational,
    },
    /// Expand ad(x_i)^n (x_j), or check a Serre element of a space file.
    Serre {
        /// Expansion mode: power of ad(x_i).
        #[arg(long, conflicts_with = "space")]
        n: Option<u32>,
        /// Expansion mode: q_ii.
        #[arg(long, allow_hyphen_values = true, requires = "n")]
        gamma: Option<String>,
        /// Expansion mode: q_ij.
        #[arg(long, allow_hyphen_values = true, requires = "n")]
        eta: Option<String>,
        /// Kernel mode: diagonal space file.
        #[arg(long, requires_all = ["i", "j"])]
        space: Option<PathBuf>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        /// Cartan entry b_ij; derived from the braiding when omitted.
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
    },
}

#[derive(clap::Args, Debug)]
struct TypeArgs {
    /// Cartan type letter (A..G).
    #[arg(long = "type")]
    letter: String,
    #[arg(long)]
    rank: usize,
    /// short2, long2 or a positive rational scale.
    #[arg(long, default_value = "short2")]
    normalization: String,
}

impl TypeArgs {
    fn simple_type(&self) -> Result<SimpleType> {
        let letter: TypeLetter = self.letter.parse()?;
        Ok(SimpleType::new(letter, self.rank)?)
    }

    fn normalization(&self) -> Result<Normalization> {
        Ok(self.normalization.parse()?)
    }
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Result of a command: its JSON payload, table text and whether the
/// mathematics checked out.
struct Outcome {
    result: Value,
    text: String,
    mismatch: bool,
}

impl Outcome {
    fn ok<T: Serialize>(result: &T, text: String) -> Result<Self> {
        Ok(Self {
            result: serde_json::to_value(result)?,
            text,
            mismatch: false,
        })
    }
}

fn engine(seed: u64, max_degree: usize, exact: bool) -> EngineConfig {
    EngineConfig {
        max_degree,
        mode: if exact {
            RankMode::Exact
        } else {
            RankMode::Modular
        },
        seed,
        ..EngineConfig::default()
    }
}

fn classify(ty: &TypeArgs) -> Result<Outcome> {
    let g = ty.simple_type()?;
    let rows: Vec<ClassificationRow> = enumerate_extensions(g, &ty.normalization()?)?;
    let text = render_table(&rows);
    Outcome::ok(&rows, text)
}

fn run_table_check(max_rank: usize) -> Result<Outcome> {
    let report: TableCheckReport = table_check(max_rank)?;
    let mut text = format!(
        "rows reproduced: {:?}\nrows not reproduced: {:?}\n",
        report.rows_reproduced, report.rows_not_reproduced
    );
    for m in &report.mismatches {
        let row = m
            .table_row
            .map_or_else(|| "-".to_string(), |r| r.to_string());
        let tag = if m.whitelisted { "known" } else { "MISMATCH" };
        let _ = writeln!(
            text,
            "{tag:8} row {row:>2} {} {} [{}] table={} computed={}",
            m.g, m.lambda, m.column, m.table, m.computed
        );
    }
    let bad = report.non_whitelisted();
    let _ = writeln!(text, "{bad} unexpected mismatch(es)");
    let mut out = Outcome::ok(&report, text)?;
    out.mismatch = bad > 0;
    Ok(out)
}

fn parse_weight(s: &str, rank: usize) -> Result<Weight> {
    let coeffs: Vec<i64> = s
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .with_context(|| format!("weight coefficient {c:?}"))
        })
        .collect::<Result<_>>()?;
    if coeffs.len() != rank {
        bail!(
            "weight {s:?} has {} coefficients, rank is {rank}",
            coeffs.len()
        );
    }
    Ok(Weight::from_ints(&coeffs))
}

fn extend(ty: &TypeArgs, weights: &[String], x: &Rational) -> Result<Outcome> {
    let g = ty.simple_type()?;
    let rd = root_datum(g, &ty.normalization()?)?;
    let weights: Vec<Weight> = weights
        .iter()
        .map(|w| parse_weight(w, g.rank))
        .collect::<Result<_>>()?;
    let spec = braid_spec(&rd, &weights, x).context("braiding data")?;
    let exponents = exponent_matrix(&spec)?;
    let verdict = gk_finite(&spec)?;
    let (b, degrees, error) = match extended_cartan(&spec) {
        Ok(ec) => {
            let degrees = relation_degrees(&ec);
            (Some(ec.b), degrees, None)
        }
        Err(e) => (None, Vec::new(), Some(e.to_string())),
    };
    let mut text = format!("g = {g}, x = {}, d = {}\n", fmt_rational(x), spec.d);
    let _ = writeln!(text, "exponents {:?}:", exponents.index);
    for row in &exponents.e {
        let _ = writeln!(text, "  {row:?}");
    }
    match &b {
        Some(b) => {
            let _ = writeln!(text, "b:");
            for row in b {
                let _ = writeln!(text, "  {row:?}");
            }
        }
        None => {
            let _ = writeln!(text, "b: {}", error.as_deref().unwrap_or(""));
        }
    }
    let name = match &verdict {
        nichols_core::GkVerdict::Finite { name, .. } => format!("finite, type {name}"),
        nichols_core::GkVerdict::Infinite { stage, .. } => format!("not finite ({stage})"),
    };
    let _ = writeln!(text, "GK dimension: {name}");
    let list: Vec<String> = degrees
        .iter()
        .map(|r| format!("{}-{}: {}", r.from, r.to, r.degree))
        .collect();
    let _ = writeln!(
        text,
        "relations in degree: {}",
        if list.is_empty() {
            "none".into()
        } else {
            list.join(", ")
        }
    );
    let result = json!({
        "spec": spec,
        "exponents": exponents,
        "b": b,
        "b_error": error,
        "verdict": verdict,
        "relation_degrees": degrees,
    });
    Ok(Outcome {
        result,
        text,
        mismatch: false,
    })
}

fn read_space(path: &PathBuf) -> Result<BraidedSpace> {
    let json =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let desc =
        SpaceDescription::parse(&json).with_context(|| format!("parsing {}", path.display()))?;
    desc.build()
        .with_context(|| format!("building {}", path.display()))
}

fn dims(path: &PathBuf, max_degree: usize, exact: bool, seed: u64) -> Result<Outcome> {
    let space = read_space(path)?;
    let g: GradedDims = nichols_dims(&space, &engine(seed, max_degree, exact))?;
    let mut text = format!("dims: {:?}\n", g.dims);
    if g.regraded.as_slice() != g.dims.as_slice() {
        let _ = writeln!(text, "dims (letter degrees): {:?}", g.regraded);
    }
    let rel = g.new_relation_degrees();
    let _ = writeln!(text, "new relations: {rel:?}");
    Outcome::ok(&g, text)
}

fn biproduct(n: usize, x: &Rational, max_degree: usize, exact: bool, seed: u64) -> Result<Outcome> {
    let r = biproduct_factor_check(n, x, max_degree, &engine(seed, max_degree, exact))?;
    let text = format!(
        "H_M = {:?}\nH_D = {:?}\nH_D (1 - t) = {:?}\n{}\n",
        r.h_m,
        r.h_d,
        r.quotient,
        if r.passes { "PASS" } else { "FAIL" }
    );
    let mut out = Outcome::ok(&r, text)?;
    out.mismatch = !r.passes;
    Ok(out)
}

fn relation(n: usize, x: &Rational) -> Result<Outcome> {
    let r = r_ialpha_check(n, x)?;
    let mut text = format!("b_*a = {}, degree {:?}\n", r.b_star_alpha, r.degree);
    for (w, c) in &r.relation {
        let _ = writeln!(text, "  ({c}) {w}");
    }
    let _ = writeln!(
        text,
        "in kernel: {}, degree listed: {}\n{}",
        r.in_kernel,
        r.degree_listed,
        if r.passes { "PASS" } else { "FAIL" }
    );
    let mut out = Outcome::ok(&r, text)?;
    out.mismatch = !r.passes;
    Ok(out)
}

fn scalar(s: &str) -> Result<LaurentScalar> {
    s.parse::<LaurentScalar>()
        .with_context(|| format!("Laurent scalar {s:?}"))
}

#[allow(clippy::too_many_arguments)]
fn serre(
    n: Option<u32>,
    gamma: Option<&str>,
    eta: Option<&str>,
    space: Option<&PathBuf>,
    i: Option<usize>,
    j: Option<usize>,
    b: Option<i64>,
) -> Result<Outcome> {
    if let Some(path) = space {
        let (i, j) = (i.unwrap(), j.unwrap());
        let space = read_space(path)?;
        let b = match b {
            Some(b) => b,
            None => derive_b(&space, i, j)?,
        };
        let in_kernel = serre_in_kernel(&space, i, j, b)?;
        let text = format!("ad(x_{i})^{} (x_{j}) in kernel: {in_kernel}\n", 1 - b);
        let mut out = Outcome::ok(
            &json!({ "i": i, "j": j, "b": b, "in_kernel": in_kernel }),
            text,
        )?;
        out.mismatch = !in_kernel;
        return Ok(out);
    }
    let n =
        n.ok_or_else(|| anyhow!("give either --space with --i/--j or --n with --gamma/--eta"))?;
    let gamma = scalar(gamma.ok_or_else(|| anyhow!("--gamma is required with --n"))?)?;
    let eta = scalar(eta.ok_or_else(|| anyhow!("--eta is required with --n"))?)?;
    let coeffs = serre_expand(n, &gamma, &eta);
    let mut text = String::new();
    for (s, c) in coeffs.iter().enumerate() {
        let _ = writeln!(text, "s = {s}: ({c}) x_i^{} x_j x_i^{s}", n as usize - s);
    }
    Outcome::ok(
        &json!({ "n": n, "gamma": gamma, "eta": eta, "coefficients": coeffs }),
        text,
    )
}

/// `b_ij` from `q_ij q_ji = q_ii^{b_ij}` on unit monomials.
fn derive_b(space: &BraidedSpace, i: usize, j: usize) -> Result<i64> {
    let exp = |a, b| {
        space
            .q(a, b)
            .and_then(LaurentScalar::unit_monomial_exponent)
            .ok_or_else(|| anyhow!("q_{a}{b} is not a power of v; pass --b"))
    };
    let (ii, ij, ji) = (exp(i, i)?, exp(i, j)?, exp(j, i)?);
    if ii == 0 || (ij + ji) % ii != 0 {
        bail!("q_ij q_ji is not a power of q_ii; pass --b");
    }
    Ok((ij + ji) / ii)
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Classify { ty } => classify(ty).context("classify"),
        Command::TableCheck { max_rank } => run_table_check(*max_rank).context("table-check"),
        Command::Extend { ty, weight, x } => extend(ty, weight, x).context("extend"),
        Command::NicholsDims {
            space,
            max_degree,
            exact,
        } => dims(space, *max_degree, *exact, cli.seed).context("nichols-dims"),
        Command::BiproductCheck {
            n,
            x,
            max_degree,
            exact,
        } => biproduct(*n, x, *max_degree, *exact, cli.seed).context("biproduct-check"),
        Command::RelationCheck { n, x } => relation(*n, x).context("relation-check"),
        Command::Serre {
            n,
            gamma,
            eta,
            space,
            i,
            j,
            b,
        } => serre(
            *n,
            gamma.as_deref(),
            eta.as_deref(),
            space.as_ref(),
            *i,
            *j,
            *b,
        )
        .context("serre"),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::TableCheck { .. } => "table-check",
        Command::Extend { .. } => "extend",
        Command::NicholsDims { .. } => "nichols-dims",
        Command::BiproductCheck { .. } => "biproduct-check",
        Command::RelationCheck { .. } => "relation-check",
        Command::Serre { .. } => "serre",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    match cli.format {
        Format::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": command_name(&cli.command),
                "mismatch": outcome.mismatch,
                "result": outcome.result,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("JSON values serialize")
            );
        }
        Format::Table => print!("{}", outcome.text),
    }
    ExitCode::from(if outcome.mismatch { 2 } else { 0 })
}
