//! Command-line front end. Every command emits one report, JSON by default
//! or CSV with `--format csv`.
//!
//! Exit codes: 0 success, 1 a check failed (or an internal error), 2 usage
//! error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::assembly::{
    condition_number, mass_matrix, stiffness_matrix, CondReport, Path, SymmetricMatrix,
};
use crate::basis::{build_set, tet, BasisSet, EdgeFaceVariant, TableRow};
use crate::checks::{self, CheckOutcome};
use crate::divfree::{augment, DiscreteField};
use crate::error::Error;
use crate::geometry::ElementKind;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "hdiv",
    version,
    about = "Hierarchical H(div) bases on reference elements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Reference element: quad, hex, tri or tet.
    #[arg(long, global = true)]
    pub element: Option<ElementKind>,
    /// Polynomial order p.
    #[arg(long, global = true, default_value_t = 1)]
    pub order: usize,
    /// Tetrahedral edge-based face family: first, second or ac.
    #[arg(long, global = true, default_value = "first")]
    pub variant: EdgeFaceVariant,
    /// Integration path: exact or quadrature.
    #[arg(long, global = true, default_value = "exact")]
    pub path: Path,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for random points and coefficients.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Dimension counts per category.
    Dims,
    /// Mass matrix.
    Mass,
    /// Stiffness matrix.
    Stiffness,
    /// Condition numbers of mass and stiffness matrices.
    Cond,
    /// Orthonormality of the orthonormal blocks.
    CheckOrthonormal,
    /// Exact divergence of the divergence-free families.
    CheckDivfree,
    /// Exact vanishing of normal traces.
    CheckTraces,
    /// Exact rank of the whole set.
    CheckRank,
    /// Rank and linear relations of a tetrahedral edge-based face family.
    Degeneracy,
    /// Augment a random field with the interior bubble.
    AugmentDemo,
    /// Decomposition tables and condition-number tables for p = 1..4.
    Tables,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Dims => "dims",
            Command::Mass => "mass",
            Command::Stiffness => "stiffness",
            Command::Cond => "cond",
            Command::CheckOrthonormal => "check-orthonormal",
            Command::CheckDivfree => "check-divfree",
            Command::CheckTraces => "check-traces",
            Command::CheckRank => "check-rank",
            Command::Degeneracy => "degeneracy",
            Command::AugmentDemo => "augment-demo",
            Command::Tables => "tables",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// A real number serialized with 17 significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(fmt_num(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Serialize)]
struct Toolchain {
    package: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct Report<'a, P: Serialize> {
    command: &'static str,
    element: Option<&'static str>,
    order: Option<usize>,
    variant: Option<&'static str>,
    path: Option<String>,
    passed: bool,
    payload: P,
    toolchain: Toolchain,
    /// Always null so that identical inputs give identical bytes.
    timestamp: Option<&'a str>,
}

/// Rendered output of one command.
#[derive(Clone, Debug)]
pub struct Output {
    pub json: String,
    pub csv: String,
    pub passed: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot serialize report: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_)
            | CliError::Lib(Error::OrderOutOfRange { .. } | Error::Unsupported(_)) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

struct Ctx<'a> {
    cli: &'a Cli,
    element: Option<ElementKind>,
    with_path: bool,
}

impl Ctx<'_> {
    fn render<P: Serialize>(&self, payload: P, passed: bool, csv: String) -> CliResult<Output> {
        let tet = self.element == Some(ElementKind::Tet);
        let report = Report {
            command: self.cli.command.name(),
            element: self.element.map(ElementKind::name),
            order: self.element.map(|_| self.cli.order),
            variant: tet.then(|| self.cli.variant.name()),
            path: self.with_path.then(|| self.cli.path.to_string()),
            passed,
            payload,
            toolchain: Toolchain {
                package: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
            },
            timestamp: None,
        };
        let mut json = serde_json::to_string_pretty(&report)?;
        json.push('\n');
        Ok(Output { json, csv, passed })
    }
}

fn element(cli: &Cli) -> CliResult<ElementKind> {
    cli.element.ok_or_else(|| {
        CliError::Usage(format!(
            "`{}` needs --element {{quad,hex,tri,tet}}",
            cli.command.name()
        ))
    })
}

fn basis(cli: &Cli) -> CliResult<BasisSet> {
    Ok(build_set(element(cli)?, cli.order, cli.variant)?)
}

#[derive(Serialize)]
struct MatrixPayload {
    size: usize,
    rows: Vec<Vec<Num>>,
}

fn matrix_payload(m: &SymmetricMatrix) -> MatrixPayload {
    MatrixPayload {
        size: m.order(),
        rows: m
            .to_dense()
            .into_iter()
            .map(|r| r.into_iter().map(Num).collect())
            .collect(),
    }
}

#[derive(Serialize)]
struct CondPayload {
    size: usize,
    lambda_max: Num,
    lambda_min: Num,
    kappa: Num,
    excluded: usize,
}

impl From<&CondReport> for CondPayload {
    fn from(r: &CondReport) -> Self {
        CondPayload {
            size: r.size,
            lambda_max: Num(r.lambda_max),
            lambda_min: Num(r.lambda_min),
            kappa: Num(r.kappa),
            excluded: r.excluded,
        }
    }
}

fn cond_pair(set: &BasisSet, path: Path) -> CliResult<(CondReport, CondReport)> {
    let m = condition_number(&mass_matrix(set, path)?, false)?;
    let s = condition_number(&stiffness_matrix(set, path)?, true)?;
    Ok((m, s))
}

fn cond_csv(m: &CondReport, s: &CondReport) -> String {
    let mut out = String::from("matrix,size,lambda_max,lambda_min,kappa,excluded\n");
    for (name, r) in [("mass", m), ("stiffness", s)] {
        out.push_str(&format!(
            "{name},{},{},{},{},{}\n",
            r.size,
            fmt_num(r.lambda_max),
            fmt_num(r.lambda_min),
            fmt_num(r.kappa),
            r.excluded
        ));
    }
    out
}

fn checks_csv(outcomes: &[CheckOutcome]) -> String {
    let mut out = String::from("name,function,passed,detail\n");
    for o in outcomes {
        out.push_str(&format!(
            "{},{},{},\"{}\"\n",
            o.name,
            o.function.map_or(String::new(), |f| f.to_string()),
            o.passed,
            o.detail.replace('"', "'")
        ));
    }
    out
}

#[derive(Serialize)]
struct DimsPayload {
    dimension: usize,
    rows: Vec<TableRow>,
    categories: Vec<CategoryCount>,
}

#[derive(Serialize)]
struct CategoryCount {
    category: String,
    count: usize,
}

fn dims_payload(set: &BasisSet) -> DimsPayload {
    DimsPayload {
        dimension: set.dimension(),
        rows: set.table_rows(),
        categories: set
            .category_counts()
            .into_iter()
            .map(|(c, n)| CategoryCount {
                category: c.label(),
                count: n,
            })
            .collect(),
    }
}

fn rows_csv(prefix: &str, rows: &[TableRow], out: &mut String) {
    for r in rows {
        out.push_str(&format!(
            "{prefix}\"{}\",{},{},{}\n",
            r.label, r.formula, r.expected, r.actual
        ));
    }
}

#[derive(Serialize)]
struct DegeneracyPayload {
    family: &'static str,
    count: usize,
    rank: usize,
    deficit: usize,
    /// Relations `Σ c_i Φ_i = 0` over the family, as exact rationals.
    nullspace: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct AugmentPayload {
    bubble_order: usize,
    coefficient: Num,
    before: Num,
    after: Num,
    residual_degree: u32,
    derivative_at_optimum: Num,
    warning: Option<String>,
    checks: Vec<CheckOutcome>,
}

#[derive(Serialize)]
struct DecompositionTable {
    element: &'static str,
    orders: Vec<DecompositionEntry>,
}

#[derive(Serialize)]
struct DecompositionEntry {
    order: usize,
    rows: Vec<TableRow>,
}

#[derive(Serialize)]
struct TriCondRow {
    order: usize,
    mass: Num,
    stiffness: Num,
}

#[derive(Serialize)]
struct TetCondRow {
    order: usize,
    first_mass: Num,
    first_stiffness: Num,
    second_mass: Num,
    second_stiffness: Num,
    ratio_mass: Num,
    ratio_stiffness: Num,
}

#[derive(Serialize)]
struct TablesPayload {
    decomposition: Vec<DecompositionTable>,
    triangle_condition: Vec<TriCondRow>,
    tetrahedron_condition: Vec<TetCondRow>,
}

/// Orders covered by `tables`.
pub const TABLE_ORDERS: std::ops::RangeInclusive<usize> = 1..=4;

fn tables(cli: &Cli, ctx: &Ctx) -> CliResult<Output> {
    let mut decomposition = Vec::new();
    let mut csv = String::from("table,element,order,label,formula,expected,actual\n");
    let mut passed = true;
    for kind in ElementKind::ALL {
        let mut orders = Vec::new();
        for p in TABLE_ORDERS {
            let set = build_set(kind, p, EdgeFaceVariant::FirstKind)?;
            let rows = set.table_rows();
            passed &= rows.iter().all(|r| r.expected == r.actual);
            rows_csv(
                &format!("decomposition,{},{p},", kind.name()),
                &rows,
                &mut csv,
            );
            orders.push(DecompositionEntry { order: p, rows });
        }
        decomposition.push(DecompositionTable {
            element: kind.name(),
            orders,
        });
    }
    csv.push_str("\ntable,order,mass,stiffness\n");
    let mut triangle_condition = Vec::new();
    for p in TABLE_ORDERS {
        let (m, s) = cond_pair(
            &build_set(ElementKind::Tri, p, EdgeFaceVariant::FirstKind)?,
            cli.path,
        )?;
        csv.push_str(&format!(
            "triangle,{p},{},{}\n",
            fmt_num(m.kappa),
            fmt_num(s.kappa)
        ));
        triangle_condition.push(TriCondRow {
            order: p,
            mass: Num(m.kappa),
            stiffness: Num(s.kappa),
        });
    }
    csv.push_str(
        "\ntable,order,first_mass,first_stiffness,second_mass,second_stiffness,ratio_mass,ratio_stiffness\n",
    );
    let mut tetrahedron_condition = Vec::new();
    for p in TABLE_ORDERS {
        let (fm, fs) = cond_pair(
            &build_set(ElementKind::Tet, p, EdgeFaceVariant::FirstKind)?,
            cli.path,
        )?;
        let (sm, ss) = cond_pair(
            &build_set(ElementKind::Tet, p, EdgeFaceVariant::SecondKind)?,
            cli.path,
        )?;
        let row = TetCondRow {
            order: p,
            first_mass: Num(fm.kappa),
            first_stiffness: Num(fs.kappa),
            second_mass: Num(sm.kappa),
            second_stiffness: Num(ss.kappa),
            ratio_mass: Num(fm.kappa / sm.kappa),
            ratio_stiffness: Num(fs.kappa / ss.kappa),
        };
        csv.push_str(&format!(
            "tetrahedron,{p},{},{},{},{},{},{}\n",
            fmt_num(row.first_mass.0),
            fmt_num(row.first_stiffness.0),
            fmt_num(row.second_mass.0),
            fmt_num(row.second_stiffness.0),
            fmt_num(row.ratio_mass.0),
            fmt_num(row.ratio_stiffness.0)
        ));
        tetrahedron_condition.push(row);
    }
    let payload = TablesPayload {
        decomposition,
        triangle_condition,
        tetrahedron_condition,
    };
    ctx.render(payload, passed, csv)
}

fn check_command(cli: &Cli, ctx: &Ctx) -> CliResult<Output> {
    let set = basis(cli)?;
    let outcomes = match cli.command {
        Command::CheckOrthonormal => checks::orthonormality(&set, cli.path)?,
        Command::CheckDivfree => checks::divergence_free(&set)?,
        Command::CheckTraces => checks::traces(&set)?,
        _ => checks::rank(&set)?,
    };
    let passed = checks::all_passed(&outcomes);
    let csv = checks_csv(&outcomes);
    ctx.render(outcomes, passed, csv)
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> CliResult<Output> {
    let with_path = matches!(
        cli.command,
        Command::Mass
            | Command::Stiffness
            | Command::Cond
            | Command::CheckOrthonormal
            | Command::Tables
    );
    let ctx = Ctx {
        cli,
        element: if cli.command == Command::Tables {
            None
        } else {
            cli.element
        },
        with_path,
    };
    match cli.command {
        Command::Dims => {
            let set = basis(cli)?;
            let p = dims_payload(&set);
            let passed = p.rows.iter().all(|r| r.expected == r.actual);
            let mut csv = String::from("label,formula,expected,actual\n");
            rows_csv("", &p.rows, &mut csv);
            ctx.render(p, passed, csv)
        }
        Command::Mass | Command::Stiffness => {
            let set = basis(cli)?;
            let m = if cli.command == Command::Mass {
                mass_matrix(&set, cli.path)?
            } else {
                stiffness_matrix(&set, cli.path)?
            };
            let csv = m.to_csv();
            ctx.render(matrix_payload(&m), true, csv)
        }
        Command::Cond => {
            let set = basis(cli)?;
            let (m, s) = cond_pair(&set, cli.path)?;
            #[derive(Serialize)]
            struct P {
                mass: CondPayload,
                stiffness: CondPayload,
            }
            let csv = cond_csv(&m, &s);
            ctx.render(
                P {
                    mass: (&m).into(),
                    stiffness: (&s).into(),
                },
                true,
                csv,
            )
        }
        Command::CheckOrthonormal
        | Command::CheckDivfree
        | Command::CheckTraces
        | Command::CheckRank => check_command(cli, &ctx),
        Command::Degeneracy => {
            if element(cli)? != ElementKind::Tet {
                return Err(CliError::Usage(
                    "`degeneracy` applies to --element tet".into(),
                ));
            }
            let payload = match cli.variant {
                EdgeFaceVariant::AC => {
                    let c = tet::degeneracy_certificate(cli.order)?;
                    DegeneracyPayload {
                        family: "edge-face-ac",
                        count: c.count,
                        rank: c.rank,
                        deficit: c.count - c.rank,
                        nullspace: c
                            .nullspace
                            .iter()
                            .map(|v| v.iter().map(ToString::to_string).collect())
                            .collect(),
                    }
                }
                v => {
                    let set = build_set(ElementKind::Tet, cli.order, v)?;
                    let ef: Vec<_> = set
                        .functions
                        .iter()
                        .filter(|f| f.category.label().starts_with("edge-face"))
                        .map(|f| f.field.clone())
                        .collect();
                    let rank = crate::rank::coefficient_rank(&ef)?;
                    DegeneracyPayload {
                        family: if v == EdgeFaceVariant::FirstKind {
                            "edge-face-first"
                        } else {
                            "edge-face-second"
                        },
                        count: ef.len(),
                        rank,
                        deficit: ef.len() - rank,
                        nullspace: Vec::new(),
                    }
                }
            };
            let mut csv = format!(
                "family,count,rank,deficit\n{},{},{},{}\n",
                payload.family, payload.count, payload.rank, payload.deficit
            );
            for (i, v) in payload.nullspace.iter().enumerate() {
                csv.push_str(&format!("relation {i},{}\n", v.join(",")));
            }
            ctx.render(payload, true, csv)
        }
        Command::AugmentDemo => {
            let set = basis(cli)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let coeffs: Vec<f64> = (0..set.dimension())
                .map(|_| rng.gen_range(-1.0..1.0))
                .collect();
            let field = DiscreteField::from_set(&set, coeffs)?;
            let r = augment(&field, cli.order)?;
            let deriv = r.derivative_at(r.coefficient);
            let checks = vec![
                CheckOutcome {
                    name: "after ≤ before".into(),
                    function: None,
                    passed: r.after <= r.before,
                    detail: format!("{} → {}", fmt_num(r.before), fmt_num(r.after)),
                },
                CheckOutcome {
                    name: "stationary at C_χ".into(),
                    function: None,
                    passed: deriv.abs() <= 1e-10,
                    detail: format!("d/dC ‖div‖² = {}", fmt_num(deriv)),
                },
            ];
            let passed = checks::all_passed(&checks);
            let csv = format!(
                "bubble_order,coefficient,before,after,residual_degree\n{},{},{},{},{}\n",
                r.bubble_order,
                fmt_num(r.coefficient),
                fmt_num(r.before),
                fmt_num(r.after),
                r.residual_degree
            );
            let payload = AugmentPayload {
                bubble_order: r.bubble_order,
                coefficient: Num(r.coefficient),
                before: Num(r.before),
                after: Num(r.after),
                residual_degree: r.residual_degree,
                derivative_at_optimum: Num(deriv),
                warning: r.warning.clone(),
                checks,
            };
            ctx.render(payload, passed, csv)
        }
        Command::Tables => tables(cli, &ctx),
    }
}

/// Parses `argv`, runs the command, writes the report and returns the exit
/// code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|out| write_output(&cli, &out).map(|_| out)) {
        Ok(out) => i32::from(!out.passed),
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, CliError::Usage(_)) {
                eprintln!("run `hdiv --help` for usage");
            }
            e.exit_code()
        }
    }
}

fn write_output(cli: &Cli, out: &Output) -> CliResult<()> {
    let text = match cli.format {
        Format::Json => &out.json,
        Format::Csv => &out.csv,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
