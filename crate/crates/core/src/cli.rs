//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::fraction;
use crate::bialgebra::{Bialgebra, CheckReport};
use crate::error::{CheckError, GroupoidError, OperadError, SpecError};
use crate::factorization::local_finiteness_report;
use crate::fdb::{c2_equivalence_check, check_g_parts, fdb_check, green};
use crate::library::{builtin, FreeOperad, BUILTINS};
use crate::operad::{validate_operad, Operad};
use crate::oracles::{bell_oracle, classical_crosscheck, cut_crosscheck};
use crate::table::{export_table, OperadData};
use crate::testing::groupoid_suite;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    BadSpecFile(#[from] SpecError),
    #[error("unknown built-in operad {0} (known: {known})", known = BUILTINS.join(", "))]
    UnknownBuiltin(String),
    #[error("no generator {0} in the window")]
    UnknownClass(String),
    #[error("give exactly one of --operad and --spec")]
    Source,
    #[error("--cap must be at least 1")]
    Cap,
    #[error("reading {0}: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Operad(OperadError),
    #[error(transparent)]
    Check(CheckError),
}

impl From<OperadError> for CliError {
    fn from(e: OperadError) -> Self {
        match e {
            OperadError::UnknownBuiltin(n) => CliError::UnknownBuiltin(n),
            e => CliError::Operad(e),
        }
    }
}

impl From<CheckError> for CliError {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::Operad(e) => e.into(),
            e => CliError::Check(e),
        }
    }
}

impl From<GroupoidError> for CliError {
    fn from(e: GroupoidError) -> Self {
        CliError::Operad(e.into())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "fdb-operad",
    version,
    about = "Incidence bialgebras of operads and their Faa di Bruno formula"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Built-in operad name.
    #[arg(long, global = true)]
    pub operad: Option<String>,
    /// Operad spec JSON file.
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    /// Arity cap of the window (built-ins only).
    #[arg(long, global = true, default_value_t = 4)]
    pub cap: usize,
    /// Colour names for `multivariate`, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub colours: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub out: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for the random groupoid suite.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the operad axioms on the window.
    Validate,
    /// Comultiplication of one generator.
    Delta {
        #[arg(long = "class")]
        class: String,
    },
    /// The Green function G = Σ δ_c/|Aut c|.
    Green,
    /// Compare Δ(G) with Σ_w G^w ⊗ g_w coefficientwise.
    FdbCheck,
    /// Set partitions of n points by block type.
    Bell {
        #[arg(long)]
        n: usize,
    },
    /// All structural checks on the window, any applicable oracle, and the
    /// random groupoid suite.
    Checks {
        /// Number of random groupoid instances.
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
    /// Print the operad as a spec file.
    Export,
}

/// The result of a command: a JSON document, a table, and a verdict.
pub struct Outcome {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub pass: bool,
}

impl Outcome {
    fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>, pass: bool) -> Self {
        Outcome {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
            pass,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).unwrap()),
            Format::Csv => {
                let mut s = String::new();
                for row in std::iter::once(&self.header).chain(&self.rows) {
                    let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Text => {
                let mut widths: Vec<usize> =
                    self.header.iter().map(|h| h.chars().count()).collect();
                for row in &self.rows {
                    for (w, c) in widths.iter_mut().zip(row) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let mut s = String::new();
                for row in std::iter::once(&self.header).chain(&self.rows) {
                    let cells: Vec<String> = row
                        .iter()
                        .zip(&widths)
                        .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                        .collect();
                    s.push_str(cells.join("  ").trim_end());
                    s.push('\n');
                }
                s
            }
        }
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

fn load(cli: &Cli) -> Result<Box<dyn Operad>, CliError> {
    match (&cli.operad, &cli.spec) {
        (Some(name), None) => {
            if cli.cap == 0 {
                return Err(CliError::Cap);
            }
            Ok(builtin(name, cli.cap, &cli.colours)?)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(path.display().to_string(), e))?;
            Ok(Box::new(OperadData::from_json_str(&text)?))
        }
        _ => Err(CliError::Source),
    }
}

fn report_rows(r: &CheckReport) -> Vec<Vec<String>> {
    r.entries
        .iter()
        .map(|e| {
            vec![
                r.check.clone(),
                e.key.clone(),
                pass_word(e.ok).into(),
                e.detail.clone(),
            ]
        })
        .collect()
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn cmd_validate(d: &dyn Operad) -> Outcome {
    let r = validate_operad(d);
    let rows = r
        .violations
        .iter()
        .map(|v| vec![format!("{:?}", v.kind), v.detail.clone()])
        .collect();
    let json = json!({ "operad": d.name(), "verdict": r.is_clean(), "cap": d.cap(), "report": r });
    Outcome::new(json, &["violation", "detail"], rows, r.is_clean())
}

pub fn cmd_delta(b: &Bialgebra<'_>, class: &str) -> Result<Outcome, CliError> {
    let d = b.operad();
    let c = b
        .class(class)
        .ok_or_else(|| CliError::UnknownClass(format!("{class} (cap {})", d.cap())))?
        .clone();
    let delta = b.delta_gen(&c)?;
    let rows: Vec<Vec<String>> = delta
        .rows()
        .into_iter()
        .map(|(x, y, q)| vec![x, y, q])
        .collect();
    let mut json = delta.to_json();
    json["cap"] = json!(d.cap());
    json["verdict"] = json!(true);
    Ok(Outcome::new(
        json,
        &["inner", "outer", "coefficient"],
        rows,
        true,
    ))
}

pub fn cmd_green(b: &Bialgebra<'_>) -> Outcome {
    let g = green(b);
    let rows = b
        .classes()
        .iter()
        .map(|c| {
            vec![
                c.class_id.clone(),
                c.arity.to_string(),
                c.aut_order.to_string(),
                c.orbit_size.to_string(),
                fraction(&g.series.coefficient(&b.generator(c))),
            ]
        })
        .collect();
    let json = json!({ "operad": b.operad().name(), "cap": b.operad().cap(), "verdict": true, "green": g.to_json() });
    Outcome::new(
        json,
        &["class", "arity", "aut", "orbit", "coefficient"],
        rows,
        true,
    )
}

pub fn cmd_fdb(b: &Bialgebra<'_>) -> Result<Outcome, CliError> {
    let r = fdb_check(b)?;
    let rows = r
        .entries
        .iter()
        .map(|e| {
            vec![
                e.inner.clone(),
                e.outer.clone(),
                e.lhs.clone(),
                e.rhs.clone(),
                pass_word(e.matches).into(),
            ]
        })
        .collect();
    let pass = r.verdict;
    Ok(Outcome::new(
        serde_json::to_value(&r).unwrap(),
        &["inner", "outer", "lhs", "rhs", "match"],
        rows,
        pass,
    ))
}

pub fn cmd_bell(n: usize) -> Result<Outcome, CliError> {
    let table = bell_oracle(n)?;
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for (sizes, count) in &table {
        let ty: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
        rows.push(vec![
            sizes.len().to_string(),
            ty.join("+"),
            count.to_string(),
        ]);
        entries.push(json!({ "k": sizes.len(), "type": sizes, "count": count }));
    }
    rows.sort_by_key(|r| r[0].parse::<usize>().unwrap());
    let json =
        json!({ "n": n, "verdict": true, "bell": table.values().sum::<u64>(), "entries": entries });
    Ok(Outcome::new(json, &["k", "type", "count"], rows, true))
}

pub fn cmd_checks(
    b: &Bialgebra<'_>,
    name: Option<&str>,
    seed: u64,
    instances: usize,
) -> Result<Outcome, CliError> {
    let d = b.operad();
    let mut reports = vec![
        b.check_coassoc()?,
        b.check_counit_laws()?,
        b.check_multiplicativity()?,
        b.segal_check()?,
        check_g_parts(b, 3)?,
    ];
    let mut extra = serde_json::Map::new();
    if d.cap() <= 4 {
        let c2 = c2_equivalence_check(b)?;
        let mut r = CheckReport::new("c2");
        for e in &c2.entries {
            r.record(
                &format!("{} | {}", e.inner, e.outer),
                e.matches,
                e.explicit.clone(),
            );
        }
        reports.push(r);
    } else {
        extra.insert("c2".into(), json!("skipped: cap above 4"));
    }
    match name {
        Some("comm_plus") if d.cap() <= 10 => {
            let c = classical_crosscheck(d.cap())?;
            let mut r = CheckReport::new("partitions");
            for e in &c.entries {
                r.record(
                    &format!("{} | {}", e.inner, e.outer),
                    e.matches,
                    e.partitions.to_string(),
                );
            }
            r.verdict &= c.verdict;
            reports.push(r);
        }
        Some("free_binary") => reports.push(cut_crosscheck(&free_by_name("free_binary", d.cap()))?),
        Some("free_binary_nullary") => reports.push(cut_crosscheck(&free_by_name(
            "free_binary_nullary",
            d.cap(),
        ))?),
        _ => {}
    }
    reports.push(groupoid_suite(seed, instances)?);
    let finiteness = local_finiteness_report(b.classifier())?;
    let pass = reports.iter().all(|r| r.verdict);
    let rows = reports.iter().flat_map(report_rows).collect();
    let summary: Vec<Value> = reports
        .iter()
        .map(|r| json!({ "check": r.check, "verdict": r.verdict, "entries": r.entries.len(), "failures": r.failures().collect::<Vec<_>>() }))
        .collect();
    let mut json = json!({
        "operad": d.name(),
        "cap": d.cap(),
        "verdict": pass,
        "seed": seed,
        "checks": summary,
        "finiteness_warnings": finiteness.warnings,
    });
    for (k, v) in extra {
        json[k] = v;
    }
    Ok(Outcome::new(
        json,
        &["check", "key", "result", "detail"],
        rows,
        pass,
    ))
}

fn free_by_name(name: &str, cap: usize) -> FreeOperad {
    if name == "free_binary" {
        crate::library::binary_tree_operad(cap)
    } else {
        crate::library::binary_nullary_operad(cap)
    }
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    if let Command::Bell { n } = cli.command {
        return cmd_bell(n);
    }
    let d = load(cli)?;
    match &cli.command {
        Command::Validate => Ok(cmd_validate(d.as_ref())),
        Command::Export => {
            let v = export_table(d.as_ref());
            Ok(Outcome::new(v, &[], Vec::new(), true))
        }
        cmd => {
            let b = Bialgebra::new(d.as_ref())?;
            match cmd {
                Command::Delta { class } => cmd_delta(&b, class),
                Command::Green => Ok(cmd_green(&b)),
                Command::FdbCheck => cmd_fdb(&b),
                Command::Checks { instances } => {
                    cmd_checks(&b, cli.operad.as_deref(), cli.seed, *instances)
                }
                _ => unreachable!(),
            }
        }
    }
}

/// Runs the CLI and returns the exit status: 0 when every check passes,
/// 1 on a mathematical mismatch, 2 on an input error.
pub fn run(cli: &Cli) -> i32 {
    let outcome = match execute(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let format = if matches!(cli.command, Command::Export) {
        Format::Json
    } else {
        cli.out
    };
    let text = outcome.render(format);
    let written = match &cli.output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| CliError::Io(path.display().to_string(), e))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io("stdout".into(), e)),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    if outcome.pass {
        0
    } else {
        1
    }
}
