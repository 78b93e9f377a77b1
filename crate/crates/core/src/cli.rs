//! Command-line front end.
//!
//! Data goes to the `out` sink and is buffered until the command finishes, so
//! a usage error never leaves partial data behind. Diagnostics go to `err`.
//! Exit status: 0 when every requested check passes, 1 when a check fails or
//! a computation errors, 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::grassmann::{
    self, brute_force_basis, catalog, formula_values, ht2_computed, ht3_computed, ideal_basis,
    m_n_computed, realizer_spec, GrassmannError, Identity, IdentityError, IdentityId,
    InvariantReport, MAX_N,
};
use crate::gseq::GSequence;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "grassmann-cup",
    version,
    about = "Gröbner bases, heights and cup-length for oriented Grassmannians G(n,3)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Gröbner basis of I_n with leading monomials
    Basis(BasisArgs),
    /// Heights of w2 and w3, closed form against computed
    Heights(RangeArgs),
    /// Z2-cup-length, closed form against computed, with a witness monomial
    Cuplength(RangeArgs),
    /// Run the identity catalog, or a single instance
    Identities(IdentityArgs),
    /// Full end-to-end verification report per n
    Verify(RangeArgs),
    /// Closed-form table for n = 2^t - 1 ... 2^(t+1) - 2
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; 0 picks one per core
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    #[arg(long)]
    pub n: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[arg(long, conflicts_with_all = ["from", "to"])]
    pub n: Option<u64>,
    #[arg(long, requires = "to")]
    pub from: Option<u64>,
    #[arg(long, requires = "from")]
    pub to: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    /// Restrict to one identity tag
    #[arg(long)]
    pub id: Option<String>,
    /// Check a single instance of --id with these comma-separated parameters
    #[arg(long, value_delimiter = ',', requires = "id")]
    pub params: Option<Vec<u64>>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub t: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Compute(String),
}

impl From<GrassmannError> for CliError {
    fn from(e: GrassmannError) -> Self {
        CliError::Compute(e.to_string())
    }
}

/// A finished command: buffered data, diagnostics and overall verdict.
struct Outcome {
    data: Vec<u8>,
    diagnostics: Vec<String>,
    ok: bool,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, color: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, color) {
        Ok(outcome) => {
            for d in &outcome.diagnostics {
                let _ = writeln!(err, "{d}");
            }
            if out
                .write_all(&outcome.data)
                .and_then(|_| out.flush())
                .is_err()
            {
                return EXIT_FAILED;
            }
            if outcome.ok {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILED
        }
    }
}

fn execute(command: Command, color: bool) -> Result<Outcome, CliError> {
    match command {
        Command::Basis(a) => basis(a, color),
        Command::Heights(a) => {
            let ns = range(&a, 7)?;
            let rows = par_map(ns, a.output.jobs, heights_row)?;
            emit(rows, a.output.format, color, Vec::new())
        }
        Command::Cuplength(a) => {
            let ns = range(&a, 6)?;
            let rows = par_map(ns, a.output.jobs, cup_row)?;
            emit(rows, a.output.format, color, Vec::new())
        }
        Command::Identities(a) => identities(a, color),
        Command::Verify(a) => {
            let ns = range(&a, 6)?;
            let reports = par_map(ns, a.output.jobs, grassmann::verify)?;
            let diagnostics = reports
                .iter()
                .flat_map(|r| r.errors.iter().map(move |e| format!("n = {}: {e}", r.n)))
                .collect();
            emit(
                reports.into_iter().map(VerifyRow).collect(),
                a.output.format,
                color,
                diagnostics,
            )
        }
        Command::Table(a) => table(a, color),
    }
}

fn check_n(n: u64, min: u64) -> Result<(), CliError> {
    if n < min {
        Err(CliError::Usage(format!(
            "n must be at least {min}, got {n}"
        )))
    } else if n > MAX_N {
        Err(CliError::Usage(format!(
            "n must be at most {MAX_N}, got {n}"
        )))
    } else {
        Ok(())
    }
}

fn range(a: &RangeArgs, min: u64) -> Result<RangeInclusive<u64>, CliError> {
    let (from, to) = match (a.n, a.from, a.to) {
        (Some(n), _, _) => (n, n),
        (None, Some(from), Some(to)) => (from, to),
        _ => {
            return Err(CliError::Usage(
                "give either --n or both --from and --to".into(),
            ))
        }
    };
    if from > to {
        return Err(CliError::Usage(format!("--from {from} exceeds --to {to}")));
    }
    check_n(from, min)?;
    check_n(to, min)?;
    Ok(from..=to)
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Compute(e.to_string()))
}

/// Maps `f` over `ns` in parallel, one memo per worker; results keep the order of `ns`.
fn par_map<R, F>(ns: RangeInclusive<u64>, jobs: usize, f: F) -> Result<Vec<R>, CliError>
where
    R: Send,
    F: Fn(u64, &mut GSequence) -> Result<R, GrassmannError> + Sync,
{
    let results: Vec<Result<R, GrassmannError>> = pool(jobs)?.install(|| {
        ns.into_par_iter()
            .map_init(GSequence::new, |seq, n| f(n, seq))
            .collect()
    });
    results
        .into_iter()
        .map(|r| r.map_err(CliError::from))
        .collect()
}

/// One output record.
trait Row: Serialize {
    fn text_header() -> Vec<&'static str>;
    fn text_cells(&self) -> Vec<String>;
    fn csv_header() -> Vec<&'static str> {
        Self::text_header()
    }
    fn csv_cells(&self) -> Vec<String> {
        self.text_cells()
    }
    /// Verdict for the row, if it carries one.
    fn ok(&self) -> Option<bool>;
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn opt_csv<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, T::to_string)
}

fn status(ok: bool, color: bool) -> String {
    match (ok, color) {
        (true, true) => "\x1b[32mPASS\x1b[0m".into(),
        (false, true) => "\x1b[31mFAIL\x1b[0m".into(),
        (true, false) => "PASS".into(),
        (false, false) => "FAIL".into(),
    }
}

fn emit<R: Row>(
    rows: Vec<R>,
    format: Format,
    color: bool,
    diagnostics: Vec<String>,
) -> Result<Outcome, CliError> {
    let ok = rows.iter().all(|r| r.ok().unwrap_or(true));
    let data = match format {
        Format::Json => {
            let mut buf = Vec::new();
            for r in &rows {
                serde_json::to_writer(&mut buf, r).map_err(|e| CliError::Compute(e.to_string()))?;
                buf.push(b'\n');
            }
            buf
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let compute = |e: csv::Error| CliError::Compute(e.to_string());
            w.write_record(R::csv_header()).map_err(compute)?;
            for r in &rows {
                w.write_record(r.csv_cells()).map_err(compute)?;
            }
            w.into_inner()
                .map_err(|e| CliError::Compute(e.to_string()))?
        }
        Format::Text => render_text(&rows, color).into_bytes(),
    };
    Ok(Outcome {
        data,
        diagnostics,
        ok,
    })
}

fn render_text<R: Row>(rows: &[R], color: bool) -> String {
    let header = R::text_header();
    let cells: Vec<Vec<String>> = rows.iter().map(Row::text_cells).collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let with_status = rows.first().is_some_and(|r| r.ok().is_some());
    let line = |items: Vec<String>, tail: Option<String>| {
        let mut s = items
            .iter()
            .zip(&widths)
            .map(|(c, w)| {
                if c.parse::<i64>().is_ok() || c == "-" {
                    format!("{c:>w$}")
                } else {
                    format!("{c:<w$}")
                }
            })
            .collect::<Vec<_>>()
            .join("  ");
        if let Some(t) = tail {
            s.push_str("  ");
            s.push_str(&t);
        }
        s.push('\n');
        s
    };
    let mut out = line(
        header.iter().map(|h| h.to_string()).collect(),
        with_status.then(|| "status".to_string()),
    );
    for (r, c) in rows.iter().zip(cells) {
        out.push_str(&line(c, r.ok().map(|ok| status(ok, color))));
    }
    out
}

#[derive(Serialize)]
struct BasisElement {
    poly: String,
    lm: String,
}

#[derive(Serialize)]
struct BasisRecord {
    n: u64,
    source: &'static str,
    verified: bool,
    basis: Vec<BasisElement>,
}

fn basis(a: BasisArgs, _color: bool) -> Result<Outcome, CliError> {
    check_n(a.n, 6)?;
    let mut seq = GSequence::new();
    let (gb, source) = if a.n == 6 {
        (brute_force_basis(6, &mut seq)?, "buchberger")
    } else {
        (ideal_basis(a.n, &mut seq)?, "closed")
    };
    let record = BasisRecord {
        n: a.n,
        source,
        verified: gb.is_verified(),
        basis: gb
            .elements()
            .iter()
            .zip(gb.leading_monomials())
            .map(|(p, lm)| BasisElement {
                poly: p.to_string(),
                lm: lm.to_string(),
            })
            .collect(),
    };
    let data = match a.output.format {
        Format::Json => {
            let mut s =
                serde_json::to_string(&record).map_err(|e| CliError::Compute(e.to_string()))?;
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let compute = |e: csv::Error| CliError::Compute(e.to_string());
            w.write_record(["n", "index", "poly", "lm"])
                .map_err(compute)?;
            for (i, e) in record.basis.iter().enumerate() {
                w.write_record([a.n.to_string(), i.to_string(), e.poly.clone(), e.lm.clone()])
                    .map_err(compute)?;
            }
            w.into_inner()
                .map_err(|e| CliError::Compute(e.to_string()))?
        }
        // one polynomial per line; the LM follows after a tab
        Format::Text => record
            .basis
            .iter()
            .map(|e| format!("{}\tLM {}\n", e.poly, e.lm))
            .collect::<String>()
            .into_bytes(),
    };
    Ok(Outcome {
        data,
        diagnostics: Vec::new(),
        ok: record.verified,
    })
}

#[derive(Serialize)]
struct HeightsRow {
    n: u64,
    t: u32,
    ht2_formula: u64,
    ht2_computed: u64,
    ht3_formula: u64,
    ht3_computed: u64,
    passed: bool,
}

fn heights_row(n: u64, seq: &mut GSequence) -> Result<HeightsRow, GrassmannError> {
    let f = formula_values(n)?;
    let gb = ideal_basis(n, seq)?;
    let (h2, h3) = (ht2_computed(&gb)?, ht3_computed(&gb)?);
    Ok(HeightsRow {
        n,
        t: f.t,
        ht2_formula: f.ht2,
        ht2_computed: h2,
        ht3_formula: f.ht3,
        ht3_computed: h3,
        passed: h2 == f.ht2 && h3 == f.ht3,
    })
}

impl Row for HeightsRow {
    fn text_header() -> Vec<&'static str> {
        vec!["n", "t", "ht2", "ht2*", "ht3", "ht3*"]
    }
    fn text_cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.t.to_string(),
            self.ht2_formula.to_string(),
            self.ht2_computed.to_string(),
            self.ht3_formula.to_string(),
            self.ht3_computed.to_string(),
        ]
    }
    fn csv_header() -> Vec<&'static str> {
        vec![
            "n",
            "t",
            "ht2_formula",
            "ht2_computed",
            "ht3_formula",
            "ht3_computed",
            "passed",
        ]
    }
    fn csv_cells(&self) -> Vec<String> {
        let mut c = self.text_cells();
        c.push(self.passed.to_string());
        c
    }
    fn ok(&self) -> Option<bool> {
        Some(self.passed)
    }
}

#[derive(Serialize)]
struct CupRow {
    n: u64,
    t: u32,
    cup_formula: u64,
    m_n: u64,
    cup_computed: u64,
    witness: String,
    witness_degree: u64,
    passed: bool,
}

fn cup_row(n: u64, seq: &mut GSequence) -> Result<CupRow, GrassmannError> {
    let f = formula_values(n)?;
    let gb = ideal_basis(n, seq)?;
    let (m, w) = m_n_computed(&gb)?;
    let degree = w.degree();
    Ok(CupRow {
        n,
        t: f.t,
        cup_formula: f.cup,
        m_n: m,
        cup_computed: m + 1,
        witness: w.to_string(),
        witness_degree: degree,
        passed: m + 1 == f.cup && degree < 3 * n - 9,
    })
}

impl Row for CupRow {
    fn text_header() -> Vec<&'static str> {
        vec!["n", "t", "cup", "cup*", "witness"]
    }
    fn text_cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.t.to_string(),
            self.cup_formula.to_string(),
            self.cup_computed.to_string(),
            self.witness.clone(),
        ]
    }
    fn csv_header() -> Vec<&'static str> {
        vec![
            "n",
            "t",
            "cup_formula",
            "m_n",
            "cup_computed",
            "witness",
            "witness_degree",
            "passed",
        ]
    }
    fn csv_cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.t.to_string(),
            self.cup_formula.to_string(),
            self.m_n.to_string(),
            self.cup_computed.to_string(),
            self.witness.clone(),
            self.witness_degree.to_string(),
            self.passed.to_string(),
        ]
    }
    fn ok(&self) -> Option<bool> {
        Some(self.passed)
    }
}

struct VerifyRow(InvariantReport);

impl Serialize for VerifyRow {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl Row for VerifyRow {
    fn text_header() -> Vec<&'static str> {
        vec!["n", "cup", "realizer", "ht(w2)", "ht(w3)"]
    }
    fn text_cells(&self) -> Vec<String> {
        let r = &self.0;
        vec![
            r.n.to_string(),
            opt(&r.m_n.map(|m| m + 1)),
            opt(&r.realizer.map(|x| x.to_string())),
            opt(&r.ht2_computed),
            opt(&r.ht3_computed),
        ]
    }
    fn csv_header() -> Vec<&'static str> {
        vec![
            "n",
            "t",
            "ht2_formula",
            "ht2_computed",
            "ht3_formula",
            "ht3_computed",
            "m_n",
            "cup_formula",
            "charrank",
            "witness",
            "groebner_ok",
            "basis_match_ok",
            "realizer_ok",
            "identities_ok",
            "bounds_ok",
            "passed",
        ]
    }
    fn csv_cells(&self) -> Vec<String> {
        let r = &self.0;
        vec![
            r.n.to_string(),
            r.t.to_string(),
            r.ht2_formula.to_string(),
            opt_csv(&r.ht2_computed),
            r.ht3_formula.to_string(),
            opt_csv(&r.ht3_computed),
            opt_csv(&r.m_n),
            r.cup_formula.to_string(),
            opt_csv(&r.charrank),
            opt_csv(&r.witness),
            r.flags.groebner_ok.to_string(),
            r.flags.basis_match_ok.to_string(),
            r.flags.realizer_ok.to_string(),
            r.flags.identities_ok.to_string(),
            r.flags.bounds_ok.to_string(),
            r.passed().to_string(),
        ]
    }
    fn ok(&self) -> Option<bool> {
        Some(self.0.passed())
    }
}

#[derive(Serialize)]
struct TableRowOut {
    n: u64,
    cup: u64,
    realizer: String,
    ht2: u64,
    ht3: u64,
}

impl Row for TableRowOut {
    fn text_header() -> Vec<&'static str> {
        vec!["n", "cup", "realizer", "ht(w2)", "ht(w3)"]
    }
    fn text_cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.cup.to_string(),
            self.realizer.clone(),
            self.ht2.to_string(),
            self.ht3.to_string(),
        ]
    }
    fn csv_header() -> Vec<&'static str> {
        vec!["n", "cup", "realizer", "ht2", "ht3"]
    }
    fn ok(&self) -> Option<bool> {
        None
    }
}

fn table(a: TableArgs, color: bool) -> Result<Outcome, CliError> {
    let max_t = 63 - (MAX_N + 2).leading_zeros() - 1;
    if !(3..=max_t).contains(&a.t) {
        return Err(CliError::Usage(format!(
            "t must lie in 3..={max_t}, got {}",
            a.t
        )));
    }
    let rows = ((1u64 << a.t) - 1..=(1u64 << (a.t + 1)) - 2)
        .map(|n| {
            let f = formula_values(n)?;
            Ok(TableRowOut {
                n,
                cup: f.cup,
                realizer: realizer_spec(n)?.to_string(),
                ht2: f.ht2,
                ht3: f.ht3,
            })
        })
        .collect::<Result<Vec<_>, GrassmannError>>()?;
    emit(rows, a.output.format, color, Vec::new())
}

#[derive(Serialize)]
struct IdentityRow {
    id: String,
    instances: usize,
    failures: usize,
    first_failure: Option<Vec<u64>>,
    passed: bool,
}

impl Row for IdentityRow {
    fn text_header() -> Vec<&'static str> {
        vec!["identity", "instances", "failures", "first failure"]
    }
    fn text_cells(&self) -> Vec<String> {
        vec![
            self.id.clone(),
            self.instances.to_string(),
            self.failures.to_string(),
            opt(&self.first_failure.as_ref().map(|p| params_text(p))),
        ]
    }
    fn csv_header() -> Vec<&'static str> {
        vec!["id", "instances", "failures", "first_failure", "passed"]
    }
    fn csv_cells(&self) -> Vec<String> {
        vec![
            self.id.clone(),
            self.instances.to_string(),
            self.failures.to_string(),
            opt_csv(&self.first_failure.as_ref().map(|p| params_text(p))),
            self.passed.to_string(),
        ]
    }
    fn ok(&self) -> Option<bool> {
        Some(self.passed)
    }
}

fn params_text(p: &[u64]) -> String {
    p.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn run_group(
    id: IdentityId,
    items: &[Identity],
    seq: &mut GSequence,
) -> (IdentityRow, Vec<String>) {
    let mut failures = Vec::new();
    let mut diagnostics = Vec::new();
    for ident in items {
        match ident.check(seq) {
            Ok(true) => {}
            Ok(false) => failures.push(ident.params()),
            Err(e) => {
                diagnostics.push(format!("{id} {}: {e}", params_text(&ident.params())));
                failures.push(ident.params());
            }
        }
    }
    let row = IdentityRow {
        id: id.to_string(),
        instances: items.len(),
        failures: failures.len(),
        first_failure: failures.first().cloned(),
        passed: failures.is_empty(),
    };
    (row, diagnostics)
}

fn identities(a: IdentityArgs, color: bool) -> Result<Outcome, CliError> {
    let id =
        a.id.as_deref()
            .map(str::parse::<IdentityId>)
            .transpose()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    let groups: Vec<(IdentityId, Vec<Identity>)> = match (id, &a.params) {
        (Some(id), Some(params)) => {
            let ident = Identity::from_params(id, params).map_err(|e| match e {
                IdentityError::Grassmann(inner) => CliError::Compute(inner.to_string()),
                other => CliError::Usage(other.to_string()),
            })?;
            vec![(id, vec![ident])]
        }
        (Some(id), None) => catalog().into_iter().filter(|(g, _)| *g == id).collect(),
        (None, _) => catalog(),
    };
    let results: Vec<(IdentityRow, Vec<String>)> = pool(a.output.jobs)?.install(|| {
        groups
            .par_iter()
            .map_init(GSequence::new, |seq, (id, items)| {
                run_group(*id, items, seq)
            })
            .collect()
    });
    let (rows, diags): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    emit(
        rows,
        a.output.format,
        color,
        diags.into_iter().flatten().collect(),
    )
}
