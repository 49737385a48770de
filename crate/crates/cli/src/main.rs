use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use castleqec::agcodes::{ag_build, dual_pole_order, CodeRow};
use castleqec::code::default_budget;
use castleqec::quantum::{
    construction_a, construction_bc, css_hermitian, css_self_orthogonal, gv_report, sequence_bound, Variant,
};
use castleqec::repro::{manifest, run_target, target, Check, TargetReport};
use castleqec::{
    CodeSequence, ConstructionOutcome, CurveSpec, DualityStatus, Error, EvaluationSet, Field, InnerProduct,
    QuantumParams,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "castleqec", version, about = "One-point AG codes and CSS quantum codes from Castle curves")]
struct Cli {
    /// Output format: one JSON object per line, or CSV with a header.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Enumeration budget in codewords; overrides CASTLEQEC_BUDGET.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    Hermitian,
    Euclidean,
}

#[derive(Subcommand)]
enum Command {
    /// Build C(mQ) from a curve spec and report it.
    Build {
        #[arg(long)]
        curve_file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        /// Also report the trace code over GF(q).
        #[arg(long)]
        trace_to: Option<u64>,
    },
    /// Rebuild published parameter rows and compare.
    Reproduce {
        #[arg(long, conflicts_with_all = ["all", "list"], required_unless_present_any = ["all", "list"])]
        target: Option<String>,
        #[arg(long)]
        all: bool,
        /// Print the known target names.
        #[arg(long)]
        list: bool,
    },
    /// Quantum codes from C_1, ..., C_max-i of a curve's sequence.
    Scan {
        #[arg(long)]
        curve_file: PathBuf,
        #[arg(long, value_enum)]
        construction: Kind,
        #[arg(long)]
        max_i: usize,
    },
    /// Classify [[n,k,d]]_q against the quantum GV bound.
    Gv {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        q: u64,
    },
}

enum Failure {
    Lib(Error),
    Input(String),
    Repro,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Out {
    format: Format,
    csv: Option<csv::Writer<io::Stdout>>,
}

impl Out {
    fn new(format: Format) -> Out {
        let csv = (format == Format::Csv).then(|| csv::Writer::from_writer(io::stdout()));
        Out { format, csv }
    }

    fn row<T: Serialize>(&mut self, r: &T) -> Result<(), Failure> {
        match self.format {
            Format::Json => {
                let line = serde_json::to_string(r).map_err(Error::from)?;
                let mut o = io::stdout().lock();
                writeln!(o, "{line}")?;
            }
            Format::Csv => self.csv.as_mut().unwrap().serialize(r)?,
        }
        Ok(())
    }

    fn finish(self) -> Result<(), Failure> {
        if let Some(mut w) = self.csv {
            w.flush()?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct BuildRow {
    curve: String,
    n: usize,
    m: i64,
    k: usize,
    abundance: u64,
    goppa: i64,
    order: u64,
    d_exact: Option<u64>,
    euclidean_self_orthogonal: bool,
    hermitian_self_orthogonal: Option<bool>,
}

impl From<CodeRow> for BuildRow {
    fn from(r: CodeRow) -> Self {
        BuildRow {
            curve: r.curve,
            n: r.n,
            m: r.m,
            k: r.k,
            abundance: r.abundance,
            goppa: r.goppa,
            order: r.order,
            d_exact: r.d_exact,
            euclidean_self_orthogonal: r.self_orth.euclidean,
            hermitian_self_orthogonal: r.self_orth.hermitian,
        }
    }
}

#[derive(Serialize)]
struct TraceRow {
    curve: String,
    m: i64,
    q: u64,
    n: usize,
    k: usize,
    d_exact: Option<u64>,
    dual_d_exact: Option<u64>,
    self_orthogonal: bool,
}

#[derive(Serialize)]
struct ParamsRow {
    curve: String,
    construction: String,
    i: usize,
    m: Option<u64>,
    available: bool,
    n: Option<usize>,
    k: Option<usize>,
    d: Option<u64>,
    q: Option<u64>,
    exact: Option<bool>,
    gv: Option<String>,
    text: String,
    reason: Option<String>,
}

#[derive(Serialize)]
struct ReproLine {
    target: String,
    curve: String,
    item: String,
    expected: String,
    computed: String,
    verdict: String,
    note: String,
}

#[derive(Serialize)]
struct GvLine {
    n: u64,
    k: u64,
    d: u64,
    q: u64,
    status: String,
    d_max: Option<u64>,
    lhs: Option<String>,
    rhs: Option<String>,
}

fn load(path: &Path) -> Result<EvaluationSet, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(CurveSpec::from_json(&text)?.build()?)
}

fn cmd_build(out: &mut Out, file: &Path, m: i64, trace_to: Option<u64>, budget: u64) -> Result<(), Failure> {
    let e = load(file)?;
    let label = e.curve().label().to_string();
    let code = ag_build(&e, m).with_exact(budget);
    out.row(&BuildRow::from(code.report(&label)?))?;
    if let Some(q) = trace_to {
        let small = Field::of_order(q)?;
        let t = code.code.trace_code(q)?;
        debug_assert_eq!(t.field().order(), small.order());
        out.row(&TraceRow {
            curve: label,
            m,
            q,
            n: t.len(),
            k: t.dim(),
            d_exact: t.min_weight(budget).exact(),
            dual_d_exact: t.dual().min_weight(budget).exact(),
            self_orthogonal: t.is_self_orthogonal(InnerProduct::Euclidean)?,
        })?;
    }
    Ok(())
}

fn params_row(curve: &str, kind: &str, i: usize, m: Option<u64>, out: Result<QuantumParams, String>) -> ParamsRow {
    match out {
        Ok(p) => ParamsRow {
            curve: curve.into(),
            construction: kind.into(),
            i,
            m,
            available: true,
            n: Some(p.n),
            k: Some(p.k),
            d: Some(p.d),
            q: Some(p.q),
            exact: Some(p.d_provenance == castleqec::quantum::Provenance::Exact),
            gv: Some(p.gv.to_string()),
            text: p.to_string(),
            reason: None,
        },
        Err(reason) => ParamsRow {
            curve: curve.into(),
            construction: kind.into(),
            i,
            m,
            available: false,
            n: None,
            k: None,
            d: None,
            q: None,
            exact: None,
            gv: None,
            text: String::new(),
            reason: Some(reason),
        },
    }
}

/// First m in M at which C(mQ)^perp differs from C(m^perp Q).
fn first_nondual(e: &EvaluationSet, seq: &CodeSequence) -> Option<u64> {
    seq.m_set().iter().copied().find(|&m| {
        let mp = dual_pole_order(e, m as i64);
        mp >= 0 && ag_build(e, m as i64).code.dual() != ag_build(e, mp).code
    })
}

fn outcome(o: ConstructionOutcome) -> Result<QuantumParams, String> {
    match o {
        ConstructionOutcome::Available(p) => Ok(p),
        ConstructionOutcome::Unavailable { reason } => Err(reason),
    }
}

fn cmd_scan(out: &mut Out, file: &Path, kind: Kind, max_i: usize, budget: u64) -> Result<(), Failure> {
    let e = load(file)?;
    let curve = Arc::clone(e.curve());
    let sg = curve.semigroup();
    let seq = CodeSequence::new(&e)?;
    let label = curve.label().to_string();
    let name = match kind {
        Kind::A => "A",
        Kind::B => "B",
        Kind::C => "C",
        Kind::Hermitian => "hermitian",
        Kind::Euclidean => "euclidean",
    };
    match kind {
        Kind::A if seq.status() != DualityStatus::SelfDual => {
            let at = first_nondual(&e, &seq).map_or(String::new(), |m| format!(" (fails at m = {m})"));
            return Err(Failure::Input(format!("sequence is not self-dual{at}")));
        }
        Kind::B | Kind::C if seq.twist().is_none() => {
            return Err(Failure::Input("sequence is not formally self-dual".into()));
        }
        _ => {}
    }
    let ext = if kind == Kind::C {
        let f = seq.field();
        let big = Field::make(f.characteristic(), 2 * f.degree())?;
        Some(seq.extend_scalars(&big)?)
    } else {
        None
    };
    let n = seq.len();
    for i in 0..=max_i.min(n / 2) {
        let m = (i > 0).then(|| seq.m_set()[i - 1]);
        let res = match kind {
            Kind::A => outcome(construction_a(&seq, sg, i, budget)?),
            Kind::B => outcome(construction_bc(&seq, sg, i, Variant::B, budget)?),
            Kind::C => outcome(construction_bc(ext.as_ref().unwrap(), sg, i, Variant::C, budget)?),
            Kind::Hermitian | Kind::Euclidean => {
                let mode = if kind == Kind::Hermitian { InnerProduct::Hermitian } else { InnerProduct::Euclidean };
                let c = seq.code(i);
                if !c.is_self_orthogonal(mode)? {
                    Err(format!("C_{i} is not self-orthogonal"))
                } else if mode == InnerProduct::Hermitian {
                    Ok(css_hermitian(&c, budget, Some(sequence_bound(&seq, sg, i)))?)
                } else {
                    Ok(css_self_orthogonal(&c, budget, Some(sequence_bound(&seq, sg, i)))?)
                }
            }
        };
        out.row(&params_row(&label, name, i, m, res))?;
    }
    Ok(())
}

fn check_text(c: &Check) -> String {
    serde_json::to_string(c).unwrap_or_default()
}

fn emit_report(out: &mut Out, rep: &TargetReport) -> Result<(), Failure> {
    for c in &rep.checks {
        out.row(&ReproLine {
            target: rep.name.clone(),
            curve: c.curve.clone(),
            item: "check".into(),
            expected: check_text(&c.check),
            computed: c.actual.clone(),
            verdict: if c.pass { "PASS" } else { "FAIL" }.into(),
            note: String::new(),
        })?;
    }
    for r in &rep.rows {
        let tag = serde_json::to_value(r.verdict).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        out.row(&ReproLine {
            target: rep.name.clone(),
            curve: r.curve.clone(),
            item: serde_json::to_string(&r.source).unwrap_or_default(),
            expected: r.expected.clone(),
            computed: r.computed_text.clone(),
            verdict: if r.verdict.ok() { "PASS".into() } else { format!("FAIL ({tag})") },
            note: r.note.clone(),
        })?;
    }
    Ok(())
}

fn cmd_reproduce(out: &mut Out, name: Option<String>, all: bool, list: bool, budget: u64) -> Result<(), Failure> {
    if list {
        for t in manifest() {
            let rows: usize = t.cases.iter().map(|c| c.rows.len()).sum();
            let mut o = io::stdout().lock();
            writeln!(o, "{}\t{} rows", t.name, rows)?;
        }
        return Ok(());
    }
    let targets = if all { manifest() } else { vec![target(name.as_deref().unwrap_or_default())?] };
    let mut ok = true;
    for t in &targets {
        let rep = run_target(t, budget)?;
        emit_report(out, &rep)?;
        ok &= rep.passed();
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Repro)
    }
}

fn cmd_gv(out: &mut Out, n: u64, k: u64, d: u64, q: u64) -> Result<(), Failure> {
    if q < 2 || k > n {
        return Err(Failure::Input(format!("need q >= 2 and k <= n, got n={n} k={k} q={q}")));
    }
    let r = gv_report(n, k, d, q);
    out.row(&GvLine { n, k, d, q, status: r.status.to_string(), d_max: r.d_max, lhs: r.lhs, rhs: r.rhs })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli.budget.unwrap_or_else(default_budget);
    let mut out = Out::new(cli.format);
    let res = match cli.command {
        Command::Build { curve_file, m, trace_to } => cmd_build(&mut out, &curve_file, m, trace_to, budget),
        Command::Reproduce { target, all, list } => cmd_reproduce(&mut out, target, all, list, budget),
        Command::Scan { curve_file, construction, max_i } => {
            cmd_scan(&mut out, &curve_file, construction, max_i, budget)
        }
        Command::Gv { n, k, d, q } => cmd_gv(&mut out, n, k, d, q),
    };
    let res = res.and_then(|()| out.finish());
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Repro) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::UnsupportedField(_) | Error::NotPrime(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
