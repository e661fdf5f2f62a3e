use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use concept_core::colimit::{
    apposition_diagram, dual_quotient, product, subposition_diagram, sum, CoproductDiagram, ProductDiagram,
};
use concept_core::verify::{verify_equivalences, Report, Verdict, VerifyConfig};
use concept_core::{
    BondViolation, BondingPair, Classification, ConceptLattice, Error as CoreError,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::dot::emit_dot;
use crate::format::{
    morphism_json, parse_context, parse_invariant, parse_morphism, to_json, write_context, ClassificationJson,
    Format, Morphism, ParseError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "concept", version, about = "Classifications, concept lattices, bonds and their equivalences")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the concept lattice of a context as JSON, or as DOT with --dot.
    Lattice {
        context: String,
        #[arg(long)]
        dot: bool,
    },
    /// Validate morphism files; exits 1 if any fails.
    Check {
        kind: CheckKind,
        #[arg(required = true)]
        files: Vec<String>,
        /// Print verdicts and witnesses as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Compose morphism files left to right.
    Compose {
        kind: ComposeKind,
        #[arg(required = true, num_args = 2..)]
        files: Vec<String>,
    },
    /// Sum (coproduct) of two classifications.
    Sum(Binary),
    /// Apposition of two classifications sharing their instances.
    Appose(Binary),
    /// Subposition of two classifications sharing their types.
    Subpose(Binary),
    /// Product of two classifications.
    Product(Binary),
    /// Dual quotient by an invariant file {kept_instances, type_relation}.
    Quotient {
        context: String,
        invariant: String,
        #[command(flatten)]
        out: Output,
    },
    /// Swap instances and types.
    Dual {
        context: String,
        #[command(flatten)]
        out: Output,
    },
    /// Powerset classification of a label set (labels may also be comma separated).
    Powerset {
        labels: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Run the equivalence verification suite.
    VerifyEquivalences {
        #[arg(long, default_value_t = VerifyConfig::default().max_size)]
        max_size: usize,
        #[arg(long, default_value_t = VerifyConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = VerifyConfig::default().samples)]
        samples: usize,
        /// Corrupt the lattice functor to exercise the failure path.
        #[arg(long)]
        inject_bug: bool,
        /// Emit the full report as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckKind {
    Infomorphism,
    Relational,
    Bond,
    BondingPair,
}

impl CheckKind {
    fn name(self) -> &'static str {
        match self {
            CheckKind::Infomorphism => "infomorphism",
            CheckKind::Relational => "relational",
            CheckKind::Bond => "bond",
            CheckKind::BondingPair => "bonding-pair",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ComposeKind {
    Bonds,
    Infos,
}

#[derive(Debug, Args)]
struct Output {
    /// Output format for the resulting classification.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Emit the whole diagram (apex plus injections or projections) as JSON.
    #[arg(long)]
    diagram: bool,
}

#[derive(Debug, Args)]
struct Binary {
    left: String,
    right: String,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

struct Io<'a> {
    stdin: Option<&'a mut dyn Read>,
    out: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, CliError> {
        if path == "-" {
            let stdin = self.stdin.take().ok_or_else(|| CliError::Input("stdin can only be read once".into()))?;
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
            Ok(s)
        } else {
            fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
        }
    }

    fn context(&mut self, path: &str) -> Result<Arc<Classification>, CliError> {
        let text = self.read(path)?;
        let file = parse_context(&text, path).map_err(|e| located(path, e))?;
        Ok(Arc::new(file.classification))
    }

    fn morphism(&mut self, path: &str) -> Result<Morphism, CliError> {
        let text = self.read(path)?;
        parse_morphism(&text).map_err(|e| located(path, e))
    }
}

fn located(path: &str, e: ParseError) -> CliError {
    CliError::Input(format!("{path}: {e}"))
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Diagnostics go to `err`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut io = Io { stdin: Some(stdin), out };
    match execute(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Input(_) => EXIT_USAGE,
                CliError::Internal(_) => EXIT_INTERNAL,
            }
        }
    }
}

fn execute(command: Command, io: &mut Io) -> Result<i32, CliError> {
    match command {
        Command::Lattice { context, dot } => {
            let k = io.context(&context)?;
            let l = ConceptLattice::build(&k)?;
            let text = if dot { emit_dot(&l) } else { to_json(&lattice_json(&l)) };
            io.out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Check { kind, files, json } => check(io, kind, &files, json),
        Command::Compose { kind, files } => {
            let ms = files.iter().map(|f| io.morphism(f)).collect::<Result<Vec<_>, _>>()?;
            let composite = compose(kind, &files, ms)?;
            io.out.write_all(to_json(&morphism_json(&composite)).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Sum(b) => {
            let (x, y) = (io.context(&b.left)?, io.context(&b.right)?);
            emit_coproduct(io, &sum(&x, &y)?, &b.out)
        }
        Command::Appose(b) => {
            let (x, y) = (io.context(&b.left)?, io.context(&b.right)?);
            emit_coproduct(io, &apposition_diagram(&x, &y)?, &b.out)
        }
        Command::Subpose(b) => {
            let (x, y) = (io.context(&b.left)?, io.context(&b.right)?);
            emit_product(io, &subposition_diagram(&x, &y)?, &b.out)
        }
        Command::Product(b) => {
            let (x, y) = (io.context(&b.left)?, io.context(&b.right)?);
            emit_product(io, &product(&x, &y)?, &b.out)
        }
        Command::Quotient { context, invariant, out } => {
            let k = io.context(&context)?;
            let text = io.read(&invariant)?;
            let j = parse_invariant(&text, &k).map_err(|e| located(&invariant, e))?;
            let (q, proj) = dual_quotient(&k, &j).map_err(|e| match e {
                CoreError::IncompatibleInvariant { instance, alpha, beta } => CliError::Input(format!(
                    "incompatible dual invariant: instance {:?} separates types {:?} and {:?}",
                    k.instances()[instance],
                    k.types()[alpha],
                    k.types()[beta]
                )),
                e => e.into(),
            })?;
            emit(io, &q, &out, || json!({ "apex": ClassificationJson::from_classification(&q), "projection": morphism_json(&proj.clone().into()) }))
        }
        Command::Dual { context, out } => {
            let k = io.context(&context)?;
            let d = k.dual();
            emit(io, &d, &out, || json!({ "apex": ClassificationJson::from_classification(&d) }))
        }
        Command::Powerset { labels, out } => {
            let labels: Vec<String> =
                labels.iter().flat_map(|l| l.split(',')).filter(|l| !l.is_empty()).map(str::to_string).collect();
            let p = Classification::powerset(&labels)?;
            emit(io, &p, &out, || json!({ "apex": ClassificationJson::from_classification(&p) }))
        }
        Command::VerifyEquivalences { max_size, seed, samples, inject_bug, json } => {
            let cfg = VerifyConfig { max_size, seed, samples, inject_bug };
            let report = verify_equivalences(&cfg).map_err(|e| CliError::Internal(e.to_string()))?;
            let text = if json { to_json(&report_json(&cfg, &report)) } else { report_text(&cfg, &report) };
            io.out.write_all(text.as_bytes())?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

fn emit(io: &mut Io, k: &Classification, out: &Output, diagram: impl FnOnce() -> Value) -> Result<i32, CliError> {
    let text = if out.diagram { to_json(&diagram()) } else { write_context(k, out.format) };
    io.out.write_all(text.as_bytes())?;
    Ok(EXIT_OK)
}

fn emit_coproduct(io: &mut Io, d: &CoproductDiagram, out: &Output) -> Result<i32, CliError> {
    emit(io, &d.apex, out, || {
        json!({
            "apex": ClassificationJson::from_classification(&d.apex),
            "injections": d.injections.iter().map(|m| morphism_json(&m.clone().into())).collect::<Vec<_>>(),
        })
    })
}

fn emit_product(io: &mut Io, d: &ProductDiagram, out: &Output) -> Result<i32, CliError> {
    emit(io, &d.apex, out, || {
        json!({
            "apex": ClassificationJson::from_classification(&d.apex),
            "projections": d.projections.iter().map(|m| morphism_json(&m.clone().into())).collect::<Vec<_>>(),
        })
    })
}

#[derive(Serialize)]
struct ConceptJson {
    extent: Vec<String>,
    intent: Vec<String>,
}

#[derive(Serialize)]
struct LatticeJson {
    instances: Vec<String>,
    types: Vec<String>,
    concepts: Vec<ConceptJson>,
    /// `[lower, upper]` index pairs of the cover relation.
    covers: Vec<(usize, usize)>,
}

fn lattice_json(l: &ConceptLattice) -> LatticeJson {
    let k = l.classification();
    let names = |labels: &[String], set: &concept_core::BitSet| set.iter().map(|i| labels[i].clone()).collect();
    LatticeJson {
        instances: k.instances().to_vec(),
        types: k.types().to_vec(),
        concepts: l
            .concepts()
            .iter()
            .map(|c| ConceptJson { extent: names(k.instances(), &c.extent), intent: names(k.types(), &c.intent) })
            .collect(),
        covers: l.lattice().covers().pairs().collect(),
    }
}

/// Machine-readable witness for a failed check.
fn witness(m: &Morphism, e: &CoreError) -> Value {
    let (a, b) = m.endpoints();
    match *e {
        CoreError::InvalidInfomorphism { instance, type_index } => json!({
            "kind": "fundamental-property",
            "target_instance": b.instances()[instance],
            "source_type": a.types()[type_index],
        }),
        CoreError::NotABond(v) => {
            // The offending bond is the forward one unless it is itself fine.
            let (src, tgt, which) = match m {
                Morphism::BondingPair(f, g) if f.violation().is_none() => (g.source(), g.target(), "backward"),
                _ => (a, b, "forward"),
            };
            match v {
                BondViolation::Row(r) => {
                    json!({ "kind": "bond-row", "bond": which, "target_instance": tgt.instances()[r] })
                }
                BondViolation::Column(c) => {
                    json!({ "kind": "bond-column", "bond": which, "source_type": src.types()[c] })
                }
            }
        }
        CoreError::NotABondingPair { concept } => {
            let c = a.lattice().map(|l| l.concept(concept).clone());
            match c {
                Ok(c) => json!({
                    "kind": "pairing-constraint",
                    "concept": concept,
                    "extent": c.extent.iter().map(|i| a.instances()[i].clone()).collect::<Vec<_>>(),
                    "intent": c.intent.iter().map(|t| a.types()[t].clone()).collect::<Vec<_>>(),
                }),
                Err(_) => json!({ "kind": "pairing-constraint", "concept": concept }),
            }
        }
        _ => json!({ "kind": "error", "message": e.to_string() }),
    }
}

fn validate(m: &Morphism) -> Result<(), CoreError> {
    match m {
        Morphism::Infomorphism(x) => x.check(),
        Morphism::Relational(x) => x.check(),
        Morphism::Bond(f) => f.violation().map_or(Ok(()), |v| Err(CoreError::NotABond(v))),
        Morphism::BondingPair(f, g) => BondingPair::new(f.clone(), g.clone()).map(|_| ()),
    }
}

fn check(io: &mut Io, kind: CheckKind, files: &[String], json: bool) -> Result<i32, CliError> {
    let mut results = Vec::new();
    for path in files {
        let m = io.morphism(path)?;
        if m.kind() != kind.name() {
            return Err(CliError::Input(format!("{path}: expected a {} file, found {}", kind.name(), m.kind())));
        }
        results.push((path, validate(&m).err().map(|e| witness(&m, &e))));
    }
    let mut text = String::new();
    if json {
        let rows: Vec<Value> = results
            .iter()
            .map(|(path, w)| json!({ "file": path, "verdict": if w.is_some() { "fail" } else { "pass" }, "witness": w }))
            .collect();
        text = to_json(&rows);
    } else {
        for (path, w) in &results {
            match w {
                None => text.push_str(&format!("{path}: pass\n")),
                Some(w) => text.push_str(&format!("{path}: fail {w}\n")),
            }
        }
    }
    io.out.write_all(text.as_bytes())?;
    Ok(if results.iter().all(|(_, w)| w.is_none()) { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn compose(kind: ComposeKind, files: &[String], ms: Vec<Morphism>) -> Result<Morphism, CliError> {
    let bad = |i: usize, what: &str| CliError::Input(format!("{}: expected {what}", files[i]));
    let mut it = ms.into_iter().enumerate();
    let (_, first) = it.next().expect("clap requires two files");
    match kind {
        ComposeKind::Bonds => {
            let Morphism::Bond(mut acc) = first else { return Err(bad(0, "a bond")) };
            for (i, m) in it {
                let Morphism::Bond(next) = m else { return Err(bad(i, "a bond")) };
                if let Some(v) = next.violation() {
                    return Err(CliError::Input(format!("{}: not a bond: {v}", files[i])));
                }
                acc = acc.compose(&next)?;
            }
            Ok(acc.into())
        }
        ComposeKind::Infos => match first {
            Morphism::Infomorphism(mut acc) => {
                acc.check()?;
                for (i, m) in it {
                    let Morphism::Infomorphism(next) = m else { return Err(bad(i, "an infomorphism")) };
                    next.check().map_err(|e| CliError::Input(format!("{}: {e}", files[i])))?;
                    acc = acc.compose(&next)?;
                }
                Ok(acc.into())
            }
            Morphism::Relational(mut acc) => {
                acc.check()?;
                for (i, m) in it {
                    let Morphism::Relational(next) = m else { return Err(bad(i, "a relational infomorphism")) };
                    next.check().map_err(|e| CliError::Input(format!("{}: {e}", files[i])))?;
                    acc = acc.compose(&next)?;
                }
                Ok(acc.into())
            }
            _ => Err(bad(0, "an infomorphism or relational infomorphism")),
        },
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
    }
}

fn report_json(cfg: &VerifyConfig, report: &Report) -> Value {
    json!({
        "config": { "max_size": cfg.max_size, "seed": cfg.seed, "samples": cfg.samples, "inject_bug": cfg.inject_bug },
        "verdict": if report.passed() { "pass" } else { "fail" },
        "no_coverage": report.no_coverage(),
        "summary": report.summary().iter().map(|s| json!({ "check": s.check, "passed": s.passed, "failed": s.failed })).collect::<Vec<_>>(),
        "entries": report.entries.iter().map(|e| json!({
            "check": e.check,
            "item": e.item,
            "verdict": verdict_name(e.verdict),
            "witness": e.witness,
        })).collect::<Vec<_>>(),
    })
}

fn report_text(cfg: &VerifyConfig, report: &Report) -> String {
    let mut s = format!(
        "verify-equivalences max_size={} seed={} samples={} inject_bug={}\n",
        cfg.max_size, cfg.seed, cfg.samples, cfg.inject_bug
    );
    let summary = report.summary();
    let width = summary.iter().map(|c| c.check.chars().count()).max().unwrap_or(0);
    for c in &summary {
        let pad = " ".repeat(width - c.check.chars().count());
        s.push_str(&format!("{}{pad}  {:>6} passed  {:>4} failed\n", c.check, c.passed, c.failed));
    }
    for e in report.failures() {
        s.push_str(&format!("FAIL {} [{}]: {}\n", e.check, e.item, e.witness.as_deref().unwrap_or("")));
    }
    let failed = report.failures().count();
    if report.no_coverage() {
        s.push_str("result: pass (no coverage: empty corpus)\n");
    } else if failed == 0 {
        s.push_str(&format!("result: pass ({} checks)\n", report.entries.len()));
    } else {
        s.push_str(&format!("result: fail ({failed} of {} checks failed)\n", report.entries.len()));
    }
    s
}

