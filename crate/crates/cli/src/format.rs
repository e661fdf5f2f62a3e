//! Context and morphism file formats: Burmeister `.cxt`, CSV and JSON.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use concept_core::colimit::DualInvariant;
use concept_core::{
    BitSet, Bond, BondingPair, Classification, FunctionGraph, FunctionalInfomorphism, Relation,
    RelationalInfomorphism,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError { line: Some(line), message: message.into() }
    }

    fn general(message: impl Into<String>) -> Self {
        ParseError { line: None, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<concept_core::Error> for ParseError {
    fn from(e: concept_core::Error) -> Self {
        ParseError::general(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Cxt,
    Csv,
    Json,
}

impl Format {
    pub fn from_path(path: &str) -> Option<Format> {
        match Path::new(path).extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "cxt" => Some(Format::Cxt),
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }

    /// Guess from content: JSON starts with `{`, `.cxt` with a lone `B` line,
    /// anything else is CSV.
    pub fn sniff(text: &str) -> Format {
        let t = text.trim_start();
        if t.starts_with('{') {
            Format::Json
        } else if text.lines().next().map(str::trim) == Some("B") {
            Format::Cxt
        } else {
            Format::Csv
        }
    }
}

pub struct ContextFile {
    pub classification: Classification,
    pub format: Format,
    pub path: String,
}

pub fn parse_context(text: &str, path: &str) -> Result<ContextFile, ParseError> {
    let format = Format::from_path(path).unwrap_or_else(|| Format::sniff(text));
    let classification = match format {
        Format::Cxt => parse_cxt(text)?,
        Format::Csv => parse_csv(text)?,
        Format::Json => parse_json(text)?,
    };
    Ok(ContextFile { classification, format, path: path.to_string() })
}

pub fn write_context(k: &Classification, format: Format) -> String {
    match format {
        Format::Cxt => write_cxt(k),
        Format::Csv => write_csv(k),
        Format::Json => write_json(k),
    }
}

pub fn parse_cxt(text: &str) -> Result<Classification, ParseError> {
    let lines: Vec<&str> = text.lines().map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
    let get = |i: usize| lines.get(i).copied();
    if get(0).map(str::trim) != Some("B") {
        return Err(ParseError::at(1, "expected header line \"B\""));
    }
    let count = |i: usize, what: &str| -> Result<usize, ParseError> {
        let line = get(i).ok_or_else(|| ParseError::at(i + 1, format!("missing {what} count")))?;
        line.trim().parse().map_err(|_| ParseError::at(i + 1, format!("malformed {what} count {line:?}")))
    };
    let numeric = |i: usize| get(i).is_some_and(|l| l.trim().parse::<usize>().is_ok());
    // The name line is optional; without it the counts follow the header and
    // are followed by a blank line.
    let named = !(numeric(1) && numeric(2) && get(3).is_none_or(|l| l.trim().is_empty()));
    let first_count = if named { 2 } else { 1 };
    let n = count(first_count, "instance")?;
    let m = count(first_count + 1, "type")?;
    let mut at = first_count + 2;
    if get(at).is_some_and(|l| l.trim().is_empty()) {
        at += 1;
    }
    let mut take_labels = |k: usize, what: &str| -> Result<Vec<String>, ParseError> {
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            let line = get(at).ok_or_else(|| ParseError::at(at + 1, format!("expected {k} {what} names")))?;
            out.push(line.to_string());
            at += 1;
        }
        Ok(out)
    };
    let instances = take_labels(n, "instance")?;
    let types = take_labels(m, "type")?;
    let mut incidence = Relation::empty(n, m);
    for i in 0..n {
        let line = get(at).ok_or_else(|| ParseError::at(at + 1, format!("expected {n} incidence rows")))?;
        let cells: Vec<char> = line.trim_end().chars().collect();
        if cells.len() != m {
            return Err(ParseError::at(at + 1, format!("row has {} cells, expected {m}", cells.len())));
        }
        for (j, c) in cells.into_iter().enumerate() {
            match c {
                'X' | 'x' => incidence.set(i, j, true),
                '.' => {}
                other => return Err(ParseError::at(at + 1, format!("illegal character {other:?} in row"))),
            }
        }
        at += 1;
    }
    if let Some(extra) = lines[at.min(lines.len())..].iter().position(|l| !l.trim().is_empty()) {
        return Err(ParseError::at(at + extra + 1, "unexpected content after incidence rows"));
    }
    Ok(Classification::new(instances, types, incidence)?)
}

pub fn write_cxt(k: &Classification) -> String {
    let mut out = format!("B\n\n{}\n{}\n\n", k.num_instances(), k.num_types());
    for label in k.instances().iter().chain(k.types()) {
        out.push_str(label);
        out.push('\n');
    }
    for i in 0..k.num_instances() {
        out.extend((0..k.num_types()).map(|j| if k.classifies(i, j) { 'X' } else { '.' }));
        out.push('\n');
    }
    out
}

/// Header row of type labels after a corner cell, then one row per instance:
/// its label followed by `0`/`1` cells.
pub fn parse_csv(text: &str) -> Result<Classification, ParseError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(text.as_bytes());
    let mut records = reader.records();
    let header = match records.next() {
        Some(r) => r.map_err(csv_error)?,
        None => return Err(ParseError::at(1, "missing header row")),
    };
    let types: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut instances = Vec::new();
    let mut rows = Vec::new();
    for record in records {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != types.len() + 1 {
            return Err(ParseError::at(line, format!("row has {} cells, expected {}", record.len(), types.len() + 1)));
        }
        instances.push(record[0].to_string());
        let row = record
            .iter()
            .skip(1)
            .map(|cell| match cell.trim() {
                "1" => Ok(true),
                "0" => Ok(false),
                other => Err(ParseError::at(line, format!("illegal cell {other:?}, expected 0 or 1"))),
            })
            .collect::<Result<Vec<bool>, _>>()?;
        rows.push(row);
    }
    let incidence = Relation::from_rows(types.len(), &rows)?;
    Ok(Classification::new(instances, types, incidence)?)
}

fn csv_error(e: csv::Error) -> ParseError {
    match e.position() {
        Some(p) => ParseError::at(p.line() as usize, e.to_string()),
        None => ParseError::general(e.to_string()),
    }
}

pub fn write_csv(k: &Classification) -> String {
    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    let header = std::iter::once("").chain(k.types().iter().map(String::as_str));
    writer.write_record(header).expect("in-memory write");
    for (i, label) in k.instances().iter().enumerate() {
        let cells = (0..k.num_types()).map(|j| if k.classifies(i, j) { "1" } else { "0" });
        writer.write_record(std::iter::once(label.as_str()).chain(cells)).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationJson {
    pub instances: Vec<String>,
    pub types: Vec<String>,
    pub incidence: Vec<Vec<u8>>,
}

impl ClassificationJson {
    pub fn from_classification(k: &Classification) -> Self {
        ClassificationJson {
            instances: k.instances().to_vec(),
            types: k.types().to_vec(),
            incidence: matrix(k.incidence()),
        }
    }

    pub fn to_classification(&self) -> Result<Classification, ParseError> {
        let incidence = relation(&self.incidence, self.instances.len(), self.types.len(), "incidence")?;
        Ok(Classification::new(self.instances.clone(), self.types.clone(), incidence)?)
    }
}

pub fn parse_json(text: &str) -> Result<Classification, ParseError> {
    serde_json::from_str::<ClassificationJson>(text).map_err(json_error)?.to_classification()
}

pub fn write_json(k: &Classification) -> String {
    to_json(&ClassificationJson::from_classification(k))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn json_error(e: serde_json::Error) -> ParseError {
    if e.line() == 0 {
        ParseError::general(e.to_string())
    } else {
        ParseError::at(e.line(), e.to_string())
    }
}

pub fn matrix(r: &Relation) -> Vec<Vec<u8>> {
    (0..r.rows()).map(|i| (0..r.cols()).map(|j| r.get(i, j) as u8).collect()).collect()
}

pub fn relation(m: &[Vec<u8>], rows: usize, cols: usize, what: &str) -> Result<Relation, ParseError> {
    if m.len() != rows {
        return Err(ParseError::general(format!("{what}: {} rows, expected {rows}", m.len())));
    }
    let mut r = Relation::empty(rows, cols);
    for (i, row) in m.iter().enumerate() {
        if row.len() != cols {
            return Err(ParseError::general(format!("{what}: row {i} has {} cells, expected {cols}", row.len())));
        }
        for (j, &v) in row.iter().enumerate() {
            match v {
                0 => {}
                1 => r.set(i, j, true),
                _ => return Err(ParseError::general(format!("{what}: cell ({i}, {j}) is {v}, expected 0 or 1"))),
            }
        }
    }
    Ok(r)
}

/// Envelope shared by every morphism file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub kind: String,
    pub source: ClassificationJson,
    pub target: ClassificationJson,
    pub data: serde_json::Value,
}

/// `instance_map[b]` names the source instance `f(b)` for each target
/// instance `b`; `type_map[α]` names the target type `g(α)` for each source
/// type `α`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InfomorphismData {
    instance_map: Vec<String>,
    type_map: Vec<String>,
}

/// `instance_relation` is inst(source)×inst(target), `type_relation` is
/// typ(source)×typ(target).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationalData {
    instance_relation: Vec<Vec<u8>>,
    type_relation: Vec<Vec<u8>>,
}

/// inst(target)×typ(source).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BondData {
    relation: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairData {
    forward: Vec<Vec<u8>>,
    backward: Vec<Vec<u8>>,
}

/// A parsed morphism. Bonds and pairs are kept unchecked so that `check` can
/// report a witness.
#[derive(Debug, Clone)]
pub enum Morphism {
    Infomorphism(FunctionalInfomorphism),
    Relational(RelationalInfomorphism),
    Bond(Bond),
    BondingPair(Bond, Bond),
}

impl Morphism {
    pub fn kind(&self) -> &'static str {
        match self {
            Morphism::Infomorphism(_) => "infomorphism",
            Morphism::Relational(_) => "relational",
            Morphism::Bond(_) => "bond",
            Morphism::BondingPair(..) => "bonding-pair",
        }
    }

    pub fn endpoints(&self) -> (&Arc<Classification>, &Arc<Classification>) {
        match self {
            Morphism::Infomorphism(m) => (m.source(), m.target()),
            Morphism::Relational(m) => (m.source(), m.target()),
            Morphism::Bond(b) | Morphism::BondingPair(b, _) => (b.source(), b.target()),
        }
    }
}

impl From<FunctionalInfomorphism> for Morphism {
    fn from(m: FunctionalInfomorphism) -> Self {
        Morphism::Infomorphism(m)
    }
}

impl From<RelationalInfomorphism> for Morphism {
    fn from(m: RelationalInfomorphism) -> Self {
        Morphism::Relational(m)
    }
}

impl From<Bond> for Morphism {
    fn from(b: Bond) -> Self {
        Morphism::Bond(b)
    }
}

impl From<BondingPair> for Morphism {
    fn from(p: BondingPair) -> Self {
        Morphism::BondingPair(p.forward().clone(), p.backward().clone())
    }
}

fn lookup(labels: &[String], label: &str, what: &str) -> Result<usize, ParseError> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| ParseError::general(format!("{what}: unknown label {label:?}")))
}

fn map_by_labels(
    entries: &[String],
    domain: usize,
    codomain: &[String],
    what: &str,
) -> Result<FunctionGraph, ParseError> {
    if entries.len() != domain {
        return Err(ParseError::general(format!("{what}: {} entries, expected {domain}", entries.len())));
    }
    let map = entries.iter().map(|l| lookup(codomain, l, what)).collect::<Result<Vec<_>, _>>()?;
    Ok(FunctionGraph::new(map, codomain.len())?)
}

pub fn parse_morphism(text: &str) -> Result<Morphism, ParseError> {
    let env: MorphismJson = serde_json::from_str(text).map_err(json_error)?;
    let a = Arc::new(env.source.to_classification()?);
    let b = Arc::new(env.target.to_classification()?);
    // Identical endpoints share one allocation.
    let b = if a == b { a.clone() } else { b };
    let data = |e: serde_json::Error| ParseError::general(format!("data: {e}"));
    let (na, ma, nb, mb) = (a.num_instances(), a.num_types(), b.num_instances(), b.num_types());
    Ok(match env.kind.as_str() {
        "infomorphism" => {
            let d: InfomorphismData = serde_json::from_value(env.data).map_err(data)?;
            let f = map_by_labels(&d.instance_map, nb, a.instances(), "instance_map")?;
            let g = map_by_labels(&d.type_map, ma, b.types(), "type_map")?;
            Morphism::Infomorphism(FunctionalInfomorphism::unchecked(a, b, f, g)?)
        }
        "relational" => {
            let d: RelationalData = serde_json::from_value(env.data).map_err(data)?;
            let r = relation(&d.instance_relation, na, nb, "instance_relation")?;
            let s = relation(&d.type_relation, ma, mb, "type_relation")?;
            Morphism::Relational(RelationalInfomorphism::unchecked(a, b, r, s)?)
        }
        "bond" => {
            let d: BondData = serde_json::from_value(env.data).map_err(data)?;
            let rel = relation(&d.relation, nb, ma, "relation")?;
            Morphism::Bond(Bond::unchecked(a, b, rel)?)
        }
        "bonding-pair" => {
            let d: PairData = serde_json::from_value(env.data).map_err(data)?;
            let f = relation(&d.forward, nb, ma, "forward")?;
            let g = relation(&d.backward, na, mb, "backward")?;
            Morphism::BondingPair(Bond::unchecked(a.clone(), b.clone(), f)?, Bond::unchecked(b, a, g)?)
        }
        other => return Err(ParseError::general(format!("unknown morphism kind {other:?}"))),
    })
}

pub fn morphism_json(m: &Morphism) -> MorphismJson {
    let (a, b) = m.endpoints();
    let data = match m {
        Morphism::Infomorphism(m) => {
            let d = InfomorphismData {
                instance_map: m.f().as_slice().iter().map(|&x| a.instances()[x].clone()).collect(),
                type_map: m.g().as_slice().iter().map(|&x| b.types()[x].clone()).collect(),
            };
            serde_json::to_value(d)
        }
        Morphism::Relational(m) => {
            serde_json::to_value(RelationalData { instance_relation: matrix(m.r()), type_relation: matrix(m.s()) })
        }
        Morphism::Bond(f) => serde_json::to_value(BondData { relation: matrix(f.rel()) }),
        Morphism::BondingPair(f, g) => {
            serde_json::to_value(PairData { forward: matrix(f.rel()), backward: matrix(g.rel()) })
        }
    }
    .expect("serializable");
    MorphismJson {
        kind: m.kind().to_string(),
        source: ClassificationJson::from_classification(a),
        target: ClassificationJson::from_classification(b),
        data,
    }
}

pub fn write_morphism(m: &Morphism) -> String {
    to_json(&morphism_json(m))
}

/// `kept_instances` and `type_relation` pairs refer to labels of the
/// classification being quotiented.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantJson {
    pub kept_instances: Vec<String>,
    pub type_relation: Vec<(String, String)>,
}

pub fn parse_invariant(text: &str, k: &Classification) -> Result<DualInvariant, ParseError> {
    let j: InvariantJson = serde_json::from_str(text).map_err(json_error)?;
    let mut kept = BitSet::new(k.num_instances());
    for label in &j.kept_instances {
        kept.insert(lookup(k.instances(), label, "kept_instances")?);
    }
    let pairs = j
        .type_relation
        .iter()
        .map(|(x, y)| Ok((lookup(k.types(), x, "type_relation")?, lookup(k.types(), y, "type_relation")?)))
        .collect::<Result<Vec<_>, ParseError>>()?;
    let m = k.num_types();
    let type_relation = Relation::from_fn(m, m, |x, y| pairs.contains(&(x, y)));
    Ok(DualInvariant { kept_instances: kept, type_relation })
}

pub fn write_invariant(j: &DualInvariant, k: &Classification) -> String {
    to_json(&InvariantJson {
        kept_instances: j.kept_instances.iter().map(|i| k.instances()[i].clone()).collect(),
        type_relation: j.type_relation.pairs().map(|(x, y)| (k.types()[x].clone(), k.types()[y].clone())).collect(),
    })
}
