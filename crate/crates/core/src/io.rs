//! Matrix documents, the bundled corpus and analysis reports.
//!
//! A document starts with a header line `r c [comment]` followed by `r`
//! lines of `c` integers. With `r ≤ c` the rows are coordinates and the
//! columns are points; otherwise the rows are points. A comment mentioning
//! `rays` marks the points as ray generators of a fan.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::criteria::{
    aut_summary, bound_checks, central_decompose, check_reflexive_criteria, classify_2d, codim_one_analysis,
    detect_product_projective, fan_criteria_report, semisimple_span_check, symmetric_implies_semisimple,
};
use crate::error::{Error, Result};
use crate::lattice::IntVector;
use crate::polytope::{convex_hull, is_reflexive, lattice_dual, product, LatticePolytope};
use crate::roots::{
    build_root_basis, compute_roots, cox_classes, default_selection, orthogonal_families, roots_of_reflexive, RaySet,
    RootKind, RootSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    PolytopeVertices,
    FanRays,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub kind: InputKind,
    pub dim: usize,
    pub points: Vec<IntVector>,
    pub label: String,
}

impl InputDocument {
    pub fn to_polytope(&self) -> Result<LatticePolytope> {
        convex_hull(&self.points)
    }

    pub fn to_rays(&self) -> Result<RaySet> {
        RaySet::new(self.points.clone())
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Integer tokens with their 1-based column; accepts `−` for minus.
fn tokens(line: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    for (col, ch) in line.chars().enumerate() {
        if ch.is_whitespace() {
            if !current.is_empty() {
                out.push((start, std::mem::take(&mut current)));
            }
        } else {
            if current.is_empty() {
                start = col + 1;
            }
            current.push(if ch == '−' { '-' } else { ch });
        }
    }
    if !current.is_empty() {
        out.push((start, current));
    }
    out
}

fn parse_int(line: usize, column: usize, tok: &str) -> Result<BigInt> {
    tok.parse::<BigInt>()
        .map_err(|_| parse_error(line, column, format!("expected an integer, found `{tok}`")))
}

struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate().peekable(),
        }
    }

    /// Next non-blank line with its 1-based number.
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, l) in self.inner.by_ref() {
            if !l.trim().is_empty() {
                return Some((i + 1, l));
            }
        }
        None
    }
}

fn parse_one(lines: &mut Lines, label: &str) -> Result<Option<InputDocument>> {
    let Some((hline, header)) = lines.next_content() else {
        return Ok(None);
    };
    let toks = tokens(header);
    if toks.len() < 2 {
        return Err(parse_error(hline, 1, "header must start with two integers `r c`"));
    }
    let dims: Vec<usize> = toks[..2]
        .iter()
        .map(|(c, t)| {
            t.parse::<usize>()
                .map_err(|_| parse_error(hline, *c, format!("expected a non-negative integer, found `{t}`")))
        })
        .collect::<Result<_>>()?;
    let (r, c) = (dims[0], dims[1]);
    if r == 0 || c == 0 {
        return Err(parse_error(hline, toks[0].0, "empty matrix"));
    }
    let comment = toks[2..].iter().map(|(_, t)| t.as_str()).collect::<Vec<_>>().join(" ");
    let kind = if comment.to_lowercase().contains("rays") {
        InputKind::FanRays
    } else {
        InputKind::PolytopeVertices
    };
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(r);
    for k in 0..r {
        let Some((ln, text)) = lines.next_content() else {
            return Err(parse_error(hline + k + 1, 1, format!("expected {r} rows, found {k}")));
        };
        let toks = tokens(text);
        if toks.len() != c {
            return Err(Error::RaggedMatrix {
                line: ln,
                expected: c,
                found: toks.len(),
            });
        }
        rows.push(toks.iter().map(|(col, t)| parse_int(ln, *col, t)).collect::<Result<_>>()?);
    }
    let (dim, points) = if r <= c {
        (r, (0..c).map(|j| IntVector(rows.iter().map(|row| row[j].clone()).collect())).collect())
    } else {
        (c, rows.into_iter().map(IntVector).collect())
    };
    let label = if comment.is_empty() { label.to_string() } else { format!("{label}: {comment}") };
    Ok(Some(InputDocument { kind, dim, points, label }))
}

/// Parses a single matrix document.
pub fn parse_matrix_document(text: &str, label: &str) -> Result<InputDocument> {
    let mut lines = Lines::new(text);
    let doc = parse_one(&mut lines, label)?.ok_or_else(|| parse_error(1, 1, "empty document"))?;
    if let Some((ln, _)) = lines.next_content() {
        return Err(parse_error(ln, 1, "trailing content after the matrix"));
    }
    Ok(doc)
}

/// Parses concatenated matrix documents; entries are labelled `label#k`.
pub fn parse_batch(text: &str, label: &str) -> Result<Vec<InputDocument>> {
    let mut lines = Lines::new(text);
    let mut out = Vec::new();
    while let Some(doc) = parse_one(&mut lines, &format!("{label}#{}", out.len() + 1))? {
        out.push(doc);
    }
    if out.is_empty() {
        return Err(parse_error(1, 1, "empty document"));
    }
    Ok(out)
}

/// Writes vertices in the document format, one point per row.
pub fn emit_vertices(p: &LatticePolytope) -> String {
    let mut s = format!("{} {}\n", p.vertices().len(), p.dim());
    for v in p.vertices() {
        let row: Vec<String> = v.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

#[derive(Clone, Copy, Debug)]
pub enum Construction {
    Document(&'static str),
    Product(&'static str, &'static str),
    Dual(&'static str),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub construction: Construction,
    /// Expected number of roots, when known.
    pub roots: Option<usize>,
}

/// A corpus member after construction.
#[derive(Clone, Debug)]
pub enum Subject {
    Polytope(LatticePolytope),
    Fan(RaySet),
}

macro_rules! doc {
    ($name:literal, $roots:expr) => {
        CorpusEntry {
            name: $name,
            construction: Construction::Document(include_str!(concat!("../corpus/", $name, ".poly"))),
            roots: $roots,
        }
    };
}

pub fn bundled_corpus() -> Vec<CorpusEntry> {
    vec![
        doc!("p1", Some(2)),
        doc!("p2", Some(6)),
        doc!("p3", Some(12)),
        doc!("p4", Some(20)),
        doc!("weight", Some(10)),
        doc!("cube2", Some(4)),
        doc!("cube3", Some(6)),
        doc!("e1cubed", Some(6)),
        doc!("cube4", Some(8)),
        doc!("cross2", Some(0)),
        doc!("cross3", Some(0)),
        doc!("cross4", Some(0)),
        doc!("e2", Some(0)),
        doc!("hexagon", Some(0)),
        doc!("hirzebruch1", None),
        doc!("hirzebruch2", None),
        doc!("symmetric_fan", None),
        doc!("fan_p1p1p1", Some(6)),
        CorpusEntry {
            name: "p2xp1",
            construction: Construction::Product("p2", "p1"),
            roots: Some(8),
        },
        CorpusEntry {
            name: "e1xcross2",
            construction: Construction::Product("p1", "cross2"),
            roots: Some(2),
        },
        CorpusEntry {
            name: "weight_dual",
            construction: Construction::Dual("weight"),
            roots: None,
        },
    ]
}

fn document_subject(doc: &InputDocument) -> Result<Subject> {
    match doc.kind {
        InputKind::PolytopeVertices => Ok(Subject::Polytope(doc.to_polytope()?)),
        InputKind::FanRays => Ok(Subject::Fan(doc.to_rays()?)),
    }
}

/// Builds a corpus entry, resolving references against `corpus`.
pub fn build_entry(entry: &CorpusEntry, corpus: &[CorpusEntry]) -> Result<Subject> {
    let polytope = |name: &str| -> Result<LatticePolytope> {
        let e = corpus
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::PreconditionFailed(format!("unknown corpus entry {name}")))?;
        match build_entry(e, corpus)? {
            Subject::Polytope(p) => Ok(p),
            Subject::Fan(_) => Err(Error::PreconditionFailed(format!("{name} is a fan"))),
        }
    };
    match entry.construction {
        Construction::Document(text) => document_subject(&parse_matrix_document(text, entry.name)?),
        Construction::Product(a, b) => Ok(Subject::Polytope(product(&polytope(a)?, &polytope(b)?))),
        Construction::Dual(a) => Ok(Subject::Polytope(lattice_dual(&polytope(a)?)?)),
    }
}

pub fn subject_of(doc: &InputDocument) -> Result<Subject> {
    document_subject(doc)
}

fn int(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

fn vector(v: &IntVector) -> Value {
    Value::Array(v.iter().map(int).collect())
}

fn kind_name(k: RootKind) -> &'static str {
    match k {
        RootKind::S1 => "S1",
        RootKind::S2 => "S2",
        RootKind::U1 => "U1",
        RootKind::U2 => "U2",
    }
}

/// Full analysis of one input.
#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub input: String,
    pub json: Value,
    pub violations: Vec<String>,
}

/// Collects theorem violations from a sub-step; other errors propagate.
struct Collector {
    violations: Vec<String>,
}

impl Collector {
    fn run<T>(&mut self, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(x) => Ok(Some(x)),
            Err(Error::TheoremViolation { check, detail }) => {
                self.violations.push(format!("{check}: {detail}"));
                Ok(None)
            }
            Err(Error::ConstructionFailed(m)) => {
                self.violations.push(format!("construction: {m}"));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Replaces JSON numbers by decimal strings.
fn stringify(v: Value) -> Value {
    match v {
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, stringify(v))).collect()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify).collect()),
        Value::Number(n) => Value::String(n.to_string()),
        other => other,
    }
}

fn roots_value(rs: &RootSet) -> Value {
    let mut by_kind = Map::new();
    for k in RootKind::ALL {
        by_kind.insert(kind_name(k).into(), json!(rs.count(&[k])));
    }
    json!({
        "all": rs.len(),
        "semisimple": rs.semisimple().len(),
        "unipotent": rs.unipotent().len(),
        "by_kind": by_kind,
    })
}

fn eta_map(rs: &RootSet) -> Value {
    Value::Array(
        rs.all()
            .iter()
            .map(|r| json!({"root": vector(&r.m), "eta": vector(rs.eta(r)), "kind": kind_name(r.kind)}))
            .collect(),
    )
}

pub fn analyze_subject(label: &str, subject: &Subject) -> Result<AnalysisReport> {
    let mut c = Collector { violations: Vec::new() };
    let (d, polytope, reflexive) = match subject {
        Subject::Polytope(p) => {
            if !p.origin_in_interior() {
                return Err(Error::OriginNotInterior);
            }
            let refl = c.run(is_reflexive(p))?.unwrap_or(false);
            (p.dim(), Some(p), Some(refl))
        }
        Subject::Fan(r) => (r.dim, None, None),
    };
    let rs = match (subject, reflexive) {
        (Subject::Polytope(p), Some(true)) => roots_of_reflexive(p)?,
        (Subject::Polytope(p), _) => compute_roots(&RaySet::of_polytope(p)?)?,
        (Subject::Fan(r), _) => compute_roots(r)?,
    };
    let rays = rs.rays.clone();
    let reflexive_p = polytope.filter(|_| reflexive == Some(true));

    let dcd = c.run(cox_classes(&rays, &rs))?;
    let criteria = match reflexive_p {
        Some(p) => c.run(check_reflexive_criteria(p))?,
        None => c.run(fan_criteria_report(&rays, &rs))?,
    };
    let aut = aut_summary(&rs, d);
    let mut decompositions = Map::new();
    let mut bounds = Value::Null;
    let mut families = Value::Null;
    if let Some(dcd) = &dcd {
        decompositions.insert(
            "projective_factors".into(),
            to_value(&detect_product_projective(&rs, dcd, d)),
        );
        decompositions.insert(
            "codim_one".into(),
            to_value(&c.run(codim_one_analysis(&rs, &rays, dcd))?.flatten()),
        );
        if let Some(b) = c.run(bound_checks(&rs, dcd, reflexive_p))? {
            bounds = to_value(&b);
        }
        if let Some(f) = c.run(orthogonal_families(&rs, dcd))? {
            families = to_value(&f);
        }
        let basis = c.run(build_root_basis(&rs, dcd, &default_selection(dcd)))?;
        let span = match (reflexive_p, basis) {
            (Some(p), Some(b)) if !b.roots.is_empty() => c.run(semisimple_span_check(p, &b))?,
            _ => None,
        };
        decompositions.insert("semisimple_span".into(), to_value(&span));
    }
    let mut central = None;
    let mut symmetry = None;
    let mut polygon = None;
    if let Some(p) = reflexive_p {
        if p.is_centrally_symmetric() {
            central = c.run(central_decompose(p))?;
        }
        symmetry = c.run(symmetric_implies_semisimple(p))?;
        if d == 2 {
            polygon = c.run(classify_2d(p))?;
        }
    }
    decompositions.insert("central".into(), to_value(&central));
    decompositions.insert("symmetry".into(), to_value(&symmetry));
    decompositions.insert("polygon".into(), to_value(&polygon));

    let criteria_value = match &criteria {
        Some(cr) => json!({
            "fan": to_value(&cr.fan),
            "reflexive_equivalent": to_value(&cr.reflexive_equivalent),
            "sufficient": to_value(&cr.sufficient),
            "smooth_fano_vi": to_value(&cr.smooth_fano_vi),
        }),
        None => Value::Null,
    };
    let degree_classes = dcd.as_ref().map_or(Value::Null, |dcd| {
        json!({
            "free_rank": int(dcd.free_rank),
            "torsion": dcd.torsion.iter().map(int).collect::<Vec<_>>(),
            "degrees": dcd.degrees.iter().map(|g| g.iter().map(int).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "classes": dcd.classes.iter().map(|k| json!({
                "variables": k.variables,
                "degree": k.degree.iter().map(int).collect::<Vec<_>>(),
                "monomials": k.monomials.len(),
            })).collect::<Vec<_>>(),
            "p": dcd.p, "q": dcd.q, "r": dcd.r, "s": dcd.s,
        })
    });
    let mut violations = c.violations;
    violations.sort();
    let report = json!({
        "input": label,
        "dim": int(d),
        "reflexive": reflexive,
        "roots": roots_value(&rs),
        "eta_map": eta_map(&rs),
        "degree_classes": degree_classes,
        "criteria": criteria_value,
        "aut": {"reductive": aut.reductive, "dim": int(aut.aut_dim)},
        "decompositions": stringify(Value::Object(decompositions)),
        "bounds": bounds,
        "families": families,
        "violations": violations,
    });
    Ok(AnalysisReport {
        input: label.to_string(),
        json: report,
        violations,
    })
}

pub fn analyze_document(doc: &InputDocument) -> Result<AnalysisReport> {
    analyze_subject(&doc.label, &document_subject(doc)?)
}

/// Deterministic pretty JSON; object keys are sorted.
pub fn emit_report(report: &AnalysisReport) -> String {
    serde_json::to_string_pretty(&report.json).expect("serializable")
}

/// Compact human-readable summary.
pub fn emit_text(report: &AnalysisReport) -> String {
    let j = &report.json;
    let mut s = String::new();
    let _ = writeln!(s, "input: {}", report.input);
    let _ = writeln!(s, "dim: {}", j["dim"].as_str().unwrap_or("?"));
    let _ = writeln!(s, "reflexive: {}", j["reflexive"]);
    let r = &j["roots"];
    let _ = writeln!(
        s,
        "roots: {} ({} semisimple, {} unipotent)",
        r["all"], r["semisimple"], r["unipotent"]
    );
    let _ = writeln!(
        s,
        "aut: reductive {}, dim {}",
        j["aut"]["reductive"],
        j["aut"]["dim"].as_str().unwrap_or("?")
    );
    if let Some(f) = j["decompositions"]["projective_factors"].as_array() {
        let f: Vec<&str> = f.iter().filter_map(Value::as_str).collect();
        let _ = writeln!(s, "product of projective spaces: {}", f.join(" x "));
    }
    if report.violations.is_empty() {
        let _ = writeln!(s, "violations: none");
    } else {
        for v in &report.violations {
            let _ = writeln!(s, "violation: {v}");
        }
    }
    s
}

/// Root listing: one line per root with its kind and `η`.
pub fn emit_roots(rs: &RootSet) -> String {
    let mut s = String::new();
    for r in rs.all() {
        let _ = writeln!(s, "{} {:?} eta={}", r.m, r.kind, rs.eta(r));
    }
    s
}

/// Roots of a subject, by facet-interior points for reflexive polytopes and
/// from the normal fan otherwise.
pub fn roots_of_subject(subject: &Subject) -> Result<RootSet> {
    match subject {
        Subject::Polytope(p) => match is_reflexive(p)? {
            true => roots_of_reflexive(p),
            false => compute_roots(&RaySet::of_polytope(p)?),
        },
        Subject::Fan(r) => compute_roots(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::lattice_isomorphism;
    use crate::standard;

    #[test]
    fn parse_examples() {
        let d = parse_matrix_document("2 3\n−1 2 −1\n−1 −1 2", "e2").unwrap();
        assert_eq!(d.dim, 2);
        assert_eq!(d.to_polytope().unwrap(), standard::simplex_dual(2));
        let d = parse_matrix_document("4 3\n1 0 0\n1 3 0\n1 0 3\n−5 −6 −3", "w").unwrap();
        assert_eq!(d.to_polytope().unwrap(), standard::weight_simplex());
        let d = parse_matrix_document("2 2\n1 0\n0 1", "x").unwrap();
        assert_eq!(d.points, vec![IntVector::from_i64s(&[1, 0]), IntVector::from_i64s(&[0, 1])]);
        assert!(matches!(d.to_polytope(), Err(Error::NotFullDimensional { .. })));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_matrix_document("2 3\n1 2 3\n1 2", "x").unwrap_err(),
            Error::RaggedMatrix {
                line: 3,
                expected: 3,
                found: 2
            }
        );
        assert_eq!(
            parse_matrix_document("2 2\n1 x\n0 1", "x").unwrap_err(),
            Error::Parse {
                line: 2,
                column: 3,
                message: "expected an integer, found `x`".into()
            }
        );
        assert!(parse_matrix_document("", "x").unwrap_err().is_parse());
        assert!(parse_matrix_document("3 3\n1 0 0\n0 1 0", "x").unwrap_err().is_parse());
        let d = parse_matrix_document("2 2 rays of something\n1 0\n0 1", "x").unwrap();
        assert_eq!(d.kind, InputKind::FanRays);
    }

    #[test]
    fn batch_and_round_trip() {
        let text = format!("{}\n{}", emit_vertices(&standard::cube(3)), emit_vertices(&standard::weight_simplex()));
        let docs = parse_batch(&text, "b").unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[0].to_polytope().unwrap(), standard::cube(3));
        assert_eq!(docs[1].to_polytope().unwrap(), standard::weight_simplex());
    }

    #[test]
    fn corpus_builds() {
        let corpus = bundled_corpus();
        for e in &corpus {
            let s = build_entry(e, &corpus).unwrap();
            if let (Some(n), Ok(rs)) = (e.roots, roots_of_subject(&s)) {
                assert_eq!(rs.len(), n, "{}", e.name);
            }
        }
        let cube = build_entry(&corpus[6], &corpus).unwrap();
        let sheared = build_entry(&corpus[7], &corpus).unwrap();
        if let (Subject::Polytope(a), Subject::Polytope(b)) = (cube, sheared) {
            assert!(lattice_isomorphism(&a, &b).unwrap().is_some());
        }
    }

    #[test]
    fn report_examples() {
        let r = analyze_subject("cube3", &Subject::Polytope(standard::cube(3))).unwrap();
        assert_eq!(r.json["aut"], json!({"reductive": true, "dim": "9"}));
        assert!(r.violations.is_empty());
        let r = analyze_subject("weight", &Subject::Polytope(standard::weight_simplex())).unwrap();
        assert_eq!(r.json["roots"]["all"], json!(10));
        assert_eq!(r.json["roots"]["semisimple"], json!(4));
        assert_eq!(r.json["roots"]["unipotent"], json!(6));
        assert_eq!(r.json["aut"]["dim"], json!("13"));
        let r = analyze_subject("p3", &Subject::Polytope(standard::simplex_dual(3))).unwrap();
        assert_eq!(r.json["criteria"]["reflexive_equivalent"]["a"], json!(true));
        let again = analyze_subject("p3", &Subject::Polytope(standard::simplex_dual(3))).unwrap();
        assert_eq!(emit_report(&r), emit_report(&again));
    }
}
