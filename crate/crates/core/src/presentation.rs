//! Quivers with graded arrows and homogeneous relations, and the text
//! format they are read from.
//!
//! Paths compose left to right: `a.b` is `a` followed by `b`, so it runs
//! from the source of `a` to the target of `b`.
//!
//! ```text
//! # k[x,y]
//! field Q
//! vertices 1
//! arrow x 0 0
//! arrow y 0 0 1
//! relation x.y - y.x
//! ```

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::linalg::{FieldSpec, FieldSpecError, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

/// A path in a quiver; the empty arrow list is the trivial path `e_source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: usize,
    target: usize,
    degree: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn source(&self) -> usize {
        self.source
    }
    pub fn target(&self) -> usize {
        self.target
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Canonical path order: lexicographic on arrow ids, trivial paths by vertex.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows.cmp(&other.arrows).then(self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("arrows {0} and {1} do not compose")]
pub struct NotComposable(pub usize, pub usize);

impl Quiver {
    /// Panics on invalid data; use [`validate`] for untrusted input.
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Self {
        for a in &arrows {
            assert!(a.source < vertex_count && a.target < vertex_count, "bad vertex in arrow {}", a.name);
            assert!(a.degree >= 1, "arrow {} has degree 0", a.name);
        }
        Quiver { vertex_count, arrows }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: usize) -> &Arrow {
        &self.arrows[id]
    }

    pub fn arrow_id(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn min_arrow_degree(&self) -> Option<usize> {
        self.arrows.iter().map(|a| a.degree).min()
    }

    pub fn max_arrow_degree(&self) -> Option<usize> {
        self.arrows.iter().map(|a| a.degree).max()
    }

    pub fn trivial(&self, v: usize) -> Path {
        assert!(v < self.vertex_count);
        Path { source: v, target: v, degree: 0, arrows: Vec::new() }
    }

    /// A path through the given arrows; an empty list is rejected since it
    /// carries no vertex.
    pub fn path(&self, arrows: &[usize]) -> Result<Path, NotComposable> {
        let first = *arrows.first().expect("use Quiver::trivial for empty paths");
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(NotComposable(w[0], w[1]));
            }
        }
        Ok(Path {
            source: self.arrows[first].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            degree: arrows.iter().map(|&a| self.arrows[a].degree).sum(),
            arrows: arrows.to_vec(),
        })
    }

    /// `p` followed by arrow `a`, if they compose.
    pub fn extend(&self, p: &Path, a: usize) -> Option<Path> {
        let arrow = &self.arrows[a];
        (arrow.source == p.target).then(|| {
            let mut arrows = p.arrows.clone();
            arrows.push(a);
            Path { source: p.source, target: arrow.target, degree: p.degree + arrow.degree, arrows }
        })
    }

    /// `p` followed by `q`, if they compose.
    pub fn concat(&self, p: &Path, q: &Path) -> Option<Path> {
        (p.target == q.source).then(|| {
            let mut arrows = p.arrows.clone();
            arrows.extend_from_slice(&q.arrows);
            Path { source: p.source, target: q.target, degree: p.degree + q.degree, arrows }
        })
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e{}", p.source);
        }
        p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(".")
    }

    /// The quiver with every arrow reversed; arrow ids and names are kept.
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source, degree: a.degree })
            .collect();
        Quiver { vertex_count: self.vertex_count, arrows }
    }

    /// Reverses `p` in the opposite quiver.
    pub fn reverse_path(&self, p: &Path) -> Path {
        Path { source: p.target, target: p.source, degree: p.degree, arrows: p.arrows.iter().rev().copied().collect() }
    }
}

/// All paths of the given degree from `source` to `target`, in canonical order.
pub fn enumerate_paths(q: &Quiver, degree: usize, source: usize, target: usize) -> Vec<Path> {
    fn go(q: &Quiver, p: Path, degree: usize, target: usize, out: &mut Vec<Path>) {
        if p.degree == degree {
            if p.target == target {
                out.push(p);
            }
            return;
        }
        for (id, a) in q.arrows.iter().enumerate() {
            if a.source == p.target && p.degree + a.degree <= degree {
                go(q, q.extend(&p, id).unwrap(), degree, target, out);
            }
        }
    }
    let mut out = Vec::new();
    go(q, q.trivial(source), degree, target, &mut out);
    out.sort();
    out
}

/// A homogeneous relation with a single source and target.
///
/// Terms are sorted in canonical path order, merged, and scaled so that the
/// first coefficient is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    terms: Vec<(Rat, Path)>,
}

impl Relation {
    pub fn terms(&self) -> &[(Rat, Path)] {
        &self.terms
    }
    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }
    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }
    pub fn degree(&self) -> usize {
        self.terms[0].1.degree
    }

    pub fn display(&self, q: &Quiver) -> String {
        let mut s = String::new();
        for (i, (c, p)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if abs != Rat::one() {
                s.push_str(&format!("{abs}*"));
            }
            s.push_str(&q.path_name(p));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    quiver: Quiver,
    relations: Vec<Relation>,
    field: FieldSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("missing `vertices` line")]
    MissingVertices,
    #[error("vertex count must be positive")]
    NoVertices,
    #[error("arrow `{arrow}` uses vertex {vertex}, but there are only {vertex_count} vertices")]
    BadVertexIndex { arrow: String, vertex: usize, vertex_count: usize },
    #[error("arrow `{0}` has degree 0")]
    DegreeZeroArrow(String),
    #[error("arrow `{0}` declared twice")]
    DuplicateArrow(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("path `{0}` is not composable")]
    NonComposablePath(String),
    #[error("relation `{relation}` mixes degrees {first} and {second}")]
    InhomogeneousRelation { relation: String, first: usize, second: usize },
    #[error("relation `{0}` has terms with different endpoints")]
    NonUniformRelation(String),
    #[error("relation `{relation}` has degree {degree}; relations need degree at least 2")]
    LowDegreeRelation { relation: String, degree: usize },
    #[error("relation `{0}` is zero")]
    EmptyRelation(String),
    #[error("relation `{0}` is listed twice")]
    DuplicateRelation(String),
    #[error("coefficient {coeff} has no image in {field}")]
    UnmappableCoefficient { coeff: Rat, field: FieldSpec },
    #[error(transparent)]
    Field(#[from] FieldSpecError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct PresentationError {
    pub line: Option<usize>,
    pub kind: PresentationErrorKind,
}

impl fmt::Display for PresentationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

impl From<PresentationErrorKind> for PresentationError {
    fn from(kind: PresentationErrorKind) -> Self {
        PresentationError { line: None, kind }
    }
}

fn at(line: Option<usize>, kind: PresentationErrorKind) -> PresentationError {
    PresentationError { line, kind }
}

/// Unchecked presentation data as read from a file or built in code.
#[derive(Debug, Clone, Default)]
pub struct RawPresentation {
    pub field: Option<FieldSpec>,
    pub vertices: Option<usize>,
    pub arrows: Vec<RawArrow>,
    pub relations: Vec<RawRelation>,
}

#[derive(Debug, Clone)]
pub struct RawArrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: usize,
    pub line: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct RawRelation {
    /// `(coefficient, arrow names)` pairs.
    pub terms: Vec<(Rat, Vec<String>)>,
    pub line: Option<usize>,
}

impl RawRelation {
    fn display(&self) -> String {
        self.terms
            .iter()
            .map(|(c, p)| format!("{c}*{}", p.join(".")))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Normalizes a term list over the given field: merges repeated paths,
/// drops zero terms, sorts, and makes the leading coefficient 1.
pub(crate) fn normalize_terms(field: FieldSpec, terms: Vec<(Rat, Path)>) -> Option<Vec<(Rat, Path)>> {
    let reduce = |c: &Rat| -> Rat {
        match field {
            FieldSpec::Rationals => c.clone(),
            FieldSpec::PrimeField(p) => Rat::from_int(c.residue(p).expect("checked coefficient") as i64),
        }
    };
    let mut merged: Vec<(Rat, Path)> = Vec::new();
    let mut sorted = terms;
    sorted.sort_by(|a, b| a.1.cmp(&b.1));
    for (c, p) in sorted {
        match merged.last_mut() {
            Some((d, q)) if *q == p => *d = reduce(&d.add(&c)),
            _ => merged.push((reduce(&c), p)),
        }
    }
    merged.retain(|(c, _)| !c.is_zero());
    let lead = merged.first()?.0.clone();
    let inv = match field {
        FieldSpec::Rationals => lead.inv(),
        FieldSpec::PrimeField(p) => Rat::from_int(lead.inv().residue(p).unwrap() as i64),
    };
    Some(merged.into_iter().map(|(c, p)| (reduce(&c.mul(&inv)), p)).collect())
}

/// Checks every invariant and produces a normalized [`Presentation`].
pub fn validate(raw: RawPresentation) -> Result<Presentation, PresentationError> {
    use PresentationErrorKind as K;
    let field = raw.field.unwrap_or(FieldSpec::Rationals);
    let n = raw.vertices.ok_or(K::MissingVertices)?;
    if n == 0 {
        return Err(K::NoVertices.into());
    }
    let mut arrows = Vec::with_capacity(raw.arrows.len());
    let mut ids: HashMap<String, usize> = HashMap::new();
    for a in raw.arrows {
        for v in [a.source, a.target] {
            if v >= n {
                return Err(at(a.line, K::BadVertexIndex { arrow: a.name.clone(), vertex: v, vertex_count: n }));
            }
        }
        if a.degree == 0 {
            return Err(at(a.line, K::DegreeZeroArrow(a.name)));
        }
        if ids.insert(a.name.clone(), arrows.len()).is_some() {
            return Err(at(a.line, K::DuplicateArrow(a.name)));
        }
        arrows.push(Arrow { name: a.name, source: a.source, target: a.target, degree: a.degree });
    }
    let quiver = Quiver { vertex_count: n, arrows };

    let mut relations: Vec<Relation> = Vec::new();
    for r in raw.relations {
        let line = r.line;
        let shown = r.display();
        let mut terms = Vec::with_capacity(r.terms.len());
        for (c, names) in &r.terms {
            if let FieldSpec::PrimeField(p) = field {
                if c.residue(p).is_none() {
                    return Err(at(line, K::UnmappableCoefficient { coeff: c.clone(), field }));
                }
            }
            let ids: Vec<usize> = names
                .iter()
                .map(|s| ids.get(s).copied().ok_or_else(|| at(line, K::UnknownArrow(s.clone()))))
                .collect::<Result<_, _>>()?;
            if ids.is_empty() {
                return Err(at(line, K::Syntax(format!("empty path in relation `{shown}`"))));
            }
            let path = quiver.path(&ids).map_err(|_| at(line, K::NonComposablePath(names.join("."))))?;
            terms.push((c.clone(), path));
        }
        let Some(first) = terms.first().map(|t| t.1.clone()) else {
            return Err(at(line, K::EmptyRelation(shown)));
        };
        for (_, p) in &terms {
            if p.degree != first.degree {
                return Err(at(
                    line,
                    K::InhomogeneousRelation { relation: shown, first: first.degree, second: p.degree },
                ));
            }
            if p.source != first.source || p.target != first.target {
                return Err(at(line, K::NonUniformRelation(shown)));
            }
        }
        if first.degree < 2 {
            return Err(at(line, K::LowDegreeRelation { relation: shown, degree: first.degree }));
        }
        let terms = normalize_terms(field, terms).ok_or_else(|| at(line, K::EmptyRelation(shown.clone())))?;
        let rel = Relation { terms };
        if relations.contains(&rel) {
            return Err(at(line, K::DuplicateRelation(shown)));
        }
        relations.push(rel);
    }
    Ok(Presentation { quiver, relations, field })
}

impl Presentation {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }
    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }

    /// Builds from already-valid parts, normalizing relations. Panics on
    /// invalid data; intended for the built-in constructions.
    pub fn from_parts(quiver: Quiver, relations: Vec<Vec<(Rat, Path)>>, field: FieldSpec) -> Self {
        let relations = relations
            .into_iter()
            .filter_map(|t| normalize_terms(field, t))
            .map(|terms| {
                let r = Relation { terms };
                let (p0, deg) = (&r.terms[0].1, r.degree());
                assert!(deg >= 2, "relation of degree {deg}");
                assert!(r.terms.iter().all(|(_, p)| p.source == p0.source && p.target == p0.target && p.degree == deg));
                r
            })
            .fold(Vec::new(), |mut acc: Vec<Relation>, r| {
                if !acc.contains(&r) {
                    acc.push(r);
                }
                acc
            });
        Presentation { quiver, relations, field }
    }

    /// Reverse every arrow and every relation path.
    pub fn opposite(&self) -> Presentation {
        let quiver = self.quiver.opposite();
        let relations = self
            .relations
            .iter()
            .map(|r| r.terms.iter().map(|(c, p)| (c.clone(), self.quiver.reverse_path(p))).collect())
            .collect();
        Presentation::from_parts(quiver, relations, self.field)
    }

    /// Serializes to the text format accepted by [`parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("field {}\nvertices {}\n", self.field, self.quiver.vertex_count);
        for a in &self.quiver.arrows {
            s.push_str(&format!("arrow {} {} {} {}\n", a.name, a.source, a.target, a.degree));
        }
        for r in &self.relations {
            s.push_str(&format!("relation {}\n", r.display(&self.quiver)));
        }
        s
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn parse_relation_body(body: &str, line: usize) -> Result<RawRelation, PresentationError> {
    let syntax = |m: String| at(Some(line), PresentationErrorKind::Syntax(m));
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(syntax("empty relation".into()));
    }
    let mut terms = Vec::new();
    let bytes = compact.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut negative = false;
        let mut saw_sign = false;
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            negative ^= bytes[i] == b'-';
            saw_sign = true;
            i += 1;
        }
        if !saw_sign && !terms.is_empty() {
            return Err(syntax(format!("expected `+` or `-` in `{compact}`")));
        }
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let term = &compact[start..i];
        let (coeff, path) = match term.rsplit_once('*') {
            Some((c, p)) => (c.parse::<Rat>().map_err(|e| syntax(e.to_string()))?, p),
            None => (Rat::one(), term),
        };
        let names: Vec<String> = path.split('.').map(str::to_string).collect();
        if names.iter().any(|n| !is_name(n)) {
            return Err(syntax(format!("bad path `{path}`")));
        }
        let coeff = if negative { coeff.neg() } else { coeff };
        terms.push((coeff, names));
    }
    Ok(RawRelation { terms, line: Some(line) })
}

/// Reads the line-oriented text format into unchecked data.
pub fn parse_raw(text: &str) -> Result<RawPresentation, PresentationError> {
    let mut raw = RawPresentation::default();
    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        let content = full.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |m: &str| at(Some(line), PresentationErrorKind::Syntax(m.to_string()));
        let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        let words: Vec<&str> = rest.split_whitespace().collect();
        let number = |w: &str| w.parse::<usize>().map_err(|_| syntax(&format!("expected a number, found `{w}`")));
        match key {
            "field" => {
                let f = rest.parse::<FieldSpec>().map_err(|e| at(Some(line), e.into()))?;
                raw.field = Some(f);
            }
            "vertices" => {
                if words.len() != 1 {
                    return Err(syntax("usage: vertices <n>"));
                }
                raw.vertices = Some(number(words[0])?);
            }
            "arrow" => {
                if !(3..=4).contains(&words.len()) {
                    return Err(syntax("usage: arrow <name> <source> <target> [degree]"));
                }
                if !is_name(words[0]) {
                    return Err(syntax(&format!("bad arrow name `{}`", words[0])));
                }
                raw.arrows.push(RawArrow {
                    name: words[0].to_string(),
                    source: number(words[1])?,
                    target: number(words[2])?,
                    degree: words.get(3).map(|w| number(w)).transpose()?.unwrap_or(1),
                    line: Some(line),
                });
            }
            "relation" => raw.relations.push(parse_relation_body(rest, line)?),
            other => return Err(syntax(&format!("unknown directive `{other}`"))),
        }
    }
    Ok(raw)
}

pub fn parse(text: &str) -> Result<Presentation, PresentationError> {
    validate(parse_raw(text)?)
}
