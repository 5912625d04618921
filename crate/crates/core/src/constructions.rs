//! Generators for standard example algebras and the closure operations
//! (direct sums, tensor products) used to build more.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::linalg::{FieldSpec, Rat};
use crate::presentation::{Arrow, Path, Presentation, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("generator {index} has degree 0; generators must have positive degree")]
    ZeroDegree { index: usize },
    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    BadVertex { vertex: usize, vertex_count: usize },
    #[error("arrow `{0}` must have degree 1")]
    NotDegreeOne(String),
    #[error("coefficient must be nonzero")]
    ZeroCoefficient,
    #[error("need at least one variable")]
    NoVariables,
    #[error("fields differ: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("unknown quiver `{0}`")]
    UnknownQuiver(String),
}

/// A positively graded `(k^n, k^n)`-bimodule given by a basis: each
/// generator `(i, j, degree)` spans a copy of `k` in `e_i V e_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleSpec {
    pub vertex_count: usize,
    pub generators: Vec<(usize, usize, usize)>,
}

fn path(q: &Quiver, arrows: &[usize]) -> Path {
    q.path(arrows).expect("constructed paths compose")
}

fn unique_name(taken: &mut HashSet<String>, base: String) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.push('\'');
    }
    taken.insert(name.clone());
    name
}

/// `T_S(V)`: one arrow per generator, no relations.
pub fn tensor_algebra(spec: &BimoduleSpec, field: FieldSpec) -> Result<Presentation, ConstructionError> {
    let n = spec.vertex_count;
    let mut arrows = Vec::new();
    for (index, &(i, j, degree)) in spec.generators.iter().enumerate() {
        if degree == 0 {
            return Err(ConstructionError::ZeroDegree { index });
        }
        for v in [i, j] {
            if v >= n {
                return Err(ConstructionError::BadVertex { vertex: v, vertex_count: n });
            }
        }
        arrows.push(Arrow { name: format!("v{index}"), source: i, target: j, degree });
    }
    Ok(Presentation::from_parts(Quiver::new(n, arrows), Vec::new(), field))
}

/// Preprojective algebra of a quiver with degree-1 arrows: the double quiver
/// modulo `e_i (Σ α α* − α* α) e_i` for every vertex `i`.
pub fn preprojective(q: &Quiver, field: FieldSpec) -> Result<Presentation, ConstructionError> {
    if let Some(a) = q.arrows().iter().find(|a| a.degree != 1) {
        return Err(ConstructionError::NotDegreeOne(a.name.clone()));
    }
    let m = q.arrows().len();
    let mut taken: HashSet<String> = q.arrows().iter().map(|a| a.name.clone()).collect();
    let mut arrows = q.arrows().to_vec();
    for a in q.arrows() {
        let name = unique_name(&mut taken, format!("{}_star", a.name));
        arrows.push(Arrow { name, source: a.target, target: a.source, degree: 1 });
    }
    let double = Quiver::new(q.vertex_count(), arrows);
    let relations = (0..q.vertex_count())
        .map(|i| {
            let mut terms = Vec::new();
            for (a, arrow) in q.arrows().iter().enumerate() {
                if arrow.source == i {
                    terms.push((Rat::one(), path(&double, &[a, m + a])));
                }
                if arrow.target == i {
                    terms.push((Rat::from_int(-1), path(&double, &[m + a, a])));
                }
            }
            terms
        })
        .filter(|t| !t.is_empty())
        .collect();
    Ok(Presentation::from_parts(double, relations, field))
}

/// The McKay quiver of `k[x,y] ⋊ Z/2` with the sign action: loops `x1, x2`
/// and arrows `y1: 0 → 1`, `y2: 1 → 0`.
pub fn mckay_z2(field: FieldSpec) -> Presentation {
    let arrow = |name: &str, source, target| Arrow { name: name.into(), source, target, degree: 1 };
    let q = Quiver::new(2, vec![arrow("x1", 0, 0), arrow("x2", 1, 1), arrow("y1", 0, 1), arrow("y2", 1, 0)]);
    let one = Rat::one;
    let neg = || Rat::from_int(-1);
    let relations = vec![
        vec![(one(), path(&q, &[0, 2])), (neg(), path(&q, &[2, 1]))],
        vec![(one(), path(&q, &[1, 3])), (neg(), path(&q, &[3, 0]))],
    ];
    Presentation::from_parts(q, relations, field)
}

fn loops(m: usize) -> Quiver {
    let arrows = (1..=m).map(|i| Arrow { name: format!("x{i}"), source: 0, target: 0, degree: 1 }).collect();
    Quiver::new(1, arrows)
}

/// `k[x_1, ..., x_m]`.
pub fn polynomial(m: usize, field: FieldSpec) -> Result<Presentation, ConstructionError> {
    if m == 0 {
        return Err(ConstructionError::NoVariables);
    }
    let q = loops(m);
    let mut relations = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            relations.push(vec![(Rat::one(), path(&q, &[i, j])), (Rat::from_int(-1), path(&q, &[j, i]))]);
        }
    }
    Ok(Presentation::from_parts(q, relations, field))
}

/// `k_q[x, y]` with `y x = q x y`.
pub fn skew(q_coeff: Rat, field: FieldSpec) -> Result<Presentation, ConstructionError> {
    if q_coeff.is_zero() {
        return Err(ConstructionError::ZeroCoefficient);
    }
    let q = Quiver::new(
        1,
        vec![
            Arrow { name: "x".into(), source: 0, target: 0, degree: 1 },
            Arrow { name: "y".into(), source: 0, target: 0, degree: 1 },
        ],
    );
    let relation = vec![(Rat::one(), path(&q, &[1, 0])), (q_coeff.neg(), path(&q, &[0, 1]))];
    Ok(Presentation::from_parts(q, vec![relation], field))
}

/// `k⟨x_1, ..., x_m⟩`.
pub fn free(m: usize, field: FieldSpec) -> Result<Presentation, ConstructionError> {
    if m == 0 {
        return Err(ConstructionError::NoVariables);
    }
    Ok(Presentation::from_parts(loops(m), Vec::new(), field))
}

/// `k^n` concentrated in degree 0.
pub fn trivial(n: usize, field: FieldSpec) -> Presentation {
    Presentation::from_parts(Quiver::new(n, Vec::new()), Vec::new(), field)
}

fn same_field(p1: &Presentation, p2: &Presentation) -> Result<FieldSpec, ConstructionError> {
    if p1.field() != p2.field() {
        return Err(ConstructionError::FieldMismatch(p1.field(), p2.field()));
    }
    Ok(p1.field())
}

fn relation_terms(p: &Presentation, map: impl Fn(&Path) -> Path) -> Vec<Vec<(Rat, Path)>> {
    p.relations().iter().map(|r| r.terms().iter().map(|(c, t)| (c.clone(), map(t))).collect()).collect()
}

/// `A1 × A2`: disjoint union of quivers and relations; vertices of the
/// second factor come after those of the first.
pub fn direct_sum(p1: &Presentation, p2: &Presentation) -> Result<Presentation, ConstructionError> {
    let field = same_field(p1, p2)?;
    let (q1, q2) = (p1.quiver(), p2.quiver());
    let off = q1.vertex_count();
    let mut taken: HashSet<String> = q1.arrows().iter().map(|a| a.name.clone()).collect();
    let mut arrows = q1.arrows().to_vec();
    for a in q2.arrows() {
        let name = unique_name(&mut taken, a.name.clone());
        arrows.push(Arrow { name, source: a.source + off, target: a.target + off, ..*a });
    }
    let q = Quiver::new(off + q2.vertex_count(), arrows);
    let m1 = q1.arrows().len();
    let mut relations = relation_terms(p1, |t| path(&q, t.arrows()));
    relations.extend(relation_terms(p2, |t| {
        let ids: Vec<usize> = t.arrows().iter().map(|a| a + m1).collect();
        path(&q, &ids)
    }));
    Ok(Presentation::from_parts(q, relations, field))
}

/// `A1 ⊗ A2`: vertices are pairs `(u, v) ↦ u·n2 + v`, arrows `α⊗e_v` and
/// `e_u⊗β`, relations from both factors at every vertex of the other, and
/// the commutations `(α⊗e)(e⊗β) = (e⊗β)(α⊗e)`.
pub fn tensor_product(p1: &Presentation, p2: &Presentation) -> Result<Presentation, ConstructionError> {
    let field = same_field(p1, p2)?;
    let (q1, q2) = (p1.quiver(), p2.quiver());
    let (n1, n2) = (q1.vertex_count(), q2.vertex_count());
    let (m1, m2) = (q1.arrows().len(), q2.arrows().len());
    let vertex = |u: usize, v: usize| u * n2 + v;
    let mut taken = HashSet::new();
    let mut arrows = Vec::new();
    // left arrows: index a * n2 + v
    for a in q1.arrows() {
        for v in 0..n2 {
            let name = unique_name(&mut taken, format!("{}_{v}", a.name));
            arrows.push(Arrow { name, source: vertex(a.source, v), target: vertex(a.target, v), degree: a.degree });
        }
    }
    // right arrows: index m1 * n2 + b * n1 + u
    for b in q2.arrows() {
        for u in 0..n1 {
            let name = unique_name(&mut taken, format!("{}_{u}", b.name));
            arrows.push(Arrow { name, source: vertex(u, b.source), target: vertex(u, b.target), degree: b.degree });
        }
    }
    let left = |a: usize, v: usize| a * n2 + v;
    let right = |b: usize, u: usize| m1 * n2 + b * n1 + u;
    let q = Quiver::new(n1 * n2, arrows);

    let mut relations = Vec::new();
    for v in 0..n2 {
        relations.extend(relation_terms(p1, |t| {
            let ids: Vec<usize> = t.arrows().iter().map(|&a| left(a, v)).collect();
            path(&q, &ids)
        }));
    }
    for u in 0..n1 {
        relations.extend(relation_terms(p2, |t| {
            let ids: Vec<usize> = t.arrows().iter().map(|&b| right(b, u)).collect();
            path(&q, &ids)
        }));
    }
    for a in 0..m1 {
        let al = q1.arrow(a);
        for b in 0..m2 {
            let be = q2.arrow(b);
            // (u,v) → (u',v) → (u',v') versus (u,v) → (u,v') → (u',v')
            let first = path(&q, &[left(a, be.source), right(b, al.target)]);
            let second = path(&q, &[right(b, al.source), left(a, be.target)]);
            relations.push(vec![(Rat::one(), first), (Rat::from_int(-1), second)]);
        }
    }
    Ok(Presentation::from_parts(q, relations, field))
}

/// Small named quivers for the command line: `a<n>` (linear, `n` vertices),
/// `kronecker<m>` (`m` parallel arrows), `loop`, `cyclic<n>`.
pub fn named_quiver(name: &str) -> Result<Quiver, ConstructionError> {
    let arrow = |name: String, source, target| Arrow { name, source, target, degree: 1 };
    let unknown = || ConstructionError::UnknownQuiver(name.to_string());
    let number = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    if name == "loop" {
        return Ok(Quiver::new(1, vec![arrow("x".into(), 0, 0)]));
    }
    if let Some(m) = number("kronecker") {
        return Ok(Quiver::new(2, (1..=m).map(|k| arrow(format!("a{k}"), 0, 1)).collect()));
    }
    if let Some(n) = number("cyclic").filter(|&n| n >= 1) {
        return Ok(Quiver::new(n, (0..n).map(|k| arrow(format!("a{k}"), k, (k + 1) % n)).collect()));
    }
    if let Some(n) = number("a").filter(|&n| n >= 1) {
        return Ok(Quiver::new(n, (1..n).map(|k| arrow(format!("a{k}"), k - 1, k)).collect()));
    }
    Err(unknown())
}
