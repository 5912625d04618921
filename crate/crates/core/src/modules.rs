//! Graded left `A`-modules that the resolution engine needs: simples, finite
//! sums of shifted projectives `Ae_i(-l)`, and maps between such sums.
//!
//! The degree-`m` piece of `Ae_i(-l)` is `A_{m-l} e_i`, which splits by left
//! vertex as `⊕_j e_j A_{m-l} e_i`. Maps are right multiplications, so a map
//! `Ae_i(-l) → Ae_k(-l')` is given by an element of `e_i A_{l-l'} e_k` and
//! matrices act on row vectors.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, AlgebraSlices, Element};
use crate::linalg::{axpy, Field, Mat, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("vertex {vertex} out of range (algebra has {vertex_count} vertices)")]
    BadVertexIndex { vertex: usize, vertex_count: usize },
    #[error("entry ({row}, {col}) does not match summand endpoints or degrees")]
    EntryMismatch { row: usize, col: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `Ae_vertex(-shift)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Summand {
    pub vertex: usize,
    pub shift: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjSum {
    pub summands: Vec<Summand>,
}

impl ProjSum {
    pub fn new(summands: Vec<Summand>) -> Self {
        ProjSum { summands }
    }

    pub fn single(vertex: usize, shift: usize) -> Self {
        ProjSum { summands: vec![Summand { vertex, shift }] }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn min_shift(&self) -> Option<usize> {
        self.summands.iter().map(|s| s.shift).min()
    }

    pub fn max_shift(&self) -> Option<usize> {
        self.summands.iter().map(|s| s.shift).max()
    }
}

/// Basis of a degree-`m` piece: `(summand, algebra basis index)` pairs with
/// the algebra element living in degree `m - shift`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentBasis {
    pub degree: usize,
    pub entries: Vec<(usize, usize)>,
    position: HashMap<(usize, usize), usize>,
}

impl ComponentBasis {
    fn from_entries(degree: usize, entries: Vec<(usize, usize)>) -> Self {
        let position = entries.iter().enumerate().map(|(p, e)| (*e, p)).collect();
        ComponentBasis { degree, entries, position }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn position(&self, summand: usize, basis: usize) -> Option<usize> {
        self.position.get(&(summand, basis)).copied()
    }
}

fn check_window<F: Field>(alg: &AlgebraSlices<F>, ps: &ProjSum, m: usize) -> Result<(), AlgebraError> {
    if let Some(l) = ps.min_shift() {
        if m > l + alg.truncation() {
            return Err(AlgebraError::DegreeOverflow { degree: m - l, truncation: alg.truncation() });
        }
    }
    Ok(())
}

/// `e_i (ps)_m`.
pub fn component_at<F: Field>(
    alg: &AlgebraSlices<F>,
    ps: &ProjSum,
    m: usize,
    i: usize,
) -> Result<ComponentBasis, AlgebraError> {
    check_window(alg, ps, m)?;
    let mut entries = Vec::new();
    for (s, sm) in ps.summands.iter().enumerate() {
        if sm.shift > m {
            continue;
        }
        entries.extend(alg.pair(m - sm.shift, i, sm.vertex).iter().map(|&b| (s, b)));
    }
    Ok(ComponentBasis::from_entries(m, entries))
}

/// `(ps)_m`, ordered by left vertex, then summand, then basis index.
pub fn component<F: Field>(alg: &AlgebraSlices<F>, ps: &ProjSum, m: usize) -> Result<ComponentBasis, AlgebraError> {
    let mut entries = Vec::new();
    for i in 0..alg.vertex_count() {
        entries.extend(component_at(alg, ps, m, i)?.entries);
    }
    Ok(ComponentBasis::from_entries(m, entries))
}

/// A degree-0 map of projective sums; `entries[s]` lists `(t, a)` meaning the
/// generator of source summand `s` goes to `a` times the generator of target
/// summand `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleMap<E> {
    pub source: ProjSum,
    pub target: ProjSum,
    pub entries: Vec<Vec<(usize, Element<E>)>>,
}

impl<E: Clone> ModuleMap<E> {
    /// Checks endpoints and degrees of every entry.
    pub fn new<F: Field<Elem = E>>(
        alg: &AlgebraSlices<F>,
        source: ProjSum,
        target: ProjSum,
        entries: Vec<Vec<(usize, Element<E>)>>,
    ) -> Result<Self, ModuleError> {
        if entries.len() != source.len() {
            return Err(ModuleError::EntryMismatch { row: entries.len(), col: 0 });
        }
        for (s, row) in entries.iter().enumerate() {
            let src = source.summands[s];
            for (t, a) in row {
                let bad = ModuleError::EntryMismatch { row: s, col: *t };
                let tgt = *target.summands.get(*t).ok_or(bad.clone())?;
                if a.is_zero() {
                    continue;
                }
                if src.shift < tgt.shift || a.degree != src.shift - tgt.shift {
                    return Err(bad);
                }
                for (b, _) in &a.coords {
                    let p = alg.basis_element(a.degree, *b);
                    if p.source() != src.vertex || p.target() != tgt.vertex {
                        return Err(bad);
                    }
                }
            }
        }
        Ok(ModuleMap { source, target, entries })
    }

    pub fn identity<F: Field<Elem = E>>(alg: &AlgebraSlices<F>, ps: &ProjSum) -> Self {
        let entries = ps.summands.iter().enumerate().map(|(s, sm)| vec![(s, alg.unit(0, sm.vertex))]).collect();
        ModuleMap { source: ps.clone(), target: ps.clone(), entries }
    }

    /// `self` followed by `next`.
    pub fn then<F: Field<Elem = E>>(&self, alg: &AlgebraSlices<F>, next: &ModuleMap<E>) -> Result<Self, AlgebraError> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for (s, row) in self.entries.iter().enumerate() {
            let src = self.source.summands[s];
            let mut acc: HashMap<usize, SparseVec<E>> = HashMap::new();
            for (t, a) in row {
                for (u, b) in &next.entries[*t] {
                    let ab = alg.multiply(a, b)?;
                    let slot = acc.entry(*u).or_default();
                    *slot = axpy(alg.field(), slot, &alg.field().one(), &ab.coords);
                }
            }
            let mut out: Vec<(usize, Element<E>)> = acc
                .into_iter()
                .filter(|(_, v)| !v.is_empty())
                .map(|(u, coords)| (u, Element { degree: src.shift - next.target.summands[u].shift, coords }))
                .collect();
            out.sort_by_key(|e| e.0);
            entries.push(out);
        }
        Ok(ModuleMap { source: self.source.clone(), target: next.target.clone(), entries })
    }

    /// Every nonzero entry lies in `J`, i.e. has positive degree.
    pub fn is_minimal(&self) -> bool {
        self.entries.iter().flatten().all(|(_, a)| a.is_zero() || a.degree > 0)
    }
}

fn apply_on<F: Field>(
    alg: &AlgebraSlices<F>,
    f: &ModuleMap<F::Elem>,
    rows: &ComponentBasis,
    cols: &ComponentBasis,
) -> Result<Mat<F::Elem>, AlgebraError> {
    let m = rows.degree;
    let field = alg.field();
    let mut data = Vec::with_capacity(rows.dim());
    for &(s, b) in &rows.entries {
        let src = f.source.summands[s];
        let mut row: SparseVec<F::Elem> = Vec::new();
        for (t, a) in &f.entries[s] {
            let tgt = f.target.summands[*t];
            for (k, c) in &a.coords {
                let prod = alg.mul_basis(m - src.shift, b, a.degree, *k)?;
                let mapped: SparseVec<F::Elem> = {
                    let mut v: Vec<(usize, F::Elem)> = prod
                        .into_iter()
                        .map(|(w, x)| {
                            let p = cols.position(*t, w).expect("product lands in the target component");
                            debug_assert_eq!(alg.basis_element(m - tgt.shift, w).target(), tgt.vertex);
                            (p, x)
                        })
                        .collect();
                    v.sort_by_key(|e| e.0);
                    v
                };
                row = axpy(field, &row, c, &mapped);
            }
        }
        data.push(row);
    }
    Ok(Mat::from_rows(cols.dim(), data))
}

/// Matrix of `f` on `e_i(source)_m → e_i(target)_m`, rows indexed by the
/// source component.
pub fn apply_at<F: Field>(
    alg: &AlgebraSlices<F>,
    f: &ModuleMap<F::Elem>,
    m: usize,
    i: usize,
) -> Result<Mat<F::Elem>, AlgebraError> {
    let rows = component_at(alg, &f.source, m, i)?;
    let cols = component_at(alg, &f.target, m, i)?;
    apply_on(alg, f, &rows, &cols)
}

/// Matrix of `f` in degree `m` on full components.
pub fn apply<F: Field>(alg: &AlgebraSlices<F>, f: &ModuleMap<F::Elem>, m: usize) -> Result<Mat<F::Elem>, AlgebraError> {
    let rows = component(alg, &f.source, m)?;
    let cols = component(alg, &f.target, m)?;
    apply_on(alg, f, &rows, &cols)
}

/// The simple module `S_i`: one-dimensional, degree 0, supported at `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simple {
    pub vertex: usize,
}

impl Simple {
    pub fn dim_at(&self, degree: usize, vertex: usize) -> usize {
        usize::from(degree == 0 && vertex == self.vertex)
    }

    /// The projective cover `Ae_i`.
    pub fn cover(&self) -> ProjSum {
        ProjSum::single(self.vertex, 0)
    }
}

pub fn simple<F: Field>(alg: &AlgebraSlices<F>, i: usize) -> Result<Simple, ModuleError> {
    let n = alg.vertex_count();
    if i >= n {
        return Err(ModuleError::BadVertexIndex { vertex: i, vertex_count: n });
    }
    Ok(Simple { vertex: i })
}
