//! Minimal graded projective resolutions of the simples, Betti tables,
//! `Ext^*(S, A)` and an independent bar-complex computation of `Tor(S, S)`.
//!
//! Everything is computed in internal degrees `<= D`. Since `Tor_s(S,S)_m`
//! only depends on `A_{<= m}`, step `s` of the truncated resolution is exact
//! in every degree up to `D`; the window of step `s` is `[lo_s, D]` where
//! `lo_s` is the lowest degree in which a generator could still appear.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, AlgebraSlices, Element};
use crate::linalg::{kernel_basis, rank, rref, EchelonBasis, Field, Mat, SparseVec};
use crate::modules::{apply_at, component_at, simple, ModuleError, ModuleMap, ProjSum, Summand};

/// Inclusive degree window; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: usize,
    pub hi: usize,
}

impl Window {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, d: usize) -> bool {
        self.lo <= d && d <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step<E> {
    pub module: ProjSum,
    /// `d^s : P^s → P^{s-1}`; absent for step 0.
    pub differential: Option<ModuleMap<E>>,
    pub window: Window,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Resolution<E> {
    pub simple: usize,
    pub truncation: usize,
    pub steps: Vec<Step<E>>,
}

#[derive(Debug, thiserror::Error)]
pub enum ResolutionError<E: std::fmt::Debug> {
    #[error("degree window of step {step} is empty (truncation too small for this many steps)")]
    WindowExhausted { step: usize, partial: Box<Resolution<E>> },
    #[error(transparent)]
    Module(#[from] ModuleError),
}

impl<E: std::fmt::Debug> From<AlgebraError> for ResolutionError<E> {
    fn from(e: AlgebraError) -> Self {
        ResolutionError::Module(ModuleError::Algebra(e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub vertex: usize,
    pub degree: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiStep {
    pub step: usize,
    pub window: Window,
    pub entries: Vec<BettiEntry>,
}

impl BettiStep {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.count).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRow {
    pub simple: usize,
    pub steps: Vec<BettiStep>,
}

impl BettiRow {
    pub fn get(&self, s: usize, vertex: usize, degree: usize) -> usize {
        self.steps
            .get(s)
            .and_then(|st| st.entries.iter().find(|e| e.vertex == vertex && e.degree == degree))
            .map_or(0, |e| e.count)
    }

    /// Step totals, `[β_0, β_1, ...]`.
    pub fn totals(&self) -> Vec<usize> {
        self.steps.iter().map(BettiStep::total).collect()
    }
}

/// `β[j][s][(i, l)]`: multiplicity of `Ae_i(-l)` in step `s` of the minimal
/// resolution of `S_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub vertex_count: usize,
    pub truncation: usize,
    pub rows: Vec<BettiRow>,
}

/// First disagreement between two Betti tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiMismatch {
    pub simple: usize,
    pub step: usize,
    pub vertex: usize,
    pub degree: usize,
    pub left: usize,
    pub right: usize,
}

impl BettiTable {
    pub fn get(&self, j: usize, s: usize, i: usize, l: usize) -> usize {
        self.rows[j].get(s, i, l)
    }

    pub fn max_step(&self) -> usize {
        self.rows.iter().map(|r| r.steps.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Compares every entry both tables certify: steps present in both,
    /// degrees up to the smaller upper window bound.
    pub fn compare(&self, other: &BettiTable) -> Result<(), BettiMismatch> {
        for (a, b) in self.rows.iter().zip(&other.rows) {
            for (sa, sb) in a.steps.iter().zip(&b.steps) {
                let hi = sa.window.hi.min(sb.window.hi);
                for i in 0..self.vertex_count {
                    for l in 0..=hi {
                        let (x, y) = (a.get(sa.step, i, l), b.get(sb.step, i, l));
                        if x != y {
                            return Err(BettiMismatch { simple: a.simple, step: sa.step, vertex: i, degree: l, left: x, right: y });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn betti_step(step: usize, window: Window, module: &ProjSum) -> BettiStep {
    let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
    for s in &module.summands {
        *counts.entry((s.vertex, s.shift)).or_default() += 1;
    }
    let mut entries: Vec<BettiEntry> =
        counts.into_iter().map(|((vertex, degree), count)| BettiEntry { vertex, degree, count }).collect();
    entries.sort_by_key(|e| (e.degree, e.vertex));
    BettiStep { step, window, entries }
}

impl<E: Clone> Resolution<E> {
    pub fn betti_row(&self) -> BettiRow {
        let steps = self.steps.iter().enumerate().map(|(s, st)| betti_step(s, st.window, &st.module)).collect();
        BettiRow { simple: self.simple, steps }
    }

    /// Every differential entry has positive degree.
    pub fn is_minimal(&self) -> bool {
        self.steps.iter().filter_map(|s| s.differential.as_ref()).all(ModuleMap::is_minimal)
    }
}

/// Kernel rows of `d` in degree `m`, left vertex `i`, in canonical echelon form.
fn left_kernel<F: Field>(field: &F, m: &Mat<F::Elem>) -> Mat<F::Elem> {
    if m.rows() == 0 {
        return Mat::zero(0, 0);
    }
    let k = kernel_basis(field, &m.transpose());
    rref(field, &k).mat
}

/// Splits a vector over `e_i(P)_m` into per-summand algebra elements.
fn to_entries<E: Clone>(
    ps: &ProjSum,
    basis: &crate::modules::ComponentBasis,
    v: &[(usize, E)],
) -> Vec<(usize, Element<E>)> {
    let mut by_summand: Vec<(usize, SparseVec<E>)> = Vec::new();
    for (p, c) in v {
        let (t, b) = basis.entries[*p];
        match by_summand.iter_mut().find(|x| x.0 == t) {
            Some(slot) => slot.1.push((b, c.clone())),
            None => by_summand.push((t, vec![(b, c.clone())])),
        }
    }
    by_summand.sort_by_key(|x| x.0);
    by_summand
        .into_iter()
        .map(|(t, mut coords)| {
            coords.sort_by_key(|x| x.0);
            (t, Element { degree: basis.degree - ps.summands[t].shift, coords })
        })
        .collect()
}

type Kernels<E> = Vec<Vec<Mat<E>>>;

/// Minimal graded projective resolution of `S_j` through step `maxstep`,
/// exact in internal degrees `<= D` (the truncation of `alg`).
pub fn resolve<F: Field>(
    alg: &AlgebraSlices<F>,
    j: usize,
    maxstep: usize,
) -> Result<Resolution<F::Elem>, ResolutionError<F::Elem>> {
    simple(alg, j)?;
    let field = alg.field();
    let n = alg.vertex_count();
    let top = alg.truncation();
    let delta = alg.quiver().min_arrow_degree().unwrap_or(1);

    let p0 = ProjSum::single(j, 0);
    // kernel of the augmentation Ae_j → S_j is J e_j
    let mut kernels: Kernels<F::Elem> = (0..=top)
        .map(|m| {
            (0..n)
                .map(|i| {
                    let dim = component_at(alg, &p0, m, i).map(|c| c.dim()).unwrap_or(0);
                    if m == 0 { Mat::zero(0, dim) } else { Mat::identity(field, dim) }
                })
                .collect()
        })
        .collect();
    let mut res = Resolution {
        simple: j,
        truncation: top,
        steps: vec![Step { module: p0, differential: None, window: Window { lo: 0, hi: top } }],
    };
    let mut lo_prev = 0;

    for s in 1..=maxstep {
        let prev = res.steps[s - 1].module.clone();
        let lo = prev.min_shift().unwrap_or(lo_prev) + delta;
        if lo > top {
            return Err(ResolutionError::WindowExhausted { step: s, partial: Box::new(res) });
        }
        lo_prev = lo;

        let mut map = ModuleMap { source: ProjSum::default(), target: prev.clone(), entries: Vec::new() };
        for m in lo..=top {
            let found: Vec<Vec<Vec<(usize, F::Elem)>>> = (0..n)
                .into_par_iter()
                .map(|i| -> Result<_, AlgebraError> {
                    let ker = &kernels[m][i];
                    if ker.rows() == 0 {
                        return Ok(Vec::new());
                    }
                    let image = apply_at(alg, &map, m, i)?;
                    let mut span = EchelonBasis::new(field, ker.cols());
                    for r in image.row_vecs() {
                        span.insert(r);
                    }
                    let mut gens = Vec::new();
                    for r in ker.row_vecs() {
                        if span.insert(r).is_some() {
                            gens.push(r.clone());
                        }
                    }
                    Ok(gens)
                })
                .collect::<Result<_, _>>()?;
            for (i, gens) in found.into_iter().enumerate() {
                if gens.is_empty() {
                    continue;
                }
                let basis = component_at(alg, &prev, m, i)?;
                for g in gens {
                    map.source.summands.push(Summand { vertex: i, shift: m });
                    map.entries.push(to_entries(&prev, &basis, &g));
                }
            }
        }

        let module = map.source.clone();
        kernels = match module.min_shift() {
            None => (0..=top).map(|_| vec![Mat::zero(0, 0); n]).collect(),
            Some(first) => (0..=top)
                .into_par_iter()
                .map(|m| {
                    (0..n)
                        .map(|i| {
                            if m < first {
                                return Ok(Mat::zero(0, 0));
                            }
                            let d = apply_at(alg, &map, m, i)?;
                            Ok(left_kernel(field, &d))
                        })
                        .collect::<Result<Vec<_>, AlgebraError>>()
                })
                .collect::<Result<_, _>>()?,
        };
        res.steps.push(Step { module, differential: Some(map), window: Window { lo, hi: top } });
    }
    Ok(res)
}

/// Resolutions of every simple, in parallel.
pub fn resolve_all<F: Field>(
    alg: &AlgebraSlices<F>,
    maxstep: usize,
) -> Vec<Result<Resolution<F::Elem>, ResolutionError<F::Elem>>> {
    (0..alg.vertex_count()).into_par_iter().map(|j| resolve(alg, j, maxstep)).collect()
}

pub fn betti_table<E: Clone>(vertex_count: usize, truncation: usize, resolutions: &[Resolution<E>]) -> BettiTable {
    BettiTable { vertex_count, truncation, rows: resolutions.iter().map(Resolution::betti_row).collect() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum GlobalDimension {
    /// The last nonzero step, with later steps empty in nonempty windows.
    ExactlyD(usize),
    /// Nonzero through this step and no room left to decide.
    AtLeast(usize),
    InconclusiveWindow,
}

fn row_dimension(row: &BettiRow, maxstep: usize) -> GlobalDimension {
    let steps = &row.steps[..row.steps.len().min(maxstep + 1)];
    let Some(last) = steps.iter().rposition(|s| s.total() > 0) else {
        return GlobalDimension::InconclusiveWindow;
    };
    if last + 1 >= steps.len() {
        return GlobalDimension::AtLeast(last);
    }
    if steps[last + 1..].iter().all(|s| !s.window.is_empty()) {
        GlobalDimension::ExactlyD(last)
    } else {
        GlobalDimension::InconclusiveWindow
    }
}

/// Projective dimension of `S`, i.e. the graded global dimension, as far as
/// the computed steps can tell.
pub fn global_dimension_estimate(betti: &BettiTable, maxstep: usize) -> GlobalDimension {
    let mut exact = 0;
    let mut at_least = None;
    for row in &betti.rows {
        match row_dimension(row, maxstep) {
            GlobalDimension::ExactlyD(d) => exact = exact.max(d),
            GlobalDimension::AtLeast(d) => at_least = Some(at_least.unwrap_or(0).max(d)),
            GlobalDimension::InconclusiveWindow => return GlobalDimension::InconclusiveWindow,
        }
    }
    match at_least {
        Some(d) => GlobalDimension::AtLeast(d.max(exact)),
        None => GlobalDimension::ExactlyD(exact),
    }
}

/// One cohomology dimension of `Hom_A(P^•, A)`. `degree` uses the shift
/// convention `l = -h` for homomorphisms of internal degree `h`, so a class
/// pairing a generator of degree `l` with an idempotent sits at `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtEntry {
    pub vertex: usize,
    pub degree: i64,
    pub dimension: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtWindow {
    pub lo: i64,
    pub hi: i64,
}

impl ExtWindow {
    pub fn contains(&self, l: i64) -> bool {
        self.lo <= l && l <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtStep {
    pub step: usize,
    pub window: ExtWindow,
    pub entries: Vec<ExtEntry>,
}

impl ExtStep {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.dimension).sum()
    }

    pub fn get(&self, vertex: usize, degree: i64) -> usize {
        self.entries.iter().find(|e| e.vertex == vertex && e.degree == degree).map_or(0, |e| e.dimension)
    }
}

/// `Ext^s_A(S_j, A)` as a graded right `S`-module, for each computed step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtRow {
    pub simple: usize,
    pub steps: Vec<ExtStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtTable {
    pub vertex_count: usize,
    pub rows: Vec<ExtRow>,
}

impl ExtTable {
    pub fn step(&self, j: usize, s: usize) -> Option<&ExtStep> {
        self.rows.get(j)?.steps.get(s)
    }
}

/// Basis of `C^s_h = ⊕_{summands (i,l)} e_i A_{h+l} e_k`.
fn cochain_basis<F: Field>(alg: &AlgebraSlices<F>, ps: &ProjSum, h: i64, k: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (t, sm) in ps.summands.iter().enumerate() {
        let q = h + sm.shift as i64;
        if q < 0 || q > alg.truncation() as i64 {
            continue;
        }
        let q = q as usize;
        out.extend(alg.pair(q, sm.vertex, k).iter().map(|&b| (t, q, b)));
    }
    out
}

/// Matrix of `f ↦ f ∘ d` from `C^{s-1}_h` to `C^s_h` (rows: source cochains).
fn coboundary<F: Field>(
    alg: &AlgebraSlices<F>,
    d: &ModuleMap<F::Elem>,
    h: i64,
    k: usize,
) -> Result<Mat<F::Elem>, AlgebraError> {
    let field = alg.field();
    let rows = cochain_basis(alg, &d.target, h, k);
    let cols = cochain_basis(alg, &d.source, h, k);
    let col_of: HashMap<(usize, usize), usize> = cols.iter().enumerate().map(|(c, (g, _, b))| ((*g, *b), c)).collect();
    // entries of d transposed: for each target summand t, the (g, a_{g,t})
    let mut by_target: Vec<Vec<(usize, &Element<F::Elem>)>> = vec![Vec::new(); d.target.len()];
    for (g, row) in d.entries.iter().enumerate() {
        for (t, a) in row {
            by_target[*t].push((g, a));
        }
    }
    let mut data = Vec::with_capacity(rows.len());
    for &(t, q, b) in &rows {
        let mut acc: SparseVec<F::Elem> = Vec::new();
        for &(g, a) in &by_target[t] {
            if a.degree + q > alg.truncation() {
                continue;
            }
            let prod = alg.multiply(a, &alg.unit(q, b))?;
            let mapped: Vec<(usize, F::Elem)> = {
                let mut v: Vec<_> = prod.coords.into_iter().map(|(w, c)| (col_of[&(g, w)], c)).collect();
                v.sort_by_key(|x| x.0);
                v
            };
            acc = crate::linalg::axpy(field, &acc, &field.one(), &mapped);
        }
        data.push(acc);
    }
    Ok(Mat::from_rows(cols.len(), data))
}

/// `Ext^s_A(S_j, A)` for every step `s` whose successor is computed. The
/// window of step `s` covers homomorphism degrees whose cochains on
/// `P^{s-1}, P^s, P^{s+1}` all lie within the truncation.
pub fn ext_against_a<F: Field>(alg: &AlgebraSlices<F>, res: &Resolution<F::Elem>) -> Result<ExtRow, AlgebraError> {
    let field = alg.field();
    let n = alg.vertex_count();
    let top = alg.truncation() as i64;
    let mut steps = Vec::new();
    for s in 0..res.steps.len().saturating_sub(1) {
        let module = &res.steps[s].module;
        let reach = [s.checked_sub(1), Some(s), Some(s + 1)]
            .into_iter()
            .flatten()
            .filter_map(|t| res.steps[t].module.max_shift())
            .max()
            .unwrap_or(0) as i64;
        let (hlo, hhi) = (-reach, top - reach);
        let into = res.steps[s + 1].differential.as_ref().expect("positive steps carry differentials");
        let from = if s > 0 { res.steps[s].differential.as_ref() } else { None };
        let cells: Vec<(i64, usize)> = (hlo..=hhi).flat_map(|h| (0..n).map(move |k| (h, k))).collect();
        let mut entries: Vec<ExtEntry> = cells
            .into_par_iter()
            .map(|(h, k)| -> Result<Option<ExtEntry>, AlgebraError> {
                let dim = cochain_basis(alg, module, h, k).len();
                if dim == 0 {
                    return Ok(None);
                }
                let out = rank(field, &coboundary(alg, into, h, k)?);
                let inc = match from {
                    Some(d) => rank(field, &coboundary(alg, d, h, k)?),
                    None => 0,
                };
                let dimension = dim - out - inc;
                Ok((dimension > 0).then_some(ExtEntry { vertex: k, degree: -h, dimension }))
            })
            .filter_map(|r| r.transpose())
            .collect::<Result<_, _>>()?;
        entries.sort_by_key(|e| (e.degree, e.vertex));
        steps.push(ExtStep { step: s, window: ExtWindow { lo: -hhi, hi: -hlo }, entries });
    }
    Ok(ExtRow { simple: res.simple, steps })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("bar complex has dimension {dimension} in degree {degree}, above the guard {guard}")]
pub struct CostGuardExceeded {
    pub degree: usize,
    pub dimension: usize,
    pub guard: usize,
}

pub const BAR_COST_GUARD: usize = 20_000;

/// Total dimension of the normalized bar complex `⊕_{1<=s<=smax} J^{⊗_S s}`
/// in degree `l`.
pub fn bar_cost<F: Field>(alg: &AlgebraSlices<F>, l: usize, smax: usize) -> usize {
    let n = alg.vertex_count();
    let h = alg.hilbert();
    // paths[s][j] = tuples of length s from a fixed start, per end vertex and degree
    let mut total = 0;
    for i in 0..n {
        let mut cur: Vec<Vec<usize>> = vec![vec![0; l + 1]; n];
        cur[i][0] = 1;
        for _ in 1..=smax {
            let mut next = vec![vec![0; l + 1]; n];
            for (k, row) in cur.iter().enumerate() {
                for (d, &c) in row.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for e in 1..=(l - d) {
                        for (j, slot) in next.iter_mut().enumerate() {
                            slot[d + e] += c * h.get(k, j, e);
                        }
                    }
                }
            }
            total += next.iter().map(|r| r[l]).sum::<usize>();
            cur = next;
        }
    }
    total
}

type Tuple = Vec<(usize, usize)>;

/// Composable tuples of positive-degree basis elements from `i` of total
/// degree `l`, grouped by length and end vertex.
fn bar_tuples<F: Field>(alg: &AlgebraSlices<F>, i: usize, l: usize, smax: usize) -> Vec<Vec<Vec<Tuple>>> {
    let n = alg.vertex_count();
    let mut out = vec![vec![Vec::new(); n]; smax + 2];
    fn go<F: Field>(
        alg: &AlgebraSlices<F>,
        at: usize,
        left: usize,
        smax: usize,
        cur: &mut Tuple,
        out: &mut Vec<Vec<Vec<Tuple>>>,
    ) {
        if left == 0 {
            out[cur.len()][at].push(cur.clone());
            return;
        }
        if cur.len() == smax {
            return;
        }
        for e in 1..=left {
            for k in 0..alg.vertex_count() {
                for &b in alg.pair(e, at, k) {
                    cur.push((e, b));
                    go(alg, k, left - e, smax, cur, out);
                    cur.pop();
                }
            }
        }
    }
    go(alg, i, l, smax, &mut Vec::new(), &mut out);
    out
}

/// `Tor_s(S, S_j)` from the normalized bar complex, independently of
/// [`resolve`]. Degrees up to `truncation`, steps up to `maxstep`.
pub fn tor_oracle<F: Field>(
    alg: &AlgebraSlices<F>,
    truncation: usize,
    maxstep: usize,
) -> Result<BettiTable, CostGuardExceeded> {
    let truncation = truncation.min(alg.truncation());
    let field = alg.field();
    let n = alg.vertex_count();
    for l in 1..=truncation {
        let dimension = bar_cost(alg, l, maxstep + 1);
        if dimension > BAR_COST_GUARD {
            return Err(CostGuardExceeded { degree: l, dimension, guard: BAR_COST_GUARD });
        }
    }
    // counts[(i, j, s, l)]
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (1..=truncation).map(move |l| (i, l))).collect();
    let found: Vec<(usize, usize, usize, usize, usize)> = cells
        .into_par_iter()
        .flat_map_iter(|(i, l)| {
            let tuples = bar_tuples(alg, i, l, maxstep + 1);
            let mut out = Vec::new();
            for j in 0..n {
                let index: Vec<HashMap<&Tuple, usize>> =
                    tuples.iter().map(|by_end| by_end[j].iter().enumerate().map(|(c, t)| (t, c)).collect()).collect();
                // ranks[s] = rank of d_s : C_s → C_{s-1}
                let mut ranks = vec![0; maxstep + 2];
                for s in 2..=(maxstep + 1).min(tuples.len() - 1) {
                    let rows: Vec<SparseVec<F::Elem>> = tuples[s][j]
                        .iter()
                        .map(|t| {
                            let mut acc: SparseVec<F::Elem> = Vec::new();
                            for k in 0..s - 1 {
                                let ((e1, b1), (e2, b2)) = (t[k], t[k + 1]);
                                let prod = alg.mul_basis(e1, b1, e2, b2).expect("within truncation");
                                let sign = if k % 2 == 0 { field.neg(&field.one()) } else { field.one() };
                                for (w, c) in prod {
                                    let mut shorter = t[..k].to_vec();
                                    shorter.push((e1 + e2, w));
                                    shorter.extend_from_slice(&t[k + 2..]);
                                    let col = index[s - 1][&shorter];
                                    acc = crate::linalg::axpy(field, &acc, &field.mul(&sign, &c), &[(col, field.one())]);
                                }
                            }
                            acc
                        })
                        .collect();
                    ranks[s] = rank(field, &Mat::from_rows(tuples[s - 1][j].len(), rows));
                }
                for s in 1..=maxstep.min(tuples.len() - 1) {
                    let dim = tuples[s][j].len() - ranks[s] - ranks[s + 1];
                    if dim > 0 {
                        out.push((i, j, s, l, dim));
                    }
                }
            }
            out
        })
        .collect();
    let delta = alg.quiver().min_arrow_degree().unwrap_or(1);
    let rows = (0..n)
        .map(|j| {
            let steps = (0..=maxstep)
                .map(|s| {
                    let mut entries: Vec<BettiEntry> = found
                        .iter()
                        .filter(|x| x.1 == j && x.2 == s)
                        .map(|&(i, _, _, l, count)| BettiEntry { vertex: i, degree: l, count })
                        .collect();
                    if s == 0 {
                        entries.push(BettiEntry { vertex: j, degree: 0, count: 1 });
                    }
                    entries.sort_by_key(|e| (e.degree, e.vertex));
                    BettiStep { step: s, window: Window { lo: s * delta, hi: truncation }, entries }
                })
                .collect();
            BettiRow { simple: j, steps }
        })
        .collect();
    Ok(BettiTable { vertex_count: n, truncation, rows })
}
