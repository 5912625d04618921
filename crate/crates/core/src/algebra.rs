//! The graded algebra `A = kQ/I` computed degree by degree up to a
//! truncation degree.
//!
//! The basis of `A_d` is the set of non-pivot paths of the reduced
//! row-echelon form of `I_d` in canonical path order, i.e. the normal words
//! for the lexicographic order with the smallest word leading. Because that
//! order is multiplicative on homogeneous components, normal words are closed
//! under taking subwords, and `A_d` is the quotient of
//! `X_d = ⊕_α A_{d-|α|}·α` by the image of `{u·r : r relation, u ∈ A}`. Only
//! `X_d` is ever materialized, never the full path space.

use std::collections::HashMap;
use std::sync::RwLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{axpy, kernel_basis, lookup, normalize, scale, EchelonBasis, Field, Mat, SparseVec};
use crate::presentation::{Path, Presentation, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("product lands in degree {degree}, beyond the truncation degree {truncation}")]
    DegreeOverflow { degree: usize, truncation: usize },
    #[error("relation coefficient has no image in the coefficient field")]
    UnmappableCoefficient,
}

/// A homogeneous element of `A`: coordinates over the basis of `A_degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct Element<E> {
    pub degree: usize,
    pub coords: SparseVec<E>,
}

impl<E> Element<E> {
    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

#[derive(Debug, Clone)]
struct Slice<E> {
    basis: Vec<Path>,
    /// basis indices of `e_i A_d e_j`, row-major in `(i, j)`
    pairs: Vec<Vec<usize>>,
    /// normal form of `basis[w] · arrow`, living in the slice of degree
    /// `d + |arrow|`
    right: HashMap<(usize, usize), SparseVec<E>>,
}

/// `A_0, ..., A_D` with bases, right-multiplication-by-arrow maps and lazily
/// memoized structure constants.
#[derive(Debug)]
pub struct AlgebraSlices<F: Field> {
    field: F,
    presentation: Presentation,
    relations: Vec<Vec<(F::Elem, Path)>>,
    truncation: usize,
    slices: Vec<Slice<F::Elem>>,
    products: RwLock<HashMap<(usize, usize, usize, usize), SparseVec<F::Elem>>>,
}

/// `h[i][j][d] = dim e_i A_d e_j` for `d <= D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertMatrix {
    pub vertex_count: usize,
    pub truncation: usize,
    pub entries: Vec<Vec<Vec<usize>>>,
}

impl HilbertMatrix {
    pub fn get(&self, i: usize, j: usize, d: usize) -> usize {
        self.entries[i][j][d]
    }

    pub fn total(&self, d: usize) -> usize {
        self.entries.iter().flatten().map(|h| h[d]).sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..=self.truncation).map(|d| self.total(d)).collect()
    }

    pub fn transpose(&self) -> HilbertMatrix {
        let n = self.vertex_count;
        let entries = (0..n).map(|i| (0..n).map(|j| self.entries[j][i].clone()).collect()).collect();
        HilbertMatrix { vertex_count: n, truncation: self.truncation, entries }
    }
}

/// Left socle `{m : α·m = 0 for every arrow α}` in one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct SocleSlice<E> {
    pub degree: usize,
    pub dimension: usize,
    pub basis: Vec<Element<E>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SocleReport<E> {
    /// Degrees `0..=window` are certified; anything above is unknown.
    pub window: usize,
    pub slices: Vec<SocleSlice<E>>,
}

impl<E> SocleReport<E> {
    pub fn dimensions(&self) -> Vec<usize> {
        self.slices.iter().map(|s| s.dimension).collect()
    }

    pub fn first_nonzero(&self) -> Option<&SocleSlice<E>> {
        self.slices.iter().find(|s| s.dimension > 0)
    }
}

struct PairSlice<E> {
    pair: (usize, usize),
    words: Vec<Path>,
    /// `(degree of w, w, arrow, normal form in local word indices)`
    products: Vec<(usize, usize, usize, SparseVec<E>)>,
}

impl<F: Field> AlgebraSlices<F> {
    /// Computes bases and multiplication data for `A_0..A_D`.
    pub fn expand(field: &F, presentation: &Presentation, truncation: usize) -> Result<Self, AlgebraError> {
        let relations = presentation
            .relations()
            .iter()
            .map(|r| {
                r.terms()
                    .iter()
                    .map(|(c, p)| field.from_rat(c).map(|c| (c, p.clone())).ok_or(AlgebraError::UnmappableCoefficient))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let q = presentation.quiver();
        let n = q.vertex_count();
        let mut pairs = vec![Vec::new(); n * n];
        for i in 0..n {
            pairs[i * n + i].push(i);
        }
        let degree0 = Slice { basis: (0..n).map(|i| q.trivial(i)).collect(), pairs, right: HashMap::new() };
        let mut alg = AlgebraSlices {
            field: field.clone(),
            presentation: presentation.clone(),
            relations,
            truncation,
            slices: vec![degree0],
            products: RwLock::new(HashMap::new()),
        };
        for d in 1..=truncation {
            alg.extend_to(d);
        }
        Ok(alg)
    }

    fn extend_to(&mut self, d: usize) {
        let n = self.vertex_count();
        let parts: Vec<PairSlice<F::Elem>> =
            (0..n * n).into_par_iter().map(|k| self.pair_slice(d, (k / n, k % n))).collect();

        let mut all: Vec<(Path, usize, usize)> = Vec::new();
        for (p, part) in parts.iter().enumerate() {
            all.extend(part.words.iter().enumerate().map(|(local, w)| (w.clone(), p, local)));
        }
        all.sort_by(|a, b| a.0.cmp(&b.0));
        let mut global: Vec<Vec<usize>> = parts.iter().map(|p| vec![0; p.words.len()]).collect();
        let mut pairs = vec![Vec::new(); n * n];
        let mut basis = Vec::with_capacity(all.len());
        for (idx, (w, p, local)) in all.into_iter().enumerate() {
            global[p][local] = idx;
            pairs[parts[p].pair.0 * n + parts[p].pair.1].push(idx);
            basis.push(w);
        }
        self.slices.push(Slice { basis, pairs, right: HashMap::new() });
        for (p, part) in parts.into_iter().enumerate() {
            for (e, w, a, nf) in part.products {
                let mut v: SparseVec<F::Elem> = nf.into_iter().map(|(k, c)| (global[p][k], c)).collect();
                v.sort_by_key(|x| x.0);
                self.slices[e].right.insert((w, a), v);
            }
        }
    }

    /// `e_i A_d e_j` as a quotient of the candidate words `w·α`.
    fn pair_slice(&self, d: usize, (i, j): (usize, usize)) -> PairSlice<F::Elem> {
        let q = self.quiver();
        let f = &self.field;
        let mut cands: Vec<(Path, usize, usize, usize)> = Vec::new();
        for (a, arrow) in q.arrows().iter().enumerate() {
            if arrow.target != j || arrow.degree > d {
                continue;
            }
            let e = d - arrow.degree;
            for &w in self.pair(e, i, arrow.source) {
                let word = q.extend(&self.slices[e].basis[w], a).expect("composable by construction");
                cands.push((word, e, w, a));
            }
        }
        cands.sort_by(|x, y| x.0.cmp(&y.0));
        let column: HashMap<(usize, usize), usize> =
            cands.iter().enumerate().map(|(c, (_, _, w, a))| ((*w, *a), c)).collect();

        let mut ech = EchelonBasis::new(f, cands.len());
        for rel in &self.relations {
            let (src, tgt, deg) = (rel[0].1.source(), rel[0].1.target(), rel[0].1.degree());
            if tgt != j || deg > d {
                continue;
            }
            let eu = d - deg;
            for &u in self.pair(eu, i, src) {
                let mut row: Vec<(usize, F::Elem)> = Vec::new();
                for (c, p) in rel {
                    let (&last, prefix) = p.arrows().split_last().expect("relations have degree >= 2");
                    let mut v = vec![(u, f.one())];
                    let mut deg_v = eu;
                    for &b in prefix {
                        v = self.right_mul_arrow(deg_v, &v, b);
                        deg_v += q.arrow(b).degree;
                    }
                    for (w, x) in v {
                        row.push((column[&(w, last)], f.mul(c, &x)));
                    }
                }
                ech.insert(&normalize(f, row));
            }
        }

        let mut local = vec![usize::MAX; cands.len()];
        let mut words = Vec::new();
        for (c, cand) in cands.iter().enumerate() {
            if ech.pivot_row(c).is_none() {
                local[c] = words.len();
                words.push(cand.0.clone());
            }
        }
        let products = cands
            .iter()
            .enumerate()
            .map(|(c, (_, e, w, a))| {
                let nf = match ech.pivot_row(c) {
                    None => vec![(local[c], f.one())],
                    Some(row) => row[1..].iter().map(|(k, x)| (local[*k], f.neg(x))).collect(),
                };
                (*e, *w, *a, nf)
            })
            .collect();
        PairSlice { pair: (i, j), words, products }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn quiver(&self) -> &Quiver {
        self.presentation.quiver()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver().vertex_count()
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn dim(&self, d: usize) -> usize {
        self.slices[d].basis.len()
    }

    /// Basis indices of `e_i A_d e_j`.
    pub fn pair(&self, d: usize, i: usize, j: usize) -> &[usize] {
        &self.slices[d].pairs[i * self.vertex_count() + j]
    }

    pub fn basis(&self, d: usize) -> &[Path] {
        &self.slices[d].basis
    }

    pub fn basis_element(&self, d: usize, b: usize) -> &Path {
        &self.slices[d].basis[b]
    }

    pub fn unit(&self, d: usize, b: usize) -> Element<F::Elem> {
        Element { degree: d, coords: vec![(b, self.field.one())] }
    }

    pub fn zero(&self, d: usize) -> Element<F::Elem> {
        Element { degree: d, coords: Vec::new() }
    }

    fn check_degree(&self, degree: usize) -> Result<(), AlgebraError> {
        if degree > self.truncation {
            return Err(AlgebraError::DegreeOverflow { degree, truncation: self.truncation });
        }
        Ok(())
    }

    /// `v · arrow` for `v` in `A_d`. Panics past the truncation degree.
    fn right_mul_arrow(&self, d: usize, v: &[(usize, F::Elem)], arrow: usize) -> SparseVec<F::Elem> {
        assert!(d + self.quiver().arrow(arrow).degree <= self.truncation, "degree overflow");
        let slice = &self.slices[d];
        let mut acc: SparseVec<F::Elem> = Vec::new();
        for (w, c) in v {
            if let Some(img) = slice.right.get(&(*w, arrow)) {
                acc = axpy(&self.field, &acc, c, img);
            }
        }
        acc
    }

    /// Product of two basis elements, memoized.
    pub fn mul_basis(&self, d1: usize, b1: usize, d2: usize, b2: usize) -> Result<SparseVec<F::Elem>, AlgebraError> {
        self.check_degree(d1 + d2)?;
        let key = (d1, b1, d2, b2);
        if let Some(v) = self.products.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let word = &self.slices[d2].basis[b2];
        let first = &self.slices[d1].basis[b1];
        let v = if first.target() != word.source() {
            Vec::new()
        } else {
            let mut v = vec![(b1, self.field.one())];
            let mut deg = d1;
            for &a in word.arrows() {
                v = self.right_mul_arrow(deg, &v, a);
                deg += self.quiver().arrow(a).degree;
            }
            v
        };
        self.products.write().unwrap().insert(key, v.clone());
        Ok(v)
    }

    pub fn multiply(&self, a: &Element<F::Elem>, b: &Element<F::Elem>) -> Result<Element<F::Elem>, AlgebraError> {
        let degree = a.degree + b.degree;
        self.check_degree(degree)?;
        let f = &self.field;
        let mut acc: SparseVec<F::Elem> = Vec::new();
        for (y, cy) in &b.coords {
            for (x, cx) in &a.coords {
                let p = self.mul_basis(a.degree, *x, b.degree, *y)?;
                if !p.is_empty() {
                    acc = axpy(f, &acc, &f.mul(cx, cy), &p);
                }
            }
        }
        Ok(Element { degree, coords: acc })
    }

    /// Normal form of a path.
    pub fn reduce_path(&self, p: &Path) -> Result<Element<F::Elem>, AlgebraError> {
        self.check_degree(p.degree())?;
        let mut v = vec![(p.source(), self.field.one())];
        let mut deg = 0;
        for &a in p.arrows() {
            v = self.right_mul_arrow(deg, &v, a);
            deg += self.quiver().arrow(a).degree;
        }
        Ok(Element { degree: p.degree(), coords: v })
    }

    /// Normal form of a linear combination of paths of one degree.
    pub fn reduce_terms(&self, terms: &[(F::Elem, Path)]) -> Result<Element<F::Elem>, AlgebraError> {
        let degree = terms.first().map_or(0, |t| t.1.degree());
        let mut acc: SparseVec<F::Elem> = Vec::new();
        for (c, p) in terms {
            let v = self.reduce_path(p)?;
            acc = axpy(&self.field, &acc, c, &v.coords);
        }
        Ok(Element { degree, coords: acc })
    }

    /// The relations with coefficients mapped into the field.
    pub fn field_relations(&self) -> &[Vec<(F::Elem, Path)>] {
        &self.relations
    }

    /// The arrow as an element of `A` (zero if a relation kills it).
    pub fn arrow_element(&self, a: usize) -> Result<Element<F::Elem>, AlgebraError> {
        let p = self.quiver().path(&[a]).unwrap();
        self.reduce_path(&p)
    }

    pub fn hilbert(&self) -> HilbertMatrix {
        let n = self.vertex_count();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| (0..=self.truncation).map(|d| self.pair(d, i, j).len()).collect()).collect())
            .collect();
        HilbertMatrix { vertex_count: n, truncation: self.truncation, entries }
    }

    /// Left socle of `A`, certified for `d <= D - (max arrow degree)`.
    pub fn socle(&self) -> SocleReport<F::Elem> {
        let f = &self.field;
        let q = self.quiver();
        let n = self.vertex_count();
        let window = match q.max_arrow_degree() {
            None => self.truncation,
            Some(m) if m > self.truncation => return SocleReport { window: 0, slices: Vec::new() },
            Some(m) => self.truncation - m,
        };
        let arrows: Vec<Element<F::Elem>> = (0..q.arrows().len()).map(|a| self.arrow_element(a).unwrap()).collect();
        let slices = (0..=window)
            .into_par_iter()
            .map(|d| {
                let mut basis = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        let block = self.pair(d, i, j);
                        if block.is_empty() {
                            continue;
                        }
                        // column offsets: one range per arrow ending at i
                        let mut offset = 0;
                        let mut rows: Vec<SparseVec<F::Elem>> = vec![Vec::new(); block.len()];
                        for (a, arrow) in q.arrows().iter().enumerate() {
                            if arrow.target != i {
                                continue;
                            }
                            let dd = d + arrow.degree;
                            for (r, &b) in block.iter().enumerate() {
                                let img = self.multiply(&arrows[a], &self.unit(d, b)).unwrap();
                                rows[r].extend(img.coords.into_iter().map(|(k, c)| (offset + k, c)));
                            }
                            offset += self.dim(dd);
                        }
                        let m = Mat::from_rows(offset, rows);
                        let ker = kernel_basis(f, &m.transpose());
                        for v in ker.into_rows() {
                            let coords = v.into_iter().map(|(k, c)| (block[k], c)).collect();
                            basis.push(Element { degree: d, coords });
                        }
                    }
                }
                SocleSlice { degree: d, dimension: basis.len(), basis }
            })
            .collect();
        SocleReport { window, slices }
    }

    /// Scalar multiple helper for callers composing elements.
    pub fn scale(&self, c: &F::Elem, x: &Element<F::Elem>) -> Element<F::Elem> {
        Element { degree: x.degree, coords: scale(&self.field, c, &x.coords) }
    }

    /// Coefficient of basis element `b` in `x`.
    pub fn coefficient(&self, x: &Element<F::Elem>, b: usize) -> F::Elem {
        lookup(&x.coords, b).cloned().unwrap_or_else(|| self.field.zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use crate::presentation::{enumerate_paths, parse};

    fn expand(text: &str, d: usize) -> AlgebraSlices<Rationals> {
        AlgebraSlices::expand(&Rationals, &parse(text).unwrap(), d).unwrap()
    }

    const KXY: &str = "vertices 1\narrow x 0 0\narrow y 0 0\nrelation x.y - y.x\n";
    const FREE2: &str = "vertices 1\narrow x 0 0\narrow y 0 0\n";
    const MCKAY: &str = "vertices 2\narrow x1 0 0\narrow x2 1 1\narrow y1 0 1\narrow y2 1 0\n\
                         relation x1.y1 - y1.x2\nrelation x2.y2 - y2.x1\n";

    #[test]
    fn polynomial_ring_dimensions() {
        let a = expand(KXY, 6);
        // commutative monomials x^a y^b with a + b = d
        let monomials = |d: usize| (0..=d).count();
        for d in 0..=6 {
            assert_eq!(a.dim(d), monomials(d));
        }
    }

    #[test]
    fn free_algebra_dimensions() {
        let a = expand(FREE2, 6);
        for d in 0..=6 {
            assert_eq!(a.dim(d), 1 << d);
        }
    }

    #[test]
    fn mckay_dimensions() {
        let a = expand(MCKAY, 6);
        for d in 0..=6 {
            assert_eq!(a.dim(d), 2 * (d + 1));
        }
    }

    #[test]
    fn basis_is_non_pivot_paths_of_full_ideal() {
        // Independent route: span u·r·v over the whole path space and row reduce.
        for text in [KXY, MCKAY, "vertices 2\narrow a 0 1\narrow b 1 0\narrow c 0 1\nrelation a.b.a - c.b.c\n"] {
            let p = parse(text).unwrap();
            let a = expand(text, 5);
            let q = p.quiver();
            let n = q.vertex_count();
            for d in 0..=5 {
                for i in 0..n {
                    for j in 0..n {
                        let paths = enumerate_paths(q, d, i, j);
                        let col: HashMap<&Path, usize> = paths.iter().enumerate().map(|(k, p)| (p, k)).collect();
                        let mut ech = EchelonBasis::new(&Rationals, paths.len());
                        for r in p.relations() {
                            if r.degree() > d {
                                continue;
                            }
                            for l in 0..=(d - r.degree()) {
                                for u in enumerate_paths(q, l, i, r.source()) {
                                    for v in enumerate_paths(q, d - r.degree() - l, r.target(), j) {
                                        let row: Vec<(usize, _)> = r
                                            .terms()
                                            .iter()
                                            .map(|(c, t)| {
                                                let w = q.concat(&q.concat(&u, t).unwrap(), &v).unwrap();
                                                (col[&w], c.clone())
                                            })
                                            .collect();
                                        ech.insert(&normalize(&Rationals, row));
                                    }
                                }
                            }
                        }
                        let free: Vec<&Path> =
                            paths.iter().enumerate().filter(|(k, _)| ech.pivot_row(*k).is_none()).map(|x| x.1).collect();
                        let ours: Vec<&Path> = a.pair(d, i, j).iter().map(|&b| a.basis_element(d, b)).collect();
                        assert_eq!(free, ours, "degree {d} pair ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn relations_reduce_to_zero() {
        let a = expand(MCKAY, 4);
        for r in a.field_relations() {
            assert!(a.reduce_terms(r).unwrap().is_zero());
        }
    }

    #[test]
    fn commutation_in_products() {
        let a = expand(KXY, 3);
        let x = a.arrow_element(0).unwrap();
        let y = a.arrow_element(1).unwrap();
        assert_eq!(a.multiply(&x, &y).unwrap(), a.multiply(&y, &x).unwrap());
        let m = expand(MCKAY, 3);
        let (x1, x2, y1) = (m.arrow_element(0).unwrap(), m.arrow_element(1).unwrap(), m.arrow_element(2).unwrap());
        assert_eq!(m.multiply(&x1, &y1).unwrap(), m.multiply(&y1, &x2).unwrap());
        assert!(m.multiply(&y1, &x1).unwrap().is_zero());
    }

    #[test]
    fn idempotents_act_as_identity() {
        let a = expand(MCKAY, 3);
        for d in 0..=3 {
            for b in 0..a.dim(d) {
                let s = a.basis_element(d, b).source();
                let e = a.unit(0, s);
                assert_eq!(a.multiply(&e, &a.unit(d, b)).unwrap(), a.unit(d, b));
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        let a = expand(KXY, 2);
        let x = a.arrow_element(0).unwrap();
        let xx = a.multiply(&x, &x).unwrap();
        assert_eq!(
            a.multiply(&xx, &x),
            Err(AlgebraError::DegreeOverflow { degree: 3, truncation: 2 })
        );
    }

    #[test]
    fn hilbert_of_trivial_algebra() {
        let a = expand("vertices 2\n", 3);
        let h = a.hilbert();
        assert_eq!(h.entries, vec![vec![vec![1, 0, 0, 0], vec![0; 4]], vec![vec![0; 4], vec![1, 0, 0, 0]]]);
    }

    #[test]
    fn opposite_transposes_hilbert() {
        let p = parse(MCKAY).unwrap();
        let a = AlgebraSlices::expand(&Rationals, &p, 5).unwrap();
        let b = AlgebraSlices::expand(&Rationals, &p.opposite(), 5).unwrap();
        assert_eq!(b.hilbert(), a.hilbert().transpose());
    }

    #[test]
    fn socle_examples() {
        assert!(expand(KXY, 6).socle().dimensions().iter().all(|&d| d == 0));
        let s = expand("vertices 3\n", 2).socle();
        assert_eq!(s.window, 2);
        assert_eq!(s.dimensions(), vec![3, 0, 0]);
        // Dynkin A2 preprojective: a.a* = 0 and a*.a = 0
        let a2 = expand("vertices 2\narrow a 0 1\narrow a_star 1 0\nrelation a.a_star\nrelation a_star.a\n", 4);
        let soc = a2.socle();
        assert_eq!(soc.window, 3);
        assert_eq!(soc.dimensions(), vec![0, 2, 0, 0]);
    }

    #[test]
    fn works_over_prime_fields() {
        let p = parse(&format!("field F3\n{KXY}")).unwrap();
        let a = AlgebraSlices::expand(&PrimeField::new(3), &p, 5).unwrap();
        for d in 0..=5 {
            assert_eq!(a.dim(d), d + 1);
        }
        // x^2 + y^2 style relation changes with characteristic 2
        let text = "vertices 1\narrow x 0 0\narrow y 0 0\nrelation x.y + y.x\n";
        let f2 = AlgebraSlices::expand(&PrimeField::new(2), &parse(&format!("field F2\n{text}")).unwrap(), 3).unwrap();
        let q = AlgebraSlices::expand(&Rationals, &parse(text).unwrap(), 3).unwrap();
        assert_eq!(f2.dim(3), q.dim(3));
    }
}
