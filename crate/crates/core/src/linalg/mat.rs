//! Sparse matrices and exact Gauss-Jordan elimination.
//!
//! Vectors are sorted `(column, value)` lists without stored zeros. Column
//! order is whatever the caller supplies; elimination never permutes
//! columns, so pivot positions (and therefore "basis = non-pivot columns")
//! are deterministic.

use std::collections::HashMap;

use super::field::Field;

pub type SparseVec<E> = Vec<(usize, E)>;

/// `x + c * y`.
pub fn axpy<F: Field>(field: &F, x: &[(usize, F::Elem)], c: &F::Elem, y: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return x.to_vec();
    }
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, field.mul(c, &y[j].1)));
            j += 1;
        } else {
            let v = field.add(&x[i].1, &field.mul(c, &y[j].1));
            if !field.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(field: &F, c: &F::Elem, x: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, field.mul(c, v))).collect()
}

/// Sorts by index, merges duplicates and drops zeros.
pub fn normalize<F: Field>(field: &F, mut v: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = field.add(y, &x),
            _ => out.push((i, x)),
        }
        if out.last().is_some_and(|(_, y)| field.is_zero(y)) {
            out.pop();
        }
    }
    out
}

pub fn lookup<E>(v: &[(usize, E)], col: usize) -> Option<&E> {
    v.binary_search_by_key(&col, |e| e.0).ok().map(|k| &v[k].1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<E>>,
}

impl<E: Clone> Mat<E> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Rows must be sorted, zero-free and in range.
    pub fn from_rows(cols: usize, data: Vec<SparseVec<E>>) -> Self {
        debug_assert!(data.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(data.iter().all(|r| r.last().is_none_or(|e| e.0 < cols)));
        Mat { rows: data.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, E)] {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec<E>] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<SparseVec<E>> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&E> {
        lookup(&self.data[i], j)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        Mat { rows: self.cols, cols: self.rows, data }
    }
}

impl<E: Clone + PartialEq> Mat<E> {
    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        Mat { rows: n, cols: n, data: (0..n).map(|i| vec![(i, field.one())]).collect() }
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, dense: &[Vec<E>]) -> Self {
        let cols = dense.first().map_or(0, Vec::len);
        let data = dense
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                r.iter().enumerate().filter(|(_, v)| !field.is_zero(v)).map(|(j, v)| (j, v.clone())).collect()
            })
            .collect();
        Mat { rows: dense.len(), cols, data }
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        self.data
            .iter()
            .map(|r| {
                let mut d = vec![field.zero(); self.cols];
                for (j, v) in r {
                    d[*j] = v.clone();
                }
                d
            })
            .collect()
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Mat<E>) -> Mat<E> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut acc: SparseVec<E> = Vec::new();
                for (k, v) in r {
                    acc = axpy(field, &acc, v, &other.data[*k]);
                }
                acc
            })
            .collect();
        Mat { rows: self.rows, cols: other.cols, data }
    }
}

/// Incrementally maintained reduced row-echelon basis of a subspace.
///
/// Every stored row has leading coefficient 1 and is zero in every other
/// row's pivot column.
#[derive(Debug, Clone)]
pub struct EchelonBasis<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: &F, cols: usize) -> Self {
        EchelonBasis { field: field.clone(), cols, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after subtracting its projection onto the pivots.
    pub fn reduce(&self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut out = v.to_vec();
        for (c, x) in v {
            if let Some(&r) = self.pivot_row.get(c) {
                out = axpy(&self.field, &out, &self.field.neg(x), &self.rows[r]);
            }
        }
        out
    }

    pub fn contains(&self, v: &[(usize, F::Elem)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns the new pivot column, or `None` when
    /// `v` was already in the span.
    pub fn insert(&mut self, v: &[(usize, F::Elem)]) -> Option<usize> {
        let r = self.reduce(v);
        let (c, lead) = r.first()?.clone();
        let r = scale(&self.field, &self.field.inv(&lead), &r);
        for row in &mut self.rows {
            if let Some(x) = lookup(row, c) {
                let x = self.field.neg(x);
                *row = axpy(&self.field, row, &x, &r);
            }
        }
        self.pivot_row.insert(c, self.rows.len());
        self.rows.push(r);
        Some(c)
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_row.keys().copied().collect();
        p.sort_unstable();
        p
    }

    pub fn pivot_row(&self, col: usize) -> Option<&[(usize, F::Elem)]> {
        self.pivot_row.get(&col).map(|&r| self.rows[r].as_slice())
    }

    /// Rows sorted by pivot column: the reduced row-echelon form.
    pub fn into_rref(self) -> Rref<F::Elem> {
        let mut rows: Vec<(usize, SparseVec<F::Elem>)> = self.rows.into_iter().map(|r| (r[0].0, r)).collect();
        rows.sort_by_key(|r| r.0);
        let pivots = rows.iter().map(|r| r.0).collect();
        Rref { mat: Mat::from_rows(self.cols, rows.into_iter().map(|r| r.1).collect()), pivots }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rref<E> {
    pub mat: Mat<E>,
    pub pivots: Vec<usize>,
}

impl<E: Clone> Rref<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

const DENSE_FILL: f64 = 0.5;

/// Reduced row-echelon form of `m` and its strictly increasing pivot list.
pub fn rref<F: Field>(field: &F, m: &Mat<F::Elem>) -> Rref<F::Elem> {
    let cells = m.rows() * m.cols();
    if cells > 0 && m.nnz() as f64 > DENSE_FILL * cells as f64 {
        rref_dense(field, m)
    } else {
        rref_sparse(field, m)
    }
}

pub(crate) fn rref_sparse<F: Field>(field: &F, m: &Mat<F::Elem>) -> Rref<F::Elem> {
    let mut basis = EchelonBasis::new(field, m.cols());
    for row in m.row_vecs() {
        basis.insert(row);
    }
    basis.into_rref()
}

pub(crate) fn rref_dense<F: Field>(field: &F, m: &Mat<F::Elem>) -> Rref<F::Elem> {
    let mut a = m.to_dense(field);
    let (nr, nc) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !field.is_zero(&a[i][c])) else { continue };
        a.swap(r, p);
        let inv = field.inv(&a[r][c]);
        for x in a[r].iter_mut().skip(c) {
            *x = field.mul(x, &inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = field.sub(x, &field.mul(&f, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    let mat = if r == 0 { Mat::zero(0, nc) } else { Mat::from_dense(field, &a) };
    Rref { mat, pivots }
}

pub fn rank<F: Field>(field: &F, m: &Mat<F::Elem>) -> usize {
    rref(field, m).rank()
}

/// Rows form a basis of the right null space `{x : m x = 0}`.
pub fn kernel_basis<F: Field>(field: &F, m: &Mat<F::Elem>) -> Mat<F::Elem> {
    let r = rref(field, m);
    kernel_from_rref(field, &r)
}

pub fn kernel_from_rref<F: Field>(field: &F, r: &Rref<F::Elem>) -> Mat<F::Elem> {
    let cols = r.mat.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    // column f of the rref, read off row by row
    let mut by_free: HashMap<usize, Vec<(usize, F::Elem)>> = HashMap::new();
    for (row, &p) in r.mat.row_vecs().iter().zip(&r.pivots) {
        for (c, v) in row {
            if !is_pivot[*c] {
                by_free.entry(*c).or_default().push((p, field.neg(v)));
            }
        }
    }
    let data = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = by_free.remove(&f).unwrap_or_default();
            v.push((f, field.one()));
            v.sort_by_key(|e| e.0);
            v
        })
        .collect();
    Mat::from_rows(cols, data)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("vector is not in the row space")]
pub struct NotInSpan;

/// Coefficients `c` with `sum_i c_i * basis.row(i) == v`.
pub fn solve_in_rowspace<F: Field>(
    field: &F,
    basis: &Rref<F::Elem>,
    v: &[(usize, F::Elem)],
) -> Result<Vec<F::Elem>, NotInSpan> {
    let coeffs: Vec<F::Elem> = basis.pivots.iter().map(|&p| lookup(v, p).cloned().unwrap_or_else(|| field.zero())).collect();
    let mut rest = v.to_vec();
    for (c, row) in coeffs.iter().zip(basis.mat.row_vecs()) {
        rest = axpy(field, &rest, &field.neg(c), row);
    }
    if rest.is_empty() {
        Ok(coeffs)
    } else {
        Err(NotInSpan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rat, Rationals};

    fn q(rows: &[&[i64]]) -> Mat<Rat> {
        let dense: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| Rat::from_int(x)).collect()).collect();
        Mat::from_dense(&Rationals, &dense)
    }

    #[test]
    fn rref_rank_one() {
        let r = rref(&Rationals, &q(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.mat, q(&[&[1, 2]]));
    }

    #[test]
    fn rref_identity() {
        let id = Mat::identity(&Rationals, 3);
        let r = rref(&Rationals, &id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.mat, id);
    }

    #[test]
    fn rref_over_f2() {
        let f = PrimeField::new(2);
        let m = Mat::from_dense(&f, &[vec![1, 1], vec![1, 0]]);
        let r = rref(&f, &m);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.mat, Mat::identity(&f, 2));
    }

    #[test]
    fn kernels() {
        let k = kernel_basis(&Rationals, &Mat::zero(2, 3));
        assert_eq!(k.rows(), 3);
        assert_eq!(kernel_basis(&Rationals, &Mat::identity(&Rationals, 3)).rows(), 0);
        let k = kernel_basis(&Rationals, &q(&[&[1, 1, 0], &[0, 1, 1]]));
        assert_eq!(k.rows(), 1);
        // proportional to [1, -1, 1]
        let row = k.to_dense(&Rationals).remove(0);
        let s = row[0].clone();
        let expect: Vec<Rat> = [1, -1, 1].iter().map(|&x| Rat::from_int(x).mul(&s)).collect();
        assert_eq!(row, expect);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&Rationals, &Mat::zero(3, 4)), 0);
        assert_eq!(rank(&Rationals, &Mat::identity(&Rationals, 5)), 5);
        assert_eq!(rank(&Rationals, &q(&[&[2, 4], &[1, 2]])), 1);
    }

    #[test]
    fn solving() {
        let id = rref(&Rationals, &Mat::identity(&Rationals, 3));
        let v = vec![(0, Rat::from_int(3)), (2, Rat::new(1, 2))];
        assert_eq!(
            solve_in_rowspace(&Rationals, &id, &v).unwrap(),
            vec![Rat::from_int(3), Rat::zero(), Rat::new(1, 2)]
        );
        let b = rref(&Rationals, &q(&[&[1, 2]]));
        let v = vec![(0, Rat::from_int(2)), (1, Rat::from_int(4))];
        assert_eq!(solve_in_rowspace(&Rationals, &b, &v).unwrap(), vec![Rat::from_int(2)]);
        let b = rref(&Rationals, &q(&[&[1, 0]]));
        assert_eq!(solve_in_rowspace(&Rationals, &b, &[(1, Rat::one())]), Err(NotInSpan));
    }

    #[test]
    fn empty_matrix() {
        let r = rref(&Rationals, &Mat::<Rat>::zero(0, 0));
        assert_eq!(r.rank(), 0);
        assert_eq!(kernel_basis(&Rationals, &Mat::<Rat>::zero(0, 2)).rows(), 2);
    }

    proptest::proptest! {
        #[test]
        fn dense_and_sparse_elimination_agree(
            rows in 0usize..7,
            cols in 0usize..7,
            cells in proptest::collection::vec(-2i64..=2, 49),
            p in proptest::sample::select(vec![2u64, 3, 101]),
        ) {
            let dense: Vec<Vec<i64>> = (0..rows).map(|r| cells[r * 7..r * 7 + cols].to_vec()).collect();
            let slices: Vec<&[i64]> = dense.iter().map(Vec::as_slice).collect();
            let m = q(&slices);
            proptest::prop_assert_eq!(rref_dense(&Rationals, &m), rref_sparse(&Rationals, &m));
            let f = PrimeField::new(p);
            let mp = Mat::from_dense(&f, &dense.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect::<Vec<_>>());
            proptest::prop_assert_eq!(rref_dense(&f, &mp), rref_sparse(&f, &mp));
        }
    }
}
