//! Exact linear algebra over [`Scalar`].
//!
//! Matrices are stored as sorted sparse rows. Coboundary and induced-action
//! matrices are overwhelmingly zero, so the workhorse eliminations
//! ([`Echelon`], [`Matrix::rref`]) operate on sparse rows. Small dense systems
//! go through fraction-free Bareiss elimination instead; [`Matrix::rank`]
//! picks between the two.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{FieldSpec, Scalar};

/// A sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Entries beyond which `rank` stops using dense Bareiss elimination.
const BAREISS_MAX_ENTRIES: usize = 64 * 64;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.nrows(), self.ncols, self.field)?;
        for r in 0..self.nrows() {
            let row: Vec<String> = (0..self.ncols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Adds `scale * src` into `dst`, keeping both sorted and zero-free.
pub fn axpy_row(dst: &SparseRow, scale: &Scalar, src: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i >= dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i].clone());
            i += 1;
        } else if take_src {
            let v = scale * &src[j].1;
            if !v.is_zero() {
                out.push((src[j].0, v));
            }
            j += 1;
        } else {
            let v = &dst[i].1 + &(scale * &src[j].1);
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale_row(row: &SparseRow, s: &Scalar) -> SparseRow {
    row.iter()
        .map(|(c, v)| (*c, v * s))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

pub fn sparse_from_dense(v: &[Scalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse(field: FieldSpec, len: usize, row: &SparseRow) -> Vec<Scalar> {
    let mut out = vec![field.zero(); len];
    for (c, v) in row {
        out[*c] = v.clone();
    }
    out
}

impl Matrix {
    pub fn zeros(field: FieldSpec, nrows: usize, ncols: usize) -> Matrix {
        Matrix {
            field,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        Matrix {
            field,
            ncols: n,
            rows: (0..n).map(|i| vec![(i, field.one())]).collect(),
        }
    }

    pub fn from_sparse_rows(field: FieldSpec, ncols: usize, rows: Vec<SparseRow>) -> Matrix {
        debug_assert!(rows
            .iter()
            .all(|r| r.windows(2).all(|w| w[0].0 < w[1].0) && r.iter().all(|(c, v)| *c < ncols && !v.is_zero())));
        Matrix { field, ncols, rows }
    }

    pub fn from_dense(field: FieldSpec, ncols: usize, rows: &[Vec<Scalar>]) -> Matrix {
        Matrix {
            field,
            ncols,
            rows: rows
                .iter()
                .map(|r| {
                    assert_eq!(r.len(), ncols, "ragged dense matrix");
                    sparse_from_dense(r)
                })
                .collect(),
        }
    }

    /// Builds a matrix whose columns are the given dense vectors.
    pub fn from_columns(field: FieldSpec, nrows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut rows = vec![Vec::new(); nrows];
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    rows[i].push((j, v.clone()));
                }
            }
        }
        Matrix {
            field,
            ncols: cols.len(),
            rows,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, r: usize) -> &SparseRow {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.rows[r].binary_search_by_key(&c, |(k, _)| *k) {
            Ok(pos) => self.rows[r][pos].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(c < self.ncols);
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&c, |(k, _)| *k) {
            Ok(pos) => {
                if v.is_zero() {
                    row.remove(pos);
                } else {
                    row[pos].1 = v;
                }
            }
            Err(pos) => {
                if !v.is_zero() {
                    row.insert(pos, (c, v));
                }
            }
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(r, c);
        self.set(r, c, &cur + v);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.nrows()).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        let t = self.transpose();
        (0..t.nrows())
            .map(|r| dense_from_sparse(self.field, self.nrows(), &t.rows[r]))
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut rows = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                rows[*c].push((r, v.clone()));
            }
        }
        Matrix {
            field: self.field,
            ncols: self.nrows(),
            rows,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.nrows(), "dimension mismatch in product");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &other.rows[*k] {
                        let term = a * b;
                        match acc.get_mut(c) {
                            Some(x) => *x = &*x + &term,
                            None => {
                                acc.insert(*c, term);
                            }
                        }
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Matrix {
            field: self.field,
            ncols: other.ncols,
            rows,
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.ncols, v.len());
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(self.field.zero(), |acc, (c, a)| acc + a * &v[*c])
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.combine(other, &self.field.one())
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.combine(other, &-self.field.one())
    }

    fn combine(&self, other: &Matrix, s: &Scalar) -> Matrix {
        assert_eq!((self.nrows(), self.ncols), (other.nrows(), other.ncols));
        Matrix {
            field: self.field,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| axpy_row(a, s, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| scale_row(r, s)).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.nrows().min(self.ncols)).fold(self.field.zero(), |acc, i| acc + self.get(i, i))
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Matrix {
            field: self.field,
            ncols: self.ncols,
            rows,
        }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.nrows(), other.nrows());
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(c, v)| (c + self.ncols, v.clone())));
                r
            })
            .collect();
        Matrix {
            field: self.field,
            ncols: self.ncols + other.ncols,
            rows,
        }
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut map = vec![usize::MAX; self.ncols];
        for (new, &old) in cols.iter().enumerate() {
            map[old] = new;
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut r: SparseRow = row
                    .iter()
                    .filter(|(c, _)| map[*c] != usize::MAX)
                    .map(|(c, v)| (map[*c], v.clone()))
                    .collect();
                r.sort_by_key(|(c, _)| *c);
                r
            })
            .collect();
        Matrix {
            field: self.field,
            ncols: cols.len(),
            rows,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix {
            field: self.field,
            ncols: self.ncols,
            rows: rows.iter().map(|&r| self.rows[r].clone()).collect(),
        }
    }

    /// Exact rank. Small dense matrices use Bareiss elimination, everything
    /// else the sparse echelon builder.
    pub fn rank(&self) -> usize {
        if self.nrows() * self.ncols <= BAREISS_MAX_ENTRIES {
            self.bareiss_rank()
        } else {
            self.sparse_rank()
        }
    }

    pub fn sparse_rank(&self) -> usize {
        // Rank is invariant under transposition; eliminate along the shorter side.
        let m = if self.ncols < self.nrows() {
            self.transpose()
        } else {
            self.clone()
        };
        let mut ech = Echelon::new(m.field, m.ncols);
        let mut order: Vec<usize> = (0..m.nrows()).collect();
        order.sort_by_key(|&r| m.rows[r].len());
        for r in order {
            ech.insert(m.rows[r].clone());
        }
        ech.rank()
    }

    /// Fraction-free (Bareiss) forward elimination on a dense copy.
    ///
    /// Returns the echelon rows and the pivot columns. Every division is
    /// exact: each entry is, up to sign, a minor of the input.
    pub fn bareiss_echelon(&self) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        let f = self.field;
        let mut a: Vec<Vec<Scalar>> = self
            .rows
            .iter()
            .map(|r| dense_from_sparse(f, self.ncols, r))
            .collect();
        let nrows = a.len();
        let mut prev = f.one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let pivot = a[r][c].clone();
            for i in r + 1..nrows {
                let factor = a[i][c].clone();
                for j in c + 1..self.ncols {
                    let t = &(&pivot * &a[i][j]) - &(&factor * &a[r][j]);
                    a[i][j] = &t / &prev;
                }
                a[i][c] = f.zero();
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn bareiss_rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Reduced row echelon form (nonzero rows only) and its pivot columns.
    pub fn rref(&self) -> (Vec<SparseRow>, Vec<usize>) {
        let mut ech = Echelon::new(self.field, self.ncols);
        for row in &self.rows {
            ech.insert(row.clone());
        }
        ech.into_rref()
    }

    /// Basis of the right kernel, one column per free variable, in the
    /// canonical form read off the reduced row echelon form.
    pub fn nullspace(&self) -> Matrix {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.ncols).filter(|&c| !is_pivot[c]).collect();
        let mut rows: Vec<SparseRow> = vec![Vec::new(); self.ncols];
        for (k, &fc) in free.iter().enumerate() {
            rows[fc].push((k, self.field.one()));
        }
        for (row, &pc) in rref.iter().zip(&pivots) {
            for (c, v) in row {
                if *c != pc {
                    if let Ok(k) = free.binary_search(c) {
                        rows[pc].push((k, -v));
                    }
                }
            }
            rows[pc].sort_by_key(|(k, _)| *k);
        }
        Matrix {
            field: self.field,
            ncols: free.len(),
            rows,
        }
    }

    /// Canonical basis of the column space: the rows of the reduced echelon
    /// form of the transpose, returned as columns.
    pub fn column_space(&self) -> Matrix {
        let (rref, _) = self.transpose().rref();
        Matrix {
            field: self.field,
            ncols: self.nrows(),
            rows: rref,
        }
        .transpose()
    }

    /// A solution of `self * x = b`, if one exists (free variables set to 0).
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.nrows());
        let aug_col = Matrix::from_columns(self.field, self.nrows(), &[b.to_vec()]);
        let aug = self.hstack(&aug_col);
        let (rref, pivots) = aug.rref();
        if pivots.last() == Some(&self.ncols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.ncols];
        for (row, &pc) in rref.iter().zip(&pivots) {
            if let Some((_, v)) = row.iter().find(|(c, _)| *c == self.ncols) {
                x[pc] = v.clone();
            }
        }
        Some(x)
    }

    /// Solves `self * X = rhs` column by column.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        let cols: Option<Vec<Vec<Scalar>>> = rhs.columns().iter().map(|b| self.solve(b)).collect();
        cols.map(|c| Matrix::from_columns(self.field, self.ncols, &c))
    }
}

/// Incremental row-echelon builder over sparse rows.
///
/// Each stored row has a unit leading entry, and no two rows share a
/// leading column.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(field: FieldSpec, ncols: usize) -> Echelon {
        Echelon {
            field,
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces `row` against the current pivots; returns the remainder.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut start = 0;
        loop {
            let Some(pos) = row[start..]
                .iter()
                .position(|(c, _)| self.pivots.contains_key(c))
            else {
                return row;
            };
            let idx = start + pos;
            let (c, a) = row[idx].clone();
            let prow = &self.pivots[&c];
            row = axpy_row(&row, &-a, prow);
            // Entries before the eliminated column are untouched.
            start = row.partition_point(|(k, _)| *k < c);
        }
    }

    /// Adds a row; returns whether it enlarged the span.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let rem = self.reduce(row);
        let Some((lead, a)) = rem.first().cloned() else {
            return false;
        };
        let inv = a.inverse().expect("nonzero pivot");
        self.pivots.insert(lead, scale_row(&rem, &inv));
        true
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    /// Back-substitutes into reduced row echelon form.
    pub fn into_rref(self) -> (Vec<SparseRow>, Vec<usize>) {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        let mut rows: BTreeMap<usize, SparseRow> = self.pivots;
        for &c in cols.iter().rev() {
            let prow = rows[&c].clone();
            for &other in cols.iter().filter(|&&o| o < c) {
                let r = rows.get_mut(&other).unwrap();
                if let Ok(pos) = r.binary_search_by_key(&c, |(k, _)| *k) {
                    let a = r[pos].1.clone();
                    *r = axpy_row(r, &-a, &prow);
                }
            }
        }
        let pivots = rows.keys().copied().collect();
        (rows.into_values().collect(), pivots)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Scalar {
        FieldSpec::Rational.from_int(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        let dense: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Matrix::from_dense(FieldSpec::Rational, rows[0].len(), &dense)
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]).rank(), 3);
        assert_eq!(m(&[&[0, 1, 0], &[0, 0, 0], &[0, 2, 0]]).sparse_rank(), 1);
    }

    #[test]
    fn nullspace_annihilates() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let n = a.nullspace();
        assert_eq!(n.ncols(), 2);
        assert!(a.mul(&n).is_zero());
        assert_eq!(n.rank(), 2);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1], &[2, 0]]);
        let x = a.solve(&[q(3), q(1), q(4)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        assert!(a.solve(&[q(3), q(1), q(5)]).is_none());
    }

    #[test]
    fn column_space_is_canonical() {
        let a = m(&[&[2, 4], &[1, 2]]);
        let c = a.column_space();
        assert_eq!(c.ncols(), 1);
        assert_eq!(c.column(0), vec![q(1), FieldSpec::Rational.from_frac(1, 2)]);
    }

    #[test]
    fn bareiss_agrees_with_sparse_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let r = rng.gen_range(1..7);
            let c = rng.gen_range(1..7);
            let rows: Vec<Vec<Scalar>> = (0..r)
                .map(|_| {
                    (0..c)
                        .map(|_| if rng.gen_bool(0.4) { q(0) } else { q(rng.gen_range(-3..4)) })
                        .collect()
                })
                .collect();
            let a = Matrix::from_dense(FieldSpec::Rational, c, &rows);
            // Low-rank products stress the rank-deficient paths.
            let b = a.mul(&a.transpose());
            for x in [&a, &b] {
                assert_eq!(x.bareiss_rank(), x.sparse_rank());
                let (rref, _) = x.rref();
                assert_eq!(rref.len(), x.bareiss_rank());
                assert_eq!(x.nullspace().ncols() + x.bareiss_rank(), x.ncols());
            }
        }
    }

    #[test]
    fn bareiss_entries_stay_integral() {
        let a = m(&[&[2, 3, 5], &[7, 11, 13], &[17, 19, 23]]);
        let (rows, piv) = a.bareiss_echelon();
        assert_eq!(piv, vec![0, 1, 2]);
        for row in rows {
            for x in row {
                assert!(x.as_rational().unwrap().is_integer());
            }
        }
    }

    #[test]
    fn cyclotomic_rank() {
        let f = FieldSpec::cyclotomic(4);
        let i = f.root_of_unity(1).unwrap();
        // [[1, i], [i, -1]] has rank 1 since row2 = i * row1.
        let a = Matrix::from_dense(f, 2, &[vec![f.one(), i.clone()], vec![i.clone(), f.from_int(-1)]]);
        assert_eq!(a.rank(), 1);
        assert_eq!(a.sparse_rank(), 1);
    }
}
