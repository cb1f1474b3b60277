//! Dense exact matrices and the handful of elimination routines the rest of
//! the crate is built on.
//!
//! Vectors act on the left of matrices as columns: a linear map `K^m -> K^n`
//! is an `n x m` matrix.

use std::fmt;

use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| self.field.format(x)).collect();
            write!(f, "[{}]", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data has the wrong length");
        Self {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: &F, cols: usize, rows: &[Vec<F::Elem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().cloned());
        }
        Self::from_vec(field, rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, x) in col.iter().enumerate() {
                m.data[r * m.cols + c] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(field: &F, rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::from_vec(
            field,
            rows,
            cols,
            entries.iter().map(|&x| field.from_i64(x)).collect(),
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: F::Elem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                let na = f.neg(a);
                let orow = other.row(k);
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(orow) {
                    if !f.is_zero(b) {
                        *d = f.sub_mul(d, &na, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Self::from_vec(f, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Self::from_vec(f, self.rows, self.cols, data)
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.mul(a, s)).collect();
        Self::from_vec(f, self.rows, self.cols, data)
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &F::Elem, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field.clone();
        if f.is_zero(s) {
            return;
        }
        let ns = f.neg(s);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !f.is_zero(b) {
                *a = f.sub_mul(a, &ns, b);
            }
        }
    }

    pub fn pow(&self, mut exp: usize) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn hstack(field: &F, rows: usize, blocks: &[&Self]) -> Self {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut c0 = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            out.set_block(0, c0, b);
            c0 += b.cols;
        }
        out
    }

    pub fn vstack(field: &F, cols: usize, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend(b.data.iter().cloned());
        }
        Self::from_vec(field, rows, cols, data)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(&self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.data[r * cols + c] = self.get(r0 + r, c0 + c).clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend(self.row(r).iter().cloned());
        }
        Self::from_vec(&self.field, rows.len(), self.cols, data)
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for pc in 0..cols {
            if prow == self.rows {
                break;
            }
            let Some(found) = (prow..self.rows).find(|&r| !f.is_zero(&self.data[r * cols + pc])) else {
                continue;
            };
            if found != prow {
                for c in pc..cols {
                    self.data.swap(found * cols + c, prow * cols + c);
                }
            }
            let inv = f.inv(&self.data[prow * cols + pc]);
            for c in pc..cols {
                let x = &self.data[prow * cols + c];
                if !f.is_zero(x) {
                    self.data[prow * cols + c] = f.mul(x, &inv);
                }
            }
            let (head, rest) = self.data.split_at_mut(prow * cols);
            let (pivot_row, tail) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [F::Elem]| {
                let factor = row[pc].clone();
                if f.is_zero(&factor) {
                    return;
                }
                for c in pc..cols {
                    let p = &pivot_row[c];
                    if !f.is_zero(p) {
                        row[c] = f.sub_mul(&row[c], &factor, p);
                    }
                }
            };
            for row in head.chunks_mut(cols) {
                eliminate(row);
            }
            for row in tail.chunks_mut(cols) {
                eliminate(row);
            }
            pivots.push(pc);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        let mut m = if self.rows > self.cols { self.transpose() } else { self.clone() };
        m.rref().len()
    }

    /// Basis of the right kernel, as the columns of a `cols x k` matrix.
    pub fn kernel(&self) -> Self {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = if self.rows == 0 { Vec::new() } else { m.rref() };
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                let x = m.get(i, fc);
                if !f.is_zero(x) {
                    k.set(pc, j, f.neg(x));
                }
            }
        }
        k
    }

    /// A maximal linearly independent subset of the columns, in order.
    pub fn independent_columns(&self) -> Vec<usize> {
        if self.is_empty() {
            return Vec::new();
        }
        let mut m = self.clone();
        m.rref()
    }

    /// Columns spanning the image.
    pub fn image(&self) -> Self {
        self.select_columns(&self.independent_columns())
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = &self.field;
        if n == 0 {
            return Some(Self::zeros(f, 0, 0));
        }
        let mut aug = Self::hstack(f, n, &[self, &Self::identity(f, n)]);
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Some `X` with `self * X = rhs`, if one exists.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let f = &self.field;
        let n = self.cols;
        let mut aug = Self::hstack(f, self.rows, &[self, rhs]);
        let pivots = aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Self::zeros(f, n, rhs.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(pc, c, aug.get(i, n + c).clone());
            }
        }
        Some(x)
    }

    /// Monic polynomial of least degree annihilating `v` under `self`,
    /// coefficients from the constant term up.
    pub fn krylov_polynomial(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut chain: Vec<Vec<F::Elem>> = vec![v.to_vec()];
        loop {
            let next = self.mul_vec(chain.last().unwrap());
            let basis = Self::from_columns(f, self.rows, &chain);
            let rhs = Self::from_columns(f, self.rows, std::slice::from_ref(&next));
            if let Some(sol) = basis.solve(&rhs) {
                let mut poly: Vec<F::Elem> = (0..chain.len()).map(|k| f.neg(sol.get(k, 0))).collect();
                poly.push(f.one());
                return poly;
            }
            chain.push(next);
        }
    }

    /// For a matrix of full column rank, a matrix `L` with `L * self = I`.
    pub fn left_inverse(&self) -> Self {
        let f = &self.field;
        let k = self.cols;
        if k == 0 {
            return Self::zeros(f, 0, self.rows);
        }
        let rows = self.transpose().independent_columns();
        assert_eq!(rows.len(), k, "left inverse of a rank-deficient matrix");
        let sub = self.select_rows(&rows).inverse().expect("square full-rank block");
        let mut l = Self::zeros(f, k, self.rows);
        for (j, &r) in rows.iter().enumerate() {
            for i in 0..k {
                l.set(i, r, sub.get(i, j).clone());
            }
        }
        l
    }
}

/// An echelonized set of row vectors supporting fast membership queries.
#[derive(Clone, Debug)]
pub struct RowSpan<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> RowSpan<F> {
    pub fn new(field: &F, dim: usize) -> Self {
        Self {
            field: field.clone(),
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the span; the result is zero iff `v` is inside.
    pub fn reduce(&self, v: &mut [F::Elem]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let factor = v[p].clone();
            if f.is_zero(&factor) {
                continue;
            }
            for c in p..self.dim {
                if !f.is_zero(&row[c]) {
                    v[c] = f.sub_mul(&v[c], &factor, &row[c]);
                }
            }
        }
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.dim);
        if self.is_full() {
            return false;
        }
        let f = &self.field;
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]);
        for x in w.iter_mut().skip(p) {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    /// Inserts every column of `m`.
    pub fn insert_columns(&mut self, m: &Matrix<F>) {
        for c in 0..m.cols() {
            if self.is_full() {
                return;
            }
            self.insert(&m.column(c));
        }
    }

    /// Standard basis indices completing the span to the whole space.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut used = vec![false; self.dim];
        for &p in &self.pivots {
            used[p] = true;
        }
        (0..self.dim).filter(|&i| !used[i]).collect()
    }
}
