use std::fmt;

use super::sparse::{sparsify, SparseEchelon, SparseVec};
use super::{Field, Scalar, Subspace};
use crate::error::Error;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds from row-major data; `data.len()` must equal `rows * cols`.
    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Mat, Error> {
        if data.len() != rows * cols {
            return Err(Error::InputShape(format!("{} entries supplied for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Mat { field, rows, cols, data })
    }

    pub fn from_rows(field: Field, rows: &[Vec<Scalar>]) -> Result<Mat, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InputShape("ragged rows".into()));
        }
        Mat::from_vec(field, rows.len(), cols, rows.concat())
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Mat {
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Mat::from_rows(field, &rows).expect("ragged literal")
    }

    /// A single column.
    pub fn column_vector(field: Field, v: &[Scalar]) -> Mat {
        Mat { field, rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Mat {
        let mut m = Mat::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Scalar> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// First column on which two equally shaped matrices differ.
    pub fn first_differing_column(&self, other: &Mat) -> Option<usize> {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in comparison");
        (0..self.cols).find(|&j| (0..self.rows).any(|i| self.get(i, j) != other.get(i, j)))
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Mat::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let brow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        o.add_mul_assign(a, b);
                    }
                }
            }
        }
        out
    }

    /// Product of a chain `self * m1 * m2 * ...`.
    pub fn chain(&self, rest: &[&Mat]) -> Mat {
        rest.iter().fold(self.clone(), |acc, m| acc.mul(m))
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul_assign(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| match (a.is_zero(), b.is_zero()) {
                (_, true) => a.clone(),
                (true, false) => b.clone(),
                _ => a + b,
            })
            .collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| match (a.is_zero(), b.is_zero()) {
                (_, true) => a.clone(),
                (true, false) => -b,
                _ => a - b,
            })
            .collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        if s.is_zero() {
            return Mat::zeros(self.field, self.rows, self.cols);
        }
        if s.is_one() {
            return self.clone();
        }
        let data = self.data.iter().map(|a| if a.is_zero() { a.clone() } else { a * s }).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    out.set(j, i, x.clone());
                }
            }
        }
        out
    }

    /// Kronecker product; row-major index order matches plain tensor bases.
    pub fn kron(&self, rhs: &Mat) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// `(I_before ⊗ f ⊗ I_after) · x` without forming the Kronecker product.
    pub fn slot_mul(before: usize, f: &Mat, after: usize, x: &Mat) -> Mat {
        assert_eq!(x.rows, before * f.cols * after, "slot product shape mismatch");
        let n = x.cols;
        let mut out = Mat::zeros(x.field, before * f.rows * after, n);
        for a in 0..before {
            for p in 0..f.rows {
                for q in 0..f.cols {
                    let c = f.get(p, q);
                    if c.is_zero() {
                        continue;
                    }
                    for t in 0..after {
                        let src = ((a * f.cols + q) * after + t) * n;
                        let dst = ((a * f.rows + p) * after + t) * n;
                        for k in 0..n {
                            let b = &x.data[src + k];
                            if !b.is_zero() {
                                out.data[dst + k].add_mul_assign(c, b);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// `(a ⊗ b) · y` without forming the Kronecker product.
    pub fn kron_mul(a: &Mat, b: &Mat, y: &Mat) -> Mat {
        let inner = if b.is_identity() { y.clone() } else { Mat::slot_mul(a.cols, b, 1, y) };
        if a.is_identity() {
            inner
        } else {
            Mat::slot_mul(1, a, b.rows, &inner)
        }
    }

    /// `x · (a ⊗ b)` without forming the Kronecker product.
    pub fn mul_kron(x: &Mat, a: &Mat, b: &Mat) -> Mat {
        Mat::kron_mul(&a.transpose(), &b.transpose(), &x.transpose()).transpose()
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(field: Field, cols: usize, blocks: &[Mat]) -> Mat {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            rows += b.rows;
            data.extend_from_slice(&b.data);
        }
        Mat { field, rows, cols, data }
    }

    pub fn hstack(field: Field, rows: usize, blocks: &[Mat]) -> Mat {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, offset + j, b.get(i, j).clone());
                }
            }
            offset += b.cols;
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let rows = self.echelon_rows();
        let mut out = Mat::zeros(self.field, self.rows, self.cols);
        let mut pivots = Vec::with_capacity(rows.len());
        for (i, (p, row)) in rows.into_iter().enumerate() {
            pivots.push(p);
            for (j, x) in row {
                out.set(i, j, x);
            }
        }
        (out, pivots)
    }

    fn sparse_rows(&self) -> impl Iterator<Item = SparseVec> + '_ {
        (0..self.rows).map(|i| sparsify(self.row(i)))
    }

    fn echelon_rows(&self) -> Vec<(usize, SparseVec)> {
        let mut e = SparseEchelon::new(self.field);
        for r in self.sparse_rows() {
            e.insert(r);
        }
        e.into_rref()
    }

    pub fn rank(&self) -> usize {
        let mut e = SparseEchelon::new(self.field);
        for r in self.sparse_rows() {
            e.insert(r);
        }
        e.rank()
    }

    /// Null space `{x : A x = 0}`.
    pub fn kernel(&self) -> Subspace {
        kernel_from_rref(self.field, self.cols, &self.echelon_rows())
    }

    /// Solves `A x = b`. `None` when inconsistent; otherwise a particular
    /// solution (free variables zero) and the homogeneous solution space.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<(Vec<Scalar>, Subspace)>, Error> {
        if b.len() != self.rows {
            return Err(Error::InputShape(format!(
                "right-hand side has length {} but the matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        Ok(solve_rows(self.field, self.cols, self.sparse_rows(), b))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Mat::zeros(self.field, 0, 0));
        }
        let aug = Mat::hstack(self.field, n, &[self.clone(), Mat::identity(self.field, n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Mat::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Restricts to the given rows.
    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Mat { field: self.field, rows: rows.len(), cols: self.cols, data }
    }
}

fn kernel_from_rref(field: Field, n: usize, rows: &[(usize, SparseVec)]) -> Subspace {
    let mut is_pivot = vec![false; n];
    for (p, _) in rows {
        is_pivot[*p] = true;
    }
    let mut position = vec![usize::MAX; n];
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    for (a, &f) in free.iter().enumerate() {
        position[f] = a;
    }
    let mut vectors: Vec<Vec<Scalar>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); n];
            v[f] = field.one();
            v
        })
        .collect();
    for (p, row) in rows {
        for (j, x) in row {
            if *j != *p {
                vectors[position[*j]][*p] = -x;
            }
        }
    }
    Subspace::span(field, n, &vectors)
}

/// Solves the system whose `i`-th equation is `rows[i] · x = rhs[i]`.
pub(crate) fn solve_rows(
    field: Field,
    n: usize,
    rows: impl Iterator<Item = SparseVec>,
    rhs: &[Scalar],
) -> Option<(Vec<Scalar>, Subspace)> {
    let mut e = SparseEchelon::new(field);
    for (mut r, b) in rows.zip(rhs) {
        if !b.is_zero() {
            r.push((n, b.clone()));
        }
        e.insert(r);
    }
    let rref = e.into_rref();
    if rref.last().is_some_and(|(p, _)| *p == n) {
        return None;
    }
    let mut x = vec![field.zero(); n];
    let mut coeffs = Vec::with_capacity(rref.len());
    for (p, mut row) in rref {
        if row.last().is_some_and(|(j, _)| *j == n) {
            x[p] = row.pop().expect("nonempty").1;
        }
        coeffs.push((p, row));
    }
    Some((x, kernel_from_rref(field, n, &coeffs)))
}
