//! Linear systems whose unknown is a matrix drawn from a parametrized family
//! `X = Σ yᵢ Bᵢ`. Equations are supplied as linear maps `X ↦ f(X)` with a
//! constant right-hand side; the coefficient matrix is assembled by
//! evaluating each map on the family's basis.

use super::mat::solve_rows;
use super::{Field, Mat, Scalar, SparseVec, Subspace};

/// Solution set `{ particular + Σ tⱼ kⱼ }` expressed back in the family.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    family: Vec<Mat>,
    pub particular: Vec<Scalar>,
    pub kernel: Subspace,
}

impl AffineSolution {
    pub fn particular_map(&self) -> Mat {
        combine_family(&self.family, &self.particular)
    }

    pub fn kernel_maps(&self) -> Vec<Mat> {
        self.kernel.basis().iter().map(|k| combine_family(&self.family, k)).collect()
    }

    /// `particular + Σ tⱼ kⱼ` for kernel coordinates `t`.
    pub fn point(&self, t: &[Scalar]) -> Mat {
        let mut y = self.particular.clone();
        for (c, k) in t.iter().zip(self.kernel.basis()) {
            for (yi, ki) in y.iter_mut().zip(k) {
                yi.add_mul_assign(c, ki);
            }
        }
        combine_family(&self.family, &y)
    }

    pub fn family(&self) -> &[Mat] {
        &self.family
    }
}

/// `Σ yᵢ Bᵢ`.
pub fn combine_family(family: &[Mat], coeffs: &[Scalar]) -> Mat {
    assert_eq!(family.len(), coeffs.len(), "coefficient count differs from family size");
    let mut it = family.iter().zip(coeffs);
    let Some((first, c0)) = it.next() else {
        panic!("cannot combine an empty family without a shape");
    };
    let mut acc = first.scale(c0);
    for (b, c) in it {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Accumulates equations over the coefficients of a fixed family.
pub struct LinearSystem<'a> {
    field: Field,
    family: &'a [Mat],
    rows: Vec<SparseVec>,
    rhs: Vec<Scalar>,
}

impl<'a> LinearSystem<'a> {
    pub fn new(field: Field, family: &'a [Mat]) -> Self {
        LinearSystem { field, family, rows: Vec::new(), rhs: Vec::new() }
    }

    fn push_images(&mut self, base: usize, j: usize, image: &Mat) {
        for (i, x) in image.as_slice().iter().enumerate() {
            if !x.is_zero() {
                self.rows[base + i].push((j, x.clone()));
            }
        }
    }

    /// Adds `f(X) = rhs` for a linear `f`.
    pub fn equate(&mut self, f: impl Fn(&Mat) -> Mat, rhs: &Mat) -> &mut Self {
        let base = self.rhs.len();
        self.rhs.extend(rhs.as_slice().iter().cloned());
        self.rows.resize(self.rhs.len(), Vec::new());
        for (j, b) in self.family.iter().enumerate() {
            let out = f(b);
            assert_eq!(out.shape(), rhs.shape(), "equation image and right-hand side differ in shape");
            self.push_images(base, j, &out);
        }
        self
    }

    /// Adds `f(X) = g(X)` for linear `f`, `g`.
    pub fn equate_maps(&mut self, f: impl Fn(&Mat) -> Mat, g: impl Fn(&Mat) -> Mat) -> &mut Self {
        let base = self.rhs.len();
        for (j, b) in self.family.iter().enumerate() {
            let out = f(b).sub(&g(b));
            if j == 0 {
                self.rhs.extend(std::iter::repeat_n(self.field.zero(), out.rows() * out.cols()));
                self.rows.resize(self.rhs.len(), Vec::new());
            }
            self.push_images(base, j, &out);
        }
        self
    }

    pub fn equation_count(&self) -> usize {
        self.rhs.len()
    }

    pub fn coefficient_matrix(&self) -> Mat {
        let mut m = Mat::zeros(self.field, self.rhs.len(), self.family.len());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row {
                m.set(i, *j, x.clone());
            }
        }
        m
    }

    pub fn solve(&self) -> Option<AffineSolution> {
        let (particular, kernel) = solve_rows(self.field, self.family.len(), self.rows.iter().cloned(), &self.rhs)?;
        Some(AffineSolution { family: self.family.to_vec(), particular, kernel })
    }
}

/// Solves `rows[i] · x = rhs[i]` for `x ∈ field^n`: a particular solution
/// with free variables zero, and the homogeneous solution space.
pub fn solve_sparse(field: Field, n: usize, rows: Vec<SparseVec>, rhs: &[Scalar]) -> Option<(Vec<Scalar>, Subspace)> {
    assert_eq!(rows.len(), rhs.len(), "one right-hand side per equation");
    solve_rows(field, n, rows.into_iter(), rhs)
}

/// A linear map on matrices, used to state equations over a family.
pub type MatMap<'a> = Box<dyn Fn(&Mat) -> Mat + 'a>;

/// An equation `f(X) = rhs`.
pub type Equation<'a> = (&'a dyn Fn(&Mat) -> Mat, Mat);

/// All `X` in the family with `f(X) = rhs` for every supplied equation.
pub fn solve_affine(field: Field, family: &[Mat], equations: &[Equation<'_>]) -> Option<AffineSolution> {
    let mut sys = LinearSystem::new(field, family);
    for (f, rhs) in equations {
        sys.equate(f, rhs);
    }
    sys.solve()
}

/// Basis (as matrices) of `{X in span(family) : f(X) = 0 for all f}`.
pub fn solve_homogeneous(field: Field, family: &[Mat], equations: &[&dyn Fn(&Mat) -> Mat]) -> Vec<Mat> {
    if family.is_empty() {
        return Vec::new();
    }
    let mut sys = LinearSystem::new(field, family);
    for f in equations {
        sys.equate_maps(f, |x: &Mat| Mat::zeros(field, f(x).rows(), f(x).cols()));
    }
    sys.solve().expect("homogeneous systems are consistent").kernel_maps()
}

/// Coordinates with respect to a fixed linearly independent family of
/// equally shaped matrices, via a left inverse computed once.
#[derive(Clone, Debug)]
pub struct FamilyCoordinates {
    field: Field,
    shape: (usize, usize),
    flat: Mat,
    rows: Vec<usize>,
    left_inverse: Mat,
}

impl FamilyCoordinates {
    /// Panics if the family is linearly dependent.
    pub fn new(field: Field, shape: (usize, usize), family: &[Mat]) -> Self {
        let n = shape.0 * shape.1;
        let cols: Vec<Vec<Scalar>> = family
            .iter()
            .map(|m| {
                assert_eq!(m.shape(), shape, "family members differ in shape");
                m.as_slice().to_vec()
            })
            .collect();
        let flat = Mat::from_columns(field, n, &cols);
        let (_, rows) = flat.transpose().rref();
        assert_eq!(rows.len(), family.len(), "family is linearly dependent");
        let left_inverse = flat.select_rows(&rows).inverse().expect("selected rows are independent");
        FamilyCoordinates { field, shape, flat, rows, left_inverse }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `Some(y)` with `x = Σ yᵢ Bᵢ` if `x` lies in the span, else `None`.
    pub fn coordinates(&self, x: &Mat) -> Option<Vec<Scalar>> {
        if x.shape() != self.shape {
            return None;
        }
        let v = x.as_slice();
        let picked: Vec<Scalar> = self.rows.iter().map(|&i| v[i].clone()).collect();
        let y = if self.rows.is_empty() { Vec::new() } else { self.left_inverse.apply(&picked) };
        let back = if self.rows.is_empty() { vec![self.field.zero(); v.len()] } else { self.flat.apply(&y) };
        (back.as_slice() == v).then_some(y)
    }
}

/// Matrix units `E_ij` of a `rows × cols` shape, in row-major order.
pub fn unit_matrices(field: Field, rows: usize, cols: usize) -> Vec<Mat> {
    let mut out = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let mut m = Mat::zeros(field, rows, cols);
            m.set(i, j, field.one());
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commuting_matrices() {
        let q = Field::Rationals;
        // Matrices commuting with diag(1, 2) are diagonal.
        let d = Mat::from_i64_rows(q, &[&[1, 0], &[0, 2]]);
        let fam = unit_matrices(q, 2, 2);
        let comm = |x: &Mat| d.mul(x).sub(&x.mul(&d));
        let basis = solve_homogeneous(q, &fam, &[&comm]);
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert!(comm(b).is_zero());
        }
    }

    #[test]
    fn affine_inverse() {
        let q = Field::Rationals;
        let a = Mat::from_i64_rows(q, &[&[2, 1], &[1, 1]]);
        let fam = unit_matrices(q, 2, 2);
        let mut sys = LinearSystem::new(q, &fam);
        sys.equate(|x| a.mul(x), &Mat::identity(q, 2));
        let sol = sys.solve().unwrap();
        assert_eq!(sol.kernel.dim(), 0);
        assert!(a.mul(&sol.particular_map()).is_identity());
    }
}
