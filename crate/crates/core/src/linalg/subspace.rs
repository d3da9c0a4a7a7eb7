use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sparse::{sparsify, SparseEchelon};
use super::{Field, Mat, Scalar};
use crate::error::Error;

/// A linear subspace of `field^ambient_dim`, stored as the nonzero rows of a
/// reduced row echelon basis. Pivots are strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace { field, ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![field.zero(); ambient_dim];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace { field, ambient_dim, basis, pivots: (0..ambient_dim).collect() }
    }

    /// The span of arbitrary vectors of length `ambient_dim`.
    pub fn span(field: Field, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        let mut e = SparseEchelon::new(field);
        for v in vectors {
            assert_eq!(v.len(), ambient_dim, "vector length differs from ambient dimension");
            e.insert(sparsify(v));
        }
        let mut basis = Vec::with_capacity(e.rank());
        let mut pivots = Vec::with_capacity(e.rank());
        for (p, row) in e.into_rref() {
            let mut v = vec![field.zero(); ambient_dim];
            for (j, x) in row {
                v[j] = x;
            }
            basis.push(v);
            pivots.push(p);
        }
        Subspace { field, ambient_dim, basis, pivots }
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Mat) -> Subspace {
        let cols: Vec<Vec<Scalar>> = (0..m.cols()).map(|j| m.column(j)).collect();
        Subspace::span(m.field(), m.rows(), &cols)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients of `v` in the echelon basis, or `None` if `v` lies outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim, "vector length differs from ambient dimension");
        let coeffs: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                if !x.is_zero() {
                    r.sub_mul_assign(c, x);
                }
            }
        }
        residual.iter().all(Scalar::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coeffs.len(), self.dim());
        let mut out = vec![self.field.zero(); self.ambient_dim];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    o.add_mul_assign(c, x);
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.field, self.ambient_dim, &vs))
    }

    /// Intersection, computed from the kernel of `[Uᵀ | -Wᵀ]`.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.field, self.ambient_dim));
        }
        let n = self.ambient_dim;
        let mut columns: Vec<Vec<Scalar>> = self.basis.clone();
        columns.extend(other.basis.iter().map(|b| b.iter().map(|x| -x).collect()));
        let k = Mat::from_columns(self.field, n, &columns).kernel();
        let vectors: Vec<Vec<Scalar>> = k.basis().iter().map(|c| self.combine(&c[..self.dim()])).collect();
        Ok(Subspace::span(self.field, n, &vectors))
    }

    /// A pseudo-random element with integer coefficients in
    /// `[-height, height]` on the echelon basis; deterministic in its inputs.
    pub fn random_element(&self, seed: u64, height: u64) -> Vec<Scalar> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.random_element_with(&mut rng, height)
    }

    pub fn random_element_with<R: Rng>(&self, rng: &mut R, height: u64) -> Vec<Scalar> {
        let h = height.max(1).min(i64::MAX as u64) as i64;
        let coeffs: Vec<Scalar> = (0..self.dim()).map(|_| self.field.from_i64(rng.gen_range(-h..=h))).collect();
        self.combine(&coeffs)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), Error> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::InputShape(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn v(x: &[i64]) -> Vec<Scalar> {
        x.iter().map(|&a| q().from_i64(a)).collect()
    }

    #[test]
    fn meet_of_axes_is_zero() {
        let u = Subspace::span(q(), 2, &[v(&[1, 0])]);
        let w = Subspace::span(q(), 2, &[v(&[0, 1])]);
        assert_eq!(u.meet(&w).unwrap().dim(), 0);
        assert_eq!(u.meet(&u).unwrap(), u);
    }

    #[test]
    fn meet_of_planes() {
        let u = Subspace::span(q(), 3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let w = Subspace::span(q(), 3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let m = u.meet(&w).unwrap();
        assert_eq!(m, Subspace::span(q(), 3, &[v(&[0, 1, 0])]));
    }

    #[test]
    fn meet_ambient_mismatch() {
        let u = Subspace::zero(q(), 2);
        let w = Subspace::zero(q(), 3);
        assert!(matches!(u.meet(&w), Err(Error::InputShape(_))));
    }

    #[test]
    fn random_elements() {
        let s = Subspace::span(q(), 2, &[v(&[1, 0])]);
        for seed in 0..20 {
            let x = s.random_element(seed, 1);
            assert!(x[1].is_zero());
            let c = x[0].to_i64().unwrap();
            assert!((-1..=1).contains(&c));
            assert_eq!(x, s.random_element(seed, 1));
        }
        let z = Subspace::zero(q(), 3);
        assert_eq!(z.random_element(5, 3), v(&[0, 0, 0]));
    }
}
