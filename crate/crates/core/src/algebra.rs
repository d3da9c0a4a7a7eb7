//! Finite-dimensional unital associative algebras given by structure constants.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Field, Mat, Scalar};

/// `bᵢ·bⱼ = Σₖ mult[i][j][k] bₖ`, validated at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    field: Field,
    dim: usize,
    mult: Vec<Scalar>,
    unit: Vec<Scalar>,
    // Left/right multiplication by each basis element, as matrices on column vectors.
    lmul: Vec<Mat>,
    rmul: Vec<Mat>,
}

impl Algebra {
    /// Validates associativity on every basis triple and both unit laws.
    pub fn new(field: Field, dim: usize, mult: Vec<Scalar>, unit: Vec<Scalar>) -> Result<Algebra> {
        if mult.len() != dim * dim * dim {
            return Err(Error::InputShape(format!(
                "structure tensor of an algebra of dimension {dim} needs {} entries, got {}",
                dim * dim * dim,
                mult.len()
            )));
        }
        if unit.len() != dim {
            return Err(Error::InputShape(format!("unit vector has length {}, expected {dim}", unit.len())));
        }
        let idx = |i: usize, j: usize, k: usize| (i * dim + j) * dim + k;
        let mut lmul = Vec::with_capacity(dim);
        let mut rmul = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut l = Mat::zeros(field, dim, dim);
            let mut r = Mat::zeros(field, dim, dim);
            for j in 0..dim {
                for k in 0..dim {
                    l.set(k, j, mult[idx(i, j, k)].clone());
                    r.set(k, j, mult[idx(j, i, k)].clone());
                }
            }
            lmul.push(l);
            rmul.push(r);
        }
        let alg = Algebra { field, dim, mult, unit, lmul, rmul };
        // (bᵢbⱼ)bₗ = bᵢ(bⱼbₗ)  ⇔  L_{bᵢbⱼ} = Lᵢ Lⱼ applied to bₗ.
        for i in 0..dim {
            for j in 0..dim {
                let bij = alg.basis_product(i, j);
                let lhs = alg.left_mult(&bij);
                let rhs = alg.lmul[i].mul(&alg.lmul[j]);
                if let Some(l) = lhs.first_differing_column(&rhs) {
                    return Err(Error::NonAssociative(i, j, l));
                }
            }
        }
        let lu = alg.left_mult(&alg.unit);
        let ru = alg.right_mult(&alg.unit);
        if let Some(j) = lu.first_differing_column(&Mat::identity(field, dim)) {
            return Err(Error::NonUnital(j));
        }
        if let Some(j) = ru.first_differing_column(&Mat::identity(field, dim)) {
            return Err(Error::NonUnital(j));
        }
        Ok(alg)
    }

    /// From sparse `(i, j, k, value)` structure constants.
    pub fn from_triples(
        field: Field,
        dim: usize,
        triples: &[(usize, usize, usize, Scalar)],
        unit: Vec<Scalar>,
    ) -> Result<Algebra> {
        let mut mult = vec![field.zero(); dim * dim * dim];
        for (i, j, k, v) in triples {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::InputShape(format!("structure constant index ({i},{j},{k}) out of range")));
            }
            mult[(i * dim + j) * dim + k] = v.clone();
        }
        Algebra::new(field, dim, mult, unit)
    }

    /// The base field as a one-dimensional algebra.
    pub fn base(field: Field) -> Arc<Algebra> {
        Arc::new(Algebra::new(field, 1, vec![field.one()], vec![field.one()]).expect("base field"))
    }

    /// `M_n(k)` on matrix units `e_ij` (index `i*n + j`), `e_ij e_kl = δ_jk e_il`.
    pub fn matrix(field: Field, n: usize) -> Arc<Algebra> {
        let d = n * n;
        let mut triples = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    triples.push((i * n + j, j * n + l, i * n + l, field.one()));
                }
            }
        }
        let mut unit = vec![field.zero(); d];
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        Arc::new(Algebra::from_triples(field, d, &triples, unit).expect("matrix algebra"))
    }

    /// `k[x]/(x²)` on the basis `(1, x)`.
    pub fn dual_numbers(field: Field) -> Arc<Algebra> {
        let one = field.one();
        let triples = vec![(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one)];
        Arc::new(Algebra::from_triples(field, 2, &triples, vec![field.one(), field.zero()]).expect("dual numbers"))
    }

    /// `kⁿ` with componentwise product.
    pub fn diagonal(field: Field, n: usize) -> Arc<Algebra> {
        let triples: Vec<_> = (0..n).map(|i| (i, i, i, field.one())).collect();
        Arc::new(Algebra::from_triples(field, n, &triples, vec![field.one(); n]).expect("diagonal algebra"))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.mult[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure_constants(&self) -> &[Scalar] {
        &self.mult
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.lmul[i].column(j)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.left_mult(a).apply(b)
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_mult(&self, a: &[Scalar]) -> Mat {
        combine(self.field, self.dim, &self.lmul, a)
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_mult(&self, a: &[Scalar]) -> Mat {
        combine(self.field, self.dim, &self.rmul, a)
    }

    pub fn left_basis_mult(&self) -> &[Mat] {
        &self.lmul
    }

    pub fn right_basis_mult(&self) -> &[Mat] {
        &self.rmul
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn is_commutative(&self) -> bool {
        self.lmul == self.rmul
    }
}

/// `Σ coeffs[i] * mats[i]`, or the zero `dim × dim` matrix.
pub(crate) fn combine(field: Field, dim: usize, mats: &[Mat], coeffs: &[Scalar]) -> Mat {
    assert_eq!(mats.len(), coeffs.len(), "coefficient vector length differs from basis size");
    let mut acc = Mat::zeros(field, dim, dim);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&m.scale(c));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_field_algebra() {
        let k = Algebra::base(Field::Rationals);
        assert_eq!(k.dim(), 1);
        assert!(k.is_commutative());
    }

    #[test]
    fn matrix_units_are_associative() {
        let m2 = Algebra::matrix(Field::Rationals, 2);
        assert_eq!(m2.dim(), 4);
        assert!(!m2.is_commutative());
        // e_01 e_10 = e_00
        assert_eq!(m2.basis_product(1, 2), m2.basis_vector(0));
    }

    #[test]
    fn idempotent_with_wrong_unit() {
        // b·b = b with (1,0) claimed as unit, but 1·b = 0.
        let q = Field::Rationals;
        let triples = vec![(0, 0, 0, q.one()), (1, 1, 1, q.one())];
        let err = Algebra::from_triples(q, 2, &triples, vec![q.one(), q.zero()]).unwrap_err();
        assert!(matches!(err, Error::NonUnital(1)));
    }

    #[test]
    fn non_associative_rejected() {
        let q = Field::Rationals;
        // Basis (e, x, y), e the unit, x·y = x, y·y = x, everything else zero:
        // (y·y)·y = x but y·(y·y) = y·x = 0.
        let mut triples = vec![(0, 0, 0, q.one()), (0, 1, 1, q.one()), (1, 0, 1, q.one())];
        triples.extend([(0, 2, 2, q.one()), (2, 0, 2, q.one()), (1, 2, 1, q.one()), (2, 2, 1, q.one())]);
        let err = Algebra::from_triples(q, 3, &triples, vec![q.one(), q.zero(), q.zero()]).unwrap_err();
        assert!(matches!(err, Error::NonAssociative(..)));
    }
}
