//! Named constructions shared by tests, examples and the CLI.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::bimodule::{hom_space, Bimodule, Sides};
use crate::comodule::RelativeComodule;
use crate::coring::Coring;
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat, Scalar};
use crate::tensor::{tensor_over_ring, TensorOverRing};

/// `C = R`, `Δ = R ≅ R ⊗_R R`, `ε = id`.
pub fn trivial_coring(ring: Arc<Algebra>) -> Coring {
    Coring::trivial(ring)
}

/// The comatrix coalgebra over `k`: `Δ(eᵢⱼ) = Σₖ eᵢₖ ⊗ eₖⱼ`, `ε(eᵢⱼ) = δᵢⱼ`.
pub fn matrix_coalgebra(field: Field, n: usize) -> Coring {
    let d = n * n;
    let carrier = Bimodule::vector_space(field, d);
    let mut comult = Mat::zeros(field, d * d, d);
    let mut counit = Mat::zeros(field, 1, d);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                comult.set((i * n + k) * d + (k * n + j), i * n + j, field.one());
            }
        }
        counit.set(0, i * n + i, field.one());
    }
    Coring::new(carrier, comult, counit).expect("comatrix coalgebra")
}

/// `k` on group-like elements `g₁ … gₙ`: `Δ(g) = g ⊗ g`, `ε(g) = 1`.
pub fn grouplike_coalgebra(field: Field, n: usize) -> Coring {
    grouplike_with_counit(field, n, &vec![field.one(); n]).expect("group-like coalgebra")
}

/// The group-like comultiplication with arbitrary counit values; only the
/// all-ones counit passes verification.
pub fn grouplike_with_counit(field: Field, n: usize, counit: &[Scalar]) -> Result<Coring> {
    if counit.len() != n {
        return Err(Error::InputShape(format!("{} counit values for {n} group-like elements", counit.len())));
    }
    let carrier = Bimodule::vector_space(field, n);
    let mut comult = Mat::zeros(field, n * n, n);
    let mut eps = Mat::zeros(field, 1, n);
    for g in 0..n {
        comult.set(g * n + g, g, field.one());
        eps.set(0, g, counit[g].clone());
    }
    Coring::new(carrier, comult, eps)
}

/// Columns `kⁿ` as an `(M_n(k), k)`-bimodule and rows `kⁿ` as a
/// `(k, M_n(k))`-bimodule.
pub fn morita_pair(field: Field, n: usize) -> (Bimodule, Bimodule) {
    let mn = Algebra::matrix(field, n);
    let k = Algebra::base(field);
    let unit = |r: usize, c: usize| {
        let mut m = Mat::zeros(field, n, n);
        m.set(r, c, field.one());
        m
    };
    let mut col_left = Vec::with_capacity(n * n);
    let mut row_right = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            col_left.push(unit(i, j));
            row_right.push(unit(j, i));
        }
    }
    let id = vec![Mat::identity(field, n)];
    let columns = Bimodule::new(mn.clone(), k.clone(), n, col_left, id.clone()).expect("column module");
    let rows = Bimodule::new(k, mn, n, id, row_right).expect("row module");
    (columns, rows)
}

/// `(U, V)` with `U` the columns and `V` the rows as a relative comodule
/// over the trivial coring of `k`.
pub fn morita_instance(field: Field, n: usize) -> (Bimodule, RelativeComodule) {
    let (u, v) = morita_pair(field, n);
    let c = Arc::new(Coring::trivial(Algebra::base(field)));
    let v = RelativeComodule::canonical(c, v).expect("trivial coring coaction");
    (u, v)
}

/// `Rⁿ` as a `(k, R)`-bimodule.
pub fn free_right_module(ring: Arc<Algebra>, rank: usize) -> Bimodule {
    Bimodule::right_regular(ring).power(rank)
}

/// `Rⁿ` as an `(R, k)`-bimodule.
pub fn free_left_module(ring: Arc<Algebra>, rank: usize) -> Bimodule {
    Bimodule::left_regular(ring).power(rank)
}

/// `k` as a right module over `k[x]/(x²)` with `x` acting as zero.
pub fn dual_numbers_residue_right(field: Field) -> Bimodule {
    let d = Algebra::dual_numbers(field);
    let k = Algebra::base(field);
    let one = Mat::identity(field, 1);
    Bimodule::new(k, d, 1, vec![one.clone()], vec![one, Mat::zeros(field, 1, 1)]).expect("residue module")
}

/// The right dual `M* = Hom_B(M, B)` of an `(A, B)`-bimodule, as a
/// `(B, A)`-bimodule with `(s·f)(m) = s f(m)` and `(f·r)(m) = f(r m)`,
/// together with the evaluation `M* ⊗_A M → B`.
#[derive(Clone, Debug)]
pub struct DualPair {
    pub dual: Bimodule,
    /// Basis of `M*` as matrices `M → B`, matching the coordinates of `dual`.
    pub functionals: Vec<Mat>,
    pub tensor: TensorOverRing,
    pub evaluation: Mat,
}

pub fn dual_pair(m: &Bimodule) -> Result<DualPair> {
    let field = m.field();
    let b = Bimodule::regular(m.right_ring().clone());
    let space = hom_space(m, &b, Sides::Right)?;
    let functionals = space.basis().to_vec();
    let d = functionals.len();
    let coords = |f: &Mat| space.coordinates(f).expect("dual action stays in the dual");
    let act = |op: &dyn Fn(&Mat) -> Mat| {
        let cols: Vec<Vec<Scalar>> = functionals.iter().map(|f| coords(&op(f))).collect();
        Mat::from_columns(field, d, &cols)
    };
    let left: Vec<Mat> = b.left_basis_actions().iter().map(|ls| act(&|f: &Mat| ls.mul(f))).collect();
    let right: Vec<Mat> = m.left_basis_actions().iter().map(|lr| act(&|f: &Mat| f.mul(lr))).collect();
    let dual = Bimodule::new(m.right_ring().clone(), m.left_ring().clone(), d, left, right)?;
    let tensor = tensor_over_ring(&dual, m)?;
    let mut plain = Mat::zeros(field, b.dim(), d * m.dim());
    for (a, f) in functionals.iter().enumerate() {
        for j in 0..m.dim() {
            for i in 0..b.dim() {
                plain.set(i, a * m.dim() + j, f.get(i, j).clone());
            }
        }
    }
    debug_assert!(tensor.is_balanced(&plain));
    let evaluation = tensor.descend(&plain);
    Ok(DualPair { dual, functionals, tensor, evaluation })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn morita_dims() {
        let (u, v) = morita_pair(q(), 2);
        assert_eq!((u.dim(), v.dim()), (2, 2));
        let (u1, v1) = morita_pair(q(), 1);
        assert_eq!((u1.dim(), v1.dim()), (1, 1));
        let t = tensor_over_ring(&u, &v).unwrap();
        assert_eq!(t.dim(), 4);
        let (u3, v3) = morita_pair(q(), 3);
        assert_eq!(tensor_over_ring(&u3, &v3).unwrap().dim(), 9);
    }

    #[test]
    fn grouplike_counit_must_be_one() {
        assert_eq!(grouplike_coalgebra(q(), 1).dim(), 1);
        assert_eq!(grouplike_coalgebra(q(), 2).dim(), 2);
        let err = grouplike_with_counit(q(), 2, &[q().one(), q().from_i64(2)]).unwrap_err();
        assert!(matches!(err, Error::CounitLawFails { .. }));
    }

    #[test]
    fn matrix_coalgebra_of_size_one_is_trivial() {
        let c = matrix_coalgebra(q(), 1);
        assert_eq!(c, trivial_coring(Algebra::base(q())));
    }

    #[test]
    fn duals() {
        let s = Algebra::matrix(q(), 2);
        let reg = Bimodule::regular(s);
        let d = dual_pair(&reg).unwrap();
        assert_eq!(d.dual.dim(), 4);

        let v = Bimodule::vector_space(q(), 2);
        let d = dual_pair(&v).unwrap();
        assert_eq!(d.dual.dim(), 2);
        assert_eq!(d.evaluation.rank(), 1);

        let z = Bimodule::zero(Algebra::base(q()), Algebra::base(q()));
        let d = dual_pair(&z).unwrap();
        assert_eq!(d.dual.dim(), 0);
        assert!(d.evaluation.is_zero());
    }

    #[test]
    fn residue_module_dual_is_one_dimensional() {
        let u = dual_numbers_residue_right(q());
        let d = dual_pair(&u).unwrap();
        assert_eq!(d.dual.dim(), 1);
    }
}
