//! Tensor products over a ring, as quotients of the plain tensor product.
//!
//! The plain tensor `M₁ ⊗_k ⋯ ⊗_k Mₙ` uses row-major Kronecker coordinates.
//! The balanced tensor is its quotient by the relations
//! `… ⊗ m·r ⊗ n ⊗ … − … ⊗ m ⊗ r·n ⊗ …`. For two factors the quotient basis
//! is the set of non-pivot coordinates of the echelonized relation space;
//! longer chains iterate the two-factor construction.

use std::collections::BTreeMap;

use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat, Scalar, SparseEchelon, SparseVec};

#[derive(Clone, Debug)]
pub struct TensorOverRing {
    factors: Vec<Bimodule>,
    plain_dim: usize,
    project: Mat,
    section: Mat,
    result: Bimodule,
}

/// `M ⊗_R N` for an `(A, R)`-bimodule `M` and an `(R, B)`-bimodule `N`.
pub fn tensor_over_ring(m: &Bimodule, n: &Bimodule) -> Result<TensorOverRing> {
    if m.right_ring() != n.left_ring() {
        return Err(Error::MiddleRingMismatch);
    }
    let field = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let plain_dim = dm * dn;

    // Generators `m·r ⊗ n − m ⊗ r·n` for basis elements of every factor.
    let mut relations = SparseEchelon::new(field);
    for (rt, l) in m.right_basis_actions().iter().zip(n.left_basis_actions()) {
        for i in 0..dm {
            for j in 0..dn {
                let mut g: BTreeMap<usize, Scalar> = BTreeMap::new();
                for i2 in 0..dm {
                    let x = rt.get(i2, i);
                    if !x.is_zero() {
                        g.entry(i2 * dn + j).or_insert_with(|| field.zero()).add_assign_ref(x);
                    }
                }
                for j2 in 0..dn {
                    let x = l.get(j2, j);
                    if !x.is_zero() {
                        g.entry(i * dn + j2).or_insert_with(|| field.zero()).add_assign_ref(&-x);
                    }
                }
                let g: SparseVec = g.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                if !g.is_empty() {
                    relations.insert(g);
                }
            }
        }
    }
    let rows = relations.into_rref();

    let mut is_pivot = vec![false; plain_dim];
    for (p, _) in &rows {
        is_pivot[*p] = true;
    }
    let free: Vec<usize> = (0..plain_dim).filter(|&i| !is_pivot[i]).collect();
    let mut position = vec![usize::MAX; plain_dim];
    for (a, &q) in free.iter().enumerate() {
        position[q] = a;
    }
    let d = free.len();
    let mut project = Mat::zeros(field, d, plain_dim);
    let mut section = Mat::zeros(field, plain_dim, d);
    for (a, &q) in free.iter().enumerate() {
        project.set(a, q, field.one());
        section.set(q, a, field.one());
    }
    // A pivot coordinate reduces to minus the rest of its echelon row.
    for (p, row) in &rows {
        for (q, x) in row {
            if q != p {
                project.set(position[*q], *p, -x);
            }
        }
    }

    let left: Vec<Mat> =
        m.left_basis_actions().iter().map(|l| project.mul(&Mat::kron_mul(l, &n.identity(), &section))).collect();
    let right: Vec<Mat> =
        n.right_basis_actions().iter().map(|r| project.mul(&Mat::kron_mul(&m.identity(), r, &section))).collect();
    let result = Bimodule::from_parts_unchecked(m.left_ring().clone(), n.right_ring().clone(), d, left, right);
    Ok(TensorOverRing { factors: vec![m.clone(), n.clone()], plain_dim, project, section, result })
}

/// `M₁ ⊗ M₂ ⊗ ⋯ ⊗ Mₙ`, each tensor taken over the shared middle ring,
/// built as `(⋯(M₁ ⊗ M₂) ⊗ ⋯) ⊗ Mₙ`.
pub fn tensor_chain(factors: &[Bimodule]) -> Result<TensorOverRing> {
    let Some(first) = factors.first() else {
        return Err(Error::InputShape("a tensor product needs at least one factor".into()));
    };
    for w in factors.windows(2) {
        if w[0].right_ring() != w[1].left_ring() {
            return Err(Error::MiddleRingMismatch);
        }
    }
    let field = first.field();
    let mut acc = TensorOverRing {
        factors: vec![first.clone()],
        plain_dim: first.dim(),
        project: first.identity(),
        section: first.identity(),
        result: first.clone(),
    };
    for next in &factors[1..] {
        let step = tensor_over_ring(&acc.result, next)?;
        let id = next.identity();
        let project = Mat::mul_kron(&step.project, &acc.project, &id);
        let section = Mat::kron_mul(&acc.section, &id, &step.section);
        acc.factors.push(next.clone());
        acc = TensorOverRing {
            factors: acc.factors,
            plain_dim: acc.plain_dim * next.dim(),
            project,
            section,
            result: step.result,
        };
    }
    debug_assert_eq!(acc.project.field(), field);
    Ok(acc)
}

impl TensorOverRing {
    pub fn factors(&self) -> &[Bimodule] {
        &self.factors
    }

    pub fn left_factor(&self) -> &Bimodule {
        &self.factors[0]
    }

    pub fn right_factor(&self) -> &Bimodule {
        &self.factors[self.factors.len() - 1]
    }

    pub fn field(&self) -> Field {
        self.result.field()
    }

    pub fn plain_dim(&self) -> usize {
        self.plain_dim
    }

    pub fn dim(&self) -> usize {
        self.result.dim()
    }

    /// Dimension of the space of balancing relations.
    pub fn relation_dim(&self) -> usize {
        self.plain_dim - self.dim()
    }

    /// Plain tensor → balanced tensor.
    pub fn project(&self) -> &Mat {
        &self.project
    }

    /// Balanced tensor → plain tensor, a right inverse of `project`.
    pub fn section(&self) -> &Mat {
        &self.section
    }

    pub fn result(&self) -> &Bimodule {
        &self.result
    }

    pub fn into_result(self) -> Bimodule {
        self.result
    }

    /// The balanced map `f₁ ⊗ ⋯ ⊗ fₙ : self → target`. Each `fᵢ` must be
    /// linear for the rings it is tensored over.
    pub fn map_to(&self, target: &TensorOverRing, maps: &[&Mat]) -> Mat {
        assert_eq!(maps.len(), self.factors.len(), "one map per tensor factor");
        let mut x = self.section.clone();
        for j in (0..maps.len()).rev() {
            let before: usize = maps[..j].iter().map(|m| m.cols()).product();
            let after: usize = maps[j + 1..].iter().map(|m| m.rows()).product();
            if !maps[j].is_identity() {
                x = Mat::slot_mul(before, maps[j], after, &x);
            }
        }
        target.project.mul(&x)
    }

    /// Descends a map defined on the plain tensor to the quotient.
    pub fn descend(&self, plain_map: &Mat) -> Mat {
        plain_map.mul(&self.section)
    }

    /// Whether a map on the plain tensor vanishes on the relations, i.e.
    /// factors through `project`.
    pub fn is_balanced(&self, plain_map: &Mat) -> bool {
        plain_map.mul(&self.section).mul(&self.project) == *plain_map
    }
}

/// `R ⊗_R M → M`, `r ⊗ m ↦ r·m`, and its inverse `m ↦ 1 ⊗ m`.
pub fn left_unitor(m: &Bimodule) -> Result<(Mat, Mat)> {
    let r = Bimodule::regular(m.left_ring().clone());
    let t = tensor_over_ring(&r, m)?;
    let forward = m.left_act_plain().mul(t.section());
    let unit = Mat::column_vector(m.field(), m.left_ring().unit());
    let back = t.project().mul(&unit.kron(&m.identity()));
    Ok((forward, back))
}

/// `M ⊗_S S → M`, `m ⊗ s ↦ m·s`, and its inverse `m ↦ m ⊗ 1`.
pub fn right_unitor(m: &Bimodule) -> Result<(Mat, Mat)> {
    let s = Bimodule::regular(m.right_ring().clone());
    let t = tensor_over_ring(m, &s)?;
    let forward = m.right_act_plain().mul(t.section());
    let unit = Mat::column_vector(m.field(), m.right_ring().unit());
    let back = t.project().mul(&m.identity().kron(&unit));
    Ok((forward, back))
}
