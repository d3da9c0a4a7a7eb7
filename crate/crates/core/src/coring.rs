//! Corings: comonoids `(C, Δ, ε)` in the category of `R`-bimodules.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::bimodule::{check_intertwines, Bimodule, Sides};
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat};
use crate::tensor::{tensor_chain, tensor_over_ring, TensorOverRing};

/// `Δ` is stored in quotient coordinates of `C ⊗_R C`; `comult_plain` is its
/// lift to the plain tensor through the section.
#[derive(Clone, Debug)]
pub struct Coring {
    carrier: Bimodule,
    comult: Mat,
    counit: Mat,
    comult_plain: Mat,
    cc: TensorOverRing,
}

impl PartialEq for Coring {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && self.comult == other.comult && self.counit == other.counit
    }
}

impl Eq for Coring {}

impl Coring {
    /// Checks that `Δ: C → C⊗_R C` and `ε: C → R` are bimodule maps,
    /// coassociativity and both counit laws on every basis element.
    pub fn new(carrier: Bimodule, comult: Mat, counit: Mat) -> Result<Coring> {
        let ring = carrier.left_ring().clone();
        if carrier.right_ring() != &ring {
            return Err(Error::RingMismatch("a coring carrier must be an (R, R)-bimodule".into()));
        }
        let cc = tensor_over_ring(&carrier, &carrier)?;
        check_intertwines(&carrier, cc.result(), &comult, Sides::Both)?;
        let regular = Bimodule::regular(ring.clone());
        check_intertwines(&carrier, &regular, &counit, Sides::Both)?;
        let comult_plain = cc.section().mul(&comult);

        let field = carrier.field();
        let id = carrier.identity();
        let ccc = tensor_chain(&[carrier.clone(), carrier.clone(), carrier.clone()])?;
        let lhs = ccc.project().mul(&Mat::kron_mul(&comult_plain, &id, &comult_plain));
        let rhs = ccc.project().mul(&Mat::kron_mul(&id, &comult_plain, &comult_plain));
        if let Some(c) = lhs.first_differing_column(&rhs) {
            return Err(Error::NotCoassociative(c));
        }
        let left = carrier.left_act_plain().mul(&Mat::kron_mul(&counit, &id, &comult_plain));
        if let Some(c) = left.first_differing_column(&Mat::identity(field, carrier.dim())) {
            return Err(Error::CounitLawFails { side: "left", basis: c });
        }
        let right = carrier.right_act_plain().mul(&Mat::kron_mul(&id, &counit, &comult_plain));
        if let Some(c) = right.first_differing_column(&Mat::identity(field, carrier.dim())) {
            return Err(Error::CounitLawFails { side: "right", basis: c });
        }
        Ok(Coring { carrier, comult, counit, comult_plain, cc })
    }

    /// `C = R`, `Δ(r) = r ⊗ 1`, `ε = id`.
    pub fn trivial(ring: Arc<Algebra>) -> Coring {
        let carrier = Bimodule::regular(ring.clone());
        let cc = tensor_over_ring(&carrier, &carrier).expect("regular bimodule");
        let unit = Mat::column_vector(ring.field(), ring.unit());
        let comult = cc.project().mul(&carrier.identity().kron(&unit));
        Coring::new(carrier, comult, Mat::identity(ring.field(), ring.dim())).expect("trivial coring")
    }

    pub fn field(&self) -> Field {
        self.carrier.field()
    }

    pub fn ring(&self) -> &Arc<Algebra> {
        self.carrier.left_ring()
    }

    pub fn carrier(&self) -> &Bimodule {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// `Δ` in quotient coordinates of `C ⊗_R C`.
    pub fn comult(&self) -> &Mat {
        &self.comult
    }

    /// `c ↦ c₍₁₎ ⊗ c₍₂₎` as a plain tensor.
    pub fn comult_plain(&self) -> &Mat {
        &self.comult_plain
    }

    pub fn counit(&self) -> &Mat {
        &self.counit
    }

    /// `C ⊗_R C`.
    pub fn cc(&self) -> &TensorOverRing {
        &self.cc
    }
}
