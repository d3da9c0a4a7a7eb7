//! Decision procedures for induction functors `U ⊗_R −` between left
//! `C`-comodules and left `S`-modules: dual bases of both kinds,
//! representability, separability, Frobenius pairs and equivalences.

mod bilinear;
mod first_kind;
mod functors;
mod second_kind;
mod separability;

use std::sync::Arc;

pub use first_kind::{
    find_first_kind, projectivity_certificate, representability_report, triangle_identities, verify_first_kind,
    DualBasisFirstKind, ProjectivityCertificate, RepresentabilityReport,
};
pub use functors::{
    compose_representable, equivalence_check, forgetful_representability, frobenius_check, hom_dimension_identity,
    EquivalenceReport, FrobeniusReport, HomDimensionIdentity,
};
pub use second_kind::{canonical_second_kind, find_second_kind, verify_second_kind, DualBasisSecondKind};
pub use separability::{separability_first, separability_second, SeparabilityReport};

use crate::bimodule::{centralizer, Bimodule};
use crate::comodule::{induce, RelativeComodule};
use crate::coring::Coring;
use crate::error::{Error, Result};
use crate::linalg::{Field, Subspace};
use crate::nat_trans::ZData;
use crate::tensor::{tensor_over_ring, TensorOverRing};

/// An `(S, R)`-bimodule `U` and a relative comodule `V ∈ ᶜ_R M_S`, with the
/// tensor products every procedure in this module needs.
#[derive(Clone, Debug)]
pub struct InductionPair {
    u: Bimodule,
    v: RelativeComodule,
    /// `V ⊗_S U`.
    vu: TensorOverRing,
    /// `U ⊗_R V`.
    uv: TensorOverRing,
    zdata: ZData,
    centralizer: Subspace,
}

impl InductionPair {
    pub fn new(u: &Bimodule, v: &RelativeComodule) -> Result<InductionPair> {
        if u.right_ring() != v.coring().ring() {
            return Err(Error::RingMismatch("U must be a right module over the coring's ring".into()));
        }
        if u.left_ring() != v.right_ring() {
            return Err(Error::RingMismatch("left ring of U differs from the right ring of V".into()));
        }
        let (z, vu) = induce(v, u)?;
        let uv = tensor_over_ring(u, v.carrier())?;
        let centralizer = centralizer(uv.result())?;
        let zdata = ZData::new(&z)?;
        Ok(InductionPair { u: u.clone(), v: v.clone(), vu, uv, zdata, centralizer })
    }

    pub fn field(&self) -> Field {
        self.u.field()
    }

    pub fn u(&self) -> &Bimodule {
        &self.u
    }

    pub fn v(&self) -> &RelativeComodule {
        &self.v
    }

    pub fn coring(&self) -> &Arc<Coring> {
        self.v.coring()
    }

    pub fn vu(&self) -> &TensorOverRing {
        &self.vu
    }

    pub fn uv(&self) -> &TensorOverRing {
        &self.uv
    }

    /// `Z = V ⊗_S U` and `Z ⊗_R C`.
    pub fn zdata(&self) -> &ZData {
        &self.zdata
    }

    /// `(U ⊗_R V)^S`.
    pub fn centralizer(&self) -> &Subspace {
        &self.centralizer
    }

    /// `S` as a bimodule over itself.
    pub fn s_regular(&self) -> Bimodule {
        Bimodule::regular(self.v.right_ring().clone())
    }
}
