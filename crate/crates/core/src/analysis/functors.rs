//! Frobenius pairs, equivalences, the forgetful functor and composites of
//! representable functors.

use serde::Serialize;

use super::first_kind::{find_first_kind, representability_report};
use super::second_kind::find_second_kind;
use super::{DualBasisFirstKind, DualBasisSecondKind, InductionPair, RepresentabilityReport};
use crate::bimodule::{hom_space, random_iso_witness, Bimodule, IsoWitness, Sides};
use crate::comodule::{colinear_hom, comodule_hom, induce, LeftComodule, RelativeComodule};
use crate::error::{Error, Result};
use crate::nat_trans::{identity_iso_search, IdentityIso};
use crate::verdict::{Check, Status, Trace, Verdict, Verification};

#[derive(Clone, Debug)]
pub struct FrobeniusReport {
    pub status: Status,
    pub first: Verdict<DualBasisFirstKind>,
    pub second: Verdict<DualBasisSecondKind>,
}

/// `U ⊗_R −` is Frobenius when `V ⊗_S −` is both a left and a right
/// adjoint, witnessed by dual bases of both kinds.
pub fn frobenius_check(pair: &InductionPair, budget: u64, seed: u64) -> FrobeniusReport {
    let first = find_first_kind(pair, budget, seed);
    let second = find_second_kind(pair, budget, seed);
    let status = match (first.status, second.status) {
        (Status::Found, Status::Found) => Status::Found,
        (Status::No, _) | (_, Status::No) => Status::No,
        _ => Status::Unknown,
    };
    FrobeniusReport { status, first, second }
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub status: Status,
    /// `U ⊗_R V ≅ S` as `S`-bimodules.
    pub iso: Option<Verdict<IsoWitness>>,
    /// `V ⊗_S U ⊗_R − ≅ id` through `(p, h)`.
    pub identity: Option<Verdict<IdentityIso>>,
    pub verification: Verification,
    pub trace: Trace,
}

/// Decides whether `U ⊗_R −` is an equivalence with quasi-inverse
/// `V ⊗_S −` for the given `V`.
pub fn equivalence_check(pair: &InductionPair, trials: u64, seed: u64) -> EquivalenceReport {
    let mut trace = Trace::seeded(seed, trials);
    let uv = pair.uv().result();
    let s = pair.s_regular();
    let report =
        |status, iso, identity, verification, trace| EquivalenceReport { status, iso, identity, verification, trace };
    if uv.dim() != s.dim() {
        trace.note(format!("dim(U ⊗ V) = {} differs from dim(S) = {}", uv.dim(), s.dim()));
        return report(Status::No, None, None, Verification::default(), trace);
    }
    let homs = hom_space(uv, &s, Sides::Both).expect("both sides are S-bimodules");
    if s.dim() > 0 && homs.dim() == 0 {
        trace.note("no nonzero S-bimodule map U ⊗ V -> S");
        return report(Status::No, None, None, Verification::default(), trace);
    }
    let iso = random_iso_witness(uv, &s, Sides::Both, trials, seed);
    let Some(w) = &iso.witness else {
        trace.note("no isomorphism U ⊗ V -> S found");
        return report(iso.status, Some(iso), None, Verification::default(), trace);
    };
    let mut verification = Verification::default();
    let back = hom_space(&s, uv, Sides::Both).expect("both sides are S-bimodules");
    verification.push(Check::flag(
        "U ⊗ V ≅ S as S-bimodules",
        homs.contains(&w.map)
            && back.contains(&w.inverse)
            && w.map.mul(&w.inverse).is_identity()
            && w.inverse.mul(&w.map).is_identity(),
    ));
    let identity = identity_iso_search(pair.zdata(), trials, seed);
    if let Some(id) = &identity.witness {
        for c in &id.verification.checks {
            verification.push(c.clone());
        }
    }
    let status = match identity.status {
        Status::Found if verification.holds() => Status::Found,
        Status::Found => Status::Unknown,
        other => other,
    };
    report(status, Some(iso), Some(identity), verification, trace)
}

/// Representability of the forgetful functor from left `C`-comodules to
/// left `R`-modules, through `V ∈ ᶜ_R M_R` and `U = R`.
pub fn forgetful_representability(v: &RelativeComodule, budget: u64, seed: u64) -> Result<RepresentabilityReport> {
    if v.right_ring() != v.coring().ring() {
        return Err(Error::RingMismatch("V must be an (R, R)-bimodule".into()));
    }
    let u = Bimodule::regular(v.coring().ring().clone());
    representability_report(&InductionPair::new(&u, v)?, budget, seed)
}

/// `V ⊗_S W ∈ ᶜ_R M_T` with coaction `ρ_V ⊗ id`.
pub fn compose_representable(v: &RelativeComodule, w: &Bimodule) -> Result<RelativeComodule> {
    Ok(induce(v, w)?.0)
}

/// `dim ᶜ_R Hom(V ⊗_S W, M)` and `dim _S Hom(W, ᶜ_R Hom(V, M))`, each
/// computed from its own linear system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomDimensionIdentity {
    pub composite: usize,
    pub nested: usize,
}

impl HomDimensionIdentity {
    pub fn holds(&self) -> bool {
        self.composite == self.nested
    }
}

pub fn hom_dimension_identity(v: &RelativeComodule, w: &Bimodule, m: &LeftComodule) -> Result<HomDimensionIdentity> {
    let vw = compose_representable(v, w)?;
    let composite = colinear_hom(&vw, m, false)?.dim();
    let inner = comodule_hom(v, m)?;
    let nested = hom_space(w, &inner.module, Sides::Left)?.dim();
    Ok(HomDimensionIdentity { composite, nested })
}
