//! Separability of the two functors of an adjoint pair given by a dual
//! basis. Each side is a linear condition on one Hom space, so every
//! verdict is `Found` or `No`.

use super::first_kind::verify_first_kind;
use super::second_kind::verify_second_kind;
use super::{DualBasisFirstKind, DualBasisSecondKind, InductionPair};
use crate::bimodule::{hom_space, Sides};
use crate::error::{Error, Result};
use crate::linalg::{Field, LinearSystem, Mat};
use crate::nat_trans::bullet_space;
use crate::verdict::{Trace, Verdict, Verification};

/// `v_side` decides separability of `V ⊗_S −`, `u_side` that of `U ⊗_R −`.
/// A found witness is the map or element solving the linear condition.
#[derive(Clone, Debug)]
pub struct SeparabilityReport {
    pub v_side: Verdict<Mat>,
    pub u_side: Verdict<Mat>,
}

/// Solves `f(X) = rhs` for `X` in the span of `family`.
fn decide(field: Field, family: &[Mat], zero: Mat, f: impl Fn(&Mat) -> Mat, rhs: &Mat, what: &str) -> Verdict<Mat> {
    let mut trace = Trace::default();
    trace.note(format!("{what}: {} unknowns", family.len()));
    let candidate = if family.is_empty() {
        Some(zero)
    } else {
        let mut sys = LinearSystem::new(field, family);
        sys.equate(&f, rhs);
        sys.solve().map(|s| s.particular_map())
    };
    match candidate {
        Some(x) if f(&x) == *rhs => Verdict::found(x, trace),
        _ => {
            trace.note("the linear system is inconsistent");
            Verdict::no(trace)
        }
    }
}

fn require(v: Verification) -> Result<()> {
    match v.first_failure() {
        None => Ok(()),
        Some(c) => Err(Error::UnverifiedWitness(c.equation.clone())),
    }
}

/// `h(p(c₍₁₎) ⊗ c₍₂₎)` as a map `C → R`.
fn counit_candidate(pair: &InductionPair, p: &Mat, h: &Mat) -> Mat {
    let coring = pair.coring();
    let hp = h.mul(pair.zdata().zc().project());
    hp.mul(&Mat::kron_mul(p, &coring.carrier().identity(), coring.comult_plain()))
}

fn unit_column(pair: &InductionPair) -> Mat {
    Mat::column_vector(pair.field(), pair.v().right_ring().unit())
}

/// For a first kind dual basis `(e, h)`: `V ⊗_S −` is separable iff some
/// `E ∈ _S Hom_S(U ⊗_R V, S)` has `E(e) = 1`, and `U ⊗_R −` is separable
/// iff some colinear `p: C → V ⊗_S U` has `h(p(c₍₁₎) ⊗ c₍₂₎) = ε(c)`.
pub fn separability_first(pair: &InductionPair, witness: &DualBasisFirstKind) -> Result<SeparabilityReport> {
    require(verify_first_kind(pair, &witness.e, &witness.h)?)?;
    let field = pair.field();
    let e_space = hom_space(pair.uv().result(), &pair.s_regular(), Sides::Both)?;
    let v_side =
        decide(field, e_space.basis(), e_space.zero_map(), |x| x.mul(&witness.e), &unit_column(pair), "E(e) = 1");
    let p_space = pair.zdata().p_space()?;
    let u_side = decide(
        field,
        p_space.basis(),
        p_space.zero_map(),
        |p| counit_candidate(pair, p, &witness.h),
        pair.coring().counit(),
        "h(p(c(1)) ⊗ c(2)) = eps(c)",
    );
    Ok(SeparabilityReport { v_side, u_side })
}

/// For a second kind dual basis `(p, E)`: `V ⊗_S −` is separable iff some
/// `e ∈ (U ⊗_R V)^S` has `E(e) = 1`, and `U ⊗_R −` is separable iff some
/// compatible `h` has `h(p(c₍₁₎) ⊗ c₍₂₎) = ε(c)`.
pub fn separability_second(pair: &InductionPair, witness: &DualBasisSecondKind) -> Result<SeparabilityReport> {
    require(verify_second_kind(pair, &witness.p, &witness.big_e)?)?;
    let field = pair.field();
    let centralizer: Vec<Mat> = pair.centralizer().basis().iter().map(|b| Mat::column_vector(field, b)).collect();
    let v_side = decide(
        field,
        &centralizer,
        Mat::zeros(field, pair.uv().dim(), 1),
        |e| witness.big_e.mul(e),
        &unit_column(pair),
        "E(e) = 1",
    );
    let bullet = bullet_space(pair.zdata());
    let u_side = decide(
        field,
        bullet.basis(),
        bullet.zero_map(),
        |h| counit_candidate(pair, &witness.p, h),
        pair.coring().counit(),
        "h(p(c(1)) ⊗ c(2)) = eps(c)",
    );
    Ok(SeparabilityReport { v_side, u_side })
}
