//! Comodule dual bases of the second kind: pairs `(p, E)` exhibiting
//! `V ⊗_S −` as a right adjoint of `U ⊗_R −`.

use super::bilinear::{self, Bilinear, Outcome};
use super::InductionPair;
use crate::bimodule::{check_intertwines, hom_space, Bimodule, Sides};
use crate::comodule::{check_colinear, RelativeComodule};
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat, Scalar};
use crate::tensor::{left_unitor, right_unitor};
use crate::verdict::{Check, Status, Trace, Verdict, Verification};

/// `p: C → V ⊗_S U` (colinear, `R`-bilinear) and `E: U ⊗_R V → S`
/// (`S`-bilinear), both in quotient coordinates.
#[derive(Clone, Debug)]
pub struct DualBasisSecondKind {
    pub p: Mat,
    pub big_e: Mat,
    pub verification: Verification,
}

const LEFT_DIAGRAM: &str = "p(v(-1))^V E(p(v(-1))^U ⊗ v(0)) = v";
const RIGHT_DIAGRAM: &str = "E(u ⊗ p(c)^V) p(c)^U = u eps(c)";

/// Precomputed maps for the two diagrams.
struct Diagrams {
    field: Field,
    dims: (usize, usize),
    v_coaction: Mat,
    v_right: Mat,
    u_left: Mat,
    /// `u ⊗ c ↦ u·ε(c)`.
    u_counit: Mat,
    vu_section: Mat,
    uv_project: Mat,
}

impl Diagrams {
    fn new(pair: &InductionPair) -> Diagrams {
        let u = pair.u();
        let v = pair.v();
        let coring = pair.coring();
        Diagrams {
            field: pair.field(),
            dims: (u.dim(), v.dim()),
            v_coaction: v.coaction_plain().clone(),
            v_right: v.carrier().right_act_plain(),
            u_left: u.left_act_plain(),
            u_counit: u.right_act_plain().mul(&u.identity().kron(coring.counit())),
            vu_section: pair.vu().section().clone(),
            uv_project: pair.uv().project().clone(),
        }
    }

    /// `p` and `E` on plain tensors.
    fn lift_p(&self, p: &Mat) -> Mat {
        self.vu_section.mul(p)
    }

    fn lift_e(&self, e: &Mat) -> Mat {
        e.mul(&self.uv_project)
    }

    /// `v ↦ p(v₍₋₁₎) ⊗ v₍₀₎` on plain `V ⊗ U ⊗ V`.
    fn left_prefix(&self, dp: &Mat) -> Mat {
        Mat::kron_mul(dp, &Mat::identity(self.field, self.dims.1), &self.v_coaction)
    }

    fn left_side(&self, prefix: &Mat, ep: &Mat) -> Mat {
        self.v_right.mul(&Mat::slot_mul(self.dims.1, ep, 1, prefix))
    }

    /// `u ⊗ c ↦ u ⊗ p(c)` on plain `U ⊗ V ⊗ U`.
    fn right_prefix(&self, dp: &Mat) -> Mat {
        let (du, _) = self.dims;
        let dc = dp.cols();
        Mat::slot_mul(du, dp, 1, &Mat::identity(self.field, du * dc))
    }

    fn right_side(&self, prefix: &Mat, ep: &Mat) -> Mat {
        self.u_left.mul(&Mat::slot_mul(1, ep, self.dims.0, prefix))
    }

    fn evaluate(&self, p: &Mat, e: &Mat) -> (Mat, Mat) {
        let dp = self.lift_p(p);
        let ep = self.lift_e(e);
        (self.left_side(&self.left_prefix(&dp), &ep), self.right_side(&self.right_prefix(&dp), &ep))
    }

    fn diagrams(&self, p: &Mat, e: &Mat) -> Verification {
        let (left, right) = self.evaluate(p, e);
        let mut v = Verification::default();
        v.push(Check::compare(LEFT_DIAGRAM, &left, &Mat::identity(self.field, self.dims.1)));
        v.push(Check::compare(RIGHT_DIAGRAM, &right, &self.u_counit));
        v
    }
}

fn check_shapes(pair: &InductionPair, p: &Mat, e: &Mat) -> Result<()> {
    let p_shape = (pair.vu().dim(), pair.coring().dim());
    let e_shape = (pair.v().right_ring().dim(), pair.uv().dim());
    if p.shape() != p_shape {
        return Err(Error::InputShape(format!("p has shape {:?}, expected {:?}", p.shape(), p_shape)));
    }
    if e.shape() != e_shape {
        return Err(Error::InputShape(format!("E has shape {:?}, expected {:?}", e.shape(), e_shape)));
    }
    Ok(())
}

/// Checks that `p` and `E` are maps of the required kind, then evaluates
/// both diagrams on every basis element.
pub fn verify_second_kind(pair: &InductionPair, p: &Mat, big_e: &Mat) -> Result<Verification> {
    check_shapes(pair, p, big_e)?;
    let c = RelativeComodule::from_coring(pair.coring().clone());
    check_colinear(&c, pair.zdata().z(), p, true)?;
    check_intertwines(pair.uv().result(), &pair.s_regular(), big_e, Sides::Both)?;
    Ok(Diagrams::new(pair).diagrams(p, big_e))
}

/// `p(c) = c ⊗ 1` and `E(r ⊗ c) = ε(r·c)` for `U = R` and `V = C`.
pub fn canonical_second_kind(pair: &InductionPair) -> Result<(Mat, Mat)> {
    let coring = pair.coring();
    let r = Bimodule::regular(coring.ring().clone());
    if pair.u() != &r || pair.v().carrier() != coring.carrier() || pair.v().coaction() != coring.comult() {
        return Err(Error::InputShape("the canonical pair needs U = R and V = C".into()));
    }
    let (_, p) = right_unitor(coring.carrier())?;
    let (act, _) = left_unitor(coring.carrier())?;
    Ok((p, coring.counit().mul(&act)))
}

struct SecondKindProblem<'a> {
    diagrams: &'a Diagrams,
    /// Lifted bases of the two parameter spaces.
    p_basis: Vec<Mat>,
    e_basis: Vec<Mat>,
    rhs: Vec<Mat>,
}

fn combine_lifted(field: Field, basis: &[Mat], coeffs: &[Scalar]) -> Mat {
    let mut out = Mat::zeros(field, basis[0].rows(), basis[0].cols());
    for (c, b) in coeffs.iter().zip(basis) {
        if !c.is_zero() {
            out = out.add(&b.scale(c));
        }
    }
    out
}

impl Bilinear for SecondKindProblem<'_> {
    fn field(&self) -> Field {
        self.diagrams.field
    }

    fn x_dim(&self) -> usize {
        self.p_basis.len()
    }

    fn y_dim(&self) -> usize {
        self.e_basis.len()
    }

    fn rhs(&self) -> &[Mat] {
        &self.rhs
    }

    fn with_x(&self, x: &[Scalar]) -> Vec<Vec<Mat>> {
        let d = self.diagrams;
        let dp = combine_lifted(d.field, &self.p_basis, x);
        let (lp, rp) = (d.left_prefix(&dp), d.right_prefix(&dp));
        self.e_basis.iter().map(|ep| vec![d.left_side(&lp, ep), d.right_side(&rp, ep)]).collect()
    }

    fn with_y(&self, y: &[Scalar]) -> Vec<Vec<Mat>> {
        let d = self.diagrams;
        let ep = combine_lifted(d.field, &self.e_basis, y);
        self.p_basis
            .iter()
            .map(|dp| vec![d.left_side(&d.left_prefix(dp), &ep), d.right_side(&d.right_prefix(dp), &ep)])
            .collect()
    }
}

/// Searches for a dual basis of the second kind over the colinear maps
/// `C → V ⊗_S U` and the bimodule maps `U ⊗_R V → S`.
pub fn find_second_kind(pair: &InductionPair, budget: u64, seed: u64) -> Verdict<DualBasisSecondKind> {
    let mut trace = Trace::seeded(seed, budget);
    let diagrams = Diagrams::new(pair);
    let p_space = match pair.zdata().p_space() {
        Ok(s) => s,
        Err(e) => {
            trace.note(format!("colinear Hom space unavailable: {e}"));
            return Verdict::inconclusive(Status::Unknown, trace);
        }
    };
    let e_space = match hom_space(pair.uv().result(), &pair.s_regular(), Sides::Both) {
        Ok(s) => s,
        Err(e) => {
            trace.note(format!("bimodule Hom space unavailable: {e}"));
            return Verdict::inconclusive(Status::Unknown, trace);
        }
    };
    trace.note(format!("colinear Hom dimension {}, bimodule Hom dimension {}", p_space.dim(), e_space.dim()));
    let problem = SecondKindProblem {
        diagrams: &diagrams,
        p_basis: p_space.basis().iter().map(|p| diagrams.lift_p(p)).collect(),
        e_basis: e_space.basis().iter().map(|e| diagrams.lift_e(e)).collect(),
        rhs: vec![Mat::identity(pair.field(), pair.v().dim()), diagrams.u_counit.clone()],
    };
    let build = |x: &[Scalar], y: &[Scalar]| (p_space.combine(x), e_space.combine(y));
    let accept = |x: &[Scalar], y: &[Scalar]| {
        let (p, e) = build(x, y);
        diagrams.diagrams(&p, &e).holds()
    };
    match bilinear::search(&problem, budget, seed, &mut trace, accept) {
        Outcome::Found { x, y } => {
            let (p, big_e) = build(&x, &y);
            let verification = diagrams.diagrams(&p, &big_e);
            Verdict::found(DualBasisSecondKind { p, big_e, verification }, trace)
        }
        Outcome::Infeasible(why) => {
            trace.note(why);
            Verdict::no(trace)
        }
        Outcome::Exhausted => Verdict::inconclusive(Status::Unknown, trace),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::Algebra;
    use crate::catalog;
    use crate::coring::Coring;

    fn q() -> Field {
        Field::Rationals
    }

    fn coring_pair(c: Coring) -> InductionPair {
        let c = Arc::new(c);
        InductionPair::new(&Bimodule::regular(c.ring().clone()), &RelativeComodule::from_coring(c)).unwrap()
    }

    #[test]
    fn canonical_pair_for_catalog_corings() {
        for c in [
            Coring::trivial(Algebra::base(q())),
            Coring::trivial(Algebra::matrix(q(), 2)),
            Coring::trivial(Algebra::dual_numbers(q())),
            catalog::matrix_coalgebra(q(), 2),
            catalog::grouplike_coalgebra(q(), 3),
        ] {
            let pair = coring_pair(c);
            let (p, e) = canonical_second_kind(&pair).unwrap();
            assert!(verify_second_kind(&pair, &p, &e).unwrap().holds());
            let doubled = e.scale(&q().from_i64(2));
            assert!(!verify_second_kind(&pair, &p, &doubled).unwrap().holds());
        }
    }

    #[test]
    fn diagrams_match_kronecker_products() {
        let pair = coring_pair(catalog::matrix_coalgebra(q(), 2));
        let (p, e) = canonical_second_kind(&pair).unwrap();
        let d = Diagrams::new(&pair);
        let (u, v) = (pair.u(), pair.v().carrier());
        let dp = d.lift_p(&p);
        let ep = d.lift_e(&e);
        let left = v
            .right_act_plain()
            .mul(&v.identity().kron(&ep))
            .mul(&dp.kron(&v.identity()))
            .mul(pair.v().coaction_plain());
        let right = u.left_act_plain().mul(&ep.kron(&u.identity())).mul(&u.identity().kron(&dp));
        assert_eq!(d.evaluate(&p, &e), (left, right));
    }

    #[test]
    fn membership_errors() {
        let pair = coring_pair(catalog::matrix_coalgebra(q(), 2));
        let (p, e) = canonical_second_kind(&pair).unwrap();
        let mut bent = p.clone();
        bent.set(0, 1, q().one());
        assert!(matches!(verify_second_kind(&pair, &bent, &e), Err(Error::NotColinear(_))));
        let r = Arc::new(Coring::trivial(Algebra::matrix(q(), 2)));
        let pair = coring_pair(Coring::clone(&r));
        let (p, e) = canonical_second_kind(&pair).unwrap();
        let mut bent = e.clone();
        bent.set(0, 1, q().one());
        assert!(matches!(verify_second_kind(&pair, &p, &bent), Err(Error::NotBimoduleMap(_))));
    }

    #[test]
    fn search_finds_a_verified_pair() {
        let pair = coring_pair(catalog::matrix_coalgebra(q(), 2));
        let v = find_second_kind(&pair, 32, 3);
        assert_eq!(v.status, Status::Found);
        let w = v.witness.unwrap();
        assert!(verify_second_kind(&pair, &w.p, &w.big_e).unwrap().holds());
    }
}
