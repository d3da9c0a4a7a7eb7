//! Worked examples with hand-built witnesses.

mod common;

use std::sync::Arc;

use common::*;
use corep::algebra::Algebra;
use corep::analysis::{
    find_first_kind, forgetful_representability, verify_first_kind, verify_second_kind, InductionPair,
};
use corep::bimodule::Bimodule;
use corep::catalog;
use corep::comodule::{induce_comodule, RelativeComodule};
use corep::coring::Coring;
use corep::linalg::{Field, Mat};
use corep::verdict::Status;

/// `e = Σ uᵢ ⊗ uᵢ*` and `h` the evaluation pairing, for `U = ℚⁿ` and
/// `V = U*` over the trivial coring of `ℚ`.
fn evaluation_witness(n: usize) -> (InductionPair, Mat, Mat) {
    let u = Bimodule::vector_space(q(), n);
    let dual = catalog::dual_pair(&u).unwrap();
    let pair = dual_module_pair(&u);
    let f = &dual.functionals;
    assert_eq!(f.len(), n);

    // Row a of `fm` is the functional f_a; uᵢ* = Σ_a c[i][a] f_a.
    let fm = Mat::from_rows(q(), &f.iter().map(|fa| fa.row(0).to_vec()).collect::<Vec<_>>()).unwrap();
    let c = fm.inverse().unwrap();

    let uv = pair.uv();
    let mut e_plain = Mat::zeros(q(), uv.plain_dim(), 1);
    for i in 0..n {
        for a in 0..n {
            e_plain.set(i * n + a, 0, c.get(i, a).clone());
        }
    }
    let e = uv.project().mul(&e_plain);

    let vu = pair.vu();
    let mut h_vu = Mat::zeros(q(), 1, vu.plain_dim());
    for (a, fa) in f.iter().enumerate() {
        for j in 0..n {
            h_vu.set(0, a * n + j, fa.get(0, j).clone());
        }
    }
    let h_z = h_vu.mul(vu.section());
    let zc = pair.zdata().zc();
    assert_eq!(zc.plain_dim(), h_z.cols());
    let h = h_z.mul(zc.section());
    (pair, e, h)
}

#[test]
fn evaluation_pairing_is_a_first_kind_dual_basis() {
    for n in 1..=3 {
        let (pair, e, h) = evaluation_witness(n);
        let v = verify_first_kind(&pair, &e, &h).unwrap();
        assert!(v.holds(), "n = {n}: {:?}", v.first_failure());
    }
}

#[test]
fn doubled_e_fails_the_unit_identity() {
    let (pair, e, h) = evaluation_witness(2);
    let two = Field::Rationals.from_i64(2);
    let v = verify_first_kind(&pair, &e.scale(&two), &h).unwrap();
    assert!(!v.holds());
    assert_eq!(v.first_failure().unwrap().equation, "sum e1 h(e2 ⊗ u ⊗ c) = u eps(c)");
}

#[test]
fn zero_h_fails_both_identities() {
    let (pair, e, h) = evaluation_witness(2);
    let zero = Mat::zeros(q(), h.rows(), h.cols());
    let v = verify_first_kind(&pair, &e, &zero).unwrap();
    let failing: Vec<_> = v.checks.iter().filter(|c| !c.holds).map(|c| c.equation.as_str()).collect();
    assert_eq!(failing, ["sum e1 h(e2 ⊗ u ⊗ c) = u eps(c)", "sum h(v ⊗ e1 ⊗ e2(-1)) e2(0) = v"]);
}

#[test]
fn wrong_shapes_are_input_errors() {
    let (pair, e, h) = evaluation_witness(2);
    assert!(verify_first_kind(&pair, &h, &e).is_err());
    assert!(verify_first_kind(&pair, &e.transpose(), &h).is_err());
}

#[test]
fn zero_u_has_a_witness_only_for_zero_v() {
    let k = Algebra::base(q());
    let t = Arc::new(Coring::trivial(k.clone()));
    let u0 = Bimodule::vector_space(q(), 0);

    let nonzero = RelativeComodule::from_coring(t.clone());
    let pair = InductionPair::new(&u0, &nonzero).unwrap();
    assert_eq!(find_first_kind(&pair, 16, 0).status, Status::No);

    let zero = induce_comodule(&nonzero, &Bimodule::vector_space(q(), 0)).unwrap();
    assert_eq!(zero.carrier().dim(), 0);
    let pair = InductionPair::new(&u0, &zero).unwrap();
    let v = find_first_kind(&pair, 16, 0);
    assert_eq!(v.status, Status::Found);
    assert!(v.witness.unwrap().verification.holds());
}

#[test]
fn forgetful_functor_of_zero_comodule_is_not_representable() {
    let c = Arc::new(catalog::matrix_coalgebra(q(), 2));
    let zero = induce_comodule(&RelativeComodule::from_coring(c), &Bimodule::vector_space(q(), 0)).unwrap();
    let report = forgetful_representability(&zero, 16, 0).unwrap();
    assert_eq!(report.status, Status::No);
}

#[test]
fn forgetful_functor_of_a_coring_is_representable() {
    for n in 1..=2 {
        let c = Arc::new(catalog::matrix_coalgebra(q(), n));
        let report = forgetful_representability(&RelativeComodule::from_coring(c), 64, 1).unwrap();
        assert_eq!(report.status, Status::Found, "matrix/{n}");
        assert!(report.triangles.unwrap().holds());
    }
}

#[test]
fn identity_and_counit_form_a_second_kind_dual_basis_for_the_coring() {
    // With U = R and V = C, p = id_C and E = ε.
    let c = Arc::new(catalog::matrix_coalgebra(q(), 2));
    let u = Bimodule::regular(c.ring().clone());
    let pair = InductionPair::new(&u, &RelativeComodule::from_coring(c)).unwrap();
    let (p, big_e) = corep::analysis::canonical_second_kind(&pair).unwrap();
    assert!(verify_second_kind(&pair, &p, &big_e).unwrap().holds());
    let v = verify_second_kind(&pair, &p, &big_e.scale(&q().from_i64(3))).unwrap();
    assert!(!v.holds());
}
