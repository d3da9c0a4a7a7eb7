//! Comodule dual bases of the first kind: pairs `(e, h)` exhibiting
//! `V ⊗_S −` as a left adjoint of `U ⊗_R −`.

use serde::Serialize;

use super::bilinear::{self, Bilinear, Outcome};
use super::InductionPair;
use crate::error::{Error, Result};
use crate::linalg::{combine_family, Field, Mat, Scalar};
use crate::nat_trans::bullet_space;
use crate::tensor::tensor_over_ring;
use crate::verdict::{Check, Status, Trace, Verdict, Verification};

/// `e ∈ (U ⊗_R V)^S` in quotient coordinates (a column) and
/// `h: V ⊗_S U ⊗_R C → R` on quotient coordinates of `Z ⊗_R C`.
#[derive(Clone, Debug)]
pub struct DualBasisFirstKind {
    pub e: Mat,
    pub h: Mat,
    pub verification: Verification,
}

/// `h` read on plain tensors `v ⊗ u ⊗ c`, sliced two ways.
struct HPrime {
    /// Indexed by the `V` coordinate: `r × (u·c)` blocks.
    by_v: Vec<Mat>,
    /// Indexed by the `U` and `C` coordinates: `r × v` blocks.
    by_uc: Vec<Vec<Mat>>,
}

/// Precomputed pieces for evaluating the two dual basis identities without
/// forming iterated tensor products.
pub(crate) struct Blocks {
    field: Field,
    dims: (usize, usize, usize, usize),
    /// `A_i`, column `s` is `u_i · r_s`.
    u_times_ring: Vec<Mat>,
    /// `B_l`, column `s` is `r_s · v_l`.
    ring_times_v: Vec<Mat>,
    /// `ρ_V` on plain `C ⊗ V`.
    coaction: Mat,
    /// `u ⊗ c ↦ u·ε(c)`.
    u_counit: Mat,
    /// `P_ZC ∘ (P_VU ⊗ id_C)`.
    to_zc: Mat,
    uv_section: Mat,
}

impl Blocks {
    pub(crate) fn new(pair: &InductionPair) -> Blocks {
        let field = pair.field();
        let (u, v) = (pair.u(), pair.v().carrier());
        let coring = pair.coring();
        let (du, dv, dc, dr) = (u.dim(), v.dim(), coring.dim(), coring.ring().dim());
        let u_times_ring = (0..du)
            .map(|i| {
                let cols: Vec<Vec<Scalar>> = u.right_basis_actions().iter().map(|a| a.column(i)).collect();
                Mat::from_columns(field, du, &cols)
            })
            .collect();
        let ring_times_v = (0..dv)
            .map(|l| {
                let cols: Vec<Vec<Scalar>> = v.left_basis_actions().iter().map(|a| a.column(l)).collect();
                Mat::from_columns(field, dv, &cols)
            })
            .collect();
        let u_counit = u.right_act_plain().mul(&u.identity().kron(coring.counit()));
        let zc = pair.zdata().zc();
        let to_zc = Mat::mul_kron(zc.project(), pair.vu().project(), &coring.carrier().identity());
        Blocks {
            field,
            dims: (du, dv, dc, dr),
            u_times_ring,
            ring_times_v,
            coaction: pair.v().coaction_plain().clone(),
            u_counit,
            to_zc,
            uv_section: pair.uv().section().clone(),
        }
    }

    fn h_prime(&self, h: &Mat) -> HPrime {
        let (du, dv, dc, dr) = self.dims;
        let full = h.mul(&self.to_zc);
        let by_v = (0..dv)
            .map(|a| {
                let mut m = Mat::zeros(self.field, dr, du * dc);
                for r in 0..dr {
                    for col in 0..du * dc {
                        m.set(r, col, full.get(r, a * du * dc + col).clone());
                    }
                }
                m
            })
            .collect();
        let by_uc = (0..du)
            .map(|i| {
                (0..dc)
                    .map(|k| {
                        let mut m = Mat::zeros(self.field, dr, dv);
                        for r in 0..dr {
                            for a in 0..dv {
                                m.set(r, a, full.get(r, (a * du + i) * dc + k).clone());
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        HPrime { by_v, by_uc }
    }

    /// Plain coordinates of `e`.
    fn lift(&self, e: &Mat) -> Vec<Scalar> {
        self.uv_section.mul(e).column(0)
    }

    /// `u ⊗ c ↦ Σ e¹ h(e² ⊗ u ⊗ c)`.
    fn unit_side(&self, ehat: &[Scalar], hp: &HPrime) -> Mat {
        let (du, dv, dc, dr) = self.dims;
        let mut out = Mat::zeros(self.field, du, du * dc);
        for (a, block) in hp.by_v.iter().enumerate() {
            let mut g = Mat::zeros(self.field, du, dr);
            let mut any = false;
            for (i, ai) in self.u_times_ring.iter().enumerate() {
                let c = &ehat[i * dv + a];
                if !c.is_zero() {
                    g = g.add(&ai.scale(c));
                    any = true;
                }
            }
            if any {
                out = out.add(&g.mul(block));
            }
        }
        out
    }

    /// Coefficients `Σ_a ê_{ia} ρ(v_a)_{kl}`, indexed `[i][k][l]`.
    fn coaction_coefficients(&self, ehat: &[Scalar]) -> Vec<Vec<Vec<Scalar>>> {
        let (du, dv, dc, _) = self.dims;
        (0..du)
            .map(|i| {
                (0..dc)
                    .map(|k| {
                        (0..dv)
                            .map(|l| {
                                let mut acc = self.field.zero();
                                for a in 0..dv {
                                    let e = &ehat[i * dv + a];
                                    let t = self.coaction.get(k * dv + l, a);
                                    if !e.is_zero() && !t.is_zero() {
                                        acc.add_mul_assign(e, t);
                                    }
                                }
                                acc
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// `f_l(v) = Σ ê_{ia} ρ(v_a)_{kl} h(v ⊗ u_i ⊗ c_k)`, so that
    /// `Σ_l f_l(v)·v_l = Σ h(v ⊗ e¹ ⊗ e²₍₋₁₎) e²₍₀₎`.
    fn functionals(&self, ehat: &[Scalar], hp: &HPrime) -> Vec<Mat> {
        let (du, dv, dc, dr) = self.dims;
        let coef = self.coaction_coefficients(ehat);
        (0..dv)
            .map(|l| {
                let mut f = Mat::zeros(self.field, dr, dv);
                for i in 0..du {
                    for k in 0..dc {
                        let c = &coef[i][k][l];
                        if !c.is_zero() {
                            f = f.add(&hp.by_uc[i][k].scale(c));
                        }
                    }
                }
                f
            })
            .collect()
    }

    /// `v ↦ Σ h(v ⊗ e¹ ⊗ e²₍₋₁₎) e²₍₀₎`.
    fn counit_side(&self, ehat: &[Scalar], hp: &HPrime) -> Mat {
        let dv = self.dims.1;
        let mut out = Mat::zeros(self.field, dv, dv);
        for (b, f) in self.ring_times_v.iter().zip(self.functionals(ehat, hp)) {
            if !f.is_zero() {
                out = out.add(&b.mul(&f));
            }
        }
        out
    }
}

const UNIT_EQUATION: &str = "sum e1 h(e2 ⊗ u ⊗ c) = u eps(c)";
const COUNIT_EQUATION: &str = "sum h(v ⊗ e1 ⊗ e2(-1)) e2(0) = v";

fn check_shapes(pair: &InductionPair, e: &Mat, h: &Mat) -> Result<()> {
    let e_shape = (pair.uv().dim(), 1);
    let h_shape = (pair.coring().ring().dim(), pair.zdata().zc().dim());
    if e.shape() != e_shape {
        return Err(Error::InputShape(format!("e has shape {:?}, expected {:?}", e.shape(), e_shape)));
    }
    if h.shape() != h_shape {
        return Err(Error::InputShape(format!("h has shape {:?}, expected {:?}", h.shape(), h_shape)));
    }
    Ok(())
}

fn verify_with(pair: &InductionPair, blocks: &Blocks, e: &Mat, h: &Mat) -> Verification {
    let mut v = Verification::default();
    v.push(Check::flag("e is centralized by S", pair.centralizer().contains(&e.column(0))));
    for c in pair.zdata().check_bullet(h).checks {
        v.push(c);
    }
    let ehat = blocks.lift(e);
    let hp = blocks.h_prime(h);
    v.push(Check::compare(UNIT_EQUATION, &blocks.unit_side(&ehat, &hp), &blocks.u_counit));
    let dv = blocks.dims.1;
    v.push(Check::compare(COUNIT_EQUATION, &blocks.counit_side(&ehat, &hp), &Mat::identity(blocks.field, dv)));
    v
}

/// Checks membership of `e` and `h` and both dual basis identities on every
/// basis element.
pub fn verify_first_kind(pair: &InductionPair, e: &Mat, h: &Mat) -> Result<Verification> {
    check_shapes(pair, e, h)?;
    Ok(verify_with(pair, &Blocks::new(pair), e, h))
}

struct FirstKindProblem<'a> {
    blocks: &'a Blocks,
    /// Lifted centralizer basis.
    e_basis: Vec<Vec<Scalar>>,
    h_basis: Vec<HPrime>,
    rhs: Vec<Mat>,
}

impl FirstKindProblem<'_> {
    fn combine_e(&self, x: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.blocks.field.zero(); self.e_basis.first().map_or(0, Vec::len)];
        for (c, b) in x.iter().zip(&self.e_basis) {
            if !c.is_zero() {
                for (o, v) in out.iter_mut().zip(b) {
                    o.add_mul_assign(c, v);
                }
            }
        }
        out
    }

    fn combine_h(&self, y: &[Scalar]) -> HPrime {
        let scaled = |pick: &dyn Fn(&HPrime) -> &Mat| {
            let mats: Vec<Mat> = self.h_basis.iter().map(|h| pick(h).clone()).collect();
            combine_family(&mats, y)
        };
        let first = &self.h_basis[0];
        HPrime {
            by_v: (0..first.by_v.len()).map(|a| scaled(&|h| &h.by_v[a])).collect(),
            by_uc: (0..first.by_uc.len())
                .map(|i| (0..first.by_uc[i].len()).map(|k| scaled(&|h| &h.by_uc[i][k])).collect())
                .collect(),
        }
    }
}

impl Bilinear for FirstKindProblem<'_> {
    fn field(&self) -> Field {
        self.blocks.field
    }

    fn x_dim(&self) -> usize {
        self.e_basis.len()
    }

    fn y_dim(&self) -> usize {
        self.h_basis.len()
    }

    fn rhs(&self) -> &[Mat] {
        &self.rhs
    }

    fn with_x(&self, x: &[Scalar]) -> Vec<Vec<Mat>> {
        let ehat = self.combine_e(x);
        self.h_basis
            .iter()
            .map(|hp| vec![self.blocks.unit_side(&ehat, hp), self.blocks.counit_side(&ehat, hp)])
            .collect()
    }

    fn with_y(&self, y: &[Scalar]) -> Vec<Vec<Mat>> {
        let hp = self.combine_h(y);
        self.e_basis
            .iter()
            .map(|ehat| vec![self.blocks.unit_side(ehat, &hp), self.blocks.counit_side(ehat, &hp)])
            .collect()
    }
}

/// Searches for a dual basis of the first kind. `No` is reported only when
/// linear reasoning rules every candidate out.
pub fn find_first_kind(pair: &InductionPair, budget: u64, seed: u64) -> Verdict<DualBasisFirstKind> {
    let mut trace = Trace::seeded(seed, budget);
    let field = pair.field();
    let blocks = Blocks::new(pair);
    let centralizer = pair.centralizer();
    let bullet = bullet_space(pair.zdata());
    trace.note(format!("centralizer dimension {}, compatible Hom dimension {}", centralizer.dim(), bullet.dim()));
    let uv = pair.uv();
    let e_cols: Vec<Mat> = centralizer.basis().iter().map(|b| Mat::column_vector(field, b)).collect();
    let problem = FirstKindProblem {
        blocks: &blocks,
        e_basis: e_cols.iter().map(|e| blocks.lift(e)).collect(),
        h_basis: bullet.basis().iter().map(|h| blocks.h_prime(h)).collect(),
        rhs: vec![blocks.u_counit.clone(), Mat::identity(field, pair.v().dim())],
    };
    let build = |x: &[Scalar], y: &[Scalar]| {
        let e = if e_cols.is_empty() { Mat::zeros(field, uv.dim(), 1) } else { combine_family(&e_cols, x) };
        let h = if bullet.dim() == 0 { bullet.zero_map() } else { bullet.combine(y) };
        (e, h)
    };
    let accept = |x: &[Scalar], y: &[Scalar]| {
        let (e, h) = build(x, y);
        verify_with(pair, &blocks, &e, &h).holds()
    };
    match bilinear::search(&problem, budget, seed, &mut trace, accept) {
        Outcome::Found { x, y } => {
            let (e, h) = build(&x, &y);
            let verification = verify_with(pair, &blocks, &e, &h);
            Verdict::found(DualBasisFirstKind { e, h, verification }, trace)
        }
        Outcome::Infeasible(why) => {
            trace.note(why);
            Verdict::no(trace)
        }
        Outcome::Exhausted => Verdict::inconclusive(Status::Unknown, trace),
    }
}

/// The left `R`-module dual basis `{(f_l, v_l)}` of `V` read off a first
/// kind witness: `Σ_l f_l(v)·v_l = v` with every `f_l` left `R`-linear.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectivityCertificate {
    #[serde(skip)]
    pub functionals: Vec<Mat>,
    pub terms: usize,
    pub verification: Verification,
}

#[derive(Clone, Debug)]
pub struct RepresentabilityReport {
    pub status: Status,
    pub dual_basis: Verdict<DualBasisFirstKind>,
    pub certificate: Option<ProjectivityCertificate>,
    /// Both triangle identities of the adjunction, on `M = C` and `N = S`.
    pub triangles: Option<Verification>,
}

pub fn projectivity_certificate(pair: &InductionPair, witness: &DualBasisFirstKind) -> ProjectivityCertificate {
    let blocks = Blocks::new(pair);
    let ehat = blocks.lift(&witness.e);
    let hp = blocks.h_prime(&witness.h);
    let functionals = blocks.functionals(&ehat, &hp);
    let v = pair.v().carrier();
    let ring = pair.coring().ring();
    let mut verification = Verification::default();
    let mut sum = Mat::zeros(pair.field(), v.dim(), v.dim());
    for (b, f) in blocks.ring_times_v.iter().zip(&functionals) {
        sum = sum.add(&b.mul(f));
    }
    verification.push(Check::compare("sum_l f_l(v) v_l = v", &sum, &v.identity()));
    let linear = functionals
        .iter()
        .all(|f| v.left_basis_actions().iter().zip(ring.left_basis_mult()).all(|(lv, lr)| f.mul(lv) == lr.mul(f)));
    verification.push(Check::flag("every f_l is left R-linear", linear));
    ProjectivityCertificate { terms: functionals.len(), functionals, verification }
}

/// `G(ε_D) ∘ η_{G(D)} = id` at `D = C` and `ε_{F(N)} ∘ F(η_N) = id` at
/// `N = S`, with `F = V ⊗_S −` and `G = U ⊗_R −`.
pub fn triangle_identities(pair: &InductionPair, witness: &DualBasisFirstKind) -> Result<Verification> {
    let blocks = Blocks::new(pair);
    let ehat = blocks.lift(&witness.e);
    let hp = blocks.h_prime(&witness.h);
    let coring = pair.coring();
    let u = pair.u();
    let c = coring.carrier();
    let mut verification = Verification::default();

    let uc = tensor_over_ring(u, c)?;
    let x = blocks.unit_side(&ehat, &hp);
    let lifted = Mat::kron_mul(&u.identity(), coring.comult_plain(), uc.section());
    let at_c = uc.project().mul(&Mat::kron_mul(&x, &c.identity(), &lifted));
    verification.push(Check::compare(
        "u ⊗ m = sum e1 h(e2 ⊗ u ⊗ m(-1)) ⊗ m(0) on M = C",
        &at_c,
        &Mat::identity(pair.field(), uc.dim()),
    ));

    let v = pair.v().carrier();
    let s = crate::bimodule::Bimodule::regular(v.right_ring().clone());
    let vs = tensor_over_ring(v, &s)?;
    let y = blocks.counit_side(&ehat, &hp);
    let at_s = vs.project().mul(&Mat::kron_mul(&y, &s.identity(), vs.section()));
    verification.push(Check::compare(
        "v ⊗ n = sum h(v ⊗ e1 ⊗ e2(-1)) e2(0) ⊗ n on N = S",
        &at_s,
        &Mat::identity(pair.field(), vs.dim()),
    ));
    Ok(verification)
}

/// Finds a first kind dual basis and, on success, extracts the projectivity
/// certificate of `V` and checks the triangle identities.
pub fn representability_report(pair: &InductionPair, budget: u64, seed: u64) -> Result<RepresentabilityReport> {
    let mut dual_basis = find_first_kind(pair, budget, seed);
    let Some(w) = &dual_basis.witness else {
        return Ok(RepresentabilityReport {
            status: dual_basis.status,
            dual_basis,
            certificate: None,
            triangles: None,
        });
    };
    let certificate = projectivity_certificate(pair, w);
    let triangles = triangle_identities(pair, w)?;
    let status = if certificate.verification.holds() && triangles.holds() {
        Status::Found
    } else {
        dual_basis.trace.note("witness verified but a derived identity failed");
        Status::Unknown
    };
    Ok(RepresentabilityReport { status, dual_basis, certificate: Some(certificate), triangles: Some(triangles) })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::Algebra;
    use crate::bimodule::Bimodule;
    use crate::catalog;
    use crate::comodule::RelativeComodule;
    use crate::coring::Coring;

    fn q() -> Field {
        Field::Rationals
    }

    fn pairs() -> Vec<InductionPair> {
        let (u, v) = catalog::morita_instance(q(), 2);
        let morita = InductionPair::new(&u, &v).unwrap();
        let c = Arc::new(catalog::matrix_coalgebra(q(), 2));
        let forgetful =
            InductionPair::new(&Bimodule::regular(c.ring().clone()), &RelativeComodule::from_coring(c)).unwrap();
        let d = Algebra::dual_numbers(q());
        let t = Arc::new(Coring::trivial(d.clone()));
        let casimir = InductionPair::new(
            &Bimodule::right_regular(d.clone()),
            &RelativeComodule::canonical(t, Bimodule::left_regular(d)).unwrap(),
        )
        .unwrap();
        vec![morita, forgetful, casimir]
    }

    /// `u ⊗ c ↦ Σ e¹ h(e² ⊗ u ⊗ c)` and `v ↦ Σ h(v ⊗ e¹ ⊗ e²₍₋₁₎) e²₍₀₎`
    /// through full Kronecker products.
    fn literal(pair: &InductionPair, e: &Mat, h: &Mat) -> (Mat, Mat) {
        let field = pair.field();
        let (u, v) = (pair.u(), pair.v().carrier());
        let c = pair.coring().carrier();
        let ehat = pair.uv().section().mul(e);
        let hp = h.mul(pair.zdata().zc().project()).mul(&pair.vu().project().kron(&c.identity()));
        let uc = Mat::identity(field, u.dim() * c.dim());
        let unit = u.right_act_plain().mul(&u.identity().kron(&hp)).mul(&ehat.kron(&uc));
        let vu = Mat::identity(field, v.dim() * u.dim());
        let counit = v
            .left_act_plain()
            .mul(&hp.kron(&v.identity()))
            .mul(&vu.kron(pair.v().coaction_plain()))
            .mul(&v.identity().kron(&ehat));
        (unit, counit)
    }

    #[test]
    fn block_formulas_match_kronecker_products() {
        for pair in pairs() {
            let blocks = Blocks::new(&pair);
            let bullet = bullet_space(pair.zdata());
            let mut rng = crate::verdict::trial_rng(5, 0);
            for t in 0..3u64 {
                let e = Mat::column_vector(pair.field(), &pair.centralizer().random_element(t, 3));
                let h = bullet.random_element(&mut rng, 3);
                let ehat = blocks.lift(&e);
                let hp = blocks.h_prime(&h);
                let (unit, counit) = literal(&pair, &e, &h);
                assert_eq!(blocks.unit_side(&ehat, &hp), unit);
                assert_eq!(blocks.counit_side(&ehat, &hp), counit);
            }
        }
    }

    #[test]
    fn found_witnesses_carry_certificates() {
        for pair in pairs().into_iter().take(2) {
            let report = representability_report(&pair, 32, 11).unwrap();
            assert_eq!(report.status, Status::Found);
            let w = report.dual_basis.witness.as_ref().unwrap();
            assert!(verify_first_kind(&pair, &w.e, &w.h).unwrap().holds());
            assert!(report.certificate.unwrap().verification.holds());
            assert!(report.triangles.unwrap().holds());
        }
    }

    #[test]
    fn shape_errors() {
        let pair = &pairs()[0];
        let bad = Mat::zeros(q(), 1, 1);
        let h = bullet_space(pair.zdata()).zero_map();
        assert!(matches!(verify_first_kind(pair, &bad, &h), Err(Error::InputShape(_))));
    }
}
