//! Natural transformations between an induction functor `Z ⊗_R −` and the
//! identity functor on left `C`-comodules, parametrized by maps `h` and `p`.

use std::sync::{Arc, OnceLock};

use crate::bimodule::{check_intertwines, Bimodule, HomSpace, Sides};
use crate::comodule::{
    bicomodule_hom, check_bicolinear, check_colinear, colinear_hom, induce, Bicomodule, LeftComodule, RelativeComodule,
};
use crate::coring::Coring;
use crate::error::{Error, Result};
use crate::linalg::{Field, LinearSystem, Mat, MatMap};
use crate::tensor::{right_unitor, tensor_over_ring, TensorOverRing};
use crate::verdict::{trial_height, trial_rng, Check, Status, Trace, Verdict, Verification};

/// `Z ∈ ᶜ_R M_R` together with `Z ⊗_R C` and the bicomodules used by the
/// parametrizations.
#[derive(Clone, Debug)]
pub struct ZData {
    z: RelativeComodule,
    zc: TensorOverRing,
    /// `z ⊗ c ↦ z₍₋₁₎ ⊗ z₍₀₎ ⊗ c` on plain tensors.
    coaction_c: Mat,
    /// `z ⊗ c ↦ z ⊗ c₍₁₎ ⊗ c₍₂₎` on plain tensors.
    z_comult: Mat,
    zc_bicomodule: OnceLock<Bicomodule>,
    c_bicomodule: Bicomodule,
    c_comodule: RelativeComodule,
    ring_module: Bimodule,
}

impl ZData {
    pub fn new(z: &RelativeComodule) -> Result<ZData> {
        let coring = z.coring().clone();
        if z.right_ring() != coring.ring() {
            return Err(Error::RingMismatch("Z must be an (R, R)-bimodule".into()));
        }
        let zc = tensor_over_ring(z.carrier(), coring.carrier())?;
        let id_c = coring.carrier().identity();
        let coaction_c = Mat::kron_mul(z.coaction_plain(), &id_c, zc.section());
        let z_comult = Mat::kron_mul(&z.carrier().identity(), coring.comult_plain(), zc.section());
        Ok(ZData {
            z: z.clone(),
            zc,
            coaction_c,
            z_comult,
            zc_bicomodule: OnceLock::new(),
            c_bicomodule: Bicomodule::from_coring(coring.clone()),
            c_comodule: RelativeComodule::from_coring(coring.clone()),
            ring_module: Bimodule::regular(coring.ring().clone()),
        })
    }

    pub fn z(&self) -> &RelativeComodule {
        &self.z
    }

    pub fn coring(&self) -> &Arc<Coring> {
        self.z.coring()
    }

    pub fn field(&self) -> Field {
        self.z.field()
    }

    /// `Z ⊗_R C`.
    pub fn zc(&self) -> &TensorOverRing {
        &self.zc
    }

    /// `Z ⊗_R C` with coactions `ρ_Z ⊗ id` and `id ⊗ Δ`.
    pub fn zc_bicomodule(&self) -> &Bicomodule {
        self.zc_bicomodule.get_or_init(|| Bicomodule::cofree(&self.z).expect("cofree bicomodule of a valid comodule"))
    }

    pub fn c_bicomodule(&self) -> &Bicomodule {
        &self.c_bicomodule
    }

    fn c(&self) -> &Bimodule {
        self.coring().carrier()
    }

    /// `z₍₋₁₎ h(z₍₀₎ ⊗ c)` and `h(z ⊗ c₍₁₎) c₍₂₎` as maps `Z ⊗_R C → C`.
    fn compatibility_sides(&self, h: &Mat) -> (Mat, Mat) {
        let c = self.c();
        let hp = h.mul(self.zc.project());
        let lhs = c.right_act_plain().mul(&Mat::slot_mul(c.dim(), &hp, 1, &self.coaction_c));
        (lhs, self.alpha_unchecked(h))
    }

    fn alpha_unchecked(&self, h: &Mat) -> Mat {
        let c = self.c();
        let hp = h.mul(self.zc.project());
        c.left_act_plain().mul(&Mat::slot_mul(1, &hp, c.dim(), &self.z_comult))
    }

    fn shape_h(&self) -> (usize, usize) {
        (self.coring().ring().dim(), self.zc.dim())
    }

    /// Bimodule linearity and the compatibility condition for `h`.
    pub fn check_bullet(&self, h: &Mat) -> Verification {
        let mut v = Verification::default();
        if h.shape() != self.shape_h() {
            v.push(Check::flag("shape of h", false));
            return v;
        }
        v.push(Check::flag(
            "h is an R-bimodule map",
            check_intertwines(self.zc.result(), &self.ring_module, h, Sides::Both).is_ok(),
        ));
        let (lhs, rhs) = self.compatibility_sides(h);
        v.push(Check::compare("z(-1) h(z(0) ⊗ c) = h(z ⊗ c(1)) c(2)", &lhs, &rhs));
        v
    }

    fn require_bullet(&self, h: &Mat) -> Result<()> {
        match self.check_bullet(h).first_failure() {
            None => Ok(()),
            Some(c) => Err(Error::NotInBulletHom(c.equation.clone())),
        }
    }

    /// Colinear bimodule maps `C → Z`, the parameters `p`.
    pub fn p_space(&self) -> Result<HomSpace> {
        colinear_hom(&self.c_comodule, &self.z, true)
    }

    fn require_p(&self, p: &Mat) -> Result<()> {
        check_colinear(&self.c_comodule, &self.z, p, true)
    }
}

/// The compatible both-sided maps `h: Z ⊗_R C → R`.
#[derive(Clone, Debug)]
pub struct BulletHom {
    pub data: ZData,
    pub space: HomSpace,
}

impl BulletHom {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[Mat] {
        self.space.basis()
    }
}

pub fn bullet_hom_space(z: &RelativeComodule) -> Result<BulletHom> {
    let data = ZData::new(z)?;
    let space = bullet_space(&data);
    Ok(BulletHom { data, space })
}

pub(crate) fn bullet_space(data: &ZData) -> HomSpace {
    let field = data.field();
    let (rows, cols) = data.shape_h();
    let source = data.zc.result();
    let target = &data.ring_module;
    let basis = if rows == 0 || cols == 0 {
        Vec::new()
    } else {
        let family = crate::linalg::unit_matrices(field, rows, cols);
        let mut eqs: Vec<MatMap<'_>> = Vec::new();
        for (a, b) in source.left_basis_actions().iter().zip(target.left_basis_actions()) {
            eqs.push(Box::new(move |x: &Mat| x.mul(a).sub(&b.mul(x))));
        }
        for (a, b) in source.right_basis_actions().iter().zip(target.right_basis_actions()) {
            eqs.push(Box::new(move |x: &Mat| x.mul(a).sub(&b.mul(x))));
        }
        eqs.push(Box::new(|x: &Mat| {
            let (l, r) = data.compatibility_sides(x);
            l.sub(&r)
        }));
        let refs: Vec<&dyn Fn(&Mat) -> Mat> = eqs.iter().map(|b| b.as_ref()).collect();
        crate::linalg::solve_homogeneous(field, &family, &refs)
    };
    HomSpace::from_basis(source.clone(), target.clone(), Sides::Both, basis)
}

/// `α(h)(z ⊗ c) = h(z ⊗ c₍₁₎) c₍₂₎`, a bicomodule map `Z ⊗_R C → C`.
pub fn alpha(data: &ZData, h: &Mat) -> Result<Mat> {
    data.require_bullet(h)?;
    Ok(data.alpha_unchecked(h))
}

/// `α⁻¹(f) = ε ∘ f`.
pub fn alpha_inv(data: &ZData, f: &Mat) -> Result<Mat> {
    check_bicolinear(data.zc_bicomodule(), &data.c_bicomodule, f)?;
    Ok(data.coring().counit().mul(f))
}

/// `β(p)(c) = p(c₍₁₎) ⊗ c₍₂₎`, a bicomodule map `C → Z ⊗_R C`.
pub fn beta(data: &ZData, p: &Mat) -> Result<Mat> {
    data.require_p(p)?;
    Ok(beta_unchecked(data, p))
}

fn beta_unchecked(data: &ZData, p: &Mat) -> Mat {
    data.zc.project().mul(&Mat::kron_mul(p, &data.c().identity(), data.coring().comult_plain()))
}

/// `β⁻¹(g) = (id_Z ⊗ ε) ∘ g`, followed by `Z ⊗_R R ≅ Z`.
pub fn beta_inv(data: &ZData, g: &Mat) -> Result<Mat> {
    check_bicolinear(&data.c_bicomodule, data.zc_bicomodule(), g)?;
    Ok(beta_inv_unchecked(data, g))
}

fn beta_inv_unchecked(data: &ZData, g: &Mat) -> Mat {
    let z = data.z.carrier();
    z.right_act_plain().mul(&Mat::kron_mul(&z.identity(), data.coring().counit(), &data.zc.section().mul(g)))
}

/// `ψ_M(z ⊗ m) = h(z ⊗ m₍₋₁₎) m₍₀₎`.
pub fn psi_component(data: &ZData, h: &Mat, m: &LeftComodule) -> Result<Mat> {
    data.require_bullet(h)?;
    let zm = tensor_over_ring(data.z.carrier(), m.carrier())?;
    let hp = h.mul(data.zc.project());
    let lifted = Mat::kron_mul(&data.z.carrier().identity(), m.coaction_plain(), zm.section());
    Ok(m.carrier().left_act_plain().mul(&Mat::kron_mul(&hp, &m.carrier().identity(), &lifted)))
}

/// `θ_M(m) = p(m₍₋₁₎) ⊗ m₍₀₎`.
pub fn theta_component(data: &ZData, p: &Mat, m: &LeftComodule) -> Result<Mat> {
    data.require_p(p)?;
    let zm = tensor_over_ring(data.z.carrier(), m.carrier())?;
    Ok(zm.project().mul(&Mat::kron_mul(p, &m.carrier().identity(), m.coaction_plain())))
}

/// `id_Z ⊗ f: Z ⊗_R M → Z ⊗_R N`.
pub fn z_tensor_map(data: &ZData, m: &LeftComodule, n: &LeftComodule, f: &Mat) -> Result<Mat> {
    let zm = tensor_over_ring(data.z.carrier(), m.carrier())?;
    let zn = tensor_over_ring(data.z.carrier(), n.carrier())?;
    Ok(zm.map_to(&zn, &[&data.z.carrier().identity(), f]))
}

/// `ψ_N ∘ (id_Z ⊗ f) = f ∘ ψ_M` for a colinear `f: M → N`.
pub fn psi_naturality(data: &ZData, h: &Mat, m: &LeftComodule, n: &LeftComodule, f: &Mat) -> Result<Check> {
    check_colinear(m, n, f, false)?;
    let lhs = psi_component(data, h, n)?.mul(&z_tensor_map(data, m, n, f)?);
    let rhs = f.mul(&psi_component(data, h, m)?);
    Ok(Check::compare("psi_N (id ⊗ f) = f psi_M", &lhs, &rhs))
}

/// `θ_N ∘ f = (id_Z ⊗ f) ∘ θ_M` for a colinear `f: M → N`.
pub fn theta_naturality(data: &ZData, p: &Mat, m: &LeftComodule, n: &LeftComodule, f: &Mat) -> Result<Check> {
    check_colinear(m, n, f, false)?;
    let lhs = theta_component(data, p, n)?.mul(f);
    let rhs = z_tensor_map(data, m, n, f)?.mul(&theta_component(data, p, m)?);
    Ok(Check::compare("theta_N f = (id ⊗ f) theta_M", &lhs, &rhs))
}

/// The two identities pairing `p` and `h` into mutually inverse
/// transformations between `Z ⊗_R −` and the identity functor.
pub fn verify_identity_pair(data: &ZData, p: &Mat, h: &Mat) -> Verification {
    let mut v = data.check_bullet(h);
    let p_ok = p.shape() == (data.z.dim(), data.c().dim()) && data.require_p(p).is_ok();
    v.push(Check::flag("p is a colinear R-bimodule map C -> Z", p_ok));
    if !v.holds() {
        return v;
    }
    let coring = data.coring();
    let z = data.z.carrier();
    let hp = h.mul(data.zc.project());
    let first = hp.mul(&Mat::kron_mul(p, &data.c().identity(), coring.comult_plain()));
    v.push(Check::compare("h(p(c(1)) ⊗ c(2)) = eps(c)", &first, coring.counit()));
    let lhs = z.left_act_plain().mul(&Mat::kron_mul(
        &hp,
        p,
        &Mat::kron_mul(&z.identity(), coring.comult_plain(), data.zc.section()),
    ));
    let rhs = z.right_act_plain().mul(&Mat::kron_mul(&z.identity(), coring.counit(), data.zc.section()));
    v.push(Check::compare("h(z ⊗ c(1)) p(c(2)) = z eps(c)", &lhs, &rhs));
    v
}

/// An isomorphism `Z ⊗_R − ≅ id`, as the pair `(p, h)` and the bicomodule
/// isomorphisms `g: C → Z ⊗_R C`, `f = g⁻¹` it comes from.
#[derive(Clone, Debug)]
pub struct IdentityIso {
    pub p: Mat,
    pub h: Mat,
    pub g: Mat,
    pub f: Mat,
    pub verification: Verification,
}

/// Searches for `(p, h)` making `Z ⊗_R −` isomorphic to the identity.
pub fn identity_iso_witness(z: &RelativeComodule, trials: u64, seed: u64) -> Result<Verdict<IdentityIso>> {
    let data = ZData::new(z)?;
    Ok(identity_iso_search(&data, trials, seed))
}

pub fn identity_iso_search(data: &ZData, trials: u64, seed: u64) -> Verdict<IdentityIso> {
    let mut trace = Trace::seeded(seed, trials);
    let field = data.field();
    let c_dim = data.c().dim();
    let zc_dim = data.zc.dim();
    if c_dim != zc_dim {
        trace.note(format!("dim(Z ⊗ C) = {zc_dim} differs from dim(C) = {c_dim}"));
        return Verdict::no(trace);
    }
    let g_space = bicomodule_hom(&data.c_bicomodule, data.zc_bicomodule()).expect("same coring");
    let f_space = bicomodule_hom(data.zc_bicomodule(), &data.c_bicomodule).expect("same coring");
    trace.note(format!("bicomodule Hom dimensions: {} and {}", g_space.dim(), f_space.dim()));
    if c_dim > 0 && (g_space.dim() == 0 || f_space.dim() == 0) {
        trace.note("a bicomodule Hom space is zero while C is not");
        return Verdict::no(trace);
    }
    let attempt = |g: &Mat| -> Option<IdentityIso> {
        let f = if c_dim == 0 {
            f_space.zero_map()
        } else {
            let mut sys = LinearSystem::new(field, f_space.basis());
            sys.equate(|x| x.mul(g), &Mat::identity(field, c_dim));
            sys.equate(|x| g.mul(x), &Mat::identity(field, zc_dim));
            sys.solve()?.particular_map()
        };
        let p = beta_inv_unchecked(data, g);
        let h = data.coring().counit().mul(&f);
        let verification = verify_identity_pair(data, &p, &h);
        verification.holds().then(|| IdentityIso { p, h, g: g.clone(), f, verification })
    };
    if c_dim == 0 {
        trace.record(0, "empty coring");
        let g = g_space.zero_map();
        return match attempt(&g) {
            Some(w) => Verdict::found(w, trace),
            None => Verdict::no(trace),
        };
    }
    // With a one-dimensional Hom space every candidate is a multiple of the
    // basis map, so a single solve decides.
    let decisive = g_space.dim() == 1;
    for t in 0..trials {
        let g = if decisive {
            g_space.basis()[0].clone()
        } else {
            g_space.random_element(&mut trial_rng(seed, t), trial_height(t))
        };
        match attempt(&g) {
            Some(w) => {
                trace.record(t, "inverse found and verified");
                return Verdict::found(w, trace);
            }
            None => trace.record(t, "no inverse"),
        }
        if decisive {
            trace.note("the only candidate up to scaling is not invertible");
            return Verdict::no(trace);
        }
    }
    Verdict::inconclusive(Status::NoWitnessFound, trace)
}

/// `f := can' ∘ φ_S ∘ can` for a colinear `φ_S: V ⊗_S S → W ⊗_S S`.
pub fn reconstruct_from_component(v: &RelativeComodule, w: &RelativeComodule, phi_s: &Mat) -> Result<Mat> {
    if v.coring() != w.coring() {
        return Err(Error::CoringMismatch);
    }
    if v.right_ring() != w.right_ring() {
        return Err(Error::RingMismatch("V and W have different right rings".into()));
    }
    let s = Bimodule::regular(v.right_ring().clone());
    let (vs, _) = induce(v, &s)?;
    let (ws, _) = induce(w, &s)?;
    check_colinear(&vs, &ws, phi_s, false)?;
    let (_, can) = right_unitor(v.carrier())?;
    let (can_prime, _) = right_unitor(w.carrier())?;
    let f = can_prime.mul(phi_s).mul(&can);
    check_intertwines(v.carrier(), w.carrier(), &f, Sides::Right)
        .map_err(|_| Error::NotRightLinear("reconstructed map is not right S-linear".into()))?;
    Ok(f)
}

/// The component `f ⊗_S id_N: V ⊗_S N → W ⊗_S N`.
pub fn tensor_component(v: &RelativeComodule, w: &RelativeComodule, f: &Mat, n: &Bimodule) -> Result<Mat> {
    let vn = tensor_over_ring(v.carrier(), n)?;
    let wn = tensor_over_ring(w.carrier(), n)?;
    Ok(vn.map_to(&wn, &[f, &n.identity()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::catalog;

    fn q() -> Field {
        Field::Rationals
    }

    fn trivial_z() -> RelativeComodule {
        let c = Arc::new(Coring::trivial(Algebra::base(q())));
        RelativeComodule::from_coring(c)
    }

    #[test]
    fn trivial_bullet_space() {
        let b = bullet_hom_space(&trivial_z()).unwrap();
        assert_eq!(b.dim(), 1);
    }

    #[test]
    fn alpha_beta_round_trips() {
        let c = Arc::new(catalog::matrix_coalgebra(q(), 2));
        let z = RelativeComodule::from_coring(c);
        let b = bullet_hom_space(&z).unwrap();
        for h in b.basis() {
            let f = alpha(&b.data, h).unwrap();
            assert_eq!(&alpha_inv(&b.data, &f).unwrap(), h);
        }
        let ps = b.data.p_space().unwrap();
        for p in ps.basis() {
            let g = beta(&b.data, p).unwrap();
            assert_eq!(&beta_inv(&b.data, &g).unwrap(), p);
        }
    }

    #[test]
    fn beta_of_identity_is_comultiplication() {
        let c = Arc::new(catalog::matrix_coalgebra(q(), 2));
        let z = RelativeComodule::from_coring(c.clone());
        let data = ZData::new(&z).unwrap();
        let g = beta(&data, &Mat::identity(q(), 4)).unwrap();
        assert_eq!(&g, c.comult());
        let theta = theta_component(&data, &Mat::identity(q(), 4), &z).unwrap();
        assert_eq!(&theta, z.coaction());
    }

    #[test]
    fn identity_witnesses() {
        let v = identity_iso_witness(&trivial_z(), 8, 3).unwrap();
        assert_eq!(v.status, Status::Found);
        let c = Arc::new(catalog::matrix_coalgebra(q(), 2));
        let z = RelativeComodule::from_coring(c);
        let v = identity_iso_witness(&z, 8, 3).unwrap();
        assert_eq!(v.status, Status::No);
    }

    #[test]
    fn reconstruction_round_trip() {
        let c = Arc::new(catalog::matrix_coalgebra(q(), 2));
        let v = RelativeComodule::from_coring(c.clone()).as_left_comodule();
        let hom = crate::comodule::comodule_hom(&v, &v).unwrap();
        let k = Bimodule::regular(v.right_ring().clone());
        for g in hom.space.basis() {
            let phi = tensor_component(&v, &v, g, &k).unwrap();
            assert_eq!(&reconstruct_from_component(&v, &v, &phi).unwrap(), g);
        }
    }
}
