//! Comodules over a coring: relative comodules (objects of ᶜ_R M_S), right
//! comodules, bicomodules, induced comodules and colinear Hom spaces.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::bimodule::{check_intertwines, Bimodule, HomSpace, Sides};
use crate::coring::Coring;
use crate::error::{Error, Result};
use crate::linalg::{solve_homogeneous, unit_matrices, Field, Mat, MatMap};
use crate::tensor::{tensor_chain, tensor_over_ring, TensorOverRing};

/// An `(R, S)`-bimodule `V` with a right `S`-linear left coaction
/// `ρ: V → C ⊗_R V`, `v ↦ v₍₋₁₎ ⊗ v₍₀₎`.
#[derive(Clone, Debug)]
pub struct RelativeComodule {
    coring: Arc<Coring>,
    carrier: Bimodule,
    coaction: Mat,
    coaction_plain: Mat,
    cv: TensorOverRing,
}

/// A left comodule is a relative comodule whose right ring is the base field.
pub type LeftComodule = RelativeComodule;

impl PartialEq for RelativeComodule {
    fn eq(&self, other: &Self) -> bool {
        self.coring == other.coring && self.carrier == other.carrier && self.coaction == other.coaction
    }
}

impl Eq for RelativeComodule {}

fn relabel(err: Error, wrap: fn(String) -> Error) -> Error {
    match err {
        Error::NotBimoduleMap(s) => wrap(s),
        other => other,
    }
}

impl RelativeComodule {
    pub fn new(coring: Arc<Coring>, carrier: Bimodule, coaction: Mat) -> Result<RelativeComodule> {
        if carrier.left_ring() != coring.ring() {
            return Err(Error::RingMismatch("comodule carrier must be a left module over the coring's ring".into()));
        }
        let cv = tensor_over_ring(coring.carrier(), &carrier)?;
        let target = cv.result();
        check_intertwines(&carrier, target, &coaction, Sides::Left).map_err(|e| relabel(e, Error::NotLeftLinear))?;
        check_intertwines(&carrier, target, &coaction, Sides::Right).map_err(|e| relabel(e, Error::NotRightLinear))?;
        let coaction_plain = cv.section().mul(&coaction);

        let id_v = carrier.identity();
        let id_c = coring.carrier().identity();
        let ccv = tensor_chain(&[coring.carrier().clone(), coring.carrier().clone(), carrier.clone()])?;
        let lhs = ccv.project().mul(&Mat::kron_mul(coring.comult_plain(), &id_v, &coaction_plain));
        let rhs = ccv.project().mul(&Mat::kron_mul(&id_c, &coaction_plain, &coaction_plain));
        if let Some(b) = lhs.first_differing_column(&rhs) {
            return Err(Error::NotCoaction { law: "coassociativity", basis: b });
        }
        let counit = carrier.left_act_plain().mul(&Mat::kron_mul(coring.counit(), &id_v, &coaction_plain));
        if let Some(b) = counit.first_differing_column(&id_v) {
            return Err(Error::NotCoaction { law: "counit", basis: b });
        }
        Ok(RelativeComodule { coring, carrier, coaction, coaction_plain, cv })
    }

    /// `C` itself, coacting on itself by `Δ`; an object of ᶜ_R M_R.
    pub fn from_coring(coring: Arc<Coring>) -> RelativeComodule {
        let carrier = coring.carrier().clone();
        let delta = coring.comult().clone();
        RelativeComodule::new(coring, carrier, delta).expect("comultiplication is a coaction")
    }

    /// `ρ(v) = 1 ⊗ v`. Verified, so this only succeeds when that map is a
    /// coaction, as for the trivial coring.
    pub fn canonical(coring: Arc<Coring>, carrier: Bimodule) -> Result<RelativeComodule> {
        if carrier.left_ring() != coring.ring() {
            return Err(Error::RingMismatch("comodule carrier must be a left module over the coring's ring".into()));
        }
        let cv = tensor_over_ring(coring.carrier(), &carrier)?;
        let field = coring.field();
        let unit = Mat::column_vector(field, coring.ring().unit());
        let coaction = cv.project().mul(&unit.kron(&carrier.identity()));
        RelativeComodule::new(coring, carrier, coaction)
    }

    pub fn field(&self) -> Field {
        self.carrier.field()
    }

    pub fn coring(&self) -> &Arc<Coring> {
        &self.coring
    }

    pub fn carrier(&self) -> &Bimodule {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn right_ring(&self) -> &Arc<Algebra> {
        self.carrier.right_ring()
    }

    /// `ρ` in quotient coordinates of `C ⊗_R V`.
    pub fn coaction(&self) -> &Mat {
        &self.coaction
    }

    /// `v ↦ v₍₋₁₎ ⊗ v₍₀₎` as a plain tensor.
    pub fn coaction_plain(&self) -> &Mat {
        &self.coaction_plain
    }

    /// `C ⊗_R V`.
    pub fn cv(&self) -> &TensorOverRing {
        &self.cv
    }

    /// The same comodule with its right action forgotten.
    pub fn as_left_comodule(&self) -> LeftComodule {
        let carrier = self.carrier.forget_right();
        let cv = tensor_over_ring(self.coring.carrier(), &carrier).expect("same left structure");
        RelativeComodule {
            coring: self.coring.clone(),
            carrier,
            coaction: self.coaction.clone(),
            coaction_plain: self.coaction_plain.clone(),
            cv,
        }
    }

    /// `(id_C ⊗ f)∘ρ_self`, the coaction side of colinearity for `f: self → target`.
    fn transport(&self, target: &RelativeComodule, f: &Mat) -> Mat {
        let id_c = self.coring.carrier().identity();
        target.cv.project().mul(&Mat::kron_mul(&id_c, f, &self.coaction_plain))
    }
}

/// Whether `ρ_N ∘ f = (id_C ⊗ f) ∘ ρ_M`.
pub fn is_colinear(m: &RelativeComodule, n: &RelativeComodule, f: &Mat) -> bool {
    f.shape() == (n.dim(), m.dim()) && n.coaction.mul(f) == m.transport(n, f)
}

/// Checks left `R`-linearity, colinearity and, if asked, right linearity.
pub fn check_colinear(m: &RelativeComodule, n: &RelativeComodule, f: &Mat, right_linear: bool) -> Result<()> {
    if m.coring != n.coring {
        return Err(Error::CoringMismatch);
    }
    let sides = if right_linear { Sides::Both } else { Sides::Left };
    check_intertwines(&m.carrier, &n.carrier, f, sides).map_err(|e| relabel(e, Error::NotColinear))?;
    if !is_colinear(m, n, f) {
        return Err(Error::NotColinear("coaction is not preserved".into()));
    }
    Ok(())
}

/// `V ⊗_S W` with coaction `ρ_V ⊗ id`, together with the tensor it lives on.
pub fn induce(v: &RelativeComodule, w: &Bimodule) -> Result<(RelativeComodule, TensorOverRing)> {
    if v.right_ring() != w.left_ring() {
        return Err(Error::RingMismatch("right ring of the comodule differs from the left ring of the module".into()));
    }
    let vw = tensor_over_ring(&v.carrier, w)?;
    let c = v.coring.carrier();
    let c_vw = tensor_over_ring(c, vw.result())?;
    let lifted = Mat::kron_mul(&v.coaction_plain, &w.identity(), vw.section());
    let coaction = c_vw.project().mul(&Mat::kron_mul(&c.identity(), vw.project(), &lifted));
    let out = RelativeComodule::new(v.coring.clone(), vw.result().clone(), coaction)?;
    Ok((out, vw))
}

/// The left comodule `V ⊗_S N` for a left `S`-module `N`.
pub fn induce_comodule(v: &RelativeComodule, n: &Bimodule) -> Result<LeftComodule> {
    Ok(induce(v, n)?.0)
}

/// A right comodule `ρ: M → M ⊗_R C`, `m ↦ m₍₀₎ ⊗ m₍₁₎`.
#[derive(Clone, Debug)]
pub struct RightComodule {
    coring: Arc<Coring>,
    carrier: Bimodule,
    coaction: Mat,
    coaction_plain: Mat,
    mc: TensorOverRing,
}

impl RightComodule {
    pub fn new(coring: Arc<Coring>, carrier: Bimodule, coaction: Mat) -> Result<RightComodule> {
        if carrier.right_ring() != coring.ring() {
            return Err(Error::RingMismatch("comodule carrier must be a right module over the coring's ring".into()));
        }
        let mc = tensor_over_ring(&carrier, coring.carrier())?;
        let target = mc.result();
        check_intertwines(&carrier, target, &coaction, Sides::Left).map_err(|e| relabel(e, Error::NotLeftLinear))?;
        check_intertwines(&carrier, target, &coaction, Sides::Right).map_err(|e| relabel(e, Error::NotRightLinear))?;
        let coaction_plain = mc.section().mul(&coaction);

        let id_m = carrier.identity();
        let id_c = coring.carrier().identity();
        let mcc = tensor_chain(&[carrier.clone(), coring.carrier().clone(), coring.carrier().clone()])?;
        let lhs = mcc.project().mul(&Mat::kron_mul(&id_m, coring.comult_plain(), &coaction_plain));
        let rhs = mcc.project().mul(&Mat::kron_mul(&coaction_plain, &id_c, &coaction_plain));
        if let Some(b) = lhs.first_differing_column(&rhs) {
            return Err(Error::NotCoaction { law: "coassociativity", basis: b });
        }
        let counit = carrier.right_act_plain().mul(&Mat::kron_mul(&id_m, coring.counit(), &coaction_plain));
        if let Some(b) = counit.first_differing_column(&id_m) {
            return Err(Error::NotCoaction { law: "counit", basis: b });
        }
        Ok(RightComodule { coring, carrier, coaction, coaction_plain, mc })
    }

    pub fn from_coring(coring: Arc<Coring>) -> RightComodule {
        let carrier = coring.carrier().clone();
        let delta = coring.comult().clone();
        RightComodule::new(coring, carrier, delta).expect("comultiplication is a coaction")
    }

    /// `U ⊗_R C` with coaction `id_U ⊗ Δ`.
    pub fn cofree(u: &Bimodule, coring: Arc<Coring>) -> Result<RightComodule> {
        let uc = tensor_over_ring(u, coring.carrier())?;
        let uc_c = tensor_over_ring(uc.result(), coring.carrier())?;
        let lifted = Mat::kron_mul(&u.identity(), coring.comult_plain(), uc.section());
        let coaction = uc_c.project().mul(&Mat::kron_mul(uc.project(), &coring.carrier().identity(), &lifted));
        RightComodule::new(coring, uc.result().clone(), coaction)
    }

    pub fn coring(&self) -> &Arc<Coring> {
        &self.coring
    }

    pub fn carrier(&self) -> &Bimodule {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn coaction(&self) -> &Mat {
        &self.coaction
    }

    pub fn coaction_plain(&self) -> &Mat {
        &self.coaction_plain
    }

    /// `M ⊗_R C`.
    pub fn mc(&self) -> &TensorOverRing {
        &self.mc
    }
}

/// A `C`-bicomodule: left and right coactions on one `(R, R)`-bimodule,
/// with `(id ⊗ ρʳ)∘ρˡ = (ρˡ ⊗ id)∘ρʳ`.
#[derive(Clone, Debug)]
pub struct Bicomodule {
    left: RelativeComodule,
    right: RightComodule,
}

impl Bicomodule {
    pub fn new(left: RelativeComodule, right: RightComodule) -> Result<Bicomodule> {
        if left.coring != right.coring {
            return Err(Error::CoringMismatch);
        }
        if left.carrier != right.carrier {
            return Err(Error::InputShape("left and right coactions live on different bimodules".into()));
        }
        let c = left.coring.carrier();
        let cbc = tensor_chain(&[c.clone(), left.carrier.clone(), c.clone()])?;
        let lhs = cbc.project().mul(&Mat::kron_mul(&c.identity(), &right.coaction_plain, &left.coaction_plain));
        let rhs = cbc.project().mul(&Mat::kron_mul(&left.coaction_plain, &c.identity(), &right.coaction_plain));
        if let Some(b) = lhs.first_differing_column(&rhs) {
            return Err(Error::CoactionsDontCommute(b));
        }
        Ok(Bicomodule { left, right })
    }

    /// `C` with `Δ` on both sides.
    pub fn from_coring(coring: Arc<Coring>) -> Bicomodule {
        Bicomodule::new(RelativeComodule::from_coring(coring.clone()), RightComodule::from_coring(coring))
            .expect("coassociativity")
    }

    /// `Z ⊗_R C` with coactions `ρ_Z ⊗ id` and `id ⊗ Δ`.
    pub fn cofree(z: &RelativeComodule) -> Result<Bicomodule> {
        let left = induce_comodule(z, z.coring.carrier())?;
        let right = RightComodule::cofree(&z.carrier, z.coring.clone())?;
        Bicomodule::new(left, right)
    }

    pub fn carrier(&self) -> &Bimodule {
        &self.left.carrier
    }

    pub fn dim(&self) -> usize {
        self.left.dim()
    }

    pub fn coring(&self) -> &Arc<Coring> {
        &self.left.coring
    }

    pub fn left(&self) -> &RelativeComodule {
        &self.left
    }

    pub fn right(&self) -> &RightComodule {
        &self.right
    }
}

/// `Z := V ⊗_S U` in ᶜ_R M_R and the bicomodule `V ⊗_S U ⊗_R C`.
pub fn build_vuc_bicomodule(v: &RelativeComodule, u: &Bimodule) -> Result<(RelativeComodule, Bicomodule)> {
    if u.right_ring() != v.coring.ring() {
        return Err(Error::RingMismatch("U must be a right module over the coring's ring".into()));
    }
    let z = induce_comodule(v, u)?;
    let b = Bicomodule::cofree(&z)?;
    Ok((z, b))
}

/// Basis of the colinear, left `R`-linear maps `M → N`, additionally right
/// linear when `right_linear` is set.
pub fn colinear_hom(m: &RelativeComodule, n: &RelativeComodule, right_linear: bool) -> Result<HomSpace> {
    if m.coring != n.coring {
        return Err(Error::CoringMismatch);
    }
    if right_linear && m.right_ring() != n.right_ring() {
        return Err(Error::RingMismatch("right rings differ".into()));
    }
    let field = m.field();
    let sides = if right_linear { Sides::Both } else { Sides::Left };
    let basis = if m.dim() == 0 || n.dim() == 0 {
        Vec::new()
    } else {
        let family = unit_matrices(field, n.dim(), m.dim());
        let mut eqs: Vec<MatMap<'_>> = Vec::new();
        for (a, b) in m.carrier.left_basis_actions().iter().zip(n.carrier.left_basis_actions()) {
            eqs.push(Box::new(move |x: &Mat| x.mul(a).sub(&b.mul(x))));
        }
        if right_linear {
            for (a, b) in m.carrier.right_basis_actions().iter().zip(n.carrier.right_basis_actions()) {
                eqs.push(Box::new(move |x: &Mat| x.mul(a).sub(&b.mul(x))));
            }
        }
        eqs.push(Box::new(|x: &Mat| n.coaction.mul(x).sub(&m.transport(n, x))));
        let refs: Vec<&dyn Fn(&Mat) -> Mat> = eqs.iter().map(|b| b.as_ref()).collect();
        solve_homogeneous(field, &family, &refs)
    };
    Ok(HomSpace::from_basis(m.carrier.clone(), n.carrier.clone(), sides, basis))
}

/// ᶜ_R Hom(V, M) with its bimodule structure `(s·f)(v) = f(v·s)`,
/// `(f·t)(v) = f(v)·t`, expressed in the coordinates of `space`.
#[derive(Clone, Debug)]
pub struct ComoduleHom {
    pub space: HomSpace,
    pub module: Bimodule,
}

pub fn comodule_hom(v: &RelativeComodule, m: &RelativeComodule) -> Result<ComoduleHom> {
    let space = colinear_hom(v, m, false)?;
    let field = v.field();
    let d = space.dim();
    let coords = |f: &Mat| space.coordinates(f).expect("action preserves the colinear Hom space");
    let action_matrix = |act: &dyn Fn(&Mat) -> Mat| {
        let cols: Vec<_> = space.basis().iter().map(|f| coords(&act(f))).collect();
        Mat::from_columns(field, d, &cols)
    };
    let left: Vec<Mat> = v.carrier.right_basis_actions().iter().map(|rs| action_matrix(&|f: &Mat| f.mul(rs))).collect();
    let right: Vec<Mat> =
        m.carrier.right_basis_actions().iter().map(|rt| action_matrix(&|f: &Mat| rt.mul(f))).collect();
    let module = Bimodule::new(v.right_ring().clone(), m.right_ring().clone(), d, left, right)?;
    Ok(ComoduleHom { space, module })
}

/// Basis of ᶜ_R Hom^ᶜ_R(A, B): bimodule maps preserving both coactions.
pub fn bicomodule_hom(a: &Bicomodule, b: &Bicomodule) -> Result<HomSpace> {
    if a.coring() != b.coring() {
        return Err(Error::CoringMismatch);
    }
    let field = a.carrier().field();
    let basis = if a.dim() == 0 || b.dim() == 0 {
        Vec::new()
    } else {
        let family = unit_matrices(field, b.dim(), a.dim());
        let id_c = a.coring().carrier().identity();
        let mut eqs: Vec<MatMap<'_>> = Vec::new();
        for (x, y) in a.carrier().left_basis_actions().iter().zip(b.carrier().left_basis_actions()) {
            eqs.push(Box::new(move |f: &Mat| f.mul(x).sub(&y.mul(f))));
        }
        for (x, y) in a.carrier().right_basis_actions().iter().zip(b.carrier().right_basis_actions()) {
            eqs.push(Box::new(move |f: &Mat| f.mul(x).sub(&y.mul(f))));
        }
        eqs.push(Box::new(|f: &Mat| b.left.coaction.mul(f).sub(&a.left.transport(&b.left, f))));
        let id_c2 = id_c.clone();
        eqs.push(Box::new(move |f: &Mat| {
            let moved = b.right.mc.project().mul(&Mat::kron_mul(f, &id_c2, &a.right.coaction_plain));
            b.right.coaction.mul(f).sub(&moved)
        }));
        let refs: Vec<&dyn Fn(&Mat) -> Mat> = eqs.iter().map(|e| e.as_ref()).collect();
        solve_homogeneous(field, &family, &refs)
    };
    Ok(HomSpace::from_basis(a.carrier().clone(), b.carrier().clone(), Sides::Both, basis))
}

/// Checks that `f: A → B` is a bicomodule map.
pub fn check_bicolinear(a: &Bicomodule, b: &Bicomodule, f: &Mat) -> Result<()> {
    check_intertwines(a.carrier(), b.carrier(), f, Sides::Both).map_err(|e| relabel(e, Error::NotBicolinear))?;
    if !is_colinear(&a.left, &b.left, f) {
        return Err(Error::NotBicolinear("left coaction is not preserved".into()));
    }
    let id_c = a.coring().carrier().identity();
    let moved = b.right.mc.project().mul(&Mat::kron_mul(f, &id_c, &a.right.coaction_plain));
    if b.right.coaction.mul(f) != moved {
        return Err(Error::NotBicolinear("right coaction is not preserved".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::hom_space;
    use crate::catalog;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn coring_is_a_comodule() {
        let c = Arc::new(catalog::matrix_coalgebra(q(), 2));
        let v = RelativeComodule::from_coring(c.clone());
        assert_eq!(v.dim(), 4);
        Bicomodule::from_coring(c);
    }

    #[test]
    fn trivial_coring_comodules_are_modules() {
        let r = Algebra::dual_numbers(q());
        let c = Arc::new(Coring::trivial(r.clone()));
        let m = Bimodule::left_regular(r);
        let v = RelativeComodule::canonical(c.clone(), m.clone()).unwrap();
        let hom = comodule_hom(&v, &v).unwrap();
        assert_eq!(hom.space.dim(), hom_space(&m, &m, Sides::Left).unwrap().dim());
    }

    #[test]
    fn non_right_linear_coaction_rejected() {
        // C = k, V = k² as a (k, k²)-bimodule with the diagonal right action,
        // ρ(v) = 1 ⊗ Av for A swapping the coordinates.
        let k = Algebra::base(q());
        let c = Arc::new(Coring::trivial(k.clone()));
        let d2 = Algebra::diagonal(q(), 2);
        let v = Bimodule::right_regular(d2);
        let swap = Mat::from_i64_rows(q(), &[&[0, 1], &[1, 0]]);
        let err = RelativeComodule::new(c, v, swap).unwrap_err();
        assert!(matches!(err, Error::NotRightLinear(_)));
    }

    #[test]
    fn matrix_coalgebra_endomorphisms() {
        let c = Arc::new(catalog::matrix_coalgebra(q(), 2));
        let v = RelativeComodule::from_coring(c);
        let hom = comodule_hom(&v, &v).unwrap();
        assert_eq!(hom.space.dim(), 4);
        assert_eq!(hom.module.dim(), 4);
    }

    #[test]
    fn induced_from_base_is_coring() {
        let c = Arc::new(catalog::matrix_coalgebra(q(), 2));
        let v = RelativeComodule::from_coring(c.clone());
        let k = Bimodule::regular(c.ring().clone());
        let w = induce_comodule(&v, &k).unwrap();
        assert_eq!(w.coaction(), v.coaction());
    }

    #[test]
    fn vuc_bicomodule_for_morita_pair() {
        let (u, v) = catalog::morita_instance(q(), 2);
        let (z, b) = build_vuc_bicomodule(&v, &u).unwrap();
        assert_eq!(z.dim(), 1);
        assert_eq!(b.dim(), 1);
    }
}
