//! Bimodules, bimodule maps, Hom spaces and centralizers.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{combine, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{
    combine_family, solve_homogeneous, unit_matrices, FamilyCoordinates, Field, Mat, MatMap, Scalar, Subspace,
};
use crate::verdict::{trial_height, trial_rng, Status, Trace, Verdict};

/// Which actions a map is required to intertwine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sides {
    Left,
    Right,
    Both,
}

impl Sides {
    pub fn left(self) -> bool {
        matches!(self, Sides::Left | Sides::Both)
    }

    pub fn right(self) -> bool {
        matches!(self, Sides::Right | Sides::Both)
    }
}

impl fmt::Display for Sides {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sides::Left => "left",
            Sides::Right => "right",
            Sides::Both => "both",
        })
    }
}

/// An `(R, S)`-bimodule. `left[i]` is the matrix of `m ↦ rᵢ·m`, `right[j]`
/// the matrix of `m ↦ m·sⱼ`, both acting on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bimodule {
    left_ring: Arc<Algebra>,
    right_ring: Arc<Algebra>,
    dim: usize,
    left: Vec<Mat>,
    right: Vec<Mat>,
}

impl Bimodule {
    /// Checks both module laws, both unit laws and that the actions commute.
    pub fn new(
        left_ring: Arc<Algebra>,
        right_ring: Arc<Algebra>,
        dim: usize,
        left: Vec<Mat>,
        right: Vec<Mat>,
    ) -> Result<Bimodule> {
        let field = left_ring.field();
        if right_ring.field() != field {
            return Err(Error::RingMismatch("rings over different base fields".into()));
        }
        if left.len() != left_ring.dim() || left.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::InputShape("left action matrices have the wrong count or shape".into()));
        }
        if right.len() != right_ring.dim() || right.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::InputShape("right action matrices have the wrong count or shape".into()));
        }
        let id = Mat::identity(field, dim);
        let b = Bimodule { left_ring, right_ring, dim, left, right };
        for i in 0..b.left_ring.dim() {
            for j in 0..b.left_ring.dim() {
                let prod = b.left_ring.basis_product(i, j);
                if b.left_action(&prod) != b.left[i].mul(&b.left[j]) {
                    return Err(Error::BadLeftAction(format!("(r{i} r{j})·m ≠ r{i}·(r{j}·m)")));
                }
            }
        }
        if b.left_action(b.left_ring.unit()) != id {
            return Err(Error::BadLeftAction("unit does not act as the identity".into()));
        }
        for i in 0..b.right_ring.dim() {
            for j in 0..b.right_ring.dim() {
                let prod = b.right_ring.basis_product(i, j);
                if b.right_action(&prod) != b.right[j].mul(&b.right[i]) {
                    return Err(Error::BadRightAction(format!("m·(s{i} s{j}) ≠ (m·s{i})·s{j}")));
                }
            }
        }
        if b.right_action(b.right_ring.unit()) != id {
            return Err(Error::BadRightAction("unit does not act as the identity".into()));
        }
        for (i, l) in b.left.iter().enumerate() {
            for (j, r) in b.right.iter().enumerate() {
                if l.mul(r) != r.mul(l) {
                    return Err(Error::ActionsDontCommute(i, j));
                }
            }
        }
        Ok(b)
    }

    /// Skips the module-law checks; for actions induced from verified
    /// bimodules, such as those on a tensor product.
    pub(crate) fn from_parts_unchecked(
        left_ring: Arc<Algebra>,
        right_ring: Arc<Algebra>,
        dim: usize,
        left: Vec<Mat>,
        right: Vec<Mat>,
    ) -> Bimodule {
        Bimodule { left_ring, right_ring, dim, left, right }
    }

    /// From sparse action tensors: `(r, m, m', v)` means `rᵣ·bₘ` has
    /// coefficient `v` on `b_{m'}`; `(m, s, m', v)` likewise for `bₘ·sₛ`.
    pub fn from_triples(
        left_ring: Arc<Algebra>,
        right_ring: Arc<Algebra>,
        dim: usize,
        left: &[(usize, usize, usize, Scalar)],
        right: &[(usize, usize, usize, Scalar)],
    ) -> Result<Bimodule> {
        let field = left_ring.field();
        let mut lm = vec![Mat::zeros(field, dim, dim); left_ring.dim()];
        for (r, m, m2, v) in left {
            if *r >= left_ring.dim() || *m >= dim || *m2 >= dim {
                return Err(Error::InputShape(format!("left action index ({r},{m},{m2}) out of range")));
            }
            lm[*r].set(*m2, *m, v.clone());
        }
        let mut rm = vec![Mat::zeros(field, dim, dim); right_ring.dim()];
        for (m, s, m2, v) in right {
            if *s >= right_ring.dim() || *m >= dim || *m2 >= dim {
                return Err(Error::InputShape(format!("right action index ({m},{s},{m2}) out of range")));
            }
            rm[*s].set(*m2, *m, v.clone());
        }
        Bimodule::new(left_ring, right_ring, dim, lm, rm)
    }

    /// `R` over itself by multiplication on both sides.
    pub fn regular(ring: Arc<Algebra>) -> Bimodule {
        let left = ring.left_basis_mult().to_vec();
        let right = ring.right_basis_mult().to_vec();
        let dim = ring.dim();
        Bimodule { left_ring: ring.clone(), right_ring: ring, dim, left, right }
    }

    /// `R` as an `(R, k)`-bimodule.
    pub fn left_regular(ring: Arc<Algebra>) -> Bimodule {
        let k = Algebra::base(ring.field());
        let dim = ring.dim();
        let left = ring.left_basis_mult().to_vec();
        Bimodule { left_ring: ring.clone(), right_ring: k, dim, left, right: vec![Mat::identity(ring.field(), dim)] }
    }

    /// `R` as a `(k, R)`-bimodule.
    pub fn right_regular(ring: Arc<Algebra>) -> Bimodule {
        let k = Algebra::base(ring.field());
        let dim = ring.dim();
        let right = ring.right_basis_mult().to_vec();
        Bimodule { left_ring: k, right_ring: ring.clone(), dim, left: vec![Mat::identity(ring.field(), dim)], right }
    }

    pub fn zero(left_ring: Arc<Algebra>, right_ring: Arc<Algebra>) -> Bimodule {
        let f = left_ring.field();
        let left = vec![Mat::zeros(f, 0, 0); left_ring.dim()];
        let right = vec![Mat::zeros(f, 0, 0); right_ring.dim()];
        Bimodule { left_ring, right_ring, dim: 0, left, right }
    }

    /// `kⁿ` with trivial actions of the base field on both sides.
    pub fn vector_space(field: Field, n: usize) -> Bimodule {
        let k = Algebra::base(field);
        let id = Mat::identity(field, n);
        Bimodule { left_ring: k.clone(), right_ring: k, dim: n, left: vec![id.clone()], right: vec![id] }
    }

    /// `self ⊕ other`, with block-diagonal actions.
    pub fn direct_sum(&self, other: &Bimodule) -> Result<Bimodule> {
        if self.left_ring != other.left_ring || self.right_ring != other.right_ring {
            return Err(Error::RingMismatch("direct summands over different rings".into()));
        }
        let f = self.field();
        let block = |a: &Mat, b: &Mat| {
            let mut m = Mat::zeros(f, self.dim + other.dim, self.dim + other.dim);
            for i in 0..self.dim {
                for j in 0..self.dim {
                    m.set(i, j, a.get(i, j).clone());
                }
            }
            for i in 0..other.dim {
                for j in 0..other.dim {
                    m.set(self.dim + i, self.dim + j, b.get(i, j).clone());
                }
            }
            m
        };
        let left = self.left.iter().zip(&other.left).map(|(a, b)| block(a, b)).collect();
        let right = self.right.iter().zip(&other.right).map(|(a, b)| block(a, b)).collect();
        Ok(Bimodule {
            left_ring: self.left_ring.clone(),
            right_ring: self.right_ring.clone(),
            dim: self.dim + other.dim,
            left,
            right,
        })
    }

    /// The direct sum of `n` copies.
    pub fn power(&self, n: usize) -> Bimodule {
        let zero = Bimodule::zero(self.left_ring.clone(), self.right_ring.clone());
        (0..n).fold(zero, |acc, _| acc.direct_sum(self).expect("same rings"))
    }

    pub fn field(&self) -> Field {
        self.left_ring.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_ring(&self) -> &Arc<Algebra> {
        &self.left_ring
    }

    pub fn right_ring(&self) -> &Arc<Algebra> {
        &self.right_ring
    }

    pub fn left_basis_actions(&self) -> &[Mat] {
        &self.left
    }

    pub fn right_basis_actions(&self) -> &[Mat] {
        &self.right
    }

    pub fn left_action(&self, r: &[Scalar]) -> Mat {
        combine(self.field(), self.dim, &self.left, r)
    }

    pub fn right_action(&self, s: &[Scalar]) -> Mat {
        combine(self.field(), self.dim, &self.right, s)
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(self.field(), self.dim)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field().zero(); self.dim];
        v[i] = self.field().one();
        v
    }

    /// The same space with its right action forgotten (right ring `k`).
    pub fn forget_right(&self) -> Bimodule {
        let k = Algebra::base(self.field());
        Bimodule {
            left_ring: self.left_ring.clone(),
            right_ring: k,
            dim: self.dim,
            left: self.left.clone(),
            right: vec![self.identity()],
        }
    }

    /// Matrix of the canonical map `R ⊗_k M → M`, `r ⊗ m ↦ r·m`.
    pub fn left_act_plain(&self) -> Mat {
        let f = self.field();
        let r = self.left_ring.dim();
        let mut out = Mat::zeros(f, self.dim, r * self.dim);
        for a in 0..r {
            for m in 0..self.dim {
                for i in 0..self.dim {
                    out.set(i, a * self.dim + m, self.left[a].get(i, m).clone());
                }
            }
        }
        out
    }

    /// Matrix of the canonical map `M ⊗_k S → M`, `m ⊗ s ↦ m·s`.
    pub fn right_act_plain(&self) -> Mat {
        let f = self.field();
        let s = self.right_ring.dim();
        let mut out = Mat::zeros(f, self.dim, self.dim * s);
        for m in 0..self.dim {
            for b in 0..s {
                for i in 0..self.dim {
                    out.set(i, m * s + b, self.right[b].get(i, m).clone());
                }
            }
        }
        out
    }
}

/// Checks that `f: source → target` intertwines the requested actions.
pub fn check_intertwines(source: &Bimodule, target: &Bimodule, f: &Mat, sides: Sides) -> Result<()> {
    if f.shape() != (target.dim(), source.dim()) {
        return Err(Error::InputShape(format!(
            "map is {}x{} but should be {}x{}",
            f.rows(),
            f.cols(),
            target.dim(),
            source.dim()
        )));
    }
    if sides.left() {
        if source.left_ring() != target.left_ring() {
            return Err(Error::RingMismatch("left rings differ".into()));
        }
        for (i, (a, b)) in source.left.iter().zip(&target.left).enumerate() {
            if f.mul(a) != b.mul(f) {
                return Err(Error::NotBimoduleMap(format!("left (ring basis element {i})")));
            }
        }
    }
    if sides.right() {
        if source.right_ring() != target.right_ring() {
            return Err(Error::RingMismatch("right rings differ".into()));
        }
        for (j, (a, b)) in source.right.iter().zip(&target.right).enumerate() {
            if f.mul(a) != b.mul(f) {
                return Err(Error::NotBimoduleMap(format!("right (ring basis element {j})")));
            }
        }
    }
    Ok(())
}

/// A verified linear map between bimodules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMap {
    source: Bimodule,
    target: Bimodule,
    matrix: Mat,
    sides: Sides,
}

impl BimoduleMap {
    pub fn new(source: Bimodule, target: Bimodule, matrix: Mat, sides: Sides) -> Result<BimoduleMap> {
        check_intertwines(&source, &target, &matrix, sides)?;
        Ok(BimoduleMap { source, target, matrix, sides })
    }

    pub fn source(&self) -> &Bimodule {
        &self.source
    }

    pub fn target(&self) -> &Bimodule {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn sides(&self) -> Sides {
        self.sides
    }
}

/// A basis of a Hom space, kept as matrices.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Bimodule,
    target: Bimodule,
    sides: Sides,
    basis: Vec<Mat>,
    coords: FamilyCoordinates,
}

impl HomSpace {
    pub(crate) fn from_basis(source: Bimodule, target: Bimodule, sides: Sides, basis: Vec<Mat>) -> HomSpace {
        let coords = FamilyCoordinates::new(source.field(), (target.dim(), source.dim()), &basis);
        HomSpace { source, target, sides, basis, coords }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn source(&self) -> &Bimodule {
        &self.source
    }

    pub fn target(&self) -> &Bimodule {
        &self.target
    }

    pub fn sides(&self) -> Sides {
        self.sides
    }

    pub fn maps(&self) -> Vec<BimoduleMap> {
        self.basis
            .iter()
            .map(|m| BimoduleMap {
                source: self.source.clone(),
                target: self.target.clone(),
                matrix: m.clone(),
                sides: self.sides,
            })
            .collect()
    }

    pub fn zero_map(&self) -> Mat {
        Mat::zeros(self.source.field(), self.target.dim(), self.source.dim())
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Mat {
        if self.basis.is_empty() {
            return self.zero_map();
        }
        combine_family(&self.basis, coeffs)
    }

    /// Coefficients of `f` on the basis, if `f` lies in the space.
    pub fn coordinates(&self, f: &Mat) -> Option<Vec<Scalar>> {
        self.coords.coordinates(f)
    }

    pub fn contains(&self, f: &Mat) -> bool {
        self.coordinates(f).is_some()
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R, height: u64) -> Mat {
        let field = self.source.field();
        let h = height.max(1) as i64;
        let coeffs: Vec<Scalar> = (0..self.dim()).map(|_| field.from_i64(rng.gen_range(-h..=h))).collect();
        self.combine(&coeffs)
    }
}

/// Basis of the linear maps `M → N` intertwining the requested actions.
pub fn hom_space(m: &Bimodule, n: &Bimodule, sides: Sides) -> Result<HomSpace> {
    if sides.left() && m.left_ring() != n.left_ring() {
        return Err(Error::RingMismatch("left rings of source and target differ".into()));
    }
    if sides.right() && m.right_ring() != n.right_ring() {
        return Err(Error::RingMismatch("right rings of source and target differ".into()));
    }
    let field = m.field();
    let family = unit_matrices(field, n.dim(), m.dim());
    let mut eqs: Vec<MatMap<'_>> = Vec::new();
    if sides.left() {
        for (a, b) in m.left.iter().zip(&n.left) {
            eqs.push(Box::new(move |x: &Mat| x.mul(a).sub(&b.mul(x))));
        }
    }
    if sides.right() {
        for (a, b) in m.right.iter().zip(&n.right) {
            eqs.push(Box::new(move |x: &Mat| x.mul(a).sub(&b.mul(x))));
        }
    }
    let refs: Vec<&dyn Fn(&Mat) -> Mat> = eqs.iter().map(|b| b.as_ref()).collect();
    let basis = if m.dim() == 0 || n.dim() == 0 { Vec::new() } else { solve_homogeneous(field, &family, &refs) };
    Ok(HomSpace::from_basis(m.clone(), n.clone(), sides, basis))
}

/// `M^R = {m : r·m = m·r for all r}` for an `(R, R)`-bimodule.
pub fn centralizer(m: &Bimodule) -> Result<Subspace> {
    if m.left_ring() != m.right_ring() {
        return Err(Error::RingMismatch("centralizer needs equal left and right rings".into()));
    }
    let field = m.field();
    if m.dim() == 0 {
        return Ok(Subspace::zero(field, 0));
    }
    let blocks: Vec<Mat> = m.left.iter().zip(&m.right).map(|(l, r)| l.sub(r)).collect();
    Ok(Mat::vstack(field, m.dim(), &blocks).kernel())
}

/// A mutually inverse pair of maps in a Hom space.
#[derive(Clone, Debug)]
pub struct IsoWitness {
    pub map: Mat,
    pub inverse: Mat,
    pub trial: u64,
}

/// Randomized search for an isomorphism in `hom_space(M, N, sides)`.
/// Only `Found` or `NoWitnessFound` is reported: a singular random draw is
/// not evidence that no isomorphism exists.
pub fn random_iso_witness(m: &Bimodule, n: &Bimodule, sides: Sides, trials: u64, seed: u64) -> Verdict<IsoWitness> {
    let mut trace = Trace::seeded(seed, trials);
    if m.dim() != n.dim() {
        trace.note(format!("dimensions differ ({} vs {})", m.dim(), n.dim()));
        return Verdict::inconclusive(Status::NoWitnessFound, trace);
    }
    let hom = match hom_space(m, n, sides) {
        Ok(h) => h,
        Err(e) => {
            trace.note(format!("hom space unavailable: {e}"));
            return Verdict::inconclusive(Status::NoWitnessFound, trace);
        }
    };
    let back = hom_space(n, m, sides).expect("rings already checked");
    trace.note(format!("hom space dimension {}", hom.dim()));
    // Deterministic first candidate: the identity, when it is a map of the requested kind.
    let identity = m.identity();
    if (m == n || hom.contains(&identity)) && check_intertwines(m, n, &identity, sides).is_ok() {
        trace.record(0, "identity");
        return Verdict::found(IsoWitness { map: identity.clone(), inverse: identity, trial: 0 }, trace);
    }
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let f = hom.random_element(&mut rng, trial_height(t));
        match f.inverse() {
            Some(g) if back.contains(&g) && f.mul(&g).is_identity() && g.mul(&f).is_identity() => {
                trace.record(t, "invertible");
                return Verdict::found(IsoWitness { map: f, inverse: g, trial: t }, trace);
            }
            _ => trace.record(t, "singular"),
        }
    }
    Verdict::inconclusive(Status::NoWitnessFound, trace)
}
