//! Shared fixtures and an elimination routine that does not use the
//! library's linear algebra.

#![allow(dead_code)]

use std::sync::Arc;

use corep::algebra::Algebra;
use corep::analysis::InductionPair;
use corep::bimodule::Bimodule;
use corep::catalog;
use corep::comodule::{induce_comodule, LeftComodule, RelativeComodule};
use corep::coring::Coring;
use corep::linalg::{Field, Mat, Scalar};

pub fn q() -> Field {
    Field::Rationals
}

/// Exact fraction over `i128`, kept in lowest terms with a positive
/// denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Frac(pub i128, pub i128);

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Frac {
    pub fn new(n: i128, d: i128) -> Frac {
        assert!(d != 0);
        let g = gcd(n, d).max(1) * d.signum();
        Frac(n / g, d / g)
    }

    pub fn int(n: i128) -> Frac {
        Frac(n, 1)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn add(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.1 + o.0 * self.1, self.1 * o.1)
    }

    pub fn sub(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.1 - o.0 * self.1, self.1 * o.1)
    }

    pub fn mul(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.0, self.1 * o.1)
    }

    pub fn div(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.1, self.1 * o.0)
    }
}

/// Reads a rational scalar through its text form.
pub fn frac(s: &Scalar) -> Frac {
    let t = s.to_string();
    match t.split_once('/') {
        Some((n, d)) => Frac::new(n.parse().unwrap(), d.parse().unwrap()),
        None => Frac::int(t.parse().unwrap()),
    }
}

pub fn frac_matrix(m: &Mat) -> Vec<Vec<Frac>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| frac(m.get(i, j))).collect()).collect()
}

/// Basis of the null space of `rows` (each of length `n`), by
/// Gauss-Jordan elimination.
pub fn null_space(rows: &[Vec<Frac>], n: usize) -> Vec<Vec<Frac>> {
    let mut a: Vec<Vec<Frac>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Frac::int(1).div(a[r][c]);
        for x in a[r].iter_mut() {
            *x = x.mul(inv);
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                let pivot_row = a[r].clone();
                for (x, v) in a[i].iter_mut().zip(pivot_row) {
                    *x = x.sub(f.mul(v));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Frac::int(0); n];
            v[f] = Frac::int(1);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = Frac::int(0).sub(a[i][f]);
            }
            v
        })
        .collect()
}

pub fn rank(rows: &[Vec<Frac>], n: usize) -> usize {
    n - null_space(rows, n).len()
}

pub fn morita_pair(n: usize) -> InductionPair {
    let (u, v) = catalog::morita_instance(q(), n);
    InductionPair::new(&u, &v).unwrap()
}

/// `U = R_R` with `V = R` over the trivial coring, `R` the dual numbers.
pub fn dual_numbers_pair() -> InductionPair {
    let d = Algebra::dual_numbers(q());
    let t = Arc::new(Coring::trivial(d.clone()));
    let v = RelativeComodule::canonical(t, Bimodule::left_regular(d.clone())).unwrap();
    InductionPair::new(&Bimodule::right_regular(d), &v).unwrap()
}

/// `(U, U*)` over the trivial coring of `U`'s right ring.
pub fn dual_module_pair(u: &Bimodule) -> InductionPair {
    let dual = catalog::dual_pair(u).unwrap().dual;
    let t = Arc::new(Coring::trivial(u.right_ring().clone()));
    let v = RelativeComodule::canonical(t, dual).unwrap();
    InductionPair::new(u, &v).unwrap()
}

/// The catalog corings exercised across the suite.
pub fn catalog_corings() -> Vec<(String, Arc<Coring>)> {
    let mut out: Vec<(String, Arc<Coring>)> = vec![
        ("trivial(Q)".into(), Arc::new(Coring::trivial(Algebra::base(q())))),
        ("trivial(M2)".into(), Arc::new(Coring::trivial(Algebra::matrix(q(), 2)))),
        ("trivial(Q[x]/x^2)".into(), Arc::new(Coring::trivial(Algebra::dual_numbers(q())))),
    ];
    for n in 1..=3 {
        out.push((format!("matrix/{n}"), Arc::new(catalog::matrix_coalgebra(q(), n))));
        out.push((format!("grouplike/{n}"), Arc::new(catalog::grouplike_coalgebra(q(), n))));
    }
    out
}

/// Left comodules over `c`: `C` itself and comodules induced from it.
pub fn comodule_family(c: &Arc<Coring>) -> Vec<(String, LeftComodule)> {
    let cc = RelativeComodule::from_coring(c.clone());
    let r = c.ring().clone();
    let mut out = vec![("C".to_string(), cc.clone())];
    if r.dim() == 1 {
        out.push(("C ⊗ k^2".into(), induce_comodule(&cc, &Bimodule::vector_space(q(), 2)).unwrap()));
    } else {
        out.push(("C ⊗ R".into(), induce_comodule(&cc, &Bimodule::left_regular(r)).unwrap()));
    }
    out
}
