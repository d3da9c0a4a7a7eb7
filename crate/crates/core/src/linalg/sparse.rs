//! Incremental Gaussian elimination on sparse rows.

use std::collections::BTreeMap;

use super::{Field, Scalar};

/// A sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `a + c·b`.
fn axpy(a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            v.add_mul_assign(c, &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rows in echelon form keyed by their leading index, each with leading
/// coefficient one.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    field: Field,
    rows: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new(field: Field) -> Self {
        SparseEchelon { field, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; keeps the remainder if nonzero.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        loop {
            let Some((p, c)) = v.first().cloned() else {
                return false;
            };
            match self.rows.get(&p) {
                Some(row) => v = axpy(&v, &-c, row),
                None => {
                    let inv = c.inv().expect("leading entry is nonzero");
                    for (_, x) in v.iter_mut() {
                        *x = &*x * &inv;
                    }
                    self.rows.insert(p, v);
                    return true;
                }
            }
        }
    }

    /// The reduced row echelon form: `(pivot, row)` in increasing pivot
    /// order, every row zero at every other pivot.
    pub fn into_rref(self) -> Vec<(usize, SparseVec)> {
        let field = self.field;
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (p, row) in self.rows.into_iter().rev() {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            let mut pending: Vec<(usize, Scalar)> = Vec::new();
            for (j, c) in row {
                if j != p && done.contains_key(&j) {
                    pending.push((j, c));
                } else {
                    acc.insert(j, c);
                }
            }
            for (j, c) in pending {
                for (k, x) in &done[&j] {
                    if *k == j {
                        continue;
                    }
                    let e = acc.entry(*k).or_insert_with(|| field.zero());
                    e.sub_mul_assign(&c, x);
                }
            }
            let reduced: SparseVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
            done.insert(p, reduced);
        }
        done.into_iter().collect()
    }
}

/// Sparse form of a dense slice.
pub fn sparsify(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_of_dependent_rows() {
        let q = Field::Rationals;
        let s = |xs: &[i64]| sparsify(&xs.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>());
        let mut e = SparseEchelon::new(q);
        assert!(e.insert(s(&[1, 2, 3])));
        assert!(e.insert(s(&[0, 1, 1])));
        assert!(!e.insert(s(&[1, 3, 4])));
        let r = e.into_rref();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].1, s(&[1, 0, 1]));
        assert_eq!(r[1].1, s(&[0, 1, 1]));
    }
}
