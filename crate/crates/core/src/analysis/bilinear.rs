//! Feasibility of bilinear systems `B_g(x, y) = b_g` by alternating linear
//! solves.

use rand::Rng;

use crate::linalg::{solve_sparse, Field, Mat, Scalar, SparseVec, Subspace};
use crate::verdict::{trial_height, trial_rng, Trace};

/// A family of bilinear equation groups in coordinates `x ∈ kⁿ`, `y ∈ kᵐ`.
pub(crate) trait Bilinear {
    fn field(&self) -> Field;
    fn x_dim(&self) -> usize;
    fn y_dim(&self) -> usize;
    /// One right-hand side per equation group.
    fn rhs(&self) -> &[Mat];
    /// `B_g(x, y_j)` for every basis vector `y_j`, indexed `[j][g]`.
    fn with_x(&self, x: &[Scalar]) -> Vec<Vec<Mat>>;
    /// `B_g(x_i, y)` for every basis vector `x_i`, indexed `[i][g]`.
    fn with_y(&self, y: &[Scalar]) -> Vec<Vec<Mat>>;
}

pub(crate) enum Outcome {
    Found {
        x: Vec<Scalar>,
        y: Vec<Scalar>,
    },
    /// Proven infeasible by linear reasoning; the string says why.
    Infeasible(String),
    Exhausted,
}

/// Solves `Σⱼ tⱼ images[j][g] = rhs[g]` over the selected groups.
fn solve_groups(field: Field, images: &[Vec<Mat>], rhs: &[Mat], groups: &[usize]) -> Option<(Vec<Scalar>, Subspace)> {
    let n = images.len();
    let mut rows: Vec<SparseVec> = Vec::new();
    let mut b: Vec<Scalar> = Vec::new();
    for &g in groups {
        let base = rows.len();
        let len = rhs[g].rows() * rhs[g].cols();
        rows.resize(base + len, Vec::new());
        b.extend(rhs[g].as_slice().iter().cloned());
        for (j, img) in images.iter().enumerate() {
            for (p, v) in img[g].as_slice().iter().enumerate() {
                if !v.is_zero() {
                    rows[base + p].push((j, v.clone()));
                }
            }
        }
    }
    solve_sparse(field, n, rows, &b)
}

fn random_vector<R: Rng>(field: Field, n: usize, rng: &mut R, height: u64) -> Vec<Scalar> {
    let h = height.max(1).min(i64::MAX as u64) as i64;
    (0..n).map(|_| field.from_i64(rng.gen_range(-h..=h))).collect()
}

/// `particular + (random element of the kernel)`.
fn random_point<R: Rng>(particular: Vec<Scalar>, kernel: &Subspace, rng: &mut R, height: u64) -> Vec<Scalar> {
    let k = kernel.random_element_with(rng, height);
    particular.iter().zip(&k).map(|(a, b)| a + b).collect()
}

/// Which unknown a trial fixes at random first.
#[derive(Clone, Copy)]
enum Mode {
    RandomX,
    RandomY,
    Alternate,
}

pub(crate) fn search(
    problem: &impl Bilinear,
    budget: u64,
    seed: u64,
    trace: &mut Trace,
    accept: impl Fn(&[Scalar], &[Scalar]) -> bool,
) -> Outcome {
    let field = problem.field();
    let (nx, ny) = (problem.x_dim(), problem.y_dim());
    let rhs = problem.rhs();
    let groups: Vec<usize> = (0..rhs.len()).collect();
    let homogeneous = rhs.iter().all(Mat::is_zero);
    trace.note(format!("unknowns: {nx} + {ny} coordinates, {} equation groups", rhs.len()));

    let zero = || (vec![field.zero(); nx], vec![field.zero(); ny]);
    let settle = |x: Vec<Scalar>, y: Vec<Scalar>, why: &str| {
        if accept(&x, &y) {
            Outcome::Found { x, y }
        } else {
            debug_assert!(false, "linear solution failed re-verification: {why}");
            Outcome::Exhausted
        }
    };

    if homogeneous {
        let (x, y) = zero();
        return settle(x, y, "homogeneous system");
    }
    if nx == 0 || ny == 0 {
        return Outcome::Infeasible(format!(
            "the {} parameter space is zero, so every product vanishes but the right-hand side does not",
            if nx == 0 { "first" } else { "second" }
        ));
    }
    // Scaling one unknown is the same as scaling the other, so a
    // one-dimensional factor reduces the problem to a linear one.
    if nx == 1 {
        let x = vec![field.one()];
        return match solve_groups(field, &problem.with_x(&x), rhs, &groups) {
            Some((y, _)) => settle(x, y, "first factor one-dimensional"),
            None => Outcome::Infeasible(
                "first parameter space is one-dimensional and its generator admits no solution".into(),
            ),
        };
    }
    if ny == 1 {
        let y = vec![field.one()];
        return match solve_groups(field, &problem.with_y(&y), rhs, &groups) {
            Some((x, _)) => settle(x, y, "second factor one-dimensional"),
            None => Outcome::Infeasible(
                "second parameter space is one-dimensional and its generator admits no solution".into(),
            ),
        };
    }

    for t in 0..budget {
        let mut rng = trial_rng(seed, t);
        let height = trial_height(t);
        let mode = [Mode::RandomX, Mode::RandomY, Mode::Alternate][(t % 3) as usize];
        let candidate = match mode {
            Mode::RandomX => {
                let x = random_vector(field, nx, &mut rng, height);
                solve_groups(field, &problem.with_x(&x), rhs, &groups).map(|(p, k)| {
                    let y = random_point(p, &k, &mut rng, height);
                    (x, y)
                })
            }
            Mode::RandomY => {
                let y = random_vector(field, ny, &mut rng, height);
                solve_groups(field, &problem.with_y(&y), rhs, &groups).map(|(p, k)| {
                    let x = random_point(p, &k, &mut rng, height);
                    (x, y)
                })
            }
            Mode::Alternate => {
                let x = random_vector(field, nx, &mut rng, height);
                let images = problem.with_x(&x);
                groups.iter().find_map(|&g| {
                    let (p, k) = solve_groups(field, &images, rhs, &[g])?;
                    let y = random_point(p, &k, &mut rng, height);
                    let (px, kx) = solve_groups(field, &problem.with_y(&y), rhs, &groups)?;
                    Some((random_point(px, &kx, &mut rng, height), y))
                })
            }
        };
        let label = match mode {
            Mode::RandomX => "random first factor",
            Mode::RandomY => "random second factor",
            Mode::Alternate => "alternating",
        };
        match candidate {
            Some((x, y)) if accept(&x, &y) => {
                trace.record(t, format!("{label}: solution verified"));
                return Outcome::Found { x, y };
            }
            Some(_) => trace.record(t, format!("{label}: solution failed verification")),
            None => trace.record(t, format!("{label}: linear system inconsistent")),
        }
    }
    Outcome::Exhausted
}
