//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use common::*;
use corep::algebra::Algebra;
use corep::analysis::{
    canonical_second_kind, equivalence_check, find_first_kind, forgetful_representability, frobenius_check,
    hom_dimension_identity, separability_first, triangle_identities, verify_first_kind, verify_second_kind,
    InductionPair,
};
use corep::bimodule::{Bimodule, Sides};
use corep::catalog;
use corep::cli;
use corep::comodule::{bicomodule_hom, colinear_hom, comodule_hom, induce_comodule, RelativeComodule};
use corep::coring::Coring;
use corep::instance::Instance;
use corep::linalg::Mat;
use corep::nat_trans::{
    alpha, alpha_inv, beta, beta_inv, bullet_hom_space, psi_naturality, theta_naturality, verify_identity_pair, ZData,
};
use corep::tensor::{left_unitor, right_unitor};
use corep::verdict::Status;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: corep::error::Error) -> String {
    e.to_string()
}

/// Bijections between the parameter spaces and the bicomodule Hom spaces.
fn bijections() -> Outcome {
    let mut cases: Vec<(String, ZData)> = Vec::new();
    for r in [Algebra::base(q()), Algebra::matrix(q(), 2), Algebra::dual_numbers(q())] {
        let z = RelativeComodule::from_coring(Arc::new(Coring::trivial(r.clone())));
        cases.push((format!("R (dim {}, trivial coring)", r.dim()), ZData::new(&z).map_err(err)?));
    }
    let c = RelativeComodule::from_coring(Arc::new(catalog::matrix_coalgebra(q(), 2)));
    cases.push(("C (matrix coalgebra n = 2)".into(), ZData::new(&c).map_err(err)?));
    cases.push(("V ⊗ U (Morita n = 2)".into(), morita_pair(2).zdata().clone()));

    let mut checked = 0;
    for (name, data) in &cases {
        let hs = bullet_hom_space(data.z()).map_err(err)?;
        let ps = data.p_space().map_err(err)?;
        let to_c = bicomodule_hom(data.zc_bicomodule(), data.c_bicomodule()).map_err(err)?;
        let from_c = bicomodule_hom(data.c_bicomodule(), data.zc_bicomodule()).map_err(err)?;
        ensure(hs.dim() == to_c.dim() && ps.dim() == from_c.dim(), || format!("{name}: dimensions differ"))?;
        for h in hs.basis() {
            let f = alpha(data, h).map_err(err)?;
            ensure(to_c.contains(&f), || format!("{name}: alpha(h) is not a bicomodule map"))?;
            ensure(alpha_inv(data, &f).map_err(err)? == *h, || format!("{name}: alpha_inv(alpha(h)) != h"))?;
            checked += 1;
        }
        for f in to_c.basis() {
            ensure(alpha(data, &alpha_inv(data, f).map_err(err)?).map_err(err)? == *f, || {
                format!("{name}: alpha(alpha_inv(f)) != f")
            })?;
            checked += 1;
        }
        for p in ps.basis() {
            let g = beta(data, p).map_err(err)?;
            ensure(from_c.contains(&g), || format!("{name}: beta(p) is not a bicomodule map"))?;
            ensure(beta_inv(data, &g).map_err(err)? == *p, || format!("{name}: beta_inv(beta(p)) != p"))?;
            checked += 1;
        }
        for g in from_c.basis() {
            ensure(beta(data, &beta_inv(data, g).map_err(err)?).map_err(err)? == *g, || {
                format!("{name}: beta(beta_inv(g)) != g")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{} objects, {checked} round trips", cases.len()))
}

/// Naturality squares over the catalog family.
fn naturality() -> Outcome {
    let mut squares = 0;
    for (name, c) in catalog_corings() {
        if c.dim() > 4 {
            continue;
        }
        let data = ZData::new(&RelativeComodule::from_coring(c.clone())).map_err(err)?;
        let hs = bullet_hom_space(data.z()).map_err(err)?;
        let ps = data.p_space().map_err(err)?;
        let family = comodule_family(&c);
        for (mn, m) in &family {
            for (nn, n) in &family {
                let maps = colinear_hom(m, n, false).map_err(err)?;
                for f in maps.basis() {
                    for h in hs.basis() {
                        let check = psi_naturality(&data, h, m, n, f).map_err(err)?;
                        ensure(check.holds, || format!("{name}: psi square fails for {mn} -> {nn}"))?;
                        squares += 1;
                    }
                    for p in ps.basis() {
                        let check = theta_naturality(&data, p, m, n, f).map_err(err)?;
                        ensure(check.holds, || format!("{name}: theta square fails for {mn} -> {nn}"))?;
                        squares += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{squares} squares"))
}

/// `(id_C, ε_C)` for `(R, C)` and perturbations of either map.
fn second_kind_example() -> Outcome {
    let mut count = 0;
    for (name, c) in catalog_corings() {
        let pair = InductionPair::new(&Bimodule::regular(c.ring().clone()), &RelativeComodule::from_coring(c.clone()))
            .map_err(err)?;
        let (p, big_e) = canonical_second_kind(&pair).map_err(err)?;
        let (to_c, _) = right_unitor(c.carrier()).map_err(err)?;
        let (_, from_c) = left_unitor(c.carrier()).map_err(err)?;
        ensure(to_c.mul(&p).is_identity(), || format!("{name}: p is not id_C"))?;
        ensure(big_e.mul(&from_c) == *c.counit(), || format!("{name}: E is not eps_C"))?;
        let v = verify_second_kind(&pair, &p, &big_e).map_err(err)?;
        ensure(v.holds(), || format!("{name}: canonical pair rejected at {:?}", v.first_failure()))?;
        let two = q().from_i64(2);
        let bump = |m: &Mat| {
            let mut out = m.clone();
            let mut x = out.get(0, 0).clone();
            x.add_assign_ref(&q().one());
            out.set(0, 0, x);
            out
        };
        let (bumped_p, bumped_e) = (bump(&p), bump(&big_e));
        let perturbed = [
            ("2p", p.scale(&two), big_e.clone()),
            ("2E", p.clone(), big_e.scale(&two)),
            ("0p", p.scale(&q().zero()), big_e.clone()),
            ("0E", p.clone(), big_e.scale(&q().zero())),
            ("p + e00", bumped_p, big_e.clone()),
            ("E + e00", p.clone(), bumped_e),
        ];
        for (what, pp, ee) in perturbed {
            let accepted = matches!(verify_second_kind(&pair, &pp, &ee), Ok(v) if v.holds());
            ensure(!accepted, || format!("{name}: perturbation {what} accepted"))?;
        }
        count += 1;
    }
    Ok(format!("{count} corings, 6 perturbations each rejected"))
}

/// The dual numbers instance: bimodule constraints on `h(f ⊗ u) = r` force
/// the unit coefficient of `r` to vanish, and the counit equation needs
/// `λ · (r acting on f) = 1`.
fn residue_oracle_infeasible(pair: &InductionPair) -> Result<(), String> {
    let r = pair.coring().ring();
    let v = pair.v().carrier();
    let u = pair.u();
    ensure(u.dim() == 1 && v.dim() == 1, || "expected one-dimensional U and V".into())?;
    let n = r.dim();
    let left = r.left_basis_mult();
    let right = r.right_basis_mult();
    let mut rows = Vec::new();
    for b in 0..n {
        let rho = frac(v.left_basis_actions()[b].get(0, 0));
        let sigma = frac(u.right_basis_actions()[b].get(0, 0));
        let l = frac_matrix(&left[b]);
        let rr = frac_matrix(&right[b]);
        for i in 0..n {
            rows.push((0..n).map(|j| l[i][j].sub(if i == j { rho } else { Frac::int(0) })).collect());
            rows.push((0..n).map(|j| rr[i][j].sub(if i == j { sigma } else { Frac::int(0) })).collect());
        }
    }
    let kernel = null_space(&rows, n);
    for k in &kernel {
        let mut acting = Frac::int(0);
        for (b, coeff) in k.iter().enumerate() {
            acting = acting.add(coeff.mul(frac(v.left_basis_actions()[b].get(0, 0))));
        }
        ensure(acting.is_zero(), || "oracle: some admissible h acts invertibly on V".into())?;
    }
    Ok(())
}

/// Free modules of rank at most 3 over Q and M2(Q) are projective; the
/// residue module of the dual numbers is not.
fn projectivity_reduction() -> Outcome {
    let mut found = 0;
    for r in [Algebra::base(q()), Algebra::matrix(q(), 2)] {
        for n in 1..=3 {
            let pair = dual_module_pair(&catalog::free_right_module(r.clone(), n));
            let v = find_first_kind(&pair, 64, 7);
            ensure(v.status == Status::Found, || format!("rank {n} over dim {} ring: {}", r.dim(), v.status))?;
            found += 1;
        }
    }
    let pair = dual_module_pair(&catalog::dual_numbers_residue_right(q()));
    residue_oracle_infeasible(&pair)?;
    for seed in 0..8 {
        let v = find_first_kind(&pair, 32, seed);
        ensure(v.status != Status::Found, || format!("solver returned FOUND with seed {seed}"))?;
    }
    Ok(format!("{found} free modules FOUND; residue module infeasible by oracle, never FOUND"))
}

/// Triangle identities on `M = C` and `N = S` for found first kind witnesses.
fn triangles() -> Outcome {
    let mut pairs = vec![morita_pair(2), morita_pair(3)];
    for r in [Algebra::base(q()), Algebra::matrix(q(), 2)] {
        for n in 1..=2 {
            pairs.push(dual_module_pair(&catalog::free_right_module(r.clone(), n)));
        }
    }
    for (_, c) in catalog_corings() {
        if c.ring().dim() == 1 && c.dim() <= 4 {
            let k = Bimodule::regular(c.ring().clone());
            pairs.push(InductionPair::new(&k, &RelativeComodule::from_coring(c.clone())).map_err(err)?);
        }
    }
    let mut checked = 0;
    for (i, pair) in pairs.iter().enumerate() {
        let v = find_first_kind(pair, 64, 11);
        let Some(w) = v.witness else { continue };
        let t = triangle_identities(pair, &w).map_err(err)?;
        ensure(t.holds(), || format!("instance {i}: {:?}", t.first_failure()))?;
        checked += 1;
    }
    ensure(checked >= 8, || format!("only {checked} witnesses found"))?;
    Ok(format!("{checked} witnesses"))
}

fn separability() -> Outcome {
    let pair = morita_pair(2);
    let w = find_first_kind(&pair, 64, 3).witness.ok_or("no Morita witness")?;
    let s = separability_first(&pair, &w).map_err(err)?;
    ensure(s.v_side.status == Status::Found, || format!("Morita V side {}", s.v_side.status))?;
    let big_e = s.v_side.witness.ok_or("no E")?;
    ensure(big_e.mul(&w.e).column(0) == pair.v().right_ring().unit(), || "E(e) != 1".into())?;

    let pair = dual_numbers_pair();
    let w = find_first_kind(&pair, 64, 3).witness.ok_or("no dual numbers witness")?;
    let s = separability_first(&pair, &w).map_err(err)?;
    ensure(s.u_side.status == Status::No, || format!("dual numbers U side {}", s.u_side.status))?;

    // p(1) = ω ∈ R ⊗ R ranges over a 2-dimensional space whose products
    // have no unit component.
    let ps = pair.zdata().p_space().map_err(err)?;
    ensure(ps.dim() == 2, || format!("expected 2 candidate Casimir elements, got {}", ps.dim()))?;
    let r = pair.coring().ring();
    for p in ps.basis() {
        let plain = pair.vu().section().mul(p);
        let omega: Vec<Frac> = (0..plain.rows()).map(|i| frac(plain.get(i, 0))).collect();
        let mut product = vec![Frac::int(0); r.dim()];
        for a in 0..r.dim() {
            for b in 0..r.dim() {
                for (k, slot) in product.iter_mut().enumerate() {
                    *slot = slot.add(omega[a * r.dim() + b].mul(frac(r.structure_constant(a, b, k))));
                }
            }
        }
        ensure(product[0].is_zero(), || "a Casimir candidate multiplies to a unit".into())?;
    }
    Ok("Morita V side FOUND; dual numbers U side NO".into())
}

fn equivalence() -> Outcome {
    let pair = morita_pair(2);
    let r = equivalence_check(&pair, 64, 5);
    ensure(r.status == Status::Found, || format!("Morita: {}", r.status))?;
    ensure(r.verification.holds() && r.verification.checks.len() >= 5, || "conditions not all re-verified".into())?;
    let iso = r.iso.and_then(|v| v.witness).ok_or("no iso")?;
    ensure(iso.map.mul(&iso.inverse).is_identity() && iso.inverse.mul(&iso.map).is_identity(), || {
        "iso not invertible".into()
    })?;
    let hom = corep::bimodule::hom_space(pair.uv().result(), &pair.s_regular(), Sides::Both).map_err(err)?;
    ensure(hom.contains(&iso.map), || "iso not S-bilinear".into())?;
    let id = r.identity.and_then(|v| v.witness).ok_or("no (p, h)")?;
    let v = verify_identity_pair(pair.zdata(), &id.p, &id.h);
    ensure(v.holds() && v.checks.len() >= 4, || "(ii)-(iv) fail on re-verification".into())?;

    let k = Algebra::base(q());
    let mismatched = InductionPair::new(
        &Bimodule::vector_space(q(), 2),
        &RelativeComodule::from_coring(Arc::new(Coring::trivial(k))),
    )
    .map_err(err)?;
    let r = equivalence_check(&mismatched, 64, 5);
    ensure(r.status == Status::No, || format!("dimension mismatch: {}", r.status))?;
    Ok("Morita FOUND with (i)-(iv) verified; mismatch NO".into())
}

fn forgetful() -> Outcome {
    let c = Arc::new(catalog::matrix_coalgebra(q(), 2));
    let v = RelativeComodule::from_coring(c.clone());
    let rep = forgetful_representability(&v, 64, 9).map_err(err)?;
    ensure(rep.status == Status::Found, || format!("forgetful: {}", rep.status))?;
    let pair = InductionPair::new(&Bimodule::regular(c.ring().clone()), &v).map_err(err)?;
    let w = rep.dual_basis.witness.ok_or("no witness")?;
    ensure(verify_first_kind(&pair, &w.e, &w.h).map_err(err)?.holds(), || "first kind fails".into())?;
    let f = frobenius_check(&pair, 64, 9);
    ensure(f.status == Status::Found, || format!("frobenius: {}", f.status))?;
    let w1 = f.first.witness.ok_or("no first kind")?;
    let w2 = f.second.witness.ok_or("no second kind")?;
    ensure(verify_first_kind(&pair, &w1.e, &w1.h).map_err(err)?.holds(), || "first kind fails".into())?;
    ensure(verify_second_kind(&pair, &w2.p, &w2.big_e).map_err(err)?.holds(), || "second kind fails".into())?;
    Ok("forgetful and Frobenius FOUND".into())
}

fn composition() -> Outcome {
    let mut triples = 0;
    let mut cases: Vec<(RelativeComodule, Vec<Bimodule>)> = Vec::new();
    for n in [2, 3] {
        let c = Arc::new(catalog::matrix_coalgebra(q(), n));
        let k = c.ring().clone();
        cases.push((
            RelativeComodule::from_coring(c),
            vec![Bimodule::vector_space(q(), 1), Bimodule::vector_space(q(), 2)],
        ));
        let g = Arc::new(catalog::grouplike_coalgebra(q(), n));
        cases.push((RelativeComodule::from_coring(g), vec![Bimodule::regular(k), Bimodule::vector_space(q(), 3)]));
    }
    let (u, v) = catalog::morita_instance(q(), 2);
    let m2 = v.right_ring().clone();
    cases.push((v, vec![u, Bimodule::regular(m2.clone()), Bimodule::left_regular(m2)]));
    let d = Algebra::dual_numbers(q());
    let dv = RelativeComodule::from_coring(Arc::new(Coring::trivial(d.clone())));
    let residue = catalog::dual_numbers_residue_right(q());
    let residue_left = catalog::dual_pair(&residue).unwrap().dual;
    cases.push((dv, vec![Bimodule::regular(d.clone()), Bimodule::left_regular(d), residue_left]));
    for (v, ws) in &cases {
        let family = comodule_family(v.coring());
        for w in ws {
            for (mn, m) in &family {
                let id = hom_dimension_identity(v, w, m).map_err(err)?;
                ensure(id.holds(), || format!("{} != {} against {mn}", id.composite, id.nested))?;
                triples += 1;
            }
        }
    }
    // V = C over a coalgebra and W = k^2: both sides are 2 dim ᶜHom(C, C) = 2n².
    for n in [2, 3] {
        let c = Arc::new(catalog::matrix_coalgebra(q(), n));
        let v = RelativeComodule::from_coring(c.clone());
        let id = hom_dimension_identity(&v, &Bimodule::vector_space(q(), 2), &v).map_err(err)?;
        ensure(id.composite == 2 * n * n && id.nested == 2 * n * n, || format!("n = {n}: {id:?}"))?;
        ensure(comodule_hom(&v, &v).map_err(err)?.module.dim() == n * n, || "End(C) dimension".into())?;
        let induced = induce_comodule(&v, &Bimodule::vector_space(q(), 2)).map_err(err)?;
        ensure(colinear_hom(&induced, &v, false).map_err(err)?.dim() == 2 * n * n, || "induced Hom".into())?;
    }
    Ok(format!("{triples} triples"))
}

fn reproducibility() -> Outcome {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");
    let runs: Vec<Vec<String>> = [
        "--file {d}/morita.toml dualbasis1 --U U --V V --seed 7 --budget 16",
        "--file {d}/morita.toml dualbasis2 --U U --V V --seed 7",
        "--file {d}/morita.toml equivalence --U U --V V --seed 2",
        "--file {d}/morita.toml identiso --U U --V V --seed 2",
        "--file {d}/dual_numbers.toml separable --witness first",
        "--file {d}/dual_numbers.toml frobenius --U U --V V --seed 4",
        "forgetful --coring catalog:matrix/2 --seed 1",
        "natspace --V catalog:matrix/2",
    ]
    .iter()
    .map(|s| s.replace("{d}", data).split_whitespace().map(String::from).collect())
    .collect();
    for args in &runs {
        let a = cli::run_args(args);
        let b = cli::run_args(args);
        ensure(a == b, || format!("outputs differ for {}", args.join(" ")))?;
    }
    let bin = env!("CARGO_BIN_EXE_corep");
    for args in runs.iter().take(3) {
        let a = std::process::Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        let b = std::process::Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        ensure(a.stdout == b.stdout && a.status == b.status, || "binary output differs".into())?;
    }
    let mut files = 0;
    for entry in std::fs::read_dir(data).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().is_some_and(|e| e == "toml") {
            let inst = Instance::load(&path).map_err(err)?;
            let again = Instance::parse(&inst.emit()).map_err(err)?;
            ensure(inst == again, || format!("{}: round trip changed the graph", path.display()))?;
            ensure(inst.emit() == again.emit(), || format!("{}: emit not stable", path.display()))?;
            files += 1;
        }
    }
    Ok(format!("{} commands byte-identical; {files} files round-trip", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("parameter bijections alpha/beta", bijections),
        ("naturality of psi and theta", naturality),
        ("second kind (id_C, eps_C) and perturbations", second_kind_example),
        ("trivial coring projectivity reduction", projectivity_reduction),
        ("triangle identities", triangles),
        ("definitive separability", separability),
        ("equivalence", equivalence),
        ("forgetful functor and Frobenius", forgetful),
        ("composition Hom-dimension identity", composition),
        ("reproducibility and round trip", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
