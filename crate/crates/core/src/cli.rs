//! Command-line front end. Every command prints one JSON report on standard
//! output; the exit code is 0 for FOUND or true, 1 for NO or false, 2 for
//! NO_WITNESS_FOUND or UNKNOWN and 3 for input errors.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::analysis::{
    compose_representable, equivalence_check, find_second_kind, forgetful_representability, frobenius_check,
    hom_dimension_identity, representability_report, separability_first, separability_second, verify_first_kind,
    verify_second_kind, DualBasisFirstKind, DualBasisSecondKind, InductionPair, RepresentabilityReport,
    SeparabilityReport,
};
use crate::comodule::{bicomodule_hom, RelativeComodule};
use crate::error::{Error, Result};
use crate::instance::{Instance, Witness};
use crate::linalg::{Field, Mat};
use crate::nat_trans::{alpha, alpha_inv, beta, beta_inv, bullet_hom_space, identity_iso_search, ZData};
use crate::verdict::{Status, Trace, Verdict, Verification};

pub const BUDGET_ENV: &str = "COREP_BUDGET";
pub const INPUT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "corep", version, about = "Exact decision procedures for corings and representable functors")]
pub struct Cli {
    /// Instance file.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Search {
    /// Trial budget for randomized searches.
    #[arg(long, env = BUDGET_ENV, default_value_t = 64)]
    pub budget: u64,
    /// Seed for the trial generator; required so reports are reproducible.
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    /// The (S, R)-bimodule U.
    #[arg(long = "U")]
    pub u: String,
    /// The relative comodule V.
    #[arg(long = "V")]
    pub v: String,
    #[command(flatten)]
    pub search: Search,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load and verify every object and witness of the file.
    Verify,
    /// Parameter spaces of natural transformations between `Z ⊗ -` and the
    /// identity, with the bijection round trips. `Z` is `V ⊗ U`, or `V`
    /// alone when `--U` is omitted.
    Natspace {
        /// Optional bimodule U.
        #[arg(long = "U")]
        u: Option<String>,
        /// Comodule V, or `catalog:<entry>`.
        #[arg(long = "V")]
        v: String,
    },
    /// Search for an isomorphism `Z ⊗ - ≅ id`.
    Identiso {
        /// Optional bimodule U.
        #[arg(long = "U")]
        u: Option<String>,
        /// Comodule V, or `catalog:<entry>`.
        #[arg(long = "V")]
        v: String,
        #[command(flatten)]
        search: Search,
    },
    /// Search for a first kind dual basis.
    Dualbasis1(PairArgs),
    /// Search for a second kind dual basis.
    Dualbasis2(PairArgs),
    /// Decide separability from a witness, or from a searched first kind
    /// dual basis of `(U, V)`.
    Separable {
        /// Name of a witness declared in the file.
        #[arg(long, conflicts_with_all = ["u", "v"])]
        witness: Option<String>,
        #[arg(long = "U", requires = "v")]
        u: Option<String>,
        #[arg(long = "V", requires = "u")]
        v: Option<String>,
        /// Trial budget when a dual basis has to be searched for.
        #[arg(long, env = BUDGET_ENV, default_value_t = 64)]
        budget: u64,
        /// Required when searching.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Search for dual bases of both kinds.
    Frobenius(PairArgs),
    /// Check that `U ⊗ V ≅ S` and `V ⊗ U ⊗ - ≅ id`.
    Equivalence(PairArgs),
    /// Representability of the forgetful functor of a coring, through `V`.
    Forgetful {
        /// Coring, used as a comodule over itself.
        #[arg(long, conflicts_with = "v")]
        coring: Option<String>,
        /// Comodule V.
        #[arg(long = "V")]
        v: Option<String>,
        #[command(flatten)]
        search: Search,
    },
    /// The composite `V ⊗ W` and the Hom-dimension identity against `M`
    /// (default: the coring itself).
    Compose {
        #[arg(long = "V")]
        v: String,
        /// Bimodule W over the right ring of V.
        #[arg(long = "W")]
        w: String,
        /// Left comodule M.
        #[arg(long = "M")]
        m: Option<String>,
    },
}

/// Runs a command line (without the program name) against an optional
/// preloaded instance. Returns the exit code and the text for standard
/// output.
pub fn run_with(instance: Option<&Instance>, args: &[String]) -> (i32, String) {
    let argv = std::iter::once("corep".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            return (code, e.to_string());
        }
    };
    let loaded;
    let instance = match (&cli.file, instance) {
        (Some(path), _) => match Instance::load(path) {
            Ok(i) => {
                loaded = i;
                Some(&loaded)
            }
            Err(e) => return error_report(&e),
        },
        (None, i) => i,
    };
    let mut inst = instance.cloned().unwrap_or_else(|| Instance::empty(Field::Rationals));
    match dispatch(&mut inst, instance.is_some(), &cli.command) {
        Ok((status, report)) => (status.code(), render(&report)),
        Err(e) => error_report(&e),
    }
}

pub fn run_args(args: &[String]) -> (i32, String) {
    run_with(None, args)
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn error_report(e: &Error) -> (i32, String) {
    (INPUT_ERROR, render(&json!({ "status": "INPUT_ERROR", "error": e.to_string() })))
}

/// Overall outcome of a command: a verdict or a truth value.
enum Outcome {
    Verdict(Status),
    Truth(bool),
}

impl Outcome {
    fn code(&self) -> i32 {
        match self {
            Outcome::Verdict(s) => s.exit_code(),
            Outcome::Truth(true) => 0,
            Outcome::Truth(false) => 1,
        }
    }

    fn label(&self) -> Value {
        match self {
            Outcome::Verdict(s) => json!(s.to_string()),
            Outcome::Truth(b) => json!(b),
        }
    }
}

fn mat_json(m: &Mat) -> Value {
    let mut entries = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let x = m.get(i, j);
            if !x.is_zero() {
                entries.push(json!([i, j, x.to_string()]));
            }
        }
    }
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

fn vector_json(m: &Mat) -> Value {
    let entries: Vec<Value> =
        m.column(0).iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| json!([i, x.to_string()])).collect();
    json!({ "len": m.rows(), "entries": entries })
}

fn trace_json(t: &Trace) -> Value {
    json!({
        "seed": t.seed,
        "budget": t.budget,
        "trials": t.trials.len(),
        "notes": t.notes,
    })
}

fn verification_json(v: &Verification) -> Value {
    serde_json::to_value(&v.checks).expect("checks serialize")
}

fn first_json(w: &DualBasisFirstKind) -> Value {
    json!({ "e": vector_json(&w.e), "h": mat_json(&w.h) })
}

fn second_json(w: &DualBasisSecondKind) -> Value {
    json!({ "p": mat_json(&w.p), "E": mat_json(&w.big_e) })
}

fn verdict_json<W>(v: &Verdict<W>, witness: impl Fn(&W) -> Value, equations: Option<&Verification>) -> Value {
    json!({
        "status": v.status.to_string(),
        "witness": v.witness.as_ref().map(witness),
        "equations": equations.map(verification_json),
        "search": trace_json(&v.trace),
    })
}

fn require_file(has_file: bool) -> Result<()> {
    if has_file {
        Ok(())
    } else {
        Err(Error::MissingArgument("--file".into()))
    }
}

/// Resolves `--U`/`--V` and builds the pair.
fn pair(inst: &mut Instance, u: &str, v: &str) -> Result<InductionPair> {
    let u = inst.resolve_bimodule(u)?;
    let v = inst.resolve_comodule(v)?;
    inst.pair(&u, &v)
}

/// `Z = V ⊗ U`, or `V` itself.
fn z_object(inst: &mut Instance, u: Option<&str>, v: &str) -> Result<(ZData, Value)> {
    let v_name = inst.resolve_comodule(v)?;
    let v_obj = inst.comodule(&v_name)?.value.clone();
    match u {
        Some(u) => {
            let u_name = inst.resolve_bimodule(u)?;
            let p = inst.pair(&u_name, &v_name)?;
            Ok((p.zdata().clone(), json!(format!("{v_name} ⊗ {u_name}"))))
        }
        None => Ok((ZData::new(&v_obj)?, json!(v_name))),
    }
}

fn representability_json(r: &RepresentabilityReport) -> Value {
    let equations = r.dual_basis.witness.as_ref().map(|w| &w.verification);
    json!({
        "dual_basis": verdict_json(&r.dual_basis, first_json, equations),
        "projectivity": r.certificate.as_ref().map(|c| json!({
            "terms": c.terms,
            "equations": verification_json(&c.verification),
        })),
        "triangle_identities": r.triangles.as_ref().map(verification_json),
    })
}

fn separability_json(s: &SeparabilityReport) -> (Status, Value) {
    let status = match (s.v_side.status, s.u_side.status) {
        (Status::Found, Status::Found) => Status::Found,
        (Status::No, _) | (_, Status::No) => Status::No,
        _ => Status::Unknown,
    };
    let report = json!({
        "V_side": verdict_json(&s.v_side, mat_json, None),
        "U_side": verdict_json(&s.u_side, mat_json, None),
    });
    (status, report)
}

fn dispatch(inst: &mut Instance, has_file: bool, command: &Command) -> Result<(Outcome, Value)> {
    let (outcome, mut report) = match command {
        Command::Verify => {
            require_file(has_file)?;
            verify(inst)?
        }
        Command::Natspace { u, v } => {
            let (data, z) = z_object(inst, u.as_deref(), v)?;
            natspace(&data, z)?
        }
        Command::Identiso { u, v, search } => {
            let (data, z) = z_object(inst, u.as_deref(), v)?;
            let verdict = identity_iso_search(&data, search.budget, search.seed);
            let equations = verdict.witness.as_ref().map(|w| &w.verification);
            let report = json!({
                "Z": z,
                "result": verdict_json(&verdict, |w| json!({ "p": mat_json(&w.p), "h": mat_json(&w.h) }), equations),
            });
            (Outcome::Verdict(verdict.status), report)
        }
        Command::Dualbasis1(a) => {
            let p = pair(inst, &a.u, &a.v)?;
            let r = representability_report(&p, a.search.budget, a.search.seed)?;
            (Outcome::Verdict(r.status), representability_json(&r))
        }
        Command::Dualbasis2(a) => {
            let p = pair(inst, &a.u, &a.v)?;
            let v = find_second_kind(&p, a.search.budget, a.search.seed);
            let equations = v.witness.as_ref().map(|w| &w.verification);
            (Outcome::Verdict(v.status), json!({ "dual_basis": verdict_json(&v, second_json, equations) }))
        }
        Command::Separable { witness, u, v, budget, seed } => separable(inst, witness, u, v, *budget, *seed)?,
        Command::Frobenius(a) => {
            let p = pair(inst, &a.u, &a.v)?;
            let r = frobenius_check(&p, a.search.budget, a.search.seed);
            let e1 = r.first.witness.as_ref().map(|w| &w.verification);
            let e2 = r.second.witness.as_ref().map(|w| &w.verification);
            let report = json!({
                "first_kind": verdict_json(&r.first, first_json, e1),
                "second_kind": verdict_json(&r.second, second_json, e2),
            });
            (Outcome::Verdict(r.status), report)
        }
        Command::Equivalence(a) => {
            let p = pair(inst, &a.u, &a.v)?;
            let r = equivalence_check(&p, a.search.budget, a.search.seed);
            let report = json!({
                "iso": r.iso.as_ref().map(|v| verdict_json(v, |w| json!({
                    "map": mat_json(&w.map),
                    "inverse": mat_json(&w.inverse),
                }), None)),
                "identity": r.identity.as_ref().map(|v| {
                    let eq = v.witness.as_ref().map(|w| &w.verification);
                    verdict_json(v, |w| json!({ "p": mat_json(&w.p), "h": mat_json(&w.h) }), eq)
                }),
                "equations": verification_json(&r.verification),
                "search": trace_json(&r.trace),
            });
            (Outcome::Verdict(r.status), report)
        }
        Command::Forgetful { coring, v, search } => {
            let name = match (coring, v) {
                (Some(c), None) => inst.coring_as_comodule(c)?,
                (None, Some(v)) => inst.resolve_comodule(v)?,
                _ => return Err(Error::MissingArgument("--coring or --V".into())),
            };
            let v = inst.comodule(&name)?.value.clone();
            let r = forgetful_representability(&v, search.budget, search.seed)?;
            let mut report = representability_json(&r);
            report["V"] = json!(name);
            (Outcome::Verdict(r.status), report)
        }
        Command::Compose { v, w, m } => compose(inst, v, w, m.as_deref())?,
    };
    report["command"] = json!(command_name(command));
    report["status"] = outcome.label();
    Ok((outcome, report))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify => "verify",
        Command::Natspace { .. } => "natspace",
        Command::Identiso { .. } => "identiso",
        Command::Dualbasis1(_) => "dualbasis1",
        Command::Dualbasis2(_) => "dualbasis2",
        Command::Separable { .. } => "separable",
        Command::Frobenius(_) => "frobenius",
        Command::Equivalence(_) => "equivalence",
        Command::Forgetful { .. } => "forgetful",
        Command::Compose { .. } => "compose",
    }
}

fn verify(inst: &Instance) -> Result<(Outcome, Value)> {
    let mut all = true;
    let mut witnesses = serde_json::Map::new();
    for (name, w) in &inst.witnesses {
        let (u, v) = w.names();
        let p = inst.pair(u, v)?;
        let (kind, verification) = match w {
            Witness::First { e, h, .. } => ("first", verify_first_kind(&p, e, h)?),
            Witness::Second { p: pm, big_e, .. } => ("second", verify_second_kind(&p, pm, big_e)?),
        };
        all &= verification.holds();
        witnesses.insert(
            name.clone(),
            json!({ "kind": kind, "holds": verification.holds(), "equations": verification_json(&verification) }),
        );
    }
    let report = json!({
        "field": inst.field.to_string(),
        "objects": {
            "algebras": inst.algebras.len(),
            "bimodules": inst.bimodules.len(),
            "corings": inst.corings.len(),
            "comodules": inst.comodules.len(),
        },
        "witnesses": witnesses,
    });
    Ok((Outcome::Truth(all), report))
}

fn natspace(data: &ZData, z: Value) -> Result<(Outcome, Value)> {
    let bullet = bullet_hom_space(data.z())?;
    let p_space = data.p_space()?;
    let mut ok = true;
    for h in bullet.basis() {
        ok &= alpha_inv(data, &alpha(data, h)?)? == *h;
    }
    for p in p_space.basis() {
        ok &= beta_inv(data, &beta(data, p)?)? == *p;
    }
    let to_c = bicomodule_hom(data.zc_bicomodule(), data.c_bicomodule())?.dim();
    let from_c = bicomodule_hom(data.c_bicomodule(), data.zc_bicomodule())?.dim();
    ok &= to_c == bullet.dim() && from_c == p_space.dim();
    let report = json!({
        "Z": z,
        "dims": {
            "Z": data.z().dim(),
            "Z⊗C": data.zc().dim(),
            "C": data.coring().dim(),
        },
        "h_space": { "dim": bullet.dim(), "bicomodule_maps_ZC_to_C": to_c },
        "p_space": { "dim": p_space.dim(), "bicomodule_maps_C_to_ZC": from_c },
        "equations": [
            "alpha_inv(alpha(h)) = h on a basis of the h space",
            "beta_inv(beta(p)) = p on a basis of the p space",
            "dimensions agree with the bicomodule Hom spaces",
        ],
    });
    Ok((Outcome::Truth(ok), report))
}

fn separable(
    inst: &mut Instance,
    witness: &Option<String>,
    u: &Option<String>,
    v: &Option<String>,
    budget: u64,
    seed: Option<u64>,
) -> Result<(Outcome, Value)> {
    let (report, source) = if let Some(name) = witness {
        let w = inst.witness(name)?.clone();
        let (un, vn) = w.names();
        let p = inst.pair(un, vn)?;
        let report = match &w {
            Witness::First { e, h, .. } => {
                let verification = verify_first_kind(&p, e, h)?;
                let d = DualBasisFirstKind { e: e.clone(), h: h.clone(), verification };
                separability_first(&p, &d)?
            }
            Witness::Second { p: pm, big_e, .. } => {
                let verification = verify_second_kind(&p, pm, big_e)?;
                let d = DualBasisSecondKind { p: pm.clone(), big_e: big_e.clone(), verification };
                separability_second(&p, &d)?
            }
        };
        (report, json!({ "witness": name }))
    } else {
        let (Some(u), Some(v)) = (u, v) else {
            return Err(Error::MissingArgument("--witness, or --U and --V".into()));
        };
        let seed = seed.ok_or_else(|| Error::MissingArgument("--seed".into()))?;
        let p = pair(inst, u, v)?;
        let r = representability_report(&p, budget, seed)?;
        let Some(w) = r.dual_basis.witness.as_ref().filter(|_| r.status == Status::Found) else {
            let report = json!({ "dual_basis": representability_json(&r) });
            return Ok((Outcome::Verdict(r.status), report));
        };
        let report = separability_first(&p, w)?;
        (report, json!({ "dual_basis": first_json(w), "search": trace_json(&r.dual_basis.trace) }))
    };
    let (status, mut json) = separability_json(&report);
    json["source"] = source;
    Ok((Outcome::Verdict(status), json))
}

fn compose(inst: &mut Instance, v: &str, w: &str, m: Option<&str>) -> Result<(Outcome, Value)> {
    let v_name = inst.resolve_comodule(v)?;
    let w_name = inst.resolve_bimodule(w)?;
    let v_obj = inst.comodule(&v_name)?.value.clone();
    let w_obj = inst.bimodule(&w_name)?.value.clone();
    let m_obj = match m {
        Some(m) => {
            let name = inst.resolve_comodule(m)?;
            inst.comodule(&name)?.value.clone()
        }
        None => RelativeComodule::from_coring(v_obj.coring().clone()),
    };
    let composite = compose_representable(&v_obj, &w_obj)?;
    let identity = hom_dimension_identity(&v_obj, &w_obj, &m_obj.as_left_comodule())?;
    let report = json!({
        "V": v_name,
        "W": w_name,
        "M": m.unwrap_or("C"),
        "composite_dim": composite.dim(),
        "hom_dimensions": identity,
        "equations": ["dim Hom(V ⊗ W, M) = dim Hom(W, Hom(V, M))"],
    });
    Ok((Outcome::Truth(identity.holds()), report))
}
