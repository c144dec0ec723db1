use std::fmt::Write as _;
use std::fs;

use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use tamestrat_core::adele::{
    localize_to_adele, random_adele, random_integral, upsilon_denominator_check, IndexFamily, UpsilonElem,
};
use tamestrat_core::algebra::{AnyField, Field, Poly};
use tamestrat_core::kronrep::{json_field_descriptor, prufer_end_truncation, KronRep, RaySource};
use tamestrat_core::localize::{d_member, r_u_presentation, two_step_member, DedekindElem, DeltaSet};
use tamestrat_core::quiver::AffineType;
use tamestrat_core::series::DEFAULT_PRECISION;
use tamestrat_core::strat::{stratify_a, stratify_b, verify_report, StratReport};
use tamestrat_core::suite::{run_suite, SuiteConfig, SUITES};
use tamestrat_core::tube::{gamma_localization_witness, loop_transport_check, pi, pi_law_check, ray_exact_sequence, PiLaw};
use tamestrat_core::{with_field, Error};

use crate::{parse, Outcome};

#[derive(Debug)]
pub struct CliError {
    pub kind: String,
    pub message: String,
    pub code: u8,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError { kind: e.kind(), message: e.to_string(), code: 1 }
    }
}

macro_rules! impl_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                Error::from(e).into()
            }
        }
    )*};
}

impl_from!(
    tamestrat_core::algebra::AlgebraError,
    tamestrat_core::quiver::QuiverError,
    tamestrat_core::kronrep::KronError,
    tamestrat_core::tube::TubeError,
    tamestrat_core::localize::LocalizeError,
    tamestrat_core::adele::AdeleError,
    tamestrat_core::strat::StratError
);

fn io_error(path: &str, e: impl std::fmt::Display) -> CliError {
    CliError { kind: "Io".into(), message: format!("{path}: {e}"), code: 1 }
}

type CmdResult = Result<Outcome, CliError>;

fn parse_type(s: &str) -> Result<AffineType, CliError> {
    Ok(s.parse::<AffineType>()?)
}

fn parse_field(s: &str, trust: bool) -> Result<AnyField, CliError> {
    Ok(if trust { AnyField::parse_trusted(s)? } else { AnyField::parse(s)? })
}

#[derive(Args)]
pub struct TypeArgs {
    /// Affine type: kronecker, A~(p,q), D~n, E~6, E~7, E~8.
    #[arg(long = "type", default_value = "kronecker")]
    pub ty: String,
}

#[derive(Args)]
pub struct EulerArgs {
    #[arg(long = "type", default_value = "kronecker")]
    pub ty: String,
    /// Dimension vector, comma separated.
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
}

pub fn euler(a: &EulerArgs) -> CmdResult {
    let q = parse_type(&a.ty)?.quiver();
    let x = parse::int_list(&a.x)?;
    let y = parse::int_list(&a.y)?;
    let e = q.euler_form(&x, &y)?;
    let (dx, dy) = (q.defect(&x)?, q.defect(&y)?);
    let json = json!({"command": "euler", "type": a.ty, "x": x, "y": y, "euler": e, "defect_x": dx, "defect_y": dy});
    let text = format!("<{x:?}, {y:?}> = {e}\ndefect(x) = {dx}, defect(y) = {dy}\n");
    Ok(Outcome::new(json, text))
}

pub fn radical(a: &TypeArgs) -> CmdResult {
    let ty = parse_type(&a.ty)?;
    let q = ty.quiver();
    let h = q.radical_vector()?;
    let ranks = ty.tube_ranks();
    let sum: usize = ranks.iter().map(|c| c - 1).sum();
    let bound = q.delta_bound()?;
    let json = json!({
        "command": "radical",
        "type": ty.to_string(),
        "r": q.r(),
        "h": h,
        "tube_ranks": ranks,
        "sum_c_minus_1": sum,
        "regular_module_dim": q.regular_module_dim(),
        "delta_bound": bound,
    });
    let text = format!(
        "type {ty}: r = {}\nh = {h:?}\ntube ranks {ranks:?}, sum(c-1) = {sum}\ndelta bound {bound}\n",
        q.r()
    );
    Ok(Outcome::new(json, text).checked(sum + 2 == q.r()))
}

#[derive(Args)]
pub struct HomExtArgs {
    /// Representation JSON file for X.
    #[arg(long)]
    pub a: String,
    /// Representation JSON file for Y.
    #[arg(long)]
    pub b: String,
    /// Field override; defaults to the `field` entry of the first file.
    #[arg(long)]
    pub field: Option<String>,
}

fn read_json(path: &str) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    serde_json::from_str(&text).map_err(|e| io_error(path, e))
}

fn homext_in<F: Field>(field: &F, x: &Value, y: &Value) -> CmdResult {
    let x = KronRep::from_json(field, x)?;
    let y = KronRep::from_json(field, y)?;
    let hom = x.hom_dim(&y)?;
    let ext = x.ext_dim_cokernel(&y)?;
    let formula = x.ext_dim(&y)?;
    let e = x.euler(&y);
    let ok = hom as i64 - ext as i64 == e && formula == ext;
    let json = json!({
        "command": "homext",
        "field": field.descriptor(),
        "dim_x": x.dim_vector(),
        "dim_y": y.dim_vector(),
        "hom": hom,
        "ext": ext,
        "ext_from_euler": formula,
        "euler": e,
        "consistent": ok,
    });
    let text = format!("dim Hom = {hom}\ndim Ext^1 = {ext}\n<x, y> = {e}\nconsistent: {ok}\n");
    Ok(Outcome::new(json, text).checked(ok))
}

pub fn homext(a: &HomExtArgs) -> CmdResult {
    let x = read_json(&a.a)?;
    let y = read_json(&a.b)?;
    let desc = match &a.field {
        Some(f) => f.clone(),
        None => json_field_descriptor(&x)?,
    };
    let field = parse_field(&desc, false)?;
    with_field!(&field, f => homext_in(f, &x, &y))
}

#[derive(Args)]
pub struct FunctorFArgs {
    /// Polynomial p, or `V` for the ray through V.
    #[arg(long, default_value = "x")]
    pub poly: String,
    /// Level n of k[x]/(p^n).
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value = "Fp(3)")]
    pub field: String,
    /// Also compute End(U[n]).
    #[arg(long)]
    pub end: bool,
}

fn functor_f_in<F: Field>(field: &F, a: &FunctorFArgs) -> CmdResult {
    let (source, rep) = if a.poly.trim() == "V" {
        (RaySource::V, KronRep::v_ray(field.clone(), a.n))
    } else {
        let p = Poly::parse(field, &a.poly)?;
        if p.is_zero() || p.is_constant() {
            return Err(tamestrat_core::algebra::AlgebraError::ZeroPolynomial.into());
        }
        let rep = KronRep::poly_ray(&p, a.n)?;
        (RaySource::Poly(p), rep)
    };
    let indec = rep.indecomposability();
    let mut json = json!({
        "command": "functor-f",
        "source": a.poly,
        "n": a.n,
        "dim": rep.dim_vector(),
        "indecomposability": indec,
        "representation": rep.to_json(),
    });
    let mut text = format!("F(k[x]/({})^{}) over {}\ndim {:?}\nA =\n{}B =\n{}", a.poly, a.n, field.descriptor(), rep.dim_vector(), rep.a(), rep.b());
    let mut ok = true;
    if a.end {
        let r = prufer_end_truncation(field, &source, a.n)?;
        ok = r.matches_truncated_power_series();
        let _ = writeln!(
            text,
            "dim End = {} (expected {}), nilpotency index {}, matches k_p[t]/(t^n): {ok}",
            r.dimension, r.expected_dimension, r.nilpotency_index
        );
        json["end"] = serde_json::to_value(&r).expect("report");
    }
    Ok(Outcome::new(json, text).checked(ok))
}

pub fn functor_f(a: &FunctorFArgs) -> CmdResult {
    let field = parse_field(&a.field, false)?;
    with_field!(&field, f => functor_f_in(f, a))
}

#[derive(Args)]
pub struct TubeArgs {
    /// Rank of the tube.
    #[arg(long)]
    pub m: usize,
    /// `r,s,t`: classify pi_{r,s} pi_{s,t}.
    #[arg(long)]
    pub pi: Option<String>,
    /// `i,j,n`: the exact sequence of ray modules.
    #[arg(long)]
    pub ray: Option<String>,
}

pub fn tube(a: &TubeArgs) -> CmdResult {
    let m = a.m;
    if let Some(s) = &a.pi {
        let v = parse::usize_list(s, 3)?;
        let (r, s_, t) = (v[0], v[1], v[2]);
        let law = pi_law_check(r, s_, t, m)?;
        let json = json!({
            "command": "tube", "m": m, "r": r, "s": s_, "t": t,
            "pi_rs": pi(r, s_, m)?, "pi_st": pi(s_, t, m)?, "law": law,
        });
        return Ok(Outcome::new(json, format!("pi({r},{s_}) pi({s_},{t}): {law:?}\n")));
    }
    if let Some(s) = &a.ray {
        let v = parse::usize_list(s, 3)?;
        let seq = ray_exact_sequence(v[0], v[1], v[2], m)?;
        let json = json!({"command": "tube", "m": m, "sequence": seq});
        let text = format!("0 -> {} -> {} -> {} -> 0\n", seq.kernel, seq.middle, seq.image);
        return Ok(Outcome::new(json, text));
    }
    let mut direct = 0;
    let mut wound = 0;
    let mut loops = true;
    for r in 1..=m {
        for s in 1..=m {
            for t in 1..=m {
                match pi_law_check(r, s, t, m)? {
                    PiLaw::Direct => direct += 1,
                    PiLaw::Wound => wound += 1,
                }
            }
            if r < s {
                loops &= loop_transport_check(r, s, m)?;
            }
        }
    }
    let json = json!({"command": "tube", "m": m, "direct": direct, "wound": wound, "loop_transport": loops});
    let text = format!("m = {m}: {direct} direct, {wound} wound triples; loop transport {loops}\n");
    Ok(Outcome::new(json, text).checked(loops))
}

#[derive(Args)]
pub struct GammaArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
    #[arg(long, default_value = "Fp(3)")]
    pub field: String,
    /// Fail unless every witness holds.
    #[arg(long)]
    pub check: bool,
}

fn gamma_in<F: Field>(field: &F, a: &GammaArgs) -> CmdResult {
    let w = gamma_localization_witness(field, a.m, a.precision)?;
    let ok = w.all_hold();
    let mut text = format!("Gamma({}) at precision {} over {}\nJ^{} =\n", a.m, a.precision, field.descriptor(), a.m);
    for row in &w.j_power_display {
        let _ = writeln!(text, "  [{}]", row.join(", "));
    }
    let held = w.witnesses.iter().filter(|e| e.holds).count();
    let _ = writeln!(
        text,
        "J^m = xI: {}; J^-1 verified: {}; witnesses {held}/{}",
        w.j_power_is_x_identity,
        w.j_inverse_verified,
        w.witnesses.len()
    );
    let mut json = serde_json::to_value(&w).expect("report");
    json["command"] = json!("gamma");
    json["field"] = json!(field.descriptor());
    json["all_hold"] = json!(ok);
    Ok(Outcome::new(json, text).checked(ok || !a.check))
}

pub fn gamma(a: &GammaArgs) -> CmdResult {
    let field = parse_field(&a.field, false)?;
    with_field!(&field, f => gamma_in(f, a))
}

#[derive(Args)]
pub struct LocalizeArgs {
    /// Comma-separated monic irreducibles, or `all`.
    #[arg(long, default_value = "")]
    pub delta: String,
    /// A fraction `f/g`.
    #[arg(long)]
    pub member: Option<String>,
    /// Second set for the two-step check.
    #[arg(long)]
    pub then: Option<String>,
    #[arg(long, default_value = "Q")]
    pub field: String,
    /// Accept members whose irreducibility cannot be decided.
    #[arg(long)]
    pub trust: bool,
}

fn localize_in<F: Field>(field: &F, a: &LocalizeArgs) -> CmdResult {
    let delta = DeltaSet::parse(field, &a.delta, a.trust)?;
    let pres = r_u_presentation(&delta);
    let mut json = json!({
        "command": "localize",
        "field": field.descriptor(),
        "delta": delta.to_string(),
        "trusted": delta.trusted(),
        "presentation": pres.to_string(),
    });
    let mut text = format!("Delta = {delta}\nR_U = {pres}\n");
    if let Some(m) = &a.member {
        let (num, den) = parse::fraction(m);
        let f = Poly::parse(field, &num)?;
        let g = Poly::parse(field, &den)?;
        let member = d_member(&f, &g, &delta)?;
        json["member"] = json!({"numerator": f.to_string(), "denominator": g.to_string(), "in_D": member});
        let _ = writeln!(text, "({f})/({g}) in D: {member}");
        if member {
            let e = DedekindElem::new(&f, &g, &delta)?;
            json["member"]["reduced"] = json!(e.to_string());
            let _ = writeln!(text, "reduced: {e}");
        }
        if let Some(t) = &a.then {
            let d2 = DeltaSet::parse(field, t, a.trust)?;
            if let (Some(p1), Some(p2)) = (delta.polys(), d2.polys()) {
                if let Some(p) = p1.iter().find(|p| p2.contains(p)) {
                    return Err(tamestrat_core::localize::LocalizeError::Overlap(p.compact()).into());
                }
            }
            let one = d_member(&f, &g, &delta.union(&d2))?;
            let two = two_step_member(&f, &g, &delta, &d2)?;
            json["iterated"] = json!({"delta2": d2.to_string(), "one_step": one, "two_step": two, "agree": one == two});
            let _ = writeln!(text, "one-step {one}, two-step {two}");
            return Ok(Outcome::new(json, text).checked(one == two));
        }
    }
    Ok(Outcome::new(json, text))
}

pub fn localize(a: &LocalizeArgs) -> CmdResult {
    let field = parse_field(&a.field, a.trust)?;
    with_field!(&field, f => localize_in(f, a))
}

#[derive(Args)]
pub struct AdeleArgs {
    #[arg(long, default_value = "Fp(3)")]
    pub field: String,
    /// Number of listed indices.
    #[arg(long, default_value_t = 3)]
    pub indices: u32,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Use a finite index family (no cofinite tail).
    #[arg(long)]
    pub finite: bool,
}

fn adele_in<F: Field>(field: &F, a: &AdeleArgs, seed: u64) -> CmdResult {
    let fam = if a.finite {
        IndexFamily::uniform(field.clone(), a.indices, a.precision)
    } else {
        IndexFamily::cofinite(field.clone(), a.indices, a.precision)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idx: Vec<u32> = fam.indices().collect();
    let max_pole = (a.precision as u32 / 4).max(1);
    let mut closure_ok = 0;
    for _ in 0..a.samples {
        let x = random_adele(&fam, max_pole, &mut rng);
        let y = random_adele(&fam, max_pole, &mut rng);
        let union: std::collections::BTreeSet<u32> = x.exceptional_set().union(&y.exceptional_set()).copied().collect();
        let s = x.add(&y)?;
        let p = x.mul(&y)?;
        if s.exceptional_set().is_subset(&union) && p.exceptional_set().is_subset(&union) && x.add(&x.neg())?.is_zero() {
            closure_ok += 1;
        }
    }
    let mut ore_ok = 0;
    for _ in 0..a.samples {
        let g = random_integral(&fam, &mut rng);
        let u = UpsilonElem::random(&idx, (a.precision as u32).saturating_sub(1).max(1), &mut rng);
        if upsilon_denominator_check(&[g], &u, &fam)?.passed() {
            ore_ok += 1;
        }
    }
    let eq = localize_to_adele(&fam, a.samples, &mut rng)?;
    let example = random_adele(&fam, max_pole, &mut rng);
    let ok = closure_ok == a.samples && ore_ok == a.samples && eq.passed();
    let json = json!({
        "command": "adele",
        "field": field.descriptor(),
        "indices": a.indices,
        "cofinite": fam.is_cofinite(),
        "precision": a.precision,
        "samples": a.samples,
        "closure_passed": closure_ok,
        "ore_passed": ore_ok,
        "fractions": eq,
        "example": example.to_json(),
        "example_exceptional_set": example.exceptional_set(),
    });
    let text = format!(
        "adele ring over {} with {} listed indices{}, precision {}\nclosure {closure_ok}/{n}, Ore witnesses {ore_ok}/{n}, fractions forward {}/{n} backward {}/{n}\n",
        field.descriptor(),
        a.indices,
        if fam.is_cofinite() { " and a cofinite tail" } else { "" },
        a.precision,
        eq.forward_ok,
        eq.backward_ok,
        n = a.samples
    );
    Ok(Outcome::new(json, text).checked(ok))
}

pub fn adele(a: &AdeleArgs, seed: u64) -> CmdResult {
    let field = parse_field(&a.field, false)?;
    with_field!(&field, f => adele_in(f, a, seed))
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
pub enum RouteArg {
    A,
    B,
    Both,
}

#[derive(Args)]
pub struct StratifyArgs {
    #[arg(long = "type", default_value = "kronecker")]
    pub ty: String,
    /// A count of homogeneous cliques, or clique ranks such as `2,2,1` or `ranks=5`.
    #[arg(long, default_value = "1")]
    pub cliques: String,
    #[arg(long, value_enum, default_value_t = RouteArg::Both, ignore_case = true)]
    pub route: RouteArg,
}

fn report_text(rep: &StratReport, failed: &[String]) -> String {
    let factors: Vec<String> = rep.factors.iter().filter(|(_, n)| **n > 0).map(|(k, n)| format!("{k} x{n}")).collect();
    let mut t = format!(
        "route {}: {} U={} r={} s={} length {}\nfactors: {}\n{}",
        rep.route,
        rep.affine_type,
        rep.cliques,
        rep.r,
        rep.s(),
        rep.length,
        factors.join(", "),
        rep.tree.outline()
    );
    if failed.is_empty() {
        t.push_str("checks: all pass\n");
    } else {
        let _ = writeln!(t, "checks failed: {}", failed.join("; "));
    }
    t
}

pub fn stratify(a: &StratifyArgs) -> CmdResult {
    let ty = parse_type(&a.ty)?;
    let u = parse::cliques(&a.cliques)?;
    let mut reports = Vec::new();
    if a.route != RouteArg::B {
        reports.push(stratify_a(ty, &u)?);
    }
    if a.route != RouteArg::A {
        reports.push(stratify_b(ty, &u)?);
    }
    let mut ok = true;
    let mut text = String::new();
    let mut items = Vec::new();
    for rep in &reports {
        let failed = verify_report(rep);
        ok &= failed.is_empty();
        text.push_str(&report_text(rep, &failed));
        let mut v = rep.to_json();
        v["checks_failed"] = json!(failed);
        items.push(v);
    }
    let json = json!({"command": "stratify", "reports": items});
    Ok(Outcome::new(json, text).checked(ok))
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Reduced sample counts.
    #[arg(long)]
    pub quick: bool,
    /// Run only these suites (comma separated).
    #[arg(long)]
    pub only: Option<String>,
}

pub fn verify_all(a: &VerifyArgs, seed: u64) -> CmdResult {
    let cfg = SuiteConfig { seed, quick: a.quick };
    let names: Vec<String> = match &a.only {
        Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
        None => SUITES.iter().map(|s| s.to_string()).collect(),
    };
    for n in &names {
        if !SUITES.contains(&n.as_str()) {
            return Err(CliError { kind: "Usage".into(), message: format!("unknown suite `{n}`"), code: 2 });
        }
    }
    let mut reports = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    for n in &names {
        let r = run_suite(n, &cfg)?;
        ok &= r.passed();
        let _ = writeln!(text, "{:<9} {} ({} checks)", r.name, if r.passed() { "PASS" } else { "FAIL" }, r.checks);
        for f in &r.failures {
            let _ = writeln!(text, "  {f}");
        }
        reports.push(r);
    }
    let json = json!({"command": "verify-all", "seed": seed, "quick": a.quick, "passed": ok, "suites": reports});
    Ok(Outcome::new(json, text).checked(ok))
}
