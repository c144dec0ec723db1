//! Seeded invariant suites, one per module, used by `verify-all`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adele::{localize_to_adele, random_adele, random_integral, upsilon_denominator_check, IndexFamily, UpsilonElem};
use crate::algebra::{ExtField, Field, Poly, PrimeField, Rationals};
use crate::kronrep::{prufer_end_truncation, KronRep, RaySource};
use crate::localize::{d_member, iterated_localization_check, random_fraction, random_poly, DedekindElem, DeltaSet};
use crate::quiver::AffineType;
use crate::series::TruncatedSeries;
use crate::strat::{full_clique_subsets, stratify_a, stratify_b, verify_report};
use crate::tube::{delta, gamma_localization_witness, pi_law_check, GammaRing, PiLaw};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Reduced sample counts.
    pub quick: bool,
}

impl SuiteConfig {
    fn samples(&self, full: usize) -> usize {
        if self.quick {
            (full / 4).max(1)
        } else {
            full
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.into(), checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const SUITES: [&str; 9] = ["algebra", "series", "quiver", "kronrep", "tube", "prufer", "localize", "adele", "strat"];

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    match name {
        "algebra" => algebra_suite(cfg),
        "series" => series_suite(cfg),
        "quiver" => quiver_suite(),
        "kronrep" => kronrep_suite(cfg),
        "tube" => tube_suite(cfg),
        "prufer" => prufer_suite(),
        "localize" => localize_suite(cfg),
        "adele" => adele_suite(cfg),
        "strat" => strat_suite(),
        other => Err(crate::quiver::QuiverError::Parse(format!("unknown suite `{other}`")).into()),
    }
}

pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<SuiteReport>, Error> {
    SUITES.iter().map(|s| run_suite(s, cfg)).collect()
}

fn field_axioms<F: Field, R: Rng>(field: &F, n: usize, rng: &mut R, rep: &mut SuiteReport) {
    for _ in 0..n {
        let (a, b, c) = (field.random(rng), field.random(rng), field.random(rng));
        let lhs = field.mul(&a, &field.add(&b, &c));
        let rhs = field.add(&field.mul(&a, &b), &field.mul(&a, &c));
        rep.check(lhs == rhs, || format!("{}: distributivity", field.descriptor()));
        if !field.is_zero(&a) {
            let inv = field.inv(&a).expect("nonzero");
            rep.check(field.is_one(&field.mul(&a, &inv)), || format!("{}: inverse", field.descriptor()));
        }
    }
}

fn algebra_suite(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let mut rep = SuiteReport::new("algebra");
    let mut rng = cfg.rng(1);
    let n = cfg.samples(200);
    let f3 = PrimeField::new(3)?;
    let f9 = ExtField::new(Poly::parse(&f3, "x^2+1")?)?;
    field_axioms(&f3, n, &mut rng, &mut rep);
    field_axioms(&f9, n, &mut rng, &mut rep);
    field_axioms(&Rationals, n / 4 + 1, &mut rng, &mut rep);
    for _ in 0..n {
        let a = random_poly(&f3, 6, &mut rng);
        let b = random_poly(&f3, 3, &mut rng);
        if b.is_zero() {
            continue;
        }
        let (q, r) = a.div_rem(&b)?;
        let ok = &(&q * &b) + &r == a && r.degree().unwrap_or(0) < b.degree().unwrap_or(0).max(1);
        rep.check(ok || b.is_constant(), || format!("division {a} by {b}"));
        let (g, s, t) = a.ext_gcd(&b);
        rep.check(&(&s * &a) + &(&t * &b) == g, || format!("bezout {a}, {b}"));
    }
    Ok(rep)
}

fn series_suite(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let mut rep = SuiteReport::new("series");
    let mut rng = cfg.rng(2);
    let f5 = PrimeField::new(5)?;
    let n = 16;
    let rand_series = |rng: &mut ChaCha8Rng| {
        TruncatedSeries::new(f5, (0..n).map(|_| f5.random(rng)).collect()).expect("nonempty")
    };
    for _ in 0..cfg.samples(200) {
        let (a, b, c) = (rand_series(&mut rng), rand_series(&mut rng), rand_series(&mut rng));
        let lhs = a.mul(&b.add(&c)?)?;
        let rhs = a.mul(&b)?.add(&a.mul(&c)?)?;
        rep.check(lhs == rhs, || "distributivity".into());
        rep.check(a.mul(&b)? == b.mul(&a)?, || "commutativity".into());
        if a.is_unit() {
            rep.check(a.mul(&a.inv()?)? == TruncatedSeries::one(f5, n), || "unit inverse".into());
        }
        if !a.is_zero() {
            let (k, u) = a.dvr_decompose()?;
            rep.check(u.is_unit() && u.to_laurent().shift(k as i64) == a.to_laurent(), || "valuation decomposition".into());
        }
    }
    Ok(rep)
}

fn quiver_suite() -> Result<SuiteReport, Error> {
    let mut rep = SuiteReport::new("quiver");
    for ty in AffineType::catalogue() {
        let q = ty.quiver();
        let h = q.radical_vector()?;
        rep.check(q.quadratic_form(&h)? == 0, || format!("{ty}: q(h) = 0"));
        let defect: usize = ty.tube_ranks().iter().map(|c| c - 1).sum();
        rep.check(defect + 2 == q.r(), || format!("{ty}: sum(c-1) = r-2"));
        let mut sizes: Vec<usize> = q.simple_regular_orbits()?.iter().map(Vec::len).filter(|&l| l > 1).collect();
        sizes.sort_unstable();
        rep.check(sizes == ty.tube_ranks(), || format!("{ty}: Coxeter orbits"));
        let bound = q.delta_bound()?;
        for orbit in q.simple_regular_orbits()? {
            for u in orbit {
                let d = q.delta_multiplicity(&u)?;
                rep.check(d <= bound, || format!("{ty}: delta({u:?}) = {d} > {bound}"));
            }
        }
    }
    Ok(rep)
}

fn kronrep_suite(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let mut rep = SuiteReport::new("kronrep");
    let mut rng = cfg.rng(4);
    let f3 = PrimeField::new(3)?;
    for _ in 0..cfg.samples(200) {
        let dims: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=4)).collect();
        let x = KronRep::random(f3, dims[0], dims[1], &mut rng);
        let y = KronRep::random(f3, dims[2], dims[3], &mut rng);
        let lhs = x.hom_dim(&y)? as i64 - x.ext_dim_cokernel(&y)? as i64;
        rep.check(lhs == x.euler(&y), || format!("euler {:?} {:?}", x.dim_vector(), y.dim_vector()));
        rep.check(x.ext_dim(&y)? == x.ext_dim_cokernel(&y)?, || "ext formula vs cokernel".into());
    }
    let v = KronRep::simple_v(f3);
    let by_formula = AffineType::Kronecker.quiver().delta_multiplicity(&v.dim_vector())?;
    let ext = v.ext_dim_cokernel(&v)?;
    rep.check(by_formula == 2, || format!("delta(V) = {by_formula}"));
    rep.check(ext == 1 && v.hom_dim(&v)? == 1, || "End(V) = Ext(V,V) = k".into());
    Ok(rep)
}

fn tube_suite(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let mut rep = SuiteReport::new("tube");
    for m in 1..=6 {
        for r in 1..=m {
            for s in 1..=m {
                for t in 1..=m {
                    let direct = delta(r, s) + delta(s, t) == delta(r, t);
                    let want = if direct { PiLaw::Direct } else { PiLaw::Wound };
                    rep.check(pi_law_check(r, s, t, m)? == want, || format!("pi law ({r},{s},{t}) m={m}"));
                }
            }
        }
    }
    let f3 = PrimeField::new(3)?;
    let mut rng = cfg.rng(5);
    for m in 1..=8 {
        let w = gamma_localization_witness(&f3, m, 16)?;
        rep.check(w.all_hold(), || format!("Gamma({m}) witness"));
        let ring = GammaRing::new(f3, m, 16)?;
        for _ in 0..cfg.samples(200) {
            let a = ring.random_member(&mut rng);
            let b = ring.random_member(&mut rng);
            let ok = ring.is_member(&a.add(&b)?) && ring.is_member(&a.mul(&b)?);
            rep.check(ok, || format!("Gamma({m}) closure"));
        }
    }
    Ok(rep)
}

fn prufer_suite() -> Result<SuiteReport, Error> {
    let mut rep = SuiteReport::new("prufer");
    let f2 = PrimeField::new(2)?;
    let f3 = PrimeField::new(3)?;
    let cases = [(f2, "x"), (f2, "x+1"), (f3, "x"), (f3, "x^2+1")];
    for (field, p) in cases {
        let poly = Poly::parse(&field, p)?;
        for n in 1..=4 {
            let r = prufer_end_truncation(&field, &RaySource::Poly(poly.clone()), n)?;
            rep.check(r.matches_truncated_power_series(), || format!("End(U[{n}]) for {p} over {}", field.descriptor()));
        }
    }
    for n in 1..=4 {
        let r = prufer_end_truncation(&f3, &RaySource::V, n)?;
        rep.check(r.matches_truncated_power_series(), || format!("End(V[{n}])"));
    }
    Ok(rep)
}

fn localize_suite(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let mut rep = SuiteReport::new("localize");
    let mut rng = cfg.rng(7);
    for p in [2u64, 3] {
        let f = PrimeField::new(p)?;
        let pairs = [
            ("x", "x+1"),
            ("x", "x^2+x+2"),
            ("x+1", ""),
            ("x^2+1", "x, x+2"),
            ("x, x+1", "x^3+x+1"),
        ];
        for (a, b) in pairs {
            let (Ok(d1), Ok(d2)) = (DeltaSet::parse(&f, a, false), DeltaSet::parse(&f, b, false)) else {
                continue;
            };
            let hints: Vec<_> = d1.polys().into_iter().chain(d2.polys()).flatten().cloned().collect();
            let samples: Vec<_> = (0..cfg.samples(100)).map(|_| random_fraction(&f, 4, &hints, &mut rng)).collect();
            let r = iterated_localization_check(&d1, &d2, &samples)?;
            rep.check(r.passed(), || format!("F{p}: one-step vs two-step for {d1} and {d2}"));
            let union = d1.union(&d2);
            for _ in 0..cfg.samples(50) {
                let g = |rng: &mut ChaCha8Rng| {
                    let (f_, _) = random_fraction(&f, 3, &hints, rng);
                    let mut den = Poly::one(f);
                    for h in &hints {
                        if rng.gen_bool(0.5) {
                            den = &den * h;
                        }
                    }
                    DedekindElem::new(&f_, &den, &union)
                };
                let (x, y) = (g(&mut rng)?, g(&mut rng)?);
                let (s, m) = (x.add(&y)?, x.mul(&y)?);
                rep.check(s.is_reduced() && m.is_reduced(), || "closure".into());
                rep.check(s.reduce()? == s, || "reduction idempotent".into());
            }
        }
        for _ in 0..cfg.samples(100) {
            let (num, den) = random_fraction(&f, 4, &[], &mut rng);
            rep.check(d_member(&num, &den, &DeltaSet::All)?, || "All membership".into());
        }
    }
    Ok(rep)
}

fn adele_suite(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let mut rep = SuiteReport::new("adele");
    let mut rng = cfg.rng(8);
    let f3 = PrimeField::new(3)?;
    let fam = IndexFamily::cofinite(f3, 3, 16);
    for _ in 0..cfg.samples(200) {
        let a = random_adele(&fam, 4, &mut rng);
        let b = random_adele(&fam, 4, &mut rng);
        let union: std::collections::BTreeSet<u32> = a.exceptional_set().union(&b.exceptional_set()).copied().collect();
        let s = a.add(&b)?;
        let p = a.mul(&b)?;
        rep.check(s.exceptional_set().is_subset(&union), || "sum exceptional set".into());
        rep.check(p.exceptional_set().is_subset(&union), || "product exceptional set".into());
        rep.check(a.neg().exceptional_set() == a.exceptional_set(), || "negation".into());
        rep.check(a.add(&a.neg())?.is_zero(), || "additive inverse".into());
    }
    let idx: Vec<u32> = fam.indices().collect();
    for _ in 0..cfg.samples(100) {
        let sample = random_integral(&fam, &mut rng);
        let u = UpsilonElem::random(&idx, 15, &mut rng);
        let r = upsilon_denominator_check(&[sample], &u, &fam)?;
        rep.check(r.passed(), || "Ore witness".into());
    }
    let eq = localize_to_adele(&fam, cfg.samples(100), &mut rng)?;
    rep.check(eq.passed(), || "fractions vs adeles".into());
    Ok(rep)
}

fn strat_suite() -> Result<SuiteReport, Error> {
    let mut rep = SuiteReport::new("strat");
    for ty in AffineType::catalogue() {
        for u in full_clique_subsets(ty, 2) {
            let a = stratify_a(ty, &u)?;
            let b = stratify_b(ty, &u)?;
            rep.check(a.length == b.length + 1, || format!("{ty} {u}: |A| - |B|"));
            for f in verify_report(&a).into_iter().chain(verify_report(&b)) {
                rep.check(false, || format!("{ty} {u}: {f}"));
            }
            rep.checks += 1;
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        let cfg = SuiteConfig { seed: 0, quick: true };
        for r in run_all(&cfg).unwrap() {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
        }
    }
}
