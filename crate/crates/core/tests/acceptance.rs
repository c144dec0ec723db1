//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails or exceeds its time budget.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tamestrat_core::adele::{random_adele, random_integral, upsilon_denominator_check, IndexFamily, UpsilonElem};
use tamestrat_core::algebra::{Matrix, Poly, PrimeField};
use tamestrat_core::descriptor::CliqueSelection;
use tamestrat_core::kronrep::{prufer_end_truncation, KronRep, RaySource};
use tamestrat_core::localize::{d_member, iterated_localization_check, random_fraction, DeltaSet};
use tamestrat_core::quiver::AffineType;
use tamestrat_core::series::TruncatedSeries;
use tamestrat_core::strat::{full_clique_subsets, stratify, Route, StratReport};
use tamestrat_core::tube::{gamma_localization_witness, pi_law_check, GammaRing, PiLaw};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn to_rep(x: &KronRep<PrimeField>) -> common::Rep {
    let rows = |m: &Matrix<PrimeField>| m.to_rows();
    common::Rep { d1: x.d1(), d2: x.d2(), a: rows(x.a()), b: rows(x.b()) }
}

fn leaf_kinds(tree: &Value, out: &mut BTreeMap<String, usize>) {
    if tree["status"] == "leaf" {
        let node = &tree["node"];
        let kind = if node == "BaseField" {
            "k"
        } else if node.get("PowerSeriesRing").is_some() {
            "k[[x]]"
        } else if node.get("LaurentSeriesRing").is_some() {
            "k((x))"
        } else if node.get("Dedekind").is_some() {
            "dedekind"
        } else {
            "other"
        };
        *out.entry(kind.to_string()).or_default() += 1;
        return;
    }
    for v in tree.as_object().into_iter().flat_map(|m| m.values()) {
        if v.get("status").is_some() {
            leaf_kinds(v, out);
        }
    }
}

fn walked(rep: &StratReport) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    leaf_kinds(&rep.to_json()["tree"], &mut m);
    m
}

fn multiset(pairs: &[(&str, usize)]) -> BTreeMap<String, usize> {
    pairs.iter().filter(|(_, n)| *n > 0).map(|(k, n)| (k.to_string(), *n)).collect()
}

fn kronecker_lengths() -> Check {
    let u = CliqueSelection::homogeneous(1);
    let a = stratify(AffineType::Kronecker, &u, Route::A).map_err(|e| e.to_string())?;
    let b = stratify(AffineType::Kronecker, &u, Route::B).map_err(|e| e.to_string())?;
    ensure!(a.length == 3 && b.length == 2, "lengths {} and {}", a.length, b.length);
    ensure!(walked(&a) == multiset(&[("k", 2), ("k((x))", 1)]), "A factors {:?}", walked(&a));
    ensure!(walked(&b) == multiset(&[("k[[x]]", 1), ("dedekind", 1)]), "B factors {:?}", walked(&b));
    Ok("A = {k:2, k((x)):1}, B = {k[[x]]:1, dedekind:1}".into())
}

fn all_types() -> Check {
    let mut count = 0;
    for ty in AffineType::catalogue() {
        let r = ty.vertex_count();
        let defect: usize = ty.tube_ranks().iter().map(|c| c - 1).sum();
        ensure!(defect + 2 == r, "{ty}: sum(c-1) = {defect}, r = {r}");
        for u in full_clique_subsets(ty, 2) {
            let s = u.s();
            let a = stratify(ty, &u, Route::A).map_err(|e| format!("{ty} {u}: {e}"))?;
            let b = stratify(ty, &u, Route::B).map_err(|e| format!("{ty} {u}: {e}"))?;
            ensure!(a.length == b.length + 1, "{ty} {u}: |A| = {}, |B| = {}", a.length, b.length);
            ensure!(walked(&a) == multiset(&[("k", r), ("k((x))", s)]), "{ty} {u}: A {:?}", walked(&a));
            ensure!(
                walked(&b) == multiset(&[("k", r - 2), ("k[[x]]", s), ("dedekind", 1)]),
                "{ty} {u}: B {:?}",
                walked(&b)
            );
            count += 1;
        }
    }
    Ok(format!("{} types, {count} selections", AffineType::catalogue().len()))
}

fn euler_pairs() -> Check {
    let f = fp(3);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..200 {
        let mut dims = || (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let ((a1, a2), (b1, b2)) = (dims(), dims());
        let x = KronRep::random(f, a1, a2, &mut rng);
        let y = KronRep::random(f, b1, b2, &mut rng);
        let hom = x.hom_dim(&y).map_err(|e| e.to_string())?;
        let (oracle_hom, oracle_ext) = common::hom_ext(&to_rep(&x), &to_rep(&y), 3);
        let euler = common::kronecker_euler((a1 as i64, a2 as i64), (b1 as i64, b2 as i64));
        ensure!(hom == oracle_hom, "pair {k}: hom {hom} vs oracle {oracle_hom}");
        ensure!(hom as i64 - oracle_ext as i64 == euler, "pair {k}: hom - ext != {euler}");
        ensure!(x.euler(&y) == euler, "pair {k}: library euler form");
    }
    Ok("200 pairs over F_3".into())
}

/// Counts pairs `(f1, f2)` over `F_2` with `f1 A = A' f2` and `f1 B = B' f2`.
fn brute_hom_f2(x: &common::Rep, y: &common::Rep) -> u32 {
    let (n1, n2) = (y.d1 * x.d1, y.d2 * x.d2);
    let mut count = 0;
    for bits in 0u64..(1 << (n1 + n2)) {
        let bit = |k: usize| (bits >> k) & 1;
        let f1 = |i: usize, j: usize| bit(i * x.d1 + j);
        let f2 = |i: usize, j: usize| bit(n1 + i * x.d2 + j);
        let mut ok = true;
        for (mx, my) in [(&x.a, &y.a), (&x.b, &y.b)] {
            for i in 0..y.d1 {
                for j in 0..x.d2 {
                    let lhs: u64 = (0..x.d1).map(|l| f1(i, l) * mx[l][j]).sum();
                    let rhs: u64 = (0..y.d2).map(|l| my[i][l] * f2(l, j)).sum();
                    ok &= lhs % 2 == rhs % 2;
                }
            }
        }
        count += ok as u32;
    }
    count.trailing_zeros()
}

fn delta_check() -> Check {
    let q = AffineType::Kronecker.quiver();
    let formula = q.delta_multiplicity(&[1, 1]).map_err(|e| e.to_string())?;
    let v = common::Rep { d1: 1, d2: 1, a: vec![vec![0]], b: vec![vec![1]] };
    let r = common::Rep { d1: 3, d2: 1, a: vec![vec![1], vec![0], vec![0]], b: vec![vec![0], vec![1], vec![0]] };
    let hom = brute_hom_f2(&v, &r) as i64;
    let brute = hom - common::kronecker_euler((1, 1), (3, 1));
    ensure!(formula == 2 && brute == 2, "formula {formula}, brute force {brute}");
    ensure!(common::hom_ext(&v, &r, 3).1 == 2, "ext oracle over F_3");
    let mut orbits = 0;
    for ty in AffineType::catalogue() {
        let q = ty.quiver();
        let bound = q.delta_bound().map_err(|e| e.to_string())?;
        for u in q.simple_regular_orbits().map_err(|e| e.to_string())?.into_iter().flatten() {
            let d = q.delta_multiplicity(&u).map_err(|e| e.to_string())?;
            ensure!(d <= bound, "{ty} {u:?}: {d} > {bound}");
            orbits += 1;
        }
    }
    Ok(format!("delta(V) = 2 both ways; {orbits} simple regulars within bound"))
}

fn pi_laws() -> Check {
    let mut n = 0;
    for m in 1..=6usize {
        let shift = |a: usize, b: usize| b as i64 - a as i64 + if a >= b { m as i64 } else { 0 };
        for r in 1..=m {
            for s in 1..=m {
                for t in 1..=m {
                    let want = if shift(r, s) + shift(s, t) == shift(r, t) { PiLaw::Direct } else { PiLaw::Wound };
                    let got = pi_law_check(r, s, t, m).map_err(|e| e.to_string())?;
                    ensure!(got == want, "({r},{s},{t}) m = {m}: {got:?}");
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} triples"))
}

fn gamma_check() -> Check {
    let f = fp(3);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for m in 1..=8usize {
        let ring = GammaRing::new(f, m, 16).map_err(|e| e.to_string())?;
        let jm = ring.j().pow(m as u32).map_err(|e| e.to_string())?;
        for a in 0..m {
            for b in 0..m {
                let want = if a == b { TruncatedSeries::t(f, 16) } else { TruncatedSeries::zero(f, 16) };
                ensure!(jm.entries[a][b] == want, "m = {m}: J^m entry ({a},{b})");
            }
        }
        let w = gamma_localization_witness(&f, m, 16).map_err(|e| e.to_string())?;
        ensure!(w.all_hold(), "m = {m}: witnesses");
        for _ in 0..200 {
            let x = ring.random_member(&mut rng);
            let y = ring.random_member(&mut rng);
            let sum = x.add(&y).map_err(|e| e.to_string())?;
            let prod = x.mul(&y).map_err(|e| e.to_string())?;
            ensure!(ring.is_member(&sum) && ring.is_member(&prod), "m = {m}: closure");
            for i in 0..m {
                for j in 0..i {
                    ensure!(prod.entries[i][j].coeffs()[0] == 0, "m = {m}: lower entry not in (x)");
                }
            }
        }
    }
    Ok("m = 1..8 at precision 16".into())
}

fn prufer_check() -> Check {
    let cases: [(u64, &str, usize); 4] = [(2, "x", 1), (2, "x+1", 1), (3, "x", 1), (3, "x^2+1", 2)];
    for (p, poly, deg) in cases {
        let f = fp(p);
        let q = Poly::parse(&f, poly).map_err(|e| e.to_string())?;
        for n in 1..=4 {
            let rep = prufer_end_truncation(&f, &RaySource::Poly(q.clone()), n).map_err(|e| e.to_string())?;
            let u = KronRep::poly_ray(&q, n).map_err(|e| e.to_string())?;
            let (oracle, _) = common::hom_ext(&to_rep(&u), &to_rep(&u), p);
            ensure!(rep.dimension == n * deg && oracle == n * deg, "{poly} over F_{p}, n = {n}: {} / {oracle}", rep.dimension);
            ensure!(rep.nilpotency_index == n, "{poly} over F_{p}, n = {n}: index {}", rep.nilpotency_index);
            ensure!(rep.matches_truncated_power_series(), "{poly} over F_{p}, n = {n}: shape");
        }
    }
    Ok("16 truncations".into())
}

fn iterated_check() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pairs = [(2, "x", "x+1"), (2, "x, x+1", "x^2+x+1"), (3, "x", "x^2+1"), (3, "x+1, x+2", "x"), (3, "x^2+1", "x^2+x+2")];
    for (p, a, b) in pairs {
        let f = fp(p);
        let d1 = DeltaSet::parse(&f, a, false).map_err(|e| e.to_string())?;
        let d2 = DeltaSet::parse(&f, b, false).map_err(|e| e.to_string())?;
        let hints: Vec<_> = d1.polys().unwrap().iter().chain(d2.polys().unwrap()).cloned().collect();
        let samples: Vec<_> = (0..100).map(|_| random_fraction(&f, 4, &hints, &mut rng)).collect();
        let rep = iterated_localization_check(&d1, &d2, &samples).map_err(|e| e.to_string())?;
        ensure!(rep.passed(), "{{{a}}} then {{{b}}}: {} counterexamples", rep.counterexamples.len());
        let raw: Vec<Vec<u64>> = hints.iter().map(|h| h.coeffs().to_vec()).collect();
        for ((num, den), s) in samples.iter().zip(&rep.samples) {
            let oracle = common::localization_member(num.coeffs(), den.coeffs(), &raw, p);
            ensure!(s.one_step == oracle, "{}: oracle says {oracle}", s.fraction);
            ensure!(d_member(num, den, &DeltaSet::All).map_err(|e| e.to_string())?, "{}: not in k(x)", s.fraction);
        }
    }
    Ok("5 pairs x 100 fractions".into())
}

fn adele_check() -> Check {
    let f = fp(3);
    let fam = IndexFamily::cofinite(f, 3, 16);
    let three = BigInt::from(3);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..200 {
        let a = random_adele(&fam, 3, &mut rng);
        let b = random_adele(&fam, 3, &mut rng);
        let union: BTreeSet<u32> = a.exceptional_set().union(&b.exceptional_set()).copied().collect();
        let sum = a.add(&b).map_err(|e| e.to_string())?;
        let prod = a.mul(&b).map_err(|e| e.to_string())?;
        ensure!(sum.exceptional_set().is_subset(&union), "pair {k}: sum exceptional set");
        ensure!(prod.exceptional_set().is_subset(&union), "pair {k}: product exceptional set");
        ensure!(sum.tail() == &((a.tail() + b.tail()) % &three), "pair {k}: sum tail");
        ensure!(prod.tail() == &((a.tail() * b.tail()) % &three), "pair {k}: product tail");
        for i in fam.indices() {
            let (va, vb, vp) = (a.component(i).valuation(), b.component(i).valuation(), prod.component(i).valuation());
            if let (Some(x), Some(y)) = (va, vb) {
                ensure!(vp == Some(x + y), "pair {k}: valuation at {i}");
            }
        }
    }
    let samples: Vec<_> = (0..100).map(|_| random_integral(&fam, &mut rng)).collect();
    let idx: Vec<u32> = fam.indices().collect();
    let upsilon = loop {
        let u = UpsilonElem::random(&idx, 5, &mut rng);
        if !u.powers().is_empty() {
            break u;
        }
    };
    let rep = upsilon_denominator_check(&samples, &upsilon, &fam).map_err(|e| e.to_string())?;
    ensure!(rep.precision == 16 && rep.witnesses.len() == 100 && rep.passed(), "Ore witnesses");
    let s = upsilon.to_adele(&fam).map_err(|e| e.to_string())?;
    for a in &samples {
        let sa = s.mul(a).map_err(|e| e.to_string())?;
        ensure!(sa == a.mul(&s).map_err(|e| e.to_string())? && sa.is_integral(), "s a != a s");
    }
    Ok("200 pairs with cofinite tail; 100 Ore witnesses".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 9] = [
        ("kronecker stratification lengths", 1, kronecker_lengths),
        ("all types and full-clique subsets", 10, all_types),
        ("hom - ext equals the Euler form", 10, euler_pairs),
        ("delta multiplicity", 5, delta_check),
        ("pi composition law", 1, pi_laws),
        ("Gamma(m) and J^m = x I", 5, gamma_check),
        ("Pruefer endomorphism truncations", 10, prufer_check),
        ("iterated localization", 5, iterated_check),
        ("adele closure and Ore condition", 5, adele_check),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > Duration::from_secs(budget) => Err(format!("took {elapsed:?}, budget {budget}s")),
            r => r,
        };
        match result {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) in {:.3}s", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
