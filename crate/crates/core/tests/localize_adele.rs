mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use tamestrat_core::adele::{
    localize_to_adele, random_adele, random_integral, upsilon_denominator_check, AdeleElem, IndexFamily, UpsilonElem,
};
use tamestrat_core::algebra::{Field, Poly, PrimeField, Rationals};
use tamestrat_core::localize::{
    d_member, iterated_localization_check, random_fraction, two_step_member, DedekindElem, DeltaSet, LocalizeError,
};

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn to_u64(f: &Poly<PrimeField>) -> Vec<u64> {
    f.coeffs().to_vec()
}

fn delta(p: u64, s: &str) -> DeltaSet<PrimeField> {
    DeltaSet::parse(&fp(p), s, false).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn membership_matches_trial_division(p in prop::sample::select(vec![2u64, 3]), seed in any::<u64>()) {
        let f = fp(p);
        let d = if p == 2 { delta(2, "x, x+1, x^2+x+1") } else { delta(3, "x, x^2+1") };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (num, den) = random_fraction(&f, 4, d.polys().unwrap(), &mut rng);
        let raw: Vec<Vec<u64>> = d.polys().unwrap().iter().map(to_u64).collect();
        let want = common::localization_member(&to_u64(&num), &to_u64(&den), &raw, p);
        prop_assert_eq!(d_member(&num, &den, &d).unwrap(), want);
        prop_assert_eq!(DedekindElem::new(&num, &den, &d).is_ok(), want);
        prop_assert!(d_member(&num, &den, &DeltaSet::All).unwrap());
    }

    #[test]
    fn localization_is_a_ring(seed in any::<u64>()) {
        let f = fp(3);
        let d = delta(3, "x, x+1");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut member = || loop {
            let (a, b) = random_fraction(&f, 4, d.polys().unwrap(), &mut rng);
            if let Ok(e) = DedekindElem::new(&a, &b, &d) {
                break e;
            }
        };
        let (a, b) = (member(), member());
        for c in [a.add(&b).unwrap(), a.mul(&b).unwrap(), a.sub(&b).unwrap()] {
            prop_assert!(c.is_reduced());
            prop_assert!(d_member(c.numerator(), &c.denominator(), &d).unwrap());
        }
        prop_assert_eq!(a.sub(&a).unwrap(), DedekindElem::zero(f, &d));
    }

    #[test]
    fn larger_delta_gives_larger_ring(seed in any::<u64>()) {
        let f = fp(2);
        let small = delta(2, "x");
        let big = delta(2, "x, x+1, x^2+x+1");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (num, den) = random_fraction(&f, 4, big.polys().unwrap(), &mut rng);
        if d_member(&num, &den, &small).unwrap() {
            prop_assert!(d_member(&num, &den, &big).unwrap());
        }
    }
}

#[test]
fn inverses_of_delta_elements() {
    let f = Rationals;
    let d = DeltaSet::parse(&f, "x, x^2+1", false).unwrap();
    let x = Poly::parse(&f, "x").unwrap();
    let inv = DedekindElem::inverse_of(&x, &d).unwrap();
    assert_eq!(inv.mul(&DedekindElem::from_poly(&x, &d)).unwrap(), DedekindElem::one(f, &d));
    let y = Poly::parse(&f, "x+1").unwrap();
    assert!(matches!(DedekindElem::inverse_of(&y, &d), Err(LocalizeError::NotMember)));
    assert!(DeltaSet::parse(&f, "x^2-1", false).is_err());
    assert!(DeltaSet::parse(&f, "2*x", false).is_err());
}

#[test]
fn one_step_equals_two_step() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pairs = [
        (2, "x", "x+1"),
        (2, "x, x+1", "x^2+x+1"),
        (3, "x", "x^2+1"),
        (3, "x+1, x+2", "x"),
        (3, "x^2+1", "x^2+x+2"),
    ];
    for (p, a, b) in pairs {
        let f = fp(p);
        let (d1, d2) = (delta(p, a), delta(p, b));
        let hints: Vec<_> = d1.polys().unwrap().iter().chain(d2.polys().unwrap()).cloned().collect();
        let samples: Vec<_> = (0..100).map(|_| random_fraction(&f, 4, &hints, &mut rng)).collect();
        let rep = iterated_localization_check(&d1, &d2, &samples).unwrap();
        assert!(rep.passed(), "{a} then {b}");
        assert!(rep.samples.iter().any(|s| s.one_step) && rep.samples.iter().any(|s| !s.one_step));
        for (num, den) in &samples {
            assert!(two_step_member(num, den, &d1, &DeltaSet::All).unwrap());
        }
    }
    assert!(matches!(iterated_localization_check(&delta(2, "x"), &delta(2, "x"), &[]), Err(LocalizeError::Overlap(_))));
}

fn family() -> IndexFamily<PrimeField> {
    IndexFamily::cofinite(fp(3), 3, 16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adeles_are_closed(seed in any::<u64>()) {
        let fam = family();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_adele(&fam, 3, &mut rng);
        let b = random_adele(&fam, 3, &mut rng);
        let sum = a.add(&b).unwrap();
        let prod = a.mul(&b).unwrap();
        let union: std::collections::BTreeSet<u32> = a.exceptional_set().union(&b.exceptional_set()).copied().collect();
        prop_assert!(sum.exceptional_set().is_subset(&union));
        prop_assert!(prod.exceptional_set().is_subset(&union));
        prop_assert_eq!(sum.tail(), &((a.tail() + b.tail()) % BigInt::from(3)));
        prop_assert_eq!(prod.tail(), &((a.tail() * b.tail()) % BigInt::from(3)));
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(AdeleElem::from_json(&fam, &a.to_json()).unwrap(), a.clone());

        let x = random_integral(&fam, &mut rng);
        let y = random_integral(&fam, &mut rng);
        prop_assert!(x.mul(&y).unwrap().is_integral() && x.add(&y).unwrap().is_integral());
    }
}

#[test]
fn componentwise_product_by_hand() {
    let fam = family();
    let t1 = AdeleElem::monomial_at(&fam, 1, -2, 1).unwrap();
    let t2 = AdeleElem::monomial_at(&fam, 1, 3, 2).unwrap();
    let prod = t1.mul(&t2).unwrap();
    assert_eq!(prod.component(1).valuation(), Some(1));
    assert_eq!(prod.component(2).valuation(), Some(0));
    assert_eq!(prod.tail(), &BigInt::from(2));
    assert_eq!(t1.exceptional_set().into_iter().collect::<Vec<_>>(), vec![1]);
    assert!(!t1.is_integral() && t2.is_integral());
    let zero_tail = AdeleElem::monomial_at(&fam, 2, 0, 3).unwrap();
    assert_eq!(zero_tail.to_json()["tail"], json!("zero"));
}

#[test]
fn upsilon_is_a_denominator_set() {
    let fam = family();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let samples: Vec<_> = (0..100).map(|_| random_integral(&fam, &mut rng)).collect();
    let idx: Vec<u32> = fam.indices().collect();
    for _ in 0..5 {
        let u = UpsilonElem::random(&idx, 5, &mut rng);
        assert!(upsilon_denominator_check(&samples, &u, &fam).unwrap().passed());
    }
    let too_big = UpsilonElem::single(1, 16).unwrap();
    assert!(upsilon_denominator_check(&samples, &too_big, &fam).is_err());
    assert!(UpsilonElem::single(1, 0).is_err());
    let rep = localize_to_adele(&fam, 100, &mut rng).unwrap();
    assert!(rep.passed());
}

#[test]
fn residue_fields_from_polynomials() {
    let f = fp(2);
    let polys = vec![Poly::parse(&f, "x").unwrap(), Poly::parse(&f, "x^2+x+1").unwrap()];
    let fam = IndexFamily::from_polys(&polys, 8).unwrap();
    assert_eq!(fam.len(), 2);
    assert_eq!(fam.residue(2).characteristic(), 2);
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed());
    let a = random_adele(&fam, 2, &mut rng);
    assert_eq!(a.mul(&AdeleElem::one(&fam)).unwrap(), a);
}

fn rng_seed() -> u64 {
    ChaCha8Rng::seed_from_u64(0).gen()
}
