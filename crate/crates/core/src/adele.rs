//! Restricted products of Laurent series fields.
//!
//! An [`IndexFamily`] lists finitely many indices with their residue fields
//! and, when cofinite, a default residue field for every other index. An
//! [`AdeleElem`] stores a Laurent series at each listed index and a single
//! integral constant (`tail`) shared by all unlisted ones, so "integral at
//! almost all indices" holds by construction.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{ExtField, Field, Poly};
use crate::kronrep::{parse_scalar, scalar_json};
use crate::series::{LaurentElem, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdeleError {
    #[error("operands use different index families")]
    IndexMismatch,
    #[error("index {0} is not listed in the family")]
    UnknownIndex(u32),
    #[error("exponent {n} at index {i} needs precision above {precision}")]
    PrecisionTooLow { i: u32, n: u32, precision: usize },
    #[error("upsilon exponents must be at least 1 (index {0})")]
    ZeroExponent(u32),
    #[error("element is not integral at index {0}")]
    NotIntegral(u32),
    #[error("malformed adele JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Index set with residue fields; a cofinite family has infinitely many
/// further indices, all with residue field `default`.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexFamily<E: Field> {
    residues: BTreeMap<u32, E>,
    default: E,
    cofinite: bool,
    precision: usize,
}

impl<E: Field> IndexFamily<E> {
    /// Indices `1..=n` over one residue field.
    pub fn uniform(field: E, n: u32, precision: usize) -> Self {
        let residues = (1..=n).map(|i| (i, field.clone())).collect();
        IndexFamily { residues, default: field, cofinite: false, precision: precision.max(1) }
    }

    /// Listed indices `1..=n` plus an infinite tail of further indices.
    pub fn cofinite(field: E, n: u32, precision: usize) -> Self {
        IndexFamily { cofinite: true, ..Self::uniform(field, n, precision) }
    }

    pub fn from_residues(residues: BTreeMap<u32, E>, default: E, cofinite: bool, precision: usize) -> Self {
        IndexFamily { residues, default, cofinite, precision: precision.max(1) }
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.residues.keys().copied()
    }

    pub fn residue(&self, i: u32) -> &E {
        self.residues.get(&i).unwrap_or(&self.default)
    }

    pub fn is_cofinite(&self) -> bool {
        self.cofinite
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    fn characteristic(&self) -> u64 {
        self.default.characteristic()
    }

    fn tail_elem(&self, i: u32, tail: &BigInt) -> LaurentElem<E> {
        let field = self.residue(i).clone();
        let c = field.from_int(tail);
        LaurentElem::monomial(field, c, 0, self.precision)
    }
}

impl<F: Field> IndexFamily<ExtField<F>> {
    /// One index per polynomial, with residue field `k[x]/(p_i)`.
    pub fn from_polys(polys: &[Poly<F>], precision: usize) -> Result<Self, crate::algebra::AlgebraError> {
        let mut residues = BTreeMap::new();
        for (i, p) in polys.iter().enumerate() {
            residues.insert(i as u32 + 1, ExtField::new(p.clone())?);
        }
        let field = polys.first().map(|p| p.field().clone()).ok_or(crate::algebra::AlgebraError::ZeroPolynomial)?;
        let default = ExtField::new(Poly::x(field))?;
        Ok(IndexFamily { residues, default, cofinite: false, precision: precision.max(1) })
    }
}

/// An element of the restricted product.
#[derive(Debug, Clone)]
pub struct AdeleElem<E: Field> {
    family: IndexFamily<E>,
    components: BTreeMap<u32, LaurentElem<E>>,
    /// Value at every unlisted index, reduced modulo the characteristic.
    tail: BigInt,
}

impl<E: Field> PartialEq for AdeleElem<E> {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.components == other.components && self.tail == other.tail
    }
}

fn reduce_tail(p: u64, t: BigInt) -> BigInt {
    if p == 0 {
        t
    } else {
        t.mod_floor(&BigInt::from(p))
    }
}

impl<E: Field> AdeleElem<E> {
    /// Missing listed components take the tail value.
    pub fn new(
        family: &IndexFamily<E>,
        mut components: BTreeMap<u32, LaurentElem<E>>,
        tail: BigInt,
    ) -> Result<Self, AdeleError> {
        if let Some(&i) = components.keys().find(|i| !family.residues.contains_key(i)) {
            return Err(AdeleError::UnknownIndex(i));
        }
        for (i, c) in &components {
            if c.field() != family.residue(*i) {
                return Err(AdeleError::Series(SeriesError::FieldMismatch));
            }
        }
        let tail = reduce_tail(family.characteristic(), tail);
        for i in family.indices() {
            components.entry(i).or_insert_with(|| family.tail_elem(i, &tail));
        }
        Ok(AdeleElem { family: family.clone(), components, tail })
    }

    pub fn constant(family: &IndexFamily<E>, c: i64) -> Self {
        Self::new(family, BTreeMap::new(), BigInt::from(c)).expect("empty component map")
    }

    pub fn zero(family: &IndexFamily<E>) -> Self {
        Self::constant(family, 0)
    }

    pub fn one(family: &IndexFamily<E>) -> Self {
        Self::constant(family, 1)
    }

    /// `t^e` at index `i`, tail `tail` elsewhere.
    pub fn monomial_at(family: &IndexFamily<E>, i: u32, e: i64, tail: i64) -> Result<Self, AdeleError> {
        let field = family.residue(i).clone();
        let one = field.one();
        let comp = LaurentElem::monomial(field, one, e, family.precision);
        Self::new(family, BTreeMap::from([(i, comp)]), BigInt::from(tail))
    }

    pub fn family(&self) -> &IndexFamily<E> {
        &self.family
    }

    pub fn component(&self, i: u32) -> LaurentElem<E> {
        self.components.get(&i).cloned().unwrap_or_else(|| self.family.tail_elem(i, &self.tail))
    }

    pub fn components(&self) -> &BTreeMap<u32, LaurentElem<E>> {
        &self.components
    }

    pub fn tail(&self) -> &BigInt {
        &self.tail
    }

    /// Indices where the component has a pole.
    pub fn exceptional_set(&self) -> BTreeSet<u32> {
        self.components.iter().filter(|(_, c)| !c.is_integral()).map(|(i, _)| *i).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.exceptional_set().is_empty()
    }

    /// Zero at every listed index (to precision) and in the tail.
    pub fn is_zero(&self) -> bool {
        self.tail.is_zero() && self.components.values().all(LaurentElem::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), AdeleError> {
        if self.family != other.family {
            return Err(AdeleError::IndexMismatch);
        }
        Ok(())
    }

    fn zip(
        &self,
        other: &Self,
        op: impl Fn(&LaurentElem<E>, &LaurentElem<E>) -> Result<LaurentElem<E>, SeriesError>,
        tail: BigInt,
    ) -> Result<Self, AdeleError> {
        self.check(other)?;
        let mut components = BTreeMap::new();
        for (i, a) in &self.components {
            components.insert(*i, op(a, &other.component(*i))?);
        }
        Self::new(&self.family, components, tail)
    }

    pub fn add(&self, other: &Self) -> Result<Self, AdeleError> {
        self.zip(other, |a, b| a.add(b), &self.tail + &other.tail)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AdeleError> {
        self.zip(other, |a, b| a.mul(b), &self.tail * &other.tail)
    }

    pub fn neg(&self) -> Self {
        let components = self.components.iter().map(|(i, c)| (*i, c.neg())).collect();
        Self::new(&self.family, components, -&self.tail).expect("same family")
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AdeleError> {
        self.add(&other.neg())
    }

    /// Multiplies component `i` by `t^k`; the tail is untouched.
    pub fn shift_at(&self, i: u32, k: i64) -> Result<Self, AdeleError> {
        let mut components = self.components.clone();
        let c = components.get_mut(&i).ok_or(AdeleError::UnknownIndex(i))?;
        *c = c.shift(k);
        Ok(AdeleElem { components, ..self.clone() })
    }

    /// Componentwise comparison up to the precision each side carries.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.family == other.family
            && self.tail == other.tail
            && self.components.iter().all(|(i, c)| c.agrees_with(&other.component(*i)))
    }

    pub fn to_json(&self) -> Value {
        let indices: Vec<Value> = self
            .components
            .iter()
            .map(|(i, c)| {
                let f = c.field();
                let coeffs: Vec<Value> = c.coeffs().iter().map(|x| scalar_json(f, x)).collect();
                json!({"i": i, "residue": f.descriptor(), "lower": c.lower(), "coeffs": coeffs})
            })
            .collect();
        let tail = if self.tail.is_zero() {
            json!("zero")
        } else if self.tail.is_one() {
            json!("one")
        } else {
            json!(self.tail.to_string())
        };
        json!({"indices": indices, "tail": tail})
    }

    pub fn from_json(family: &IndexFamily<E>, v: &Value) -> Result<Self, AdeleError> {
        let bad = |m: &str| AdeleError::Json(m.to_string());
        let tail = match v.get("tail").and_then(Value::as_str) {
            Some("one") => BigInt::one(),
            Some("zero") | None => BigInt::zero(),
            Some(s) => s.parse().map_err(|_| bad("tail"))?,
        };
        let mut components = BTreeMap::new();
        for item in v.get("indices").and_then(Value::as_array).ok_or_else(|| bad("missing `indices`"))? {
            let i = item.get("i").and_then(Value::as_u64).ok_or_else(|| bad("index"))? as u32;
            let field = family.residues.get(&i).ok_or(AdeleError::UnknownIndex(i))?;
            if let Some(r) = item.get("residue").and_then(Value::as_str) {
                if r != field.descriptor() {
                    return Err(AdeleError::Json(format!("residue `{r}` at index {i}")));
                }
            }
            let lower = item.get("lower").and_then(Value::as_i64).ok_or_else(|| bad("lower"))?;
            let coeffs = item
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("coeffs"))?
                .iter()
                .map(|x| parse_scalar(field, x).map_err(|e| AdeleError::Json(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            components.insert(i, LaurentElem::from_window(field.clone(), lower, coeffs));
        }
        Self::new(family, components, tail)
    }
}

/// Random integral element: power series at each listed index, tail 0 or 1.
pub fn random_integral<E: Field, R: Rng + ?Sized>(family: &IndexFamily<E>, rng: &mut R) -> AdeleElem<E> {
    random_adele(family, 0, rng)
}

/// Random element with poles of order at most `max_pole`, each listed index
/// independently exceptional with probability one half.
pub fn random_adele<E: Field, R: Rng + ?Sized>(family: &IndexFamily<E>, max_pole: u32, rng: &mut R) -> AdeleElem<E> {
    let n = family.precision;
    let mut components = BTreeMap::new();
    for i in family.indices() {
        let field = family.residue(i).clone();
        let lower = if max_pole > 0 && rng.gen_bool(0.5) { -(rng.gen_range(1..=max_pole) as i64) } else { 0 };
        let coeffs = (0..n).map(|_| field.random(rng)).collect();
        components.insert(i, LaurentElem::from_window(field, lower, coeffs));
    }
    let tail = BigInt::from(rng.gen_range(0..=1u8));
    AdeleElem::new(family, components, tail).expect("listed indices only")
}

/// A finitely supported tuple of powers `t^{n_i}`, `1` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpsilonElem {
    powers: BTreeMap<u32, u32>,
}

impl UpsilonElem {
    pub fn new(powers: BTreeMap<u32, u32>) -> Result<Self, AdeleError> {
        if let Some((&i, _)) = powers.iter().find(|(_, &n)| n == 0) {
            return Err(AdeleError::ZeroExponent(i));
        }
        Ok(UpsilonElem { powers })
    }

    pub fn one() -> Self {
        UpsilonElem { powers: BTreeMap::new() }
    }

    pub fn single(i: u32, n: u32) -> Result<Self, AdeleError> {
        Self::new(BTreeMap::from([(i, n)]))
    }

    pub fn powers(&self) -> &BTreeMap<u32, u32> {
        &self.powers
    }

    pub fn support(&self) -> BTreeSet<u32> {
        self.powers.keys().copied().collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut powers = self.powers.clone();
        for (i, n) in &other.powers {
            *powers.entry(*i).or_insert(0) += n;
        }
        UpsilonElem { powers }
    }

    pub fn max_exponent(&self) -> u32 {
        self.powers.values().copied().max().unwrap_or(0)
    }

    pub fn to_adele<E: Field>(&self, family: &IndexFamily<E>) -> Result<AdeleElem<E>, AdeleError> {
        self.apply(&AdeleElem::one(family), 1)
    }

    /// Multiplies `a` by `t^{sign * n_i}` at each supported index.
    fn apply<E: Field>(&self, a: &AdeleElem<E>, sign: i64) -> Result<AdeleElem<E>, AdeleError> {
        let mut out = a.clone();
        for (i, n) in &self.powers {
            out = out.shift_at(*i, sign * *n as i64)?;
        }
        Ok(out)
    }

    /// `upsilon^{-1} g`.
    pub fn divide<E: Field>(&self, g: &AdeleElem<E>) -> Result<AdeleElem<E>, AdeleError> {
        self.apply(g, -1)
    }

    pub fn random<R: Rng + ?Sized>(indices: &[u32], max_exp: u32, rng: &mut R) -> Self {
        let mut powers = BTreeMap::new();
        for &i in indices {
            if rng.gen_bool(0.5) {
                powers.insert(i, rng.gen_range(1..=max_exp.max(1)));
            }
        }
        UpsilonElem { powers }
    }
}

/// Evidence for the two denominator-set conditions for one sample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OreWitness {
    pub sample: usize,
    /// `s a` equals `a s`, so `s a` lies in both `Upsilon a` and `Gamma_1 s`.
    pub ore_condition: bool,
    /// At each index, `v(s_i a_i) = v(s_i) + v(a_i)` and `s_i a_i = 0` only for `a_i = 0`.
    pub no_zero_divisors: bool,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OreReport {
    pub precision: usize,
    pub upsilon: UpsilonElem,
    /// The argument uses commutativity of the component rings.
    pub commutative_scope: bool,
    pub witnesses: Vec<OreWitness>,
}

impl OreReport {
    pub fn passed(&self) -> bool {
        self.witnesses.iter().all(|w| w.ore_condition && w.no_zero_divisors)
    }
}

/// Checks that `upsilon` behaves as a left and right denominator element
/// against each integral sample.
pub fn upsilon_denominator_check<E: Field>(
    samples: &[AdeleElem<E>],
    upsilon: &UpsilonElem,
    family: &IndexFamily<E>,
) -> Result<OreReport, AdeleError> {
    let precision = family.precision;
    for (&i, &n) in &upsilon.powers {
        if !family.residues.contains_key(&i) {
            return Err(AdeleError::UnknownIndex(i));
        }
        if n as usize >= precision {
            return Err(AdeleError::PrecisionTooLow { i, n, precision });
        }
    }
    let s = upsilon.to_adele(family)?;
    let mut witnesses = Vec::new();
    for (k, a) in samples.iter().enumerate() {
        if let Some(&i) = a.exceptional_set().iter().next() {
            return Err(AdeleError::NotIntegral(i));
        }
        let sa = s.mul(a)?;
        let as_ = a.mul(&s)?;
        let ore_condition = sa == as_ && sa.is_integral();
        let mut no_zero_divisors = true;
        for i in family.indices() {
            let (si, ai, pi) = (s.component(i), a.component(i), sa.component(i));
            let ok = match (ai.valuation(), pi.valuation()) {
                (Some(va), Some(vp)) => vp == va + si.valuation().expect("unit times power"),
                (None, None) => true,
                _ => false,
            };
            no_zero_divisors &= ok;
        }
        no_zero_divisors &= sa.tail().is_zero() == a.tail().is_zero();
        let witness = format!("s*a with exceptional set {:?}", sa.exceptional_set());
        witnesses.push(OreWitness { sample: k, ore_condition, no_zero_divisors, witness });
    }
    Ok(OreReport { precision, upsilon: upsilon.clone(), commutative_scope: true, witnesses })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub precision: usize,
    pub samples: usize,
    /// `upsilon^{-1} g` is an adele whose exceptional set lies in the support of `upsilon`.
    pub forward_ok: usize,
    /// Each sampled adele `a` equals `upsilon^{-1} (upsilon a)` with `upsilon a` integral.
    pub backward_ok: usize,
    pub failures: Vec<String>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.forward_ok == self.samples && self.backward_ok == self.samples
    }
}

/// The smallest `upsilon` clearing the poles of `a`.
pub fn clearing_upsilon<E: Field>(a: &AdeleElem<E>) -> UpsilonElem {
    let powers = a
        .components
        .iter()
        .filter_map(|(i, c)| c.valuation().filter(|v| *v < 0).map(|v| (*i, (-v) as u32)))
        .collect();
    UpsilonElem { powers }
}

/// Samples fractions `upsilon^{-1} g` and adeles `a`, checking that the two
/// descriptions produce the same elements.
pub fn localize_to_adele<E: Field, R: Rng + ?Sized>(
    family: &IndexFamily<E>,
    samples: usize,
    rng: &mut R,
) -> Result<EquivalenceReport, AdeleError> {
    let idx: Vec<u32> = family.indices().collect();
    let max_exp = (family.precision as u32 / 2).max(1);
    let mut report = EquivalenceReport {
        precision: family.precision,
        samples,
        forward_ok: 0,
        backward_ok: 0,
        failures: Vec::new(),
    };
    for k in 0..samples {
        let upsilon = UpsilonElem::random(&idx, max_exp, rng);
        let g = random_integral(family, rng);
        let frac = upsilon.divide(&g)?;
        let back = upsilon.to_adele(family)?.mul(&frac)?;
        if frac.exceptional_set().is_subset(&upsilon.support()) && back.agrees_with(&g) {
            report.forward_ok += 1;
        } else {
            report.failures.push(format!("forward sample {k}"));
        }

        let a = random_adele(family, max_exp, rng);
        let u = clearing_upsilon(&a);
        let g = u.apply(&a, 1)?;
        if g.is_integral() && u.divide(&g)? == a {
            report.backward_ok += 1;
        } else {
            report.failures.push(format!("backward sample {k}"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fam() -> IndexFamily<PrimeField> {
        IndexFamily::cofinite(PrimeField::new(3).unwrap(), 3, 8)
    }

    #[test]
    fn examples() {
        let f = fam();
        let a = AdeleElem::monomial_at(&f, 1, -1, 1).unwrap();
        let b = AdeleElem::monomial_at(&f, 1, 1, 1).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p, AdeleElem::one(&f));
        assert!(p.exceptional_set().is_empty());

        let c = AdeleElem::monomial_at(&f, 1, -2, 0).unwrap();
        let d = AdeleElem::monomial_at(&f, 2, -1, 0).unwrap();
        assert_eq!(c.add(&d).unwrap().exceptional_set(), BTreeSet::from([1, 2]));
        let z = c.add(&c.neg()).unwrap();
        assert!(z.is_zero() && z.exceptional_set().is_empty());
    }

    #[test]
    fn tail_arithmetic() {
        let f = fam();
        let two = AdeleElem::one(&f).add(&AdeleElem::one(&f)).unwrap();
        let three = two.add(&AdeleElem::one(&f)).unwrap();
        assert!(three.tail().is_zero());
        assert!(three.is_zero());
    }

    #[test]
    fn fractions() {
        let f = fam();
        let u = UpsilonElem::single(3, 2).unwrap();
        let a = u.divide(&AdeleElem::one(&f)).unwrap();
        assert_eq!(a.exceptional_set(), BTreeSet::from([3]));
        let g = AdeleElem::monomial_at(&f, 3, 2, 1).unwrap();
        assert!(u.divide(&g).unwrap().is_integral());
        assert!(UpsilonElem::single(1, 0).is_err());
    }

    #[test]
    fn ore_and_equivalence() {
        let f = fam();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let samples: Vec<_> = (0..10).map(|_| random_integral(&f, &mut rng)).collect();
        let rep = upsilon_denominator_check(&samples, &UpsilonElem::single(1, 1).unwrap(), &f).unwrap();
        assert!(rep.passed());
        assert!(matches!(
            upsilon_denominator_check(&samples, &UpsilonElem::single(1, 8).unwrap(), &f),
            Err(AdeleError::PrecisionTooLow { .. })
        ));
        assert!(localize_to_adele(&f, 20, &mut rng).unwrap().passed());
    }

    #[test]
    fn json_roundtrip() {
        let f = fam();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_adele(&f, 3, &mut rng);
        assert_eq!(AdeleElem::from_json(&f, &a.to_json()).unwrap(), a);
    }

    #[test]
    fn extension_residues() {
        let k = PrimeField::new(3).unwrap();
        let polys = vec![Poly::parse(&k, "x").unwrap(), Poly::parse(&k, "x^2+1").unwrap()];
        let f = IndexFamily::from_polys(&polys, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_adele(&f, 2, &mut rng);
        let b = random_adele(&f, 2, &mut rng);
        let s = a.mul(&b).unwrap();
        assert!(s.exceptional_set().is_subset(&a.exceptional_set().union(&b.exceptional_set()).copied().collect()));
        assert!(localize_to_adele(&f, 10, &mut rng).unwrap().passed());
    }
}
