//! Localizations of `k[x]` at sets of monic irreducibles.
//!
//! Elements keep their denominators factored over `Delta`, so membership is
//! a syntactic check after cancelling common factors.

use std::fmt;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{factor_over, AlgebraError, Field, Irreducibility, Poly};
use crate::descriptor::{DeltaSpec, RingDescriptor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizeError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("fraction is not in the localization")]
    NotMember,
    #[error("operands use different Delta sets")]
    DeltaMismatch,
    #[error("Delta sets overlap in `{0}`")]
    Overlap(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A set of monic irreducible polynomials, or every monic irreducible.
#[derive(Debug, Clone, PartialEq)]
pub enum DeltaSet<F: Field> {
    Finite {
        /// Sorted by degree, then by compact notation; no duplicates.
        polys: Vec<Poly<F>>,
        /// Some member's irreducibility could not be decided and was assumed.
        trusted: bool,
    },
    All,
}

impl<F: Field> DeltaSet<F> {
    pub fn empty() -> Self {
        DeltaSet::Finite { polys: Vec::new(), trusted: false }
    }

    /// Validates every member. Undecidable irreducibility is an error unless
    /// `trust` is set, in which case the set is flagged as trusted.
    pub fn finite(polys: Vec<Poly<F>>, trust: bool) -> Result<Self, LocalizeError> {
        let mut trusted = false;
        let mut out: Vec<Poly<F>> = Vec::new();
        for p in polys {
            if p.is_zero() {
                return Err(AlgebraError::ZeroPolynomial.into());
            }
            if !p.is_monic() {
                return Err(AlgebraError::NotMonic(p.compact()).into());
            }
            match p.irreducible()? {
                Irreducibility::Irreducible => {}
                Irreducibility::Reducible => return Err(AlgebraError::NotIrreducible(p.compact()).into()),
                Irreducibility::Unknown if trust => trusted = true,
                Irreducibility::Unknown => return Err(AlgebraError::IrreducibilityUnknown(p.compact()).into()),
            }
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out.sort_by_cached_key(|p| (p.degree(), p.compact()));
        Ok(DeltaSet::Finite { polys: out, trusted })
    }

    /// Parses a comma-separated list of polynomials or the literal `all`.
    pub fn parse(field: &F, s: &str, trust: bool) -> Result<Self, LocalizeError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("all") {
            return Ok(DeltaSet::All);
        }
        if t.is_empty() || t == "{}" {
            return Ok(Self::empty());
        }
        let polys = split_top_level(t)
            .into_iter()
            .map(|p| Poly::parse(field, p))
            .collect::<Result<Vec<_>, _>>()?;
        Self::finite(polys, trust)
    }

    pub fn polys(&self) -> Option<&[Poly<F>]> {
        match self {
            DeltaSet::Finite { polys, .. } => Some(polys),
            DeltaSet::All => None,
        }
    }

    pub fn is_all(&self) -> bool {
        matches!(self, DeltaSet::All)
    }

    pub fn trusted(&self) -> bool {
        matches!(self, DeltaSet::Finite { trusted: true, .. })
    }

    pub fn contains(&self, p: &Poly<F>) -> bool {
        match self {
            DeltaSet::Finite { polys, .. } => polys.contains(p),
            DeltaSet::All => true,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        match (self, other) {
            (DeltaSet::Finite { polys: a, trusted: ta }, DeltaSet::Finite { polys: b, trusted: tb }) => {
                let mut polys = a.clone();
                polys.extend(b.iter().filter(|p| !a.contains(p)).cloned());
                polys.sort_by_cached_key(|p| (p.degree(), p.compact()));
                DeltaSet::Finite { polys, trusted: *ta || *tb }
            }
            _ => DeltaSet::All,
        }
    }

    pub fn spec(&self) -> DeltaSpec {
        match self {
            DeltaSet::Finite { polys, .. } => DeltaSpec::Finite(polys.iter().map(Poly::compact).collect()),
            DeltaSet::All => DeltaSpec::All,
        }
    }
}

impl<F: Field> fmt::Display for DeltaSet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaSet::Finite { polys, .. } => {
                let items: Vec<String> = polys.iter().map(Poly::compact).collect();
                write!(f, "{{{}}}", items.join(", "))
            }
            DeltaSet::All => f.write_str("all"),
        }
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

/// `f/g` lies in the localization at `delta` iff, after cancelling
/// `gcd(f, g)`, every irreducible factor of `g` is in `delta`.
pub fn d_member<F: Field>(f: &Poly<F>, g: &Poly<F>, delta: &DeltaSet<F>) -> Result<bool, LocalizeError> {
    if g.is_zero() {
        return Err(LocalizeError::ZeroDenominator);
    }
    match delta {
        DeltaSet::All => Ok(true),
        DeltaSet::Finite { polys, .. } => {
            let reduced = g.div_exact(&f.gcd(g)).expect("gcd divides");
            Ok(factor_over(&reduced, polys)?.is_some())
        }
    }
}

/// `num / prod p^e`, reduced so that no denominator factor divides `num`.
#[derive(Debug, Clone, PartialEq)]
pub struct DedekindElem<F: Field> {
    delta: DeltaSet<F>,
    num: Poly<F>,
    /// Factored over `delta`. Under `All` this holds at most one monic block.
    den: Vec<(Poly<F>, u32)>,
}

impl<F: Field> DedekindElem<F> {
    /// Reduces `f/g`; fails when the reduced denominator leaves `delta`.
    pub fn new(f: &Poly<F>, g: &Poly<F>, delta: &DeltaSet<F>) -> Result<Self, LocalizeError> {
        if g.is_zero() {
            return Err(LocalizeError::ZeroDenominator);
        }
        let field = g.field().clone();
        let common = f.gcd(g);
        let mut num = f.div_exact(&common).expect("gcd divides");
        let g = g.div_exact(&common).expect("gcd divides");
        let unit_inv = field.inv(g.leading().expect("nonzero")).expect("nonzero");
        num = num.scale(&unit_inv);
        let g = g.monic();
        let den = match delta {
            DeltaSet::All => {
                if g.is_constant() {
                    Vec::new()
                } else {
                    vec![(g, 1)]
                }
            }
            DeltaSet::Finite { polys, .. } => factor_over(&g, polys)?.ok_or(LocalizeError::NotMember)?,
        };
        if num.is_zero() {
            return Ok(DedekindElem { delta: delta.clone(), num, den: Vec::new() });
        }
        Ok(DedekindElem { delta: delta.clone(), num, den })
    }

    pub fn from_poly(f: &Poly<F>, delta: &DeltaSet<F>) -> Self {
        DedekindElem { delta: delta.clone(), num: f.clone(), den: Vec::new() }
    }

    pub fn one(field: F, delta: &DeltaSet<F>) -> Self {
        Self::from_poly(&Poly::one(field), delta)
    }

    pub fn zero(field: F, delta: &DeltaSet<F>) -> Self {
        Self::from_poly(&Poly::zero(field), delta)
    }

    /// `1/p` for `p` in `delta`.
    pub fn inverse_of(p: &Poly<F>, delta: &DeltaSet<F>) -> Result<Self, LocalizeError> {
        Self::new(&Poly::one(p.field().clone()), p, delta)
    }

    pub fn numerator(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[(Poly<F>, u32)] {
        &self.den
    }

    pub fn delta(&self) -> &DeltaSet<F> {
        &self.delta
    }

    pub fn denominator(&self) -> Poly<F> {
        let one = Poly::one(self.num.field().clone());
        self.den.iter().fold(one, |acc, (p, e)| &acc * &p.pow(*e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// No denominator factor divides the numerator and the support lies in `delta`.
    pub fn is_reduced(&self) -> bool {
        self.den.iter().all(|(p, e)| *e >= 1 && self.delta.contains(p) && !p.divides(&self.num))
            || (self.num.is_zero() && self.den.is_empty())
    }

    fn check(&self, other: &Self) -> Result<(), LocalizeError> {
        if self.delta != other.delta {
            return Err(LocalizeError::DeltaMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LocalizeError> {
        self.check(other)?;
        let (da, db) = (self.denominator(), other.denominator());
        let num = &(&self.num * &db) + &(&other.num * &da);
        Self::new(&num, &(&da * &db), &self.delta)
    }

    pub fn neg(&self) -> Self {
        DedekindElem { num: -&self.num, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LocalizeError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LocalizeError> {
        self.check(other)?;
        let num = &self.num * &other.num;
        Self::new(&num, &(&self.denominator() * &other.denominator()), &self.delta)
    }

    /// Re-runs the reduction; a reduced element is a fixed point.
    pub fn reduce(&self) -> Result<Self, LocalizeError> {
        Self::new(&self.num, &self.denominator(), &self.delta)
    }
}

impl<F: Field> fmt::Display for DedekindElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.to_string();
        if self.den.is_empty() {
            return f.write_str(&num);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(p, e)| {
                let base = if p.coeffs().len() > 2 || (p.coeffs().len() == 2 && !self.num.field().is_zero(&p.coeff(0))) {
                    format!("({p})")
                } else {
                    p.to_string()
                };
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        let num = if self.num.coeffs().iter().filter(|c| !self.num.field().is_zero(c)).count() > 1 {
            format!("({num})")
        } else {
            num
        };
        write!(f, "{num}/{}", den.join("*"))
    }
}

/// `R_U = M_2(D)` for `U = {V} + {V_p : p in delta}`; with `delta = All`, `M_2(k(x))`.
pub fn r_u_presentation<F: Field>(delta: &DeltaSet<F>) -> RingDescriptor {
    let inner = match delta {
        DeltaSet::All => RingDescriptor::FractionField,
        DeltaSet::Finite { .. } => RingDescriptor::Dedekind(delta.spec()),
    };
    RingDescriptor::Matrix(2, Box::new(inner))
}

/// Outcome for a single fraction in [`iterated_localization_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IteratedSample {
    pub fraction: String,
    pub one_step: bool,
    pub two_step: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IteratedReport {
    pub delta1: String,
    pub delta2: String,
    pub samples: Vec<IteratedSample>,
    pub counterexamples: Vec<IteratedSample>,
}

impl IteratedReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Membership of `f/g` in the two-step localization: first cancel factors
/// from `delta1`, then require the remainder to factor over `delta2`.
pub fn two_step_member<F: Field>(
    f: &Poly<F>,
    g: &Poly<F>,
    delta1: &DeltaSet<F>,
    delta2: &DeltaSet<F>,
) -> Result<bool, LocalizeError> {
    if g.is_zero() {
        return Err(LocalizeError::ZeroDenominator);
    }
    let (DeltaSet::Finite { polys: p1, .. }, DeltaSet::Finite { polys: p2, .. }) = (delta1, delta2) else {
        return Ok(true);
    };
    let mut rest = g.div_exact(&f.gcd(g)).expect("gcd divides");
    for p in p1 {
        while let Some(q) = rest.div_exact(p) {
            rest = q;
        }
    }
    Ok(factor_over(&rest, p2)?.is_some())
}

/// Compares one-step membership over `delta1 + delta2` with the two-step
/// membership for each sample fraction.
pub fn iterated_localization_check<F: Field>(
    delta1: &DeltaSet<F>,
    delta2: &DeltaSet<F>,
    samples: &[(Poly<F>, Poly<F>)],
) -> Result<IteratedReport, LocalizeError> {
    if let (Some(a), Some(b)) = (delta1.polys(), delta2.polys()) {
        if let Some(p) = a.iter().find(|p| b.contains(p)) {
            return Err(LocalizeError::Overlap(p.compact()));
        }
    }
    let union = delta1.union(delta2);
    let mut out = Vec::new();
    for (f, g) in samples {
        let one_step = d_member(f, g, &union)?;
        let two_step = two_step_member(f, g, delta1, delta2)?;
        out.push(IteratedSample { fraction: format!("({f})/({g})"), one_step, two_step });
    }
    let counterexamples = out.iter().filter(|s| s.one_step != s.two_step).cloned().collect();
    Ok(IteratedReport { delta1: delta1.to_string(), delta2: delta2.to_string(), samples: out, counterexamples })
}

/// Random polynomial of degree at most `max_deg`.
pub fn random_poly<F: Field, R: Rng + ?Sized>(field: &F, max_deg: usize, rng: &mut R) -> Poly<F> {
    let d = rng.gen_range(0..=max_deg);
    Poly::new(field.clone(), (0..=d).map(|_| field.random(rng)).collect())
}

/// Random fraction `f/g` with `g != 0`, biased towards denominators built
/// from `hints` so that both members and non-members occur.
pub fn random_fraction<F: Field, R: Rng + ?Sized>(
    field: &F,
    max_deg: usize,
    hints: &[Poly<F>],
    rng: &mut R,
) -> (Poly<F>, Poly<F>) {
    let f = random_poly(field, max_deg, rng);
    let mut g = Poly::one(field.clone());
    if !hints.is_empty() && rng.gen_bool(0.6) {
        for _ in 0..rng.gen_range(1..=3) {
            let p = &hints[rng.gen_range(0..hints.len())];
            if g.degree().unwrap_or(0) + p.degree().unwrap_or(0) <= max_deg {
                g = &g * p;
            }
        }
        if rng.gen_bool(0.3) {
            let extra = random_poly(field, 1, rng);
            if !extra.is_zero() && g.degree().unwrap_or(0) < max_deg {
                g = &g * &extra;
            }
        }
    } else {
        loop {
            g = random_poly(field, max_deg, rng);
            if !g.is_zero() {
                break;
            }
        }
    }
    (f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};

    fn q(s: &str) -> Poly<Rationals> {
        Poly::parse(&Rationals, s).unwrap()
    }

    #[test]
    fn membership() {
        let dx = DeltaSet::parse(&Rationals, "x", false).unwrap();
        assert!(d_member(&q("1"), &q("x"), &dx).unwrap());
        assert!(!d_member(&q("1"), &q("x+1"), &dx).unwrap());
        assert!(d_member(&q("x+1"), &q("x^2+x"), &dx).unwrap());
        assert_eq!(d_member(&q("1"), &q("0"), &dx), Err(LocalizeError::ZeroDenominator));
        assert!(d_member(&q("1"), &q("x^2+1"), &DeltaSet::All).unwrap());
    }

    #[test]
    fn arithmetic() {
        let dx = DeltaSet::parse(&Rationals, "x", false).unwrap();
        let a = DedekindElem::new(&q("1"), &q("x"), &dx).unwrap();
        assert_eq!(a.add(&a).unwrap(), DedekindElem::new(&q("2"), &q("x"), &dx).unwrap());
        let b = DedekindElem::new(&q("x-1"), &q("x"), &dx).unwrap();
        assert_eq!(a.add(&b).unwrap(), DedekindElem::one(Rationals, &dx));
        let d2 = DeltaSet::parse(&Rationals, "x, x+1", false).unwrap();
        let u = DedekindElem::new(&q("1"), &q("x"), &d2).unwrap();
        let v = DedekindElem::new(&q("1"), &q("x+1"), &d2).unwrap();
        let w = u.mul(&v).unwrap();
        assert_eq!(w.denominator(), q("x^2+x"));
        assert_eq!(w.denominator_factors().len(), 2);
        assert_eq!(w.to_string(), "1/x*(1 + x)");
        assert_eq!(a.mul(&u), Err(LocalizeError::DeltaMismatch));
        assert_eq!(DedekindElem::new(&q("1"), &q("x+1"), &dx), Err(LocalizeError::NotMember));
    }

    #[test]
    fn presentations() {
        let empty: DeltaSet<Rationals> = DeltaSet::empty();
        assert_eq!(r_u_presentation(&empty).to_string(), "M_2(k[x])");
        let dx = DeltaSet::parse(&Rationals, "x", false).unwrap();
        assert_eq!(r_u_presentation(&dx).to_string(), "M_2(k[x, 1/x])");
        assert_eq!(r_u_presentation::<Rationals>(&DeltaSet::All).to_string(), "M_2(k(x))");
    }

    #[test]
    fn iterated() {
        let d1 = DeltaSet::parse(&Rationals, "x", false).unwrap();
        let d2 = DeltaSet::parse(&Rationals, "x+1", false).unwrap();
        let rep = iterated_localization_check(&d1, &d2, &[(q("1"), q("x^2+x")), (q("1"), q("x^2+1"))]).unwrap();
        assert!(rep.passed());
        assert!(rep.samples[0].one_step && rep.samples[0].two_step);
        assert!(!rep.samples[1].one_step && !rep.samples[1].two_step);
        assert!(matches!(iterated_localization_check(&d1, &d1, &[]), Err(LocalizeError::Overlap(_))));
    }

    #[test]
    fn delta_validation() {
        let f2 = PrimeField::new(2).unwrap();
        assert!(DeltaSet::parse(&f2, "x^2+1", false).is_err());
        assert!(DeltaSet::parse(&Rationals, "x^4+1", false).is_err());
        assert!(DeltaSet::parse(&Rationals, "x^4+1", true).unwrap().trusted());
        assert!(DeltaSet::parse(&Rationals, "2*x", false).is_err());
        let d = DeltaSet::parse(&f2, "x+1, x, x", false).unwrap();
        assert_eq!(d.to_string(), "{x, x+1}");
    }
}
