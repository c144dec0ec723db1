//! Field contexts.
//!
//! Elements are plain values; all arithmetic goes through a field *context*
//! (`PrimeField`, `Rationals`, `ExtField`) because the modulus of a prime
//! field or extension is only known at runtime.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::poly::Poly;
use super::AlgebraError;

/// Answer of an irreducibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    Unknown,
}

impl Irreducibility {
    pub fn as_str(self) -> &'static str {
        match self {
            Irreducibility::Irreducible => "true",
            Irreducibility::Reducible => "false",
            Irreducibility::Unknown => "unknown",
        }
    }
}

/// A field whose elements are values of type `Self::Elem`.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, n: &BigInt) -> Self::Elem;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite (or too large for `u64`).
    fn order(&self) -> Option<u64>;
    /// Every element, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn fmt_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, AlgebraError>;
    /// Descriptor string such as `Fp(3)`, `Q` or `Fp(2)[x]/(x^2+x+1)`.
    fn descriptor(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Irreducibility of a nonzero polynomial over this field.
    ///
    /// The default covers finite fields by trial division against every
    /// monic polynomial of degree at most `deg/2`; infinite fields answer
    /// `Unknown` beyond degree one.
    fn irreducibility(&self, p: &Poly<Self>) -> Irreducibility {
        let Some(d) = p.degree() else {
            return Irreducibility::Reducible;
        };
        match d {
            0 => Irreducibility::Reducible,
            1 => Irreducibility::Irreducible,
            _ => match self.elements() {
                Some(elems) => trial_division(self, p, &elems),
                None => Irreducibility::Unknown,
            },
        }
    }
}

fn trial_division<F: Field>(field: &F, p: &Poly<F>, elems: &[F::Elem]) -> Irreducibility {
    let d = p.degree().unwrap_or(0);
    for deg in 1..=d / 2 {
        for divisor in monic_polys_of_degree(field, elems, deg) {
            if p.rem(&divisor).map(|r| r.is_zero()).unwrap_or(false) {
                return Irreducibility::Reducible;
            }
        }
    }
    Irreducibility::Irreducible
}

/// All monic polynomials of the given degree with coefficients from `elems`.
pub fn monic_polys_of_degree<'a, F: Field>(
    field: &F,
    elems: &'a [F::Elem],
    degree: usize,
) -> impl Iterator<Item = Poly<F>> + 'a {
    let q = elems.len();
    let total = q.checked_pow(degree as u32).unwrap_or(usize::MAX);
    let field = field.clone();
    (0..total).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push(elems[idx % q].clone());
            idx /= q;
        }
        coeffs.push(field.one());
        Poly::new(field.clone(), coeffs)
    })
}

/// Trial-division primality for small moduli.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Moduli are limited to 32 bits so products fit in `u64`.
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if (*a).is_multiple_of(self.p) {
            return None;
        }
        let e = BigInt::from(*a).extended_gcd(&BigInt::from(self.p));
        let x = e.x.mod_floor(&BigInt::from(self.p));
        x.to_u64()
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap_or(0)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<u64, AlgebraError> {
        let r = parse_rational(s)?;
        let num = self.from_int(r.numer());
        let den = self.from_int(r.denom());
        self.div(&num, &den)
            .ok_or_else(|| AlgebraError::Parse(format!("denominator of `{s}` vanishes mod {}", self.p)))
    }
    fn descriptor(&self) -> String {
        format!("Fp({})", self.p)
    }
}

/// The rationals. Elements are kept in lowest terms with positive denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let n: i64 = rng.gen_range(-5..=5);
        let d: i64 = rng.gen_range(1..=4);
        BigRational::new(n.into(), d.into())
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse_elem(&self, s: &str) -> Result<BigRational, AlgebraError> {
        parse_rational(s)
    }
    fn descriptor(&self) -> String {
        "Q".to_string()
    }

    /// Exact for degree at most three via the rational root test.
    fn irreducibility(&self, p: &Poly<Self>) -> Irreducibility {
        match p.degree() {
            None | Some(0) => Irreducibility::Reducible,
            Some(1) => Irreducibility::Irreducible,
            Some(2) | Some(3) => {
                if has_rational_root(p.coeffs()) {
                    Irreducibility::Reducible
                } else {
                    Irreducibility::Irreducible
                }
            }
            Some(_) => Irreducibility::Unknown,
        }
    }
}

/// Parses `a`, `-a` or `a/b` with integer `a`, `b`.
pub fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("not a rational number: `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(AlgebraError::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(num, den))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

fn has_rational_root(coeffs: &[BigRational]) -> bool {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    if ints[0].is_zero() {
        return true;
    }
    let lead = ints.last().cloned().unwrap_or_else(BigInt::one);
    for num in divisors(&ints[0]) {
        for den in divisors(&lead) {
            for sign in [1i32, -1] {
                let root = BigRational::new(&num * BigInt::from(sign), den.clone());
                let value = ints.iter().rev().fold(BigRational::zero(), |acc, c| {
                    acc * &root + BigRational::from_integer(c.clone())
                });
                if value.is_zero() {
                    return true;
                }
            }
        }
    }
    false
}
