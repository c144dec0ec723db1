//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored in ascending degree order with trailing zeros
//! trimmed, so the zero polynomial has an empty coefficient vector.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Irreducibility};
use super::AlgebraError;

#[derive(Clone, Debug)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Hash for Poly<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_ints(field: F, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| field.from_i64(c)).collect();
        Poly::new(field, coeffs)
    }

    pub fn zero(field: F) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Poly::new(field, vec![one])
    }

    pub fn x(field: F) -> Self {
        let coeffs = vec![field.zero(), field.one()];
        Poly::new(field, coeffs)
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Poly::new(field, vec![c])
    }

    pub fn monomial(field: F, c: F::Elem, degree: usize) -> Self {
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    /// Scales to leading coefficient one; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading().and_then(|c| self.field.inv(c)) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| self.field.add(&self.field.mul(&acc, x), c))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one(self.field.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; fails only for a zero divisor.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), AlgebraError> {
        let dd = d.degree().ok_or(AlgebraError::ZeroPolynomial)?;
        let f = &self.field;
        let lead_inv = f.inv(d.leading().expect("nonzero")).expect("field");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f.clone()), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(&rem[i + dd], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(&rem[i + j], &f.mul(&c, dc));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(f.clone(), quot), Poly::new(f.clone(), rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, AlgebraError> {
        self.div_rem(d).map(|(_, r)| r)
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        match self.div_rem(d) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Monic gcd; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f.clone()), Poly::zero(f.clone()));
        let (mut t0, mut t1) = (Poly::zero(f.clone()), Poly::one(f.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().and_then(|c| f.inv(c)) {
            Some(inv) => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            None => (r0, s0, t0),
        }
    }

    /// Irreducibility over the coefficient field; the polynomial is made monic first.
    pub fn irreducible(&self) -> Result<Irreducibility, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        Ok(self.field.irreducibility(&self.monic()))
    }

    /// Parses the ASCII grammar `c0 + c1*x + c2*x^2 + ...` in the variable `x`.
    pub fn parse(field: &F, s: &str) -> Result<Self, AlgebraError> {
        Self::parse_in(field, s, 'x')
    }

    /// Like [`Poly::parse`] with a custom variable name. Coefficients may be
    /// integers, fractions `a/b` or parenthesized field elements.
    pub fn parse_in(field: &F, s: &str, var: char) -> Result<Self, AlgebraError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(AlgebraError::Parse("empty polynomial".into()));
        }
        let mut acc: Vec<F::Elem> = Vec::new();
        for (negative, term) in split_terms(&compact)? {
            let (coeff, degree) = parse_term(field, term, var)?;
            let coeff = if negative { field.neg(&coeff) } else { coeff };
            if acc.len() <= degree {
                acc.resize(degree + 1, field.zero());
            }
            acc[degree] = field.add(&acc[degree], &coeff);
        }
        Ok(Poly::new(field.clone(), acc))
    }

    /// Ascending-order rendering, e.g. `1 + x + x^2`.
    pub fn display_in(&self, var: &str) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| render_term(&self.field.fmt_elem(c), var, i))
            .collect();
        join_signed(&terms, " + ", " - ", "0")
    }

    /// Descending compact rendering, e.g. `x^2+x+1`, used inside field descriptors.
    pub fn compact(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| render_term(&self.field.fmt_elem(c), "x", i))
            .collect();
        join_signed(&terms, "+", "-", "0")
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

/// Wraps compound element strings in parentheses.
pub(crate) fn wrap_coeff(c: &str) -> String {
    let body = c.strip_prefix('-').unwrap_or(c);
    if body.contains(['+', '-', ' ']) {
        format!("({c})")
    } else {
        c.to_string()
    }
}

pub(crate) fn render_term(coeff: &str, var: &str, power: usize) -> String {
    let coeff = wrap_coeff(coeff);
    let mono = match power {
        0 => return coeff,
        1 => var.to_string(),
        _ => format!("{var}^{power}"),
    };
    match coeff.as_str() {
        "1" => mono,
        "-1" => format!("-{mono}"),
        _ => format!("{coeff}*{mono}"),
    }
}

pub(crate) fn join_signed(terms: &[String], plus: &str, minus: &str, empty: &str) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        match (i, t.strip_prefix('-')) {
            (0, _) => out.push_str(t),
            (_, Some(rest)) => {
                out.push_str(minus);
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(plus);
                out.push_str(t);
            }
        }
    }
    if out.is_empty() {
        out.push_str(empty);
    }
    out
}

fn split_terms(s: &str) -> Result<Vec<(bool, &str)>, AlgebraError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                if i > start {
                    out.push((negative, &s[start..i]));
                } else if i > 0 {
                    return Err(AlgebraError::Parse(format!("dangling sign in `{s}`")));
                }
                negative = b == b'-';
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(AlgebraError::Parse(format!("unbalanced parentheses in `{s}`")));
        }
    }
    if depth != 0 || start >= s.len() {
        return Err(AlgebraError::Parse(format!("malformed polynomial `{s}`")));
    }
    out.push((negative, &s[start..]));
    Ok(out)
}

fn parse_term<F: Field>(field: &F, term: &str, var: char) -> Result<(F::Elem, usize), AlgebraError> {
    let mut depth = 0i32;
    let mut var_at = None;
    for (i, ch) in term.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == var && depth == 0 => {
                var_at = Some(i);
                break;
            }
            _ => {}
        }
    }
    let (coeff_part, degree) = match var_at {
        None => (term, 0),
        Some(i) => {
            let rest = &term[i + var.len_utf8()..];
            let degree = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(|| AlgebraError::Parse(format!("bad exponent in `{term}`")))?
            };
            let c = &term[..i];
            (c.strip_suffix('*').unwrap_or(c), degree)
        }
    };
    let coeff = if coeff_part.is_empty() {
        field.one()
    } else if let Some(inner) = coeff_part.strip_prefix('(').and_then(|c| c.strip_suffix(')')) {
        field.parse_elem(inner)?
    } else {
        field.parse_elem(coeff_part)?
    };
    Ok((coeff, degree))
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        debug_assert!(self.field == rhs.field);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(&self.coeff(i), &rhs.coeff(i))).collect();
        Poly::new(f.clone(), coeffs)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        debug_assert!(self.field == rhs.field);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(&self.coeff(i), &rhs.coeff(i))).collect();
        Poly::new(f.clone(), coeffs)
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        debug_assert!(self.field == rhs.field);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f.clone());
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f.clone(), coeffs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Poly::new(self.field.clone(), coeffs)
    }
}

/// Factors `f` as a unit times a product of powers of members of `delta`.
///
/// Returns `Some(factors)` exactly when every irreducible factor of `f` lies
/// in `delta`; factors with exponent zero are omitted. The members of `delta`
/// must be monic, irreducible and pairwise distinct.
pub fn factor_over<F: Field>(
    f: &Poly<F>,
    delta: &[Poly<F>],
) -> Result<Option<Vec<(Poly<F>, u32)>>, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut rest = f.clone();
    let mut out = Vec::new();
    for p in delta {
        if p.is_constant() {
            return Err(AlgebraError::NotIrreducible(p.compact()));
        }
        let mut e = 0;
        while let Some(q) = rest.div_exact(p) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
    }
    Ok(rest.is_constant().then_some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, Rationals};

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let q = Rationals;
        let p = Poly::parse(&q, "1/2 - 3*x + x^3").unwrap();
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.to_string(), "1/2 - 3*x + x^3");
        assert_eq!(p.compact(), "x^3-3*x+1/2");
        assert_eq!(Poly::parse(&q, &p.to_string()).unwrap(), p);
        let r = Poly::parse(&q, "x^2+x").unwrap();
        assert_eq!(r, Poly::from_ints(q, &[0, 1, 1]));
        assert!(Poly::parse(&q, "x^").is_err());
        assert!(Poly::parse(&q, "").is_err());
        assert!(Poly::parse(&q, "1++x").is_err());
    }

    #[test]
    fn parse_over_prime_field_reduces() {
        let f = PrimeField::new(3).unwrap();
        let p = Poly::parse(&f, "-x^2 + 4").unwrap();
        assert_eq!(p.coeffs(), &[1, 0, 2]);
        let half = Poly::parse(&f, "1/2*x").unwrap();
        assert_eq!(half.coeffs(), &[0, 2]);
    }

    #[test]
    fn division_and_gcd() {
        let q = Rationals;
        let a = Poly::parse(&q, "x^3 - 1").unwrap();
        let b = Poly::parse(&q, "x^2 - 1").unwrap();
        assert_eq!(a.gcd(&b), Poly::parse(&q, "x - 1").unwrap());
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        let (quo, rem) = a.div_rem(&b).unwrap();
        assert_eq!(&(&quo * &b) + &rem, a);
        assert!(a.div_rem(&Poly::zero(q)).is_err());
    }

    #[test]
    fn irreducibility_examples() {
        let f = f2();
        assert_eq!(Poly::parse(&f, "x^2+x+1").unwrap().irreducible().unwrap(), Irreducibility::Irreducible);
        assert_eq!(Poly::parse(&f, "x^2+1").unwrap().irreducible().unwrap(), Irreducibility::Reducible);
        let q = Rationals;
        assert_eq!(Poly::parse(&q, "x^4+1").unwrap().irreducible().unwrap(), Irreducibility::Unknown);
        assert_eq!(Poly::parse(&q, "x^2+1").unwrap().irreducible().unwrap(), Irreducibility::Irreducible);
        assert_eq!(Poly::parse(&q, "x^3-2").unwrap().irreducible().unwrap(), Irreducibility::Irreducible);
        assert_eq!(Poly::parse(&q, "2*x^3-x^2-2*x+1").unwrap().irreducible().unwrap(), Irreducibility::Reducible);
        assert!(Poly::zero(q).irreducible().is_err());
    }

    #[test]
    fn factor_over_examples() {
        let f = f2();
        let x = Poly::parse(&f, "x").unwrap();
        let x1 = Poly::parse(&f, "x+1").unwrap();
        let target = Poly::parse(&f, "x^2+x").unwrap();
        let got = factor_over(&target, &[x.clone(), x1.clone()]).unwrap().unwrap();
        assert_eq!(got, vec![(x.clone(), 1), (x1.clone(), 1)]);
        assert_eq!(factor_over(&x1, &[x.clone()]).unwrap(), None);
        assert_eq!(factor_over(&Poly::one(f), &[]).unwrap(), Some(vec![]));
        assert!(factor_over(&Poly::zero(f), &[x]).is_err());
    }
}
