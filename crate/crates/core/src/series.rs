//! Truncated power series `E[[t]]` and Laurent series `E((t))`.
//!
//! Every value carries its own precision and binary operations keep the
//! smaller one. A value whose stored coefficients all vanish is zero only
//! up to that precision.

use std::fmt;

use thiserror::Error;

use crate::algebra::poly::{join_signed, render_term};
use crate::algebra::{Field, Poly};

/// Precision used by the command-line checks.
pub const DEFAULT_PRECISION: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("series with zero constant term is not a unit")]
    NotUnit,
    #[error("element is zero to the available precision")]
    ZeroElement,
    #[error("divisor has larger valuation than dividend")]
    NotDivisible,
    #[error("precision must be at least 1")]
    ZeroPrecision,
}

/// `c_0 + c_1 t + ... + c_{N-1} t^{N-1} + O(t^N)`.
#[derive(Clone, Debug)]
pub struct TruncatedSeries<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for TruncatedSeries<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl<F: Field> TruncatedSeries<F> {
    pub fn new(field: F, coeffs: Vec<F::Elem>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::ZeroPrecision);
        }
        Ok(TruncatedSeries { field, coeffs })
    }

    pub fn from_ints(field: F, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| field.from_i64(c)).collect();
        Self::new(field, coeffs).expect("nonempty literal")
    }

    /// The polynomial truncated (or zero-padded) to precision `n`.
    pub fn from_poly(p: &Poly<F>, n: usize) -> Result<Self, SeriesError> {
        let coeffs = (0..n).map(|i| p.coeff(i)).collect();
        Self::new(p.field().clone(), coeffs)
    }

    pub fn zero(field: F, n: usize) -> Self {
        let coeffs = vec![field.zero(); n.max(1)];
        TruncatedSeries { field, coeffs }
    }

    pub fn constant(field: F, c: F::Elem, n: usize) -> Self {
        let mut s = Self::zero(field, n);
        s.coeffs[0] = c;
        s
    }

    pub fn one(field: F, n: usize) -> Self {
        let one = field.one();
        Self::constant(field, one, n)
    }

    /// `c * t^e`, which is zero to precision when `e >= n`.
    pub fn monomial(field: F, c: F::Elem, e: usize, n: usize) -> Self {
        let mut s = Self::zero(field, n);
        if e < s.coeffs.len() {
            s.coeffs[e] = c;
        }
        s
    }

    pub fn t(field: F, n: usize) -> Self {
        let one = field.one();
        Self::monomial(field, one, 1, n)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// All stored coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn is_unit(&self) -> bool {
        !self.field.is_zero(&self.coeffs[0])
    }

    /// Index of the first nonzero coefficient, `None` when zero to precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    pub fn truncate(&self, n: usize) -> Self {
        let n = n.clamp(1, self.precision());
        TruncatedSeries { field: self.field.clone(), coeffs: self.coeffs[..n].to_vec() }
    }

    fn check(&self, other: &Self) -> Result<usize, SeriesError> {
        if self.field != other.field {
            return Err(SeriesError::FieldMismatch);
        }
        Ok(self.precision().min(other.precision()))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Result<Self, SeriesError> {
        let n = self.check(other)?;
        let coeffs = (0..n).map(|i| op(&self.coeffs[i], &other.coeffs[i])).collect();
        Ok(TruncatedSeries { field: self.field.clone(), coeffs })
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        TruncatedSeries { field: self.field.clone(), coeffs }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        TruncatedSeries { field: self.field.clone(), coeffs }
    }

    /// Cauchy product truncated at the smaller precision.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let n = self.check(other)?;
        let f = &self.field;
        let mut coeffs = vec![f.zero(); n];
        for i in 0..n {
            if f.is_zero(&self.coeffs[i]) {
                continue;
            }
            for j in 0..n - i {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(&self.coeffs[i], &other.coeffs[j]));
            }
        }
        Ok(TruncatedSeries { field: f.clone(), coeffs })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field.clone(), self.precision());
        for _ in 0..e {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    /// Multiplication by `t^k`; the top `k` coefficients fall out of the window.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.precision();
        let coeffs = (0..n)
            .map(|i| if i < k { self.field.zero() } else { self.coeffs[i - k].clone() })
            .collect();
        TruncatedSeries { field: self.field.clone(), coeffs }
    }

    /// Inverse of a unit, solving for one coefficient at a time.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroElement);
        }
        let f = &self.field;
        let c0_inv = f.inv(&self.coeffs[0]).ok_or(SeriesError::NotUnit)?;
        let n = self.precision();
        let mut b = Vec::with_capacity(n);
        b.push(c0_inv.clone());
        for k in 1..n {
            let s = (1..=k).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&self.coeffs[i], &b[k - i])));
            b.push(f.neg(&f.mul(&s, &c0_inv)));
        }
        Ok(TruncatedSeries { field: f.clone(), coeffs: b })
    }

    /// Writes `self = t^n * u` with `u` a unit known to precision `N - n`.
    pub fn dvr_decompose(&self) -> Result<(usize, Self), SeriesError> {
        let n = self.valuation().ok_or(SeriesError::ZeroElement)?;
        let unit = TruncatedSeries { field: self.field.clone(), coeffs: self.coeffs[n..].to_vec() };
        Ok((n, unit))
    }

    /// Some `q` with `divisor * q = self`, possible exactly when
    /// `v(divisor) <= v(self)`. The quotient is known to precision
    /// `min(N) - v(divisor)`.
    pub fn divide(&self, divisor: &Self) -> Result<Self, SeriesError> {
        let n = self.check(divisor)?;
        let (va, ua) = divisor.truncate(n).dvr_decompose()?;
        let vb = match self.truncate(n).valuation() {
            Some(v) => v,
            None => return Ok(Self::zero(self.field.clone(), n - va)),
        };
        if vb < va {
            return Err(SeriesError::NotDivisible);
        }
        let ub = TruncatedSeries { field: self.field.clone(), coeffs: self.coeffs[vb..n].to_vec() };
        let ratio = ub.mul(&ua.inv()?)?;
        let out_prec = n - va;
        Ok(ratio.pad(out_prec).shift(vb - va))
    }

    fn pad(&self, n: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n.max(1), self.field.zero());
        TruncatedSeries { field: self.field.clone(), coeffs }
    }

    pub fn to_laurent(&self) -> LaurentElem<F> {
        LaurentElem::from_window(self.field.clone(), 0, self.coeffs.clone())
    }

    /// Rendering with a custom variable name.
    pub fn display_in(&self, var: &str) -> String {
        let terms = nonzero_terms(&self.field, self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c)), var);
        finish_series(terms, var, self.precision() as i64)
    }
}

impl<F: Field> fmt::Display for TruncatedSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

fn nonzero_terms<'a, F: Field>(
    field: &F,
    items: impl Iterator<Item = (i64, &'a F::Elem)>,
    var: &str,
) -> Vec<String> {
    items
        .filter(|(_, c)| !field.is_zero(c))
        .map(|(e, c)| {
            let s = field.fmt_elem(c);
            if e >= 0 {
                render_term(&s, var, e as usize)
            } else {
                let mono = format!("{var}^{e}");
                let s = crate::algebra::poly::wrap_coeff(&s);
                match s.as_str() {
                    "1" => mono,
                    "-1" => format!("-{mono}"),
                    _ => format!("{s}*{mono}"),
                }
            }
        })
        .collect()
}

fn finish_series(mut terms: Vec<String>, var: &str, abs_prec: i64) -> String {
    terms.push(format!("O({var}^{abs_prec})"));
    join_signed(&terms, " + ", " - ", "")
}

/// A Laurent series `t^lower * (c_0 + c_1 t + ...)` known to absolute
/// precision `lower + coeffs.len()`.
///
/// Nonzero values are normalized so that `c_0 != 0`. A value that is zero
/// to precision stores no coefficients and keeps its absolute precision in
/// `lower`.
#[derive(Clone, Debug)]
pub struct LaurentElem<F: Field> {
    field: F,
    lower: i64,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for LaurentElem<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.lower == other.lower && self.coeffs == other.coeffs
    }
}

impl<F: Field> LaurentElem<F> {
    /// Coefficients of `t^lower, t^(lower+1), ...`; leading zeros are absorbed.
    pub fn from_window(field: F, lower: i64, coeffs: Vec<F::Elem>) -> Self {
        let lead = coeffs.iter().position(|c| !field.is_zero(c));
        match lead {
            Some(k) => LaurentElem { lower: lower + k as i64, coeffs: coeffs[k..].to_vec(), field },
            None => LaurentElem { lower: lower + coeffs.len() as i64, coeffs: Vec::new(), field },
        }
    }

    /// Zero known to absolute precision `abs_prec`.
    pub fn zero(field: F, abs_prec: i64) -> Self {
        LaurentElem { field, lower: abs_prec, coeffs: Vec::new() }
    }

    /// `c * t^e` with `rel_prec` significant coefficients.
    pub fn monomial(field: F, c: F::Elem, e: i64, rel_prec: usize) -> Self {
        let mut coeffs = vec![field.zero(); rel_prec.max(1)];
        coeffs[0] = c;
        Self::from_window(field, e, coeffs)
    }

    pub fn one(field: F, rel_prec: usize) -> Self {
        let one = field.one();
        Self::monomial(field, one, 0, rel_prec)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Order of the lowest stored term; for zero, the absolute precision.
    pub fn lower(&self) -> i64 {
        self.lower
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lower)
    }

    pub fn relative_precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn absolute_precision(&self) -> i64 {
        self.lower + self.coeffs.len() as i64
    }

    /// Lies in `E[[t]]`; zero counts as integral.
    pub fn is_integral(&self) -> bool {
        self.is_zero() || self.lower >= 0
    }

    /// Coefficient of `t^e`, zero below `lower`. Above the absolute
    /// precision the answer is meaningless and also zero.
    pub fn coeff(&self, e: i64) -> F::Elem {
        if e < self.lower {
            return self.field.zero();
        }
        self.coeffs.get((e - self.lower) as usize).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Power series view of an integral value, to its absolute precision.
    pub fn to_series(&self) -> Option<TruncatedSeries<F>> {
        if !self.is_integral() {
            return None;
        }
        let n = self.absolute_precision().max(1) as usize;
        let coeffs = (0..n as i64).map(|e| self.coeff(e)).collect();
        TruncatedSeries::new(self.field.clone(), coeffs).ok()
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.field != other.field {
            return Err(SeriesError::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let prec = self.absolute_precision().min(other.absolute_precision());
        let lo = self.lower.min(other.lower).min(prec);
        let coeffs = (lo..prec).map(|e| self.field.add(&self.coeff(e), &other.coeff(e))).collect();
        Ok(Self::from_window(self.field.clone(), lo, coeffs))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        LaurentElem { field: self.field.clone(), lower: self.lower, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let f = &self.field;
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ok(Self::zero(f.clone(), self.lower + other.lower)),
            (true, false) => return Ok(Self::zero(f.clone(), self.lower + other.lower)),
            (false, true) => return Ok(Self::zero(f.clone(), self.lower + other.lower)),
            (false, false) => {}
        }
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![f.zero(); n];
        for i in 0..n {
            for j in 0..n - i {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(&self.coeffs[i], &other.coeffs[j]));
            }
        }
        Ok(Self::from_window(f.clone(), self.lower + other.lower, coeffs))
    }

    /// Any nonzero element is invertible; the order negates.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroElement);
        }
        let unit = TruncatedSeries::new(self.field.clone(), self.coeffs.clone())?.inv()?;
        Ok(Self::from_window(self.field.clone(), -self.lower, unit.coeffs))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Self::from_window(self.field.clone(), self.lower, coeffs)
    }

    /// Multiplication by `t^k` for any integer `k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentElem { field: self.field.clone(), lower: self.lower + k, coeffs: self.coeffs.clone() }
    }

    /// Equal on every coefficient below both absolute precisions.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.field != other.field {
            return false;
        }
        let prec = self.absolute_precision().min(other.absolute_precision());
        let lo = self.lower.min(other.lower);
        (lo..prec).all(|e| self.coeff(e) == other.coeff(e))
    }

    pub fn display_in(&self, var: &str) -> String {
        let items = self.coeffs.iter().enumerate().map(|(i, c)| (self.lower + i as i64, c));
        let terms = nonzero_terms(&self.field, items, var);
        finish_series(terms, var, self.absolute_precision())
    }
}

impl<F: Field> fmt::Display for LaurentElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};

    fn q(c: &[i64]) -> TruncatedSeries<Rationals> {
        TruncatedSeries::from_ints(Rationals, c)
    }

    #[test]
    fn products() {
        assert_eq!(q(&[1, 1, 0, 0]).mul(&q(&[1, -1, 0, 0])).unwrap(), q(&[1, 0, -1, 0]));
        assert_eq!(q(&[0, 1, 0]).mul(&q(&[0, 1, 0])).unwrap(), q(&[0, 0, 1]));
        assert_eq!(q(&[1, 1, 1, 1]).mul(&q(&[1, -1, 0, 0])).unwrap(), q(&[1, 0, 0, 0]));
        assert_eq!(q(&[1, 2, 3]).mul(&q(&[1, 1])).unwrap().precision(), 2);
    }

    #[test]
    fn field_mismatch() {
        let a = TruncatedSeries::from_ints(PrimeField::new(3).unwrap(), &[1, 1]);
        let b = TruncatedSeries::from_ints(PrimeField::new(5).unwrap(), &[1, 1]);
        assert_eq!(a.mul(&b), Err(SeriesError::FieldMismatch));
    }

    #[test]
    fn inverses() {
        assert_eq!(q(&[1, -1, 0, 0]).inv().unwrap(), q(&[1, 1, 1, 1]));
        assert_eq!(q(&[0, 1, 0, 0]).inv(), Err(SeriesError::NotUnit));
        assert_eq!(q(&[0, 0]).inv(), Err(SeriesError::ZeroElement));
        let t = q(&[0, 1, 0, 0]).to_laurent();
        let ti = t.inv().unwrap();
        assert_eq!(ti.lower(), -1);
        assert_eq!(ti.to_string(), "t^-1 + O(t^2)");
    }

    #[test]
    fn decomposition() {
        let (n, u) = q(&[0, 0, 1, 1, 0]).dvr_decompose().unwrap();
        assert_eq!((n, u), (2, q(&[1, 1, 0])));
        let (n, u) = q(&[1, 0, 0]).dvr_decompose().unwrap();
        assert_eq!((n, u), (0, q(&[1, 0, 0])));
        let (n, u) = q(&[0, 3, 0, 0]).dvr_decompose().unwrap();
        assert_eq!((n, u), (1, q(&[3, 0, 0])));
        assert_eq!(q(&[0, 0, 0]).dvr_decompose(), Err(SeriesError::ZeroElement));
    }

    #[test]
    fn divide_along_the_ideal_chain() {
        let a = q(&[0, 2, 1, 0, 0, 0]);
        let b = q(&[0, 0, 0, 5, 1, 7]);
        let c = b.divide(&a).unwrap();
        assert_eq!(c.precision(), 5);
        let back = a.truncate(5).mul(&c).unwrap();
        assert_eq!(back, b.truncate(5));
        assert_eq!(a.divide(&b), Err(SeriesError::NotDivisible));
    }

    #[test]
    fn printing() {
        assert_eq!(q(&[1, -1, 0, 2]).to_string(), "1 - t + 2*t^3 + O(t^4)");
        assert_eq!(q(&[0, 0]).to_string(), "O(t^2)");
        let l = LaurentElem::from_window(Rationals, -2, q(&[3, 0, 1]).coeffs().to_vec());
        assert_eq!(l.to_string(), "3*t^-2 + 1 + O(t^1)");
    }

    #[test]
    fn laurent_normalization() {
        let l = LaurentElem::from_window(Rationals, -3, q(&[0, 0, 1, 1]).coeffs().to_vec());
        assert_eq!(l.lower(), -1);
        assert_eq!(l.relative_precision(), 2);
        assert!(!l.is_integral());
        let z = LaurentElem::from_window(Rationals, -3, q(&[0, 0]).coeffs().to_vec());
        assert!(z.is_zero());
        assert_eq!(z.absolute_precision(), -1);
        let x = LaurentElem::monomial(Rationals, Rationals.one(), 2, 4);
        let y = x.inv().unwrap();
        assert!(x.mul(&y).unwrap().agrees_with(&LaurentElem::one(Rationals, 4)));
        let s = x.add(&y).unwrap();
        assert_eq!(s.lower(), -2);
        assert_eq!(s.absolute_precision(), 2);
    }
}
