//! Runtime field selection from descriptor strings.

use std::fmt;

use super::ext::ExtField;
use super::field::{Field, PrimeField, Rationals};
use super::poly::Poly;
use super::AlgebraError;

/// One of the supported concrete fields, chosen at runtime.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyField {
    Prime(PrimeField),
    Rationals(Rationals),
    PrimeExt(ExtField<PrimeField>),
    RationalExt(ExtField<Rationals>),
}

/// Runs `$body` with `$f` bound to the concrete field inside an [`AnyField`].
#[macro_export]
macro_rules! with_field {
    ($any:expr, $f:ident => $body:expr) => {
        match $any {
            $crate::algebra::AnyField::Prime($f) => $body,
            $crate::algebra::AnyField::Rationals($f) => $body,
            $crate::algebra::AnyField::PrimeExt($f) => $body,
            $crate::algebra::AnyField::RationalExt($f) => $body,
        }
    };
}

impl AnyField {
    /// Parses `Fp(p)`, `Q`, or `<base>[x]/(<modulus>)`. Moduli whose
    /// irreducibility is undecidable are rejected.
    pub fn parse(s: &str) -> Result<Self, AlgebraError> {
        Self::parse_with(s, false)
    }

    /// Like [`AnyField::parse`] but accepts undecidable moduli as trusted.
    pub fn parse_trusted(s: &str) -> Result<Self, AlgebraError> {
        Self::parse_with(s, true)
    }

    fn parse_with(s: &str, trusted: bool) -> Result<Self, AlgebraError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some((base, rest)) = s.split_once("[x]/") {
            let modulus = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| AlgebraError::Parse(format!("expected `(modulus)` in `{s}`")))?;
            return match parse_base(base)? {
                AnyField::Prime(f) => {
                    let p = Poly::parse(&f, modulus)?;
                    let k = if trusted { ExtField::new_trusted(p)? } else { ExtField::new(p)? };
                    Ok(AnyField::PrimeExt(k))
                }
                AnyField::Rationals(q) => {
                    let p = Poly::parse(&q, modulus)?;
                    let k = if trusted { ExtField::new_trusted(p)? } else { ExtField::new(p)? };
                    Ok(AnyField::RationalExt(k))
                }
                _ => Err(AlgebraError::Parse("towers of extensions are not supported".into())),
            };
        }
        parse_base(&s)
    }

    pub fn descriptor(&self) -> String {
        with_field!(self, f => f.descriptor())
    }

    pub fn characteristic(&self) -> u64 {
        with_field!(self, f => f.characteristic())
    }

    pub fn order(&self) -> Option<u64> {
        with_field!(self, f => f.order())
    }

    /// True when the field rests on an irreducibility assertion that was not checked.
    pub fn trusted(&self) -> bool {
        match self {
            AnyField::PrimeExt(k) => k.trusted(),
            AnyField::RationalExt(k) => k.trusted(),
            _ => false,
        }
    }
}

fn parse_base(s: &str) -> Result<AnyField, AlgebraError> {
    match s {
        "Q" | "QQ" => return Ok(AnyField::Rationals(Rationals)),
        _ => {}
    }
    let digits = s
        .strip_prefix("Fp(")
        .or_else(|| s.strip_prefix("GF("))
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| s.strip_prefix('F'));
    let p: u64 = digits
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| AlgebraError::Parse(format!("unknown field `{s}`")))?;
    Ok(AnyField::Prime(PrimeField::new(p)?))
}

impl fmt::Display for AnyField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_roundtrip() {
        for s in ["Fp(3)", "Q", "Fp(2)[x]/(x^2+x+1)", "Q[x]/(x^2+1)", "Fp(3)[x]/(x^2+1)"] {
            assert_eq!(AnyField::parse(s).unwrap().descriptor(), s);
        }
        assert_eq!(AnyField::parse("F5").unwrap().descriptor(), "Fp(5)");
        assert_eq!(AnyField::parse("GF(7)").unwrap().descriptor(), "Fp(7)");
    }

    #[test]
    fn rejects_nonsense() {
        assert!(AnyField::parse("Fp(4)").is_err());
        assert!(AnyField::parse("R").is_err());
        assert!(AnyField::parse("Fp(2)[x]/(x^2+1)").is_err());
        assert!(AnyField::parse("Q[x]/(x^4+1)").is_err());
        assert!(AnyField::parse_trusted("Q[x]/(x^4+1)").unwrap().trusted());
    }
}
