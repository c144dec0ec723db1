//! Simple extensions `k[x]/(p(x))` of a base field.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;

use super::field::{Field, Irreducibility};
use super::poly::Poly;
use super::AlgebraError;

/// Fields larger than this are not enumerated by [`Field::elements`].
const ENUMERATION_LIMIT: u64 = 1 << 16;

#[derive(Debug)]
struct Inner<F: Field> {
    base: F,
    modulus: Poly<F>,
    trusted: bool,
}

/// The field `base[x]/(modulus)`. Elements are coefficient vectors of
/// length `deg(modulus)`, reduced after every operation.
#[derive(Clone, Debug)]
pub struct ExtField<F: Field> {
    inner: Arc<Inner<F>>,
}

impl<F: Field> PartialEq for ExtField<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus)
    }
}

impl<F: Field> ExtField<F> {
    /// Checks that `modulus` is monic and irreducible.
    pub fn new(modulus: Poly<F>) -> Result<Self, AlgebraError> {
        Self::check_monic(&modulus)?;
        match modulus.irreducible()? {
            Irreducibility::Irreducible => Ok(Self::build(modulus, false)),
            Irreducibility::Reducible => Err(AlgebraError::NotIrreducible(modulus.compact())),
            Irreducibility::Unknown => Err(AlgebraError::IrreducibilityUnknown(modulus.compact())),
        }
    }

    /// Skips the irreducibility test when it cannot be decided; the flag is
    /// kept and reported by [`ExtField::trusted`]. A modulus that is provably
    /// reducible is still rejected.
    pub fn new_trusted(modulus: Poly<F>) -> Result<Self, AlgebraError> {
        Self::check_monic(&modulus)?;
        match modulus.irreducible()? {
            Irreducibility::Irreducible => Ok(Self::build(modulus, false)),
            Irreducibility::Reducible => Err(AlgebraError::NotIrreducible(modulus.compact())),
            Irreducibility::Unknown => Ok(Self::build(modulus, true)),
        }
    }

    fn check_monic(modulus: &Poly<F>) -> Result<(), AlgebraError> {
        if modulus.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        if !modulus.is_monic() {
            return Err(AlgebraError::NotMonic(modulus.compact()));
        }
        Ok(())
    }

    fn build(modulus: Poly<F>, trusted: bool) -> Self {
        let base = modulus.field().clone();
        ExtField { inner: Arc::new(Inner { base, modulus, trusted }) }
    }

    pub fn base(&self) -> &F {
        &self.inner.base
    }

    pub fn modulus(&self) -> &Poly<F> {
        &self.inner.modulus
    }

    /// Degree over the base field.
    pub fn degree(&self) -> usize {
        self.inner.modulus.degree().unwrap_or(0)
    }

    pub fn trusted(&self) -> bool {
        self.inner.trusted
    }

    /// The residue class of a base polynomial.
    pub fn reduce(&self, p: &Poly<F>) -> Vec<F::Elem> {
        let r = p.rem(&self.inner.modulus).expect("modulus is nonzero");
        (0..self.degree()).map(|i| r.coeff(i)).collect()
    }

    pub fn to_poly(&self, a: &[F::Elem]) -> Poly<F> {
        Poly::new(self.inner.base.clone(), a.to_vec())
    }

    /// The class of `x`, a generator over the base.
    pub fn generator(&self) -> Vec<F::Elem> {
        self.reduce(&Poly::x(self.inner.base.clone()))
    }

    pub fn embed(&self, c: &F::Elem) -> Vec<F::Elem> {
        self.reduce(&Poly::constant(self.inner.base.clone(), c.clone()))
    }
}

impl<F: Field> Field for ExtField<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.inner.base.zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.embed(&self.inner.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.inner.base;
        a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.inner.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(&(&self.to_poly(a) * &self.to_poly(b)))
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let p = self.to_poly(a);
        if p.is_zero() {
            return None;
        }
        let (g, s, _) = p.ext_gcd(&self.inner.modulus);
        g.is_constant().then(|| self.reduce(&s))
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.embed(&self.inner.base.from_int(n))
    }
    fn characteristic(&self) -> u64 {
        self.inner.base.characteristic()
    }
    fn order(&self) -> Option<u64> {
        self.inner.base.order()?.checked_pow(self.degree() as u32)
    }
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let q = self.order()?;
        if q > ENUMERATION_LIMIT {
            return None;
        }
        let base = self.inner.base.elements()?;
        let d = self.degree();
        let out = (0..q as usize)
            .map(|mut idx| {
                (0..d)
                    .map(|_| {
                        let c = base[idx % base.len()].clone();
                        idx /= base.len();
                        c
                    })
                    .collect()
            })
            .collect();
        Some(out)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        (0..self.degree()).map(|_| self.inner.base.random(rng)).collect()
    }
    fn fmt_elem(&self, a: &Self::Elem) -> String {
        self.to_poly(a).display_in("x")
    }
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, AlgebraError> {
        Ok(self.reduce(&Poly::parse(&self.inner.base, s)?))
    }
    fn descriptor(&self) -> String {
        format!("{}[x]/({})", self.inner.base.descriptor(), self.inner.modulus.compact())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;

    #[test]
    fn degree_one_matches_base() {
        let f3 = PrimeField::new(3).unwrap();
        let k = ExtField::new(Poly::parse(&f3, "x").unwrap()).unwrap();
        assert_eq!(k.order(), Some(3));
        for a in 0..3u64 {
            for b in 0..3u64 {
                assert_eq!(k.mul(&vec![a], &vec![b]), vec![f3.mul(&a, &b)]);
                assert_eq!(k.add(&vec![a], &vec![b]), vec![f3.add(&a, &b)]);
            }
        }
    }

    #[test]
    fn f9_group_order() {
        let f3 = PrimeField::new(3).unwrap();
        let k = ExtField::new(Poly::parse(&f3, "x^2+1").unwrap()).unwrap();
        let elems = k.elements().unwrap();
        assert_eq!(elems.len(), 9);
        let one = k.one();
        let nonzero: Vec<_> = elems.iter().filter(|e| !k.is_zero(e)).collect();
        assert_eq!(nonzero.len(), 8);
        // every nonzero element satisfies a^8 = 1 and some element has order exactly 8
        let mut max_order = 0;
        for a in &nonzero {
            let mut acc = (*a).clone();
            let mut ord = 1;
            while acc != one {
                acc = k.mul(&acc, a);
                ord += 1;
            }
            assert_eq!(8 % ord, 0);
            max_order = max_order.max(ord);
        }
        assert_eq!(max_order, 8);
        assert_eq!(k.descriptor(), "Fp(3)[x]/(x^2+1)");
    }

    #[test]
    fn rejects_bad_moduli() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(
            ExtField::new(Poly::parse(&f3, "x^2").unwrap()).unwrap_err(),
            AlgebraError::NotIrreducible("x^2".into())
        );
        assert!(matches!(
            ExtField::new(Poly::parse(&f3, "2*x^2+1").unwrap()),
            Err(AlgebraError::NotMonic(_))
        ));
        let q = crate::algebra::Rationals;
        assert!(matches!(
            ExtField::new(Poly::parse(&q, "x^4+1").unwrap()),
            Err(AlgebraError::IrreducibilityUnknown(_))
        ));
        let trusted = ExtField::new_trusted(Poly::parse(&q, "x^4+1").unwrap()).unwrap();
        assert!(trusted.trusted());
    }

    #[test]
    fn parse_reduces() {
        let f2 = PrimeField::new(2).unwrap();
        let k = ExtField::new(Poly::parse(&f2, "x^2+x+1").unwrap()).unwrap();
        assert_eq!(k.parse_elem("x^2").unwrap(), vec![1, 1]);
        assert_eq!(k.fmt_elem(&vec![1, 1]), "1 + x");
        let g = k.generator();
        assert_eq!(k.mul(&g, &k.inv(&g).unwrap()), k.one());
    }
}
