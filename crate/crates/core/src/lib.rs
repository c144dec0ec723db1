//! Exact computations around tame hereditary algebras: Kronecker
//! representations, tubes and Prüfer modules, localizations of `k[x]`,
//! adele rings, and stratifications of derived module categories by
//! iterated recollements.

pub mod adele;
pub mod algebra;
pub mod descriptor;
pub mod error;
pub mod kronrep;
pub mod localize;
pub mod quiver;
pub mod series;
pub mod strat;
pub mod suite;
pub mod tube;

pub use error::{Error, Result};

use algebra::{ExtField, Matrix, Poly, PrimeField, Rationals};
use series::{LaurentElem, TruncatedSeries};

pub type QPoly = Poly<Rationals>;
pub type FpPoly = Poly<PrimeField>;
pub type FqPoly = Poly<ExtField<PrimeField>>;
pub type QMatrix = Matrix<Rationals>;
pub type FpMatrix = Matrix<PrimeField>;
pub type QSeries = TruncatedSeries<Rationals>;
pub type FpSeries = TruncatedSeries<PrimeField>;
pub type FqSeries = TruncatedSeries<ExtField<PrimeField>>;
pub type QLaurent = LaurentElem<Rationals>;
pub type FpLaurent = LaurentElem<PrimeField>;
