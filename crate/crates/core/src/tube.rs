//! Symbolic calculus in a tube of rank `m`: canonical maps between Pruefer
//! modules, the `pi` maps and the matrix ring `Gamma(m)` over `k[[x]]`.

use std::fmt;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::Field;
use crate::series::{LaurentElem, SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TubeError {
    #[error("cannot compose: target {target} differs from source {next_source}")]
    NotComposable { target: usize, next_source: usize },
    #[error("index out of range for a tube of rank {m}: {detail}")]
    OutOfRange { m: usize, detail: String },
    #[error("level {n} must exceed {span}")]
    BadLevel { n: usize, span: usize },
    #[error("precision {precision} is too low for rank {m}")]
    PrecisionTooLow { m: usize, precision: usize },
    #[error("symbols belong to tubes of different rank")]
    RankMismatch,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `Delta_{r,s}`: 0 if `r < s`, 1 otherwise.
pub fn delta(r: usize, s: usize) -> usize {
    usize::from(r >= s)
}

fn wrap(i: usize, m: usize) -> usize {
    (i - 1) % m + 1
}

fn check_index(i: usize, m: usize) -> Result<(), TubeError> {
    if m == 0 || i == 0 || i > m {
        return Err(TubeError::OutOfRange { m, detail: format!("index {i}") });
    }
    Ok(())
}

/// The canonical epimorphism `eps_{r, r+n}: U_r[inf] -> U_{r+n}[inf]`,
/// stored as `(source, shift)` with `shift >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PruferMapSymbol {
    pub m: usize,
    pub source: usize,
    pub shift: usize,
}

impl PruferMapSymbol {
    pub fn new(m: usize, source: usize, shift: usize) -> Result<Self, TubeError> {
        check_index(source, m)?;
        if shift == 0 {
            return Err(TubeError::OutOfRange { m, detail: "shift must be positive".into() });
        }
        Ok(PruferMapSymbol { m, source, shift })
    }

    /// `eps_{i,j}` for any `1 <= i < j`; indices are read modulo `m`.
    pub fn epsilon(m: usize, i: usize, j: usize) -> Result<Self, TubeError> {
        if m == 0 || i == 0 || j <= i {
            return Err(TubeError::OutOfRange { m, detail: format!("epsilon({i}, {j})") });
        }
        Self::new(m, wrap(i, m), j - i)
    }

    pub fn target(&self) -> usize {
        wrap(self.source + self.shift, self.m)
    }

    /// The kernel `U_source[shift]`.
    pub fn kernel(&self) -> RayModule {
        RayModule { m: self.m, start: self.source, length: Some(self.shift) }
    }

    /// `self` followed by `next`.
    pub fn compose(&self, next: &Self) -> Result<Self, TubeError> {
        if self.m != next.m {
            return Err(TubeError::RankMismatch);
        }
        if self.target() != next.source {
            return Err(TubeError::NotComposable { target: self.target(), next_source: next.source });
        }
        Ok(PruferMapSymbol { m: self.m, source: self.source, shift: self.shift + next.shift })
    }
}

impl fmt::Display for PruferMapSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "eps({}, {}+{}) : U{}[inf] -> U{}[inf]", self.source, self.source, self.shift, self.source, self.target())
    }
}

/// `pi_{r,s} = eps_{r, s + Delta_{r,s} m}`.
pub fn pi(r: usize, s: usize, m: usize) -> Result<PruferMapSymbol, TubeError> {
    check_index(r, m)?;
    check_index(s, m)?;
    PruferMapSymbol::epsilon(m, r, s + delta(r, s) * m)
}

/// How `pi_{r,s} pi_{s,t}` relates to `pi_{r,t}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PiLaw {
    /// `pi_{r,s} pi_{s,t} = pi_{r,t}`.
    Direct,
    /// `pi_{r,s} pi_{s,t} = pi_{r,r} pi_{r,t}`.
    Wound,
}

/// Classifies the composite of `pi_{r,s}` and `pi_{s,t}` by normal form.
pub fn pi_law_check(r: usize, s: usize, t: usize, m: usize) -> Result<PiLaw, TubeError> {
    let composite = pi(r, s, m)?.compose(&pi(s, t, m)?)?;
    if composite == pi(r, t, m)? {
        return Ok(PiLaw::Direct);
    }
    let wound = pi(r, r, m)?.compose(&pi(r, t, m)?)?;
    if composite == wound {
        Ok(PiLaw::Wound)
    } else {
        unreachable!("composite shifts differ by a multiple of m")
    }
}

/// Checks `pi_{i,i} eps_{i,j} = eps_{i,j} pi_{j,j}`: transporting the loop at
/// `i` along `eps_{i,j}` yields the loop at `j`.
pub fn loop_transport_check(i: usize, j: usize, m: usize) -> Result<bool, TubeError> {
    let e = PruferMapSymbol::epsilon(m, i, j)?;
    let jj = e.target();
    let left = pi(e.source, e.source, m)?.compose(&e)?;
    let right = e.compose(&pi(jj, jj, m)?)?;
    Ok(left == right && pi(jj, jj, m)?.shift == m)
}

/// `U_start[length]`, or the Pruefer module when `length` is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RayModule {
    pub m: usize,
    pub start: usize,
    pub length: Option<usize>,
}

impl RayModule {
    /// Regular composition factors `U_start, U_{start+1}, ...` (indices mod `m`);
    /// `None` for a Pruefer module.
    pub fn composition_factors(&self) -> Option<Vec<usize>> {
        self.length.map(|n| (0..n).map(|k| wrap(self.start + k, self.m)).collect())
    }
}

impl fmt::Display for RayModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.length {
            Some(n) => write!(f, "U{}[{}]", self.start, n),
            None => write!(f, "U{}[inf]", self.start),
        }
    }
}

/// `0 -> U_i[j-i] -> U_i[n] -> U_j[n-(j-i)] -> 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RaySequence {
    pub kernel: RayModule,
    pub middle: RayModule,
    pub image: RayModule,
}

pub fn ray_exact_sequence(i: usize, j: usize, n: usize, m: usize) -> Result<RaySequence, TubeError> {
    if m == 0 || i == 0 || j <= i {
        return Err(TubeError::OutOfRange { m, detail: format!("need 1 <= i < j, got ({i}, {j})") });
    }
    let span = j - i;
    if n <= span {
        return Err(TubeError::BadLevel { n, span });
    }
    let start = wrap(i, m);
    Ok(RaySequence {
        kernel: RayModule { m, start, length: Some(span) },
        middle: RayModule { m, start, length: Some(n) },
        image: RayModule { m, start: wrap(j, m), length: Some(n - span) },
    })
}

/// An `m x m` matrix of truncated power series in `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesMatrix<F: Field> {
    pub entries: Vec<Vec<TruncatedSeries<F>>>,
}

impl<F: Field> SeriesMatrix<F> {
    pub fn zero(field: &F, m: usize, n: usize) -> Self {
        SeriesMatrix { entries: vec![vec![TruncatedSeries::zero(field.clone(), n); m]; m] }
    }

    pub fn identity(field: &F, m: usize, n: usize) -> Self {
        let mut z = Self::zero(field, m, n);
        for i in 0..m {
            z.entries[i][i] = TruncatedSeries::one(field.clone(), n);
        }
        z
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn add(&self, other: &Self) -> Result<Self, TubeError> {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a.add(b)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SeriesMatrix { entries })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, TubeError> {
        let m = self.size();
        let mut entries = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = Vec::with_capacity(m);
            for j in 0..m {
                let mut acc = self.entries[i][0].mul(&other.entries[0][j])?;
                for k in 1..m {
                    acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j])?)?;
                }
                row.push(acc);
            }
            entries.push(row);
        }
        Ok(SeriesMatrix { entries })
    }

    pub fn pow(&self, e: u32) -> Result<Self, TubeError> {
        let field = self.entries[0][0].field().clone();
        let n = self.entries[0][0].precision();
        let mut acc = Self::identity(&field, self.size(), n);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn to_laurent(&self) -> LaurentMatrix<F> {
        LaurentMatrix {
            entries: self.entries.iter().map(|r| r.iter().map(TruncatedSeries::to_laurent).collect()).collect(),
        }
    }
}

impl<F: Field> fmt::Display for SeriesMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|s| s.display_in("x")).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// An `m x m` matrix of Laurent series.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentMatrix<F: Field> {
    pub entries: Vec<Vec<LaurentElem<F>>>,
}

impl<F: Field> LaurentMatrix<F> {
    pub fn mul(&self, other: &Self) -> Result<Self, TubeError> {
        let m = self.entries.len();
        let mut entries = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = Vec::with_capacity(m);
            for j in 0..m {
                let mut acc = self.entries[i][0].mul(&other.entries[0][j])?;
                for k in 1..m {
                    acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j])?)?;
                }
                row.push(acc);
            }
            entries.push(row);
        }
        Ok(LaurentMatrix { entries })
    }

    pub fn scale_shift(&self, k: i64) -> Self {
        LaurentMatrix { entries: self.entries.iter().map(|r| r.iter().map(|e| e.shift(k)).collect()).collect() }
    }
}

/// `Gamma(m)`: `m x m` matrices over `k[[x]]` whose strictly lower entries lie in `(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaRing<F: Field> {
    field: F,
    m: usize,
    precision: usize,
}

impl<F: Field> GammaRing<F> {
    pub fn new(field: F, m: usize, precision: usize) -> Result<Self, TubeError> {
        if m == 0 {
            return Err(TubeError::OutOfRange { m, detail: "rank must be positive".into() });
        }
        if precision == 0 {
            return Err(TubeError::PrecisionTooLow { m, precision });
        }
        Ok(GammaRing { field, m, precision })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_member(&self, a: &SeriesMatrix<F>) -> bool {
        a.size() == self.m
            && (0..self.m).all(|i| (0..i).all(|j| self.field.is_zero(&a.entries[i][j].coeff(0))))
    }

    pub fn identity(&self) -> SeriesMatrix<F> {
        SeriesMatrix::identity(&self.field, self.m, self.precision)
    }

    /// `E_{r,r+1}` for `1 <= r < m` followed by `E_{m,1}(x)`; for `m = 1` the single generator is `(x)`.
    pub fn generators(&self) -> Vec<SeriesMatrix<F>> {
        let one = self.field.one();
        let mut gens = Vec::new();
        for r in 0..self.m.saturating_sub(1) {
            let mut g = SeriesMatrix::zero(&self.field, self.m, self.precision);
            g.entries[r][r + 1] = TruncatedSeries::constant(self.field.clone(), one.clone(), self.precision);
            gens.push(g);
        }
        let mut g = SeriesMatrix::zero(&self.field, self.m, self.precision);
        g.entries[self.m - 1][0] = TruncatedSeries::t(self.field.clone(), self.precision);
        gens.push(g);
        gens
    }

    /// `J`, the sum of the generators.
    pub fn j(&self) -> SeriesMatrix<F> {
        let gens = self.generators();
        gens[1..].iter().fold(gens[0].clone(), |acc, g| acc.add(g).expect("same shape"))
    }

    pub fn random_member<R: Rng + ?Sized>(&self, rng: &mut R) -> SeriesMatrix<F> {
        let mut a = SeriesMatrix::zero(&self.field, self.m, self.precision);
        for i in 0..self.m {
            for j in 0..self.m {
                let mut coeffs: Vec<F::Elem> = (0..self.precision).map(|_| self.field.random(rng)).collect();
                if j < i {
                    coeffs[0] = self.field.zero();
                }
                a.entries[i][j] = TruncatedSeries::new(self.field.clone(), coeffs).expect("nonempty");
            }
        }
        a
    }

    /// `J^k` over Laurent series for any integer `k`, using `J^{-1} = x^{-1} J^{m-1}`.
    fn j_power(&self, k: i64) -> Result<LaurentMatrix<F>, TubeError> {
        let j = self.j();
        if k >= 0 {
            return Ok(j.pow(k as u32)?.to_laurent());
        }
        let inv = j.pow(self.m as u32 - 1)?.to_laurent().scale_shift(-1);
        let mut acc = SeriesMatrix::identity(&self.field, self.m, self.precision).to_laurent();
        for _ in 0..(-k) {
            acc = acc.mul(&inv)?;
        }
        Ok(acc)
    }
}

/// One entry of the witness set: `E_{i,j}(x^z) = E_ii J^k E_jj` with `k = j - i + z m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementaryWitness {
    pub i: usize,
    pub j: usize,
    pub z: i64,
    pub k: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaWitnessReport {
    pub m: usize,
    pub precision: usize,
    /// `J^m = x I` exactly.
    pub j_power_is_x_identity: bool,
    /// `J (x^{-1} J^{m-1}) = I` to precision.
    pub j_inverse_verified: bool,
    /// Every entry of the witness set checked.
    pub witnesses: Vec<ElementaryWitness>,
    pub j_power_display: Vec<Vec<String>>,
}

impl GammaWitnessReport {
    pub fn all_hold(&self) -> bool {
        self.j_power_is_x_identity && self.j_inverse_verified && self.witnesses.iter().all(|w| w.holds)
    }
}

/// Range of exponents `z` listed in the witness set.
pub const WITNESS_EXPONENTS: std::ops::RangeInclusive<i64> = -1..=1;

/// Builds `J` in `Gamma(m)`, checks `J^m = x I`, checks the inverse
/// `x^{-1} J^{m-1}`, and recovers every `E_{i,j}(x^z)` for `z` in
/// [`WITNESS_EXPONENTS`] from powers of `J`.
pub fn gamma_localization_witness<F: Field>(field: &F, m: usize, precision: usize) -> Result<GammaWitnessReport, TubeError> {
    if m == 0 {
        return Err(TubeError::OutOfRange { m, detail: "rank must be positive".into() });
    }
    if precision < m || precision < 2 {
        return Err(TubeError::PrecisionTooLow { m, precision });
    }
    let ring = GammaRing::new(field.clone(), m, precision)?;
    let j = ring.j();
    let jm = j.pow(m as u32)?;
    let mut x_id = SeriesMatrix::zero(field, m, precision);
    for i in 0..m {
        x_id.entries[i][i] = TruncatedSeries::t(field.clone(), precision);
    }
    let j_power_is_x_identity = jm == x_id;

    let prod = j.to_laurent().mul(&ring.j_power(-1)?)?;
    let j_inverse_verified = (0..m).all(|a| {
        (0..m).all(|b| {
            let e = &prod.entries[a][b];
            if a == b {
                e.agrees_with(&LaurentElem::one(field.clone(), precision)) && e.valuation() == Some(0)
            } else {
                e.is_zero() || e.valuation().is_some_and(|v| v >= e.absolute_precision())
            }
        })
    });

    let mut powers = std::collections::BTreeMap::new();
    let mut witnesses = Vec::new();
    for i in 1..=m {
        for jj in 1..=m {
            for z in WITNESS_EXPONENTS {
                let k = jj as i64 - i as i64 + z * m as i64;
                if let std::collections::btree_map::Entry::Vacant(e) = powers.entry(k) {
                    e.insert(ring.j_power(k)?);
                }
                let entry = &powers[&k].entries[i - 1][jj - 1];
                let expected = LaurentElem::monomial(field.clone(), field.one(), z, 1);
                let holds = entry.valuation() == Some(z)
                    && entry.agrees_with(&expected.shift(0))
                    && entry.coeffs().iter().skip(1).all(|c| field.is_zero(c));
                witnesses.push(ElementaryWitness { i, j: jj, z, k, holds });
            }
        }
    }
    let j_power_display = jm.entries.iter().map(|r| r.iter().map(|s| s.display_in("x")).collect()).collect();
    Ok(GammaWitnessReport { m, precision, j_power_is_x_identity, j_inverse_verified, witnesses, j_power_display })
}
