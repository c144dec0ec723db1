//! Symbolic ring descriptors shared by the localization and stratification code.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::quiver::AffineType;

/// One clique of simple regular modules in a selection: a tube of rank
/// `rank` from which `taken` simple regulars are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CliqueChoice {
    pub rank: usize,
    pub taken: usize,
}

impl CliqueChoice {
    pub fn full(rank: usize) -> Self {
        CliqueChoice { rank, taken: rank }
    }

    pub fn is_full(&self) -> bool {
        self.taken == self.rank
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rank == 1
    }
}

impl fmt::Display for CliqueChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_full() {
            write!(f, "{}", self.rank)
        } else {
            write!(f, "{}:{}", self.rank, self.taken)
        }
    }
}

/// The set `U` of simple regular modules, grouped by clique. Stored sorted
/// by descending rank so equal selections compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CliqueSelection {
    pub choices: Vec<CliqueChoice>,
}

impl CliqueSelection {
    pub fn new(mut choices: Vec<CliqueChoice>) -> Self {
        choices.sort_by(|a, b| b.cmp(a));
        CliqueSelection { choices }
    }

    /// `count` homogeneous cliques.
    pub fn homogeneous(count: usize) -> Self {
        Self::new(vec![CliqueChoice::full(1); count])
    }

    pub fn full_cliques(&self) -> impl Iterator<Item = &CliqueChoice> {
        self.choices.iter().filter(|c| c.is_full())
    }

    pub fn partial_cliques(&self) -> impl Iterator<Item = &CliqueChoice> {
        self.choices.iter().filter(|c| !c.is_full())
    }

    /// `s`, the number of cliques contained in `U`.
    pub fn s(&self) -> usize {
        self.full_cliques().count()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.iter().all(|c| c.taken == 0)
    }
}

impl fmt::Display for CliqueSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.choices.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The set of inverted irreducibles of a Dedekind localization of `k[x]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeltaSpec {
    /// Explicit monic irreducibles, in compact notation.
    Finite(Vec<String>),
    /// Every monic irreducible; the localization is `k(x)`.
    All,
    /// A set of the given size fixed only up to a choice, recorded in `tag`.
    Symbolic { size: usize, tag: String },
}

/// A ring, described symbolically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingDescriptor {
    /// The base field `k`.
    BaseField,
    /// `k[x]/(p)`.
    ExtField(String),
    PowerSeriesRing(Box<RingDescriptor>),
    LaurentSeriesRing(Box<RingDescriptor>),
    Dedekind(DeltaSpec),
    /// `k(x)`.
    FractionField,
    Matrix(usize, Box<RingDescriptor>),
    /// Upper triangular ring with the given diagonal; off-diagonal bimodules
    /// are recorded by name only.
    UpperTriangular { diagonal: Vec<RingDescriptor>, bimodules: Vec<String> },
    LowerTriangular(Vec<RingDescriptor>),
    Product(Vec<RingDescriptor>),
    Gamma(usize),
    Adele(Vec<RingDescriptor>),
    TameHereditary(AffineType),
    /// `End(R_U + R_U/R)` for the tilting module attached to `U`.
    TiltingEnd(AffineType, CliqueSelection),
    /// `R_U`, the universal localization at `U`.
    Localized(AffineType, CliqueSelection),
    /// `End_R(R_U/R)`.
    QuotientEnd(AffineType, CliqueSelection),
    /// `R_W` for the subset `W` of `U` keeping one module per selected clique.
    LocalizedW(AffineType, CliqueSelection),
    /// `End_{R_U}(R_W/R_U)`.
    RelativeQuotientEnd(AffineType, CliqueSelection),
    DivisionRingSymbol(String),
    /// The zero ring.
    Zero,
}

impl RingDescriptor {
    pub fn k() -> Self {
        RingDescriptor::BaseField
    }

    pub fn power_series() -> Self {
        RingDescriptor::PowerSeriesRing(Box::new(RingDescriptor::BaseField))
    }

    pub fn laurent() -> Self {
        RingDescriptor::LaurentSeriesRing(Box::new(RingDescriptor::BaseField))
    }

    /// `T_n(k)`, upper triangular `n x n` matrices over `k`.
    pub fn triangular_k(n: usize) -> Self {
        RingDescriptor::UpperTriangular {
            diagonal: vec![RingDescriptor::BaseField; n],
            bimodules: (1..n).map(|i| format!("k^{}", n - i)).collect(),
        }
    }
}

impl fmt::Display for DeltaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaSpec::Finite(ps) if ps.is_empty() => f.write_str("k[x]"),
            DeltaSpec::Finite(ps) => {
                let inv: Vec<String> = ps
                    .iter()
                    .map(|p| if p.len() == 1 { format!("1/{p}") } else { format!("1/({p})") })
                    .collect();
                write!(f, "k[x, {}]", inv.join(", "))
            }
            DeltaSpec::All => f.write_str("k(x)"),
            DeltaSpec::Symbolic { size, tag } => write!(f, "D[{tag}; |Delta|={size}]"),
        }
    }
}

fn join(items: &[RingDescriptor]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use RingDescriptor::*;
        match self {
            BaseField => f.write_str("k"),
            ExtField(p) => write!(f, "k[x]/({p})"),
            PowerSeriesRing(inner) => write!(f, "{inner}[[x]]"),
            LaurentSeriesRing(inner) => write!(f, "{inner}((x))"),
            Dedekind(d) => write!(f, "{d}"),
            FractionField => f.write_str("k(x)"),
            Matrix(n, inner) => write!(f, "M_{n}({inner})"),
            UpperTriangular { diagonal, .. } => write!(f, "UT({})", join(diagonal)),
            LowerTriangular(diagonal) => write!(f, "LT({})", join(diagonal)),
            Product(items) if items.is_empty() => f.write_str("0"),
            Product(items) => write!(f, "{}", items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" x ")),
            Gamma(m) => write!(f, "Gamma({m})"),
            Adele(items) => write!(f, "Adele({})", join(items)),
            TameHereditary(t) => write!(f, "kQ[{t}]"),
            TiltingEnd(t, u) => write!(f, "End(T_U)[{t}, U={u}]"),
            Localized(t, u) => write!(f, "R_U[{t}, U={u}]"),
            QuotientEnd(t, u) => write!(f, "End(R_U/R)[{t}, U={u}]"),
            LocalizedW(t, u) => write!(f, "R_W[{t}, U={u}]"),
            RelativeQuotientEnd(t, u) => write!(f, "End_R_U(R_W/R_U)[{t}, U={u}]"),
            DivisionRingSymbol(tag) => write!(f, "Q({tag})"),
            Zero => f.write_str("0"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(RingDescriptor::Dedekind(DeltaSpec::Finite(vec![])).to_string(), "k[x]");
        assert_eq!(RingDescriptor::Dedekind(DeltaSpec::Finite(vec!["x".into()])).to_string(), "k[x, 1/x]");
        let m = RingDescriptor::Matrix(2, Box::new(RingDescriptor::Dedekind(DeltaSpec::All)));
        assert_eq!(m.to_string(), "M_2(k(x))");
        assert_eq!(RingDescriptor::power_series().to_string(), "k[[x]]");
        assert_eq!(RingDescriptor::laurent().to_string(), "k((x))");
        assert_eq!(RingDescriptor::triangular_k(3).to_string(), "UT(k, k, k)");
    }

    #[test]
    fn selection_canonical_order() {
        let a = CliqueSelection::new(vec![CliqueChoice::full(1), CliqueChoice::full(3), CliqueChoice { rank: 2, taken: 1 }]);
        assert_eq!(a.to_string(), "[3,2:1,1]");
        assert_eq!(a.s(), 2);
        let json = serde_json::to_string(&RingDescriptor::TiltingEnd(AffineType::D(4), a.clone())).unwrap();
        let back: RingDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(back, RingDescriptor::TiltingEnd(AffineType::D(4), a));
    }
}
