//! Stratifications of `End(T_U)` by iterated recollements.
//!
//! A [`RecollementTree`] is grown from a root descriptor by a fixed set of
//! rewrite rules, always expanding the leftmost unfinished node and trying
//! rules in a fixed order, so equal inputs give equal trees. Leaves are the
//! rings listed in the derived-simple registry.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::descriptor::{CliqueChoice, CliqueSelection, DeltaSpec, RingDescriptor};
use crate::quiver::AffineType;

pub const SCHEMA: &str = "tamestrat/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StratError {
    #[error("the set U is empty")]
    EmptyU,
    #[error("U contains a partial clique ({0}); this route needs whole cliques")]
    PartialClique(String),
    #[error("triangular ring with a single diagonal block")]
    SingleBlock,
    #[error("clique selection {selection} does not fit {ty}: {detail}")]
    InvalidSelection { ty: String, selection: String, detail: String },
    #[error("no rule applies to {0}")]
    NoRule(String),
    #[error("malformed report: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Route {
    A,
    B,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::A => "A",
            Route::B => "B",
        })
    }
}

/// Rewrite rules. Each one names the fact it relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Tilting,
    Triangular,
    MoritaNormalize,
    Gamma,
    Hereditary,
    TiltingTriangular,
    LocalizationTriangular,
    TwoSimpleReduction,
    AdeleProduct,
    DegenerateRecollement,
}

impl Rule {
    pub fn citation(self) -> &'static str {
        match self {
            Rule::Tilting => "tilting recollement: adele ring of the full cliques and the hereditary algebra",
            Rule::Triangular => "a triangular matrix ring is a recollement of its diagonal blocks",
            Rule::MoritaNormalize => "Morita equivalence preserves derived categories; products split trivially",
            Rule::Gamma => "Gamma(m) is derived equivalent to the lower triangular ring with corner k[[x]]",
            Rule::Hereditary => "an acyclic path algebra is triangular over its vertex idempotents",
            Rule::TiltingTriangular => "End(T_U) is triangular with diagonal R_U and End(R_U/R)",
            Rule::LocalizationTriangular => {
                "R_U is derived equivalent to the triangular ring with diagonal R_W and End(R_W/R_U)"
            }
            Rule::TwoSimpleReduction => {
                "R_W localizes a two-simple tame hereditary algebra, hence is M_2 of a Dedekind domain"
            }
            Rule::AdeleProduct => "over finitely many indices the adele ring is the product of its components",
            Rule::DegenerateRecollement => "a recollement with a zero end term is an equivalence",
        }
    }
}

/// Why a leaf is derived simple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafReason {
    Field,
    LaurentField,
    DivisionRing,
    Dedekind,
}

impl LeafReason {
    pub fn citation(self) -> &'static str {
        match self {
            LeafReason::Field => "fields are derived simple",
            LeafReason::LaurentField => "k((x)) is a field, so derived simple",
            LeafReason::DivisionRing => "division rings are derived simple",
            LeafReason::Dedekind => "Dedekind domains (k[[x]] included) are derived simple",
        }
    }
}

/// The derived-simple registry.
pub fn registry_lookup(node: &RingDescriptor) -> Option<LeafReason> {
    use RingDescriptor::*;
    match node {
        BaseField | ExtField(_) | FractionField => Some(LeafReason::Field),
        LaurentSeriesRing(inner) if is_field(inner) => Some(LeafReason::LaurentField),
        DivisionRingSymbol(_) => Some(LeafReason::DivisionRing),
        Dedekind(_) => Some(LeafReason::Dedekind),
        PowerSeriesRing(inner) if is_field(inner) => Some(LeafReason::Dedekind),
        _ => None,
    }
}

fn is_field(node: &RingDescriptor) -> bool {
    matches!(node, RingDescriptor::BaseField | RingDescriptor::ExtField(_))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum NodeStatus {
    Expanded { rule: Rule, citation: String, left: Box<RecollementTree>, right: Box<RecollementTree> },
    Normalized { rule: Rule, citation: String, child: Box<RecollementTree> },
    Leaf { reason: LeafReason, citation: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecollementTree {
    pub node: RingDescriptor,
    #[serde(flatten)]
    pub status: NodeStatus,
}

impl RecollementTree {
    /// Leaf descriptors, left to right.
    pub fn leaves(&self) -> Vec<&RingDescriptor> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if matches!(t.status, NodeStatus::Leaf { .. }) {
                out.push(&t.node);
            }
        });
        out
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().len()
    }

    fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a RecollementTree)) {
        visit(self);
        match &self.status {
            NodeStatus::Expanded { left, right, .. } => {
                left.walk(visit);
                right.walk(visit);
            }
            NodeStatus::Normalized { child, .. } => child.walk(visit),
            NodeStatus::Leaf { .. } => {}
        }
    }

    /// Distinct citations in order of first appearance.
    pub fn citations(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        self.walk(&mut |t| {
            let c = match &t.status {
                NodeStatus::Expanded { citation, .. }
                | NodeStatus::Normalized { citation, .. }
                | NodeStatus::Leaf { citation, .. } => citation,
            };
            if !out.contains(c) {
                out.push(c.clone());
            }
        });
        out
    }

    /// Indented outline, one node per line.
    pub fn outline(&self) -> String {
        let mut s = String::new();
        self.outline_into(0, &mut s);
        s
    }

    fn outline_into(&self, depth: usize, s: &mut String) {
        let pad = "  ".repeat(depth);
        match &self.status {
            NodeStatus::Expanded { rule, left, right, .. } => {
                s.push_str(&format!("{pad}{} [{}]\n", self.node, rule_name(*rule)));
                left.outline_into(depth + 1, s);
                right.outline_into(depth + 1, s);
            }
            NodeStatus::Normalized { rule, child, .. } => {
                s.push_str(&format!("{pad}{} ~ [{}]\n", self.node, rule_name(*rule)));
                child.outline_into(depth + 1, s);
            }
            NodeStatus::Leaf { .. } => s.push_str(&format!("{pad}{} *\n", self.node)),
        }
    }
}

fn rule_name(rule: Rule) -> String {
    serde_json::to_value(rule).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

/// Composition-factor key of a leaf.
pub fn factor_key(node: &RingDescriptor) -> String {
    match node {
        RingDescriptor::BaseField => "k".into(),
        RingDescriptor::Dedekind(_) => "dedekind".into(),
        other => other.to_string(),
    }
}

/// Counts per factor key; the four standard keys are always present.
pub fn count_factors<'a>(leaves: impl IntoIterator<Item = &'a RingDescriptor>) -> BTreeMap<String, usize> {
    let mut m: BTreeMap<String, usize> =
        ["k", "k[[x]]", "k((x))", "dedekind"].iter().map(|k| (k.to_string(), 0)).collect();
    for l in leaves {
        *m.entry(factor_key(l)).or_insert(0) += 1;
    }
    m
}

/// Non-homogeneous cliques of `ty` left out of `u`, as ranks. Also checks
/// that every chosen clique exists in `ty`.
pub fn unselected_ranks(ty: AffineType, u: &CliqueSelection) -> Result<Vec<usize>, StratError> {
    let err = |detail: String| StratError::InvalidSelection { ty: ty.to_string(), selection: u.to_string(), detail };
    let mut free = ty.tube_ranks();
    for c in &u.choices {
        if c.taken == 0 || c.taken > c.rank {
            return Err(err(format!("cannot take {} simples from a rank {} clique", c.taken, c.rank)));
        }
        if c.rank == 1 {
            continue;
        }
        match free.iter().position(|&r| r == c.rank) {
            Some(i) => {
                free.remove(i);
            }
            None => return Err(err(format!("no free tube of rank {}", c.rank))),
        }
    }
    Ok(free)
}

fn product_or_single(mut items: Vec<RingDescriptor>) -> RingDescriptor {
    if items.len() == 1 {
        items.pop().expect("one item")
    } else {
        RingDescriptor::Product(items)
    }
}

/// `End(T_U)` becomes a recollement of the adele ring of the full cliques
/// and the path algebra. Without full cliques the adele ring is zero.
pub fn rule_tilting(node: &RingDescriptor, algebraically_closed: bool) -> Result<(RingDescriptor, RingDescriptor), StratError> {
    let RingDescriptor::TiltingEnd(ty, u) = node else {
        return Err(StratError::NoRule(node.to_string()));
    };
    if u.is_empty() {
        return Err(StratError::EmptyU);
    }
    let components = u
        .full_cliques()
        .enumerate()
        .map(|(i, c)| {
            if algebraically_closed {
                RingDescriptor::laurent()
            } else {
                RingDescriptor::DivisionRingSymbol(format!("C{}:rank{}", i + 1, c.rank))
            }
        })
        .collect();
    Ok((RingDescriptor::Adele(components), RingDescriptor::TameHereditary(*ty)))
}

/// Splits off the first diagonal block.
pub fn rule_triangular(node: &RingDescriptor) -> Result<(RingDescriptor, RingDescriptor), StratError> {
    match node {
        RingDescriptor::UpperTriangular { diagonal, bimodules } => {
            if diagonal.len() < 2 {
                return Err(StratError::SingleBlock);
            }
            let rest = if diagonal.len() == 2 {
                diagonal[1].clone()
            } else {
                RingDescriptor::UpperTriangular {
                    diagonal: diagonal[1..].to_vec(),
                    bimodules: bimodules.get(1..).map(<[String]>::to_vec).unwrap_or_default(),
                }
            };
            Ok((diagonal[0].clone(), rest))
        }
        RingDescriptor::LowerTriangular(diagonal) => {
            if diagonal.len() < 2 {
                return Err(StratError::SingleBlock);
            }
            let rest = if diagonal.len() == 2 {
                diagonal[1].clone()
            } else {
                RingDescriptor::LowerTriangular(diagonal[1..].to_vec())
            };
            Ok((diagonal[0].clone(), rest))
        }
        other => Err(StratError::NoRule(other.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalization {
    Single(RingDescriptor),
    Split(RingDescriptor, RingDescriptor),
}

/// Strips matrix wrappers and singleton products; longer products split
/// off their leftmost factor.
pub fn rule_morita_normalize(node: &RingDescriptor) -> Result<Normalization, StratError> {
    match node {
        RingDescriptor::Matrix(_, inner) => Ok(Normalization::Single((**inner).clone())),
        RingDescriptor::Product(items) if items.len() == 1 => Ok(Normalization::Single(items[0].clone())),
        RingDescriptor::Product(items) if items.len() >= 2 => {
            Ok(Normalization::Split(items[0].clone(), product_or_single(items[1..].to_vec())))
        }
        other => Err(StratError::NoRule(other.to_string())),
    }
}

/// The derived-equivalent triangular model of `Gamma(m)`.
pub fn rule_gamma(m: usize) -> RingDescriptor {
    if m <= 1 {
        return RingDescriptor::power_series();
    }
    let mut diagonal = vec![RingDescriptor::power_series()];
    diagonal.extend(std::iter::repeat_n(RingDescriptor::BaseField, m - 1));
    RingDescriptor::LowerTriangular(diagonal)
}

/// `kQ` as a triangular ring with `r` copies of `k` on the diagonal.
pub fn rule_hereditary(ty: AffineType) -> RingDescriptor {
    let r = ty.vertex_count();
    RingDescriptor::UpperTriangular {
        diagonal: vec![RingDescriptor::BaseField; r],
        bimodules: (2..=r).map(|i| format!("paths to vertex {i}")).collect(),
    }
}

fn clique_tag(ty: AffineType, u: &CliqueSelection) -> String {
    format!("{ty} U={u}; one fixed simple per clique")
}

/// `End(T_U)` as a triangular ring.
fn tilting_triangular(ty: AffineType, u: &CliqueSelection) -> RingDescriptor {
    RingDescriptor::UpperTriangular {
        diagonal: vec![RingDescriptor::Localized(ty, u.clone()), RingDescriptor::QuotientEnd(ty, u.clone())],
        bimodules: vec!["Hom_R(R_U, R_U/R)".into()],
    }
}

struct Engine {
    route: Route,
    algebraically_closed: bool,
}

impl Engine {
    fn leaf(node: RingDescriptor, reason: LeafReason) -> RecollementTree {
        RecollementTree { node, status: NodeStatus::Leaf { reason, citation: reason.citation().into() } }
    }

    fn normalized(&self, node: RingDescriptor, rule: Rule, child: RingDescriptor) -> Result<RecollementTree, StratError> {
        let child = Box::new(self.build(child)?);
        Ok(RecollementTree { node, status: NodeStatus::Normalized { rule, citation: rule.citation().into(), child } })
    }

    fn expanded(
        &self,
        node: RingDescriptor,
        rule: Rule,
        (left, right): (RingDescriptor, RingDescriptor),
    ) -> Result<RecollementTree, StratError> {
        let left = Box::new(self.build(left)?);
        let right = Box::new(self.build(right)?);
        Ok(RecollementTree { node, status: NodeStatus::Expanded { rule, citation: rule.citation().into(), left, right } })
    }

    fn build(&self, node: RingDescriptor) -> Result<RecollementTree, StratError> {
        use RingDescriptor::*;
        if let Some(reason) = registry_lookup(&node) {
            return Ok(Self::leaf(node, reason));
        }
        match &node {
            TiltingEnd(ty, u) => match self.route {
                Route::A => {
                    let (adele, hered) = rule_tilting(&node, self.algebraically_closed)?;
                    if u.s() == 0 {
                        self.normalized(node, Rule::DegenerateRecollement, hered)
                    } else {
                        self.expanded(node, Rule::Tilting, (adele, hered))
                    }
                }
                Route::B => {
                    let child = tilting_triangular(*ty, u);
                    self.normalized(node, Rule::TiltingTriangular, child)
                }
            },
            Localized(ty, u) => {
                let w = LocalizedW(*ty, u.clone());
                if unselected_ranks(*ty, u)?.is_empty() {
                    self.normalized(node, Rule::LocalizationTriangular, w)
                } else {
                    let child = UpperTriangular {
                        diagonal: vec![w, RelativeQuotientEnd(*ty, u.clone())],
                        bimodules: vec!["Hom_R_U(R_W, R_W/R_U)".into()],
                    };
                    self.normalized(node, Rule::LocalizationTriangular, child)
                }
            }
            QuotientEnd(_, u) => {
                let gammas = u.full_cliques().map(|c| Gamma(c.rank)).collect();
                self.normalized(node, Rule::MoritaNormalize, product_or_single(gammas))
            }
            LocalizedW(ty, u) => {
                let size = u.s().saturating_sub(1);
                let d = Dedekind(DeltaSpec::Symbolic { size, tag: clique_tag(*ty, u) });
                self.normalized(node, Rule::TwoSimpleReduction, Matrix(2, Box::new(d)))
            }
            RelativeQuotientEnd(ty, u) => {
                let blocks: Vec<_> = unselected_ranks(*ty, u)?
                    .into_iter()
                    .map(|c| if c == 2 { BaseField } else { RingDescriptor::triangular_k(c - 1) })
                    .collect();
                if blocks.is_empty() {
                    return Err(StratError::NoRule(node.to_string()));
                }
                self.normalized(node, Rule::MoritaNormalize, product_or_single(blocks))
            }
            Matrix(..) | Product(_) => match rule_morita_normalize(&node)? {
                Normalization::Single(child) => self.normalized(node, Rule::MoritaNormalize, child),
                Normalization::Split(a, b) => self.expanded(node, Rule::MoritaNormalize, (a, b)),
            },
            UpperTriangular { diagonal, .. } | LowerTriangular(diagonal) if diagonal.len() == 1 => {
                let child = diagonal[0].clone();
                self.normalized(node, Rule::MoritaNormalize, child)
            }
            UpperTriangular { .. } | LowerTriangular(_) => {
                let pair = rule_triangular(&node)?;
                self.expanded(node, Rule::Triangular, pair)
            }
            Gamma(m) => {
                let child = rule_gamma(*m);
                self.normalized(node, Rule::Gamma, child)
            }
            TameHereditary(ty) => {
                let child = rule_hereditary(*ty);
                self.normalized(node, Rule::Hereditary, child)
            }
            Adele(items) if !items.is_empty() => {
                let child = product_or_single(items.clone());
                self.normalized(node, Rule::AdeleProduct, child)
            }
            _ => Err(StratError::NoRule(node.to_string())),
        }
    }
}

/// Grows the tree below `root` with the rules of `route`.
pub fn build_tree(root: RingDescriptor, route: Route, algebraically_closed: bool) -> Result<RecollementTree, StratError> {
    Engine { route, algebraically_closed }.build(root)
}

mod type_string {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::quiver::AffineType;

    pub fn serialize<S: Serializer>(t: &AffineType, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(t)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<AffineType, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratReport {
    pub schema: String,
    #[serde(rename = "type", with = "type_string")]
    pub affine_type: AffineType,
    pub r: usize,
    pub cliques: CliqueSelection,
    pub route: Route,
    pub length: usize,
    pub factors: BTreeMap<String, usize>,
    pub tree: RecollementTree,
    pub citations: Vec<String>,
}

impl StratReport {
    pub fn s(&self) -> usize {
        self.cliques.s()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, StratError> {
        serde_json::from_value(v.clone()).map_err(|e| StratError::Json(e.to_string()))
    }
}

fn check_route_input(ty: AffineType, u: &CliqueSelection) -> Result<(), StratError> {
    unselected_ranks(ty, u)?;
    if u.is_empty() {
        return Err(StratError::EmptyU);
    }
    if let Some(c) = u.partial_cliques().next() {
        return Err(StratError::PartialClique(c.to_string()));
    }
    Ok(())
}

/// Stratification of `End(T_U)` along `route`, with `k` algebraically closed.
pub fn stratify(ty: AffineType, u: &CliqueSelection, route: Route) -> Result<StratReport, StratError> {
    check_route_input(ty, u)?;
    let tree = build_tree(RingDescriptor::TiltingEnd(ty, u.clone()), route, true)?;
    let leaves = tree.leaves();
    Ok(StratReport {
        schema: SCHEMA.into(),
        affine_type: ty,
        r: ty.vertex_count(),
        cliques: u.clone(),
        route,
        length: leaves.len(),
        factors: count_factors(leaves),
        citations: tree.citations(),
        tree,
    })
}

/// Length `r + s`, factors `k` (r times) and `k((x))` (s times).
pub fn stratify_a(ty: AffineType, u: &CliqueSelection) -> Result<StratReport, StratError> {
    stratify(ty, u, Route::A)
}

/// Length `r + s - 1`, factors `k` (r - 2 times), `k[[x]]` (s times) and one Dedekind domain.
pub fn stratify_b(ty: AffineType, u: &CliqueSelection) -> Result<StratReport, StratError> {
    stratify(ty, u, Route::B)
}

/// The factor counts a report of `route` must have.
pub fn expected_factors(r: usize, s: usize, route: Route) -> BTreeMap<String, usize> {
    let mut m = count_factors([]);
    match route {
        Route::A => {
            m.insert("k".into(), r);
            m.insert("k((x))".into(), s);
        }
        Route::B => {
            m.insert("k".into(), r.saturating_sub(2));
            m.insert("k[[x]]".into(), s);
            m.insert("dedekind".into(), 1);
        }
    }
    m
}

/// Returns the names of the failed checks; empty means the report is sound.
pub fn verify_report(rep: &StratReport) -> Vec<String> {
    let mut failed = Vec::new();
    let ty = rep.affine_type;
    let r = ty.vertex_count();
    let s = rep.s();
    let leaves = rep.tree.leaves();
    if rep.schema != SCHEMA {
        failed.push(format!("schema: {}", rep.schema));
    }
    if rep.r != r {
        failed.push(format!("r: report says {}, type has {r}", rep.r));
    }
    if rep.length != leaves.len() {
        failed.push(format!("length: {} but {} leaves", rep.length, leaves.len()));
    }
    if rep.factors != count_factors(leaves.iter().copied()) {
        failed.push("factors: do not match the leaves".into());
    }
    let want_len = match rep.route {
        Route::A => r + s,
        Route::B => (r + s).saturating_sub(1),
    };
    if rep.length != want_len {
        failed.push(format!("route {} length: {} but expected {want_len}", rep.route, rep.length));
    }
    if rep.factors != expected_factors(r, s, rep.route) {
        failed.push(format!("route {} factors: {:?}", rep.route, rep.factors));
    }
    let defect: usize = ty.tube_ranks().iter().map(|c| c - 1).sum();
    if defect + 2 != r {
        failed.push(format!("tube identity: sum(c-1) = {defect}, r-2 = {}", r as i64 - 2));
    }
    rep.tree.walk(&mut |t| match &t.status {
        NodeStatus::Leaf { reason, citation } => {
            if registry_lookup(&t.node) != Some(*reason) || citation != reason.citation() {
                failed.push(format!("registry: leaf {}", t.node));
            }
        }
        NodeStatus::Expanded { rule, citation, .. } | NodeStatus::Normalized { rule, citation, .. } => {
            if citation != rule.citation() {
                failed.push(format!("citation: node {}", t.node));
            }
        }
    });
    if rep.citations != rep.tree.citations() {
        failed.push("citations: list does not match the tree".into());
    }
    failed
}

/// Every nonempty selection of whole cliques: any subset of the
/// non-homogeneous tubes plus up to `max_homogeneous` homogeneous ones.
pub fn full_clique_subsets(ty: AffineType, max_homogeneous: usize) -> Vec<CliqueSelection> {
    let ranks = ty.tube_ranks();
    let mut out: Vec<CliqueSelection> = Vec::new();
    for mask in 0u32..(1 << ranks.len()) {
        for h in 0..=max_homogeneous {
            let mut choices: Vec<CliqueChoice> =
                ranks.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &c)| CliqueChoice::full(c)).collect();
            choices.extend(std::iter::repeat_n(CliqueChoice::full(1), h));
            let sel = CliqueSelection::new(choices);
            if !sel.choices.is_empty() && !out.contains(&sel) {
                out.push(sel);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sel(ranks: &[usize]) -> CliqueSelection {
        CliqueSelection::new(ranks.iter().map(|&c| CliqueChoice::full(c)).collect())
    }

    #[test]
    fn kronecker_counts() {
        let u = CliqueSelection::homogeneous(1);
        let a = stratify_a(AffineType::Kronecker, &u).unwrap();
        assert_eq!(a.length, 3);
        assert_eq!((a.factors["k"], a.factors["k((x))"]), (2, 1));
        let b = stratify_b(AffineType::Kronecker, &u).unwrap();
        assert_eq!(b.length, 2);
        assert_eq!((b.factors["k[[x]]"], b.factors["dedekind"], b.factors["k"]), (1, 1, 0));
        assert!(verify_report(&a).is_empty());
        assert!(verify_report(&b).is_empty());
    }

    #[test]
    fn d4_and_e8() {
        let u = sel(&[2, 2, 2]);
        let b = stratify_b(AffineType::D(4), &u).unwrap();
        assert_eq!(b.length, 7);
        assert_eq!(b.factors, expected_factors(5, 3, Route::B));
        let e = stratify_b(AffineType::E8, &sel(&[5])).unwrap();
        assert_eq!(e.length, 9);
        assert_eq!(e.factors["k"], 7);
    }

    #[test]
    fn rules() {
        let t3 = RingDescriptor::triangular_k(3);
        let tree = build_tree(t3, Route::A, true).unwrap();
        assert_eq!(tree.leaf_count(), 3);
        assert_eq!(rule_triangular(&RingDescriptor::triangular_k(1)), Err(StratError::SingleBlock));
        assert_eq!(
            rule_morita_normalize(&RingDescriptor::Matrix(1, Box::new(RingDescriptor::k()))).unwrap(),
            Normalization::Single(RingDescriptor::k())
        );
        let g3 = build_tree(RingDescriptor::Gamma(3), Route::A, true).unwrap();
        assert_eq!(count_factors(g3.leaves()), {
            let mut m = count_factors([]);
            m.insert("k".into(), 2);
            m.insert("k[[x]]".into(), 1);
            m
        });
    }

    #[test]
    fn errors() {
        let empty = CliqueSelection::new(vec![]);
        assert_eq!(stratify_a(AffineType::Kronecker, &empty), Err(StratError::EmptyU));
        let partial = CliqueSelection::new(vec![CliqueChoice { rank: 2, taken: 1 }]);
        assert!(matches!(stratify_b(AffineType::D(4), &partial), Err(StratError::PartialClique(_))));
        assert!(matches!(stratify_a(AffineType::Kronecker, &sel(&[2])), Err(StratError::InvalidSelection { .. })));
        let tree = build_tree(RingDescriptor::TiltingEnd(AffineType::D(4), partial), Route::A, true).unwrap();
        assert!(matches!(tree.status, NodeStatus::Normalized { rule: Rule::DegenerateRecollement, .. }));
    }

    #[test]
    fn tampering_detected() {
        let mut a = stratify_a(AffineType::Kronecker, &CliqueSelection::homogeneous(1)).unwrap();
        a.length += 1;
        assert!(!verify_report(&a).is_empty());
    }

    #[test]
    fn json_roundtrip() {
        let b = stratify_b(AffineType::E7, &sel(&[4, 2, 1])).unwrap();
        let text = serde_json::to_string(&b).unwrap();
        let back: StratReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, b);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
