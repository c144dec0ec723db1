//! Extended Dynkin quivers: Euler form, radical vector, defect, tube data.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Field, Matrix, Rationals};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("quiver is not affine: radical has dimension {0}")]
    NotAffine(usize),
    #[error("dimension vector {0:?} is not a nonzero regular vector")]
    NotRegular(Vec<i64>),
    #[error("unknown quiver type `{0}`")]
    BadType(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Dimension vectors are plain integer vectors indexed by vertex `1..=r`.
pub type DimVector = Vec<i64>;

/// The built-in extended Dynkin types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AffineType {
    Kronecker,
    A { p: usize, q: usize },
    D(usize),
    E6,
    E7,
    E8,
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineType::Kronecker => f.write_str("kronecker"),
            AffineType::A { p, q } => write!(f, "A~({p},{q})"),
            AffineType::D(n) => write!(f, "D~{n}"),
            AffineType::E6 => f.write_str("E~6"),
            AffineType::E7 => f.write_str("E~7"),
            AffineType::E8 => f.write_str("E~8"),
        }
    }
}

impl FromStr for AffineType {
    type Err = QuiverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || QuiverError::BadType(s.to_string());
        if t.eq_ignore_ascii_case("kronecker") {
            return Ok(AffineType::Kronecker);
        }
        if let Some(rest) = t.strip_prefix("A~") {
            let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
            let (p, q) = inner.split_once(',').ok_or_else(bad)?;
            let p: usize = p.parse().map_err(|_| bad())?;
            let q: usize = q.parse().map_err(|_| bad())?;
            if p == 0 || q == 0 {
                return Err(bad());
            }
            return Ok(AffineType::A { p, q });
        }
        if let Some(rest) = t.strip_prefix("D~") {
            let n: usize = rest.parse().map_err(|_| bad())?;
            if n < 4 {
                return Err(bad());
            }
            return Ok(AffineType::D(n));
        }
        match t.as_str() {
            "E~6" => Ok(AffineType::E6),
            "E~7" => Ok(AffineType::E7),
            "E~8" => Ok(AffineType::E8),
            _ => Err(bad()),
        }
    }
}

impl AffineType {
    pub fn vertex_count(&self) -> usize {
        match *self {
            AffineType::Kronecker => 2,
            AffineType::A { p, q } => p + q,
            AffineType::D(n) => n + 1,
            AffineType::E6 => 7,
            AffineType::E7 => 8,
            AffineType::E8 => 9,
        }
    }

    /// Ranks of the non-homogeneous tubes. For `A~(p,q)` a branch of length
    /// one contributes a homogeneous tube and is omitted.
    pub fn tube_ranks(&self) -> Vec<usize> {
        let mut v = match *self {
            AffineType::Kronecker => vec![],
            AffineType::A { p, q } => vec![p, q],
            AffineType::D(n) => vec![2, 2, n - 2],
            AffineType::E6 => vec![2, 3, 3],
            AffineType::E7 => vec![2, 3, 4],
            AffineType::E8 => vec![2, 3, 5],
        };
        v.retain(|&c| c > 1);
        v.sort_unstable();
        v
    }

    /// Every built-in type used by the exhaustive checks: `A~(p,q)` with
    /// `p <= q`, `p + q <= 6`, then `D~4..D~6` and the three `E~` types.
    pub fn catalogue() -> Vec<AffineType> {
        let mut out = vec![AffineType::Kronecker];
        for total in 3..=6 {
            for p in 1..=total / 2 {
                out.push(AffineType::A { p, q: total - p });
            }
        }
        out.extend([AffineType::D(4), AffineType::D(5), AffineType::D(6)]);
        out.extend([AffineType::E6, AffineType::E7, AffineType::E8]);
        out
    }

    pub fn quiver(&self) -> AffineQuiver {
        AffineQuiver::new(*self)
    }
}

/// An extended Dynkin quiver with its canonical orientation.
///
/// `A~(p,q)`: vertex 1 is the sink and vertex `p+q` the source; the two
/// branches are `1 <- 2 <- ... <- p <- p+q` and `1 <- p+1 <- ... <- p+q`.
/// The Kronecker quiver has two arrows `2 -> 1`. Trees are oriented with
/// every arrow pointing towards the leaf 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineQuiver {
    ty: AffineType,
    vertices: usize,
    arrows: Vec<(usize, usize)>,
}

impl AffineQuiver {
    pub fn new(ty: AffineType) -> Self {
        let n = ty.vertex_count();
        let arrows = match ty {
            AffineType::Kronecker => vec![(2, 1), (2, 1)],
            AffineType::A { p, q } => {
                let src = p + q;
                let mut c1 = vec![1];
                c1.extend(2..=p);
                c1.push(src);
                let mut c2 = vec![1];
                c2.extend(p + 1..p + q);
                c2.push(src);
                let mut arrows = Vec::new();
                for chain in [c1, c2] {
                    for w in chain.windows(2) {
                        arrows.push((w[1], w[0]));
                    }
                }
                arrows
            }
            _ => orient_towards_one(n, &tree_edges(ty)),
        };
        AffineQuiver { ty, vertices: n, arrows }
    }

    pub fn affine_type(&self) -> AffineType {
        self.ty
    }

    /// Number of vertices, written `r` elsewhere.
    pub fn r(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn tube_ranks(&self) -> Vec<usize> {
        self.ty.tube_ranks()
    }

    fn check_len(&self, d: &[i64]) -> Result<(), QuiverError> {
        if d.len() != self.vertices {
            return Err(QuiverError::LengthMismatch { expected: self.vertices, got: d.len() });
        }
        Ok(())
    }

    /// `E[i][j] = delta_ij - #{arrows i -> j}` (zero-based).
    pub fn euler_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertices;
        let mut e = vec![vec![0i64; n]; n];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(s, t) in &self.arrows {
            e[s - 1][t - 1] -= 1;
        }
        e
    }

    /// `sum_i d_i e_i - sum_{a: i -> j} d_i e_j`.
    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> Result<i64, QuiverError> {
        self.check_len(d)?;
        self.check_len(e)?;
        let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
        let arrows: i64 = self.arrows.iter().map(|&(s, t)| d[s - 1] * e[t - 1]).sum();
        Ok(diag - arrows)
    }

    /// The Tits form `q(d) = <d, d>`.
    pub fn quadratic_form(&self, d: &[i64]) -> Result<i64, QuiverError> {
        self.euler_form(d, d)
    }

    /// Primitive positive generator of the radical of the symmetrized form.
    pub fn radical_vector(&self) -> Result<DimVector, QuiverError> {
        let e = self.euler_matrix();
        let n = self.vertices;
        let q = Rationals;
        let rows = (0..n)
            .map(|i| (0..n).map(|j| q.from_i64(e[i][j] + e[j][i])).collect())
            .collect();
        let sym = Matrix::from_rows(q, rows).expect("square");
        let kernel = sym.nullspace();
        if kernel.len() != 1 {
            return Err(QuiverError::NotAffine(kernel.len()));
        }
        let v = &kernel[0];
        let denom_lcm = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * &denom_lcm).to_integer()).collect();
        let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
        let sign = if ints.iter().any(|x| x.is_negative()) { -1 } else { 1 };
        let h: Vec<i64> = ints.iter().map(|x| (x / &g).to_i64().expect("small") * sign).collect();
        if h.iter().any(|&x| x <= 0) {
            return Err(QuiverError::NotAffine(1));
        }
        Ok(h)
    }

    /// `<h, d>`: negative on preprojectives, zero on regulars, positive on preinjectives.
    pub fn defect(&self, d: &[i64]) -> Result<i64, QuiverError> {
        let h = self.radical_vector()?;
        self.euler_form(&h, d)
    }

    /// Path-count matrix `(I - A)^{-1}`: entry `(i, j)` counts paths `i -> j`.
    pub fn path_counts(&self) -> Vec<Vec<i64>> {
        let n = self.vertices;
        let mut adj = vec![vec![0i64; n]; n];
        for &(s, t) in &self.arrows {
            adj[s - 1][t - 1] += 1;
        }
        let mut total = vec![vec![0i64; n]; n];
        let mut power: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for _ in 0..=n {
            for i in 0..n {
                for j in 0..n {
                    total[i][j] += power[i][j];
                }
            }
            power = int_mat_mul(&power, &adj);
        }
        total
    }

    /// `dim P_i`, the vector of path counts out of vertex `i` (one-based).
    pub fn projective_dim(&self, i: usize) -> DimVector {
        self.path_counts()[i - 1].clone()
    }

    /// `dim R = sum_i dim P_i`.
    pub fn regular_module_dim(&self) -> DimVector {
        let pc = self.path_counts();
        (0..self.vertices).map(|j| pc.iter().map(|row| row[j]).sum()).collect()
    }

    /// Coxeter matrix `-E^{-1} E^T`, acting on column vectors.
    pub fn coxeter_matrix(&self) -> Vec<Vec<i64>> {
        let p = self.path_counts();
        let e = self.euler_matrix();
        let n = self.vertices;
        let et: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| e[j][i]).collect()).collect();
        int_mat_mul(&p, &et).into_iter().map(|row| row.into_iter().map(|x| -x).collect()).collect()
    }

    pub fn coxeter(&self, d: &[i64]) -> DimVector {
        self.coxeter_matrix().iter().map(|row| row.iter().zip(d).map(|(a, b)| a * b).sum()).collect()
    }

    /// Dimension vectors of the simple regular modules in non-homogeneous
    /// tubes, grouped by Coxeter orbit (one orbit per tube). They are the
    /// real roots of defect zero below `h` whose orbit sums to `h`.
    pub fn simple_regular_orbits(&self) -> Result<Vec<Vec<DimVector>>, QuiverError> {
        let h = self.radical_vector()?;
        let mut seen: Vec<DimVector> = Vec::new();
        let mut orbits = Vec::new();
        for d in boxed_vectors(&h) {
            if d.iter().all(|&x| x == 0) || d == h || seen.contains(&d) {
                continue;
            }
            if self.quadratic_form(&d)? != 1 || self.euler_form(&h, &d)? != 0 {
                continue;
            }
            let mut orbit = vec![d.clone()];
            let mut cur = self.coxeter(&d);
            while cur != d && orbit.len() <= self.vertices {
                orbit.push(cur.clone());
                cur = self.coxeter(&cur);
            }
            seen.extend(orbit.iter().cloned());
            let sum: Vec<i64> = (0..self.vertices).map(|i| orbit.iter().map(|v| v[i]).sum()).collect();
            if sum == h {
                orbits.push(orbit);
            }
        }
        orbits.sort_by_key(|o| o.len());
        Ok(orbits)
    }

    /// `delta(u) = -<u, dim R>` for a regular vector `u`.
    ///
    /// This equals `dim_k Ext^1(U, R)` since `Hom(U, R) = 0`; dividing by
    /// `dim End(U) = 1` assumes the base field is algebraically closed.
    pub fn delta_multiplicity(&self, u: &[i64]) -> Result<u64, QuiverError> {
        self.check_len(u)?;
        if u.iter().all(|&x| x == 0) || u.iter().any(|&x| x < 0) || self.defect(u)? != 0 {
            return Err(QuiverError::NotRegular(u.to_vec()));
        }
        let dim_r = self.regular_module_dim();
        let v = -self.euler_form(u, &dim_r)?;
        Ok(v.max(0) as u64)
    }

    /// `(sum_i h_i) * (sum_j dim S_j)` with every simple one-dimensional.
    pub fn delta_bound(&self) -> Result<u64, QuiverError> {
        let h = self.radical_vector()?;
        Ok(h.iter().sum::<i64>() as u64 * self.vertices as u64)
    }
}

fn int_mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// All integer vectors `0 <= d <= h`.
fn boxed_vectors(h: &[i64]) -> impl Iterator<Item = DimVector> + '_ {
    let total: i64 = h.iter().map(|x| x + 1).product();
    (0..total).map(move |mut idx| {
        h.iter()
            .map(|&hi| {
                let v = idx % (hi + 1);
                idx /= hi + 1;
                v
            })
            .collect()
    })
}

/// Undirected edges of the tree types, vertex 1 always a leaf.
fn tree_edges(ty: AffineType) -> Vec<(usize, usize)> {
    match ty {
        AffineType::D(n) => {
            // leaves 1, 2 on interior vertex 3; interior path 3..=n-1; leaves n, n+1 on n-1
            let mut e = vec![(1, 3), (2, 3)];
            for v in 3..n - 1 {
                e.push((v, v + 1));
            }
            e.push((n - 1, n));
            e.push((n - 1, n + 1));
            e
        }
        AffineType::E6 => vec![(1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (6, 7)],
        AffineType::E7 => vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (4, 8)],
        AffineType::E8 => vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (6, 9)],
        _ => unreachable!("not a tree type"),
    }
}

fn orient_towards_one(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut dist = vec![usize::MAX; n + 1];
    dist[1] = 0;
    let mut queue = std::collections::VecDeque::from([1usize]);
    while let Some(v) = queue.pop_front() {
        for &(a, b) in edges {
            let w = if a == v { b } else if b == v { a } else { continue };
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    edges.iter().map(|&(a, b)| if dist[a] > dist[b] { (a, b) } else { (b, a) }).collect()
}

/// Parses a comma-separated dimension vector such as `1,1`.
pub fn parse_dim_vector(s: &str) -> Result<DimVector, QuiverError> {
    s.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| QuiverError::Parse(format!("bad entry `{x}`"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_basics() {
        let k = AffineType::Kronecker.quiver();
        assert_eq!(k.euler_form(&[1, 1], &[1, 1]).unwrap(), 0);
        assert_eq!(k.euler_form(&[1, 0], &[1, 0]).unwrap(), 1);
        assert_eq!(k.euler_form(&[0, 0], &[3, 5]).unwrap(), 0);
        assert_eq!(k.radical_vector().unwrap(), vec![1, 1]);
        assert_eq!(k.defect(&[1, 0]).unwrap(), -1);
        assert_eq!(k.defect(&[1, 1]).unwrap(), 0);
        assert_eq!(k.defect(&[0, 1]).unwrap(), 1);
        assert_eq!(k.regular_module_dim(), vec![3, 1]);
        assert_eq!(k.delta_multiplicity(&[1, 1]).unwrap(), 2);
        assert_eq!(k.delta_bound().unwrap(), 4);
        assert!(matches!(k.delta_multiplicity(&[0, 0]), Err(QuiverError::NotRegular(_))));
        assert!(matches!(k.delta_multiplicity(&[1, 0]), Err(QuiverError::NotRegular(_))));
        assert_eq!(
            k.euler_form(&[1], &[1, 1]),
            Err(QuiverError::LengthMismatch { expected: 2, got: 1 })
        );
        assert_eq!(k.coxeter(&[1, 1]), vec![1, 1]);
        assert_eq!(k.coxeter(&[0, 1]), vec![2, 3]);
    }

    #[test]
    fn radical_vectors() {
        let d4 = AffineType::D(4).quiver().radical_vector().unwrap();
        assert_eq!(d4, vec![1, 1, 2, 1, 1]);
        let e8 = AffineType::E8.quiver().radical_vector().unwrap();
        assert_eq!(e8.iter().sum::<i64>(), 30);
        assert_eq!(AffineType::E6.quiver().radical_vector().unwrap().iter().sum::<i64>(), 12);
        assert_eq!(AffineType::E7.quiver().radical_vector().unwrap().iter().sum::<i64>(), 18);
        assert_eq!(AffineType::D(4).quiver().delta_bound().unwrap(), 30);
        assert_eq!(AffineType::E8.quiver().delta_bound().unwrap(), 270);
    }

    #[test]
    fn parse_types() {
        for t in AffineType::catalogue() {
            assert_eq!(t.to_string().parse::<AffineType>().unwrap(), t);
        }
        assert!("D~3".parse::<AffineType>().is_err());
        assert!("A~(0,2)".parse::<AffineType>().is_err());
        assert!("F~4".parse::<AffineType>().is_err());
        assert_eq!(parse_dim_vector("(1, 2)").unwrap(), vec![1, 2]);
    }

    #[test]
    fn orbits_reproduce_tube_ranks() {
        for t in AffineType::catalogue() {
            let q = t.quiver();
            let sizes: Vec<usize> = q.simple_regular_orbits().unwrap().iter().map(Vec::len).collect();
            assert_eq!(sizes, t.tube_ranks(), "{t}");
        }
    }
}
