//! Representations of the Kronecker quiver `2 => 1` as pairs of matrices.
//!
//! A representation has spaces of dimension `d1` (sink) and `d2` (source)
//! and two `d1 x d2` matrices `A` (arrow alpha) and `B` (arrow beta).

use rand::Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraError, Field, Irreducibility, Matrix, Poly};
use crate::quiver::AffineType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KronError {
    #[error("representations live over different fields")]
    FieldMismatch,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("polynomial `{0}` is not irreducible")]
    NotIrreducible(String),
    #[error("level must be at least 1")]
    LevelZero,
    #[error("representation JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct KronRep<F: Field> {
    field: F,
    a: Matrix<F>,
    b: Matrix<F>,
}

/// Basis of `Hom(X, Y)`: pairs `(f1, f2)` with `f1 A_X = A_Y f2` and `f1 B_X = B_Y f2`.
#[derive(Clone, Debug)]
pub struct HomBasis<F: Field> {
    pub basis: Vec<(Matrix<F>, Matrix<F>)>,
}

impl<F: Field> HomBasis<F> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Marker selecting the ray through `V` instead of a polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum RaySource<F: Field> {
    V,
    Poly(Poly<F>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Indecomposability {
    Indecomposable,
    Decomposable,
    Unknown,
}

/// Largest endomorphism ring scanned exhaustively for idempotents.
const IDEMPOTENT_SCAN_LIMIT: u64 = 1 << 14;

impl<F: Field> KronRep<F> {
    pub fn new(a: Matrix<F>, b: Matrix<F>) -> Result<Self, KronError> {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(KronError::Shape(format!(
                "A is {}x{} but B is {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        if a.field() != b.field() {
            return Err(KronError::FieldMismatch);
        }
        Ok(KronRep { field: a.field().clone(), a, b })
    }

    pub fn zero(field: F, d1: usize, d2: usize) -> Self {
        let a = Matrix::zeros(field.clone(), d1, d2);
        KronRep { b: a.clone(), a, field }
    }

    /// `F(M)` for the `k[x]`-module `k^n` with `x` acting by `xact`: `A = I`, `B = xact`.
    pub fn functor_f(xact: &Matrix<F>) -> Result<Self, KronError> {
        if !xact.is_square() {
            return Err(KronError::Shape("x must act by a square matrix".into()));
        }
        let id = Matrix::identity(xact.field().clone(), xact.rows());
        Self::new(id, xact.clone())
    }

    /// The simple regular `V`: `k => k` with maps `0` and `1`.
    pub fn simple_v(field: F) -> Self {
        Self::v_ray(field, 1)
    }

    /// `V[n]`: `A` the nilpotent Jordan block, `B = I`.
    pub fn v_ray(field: F, n: usize) -> Self {
        let a = Matrix::jordan_nilpotent(field.clone(), n);
        let b = Matrix::identity(field, n);
        KronRep::new(a, b).expect("square blocks")
    }

    /// `F(k[x]/(p^n))`, the ray module of length `n` over `V_p`.
    pub fn poly_ray(p: &Poly<F>, n: usize) -> Result<Self, KronError> {
        Self::functor_f(&Matrix::companion(&p.pow(n as u32)))
    }

    /// Indecomposable projective `P_1` (dimension `(1,0)`) or `P_2` (dimension `(2,1)`).
    pub fn projective(field: F, vertex: usize) -> Self {
        match vertex {
            1 => Self::zero(field, 1, 0),
            _ => {
                let a = Matrix::from_ints(field.clone(), &[&[1], &[0]]);
                let b = Matrix::from_ints(field, &[&[0], &[1]]);
                KronRep::new(a, b).expect("shapes agree")
            }
        }
    }

    pub fn random<R: Rng + ?Sized>(field: F, d1: usize, d2: usize, rng: &mut R) -> Self {
        let mut gen = || {
            let data = (0..d1 * d2).map(|_| field.random(rng)).collect();
            Matrix::from_flat(field.clone(), d1, d2, data).expect("sized")
        };
        let a = gen();
        let b = gen();
        KronRep { field: field.clone(), a, b }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn d1(&self) -> usize {
        self.a.rows()
    }

    pub fn d2(&self) -> usize {
        self.a.cols()
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        vec![self.d1() as i64, self.d2() as i64]
    }

    pub fn a(&self) -> &Matrix<F> {
        &self.a
    }

    pub fn b(&self) -> &Matrix<F> {
        &self.b
    }

    /// Direct sum with block-diagonal matrices.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let blockdiag = |x: &Matrix<F>, y: &Matrix<F>| {
            let mut m = Matrix::zeros(self.field.clone(), x.rows() + y.rows(), x.cols() + y.cols());
            for i in 0..x.rows() {
                for j in 0..x.cols() {
                    m.set(i, j, x.get(i, j).clone());
                }
            }
            for i in 0..y.rows() {
                for j in 0..y.cols() {
                    m.set(x.rows() + i, x.cols() + j, y.get(i, j).clone());
                }
            }
            m
        };
        KronRep { field: self.field.clone(), a: blockdiag(&self.a, &other.a), b: blockdiag(&self.b, &other.b) }
    }

    /// Intertwiner system in the unknowns `(f1, f2)`, both flattened row-major.
    /// Rows are indexed by `(arrow, i, j)` with `i < d1(Y)`, `j < d2(X)`.
    fn hom_system(x: &Self, y: &Self) -> Matrix<F> {
        let f = &x.field;
        let (d1x, d2x, d1y, d2y) = (x.d1(), x.d2(), y.d1(), y.d2());
        let n1 = d1y * d1x;
        let unknowns = n1 + d2y * d2x;
        let mut m = Matrix::zeros(f.clone(), 2 * d1y * d2x, unknowns);
        for (arrow, (mx, my)) in [(&x.a, &y.a), (&x.b, &y.b)].into_iter().enumerate() {
            for i in 0..d1y {
                for j in 0..d2x {
                    let row = arrow * d1y * d2x + i * d2x + j;
                    // (f1 * M_X)[i][j] = sum_k f1[i][k] M_X[k][j]
                    for k in 0..d1x {
                        let col = i * d1x + k;
                        let v = f.add(m.get(row, col), mx.get(k, j));
                        m.set(row, col, v);
                    }
                    // (M_Y * f2)[i][j] = sum_l M_Y[i][l] f2[l][j]
                    for l in 0..d2y {
                        let col = n1 + l * d2x + j;
                        let v = f.sub(m.get(row, col), my.get(i, l));
                        m.set(row, col, v);
                    }
                }
            }
        }
        m
    }

    /// Basis of `Hom(self, other)`.
    pub fn hom_space(&self, other: &Self) -> Result<HomBasis<F>, KronError> {
        if self.field != other.field {
            return Err(KronError::FieldMismatch);
        }
        let (d1x, d2x, d1y, d2y) = (self.d1(), self.d2(), other.d1(), other.d2());
        let n1 = d1y * d1x;
        let system = Self::hom_system(self, other);
        let basis = system
            .nullspace()
            .into_iter()
            .map(|v| {
                let f1 = Matrix::from_flat(self.field.clone(), d1y, d1x, v[..n1].to_vec()).expect("sized");
                let f2 = Matrix::from_flat(self.field.clone(), d2y, d2x, v[n1..].to_vec()).expect("sized");
                (f1, f2)
            })
            .collect();
        Ok(HomBasis { basis })
    }

    pub fn hom_dim(&self, other: &Self) -> Result<usize, KronError> {
        if self.field != other.field {
            return Err(KronError::FieldMismatch);
        }
        let system = Self::hom_system(self, other);
        Ok(system.cols() - system.rank())
    }

    /// `<dim self, dim other>` for the Kronecker quiver.
    pub fn euler(&self, other: &Self) -> i64 {
        AffineType::Kronecker
            .quiver()
            .euler_form(&self.dim_vector(), &other.dim_vector())
            .expect("length two")
    }

    /// `dim Ext^1 = dim Hom - <dim X, dim Y>`.
    pub fn ext_dim(&self, other: &Self) -> Result<usize, KronError> {
        let hom = self.hom_dim(other)? as i64;
        Ok((hom - self.euler(other)) as usize)
    }

    /// `dim Ext^1` as the cokernel of `Hom(P_0, Y) -> Hom(P_1, Y)` in the
    /// standard resolution of `self`: the target has dimension
    /// `2 d2(X) d1(Y)`, and the map is the intertwiner system.
    pub fn ext_dim_cokernel(&self, other: &Self) -> Result<usize, KronError> {
        if self.field != other.field {
            return Err(KronError::FieldMismatch);
        }
        let system = Self::hom_system(self, other);
        Ok(system.rows() - system.rank())
    }

    /// Brute-force test that the representation is simple regular. Only
    /// available over enumerable fields; `None` otherwise.
    ///
    /// Requires `d1 = d2 = n > 0`, `A k^n + B k^n = k^n`, and
    /// `dim(A W + B W) > dim W` for every proper nonzero `W` in the source.
    pub fn is_simple_regular(&self) -> Option<bool> {
        let n = self.d2();
        if n == 0 || self.d1() != n {
            return Some(false);
        }
        let elems = self.field.elements()?;
        let image_dim = |w: &[Vec<F::Elem>]| -> usize {
            let mut cols: Vec<Vec<F::Elem>> = w.iter().map(|v| self.a.mul_vec(v)).collect();
            cols.extend(w.iter().map(|v| self.b.mul_vec(v)));
            Matrix::from_columns(self.field.clone(), n, &cols).rank()
        };
        let whole: Vec<Vec<F::Elem>> = (0..n).map(|i| unit_vector(&self.field, n, i)).collect();
        if image_dim(&whole) < n {
            return Some(false);
        }
        for k in 1..n {
            for w in subspaces(&self.field, &elems, n, k) {
                if image_dim(&w) <= k {
                    return Some(false);
                }
            }
        }
        Some(true)
    }

    /// Decides indecomposability on small examples. Finite fields with a
    /// small endomorphism ring are scanned for nontrivial idempotents;
    /// otherwise a local endomorphism ring is detected when every basis
    /// element differs from a scalar by a nilpotent and those nilpotents
    /// generate a nilpotent ideal.
    pub fn indecomposability(&self) -> Indecomposability {
        if self.d1() + self.d2() == 0 {
            return Indecomposability::Decomposable;
        }
        let end = self.hom_space(self).expect("same field").basis;
        let total = self.d1() + self.d2();
        if let (Some(q), Some(elems)) = (self.field.order(), self.field.elements()) {
            if (q as f64).powi(end.len() as i32) <= IDEMPOTENT_SCAN_LIMIT as f64 {
                return self.idempotent_scan(&end, &elems);
            }
        }
        let stacked: Vec<Matrix<F>> = end.iter().map(|(f1, f2)| block_diag(f1, f2)).collect();
        let mut nilpotents = Vec::new();
        for m in &stacked {
            match nilpotent_shift(m, total, &self.field) {
                Some(nm) => nilpotents.push(nm),
                None => return Indecomposability::Unknown,
            }
        }
        if generates_nilpotent_algebra(&nilpotents, total) && span_rank(&nilpotents) + 1 == end.len() {
            Indecomposability::Indecomposable
        } else {
            Indecomposability::Unknown
        }
    }

    fn idempotent_scan(&self, end: &[(Matrix<F>, Matrix<F>)], elems: &[F::Elem]) -> Indecomposability {
        let f = &self.field;
        let dim = end.len();
        let q = elems.len();
        let total = q.pow(dim as u32);
        let zero = block_diag(&Matrix::zeros(f.clone(), self.d1(), self.d1()), &Matrix::zeros(f.clone(), self.d2(), self.d2()));
        let id = Matrix::identity(f.clone(), self.d1() + self.d2());
        let stacked: Vec<Matrix<F>> = end.iter().map(|(f1, f2)| block_diag(f1, f2)).collect();
        for mut idx in 0..total {
            let mut e = zero.clone();
            for b in &stacked {
                let c = &elems[idx % q];
                idx /= q;
                if !f.is_zero(c) {
                    e = e.add(&b.scale(c)).expect("same shape");
                }
            }
            if e == zero || e == id {
                continue;
            }
            if e.mul(&e).expect("square") == e {
                return Indecomposability::Decomposable;
            }
        }
        Indecomposability::Indecomposable
    }

    /// Serializes as `{"field", "d1", "d2", "A", "B"}` with nested rows.
    pub fn to_json(&self) -> Value {
        let enc = |m: &Matrix<F>| -> Value {
            Value::Array(
                (0..m.rows())
                    .map(|i| Value::Array(m.row(i).iter().map(|x| scalar_json(&self.field, x)).collect()))
                    .collect(),
            )
        };
        json!({
            "field": self.field.descriptor(),
            "d1": self.d1(),
            "d2": self.d2(),
            "A": enc(&self.a),
            "B": enc(&self.b),
        })
    }

    /// Reads the JSON layout of [`KronRep::to_json`]; matrices may also be
    /// flat row-major arrays and entries may be numbers or strings.
    pub fn from_json(field: &F, v: &Value) -> Result<Self, KronError> {
        let dim = |key: &str| -> Result<usize, KronError> {
            v.get(key)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| KronError::Json(format!("missing or invalid `{key}`")))
        };
        let (d1, d2) = (dim("d1")?, dim("d2")?);
        let read = |key: &str| -> Result<Matrix<F>, KronError> {
            let raw = v.get(key).ok_or_else(|| KronError::Json(format!("missing `{key}`")))?;
            let arr = raw.as_array().ok_or_else(|| KronError::Json(format!("`{key}` is not an array")))?;
            let flat: Vec<&Value> = if arr.iter().all(Value::is_array) {
                arr.iter().flat_map(|r| r.as_array().expect("checked").iter()).collect()
            } else {
                arr.iter().collect()
            };
            let data = flat.into_iter().map(|x| parse_scalar(field, x)).collect::<Result<Vec<_>, _>>()?;
            Matrix::from_flat(field.clone(), d1, d2, data)
                .map_err(|e| KronError::Json(format!("`{key}`: {e}")))
        };
        KronRep::new(read("A")?, read("B")?)
    }
}

/// Field descriptor stored in a representation file.
pub fn json_field_descriptor(v: &Value) -> Result<String, KronError> {
    v.get("field")
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| KronError::Json("missing `field`".into()))
}

pub(crate) fn scalar_json<F: Field>(field: &F, x: &F::Elem) -> Value {
    let s = field.fmt_elem(x);
    match s.parse::<i64>() {
        Ok(n) => json!(n),
        Err(_) => json!(s),
    }
}

pub(crate) fn parse_scalar<F: Field>(field: &F, x: &Value) -> Result<F::Elem, KronError> {
    match x {
        Value::Number(n) => n
            .as_i64()
            .map(|i| field.from_i64(i))
            .ok_or_else(|| KronError::Json(format!("entry {n} is not an integer"))),
        Value::String(s) => Ok(field.parse_elem(s)?),
        other => Err(KronError::Json(format!("bad entry {other}"))),
    }
}

fn unit_vector<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

fn block_diag<F: Field>(x: &Matrix<F>, y: &Matrix<F>) -> Matrix<F> {
    let f = x.field().clone();
    let n = x.rows() + y.rows();
    let mut m = Matrix::zeros(f, n, n);
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            m.set(i, j, x.get(i, j).clone());
        }
    }
    for i in 0..y.rows() {
        for j in 0..y.cols() {
            m.set(x.rows() + i, x.rows() + j, y.get(i, j).clone());
        }
    }
    m
}

/// Subspaces of dimension `k` in `F^n`, each given by a basis in reduced
/// echelon form (one subspace per pivot pattern and free-entry filling).
pub fn subspaces<F: Field>(field: &F, elems: &[F::Elem], n: usize, k: usize) -> Vec<Vec<Vec<F::Elem>>> {
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        // free slots: (row r, column c) with c > pivots[r] and c not a pivot
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let q = elems.len();
        let count = q.pow(slots.len() as u32);
        for mut idx in 0..count {
            let mut rows: Vec<Vec<F::Elem>> = (0..k).map(|r| unit_vector(field, n, pivots[r])).collect();
            for &(r, c) in &slots {
                rows[r][c] = elems[idx % q].clone();
                idx /= q;
            }
            out.push(rows);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn is_nilpotent<F: Field>(m: &Matrix<F>, size: usize) -> bool {
    m.pow(size as u32).expect("square").is_zero()
}

/// `m - lambda I` for the scalar `lambda` making it nilpotent, if any.
fn nilpotent_shift<F: Field>(m: &Matrix<F>, size: usize, field: &F) -> Option<Matrix<F>> {
    let shifted = |lambda: &F::Elem| m.sub(&Matrix::identity(field.clone(), size).scale(lambda)).expect("square");
    let trace = (0..size).fold(field.zero(), |acc, i| field.add(&acc, m.get(i, i)));
    if let Some(lambda) = field.div(&trace, &field.from_i64(size as i64)) {
        let cand = shifted(&lambda);
        if is_nilpotent(&cand, size) {
            return Some(cand);
        }
    }
    for lambda in field.elements().unwrap_or_default() {
        let cand = shifted(&lambda);
        if is_nilpotent(&cand, size) {
            return Some(cand);
        }
    }
    None
}

fn span_rank<F: Field>(ms: &[Matrix<F>]) -> usize {
    let Some(first) = ms.first() else { return 0 };
    let rows: Vec<Vec<F::Elem>> = ms.iter().map(|m| m.data().to_vec()).collect();
    Matrix::from_rows(first.field().clone(), rows).expect("same size").rank()
}

/// Every product of `size` generators vanishes, which forces the
/// generated associative algebra to be nilpotent.
fn generates_nilpotent_algebra<F: Field>(gens: &[Matrix<F>], size: usize) -> bool {
    if gens.is_empty() {
        return true;
    }
    // spanning set of products of length j, reduced to a basis each round
    let mut layer: Vec<Matrix<F>> = basis_of(gens);
    for _ in 1..size {
        let mut next = Vec::new();
        for a in &layer {
            for g in gens {
                next.push(a.mul(g).expect("square"));
            }
        }
        layer = basis_of(&next);
        if layer.is_empty() {
            return true;
        }
    }
    layer.iter().all(Matrix::is_zero)
}

fn basis_of<F: Field>(ms: &[Matrix<F>]) -> Vec<Matrix<F>> {
    let Some(first) = ms.first() else { return Vec::new() };
    let (r, c) = (first.rows(), first.cols());
    let rows: Vec<Vec<F::Elem>> = ms.iter().map(|m| m.data().to_vec()).collect();
    let (red, pivots) = Matrix::from_rows(first.field().clone(), rows).expect("same size").rref();
    (0..pivots.len())
        .map(|i| Matrix::from_flat(first.field().clone(), r, c, red.row(i).to_vec()).expect("sized"))
        .collect()
}

/// Result of truncating the endomorphism ring of a Pruefer module at level `n`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PruferEndReport {
    pub source: String,
    pub field: String,
    pub level: usize,
    pub residue_degree: usize,
    pub dimension: usize,
    pub expected_dimension: usize,
    /// Smallest `k` with `t^k = 0` for the exhibited generator `t`.
    pub nilpotency_index: usize,
    /// `dim t^i End` for `i = 0..=n`.
    pub filtration: Vec<usize>,
    pub commutative: bool,
    /// Every endomorphism preserves the submodule of level `n - 1` and the
    /// restriction map onto its endomorphism ring is surjective.
    pub restriction_compatible: bool,
    pub irreducibility: Irreducibility,
}

impl PruferEndReport {
    /// All checks for `End(U[n]) = k_p[t]/(t^n)` hold.
    pub fn matches_truncated_power_series(&self) -> bool {
        self.dimension == self.expected_dimension
            && self.nilpotency_index == self.level
            && self.filtration == (0..=self.level).map(|i| (self.level - i) * self.residue_degree).collect::<Vec<_>>()
            && self.commutative
            && self.restriction_compatible
    }
}

/// Computes `End(U[n])` for `U = V_p` (via `F(k[x]/(p^n))`) or `U = V`
/// (via `V[n]`), exhibits `t` and checks the truncated power series shape.
pub fn prufer_end_truncation<F: Field>(
    field: &F,
    source: &RaySource<F>,
    n: usize,
) -> Result<PruferEndReport, KronError> {
    if n == 0 {
        return Err(KronError::LevelZero);
    }
    let (rep, t, deg, label, irreducibility) = match source {
        RaySource::V => {
            let rep = KronRep::v_ray(field.clone(), n);
            let j = Matrix::jordan_nilpotent(field.clone(), n);
            (rep, (j.clone(), j), 1, "V".to_string(), Irreducibility::Irreducible)
        }
        RaySource::Poly(p) => {
            if p.is_zero() {
                return Err(AlgebraError::ZeroPolynomial.into());
            }
            if !p.is_monic() {
                return Err(AlgebraError::NotMonic(p.compact()).into());
            }
            let irr = p.irreducible()?;
            if irr == Irreducibility::Reducible {
                return Err(KronError::NotIrreducible(p.compact()));
            }
            let c = Matrix::companion(&p.pow(n as u32));
            let pc = c.eval_poly(p);
            let rep = KronRep::functor_f(&c)?;
            (rep, (pc.clone(), pc), p.degree().unwrap_or(0), p.compact(), irr)
        }
    };
    let end = rep.hom_space(&rep)?.basis;
    let size = rep.d1() + rep.d2();
    let stacked: Vec<Matrix<F>> = end.iter().map(|(a, b)| block_diag(a, b)).collect();
    let tm = block_diag(&t.0, &t.1);

    let mut nilpotency_index = 0;
    let mut power = Matrix::identity(field.clone(), size);
    while !power.is_zero() && nilpotency_index <= size {
        power = power.mul(&tm).expect("square");
        nilpotency_index += 1;
    }

    let mut filtration = Vec::with_capacity(n + 1);
    let mut tp = Matrix::identity(field.clone(), size);
    for _ in 0..=n {
        let images: Vec<Matrix<F>> = stacked.iter().map(|e| tp.mul(e).expect("square")).collect();
        filtration.push(span_rank(&images));
        tp = tp.mul(&tm).expect("square");
    }

    let commutative = stacked.iter().all(|x| {
        stacked.iter().all(|y| x.mul(y).expect("square") == y.mul(x).expect("square"))
    });

    let restriction_compatible = restriction_check(&stacked, &tm, n, deg, size);

    Ok(PruferEndReport {
        source: label,
        field: field.descriptor(),
        level: n,
        residue_degree: deg,
        dimension: end.len(),
        expected_dimension: n * deg,
        nilpotency_index,
        filtration,
        commutative,
        restriction_compatible,
        irreducibility,
    })
}

/// The submodule `U[n-1] = ker t^(n-1)` is stable under every endomorphism
/// and restriction hits an `(n-1) deg p` dimensional space.
fn restriction_check<F: Field>(end: &[Matrix<F>], t: &Matrix<F>, n: usize, deg: usize, size: usize) -> bool {
    if n == 1 {
        return true;
    }
    let kernel = t.pow(n as u32 - 1).expect("square").nullspace();
    if kernel.is_empty() {
        return false;
    }
    let field = t.field().clone();
    let kmat = Matrix::from_columns(field.clone(), size, &kernel);
    let krank = kmat.rank();
    let mut restricted = Vec::new();
    for e in end {
        let imgs: Vec<Vec<F::Elem>> = kernel.iter().map(|v| e.mul_vec(v)).collect();
        let mut both = kernel.clone();
        both.extend(imgs.iter().cloned());
        if Matrix::from_columns(field.clone(), size, &both).rank() != krank {
            return false;
        }
        restricted.push(imgs.into_iter().flatten().collect::<Vec<_>>());
    }
    let image_dim = Matrix::from_rows(field, restricted).map(|m| m.rank()).unwrap_or(0);
    image_dim == (n - 1) * deg
}
