//! Independent reference computations for the integration tests. Plain
//! `u64` arithmetic modulo a prime, sharing no code with the library.
#![allow(dead_code)]

pub type Mat = Vec<Vec<u64>>;

pub fn rank_mod(mut m: Mat, p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] % p != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows {
            if r != rank && m[r][c] % p != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] + p * p - f * m[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
}

pub fn transpose(a: &Mat, rows: usize, cols: usize) -> Mat {
    (0..cols).map(|j| (0..rows).map(|i| a[i][j]).collect()).collect()
}

/// Kronecker product of an `ar x ac` and a `br x bc` matrix.
pub fn kron(a: &Mat, ar: usize, ac: usize, b: &Mat, br: usize, bc: usize) -> Mat {
    let mut out = vec![vec![0; ac * bc]; ar * br];
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// A Kronecker representation: `a` and `b` are `d1 x d2`.
pub struct Rep {
    pub d1: usize,
    pub d2: usize,
    pub a: Mat,
    pub b: Mat,
}

/// `(dim Hom(X, Y), dim Ext^1(X, Y))` as kernel and cokernel of
/// `(f1, f2) -> (f1 A_X - A_Y f2, f1 B_X - B_Y f2)`, with column-major
/// vectorization `vec(P Q R) = (R^T kron P) vec(Q)`.
pub fn hom_ext(x: &Rep, y: &Rep, p: u64) -> (usize, usize) {
    let dom = x.d1 * y.d1 + x.d2 * y.d2;
    let cod = 2 * x.d2 * y.d1;
    if dom == 0 || cod == 0 {
        return (dom, cod);
    }
    let mut big = vec![vec![0u64; dom]; cod];
    let blocks = [(&x.a, &y.a), (&x.b, &y.b)];
    for (bi, (mx, my)) in blocks.iter().enumerate() {
        // f1 M_X: (M_X^T kron I_{d1Y}) acting on vec(f1), f1 is d1Y x d1X.
        let left = kron(&transpose(mx, x.d1, x.d2), x.d2, x.d1, &identity(y.d1), y.d1, y.d1);
        // M_Y f2: (I_{d2X} kron M_Y) acting on vec(f2), f2 is d2Y x d2X.
        let right = kron(&identity(x.d2), x.d2, x.d2, my, y.d1, y.d2);
        let off = bi * x.d2 * y.d1;
        for r in 0..x.d2 * y.d1 {
            for c in 0..x.d1 * y.d1 {
                big[off + r][c] = left[r][c] % p;
            }
            for c in 0..x.d2 * y.d2 {
                big[off + r][x.d1 * y.d1 + c] = (p - right[r][c] % p) % p;
            }
        }
    }
    let rank = rank_mod(big, p);
    (dom - rank, cod - rank)
}

/// `<x, y>` for the Kronecker quiver from its definition:
/// vertex dimensions paired, minus one term per arrow `2 -> 1`.
pub fn kronecker_euler(x: (i64, i64), y: (i64, i64)) -> i64 {
    x.0 * y.0 + x.1 * y.1 - 2 * x.1 * y.0
}

/// Polynomial product over `F_p`, coefficients ascending.
pub fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// All monic polynomials of degree `d` over `F_p`.
pub fn monics(d: usize, p: u64) -> Vec<Vec<u64>> {
    let count = p.pow(d as u32);
    (0..count)
        .map(|mut n| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(n % p);
                n /= p;
            }
            c.push(1);
            c
        })
        .collect()
}

/// Monic polynomials of degree `d` that factor into two positive-degree monics.
pub fn reducible_monics(d: usize, p: u64) -> std::collections::HashSet<Vec<u64>> {
    let mut out = std::collections::HashSet::new();
    for i in 1..=d / 2 {
        for a in monics(i, p) {
            for b in monics(d - i, p) {
                out.insert(poly_mul(&a, &b, p));
            }
        }
    }
    out
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` by a nonzero `d` over `F_p`.
pub fn poly_rem(a: &[u64], d: &[u64], p: u64) -> Vec<u64> {
    let d = trim(d.to_vec());
    let mut r = trim(a.to_vec());
    let inv = pow_mod(*d.last().expect("nonzero divisor"), p - 2, p);
    while r.len() >= d.len() {
        let c = r.last().unwrap() * inv % p;
        let off = r.len() - d.len();
        for (i, x) in d.iter().enumerate() {
            r[off + i] = (r[off + i] + p - c * x % p) % p;
        }
        r = trim(r);
    }
    r
}

/// Quotient of `a` by `d`, assuming `d` divides `a`.
pub fn poly_div(a: &[u64], d: &[u64], p: u64) -> Vec<u64> {
    let d = trim(d.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < d.len() {
        return vec![];
    }
    let inv = pow_mod(*d.last().unwrap(), p - 2, p);
    let mut q = vec![0; r.len() - d.len() + 1];
    while r.len() >= d.len() {
        let c = r.last().unwrap() * inv % p;
        let off = r.len() - d.len();
        q[off] = c;
        for (i, x) in d.iter().enumerate() {
            r[off + i] = (r[off + i] + p - c * x % p) % p;
        }
        r = trim(r);
    }
    trim(q)
}

pub fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Monic irreducibles of degree `1..=d` over `F_p`.
pub fn irreducibles(d: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for k in 1..=d {
        let red = reducible_monics(k, p);
        out.extend(monics(k, p).into_iter().filter(|m| !red.contains(m)));
    }
    out
}

/// `f/g` lies in `k[x]` localized at `delta` iff no monic irreducible outside
/// `delta` divides `g / gcd(f, g)`.
pub fn localization_member(f: &[u64], g: &[u64], delta: &[Vec<u64>], p: u64) -> bool {
    let h = poly_gcd(f, g, p);
    let g = poly_div(g, &h, p);
    let d = g.len().saturating_sub(1);
    irreducibles(d, p).iter().filter(|q| !delta.contains(q)).all(|q| !poly_rem(&g, q, p).is_empty())
}
