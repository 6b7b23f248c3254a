//! Univariate polynomials over `GF(p^d)`, coefficients stored constant term first.

use rand::Rng;

use super::ffmat::{FFMatrix, RowEchelon};
use super::gf::{Fe, GaloisField};

pub type Poly = Vec<Fe>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, with the zero polynomial reported as `None`.
pub fn degree(a: &[Fe]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(f: &GaloisField, a: &[Fe], b: &[Fe]) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect())
}

pub fn sub(f: &GaloisField, a: &[Fe], b: &[Fe]) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect())
}

pub fn mul(f: &GaloisField, a: &[Fe], b: &[Fe]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// `(quotient, remainder)`; `b` must be nonzero.
pub fn divrem(f: &GaloisField, a: &[Fe], b: &[Fe]) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let db = degree(&b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]);
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        q[dr - db] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[dr - db + i] = f.sub(r[dr - db + i], f.mul(c, bi));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(f: &GaloisField, a: &[Fe], b: &[Fe]) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &GaloisField, a: &[Fe]) -> Poly {
    let a = trim(a.to_vec());
    match a.last() {
        None => a,
        Some(&lead) => {
            let inv = f.inv(lead);
            a.iter().map(|&c| f.mul(c, inv)).collect()
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(f: &GaloisField, a: &[Fe], b: &[Fe]) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn derivative(f: &GaloisField, a: &[Fe]) -> Poly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| f.mul(f.from_int(i as i64), c)).collect())
}

/// `a^e mod m`
pub fn powmod(f: &GaloisField, a: &[Fe], mut e: u64, m: &[Fe]) -> Poly {
    let mut acc: Poly = rem(f, &[1], m);
    let mut base = rem(f, a, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &base), m);
        }
        e >>= 1;
        if e > 0 {
            base = rem(f, &mul(f, &base, &base), m);
        }
    }
    acc
}

/// Product of the distinct monic irreducible factors of `a`.
pub fn radical(f: &GaloisField, a: &[Fe]) -> Poly {
    let a = monic(f, a);
    if degree(&a).unwrap_or(0) == 0 {
        return vec![1];
    }
    let da = derivative(f, &a);
    if da.is_empty() {
        // a(x) = b(x^p) = (b^{1/p}(x))^p
        let p = f.characteristic() as usize;
        let root: Poly = a.iter().step_by(p).map(|&c| f.pth_root(c)).collect();
        return radical(f, &root);
    }
    let g = gcd(f, &a, &da);
    let w = divrem(f, &a, &g).0;
    let rg = radical(f, &g);
    // lcm(w, rg)
    let common = gcd(f, &w, &rg);
    monic(f, &mul(f, &w, &divrem(f, &rg, &common).0))
}

/// `x^(q^k) mod m`, via repeated `q`-th powers.
fn x_pow_q_k(f: &GaloisField, k: usize, m: &[Fe]) -> Poly {
    let q = f.order() as u64;
    let mut t = rem(f, &[0, 1], m);
    for _ in 0..k {
        t = powmod(f, &t, q, m);
    }
    t
}

/// Rabin-style test: no factor of degree `<= deg/2`.
pub fn is_irreducible(f: &GaloisField, a: &[Fe]) -> bool {
    let a = monic(f, a);
    let Some(n) = degree(&a) else { return false };
    if n == 0 {
        return false;
    }
    let q = f.order() as u64;
    let mut t = vec![0, 1];
    for _ in 1..=n / 2 {
        t = powmod(f, &t, q, &a);
        let g = gcd(f, &sub(f, &t, &[0, 1]), &a);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// A proper monic factor of the square-free `a`, or `None` when `a` is irreducible.
pub fn split_squarefree<R: Rng>(f: &GaloisField, a: &[Fe], rng: &mut R) -> Option<Poly> {
    let a = monic(f, a);
    let n = degree(&a)?;
    if n <= 1 {
        return None;
    }
    // distinct degree
    let rest = a.clone();
    for k in 1..=n {
        let dr = degree(&rest).unwrap_or(0);
        if dr == 0 || 2 * k > dr {
            break;
        }
        let t = x_pow_q_k(f, k, &rest);
        let g = gcd(f, &sub(f, &t, &[0, 1]), &rest);
        let dg = degree(&g).unwrap_or(0);
        if dg == 0 {
            continue;
        }
        if dg < n {
            return Some(g);
        }
        // every irreducible factor of `a` has degree k and there are n/k > 1 of them
        return Some(equal_degree_split(f, &a, k, rng));
    }
    None
}

fn equal_degree_split<R: Rng>(f: &GaloisField, a: &[Fe], k: usize, rng: &mut R) -> Poly {
    let n = degree(a).unwrap();
    let q = f.order() as u64;
    let p = f.characteristic();
    loop {
        let r: Poly = trim((0..n).map(|_| rng.gen_range(0..q) as Fe).collect());
        if degree(&r).unwrap_or(0) == 0 {
            continue;
        }
        let g = gcd(f, &r, a);
        if degree(&g).unwrap_or(0) > 0 && degree(&g) != Some(n) {
            return g;
        }
        let probe = if p == 2 {
            // absolute trace to GF(2): sum_{i < k*log2(q)} r^(2^i)
            let bits = (q.trailing_zeros() as usize) * k;
            let mut s = rem(f, &r, a);
            let mut term = s.clone();
            for _ in 1..bits {
                term = rem(f, &mul(f, &term, &term), a);
                s = add(f, &s, &term);
            }
            s
        } else {
            // r^((q^k - 1)/2) = (prod_{i<k} r^(q^i))^((q-1)/2)
            let mut norm = rem(f, &[1], a);
            let mut t = rem(f, &r, a);
            for _ in 0..k {
                norm = rem(f, &mul(f, &norm, &t), a);
                t = powmod(f, &t, q, a);
            }
            sub(f, &powmod(f, &norm, (q - 1) / 2, a), &[1])
        };
        let g = gcd(f, &probe, a);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            return g;
        }
    }
}

/// Horner evaluation at a square matrix.
pub fn eval_matrix(a: &[Fe], m: &FFMatrix) -> FFMatrix {
    let n = m.rows();
    let mut acc = FFMatrix::zeros(m.field(), n, n);
    for &c in a.iter().rev() {
        acc = acc.mul(m);
        if c != 0 {
            acc = acc.add(&FFMatrix::scalar(m.field(), n, c));
        }
    }
    acc
}

/// Minimal polynomial of a square matrix, as the lcm of the minimal
/// polynomials of Krylov generators.
pub fn minimal_polynomial(m: &FFMatrix) -> Poly {
    let f = m.field().clone();
    let n = m.rows();
    let mut covered = RowEchelon::new(&f, n);
    let mut result: Poly = vec![1];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        if covered.contains(&e) {
            continue;
        }
        // Krylov sequence of e until the first dependency
        let mut krylov = RowEchelon::tracking(&f, n);
        let mut v = e;
        let local = loop {
            covered.insert(v.clone());
            if let Some(dep) = krylov.insert(v.clone()) {
                // m^k v = sum dep_j m^j v
                let mut poly: Poly = dep.iter().map(|&c| f.neg(c)).collect();
                poly.push(1);
                break poly;
            }
            v = m.mul_vec(&v);
        };
        let g = gcd(&f, &result, &local);
        result = monic(&f, &mul(&f, &result, &divrem(&f, &local, &g).0));
    }
    result
}
