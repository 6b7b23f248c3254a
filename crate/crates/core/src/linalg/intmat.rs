//! Integer matrices with Hermite and Smith normal forms.
//!
//! Lattices are always the `Z`-span of the *columns*.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    #[serde(serialize_with = "ser_entries")]
    data: Vec<BigInt>,
}

fn ser_entries<S: serde::Serializer>(data: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(data.iter().map(|x| x.to_string()))
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(x);
            }
        }
        m
    }

    /// Matrix with the given integer vectors as columns.
    pub fn from_columns(dim: usize, cols: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(dim, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), dim);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[IntMatrix]) -> IntMatrix {
        let cols = parts.first().map_or(0, |p| p.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            data.extend(p.data.iter().cloned());
            rows += p.rows;
        }
        IntMatrix { rows, cols, data }
    }

    /// Appends columns of `other`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, c: &BigInt, src: usize) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, src) * c;
            self.data[i * self.cols + dst] += v;
        }
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, c: &BigInt, src: usize) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j) * c;
            self.data[dst * self.cols + j] += v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    /// Unimodular column update `new_a = x*a + y*b`, `new_b = u*a + v*b`
    /// (requires `xv - yu = 1`).
    fn combine_cols(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
        for i in 0..self.rows {
            let ca = self.get(i, a).clone();
            let cb = self.get(i, b).clone();
            self.set(i, a, x * &ca + y * &cb);
            self.set(i, b, u * &ca + v * &cb);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

/// Column-style Hermite normal form `H = M U`, `U` unimodular.
///
/// `H` is lower-triangular in staircase form: pivot `k` sits in column `k`
/// at row `pivot_rows[k]`, is positive, and the entries left of it in that
/// row lie in `[0, pivot)`. Columns past the rank are zero.
#[derive(Debug, Clone)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivot_rows: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// Integer `y` with `H y = v` restricted to the pivot columns, if one exists.
    fn solve_h(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let h = &self.h;
        let mut y = vec![BigInt::zero(); h.cols()];
        for (k, &r) in self.pivot_rows.iter().enumerate() {
            let mut rhs = v[r].clone();
            for (j, yj) in y.iter().enumerate().take(k) {
                rhs -= h.get(r, j) * yj;
            }
            let (q, rem) = rhs.div_rem(h.get(r, k));
            if !rem.is_zero() {
                return None;
            }
            y[k] = q;
        }
        (h.mul_vec(&y) == v).then_some(y)
    }

    /// Coefficients `x` with `M x = v`, if `v` lies in the column lattice.
    pub fn express(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.solve_h(v)?;
        Some(self.u.mul_vec(&y))
    }
}

pub fn hnf(m: &IntMatrix) -> Hnf {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols());
    let mut pivot_rows = Vec::new();
    let mut c = 0;
    for r in 0..h.rows() {
        if c == h.cols() {
            break;
        }
        // gcd-combine every column j > c into column c on row r
        for j in c + 1..h.cols() {
            if h.get(r, j).is_zero() {
                continue;
            }
            let a = h.get(r, c).clone();
            let b = h.get(r, j).clone();
            let e = a.extended_gcd(&b);
            // new_c = x a + y b -> g ; new_j = -(b/g) a + (a/g) b -> 0
            let (x, y) = (e.x, e.y);
            let bu = -(&b / &e.gcd);
            let av = &a / &e.gcd;
            h.combine_cols(c, j, &x, &y, &bu, &av);
            u.combine_cols(c, j, &x, &y, &bu, &av);
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_col(c);
            u.negate_col(c);
        }
        let pivot = h.get(r, c).clone();
        for j in 0..c {
            let q = h.get(r, j).div_floor(&pivot);
            let nq = -q;
            h.add_col(j, &nq, c);
            u.add_col(j, &nq, c);
        }
        pivot_rows.push(r);
        c += 1;
    }
    Hnf { h, u, pivot_rows }
}

/// Smith normal form `D = P M Q` with recorded unimodular transforms and
/// their inverses.
#[derive(Debug, Clone)]
pub struct Snf {
    pub d: IntMatrix,
    pub p: IntMatrix,
    pub p_inv: IntMatrix,
    pub q: IntMatrix,
    pub q_inv: IntMatrix,
    /// Nonzero diagonal entries, each dividing the next.
    pub divisors: Vec<BigInt>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

pub fn snf(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut p = IntMatrix::identity(rows);
    let mut p_inv = IntMatrix::identity(rows);
    let mut q = IntMatrix::identity(cols);
    let mut q_inv = IntMatrix::identity(cols);

    // Row op R_a += c R_b: P <- E P, P^-1 <- P^-1 E^-1 (C_b -= c C_a).
    macro_rules! row_add {
        ($dst:expr, $c:expr, $src:expr) => {{
            let c: BigInt = $c;
            d.add_row($dst, &c, $src);
            p.add_row($dst, &c, $src);
            p_inv.add_col($src, &(-&c), $dst);
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $c:expr, $src:expr) => {{
            let c: BigInt = $c;
            d.add_col($dst, &c, $src);
            q.add_col($dst, &c, $src);
            q_inv.add_row($src, &(-&c), $dst);
        }};
    }

    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = d.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap_rows(t, bi);
        p.swap_rows(t, bi);
        p_inv.swap_cols(t, bi);
        d.swap_cols(t, bj);
        q.swap_cols(t, bj);
        q_inv.swap_rows(t, bj);

        let mut clean = true;
        for i in t + 1..rows {
            if !d.get(i, t).is_zero() {
                let k = d.get(i, t).div_floor(d.get(t, t));
                row_add!(i, -k, t);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..cols {
            if !d.get(t, j).is_zero() {
                let k = d.get(t, j).div_floor(d.get(t, t));
                col_add!(j, -k, t);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // pivot must divide the rest of the block
        let pivot = d.get(t, t).clone();
        let offender = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !d.get(i, j).is_multiple_of(&pivot));
        if let Some((i, _)) = offender {
            row_add!(t, BigInt::one(), i);
            continue;
        }
        if pivot.is_negative() {
            d.negate_row(t);
            p.negate_row(t);
            p_inv.negate_col(t);
        }
        t += 1;
    }
    let divisors = (0..rows.min(cols)).map(|i| d.get(i, i).clone()).take_while(|x| !x.is_zero()).collect();
    Snf { d, p, p_inv, q, q_inv, divisors }
}

/// Decides `v ∈ Z-span(columns of M)`.
pub fn lattice_contains(m: &IntMatrix, v: &[BigInt]) -> bool {
    hnf(m).express(v).is_some()
}

/// Decides `Z-span(columns of M) = Z^dim`.
pub fn lattice_equals_full(m: &IntMatrix, dim: usize) -> bool {
    if m.rows() != dim {
        return false;
    }
    let s = snf(m);
    s.rank() == dim && s.divisors.iter().all(One::is_one)
}

pub fn to_bigint(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_lattice() {
        let m = IntMatrix::from_rows(&[vec![1, 0], vec![0, 2]]);
        assert!(lattice_contains(&m, &to_bigint(&[1, 0])));
        assert!(!lattice_contains(&m, &to_bigint(&[0, 1])));
        assert!(!lattice_equals_full(&m, 2));
        assert_eq!(snf(&m).divisors, to_bigint(&[1, 2]));
        assert!(lattice_equals_full(&IntMatrix::identity(3), 3));
    }

    #[test]
    fn s3_kernel_example() {
        // columns (0,1,0), (0,0,2), (1,0,1)
        let m = IntMatrix::from_columns(3, &[vec![0, 1, 0], vec![0, 0, 2], vec![1, 0, 1]]);
        assert!(!lattice_contains(&m, &to_bigint(&[1, 0, 0])));
        assert!(!lattice_equals_full(&m, 3));
        assert!(lattice_contains(&m, &to_bigint(&[1, 0, 3])));
    }

    #[test]
    fn hnf_shape_and_transform() {
        let m = IntMatrix::from_rows(&[vec![4, 6, 2], vec![3, 1, 7], vec![0, 5, 5]]);
        let h = hnf(&m);
        assert_eq!(m.mul(&h.u), h.h);
        for (k, &r) in h.pivot_rows.iter().enumerate() {
            assert!(h.h.get(r, k).is_positive());
            for j in 0..k {
                assert!(!h.h.get(r, j).is_negative() && h.h.get(r, j) < h.h.get(r, k));
            }
            for i in 0..r {
                assert!(h.h.get(i, k).is_zero());
            }
        }
    }

    #[test]
    fn snf_round_trip() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = snf(&m);
        assert_eq!(s.p.mul(&m).mul(&s.q), s.d);
        assert_eq!(s.p_inv.mul(&s.d).mul(&s.q_inv), m);
        assert_eq!(s.divisors, to_bigint(&[2, 6, 12]));
    }
}
