use std::fmt;
use std::sync::Arc;

use super::gf::{Fe, GaloisField};
use crate::error::{Error, Result};

/// `dst += c * src`
#[inline]
pub fn axpy(f: &GaloisField, dst: &mut [Fe], c: Fe, src: &[Fe]) {
    if c == 0 {
        return;
    }
    let row = f.mul_row(c);
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = f.add(*d, row[s as usize]);
        }
    }
}

/// Dense matrix over `GF(p^d)`, row-major.
#[derive(Clone)]
pub struct FFMatrix {
    field: Arc<GaloisField>,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl PartialEq for FFMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for FFMatrix {}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FFMatrix {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl FFMatrix {
    pub fn zeros(field: &Arc<GaloisField>, rows: usize, cols: usize) -> Self {
        FFMatrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Arc<GaloisField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(field: &Arc<GaloisField>, n: usize, c: Fe) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_data(field: &Arc<GaloisField>, rows: usize, cols: usize, data: Vec<Fe>) -> Self {
        assert_eq!(data.len(), rows * cols);
        FFMatrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &Arc<GaloisField>, rows: &[Vec<Fe>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data: Vec<Fe> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::from_data(field, rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Arc<GaloisField>, n: usize, cols: &[Vec<Fe>]) -> Self {
        let mut m = Self::zeros(field, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m.data[i * cols.len() + j] = c[i];
            }
        }
        m
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as Fe))
    }

    pub fn mul(&self, other: &FFMatrix) -> FFMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let f = &*self.field;
        let mut out = FFMatrix::zeros(&self.field, self.rows, other.cols);
        let oc = other.cols;
        for i in 0..self.rows {
            let dst = &mut out.data[i * oc..(i + 1) * oc];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    axpy(f, dst, a, &other.data[k * oc..(k + 1) * oc]);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        let f = &*self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &FFMatrix) -> FFMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &*self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FFMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &FFMatrix) -> FFMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &*self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FFMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Fe) -> FFMatrix {
        let f = &*self.field;
        let data = self.data.iter().map(|&a| f.mul(c, a)).collect();
        FFMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: Fe, other: &FFMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        axpy(&self.field.clone(), &mut self.data, c, &other.data);
    }

    pub fn transpose(&self) -> FFMatrix {
        let mut out = FFMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn kron(&self, other: &FFMatrix) -> FFMatrix {
        let f = &*self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = FFMatrix::zeros(&self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * c + j * other.cols + l] = f.mul(a, other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> FFMatrix {
        assert!(self.is_square());
        let mut acc = FFMatrix::identity(&self.field, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> FFMatrix {
        let mut out = FFMatrix::zeros(&self.field, r1 - r0, c1 - c0);
        for i in r0..r1 {
            out.data[(i - r0) * (c1 - c0)..(i - r0 + 1) * (c1 - c0)]
                .copy_from_slice(&self.data[i * self.cols + c0..i * self.cols + c1]);
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &FFMatrix) {
        for i in 0..b.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(b.row(i));
        }
    }

    pub fn hstack(parts: &[&FFMatrix]) -> FFMatrix {
        let rows = parts[0].rows;
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = FFMatrix::zeros(&parts[0].field, rows, cols);
        let mut c0 = 0;
        for p in parts {
            out.set_block(0, c0, p);
            c0 += p.cols;
        }
        out
    }

    pub fn vstack(parts: &[&FFMatrix]) -> FFMatrix {
        let cols = parts[0].cols;
        let mut data = Vec::new();
        for p in parts {
            assert_eq!(p.cols, cols);
            data.extend_from_slice(&p.data);
        }
        let rows = data.len() / cols.max(1);
        let rows = if cols == 0 { parts.iter().map(|p| p.rows).sum() } else { rows };
        FFMatrix { field: parts[0].field.clone(), rows, cols, data }
    }

    pub fn trace(&self) -> Fe {
        let f = &*self.field;
        (0..self.rows.min(self.cols)).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }

    /// Reduced row echelon form and pivot columns. Pivots are the first
    /// nonzero entry in column order.
    pub fn rref(&self) -> (FFMatrix, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            let row = f.mul_row(inv);
            for j in 0..m.cols {
                let x = m.data[r * m.cols + j];
                m.data[r * m.cols + j] = row[x as usize];
            }
            let pivot_row: Vec<Fe> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i != r {
                    let c_i = m.get(i, c);
                    if c_i != 0 {
                        let cols = m.cols;
                        axpy(&f, &mut m.data[i * cols..(i + 1) * cols], f.neg(c_i), &pivot_row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut e = RowEchelon::new(&self.field, self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        e.rank()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Fe>> {
        let f = &*self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<FFMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = FFMatrix::hstack(&[self, &FFMatrix::identity(&self.field, n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, 2 * n))
    }

    /// Independent columns spanning the column space (pivot columns of the rref).
    pub fn column_basis(&self) -> FFMatrix {
        let (_, pivots) = self.rref();
        let cols: Vec<Vec<Fe>> = pivots.iter().map(|&j| self.column(j)).collect();
        FFMatrix::from_columns(&self.field, self.rows, &cols)
    }

    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        let mut m = self.clone();
        let mut k = 1;
        while k < self.rows {
            m = m.mul(&m);
            k *= 2;
        }
        m.is_zero()
    }

    /// Flattened entries, used to treat matrices as vectors.
    pub fn to_vec(&self) -> Vec<Fe> {
        self.data.clone()
    }
}

/// Result of [`ff_solve`].
#[derive(Debug, Clone)]
pub struct Solution {
    /// One `X` with `A X = B`, if any.
    pub particular: Option<FFMatrix>,
    /// Basis of the right null space of `A`.
    pub kernel: Vec<Vec<Fe>>,
}

/// Solves `A X = B` with deterministic pivoting.
pub fn ff_solve(a: &FFMatrix, b: &FFMatrix) -> Result<Solution> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch(format!("A has {} rows, B has {}", a.rows, b.rows)));
    }
    let f = a.field.clone();
    let aug = FFMatrix::hstack(&[a, b]);
    let (r, pivots) = aug.rref();
    let consistent = pivots.iter().all(|&p| p < a.cols);
    let particular = consistent.then(|| {
        let mut x = FFMatrix::zeros(&f, a.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(i, a.cols + j));
            }
        }
        x
    });
    Ok(Solution { particular, kernel: a.kernel() })
}

/// Incrementally built row echelon basis with optional tracking of how each
/// stored row combines the inserted vectors.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    field: Arc<GaloisField>,
    width: usize,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
    track: Option<Vec<Vec<Fe>>>,
    inserted: usize,
}

impl RowEchelon {
    pub fn new(field: &Arc<GaloisField>, width: usize) -> Self {
        RowEchelon { field: field.clone(), width, rows: Vec::new(), pivots: Vec::new(), track: None, inserted: 0 }
    }

    pub fn tracking(field: &Arc<GaloisField>, width: usize) -> Self {
        RowEchelon { track: Some(Vec::new()), ..Self::new(field, width) }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Fe>] {
        &self.rows
    }

    /// Reduces `v` against the stored rows; returns the coefficients used
    /// (`v_original = reduced + sum coeff_i row_i`).
    pub fn reduce(&self, v: &mut [Fe]) -> Vec<Fe> {
        let f = &*self.field;
        let mut coeffs = vec![0; self.rows.len()];
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = v[p];
            if c != 0 {
                coeffs[i] = c;
                axpy(f, v, f.neg(c), row);
            }
        }
        coeffs
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns `None` if it was independent, otherwise the
    /// dependency expressing `v` through previously inserted vectors
    /// (only when tracking, else an empty vector).
    pub fn insert(&mut self, mut v: Vec<Fe>) -> Option<Vec<Fe>> {
        let f = self.field.clone();
        let k = self.inserted;
        self.inserted += 1;
        let coeffs = self.reduce(&mut v);
        let combo = self.track.as_ref().map(|track| {
            // v_original - sum coeffs_i row_i = v_reduced, rows are combos of inserted vectors
            let mut c = vec![0; k + 1];
            c[k] = 1;
            for (i, &ci) in coeffs.iter().enumerate() {
                if ci != 0 {
                    axpy(&f, &mut c[..track[i].len()], f.neg(ci), &track[i]);
                }
            }
            c
        });
        match v.iter().position(|&x| x != 0) {
            None => {
                // v_original = sum coeffs_i row_i, expressed in inserted vectors
                Some(combo.map_or_else(Vec::new, |mut c| {
                    // c is (e_k - sum coeffs_i track_i); dependency is -c[..k]
                    c.pop();
                    c.iter_mut().for_each(|x| *x = f.neg(*x));
                    c
                }))
            }
            Some(p) => {
                let inv = f.inv(v[p]);
                let scale = f.mul_row(inv);
                v.iter_mut().for_each(|x| *x = scale[*x as usize]);
                if let (Some(track), Some(mut c)) = (self.track.as_mut(), combo) {
                    c.iter_mut().for_each(|x| *x = scale[*x as usize]);
                    track.push(c);
                }
                self.rows.push(v);
                self.pivots.push(p);
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn gf(q: u64) -> Arc<GaloisField> {
        GaloisField::new(&FieldSpec::parse(&format!("GF({q})")).unwrap())
    }

    #[test]
    fn identity_solve_and_zero_kernel() {
        let f = gf(3);
        let a = FFMatrix::identity(&f, 3);
        let b = FFMatrix::from_rows(&f, &[vec![1], vec![2], vec![0]]);
        let s = ff_solve(&a, &b).unwrap();
        assert_eq!(s.particular.unwrap(), b);
        assert!(s.kernel.is_empty());

        let f2 = gf(2);
        let z = FFMatrix::zeros(&f2, 2, 2);
        let s = ff_solve(&z, &FFMatrix::zeros(&f2, 2, 1)).unwrap();
        assert_eq!(s.kernel.len(), 2);
        assert!(s.particular.is_some());
    }

    #[test]
    fn inconsistent_system() {
        let f = gf(2);
        let a = FFMatrix::from_rows(&f, &[vec![1, 1], vec![1, 1]]);
        let b = FFMatrix::from_rows(&f, &[vec![0], vec![1]]);
        assert!(ff_solve(&a, &b).unwrap().particular.is_none());
        assert!(matches!(ff_solve(&a, &FFMatrix::zeros(&f, 3, 1)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inverse_and_nilpotent() {
        let f = gf(4);
        let a = FFMatrix::from_rows(&f, &[vec![1, 2], vec![3, 1]]);
        if let Some(inv) = a.inverse() {
            assert!(a.mul(&inv).is_identity());
        }
        let n = FFMatrix::from_rows(&f, &[vec![0, 1, 3], vec![0, 0, 2], vec![0, 0, 0]]);
        assert!(n.is_nilpotent());
        assert!(n.inverse().is_none());
        assert!(!FFMatrix::identity(&f, 3).is_nilpotent());
    }

    #[test]
    fn tracked_dependency() {
        let f = gf(3);
        let mut e = RowEchelon::tracking(&f, 3);
        assert!(e.insert(vec![1, 2, 0]).is_none());
        assert!(e.insert(vec![0, 1, 1]).is_none());
        // 2*(1,2,0) + 1*(0,1,1) = (2, 5, 1) = (2, 2, 1)
        let dep = e.insert(vec![2, 2, 1]).unwrap();
        assert_eq!(dep, vec![2, 1]);
    }
}
