use std::fmt;
use std::sync::Arc;

use crate::field::{digits, FieldSpec};

/// Field element, encoded as `sum c_i p^i` for the coefficient vector
/// `(c_0, .., c_{d-1})` of its polynomial representative.
pub type Fe = u8;

/// Table-driven arithmetic in `GF(p^d)`, `p^d <= 256`.
pub struct GaloisField {
    spec: FieldSpec,
    q: usize,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {:?}", self.spec, self.spec.modulus)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    pub fn new(spec: &FieldSpec) -> Arc<Self> {
        let p = spec.p;
        let d = spec.d as usize;
        let q = spec.order() as usize;
        let polys: Vec<Vec<u64>> = (0..q as u64).map(|c| digits(c, p, d)).collect();
        let encode = |v: &[u64]| -> Fe {
            let mut c = 0u64;
            for &x in v.iter().rev() {
                c = c * p + x;
            }
            c as Fe
        };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u64> = polys[a].iter().zip(&polys[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&s);
                let mut prod = vec![0u64; 2 * d - 1];
                for (i, x) in polys[a].iter().enumerate() {
                    for (j, y) in polys[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce by the monic modulus
                for top in (d..prod.len()).rev() {
                    let c = prod[top];
                    if c != 0 {
                        for (k, &m) in spec.modulus.iter().enumerate().take(d) {
                            let idx = top - d + k;
                            prod[idx] = (prod[idx] + p - c * m % p) % p;
                        }
                    }
                    prod[top] = 0;
                }
                mul[a * q + b] = encode(&prod[..d]);
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Fe).collect();
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as Fe })
            .collect();
        Arc::new(GaloisField { spec: spec.clone(), q, add, mul, neg, inv })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.spec.p
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is a logic error.
    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        debug_assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    /// Row of the multiplication table for a fixed left factor.
    #[inline]
    pub fn mul_row(&self, a: Fe) -> &[Fe] {
        let s = a as usize * self.q;
        &self.mul[s..s + self.q]
    }

    #[inline]
    pub fn add_row(&self, a: Fe) -> &[Fe] {
        let s = a as usize * self.q;
        &self.add[s..s + self.q]
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut acc = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        let p = self.spec.p as i64;
        n.rem_euclid(p) as Fe
    }

    /// `a^p`
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.spec.p)
    }

    /// The unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: Fe) -> Fe {
        self.pow(a, (self.q as u64) / self.spec.p)
    }
}
