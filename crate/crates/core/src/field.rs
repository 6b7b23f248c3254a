//! Finite field descriptions `GF(p^d)` with pinned moduli.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::is_prime;

/// Largest field order supported by the table-driven arithmetic.
pub const MAX_FIELD_ORDER: u64 = 256;

/// `GF(p^d) = GF(p)[x] / (modulus)`.
///
/// `modulus` lists coefficients from the constant term up, ending in the
/// leading `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub d: u32,
    pub modulus: Vec<u64>,
}

impl FieldSpec {
    /// `GF(p^d)` with the default modulus: the monic irreducible of degree `d`
    /// whose lower coefficients, read from the top, are lexicographically least.
    pub fn new(p: u64, d: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 {
            return Err(Error::Parse { token: format!("GF({p}^0)"), reason: "degree must be at least 1".into() });
        }
        let q = p.checked_pow(d).filter(|&q| q <= MAX_FIELD_ORDER);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge { q: p.saturating_pow(d), max: MAX_FIELD_ORDER });
        };
        let low_count = q; // p^d choices for the lower coefficients
        for code in 0..low_count {
            let mut modulus = digits(code, p, d as usize);
            modulus.push(1);
            if is_irreducible_mod_p(&modulus, p) {
                return Ok(FieldSpec { p, d, modulus });
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    /// Uses an explicit modulus, which must be monic and irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::Parse {
                token: format!("{modulus:?}"),
                reason: "modulus must be monic of degree >= 1 with coefficients in [0, p)".into(),
            });
        }
        let d = (modulus.len() - 1) as u32;
        match p.checked_pow(d) {
            Some(q) if q <= MAX_FIELD_ORDER => {}
            _ => return Err(Error::FieldTooLarge { q: p.saturating_pow(d), max: MAX_FIELD_ORDER }),
        }
        if !is_irreducible_mod_p(&modulus, p) {
            return Err(Error::ReducibleModulus { p });
        }
        Ok(FieldSpec { p, d, modulus })
    }

    /// Parses `GF(q)`, `GF(p^d)` or a bare `q`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t.strip_prefix("GF(").and_then(|s| s.strip_suffix(')')).unwrap_or(t);
        let bad = |reason: &str| Error::Parse { token: text.to_string(), reason: reason.to_string() };
        if let Some((p, d)) = inner.split_once('^') {
            let p: u64 = p.trim().parse().map_err(|_| bad("bad characteristic"))?;
            let d: u32 = d.trim().parse().map_err(|_| bad("bad degree"))?;
            return Self::new(p, d);
        }
        let q: u64 = inner.parse().map_err(|_| bad("expected GF(q) or GF(p^d)"))?;
        let (p, d) = crate::numtheory::as_prime_power(q).ok_or_else(|| bad("field order must be a prime power"))?;
        Self::new(p, d)
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.d)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

/// Base-`p` digits of `code`, least significant first, padded to `len`.
pub(crate) fn digits(mut code: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % p);
        code /= p;
    }
    out
}

/// Remainder of `a` modulo the monic `m` over `GF(p)`.
fn rem_mod_p(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible_mod_p(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for k in 1..=deg / 2 {
        for code in 0..p.pow(k as u32) {
            let mut g = digits(code, p, k);
            g.push(1);
            if rem_mod_p(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
