//! Galois index sets and the group classes built from them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::group::{o_lower, o_upper, quotient_map, sylow_subgroup, PermGroup, Subgroup};
use crate::numtheory::{as_prime_power, gcd, is_prime, pow_mod, prime_divisors};

/// `I_m(k)`: the image of `Gal(k(ω_m)/k)` in `(ℤ/m)^*`, i.e. the cyclic
/// subgroup generated by `|k| mod m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisIndexSet {
    pub m: u64,
    /// Sorted; `{0}` for `m = 1`.
    pub members: Vec<u64>,
}

impl GaloisIndexSet {
    pub fn contains(&self, a: u64) -> bool {
        self.members.binary_search(&(a % self.m)).is_ok()
    }
}

pub fn galois_index_set(k: &FieldSpec, m: u64) -> Result<GaloisIndexSet> {
    let p = k.characteristic();
    if m == 0 || m.is_multiple_of(p) {
        return Err(Error::CharacteristicDividesM { p, m });
    }
    let q = k.order() % m;
    let mut members = vec![1 % m];
    let mut x = q;
    while x != 1 % m {
        members.push(x);
        x = x * q % m;
    }
    members.sort_unstable();
    Ok(GaloisIndexSet { m, members })
}

/// Whether `G/N` is cyclic, i.e. `G = <x, N>` for some `x`.
pub fn quotient_is_cyclic(g: &PermGroup, n: &Subgroup) -> bool {
    n.order() == g.order() || (0..g.order()).any(|x| g.join(n, &[x]).order() == g.order())
}

/// `O^q(G)` is cyclic.
pub fn is_q_hyperelementary(g: &PermGroup, q: u64) -> bool {
    g.subgroup_as_group(&o_upper(g, q)).is_cyclic()
}

/// `G/O_r(G)` is cyclic.
pub fn is_r_hypoelementary(g: &PermGroup, r: u64) -> bool {
    quotient_is_cyclic(g, &o_lower(g, r))
}

/// Data exhibiting `G = C ⋊ Q` with `C = O^q(G)` cyclic of order `m` and
/// every generator of `Q` acting on a generator of `C` by an exponent in `I_m(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperelementaryData {
    pub q: u64,
    pub c_order: u64,
    pub q_order: u64,
    /// `y x y⁻¹ = x^a` for the generators `y` of the chosen Sylow `q`-subgroup.
    pub exponents: Vec<u64>,
    pub index_set: Vec<u64>,
    pub k_elementary: bool,
}

/// Conjugation exponent `a` with `y x y⁻¹ = x^a`, by exhaustive search.
fn conjugation_exponent(g: &PermGroup, x: usize, y: usize) -> u64 {
    let target = g.conj(y, x);
    let order = g.element_order(x) as u64;
    (0..order).find(|&a| g.pow(x, a) == target).expect("C is normal")
}

/// The `q`-hyperelementary structure of `G` and whether its action lies in
/// `I_m(k)`; `None` when `O^q(G)` is not cyclic.
pub fn hyperelementary_data(g: &PermGroup, q: u64, k: &FieldSpec) -> Result<Option<HyperelementaryData>> {
    let c = o_upper(g, q);
    let cg = g.subgroup_as_group(&c);
    if !cg.is_cyclic() {
        return Ok(None);
    }
    let m = c.order() as u64;
    let p = k.characteristic();
    let sylow = sylow_subgroup(g, q);
    let data = |exponents: Vec<u64>, index_set: Vec<u64>, k_elementary| HyperelementaryData {
        q,
        c_order: m,
        q_order: sylow.order() as u64,
        exponents,
        index_set,
        k_elementary,
    };
    if m == 1 {
        return Ok(Some(data(Vec::new(), vec![0], true)));
    }
    if m.is_multiple_of(p) {
        return Err(Error::NotKElementary(format!(
            "{}: the cyclic part O^{q} has order {m}, divisible by the characteristic {p}",
            g.name()
        )));
    }
    let x = *c.elements().iter().find(|&&x| g.element_order(x) as u64 == m).expect("C is cyclic");
    let set = galois_index_set(k, m)?;
    let exponents: Vec<u64> = sylow.generators(g).iter().map(|&y| conjugation_exponent(g, x, y)).collect();
    let ok = exponents.iter().all(|&a| set.contains(a));
    Ok(Some(data(exponents, set.members, ok)))
}

/// `G` is `k`-elementary; returns the first witnessing prime's data.
///
/// Primes whose cyclic part has order divisible by `p` cannot witness; if
/// they are the only candidates the result is `NotKElementary`.
pub fn k_elementary_witness(g: &PermGroup, k: &FieldSpec) -> Result<Option<HyperelementaryData>> {
    let mut primes = prime_divisors(g.order() as u64);
    if primes.is_empty() {
        primes.push(k.characteristic());
    }
    let mut flagged = None;
    for q in primes {
        match hyperelementary_data(g, q, k) {
            Ok(Some(d)) if d.k_elementary => return Ok(Some(d)),
            Ok(_) => {}
            Err(e @ Error::NotKElementary(_)) => flagged = Some(e),
            Err(e) => return Err(e),
        }
    }
    match flagged {
        Some(e) => Err(e),
        None => Ok(None),
    }
}

pub fn is_k_elementary(g: &PermGroup, k: &FieldSpec) -> Result<bool> {
    Ok(k_elementary_witness(g, k)?.is_some())
}

/// `O^q(G)` is `p`-hypoelementary.
pub fn is_q_dress(g: &PermGroup, q: u64, p: u64) -> bool {
    let oq = g.subgroup_as_group(&o_upper(g, q));
    is_r_hypoelementary(&oq, p)
}

/// `G/O_p(G)`.
pub fn p_residual_quotient(g: &PermGroup, p: u64) -> PermGroup {
    quotient_map(g, &o_lower(g, p)).expect("O_p is normal").group
}

/// `k`-Dress: for some prime `q`, `G/O_p(G)` is `q`-hyperelementary with
/// action exponents in `I_m(k)`. Returns the witnessing data.
pub fn k_dress_witness(g: &PermGroup, k: &FieldSpec) -> Result<Option<HyperelementaryData>> {
    let p = k.characteristic();
    let h = p_residual_quotient(g, p);
    k_elementary_witness(&h, k)
}

pub fn is_k_dress(g: &PermGroup, k: &FieldSpec) -> Result<bool> {
    Ok(k_dress_witness(g, k)?.is_some())
}

/// `Dr_p^*`: `k`-Dress groups whose `p`-residual quotient has order divisible by `p`.
pub fn in_dr_p_star(g: &PermGroup, k: &FieldSpec) -> Result<bool> {
    let p = k.characteristic();
    Ok(is_k_dress(g, k)? && (p_residual_quotient(g, p).order() as u64).is_multiple_of(p))
}

/// Everything the classifiers know about a group over a given field.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DressVerdict {
    pub group: String,
    pub order: usize,
    pub field: String,
    pub characteristic: u64,
    pub is_q_dress: BTreeMap<u64, bool>,
    pub is_k_dress: bool,
    pub witness_q: Option<u64>,
    pub in_dr_p_star: bool,
    pub is_k_elementary: bool,
    /// `q`-hyperelementary structure of `G` itself, for each prime where it exists.
    pub hyperelementary: Vec<HyperelementaryData>,
    pub diagnostics: Vec<String>,
}

pub fn dress_verdict(g: &PermGroup, k: &FieldSpec) -> Result<DressVerdict> {
    let p = k.characteristic();
    let mut primes = prime_divisors(g.order() as u64);
    if !primes.contains(&p) {
        primes.push(p);
        primes.sort_unstable();
    }
    let mut diagnostics = Vec::new();
    let is_q_dress = primes.iter().map(|&q| (q, is_q_dress(g, q, p))).collect();
    let witness = k_dress_witness(g, k)?;
    let is_k_elementary = match k_elementary_witness(g, k) {
        Ok(w) => w.is_some(),
        Err(Error::NotKElementary(d)) => {
            diagnostics.push(d);
            false
        }
        Err(e) => return Err(e),
    };
    let mut hyperelementary = Vec::new();
    for &q in &primes {
        match hyperelementary_data(g, q, k) {
            Ok(Some(d)) => hyperelementary.push(d),
            Ok(None) => {}
            Err(Error::NotKElementary(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(DressVerdict {
        group: g.name(),
        order: g.order(),
        field: k.to_string(),
        characteristic: p,
        is_q_dress,
        is_k_dress: witness.is_some(),
        witness_q: witness.as_ref().map(|w| w.q),
        in_dr_p_star: witness.is_some() && (p_residual_quotient(g, p).order() as u64).is_multiple_of(p),
        is_k_elementary,
        hyperelementary,
        diagnostics,
    })
}

/// `(r, q, n, a)` with `G ≅ C_r ⋊_a C_{q^n}` and `a ∉ I_r(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalShape {
    pub r: u64,
    pub q: u64,
    pub n: u32,
    pub a: u64,
}

/// Reads `G` as `C_r ⋊_a C_{q^n}` with `C_r = O^q(G)` of prime order `r ≠ q`
/// and a cyclic Sylow `q`-subgroup; `a` is the action of a generator of it.
pub fn metacyclic_parameters(g: &PermGroup, q: u64) -> Option<MinimalShape> {
    let c = o_upper(g, q);
    let r = c.order() as u64;
    let sylow = sylow_subgroup(g, q);
    let (_, n) = as_prime_power(sylow.order() as u64)?;
    if !is_prime(r) || r == q || c.order() * sylow.order() != g.order() {
        return None;
    }
    let y = sylow.elements().iter().copied().find(|&y| g.element_order(y) == sylow.order())?;
    let x = *c.elements().iter().find(|&&x| x != 0).expect("r > 1");
    let a = conjugation_exponent(g, x, y);
    debug_assert!(gcd(a, r) == 1 && pow_mod(a, sylow.order() as u64, r) == 1);
    Some(MinimalShape { r, q, n, a })
}

/// [`metacyclic_parameters`] with the additional requirement `a ∉ I_r(k)`.
pub fn metacyclic_shape(g: &PermGroup, q: u64, k: &FieldSpec) -> Result<Option<MinimalShape>> {
    let Some(shape) = metacyclic_parameters(g, q) else { return Ok(None) };
    if shape.r == k.characteristic() || galois_index_set(k, shape.r)?.contains(shape.a) {
        return Ok(None);
    }
    Ok(Some(shape))
}

fn q_dress_not_k_dress(g: &PermGroup, q: u64, k: &FieldSpec) -> Result<bool> {
    Ok(is_q_dress(g, q, k.characteristic()) && !is_k_dress(g, k)?)
}

/// Certifies that `G` is a minimal group that is `q`-Dress but not `k`-Dress
/// (for some `q`) and reads off its metacyclic shape.
pub fn minimal_non_k_dress_shape(g: &PermGroup, k: &FieldSpec) -> Result<MinimalShape> {
    if is_k_dress(g, k)? {
        return Err(Error::NotMinimalCounterexample(format!("{} is k-Dress", g.name())));
    }
    let p = k.characteristic();
    let candidates: Vec<u64> = prime_divisors(g.order() as u64).into_iter().filter(|&q| is_q_dress(g, q, p)).collect();
    if candidates.is_empty() {
        return Err(Error::NotMinimalCounterexample(format!("{} is not q-Dress for any prime q", g.name())));
    }
    let lattice = g.lattice()?;
    let mut last_violation = String::new();
    'q: for q in candidates {
        for s in lattice.representatives().iter().filter(|s| s.order() < g.order()) {
            let sg = g.subgroup_as_group(s);
            if q_dress_not_k_dress(&sg, q, k)? {
                last_violation = format!("subgroup of order {} is {q}-Dress and not k-Dress", s.order());
                continue 'q;
            }
        }
        for n in crate::group::normal_subgroups(g)?.iter().filter(|n| n.order() > 1) {
            let qg = quotient_map(g, n)?.group;
            if q_dress_not_k_dress(&qg, q, k)? {
                last_violation = format!("quotient by a normal subgroup of order {} is {q}-Dress and not k-Dress", n.order());
                continue 'q;
            }
        }
        return metacyclic_shape(g, q, k)?.ok_or_else(|| {
            Error::NotMinimalCounterexample(format!("{} is minimal but not of the form C_r ⋊ C_(q^n)", g.name()))
        });
    }
    Err(Error::NotMinimalCounterexample(last_violation))
}
