//! Characteristic subgroups, quotients and coset actions.

use super::perm::Perm;
use super::permgroup::{PermGroup, Subgroup};
use crate::error::{Error, Result};
use crate::numtheory::{is_prime_power_of, is_prime};

/// Conjugacy-class representatives of subgroups, ordered by size.
pub fn enumerate_subgroups(g: &PermGroup) -> Result<Vec<Subgroup>> {
    Ok(g.lattice()?.representatives())
}

/// `O^q(G)`: normal closure of the elements of order prime to `q`.
pub fn o_upper(g: &PermGroup, q: u64) -> Subgroup {
    debug_assert!(is_prime(q));
    let qprime: Vec<usize> = (0..g.order())
        .filter(|&a| !(g.element_order(a) as u64).is_multiple_of(q))
        .collect();
    g.normal_closure(&qprime)
}

/// `O_r(G)`: intersection of the Sylow `r`-subgroups.
pub fn o_lower(g: &PermGroup, r: u64) -> Subgroup {
    debug_assert!(is_prime(r));
    let sylow = sylow_subgroup(g, r);
    let mut core = sylow.clone();
    for x in 0..g.order() {
        core = core.intersection(&g.conjugate(&sylow, x));
    }
    core
}

/// A Sylow `r`-subgroup, grown one element at a time inside its normalizer chain.
pub fn sylow_subgroup(g: &PermGroup, r: u64) -> Subgroup {
    let n = g.order() as u64;
    let mut target = 1u64;
    while n.is_multiple_of(target * r) {
        target *= r;
    }
    let mut p = g.trivial();
    while (p.order() as u64) < target {
        // Some r-element of N(P) \ P extends P (Sylow's theorem).
        let next = (0..g.order())
            .filter(|&a| !p.contains(a) && is_prime_power_of(g.element_order(a) as u64, r))
            .filter(|&a| p.elements().iter().all(|&x| p.contains(g.conj(a, x))))
            .map(|a| g.join(&p, &[a]))
            .find(|t| is_prime_power_of(t.order() as u64, r))
            .expect("a p-subgroup below Sylow size has a p-overgroup in its normalizer");
        p = next;
    }
    p
}

pub fn is_r_group(s: &Subgroup, r: u64) -> bool {
    is_prime_power_of(s.order() as u64, r)
}

/// Transitive action of a group on the left cosets `gH` of a subgroup.
#[derive(Debug, Clone)]
pub struct CosetAction {
    /// Minimal element of each coset, sorted.
    pub transversal: Vec<usize>,
    /// `coset_of[g]` is the coset containing `g`.
    pub coset_of: Vec<usize>,
    /// Stabilizer of coset 0.
    pub point_stabilizer: Subgroup,
}

impl CosetAction {
    pub fn new(g: &PermGroup, h: &Subgroup) -> Self {
        let n = g.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut transversal = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = transversal.len();
            transversal.push(x);
            for &y in h.elements() {
                coset_of[g.mul(x, y)] = c;
            }
        }
        CosetAction { transversal, coset_of, point_stabilizer: h.clone() }
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    /// Image of coset `i` under the element `x`.
    #[inline]
    pub fn act(&self, g: &PermGroup, x: usize, i: usize) -> usize {
        self.coset_of[g.mul(x, self.transversal[i])]
    }

    /// Writes `x t_i = t_j h` and returns `(j, h)`.
    pub fn decompose(&self, g: &PermGroup, x: usize, i: usize) -> (usize, usize) {
        let xt = g.mul(x, self.transversal[i]);
        let j = self.coset_of[xt];
        (j, g.mul(g.inv(self.transversal[j]), xt))
    }

    /// The permutation of cosets induced by `x`.
    pub fn perm_of(&self, g: &PermGroup, x: usize) -> Perm {
        let images = (0..self.index()).map(|i| self.act(g, x, i) as u32).collect();
        Perm::from_images(images).expect("coset action is a bijection")
    }
}

/// A quotient group together with the projection from the parent.
#[derive(Debug)]
pub struct QuotientMap {
    pub group: PermGroup,
    /// `projection[g]` is the element index of `gN` in `group`.
    pub projection: Vec<usize>,
}

/// `G/N` realized faithfully on the cosets of `N`.
pub fn quotient(g: &PermGroup, n: &Subgroup) -> Result<PermGroup> {
    Ok(quotient_map(g, n)?.group)
}

pub fn quotient_map(g: &PermGroup, n: &Subgroup) -> Result<QuotientMap> {
    if !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let action = CosetAction::new(g, n);
    let gens = g.generator_indices().iter().map(|&x| action.perm_of(g, x)).collect();
    let q = PermGroup::from_generators(action.index(), gens, g.order_cap().max(action.index()))?
        .with_name(format!("{}/{}", g.name(), n.order()));
    let projection = (0..g.order())
        .map(|x| q.index_of(&action.perm_of(g, x)).expect("image lies in the quotient"))
        .collect();
    Ok(QuotientMap { group: q, projection })
}

/// Normal subgroups, ordered by (order, key).
pub fn normal_subgroups(g: &PermGroup) -> Result<Vec<Subgroup>> {
    Ok(g.lattice()?.all().iter().filter(|s| g.is_normal(s)).cloned().collect())
}
