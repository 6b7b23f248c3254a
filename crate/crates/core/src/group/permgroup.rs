use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use super::lattice::SubgroupLattice;
use super::perm::Perm;
use crate::error::{Error, Result};

/// Default cap on group orders handled by the engines.
pub const DEFAULT_ORDER_CAP: usize = 200;

/// A finite group given by permutation generators, with its full element list
/// and Cayley table cached.
///
/// Elements are sorted lexicographically by image list, so index 0 is always
/// the identity. All element arguments in this API are indices into that list.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    gen_index: Vec<usize>,
    elements: Vec<Perm>,
    lookup: HashMap<Perm, usize>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    name: Option<String>,
    order_cap: usize,
    lattice: OnceLock<SubgroupLattice>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Closes the generators into a group, failing once the closure exceeds `order_cap`.
    pub fn from_generators(degree: usize, generators: Vec<Perm>, order_cap: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::Parse {
                    token: g.to_string(),
                    reason: format!("generator degree {} differs from {}", g.degree(), degree),
                });
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        let mut elements = vec![id.clone()];
        seen.insert(id, ());
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in &generators {
                let y = g.compose(&x);
                if !seen.contains_key(&y) {
                    if elements.len() >= order_cap {
                        return Err(Error::GroupTooLarge { order: elements.len() + 1, cap: order_cap });
                    }
                    seen.insert(y.clone(), ());
                    elements.push(y);
                }
            }
        }
        elements.sort();
        let lookup: HashMap<Perm, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = lookup[&elements[a].compose(&elements[b])] as u32;
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        let gen_index = generators.iter().map(|g| lookup[g]).collect();
        Ok(PermGroup {
            degree,
            generators,
            gen_index,
            elements,
            lookup,
            mul,
            inv,
            name: None,
            order_cap,
            lattice: OnceLock::new(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("G{}", self.order()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn order_cap(&self) -> usize {
        self.order_cap
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Element indices of the generators.
    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_index
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    pub const IDENTITY: usize = 0;

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g x g^-1`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut base = a;
        let mut acc = Self::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != Self::IDENTITY {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gen_index;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        (0..n).any(|a| self.element_order(a) == n)
    }

    /// The whole group as a subgroup of itself.
    pub fn full(&self) -> Subgroup {
        Subgroup::from_sorted(self.order(), (0..self.order()).collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted(self.order(), vec![Self::IDENTITY])
    }

    /// Subgroup generated by the given elements.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let n = self.order();
        let mut mask = vec![false; n];
        let mut elems = vec![Self::IDENTITY];
        mask[Self::IDENTITY] = true;
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != Self::IDENTITY).collect();
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head];
            head += 1;
            for &g in &gens {
                let y = self.mul(g, x);
                if !mask[y] {
                    mask[y] = true;
                    elems.push(y);
                }
            }
        }
        elems.sort_unstable();
        Subgroup::from_sorted(n, elems)
    }

    /// Join of a subgroup with extra elements.
    pub fn join(&self, s: &Subgroup, extra: &[usize]) -> Subgroup {
        let mut gens = s.generators(self);
        gens.extend_from_slice(extra);
        self.generate(&gens)
    }

    pub fn conjugate(&self, s: &Subgroup, g: usize) -> Subgroup {
        let mut elems: Vec<usize> = s.elements().iter().map(|&x| self.conj(g, x)).collect();
        elems.sort_unstable();
        Subgroup::from_sorted(self.order(), elems)
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        self.gen_index.iter().all(|&g| s.elements().iter().all(|&x| s.contains(self.conj(g, x))))
    }

    /// Smallest normal subgroup containing the given elements.
    pub fn normal_closure(&self, elems: &[usize]) -> Subgroup {
        let mut current = self.generate(elems);
        loop {
            let mut extra = Vec::new();
            for &g in &self.gen_index {
                for &x in current.elements() {
                    let y = self.conj(g, x);
                    if !current.contains(y) {
                        extra.push(y);
                    }
                }
            }
            if extra.is_empty() {
                return current;
            }
            current = self.join(&current, &extra);
        }
    }

    /// Builds the subgroup as a standalone permutation group on the same points.
    ///
    /// Element `i` of the result corresponds to `s.elements()[i]`.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> PermGroup {
        let gens: Vec<Perm> = s.generators(self).into_iter().map(|g| self.elements[g].clone()).collect();
        let sub = PermGroup::from_generators(self.degree, gens, self.order_cap.max(s.order()))
            .expect("subgroup closure is bounded by the parent");
        debug_assert_eq!(sub.order(), s.order());
        sub.with_name(format!("{}<{}>", self.name(), s.order()))
    }

    /// All subgroups and their conjugacy classes, computed once.
    pub fn lattice(&self) -> Result<&SubgroupLattice> {
        if self.order() > self.order_cap {
            return Err(Error::GroupTooLarge { order: self.order(), cap: self.order_cap });
        }
        Ok(self.lattice.get_or_init(|| SubgroupLattice::build(self)))
    }
}

/// A subgroup stored as the sorted list of parent element indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
    mask: Vec<u64>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order(), self.elements)
    }
}

impl Subgroup {
    pub(crate) fn from_sorted(parent_order: usize, elements: Vec<usize>) -> Self {
        let mut mask = vec![0u64; parent_order.div_ceil(64)];
        for &e in &elements {
            mask[e / 64] |= 1 << (e % 64);
        }
        Subgroup { elements, mask }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Sorted element encoding used for deduplication and representative choice.
    pub fn canonical_key(&self) -> &[usize] {
        &self.elements
    }

    pub fn mask(&self) -> &[u64] {
        &self.mask
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.mask.iter().zip(&other.mask).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let elements = self.elements.iter().copied().filter(|&x| other.contains(x)).collect();
        let mask = self.mask.iter().zip(&other.mask).map(|(a, b)| a & b).collect();
        Subgroup { elements, mask }
    }

    /// A small generating set, picked greedily in element order.
    pub fn generators(&self, g: &PermGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = g.trivial();
        for &x in &self.elements {
            if !span.contains(x) {
                gens.push(x);
                span = g.generate(&gens);
                if span.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    /// Checks closure under products and inverses in `g`.
    pub fn is_closed(&self, g: &PermGroup) -> bool {
        self.contains(PermGroup::IDENTITY)
            && self.elements.iter().all(|&a| {
                self.contains(g.inv(a)) && self.elements.iter().all(|&b| self.contains(g.mul(a, b)))
            })
    }
}
