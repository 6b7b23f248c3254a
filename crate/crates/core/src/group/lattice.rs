use std::collections::{HashMap, HashSet};

use super::permgroup::{PermGroup, Subgroup};

/// Every subgroup of a group together with the partition into conjugacy classes.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    all: Vec<Subgroup>,
    classes: Vec<ConjugacyClass>,
}

#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    /// Member with the lexicographically least canonical key.
    pub representative: Subgroup,
    /// Indices into [`SubgroupLattice::all`].
    pub members: Vec<usize>,
}

impl SubgroupLattice {
    /// Cyclic-extension enumeration: start from the cyclic subgroups and keep
    /// joining one more element until nothing new appears.
    pub(crate) fn build(g: &PermGroup) -> Self {
        let n = g.order();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut all: Vec<Subgroup> = Vec::new();
        let mut cyclic_gens: Vec<usize> = Vec::new();
        for a in 0..n {
            let c = g.generate(&[a]);
            if seen.insert(c.mask().to_vec()) {
                cyclic_gens.push(a);
                all.push(c);
            }
        }
        let mut frontier: Vec<usize> = (0..all.len()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &si in &frontier {
                let s = all[si].clone();
                let base = s.generators(g);
                for &a in &cyclic_gens {
                    if s.contains(a) {
                        continue;
                    }
                    let mut gens = base.clone();
                    gens.push(a);
                    let t = g.generate(&gens);
                    if seen.insert(t.mask().to_vec()) {
                        next.push(all.len());
                        all.push(t);
                    }
                }
            }
            frontier = next;
        }
        all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.canonical_key().cmp(b.canonical_key())));

        let position: HashMap<Vec<u64>, usize> =
            all.iter().enumerate().map(|(i, s)| (s.mask().to_vec(), i)).collect();
        let mut class_of = vec![usize::MAX; all.len()];
        let mut classes = Vec::new();
        for i in 0..all.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = Vec::new();
            for x in 0..n {
                let c = g.conjugate(&all[i], x);
                let j = position[c.mask()];
                if class_of[j] == usize::MAX {
                    class_of[j] = classes.len();
                    members.push(j);
                }
            }
            members.sort_unstable();
            // `all` is sorted by (order, key), so the first member has the least key.
            let representative = all[members[0]].clone();
            classes.push(ConjugacyClass { representative, members });
        }
        SubgroupLattice { all, classes }
    }

    /// Every subgroup, ordered by (order, canonical key).
    pub fn all(&self) -> &[Subgroup] {
        &self.all
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    /// Conjugacy-class representatives, ordered by (order, canonical key).
    pub fn representatives(&self) -> Vec<Subgroup> {
        self.classes.iter().map(|c| c.representative.clone()).collect()
    }

    /// Index of the class containing `s`.
    pub fn class_index(&self, s: &Subgroup) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.members.iter().any(|&m| self.all[m].mask() == s.mask()))
    }
}
