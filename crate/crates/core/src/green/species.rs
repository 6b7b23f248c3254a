//! Species of trivial-source modules: for a `p`-subgroup `P` and a
//! `p'`-element `s` normalizing it, the eigenvalue multiset of `s` on the
//! Brauer quotient `M[P] = M^P / Σ_{Q<P} Tr_Q^P(M^Q)`.
//!
//! Brauer quotients of trivial-source modules commute with tensor products
//! and the species separate isomorphism classes, so products of large basis
//! elements can be classified without building the tensor product.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::basis::{ClassVector, TSBasis};
use crate::error::{Error, Result};
use crate::group::{is_r_group, CosetAction, PermGroup, Subgroup};
use crate::linalg::intmat::{hnf, Hnf};
use crate::linalg::poly::{degree, eval_matrix, minimal_polynomial, monic, split_squarefree, Poly};
use crate::linalg::{FFMatrix, GaloisField, IntMatrix, RowEchelon};
use crate::modrep::{left_inverse, Representation};
use crate::numtheory::{gcd, prime_divisors};

/// Roots of unity of a fixed order `e`, labelled through a chosen primitive root.
#[derive(Debug, Clone)]
struct RootLabels {
    e: usize,
    /// `coset_of[a]` is the Frobenius orbit containing `α^a`.
    coset_of: Vec<usize>,
    /// Orbit sizes and the minimal polynomial of each orbit over the base field.
    orbits: Vec<(usize, Poly)>,
}

/// Irreducible factors of a square-free polynomial, sorted.
fn factor_squarefree(f: &GaloisField, a: &Poly, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    match split_squarefree(f, a, rng) {
        None => vec![monic(f, a)],
        Some(g) => {
            let h = crate::linalg::poly::divrem(f, a, &g).0;
            let mut out = factor_squarefree(f, &g, rng);
            out.extend(factor_squarefree(f, &h, rng));
            out.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
            out
        }
    }
}

fn companion(field: &std::sync::Arc<GaloisField>, f: &Poly) -> FFMatrix {
    let d = degree(f).unwrap();
    let mut c = FFMatrix::zeros(field, d, d);
    for i in 1..d {
        c.set(i, i - 1, 1);
    }
    for i in 0..d {
        c.set(i, d - 1, field.neg(f[i]));
    }
    c
}

impl RootLabels {
    fn new(field: &std::sync::Arc<GaloisField>, e: usize) -> Self {
        let f = &**field;
        let q = f.order();
        let mut coset_of = vec![usize::MAX; e];
        let mut reps = Vec::new();
        for a in 0..e {
            if coset_of[a] != usize::MAX {
                continue;
            }
            let mut x = a;
            loop {
                coset_of[x] = reps.len();
                x = x * q % e;
                if x == a {
                    break;
                }
            }
            reps.push(a);
        }
        // a primitive e-th root: x modulo an irreducible factor of x^e - 1 in which x has order e
        let mut xe1 = vec![0; e + 1];
        xe1[0] = f.neg(1);
        xe1[e] = 1;
        let mut rng = ChaCha8Rng::seed_from_u64(e as u64);
        let factors = factor_squarefree(f, &xe1, &mut rng);
        let primitive = factors
            .into_iter()
            .find(|g| {
                let c = companion(field, g);
                prime_divisors(e as u64).iter().all(|&r| !c.pow(e as u64 / r).is_identity())
                    && c.pow(e as u64).is_identity()
            })
            .expect("x^e - 1 has a factor with primitive roots when p does not divide e");
        let alpha = companion(field, &primitive);
        let orbits = reps
            .iter()
            .map(|&a| {
                let size = coset_of.iter().filter(|&&c| c == coset_of[a]).count();
                (size, minimal_polynomial(&alpha.pow(a as u64)))
            })
            .collect();
        RootLabels { e, coset_of, orbits }
    }

    /// Multiplicity of each orbit of eigenvalues of the semisimple `s`.
    fn eigen_orbits(&self, s: &FFMatrix) -> Vec<i64> {
        self.orbits
            .iter()
            .map(|(size, mp)| {
                let k = eval_matrix(mp, s).kernel().len();
                debug_assert_eq!(k % size, 0);
                (k / size) as i64
            })
            .collect()
    }

    /// Orbit multiplicities of the eigenvalues of `s ⊗ t`.
    fn convolve(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.orbits.len()];
        let mut seen = vec![false; self.orbits.len()];
        for c in 0..self.e {
            let orbit = self.coset_of[c];
            if seen[orbit] {
                continue;
            }
            seen[orbit] = true;
            let mut total = 0;
            for x in 0..self.e {
                let y = (c + self.e - x) % self.e;
                total += a[self.coset_of[x]] * b[self.coset_of[y]];
            }
            out[orbit] = total;
        }
        out
    }
}

#[derive(Debug, Clone)]
struct SpeciesRow {
    subgroup: Subgroup,
    /// Maximal subgroups of `subgroup`.
    maximal: Vec<Subgroup>,
    element: usize,
    labels: usize,
}

/// Species of all basis elements, with the lattice they span.
#[derive(Debug)]
pub struct SpeciesTable {
    rows: Vec<SpeciesRow>,
    labels: Vec<RootLabels>,
    /// `values[i][r]`: orbit multiplicities of basis element `i` at row `r`.
    values: Vec<Vec<Vec<i64>>>,
    matrix: IntMatrix,
    hnf: Hnf,
}

fn fixed_space(m: &Representation, g: &PermGroup, s: &Subgroup) -> FFMatrix {
    let f = m.field();
    let gens = s.generators(g);
    if gens.is_empty() {
        return FFMatrix::identity(f, m.dim());
    }
    let id = FFMatrix::identity(f, m.dim());
    let parts: Vec<FFMatrix> = gens.iter().map(|&x| m.image(x).sub(&id)).collect();
    let refs: Vec<&FFMatrix> = parts.iter().collect();
    let k = FFMatrix::vstack(&refs).kernel();
    FFMatrix::from_columns(f, m.dim(), &k)
}

/// Matrix of `s` on the Brauer quotient of `m` at `p_sub`.
fn brauer_quotient_action(m: &Representation, row: &SpeciesRow) -> FFMatrix {
    let g = m.group();
    let f = m.field();
    let v = fixed_space(m, g, &row.subgroup);
    let mut traces = RowEchelon::new(f, m.dim());
    let mut w_cols = Vec::new();
    for q in &row.maximal {
        let fixed_q = fixed_space(m, g, q);
        // transversal of P/Q inside G
        let p_group = g.subgroup_as_group(&row.subgroup);
        let q_in_p: Vec<usize> =
            q.elements().iter().map(|&x| p_group.index_of(g.element(x)).unwrap()).collect();
        let action = CosetAction::new(&p_group, &p_group.generate(&q_in_p));
        let reps: Vec<usize> = action.transversal.iter().map(|&t| g.index_of(p_group.element(t)).unwrap()).collect();
        for j in 0..fixed_q.cols() {
            let col = fixed_q.column(j);
            let mut acc = vec![0; m.dim()];
            for &t in &reps {
                crate::linalg::axpy(f, &mut acc, 1, &m.image(t).mul_vec(&col));
            }
            if traces.insert(acc.clone()).is_none() {
                w_cols.push(acc);
            }
        }
    }
    // complete W to a basis of V
    let mut comp = Vec::new();
    for j in 0..v.cols() {
        let c = v.column(j);
        if traces.insert(c.clone()).is_none() {
            comp.push(c);
        }
    }
    if comp.is_empty() {
        return FFMatrix::zeros(f, 0, 0);
    }
    let k = w_cols.len();
    let all: Vec<Vec<u8>> = w_cols.into_iter().chain(comp.iter().cloned()).collect();
    let basis = FFMatrix::from_columns(f, m.dim(), &all);
    let left = left_inverse(&basis);
    let image = FFMatrix::from_columns(f, m.dim(), &comp.iter().map(|c| m.image(row.element).mul_vec(c)).collect::<Vec<_>>());
    let coords = left.mul(&image);
    coords.block(k, all.len(), 0, comp.len())
}

impl SpeciesTable {
    fn build(basis: &TSBasis) -> Result<Self> {
        let g = basis.group();
        let field = basis.field();
        let p = field.characteristic();
        let lattice = g.lattice()?;
        let mut rows = Vec::new();
        let mut labels: Vec<RootLabels> = Vec::new();
        let mut label_of: BTreeMap<usize, usize> = BTreeMap::new();
        for psub in lattice.representatives().into_iter().filter(|s| is_r_group(s, p)) {
            let normalizer: Vec<usize> = (0..g.order()).filter(|&x| g.conjugate(&psub, x) == psub).collect();
            let maximal: Vec<Subgroup> = lattice
                .all()
                .iter()
                .filter(|s| s.order() * p as usize == psub.order() && s.is_subgroup_of(&psub))
                .cloned()
                .collect();
            let mut seen = HashSet::new();
            for &s in &normalizer {
                let e = g.element_order(s);
                if gcd(e as u64, p) != 1 || seen.contains(&s) {
                    continue;
                }
                for &n in &normalizer {
                    seen.insert(g.conj(n, s));
                }
                let l = *label_of.entry(e).or_insert_with(|| {
                    labels.push(RootLabels::new(field, e));
                    labels.len() - 1
                });
                rows.push(SpeciesRow { subgroup: psub.clone(), maximal: maximal.clone(), element: s, labels: l });
            }
        }
        let mut table = SpeciesTable { rows, labels, values: Vec::new(), matrix: IntMatrix::zeros(0, 0), hnf: hnf(&IntMatrix::zeros(0, 0)) };
        let values: Vec<Vec<Vec<i64>>> = basis.elements().iter().map(|e| table.species_of(e.module.module())).collect();
        let cols: Vec<Vec<i64>> = values.iter().map(|v| v.concat()).collect();
        let height = cols.first().map_or(0, Vec::len);
        table.matrix = IntMatrix::from_columns(height, &cols);
        table.hnf = hnf(&table.matrix);
        table.values = values;
        if table.hnf.rank() != basis.len() {
            return Err(Error::UnknownSummand(format!(
                "species of the {} basis elements have rank {}",
                basis.len(),
                table.hnf.rank()
            )));
        }
        Ok(table)
    }

    /// Species values of a module over the same group, row by row.
    pub fn species_of(&self, m: &Representation) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|row| {
                let s = brauer_quotient_action(m, row);
                let labels = &self.labels[row.labels];
                if s.rows() == 0 {
                    vec![0; labels.orbits.len()]
                } else {
                    labels.eigen_orbits(&s)
                }
            })
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    /// Coordinates of a module from its species values.
    pub fn solve(&self, species: &[Vec<i64>]) -> Result<ClassVector> {
        let v: Vec<BigInt> = species.concat().into_iter().map(BigInt::from).collect();
        let x = self
            .hnf
            .express(&v)
            .ok_or_else(|| Error::UnknownSummand("species vector outside the basis lattice".into()))?;
        Ok(ClassVector { coords: x.iter().map(|c| c.to_i64().expect("small coordinates")).collect() })
    }

    /// Class of `B_i ⊗ B_j` from the multiplicativity of species.
    pub fn product(&self, i: usize, j: usize) -> Result<ClassVector> {
        let prod: Vec<Vec<i64>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| self.labels[row.labels].convolve(&self.values[i][r], &self.values[j][r]))
            .collect();
        self.solve(&prod)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }
}

impl TSBasis {
    /// Species of the basis elements, computed once.
    pub fn species_table(&self) -> Result<&SpeciesTable> {
        self.species.get_or_init(|| SpeciesTable::build(self)).as_ref().map_err(Clone::clone)
    }
}
