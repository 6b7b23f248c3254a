//! Krull–Schmidt decomposition with certified indecomposable summands.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::hom::{end_space, hom_by_spinning, hom_space};
use super::rep::Representation;
use crate::error::{Error, Result};
use crate::linalg::poly::{degree, divrem, gcd, is_irreducible, minimal_polynomial, powmod, radical, split_squarefree};
use crate::linalg::{FFMatrix, Fe, GaloisField, RowEchelon};

/// Default seed for the splitting search.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Number of pseudorandom endomorphisms tried before giving up.
const RANDOM_BUDGET: usize = 256;

/// Evidence that `End(M)` is local.
///
/// `J` is the ideal generated by `r_i(b_i)` (with `r_i` the irreducible
/// radical of the minimal polynomial of basis element `b_i`) and all
/// commutators; it is checked to be nilpotent, and `E/J` is checked to be a
/// field by exhibiting an element whose minimal polynomial modulo `J` is
/// irreducible of degree `dim E/J`.
#[derive(Debug, Clone, Serialize)]
pub struct LocalCertificate {
    pub end_dim: usize,
    pub radical_dim: usize,
    /// `dim_k E/J`; 1 means absolutely indecomposable.
    pub residue_degree: usize,
    /// Smallest `t` with `J^t = 0`.
    pub nilpotency_index: usize,
}

impl LocalCertificate {
    pub fn absolutely_indecomposable(&self) -> bool {
        self.residue_degree == 1
    }
}

/// A module together with a certificate that it is indecomposable.
#[derive(Debug, Clone)]
pub struct Indecomposable {
    module: Representation,
    end_basis: Vec<FFMatrix>,
    radical: RowEchelon,
    certificate: LocalCertificate,
}

enum Analysis {
    Split(FFMatrix),
    Local(LocalCertificate, RowEchelon),
    Unknown(String),
}

fn random_element<R: Rng>(basis: &[FFMatrix], field: &GaloisField, rng: &mut R) -> FFMatrix {
    let mut acc = FFMatrix::zeros(basis[0].field(), basis[0].rows(), basis[0].cols());
    for b in basis {
        let c = rng.gen_range(0..field.order()) as Fe;
        if c != 0 {
            acc.add_scaled(c, b);
        }
    }
    acc
}

/// Polynomials `(a, b)` with `μ = a b` coprime and both nonconstant, when the
/// minimal polynomial `μ` of `phi` has at least two distinct irreducible factors.
fn coprime_factors<R: Rng>(phi: &FFMatrix, rng: &mut R) -> Option<(Vec<Fe>, Vec<Fe>)> {
    let f = &**phi.field();
    let mu = minimal_polynomial(phi);
    let r = radical(f, &mu);
    if is_irreducible(f, &r) {
        return None;
    }
    let r1 = split_squarefree(f, &r, rng)?;
    let e = degree(&mu).unwrap() as u64;
    let a = gcd(f, &mu, &powmod(f, &r1, e, &mu));
    let b = divrem(f, &mu, &a).0;
    Some((a, b))
}

/// Fitting decomposition `M = ker a(φ) ⊕ ker b(φ)`; columns span the two parts.
fn fitting_split<R: Rng>(phi: &FFMatrix, rng: &mut R) -> Option<(FFMatrix, FFMatrix)> {
    let (a, b) = coprime_factors(phi, rng)?;
    let n = phi.rows();
    let f = phi.field();
    let k1 = crate::linalg::poly::eval_matrix(&a, phi).kernel();
    let k2 = crate::linalg::poly::eval_matrix(&b, phi).kernel();
    debug_assert_eq!(k1.len() + k2.len(), n);
    Some((FFMatrix::from_columns(f, n, &k1), FFMatrix::from_columns(f, n, &k2)))
}

fn splits<R: Rng>(phi: &FFMatrix, rng: &mut R) -> bool {
    coprime_factors(phi, rng).is_some()
}

/// Two-sided ideal of the algebra spanned by `basis`, generated by `gens`.
fn ideal_closure(basis: &[FFMatrix], gens: Vec<FFMatrix>) -> (Vec<FFMatrix>, RowEchelon) {
    let f = basis[0].field();
    let n = basis[0].rows();
    let mut ech = RowEchelon::new(f, n * n);
    let mut elems = Vec::new();
    let mut queue = gens;
    while let Some(x) = queue.pop() {
        if x.is_zero() || ech.insert(x.to_vec()).is_some() {
            continue;
        }
        for b in basis {
            queue.push(x.mul(b));
            queue.push(b.mul(&x));
        }
        elems.push(x);
    }
    (elems, ech)
}

/// Smallest `t` with `I^t = 0`, or `None` if `I` is not nilpotent.
fn nilpotency_index(ideal: &[FFMatrix]) -> Option<usize> {
    if ideal.is_empty() {
        return Some(1);
    }
    let f = ideal[0].field();
    let n = ideal[0].rows();
    let mut power = ideal.to_vec();
    let mut t = 1;
    loop {
        let mut ech = RowEchelon::new(f, n * n);
        let mut next = Vec::new();
        for p in &power {
            for x in ideal {
                let y = p.mul(x);
                if !y.is_zero() && ech.insert(y.to_vec()).is_none() {
                    next.push(y);
                }
            }
        }
        t += 1;
        if next.is_empty() {
            return Some(t);
        }
        if next.len() == power.len() {
            return None;
        }
        power = next;
    }
}

/// Minimal polynomial of `theta` in `E/I` (monic, constant term first).
fn minpoly_mod(theta: &FFMatrix, ideal: &RowEchelon) -> Vec<Fe> {
    let f = theta.field().clone();
    let n = theta.rows();
    let reduce = |x: &FFMatrix| {
        let mut v = x.to_vec();
        ideal.reduce(&mut v);
        v
    };
    let mut powers = RowEchelon::tracking(&f, n * n);
    let mut cur = FFMatrix::identity(&f, n);
    loop {
        if let Some(dep) = powers.insert(reduce(&cur)) {
            // theta^d = sum dep_i theta^i
            let mut poly: Vec<Fe> = dep.iter().map(|&c| f.neg(c)).collect();
            poly.push(1);
            return poly;
        }
        cur = cur.mul(theta);
    }
}

fn analyze<R: Rng>(basis: &[FFMatrix], rng: &mut R) -> Analysis {
    let f = basis[0].field().clone();
    let mut gens = Vec::new();
    for b in basis {
        let mu = minimal_polynomial(b);
        let r = radical(&f, &mu);
        if !is_irreducible(&f, &r) {
            return Analysis::Split(b.clone());
        }
        gens.push(crate::linalg::poly::eval_matrix(&r, b));
    }
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            gens.push(a.mul(b).sub(&b.mul(a)));
        }
    }
    let (ideal, ech) = ideal_closure(basis, gens);
    let Some(index) = nilpotency_index(&ideal) else {
        return search_split(basis, rng)
            .map(Analysis::Split)
            .unwrap_or_else(|| Analysis::Unknown("ideal of commutators and radicals is not nilpotent".into()));
    };
    let residue = basis.len() - ideal.len();
    let cert = LocalCertificate {
        end_dim: basis.len(),
        radical_dim: ideal.len(),
        residue_degree: residue,
        nilpotency_index: index,
    };
    if residue == 1 {
        return Analysis::Local(cert, ech);
    }
    let candidates = basis.iter().cloned().chain((0..RANDOM_BUDGET).map(|_| random_element(basis, &f, rng)));
    for theta in candidates.collect::<Vec<_>>() {
        let mp = minpoly_mod(&theta, &ech);
        if !is_irreducible(&f, &mp) {
            // E/J is reduced, so θ has a reducible radical in E as well
            return Analysis::Split(theta);
        }
        if degree(&mp) == Some(residue) {
            return Analysis::Local(cert, ech);
        }
    }
    Analysis::Unknown(format!("no primitive element found for a residue algebra of dimension {residue}"))
}

/// Pairwise sums and products, then pseudorandom combinations.
fn search_split<R: Rng>(basis: &[FFMatrix], rng: &mut R) -> Option<FFMatrix> {
    let f = basis[0].field().clone();
    let limit = basis.len().min(24);
    for i in 0..limit {
        for j in i + 1..limit {
            for c in [basis[i].add(&basis[j]), basis[i].mul(&basis[j])] {
                if splits(&c, rng) {
                    return Some(c);
                }
            }
        }
    }
    for _ in 0..RANDOM_BUDGET {
        let c = random_element(basis, &f, rng);
        if splits(&c, rng) {
            return Some(c);
        }
    }
    None
}

impl Indecomposable {
    /// Certifies `module` as indecomposable.
    pub fn certify(module: Representation, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = end_space(&module)?;
        match analyze(&basis, &mut rng) {
            Analysis::Local(certificate, radical) => Ok(Indecomposable { module, end_basis: basis, radical, certificate }),
            Analysis::Split(_) => Err(Error::NotIndecomposable),
            Analysis::Unknown(why) => Err(Error::DecompositionFailed(why)),
        }
    }

    pub fn module(&self) -> &Representation {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn end_basis(&self) -> &[FFMatrix] {
        &self.end_basis
    }

    pub fn certificate(&self) -> &LocalCertificate {
        &self.certificate
    }

    /// Whether an endomorphism lies in `J(End M)`, i.e. is nilpotent.
    pub fn in_radical(&self, x: &FFMatrix) -> bool {
        self.radical.contains(&x.to_vec())
    }

    /// Multiplicity of this module as a summand of `x`: the rank of the
    /// pairing `Hom(U,X) × Hom(X,U) → End(U)/J`, divided by `dim End(U)/J`.
    pub fn multiplicity_in(&self, x: &Representation) -> Result<usize> {
        let into = hom_space(&self.module, x)?;
        if into.is_empty() {
            return Ok(0);
        }
        let back = hom_by_spinning(x, &self.module);
        let width = self.dim() * self.dim();
        let rows: Vec<Vec<Fe>> = into
            .iter()
            .map(|f| {
                let mut col = Vec::with_capacity(back.len() * width);
                for g in &back {
                    let mut v = g.mul(f).to_vec();
                    self.radical.reduce(&mut v);
                    col.extend(v);
                }
                col
            })
            .collect();
        if back.is_empty() {
            return Ok(0);
        }
        let rank = FFMatrix::from_rows(self.module.field(), &rows).rank();
        let residue = self.certificate.residue_degree;
        debug_assert_eq!(rank % residue, 0);
        Ok(rank / residue)
    }

    /// `U ≅ V` for certified indecomposables: some composite `U → V → U` is
    /// outside `J(End U)`.
    pub fn is_isomorphic(&self, other: &Indecomposable) -> Result<bool> {
        if self.dim() != other.dim() || self.certificate.end_dim != other.certificate.end_dim {
            return Ok(false);
        }
        Ok(self.multiplicity_in(other.module())? == 1)
    }
}

/// Isomorphism of certified indecomposables.
pub fn iso(a: &Indecomposable, b: &Indecomposable) -> Result<bool> {
    a.is_isomorphic(b)
}

/// One summand of a decomposition, embedded in the ambient module.
#[derive(Debug, Clone)]
pub struct Summand {
    pub module: Indecomposable,
    /// Columns span the summand inside the ambient module.
    pub embedding: FFMatrix,
    /// Index into [`Decomposition::classes`].
    pub class: usize,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Index of the first summand of each isomorphism class.
    pub classes: Vec<usize>,
    pub multiplicities: Vec<usize>,
    /// Concatenated summand embeddings; invertible.
    pub change_of_basis: FFMatrix,
}

impl Decomposition {
    pub fn class_representatives(&self) -> impl Iterator<Item = &Indecomposable> {
        self.classes.iter().map(|&i| &self.summands[i].module)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.class_representatives().map(Indecomposable::dim).collect()
    }
}

/// Decomposes `m` into certified indecomposables, grouped by isomorphism type.
pub fn decompose(m: &Representation, seed: u64) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = m.field().clone();
    let mut pieces: Vec<(Indecomposable, FFMatrix)> = Vec::new();
    if m.dim() > 0 {
        let top = end_space(m)?;
        let mut stack = vec![(m.clone(), FFMatrix::identity(&f, m.dim()), top)];
        while let Some((module, emb, basis)) = stack.pop() {
            let phi = match analyze(&basis, &mut rng) {
                Analysis::Local(certificate, radical) => {
                    pieces.push((Indecomposable { module, end_basis: basis, radical, certificate }, emb));
                    continue;
                }
                Analysis::Split(phi) => phi,
                Analysis::Unknown(why) => {
                    return Err(Error::DecompositionFailed(format!("dim {}: {why}", module.dim())))
                }
            };
            let (a, b) = fitting_split(&phi, &mut rng).expect("splitting element has coprime factors");
            for part in [b, a] {
                let sub = module.submodule(&part);
                let e = end_space(&sub)?;
                stack.push((sub, emb.mul(&part), e));
            }
        }
    }
    // group by isomorphism type, keeping discovery order
    let mut summands: Vec<Summand> = Vec::new();
    let mut classes: Vec<usize> = Vec::new();
    let mut multiplicities = Vec::new();
    for (module, embedding) in pieces {
        let mut class = None;
        for (c, &rep) in classes.iter().enumerate() {
            if summands[rep].module.is_isomorphic(&module)? {
                class = Some(c);
                break;
            }
        }
        let class = class.unwrap_or_else(|| {
            classes.push(summands.len());
            multiplicities.push(0);
            classes.len() - 1
        });
        multiplicities[class] += 1;
        summands.push(Summand { module, embedding, class });
    }
    let cols: Vec<&FFMatrix> = summands.iter().map(|s| &s.embedding).collect();
    let change_of_basis = if cols.is_empty() { FFMatrix::zeros(&f, 0, 0) } else { FFMatrix::hstack(&cols) };
    Ok(Decomposition { summands, classes, multiplicities, change_of_basis })
}
