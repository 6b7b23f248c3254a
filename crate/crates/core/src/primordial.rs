//! Primordiality of groups for `a(k_, triv)` and the main-theorem check.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{dress_verdict, galois_index_set, is_k_dress, is_q_dress, metacyclic_parameters, MinimalShape};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::green::TSBasis;
use crate::group::{sylow_subgroup, GroupSpec, PermGroup, Subgroup};
use crate::linalg::{hnf, lattice_equals_full, snf, GaloisField, IntMatrix};
use crate::modrep::{decompose, induce, perm_module, vertex};
use crate::numtheory::prime_divisors;

/// Caps and seed shared by the engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub order_cap: usize,
    pub dim_cap: usize,
    pub seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            order_cap: crate::group::DEFAULT_ORDER_CAP,
            dim_cap: crate::modrep::DEFAULT_DIM_CAP,
            seed: crate::modrep::DEFAULT_SEED,
        }
    }
}

/// Provenance of a lattice column: basis element `basis_index` of the
/// subgroup representative `subgroup`, induced up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnLabel {
    pub subgroup_order: usize,
    /// Index among the proper subgroup class representatives.
    pub subgroup_index: usize,
    /// Generators in cycle notation.
    pub subgroup_generators: Vec<String>,
    pub basis_index: usize,
    pub basis_dim: usize,
}

/// `T(H)` as the column lattice of induced classes from proper subgroups.
#[derive(Debug)]
pub struct InductionLattice {
    pub basis: TSBasis,
    pub matrix: IntMatrix,
    pub labels: Vec<ColumnLabel>,
    pub subgroups: Vec<Subgroup>,
}

fn subgroup_label(g: &PermGroup, s: &Subgroup) -> Vec<String> {
    s.generators(g).iter().map(|&x| g.element(x).to_string()).collect()
}

pub fn induction_lattice(h: &Arc<PermGroup>, k: &Arc<GaloisField>, cfg: &EngineConfig) -> Result<InductionLattice> {
    let basis = TSBasis::build(h, k, cfg.seed, cfg.dim_cap)?;
    let subgroups: Vec<Subgroup> =
        h.lattice()?.representatives().into_iter().filter(|s| s.order() < h.order()).collect();
    let mut cols: Vec<Vec<i64>> = Vec::new();
    let mut labels = Vec::new();
    for (si, s) in subgroups.iter().enumerate() {
        let sg = Arc::new(h.subgroup_as_group(s));
        let sb = TSBasis::build(&sg, k, cfg.seed, cfg.dim_cap)?;
        let m = basis.induction_matrix(&sb)?;
        let gens = subgroup_label(h, s);
        for j in 0..sb.len() {
            cols.push(m.column(j).iter().map(|x| x.to_i64().expect("small entries")).collect());
            labels.push(ColumnLabel {
                subgroup_order: s.order(),
                subgroup_index: si,
                subgroup_generators: gens.clone(),
                basis_index: j,
                basis_dim: sb.dims()[j],
            });
        }
    }
    let matrix = IntMatrix::from_columns(basis.len(), &cols);
    Ok(InductionLattice { basis, matrix, labels, subgroups })
}

/// One term `coefficient · Ind(column)` of a membership witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTerm {
    pub column: ColumnLabel,
    pub coefficient: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrimordialVerdict {
    pub group: String,
    pub order: usize,
    pub field: String,
    pub basis_dims: Vec<usize>,
    pub columns: usize,
    pub is_primordial: bool,
    pub identity_in_t: bool,
    pub lattice_full: bool,
    /// Elementary divisors of the induction matrix.
    pub snf_divisors: Vec<String>,
    /// `e_[k] = Σ coefficient · column` when not primordial.
    pub witness: Option<Vec<WitnessTerm>>,
}

impl InductionLattice {
    /// Integer combination of columns equal to `target`, if any.
    pub fn express(&self, target: &[i64]) -> Option<Vec<i64>> {
        if self.matrix.cols() == 0 {
            return target.iter().all(|&t| t == 0).then(Vec::new);
        }
        let v: Vec<BigInt> = target.iter().map(|&x| BigInt::from(x)).collect();
        let x = hnf(&self.matrix).express(&v)?;
        Some(x.iter().map(|c| c.to_i64().expect("small coefficients")).collect())
    }

    /// `Σ coefficients_j · column_j`.
    pub fn expand(&self, coefficients: &[i64]) -> Vec<i64> {
        let x: Vec<BigInt> = coefficients.iter().map(|&c| BigInt::from(c)).collect();
        if x.is_empty() {
            return vec![0; self.basis.len()];
        }
        self.matrix.mul_vec(&x).iter().map(|c| c.to_i64().unwrap()).collect()
    }

    fn witness(&self, coefficients: &[i64]) -> Vec<WitnessTerm> {
        coefficients
            .iter()
            .zip(&self.labels)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, l)| WitnessTerm { column: l.clone(), coefficient: c })
            .collect()
    }
}

/// Decides whether `H` is primordial: `[k] ∉ T(H)`, cross-checked against
/// `T(H) = a(kH, triv)` (equivalent since `T(H)` is an ideal).
pub fn primordial_verdict(lat: &InductionLattice) -> Result<PrimordialVerdict> {
    let n = lat.basis.len();
    let e0 = lat.basis.unit().coords;
    let coefficients = lat.express(&e0);
    let identity_in_t = coefficients.is_some();
    let (lattice_full, snf_divisors) = if lat.matrix.cols() == 0 {
        (n == 0, Vec::new())
    } else {
        let s = snf(&lat.matrix);
        (lattice_equals_full(&lat.matrix, n), s.divisors.iter().map(ToString::to_string).collect())
    };
    let g = lat.basis.group();
    if identity_in_t != lattice_full {
        return Err(Error::InconsistentIdealCheck(format!(
            "{} over {}: identity in T = {identity_in_t}, T full = {lattice_full}",
            g.name(),
            lat.basis.field().spec()
        )));
    }
    if let Some(c) = &coefficients {
        if lat.expand(c) != e0 {
            return Err(Error::CertificateFailed("membership witness does not re-expand to the unit".into()));
        }
    }
    Ok(PrimordialVerdict {
        group: g.name(),
        order: g.order(),
        field: lat.basis.field().spec().to_string(),
        basis_dims: lat.basis.dims(),
        columns: lat.matrix.cols(),
        is_primordial: !identity_in_t,
        identity_in_t,
        lattice_full,
        snf_divisors,
        witness: coefficients.map(|c| lat.witness(&c)),
    })
}

pub fn is_primordial(h: &Arc<PermGroup>, k: &Arc<GaloisField>, cfg: &EngineConfig) -> Result<PrimordialVerdict> {
    primordial_verdict(&induction_lattice(h, k, cfg)?)
}

/// One catalog line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub group: GroupSpec,
    pub field: FieldSpec,
}

/// `<group-spec> <field>` per line; `#` starts a comment.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::Parse { token: line.to_string(), reason: "expected `<group-spec> <field>`".into() });
        }
        out.push(CatalogEntry { group: GroupSpec::parse(parts[0])?, field: FieldSpec::parse(parts[1])? });
    }
    Ok(out)
}

/// The reference catalog: cyclic groups of order at most 20 and a list of
/// small non-cyclic groups, each over GF(2), GF(4), GF(3) and GF(9).
pub fn reference_catalog() -> Vec<CatalogEntry> {
    let mut groups: Vec<String> = (1..=20).map(|n| format!("C{n}")).collect();
    groups.extend(
        ["C2xC2", "C2xC4", "D4", "Q8", "D5", "D7", "S3", "S4", "A4", "C7:C3@2", "C13:C4@5"].map(String::from),
    );
    let mut out = Vec::new();
    for g in &groups {
        for q in ["GF(2)", "GF(4)", "GF(3)", "GF(9)"] {
            out.push(CatalogEntry { group: GroupSpec::parse(g).unwrap(), field: FieldSpec::parse(q).unwrap() });
        }
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoremRow {
    pub group: String,
    pub order: usize,
    pub p: u64,
    pub field: String,
    pub k_dress: bool,
    pub primordial: bool,
    /// Some prime `q` with the group `q`-Dress (required of primordial groups).
    pub q_dress_prime: Option<u64>,
    pub agreement: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoremReport {
    pub rows: Vec<TheoremRow>,
    pub agreements: usize,
    pub total: usize,
}

impl TheoremReport {
    pub fn all_agree(&self) -> bool {
        self.agreements == self.total
    }

    /// `TheoremViolation` naming every disagreeing entry.
    pub fn check(&self) -> Result<()> {
        let bad: Vec<String> = self
            .rows
            .iter()
            .filter(|r| !r.agreement)
            .map(|r| format!("{} over {} (k-Dress {}, primordial {})", r.group, r.field, r.k_dress, r.primordial))
            .collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::TheoremViolation(bad.join("; ")))
        }
    }
}

fn theorem_row(entry: &CatalogEntry, cfg: &EngineConfig) -> Result<TheoremRow> {
    let g = Arc::new(entry.group.build(cfg.order_cap)?.with_name(entry.group.to_string()));
    let k = GaloisField::new(&entry.field);
    let p = entry.field.characteristic();
    let k_dress = is_k_dress(&g, &entry.field)?;
    let primordial = is_primordial(&g, &k, cfg)?.is_primordial;
    let mut primes = prime_divisors(g.order() as u64);
    if primes.is_empty() {
        primes.push(p);
    }
    let q_dress_prime = primes.into_iter().find(|&q| is_q_dress(&g, q, p));
    let agreement = k_dress == primordial && (!primordial || q_dress_prime.is_some());
    Ok(TheoremRow {
        group: entry.group.to_string(),
        order: g.order(),
        p,
        field: entry.field.to_string(),
        k_dress,
        primordial,
        q_dress_prime,
        agreement,
    })
}

/// Compares `is_k_dress` with `is_primordial` over the catalog, in parallel;
/// rows come back in catalog order.
pub fn verify_theorem(catalog: &[CatalogEntry], cfg: &EngineConfig) -> Result<TheoremReport> {
    let rows = catalog.par_iter().map(|e| theorem_row(e, cfg)).collect::<Result<Vec<_>>>()?;
    let agreements = rows.iter().filter(|r| r.agreement).count();
    Ok(TheoremReport { total: rows.len(), agreements, rows })
}

/// One non-trivial summand of `k[H/Q]` and where it comes from.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummandRecord {
    pub dim: usize,
    pub multiplicity: usize,
    pub vertex_order: usize,
    pub trivial_source: bool,
    /// A proper subgroup `A` (order, generators) and a basis element `W` of
    /// `a(kA, triv)` with the summand dividing `W↑^H`.
    pub induced_from_order: usize,
    pub induced_from_generators: Vec<String>,
    pub source_basis_index: usize,
    /// The summand is isomorphic to `W↑^H` itself.
    pub isomorphic_to_induced: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MembershipCertificate {
    pub group: String,
    pub field: String,
    pub shape: MinimalShape,
    pub index_set: Vec<u64>,
    pub perm_dim: usize,
    pub trivial_multiplicity: usize,
    pub summands: Vec<SummandRecord>,
    /// Class of `k[H/Q] - k` in the trivial-source basis.
    pub rest_class: Vec<i64>,
    /// `e_[k]` as an integer combination of induced classes.
    pub witness: Vec<WitnessTerm>,
}

/// Builds and checks the decomposition `k[H/Q] = k ⊕ rest` for
/// `H = C_r ⋊_a C_{q^n}` with `a ∉ I_r(k)`, showing `[k] ∈ T(H)`.
pub fn membership_certificate(h: &Arc<PermGroup>, k: &Arc<GaloisField>, cfg: &EngineConfig) -> Result<MembershipCertificate> {
    let spec = k.spec().clone();
    let shape = prime_divisors(h.order() as u64)
        .into_iter()
        .find_map(|q| metacyclic_parameters(h, q))
        .ok_or_else(|| Error::Hypothesis(format!("{} is not of the form C_r ⋊ C_(q^n)", h.name())))?;
    let MinimalShape { r, q, a, .. } = shape;
    if r == spec.characteristic() {
        return Err(Error::Hypothesis(format!("r = {r} equals the characteristic")));
    }
    let index_set = galois_index_set(&spec, r)?;
    if index_set.contains(a) {
        return Err(Error::Hypothesis(format!("a = {a} lies in I_{r}(k) = {:?}", index_set.members)));
    }
    let lat = induction_lattice(h, k, cfg)?;
    let basis = &lat.basis;
    let sylow = sylow_subgroup(h, q);
    let perm = perm_module(h, &sylow, k);
    if perm.dim() as u64 != r {
        return Err(Error::CertificateFailed(format!("k[H/Q] has dimension {} instead of {r}", perm.dim())));
    }
    let d = decompose(&perm, cfg.seed)?;
    let class = basis.classify(&perm)?;
    let trivial_multiplicity = class.coords[0] as usize;
    if trivial_multiplicity != 1 {
        return Err(Error::CertificateFailed(format!("trivial summand has multiplicity {trivial_multiplicity}")));
    }
    let mut summands = Vec::new();
    let mut covered = 1;
    for (u, &mult) in d.class_representatives().zip(&d.multiplicities) {
        if u.dim() == 1 && u.module().acts_trivially() {
            continue;
        }
        covered += u.dim() * mult;
        let v = vertex(u)?;
        if !v.trivial_source {
            return Err(Error::CertificateFailed(format!("summand of dimension {} lacks trivial source", u.dim())));
        }
        let mut found = None;
        // larger subgroups first: their inductions are closest to the summand
        let mut order: Vec<&Subgroup> = lat.subgroups.iter().collect();
        order.sort_by_key(|s| std::cmp::Reverse(s.order()));
        'search: for s in order {
            let sg = Arc::new(h.subgroup_as_group(s));
            let sb = TSBasis::build(&sg, k, cfg.seed, cfg.dim_cap)?;
            for (j, w) in sb.elements().iter().enumerate() {
                let ind = induce(w.module.module(), h, cfg.dim_cap.max(h.order()))?;
                let mult_in = u.multiplicity_in(&ind)?;
                if mult_in > 0 {
                    found = Some((s, j, ind.dim() == u.dim()));
                    break 'search;
                }
            }
        }
        let (s, j, iso) = found.ok_or_else(|| {
            Error::CertificateFailed(format!("summand of dimension {} is not a summand of an induced module", u.dim()))
        })?;
        summands.push(SummandRecord {
            dim: u.dim(),
            multiplicity: mult,
            vertex_order: v.vertex_order,
            trivial_source: true,
            induced_from_order: s.order(),
            induced_from_generators: subgroup_label(h, s),
            source_basis_index: j,
            isomorphic_to_induced: iso,
        });
    }
    if covered as u64 != r {
        return Err(Error::CertificateFailed(format!("dimensions 1 + rest = {covered}, expected {r}")));
    }
    let mut rest = class.coords.clone();
    rest[0] -= 1;
    let rest_coeffs = lat
        .express(&rest)
        .ok_or_else(|| Error::CertificateFailed("[k[H/Q]] - [k] is not in T(H)".into()))?;
    // e_[k] = [k[H/Q]] - rest, and [k[H/Q]] is the induced trivial module of Q
    let qi = lat
        .subgroups
        .iter()
        .position(|s| s.order() == sylow.order())
        .expect("Q is a proper subgroup");
    let col = lat.labels.iter().position(|l| l.subgroup_index == qi && l.basis_index == 0).unwrap();
    let mut coeffs: Vec<i64> = rest_coeffs.iter().map(|c| -c).collect();
    if coeffs.is_empty() {
        coeffs = vec![0; lat.matrix.cols()];
    }
    coeffs[col] += 1;
    if lat.expand(&coeffs) != basis.unit().coords {
        return Err(Error::CertificateFailed("witness does not re-expand to e_[k]".into()));
    }
    let verdict = primordial_verdict(&lat)?;
    if verdict.is_primordial {
        return Err(Error::CertificateFailed("lattice check reports the group primordial".into()));
    }
    debug_assert!(coeffs.iter().any(|c| !c.is_zero()));
    Ok(MembershipCertificate {
        group: h.name(),
        field: spec.to_string(),
        shape,
        index_set: index_set.members,
        perm_dim: perm.dim(),
        trivial_multiplicity,
        summands,
        rest_class: rest,
        witness: lat.witness(&coeffs),
    })
}

/// Classifier verdict plus primordiality, for reporting.
pub fn full_report(h: &Arc<PermGroup>, k: &Arc<GaloisField>, cfg: &EngineConfig) -> Result<(crate::classify::DressVerdict, PrimordialVerdict)> {
    Ok((dress_verdict(h, k.spec())?, is_primordial(h, k, cfg)?))
}
