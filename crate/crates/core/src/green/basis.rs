//! The basis of indecomposable trivial-source modules and class vectors.

use std::cmp::Reverse;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::ring::MultTable;
use crate::error::{Error, Result};
use crate::group::{is_r_group, PermGroup, Subgroup};
use crate::linalg::{FFMatrix, GaloisField, IntMatrix};
use crate::modrep::{
    decompose, induce, perm_module, restrict, vertex, Indecomposable, Representation, VertexReport,
};

/// Integer coordinates of a (virtual) trivial-source module against a [`TSBasis`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassVector {
    pub coords: Vec<i64>,
}

impl ClassVector {
    pub fn zero(n: usize) -> Self {
        ClassVector { coords: vec![0; n] }
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.coords[i] = 1;
        v
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, other: &ClassVector) -> ClassVector {
        ClassVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: i64) -> ClassVector {
        ClassVector { coords: self.coords.iter().map(|a| a * c).collect() }
    }

    /// `Σ coords_i · dims_i`.
    pub fn dimension(&self, dims: &[usize]) -> i64 {
        self.coords.iter().zip(dims).map(|(&c, &d)| c * d as i64).sum()
    }
}

/// One basis element: a certified indecomposable trivial-source module.
#[derive(Debug, Clone)]
pub struct TsElement {
    pub module: Indecomposable,
    pub vertex: VertexReport,
    /// `dim U^S` for each subgroup class representative `S`, in lattice order.
    pub fixed_dims: Vec<usize>,
}

impl TsElement {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

/// Basis of `a(kG, triv)`: the indecomposable summands of `k[G/P]` for
/// `p`-subgroup class representatives `P`, up to isomorphism.
///
/// Element 0 is the trivial module; the rest are ordered by dimension,
/// vertex order, fixed-point dimensions (larger first) and discovery order.
#[derive(Debug)]
pub struct TSBasis {
    group: Arc<PermGroup>,
    field: Arc<GaloisField>,
    elements: Vec<TsElement>,
    seed: u64,
    dim_cap: usize,
    pub(crate) mult: OnceLock<Result<MultTable>>,
    pub(crate) species: OnceLock<Result<super::species::SpeciesTable>>,
}

fn fixed_dim(m: &Representation, s: &Subgroup, g: &PermGroup) -> usize {
    let gens = s.generators(g);
    if gens.is_empty() {
        return m.dim();
    }
    let id = FFMatrix::identity(m.field(), m.dim());
    let parts: Vec<FFMatrix> = gens.iter().map(|&x| m.image(x).sub(&id)).collect();
    let refs: Vec<&FFMatrix> = parts.iter().collect();
    m.dim() - FFMatrix::vstack(&refs).rank()
}

impl TSBasis {
    pub fn build(group: &Arc<PermGroup>, field: &Arc<GaloisField>, seed: u64, dim_cap: usize) -> Result<Self> {
        let g = &**group;
        let p = field.characteristic();
        let reps = g.lattice()?.representatives();
        let p_subgroups: Vec<&Subgroup> = reps.iter().filter(|s| is_r_group(s, p)).collect();
        let mut found: Vec<(Indecomposable, usize)> = Vec::new();
        let trivial = Indecomposable::certify(Representation::trivial(group, field), seed)?;
        found.push((trivial, 0));
        for psub in &p_subgroups {
            let index = g.order() / psub.order();
            if index > dim_cap {
                return Err(Error::DimensionCapExceeded { dim: index, cap: dim_cap });
            }
            let d = decompose(&perm_module(group, psub, field), seed)?;
            for u in d.class_representatives() {
                let mut known = false;
                for (v, _) in &found {
                    if v.dim() == u.dim() && v.is_isomorphic(u)? {
                        known = true;
                        break;
                    }
                }
                if !known {
                    found.push((u.clone(), found.len()));
                }
            }
        }
        let mut elements = Vec::with_capacity(found.len());
        for (u, order) in found {
            let v = vertex(&u)?;
            if !v.trivial_source {
                return Err(Error::NotTrivialSource(format!(
                    "summand of dimension {} of a permutation module failed the trivial-source test",
                    u.dim()
                )));
            }
            let fixed_dims = reps.iter().map(|s| fixed_dim(u.module(), s, g)).collect();
            elements.push((TsElement { module: u, vertex: v, fixed_dims }, order));
        }
        elements.sort_by(|(a, ia), (b, ib)| {
            let key = |e: &TsElement, i: usize| (i != 0, e.dim(), e.vertex.vertex_order, Reverse(e.fixed_dims.clone()), i);
            key(a, *ia).cmp(&key(b, *ib))
        });
        Ok(TSBasis {
            group: group.clone(),
            field: field.clone(),
            elements: elements.into_iter().map(|(e, _)| e).collect(),
            seed,
            dim_cap,
            mult: OnceLock::new(),
            species: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn elements(&self) -> &[TsElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.elements.iter().map(TsElement::dim).collect()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    /// Class of the trivial module.
    pub fn unit(&self) -> ClassVector {
        ClassVector::unit(self.len(), 0)
    }

    /// Coordinates of a trivial-source module, by summand multiplicities.
    pub fn classify(&self, m: &Representation) -> Result<ClassVector> {
        let mut coords = Vec::with_capacity(self.len());
        for e in &self.elements {
            coords.push(e.module.multiplicity_in(m)? as i64);
        }
        let v = ClassVector { coords };
        if v.dimension(&self.dims()) != m.dim() as i64 {
            return Err(self.explain_mismatch(m, &v));
        }
        Ok(v)
    }

    fn explain_mismatch(&self, m: &Representation, v: &ClassVector) -> Error {
        let accounted = v.dimension(&self.dims());
        let detail = format!("{} of {} dimensions matched basis elements", accounted, m.dim());
        if m.dim() > self.dim_cap {
            return Error::UnknownSummand(detail);
        }
        let Ok(d) = decompose(m, self.seed) else { return Error::UnknownSummand(detail) };
        for u in d.class_representatives() {
            match vertex(u) {
                Ok(r) if !r.trivial_source => return Error::NotTrivialSource(detail),
                Err(e) => return e,
                _ => {}
            }
        }
        Error::UnknownSummand(detail)
    }

    /// Column `j`: class of `B_K[j]` induced to this group.
    pub fn induction_matrix(&self, sub: &TSBasis) -> Result<IntMatrix> {
        let cols = sub
            .elements
            .iter()
            .map(|e| {
                let ind = induce(e.module.module(), &self.group, self.dim_cap.max(self.group.order()))?;
                Ok(self.classify(&ind)?.coords)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_columns(self.len(), &cols))
    }

    /// Column `j`: class of `B_G[j]` restricted to the group of `sub`.
    pub fn restriction_matrix(&self, sub: &TSBasis) -> Result<IntMatrix> {
        let cols = self
            .elements
            .iter()
            .map(|e| Ok(sub.classify(&restrict(e.module.module(), sub.group())?)?.coords))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_columns(sub.len(), &cols))
    }
}

/// Builds the basis with the default seed.
pub fn ts_basis(group: &Arc<PermGroup>, field: &Arc<GaloisField>) -> Result<TSBasis> {
    TSBasis::build(group, field, crate::modrep::DEFAULT_SEED, crate::modrep::DEFAULT_DIM_CAP)
}
