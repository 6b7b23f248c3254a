use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::{PermGroup, Subgroup};
use crate::linalg::{FFMatrix, GaloisField};

/// Default cap on module dimensions.
pub const DEFAULT_DIM_CAP: usize = 256;

/// How a module was produced; used for reporting and for fast paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Trivial,
    /// `k[G/H]` for the stored subgroup of the acting group.
    Permutation(Subgroup),
    Induced,
    Restricted,
    Inflated,
    Tensor,
    TensorInduced,
    Summand,
    DirectSum,
    Custom,
}

/// A `kG`-module given by the images of the group generators.
pub struct Representation {
    group: Arc<PermGroup>,
    field: Arc<GaloisField>,
    dim: usize,
    images: Vec<FFMatrix>,
    all: OnceLock<Vec<FFMatrix>>,
    provenance: Provenance,
}

impl Clone for Representation {
    fn clone(&self) -> Self {
        let all = OnceLock::new();
        if let Some(v) = self.all.get() {
            let _ = all.set(v.clone());
        }
        Representation {
            group: self.group.clone(),
            field: self.field.clone(),
            dim: self.dim,
            images: self.images.clone(),
            all,
            provenance: self.provenance.clone(),
        }
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("group", &self.group.name())
            .field("field", &self.field.spec().to_string())
            .field("dim", &self.dim)
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl Representation {
    /// Wraps generator images; does not check the group relations (see
    /// [`Representation::is_homomorphism`]).
    pub fn new(
        group: Arc<PermGroup>,
        field: Arc<GaloisField>,
        dim: usize,
        images: Vec<FFMatrix>,
        provenance: Provenance,
    ) -> Result<Self> {
        if images.len() != group.generators().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} generator images for {} generators",
                images.len(),
                group.generators().len()
            )));
        }
        if images.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch(format!("generator image is not {dim}x{dim}")));
        }
        Ok(Representation { group, field, dim, images, all: OnceLock::new(), provenance })
    }

    pub fn trivial(group: &Arc<PermGroup>, field: &Arc<GaloisField>) -> Self {
        let images = vec![FFMatrix::identity(field, 1); group.generators().len()];
        Representation::new(group.clone(), field.clone(), 1, images, Provenance::Trivial).unwrap()
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_images(&self) -> &[FFMatrix] {
        &self.images
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }

    /// Images of every group element, indexed like `group().elements()`.
    pub fn element_images(&self) -> &[FFMatrix] {
        self.all.get_or_init(|| {
            let g = &*self.group;
            let n = g.order();
            let mut out: Vec<Option<FFMatrix>> = vec![None; n];
            out[PermGroup::IDENTITY] = Some(FFMatrix::identity(&self.field, self.dim));
            let mut queue = vec![PermGroup::IDENTITY];
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for (gi, &gen) in g.generator_indices().iter().enumerate() {
                    let y = g.mul(gen, x);
                    if out[y].is_none() {
                        out[y] = Some(self.images[gi].mul(out[x].as_ref().unwrap()));
                        queue.push(y);
                    }
                }
            }
            out.into_iter().map(|m| m.expect("generators generate the group")).collect()
        })
    }

    pub fn image(&self, element: usize) -> &FFMatrix {
        &self.element_images()[element]
    }

    /// Checks that the generator images respect every relation: the image
    /// assigned to each element is consistent along every Cayley-graph edge.
    pub fn is_homomorphism(&self) -> bool {
        let g = &*self.group;
        let all = self.element_images();
        (0..g.order()).all(|x| {
            g.generator_indices()
                .iter()
                .enumerate()
                .all(|(gi, &gen)| self.images[gi].mul(&all[x]) == all[g.mul(gen, x)])
        })
    }

    /// Module on the span of the columns of `basis`, which must be a submodule
    /// with linearly independent columns.
    pub fn submodule(&self, basis: &FFMatrix) -> Representation {
        let left = left_inverse(basis);
        let images = self.images.iter().map(|m| left.mul(&m.mul(basis))).collect();
        Representation::new(self.group.clone(), self.field.clone(), basis.cols(), images, Provenance::Summand)
            .unwrap()
    }

    /// Same module in the basis given by the columns of the invertible `p`.
    pub fn change_basis(&self, p: &FFMatrix) -> Representation {
        let inv = p.inverse().expect("change of basis must be invertible");
        let images = self.images.iter().map(|m| inv.mul(&m.mul(p))).collect();
        Representation::new(self.group.clone(), self.field.clone(), self.dim, images, Provenance::Custom).unwrap()
    }

    /// Whether the span of the columns of `basis` is invariant.
    pub fn is_submodule(&self, basis: &FFMatrix) -> bool {
        let r = basis.rank();
        self.images.iter().all(|m| FFMatrix::hstack(&[basis, &m.mul(basis)]).rank() == r)
    }

    /// True when every element acts as the identity.
    pub fn acts_trivially(&self) -> bool {
        self.images.iter().all(FFMatrix::is_identity)
    }

    pub(crate) fn check_same(&self, other: &Representation) -> Result<()> {
        if !Arc::ptr_eq(&self.group, &other.group) && self.group.elements() != other.group.elements() {
            return Err(Error::DimensionMismatch("modules over different groups".into()));
        }
        if self.field != other.field {
            return Err(Error::DimensionMismatch("modules over different fields".into()));
        }
        Ok(())
    }
}

/// `L` with `L B = I` for `B` of full column rank.
pub fn left_inverse(b: &FFMatrix) -> FFMatrix {
    let (_, pivot_rows) = b.transpose().rref();
    assert_eq!(pivot_rows.len(), b.cols(), "basis columns must be independent");
    let mut square = FFMatrix::zeros(b.field(), b.cols(), b.cols());
    for (i, &r) in pivot_rows.iter().enumerate() {
        for j in 0..b.cols() {
            square.set(i, j, b.get(r, j));
        }
    }
    let inv = square.inverse().expect("pivot rows form an invertible block");
    let mut select = FFMatrix::zeros(b.field(), b.cols(), b.rows());
    for (i, &r) in pivot_rows.iter().enumerate() {
        select.set(i, r, 1);
    }
    inv.mul(&select)
}
