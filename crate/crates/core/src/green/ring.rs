//! Ring structure of `a(kG, triv)`.

use rayon::prelude::*;
use serde::Serialize;

use super::basis::{ClassVector, TSBasis};
use crate::error::Result;
use crate::modrep::tensor;

/// Structure constants: `constants[i][j]` is the class of `B_i ⊗ B_j`.
#[derive(Debug, Clone, Serialize)]
pub struct MultTable {
    pub constants: Vec<Vec<ClassVector>>,
}

impl MultTable {
    pub fn multiply(&self, a: &ClassVector, b: &ClassVector) -> ClassVector {
        let n = a.len();
        let mut out = ClassVector::zero(n);
        for (i, &ai) in a.coords.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coords.iter().enumerate() {
                if bj != 0 {
                    out = out.add(&self.constants[i][j].scale(ai * bj));
                }
            }
        }
        out
    }
}

impl TSBasis {
    /// Class of `B_i ⊗ B_j`. Products within the dimension cap are built and
    /// classified directly; larger ones are read off the species table.
    pub fn product_class(&self, i: usize, j: usize) -> Result<ClassVector> {
        let (a, b) = (&self.elements()[i], &self.elements()[j]);
        if a.dim() * b.dim() <= self.dim_cap() {
            let t = tensor(a.module.module(), b.module.module(), self.dim_cap())?;
            self.classify(&t)
        } else {
            self.species_table()?.product(i, j)
        }
    }

    /// Structure constants, computed once and cached.
    pub fn mult_table(&self) -> Result<&MultTable> {
        let table = self.mult.get_or_init(|| {
            let n = self.len();
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
            let classes = pairs
                .par_iter()
                .map(|&(i, j)| self.product_class(i, j))
                .collect::<Result<Vec<_>>>()?;
            let mut constants = vec![vec![ClassVector::zero(n); n]; n];
            for (&(i, j), c) in pairs.iter().zip(classes) {
                constants[j][i] = c.clone();
                constants[i][j] = c;
            }
            Ok(MultTable { constants })
        });
        table.as_ref().map_err(Clone::clone)
    }
}
