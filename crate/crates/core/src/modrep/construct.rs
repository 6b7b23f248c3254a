//! Module constructions: permutation modules, induction, restriction,
//! inflation, tensor products and tensor induction.

use std::sync::Arc;

use super::rep::{Provenance, Representation};
use crate::error::{Error, Result};
use crate::group::{CosetAction, PermGroup, QuotientMap, Subgroup};
use crate::linalg::{FFMatrix, GaloisField};

fn check_cap(dim: usize, cap: usize) -> Result<()> {
    if dim > cap {
        Err(Error::DimensionCapExceeded { dim, cap })
    } else {
        Ok(())
    }
}

/// The subgroup of `g` made of the elements of `h` (which must act on the same points).
pub fn embed(g: &PermGroup, h: &PermGroup) -> Result<Subgroup> {
    let mut elems = Vec::with_capacity(h.order());
    for p in h.elements() {
        let i = g.index_of(p).ok_or_else(|| {
            Error::DimensionMismatch(format!("element {p} of {} is not in {}", h.name(), g.name()))
        })?;
        elems.push(i);
    }
    elems.sort_unstable();
    Ok(g.generate(&elems))
}

/// `k[G/H]` on the cosets, ordered by their minimal elements.
pub fn perm_module(g: &Arc<PermGroup>, h: &Subgroup, field: &Arc<GaloisField>) -> Representation {
    let action = CosetAction::new(g, h);
    let n = action.index();
    let images = g
        .generator_indices()
        .iter()
        .map(|&x| {
            let mut m = FFMatrix::zeros(field, n, n);
            for i in 0..n {
                m.set(action.act(g, x, i), i, 1);
            }
            m
        })
        .collect();
    Representation::new(g.clone(), field.clone(), n, images, Provenance::Permutation(h.clone())).unwrap()
}

pub fn regular_module(g: &Arc<PermGroup>, field: &Arc<GaloisField>) -> Representation {
    perm_module(g, &g.trivial(), field)
}

pub fn direct_sum(m: &Representation, n: &Representation) -> Result<Representation> {
    m.check_same(n)?;
    let d = m.dim() + n.dim();
    let images = m
        .generator_images()
        .iter()
        .zip(n.generator_images())
        .map(|(a, b)| {
            let mut out = FFMatrix::zeros(m.field(), d, d);
            out.set_block(0, 0, a);
            out.set_block(m.dim(), m.dim(), b);
            out
        })
        .collect();
    Representation::new(m.group().clone(), m.field().clone(), d, images, Provenance::DirectSum)
}

/// Restriction to a group whose elements all lie in the acting group.
pub fn restrict(m: &Representation, sub: &Arc<PermGroup>) -> Result<Representation> {
    let g = m.group();
    let images = sub
        .generators()
        .iter()
        .map(|p| {
            g.index_of(p)
                .map(|i| m.image(i).clone())
                .ok_or_else(|| Error::DimensionMismatch(format!("{p} is not in {}", g.name())))
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(sub.clone(), m.field().clone(), m.dim(), images, Provenance::Restricted)
}

/// Induction from the acting group of `m` (a subgroup of `g`) to `g`, using the
/// transversal of minimal coset representatives.
pub fn induce(m: &Representation, g: &Arc<PermGroup>, dim_cap: usize) -> Result<Representation> {
    let h = m.group();
    let s = embed(g, h)?;
    let action = CosetAction::new(g, &s);
    let r = action.index();
    let d = m.dim();
    check_cap(r * d, dim_cap)?;
    let images = g
        .generator_indices()
        .iter()
        .map(|&x| {
            let mut out = FFMatrix::zeros(m.field(), r * d, r * d);
            for i in 0..r {
                let (j, hx) = action.decompose(g, x, i);
                let hi = h.index_of(g.element(hx)).expect("coset decomposition lands in H");
                out.set_block(j * d, i * d, m.image(hi));
            }
            out
        })
        .collect();
    Representation::new(g.clone(), m.field().clone(), r * d, images, Provenance::Induced)
}

/// Inflation of a module for `G/N` along the projection.
pub fn inflate(m: &Representation, g: &Arc<PermGroup>, q: &QuotientMap) -> Result<Representation> {
    if m.group().elements() != q.group.elements() {
        return Err(Error::DimensionMismatch("module is not over the quotient group".into()));
    }
    let images = g.generator_indices().iter().map(|&x| m.image(q.projection[x]).clone()).collect();
    Representation::new(g.clone(), m.field().clone(), m.dim(), images, Provenance::Inflated)
}

/// Inner tensor product over `k` (Kronecker products of the actions).
pub fn tensor(m: &Representation, n: &Representation, dim_cap: usize) -> Result<Representation> {
    m.check_same(n)?;
    check_cap(m.dim() * n.dim(), dim_cap)?;
    let images = m.generator_images().iter().zip(n.generator_images()).map(|(a, b)| a.kron(b)).collect();
    Representation::new(m.group().clone(), m.field().clone(), m.dim() * n.dim(), images, Provenance::Tensor)
}

/// Contragredient module `M* = Hom_k(M, k)`.
pub fn dual(m: &Representation) -> Representation {
    let g = m.group();
    let images = g
        .generator_indices()
        .iter()
        .map(|&x| m.image(g.inv(x)).transpose())
        .collect();
    Representation::new(g.clone(), m.field().clone(), m.dim(), images, Provenance::Custom).unwrap()
}

/// Tensor induction: `G` acts on `⊗_i t_i ⊗ M` over the transversal
/// `t_1..t_r`, with `x t_i = t_j h` sending factor `i` to factor `j`
/// twisted by `h`.
pub fn tensor_induce(m: &Representation, g: &Arc<PermGroup>, dim_cap: usize) -> Result<Representation> {
    let h = m.group();
    let s = embed(g, h)?;
    let action = CosetAction::new(g, &s);
    let r = action.index();
    let d = m.dim();
    let total = (d as u64).checked_pow(r as u32).filter(|&t| t <= dim_cap as u64).ok_or(
        Error::DimensionCapExceeded { dim: d.saturating_pow(r as u32), cap: dim_cap },
    )? as usize;
    let f = m.field().clone();
    let images = g
        .generator_indices()
        .iter()
        .map(|&x| {
            // factor i goes to position sigma[i] with twist twist[i]
            let mut sigma = vec![0; r];
            let mut twist = Vec::with_capacity(r);
            for (i, s) in sigma.iter_mut().enumerate() {
                let (j, hx) = action.decompose(g, x, i);
                *s = j;
                twist.push(m.image(h.index_of(g.element(hx)).unwrap()));
            }
            let mut out = FFMatrix::zeros(&f, total, total);
            // input multi-index a (factor 0 most significant), output b
            let mut a = vec![0usize; r];
            for col in 0..total {
                let mut rem = col;
                for i in (0..r).rev() {
                    a[i] = rem % d;
                    rem /= d;
                }
                // image of basis tensor: ⊗ over output positions j of column a[i] of twist[i]
                // enumerate all output multi-indices with nonzero coefficient
                let mut entries: Vec<(usize, u8)> = vec![(0, 1)];
                let mut inverse_sigma = vec![0; r];
                for i in 0..r {
                    inverse_sigma[sigma[i]] = i;
                }
                for &i in inverse_sigma.iter() {
                    let mut next = Vec::new();
                    for &(idx, c) in &entries {
                        for b in 0..d {
                            let v = twist[i].get(b, a[i]);
                            if v != 0 {
                                next.push((idx * d + b, f.mul(c, v)));
                            }
                        }
                    }
                    entries = next;
                }
                for (row, c) in entries {
                    out.set(row, col, c);
                }
            }
            out
        })
        .collect();
    Representation::new(g.clone(), f, total, images, Provenance::TensorInduced)
}
