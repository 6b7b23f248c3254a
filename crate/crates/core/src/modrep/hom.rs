//! Spaces of module homomorphisms.
//!
//! A homomorphism is determined by the images of a set of module
//! generators, so we spin a basis of the source from generator vectors and
//! solve only for those images; relations come from the Cayley-graph edges
//! that leave the spanning tree.

use super::rep::{Provenance, Representation};
use crate::error::Result;
use crate::group::{CosetAction, PermGroup, Subgroup};
use crate::linalg::{FFMatrix, Fe, GaloisField, RowEchelon};
use std::sync::Arc;

/// A basis of the source built by spinning, remembering how each vector arose.
struct Spin {
    basis: Vec<Vec<Fe>>,
    /// `(seed index, parent, generator)`; parent is `None` for seeds.
    origin: Vec<(usize, Option<(usize, usize)>)>,
    /// Edges `(j, gen)` whose image was already in the span.
    closing: Vec<(usize, usize)>,
    seeds: usize,
}

fn spin(m: &Representation) -> Spin {
    let d = m.dim();
    let f = m.field();
    let mut ech = RowEchelon::new(f, d);
    let mut s = Spin { basis: Vec::new(), origin: Vec::new(), closing: Vec::new(), seeds: 0 };
    let mut next = 0;
    while s.basis.len() < d {
        // fresh seed: first unit vector outside the span
        let e = (0..d)
            .map(|i| {
                let mut v = vec![0; d];
                v[i] = 1;
                v
            })
            .find(|v| !ech.contains(v))
            .expect("span is proper");
        ech.insert(e.clone());
        s.basis.push(e);
        s.origin.push((s.seeds, None));
        s.seeds += 1;
        while next < s.basis.len() {
            for (gi, a) in m.generator_images().iter().enumerate() {
                let v = a.mul_vec(&s.basis[next]);
                if ech.insert(v.clone()).is_none() {
                    s.basis.push(v);
                    let seed = s.origin[next].0;
                    s.origin.push((seed, Some((next, gi))));
                } else {
                    s.closing.push((next, gi));
                }
            }
            next += 1;
        }
    }
    s
}

/// Basis of `Hom_kG(M, N)` as `dim N × dim M` matrices.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<FFMatrix>> {
    m.check_same(n)?;
    if let (Provenance::Permutation(h), Provenance::Permutation(k)) = (m.provenance(), n.provenance()) {
        return Ok(perm_hom_basis(m.group(), h, k, m.field()));
    }
    Ok(hom_by_spinning(m, n))
}

pub(crate) fn hom_by_spinning(m: &Representation, n: &Representation) -> Vec<FFMatrix> {
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Vec::new();
    }
    let s = spin(m);
    let width = s.seeds * dn;
    // image of basis vector j is blocks[j] applied to the unknowns of its seed
    let mut blocks: Vec<FFMatrix> = Vec::with_capacity(dm);
    for &(_, parent) in &s.origin {
        let b = match parent {
            None => FFMatrix::identity(f, dn),
            Some((j, gi)) => n.generator_images()[gi].mul(&blocks[j]),
        };
        blocks.push(b);
    }
    let bmat = FFMatrix::from_columns(f, dm, &s.basis);
    let binv = bmat.inverse().expect("spun vectors form a basis");
    let mut ech = RowEchelon::new(f, width);
    let field = &**f;
    for &(j, gi) in &s.closing {
        if ech.is_full() {
            break;
        }
        let coords = binv.mul_vec(&m.generator_images()[gi].mul_vec(&s.basis[j]));
        // sum_l c_l blocks[l] - N(g) blocks[j] = 0, block by seed
        let mut rows = FFMatrix::zeros(f, dn, width);
        let mut acc = |seed: usize, c: Fe, b: &FFMatrix| {
            for r in 0..dn {
                for col in 0..dn {
                    let x = b.get(r, col);
                    if x != 0 {
                        let cur = rows.get(r, seed * dn + col);
                        rows.set(r, seed * dn + col, field.add(cur, field.mul(c, x)));
                    }
                }
            }
        };
        for (l, &c) in coords.iter().enumerate() {
            if c != 0 {
                acc(s.origin[l].0, c, &blocks[l]);
            }
        }
        let gj = n.generator_images()[gi].mul(&blocks[j]);
        acc(s.origin[j].0, field.neg(1), &gj);
        for r in 0..dn {
            let row = rows.row(r);
            if row.iter().any(|&x| x != 0) {
                ech.insert(row.to_vec());
                if ech.is_full() {
                    break;
                }
            }
        }
    }
    let kernel = if ech.rank() == 0 {
        (0..width)
            .map(|i| {
                let mut v = vec![0; width];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        FFMatrix::from_rows(f, ech.rows()).kernel()
    };
    kernel
        .into_iter()
        .map(|u| {
            let cols: Vec<Vec<Fe>> = s
                .origin
                .iter()
                .zip(&blocks)
                .map(|(&(seed, _), b)| b.mul_vec(&u[seed * dn..(seed + 1) * dn]))
                .collect();
            FFMatrix::from_columns(f, dn, &cols).mul(&binv)
        })
        .collect()
}

/// `End_kG(M)`.
pub fn end_space(m: &Representation) -> Result<Vec<FFMatrix>> {
    hom_space(m, m)
}

/// Double-coset basis of `Hom_kG(k[G/H], k[G/K])`: for each double coset
/// `D = K x H`, the map sending the coset `tH` to the sum of the cosets
/// `sK` with `s⁻¹t ∈ D`.
pub fn perm_hom_basis(g: &Arc<PermGroup>, h: &Subgroup, k: &Subgroup, field: &Arc<GaloisField>) -> Vec<FFMatrix> {
    let src = CosetAction::new(g, h);
    let dst = CosetAction::new(g, k);
    let n = g.order();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    for x in 0..n {
        if label[x] != usize::MAX {
            continue;
        }
        for &a in k.elements() {
            for &b in h.elements() {
                label[g.mul(g.mul(a, x), b)] = count;
            }
        }
        count += 1;
    }
    let mut mats = vec![FFMatrix::zeros(field, dst.index(), src.index()); count];
    for (i, &s) in dst.transversal.iter().enumerate() {
        let si = g.inv(s);
        for (j, &t) in src.transversal.iter().enumerate() {
            mats[label[g.mul(si, t)]].set(i, j, 1);
        }
    }
    mats
}

/// Checks `X M(g) = N(g) X` on generators.
pub fn is_hom(x: &FFMatrix, m: &Representation, n: &Representation) -> bool {
    m.generator_images().iter().zip(n.generator_images()).all(|(a, b)| x.mul(a) == b.mul(x))
}
