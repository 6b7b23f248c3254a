//! Relative projectivity, vertices and the trivial-source test.

use std::sync::Arc;

use serde::Serialize;

use super::construct::{perm_module, restrict};
use super::decompose::Indecomposable;
use super::hom::hom_by_spinning;
use super::rep::Representation;
use crate::error::Result;
use crate::group::{is_r_group, sylow_subgroup, CosetAction, PermGroup, Subgroup};
use crate::linalg::{ff_solve, FFMatrix};

/// Outcome of the Higman criterion for `H ≤ G`.
#[derive(Debug, Clone)]
pub struct HigmanResult {
    pub projective: bool,
    /// `ψ ∈ End_kH(M)` with `Tr_H^G(ψ) = id`, when one was computed. The
    /// projectivity test relative to the trivial subgroup uses ranks of
    /// Sylow norms and produces no endomorphism.
    pub certificate: Option<FFMatrix>,
}

/// `Tr_H^G(φ) = Σ_{t ∈ G/H} M(t) φ M(t)⁻¹` over the sorted transversal.
pub fn relative_trace(m: &Representation, h: &Subgroup, phi: &FFMatrix) -> FFMatrix {
    let g = m.group();
    let action = CosetAction::new(g, h);
    let mut acc = FFMatrix::zeros(m.field(), m.dim(), m.dim());
    for &t in &action.transversal {
        acc = acc.add(&m.image(t).mul(phi).mul(m.image(g.inv(t))));
    }
    acc
}

/// Projectivity: the restriction to a Sylow `p`-subgroup `P` is free iff the
/// norm `Σ_{x∈P} x` has rank `dim M / |P|`.
pub fn is_projective(m: &Representation) -> bool {
    let g = m.group();
    let p = m.field().characteristic();
    let sylow = sylow_subgroup(g, p);
    if !m.dim().is_multiple_of(sylow.order()) {
        return false;
    }
    let mut norm = FFMatrix::zeros(m.field(), m.dim(), m.dim());
    for &x in sylow.elements() {
        norm = norm.add(m.image(x));
    }
    norm.rank() == m.dim() / sylow.order()
}

fn subgroup_group(g: &PermGroup, h: &Subgroup) -> Arc<PermGroup> {
    Arc::new(g.subgroup_as_group(h))
}

/// Higman's criterion: `M` is relatively `H`-projective iff `id_M` is a
/// relative trace from `H`.
pub fn higman_projective(m: &Representation, h: &Subgroup) -> Result<HigmanResult> {
    let g = m.group();
    if h.order() == g.order() {
        return Ok(HigmanResult { projective: true, certificate: Some(FFMatrix::identity(m.field(), m.dim())) });
    }
    if h.order() == 1 {
        return Ok(HigmanResult { projective: is_projective(m), certificate: None });
    }
    let res = restrict(m, &subgroup_group(g, h))?;
    let basis = hom_by_spinning(&res, &res);
    let n = m.dim();
    let traces: Vec<Vec<u8>> = basis.iter().map(|phi| relative_trace(m, h, phi).to_vec()).collect();
    if traces.is_empty() {
        return Ok(HigmanResult { projective: n == 0, certificate: None });
    }
    let a = FFMatrix::from_columns(m.field(), n * n, &traces);
    let b = FFMatrix::from_columns(m.field(), n * n, &[FFMatrix::identity(m.field(), n).to_vec()]);
    let sol = ff_solve(&a, &b)?;
    let certificate = sol.particular.map(|c| {
        let mut psi = FFMatrix::zeros(m.field(), n, n);
        for (j, phi) in basis.iter().enumerate() {
            psi.add_scaled(c.get(j, 0), phi);
        }
        psi
    });
    Ok(HigmanResult { projective: certificate.is_some(), certificate })
}

/// Vertex data for a certified indecomposable.
#[derive(Debug, Clone, Serialize)]
pub struct VertexReport {
    /// Element indices of the vertex (a conjugacy-class representative).
    pub vertex: Vec<usize>,
    pub vertex_order: usize,
    pub trivial_source: bool,
    /// 1 for trivial-source modules; otherwise unknown.
    pub source_dim: Option<usize>,
    #[serde(skip)]
    pub higman: Option<FFMatrix>,
}

impl VertexReport {
    pub fn vertex_subgroup(&self, g: &PermGroup) -> Subgroup {
        g.generate(&self.vertex)
    }
}

/// Scans `p`-subgroup class representatives by increasing order; the first
/// one relative to which `M` is projective is a vertex.
pub fn vertex(u: &Indecomposable) -> Result<VertexReport> {
    let m = u.module();
    let g = m.group();
    let p = m.field().characteristic();
    let reps: Vec<Subgroup> =
        g.lattice()?.representatives().iter().filter(|s| is_r_group(s, p)).cloned().collect();
    for h in reps {
        let res = higman_projective(m, &h)?;
        if res.projective {
            let trivial_source = has_trivial_source(u, &h)?;
            return Ok(VertexReport {
                vertex: h.elements().to_vec(),
                vertex_order: h.order(),
                trivial_source,
                source_dim: trivial_source.then_some(1),
                higman: res.certificate,
            });
        }
    }
    unreachable!("every module is projective relative to a Sylow subgroup")
}

/// `U | k[G/D]` for the given vertex `D`.
pub fn has_trivial_source(u: &Indecomposable, vertex: &Subgroup) -> Result<bool> {
    let perm = perm_module(u.module().group(), vertex, u.module().field());
    Ok(u.multiplicity_in(&perm)? > 0)
}
