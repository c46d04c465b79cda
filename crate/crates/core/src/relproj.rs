//! Relative projectivity, vertices and sources, quotient hom spaces.

use alloc::vec::Vec;
use alloc::format;

use crate::decomp::{decompose, is_direct_summand, is_summand_indecomposable, EndAlgebra};
use crate::error::{Error, Result};
use crate::functors::{counit, induce, restrict};
use crate::groups::{coset_reps, subgroups_up_to_conjugacy, sylow_subgroup, CosetSide, Subgroup, SubgroupFamily};
use crate::linalg::{Echelon, FpMatrix};
use crate::reps::{
    dual, free_presentation, hom_space, is_split, kernel, tensor, GModule, ModuleHom, ShortExactSeq,
};

/// Outcome of a relative projectivity test.
#[derive(Clone, Debug)]
pub struct RelProj {
    pub projective: bool,
    /// An `H`-endomorphism `f` of `res M` with `Tr_H^G(f) = id`.
    pub trace_preimage: Option<FpMatrix>,
}

/// The `E`-coordinates of `Tr_H^G(f)` for every `f` in a basis of
/// `End_H(res M)`, read off at the pivot entries only.
fn trace_coordinates(m: &GModule, h: &Subgroup, alg: &EndAlgebra) -> Result<(Vec<FpMatrix>, FpMatrix)> {
    let p = m.prime();
    let g = h.parent();
    let n = m.dim();
    let local = hom_space(&restrict(m, h)?, &restrict(m, h)?)?;
    let reps = coset_reps(g, h, CosetSide::Left);
    let pivots: Vec<(usize, usize)> = alg.pivot_positions().iter().map(|&c| (c / n, c % n)).collect();
    let mut coords = FpMatrix::zeros(p, alg.dim(), local.len());
    for &r in &reps {
        let a = m.action(r);
        let ai = m.action(g.inv(r));
        for (c, f) in local.iter().enumerate() {
            let fa = f.matrix() * ai;
            for (k, &(row, col)) in pivots.iter().enumerate() {
                let mut s = 0u32;
                for t in 0..n {
                    let x = a.get(row, t);
                    if x != 0 {
                        s = p.add(s, p.mul(x, fa.get(t, col)));
                    }
                }
                coords.set(k, c, p.add(coords.get(k, c), s));
            }
        }
    }
    Ok((local.into_iter().map(ModuleHom::into_matrix).collect(), coords))
}

/// Higman's criterion: `M` is relatively `H`-projective iff `id_M` is a
/// relative trace from `H`.
pub fn is_relatively_projective(m: &GModule, h: &Subgroup) -> Result<RelProj> {
    let alg = EndAlgebra::new(m)?;
    is_relatively_projective_in(m, h, &alg)
}

pub(crate) fn is_relatively_projective_in(m: &GModule, h: &Subgroup, alg: &EndAlgebra) -> Result<RelProj> {
    if m.dim() == 0 {
        return Ok(RelProj { projective: true, trace_preimage: Some(FpMatrix::zeros(m.prime(), 0, 0)) });
    }
    if !m.group().same_as(h.parent()) {
        return Err(Error::NotSubgroup("subgroup does not live in the module's group".into()));
    }
    let (local, coords) = trace_coordinates(m, h, alg)?;
    let target = alg.identity_coords();
    let Some(c) = coords.solve(&target)? else {
        return Ok(RelProj { projective: false, trace_preimage: None });
    };
    let p = m.prime();
    let n = m.dim();
    let mut f = FpMatrix::zeros(p, n, n);
    for (b, &ci) in local.iter().zip(&c) {
        if ci != 0 {
            f.add_scaled(ci, b);
        }
    }
    Ok(RelProj { projective: true, trace_preimage: Some(f) })
}

/// The split route: the counit `ind res M → M` splits.
pub fn is_relatively_projective_split(m: &GModule, h: &Subgroup) -> Result<Option<ModuleHom>> {
    let (_, eps) = counit(m, h)?;
    let (_, ker) = kernel(&eps);
    is_split(&ShortExactSeq::new(ker, eps)?)
}

/// Runs both routes and insists that they agree.
pub fn is_relatively_projective_checked(m: &GModule, h: &Subgroup) -> Result<RelProj> {
    let trace = is_relatively_projective(m, h)?;
    let split = is_relatively_projective_split(m, h)?;
    if trace.projective != split.is_some() {
        return Err(Error::InternalConsistency(format!(
            "trace route says {} but the counit {} (module dim {}, subgroup order {})",
            trace.projective,
            if split.is_some() { "splits" } else { "does not split" },
            m.dim(),
            h.order()
        )));
    }
    Ok(trace)
}

/// A vertex with a source and the subgroups used to certify minimality.
#[derive(Clone, Debug)]
pub struct VertexResult {
    pub vertex: Subgroup,
    /// Number of `G`-conjugates of the vertex.
    pub class_size: usize,
    /// An indecomposable module over `vertex.group()`.
    pub source: GModule,
    /// `H`-endomorphism whose relative trace is the identity.
    pub trace_preimage: FpMatrix,
    /// Maximal subgroups of the vertex (up to conjugacy) relative to which
    /// the module is not projective.
    pub checked_maximal: Vec<Subgroup>,
}

/// Maximal subgroups (index `p`) of a `p`-group `d` up to conjugacy in
/// `d`, as subgroups of `d.parent()`.
pub fn maximal_subgroup_classes(d: &Subgroup) -> Result<Vec<Subgroup>> {
    if d.is_trivial() {
        return Ok(Vec::new());
    }
    let local = d.group();
    let p = (2..=d.order()).find(|q| d.order() % q == 0).expect("nontrivial order");
    subgroups_up_to_conjugacy(local)
        .into_iter()
        .filter(|(s, _)| s.order() * p == d.order())
        .map(|(s, _)| s.transfer(d.parent()))
        .collect()
}

/// Vertex by descent from a Sylow subgroup; at each step the module is
/// tested against every maximal subgroup class of the current candidate,
/// so the final candidate is certified minimal.
pub fn vertex_and_source(m: &GModule) -> Result<VertexResult> {
    check_indecomposable(m)?;
    let (vertex, trace_preimage, checked_maximal) = descend(m)?;
    let g = m.group();
    let class_size = subgroups_up_to_conjugacy(g)
        .into_iter()
        .find(|(s, _)| crate::groups::is_conjugate(g, s, &vertex).is_some())
        .map(|(_, c)| c)
        .unwrap_or(1);
    let source = find_source(m, &vertex)?;
    Ok(VertexResult { vertex, class_size, source, trace_preimage, checked_maximal })
}

/// Just the vertex, without searching for a source.
pub fn vertex(m: &GModule) -> Result<Subgroup> {
    check_indecomposable(m)?;
    Ok(descend(m)?.0)
}

/// Vertex of a module already known to be indecomposable, such as a factor
/// of a decomposition.
pub(crate) fn vertex_unchecked(m: &GModule) -> Result<Subgroup> {
    Ok(descend(m)?.0)
}

/// Whether the indecomposable `M` has vertex conjugate to the `p`-subgroup
/// `d`: relatively `d`-projective but not projective relative to any
/// maximal subgroup of `d`.
pub fn has_vertex(m: &GModule, d: &Subgroup) -> Result<bool> {
    let alg = EndAlgebra::new(m)?;
    if !is_relatively_projective_in(m, d, &alg)?.projective {
        return Ok(false);
    }
    for q in maximal_subgroup_classes(d)? {
        if is_relatively_projective_in(m, &q, &alg)?.projective {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_indecomposable(m: &GModule) -> Result<()> {
    if m.dim() == 0 {
        return Err(Error::Precondition("zero module has no vertex".into()));
    }
    if !crate::decomp::is_indecomposable(m)?.is_indecomposable() {
        return Err(Error::Precondition("vertices are defined for indecomposable modules".into()));
    }
    Ok(())
}

fn descend(m: &GModule) -> Result<(Subgroup, FpMatrix, Vec<Subgroup>)> {
    let g = m.group();
    let p = m.prime().get();
    let alg = EndAlgebra::new(m)?;
    let mut current = sylow_subgroup(g, p);
    let mut preimage = is_relatively_projective_in(m, &current, &alg)?
        .trace_preimage
        .ok_or_else(|| Error::InternalConsistency("module is not relatively Sylow-projective".into()))?;
    loop {
        let maximal = maximal_subgroup_classes(&current)?;
        let mut next = None;
        for q in &maximal {
            if let Some(f) = is_relatively_projective_in(m, q, &alg)?.trace_preimage {
                next = Some((q.clone(), f));
                break;
            }
        }
        match next {
            Some((q, f)) => {
                current = q;
                preimage = f;
            }
            None => return Ok((current, preimage, maximal)),
        }
    }
}

/// An indecomposable summand `L` of `res_D M` with `M | ind_D^G L`.
pub fn find_source(m: &GModule, d: &Subgroup) -> Result<GModule> {
    let res = restrict(m, d)?;
    for f in decompose(&res)?.factors {
        let ind = induce(&f.module, d)?;
        if is_summand_indecomposable(m, &ind.module)? {
            return Ok(f.module);
        }
    }
    Err(Error::InternalConsistency("no summand of the restriction to the vertex induces back onto the module".into()))
}

/// `Hom(M, N)` modulo the maps that are relative traces from subgroups in a
/// family.
#[derive(Clone, Debug)]
pub struct QuotientHomSpace {
    pub full_dim: usize,
    pub ideal_dim: usize,
    pub quotient_dim: usize,
    pub quotient_basis: Vec<ModuleHom>,
    pub ideal_basis: Vec<FpMatrix>,
}

/// Quotient by `Σ_X Im Tr_X^G` over the given subgroups of the common group.
pub fn quotient_hom(m: &GModule, n: &GModule, subgroups: &[Subgroup]) -> Result<QuotientHomSpace> {
    m.check_same_ring(n)?;
    let full = hom_space(m, n)?;
    let p = m.prime();
    let mut ideal = Echelon::new(p, m.dim() * n.dim());
    let mut ideal_basis = Vec::new();
    for x in subgroups {
        let x = x.transfer(m.group())?;
        for t in crate::functors::trace_image(m, n, &x)? {
            if ideal.insert(&t.matrix().vectorize()) {
                ideal_basis.push(t.into_matrix());
            }
        }
    }
    let ideal_dim = ideal.dim();
    let mut quotient_basis = Vec::new();
    for f in full.iter() {
        if ideal.insert(&f.matrix().vectorize()) {
            quotient_basis.push(f.clone());
        }
    }
    if ideal.dim() != full.len() {
        return Err(Error::InternalConsistency("trace images are not contained in the hom space".into()));
    }
    Ok(QuotientHomSpace {
        full_dim: full.len(),
        ideal_dim,
        quotient_dim: full.len() - ideal_dim,
        quotient_basis,
        ideal_basis,
    })
}

/// [`quotient_hom`] over the maximal members of a family; the members are
/// re-expressed inside the module's group.
pub fn quotient_hom_family(m: &GModule, n: &GModule, family: &SubgroupFamily) -> Result<QuotientHomSpace> {
    quotient_hom(m, n, family.maximal_members())
}

/// Span of the maps `M → W → N`, from the two hom bases.
pub fn factor_through_add(m: &GModule, n: &GModule, w: &GModule) -> Result<Vec<FpMatrix>> {
    m.check_same_ring(n)?;
    m.check_same_ring(w)?;
    let gs = hom_space(m, w)?;
    let hs = hom_space(w, n)?;
    let mut span = Echelon::new(m.prime(), m.dim() * n.dim());
    let mut out = Vec::new();
    for h in &hs {
        for g in &gs {
            let x = h.matrix() * g.matrix();
            if span.insert(&x.vectorize()) {
                out.push(x);
            }
        }
    }
    Ok(out)
}

/// `M` is a direct summand of `W ⊗ W* ⊗ M`.
pub fn is_w_projective(m: &GModule, w: &GModule) -> Result<bool> {
    m.check_same_ring(w)?;
    if m.dim() == 0 {
        return Ok(true);
    }
    let big = tensor(w, &tensor(&dual(w), m)?)?;
    is_direct_summand(m, &big)
}

/// One target of the Ext¹ restriction check.
#[derive(Clone, Debug)]
pub struct Ext1Restriction {
    pub ext_g: usize,
    pub ext_h: usize,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug)]
pub struct Ext1RestrictionReport {
    pub relatively_projective: bool,
    pub entries: Vec<Ext1Restriction>,
}

impl Ext1RestrictionReport {
    pub fn all_injective(&self) -> bool {
        self.entries.iter().all(|e| e.kernel_dim == 0)
    }
}

fn span_of(p: crate::linalg::Prime, len: usize, mats: impl IntoIterator<Item = FpMatrix>) -> Echelon {
    let mut e = Echelon::new(p, len);
    for m in mats {
        e.insert(&m.vectorize());
    }
    e
}

/// Kernel of `Ext¹_G(M, N) → Ext¹_H(res M, res N)` for each target, both
/// sides computed from the same free presentation (restricted to `H` it is
/// still free).
pub fn ext1_restriction_injectivity_check(m: &GModule, h: &Subgroup, targets: &[GModule]) -> Result<Ext1RestrictionReport> {
    let rel = is_relatively_projective(m, h)?.projective;
    let pres = free_presentation(m);
    let omega = pres.left().clone();
    let free = pres.middle().clone();
    let incl = pres.sub().matrix().clone();
    let (res_omega, res_free) = (restrict(&omega, h)?, restrict(&free, h)?);
    let mut entries = Vec::new();
    for n in targets {
        m.check_same_ring(n)?;
        let p = n.prime();
        let len = n.dim() * omega.dim();
        let res_n = restrict(n, h)?;
        let a: Vec<FpMatrix> = hom_space(&omega, n)?.into_iter().map(ModuleHom::into_matrix).collect();
        let b_g = span_of(p, len, hom_space(&free, n)?.iter().map(|f| f.matrix() * &incl));
        let b_h = span_of(p, len, hom_space(&res_free, &res_n)?.iter().map(|f| f.matrix() * &incl));
        let hom_h = hom_space(&res_omega, &res_n)?.len();
        let a_span = span_of(p, len, a.iter().cloned());
        let mut sum = b_h.clone();
        for x in &a {
            sum.insert(&x.vectorize());
        }
        let intersection = a_span.dim() + b_h.dim() - sum.dim();
        let kernel_dim = intersection - b_g.dim();
        entries.push(Ext1Restriction { ext_g: a_span.dim() - b_g.dim(), ext_h: hom_h - b_h.dim(), kernel_dim });
    }
    let report = Ext1RestrictionReport { relatively_projective: rel, entries };
    if rel && !report.all_injective() {
        return Err(Error::InternalConsistency(
            "relatively projective module with non-injective Ext¹ restriction".into(),
        ));
    }
    Ok(report)
}

/// Subgroups of `G` relative to which `M` is projective, one per class.
pub fn projectivity_profile(m: &GModule, subgroups: &[Subgroup]) -> Result<Vec<bool>> {
    let alg = EndAlgebra::new(m)?;
    subgroups.iter().map(|h| Ok(is_relatively_projective_in(m, h, &alg)?.projective)).collect()
}
