//! Green correspondence between `kG`-modules and `kH`-modules with vertex
//! `D`, for `N_G(D) <= H`, together with the checks built around it.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::decomp::{decompose, is_direct_summand, is_indecomposable, is_isomorphic, iso_indecomposable, multiplicity_in};
use crate::error::{Error, Result};
use crate::functors::{induce, restrict, ts_decomposition_check};
use crate::groups::{family_x, family_y, is_conjugate, normalizer, subgroups_up_to_conjugacy, Group, Perm, Subgroup, SubgroupFamily};
use crate::linalg::{FpMatrix, Prime};
use crate::relproj::{
    has_vertex, is_relatively_projective, is_relatively_projective_split, quotient_hom, vertex, vertex_unchecked,
};
use crate::reps::{regular_module, trivial_module, GModule};

/// The data `(G, p, D, H)` of a Green correspondence together with the
/// families `𝔛` and `𝔜`.
#[derive(Clone, Debug)]
pub struct GreenContext {
    g: Group,
    p: Prime,
    d: Subgroup,
    h: Subgroup,
    d_in_h: Subgroup,
    x_family: SubgroupFamily,
    y_family: SubgroupFamily,
    sources: Option<Vec<GModule>>,
}

impl GreenContext {
    /// Checks that `d` is a `p`-subgroup and `N_G(D) <= H`.
    pub fn new(g: &Group, p: Prime, d: Subgroup, h: Subgroup) -> Result<Self> {
        if !d.parent().same_as(g) || !h.parent().same_as(g) {
            return Err(Error::GroupMismatch);
        }
        if !d.is_p_group(p.get()) {
            return Err(Error::Precondition(format!("D has order {}, not a power of {}", d.order(), p.get())));
        }
        if !d.is_subgroup_of(&h) {
            return Err(Error::NotSubgroup("D is not contained in H".into()));
        }
        let nd = normalizer(g, &d);
        if !nd.is_subgroup_of(&h) {
            return Err(Error::Precondition(format!(
                "N_G(D) has order {} and is not contained in H (order {})",
                nd.order(),
                h.order()
            )));
        }
        let d_in_h = d.transfer(h.group())?;
        let x_family = family_x(g, &h, &d);
        let y_family = family_y(g, &h, &d);
        Ok(GreenContext { g: g.clone(), p, d, h, d_in_h, x_family, y_family, sources: None })
    }

    /// Supplies the `kD`-modules used to enumerate vertex-`D` modules when
    /// `D` is not cyclic.
    pub fn with_sources(mut self, sources: Vec<GModule>) -> Result<Self> {
        for s in &sources {
            if !s.group().same_as(self.d.group()) || s.prime() != self.p {
                return Err(Error::GroupMismatch);
            }
        }
        self.sources = Some(sources);
        Ok(self)
    }

    pub fn group(&self) -> &Group {
        &self.g
    }
    pub fn prime(&self) -> Prime {
        self.p
    }
    pub fn d(&self) -> &Subgroup {
        &self.d
    }
    pub fn h(&self) -> &Subgroup {
        &self.h
    }
    /// `D` as a subgroup of `H`.
    pub fn d_in_h(&self) -> &Subgroup {
        &self.d_in_h
    }
    pub fn x_family(&self) -> &SubgroupFamily {
        &self.x_family
    }
    pub fn y_family(&self) -> &SubgroupFamily {
        &self.y_family
    }

    /// The `kD`-modules whose inductions are searched for vertex-`D`
    /// summands: supplied ones, or all Jordan blocks for cyclic `D`.
    pub fn sources(&self) -> Result<Vec<GModule>> {
        match &self.sources {
            Some(s) => Ok(s.clone()),
            None => jordan_block_modules(&self.d, self.p),
        }
    }

    fn members_x(&self) -> Vec<Subgroup> {
        self.x_family.maximal_members().to_vec()
    }

    fn members_y_in_h(&self) -> Result<Vec<Subgroup>> {
        self.y_family.maximal_members().iter().map(|y| y.transfer(self.h.group())).collect()
    }
}

/// The indecomposable modules of a cyclic `p`-group: unipotent Jordan
/// blocks `J_1, ..., J_n` for a generator, `n = |C|`.
pub fn jordan_block_modules(c: &Subgroup, p: Prime) -> Result<Vec<GModule>> {
    if !c.is_p_group(p.get()) {
        return Err(Error::Precondition("Jordan blocks need a p-group".into()));
    }
    let grp = c.group();
    let n = grp.order();
    let one = grp.position(&Perm::identity(grp.degree())).expect("identity");
    let mut exponent = vec![usize::MAX; n];
    let generator = (0..n)
        .find(|&x| {
            exponent.iter_mut().for_each(|e| *e = usize::MAX);
            let mut cur = one;
            for k in 0..n {
                exponent[cur] = k;
                cur = grp.mul(x, cur);
            }
            exponent.iter().all(|&e| e != usize::MAX)
        })
        .ok_or_else(|| Error::Precondition(format!("subgroup of order {n} is not cyclic")))?;
    debug_assert!(generator < n);
    let mut out = Vec::with_capacity(n);
    for size in 1..=n {
        let jordan = FpMatrix::from_fn(p, size, size, |i, j| u32::from(i == j || j == i + 1));
        let powers: Vec<FpMatrix> = (0..n).map(|k| jordan.pow(k as u64).expect("square")).collect();
        out.push(GModule::from_fn_unchecked(grp, p, size, |g| {
            powers[exponent[grp.position(g).expect("element of the subgroup")]].clone()
        }));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `f = res^G_H`, non-correspondent vertices in `𝔜`.
    Restrict,
    /// `g = ind_H^G`, non-correspondent vertices in `𝔛`.
    Induce,
}

/// An indecomposable factor together with its vertex.
#[derive(Clone, Debug)]
pub struct FactorVertex {
    pub module: GModule,
    pub vertex: Subgroup,
    pub in_family: bool,
}

#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub direction: Direction,
    pub input: GModule,
    pub correspondent: GModule,
    pub correspondent_vertex: Subgroup,
    pub other_factors: Vec<FactorVertex>,
    /// Filled in by [`verify_roundtrip`].
    pub roundtrip: Option<bool>,
}

impl CorrespondenceReport {
    /// Non-correspondent factors whose vertex is outside the family.
    pub fn family_violations(&self) -> usize {
        self.other_factors.iter().filter(|f| !f.in_family).count()
    }
}

fn describe_factor(m: &GModule, v: &Subgroup) -> String {
    format!("dim {} generators {:?} vertex members {:?}", m.dim(), m.generator_matrices(), v.members())
}

fn classify(
    ctx: &GreenContext,
    direction: Direction,
    input: &GModule,
    image: &GModule,
) -> Result<CorrespondenceReport> {
    let (ambient, d, family) = match direction {
        Direction::Restrict => (ctx.h.group(), &ctx.d_in_h, &ctx.y_family),
        Direction::Induce => (&ctx.g, &ctx.d, &ctx.x_family),
    };
    let mut correspondents = Vec::new();
    let mut others = Vec::new();
    for f in decompose(image)?.factors {
        let v = vertex_unchecked(&f.module)?;
        if v.order() == d.order() && is_conjugate(ambient, &v, d).is_some() {
            correspondents.push((f.module, v));
        } else {
            let in_family = family.contains(&v);
            others.push(FactorVertex { module: f.module, vertex: v, in_family });
        }
    }
    if correspondents.len() != 1 {
        let listing: Vec<String> = correspondents.iter().map(|(m, v)| describe_factor(m, v)).collect();
        return Err(Error::InternalConsistency(format!(
            "{direction:?}: expected exactly one factor with vertex D, found {}: {listing:?}",
            correspondents.len()
        )));
    }
    if let Some(bad) = others.iter().find(|f| !f.in_family) {
        return Err(Error::InternalConsistency(format!(
            "{direction:?}: factor outside the family: {}; family maximal members {:?}",
            describe_factor(&bad.module, &bad.vertex),
            family.maximal_members().iter().map(|s| s.members().to_vec()).collect::<Vec<_>>()
        )));
    }
    let (correspondent, correspondent_vertex) = correspondents.pop().expect("one correspondent");
    Ok(CorrespondenceReport {
        direction,
        input: input.clone(),
        correspondent,
        correspondent_vertex,
        other_factors: others,
        roundtrip: None,
    })
}

/// `f(M)`: the unique summand of `res^G_H M` with vertex `D`.
pub fn green_f(ctx: &GreenContext, m: &GModule) -> Result<CorrespondenceReport> {
    if !m.group().same_as(&ctx.g) || m.prime() != ctx.p {
        return Err(Error::GroupMismatch);
    }
    let v = vertex(m)?;
    if is_conjugate(&ctx.g, &v, &ctx.d).is_none() {
        return Err(Error::Precondition(format!("module has vertex of order {}, not conjugate to D", v.order())));
    }
    classify(ctx, Direction::Restrict, m, &restrict(m, &ctx.h)?)
}

/// `g(N)`: the unique summand of `ind_H^G N` with vertex `D`.
pub fn green_g(ctx: &GreenContext, n: &GModule) -> Result<CorrespondenceReport> {
    if !n.group().same_as(ctx.h.group()) || n.prime() != ctx.p {
        return Err(Error::GroupMismatch);
    }
    let v = vertex(n)?;
    if is_conjugate(ctx.h.group(), &v, &ctx.d_in_h).is_none() {
        return Err(Error::Precondition(format!(
            "module has vertex of order {}, not H-conjugate to D",
            v.order()
        )));
    }
    classify(ctx, Direction::Induce, n, &induce(n, &ctx.h)?.module)
}

#[derive(Clone, Debug)]
pub struct RoundtripReport {
    /// `g(f(M)) ≅ M`.
    pub gf: CorrespondenceReport,
    /// `f(g(N)) ≅ N`.
    pub fg: CorrespondenceReport,
}

/// Checks `g(f(M)) ≅ M` and `f(g(N)) ≅ N`.
pub fn verify_roundtrip(ctx: &GreenContext, m: &GModule, n: &GModule) -> Result<RoundtripReport> {
    let mut gf = green_f(ctx, m)?;
    let back = green_g(ctx, &gf.correspondent)?;
    let ok_m = iso_indecomposable(&back.correspondent, m)?.is_some();
    gf.roundtrip = Some(ok_m);
    let mut fg = green_g(ctx, n)?;
    let back = green_f(ctx, &fg.correspondent)?;
    let ok_n = iso_indecomposable(&back.correspondent, n)?.is_some();
    fg.roundtrip = Some(ok_n);
    if !ok_m || !ok_n {
        return Err(Error::InternalConsistency(format!(
            "roundtrip failed: gf(M) ≅ M is {ok_m}, fg(N) ≅ N is {ok_n} (dims {} and {})",
            m.dim(),
            n.dim()
        )));
    }
    Ok(RoundtripReport { gf, fg })
}

/// Indecomposable vertex-`D` modules on both sides, up to isomorphism.
#[derive(Clone, Debug)]
pub struct VertexDModules {
    pub g_side: Vec<GModule>,
    pub h_side: Vec<GModule>,
}

fn push_new(list: &mut Vec<GModule>, m: GModule) -> Result<()> {
    for x in list.iter() {
        if x.dim() == m.dim() && iso_indecomposable(x, &m)?.is_some() {
            return Ok(());
        }
    }
    list.push(m);
    Ok(())
}

fn sort_modules(list: &mut [GModule]) {
    list.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.generator_matrices().cmp(b.generator_matrices())));
}

fn vertex_d_summands(l: &GModule, d: &Subgroup, out: &mut Vec<GModule>) -> Result<()> {
    let ind = induce(l, d)?;
    for f in decompose(&ind.module)?.factors {
        let target = d.transfer(f.module.group())?;
        if has_vertex(&f.module, &target)? {
            push_new(out, f.module)?;
        }
    }
    Ok(())
}

/// Every indecomposable module with vertex `D` is a summand of the
/// induction of its source, so inducing all indecomposable `kD`-modules
/// and keeping the vertex-`D` summands is exhaustive.
pub fn enumerate_vertex_d_modules(ctx: &GreenContext) -> Result<VertexDModules> {
    let d_in_g = &ctx.d;
    let d_in_h = &ctx.d_in_h;
    let mut g_side = Vec::new();
    let mut h_side = Vec::new();
    for l in ctx.sources()? {
        vertex_d_summands(&l, d_in_g, &mut g_side)?;
        let l_h = l.clone();
        // `l` is a module over `D.group()`, which is also `d_in_h.group()`
        vertex_d_summands(&l_h, d_in_h, &mut h_side)?;
    }
    sort_modules(&mut g_side);
    sort_modules(&mut h_side);
    Ok(VertexDModules { g_side, h_side })
}

/// Dimensions of the quotient hom spaces for one ordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomDimCheck {
    pub i: usize,
    pub j: usize,
    /// `dim Hom_G(M_i, M_j)` modulo traces from `𝔛`.
    pub g_dim: usize,
    /// `dim Hom_H(f M_i, f M_j)` modulo traces from `𝔜`.
    pub h_dim: usize,
}

#[derive(Clone, Debug)]
pub struct BijectionReport {
    pub modules: VertexDModules,
    /// `f(g_side[i]) ≅ h_side[f_images[i]]`.
    pub f_images: Vec<usize>,
    /// `g(h_side[j]) ≅ g_side[g_images[j]]`.
    pub g_images: Vec<usize>,
    pub injective: bool,
    pub surjective: bool,
    pub inverse: bool,
    pub hom_dims: Vec<HomDimCheck>,
    /// Every report produced along the way, in `f` then `g` order.
    pub reports: Vec<CorrespondenceReport>,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.injective && self.surjective && self.inverse && self.hom_dims.iter().all(|c| c.g_dim == c.h_dim)
    }
}

fn find_iso(list: &[GModule], m: &GModule) -> Result<Option<usize>> {
    for (i, x) in list.iter().enumerate() {
        if x.dim() == m.dim() && iso_indecomposable(x, m)?.is_some() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// `f` and `g` are mutually inverse bijections between the enumerated
/// lists, and `f` preserves dimensions of hom spaces modulo `𝔛`-traces on
/// the `G` side and `𝔜`-traces on the `H` side.
pub fn verify_bijection(ctx: &GreenContext) -> Result<BijectionReport> {
    let modules = enumerate_vertex_d_modules(ctx)?;
    let mut reports = Vec::new();
    let mut f_images = Vec::new();
    for m in &modules.g_side {
        let r = green_f(ctx, m)?;
        let j = find_iso(&modules.h_side, &r.correspondent)?.ok_or_else(|| {
            Error::InternalConsistency(format!(
                "f(M) for M of dim {} is missing from the H-side enumeration",
                m.dim()
            ))
        })?;
        f_images.push(j);
        reports.push(r);
    }
    let mut g_images = Vec::new();
    for n in &modules.h_side {
        let r = green_g(ctx, n)?;
        let i = find_iso(&modules.g_side, &r.correspondent)?.ok_or_else(|| {
            Error::InternalConsistency(format!(
                "g(N) for N of dim {} is missing from the G-side enumeration",
                n.dim()
            ))
        })?;
        g_images.push(i);
        reports.push(r);
    }
    let mut hit = vec![false; modules.h_side.len()];
    let mut injective = true;
    for &j in &f_images {
        injective &= !hit[j];
        hit[j] = true;
    }
    let surjective = hit.iter().all(|&b| b);
    let inverse = f_images.iter().enumerate().all(|(i, &j)| g_images.get(j) == Some(&i))
        && g_images.iter().enumerate().all(|(j, &i)| f_images.get(i) == Some(&j));

    let xs = ctx.members_x();
    let ys = ctx.members_y_in_h()?;
    let images: Vec<&GModule> = reports[..f_images.len()].iter().map(|r| &r.correspondent).collect();
    let mut hom_dims = Vec::new();
    for (i, a) in modules.g_side.iter().enumerate() {
        for (j, b) in modules.g_side.iter().enumerate() {
            let g_dim = quotient_hom(a, b, &xs)?.quotient_dim;
            let h_dim = quotient_hom(images[i], images[j], &ys)?.quotient_dim;
            hom_dims.push(HomDimCheck { i, j, g_dim, h_dim });
        }
    }
    let report = BijectionReport { modules, f_images, g_images, injective, surjective, inverse, hom_dims, reports };
    if !report.holds() {
        return Err(Error::InternalConsistency(format!(
            "Green correspondence is not a bijection: f {:?}, g {:?}, hom dims {:?}",
            report.f_images, report.g_images, report.hom_dims
        )));
    }
    Ok(report)
}

/// The four characterizations of relative `H`-projectivity, evaluated
/// independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HigmanReport {
    /// `id_M` is a relative trace from `H`.
    pub trace: bool,
    /// `M | ind_H^G res^G_H M`.
    pub summand_of_ind_res: bool,
    /// Every indecomposable factor of `M` is a summand of `ind_H^G L` for
    /// some indecomposable factor `L` of its restriction.
    pub summand_of_induced: bool,
    /// The counit `ind res M → M` splits.
    pub counit_splits: bool,
}

impl HigmanReport {
    pub fn agree(&self) -> bool {
        let t = self.trace;
        self.summand_of_ind_res == t && self.summand_of_induced == t && self.counit_splits == t
    }
}

pub fn adjoint_higman_check(m: &GModule, h: &Subgroup) -> Result<HigmanReport> {
    if !h.parent().same_as(m.group()) {
        return Err(Error::GroupMismatch);
    }
    if m.dim() == 0 {
        return Ok(HigmanReport { trace: true, summand_of_ind_res: true, summand_of_induced: true, counit_splits: true });
    }
    let trace = is_relatively_projective(m, h)?.projective;
    let ind_res = induce(&restrict(m, h)?, h)?;
    let summand_of_ind_res = is_direct_summand(m, &ind_res.module)?;
    let mut summand_of_induced = true;
    for factor in decompose(m)?.factors {
        let mut found = false;
        for l in decompose(&restrict(&factor.module, h)?)?.factors {
            if multiplicity_in(&factor.module, &induce(&l.module, h)?.module)? > 0 {
                found = true;
                break;
            }
        }
        if !found {
            summand_of_induced = false;
            break;
        }
    }
    let counit_splits = is_relatively_projective_split(m, h)?.is_some();
    let report = HigmanReport { trace, summand_of_ind_res, summand_of_induced, counit_splits };
    if !report.agree() {
        return Err(Error::InternalConsistency(format!(
            "relative projectivity characterizations disagree: {report:?} (module dim {}, generators {:?}, subgroup {:?})",
            m.dim(),
            m.generator_matrices(),
            h.members()
        )));
    }
    Ok(report)
}

/// A factor of `res ind A` that is not projective relative to `𝔜`.
#[derive(Clone, Debug)]
pub struct AkViolation {
    pub generator: usize,
    pub factor: GModule,
}

#[derive(Clone, Debug)]
pub struct AkReport {
    /// How the modules over each `Y` were generated.
    pub strategy: String,
    pub dim_cap: usize,
    /// Orders of the `𝔜` representatives used.
    pub y_orders: Vec<usize>,
    /// The indecomposable objects `A` of `S'T'𝒴` that were checked.
    pub generators: Vec<GModule>,
    pub factors_checked: usize,
    pub violations: Vec<AkViolation>,
    /// Generators for which `TS = 1 ⊕ U` failed.
    pub ts_failures: Vec<usize>,
}

impl AkReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.ts_failures.is_empty()
    }
}

/// Indecomposable `kY`-modules used to generate `𝒴`: all Jordan blocks
/// when `Y` is cyclic, otherwise the summands of the permutation modules
/// on cosets of subgroups of `Y`.
fn y_generators(y: &Subgroup, p: Prime, cap: usize) -> Result<(Vec<GModule>, &'static str)> {
    if let Ok(j) = jordan_block_modules(y, p) {
        return Ok((j.into_iter().filter(|m| m.dim() <= cap).collect(), "jordan-blocks"));
    }
    let grp = y.group();
    let mut out = Vec::new();
    for (z, _) in subgroups_up_to_conjugacy(grp) {
        if z.index() > cap {
            continue;
        }
        let perm = induce(&trivial_module(&z.group().clone(), p), &z)?.module;
        for f in decompose(&perm)?.factors {
            push_new(&mut out, f.module)?;
        }
    }
    Ok((out, "permutation-module-summands"))
}

/// Condition (†): for every indecomposable `A` in `ind_D^H res^H_D 𝒴`,
/// each factor of `res^G_H ind_H^G A` is projective relative to `𝔜`, and
/// `res ind A = A ⊕ U(A)` via the unit.
pub fn check_ak_condition(ctx: &GreenContext) -> Result<AkReport> {
    let cap = 2 * ctx.g.order();
    let p = ctx.p;
    let ys = ctx.members_y_in_h()?;
    let mut strategies: Vec<&str> = Vec::new();
    let mut generators: Vec<GModule> = Vec::new();
    for y in &ys {
        let (vs, strategy) = y_generators(y, p, cap)?;
        if !strategies.contains(&strategy) {
            strategies.push(strategy);
        }
        for v in vs {
            let b = induce(&v, y)?.module;
            let a = induce(&restrict(&b, &ctx.d_in_h)?, &ctx.d_in_h)?.module;
            for f in decompose(&a)?.factors {
                push_new(&mut generators, f.module)?;
            }
        }
    }
    sort_modules(&mut generators);
    let mut violations = Vec::new();
    let mut ts_failures = Vec::new();
    let mut factors_checked = 0;
    for (idx, a) in generators.iter().enumerate() {
        let ind = induce(a, &ctx.h)?;
        // `ind.module` is a kG-module; restrict back to H
        let back = restrict(&ind.module, &ctx.h)?;
        for f in decompose(&back)?.factors {
            factors_checked += 1;
            let mut ok = false;
            for y in &ys {
                if is_relatively_projective(&f.module, y)?.projective {
                    ok = true;
                    break;
                }
            }
            if !ok {
                violations.push(AkViolation { generator: idx, factor: f.module });
            }
        }
        if !ts_decomposition_check(a, &ctx.h)?.holds() {
            ts_failures.push(idx);
        }
    }
    let mut strategy = String::new();
    for (i, s) in strategies.iter().enumerate() {
        if i > 0 {
            strategy.push('+');
        }
        strategy.push_str(s);
    }
    if strategy.is_empty() {
        strategy.push_str("empty-family");
    }
    Ok(AkReport {
        strategy,
        dim_cap: cap,
        y_orders: ys.iter().map(|y| y.order()).collect(),
        generators,
        factors_checked,
        violations,
        ts_failures,
    })
}

/// Restriction and induction send projective modules to projective ones;
/// checked on the projective indecomposables of `G` and `H`.
pub fn projectives_preserved(ctx: &GreenContext) -> Result<bool> {
    let p = ctx.p;
    let one_g = Subgroup::trivial(&ctx.g);
    let one_h = Subgroup::trivial(ctx.h.group());
    for f in decompose(&regular_module(&ctx.g, p))?.factors {
        if !is_relatively_projective(&restrict(&f.module, &ctx.h)?, &one_h)?.projective {
            return Ok(false);
        }
    }
    for f in decompose(&regular_module(ctx.h.group(), p))?.factors {
        if !is_relatively_projective(&induce(&f.module, &ctx.h)?.module, &one_g)?.projective {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `M` and `N` correspond: `N ≅ f(M)`.
pub fn corresponds(ctx: &GreenContext, m: &GModule, n: &GModule) -> Result<bool> {
    if !is_indecomposable(n)?.is_indecomposable() {
        return Ok(false);
    }
    Ok(is_isomorphic(&green_f(ctx, m)?.correspondent, n)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{preset, sylow_subgroup};

    fn gf(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn sub(g: &Group, order: usize, pred: impl Fn(&Subgroup) -> bool) -> Subgroup {
        crate::groups::all_subgroups(g).into_iter().find(|s| s.order() == order && pred(s)).unwrap()
    }

    fn s3_context() -> GreenContext {
        let g = preset("S3").unwrap();
        let c2 = sylow_subgroup(&g, 2);
        GreenContext::new(&g, gf(2), c2.clone(), c2).unwrap()
    }

    fn a5_context() -> GreenContext {
        let g = preset("A5").unwrap();
        let c5 = sylow_subgroup(&g, 5);
        let h = normalizer(&g, &c5);
        assert_eq!(h.order(), 10);
        GreenContext::new(&g, gf(5), c5, h).unwrap()
    }

    #[test]
    fn context_validation() {
        let g = preset("S3").unwrap();
        let c2 = sylow_subgroup(&g, 2);
        let c3 = sylow_subgroup(&g, 3);
        assert!(GreenContext::new(&g, gf(2), c3.clone(), Subgroup::whole(&g)).is_err());
        // N_S3(C3) = S3 is not inside C3
        assert!(GreenContext::new(&g, gf(3), c3.clone(), c3).is_err());
        let ctx = GreenContext::new(&g, gf(2), c2.clone(), c2).unwrap();
        assert_eq!(ctx.x_family().maximal_members().len(), 1);
        assert!(ctx.x_family().maximal_members()[0].is_trivial());
    }

    #[test]
    fn jordan_blocks() {
        let g = preset("C4").unwrap();
        let js = jordan_block_modules(&Subgroup::whole(&g), gf(2)).unwrap();
        assert_eq!(js.iter().map(|m| m.dim()).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        for j in &js {
            assert!(GModule::new(&g, gf(2), j.dim(), j.generator_matrices().to_vec()).is_ok());
            assert!(is_indecomposable(j).unwrap().is_indecomposable());
        }
        let v4 = preset("V4").unwrap();
        assert!(jordan_block_modules(&Subgroup::whole(&v4), gf(2)).is_err());
    }

    #[test]
    fn s3_correspondence() {
        let ctx = s3_context();
        let k = trivial_module(ctx.group(), gf(2));
        let r = green_f(&ctx, &k).unwrap();
        assert_eq!(r.correspondent.dim(), 1);
        assert!(r.other_factors.is_empty());
        let kh = trivial_module(ctx.h().group(), gf(2));
        let r = green_g(&ctx, &kh).unwrap();
        assert_eq!(r.correspondent.dim(), 1);
        assert_eq!(r.other_factors.len(), 1);
        assert_eq!(r.other_factors[0].module.dim(), 2);
        assert!(r.other_factors[0].vertex.is_trivial());
        let rt = verify_roundtrip(&ctx, &k, &kh).unwrap();
        assert_eq!(rt.gf.roundtrip, Some(true));
        let b = verify_bijection(&ctx).unwrap();
        assert_eq!((b.modules.g_side.len(), b.modules.h_side.len()), (1, 1));
        assert_eq!(b.hom_dims, vec![HomDimCheck { i: 0, j: 0, g_dim: 1, h_dim: 1 }]);
        assert!(check_ak_condition(&ctx).unwrap().holds());
        assert!(projectives_preserved(&ctx).unwrap());
    }

    #[test]
    fn h_equal_g_is_identity() {
        let g = preset("S3").unwrap();
        let c2 = sylow_subgroup(&g, 2);
        let ctx = GreenContext::new(&g, gf(2), c2, Subgroup::whole(&g)).unwrap();
        assert!(ctx.x_family().is_empty() && ctx.y_family().is_empty());
        let k = trivial_module(&g, gf(2));
        let r = green_f(&ctx, &k).unwrap();
        assert!(r.other_factors.is_empty());
        let kh = trivial_module(ctx.h().group(), gf(2));
        let r = green_g(&ctx, &kh).unwrap();
        assert!(r.other_factors.is_empty());
        let b = verify_bijection(&ctx).unwrap();
        assert_eq!(b.f_images, vec![0]);
        assert!(check_ak_condition(&ctx).unwrap().holds());
    }

    #[test]
    fn a5_trivial_module() {
        let ctx = a5_context();
        let k = trivial_module(ctx.group(), gf(5));
        let r = green_f(&ctx, &k).unwrap();
        assert_eq!(r.correspondent.dim(), 1);
        assert!(r.other_factors.is_empty());
        let kh = trivial_module(ctx.h().group(), gf(5));
        let r = green_g(&ctx, &kh).unwrap();
        assert_eq!(r.correspondent.dim(), 1);
        assert!(r.other_factors.iter().all(|f| f.vertex.is_trivial()));
        assert_eq!(r.other_factors.iter().map(|f| f.module.dim()).sum::<usize>(), 5);
    }

    #[test]
    fn s4_trivial_module() {
        let g = preset("S4").unwrap();
        let d8 = sylow_subgroup(&g, 2);
        let ctx = GreenContext::new(&g, gf(2), d8.clone(), d8).unwrap();
        let k = trivial_module(&g, gf(2));
        let r = green_f(&ctx, &k).unwrap();
        assert_eq!(r.correspondent.dim(), 1);
        let kh = trivial_module(ctx.h().group(), gf(2));
        let r = green_g(&ctx, &kh).unwrap();
        assert_eq!(r.correspondent.dim(), 1);
        assert_eq!(r.family_violations(), 0);
        assert!(r.other_factors.iter().all(|f| f.vertex.order() <= 4));
    }

    #[test]
    fn green_preconditions() {
        let ctx = s3_context();
        let g = ctx.group().clone();
        // the regular module is projective, so its vertex is trivial
        let pim = decompose(&regular_module(&g, gf(2))).unwrap().factors[1].module.clone();
        assert!(matches!(green_f(&ctx, &pim), Err(Error::Precondition(_))));
        let c3 = sub(&g, 3, |_| true);
        let _ = c3;
        let reg = regular_module(&g, gf(2));
        assert!(matches!(green_f(&ctx, &reg), Err(Error::Precondition(_))));
    }

    #[test]
    fn higman_examples() {
        let g = preset("S3").unwrap();
        let c2 = sylow_subgroup(&g, 2);
        let r = adjoint_higman_check(&trivial_module(&g, gf(2)), &c2).unwrap();
        assert!(r.trace && r.agree());
        let c = preset("C2").unwrap();
        let r = adjoint_higman_check(&trivial_module(&c, gf(2)), &Subgroup::trivial(&c)).unwrap();
        assert!(!r.trace && !r.summand_of_ind_res && !r.summand_of_induced && !r.counit_splits);
        let r = adjoint_higman_check(&regular_module(&g, gf(2)), &Subgroup::whole(&g)).unwrap();
        assert!(r.trace && r.agree());
    }
}
