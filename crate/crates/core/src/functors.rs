//! Restriction and induction between a group and a subgroup, with the
//! adjunction data, relative traces and Mackey's formula.

use alloc::vec::Vec;
use alloc::{format, vec};

use crate::error::{Error, Result};
use crate::groups::{coset_reps, double_coset_reps, CosetSide, Group, Subgroup};
use crate::linalg::FpMatrix;
use crate::reps::{is_split, submodule_from_columns, GModule, ModuleHom, ShortExactSeq};

fn check_over_parent(m: &GModule, h: &Subgroup) -> Result<()> {
    if m.group().same_as(h.parent()) {
        Ok(())
    } else {
        Err(Error::NotSubgroup("subgroup does not live in the module's group".into()))
    }
}

fn check_over_subgroup(n: &GModule, h: &Subgroup) -> Result<()> {
    if n.group().same_as(h.group()) {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// `res^G_H(M)`, a module over `h.group()` on the same space.
pub fn restrict(m: &GModule, h: &Subgroup) -> Result<GModule> {
    check_over_parent(m, h)?;
    Ok(GModule::from_generators_unchecked(h.group(), m.prime(), m.dim(), m.actions_for(h.group())))
}

/// Restriction of a hom: same matrix, restricted endpoints.
pub fn restrict_hom(f: &ModuleHom, h: &Subgroup) -> Result<ModuleHom> {
    Ok(ModuleHom::from_parts(restrict(f.source(), h)?, restrict(f.target(), h)?, f.matrix().clone()))
}

/// `ind_H^G(N) = kG ⊗_{kH} N` with basis `r_i ⊗ e_j` ordered by (coset
/// representative, source basis index).
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub module: GModule,
    pub subgroup: Subgroup,
    pub source: GModule,
    /// Left coset representatives (positions in `G`), identity first.
    pub reps: Vec<usize>,
}

impl InducedModule {
    pub fn index(&self) -> usize {
        self.reps.len()
    }
}

/// Which coset `r_i H` each element of `G` lies in.
fn coset_index(g: &Group, h: &Subgroup, reps: &[usize]) -> Vec<usize> {
    let mut idx = vec![usize::MAX; g.order()];
    for (i, &r) in reps.iter().enumerate() {
        for &x in h.members() {
            idx[g.mul(r, x)] = i;
        }
    }
    idx
}

/// Induces `n` (a module over `h.group()`) up to `h.parent()`.
///
/// For `g·r_i = r_{i'}·t` with `t ∈ H`, block `(i', i)` of `g` is `ρ_N(t)`.
pub fn induce(n: &GModule, h: &Subgroup) -> Result<InducedModule> {
    check_over_subgroup(n, h)?;
    let g = h.parent();
    let reps = coset_reps(g, h, CosetSide::Left);
    induce_with_reps(n, h, reps)
}

pub fn induce_with_reps(n: &GModule, h: &Subgroup, reps: Vec<usize>) -> Result<InducedModule> {
    check_over_subgroup(n, h)?;
    let g = h.parent();
    let p = n.prime();
    let d = n.dim();
    let idx = coset_index(g, h, &reps);
    if reps.len() != h.index() || idx.contains(&usize::MAX) {
        return Err(Error::Precondition("not a system of left coset representatives".into()));
    }
    let dim = reps.len() * d;
    let gens = g
        .generator_positions()
        .into_iter()
        .map(|s| {
            let mut a = FpMatrix::zeros(p, dim, dim);
            for (i, &r) in reps.iter().enumerate() {
                let sr = g.mul(s, r);
                let j = idx[sr];
                let t = g.mul(g.inv(reps[j]), sr);
                a.set_block(j * d, i * d, n.action_of(g.element(t)).expect("twist lies in the subgroup"));
            }
            a
        })
        .collect();
    let module = GModule::from_generators_unchecked(g, p, dim, gens);
    Ok(InducedModule { module, subgroup: h.clone(), source: n.clone(), reps })
}

/// `ind(f)`: block diagonal with `f` in every coset block. Both induced
/// modules must use the same representatives.
pub fn induce_hom(f: &ModuleHom, from: &InducedModule, to: &InducedModule) -> Result<ModuleHom> {
    if from.reps != to.reps || f.source() != &from.source || f.target() != &to.source {
        return Err(Error::Precondition("induced modules do not match the hom".into()));
    }
    let p = f.matrix().prime();
    let k = from.reps.len();
    let (a, b) = (f.source().dim(), f.target().dim());
    let mut m = FpMatrix::zeros(p, k * b, k * a);
    for i in 0..k {
        m.set_block(i * b, i * a, f.matrix());
    }
    Ok(ModuleHom::from_parts(from.module.clone(), to.module.clone(), m))
}

/// Counit `ind res M → M`, `r_i ⊗ m ↦ r_i · m`.
pub fn counit(m: &GModule, h: &Subgroup) -> Result<(InducedModule, ModuleHom)> {
    let ind = induce(&restrict(m, h)?, h)?;
    let eps = counit_for(m, &ind);
    Ok((ind, eps))
}

/// Counit on a given induced module whose source is `res M`.
pub fn counit_for(m: &GModule, ind: &InducedModule) -> ModuleHom {
    let p = m.prime();
    let d = m.dim();
    let mut e = FpMatrix::zeros(p, d, ind.module.dim());
    for (i, &r) in ind.reps.iter().enumerate() {
        e.set_block(0, i * d, m.action(r));
    }
    ModuleHom::from_parts(ind.module.clone(), m.clone(), e)
}

/// Unit `N → res ind N`, `n ↦ 1 ⊗ n`.
pub fn unit(n: &GModule, h: &Subgroup) -> Result<(InducedModule, ModuleHom)> {
    let ind = induce(n, h)?;
    let eta = unit_for(&ind)?;
    Ok((ind, eta))
}

pub fn unit_for(ind: &InducedModule) -> Result<ModuleHom> {
    let n = &ind.source;
    let p = n.prime();
    let mut e = FpMatrix::zeros(p, ind.module.dim(), n.dim());
    e.set_block(0, 0, &FpMatrix::identity(p, n.dim()));
    Ok(ModuleHom::from_parts(n.clone(), restrict(&ind.module, &ind.subgroup)?, e))
}

/// Projection of `res ind N` onto the identity-coset block.
pub fn first_block_projection(ind: &InducedModule) -> Result<ModuleHom> {
    let n = &ind.source;
    let p = n.prime();
    let mut e = FpMatrix::zeros(p, n.dim(), ind.module.dim());
    e.set_block(0, 0, &FpMatrix::identity(p, n.dim()));
    Ok(ModuleHom::from_parts(restrict(&ind.module, &ind.subgroup)?, n.clone(), e))
}

/// Frobenius reciprocity `Hom_H(N, res M) ≅ Hom_G(ind N, M)` as explicit
/// maps on matrices.
pub struct Adjunction {
    pub induced: InducedModule,
    pub target: GModule,
}

impl Adjunction {
    pub fn new(n: &GModule, h: &Subgroup, m: &GModule) -> Result<Self> {
        check_over_parent(m, h)?;
        if n.prime() != m.prime() {
            return Err(Error::GroupMismatch);
        }
        Ok(Adjunction { induced: induce(n, h)?, target: m.clone() })
    }

    /// `f ↦ ε ∘ ind(f)`: block `i` is `ρ_M(r_i)·f`.
    pub fn to_induced(&self, f: &ModuleHom) -> ModuleHom {
        let p = self.target.prime();
        let d = self.induced.source.dim();
        let mut x = FpMatrix::zeros(p, self.target.dim(), self.induced.module.dim());
        for (i, &r) in self.induced.reps.iter().enumerate() {
            x.set_block(0, i * d, &(self.target.action(r) * f.matrix()));
        }
        ModuleHom::from_parts(self.induced.module.clone(), self.target.clone(), x)
    }

    /// `F ↦ F ∘ η`: the identity-coset block of `F`.
    pub fn to_restricted(&self, f: &ModuleHom) -> Result<ModuleHom> {
        let d = self.induced.source.dim();
        let x = f.matrix().block(0, 0, self.target.dim(), d);
        Ok(ModuleHom::from_parts(self.induced.source.clone(), restrict(&self.target, &self.induced.subgroup)?, x))
    }
}

/// `Tr_H^G(f) = Σ_{r} ρ_N(r) f ρ_M(r)^{-1}` over left coset representatives.
pub fn relative_trace(m: &GModule, n: &GModule, h: &Subgroup, f: &FpMatrix) -> Result<ModuleHom> {
    let reps = coset_reps(h.parent(), h, CosetSide::Left);
    relative_trace_with_reps(m, n, h, f, &reps)
}

pub fn relative_trace_with_reps(
    m: &GModule,
    n: &GModule,
    h: &Subgroup,
    f: &FpMatrix,
    reps: &[usize],
) -> Result<ModuleHom> {
    check_over_parent(m, h)?;
    m.check_same_ring(n)?;
    let (rm, rn) = (restrict(m, h)?, restrict(n, h)?);
    ModuleHom::new(&rm, &rn, f.clone())?;
    Ok(relative_trace_unchecked(m, n, h, f, reps))
}

pub(crate) fn relative_trace_unchecked(m: &GModule, n: &GModule, h: &Subgroup, f: &FpMatrix, reps: &[usize]) -> ModuleHom {
    let g = h.parent();
    let p = m.prime();
    let mut acc = FpMatrix::zeros(p, n.dim(), m.dim());
    for &r in reps {
        let nr = n.action_of(g.element(r)).expect("same group");
        let mr_inv = m.action_of(g.element(g.inv(r))).expect("same group");
        acc.add_scaled(1, &(&(nr * f) * mr_inv));
    }
    ModuleHom::from_parts(m.clone(), n.clone(), acc)
}

/// Linear map `Hom_H(res M, res N) → Hom_G(M, N)`, evaluated on a basis
/// of the source.
pub fn trace_image(m: &GModule, n: &GModule, h: &Subgroup) -> Result<Vec<ModuleHom>> {
    let basis = crate::reps::hom_space(&restrict(m, h)?, &restrict(n, h)?)?;
    let reps = coset_reps(h.parent(), h, CosetSide::Left);
    Ok(basis.iter().map(|f| relative_trace_unchecked(m, n, h, f.matrix(), &reps)).collect())
}

/// The terms of Mackey's formula for `res^G_H ind^G_K N`: for each double
/// coset `H g K`, the module `ind_{H ∩ gKg⁻¹}^H` of `N` twisted by `g`.
pub fn mackey_summands(h: &Subgroup, k: &Subgroup, n: &GModule) -> Result<Vec<GModule>> {
    check_over_subgroup(n, k)?;
    let g = h.parent();
    if !k.parent().same_as(g) {
        return Err(Error::NotSubgroup("subgroups of different groups".into()));
    }
    let mut out = Vec::new();
    for x in double_coset_reps(g, h, k) {
        let members: Vec<usize> = h.members().iter().copied().filter(|&s| k.contains(g.conj(g.inv(x), s))).collect();
        let s_in_g = Subgroup::from_members(g, &members)?;
        let s = s_in_g.transfer(h.group())?;
        let xi = g.inv(x);
        let twisted = GModule::from_fn_unchecked(s.group(), n.prime(), n.dim(), |y| {
            let pos = g.position(y).expect("subgroup element");
            n.action_of(g.element(g.conj(xi, pos))).expect("conjugate lies in K").clone()
        });
        out.push(induce(&twisted, &s)?.module);
    }
    Ok(out)
}

/// Witnesses for `res ind N = N ⊕ U` with the unit landing in the first
/// summand.
#[derive(Clone, Debug)]
pub struct TsDecomposition {
    pub induced: InducedModule,
    pub unit: ModuleHom,
    pub complement: GModule,
    pub complement_inclusion: ModuleHom,
    /// `p1 ∘ η` is the identity of `N`.
    pub unit_split: bool,
    /// image of the unit and the complement span the whole space.
    pub spans: bool,
}

impl TsDecomposition {
    pub fn holds(&self) -> bool {
        self.unit_split && self.spans
    }
}

/// The complement `U` is spanned by the non-identity coset blocks, which
/// `H` permutes among themselves.
pub fn ts_decomposition_check(n: &GModule, h: &Subgroup) -> Result<TsDecomposition> {
    let (induced, unit) = unit(n, h)?;
    let p = n.prime();
    let d = n.dim();
    let total = induced.module.dim();
    let res = restrict(&induced.module, h)?;
    let cols = FpMatrix::identity(p, total).block(0, d, total, total - d);
    let (complement, complement_inclusion) = submodule_from_columns(&res, &cols).map_err(|e| {
        Error::InternalConsistency(format!("non-identity coset blocks are not H-stable: {e}"))
    })?;
    let p1 = first_block_projection(&induced)?;
    let unit_split = p1.compose(&unit)?.matrix().is_identity();
    let spans = unit.matrix().hstack(complement_inclusion.matrix())?.rank() == total;
    Ok(TsDecomposition { induced, unit, complement, complement_inclusion, unit_split, spans })
}

/// Whether the sequence splits after restriction to `h`; returns the section.
pub fn is_split_over_subgroup(seq: &ShortExactSeq, h: &Subgroup) -> Result<Option<ModuleHom>> {
    let sub = restrict_hom(seq.sub(), h)?;
    let quo = ModuleHom::from_parts(sub.target().clone(), restrict(seq.right(), h)?, seq.quo().matrix().clone());
    is_split(&ShortExactSeq::from_parts(sub, quo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{preset, sylow_subgroup, Perm};
    use crate::linalg::Prime;
    use crate::reps::{augmentation_module, hom_dim, hom_space, regular_module, trivial_module, zero_module};

    fn gf(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn s3_c2() -> (Group, Subgroup) {
        let g = preset("S3").unwrap();
        let h = Subgroup::from_perms(&g, [&Perm::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        (g, h)
    }

    #[test]
    fn restriction_examples() {
        let (g, h) = s3_c2();
        let p = gf(2);
        let m2 = augmentation_module(&g, p);
        assert_eq!(restrict(&m2, &Subgroup::whole(&g)).unwrap().dim(), 2);
        let r = restrict(&m2, &h).unwrap();
        assert_eq!(hom_dim(&r, &r).unwrap(), 2);
        assert_eq!(hom_dim(&r, &trivial_module(h.group(), p)).unwrap(), 1);
        assert!(restrict(&m2, &sylow_subgroup(&preset("A4").unwrap(), 2)).is_err());
    }

    #[test]
    fn induction_examples() {
        let (g, h) = s3_c2();
        let p = gf(2);
        let k = trivial_module(h.group(), p);
        let ind = induce(&k, &h).unwrap();
        assert_eq!(ind.module.dim(), 3);
        assert!(GModule::new(&g, p, 3, ind.module.generator_matrices().to_vec()).is_ok());
        let one = Subgroup::trivial(&g);
        let reg = induce(&trivial_module(one.group(), p), &one).unwrap().module;
        assert_eq!(reg, regular_module(&g, p));
        let whole = Subgroup::whole(&g);
        let kg = trivial_module(&g, p);
        assert_eq!(induce(&kg.over(whole.group()).unwrap(), &whole).unwrap().module.dim(), 1);
    }

    #[test]
    fn adjunction_round_trips() {
        let (g, h) = s3_c2();
        let p = gf(2);
        for m in [trivial_module(&g, p), augmentation_module(&g, p), regular_module(&g, p)] {
            for n in [trivial_module(h.group(), p), regular_module(h.group(), p)] {
                let adj = Adjunction::new(&n, &h, &m).unwrap();
                let left = hom_space(&n, &restrict(&m, &h).unwrap()).unwrap();
                let right = hom_space(&adj.induced.module, &m).unwrap();
                assert_eq!(left.len(), right.len());
                for f in &left {
                    let up = adj.to_induced(f);
                    assert!(ModuleHom::new(up.source(), up.target(), up.matrix().clone()).is_ok());
                    assert_eq!(adj.to_restricted(&up).unwrap().matrix(), f.matrix());
                }
                for f in &right {
                    assert_eq!(adj.to_induced(&adj.to_restricted(f).unwrap()).matrix(), f.matrix());
                }
            }
        }
        let z = zero_module(&g, p);
        let adj = Adjunction::new(&trivial_module(h.group(), p), &h, &z).unwrap();
        assert_eq!(hom_dim(&adj.induced.module, &z).unwrap(), 0);
    }

    #[test]
    fn unit_counit_triangles() {
        let (g, h) = s3_c2();
        let p = gf(2);
        let m = augmentation_module(&g, p);
        let (ind, eps) = counit(&m, &h).unwrap();
        assert!(eps.is_surjective());
        assert!(ModuleHom::new(eps.source(), eps.target(), eps.matrix().clone()).is_ok());
        // res(ε_M) ∘ η_{res M} = id
        let eta = unit_for(&ind).unwrap();
        assert!((eps.matrix() * eta.matrix()).is_identity());
        // ε_{ind N} ∘ ind(η_N) = id
        let n = regular_module(h.group(), p);
        let (ind_n, eta_n) = unit(&n, &h).unwrap();
        let ind_res_ind = induce(&restrict(&ind_n.module, &h).unwrap(), &h).unwrap();
        let lifted = induce_hom(&eta_n, &ind_n, &ind_res_ind).unwrap();
        let eps_top = counit_for(&ind_n.module, &ind_res_ind);
        assert!(eps_top.compose(&lifted).unwrap().matrix().is_identity());
        let p1 = first_block_projection(&ind_n).unwrap();
        assert!(p1.compose(&eta_n).unwrap().matrix().is_identity());
    }

    #[test]
    fn relative_trace_examples() {
        let (g, h) = s3_c2();
        let p = gf(2);
        let k = trivial_module(&g, p);
        let t = relative_trace(&k, &k, &h, &FpMatrix::identity(p, 1)).unwrap();
        assert!(t.matrix().is_identity());
        let m = regular_module(&g, p);
        let u = &hom_space(&m, &m).unwrap()[1];
        let t = relative_trace(&m, &m, &h, u.matrix()).unwrap();
        assert_eq!(t.matrix(), &u.matrix().scalar_mul(3));
        let whole = Subgroup::whole(&g);
        let t = relative_trace(&m, &m, &whole, u.matrix()).unwrap();
        assert_eq!(t.matrix(), u.matrix());
        let bad = FpMatrix::from_fn(p, 6, 6, |i, j| u32::from(i == 0 && j == 1));
        assert!(relative_trace(&m, &m, &h, &bad).is_err());
    }

    #[test]
    fn mackey_and_ts() {
        let (g, h) = s3_c2();
        let p = gf(2);
        let k = trivial_module(h.group(), p);
        let parts = mackey_summands(&h, &h, &k).unwrap();
        let dims: Vec<usize> = parts.iter().map(GModule::dim).collect();
        assert_eq!(dims, vec![1, 2]);
        let whole = Subgroup::whole(&g);
        let kg = trivial_module(whole.group(), p);
        assert_eq!(mackey_summands(&h, &whole, &kg).unwrap().len(), 1);
        let parts = mackey_summands(&whole, &h, &k).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].dim(), 3);

        let ts = ts_decomposition_check(&k, &h).unwrap();
        assert!(ts.holds());
        assert_eq!(ts.complement.dim(), 2);
        let ts = ts_decomposition_check(&regular_module(h.group(), p), &h).unwrap();
        assert!(ts.holds());
        assert_eq!(ts.complement.dim(), 4);
        let ts = ts_decomposition_check(&trivial_module(whole.group(), p), &whole).unwrap();
        assert!(ts.holds());
        assert_eq!(ts.complement.dim(), 0);
    }

    #[test]
    fn split_over_subgroup() {
        let c2 = preset("C2").unwrap();
        let p = gf(2);
        let r = regular_module(&c2, p);
        let (_, incl) = crate::reps::submodule_spin(&r, &[vec![1, 1]]).unwrap();
        let (_, pi) = crate::reps::quotient_module(&r, &incl).unwrap();
        let seq = ShortExactSeq::new(incl, pi).unwrap();
        assert!(is_split_over_subgroup(&seq, &Subgroup::whole(&c2)).unwrap().is_none());
        assert!(is_split_over_subgroup(&seq, &Subgroup::trivial(&c2)).unwrap().is_some());
    }
}
