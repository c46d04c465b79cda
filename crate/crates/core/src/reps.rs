//! Modules over group algebras `kG`, given by matrices for the generators.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::groups::{Group, Perm, PermGroup};
use crate::linalg::{Echelon, FpMatrix, Prime};

struct ModuleData {
    group: Group,
    p: Prime,
    dim: usize,
    gens: Vec<FpMatrix>,
    cache: Vec<OnceBox<FpMatrix>>,
}

/// A finite-dimensional `kG`-module, `k = GF(p)`, acting on column vectors.
///
/// Cheap to clone. The matrix of every group element is computed on first
/// use from the BFS tree of the group and memoized.
#[derive(Clone)]
pub struct GModule(Arc<ModuleData>);

impl fmt::Debug for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GModule(dim {}, p {}, |G| {})", self.dim(), self.0.p, self.0.group.order())
    }
}

impl PartialEq for GModule {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        self.same_ring(other)
            && self.dim() == other.dim()
            && self.0.group.generators().iter().all(|g| self.action_of(g) == other.action_of(g))
    }
}
impl Eq for GModule {}

impl GModule {
    /// Validated constructor: one invertible `dim × dim` matrix per group
    /// generator, and the assignment must extend to a homomorphism on the
    /// whole group (checked against every element).
    pub fn new(group: &Group, p: Prime, dim: usize, gens: Vec<FpMatrix>) -> Result<Self> {
        if gens.len() != group.generators().len() {
            return Err(Error::InvalidModule(format!(
                "{} generator matrices for {} group generators",
                gens.len(),
                group.generators().len()
            )));
        }
        for (i, a) in gens.iter().enumerate() {
            if a.prime() != p {
                return Err(Error::ModulusMismatch(a.prime().get(), p.get()));
            }
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::InvalidModule(format!(
                    "generator {i} has shape {}x{}, expected {dim}x{dim}",
                    a.rows(),
                    a.cols()
                )));
            }
            if !a.is_invertible()? {
                return Err(Error::InvalidModule(format!("generator {i} acts singularly")));
            }
        }
        let m = Self::from_generators_unchecked(group, p, dim, gens);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_generators_unchecked(group: &Group, p: Prime, dim: usize, gens: Vec<FpMatrix>) -> Self {
        debug_assert_eq!(gens.len(), group.generators().len());
        let cache = (0..group.order()).map(|_| OnceBox::new()).collect();
        GModule(Arc::new(ModuleData { group: group.clone(), p, dim, gens, cache }))
    }

    /// Builds a module from the action of each element of `group` given as
    /// a function of the element.
    pub(crate) fn from_fn_unchecked(group: &Group, p: Prime, dim: usize, mut f: impl FnMut(&Perm) -> FpMatrix) -> Self {
        let gens = group.generators().iter().map(&mut f).collect();
        Self::from_generators_unchecked(group, p, dim, gens)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.0.group;
        let gens = g.generator_positions();
        for x in 0..g.order() {
            for (k, &s) in gens.iter().enumerate() {
                let lhs = &self.0.gens[k] * self.action(x);
                if &lhs != self.action(g.mul(s, x)) {
                    return Err(Error::InvalidModule(format!(
                        "generator matrices violate a relation (generator {k} times element {x})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Group {
        &self.0.group
    }
    pub fn prime(&self) -> Prime {
        self.0.p
    }
    pub fn dim(&self) -> usize {
        self.0.dim
    }
    pub fn is_zero(&self) -> bool {
        self.0.dim == 0
    }
    pub fn generator_matrices(&self) -> &[FpMatrix] {
        &self.0.gens
    }

    /// Matrix of the element at position `pos` of [`GModule::group`].
    pub fn action(&self, pos: usize) -> &FpMatrix {
        self.0.cache[pos].get_or_init(|| {
            let g = &self.0.group;
            Box::new(match g.bfs_parent(pos) {
                None => FpMatrix::identity(self.0.p, self.0.dim),
                Some((parent, gen)) => &self.0.gens[gen] * self.action(parent),
            })
        })
    }

    /// Matrix of a permutation, if it belongs to the group.
    pub fn action_of(&self, g: &Perm) -> Option<&FpMatrix> {
        self.0.group.position(g).map(|i| self.action(i))
    }

    /// Matrices of the generators of another presentation of the same group.
    pub(crate) fn actions_for(&self, group: &PermGroup) -> Vec<FpMatrix> {
        group
            .generators()
            .iter()
            .map(|g| self.action_of(g).expect("compatible groups").clone())
            .collect()
    }

    /// Same group (as a set of permutations) and same characteristic.
    pub fn same_ring(&self, other: &GModule) -> bool {
        self.0.p == other.0.p && self.0.group.same_as(&other.0.group)
    }

    pub(crate) fn check_same_ring(&self, other: &GModule) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// The same module re-expressed over another presentation of its group.
    pub fn over(&self, group: &Group) -> Result<GModule> {
        if !self.0.group.same_as(group) {
            return Err(Error::GroupMismatch);
        }
        Ok(Self::from_generators_unchecked(group, self.0.p, self.0.dim, self.actions_for(group)))
    }

    /// True when every element acts as the identity.
    pub fn is_trivial_action(&self) -> bool {
        self.0.gens.iter().all(FpMatrix::is_identity)
    }
}

/// `k` with every element acting as 1.
pub fn trivial_module(group: &Group, p: Prime) -> GModule {
    GModule::from_fn_unchecked(group, p, 1, |_| FpMatrix::identity(p, 1))
}

pub fn zero_module(group: &Group, p: Prime) -> GModule {
    GModule::from_fn_unchecked(group, p, 0, |_| FpMatrix::zeros(p, 0, 0))
}

/// `kG` with basis the group elements and `g · e_h = e_{gh}`.
pub fn regular_module(group: &Group, p: Prime) -> GModule {
    let n = group.order();
    GModule::from_fn_unchecked(group, p, n, |g| {
        let gi = group.position(g).expect("generator");
        let mut m = FpMatrix::zeros(p, n, n);
        for h in 0..n {
            m.set(group.mul(gi, h), h, 1);
        }
        m
    })
}

/// The permutation module on `{0, …, degree−1}`: `g · e_i = e_{g(i)}`.
pub fn permutation_module(group: &Group, p: Prime) -> GModule {
    let n = group.degree();
    GModule::from_fn_unchecked(group, p, n, |g| {
        let mut m = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            m.set(g.apply(i), i, 1);
        }
        m
    })
}

/// Submodule of the permutation module of vectors with coordinate sum 0.
pub fn augmentation_module(group: &Group, p: Prime) -> GModule {
    let perm = permutation_module(group, p);
    let n = group.degree();
    let sum = FpMatrix::from_fn(p, 1, n, |_, _| 1);
    let f = ModuleHom::from_parts(perm, trivial_module(group, p), sum);
    kernel(&f).0
}

/// A module homomorphism, stored as a `target.dim × source.dim` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    source: GModule,
    target: GModule,
    matrix: FpMatrix,
}

impl ModuleHom {
    /// Checks shape and that `matrix` intertwines the generator actions.
    pub fn new(source: &GModule, target: &GModule, matrix: FpMatrix) -> Result<Self> {
        source.check_same_ring(target)?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() || matrix.prime() != source.prime() {
            return Err(Error::DimensionMismatch(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let tgt = target.actions_for(source.group());
        for (k, (a, b)) in source.generator_matrices().iter().zip(&tgt).enumerate() {
            if &matrix * a != b * &matrix {
                return Err(Error::NotIntertwiner(format!("fails on generator {k}")));
            }
        }
        Ok(Self::from_parts(source.clone(), target.clone(), matrix))
    }

    pub(crate) fn from_parts(source: GModule, target: GModule, matrix: FpMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.dim());
        debug_assert_eq!(matrix.cols(), source.dim());
        ModuleHom { source, target, matrix }
    }

    pub fn identity(m: &GModule) -> Self {
        Self::from_parts(m.clone(), m.clone(), FpMatrix::identity(m.prime(), m.dim()))
    }

    pub fn zero(source: &GModule, target: &GModule) -> Self {
        Self::from_parts(source.clone(), target.clone(), FpMatrix::zeros(source.prime(), target.dim(), source.dim()))
    }

    pub fn source(&self) -> &GModule {
        &self.source
    }
    pub fn target(&self) -> &GModule {
        &self.target
    }
    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }
    pub fn into_matrix(self) -> FpMatrix {
        self.matrix
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &ModuleHom) -> Result<ModuleHom> {
        if other.target.dim() != self.source.dim() || !other.target.same_ring(&self.source) {
            return Err(Error::DimensionMismatch("composition of incompatible homs".into()));
        }
        Ok(Self::from_parts(other.source.clone(), self.target.clone(), &self.matrix * &other.matrix))
    }

    pub fn add(&self, other: &ModuleHom) -> Result<ModuleHom> {
        Ok(Self::from_parts(self.source.clone(), self.target.clone(), self.matrix.checked_add(&other.matrix)?))
    }

    pub fn scale(&self, c: u32) -> ModuleHom {
        Self::from_parts(self.source.clone(), self.target.clone(), self.matrix.scalar_mul(c))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }
    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }
    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Checks the intertwining relation for every group element, not only
    /// the generators.
    pub fn intertwines_all(&self) -> bool {
        let g = self.source.group();
        (0..g.order()).all(|x| {
            let e = g.element(x);
            let b = self.target.action_of(e).expect("compatible groups");
            &self.matrix * self.source.action(x) == b * &self.matrix
        })
    }
}

/// `0 → U → V → W → 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSeq {
    sub: ModuleHom,
    quo: ModuleHom,
}

impl ShortExactSeq {
    pub fn new(sub: ModuleHom, quo: ModuleHom) -> Result<Self> {
        if sub.target() != quo.source() {
            return Err(Error::Precondition("middle terms differ".into()));
        }
        if !sub.is_injective() || !quo.is_surjective() || !quo.compose(&sub)?.is_zero() {
            return Err(Error::Precondition("maps do not form a short exact sequence".into()));
        }
        if sub.source().dim() + quo.target().dim() != sub.target().dim() {
            return Err(Error::Precondition("image of the first map is not the kernel of the second".into()));
        }
        Ok(ShortExactSeq { sub, quo })
    }

    pub(crate) fn from_parts(sub: ModuleHom, quo: ModuleHom) -> Self {
        ShortExactSeq { sub, quo }
    }

    pub fn sub(&self) -> &ModuleHom {
        &self.sub
    }
    pub fn quo(&self) -> &ModuleHom {
        &self.quo
    }
    pub fn left(&self) -> &GModule {
        self.sub.source()
    }
    pub fn middle(&self) -> &GModule {
        self.sub.target()
    }
    pub fn right(&self) -> &GModule {
        self.quo.target()
    }
}

/// Basis of the smallest subspace containing `vectors` and stable under
/// the given matrices.
pub fn spin(p: Prime, dim: usize, mats: &[FpMatrix], vectors: &[Vec<u32>]) -> Echelon {
    let mut basis = Echelon::new(p, dim);
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for v in vectors {
        if basis.insert(v) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for a in mats {
            let w = a.mul_vec(&v);
            if basis.insert(&w) {
                queue.push(w);
            }
        }
    }
    basis
}

/// A vector basis of `M` adapted to the module structure: every vector is
/// either a seed or a generator applied to an earlier vector.
struct StandardBasis {
    vectors: Vec<Vec<u32>>,
    seed_of: Vec<usize>,
    /// `(parent, generator)` for non-seed vectors.
    origin: Vec<Option<(usize, usize)>>,
    seeds: usize,
    tree: BTreeSet<(usize, usize)>,
}

impl StandardBasis {
    fn new(p: Prime, dim: usize, mats: &[FpMatrix]) -> Self {
        let mut ech = Echelon::new(p, dim);
        let mut sb = StandardBasis { vectors: vec![], seed_of: vec![], origin: vec![], seeds: 0, tree: BTreeSet::new() };
        for i in 0..dim {
            let mut e = vec![0u32; dim];
            e[i] = 1;
            if !ech.insert(&e) {
                continue;
            }
            let seed = sb.seeds;
            sb.seeds += 1;
            let start = sb.vectors.len();
            sb.vectors.push(e);
            sb.seed_of.push(seed);
            sb.origin.push(None);
            let mut j = start;
            while j < sb.vectors.len() {
                for (k, a) in mats.iter().enumerate() {
                    let w = a.mul_vec(&sb.vectors[j]);
                    if ech.insert(&w) {
                        sb.vectors.push(w);
                        sb.seed_of.push(seed);
                        sb.origin.push(Some((j, k)));
                        sb.tree.insert((j, k));
                    }
                }
                j += 1;
            }
        }
        sb
    }
}

/// Basis of `Hom_{kG}(M, N)`.
///
/// A homomorphism is determined by its values on the seeds of a standard
/// basis of `M`; the relations come from the generator images that are not
/// tree edges. The resulting system has `seeds · dim N` unknowns.
pub fn hom_space(m: &GModule, n: &GModule) -> Result<Vec<ModuleHom>> {
    m.check_same_ring(n)?;
    let p = m.prime();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(vec![]);
    }
    let a = m.generator_matrices();
    let b = n.actions_for(m.group());
    let sb = StandardBasis::new(p, dm, a);
    let s = FpMatrix::from_columns(p, dm, &sb.vectors);
    let s_inv = s.inverse().ok_or_else(|| Error::InternalConsistency("standard basis is singular".into()))?;
    let mut paths: Vec<FpMatrix> = Vec::with_capacity(dm);
    for j in 0..dm {
        paths.push(match sb.origin[j] {
            None => FpMatrix::identity(p, dn),
            Some((parent, k)) => &b[k] * &paths[parent],
        });
    }
    let unknowns = sb.seeds * dn;
    let mut eqs = Echelon::new(p, unknowns);
    'outer: for (k, ak) in a.iter().enumerate() {
        let coords = &s_inv * &(ak * &s);
        for j in 0..dm {
            if sb.tree.contains(&(j, k)) {
                continue;
            }
            let mut block = FpMatrix::zeros(p, dn, unknowns);
            for l in 0..dm {
                let c = coords.get(l, j);
                if c != 0 {
                    add_block(&mut block, sb.seed_of[l] * dn, c, &paths[l]);
                }
            }
            let bp = &b[k] * &paths[j];
            add_block(&mut block, sb.seed_of[j] * dn, p.neg(1), &bp);
            for r in 0..dn {
                eqs.insert(block.row(r));
                if eqs.dim() == unknowns {
                    break 'outer;
                }
            }
        }
    }
    let null = eqs.to_matrix().nullspace();
    let mut out = Vec::with_capacity(null.cols());
    for c in 0..null.cols() {
        let u = null.col(c);
        let mut xs = FpMatrix::zeros(p, dn, dm);
        for j in 0..dm {
            let seed = sb.seed_of[j];
            let col = paths[j].mul_vec(&u[seed * dn..(seed + 1) * dn]);
            for (r, v) in col.into_iter().enumerate() {
                xs.set(r, j, v);
            }
        }
        out.push(ModuleHom::from_parts(m.clone(), n.clone(), &xs * &s_inv));
    }
    Ok(out)
}

fn add_block(target: &mut FpMatrix, col0: usize, c: u32, m: &FpMatrix) {
    let p = target.prime();
    for r in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(r, j);
            if v != 0 {
                let cur = target.get(r, col0 + j);
                target.set(r, col0 + j, p.add(cur, p.mul(c, v)));
            }
        }
    }
}

pub fn hom_dim(m: &GModule, n: &GModule) -> Result<usize> {
    Ok(hom_space(m, n)?.len())
}

/// `M ⊕ N` together with its canonical maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: GModule,
    pub injections: Vec<ModuleHom>,
    pub projections: Vec<ModuleHom>,
}

/// Direct sum of any number of modules over the same group, block-diagonal
/// in the given order.
pub fn direct_sum_many(group: &Group, p: Prime, parts: &[GModule]) -> Result<DirectSum> {
    for m in parts {
        if m.prime() != p || !m.group().same_as(group) {
            return Err(Error::GroupMismatch);
        }
    }
    let dim: usize = parts.iter().map(GModule::dim).sum();
    let per_part: Vec<Vec<FpMatrix>> = parts.iter().map(|m| m.actions_for(group)).collect();
    let gens = (0..group.generators().len())
        .map(|k| {
            let mut a = FpMatrix::zeros(p, dim, dim);
            let mut off = 0;
            for (m, acts) in parts.iter().zip(&per_part) {
                a.set_block(off, off, &acts[k]);
                off += m.dim();
            }
            a
        })
        .collect();
    let module = GModule::from_generators_unchecked(group, p, dim, gens);
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = 0;
    for m in parts {
        let mut inj = FpMatrix::zeros(p, dim, m.dim());
        inj.set_block(off, 0, &FpMatrix::identity(p, m.dim()));
        projections.push(ModuleHom::from_parts(module.clone(), m.clone(), inj.transpose()));
        injections.push(ModuleHom::from_parts(m.clone(), module.clone(), inj));
        off += m.dim();
    }
    Ok(DirectSum { module, injections, projections })
}

pub fn direct_sum(m: &GModule, n: &GModule) -> Result<DirectSum> {
    m.check_same_ring(n)?;
    direct_sum_many(m.group(), m.prime(), &[m.clone(), n.clone()])
}

/// `M ⊗_k N` with the diagonal action (Kronecker products).
pub fn tensor(m: &GModule, n: &GModule) -> Result<GModule> {
    m.check_same_ring(n)?;
    let b = n.actions_for(m.group());
    let gens = m
        .generator_matrices()
        .iter()
        .zip(&b)
        .map(|(x, y)| x.kron(y))
        .collect::<Result<Vec<_>>>()?;
    Ok(GModule::from_generators_unchecked(m.group(), m.prime(), m.dim() * n.dim(), gens))
}

/// `M* = Hom_k(M, k)`: `g` acts by the inverse transpose.
pub fn dual(m: &GModule) -> GModule {
    let gens = m
        .generator_matrices()
        .iter()
        .map(|a| a.inverse().expect("module generators are invertible").transpose())
        .collect();
    GModule::from_generators_unchecked(m.group(), m.prime(), m.dim(), gens)
}

/// The `G`-stable subspace spanned by rows of an rref matrix, as a module,
/// with its inclusion. Fails if the subspace is not stable.
fn submodule_from_rref(m: &GModule, basis: &FpMatrix, pivots: &[usize]) -> Result<(GModule, ModuleHom)> {
    let p = m.prime();
    let k = basis.rows();
    let incl = basis.transpose();
    let mut gens = Vec::with_capacity(m.generator_matrices().len());
    for a in m.generator_matrices() {
        let img = a * &incl;
        let coords = img.select_rows(pivots);
        if &incl * &coords != img {
            return Err(Error::Precondition("subspace is not a submodule".into()));
        }
        gens.push(coords);
    }
    let sub = GModule::from_generators_unchecked(m.group(), p, k, gens);
    Ok((sub.clone(), ModuleHom::from_parts(sub, m.clone(), incl)))
}

/// Submodule generated by `vectors`, with its inclusion; the basis is the
/// rref of the spun space.
pub fn submodule_spin(m: &GModule, vectors: &[Vec<u32>]) -> Result<(GModule, ModuleHom)> {
    if vectors.iter().any(|v| v.len() != m.dim()) {
        return Err(Error::DimensionMismatch("vector length differs from module dimension".into()));
    }
    let ech = spin(m.prime(), m.dim(), m.generator_matrices(), vectors);
    let rr = ech.to_matrix().rref();
    let k = rr.rank();
    submodule_from_rref(m, &rr.reduced.block(0, 0, k, m.dim()), &rr.pivots)
}

/// The subspace spanned by the columns of `basis`, which must be a submodule.
pub fn submodule_from_columns(m: &GModule, basis: &FpMatrix) -> Result<(GModule, ModuleHom)> {
    let rr = basis.transpose().rref();
    let k = rr.rank();
    submodule_from_rref(m, &rr.reduced.block(0, 0, k, m.dim()), &rr.pivots)
}

/// `M / S` for the image of an injective hom into `M`, with the projection.
/// The quotient basis is the images of the unit vectors outside the rref
/// pivots of the submodule.
pub fn quotient_module(m: &GModule, inclusion: &ModuleHom) -> Result<(GModule, ModuleHom)> {
    if inclusion.target() != m || !inclusion.is_injective() {
        return Err(Error::Precondition("not the inclusion of a submodule".into()));
    }
    let p = m.prime();
    let d = m.dim();
    let rr = inclusion.matrix().transpose().rref();
    let pivots = &rr.pivots;
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    // projection: reduce against the submodule rows, read off free coordinates
    let mut proj = FpMatrix::zeros(p, free.len(), d);
    for j in 0..d {
        let mut v = vec![0u32; d];
        v[j] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            let f = v[pc];
            if f != 0 {
                for c in 0..d {
                    let r = rr.reduced.get(i, c);
                    if r != 0 {
                        v[c] = p.sub(v[c], p.mul(f, r));
                    }
                }
            }
        }
        for (q, &fc) in free.iter().enumerate() {
            proj.set(q, j, v[fc]);
        }
    }
    let lift = FpMatrix::identity(p, d).select_columns(&free);
    let gens = m.generator_matrices().iter().map(|a| &proj * &(a * &lift)).collect();
    let q = GModule::from_generators_unchecked(m.group(), p, free.len(), gens);
    let pi = ModuleHom::from_parts(m.clone(), q.clone(), proj);
    debug_assert!(pi.compose(inclusion).map(|c| c.is_zero()).unwrap_or(false));
    Ok((q, pi))
}

pub fn kernel(f: &ModuleHom) -> (GModule, ModuleHom) {
    let null = f.matrix().nullspace();
    submodule_from_columns(f.source(), &null).expect("kernels are submodules")
}

pub fn image(f: &ModuleHom) -> (GModule, ModuleHom) {
    submodule_from_columns(f.target(), f.matrix()).expect("images are submodules")
}

/// `0 → Ω′M → F → M → 0` with `F = kG^{dim M + extra}`; the first `dim M`
/// free generators map to the basis of `M`, the `extra` ones to zero.
pub fn free_presentation_padded(m: &GModule, extra: usize) -> ShortExactSeq {
    let p = m.prime();
    let g = m.group();
    let n = g.order();
    let reg = regular_module(g, p);
    let copies = m.dim() + extra;
    let parts = vec![reg; copies];
    let free = direct_sum_many(g, p, &parts).expect("same group").module;
    let mut surj = FpMatrix::zeros(p, m.dim(), copies * n);
    for i in 0..m.dim() {
        for x in 0..n {
            let a = m.action(x);
            for r in 0..m.dim() {
                surj.set(r, i * n + x, a.get(r, i));
            }
        }
    }
    let quo = ModuleHom::from_parts(free, m.clone(), surj);
    let (_, sub) = kernel(&quo);
    ShortExactSeq::from_parts(sub, quo)
}

pub fn free_presentation(m: &GModule) -> ShortExactSeq {
    free_presentation_padded(m, 0)
}

/// `Ext¹_{kG}(M, N)` as the cokernel of `Hom(F, N) → Hom(Ω′M, N)`.
#[derive(Clone, Debug)]
pub struct Ext1 {
    pub dim: usize,
    /// Homs `Ω′M → N` whose classes form a basis of the cokernel.
    pub representatives: Vec<ModuleHom>,
    pub presentation: ShortExactSeq,
}

pub fn ext1(m: &GModule, n: &GModule) -> Result<Ext1> {
    ext1_with(free_presentation(m), n)
}

/// Ext¹ computed from a given free presentation `0 → Ω′ → F → M → 0`,
/// where `F` is a direct sum of regular modules in the block layout of
/// [`free_presentation_padded`].
pub fn ext1_with(presentation: ShortExactSeq, n: &GModule) -> Result<Ext1> {
    let omega = presentation.left().clone();
    omega.check_same_ring(n)?;
    let p = n.prime();
    let g = omega.group().clone();
    let order = g.order();
    let free_dim = presentation.middle().dim();
    let incl = presentation.sub().matrix();
    // Hom(kG, N) ≅ N via e_1 ↦ v; restrict each such map on each copy to Ω′
    let mut boundary = Echelon::new(p, n.dim() * omega.dim());
    for copy in 0..free_dim / order {
        for j in 0..n.dim() {
            let mut f = FpMatrix::zeros(p, n.dim(), free_dim);
            for x in 0..order {
                let a = n.action_of(g.element(x)).expect("same group");
                for r in 0..n.dim() {
                    f.set(r, copy * order + x, a.get(r, j));
                }
            }
            boundary.insert(&(&f * incl).vectorize());
        }
    }
    let homs = hom_space(&omega, n)?;
    let mut reps = Vec::new();
    for h in homs {
        if boundary.insert(&h.matrix().vectorize()) {
            reps.push(h);
        }
    }
    Ok(Ext1 { dim: reps.len(), representatives: reps, presentation })
}

/// A section `s: W → V` with `quo ∘ s = id`, if the sequence splits.
pub fn is_split(seq: &ShortExactSeq) -> Result<Option<ModuleHom>> {
    let w = seq.right();
    let v = seq.middle();
    let p = v.prime();
    if w.dim() == 0 {
        return Ok(Some(ModuleHom::zero(w, v)));
    }
    let homs = hom_space(w, v)?;
    let cols: Vec<Vec<u32>> = homs.iter().map(|h| (seq.quo().matrix() * h.matrix()).vectorize()).collect();
    if cols.is_empty() {
        return Ok(None);
    }
    let a = FpMatrix::from_columns(p, w.dim() * w.dim(), &cols);
    let Some(c) = a.solve(&FpMatrix::identity(p, w.dim()).vectorize())? else {
        return Ok(None);
    };
    let mut s = FpMatrix::zeros(p, v.dim(), w.dim());
    for (h, &ci) in homs.iter().zip(&c) {
        if ci != 0 {
            s.add_scaled(ci, h.matrix());
        }
    }
    Ok(Some(ModuleHom::from_parts(w.clone(), v.clone(), s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::preset;

    fn gf(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn basic_modules() {
        let s3 = preset("S3").unwrap();
        assert_eq!(trivial_module(&s3, gf(2)).dim(), 1);
        let c2 = preset("C2").unwrap();
        let r = regular_module(&c2, gf(2));
        assert_eq!(r.generator_matrices()[0], FpMatrix::from_rows(gf(2), &[vec![0, 1], vec![1, 0]]).unwrap());
        let r6 = regular_module(&s3, gf(2));
        assert_eq!(r6.dim(), 6);
        for a in r6.generator_matrices() {
            assert!((0..6).all(|i| a.row(i).iter().sum::<u32>() == 1));
        }
        assert!(GModule::new(&s3, gf(2), 6, r6.generator_matrices().to_vec()).is_ok());
    }

    #[test]
    fn invalid_modules_rejected() {
        let s3 = preset("S3").unwrap();
        let p = gf(3);
        // (0 1) acting as identity while (0 1 2) acts as a 3-cycle breaks (01)(012)(01) = (012)^{-1}
        let id = FpMatrix::identity(p, 3);
        let cyc = FpMatrix::from_rows(p, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let err = GModule::new(&s3, p, 3, vec![id, cyc]).unwrap_err();
        assert!(matches!(err, Error::InvalidModule(_)));
        let sing = FpMatrix::zeros(p, 1, 1);
        assert!(GModule::new(&s3, p, 1, vec![sing.clone(), sing]).is_err());
        assert!(GModule::new(&s3, p, 1, vec![FpMatrix::identity(p, 1)]).is_err());
    }

    #[test]
    fn hom_space_examples() {
        let p = gf(2);
        for name in ["C2", "S3", "A4"] {
            let g = preset(name).unwrap();
            let k = trivial_module(&g, p);
            assert_eq!(hom_dim(&k, &k).unwrap(), 1);
        }
        let c2 = preset("C2").unwrap();
        assert_eq!(hom_dim(&regular_module(&c2, p), &trivial_module(&c2, p)).unwrap(), 1);
        let s3 = preset("S3").unwrap();
        let m2 = augmentation_module(&s3, p);
        assert_eq!(m2.dim(), 2);
        assert_eq!(hom_dim(&m2, &trivial_module(&s3, p)).unwrap(), 0);
        assert_eq!(hom_dim(&m2, &m2).unwrap(), 1);
        let r = regular_module(&s3, p);
        assert_eq!(hom_dim(&r, &r).unwrap(), 6);
    }

    #[test]
    fn hom_space_is_complete_for_small_case() {
        // brute force over all 2x2 matrices for End(regular(C2, 2))
        let p = gf(2);
        let c2 = preset("C2").unwrap();
        let r = regular_module(&c2, p);
        let mut count = 0;
        for bits in 0..16u32 {
            let m = FpMatrix::from_fn(p, 2, 2, |i, j| (bits >> (2 * i + j)) & 1);
            if ModuleHom::new(&r, &r, m).is_ok() {
                count += 1;
            }
        }
        assert_eq!(count, 1 << hom_dim(&r, &r).unwrap());
    }

    #[test]
    fn sums_tensors_duals() {
        let p = gf(2);
        let c2 = preset("C2").unwrap();
        let r = regular_module(&c2, p);
        let k = trivial_module(&c2, p);
        assert_eq!(dual(&k), k);
        assert_eq!(tensor(&k, &r).unwrap(), r);
        let ds = direct_sum(&k, &r).unwrap();
        assert_eq!(ds.module.dim(), 3);
        for (i, pr) in ds.injections.iter().zip(&ds.projections) {
            assert!(pr.compose(i).unwrap().matrix().is_identity());
            assert!(ModuleHom::new(i.source(), i.target(), i.matrix().clone()).is_ok());
        }
        assert_eq!(tensor(&r, &r).unwrap().dim(), 4);
    }

    #[test]
    fn spin_quotient_kernel() {
        let p = gf(2);
        let c2 = preset("C2").unwrap();
        let r = regular_module(&c2, p);
        let (z, _) = submodule_spin(&r, &[]).unwrap();
        assert_eq!(z.dim(), 0);
        let (whole, _) = submodule_spin(&r, &[vec![1, 0]]).unwrap();
        assert_eq!(whole.dim(), 2);
        let (soc, incl) = submodule_spin(&r, &[vec![1, 1]]).unwrap();
        assert_eq!(soc.dim(), 1);
        let (q, pi) = quotient_module(&r, &incl).unwrap();
        assert_eq!(q, trivial_module(&c2, p));
        assert!(pi.is_surjective());
        let (q0, _) = quotient_module(&r, &ModuleHom::zero(&zero_module(&c2, p), &r)).unwrap();
        assert_eq!(q0, r);
        let (k0, _) = kernel(&incl);
        assert_eq!(k0.dim(), 0);
        let bad = ModuleHom::from_parts(soc.clone(), r.clone(), FpMatrix::zeros(p, 2, 1));
        assert!(quotient_module(&r, &bad).is_err());
        assert!(submodule_from_columns(&r, &FpMatrix::from_rows(p, &[vec![1], vec![0]]).unwrap()).is_err());
    }

    #[test]
    fn presentations_and_ext() {
        let p = gf(2);
        let c2 = preset("C2").unwrap();
        let k = trivial_module(&c2, p);
        let pres = free_presentation(&k);
        assert_eq!(pres.middle().dim(), 2);
        assert_eq!(pres.left(), &k);
        assert_eq!(ext1(&k, &k).unwrap().dim, 1);
        let r = regular_module(&c2, p);
        assert_eq!(ext1(&r, &k).unwrap().dim, 0);
        let c3 = preset("C3").unwrap();
        let k3 = trivial_module(&c3, p);
        assert_eq!(ext1(&k3, &k3).unwrap().dim, 0);
        let z = zero_module(&c2, p);
        let pz = free_presentation(&z);
        assert_eq!(pz.middle().dim(), 0);
        assert_eq!(pz.left().dim(), 0);
        let padded = ext1_with(free_presentation_padded(&k, 2), &k).unwrap();
        assert_eq!(padded.dim, 1);
    }

    #[test]
    fn splitting() {
        let p = gf(2);
        let c2 = preset("C2").unwrap();
        let k = trivial_module(&c2, p);
        let r = regular_module(&c2, p);
        let ds = direct_sum(&k, &r).unwrap();
        let seq = ShortExactSeq::new(ds.injections[0].clone(), ds.projections[1].clone()).unwrap();
        assert!(is_split(&seq).unwrap().is_some());
        let (_, incl) = submodule_spin(&r, &[vec![1, 1]]).unwrap();
        let (_, pi) = quotient_module(&r, &incl).unwrap();
        let seq = ShortExactSeq::new(incl, pi).unwrap();
        assert!(is_split(&seq).unwrap().is_none());
        let pres = free_presentation(&r);
        let s = is_split(&pres).unwrap().expect("free quotient splits");
        assert!(pres.quo().compose(&s).unwrap().matrix().is_identity());
    }
}
