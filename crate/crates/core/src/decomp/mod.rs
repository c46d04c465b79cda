//! Endomorphism algebras, radicals and Krull–Schmidt decompositions.

mod poly;

use alloc::boxed::Box;
use alloc::vec::Vec;
use alloc::{format, vec};

use once_cell::race::OnceBox;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use self::poly::Poly;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, FpMatrix, Prime};
use crate::reps::{direct_sum_many, hom_space, submodule_from_columns, GModule, ModuleHom};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x6a09_e667_f3bc_c908;

/// `End_{kG}(M)` with a reduced basis: the vectorized basis matrices are in
/// rref, so the coordinates of an element are its entries at the pivots.
pub struct EndAlgebra {
    module: GModule,
    basis: Vec<FpMatrix>,
    pivots: Vec<usize>,
    structure: OnceBox<Vec<u32>>,
}

impl core::fmt::Debug for EndAlgebra {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "EndAlgebra(dim {}, module dim {})", self.dim(), self.module.dim())
    }
}

pub fn end_algebra(m: &GModule) -> Result<EndAlgebra> {
    EndAlgebra::new(m)
}

impl EndAlgebra {
    pub fn new(m: &GModule) -> Result<Self> {
        let homs = hom_space(m, m)?;
        Ok(Self::from_matrices(m, homs.into_iter().map(ModuleHom::into_matrix).collect()))
    }

    fn from_matrices(m: &GModule, mats: Vec<FpMatrix>) -> Self {
        let p = m.prime();
        let n = m.dim();
        let rows: Vec<Vec<u32>> = mats.iter().map(FpMatrix::vectorize).collect();
        let mut stacked = FpMatrix::zeros(p, rows.len(), n * n);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                stacked.set(i, j, v);
            }
        }
        let rr = stacked.rref();
        let basis = (0..rr.rank())
            .map(|i| FpMatrix::from_flat(p, n, n, rr.reduced.row(i).to_vec()).expect("square shape"))
            .collect();
        EndAlgebra { module: m.clone(), basis, pivots: rr.pivots, structure: OnceBox::new() }
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn prime(&self) -> Prime {
        self.module.prime()
    }
    pub fn basis(&self) -> &[FpMatrix] {
        &self.basis
    }
    pub fn basis_homs(&self) -> Vec<ModuleHom> {
        self.basis
            .iter()
            .map(|b| ModuleHom::from_parts(self.module.clone(), self.module.clone(), b.clone()))
            .collect()
    }

    /// Flat indices (row-major) of the entries that serve as coordinates.
    pub(crate) fn pivot_positions(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of an element known to lie in the algebra.
    pub(crate) fn coords_unchecked(&self, x: &FpMatrix) -> Vec<u32> {
        let v = x.as_slice();
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    /// Coordinates, or `None` if `x` is not an endomorphism.
    pub fn coords(&self, x: &FpMatrix) -> Option<Vec<u32>> {
        let c = self.coords_unchecked(x);
        (&self.element(&c) == x).then_some(c)
    }

    pub fn element(&self, coords: &[u32]) -> FpMatrix {
        let p = self.prime();
        let n = self.module.dim();
        let mut out = FpMatrix::zeros(p, n, n);
        for (b, &c) in self.basis.iter().zip(coords) {
            if c != 0 {
                out.add_scaled(c, b);
            }
        }
        out
    }

    pub fn identity_coords(&self) -> Vec<u32> {
        self.coords_unchecked(&FpMatrix::identity(self.prime(), self.module.dim()))
    }

    /// `c[(i·d + j)·d + k]` with `b_i b_j = Σ_k c_ijk b_k`.
    pub fn structure_constants(&self) -> &[u32] {
        self.structure.get_or_init(|| {
            let d = self.dim();
            let mut out = Vec::with_capacity(d * d * d);
            for a in &self.basis {
                for b in &self.basis {
                    out.extend(self.coords_unchecked(&(a * b)));
                }
            }
            Box::new(out)
        })
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        let c = self.structure_constants();
        (0..d).all(|i| (0..d).all(|j| c[(i * d + j) * d..(i * d + j + 1) * d] == c[(j * d + i) * d..(j * d + i + 1) * d]))
    }
}

/// `J(E)` as rows of coordinates (an rref matrix, `dim J × dim E`).
#[derive(Clone, Debug)]
pub struct Radical {
    pub coords: FpMatrix,
    pivots: Vec<usize>,
}

impl Radical {
    pub fn dim(&self) -> usize {
        self.coords.rows()
    }

    /// Basis of the radical as matrices.
    pub fn elements(&self, e: &EndAlgebra) -> Vec<FpMatrix> {
        (0..self.dim()).map(|i| e.element(self.coords.row(i))).collect()
    }

    /// Coordinates of `x` modulo `J`, in the basis of `E/J` given by the
    /// algebra basis vectors outside the pivots of `J`.
    fn reduce(&self, e: &EndAlgebra, mut v: Vec<u32>) -> Vec<u32> {
        let p = e.prime();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let f = v[pc];
            if f != 0 {
                for (c, x) in v.iter_mut().enumerate() {
                    let r = self.coords.get(i, c);
                    if r != 0 {
                        *x = p.sub(*x, p.mul(f, r));
                    }
                }
            }
        }
        (0..v.len()).filter(|c| !self.pivots.contains(c)).map(|c| v[c]).collect()
    }

    fn complement(&self, e: &EndAlgebra) -> Vec<usize> {
        (0..e.dim()).filter(|c| !self.pivots.contains(c)).collect()
    }
}

fn lift_mul_mod(a: &[u64], b: &[u64], n: usize, m: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            let row = &b[k * n..(k + 1) * n];
            let dst = &mut out[i * n..(i + 1) * n];
            for j in 0..n {
                dst[j] = (dst[j] + x * row[j]) % m;
            }
        }
    }
    out
}

/// `(Tr(x̃^{p^i}) mod p^{i+1}) / p^i` for an integer lift `x̃` of `x`.
fn lifted_trace(x: &FpMatrix, i: u32) -> Result<u32> {
    let p = x.prime().get() as u64;
    let n = x.rows();
    let pi = p.pow(i);
    let m = pi * p;
    let mut cur: Vec<u64> = x.as_slice().iter().map(|&v| v as u64).collect();
    for _ in 0..i {
        // cur <- cur^p
        let base = cur.clone();
        let mut acc: Option<Vec<u64>> = None;
        let mut b = base;
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(a) => lift_mul_mod(&a, &b, n, m),
                });
            }
            e >>= 1;
            if e > 0 {
                b = lift_mul_mod(&b, &b, n, m);
            }
        }
        cur = acc.expect("p >= 2");
    }
    let tr = (0..n).map(|d| cur[d * n + d]).sum::<u64>() % m;
    if tr % pi != 0 {
        return Err(Error::InternalConsistency(format!(
            "lifted trace {tr} not divisible by {pi} on the radical filtration"
        )));
    }
    Ok((tr / pi) as u32)
}

/// Jacobson radical of an algebra of `n × n` matrices over GF(p): the
/// trace-form kernel `I_0`, refined by the lifted traces of `p^i`-th powers
/// for `i ≤ ⌊log_p n⌋`.
pub fn radical(e: &EndAlgebra) -> Result<Radical> {
    let p = e.prime();
    let d = e.dim();
    let n = e.module().dim();
    // I_0 = { a : Tr(a b) = 0 for all b }
    let mut form = FpMatrix::zeros(p, d, d);
    for (bi, b) in e.basis().iter().enumerate() {
        let bt = b.transpose();
        for (ai, a) in e.basis().iter().enumerate() {
            let s = a.as_slice().iter().zip(bt.as_slice()).fold(0u32, |acc, (&x, &y)| p.add(acc, p.mul(x, y)));
            form.set(bi, ai, s);
        }
    }
    let mut ideal: Vec<Vec<u32>> = columns(&form.nullspace());
    let mut levels = 0u32;
    let mut pow = p.get() as usize;
    while pow <= n {
        levels += 1;
        pow = pow.saturating_mul(p.get() as usize);
    }
    for i in 1..=levels {
        if ideal.is_empty() {
            break;
        }
        let mats: Vec<FpMatrix> = ideal.iter().map(|c| e.element(c)).collect();
        let mut sys = FpMatrix::zeros(p, d, mats.len());
        for (bi, b) in e.basis().iter().enumerate() {
            for (ai, a) in mats.iter().enumerate() {
                sys.set(bi, ai, lifted_trace(&(a * b), i)?);
            }
        }
        let null = sys.nullspace();
        ideal = columns(&null)
            .into_iter()
            .map(|comb| {
                let mut v = vec![0u32; d];
                for (c, basis_vec) in comb.iter().zip(&ideal) {
                    if *c != 0 {
                        for (x, &y) in v.iter_mut().zip(basis_vec) {
                            *x = p.add(*x, p.mul(*c, y));
                        }
                    }
                }
                v
            })
            .collect();
    }
    let mut stacked = FpMatrix::zeros(p, ideal.len(), d);
    for (i, v) in ideal.iter().enumerate() {
        for (j, &x) in v.iter().enumerate() {
            stacked.set(i, j, x);
        }
    }
    let rr = stacked.rref();
    let k = rr.rank();
    let rad = Radical { coords: rr.reduced.block(0, 0, k, d), pivots: rr.pivots };
    for x in rad.elements(e) {
        if !x.is_nilpotent()? {
            return Err(Error::InternalConsistency("radical contains a non-nilpotent element".into()));
        }
    }
    Ok(rad)
}

fn columns(m: &FpMatrix) -> Vec<Vec<u32>> {
    (0..m.cols()).map(|c| m.col(c)).collect()
}

/// Randomness and effort knobs for decompositions.
#[derive(Clone, Copy, Debug)]
pub struct DecomposeOptions {
    pub seed: u64,
    /// Random endomorphisms tried for a Fitting split before the radical
    /// is computed.
    pub quick_attempts: usize,
    /// Random elements tried when the radical proves a split exists.
    pub split_attempts: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { seed: DEFAULT_SEED, quick_attempts: 4, split_attempts: 256 }
    }
}

/// One summand `M_i` with `inj_i: M_i → M` and `proj_i: M → M_i`.
#[derive(Clone, Debug)]
pub struct Factor {
    pub module: GModule,
    pub injection: ModuleHom,
    pub projection: ModuleHom,
    /// Dimension of `End(M_i)/J` over GF(p): the degree of the residue field.
    pub residue_degree: usize,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub module: GModule,
    pub factors: Vec<Factor>,
}

impl Decomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.module.dim()).collect()
    }
    pub fn len(&self) -> usize {
        self.factors.len()
    }
    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `proj_i ∘ inj_j = δ_ij` and `Σ inj_i ∘ proj_i = id`.
    pub fn verify(&self) -> bool {
        let p = self.module.prime();
        let n = self.module.dim();
        let mut sum = FpMatrix::zeros(p, n, n);
        for (i, a) in self.factors.iter().enumerate() {
            for (j, b) in self.factors.iter().enumerate() {
                let prod = a.projection.matrix() * b.injection.matrix();
                let ok = if i == j { prod.is_identity() } else { prod.is_zero() };
                if !ok {
                    return false;
                }
            }
            sum.add_scaled(1, &(a.injection.matrix() * a.projection.matrix()));
        }
        sum.is_identity()
    }

    /// The idempotents `inj_i ∘ proj_i`.
    pub fn idempotents(&self) -> Vec<FpMatrix> {
        self.factors.iter().map(|f| f.injection.matrix() * f.projection.matrix()).collect()
    }
}

/// Outcome of [`is_indecomposable`].
#[derive(Clone, Debug)]
pub enum Verdict {
    /// `End(M)/J` is a field of this degree over GF(p).
    Indecomposable { residue_degree: usize },
    /// A nontrivial idempotent endomorphism.
    Decomposable { idempotent: FpMatrix },
}

impl Verdict {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, Verdict::Indecomposable { .. })
    }
}

struct Part {
    module: GModule,
    incl: FpMatrix,
    proj: FpMatrix,
}

/// Splits `M = ker T ⊕ im T` for `T = θ^n`; `None` if `T` is 0 or invertible.
fn fitting_parts(m: &GModule, theta: &FpMatrix) -> Result<Option<[Part; 2]>> {
    let n = m.dim();
    let t = theta.stable_power()?;
    let r = t.rank();
    if r == 0 || r == n {
        return Ok(None);
    }
    let (km, ki) = submodule_from_columns(m, &t.nullspace())?;
    let (im, ii) = submodule_from_columns(m, &t)?;
    let both = ki.matrix().hstack(ii.matrix())?;
    let inv = both
        .inverse()
        .ok_or_else(|| Error::InternalConsistency("Fitting components do not span the module".into()))?;
    let dk = km.dim();
    let pk = inv.block(0, 0, dk, n);
    let pi = inv.block(dk, 0, n - dk, n);
    Ok(Some([
        Part { module: km, incl: ki.into_matrix(), proj: pk },
        Part { module: im, incl: ii.into_matrix(), proj: pi },
    ]))
}

/// The Fitting decomposition of `M` along `θ`, when nontrivial.
pub fn fitting_split(m: &GModule, theta: &ModuleHom) -> Result<Option<Decomposition>> {
    if theta.source() != m || theta.target() != m {
        return Err(Error::Precondition("not an endomorphism of the module".into()));
    }
    let Some(parts) = fitting_parts(m, theta.matrix())? else {
        return Ok(None);
    };
    let factors = parts
        .into_iter()
        .map(|part| Factor {
            injection: ModuleHom::from_parts(part.module.clone(), m.clone(), part.incl),
            projection: ModuleHom::from_parts(m.clone(), part.module.clone(), part.proj),
            module: part.module,
            residue_degree: 0,
        })
        .collect();
    Ok(Some(Decomposition { module: m.clone(), factors }))
}

enum Analysis {
    Leaf { residue_degree: usize },
    Split([Part; 2]),
}

fn random_element(e: &EndAlgebra, rng: &mut ChaCha8Rng) -> FpMatrix {
    let p = e.prime();
    let coords: Vec<u32> = (0..e.dim()).map(|_| p.reduce(rng.next_u64())).collect();
    e.element(&coords)
}

fn eval_poly(p: Prime, f: &[u32], x: &FpMatrix) -> FpMatrix {
    let n = x.rows();
    let mut acc = FpMatrix::zeros(p, n, n);
    for &c in f.iter().rev() {
        acc = &acc * x;
        if c != 0 {
            acc.add_scaled(c, &FpMatrix::identity(p, n));
        }
    }
    acc
}

/// Minimal polynomial of the image of `x` in `E/J`, monic, lowest first.
fn min_poly_mod_radical(e: &EndAlgebra, rad: &Radical, x: &FpMatrix) -> Poly {
    let p = e.prime();
    let n = e.module().dim();
    let mut ech = Echelon::new(p, e.dim() - rad.dim());
    let mut vecs: Vec<Vec<u32>> = Vec::new();
    let mut power = FpMatrix::identity(p, n);
    loop {
        let v = rad.reduce(e, e.coords_unchecked(&power));
        if ech.contains(&v) {
            // solve Σ c_i v_i = v
            let a = FpMatrix::from_columns(p, v.len(), &vecs);
            let c = a.solve(&v).expect("shapes agree").expect("vector lies in the span");
            let mut poly: Vec<u32> = c.iter().map(|&ci| p.neg(ci)).collect();
            poly.push(1);
            return poly;
        }
        ech.insert(&v);
        vecs.push(v);
        power = &power * x;
    }
}

fn analyze(m: &GModule, opts: &DecomposeOptions, rng: &mut ChaCha8Rng) -> Result<Analysis> {
    let e = EndAlgebra::new(m)?;
    if e.dim() == 1 {
        return Ok(Analysis::Leaf { residue_degree: 1 });
    }
    for b in e.basis() {
        if let Some(parts) = fitting_parts(m, b)? {
            return Ok(Analysis::Split(parts));
        }
    }
    for _ in 0..opts.quick_attempts {
        if let Some(parts) = fitting_parts(m, &random_element(&e, rng))? {
            return Ok(Analysis::Split(parts));
        }
    }
    let p = e.prime();
    let rad = radical(&e)?;
    let top = rad.complement(&e);
    if top.len() == 1 {
        return Ok(Analysis::Leaf { residue_degree: 1 });
    }
    let lifts: Vec<&FpMatrix> = top.iter().map(|&i| &e.basis()[i]).collect();
    let reduce = |x: &FpMatrix| rad.reduce(&e, e.coords_unchecked(x));
    let commutative = lifts
        .iter()
        .enumerate()
        .all(|(i, a)| lifts[i + 1..].iter().all(|b| reduce(&(&(*a * *b) - &(*b * *a))).iter().all(|&v| v == 0)));
    let mut candidates: Vec<FpMatrix> = Vec::new();
    if commutative {
        // E/J is a product of fields; it is one field iff x^p = x has only
        // the prime field as solutions
        let f = top.len();
        let mut frob = FpMatrix::zeros(p, f, f);
        for (q, x) in lifts.iter().enumerate() {
            let xp = x.pow(p.get() as u64)?;
            let mut v = reduce(&xp);
            v[q] = p.sub(v[q], 1);
            for (r, &val) in v.iter().enumerate() {
                frob.set(r, q, val);
            }
        }
        let fixed = frob.nullspace();
        if fixed.cols() == 1 {
            return Ok(Analysis::Leaf { residue_degree: f });
        }
        for c in 0..fixed.cols() {
            let coords = fixed.col(c);
            let n = m.dim();
            let mut x = FpMatrix::zeros(p, n, n);
            for (lift, &cv) in lifts.iter().zip(&coords) {
                if cv != 0 {
                    x.add_scaled(cv, lift);
                }
            }
            candidates.push(x);
        }
    }
    candidates.extend(lifts.iter().map(|x| (*x).clone()));
    let randoms = (0..opts.split_attempts).map(|_| random_element(&e, rng)).collect::<Vec<_>>();
    for x in candidates.iter().chain(&randoms) {
        let mu = min_poly_mod_radical(&e, &rad, x);
        let r = poly::radical(p, &mu);
        if poly::deg(&r) < 2 {
            continue;
        }
        let Some(g) = poly::proper_factor(p, &r, rng) else {
            continue;
        };
        let theta = eval_poly(p, &g, x);
        return match fitting_parts(m, &theta)? {
            Some(parts) => Ok(Analysis::Split(parts)),
            None => Err(Error::InternalConsistency(
                "a zero divisor of End/J did not give a Fitting split".into(),
            )),
        };
    }
    Err(Error::InternalConsistency(format!(
        "End/J of dimension {} is not a field but no splitting element was found",
        top.len()
    )))
}

fn decompose_parts(m: &GModule, opts: &DecomposeOptions, rng: &mut ChaCha8Rng) -> Result<Vec<(Part, usize)>> {
    if m.dim() == 0 {
        return Ok(vec![]);
    }
    match analyze(m, opts, rng)? {
        Analysis::Leaf { residue_degree } => {
            let id = FpMatrix::identity(m.prime(), m.dim());
            Ok(vec![(Part { module: m.clone(), incl: id.clone(), proj: id }, residue_degree)])
        }
        Analysis::Split(parts) => {
            let mut out = Vec::new();
            for part in parts {
                for (sub, deg) in decompose_parts(&part.module, opts, rng)? {
                    out.push((
                        Part { module: sub.module, incl: &part.incl * &sub.incl, proj: &sub.proj * &part.proj },
                        deg,
                    ));
                }
            }
            Ok(out)
        }
    }
}

/// Krull–Schmidt decomposition with certified indecomposable factors,
/// ordered by dimension and then by generator matrices.
pub fn decompose(m: &GModule) -> Result<Decomposition> {
    decompose_with(m, &DecomposeOptions::default())
}

pub fn decompose_with(m: &GModule, opts: &DecomposeOptions) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut parts = decompose_parts(m, opts, &mut rng)?;
    parts.sort_by(|(a, _), (b, _)| {
        a.module
            .dim()
            .cmp(&b.module.dim())
            .then_with(|| a.module.generator_matrices().cmp(b.module.generator_matrices()))
    });
    let factors = parts
        .into_iter()
        .map(|(part, residue_degree)| Factor {
            injection: ModuleHom::from_parts(part.module.clone(), m.clone(), part.incl),
            projection: ModuleHom::from_parts(m.clone(), part.module.clone(), part.proj),
            module: part.module,
            residue_degree,
        })
        .collect();
    let d = Decomposition { module: m.clone(), factors };
    debug_assert!(d.verify());
    Ok(d)
}

pub fn is_indecomposable(m: &GModule) -> Result<Verdict> {
    if m.dim() == 0 {
        return Err(Error::Precondition("the zero module is not indecomposable".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    Ok(match analyze(m, &DecomposeOptions::default(), &mut rng)? {
        Analysis::Leaf { residue_degree } => Verdict::Indecomposable { residue_degree },
        Analysis::Split([_, image]) => Verdict::Decomposable { idempotent: &image.incl * &image.proj },
    })
}

/// For indecomposable `U`: an isomorphism `U → V` if one exists. Since
/// `Hom(U, V) ≅ End(U)` when `U ≅ V` and a basis of a local ring cannot lie
/// inside its radical, some basis element is then invertible.
pub fn iso_indecomposable(u: &GModule, v: &GModule) -> Result<Option<ModuleHom>> {
    u.check_same_ring(v)?;
    if u.dim() != v.dim() {
        return Ok(None);
    }
    Ok(hom_space(u, v)?.into_iter().find(|f| f.is_isomorphism()))
}

/// Whether the indecomposable `U` is a direct summand of `N`: some
/// `g ∘ f` with `f: U → N`, `g: N → U` from the hom bases is invertible.
pub fn is_summand_indecomposable(u: &GModule, n: &GModule) -> Result<bool> {
    u.check_same_ring(n)?;
    if u.dim() > n.dim() {
        return Ok(false);
    }
    let fs = hom_space(u, n)?;
    if fs.is_empty() {
        return Ok(false);
    }
    let gs = hom_space(n, u)?;
    for f in &fs {
        for g in &gs {
            if (g.matrix() * f.matrix()).is_invertible()? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Groups indecomposable modules into isomorphism classes; returns the
/// member indices of each class in first-occurrence order.
pub fn iso_classes(mods: &[GModule]) -> Result<Vec<Vec<usize>>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'next: for (i, m) in mods.iter().enumerate() {
        for class in classes.iter_mut() {
            if iso_indecomposable(&mods[class[0]], m)?.is_some() {
                class.push(i);
                continue 'next;
            }
        }
        classes.push(vec![i]);
    }
    Ok(classes)
}

/// Matches the factors of `a` injectively into those of `b` up to
/// isomorphism; returns for each factor of `a` the matched factor of `b`
/// and the isomorphism.
pub(crate) fn match_factors(a: &Decomposition, b: &Decomposition) -> Result<Option<Vec<(usize, ModuleHom)>>> {
    let mut used = vec![false; b.factors.len()];
    let mut out = Vec::new();
    for fa in &a.factors {
        let mut found = None;
        for (j, fb) in b.factors.iter().enumerate() {
            if used[j] || fb.module.dim() != fa.module.dim() {
                continue;
            }
            if let Some(iso) = iso_indecomposable(&fa.module, &fb.module)? {
                found = Some((j, iso));
                break;
            }
        }
        match found {
            Some((j, iso)) => {
                used[j] = true;
                out.push((j, iso));
            }
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// An isomorphism `M → N`, if any. Tries the hom basis and a few random
/// combinations first, then compares decompositions.
pub fn is_isomorphic(m: &GModule, n: &GModule) -> Result<Option<ModuleHom>> {
    m.check_same_ring(n)?;
    if m.dim() != n.dim() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(ModuleHom::zero(m, n)));
    }
    let homs = hom_space(m, n)?;
    if let Some(f) = homs.iter().find(|f| f.is_isomorphism()) {
        return Ok(Some(f.clone()));
    }
    if homs.is_empty() {
        return Ok(None);
    }
    let p = m.prime();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..4 {
        let mut x = FpMatrix::zeros(p, n.dim(), m.dim());
        for h in &homs {
            x.add_scaled(p.reduce(rng.next_u64()), h.matrix());
        }
        if x.is_invertible()? {
            return Ok(Some(ModuleHom::from_parts(m.clone(), n.clone(), x)));
        }
    }
    let (dm, dn) = (decompose(m)?, decompose(n)?);
    if dm.len() != dn.len() {
        return Ok(None);
    }
    let Some(matching) = match_factors(&dm, &dn)? else {
        return Ok(None);
    };
    let mut x = FpMatrix::zeros(p, n.dim(), m.dim());
    for (fa, (j, iso)) in dm.factors.iter().zip(&matching) {
        let fb = &dn.factors[*j];
        x.add_scaled(1, &(&(fb.injection.matrix() * iso.matrix()) * fa.projection.matrix()));
    }
    if !x.is_invertible()? {
        return Err(Error::InternalConsistency("assembled isomorphism is singular".into()));
    }
    Ok(Some(ModuleHom::from_parts(m.clone(), n.clone(), x)))
}

/// Number of summands isomorphic to the indecomposable `U` in any
/// decomposition of `X`, without decomposing `X`.
///
/// Compositions `X → U → X` that do not pass through a copy of `U` land in
/// `J(End U)`, so the pairing `(g, f) ↦ λ(g∘f mod J)` for a nonzero
/// functional `λ` on the residue field has rank `multiplicity · degree`.
pub fn multiplicity_in(u: &GModule, x: &GModule) -> Result<usize> {
    u.check_same_ring(x)?;
    if u.dim() == 0 {
        return Err(Error::Precondition("multiplicity of the zero module".into()));
    }
    let fs = hom_space(u, x)?;
    if fs.is_empty() {
        return Ok(0);
    }
    let gs = hom_space(x, u)?;
    if gs.is_empty() {
        return Ok(0);
    }
    let e = EndAlgebra::new(u)?;
    let rad = radical(&e)?;
    let degree = e.dim() - rad.dim();
    let p = u.prime();
    let mut pairing = FpMatrix::zeros(p, gs.len(), fs.len());
    for (i, g) in gs.iter().enumerate() {
        for (j, f) in fs.iter().enumerate() {
            let c = rad.reduce(&e, e.coords_unchecked(&(g.matrix() * f.matrix())));
            pairing.set(i, j, c[0]);
        }
    }
    let rank = pairing.rank();
    if rank % degree != 0 {
        return Err(Error::InternalConsistency(format!(
            "pairing rank {rank} is not a multiple of the residue degree {degree}; is the module indecomposable?"
        )));
    }
    Ok(rank / degree)
}

/// Whether `M` is isomorphic to a direct summand of `N`: every
/// isomorphism class of factors of `M` occurs in `N` at least as often.
pub fn is_direct_summand(m: &GModule, n: &GModule) -> Result<bool> {
    m.check_same_ring(n)?;
    if m.dim() > n.dim() {
        return Ok(false);
    }
    if m.dim() == 0 {
        return Ok(true);
    }
    let dm = decompose(m)?;
    let mods: Vec<GModule> = dm.factors.iter().map(|f| f.module.clone()).collect();
    for class in iso_classes(&mods)? {
        if multiplicity_in(&mods[class[0]], n)? < class.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of factors of `N` isomorphic to the indecomposable `U`, counted
/// on an explicit decomposition of `N`.
pub fn multiplicity(u: &GModule, n: &GModule) -> Result<usize> {
    u.check_same_ring(n)?;
    if !is_indecomposable(u)?.is_indecomposable() {
        return Err(Error::Precondition("multiplicity needs an indecomposable module".into()));
    }
    let dn = decompose(n)?;
    let mut count = 0;
    for f in &dn.factors {
        if f.module.dim() == u.dim() && iso_indecomposable(u, &f.module)?.is_some() {
            count += 1;
        }
    }
    Ok(count)
}

/// Direct sum of the factors, useful to rebuild a module from parts.
pub fn reassemble(d: &Decomposition) -> Result<GModule> {
    let parts: Vec<GModule> = d.factors.iter().map(|f| f.module.clone()).collect();
    Ok(direct_sum_many(d.module.group(), d.module.prime(), &parts)?.module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{preset, Perm, Subgroup};
    use crate::reps::{augmentation_module, direct_sum, dual, regular_module, trivial_module};

    fn gf(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    /// `x ∈ J` iff `y x` is nilpotent for every `y` (exhaustive over E).
    fn brute_radical_dim(e: &EndAlgebra) -> usize {
        let p = e.prime().get() as u64;
        let d = e.dim();
        let total = p.pow(d as u32);
        let all: Vec<FpMatrix> = (0..total)
            .map(|mut k| {
                let c: Vec<u32> = (0..d)
                    .map(|_| {
                        let v = (k % p) as u32;
                        k /= p;
                        v
                    })
                    .collect();
                e.element(&c)
            })
            .collect();
        let count = all
            .iter()
            .filter(|x| all.iter().all(|y| (y * *x).is_nilpotent().unwrap()))
            .count() as u64;
        let mut dim = 0;
        while p.pow(dim) < count {
            dim += 1;
        }
        dim as usize
    }

    #[test]
    fn end_algebra_examples() {
        let p = gf(2);
        let c2 = preset("C2").unwrap();
        let k = trivial_module(&c2, p);
        assert_eq!(end_algebra(&k).unwrap().dim(), 1);
        let kk = direct_sum(&k, &k).unwrap().module;
        let e = end_algebra(&kk).unwrap();
        assert_eq!(e.dim(), 4);
        assert!(!e.is_commutative());
        let r = regular_module(&c2, p);
        let e = end_algebra(&r).unwrap();
        assert_eq!(e.dim(), 2);
        assert!(e.is_commutative());
        assert_eq!(e.identity_coords().len(), 2);
        assert_eq!(e.element(&e.identity_coords()), FpMatrix::identity(p, 2));
    }

    #[test]
    fn radical_examples() {
        let p = gf(2);
        let c2 = preset("C2").unwrap();
        let k = trivial_module(&c2, p);
        assert_eq!(radical(&end_algebra(&k).unwrap()).unwrap().dim(), 0);
        let kk = direct_sum(&k, &k).unwrap().module;
        assert_eq!(radical(&end_algebra(&kk).unwrap()).unwrap().dim(), 0);
        let r = regular_module(&c2, p);
        let e = end_algebra(&r).unwrap();
        let j = radical(&e).unwrap();
        assert_eq!(j.dim(), 1);
        assert_eq!(j.elements(&e)[0], FpMatrix::from_rows(p, &[vec![1, 1], vec![1, 1]]).unwrap());
    }

    #[test]
    fn radical_matches_brute_force() {
        let cases: Vec<(GModule, u64)> = {
            let mut v = Vec::new();
            for (name, p) in [("C2", 2u64), ("C3", 3), ("S3", 2), ("S3", 3), ("V4", 2), ("C4", 2)] {
                let g = preset(name).unwrap();
                let pp = gf(p);
                let k = trivial_module(&g, pp);
                let r = regular_module(&g, pp);
                v.push((r.clone(), p));
                v.push((direct_sum(&k, &r).unwrap().module, p));
                v.push((direct_sum(&k, &k).unwrap().module, p));
            }
            v
        };
        for (m, _) in cases {
            let e = end_algebra(&m).unwrap();
            if e.dim() > 8 {
                continue;
            }
            assert_eq!(radical(&e).unwrap().dim(), brute_radical_dim(&e), "{m:?}");
        }
    }

    #[test]
    fn fitting_examples() {
        let p = gf(2);
        let c2 = preset("C2").unwrap();
        let k = trivial_module(&c2, p);
        let r = regular_module(&c2, p);
        let ds = direct_sum(&k, &r).unwrap();
        let m = ds.module.clone();
        assert!(fitting_split(&m, &ModuleHom::identity(&m)).unwrap().is_none());
        assert!(fitting_split(&m, &ModuleHom::zero(&m, &m)).unwrap().is_none());
        let proj = ds.injections[0].compose(&ds.projections[0]).unwrap();
        let d = fitting_split(&m, &proj).unwrap().unwrap();
        assert!(d.verify());
        let mut dims = d.dims();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
    }

    #[test]
    fn indecomposability_examples() {
        let p = gf(2);
        let c2 = preset("C2").unwrap();
        let k = trivial_module(&c2, p);
        assert!(is_indecomposable(&k).unwrap().is_indecomposable());
        let kk = direct_sum(&k, &k).unwrap().module;
        match is_indecomposable(&kk).unwrap() {
            Verdict::Decomposable { idempotent } => {
                assert_eq!(&idempotent * &idempotent, idempotent);
                assert!(!idempotent.is_zero() && !idempotent.is_identity());
            }
            v => panic!("{v:?}"),
        }
        assert!(is_indecomposable(&regular_module(&c2, p)).unwrap().is_indecomposable());
        assert!(is_indecomposable(&crate::reps::zero_module(&c2, p)).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let s3 = preset("S3").unwrap();
        let p = gf(2);
        let c2 = Subgroup::from_perms(&s3, [&Perm::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        let ind = crate::functors::induce(&trivial_module(c2.group(), p), &c2).unwrap().module;
        let d = decompose(&ind).unwrap();
        assert!(d.verify());
        assert_eq!(d.dims(), vec![1, 2]);
        let c2g = preset("C2").unwrap();
        let d = decompose(&regular_module(&c2g, p)).unwrap();
        assert_eq!(d.dims(), vec![2]);
        let d = decompose(&regular_module(&s3, gf(5))).unwrap();
        assert!(d.verify());
        assert_eq!(d.dims(), vec![1, 1, 2, 2]);
        assert!(d.factors.iter().all(|f| f.residue_degree == 1));
        assert!(decompose(&crate::reps::zero_module(&s3, p)).unwrap().is_empty());
    }

    #[test]
    fn residue_field_bigger_than_prime_field() {
        // C3 acting on GF(2)^2 by a matrix of order 3: End is GF(4)
        let c3 = preset("C3").unwrap();
        let p = gf(2);
        let a = FpMatrix::from_rows(p, &[vec![0, 1], vec![1, 1]]).unwrap();
        let m = GModule::new(&c3, p, 2, vec![a]).unwrap();
        match is_indecomposable(&m).unwrap() {
            Verdict::Indecomposable { residue_degree } => assert_eq!(residue_degree, 2),
            v => panic!("{v:?}"),
        }
        let mm = direct_sum(&m, &m).unwrap().module;
        let d = decompose(&mm).unwrap();
        assert_eq!(d.dims(), vec![2, 2]);
        assert!(d.verify());
        assert_eq!(multiplicity_in(&m, &mm).unwrap(), 2);
        assert_eq!(multiplicity(&m, &mm).unwrap(), 2);
    }

    #[test]
    fn isomorphism_examples() {
        let p = gf(2);
        let s3 = preset("S3").unwrap();
        let m2 = augmentation_module(&s3, p);
        assert!(is_isomorphic(&m2, &m2).unwrap().is_some());
        assert!(is_isomorphic(&m2, &dual(&m2)).unwrap().is_some());
        let c2 = preset("C2").unwrap();
        assert!(is_isomorphic(&trivial_module(&c2, p), &regular_module(&c2, p)).unwrap().is_none());
        let k = trivial_module(&s3, p);
        let a = direct_sum(&k, &m2).unwrap().module;
        let b = direct_sum(&m2, &k).unwrap().module;
        let iso = is_isomorphic(&a, &b).unwrap().unwrap();
        assert!(ModuleHom::new(&a, &b, iso.matrix().clone()).is_ok());
        assert!(is_direct_summand(&m2, &a).unwrap());
        assert!(!is_direct_summand(&m2, &k).unwrap());
        let r = regular_module(&s3, p);
        assert_eq!(multiplicity(&m2, &r).unwrap(), 2);
        assert_eq!(multiplicity(&k, &r).unwrap(), 0);
        assert_eq!(multiplicity_in(&m2, &r).unwrap(), 2);
        assert_eq!(multiplicity_in(&k, &r).unwrap(), 0);
        let mm = direct_sum(&m2, &m2).unwrap().module;
        assert!(is_direct_summand(&mm, &r).unwrap());
        let mmm = direct_sum(&mm, &m2).unwrap().module;
        assert!(!is_direct_summand(&mmm, &direct_sum(&r, &k).unwrap().module).unwrap());
    }
}
