use green_core::decomp::{decompose, is_indecomposable, iso_classes, multiplicity_in, radical, reassemble, EndAlgebra};
use green_core::functors::{counit, induce, relative_trace_with_reps, restrict, unit, Adjunction};
use green_core::groups::{all_subgroups, coset_reps, preset, CosetSide, Group, Subgroup};
use green_core::relproj::is_relatively_projective;
use green_core::reps::{
    augmentation_module, direct_sum, dual, hom_dim, hom_space, permutation_module, regular_module, tensor,
    trivial_module, GModule, ModuleHom,
};
use green_core::{FpMatrix, Prime};
use proptest::prelude::*;

const SMALL: [(&str, u64); 8] =
    [("C2", 2), ("C3", 3), ("C4", 2), ("V4", 2), ("S3", 2), ("S3", 3), ("D8", 2), ("A4", 2)];

fn gf(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn build(g: &Group, p: Prime, recipe: usize, sub: usize) -> GModule {
    match recipe % 7 {
        0 => trivial_module(g, p),
        1 => regular_module(g, p),
        2 => permutation_module(g, p),
        3 => augmentation_module(g, p),
        4 => dual(&augmentation_module(g, p)),
        5 => {
            let subs = all_subgroups(g);
            let s = &subs[sub % subs.len()];
            induce(&trivial_module(s.group(), p), s).unwrap().module
        }
        _ => direct_sum(&permutation_module(g, p), &trivial_module(g, p)).unwrap().module,
    }
}

/// `L·U` with unit diagonals, so always invertible.
fn base_change(p: Prime, n: usize, entries: &[u32]) -> FpMatrix {
    let mut it = entries.iter().cycle();
    let l = FpMatrix::from_fn(p, n, n, |i, j| if i == j { 1 } else if i > j { p.reduce(*it.next().unwrap() as u64) } else { 0 });
    let u = FpMatrix::from_fn(p, n, n, |i, j| if i == j { 1 } else if i < j { p.reduce(*it.next().unwrap() as u64) } else { 0 });
    &l * &u
}

fn conjugated(m: &GModule, entries: &[u32]) -> (GModule, FpMatrix) {
    let p = m.prime();
    let b = base_change(p, m.dim(), entries);
    let inv = b.inverse().unwrap();
    let gens = m.generator_matrices().iter().map(|x| &(&b * x) * &inv).collect();
    (GModule::new(m.group(), p, m.dim(), gens).unwrap(), b)
}

fn small_module() -> impl Strategy<Value = (GModule, usize)> {
    (0..SMALL.len(), 0..7usize, 0..12usize).prop_map(|(gi, recipe, sub)| {
        let (name, p) = SMALL[gi];
        let g = preset(name).unwrap();
        (build(&g, gf(p), recipe, sub), sub)
    })
}

fn nontrivial_subgroup(g: &Group, idx: usize) -> Subgroup {
    let subs = all_subgroups(g);
    subs[idx % subs.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity_and_solve(p in prop::sample::select(vec![2u64, 3, 5, 7]), r in 1usize..7, c in 1usize..7, data in prop::collection::vec(0u32..1000, 49)) {
        let p = gf(p);
        let a = FpMatrix::from_fn(p, r, c, |i, j| p.reduce(data[i * 7 + j] as u64));
        let ns = a.nullspace();
        prop_assert_eq!(a.rank() + ns.cols(), c);
        prop_assert!((&a * &ns).is_zero());
        let x: Vec<u32> = (0..c).map(|j| p.reduce(data[j] as u64 + 3)).collect();
        let b = a.mul_vec(&x);
        let y = a.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn inverse_roundtrip(p in prop::sample::select(vec![2u64, 3, 5]), n in 1usize..7, data in prop::collection::vec(0u32..1000, 64)) {
        let b = base_change(gf(p), n, &data);
        let inv = b.inverse().unwrap();
        prop_assert!((&b * &inv).is_identity());
        prop_assert!((&inv * &b).is_identity());
    }

    #[test]
    fn hom_dims_are_dual_symmetric(((m, _), (n, _)) in (small_module(), small_module())) {
        prop_assume!(m.group().same_as(n.group()) && m.prime() == n.prime());
        prop_assert_eq!(hom_dim(&m, &n).unwrap(), hom_dim(&dual(&n), &dual(&m)).unwrap());
    }

    #[test]
    fn hom_basis_is_intertwining((m, _) in small_module(), recipe in 0..7usize) {
        let n = build(m.group(), m.prime(), recipe, 1);
        for f in hom_space(&m, &n).unwrap() {
            prop_assert!(f.intertwines_all());
        }
    }

    #[test]
    fn frobenius_reciprocity((m, sub) in small_module(), recipe in 0..7usize) {
        let g = m.group().clone();
        let h = nontrivial_subgroup(&g, sub + 1);
        let n = build(h.group(), m.prime(), recipe, sub);
        let ind = induce(&n, &h).unwrap().module;
        let res = restrict(&m, &h).unwrap();
        prop_assert_eq!(hom_dim(&ind, &m).unwrap(), hom_dim(&n, &res).unwrap());
        prop_assert_eq!(hom_dim(&m, &ind).unwrap(), hom_dim(&res, &n).unwrap());
    }

    #[test]
    fn triangle_identities((m, sub) in small_module()) {
        let g = m.group().clone();
        let h = nontrivial_subgroup(&g, sub);
        let res = restrict(&m, &h).unwrap();
        // res(ε_M) ∘ η_{res M} = id
        let (ind, eps) = counit(&m, &h).unwrap();
        let (ind2, eta) = unit(&res, &h).unwrap();
        prop_assert_eq!(ind.module.generator_matrices(), ind2.module.generator_matrices());
        prop_assert!((eps.matrix() * eta.matrix()).is_identity());
        prop_assert!(eps.intertwines_all());
        // ε_{ind N} ∘ ind(η_N) = id, through the adjunction bijection
        let adj = Adjunction::new(&res, &h, &ind.module).unwrap();
        let id_ind = ModuleHom::identity(&ind.module);
        let back = adj.to_restricted(&id_ind).unwrap();
        prop_assert_eq!(back.matrix(), eta.matrix());
        prop_assert!(adj.to_induced(&back).matrix().is_identity());
    }

    #[test]
    fn trace_independent_of_coset_reps((m, sub) in small_module(), shift in 0usize..64) {
        let g = m.group().clone();
        let h = nontrivial_subgroup(&g, sub);
        let res = restrict(&m, &h).unwrap();
        let reps = coset_reps(&g, &h, CosetSide::Left);
        let members = h.members();
        let moved: Vec<usize> = reps.iter().enumerate().map(|(i, &r)| g.mul(r, members[(shift + i) % members.len()])).collect();
        for f in hom_space(&res, &res).unwrap() {
            let a = relative_trace_with_reps(&m, &m, &h, f.matrix(), &reps).unwrap();
            let b = relative_trace_with_reps(&m, &m, &h, f.matrix(), &moved).unwrap();
            prop_assert_eq!(a.matrix(), b.matrix());
            prop_assert!(a.intertwines_all());
        }
    }

    #[test]
    fn decomposition_reassembles((m, _) in small_module(), entries in prop::collection::vec(0u32..1000, 1..40)) {
        let (m, _) = conjugated(&m, &entries);
        let d = decompose(&m).unwrap();
        prop_assert!(d.verify());
        prop_assert_eq!(d.dims().iter().sum::<usize>(), m.dim());
        for f in &d.factors {
            prop_assert!(is_indecomposable(&f.module).unwrap().is_indecomposable());
        }
        let back = reassemble(&d).unwrap();
        prop_assert_eq!(back.dim(), m.dim());
    }

    #[test]
    fn krull_schmidt_under_base_change((m, _) in small_module(), entries in prop::collection::vec(0u32..1000, 1..40)) {
        let (c, _) = conjugated(&m, &entries);
        let a = decompose(&m).unwrap();
        let b = decompose(&c).unwrap();
        prop_assert_eq!(a.dims(), b.dims());
        let mods: Vec<GModule> = a.factors.iter().map(|f| f.module.clone()).collect();
        for class in iso_classes(&mods).unwrap() {
            prop_assert_eq!(multiplicity_in(&mods[class[0]], &c).unwrap(), class.len());
        }
    }

    #[test]
    fn sum_decomposes_into_parts(((m, _), recipe) in (small_module(), 0..7usize)) {
        let n = build(m.group(), m.prime(), recipe, 2);
        prop_assume!(m.dim() + n.dim() <= 24);
        let s = direct_sum(&m, &n).unwrap().module;
        let mut dims = decompose(&m).unwrap().dims();
        dims.extend(decompose(&n).unwrap().dims());
        dims.sort_unstable();
        let mut got = decompose(&s).unwrap().dims();
        got.sort_unstable();
        prop_assert_eq!(got, dims);
    }

    #[test]
    fn radical_is_nilpotent_ideal((m, _) in small_module()) {
        prop_assume!(m.dim() <= 12);
        let e = EndAlgebra::new(&m).unwrap();
        let j = radical(&e).unwrap();
        let js = j.elements(&e);
        for x in &js {
            prop_assert!(x.is_nilpotent().unwrap());
            for b in e.basis() {
                let coords = e.coords(&(x * b)).unwrap();
                let mut combined = j.coords.clone().to_rows();
                combined.push(coords.clone());
                let rank = FpMatrix::from_rows(e.prime(), &combined.iter().map(|r| r.iter().map(|&v| v as u64).collect()).collect::<Vec<_>>()).unwrap().rank();
                prop_assert_eq!(rank, j.dim());
            }
        }
    }

    #[test]
    fn relative_projectivity_is_monotone((m, sub) in small_module()) {
        let g = m.group().clone();
        let subs = all_subgroups(&g);
        let h = &subs[sub % subs.len()];
        if is_relatively_projective(&m, h).unwrap().projective {
            for k in subs.iter().filter(|k| h.is_subgroup_of(k)) {
                prop_assert!(is_relatively_projective(&m, k).unwrap().projective);
            }
        }
    }

    #[test]
    fn base_change_is_isomorphism((m, _) in small_module(), entries in prop::collection::vec(0u32..1000, 1..40)) {
        let (c, b) = conjugated(&m, &entries);
        let f = ModuleHom::new(&m, &c, b).unwrap();
        prop_assert!(f.is_isomorphism());
    }

    #[test]
    fn tensor_with_trivial_is_identity((m, _) in small_module()) {
        let k = trivial_module(m.group(), m.prime());
        let t = tensor(&m, &k).unwrap();
        prop_assert_eq!(t.generator_matrices(), m.generator_matrices());
    }
}
