use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{boxed::Box, format, vec};
use core::fmt;

use super::{Group, Perm, PermGroup, DEFAULT_MAX_ORDER};
use crate::error::{Error, Result};

/// A subgroup of an enumerated group, identified by its member set.
///
/// Besides the member positions inside the parent, a subgroup carries itself
/// as a permutation group in its own right, so modules over it can be built
/// with [`Subgroup::group`].
#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    members: Vec<usize>,
    mask: Vec<bool>,
    gens: Vec<usize>,
    group: Group,
    embed: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&Perm> = self.gens.iter().map(|&g| self.parent.element(g)).collect();
        write!(f, "Subgroup(order {}, gens {:?})", self.order(), gens)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_as(&other.parent) && self.members == other.members
    }
}
impl Eq for Subgroup {}

fn close(parent: &PermGroup, gens: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; parent.order()];
    mask[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = parent.mul(g, x);
            if !mask[y] {
                mask[y] = true;
                queue.push_back(y);
            }
        }
    }
    mask
}

impl Subgroup {
    fn build(parent: &Group, mask: Vec<bool>, gens: Vec<usize>) -> Result<Self> {
        let members: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
        let perms = gens.iter().map(|&g| parent.element(g).clone()).collect();
        let group = Arc::new(PermGroup::from_generators(parent.degree(), perms, DEFAULT_MAX_ORDER)?);
        let embed = group
            .elements()
            .iter()
            .map(|e| parent.position(e).expect("subgroup element lies in parent"))
            .collect();
        Ok(Subgroup { parent: parent.clone(), members, mask, gens, group, embed })
    }

    /// Subgroup generated by the given element positions.
    pub fn generated_by(parent: &Group, gens: &[usize]) -> Result<Self> {
        let mask = close(parent, gens);
        let members: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
        Self::from_members(parent, &members)
    }

    /// Subgroup generated by permutations that must lie in `parent`.
    pub fn from_perms<'a>(parent: &Group, perms: impl IntoIterator<Item = &'a Perm>) -> Result<Self> {
        let gens = perms
            .into_iter()
            .map(|p| {
                parent
                    .position(p)
                    .ok_or_else(|| Error::NotSubgroup(format!("{p:?} is not an element of the group")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::generated_by(parent, &gens)
    }

    /// Subgroup with exactly the given members; closure is verified.
    pub fn from_members(parent: &Group, members: &[usize]) -> Result<Self> {
        let mut mask = vec![false; parent.order()];
        for &m in members {
            if m >= parent.order() {
                return Err(Error::NotSubgroup(format!("position {m} out of range")));
            }
            mask[m] = true;
        }
        if !mask[0] {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for &a in members {
            for &b in members {
                if !mask[parent.mul(a, b)] {
                    return Err(Error::NotSubgroup("member set not closed under composition".into()));
                }
            }
        }
        // greedy generating set in position order
        let mut gens = Vec::new();
        let mut span = close(parent, &gens);
        for &m in members {
            if !span[m] {
                gens.push(m);
                span = close(parent, &gens);
            }
        }
        Self::build(parent, mask, gens)
    }

    pub fn whole(parent: &Group) -> Self {
        let all: Vec<usize> = (0..parent.order()).collect();
        Self::from_members(parent, &all).expect("whole group is a subgroup")
    }

    pub fn trivial(parent: &Group) -> Self {
        Self::from_members(parent, &[0]).expect("trivial subgroup")
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }
    /// The subgroup as a permutation group of its own.
    pub fn group(&self) -> &Group {
        &self.group
    }
    pub fn order(&self) -> usize {
        self.members.len()
    }
    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }
    pub fn members(&self) -> &[usize] {
        &self.members
    }
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }
    #[inline]
    pub fn contains(&self, pos: usize) -> bool {
        self.mask[pos]
    }
    pub fn contains_perm(&self, p: &Perm) -> bool {
        self.parent.position(p).is_some_and(|i| self.mask[i])
    }
    pub fn perms(&self) -> impl Iterator<Item = &Perm> + '_ {
        self.members.iter().map(|&m| self.parent.element(m))
    }
    /// Position in the parent of each element of [`Subgroup::group`].
    pub fn embedding(&self) -> &[usize] {
        &self.embed
    }
    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }
    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.perms().all(|p| other.contains_perm(p))
    }

    /// True when the order is a power of `p` (the trivial group included).
    pub fn is_p_group(&self, p: u32) -> bool {
        let mut n = self.order();
        while n % p as usize == 0 {
            n /= p as usize;
        }
        n == 1
    }

    /// `g H g^{-1}` for `g` a position in the parent.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let mut members: Vec<usize> = self.members.iter().map(|&h| self.parent.conj(g, h)).collect();
        members.sort_unstable();
        Subgroup::from_members(&self.parent, &members).expect("conjugate of a subgroup")
    }

    fn conjugate_members(&self, g: usize) -> Vec<usize> {
        let mut members: Vec<usize> = self.members.iter().map(|&h| self.parent.conj(g, h)).collect();
        members.sort_unstable();
        members
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members: Vec<usize> = self.members.iter().copied().filter(|&m| other.contains(m)).collect();
        Subgroup::from_members(&self.parent, &members).expect("intersection of subgroups")
    }

    /// Re-expresses this subgroup inside another group containing it.
    pub fn transfer(&self, new_parent: &Group) -> Result<Subgroup> {
        Subgroup::from_perms(new_parent, self.gens.iter().map(|&g| self.parent.element(g)))
    }

    /// Position (in `self.group()`) of a parent element that lies in the subgroup.
    pub fn local_position(&self, parent_pos: usize) -> Option<usize> {
        self.group.position(self.parent.element(parent_pos))
    }
}

/// Side for coset representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetSide {
    /// cosets `g H`
    Left,
    /// cosets `H g`
    Right,
}

/// Every subgroup of `g`, sorted by (order, member positions).
///
/// Built bottom-up: start from the cyclic subgroups, then repeatedly adjoin
/// one element to a known subgroup and close, until nothing new appears.
pub fn all_subgroups(g: &Group) -> Vec<Subgroup> {
    let sets = g.subgroup_cache().get_or_init(|| Box::new(enumerate_subgroup_sets(g)));
    sets.iter()
        .map(|m| Subgroup::from_members(g, m).expect("enumerated subgroup"))
        .collect()
}

fn enumerate_subgroup_sets(g: &PermGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let members_of = |mask: &[bool]| -> Vec<usize> { (0..n).filter(|&i| mask[i]).collect() };
    let mut known: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        let m = members_of(&close(g, &[x]));
        if known.insert(m.clone()) {
            frontier.push(m);
        }
    }
    while let Some(h) = frontier.pop() {
        let mut mask = vec![false; n];
        for &m in &h {
            mask[m] = true;
        }
        for x in 0..n {
            if mask[x] {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            // closing under left multiplication by all members plus x
            let m = members_of(&close(g, &gens));
            if known.insert(m.clone()) {
                frontier.push(m);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = known.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Conjugacy classes of subgroups: `(representative, class size)`, the
/// representative being the first member of the class in canonical order.
pub fn subgroups_up_to_conjugacy(g: &Group) -> Vec<(Subgroup, usize)> {
    let subs = all_subgroups(g);
    let pos: BTreeMap<&[usize], usize> = subs.iter().enumerate().map(|(i, s)| (s.members(), i)).collect();
    let mut class_of = vec![usize::MAX; subs.len()];
    let mut out = Vec::new();
    for i in 0..subs.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let mut size = 0;
        for x in 0..g.order() {
            let c = subs[i].conjugate_members(x);
            let j = pos[c.as_slice()];
            if class_of[j] == usize::MAX {
                class_of[j] = out.len();
                size += 1;
            }
        }
        out.push((subs[i].clone(), size));
    }
    out
}

/// One representative per conjugacy class of `p`-subgroups, trivial included.
pub fn p_subgroups_up_to_conjugacy(g: &Group, p: u32) -> Vec<Subgroup> {
    subgroups_up_to_conjugacy(g)
        .into_iter()
        .map(|(s, _)| s)
        .filter(|s| s.is_p_group(p))
        .collect()
}

pub fn normalizer(g: &Group, h: &Subgroup) -> Subgroup {
    let members: Vec<usize> = (0..g.order()).filter(|&x| h.conjugate_members(x) == h.members).collect();
    Subgroup::from_members(g, &members).expect("normalizer is a subgroup")
}

/// Some `x` with `x H x^{-1} = K`.
pub fn is_conjugate(g: &Group, h: &Subgroup, k: &Subgroup) -> Option<usize> {
    if h.order() != k.order() {
        return None;
    }
    (0..g.order()).find(|&x| h.conjugate_members(x) == k.members)
}

/// A Sylow `p`-subgroup: the first `p`-subgroup of maximal order.
pub fn sylow_subgroup(g: &Group, p: u32) -> Subgroup {
    let target = g.p_part(p);
    all_subgroups(g)
        .into_iter()
        .find(|s| s.order() == target && s.is_p_group(p))
        .expect("Sylow subgroups exist")
}

/// One representative per coset, in element order (identity first).
pub fn coset_reps(g: &Group, h: &Subgroup, side: CosetSide) -> Vec<usize> {
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &m in h.members() {
            let y = match side {
                CosetSide::Left => g.mul(x, m),
                CosetSide::Right => g.mul(m, x),
            };
            covered[y] = true;
        }
    }
    reps
}

/// Representatives of the double cosets `H x K`, identity first.
pub fn double_coset_reps(g: &Group, h: &Subgroup, k: &Subgroup) -> Vec<usize> {
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &a in h.members() {
            let ax = g.mul(a, x);
            for &b in k.members() {
                covered[g.mul(ax, b)] = true;
            }
        }
    }
    reps
}

/// A set of subgroups closed under taking subgroups and under conjugation
/// by a fixed group.
///
/// Stored as the maximal members up to conjugacy; membership is "contained
/// in a conjugate of a maximal member".
#[derive(Clone, Debug)]
pub struct SubgroupFamily {
    parent: Group,
    maximal: Vec<Subgroup>,
    conjugating: Subgroup,
}

impl SubgroupFamily {
    /// Family generated by `subgroups` (all inside `parent`), closed under
    /// conjugation by `conjugating`.
    pub fn generated_by(parent: &Group, subgroups: Vec<Subgroup>, conjugating: &Subgroup) -> Self {
        let mut maximal: Vec<Subgroup> = Vec::new();
        // larger first, so containment only needs checking against kept ones
        let mut subs = subgroups;
        subs.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.members.cmp(&b.members)));
        for s in subs {
            let covered = maximal.iter().any(|m| {
                conjugating
                    .members()
                    .iter()
                    .any(|&c| s.members.iter().all(|&x| m.contains(parent.conj(c, x))))
            });
            if !covered {
                maximal.push(s);
            }
        }
        SubgroupFamily { parent: parent.clone(), maximal, conjugating: conjugating.clone() }
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }
    pub fn maximal_members(&self) -> &[Subgroup] {
        &self.maximal
    }
    pub fn conjugating_group(&self) -> &Subgroup {
        &self.conjugating
    }
    pub fn is_empty(&self) -> bool {
        self.maximal.is_empty()
    }

    /// Whether `s` (a subgroup of any group whose elements lie in the
    /// parent) is conjugate into a maximal member.
    pub fn contains(&self, s: &Subgroup) -> bool {
        let Some(pos): Option<Vec<usize>> = s.perms().map(|p| self.parent.position(p)).collect() else {
            return false;
        };
        self.maximal.iter().any(|m| {
            m.order() >= pos.len()
                && self
                    .conjugating
                    .members()
                    .iter()
                    .any(|&c| pos.iter().all(|&x| m.contains(self.parent.conj(c, x))))
        })
    }
}

/// Maximal members of `{S <= D ∩ gDg^{-1} : g in G \ H}`; membership is up
/// to `G`-conjugacy, matching how vertices of `kG`-modules are defined.
pub fn family_x(g: &Group, h: &Subgroup, d: &Subgroup) -> SubgroupFamily {
    let subs = intersections(g, h, d, d);
    SubgroupFamily::generated_by(g, subs, &Subgroup::whole(g))
}

/// Maximal members of `{S <= H ∩ gDg^{-1} : g in G \ H}`; membership is up
/// to `H`-conjugacy (the family is `H`-stable).
pub fn family_y(g: &Group, h: &Subgroup, d: &Subgroup) -> SubgroupFamily {
    let subs = intersections(g, h, d, h);
    SubgroupFamily::generated_by(g, subs, h)
}

fn intersections(g: &Group, h: &Subgroup, d: &Subgroup, left: &Subgroup) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for x in 0..g.order() {
        if h.contains(x) {
            continue;
        }
        let conj = d.conjugate_members(x);
        let members: Vec<usize> = conj.into_iter().filter(|&m| left.contains(m)).collect();
        if seen.insert(members.clone()) {
            out.push(Subgroup::from_members(g, &members).expect("intersection of subgroups"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::preset;

    fn order_profile(subs: &[Subgroup]) -> Vec<usize> {
        subs.iter().map(|s| s.order()).collect()
    }

    #[test]
    fn s3_subgroup_lattice() {
        let g = preset("S3").unwrap();
        let subs = all_subgroups(&g);
        assert_eq!(order_profile(&subs), vec![1, 2, 2, 2, 3, 6]);
        let classes = subgroups_up_to_conjugacy(&g);
        assert_eq!(classes.len(), 4);
        assert_eq!(classes.iter().map(|c| c.1).collect::<Vec<_>>(), vec![1, 3, 1, 1]);
    }

    #[test]
    fn trivial_and_v4_lattices() {
        let t = preset("trivial").unwrap();
        assert_eq!(all_subgroups(&t).len(), 1);
        let v = preset("V4").unwrap();
        let subs = all_subgroups(&v);
        assert_eq!(subs.len(), 5);
        assert!(subs.iter().all(|s| normalizer(&v, s).is_whole()));
    }

    #[test]
    fn known_subgroup_counts() {
        for (name, count) in [("D8", 10), ("A4", 10), ("S4", 30), ("A5", 59)] {
            let g = preset(name).unwrap();
            let subs = all_subgroups(&g);
            assert_eq!(subs.len(), count, "{name}");
            for s in &subs {
                assert_eq!(g.order() % s.order(), 0);
            }
            let classes = subgroups_up_to_conjugacy(&g);
            assert_eq!(classes.iter().map(|c| c.1).sum::<usize>(), count);
        }
    }

    #[test]
    fn p_subgroups() {
        let s3 = preset("S3").unwrap();
        assert_eq!(order_profile(&p_subgroups_up_to_conjugacy(&s3, 2)), vec![1, 2]);
        assert_eq!(order_profile(&p_subgroups_up_to_conjugacy(&s3, 5)), vec![1]);
        let s4 = preset("S4").unwrap();
        assert_eq!(order_profile(&p_subgroups_up_to_conjugacy(&s4, 2)), vec![1, 2, 2, 4, 4, 4, 8]);
    }

    #[test]
    fn normalizer_and_conjugacy_in_s3() {
        let g = preset("S3").unwrap();
        let t = Subgroup::from_perms(&g, [&Perm::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        assert_eq!(normalizer(&g, &t), t);
        assert!(normalizer(&g, &Subgroup::whole(&g)).is_whole());
        let c2s: Vec<Subgroup> = all_subgroups(&g).into_iter().filter(|s| s.order() == 2).collect();
        for a in &c2s {
            for b in &c2s {
                let x = is_conjugate(&g, a, b).expect("conjugate");
                assert_eq!(&a.conjugate(x), b);
            }
        }
    }

    #[test]
    fn sylow_orders() {
        let s3 = preset("S3").unwrap();
        assert_eq!(sylow_subgroup(&s3, 2).order(), 2);
        let a3 = sylow_subgroup(&s3, 3);
        assert_eq!(a3.order(), 3);
        let t = preset("trivial").unwrap();
        assert!(sylow_subgroup(&t, 2).is_trivial());
        let a5 = preset("A5").unwrap();
        for p in [2, 3, 5] {
            let s = sylow_subgroup(&a5, p);
            assert_eq!(s.order() * (60 / s.order()), 60);
            assert_eq!((60 / s.order()) % p as usize == 0, false);
        }
    }

    #[test]
    fn cosets_partition() {
        let g = preset("S3").unwrap();
        let c2 = Subgroup::from_perms(&g, [&Perm::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        let reps = coset_reps(&g, &c2, CosetSide::Left);
        assert_eq!(reps.len(), 3);
        assert_eq!(reps[0], 0);
        assert_eq!(coset_reps(&g, &Subgroup::whole(&g), CosetSide::Left), vec![0]);
        let d = double_coset_reps(&g, &c2, &c2);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0], 0);
    }

    #[test]
    fn families_for_s3() {
        let g = preset("S3").unwrap();
        let c2 = Subgroup::from_perms(&g, [&Perm::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        let x = family_x(&g, &c2, &c2);
        let y = family_y(&g, &c2, &c2);
        assert_eq!(order_profile(x.maximal_members()), vec![1]);
        assert_eq!(order_profile(y.maximal_members()), vec![1]);
        assert!(!x.contains(&c2));
        let whole = Subgroup::whole(&g);
        assert!(family_x(&g, &whole, &c2).is_empty());
        assert!(family_y(&g, &whole, &c2).is_empty());
    }

    #[test]
    fn a5_c5_is_trivial_intersection() {
        let g = preset("A5").unwrap();
        let d = sylow_subgroup(&g, 5);
        let h = normalizer(&g, &d);
        assert_eq!(h.order(), 10);
        let x = family_x(&g, &h, &d);
        assert_eq!(order_profile(x.maximal_members()), vec![1]);
        let y = family_y(&g, &h, &d);
        assert_eq!(order_profile(y.maximal_members()), vec![1]);
    }

    #[test]
    fn s4_d8_families_are_klein() {
        let g = preset("S4").unwrap();
        let d = sylow_subgroup(&g, 2);
        assert_eq!(normalizer(&g, &d), d);
        let x = family_x(&g, &d, &d);
        let y = family_y(&g, &d, &d);
        assert_eq!(order_profile(x.maximal_members()), vec![4]);
        assert_eq!(order_profile(y.maximal_members()), vec![4]);
        // X ⊆ Y
        for m in x.maximal_members() {
            assert!(y.contains(m));
        }
    }

    #[test]
    fn transfer_between_parents() {
        let g = preset("S4").unwrap();
        let d = sylow_subgroup(&g, 2);
        let v = all_subgroups(&g).into_iter().find(|s| s.order() == 4 && s.is_subgroup_of(&d)).unwrap();
        let inside = v.transfer(d.group()).unwrap();
        assert_eq!(inside.order(), 4);
        assert!(inside.transfer(&preset("S3").unwrap()).is_err());
    }
}
