//! Finite groups realized as permutation groups, enumerated in full.
//!
//! Elements are stored in breadth-first order from the identity, each with
//! the word in the generators that reached it. Multiplication is composition
//! `(a * b)(i) = a(b(i))`, so `b` acts first.

mod subgroup;

pub use subgroup::{
    all_subgroups, coset_reps, double_coset_reps, family_x, family_y, is_conjugate, normalizer,
    p_subgroups_up_to_conjugacy, subgroups_up_to_conjugacy, sylow_subgroup, CosetSide, Subgroup,
    SubgroupFamily,
};

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use once_cell::race::OnceBox;

use crate::error::{Error, Result};

/// Default cap on enumerated group orders.
pub const DEFAULT_MAX_ORDER: usize = 1000;

/// Shared handle to an enumerated group.
pub type Group = Arc<PermGroup>;

/// A bijection of `{0, ..., n-1}` given by its images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl Perm {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    /// Builds a permutation from disjoint or overlapping cycles, composed
    /// right to left.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut p = Perm::identity(degree);
        for cyc in cycles.iter().rev() {
            let mut c = Perm::identity(degree);
            for (k, &a) in cyc.iter().enumerate() {
                let b = cyc[(k + 1) % cyc.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::InvalidPermutation(format!("cycle {cyc:?} exceeds degree {degree}")));
                }
                c.0[a as usize] = b;
            }
            Perm::new(c.0.clone())?;
            p = c.compose(&p);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            out.push('(');
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&i.to_string());
                first = false;
                i = self.0[i] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// A finite permutation group with every element enumerated.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: BTreeMap<Perm, usize>,
    /// element `i` (for `i > 0`) equals `generators[parent[i].1] ∘ elements[parent[i].0]`
    parent: Vec<(usize, usize)>,
    words: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    mult: Vec<u32>,
    name: Option<String>,
    subgroup_cache: OnceBox<Vec<Vec<usize>>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Closes `gens` under composition (breadth first), recording words.
    pub fn from_generators(degree: usize, gens: Vec<Perm>, max_order: usize) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g:?} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = BTreeMap::new();
        index.insert(id, 0usize);
        let mut parent = vec![(0usize, 0usize)];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, g) in gens.iter().enumerate() {
                let y = g.compose(&elements[x]);
                if index.contains_key(&y) {
                    continue;
                }
                if elements.len() == max_order {
                    return Err(Error::GroupTooLarge(max_order));
                }
                let pos = elements.len();
                index.insert(y.clone(), pos);
                elements.push(y);
                parent.push((x, gi));
                let mut w = Vec::with_capacity(words[x].len() + 1);
                w.push(gi);
                w.extend_from_slice(&words[x]);
                words.push(w);
                queue.push_back(pos);
            }
        }
        let n = elements.len();
        let inverse = elements.iter().map(|e| index[&e.inverse()]).collect();
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = index[&elements[a].compose(&elements[b])] as u32;
            }
        }
        Ok(PermGroup {
            degree,
            generators: gens,
            elements,
            index,
            parent,
            words,
            inverse,
            mult,
            name: None,
            subgroup_cache: OnceBox::new(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }
    pub fn element(&self, pos: usize) -> &Perm {
        &self.elements[pos]
    }
    pub fn position(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }
    pub fn word(&self, pos: usize) -> &[usize] {
        &self.words[pos]
    }
    /// `(parent, generator)` with `element = generator ∘ parent`; `None` for the identity.
    pub fn bfs_parent(&self, pos: usize) -> Option<(usize, usize)> {
        (pos != 0).then(|| self.parent[pos])
    }
    #[inline]
    pub fn inv(&self, pos: usize) -> usize {
        self.inverse[pos]
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order() + b] as usize
    }
    /// `g h g^{-1}`
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inverse[g])
    }

    /// Position of each generator.
    pub fn generator_positions(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    /// Evaluates a word in the generators.
    pub fn eval_word(&self, word: &[usize]) -> Perm {
        word.iter().fold(Perm::identity(self.degree), |acc, &g| acc.compose(&self.generators[g]))
    }

    /// Same set of permutations (generators may differ).
    pub fn same_as(&self, other: &PermGroup) -> bool {
        core::ptr::eq(self, other)
            || (self.degree == other.degree
                && self.order() == other.order()
                && other.generators.iter().all(|g| self.index.contains_key(g)))
    }

    /// Largest power of `p` dividing the order.
    pub fn p_part(&self, p: u32) -> usize {
        let mut n = self.order();
        let mut part = 1;
        while p > 1 && n % p as usize == 0 {
            n /= p as usize;
            part *= p as usize;
        }
        part
    }

    pub(crate) fn subgroup_cache(&self) -> &OnceBox<Vec<Vec<usize>>> {
        &self.subgroup_cache
    }
}

/// Builds a group from generators with the default order bound.
pub fn group_from_generators(degree: usize, gens: Vec<Perm>) -> Result<Group> {
    Ok(Arc::new(PermGroup::from_generators(degree, gens, DEFAULT_MAX_ORDER)?))
}

/// Names accepted by [`preset`].
pub const PRESET_NAMES: [&str; 12] = ["trivial", "C2", "C3", "C4", "C5", "V4", "S3", "D8", "D10", "A4", "S4", "A5"];

/// Built-in small groups by name.
pub fn preset(name: &str) -> Result<Group> {
    let (degree, cycles): (usize, Vec<Vec<&[u32]>>) = match name {
        "trivial" => (1, vec![]),
        "C2" => (2, vec![vec![&[0, 1]]]),
        "C3" => (3, vec![vec![&[0, 1, 2]]]),
        "C4" => (4, vec![vec![&[0, 1, 2, 3]]]),
        "C5" => (5, vec![vec![&[0, 1, 2, 3, 4]]]),
        "V4" => (4, vec![vec![&[0, 1], &[2, 3]], vec![&[0, 2], &[1, 3]]]),
        "S3" => (3, vec![vec![&[0, 1]], vec![&[0, 1, 2]]]),
        "D8" => (4, vec![vec![&[0, 1, 2, 3]], vec![&[0, 2]]]),
        "D10" => (5, vec![vec![&[0, 1, 2, 3, 4]], vec![&[1, 4], &[2, 3]]]),
        "A4" => (4, vec![vec![&[0, 1, 2]], vec![&[0, 1], &[2, 3]]]),
        "S4" => (4, vec![vec![&[0, 1]], vec![&[0, 1, 2, 3]]]),
        "A5" => (5, vec![vec![&[0, 1, 2, 3, 4]], vec![&[0, 1, 2]]]),
        other => return Err(Error::Precondition(format!("unknown group preset {other:?}"))),
    };
    let gens = cycles
        .iter()
        .map(|c| Perm::from_cycles(degree, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(PermGroup::from_generators(degree, gens, DEFAULT_MAX_ORDER)?.with_name(name)))
}
