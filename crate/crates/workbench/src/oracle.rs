//! Exhaustive oracles for tiny modules: every subspace is enumerated, so
//! the answers do not depend on any endomorphism-algebra machinery.

use std::collections::BTreeSet;

use anyhow::{bail, Result};
use green_core::reps::{submodule_from_columns, GModule};
use green_core::{FpMatrix, Prime};

/// Largest `p^dim` the subspace enumeration accepts.
pub const MAX_SPACE: u64 = 1 << 12;

fn encode(p: u64, v: &[u32]) -> u64 {
    v.iter().rev().fold(0, |acc, &x| acc * p + x as u64)
}

fn decode(p: u64, n: usize, mut code: u64) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let x = (code % p) as u32;
            code /= p;
            x
        })
        .collect()
}

/// All subspaces of `GF(p)^n`, each as the sorted codes of its elements.
fn all_subspaces(p: Prime, n: usize) -> Vec<Vec<u64>> {
    let q = p.get() as u64;
    let total = q.pow(n as u32);
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut queue = vec![vec![0u64]];
    seen.insert(vec![0]);
    while let Some(s) = queue.pop() {
        let members: BTreeSet<u64> = s.iter().copied().collect();
        for v in 0..total {
            if members.contains(&v) {
                continue;
            }
            let vv = decode(q, n, v);
            let mut next = BTreeSet::new();
            for &x in &s {
                let xv = decode(q, n, x);
                for c in 0..q as u32 {
                    let sum: Vec<u32> = xv.iter().zip(&vv).map(|(&a, &b)| p.add(a, p.mul(c, b))).collect();
                    next.insert(encode(q, &sum));
                }
            }
            let next: Vec<u64> = next.into_iter().collect();
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

fn invariant(m: &GModule, s: &[u64]) -> bool {
    let q = m.prime().get() as u64;
    let n = m.dim();
    let members: BTreeSet<u64> = s.iter().copied().collect();
    m.generator_matrices()
        .iter()
        .all(|g| s.iter().all(|&x| members.contains(&encode(q, &g.mul_vec(&decode(q, n, x))))))
}

fn basis_of(p: Prime, n: usize, s: &[u64]) -> FpMatrix {
    let q = p.get() as u64;
    let mut cols: Vec<Vec<u32>> = Vec::new();
    let mut rank = 0;
    for &x in s {
        let v = decode(q, n, x);
        let mut trial = cols.clone();
        trial.push(v);
        let r = FpMatrix::from_columns(p, n, &trial).rank();
        if r > rank {
            rank = r;
            cols = trial;
        }
    }
    FpMatrix::from_columns(p, n, &cols)
}

/// An invariant decomposition `V = U ⊕ W` with both parts nonzero.
fn find_split(m: &GModule) -> Option<(FpMatrix, FpMatrix)> {
    let p = m.prime();
    let n = m.dim();
    let q = p.get() as u64;
    let total = q.pow(n as u32) as usize;
    let inv: Vec<Vec<u64>> = all_subspaces(p, n).into_iter().filter(|s| s.len() > 1 && s.len() < total && invariant(m, s)).collect();
    for (i, u) in inv.iter().enumerate() {
        let uset: BTreeSet<u64> = u.iter().copied().collect();
        for w in &inv[i + 1..] {
            if u.len() * w.len() == total && w.iter().all(|x| *x == 0 || !uset.contains(x)) {
                return Some((basis_of(p, n, u), basis_of(p, n, w)));
            }
        }
    }
    None
}

fn check_size(m: &GModule) -> Result<()> {
    let q = m.prime().get() as u64;
    match q.checked_pow(m.dim() as u32) {
        Some(t) if t <= MAX_SPACE => Ok(()),
        _ => bail!("module of dim {} over GF({q}) is too large for exhaustive search", m.dim()),
    }
}

/// Whether no invariant complementary pair of subspaces exists.
pub fn is_indecomposable(m: &GModule) -> Result<bool> {
    check_size(m)?;
    Ok(m.dim() > 0 && find_split(m).is_none())
}

/// Dimensions of the indecomposable factors, sorted, by repeated
/// exhaustive splitting.
pub fn factor_dims(m: &GModule) -> Result<Vec<usize>> {
    check_size(m)?;
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.dim() == 0 {
            continue;
        }
        match find_split(&x) {
            None => out.push(x.dim()),
            Some((u, w)) => {
                stack.push(submodule_from_columns(&x, &u)?.0);
                stack.push(submodule_from_columns(&x, &w)?.0);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}
