//! Dense univariate polynomials over GF(p), lowest degree first.

use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::linalg::Prime;

pub(crate) type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, with the zero polynomial at `-1`.
pub(crate) fn deg(a: &[u32]) -> isize {
    a.len() as isize - 1
}

pub(crate) fn sub(p: Prime, a: &[u32], b: &[u32]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| p.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(out)
}

pub(crate) fn mul(p: Prime, a: &[u32], b: &[u32]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = p.add(out[i + j], p.mul(x, y));
        }
    }
    trim(out)
}

pub(crate) fn divrem(p: Prime, a: &[u32], b: &[u32]) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead_inv = p.inv(*b.last().unwrap());
    let mut q = vec![0u32; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = p.mul(*r.last().unwrap(), lead_inv);
        q[shift] = c;
        for (j, &y) in b.iter().enumerate() {
            r[shift + j] = p.sub(r[shift + j], p.mul(c, y));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub(crate) fn rem(p: Prime, a: &[u32], b: &[u32]) -> Poly {
    divrem(p, a, b).1
}

pub(crate) fn monic(p: Prime, a: &[u32]) -> Poly {
    let a = trim(a.to_vec());
    match a.last() {
        None => a,
        Some(&l) => {
            let inv = p.inv(l);
            a.iter().map(|&x| p.mul(x, inv)).collect()
        }
    }
}

pub(crate) fn gcd(p: Prime, a: &[u32], b: &[u32]) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(p, &a, &b);
        a = b;
        b = r;
    }
    monic(p, &a)
}

pub(crate) fn powmod(p: Prime, base: &[u32], mut e: u64, m: &[u32]) -> Poly {
    let mut acc = rem(p, &[1], m);
    let mut b = rem(p, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(p, &mul(p, &acc, &b), m);
        }
        e >>= 1;
        if e > 0 {
            b = rem(p, &mul(p, &b, &b), m);
        }
    }
    acc
}

fn derivative(p: Prime, a: &[u32]) -> Poly {
    let out = a.iter().enumerate().skip(1).map(|(i, &c)| p.mul(p.reduce(i as u64), c)).collect();
    trim(out)
}

/// `b` with `b^p = a`, valid when `a' = 0`.
fn pth_root(p: Prime, a: &[u32]) -> Poly {
    let step = p.get() as usize;
    trim(a.iter().step_by(step).copied().collect())
}

/// Product of the distinct monic irreducible factors of `a != 0`.
pub(crate) fn radical(p: Prime, a: &[u32]) -> Poly {
    let a = monic(p, a);
    if deg(&a) <= 0 {
        return a;
    }
    let d = derivative(p, &a);
    if d.is_empty() {
        return radical(p, &pth_root(p, &a));
    }
    let c = gcd(p, &a, &d);
    let w = divrem(p, &a, &c).0;
    let rc = radical(p, &c);
    let g = gcd(p, &w, &rc);
    monic(p, &divrem(p, &mul(p, &w, &rc), &g).0)
}

/// A monic factor `g` of the squarefree monic `r` with `0 < deg g < deg r`,
/// or `None` when `r` is irreducible. Distinct-degree splitting followed by
/// the randomized equal-degree step (trace map for `p = 2`).
pub(crate) fn proper_factor(p: Prime, r: &[u32], rng: &mut impl RngCore) -> Option<Poly> {
    let n = deg(r);
    if n <= 1 {
        return None;
    }
    let t: Poly = vec![0, 1];
    let mut h = rem(p, &t, r);
    let mut k = 1;
    while 2 * k <= n {
        h = powmod(p, &h, p.get() as u64, r);
        let g = gcd(p, r, &sub(p, &h, &t));
        let dg = deg(&g);
        if dg > 0 && dg < n {
            return Some(g);
        }
        if dg == n {
            return equal_degree(p, r, k as usize, rng);
        }
        k += 1;
    }
    None
}

fn equal_degree(p: Prime, r: &[u32], k: usize, rng: &mut impl RngCore) -> Option<Poly> {
    let n = r.len() - 1;
    for _ in 0..256 {
        let a: Poly = trim((0..n).map(|_| p.reduce(rng.next_u64())).collect());
        if deg(&a) <= 0 {
            continue;
        }
        let probe = if p.get() == 2 {
            let mut term = a.clone();
            let mut tr = a;
            for _ in 1..k {
                term = rem(p, &mul(p, &term, &term), r);
                tr = trim((0..tr.len().max(term.len()))
                    .map(|i| p.add(tr.get(i).copied().unwrap_or(0), term.get(i).copied().unwrap_or(0)))
                    .collect());
            }
            tr
        } else {
            let b = powmod(p, &a, (p.get() as u64 - 1) / 2, r);
            let mut acc = b.clone();
            let mut frob = b;
            for _ in 1..k {
                frob = powmod(p, &frob, p.get() as u64, r);
                acc = rem(p, &mul(p, &acc, &frob), r);
            }
            sub(p, &acc, &[1])
        };
        let g = gcd(p, r, &probe);
        let dg = deg(&g);
        if dg > 0 && (dg as usize) < n {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn arithmetic() {
        let p = gf(5);
        let a = vec![1, 2, 3];
        let b = vec![4, 1];
        let (q, r) = divrem(p, &mul(p, &a, &b), &b);
        assert_eq!(q, a);
        assert!(r.is_empty());
        assert_eq!(gcd(p, &mul(p, &a, &b), &mul(p, &b, &b)), monic(p, &b));
    }

    #[test]
    fn radicals() {
        let p = gf(2);
        // (t+1)^2 t = t^3 + t
        assert_eq!(radical(p, &[0, 1, 0, 1]), vec![0, 1, 1]);
        // (t+1)^4 is a p-th power twice over
        assert_eq!(radical(p, &[1, 0, 0, 0, 1]), vec![1, 1]);
        let p3 = gf(3);
        // t^3 - t = t(t-1)(t+1)
        assert_eq!(radical(p3, &[0, 2, 0, 1]), vec![0, 2, 0, 1]);
    }

    #[test]
    fn factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (pp, r) in [(2u64, vec![0u32, 1, 1]), (3, vec![0, 2, 0, 1]), (5, vec![1, 0, 1]), (2, vec![1, 1, 1, 1, 1, 1, 1])] {
            let p = gf(pp);
            let g = proper_factor(p, &r, &mut rng).expect("reducible");
            assert!(deg(&g) > 0 && deg(&g) < deg(&r));
            assert!(rem(p, &r, &g).is_empty());
        }
        // t^2 + t + 1 is irreducible over GF(2), t^2 + 1 over GF(3)
        assert!(proper_factor(gf(2), &[1, 1, 1], &mut rng).is_none());
        assert!(proper_factor(gf(3), &[1, 0, 1], &mut rng).is_none());
        // equal-degree case: the two irreducible cubics over GF(2)
        let p = gf(2);
        let q1 = vec![1, 1, 0, 1];
        let q2 = vec![1, 0, 1, 1];
        let g = proper_factor(p, &mul(p, &q1, &q2), &mut rng).unwrap();
        assert!(g == q1 || g == q2);
    }
}
