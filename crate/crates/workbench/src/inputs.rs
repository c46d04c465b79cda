//! Resolution of `--group`, `--module` and subgroup arguments.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use green_core::decomp::{decompose_with, DecomposeOptions};
use green_core::groups::{normalizer, preset, sylow_subgroup, Group, Perm, Subgroup};
use green_core::reps::{augmentation_module, permutation_module, regular_module, trivial_module, GModule};
use green_core::Prime;

use crate::json::{read_group, read_module};

pub const MODULE_PRESETS: [&str; 4] = ["trivial", "regular", "permutation", "augmentation"];

/// Bounds applied to everything read from the command line.
#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub max_group_order: usize,
    pub max_dim: usize,
}

impl Bounds {
    pub fn check_group(&self, g: &Group) -> Result<()> {
        if g.order() > self.max_group_order {
            bail!("group of order {} exceeds --max-group-order {}", g.order(), self.max_group_order);
        }
        Ok(())
    }

    pub fn check_module(&self, m: &GModule) -> Result<()> {
        self.check_group(m.group())?;
        if m.dim() > self.max_dim {
            bail!("module of dim {} exceeds --max-dim {}", m.dim(), self.max_dim);
        }
        Ok(())
    }
}

pub fn prime(p: u64) -> Result<Prime> {
    Prime::new(p).map_err(|e| anyhow!("--p: {e}"))
}

/// A preset name, or a path to a group JSON file.
pub fn group(spec: &str, bounds: &Bounds) -> Result<Group> {
    let g = if Path::new(spec).is_file() {
        read_group(Path::new(spec), bounds.max_group_order)?
    } else {
        preset(spec).map_err(|e| anyhow!("--group: {e}"))?
    };
    bounds.check_group(&g)?;
    Ok(g)
}

/// A module preset over `g` (optionally `name#i` for the `i`-th
/// indecomposable factor), or a module JSON file. A file module must live
/// over `g` when a group is given.
pub fn module(spec: &str, g: Option<&Group>, p: Option<Prime>, seed: u64, bounds: &Bounds) -> Result<GModule> {
    let m = if Path::new(spec).is_file() {
        let m = read_module(Path::new(spec), bounds.max_group_order)?;
        if let Some(g) = g {
            if !m.group().same_as(g) {
                bail!("--module {spec}: module group differs from --group");
            }
        }
        if let Some(p) = p {
            if m.prime() != p {
                bail!("--module {spec}: module is over GF({}), --p is {p}", m.prime());
            }
        }
        m
    } else {
        let (name, index) = match spec.split_once('#') {
            Some((n, i)) => (n, Some(i.parse::<usize>().map_err(|_| anyhow!("--module {spec}: bad factor index"))?)),
            None => (spec, None),
        };
        let g = g.ok_or_else(|| anyhow!("--module {spec}: a preset module needs --group"))?;
        let p = p.ok_or_else(|| anyhow!("--module {spec}: a preset module needs --p"))?;
        let m = match name {
            "trivial" => trivial_module(g, p),
            "regular" => regular_module(g, p),
            "permutation" => permutation_module(g, p),
            "augmentation" => augmentation_module(g, p),
            _ => bail!("--module {spec}: not a file and not one of {}", MODULE_PRESETS.join(", ")),
        };
        bounds.check_module(&m)?;
        match index {
            None => m,
            Some(i) => {
                let opts = DecomposeOptions { seed, ..DecomposeOptions::default() };
                let d = decompose_with(&m, &opts)?;
                let n = d.factors.len();
                d.factors.into_iter().nth(i).ok_or_else(|| anyhow!("--module {spec}: only {n} factors"))?.module
            }
        }
    };
    bounds.check_module(&m)?;
    Ok(m)
}

fn parse_perm(degree: usize, text: &str) -> Result<Perm> {
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| anyhow!("expected `(` in {text:?}"))?;
        let end = body.find(')').ok_or_else(|| anyhow!("unclosed cycle in {text:?}"))?;
        let points = body[..end]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|_| anyhow!("bad point {s:?} in {text:?}")))
            .collect::<Result<Vec<_>>>()?;
        cycles.push(points);
        rest = body[end + 1..].trim_start();
    }
    let refs: Vec<&[u32]> = cycles.iter().map(Vec::as_slice).collect();
    Perm::from_cycles(degree, &refs).map_err(|e| anyhow!("{text:?}: {e}"))
}

/// `sylow`, `normalizer` (of the Sylow subgroup), `trivial`, `whole`, or
/// generators in 0-based cycle notation separated by `;`, e.g.
/// `(0 1)(2 3);(0 2)`.
pub fn subgroup(flag: &str, spec: &str, g: &Group, p: Prime) -> Result<Subgroup> {
    let s = match spec.trim() {
        "sylow" => sylow_subgroup(g, p.get()),
        "normalizer" => normalizer(g, &sylow_subgroup(g, p.get())),
        "trivial" => Subgroup::trivial(g),
        "whole" => Subgroup::whole(g),
        gens => {
            let perms = gens
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_perm(g.degree(), s))
                .collect::<Result<Vec<_>>>()
                .with_context(|| flag.to_string())?;
            Subgroup::from_perms(g, &perms).map_err(|e| anyhow!("{flag}: {e}"))?
        }
    };
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BOUNDS: Bounds = Bounds { max_group_order: 1000, max_dim: 200 };

    #[test]
    fn subgroup_specs() {
        let g = preset("S4").unwrap();
        let two = Prime::new(2).unwrap();
        assert_eq!(subgroup("--subgroup", "sylow", &g, two).unwrap().order(), 8);
        assert_eq!(subgroup("--subgroup", "(0 1)(2 3);(0,2)(1,3)", &g, two).unwrap().order(), 4);
        assert_eq!(subgroup("--subgroup", "(0 1 2)", &g, two).unwrap().order(), 3);
        assert!(subgroup("--subgroup", "(0 1", &g, two).is_err());
        assert!(subgroup("--subgroup", "(0 9)", &g, two).is_err());
    }

    #[test]
    fn module_presets() {
        let g = group("S3", &BOUNDS).unwrap();
        let two = Prime::new(2).unwrap();
        assert_eq!(module("regular", Some(&g), Some(two), 0, &BOUNDS).unwrap().dim(), 6);
        assert_eq!(module("permutation#1", Some(&g), Some(two), 0, &BOUNDS).unwrap().dim(), 2);
        assert!(module("bogus", Some(&g), Some(two), 0, &BOUNDS).is_err());
        let tight = Bounds { max_group_order: 1000, max_dim: 3 };
        assert!(module("regular", Some(&g), Some(two), 0, &tight).is_err());
        assert!(group("A5", &Bounds { max_group_order: 10, max_dim: 3 }).is_err());
    }
}
