//! On-disk formats for matrices, groups and modules.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use green_core::groups::{preset, Group, Perm, PermGroup};
use green_core::reps::GModule;
use green_core::{FpMatrix, Prime};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// `{"p", "rows", "cols", "entries"}` with entries in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u64>>,
}

/// `{"degree", "generators", "name"}`; generators are image lists on
/// `0..degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// A group given by preset name or inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Inline(GroupJson),
}

/// `{"group", "p", "dim", "generators"}`, one matrix per group generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub group: GroupRef,
    pub p: u64,
    pub dim: usize,
    pub generators: Vec<MatrixJson>,
    /// Free-form note on how the module was built, e.g. for induced modules.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl MatrixJson {
    pub fn from_matrix(m: &FpMatrix) -> Self {
        MatrixJson {
            p: m.prime().get() as u64,
            rows: m.rows(),
            cols: m.cols(),
            entries: m.to_rows().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<FpMatrix> {
        let p = Prime::new(self.p).map_err(|e| anyhow!("field `p`: {e}"))?;
        if self.entries.len() != self.rows {
            bail!("field `entries`: {} rows given, `rows` is {}", self.entries.len(), self.rows);
        }
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                bail!("field `entries[{i}]`: {} entries given, `cols` is {}", row.len(), self.cols);
            }
            if let Some(&v) = row.iter().find(|&&v| v >= self.p) {
                bail!("field `entries[{i}]`: value {v} is not in [0, {})", self.p);
            }
        }
        if self.rows == 0 || self.cols == 0 {
            return Ok(FpMatrix::zeros(p, self.rows, self.cols));
        }
        FpMatrix::from_rows(p, &self.entries).map_err(|e| anyhow!("field `entries`: {e}"))
    }
}

impl GroupJson {
    pub fn from_group(g: &PermGroup) -> Self {
        GroupJson {
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.images().to_vec()).collect(),
            name: g.name().map(str::to_owned),
        }
    }

    pub fn to_group(&self, max_order: usize) -> Result<Group> {
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, imgs)| {
                if imgs.len() != self.degree {
                    bail!("field `generators[{i}]`: {} images for degree {}", imgs.len(), self.degree);
                }
                Perm::new(imgs.clone()).map_err(|e| anyhow!("field `generators[{i}]`: {e}"))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut g = PermGroup::from_generators(self.degree, gens, max_order).map_err(|e| anyhow!("field `generators`: {e}"))?;
        if let Some(name) = &self.name {
            g = g.with_name(name.clone());
        }
        Ok(std::sync::Arc::new(g))
    }
}

impl GroupRef {
    pub fn resolve(&self, max_order: usize) -> Result<Group> {
        match self {
            GroupRef::Name(n) => preset(n).map_err(|e| anyhow!("field `group`: {e}")),
            GroupRef::Inline(g) => g.to_group(max_order).context("field `group`"),
        }
    }
}

impl ModuleJson {
    pub fn from_module(m: &GModule) -> Self {
        let g = m.group();
        let group = match g.name() {
            Some(n) if preset(n).map(|q| q.generators() == g.generators()).unwrap_or(false) => GroupRef::Name(n.to_owned()),
            _ => GroupRef::Inline(GroupJson::from_group(g)),
        };
        ModuleJson {
            group,
            p: m.prime().get() as u64,
            dim: m.dim(),
            generators: m.generator_matrices().iter().map(MatrixJson::from_matrix).collect(),
            provenance: None,
        }
    }

    pub fn with_provenance(mut self, note: impl Into<String>) -> Self {
        self.provenance = Some(note.into());
        self
    }

    pub fn to_module(&self, max_order: usize) -> Result<GModule> {
        let g = self.group.resolve(max_order)?;
        let p = Prime::new(self.p).map_err(|e| anyhow!("field `p`: {e}"))?;
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let x = m.to_matrix().with_context(|| format!("field `generators[{i}]`"))?;
                if x.prime() != p {
                    bail!("field `generators[{i}].p`: {} differs from module p {}", m.p, self.p);
                }
                if x.rows() != self.dim || x.cols() != self.dim {
                    bail!("field `generators[{i}]`: {}x{} matrix for dim {}", x.rows(), x.cols(), self.dim);
                }
                Ok(x)
            })
            .collect::<Result<Vec<_>>>()?;
        GModule::new(&g, p, self.dim, gens).map_err(|e| anyhow!("field `generators`: {e}"))
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn read_module(path: &Path, max_order: usize) -> Result<GModule> {
    let mj: ModuleJson = read_json(path)?;
    mj.to_module(max_order).with_context(|| format!("module file {}", path.display()))
}

pub fn read_group(path: &Path, max_order: usize) -> Result<Group> {
    let gj: GroupJson = read_json(path)?;
    gj.to_group(max_order).with_context(|| format!("group file {}", path.display()))
}

/// Canonical text of a JSON value: sorted keys, two-space indent, newline.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
