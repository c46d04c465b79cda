//! Argument parsing and command dispatch.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use green_core::decomp::{decompose, decompose_with, is_isomorphic, iso_classes, DecomposeOptions};
use green_core::functors::{induce, mackey_summands, restrict};
use green_core::green::{
    check_ak_condition, enumerate_vertex_d_modules, green_f, green_g, verify_bijection, GreenContext,
};
use green_core::groups::{sylow_subgroup, Group, Subgroup, DEFAULT_MAX_ORDER};
use green_core::relproj::{quotient_hom, vertex_and_source};
use green_core::reps::GModule;
use green_core::{Error as CoreError, Prime};
use serde_json::{json, Value};

use crate::catalog::{self, Catalog};
use crate::inputs::{self, Bounds};
use crate::json::canonical;
use crate::report;

#[derive(Parser, Debug)]
#[command(name = "green-workbench", version, about = "Modular representations of finite groups: decompositions, vertices and Green correspondence")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Preset name (C2, S3, A5, ...) or a group JSON file.
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Characteristic of the field.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Module preset (trivial, regular, permutation, augmentation, with an
    /// optional `#i` factor index) or a module JSON file. Repeatable.
    #[arg(long, global = true)]
    pub module: Vec<String>,
    /// Subgroup H: `sylow`, `normalizer`, `trivial`, `whole` or generators
    /// like `(0 1)(2 3);(0 2)`.
    #[arg(long, global = true)]
    pub subgroup: Option<String>,
    /// The vertex group D, in the same notation as --subgroup.
    #[arg(long, global = true)]
    pub vertex_group: Option<String>,
    /// Second subgroup K for mackey-check.
    #[arg(long, global = true)]
    pub other_subgroup: Option<String>,
    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_group_order: usize,
    #[arg(long, global = true, default_value_t = 2000)]
    pub max_dim: usize,
    /// `default`, `empty` or a catalog JSON file.
    #[arg(long, global = true)]
    pub catalog: Option<String>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Split a module into indecomposables.
    Decompose,
    /// Vertex and source of an indecomposable module.
    Vertex,
    /// Green correspondent of a G-module with vertex D.
    GreenF,
    /// Green correspondent of an H-module with vertex D.
    GreenG,
    /// Enumerate vertex-D modules and check the correspondence is a
    /// bijection compatible with quotient homs.
    VerifyGreen,
    /// Homs modulo maps that are relative traces from --subgroup.
    StableHom,
    /// Compare res_H ind_K N with its Mackey summands.
    MackeyCheck,
    /// Check the relative-projectivity condition on res ind.
    AkCheck,
    /// Run the acceptance catalog.
    Catalog,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Decompose => "decompose",
            Command::Vertex => "vertex",
            Command::GreenF => "green-f",
            Command::GreenG => "green-g",
            Command::VerifyGreen => "verify-green",
            Command::StableHom => "stable-hom",
            Command::MackeyCheck => "mackey-check",
            Command::AkCheck => "ak-check",
            Command::Catalog => "catalog",
        }
    }
}

/// Result of one command before printing.
pub struct Outcome {
    pub input: Value,
    pub result: Value,
    pub text: String,
    /// A verification reported a failure; maps to exit code 2.
    pub failed: bool,
}

/// Exit code for an error: 2 when a theorem-level check broke, else 1.
pub fn exit_code(e: &anyhow::Error) -> i32 {
    let internal = e.chain().any(|c| c.downcast_ref::<CoreError>().is_some_and(CoreError::is_internal));
    if internal {
        2
    } else {
        1
    }
}

/// Parses, runs and prints. Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

pub fn run(cli: &Cli) -> Result<i32> {
    let c = &cli.common;
    if c.max_group_order == 0 || c.max_dim == 0 {
        bail!("--max-group-order and --max-dim must be positive");
    }
    let out = dispatch(cli.command, c)?;
    let doc = report::envelope(cli.command.name(), out.input, out.result);
    let text = canonical(&doc);
    if let Some(path) = &c.out {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    if c.json {
        print!("{text}");
    } else {
        print!("{}", out.text);
    }
    Ok(if out.failed { 2 } else { 0 })
}

fn bounds(c: &Common) -> Bounds {
    Bounds { max_group_order: c.max_group_order, max_dim: c.max_dim }
}

fn need_group(c: &Common) -> Result<Group> {
    let spec = c.group.as_deref().ok_or_else(|| anyhow!("--group is required"))?;
    inputs::group(spec, &bounds(c))
}

fn need_prime(c: &Common) -> Result<Prime> {
    inputs::prime(c.p.ok_or_else(|| anyhow!("--p is required"))?)
}

/// Modules for commands whose group may come from a module file. Without
/// `--group` the first module must be a file and fixes the group and `p`.
fn modules(c: &Common, want: usize) -> Result<(Group, Prime, Vec<GModule>)> {
    if c.group.is_some() {
        let g = need_group(c)?;
        let p = need_prime(c)?;
        let mods = modules_over(c, &g, p, want)?;
        return Ok((g, p, mods));
    }
    let first = c.module.first().ok_or_else(|| anyhow!("--group or a module file is required"))?;
    let p = c.p.map(inputs::prime).transpose()?;
    let m = inputs::module(first, None, p, c.seed, &bounds(c))?;
    let (g, p) = (m.group().clone(), m.prime());
    let mods = modules_over(c, &g, p, want)?;
    Ok((g, p, mods))
}

fn modules_over(c: &Common, g: &Group, p: Prime, want: usize) -> Result<Vec<GModule>> {
    if c.module.len() < want {
        bail!("--module is required ({want} expected, {} given)", c.module.len());
    }
    c.module.iter().map(|s| inputs::module(s, Some(g), Some(p), c.seed, &bounds(c))).collect()
}

fn base_input(c: &Common) -> Value {
    json!({
        "group": c.group,
        "p": c.p,
        "module": c.module,
        "subgroup": c.subgroup,
        "vertex_group": c.vertex_group,
        "other_subgroup": c.other_subgroup,
        "seed": c.seed,
    })
}

fn dispatch(cmd: Command, c: &Common) -> Result<Outcome> {
    match cmd {
        Command::Decompose => cmd_decompose(c),
        Command::Vertex => cmd_vertex(c),
        Command::GreenF | Command::GreenG => cmd_green(c, cmd),
        Command::VerifyGreen => cmd_verify_green(c),
        Command::StableHom => cmd_stable_hom(c),
        Command::MackeyCheck => cmd_mackey(c),
        Command::AkCheck => cmd_ak(c),
        Command::Catalog => cmd_catalog(c),
    }
}

fn subgroup_label(s: &Subgroup) -> String {
    let gens: Vec<String> = s.generators().iter().map(|&g| s.parent().element(g).cycle_string()).collect();
    if gens.is_empty() {
        format!("order {} (trivial)", s.order())
    } else {
        format!("order {} generated by {}", s.order(), gens.join(", "))
    }
}

fn cmd_decompose(c: &Common) -> Result<Outcome> {
    let (_, _, mut mods) = modules(c, 1)?;
    let m = mods.remove(0);
    let opts = DecomposeOptions { seed: c.seed, ..DecomposeOptions::default() };
    let d = decompose_with(&m, &opts)?;
    let result = report::decomposition(&d)?;
    let mut text = format!("module of dim {} splits into {} indecomposable factor(s)\n", m.dim(), d.factors.len());
    for (i, f) in result["factors"].as_array().into_iter().flatten().enumerate() {
        writeln!(text, "  factor {i}: dim {}, class {}, residue degree {}", f["dim"], f["class"].as_str().unwrap_or("?"), f["residue_degree"])?;
    }
    writeln!(text, "verified: {}", d.verify())?;
    Ok(Outcome { input: base_input(c), result, text, failed: false })
}

fn cmd_vertex(c: &Common) -> Result<Outcome> {
    let (g, p, mut mods) = modules(c, 1)?;
    let m = mods.remove(0);
    let v = vertex_and_source(&m)?;
    let sylow = sylow_subgroup(&g, p.get());
    let mut result = report::vertex(&v);
    result["is_sylow"] = json!(v.vertex.order() == sylow.order());
    let name = if v.vertex.is_trivial() {
        "trivial subgroup".to_string()
    } else if v.vertex.order() == sylow.order() {
        format!("{} (Sylow)", cyclic_or_order(&v.vertex))
    } else {
        cyclic_or_order(&v.vertex)
    };
    let mut text = format!("vertex: {name}, {}\n", subgroup_label(&v.vertex));
    let source = if v.source.dim() == 1 && v.source.is_trivial_action() { "k".to_string() } else { format!("dim {}", v.source.dim()) };
    writeln!(text, "source: {source}")?;
    writeln!(text, "conjugates of the vertex: {}", v.class_size)?;
    Ok(Outcome { input: base_input(c), result, text, failed: false })
}

/// `C<n>` when the subgroup is cyclic, otherwise `order <n>`.
fn cyclic_or_order(s: &Subgroup) -> String {
    let g = s.parent();
    let n = s.order();
    let cyclic = s.members().iter().any(|&x| {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = g.mul(y, x);
            k += 1;
        }
        k == n
    });
    if cyclic {
        format!("C{n}")
    } else {
        format!("order {n}")
    }
}

fn context(c: &Common) -> Result<GreenContext> {
    let g = need_group(c)?;
    let p = need_prime(c)?;
    let d = inputs::subgroup("--vertex-group", c.vertex_group.as_deref().unwrap_or("sylow"), &g, p)?;
    let h = match c.subgroup.as_deref() {
        Some(spec) => inputs::subgroup("--subgroup", spec, &g, p)?,
        None => green_core::groups::normalizer(&g, &d),
    };
    Ok(GreenContext::new(&g, p, d, h)?)
}

fn cmd_green(c: &Common, cmd: Command) -> Result<Outcome> {
    let ctx = context(c)?;
    let p = ctx.prime();
    let r = if cmd == Command::GreenF {
        let m = modules_over(c, ctx.group(), p, 1)?.remove(0);
        green_f(&ctx, &m)?
    } else {
        let m = modules_over(c, ctx.h().group(), p, 1)?.remove(0);
        green_g(&ctx, &m)?
    };
    let result = report::correspondence(&r);
    let side = if cmd == Command::GreenF { "H" } else { "G" };
    let mut text = format!(
        "correspondent over {side}: dim {} with vertex {}\n",
        r.correspondent.dim(),
        subgroup_label(&r.correspondent_vertex)
    );
    writeln!(text, "other factors: {}", r.other_factors.len())?;
    for f in &r.other_factors {
        writeln!(text, "  dim {}, vertex order {}, in family: {}", f.module.dim(), f.vertex.order(), f.in_family)?;
    }
    Ok(Outcome { input: base_input(c), result, text, failed: r.family_violations() > 0 })
}

/// Bijection plus roundtrip for one context.
fn verify_context(ctx: &GreenContext) -> Result<(Value, bool, String)> {
    let b = verify_bijection(ctx)?;
    let mods = enumerate_vertex_d_modules(ctx)?;
    let mut roundtrip = true;
    for m in &mods.g_side {
        let back = green_g(ctx, &green_f(ctx, m)?.correspondent)?.correspondent;
        roundtrip &= is_isomorphic(&back, m)?.is_some();
    }
    for n in &mods.h_side {
        let back = green_f(ctx, &green_g(ctx, n)?.correspondent)?.correspondent;
        roundtrip &= is_isomorphic(&back, n)?.is_some();
    }
    let ok = b.holds() && roundtrip;
    let label = format!(
        "|G|={} p={} |D|={} |H|={}",
        ctx.group().order(),
        ctx.prime(),
        ctx.d().order(),
        ctx.h().order()
    );
    let text = format!(
        "{label}: vertex-D classes {} over G and {} over H, bijection {}, roundtrip {}\n",
        mods.g_side.len(),
        mods.h_side.len(),
        if b.holds() { "holds" } else { "FAILS" },
        if roundtrip { "holds" } else { "FAILS" }
    );
    let v = json!({ "context": label, "bijection": report::bijection(&b), "roundtrip": roundtrip, "passed": ok });
    Ok((v, ok, text))
}

fn cmd_verify_green(c: &Common) -> Result<Outcome> {
    let contexts = match (&c.catalog, &c.group) {
        (Some(name), _) if name == "default" => vec![catalog::s3_context(), catalog::a5_context(), catalog::s4_context()],
        (Some(name), _) if name == "empty" => Vec::new(),
        (Some(other), _) => bail!("--catalog {other}: verify-green knows `default` and `empty`"),
        (None, Some(_)) => vec![context(c)?],
        (None, None) => bail!("verify-green needs --catalog or --group"),
    };
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut all = true;
    for ctx in &contexts {
        let (v, ok, t) = verify_context(ctx)?;
        all &= ok;
        rows.push(v);
        text.push_str(&t);
    }
    writeln!(text, "{}", if all { "all contexts pass" } else { "FAILED" })?;
    let mut input = base_input(c);
    input["catalog"] = json!(c.catalog);
    Ok(Outcome { input, result: json!({ "contexts": rows, "passed": all }), text, failed: !all })
}

fn cmd_stable_hom(c: &Common) -> Result<Outcome> {
    let (g, p, mods) = modules(c, 1)?;
    let m = &mods[0];
    let n = mods.get(1).unwrap_or(m);
    let x = inputs::subgroup("--subgroup", c.subgroup.as_deref().unwrap_or("trivial"), &g, p)?;
    let q = quotient_hom(m, n, std::slice::from_ref(&x))?;
    let text = format!(
        "Hom(M, N) has dim {}; traces from {} span {}; quotient dim {}\n",
        q.full_dim,
        subgroup_label(&x),
        q.ideal_dim,
        q.quotient_dim
    );
    Ok(Outcome { input: base_input(c), result: report::quotient_hom(&q), text, failed: false })
}

fn cmd_mackey(c: &Common) -> Result<Outcome> {
    let g = need_group(c)?;
    let p = need_prime(c)?;
    let h = inputs::subgroup("--subgroup", c.subgroup.as_deref().ok_or_else(|| anyhow!("--subgroup is required"))?, &g, p)?;
    let k = inputs::subgroup(
        "--other-subgroup",
        c.other_subgroup.as_deref().ok_or_else(|| anyhow!("--other-subgroup is required"))?,
        &g,
        p,
    )?;
    let spec = c.module.first().map(String::as_str).unwrap_or("trivial");
    let n = inputs::module(spec, Some(k.group()), Some(p), c.seed, &bounds(c))?;
    let lhs: Vec<GModule> = decompose(&restrict(&induce(&n, &k)?.module, &h)?)?.factors.into_iter().map(|f| f.module).collect();
    let mut rhs = Vec::new();
    let summands = mackey_summands(&h, &k, &n)?;
    for s in &summands {
        rhs.extend(decompose(s)?.factors.into_iter().map(|f| f.module));
    }
    let mut all = lhs.clone();
    all.extend(rhs.iter().cloned());
    let classes = iso_classes(&all)?;
    let counts: Vec<Value> = classes
        .iter()
        .map(|cl| {
            let l = cl.iter().filter(|&&i| i < lhs.len()).count();
            json!({ "dim": all[cl[0]].dim(), "restriction_of_induced": l, "mackey": cl.len() - l })
        })
        .collect();
    let agree = classes.iter().all(|cl| {
        let l = cl.iter().filter(|&&i| i < lhs.len()).count();
        2 * l == cl.len()
    });
    let text = format!(
        "{} double cosets; {} factors in res ind N, {} in the Mackey summands; multisets {}\n",
        summands.len(),
        lhs.len(),
        rhs.len(),
        if agree { "agree" } else { "DIFFER" }
    );
    let result = json!({
        "double_cosets": summands.len(),
        "summand_dims": summands.iter().map(GModule::dim).collect::<Vec<_>>(),
        "classes": counts,
        "agree": agree,
    });
    Ok(Outcome { input: base_input(c), result, text, failed: !agree })
}

fn cmd_ak(c: &Common) -> Result<Outcome> {
    let ctx = context(c)?;
    let r = check_ak_condition(&ctx)?;
    let text = format!(
        "{} generators, {} factors checked, {} violations, {} TS failures: {}\n",
        r.generators.len(),
        r.factors_checked,
        r.violations.len(),
        r.ts_failures.len(),
        if r.holds() { "holds" } else { "FAILS" }
    );
    Ok(Outcome { input: base_input(c), result: report::ak(&r), text, failed: !r.holds() })
}

fn cmd_catalog(c: &Common) -> Result<Outcome> {
    let cat = Catalog::load(c.catalog.as_deref().unwrap_or("default"), c.max_group_order)?;
    let outcomes = cat.run();
    let mut text = String::new();
    for o in &outcomes {
        writeln!(text, "{}", o.line())?;
    }
    let total: f64 = outcomes.iter().map(|o| o.elapsed.as_secs_f64()).sum();
    let passed = outcomes.iter().all(|o| o.passed());
    writeln!(text, "catalog {}: {} in {total:.1}s", cat.name, if passed { "PASS" } else { "FAIL" })?;
    let input = json!({ "catalog": cat.name });
    Ok(Outcome { input, result: catalog::summary(&cat, &outcomes), text, failed: !passed })
}
