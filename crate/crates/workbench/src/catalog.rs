//! The acceptance catalog: every criterion as a runnable check with a
//! JSON summary.

use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use green_core::decomp::{decompose, is_isomorphic, iso_classes, iso_indecomposable};
use green_core::functors::{induce, is_split_over_subgroup, mackey_summands, restrict, ts_decomposition_check};
use green_core::green::{
    adjoint_higman_check, check_ak_condition, enumerate_vertex_d_modules, green_f, green_g, jordan_block_modules,
    projectives_preserved, verify_bijection, GreenContext,
};
use green_core::groups::{
    all_subgroups, normalizer, preset, subgroups_up_to_conjugacy, sylow_subgroup, Group, Subgroup,
};
use green_core::relproj::{
    ext1_restriction_injectivity_check, factor_through_add, is_relatively_projective, quotient_hom, vertex,
    vertex_and_source,
};
use green_core::reps::{
    augmentation_module, direct_sum, direct_sum_many, dual, ext1, free_presentation, permutation_module,
    regular_module, tensor, trivial_module, GModule, ModuleHom, ShortExactSeq,
};
use green_core::{Echelon, Error as CoreError, FpMatrix, Prime};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::json::read_module;
use crate::oracle;

pub const ALL_CRITERIA: [u32; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

/// Outcome of one criterion. `elapsed` is kept out of the JSON so that
/// reports are reproducible byte for byte.
#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u32,
    pub title: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    /// Set when a failure came from a theorem-level consistency check.
    pub internal: bool,
    pub detail: Value,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl CriterionOutcome {
    pub fn within_budget(&self) -> bool {
        self.budget.is_none_or(|b| self.elapsed < b)
    }
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.within_budget()
    }
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "title": self.title,
            "passed": self.passed(),
            "checks": self.checks,
            "failures": self.failures,
            "detail": self.detail,
            "budget_seconds": self.budget.map(|b| b.as_secs()),
        })
    }
    /// One line for terminals and test logs.
    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "criterion {:>2}: {status} {} ({} checks, {:.1}s",
            self.id,
            self.title,
            self.checks,
            self.elapsed.as_secs_f64()
        );
        if let Some(b) = self.budget {
            s.push_str(&format!(" of {}s", b.as_secs()));
        }
        s.push(')');
        if let Some(first) = self.failures.first() {
            s.push_str(&format!(": {first}"));
            if self.failures.len() > 1 {
                s.push_str(&format!(" (+{} more)", self.failures.len() - 1));
            }
        }
        s
    }
}

/// Bookkeeping while a criterion runs.
struct Tally {
    checks: usize,
    failures: Vec<String>,
    internal: bool,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, failures: Vec::new(), internal: false }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Records an error from the library as a failure.
    fn error(&mut self, context: &str, e: &anyhow::Error) {
        self.checks += 1;
        if e.downcast_ref::<CoreError>().is_some_and(CoreError::is_internal) {
            self.internal = true;
        }
        self.failures.push(format!("{context}: {e:#}"));
    }

    fn finish(self, id: u32, title: &'static str, detail: Value, start: Instant, budget: Option<u64>) -> CriterionOutcome {
        CriterionOutcome {
            id,
            title,
            checks: self.checks,
            failures: self.failures,
            internal: self.internal,
            detail,
            elapsed: start.elapsed(),
            budget: budget.map(Duration::from_secs),
        }
    }
}

/// A catalog: which criteria to run, plus extra user modules that join the
/// Higman and decomposition-oracle sweeps.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub name: String,
    pub criteria: Vec<u32>,
    pub extra_modules: Vec<GModule>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    name: String,
    criteria: Vec<u32>,
    #[serde(default)]
    modules: Vec<String>,
}

impl Catalog {
    pub fn default_catalog() -> Self {
        Catalog { name: "default".into(), criteria: ALL_CRITERIA.to_vec(), extra_modules: Vec::new() }
    }

    pub fn empty() -> Self {
        Catalog { name: "empty".into(), criteria: Vec::new(), extra_modules: Vec::new() }
    }

    /// `default`, `empty`, or a JSON file `{"name", "criteria", "modules"}`
    /// whose module paths are relative to the file.
    pub fn load(spec: &str, max_order: usize) -> Result<Self> {
        match spec {
            "default" => Ok(Self::default_catalog()),
            "empty" => Ok(Self::empty()),
            path => {
                let path = Path::new(path);
                let file: CatalogFile = crate::json::read_json(path)?;
                for &c in &file.criteria {
                    if !ALL_CRITERIA.contains(&c) {
                        bail!("field `criteria`: unknown criterion {c}");
                    }
                }
                let base = path.parent().unwrap_or(Path::new("."));
                let extra_modules = file
                    .modules
                    .iter()
                    .enumerate()
                    .map(|(i, m)| read_module(&base.join(m), max_order).with_context(|| format!("field `modules[{i}]`")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Catalog { name: file.name, criteria: file.criteria, extra_modules })
            }
        }
    }

    pub fn run(&self) -> Vec<CriterionOutcome> {
        self.criteria.iter().map(|&id| run_criterion(id, &self.extra_modules)).collect()
    }
}

pub fn summary(catalog: &Catalog, outcomes: &[CriterionOutcome]) -> Value {
    json!({
        "catalog": catalog.name,
        "criteria": outcomes.iter().map(CriterionOutcome::to_json).collect::<Vec<_>>(),
        "passed": outcomes.iter().all(CriterionOutcome::passed),
    })
}

pub fn run_criterion(id: u32, extra: &[GModule]) -> CriterionOutcome {
    match id {
        1 => higman_suite(extra),
        2 => vertex_classification(),
        3 => ti_contexts(),
        4 => family_discipline(),
        5 => roundtrips(),
        6 => mackey_consistency(),
        7 => quotient_homs(),
        8 => split_and_ext(),
        9 => auslander_kleiner(),
        10 => decomposition_oracle(extra),
        other => {
            let mut t = Tally::new();
            t.check(false, || format!("unknown criterion {other}"));
            t.finish(other, "unknown", Value::Null, Instant::now(), None)
        }
    }
}

fn gf(p: u64) -> Prime {
    Prime::new(p).expect("prime")
}

fn group(name: &str) -> Group {
    preset(name).expect("preset")
}

fn class_reps(g: &Group) -> Vec<Subgroup> {
    subgroups_up_to_conjugacy(g).into_iter().map(|(s, _)| s).collect()
}

/// Green contexts used by criteria 3 to 5 and 9.
pub fn s3_context() -> GreenContext {
    let g = group("S3");
    let d = sylow_subgroup(&g, 2);
    GreenContext::new(&g, gf(2), d.clone(), d).expect("valid context")
}

pub fn a5_context() -> GreenContext {
    let g = group("A5");
    let d = sylow_subgroup(&g, 5);
    let h = normalizer(&g, &d);
    GreenContext::new(&g, gf(5), d, h).expect("valid context")
}

/// `(S4, 2, D8, D8)` with sources `k`, `Ω(k)` and `Ω⁻¹(k)` over `D8`.
pub fn s4_context() -> GreenContext {
    let g = group("S4");
    let d = sylow_subgroup(&g, 2);
    let p = gf(2);
    let k = trivial_module(d.group(), p);
    let omega = free_presentation(&k).left().clone();
    let sources = vec![k, dual(&omega), omega];
    GreenContext::new(&g, p, d.clone(), d).expect("valid context").with_sources(sources).expect("sources over D")
}

fn higman_modules(g: &Group, p: Prime) -> Vec<(&'static str, GModule)> {
    let mut out = vec![("trivial", trivial_module(g, p)), ("augmentation", augmentation_module(g, p))];
    if g.order() <= 24 {
        out.push(("permutation", permutation_module(g, p)));
    }
    if g.order() <= 12 {
        if let Ok(d) = decompose(&regular_module(g, p)) {
            if let Some(f) = d.factors.last() {
                out.push(("projective", f.module.clone()));
            }
        }
    }
    out.retain(|(_, m)| m.dim() > 0);
    out
}

const HIGMAN_GROUPS: [(&str, u64); 14] = [
    ("C2", 2),
    ("C3", 3),
    ("C3", 2),
    ("V4", 2),
    ("S3", 2),
    ("S3", 3),
    ("D8", 2),
    ("A4", 2),
    ("A4", 3),
    ("S4", 2),
    ("S4", 3),
    ("A5", 2),
    ("A5", 3),
    ("A5", 5),
];

/// The `(M, H)` pairs of criterion 1 (and the Ext¹ restriction part of 8).
pub fn higman_pairs(extra: &[GModule]) -> Vec<(String, GModule, Subgroup)> {
    let mut out = Vec::new();
    for (name, p) in HIGMAN_GROUPS {
        let g = group(name);
        let mods = higman_modules(&g, gf(p));
        for h in class_reps(&g) {
            for (mname, m) in &mods {
                out.push((format!("{name}/p={p}/{mname}/H order {}", h.order()), m.clone(), h.clone()));
            }
        }
    }
    for (i, m) in extra.iter().enumerate() {
        for h in class_reps(m.group()) {
            out.push((format!("extra module {i}/H order {}", h.order()), m.clone(), h));
        }
    }
    out
}

fn higman_suite(extra: &[GModule]) -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let pairs = higman_pairs(extra);
    let mut projective = 0;
    for (label, m, h) in &pairs {
        match adjoint_higman_check(m, h) {
            Ok(r) => {
                projective += usize::from(r.trace);
                t.check(r.agree(), || format!("{label}: {r:?}"));
            }
            Err(e) => t.error(label, &e.into()),
        }
    }
    t.check(pairs.len() >= 50, || format!("only {} pairs", pairs.len()));
    let detail = json!({ "pairs": pairs.len(), "relatively_projective": projective });
    t.finish(1, "Higman equivalence suite", detail, start, Some(60))
}

fn vertex_classification() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut rows = Vec::new();
    for (name, p) in [("S3", 2u64), ("A4", 2), ("S4", 2), ("A5", 5), ("A5", 2)] {
        let g = group(name);
        let prime = gf(p);
        let sylow = sylow_subgroup(&g, p as u32);
        let label = format!("{name}/p={p}");
        match vertex_and_source(&trivial_module(&g, prime)) {
            Ok(v) => {
                let ok = v.vertex.order() == sylow.order();
                t.check(ok, || format!("{label}: vertex of k has order {}, Sylow {}", v.vertex.order(), sylow.order()));
                t.check(v.source.dim() == 1, || format!("{label}: source of k has dim {}", v.source.dim()));
                rows.push(json!({
                    "case": label,
                    "trivial_vertex_order": v.vertex.order(),
                    "sylow_order": sylow.order(),
                    "maximal_classes_checked": v.checked_maximal.len(),
                }));
            }
            Err(e) => t.error(&label, &e.into()),
        }
        let pims = match decompose(&regular_module(&g, prime)) {
            Ok(d) => d.factors.into_iter().map(|f| f.module).collect::<Vec<_>>(),
            Err(e) => {
                t.error(&label, &e.into());
                continue;
            }
        };
        let classes = iso_classes(&pims).unwrap_or_default();
        let mut pim_dims = Vec::new();
        for class in &classes {
            let m = &pims[class[0]];
            pim_dims.push(m.dim());
            match vertex(m) {
                Ok(v) => t.check(v.is_trivial(), || format!("{label}: projective of dim {} has vertex order {}", m.dim(), v.order())),
                Err(e) => t.error(&label, &e.into()),
            }
        }
        rows.push(json!({ "case": label, "projective_indecomposable_dims": pim_dims }));
    }
    t.finish(2, "Vertex classification", json!(rows), start, Some(120))
}

fn context_label(ctx: &GreenContext) -> String {
    format!(
        "(|G|={}, p={}, |D|={}, |H|={})",
        ctx.group().order(),
        ctx.prime().get(),
        ctx.d().order(),
        ctx.h().order()
    )
}

/// Classes of non-projective summands of `ind_D^H J_i`, `i < |D|`, counted
/// directly from the decompositions.
fn jordan_oracle_count(ctx: &GreenContext) -> Result<usize> {
    let p = ctx.prime();
    let one = Subgroup::trivial(ctx.h().group());
    let mut found: Vec<GModule> = Vec::new();
    let js = jordan_block_modules(ctx.d(), p)?;
    for j in &js[..js.len() - 1] {
        for f in decompose(&induce(j, ctx.d_in_h())?.module)?.factors {
            if is_relatively_projective(&f.module, &one)?.projective {
                continue;
            }
            let mut new = true;
            for x in &found {
                if x.dim() == f.module.dim() && iso_indecomposable(x, &f.module)?.is_some() {
                    new = false;
                    break;
                }
            }
            if new {
                found.push(f.module);
            }
        }
    }
    Ok(found.len())
}

fn ti_contexts() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut rows = Vec::new();
    for (ctx, expected) in [(s3_context(), 1usize), (a5_context(), 4)] {
        let label = context_label(&ctx);
        match verify_bijection(&ctx) {
            Ok(b) => {
                t.check(b.holds(), || format!("{label}: bijection fails"));
                let (gn, hn) = (b.modules.g_side.len(), b.modules.h_side.len());
                t.check(gn == expected, || format!("{label}: {gn} classes on the G side, expected {expected}"));
                t.check(hn == expected, || format!("{label}: {hn} classes on the H side, expected {expected}"));
                let oracle = jordan_oracle_count(&ctx);
                match &oracle {
                    Ok(n) => t.check(*n == hn, || format!("{label}: Jordan-block oracle finds {n} classes, enumeration {hn}")),
                    Err(e) => t.error(&label, &anyhow::anyhow!("{e}")),
                }
                rows.push(json!({
                    "context": label,
                    "expected_classes": expected,
                    "oracle_classes": oracle.ok(),
                    "bijection": crate::report::bijection(&b),
                }));
            }
            Err(e) => t.error(&label, &e.into()),
        }
    }
    t.finish(3, "Green correspondence in TI contexts", json!(rows), start, Some(300))
}

fn family_discipline() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut violations = 0;
    let mut reports = 0;
    for ctx in [s3_context(), a5_context()] {
        let label = context_label(&ctx);
        match verify_bijection(&ctx) {
            Ok(b) => {
                for r in &b.reports {
                    reports += 1;
                    violations += r.family_violations();
                    t.check(r.family_violations() == 0, || format!("{label}: factor outside the family"));
                }
            }
            Err(e) => t.error(&label, &e.into()),
        }
    }
    let ctx = s4_context();
    let label = context_label(&ctx);
    let k = trivial_module(ctx.group(), ctx.prime());
    let kh = trivial_module(ctx.h().group(), ctx.prime());
    for r in [green_f(&ctx, &k), green_g(&ctx, &kh)] {
        match r {
            Ok(r) => {
                reports += 1;
                violations += r.family_violations();
                t.check(r.family_violations() == 0, || format!("{label}: factor outside the family"));
            }
            Err(e) => t.error(&label, &e.into()),
        }
    }
    t.finish(4, "Factor-family discipline", json!({ "reports": reports, "violations": violations }), start, None)
}

fn roundtrips() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut rows = Vec::new();
    for ctx in [s3_context(), a5_context(), s4_context()] {
        let label = context_label(&ctx);
        let mods = match enumerate_vertex_d_modules(&ctx) {
            Ok(m) => m,
            Err(e) => {
                t.error(&label, &e.into());
                continue;
            }
        };
        let run = |t: &mut Tally| -> Result<()> {
            for m in &mods.g_side {
                let back = green_g(&ctx, &green_f(&ctx, m)?.correspondent)?.correspondent;
                t.check(is_isomorphic(&back, m)?.is_some(), || format!("{label}: gf(M) ≇ M for dim {}", m.dim()));
            }
            for n in &mods.h_side {
                let back = green_f(&ctx, &green_g(&ctx, n)?.correspondent)?.correspondent;
                t.check(is_isomorphic(&back, n)?.is_some(), || format!("{label}: fg(N) ≇ N for dim {}", n.dim()));
            }
            Ok(())
        };
        if let Err(e) = run(&mut t) {
            t.error(&label, &e);
        }
        rows.push(json!({ "context": label, "g_side": mods.g_side.len(), "h_side": mods.h_side.len() }));
    }
    t.finish(5, "Roundtrip fg = id, gf = id", json!(rows), start, None)
}

/// Factor multisets agree: same length and a bijection by isomorphism.
fn same_factor_multiset(a: &[GModule], b: &[GModule]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for x in a {
        let mut hit = false;
        for (j, y) in b.iter().enumerate() {
            if !used[j] && x.dim() == y.dim() && iso_indecomposable(x, y)?.is_some() {
                used[j] = true;
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

fn factors(m: &GModule) -> Result<Vec<GModule>> {
    Ok(decompose(m)?.factors.into_iter().map(|f| f.module).collect())
}

/// Subgroups of the requested kinds: cyclic of order 2 or 3, Klein four,
/// and a Sylow subgroup, each up to conjugacy.
fn mackey_subgroups(g: &Group, p: u32) -> Vec<Subgroup> {
    let sylow = sylow_subgroup(g, p);
    let mut out: Vec<Subgroup> = class_reps(g)
        .into_iter()
        .filter(|s| {
            let n = s.order();
            let klein = n == 4 && s.members().iter().all(|&x| s.parent().mul(x, x) == 0);
            n == 2 || n == 3 || klein
        })
        .collect();
    if !out.iter().any(|s| s.members() == sylow.members()) {
        out.push(sylow);
    }
    out
}

fn mackey_consistency() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut triples = 0;
    for name in ["S3", "A4", "S4"] {
        let g = group(name);
        for p in [2u32, 3] {
            let prime = gf(p as u64);
            let subs = mackey_subgroups(&g, p);
            for h in &subs {
                for k in &subs {
                    let modules = [trivial_module(k.group(), prime), regular_module(k.group(), prime)];
                    for (mi, n) in modules.iter().enumerate() {
                        triples += 1;
                        let label = format!("{name}/p={p}/|H|={}/|K|={}/module {mi}", h.order(), k.order());
                        let run = || -> Result<bool> {
                            let lhs = factors(&restrict(&induce(n, k)?.module, h)?)?;
                            let mut rhs = Vec::new();
                            for s in mackey_summands(h, k, n)? {
                                rhs.extend(factors(&s)?);
                            }
                            same_factor_multiset(&lhs, &rhs)
                        };
                        match run() {
                            Ok(ok) => t.check(ok, || format!("{label}: factor multisets differ")),
                            Err(e) => t.error(&label, &e),
                        }
                    }
                }
            }
        }
    }
    t.finish(6, "Mackey consistency", json!({ "triples": triples }), start, Some(120))
}

fn span_equal(p: Prime, len: usize, a: &[FpMatrix], b: &[FpMatrix]) -> bool {
    let mut ea = Echelon::new(p, len);
    for x in a {
        ea.insert(&x.vectorize());
    }
    let mut eb = Echelon::new(p, len);
    for x in b {
        eb.insert(&x.vectorize());
    }
    ea.dim() == eb.dim() && b.iter().all(|x| ea.contains(&x.vectorize()))
}

fn quotient_homs() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let two = gf(2);
    let run = |t: &mut Tally| -> Result<usize> {
        let c2 = group("C2");
        let k = trivial_module(&c2, two);
        let one = Subgroup::trivial(&c2);
        let q = quotient_hom(&k, &k, std::slice::from_ref(&one))?;
        t.check(q.quotient_dim == 1, || format!("C2: stable End(k) has dim {}", q.quotient_dim));
        let through = factor_through_add(&k, &k, &regular_module(&c2, two))?;
        t.check(through.is_empty(), || format!("C2: {} maps k → kC2 → k", through.len()));
        let c3 = group("C3");
        let k3 = trivial_module(&c3, two);
        let q = quotient_hom(&k3, &k3, &[Subgroup::trivial(&c3)])?;
        t.check(q.quotient_dim == 0, || format!("C3 at p=2: stable End(k) has dim {}", q.quotient_dim));

        // Trace ideal from X equals maps factoring through ind_X res_X N.
        let mut triples = 0;
        for (name, p) in [("C2", 2u64), ("C3", 3), ("V4", 2), ("S3", 2), ("S3", 3), ("D8", 2), ("A4", 2)] {
            let g = group(name);
            let prime = gf(p);
            let mods = higman_modules(&g, prime);
            for x in class_reps(&g) {
                for (_, m) in &mods {
                    for (_, n) in &mods {
                        triples += 1;
                        let ideal = quotient_hom(m, n, std::slice::from_ref(&x))?.ideal_basis;
                        let w = induce(&restrict(n, &x)?, &x)?.module;
                        let through = factor_through_add(m, n, &w)?;
                        t.check(span_equal(prime, m.dim() * n.dim(), &ideal, &through), || {
                            format!("{name}/p={p}/|X|={}: trace ideal differs from maps through ind res", x.order())
                        });
                    }
                }
            }
        }
        Ok(triples)
    };
    let triples = run(&mut t).unwrap_or_else(|e| {
        t.error("quotient homs", &e);
        0
    });
    t.finish(7, "Quotient homs and stable category", json!({ "triples": triples }), start, None)
}

fn regular_sequence_c2() -> Result<ShortExactSeq> {
    let g = group("C2");
    let p = gf(2);
    let k = trivial_module(&g, p);
    let r = regular_module(&g, p);
    let sub = ModuleHom::new(&k, &r, FpMatrix::from_rows(p, &[vec![1], vec![1]])?)?;
    let quo = ModuleHom::new(&r, &k, FpMatrix::from_rows(p, &[vec![1, 1]])?)?;
    Ok(ShortExactSeq::new(sub, quo)?)
}

fn split_and_ext() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut ext_pairs = 0;
    let run = |t: &mut Tally| -> Result<()> {
        let seq = regular_sequence_c2()?;
        let g = seq.middle().group().clone();
        let over_g = is_split_over_subgroup(&seq, &Subgroup::whole(&g))?;
        t.check(over_g.is_none(), || "0→k→kC2→k→0 splits over C2".into());
        let over_1 = is_split_over_subgroup(&seq, &Subgroup::trivial(&g))?;
        t.check(over_1.is_some(), || "0→k→kC2→k→0 does not split over 1".into());
        let k = trivial_module(&g, gf(2));
        let e = ext1(&k, &k)?.dim;
        t.check(e == 1, || format!("Ext¹_C2(k,k) = {e}"));

        for (name, p) in [("C2", 2u64), ("C3", 3), ("S3", 2), ("S3", 3), ("V4", 2), ("A4", 2)] {
            let g = group(name);
            let prime = gf(p);
            let free = direct_sum(&regular_module(&g, prime), &regular_module(&g, prime))?.module;
            for (mname, n) in higman_modules(&g, prime) {
                let e = ext1(&free, &n)?.dim;
                t.check(e == 0, || format!("{name}/p={p}: Ext¹(kG², {mname}) = {e}"));
            }
        }
        for (name, p) in [("C3", 2u64), ("S3", 5), ("C5", 2), ("V4", 3), ("A4", 5)] {
            let g = group(name);
            let prime = gf(p);
            let mods = higman_modules(&g, prime);
            for (a, m) in &mods {
                for (b, n) in &mods {
                    let e = ext1(m, n)?.dim;
                    t.check(e == 0, || format!("{name}/p={p}: Ext¹({a}, {b}) = {e} although p ∤ |G|"));
                }
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut t) {
        t.error("split and Ext¹ examples", &e);
    }
    for (label, m, h) in higman_pairs(&[]) {
        if m.group().order() > 24 {
            continue;
        }
        ext_pairs += 1;
        let targets = [trivial_module(m.group(), m.prime()), m.clone()];
        match ext1_restriction_injectivity_check(&m, &h, &targets) {
            Ok(r) => t.check(!r.relatively_projective || r.all_injective(), || format!("{label}: restriction of Ext¹ not injective")),
            Err(e) => t.error(&label, &e.into()),
        }
    }
    t.finish(8, "Relative splitting and Ext¹", json!({ "ext1_restriction_pairs": ext_pairs }), start, None)
}

fn auslander_kleiner() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut ts_triples = 0;
    for (name, p) in [("S3", 2u64), ("S3", 3), ("D8", 2), ("A4", 2), ("A4", 3), ("S4", 2), ("S4", 3), ("A5", 5)] {
        let g = group(name);
        let prime = gf(p);
        for h in class_reps(&g) {
            let hg = h.group();
            let mut mods = vec![trivial_module(hg, prime), augmentation_module(hg, prime)];
            if hg.order() <= 12 {
                mods.push(regular_module(hg, prime));
            }
            for n in mods.iter().filter(|n| n.dim() > 0) {
                ts_triples += 1;
                let label = format!("{name}/p={p}/|H|={}/dim N {}", h.order(), n.dim());
                match ts_decomposition_check(n, &h) {
                    Ok(r) => t.check(r.holds(), || format!("{label}: TS = 1 ⊕ U fails")),
                    Err(e) => t.error(&label, &e.into()),
                }
            }
        }
    }
    let mut ak = Vec::new();
    for ctx in [s3_context(), a5_context()] {
        let label = context_label(&ctx);
        match check_ak_condition(&ctx) {
            Ok(r) => {
                t.check(r.holds(), || format!("{label}: condition (†) fails for {} factors", r.violations.len()));
                ak.push(json!({ "context": label, "report": crate::report::ak(&r) }));
            }
            Err(e) => t.error(&label, &e.into()),
        }
        match projectives_preserved(&ctx) {
            Ok(ok) => t.check(ok, || format!("{label}: induction or restriction of a projective is not projective")),
            Err(e) => t.error(&label, &e.into()),
        }
    }
    t.finish(9, "Auslander–Kleiner layer", json!({ "ts_triples": ts_triples, "ak": ak }), start, None)
}

/// Modules of dimension at most 4 over groups of order at most 6 at `p = 2`,
/// built from trivial, regular, tensor, dual and induced modules.
pub fn oracle_modules(extra: &[GModule]) -> Vec<(String, GModule)> {
    let p = gf(2);
    let mut out: Vec<(String, GModule)> = Vec::new();
    for name in ["trivial", "C2", "C3", "C4", "V4", "C5", "S3"] {
        let g = group(name);
        let k = trivial_module(&g, p);
        let mut base: Vec<(String, GModule)> = vec![("k".into(), k.clone()), ("regular".into(), regular_module(&g, p))];
        for s in all_subgroups(&g) {
            if s.is_whole() {
                continue;
            }
            if let Ok(ind) = induce(&trivial_module(s.group(), p), &s) {
                base.push((format!("ind from order {}", s.order()), ind.module));
            }
            if s.order() == 2 {
                let r = regular_module(s.group(), p);
                if let Ok(ind) = induce(&r, &s) {
                    base.push((format!("ind regular from order {}", s.order()), ind.module));
                }
            }
        }
        base.push(("permutation".into(), permutation_module(&g, p)));
        base.push(("augmentation".into(), augmentation_module(&g, p)));
        let mut pool = base.clone();
        for (a, x) in &base {
            pool.push((format!("dual {a}"), dual(x)));
            for (b, y) in &base {
                if x.dim() * y.dim() <= 4 {
                    if let Ok(t) = tensor(x, y) {
                        pool.push((format!("{a} ⊗ {b}"), t));
                    }
                }
                if x.dim() + y.dim() <= 4 {
                    if let Ok(s) = direct_sum_many(&g, p, &[x.clone(), y.clone()]) {
                        pool.push((format!("{a} ⊕ {b}"), s.module));
                    }
                }
            }
        }
        for (label, m) in pool {
            if m.dim() == 0 || m.dim() > 4 {
                continue;
            }
            if !out.iter().any(|(_, x)| x == &m) {
                out.push((format!("{name}: {label}"), m));
            }
        }
    }
    let conjugates: Vec<(String, GModule)> =
        out.iter().filter(|(_, m)| m.dim() >= 2).map(|(l, m)| (format!("{l}, new basis"), change_basis(m))).collect();
    out.extend(conjugates);
    for (i, m) in extra.iter().enumerate() {
        if m.dim() <= 4 && m.group().order() <= 6 && m.prime().get() == 2 {
            out.push((format!("extra module {i}"), m.clone()));
        }
    }
    out
}

/// Conjugates the action by a fixed unipotent upper triangular matrix.
fn change_basis(m: &GModule) -> GModule {
    let p = m.prime();
    let n = m.dim();
    let b = FpMatrix::from_fn(p, n, n, |i, j| u32::from(i == j || (j > i && (i + j) % 3 != 1)));
    let inv = b.inverse().expect("unipotent");
    let gens = m.generator_matrices().iter().map(|x| &(&b * x) * &inv).collect();
    GModule::new(m.group(), p, n, gens).expect("conjugate of a module")
}

fn decomposition_oracle(extra: &[GModule]) -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mods = oracle_modules(extra);
    for (label, m) in &mods {
        let run = || -> Result<bool> {
            let d = decompose(m)?;
            let mut ours = d.dims();
            ours.sort_unstable();
            let brute = oracle::factor_dims(m)?;
            let mut ok = ours == brute && d.verify();
            for f in &d.factors {
                ok &= oracle::is_indecomposable(&f.module)?;
            }
            Ok(ok)
        };
        match run() {
            Ok(ok) => t.check(ok, || format!("{label}: decomposition disagrees with exhaustive search")),
            Err(e) => t.error(label, &e),
        }
    }
    t.finish(10, "Decomposition oracle", json!({ "modules": mods.len() }), start, Some(60))
}
