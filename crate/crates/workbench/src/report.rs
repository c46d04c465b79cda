//! JSON report values. Object keys come out sorted (serde_json's default
//! map), and every number is an integer, so serialization is canonical.

use green_core::decomp::{iso_classes, Decomposition};
use green_core::functors::TsDecomposition;
use green_core::green::{AkReport, BijectionReport, CorrespondenceReport, Direction, HigmanReport};
use green_core::groups::Subgroup;
use green_core::relproj::{QuotientHomSpace, VertexResult};
use green_core::reps::GModule;
use green_core::FpMatrix;
use serde_json::{json, Value};

use crate::json::{MatrixJson, ModuleJson};

pub const SCHEMA: &str = "green-workbench/1";

/// Wraps a command result in the versioned envelope.
pub fn envelope(command: &str, input: Value, result: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "input": input,
        "result": result,
    })
}

pub fn matrix(m: &FpMatrix) -> Value {
    serde_json::to_value(MatrixJson::from_matrix(m)).expect("serializable")
}

pub fn module(m: &GModule) -> Value {
    serde_json::to_value(ModuleJson::from_module(m)).expect("serializable")
}

pub fn subgroup(s: &Subgroup) -> Value {
    let gens: Vec<String> = s.generators().iter().map(|&g| s.parent().element(g).cycle_string()).collect();
    json!({ "order": s.order(), "generators": gens })
}

/// Labels `A, B, ..., Z, A1, ...` for isomorphism classes in first-seen order.
pub fn class_label(i: usize) -> String {
    let letter = (b'A' + (i % 26) as u8) as char;
    if i < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", i / 26)
    }
}

/// Factor list with iso-class labels, multiplicities and idempotent
/// certificates.
pub fn decomposition(d: &Decomposition) -> anyhow::Result<Value> {
    let mods: Vec<GModule> = d.factors.iter().map(|f| f.module.clone()).collect();
    let classes = iso_classes(&mods)?;
    let mut label_of = vec![0usize; mods.len()];
    for (c, members) in classes.iter().enumerate() {
        for &i in members {
            label_of[i] = c;
        }
    }
    let idempotents = d.idempotents();
    let factors: Vec<Value> = d
        .factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            json!({
                "dim": f.module.dim(),
                "residue_degree": f.residue_degree,
                "class": class_label(label_of[i]),
                "module": module(&f.module),
                "idempotent": matrix(&idempotents[i]),
            })
        })
        .collect();
    let multiplicities: serde_json::Map<String, Value> =
        classes.iter().enumerate().map(|(c, members)| (class_label(c), json!(members.len()))).collect();
    Ok(json!({
        "dim": d.module.dim(),
        "dims": d.dims(),
        "factors": factors,
        "multiplicities": multiplicities,
        "verified": d.verify(),
    }))
}

pub fn vertex(v: &VertexResult) -> Value {
    json!({
        "vertex": subgroup(&v.vertex),
        "class_size": v.class_size,
        "source": module(&v.source),
        "source_dim": v.source.dim(),
        "trace_preimage": matrix(&v.trace_preimage),
        "checked_maximal": v.checked_maximal.iter().map(subgroup).collect::<Vec<_>>(),
    })
}

pub fn correspondence(r: &CorrespondenceReport) -> Value {
    let direction = match r.direction {
        Direction::Restrict => "restrict",
        Direction::Induce => "induce",
    };
    let others: Vec<Value> = r
        .other_factors
        .iter()
        .map(|f| json!({ "dim": f.module.dim(), "vertex": subgroup(&f.vertex), "in_family": f.in_family, "module": module(&f.module) }))
        .collect();
    json!({
        "direction": direction,
        "input_dim": r.input.dim(),
        "correspondent": module(&r.correspondent),
        "correspondent_dim": r.correspondent.dim(),
        "correspondent_vertex": subgroup(&r.correspondent_vertex),
        "other_factors": others,
        "family_violations": r.family_violations(),
        "roundtrip": r.roundtrip,
    })
}

pub fn bijection(b: &BijectionReport) -> Value {
    json!({
        "g_side_dims": b.modules.g_side.iter().map(|m| m.dim()).collect::<Vec<_>>(),
        "h_side_dims": b.modules.h_side.iter().map(|m| m.dim()).collect::<Vec<_>>(),
        "g_classes": b.modules.g_side.len(),
        "h_classes": b.modules.h_side.len(),
        "f_images": b.f_images,
        "g_images": b.g_images,
        "injective": b.injective,
        "surjective": b.surjective,
        "inverse": b.inverse,
        "hom_dims": b.hom_dims.iter().map(|c| json!([c.i, c.j, c.g_dim, c.h_dim])).collect::<Vec<_>>(),
        "holds": b.holds(),
    })
}

pub fn higman(h: &HigmanReport) -> Value {
    json!({
        "trace": h.trace,
        "summand_of_ind_res": h.summand_of_ind_res,
        "summand_of_induced": h.summand_of_induced,
        "counit_splits": h.counit_splits,
        "agree": h.agree(),
    })
}

pub fn quotient_hom(q: &QuotientHomSpace) -> Value {
    json!({
        "full_dim": q.full_dim,
        "ideal_dim": q.ideal_dim,
        "quotient_dim": q.quotient_dim,
        "quotient_basis": q.quotient_basis.iter().map(|f| matrix(f.matrix())).collect::<Vec<_>>(),
    })
}

pub fn ts(t: &TsDecomposition) -> Value {
    json!({
        "induced_dim": t.induced.module.dim(),
        "complement_dim": t.complement.dim(),
        "unit_split": t.unit_split,
        "spans": t.spans,
        "holds": t.holds(),
    })
}

pub fn ak(a: &AkReport) -> Value {
    json!({
        "strategy": a.strategy,
        "dim_cap": a.dim_cap,
        "y_orders": a.y_orders,
        "generator_dims": a.generators.iter().map(|m| m.dim()).collect::<Vec<_>>(),
        "factors_checked": a.factors_checked,
        "violations": a.violations.iter().map(|v| json!({ "generator": v.generator, "factor": module(&v.factor) })).collect::<Vec<_>>(),
        "ts_failures": a.ts_failures,
        "holds": a.holds(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::json::canonical;

    #[test]
    fn canonical_roundtrip() {
        let v = envelope("x", json!({"b": 1, "a": [1, 2]}), json!({"z": true, "m": null}));
        let text = canonical(&v);
        let again: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(canonical(&again), text);
        assert!(text.find("\"command\"").unwrap() < text.find("\"schema\"").unwrap());
    }

    #[test]
    fn labels() {
        assert_eq!(class_label(0), "A");
        assert_eq!(class_label(25), "Z");
        assert_eq!(class_label(27), "B1");
    }
}
