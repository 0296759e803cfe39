//! Text and JSON rendering of bound reports.
//!
//! JSON objects are built as `serde_json::Value`, whose maps keep keys
//! sorted, so output is byte-stable for identical inputs.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::bounds::BoundReport;
use crate::torsion::PdResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn pd_json(pd: &PdResult) -> Value {
    serde_json::to_value(pd).expect("plain enum")
}

pub fn pd_table_json(table: &[PdResult]) -> Value {
    Value::Array(
        table
            .iter()
            .enumerate()
            .map(|(i, r)| json!({ "vertex": i + 1, "pd": pd_json(r) }))
            .collect(),
    )
}

/// Short form: `3`, `inf` or `?`.
pub fn pd_short(pd: &PdResult) -> String {
    match pd {
        PdResult::Finite { value } => value.to_string(),
        PdResult::Infinite { .. } => "inf".into(),
        PdResult::Undetermined { .. } => "?".into(),
    }
}

pub fn bound_report_json(r: &BoundReport) -> Value {
    json!({
        "algebra": r.algebra,
        "best_bound": r.best,
        "bounds": {
            "entries": r.entries.iter().map(|e| json!({
                "name": e.name,
                "formula": e.formula,
                "applicable": e.value.is_some(),
                "value": e.value,
            })).collect::<Vec<_>>(),
            "gldim": pd_json(&r.gldim),
            "implications": {
                "big_findim_finite": r.implications.big_findim_finite,
                "psi_dim_finite": r.implications.psi_dim_finite,
                "syzygy_finite_k": r.implications.syzygy_finite_k,
            },
            "ll_chain": r.ll_chain,
            "loewy_length": r.loewy_length,
            "pd_v": r.pd_v,
        },
        "ll_tv": r.ll_tv,
        "pd_table": pd_table_json(&r.pd_table),
        "v_set": r.v_set.vertices(),
    })
}

pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn bound_report_text(r: &BoundReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "algebra {}", r.algebra);
    let _ = writeln!(s, "V = {}", r.v_set);
    let _ = writeln!(s, "pd V = {}", r.pd_v);
    let chain: Vec<String> = r.ll_chain.iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "ll^tV(A) = {} (chain {})", r.ll_tv, chain.join(" -> "));
    let _ = writeln!(s, "LL = {}", r.loewy_length);
    let _ = writeln!(s, "gldim = {}", r.gldim);
    let _ = writeln!(s, "bounds:");
    for e in &r.entries {
        match e.value {
            Some(v) => {
                let _ = writeln!(s, "{} = {}", e.formula, v);
            }
            None => {
                let _ = writeln!(s, "{} = n/a", e.formula);
            }
        }
    }
    let _ = writeln!(s, "best = {}", r.best);
    match r.implications.syzygy_finite_k {
        Some(k) => {
            let _ = writeln!(
                s,
                "mod A is {k}-syzygy-finite; big finitistic dimension finite; psi-dimension finite"
            );
        }
        None => {
            let _ = writeln!(s, "syzygy-finite hypothesis ll <= 2 not met");
        }
    }
    s
}

pub fn emit_report(r: &BoundReport, format: Format) -> String {
    match format {
        Format::Text => bound_report_text(r),
        Format::Json => to_json_string(&bound_report_json(r)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::BoundContext;
    use crate::catalog::{semisimple, two_chains};
    use crate::par::Execution;
    use crate::torsion::{PdOptions, SimpleSet};

    #[test]
    fn schema_and_text() {
        let a = two_chains(6);
        let ctx = BoundContext::new(&a, &PdOptions::for_algebra(&a), Execution::default());
        let r = ctx.report(&SimpleSet::new(13, 2..=6).unwrap()).unwrap();
        let v = bound_report_json(&r);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["algebra", "best_bound", "bounds", "ll_tv", "pd_table", "v_set"]);
        let text = emit_report(&r, Format::Text);
        assert!(text.lines().any(|l| l == "pd V + 3 = 4"));
        assert_eq!(emit_report(&r, Format::Json), emit_report(&r, Format::Json));
    }

    #[test]
    fn empty_v() {
        let a = semisimple(2);
        let ctx = BoundContext::new(&a, &PdOptions::for_algebra(&a), Execution::default());
        let r = ctx.report(&SimpleSet::empty(2)).unwrap();
        assert_eq!(bound_report_json(&r)["v_set"], json!([]));
    }
}
