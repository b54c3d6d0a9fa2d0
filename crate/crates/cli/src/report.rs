//! JSON and plain-text renderings of library results.
//!
//! JSON objects use sorted keys and integers only, so re-serialising a parsed
//! report reproduces it byte for byte.

use std::fmt::Write as _;

use orbit_sheets::verify::VerifyReport;
use orbit_sheets::{
    is_richardson, sheets_containing, w_report, Label, NilpotentOrbit, RestrictedSequence,
    SheetDatum,
};
use serde_json::{json, Value};

fn label_json(l: Option<Label>) -> Value {
    l.map_or(Value::Null, |l| Value::String(l.to_string()))
}

pub fn orbit_json(o: &NilpotentOrbit) -> Value {
    json!({
        "eps": o.partition().eps().value(),
        "parts": o.partition().parts(),
        "label": label_json(o.label()),
    })
}

pub fn orbit_text(o: &NilpotentOrbit) -> String {
    let parts: Vec<String> = o.partition().parts().iter().map(usize::to_string).collect();
    match o.label() {
        Some(l) => format!("{} {l}", parts.join(",")),
        None => parts.join(","),
    }
}

fn levi_json(s: &RestrictedSequence) -> Value {
    json!({ "terms": s.terms, "label": label_json(s.label) })
}

fn sorted_sheets(o: &NilpotentOrbit) -> Vec<SheetDatum> {
    let mut sheets = sheets_containing(o);
    sheets.sort_by(|a, b| a.levi.cmp(&b.levi));
    sheets
}

fn sheet_json(s: &SheetDatum) -> Value {
    json!({
        "levi": levi_json(&s.levi),
        "rigid_residue": orbit_json(&s.rigid_residue),
        "rank": s.rank,
        "dim_sheet": s.dim_sheet,
    })
}

pub fn analysis_json(o: &NilpotentOrbit) -> Value {
    let p = o.partition();
    let st = p.stats();
    let class = p.classify();
    let sheets = sorted_sheets(o);
    let profiles: Vec<Value> = p
        .profiles()
        .iter()
        .map(|pr| json!({ "j": pr.j, "k": pr.k, "mu": pr.mu.parts() }))
        .collect();
    json!({
        "schema": 1,
        "input": orbit_json(o),
        "stats": st,
        "flags": {
            "valid": true,
            "rigid": class.rigid,
            "non_singular": class.non_singular,
            "exceptional": class.exceptional,
            "richardson": is_richardson(p),
        },
        "two_steps": p.two_steps(),
        "dims": p.dims(),
        "profiles": profiles,
        "sheets": sheets.iter().map(sheet_json).collect::<Vec<_>>(),
        "sheet_count": sheets.len(),
        "z": st.z,
        "c": st.c,
        "w_report": w_report(o),
    })
}

fn list(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("({})", items.join(","))
}

pub fn analysis_text(o: &NilpotentOrbit) -> String {
    let p = o.partition();
    let st = p.stats();
    let class = p.classify();
    let ts = p.two_steps();
    let dims = p.dims();
    let w = w_report(o);
    let mut out = String::new();
    let _ = writeln!(out, "orbit        {o}  (eps = {})", p.eps());
    let _ = writeln!(
        out,
        "stats        s={} c={} z={} nu={} s_bar={} kappa={}",
        st.s,
        st.c,
        st.z,
        st.nu,
        st.s_bar,
        st.kappa.iter().map(u8::to_string).collect::<String>()
    );
    let _ = writeln!(
        out,
        "flags        rigid={} non_singular={} exceptional={} richardson={}",
        class.rigid,
        class.non_singular,
        class.exceptional,
        is_richardson(p)
    );
    let clusters: Vec<String> = ts.good_clusters.iter().map(|c| list(c)).collect();
    let _ = writeln!(
        out,
        "two-steps    delta={} bad={} good_clusters=[{}]",
        list(&ts.delta),
        list(&ts.bad),
        clusters.join(",")
    );
    let _ = writeln!(
        out,
        "dims         g_e={} k_e={} k={} orbit={}",
        dims.dim_g_e, dims.dim_k_e, dims.dim_k, dims.dim_orbit
    );
    for pr in p.profiles() {
        let _ = writeln!(out, "profile      ({},{}) -> {}", pr.j, pr.k, pr.mu);
    }
    let _ = writeln!(
        out,
        "w            dim_E={} polynomial={} dim_E_Gamma={} |Gamma|={} unique_sheet={}",
        w.dim_e, w.e_polynomial, w.dim_e_gamma, w.gamma_order, w.unique_sheet
    );
    out.push_str(&sheets_text(o));
    out
}

pub fn sheets_json(o: &NilpotentOrbit) -> Value {
    let sheets = sorted_sheets(o);
    json!({
        "schema": 1,
        "input": orbit_json(o),
        "sheets": sheets.iter().map(sheet_json).collect::<Vec<_>>(),
    })
}

pub fn sheets_text(o: &NilpotentOrbit) -> String {
    let rows: Vec<[String; 4]> = sorted_sheets(o)
        .iter()
        .map(|s| {
            [
                s.levi.to_string(),
                s.rigid_residue.to_string(),
                s.rank.to_string(),
                s.dim_sheet.to_string(),
            ]
        })
        .collect();
    let width = |k: usize, head: &str| {
        rows.iter()
            .map(|r| r[k].len())
            .chain([head.len()])
            .max()
            .unwrap_or(0)
    };
    let (a, b) = (width(0, "levi"), width(1, "residue"));
    let mut out = format!("{:<a$}  {:<b$}  rank  dim\n", "levi", "residue");
    for r in rows {
        let _ = writeln!(out, "{:<a$}  {:<b$}  {:>4}  {:>3}", r[0], r[1], r[2], r[3]);
    }
    out
}

pub fn levis_json(classes: &[RestrictedSequence]) -> Value {
    json!({ "schema": 1, "levis": classes.iter().map(levi_json).collect::<Vec<_>>() })
}

pub fn verify_json(r: &VerifyReport) -> Value {
    json!({
        "schema": 1,
        "checks": r.checks,
        "counts": r.counts,
        "failures": r.failures,
        "passed": r.passed(),
        "wall_ms": r.wall_ms,
    })
}

pub fn verify_text(r: &VerifyReport) -> String {
    let mut out = String::new();
    let names: Vec<&str> = r.checks.iter().map(|c| c.name()).collect();
    let total: usize = r.counts.iter().map(|c| c.partitions).sum();
    let _ = writeln!(out, "checks: {}", names.join(", "));
    let _ = writeln!(out, "partitions: {total} in {} ms", r.wall_ms);
    for f in &r.failures {
        let _ = writeln!(
            out,
            "FAIL {} at {} (eps = {}): {} [{} partitions]",
            f.check,
            list(&f.parts),
            f.eps,
            f.message,
            f.occurrences
        );
    }
    let _ = writeln!(out, "{}", if r.passed() { "ok" } else { "failed" });
    out
}
