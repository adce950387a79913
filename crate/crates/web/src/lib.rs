//! Browser bindings for the demo page. Every export takes plain strings and
//! numbers and returns a JSON string; failures come back as `{"error": ...}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use qmono::json::FractionRecord;
use qmono::macdonald::{gn_table, Basis};
use qmono::positivity::{hbar, thm8_check, H_poly, DEFAULT_LENGTH_CAP};
use qmono::specialization::{qt_universe, spec_Z, Limits};
use qmono::text::parse_fraction;
use qmono::{Partition, Polynomial, Universe};

/// Keeps a click in the page well under a second.
pub const MAX_WEIGHT: u32 = 10;
pub const MAX_LENGTH: usize = 6;
pub const MAX_N: u32 = 6;

fn parse_mu(mu: &str) -> Result<Partition, String> {
    let mu: Partition = mu.parse().map_err(|e: qmono::Error| e.to_string())?;
    if mu.is_empty() {
        return Err("enter a nonempty partition such as 2,1".into());
    }
    if mu.weight() > MAX_WEIGHT || mu.len() > MAX_LENGTH {
        return Err(format!(
            "the demo is limited to |mu| <= {MAX_WEIGHT} and at most {MAX_LENGTH} parts"
        ));
    }
    Ok(mu)
}

fn wrap(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// `m_mu` on `(a - b)/(1 - q)`, optionally with `a` and/or `b` replaced.
pub fn specialize_value(mu: &str, a: &str, b: &str) -> Result<Value, String> {
    let mu = parse_mu(mu)?;
    let z = spec_Z(&mu, &Limits::default())
        .map_err(|e| e.to_string())?
        .value;
    let (a, b) = (a.trim(), b.trim());
    let mut bindings = Vec::new();
    let mut names = vec!["q".to_string()];
    if a.is_empty() {
        names.insert(0, "a".into());
    }
    if b.is_empty() {
        names.insert(names.len() - 1, "b".into());
    }
    if [a, b].iter().any(|s| s.contains('t')) {
        names.push("t".into());
    }
    let target = Universe::new(names);
    for (name, text) in [("a", a), ("b", b)] {
        if !text.is_empty() {
            bindings.push((
                name,
                parse_fraction(&target, text).map_err(|e| e.to_string())?,
            ));
        }
    }
    let value = z
        .substitute(&target, &bindings)
        .map_err(|e| e.to_string())?
        .simplified();
    Ok(json!({
        "partition": mu.parts(),
        "text": value.to_string(),
        "record": FractionRecord::from_fraction(&value),
    }))
}

/// Coefficient grid of `H_mu(q, t)`, rows indexed by the power of `t`.
pub fn heatmap_value(mu: &str) -> Result<Value, String> {
    let mu = parse_mu(mu)?;
    let limits = Limits::default();
    let h = H_poly(&mu, &limits, DEFAULT_LENGTH_CAP).map_err(|e| e.to_string())?;
    let report = thm8_check(&mu, &limits, DEFAULT_LENGTH_CAP).map_err(|e| e.to_string())?;
    let hb = hbar(&mu, &h).map_err(|e| e.to_string())?;
    Ok(json!({
        "partition": mu.parts(),
        "H": h.to_string(),
        "Hbar": hb.to_string(),
        "grid": grid(&h),
        "checksPass": report.passed(),
    }))
}

fn grid(h: &Polynomial) -> Vec<Vec<i64>> {
    let u = qt_universe();
    let (iq, it) = (u.index_of("q").expect("q"), u.index_of("t").expect("t"));
    let (dq, dt) = (h.degree_in(iq) as usize, h.degree_in(it) as usize);
    let mut rows = vec![vec![0i64; dq + 1]; dt + 1];
    for (m, c) in h.terms() {
        let e = m.exponents();
        rows[e[it] as usize][e[iq] as usize] = c.to_string().parse().unwrap_or(0);
    }
    rows
}

/// The coefficients of `g_n` on one basis, as factored text.
pub fn expand_value(n: u32, basis: &str) -> Result<Value, String> {
    if n > MAX_N {
        return Err(format!("the demo is limited to n <= {MAX_N}"));
    }
    let basis: Basis = basis.parse().map_err(|e: qmono::Error| e.to_string())?;
    let table = gn_table(n, basis, &Limits::default()).map_err(|e| e.to_string())?;
    let entries: Vec<Value> = table
        .entries
        .iter()
        .map(|(mu, c)| json!({ "mu": mu.parts(), "coefficient": c.to_string() }))
        .collect();
    Ok(json!({ "n": n, "basis": basis.tag(), "entries": entries }))
}

#[wasm_bindgen]
pub fn specialize(mu: &str, a: &str, b: &str) -> String {
    wrap(specialize_value(mu, a, b))
}

#[wasm_bindgen]
pub fn heatmap(mu: &str) -> String {
    wrap(heatmap_value(mu))
}

#[wasm_bindgen]
pub fn expand(n: u32, basis: &str) -> String {
    wrap(expand_value(n, basis))
}
