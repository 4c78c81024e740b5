//! Browser bindings. Every export returns a JSON string; errors become
//! thrown JS strings.

use fiqs::canon::{canonicalize, classify, RawMatrix};
use fiqs::census::{self, count};
use fiqs::invariants::SurfaceRecord;
use fiqs::{Rho, SeriesId, SeriesKey, Tag};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest index the page may ask for.
pub const IOTA_LIMIT: i64 = 200;

fn rho_of(rho: u8) -> Result<Rho, String> {
    Rho::try_from(rho as i64).map_err(|e| e.to_string())
}

fn eta_json(k: &SeriesKey) -> serde_json::Value {
    json!({
        "rho": k.rho().value(),
        "series": k.tag().as_str(),
        "iota_plus": k.iota_plus,
        "iota_minus": k.iota_minus,
        "c": k.c,
        "d": k.d,
    })
}

/// Cumulative and KE cumulative counts for `1..=iota_max`.
pub fn count_curve_json(rho: u8, iota_max: i64) -> Result<String, String> {
    if !(1..=IOTA_LIMIT).contains(&iota_max) {
        return Err(format!("iota_max must lie in 1..={IOTA_LIMIT}"));
    }
    let table = count(rho_of(rho)?, iota_max).map_err(|e| e.to_string())?;
    let points: Vec<_> = table
        .rows
        .iter()
        .map(|r| json!({"iota": r.iota, "cumulative": r.cumulative, "ke_cumulative": r.ke_cumulative}))
        .collect();
    Ok(json!({"rho": rho, "total": table.total(), "ke_total": table.ke_total(), "points": points}).to_string())
}

/// Full record of the surface with parameters `series, iota_plus, iota_minus[, c[, d]]`.
pub fn surface_invariants_json(rho: u8, series: &str, params: &[i64]) -> Result<String, String> {
    let tag: Tag = series.parse().map_err(|e: fiqs::series::SeriesError| e.to_string())?;
    let [ip, im, rest @ ..] = params else {
        return Err("expected iota_plus, iota_minus and optional c, d".to_string());
    };
    let key = SeriesKey::new(
        SeriesId::new(rho_of(rho)?, tag),
        *ip,
        *im,
        rest.first().copied(),
        rest.get(1).copied(),
    );
    key.check().map_err(|e| e.to_string())?;
    let record = SurfaceRecord::from_key(&key).map_err(|e| e.to_string())?;
    census::to_jsonl_line(&record).map_err(|e| e.to_string())
}

/// Normal form and series parameters of a comma separated third row.
pub fn classify_row_json(rho: u8, row: &str) -> Result<String, String> {
    let raw = RawMatrix::parse(rho_of(rho)?, row).map_err(|e| e.to_string())?;
    let normal = canonicalize(&raw).map_err(|e| e.to_string())?;
    let key = classify(&normal).map_err(|e| e.to_string())?;
    Ok(json!({"normal_form": normal.third_row(), "eta": eta_json(&key)}).to_string())
}

#[wasm_bindgen]
pub fn count_curve(rho: u8, iota_max: u32) -> Result<String, JsValue> {
    count_curve_json(rho, iota_max.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn surface_invariants(rho: u8, series: &str, params: Vec<i32>) -> Result<String, JsValue> {
    let params: Vec<i64> = params.into_iter().map(i64::from).collect();
    surface_invariants_json(rho, series, &params).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify_row(rho: u8, row: &str) -> Result<String, JsValue> {
    classify_row_json(rho, row).map_err(|e| JsValue::from_str(&e))
}
