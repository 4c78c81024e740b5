use fiqs_web::{classify_row_json, count_curve_json, surface_invariants_json};
use serde_json::Value;

#[test]
fn count_curve_matches_plot_data() {
    let v: Value = serde_json::from_str(&count_curve_json(1, 5).unwrap()).unwrap();
    let cumulative: Vec<u64> = v["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["cumulative"].as_u64().unwrap())
        .collect();
    assert_eq!(cumulative, vec![1, 1, 3, 5, 7]);
    assert_eq!(v["ke_total"], 4);
    assert!(count_curve_json(1, 0).is_err());
    assert!(count_curve_json(1, 201).is_err());
    assert!(count_curve_json(4, 5).is_err());
}

#[test]
fn surface_invariants_returns_record() {
    let v: Value = serde_json::from_str(&surface_invariants_json(1, "s11", &[3, 3]).unwrap()).unwrap();
    assert_eq!(v["gorenstein_index"], 3);
    assert_eq!(v["degree"], "2/3");
    assert_eq!(v["ke"], true);
    assert!(surface_invariants_json(1, "s11", &[2, 3]).is_err());
    assert!(surface_invariants_json(1, "s33", &[1, 1]).is_err());
    assert!(surface_invariants_json(1, "s11", &[1]).is_err());
}

#[test]
fn classify_row_returns_normal_form() {
    let v: Value = serde_json::from_str(&classify_row_json(1, "-1,-3,3,1").unwrap()).unwrap();
    assert_eq!(v["normal_form"], serde_json::json!([0, -2, 1, 1]));
    assert_eq!(v["eta"]["series"], "s11");
    assert!(classify_row_json(1, "1,1,1").is_err());
}
