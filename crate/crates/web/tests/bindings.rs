use qmono_web::{expand, expand_value, heatmap, heatmap_value, specialize, specialize_value};
use serde_json::Value;

#[test]
fn specialize_two_one() {
    let v = specialize_value("2,1", "", "").unwrap();
    assert_eq!(v["partition"], serde_json::json!([2, 1]));
    assert_eq!(v["record"]["variables"], serde_json::json!(["a", "b", "q"]));
    let v = specialize_value("1,1", "1", "q^3").unwrap();
    assert_eq!(v["record"]["variables"], serde_json::json!(["q"]));
    // e_2 on {1, q, q^2} is q + q^2 + q^3
    assert_eq!(v["record"]["numerator"], "q^3 + q^2 + q");
    let v = specialize_value("1", "1", "t").unwrap();
    assert_eq!(v["text"], "(1 - t) / (1 - q)");
}

#[test]
fn heatmap_grid() {
    let v = heatmap_value("2,1").unwrap();
    assert_eq!(v["grid"], serde_json::json!([[1, 2], [2, 1]]));
    assert_eq!(v["H"], "1 + 2 * q + 2 * t + q * t");
    assert_eq!(v["checksPass"], true);
}

#[test]
fn expand_table() {
    let v = expand_value(2, "monomial").unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(v["basis"], "monomial");
    assert_eq!(
        expand_value(3, "deformed-e").unwrap()["entries"]
            .as_array()
            .unwrap()
            .len(),
        3
    );
}

#[test]
fn errors_are_json() {
    for s in [
        specialize("x", "", ""),
        heatmap("20"),
        expand(9, "power"),
        expand(2, "schur"),
        specialize("1", "", "z"),
    ] {
        let v: Value = serde_json::from_str(&s).unwrap();
        assert!(v["error"].is_string(), "{s}");
    }
}
