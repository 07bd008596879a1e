use caterpack_web::{pack_json, three_copies_json, zigzag_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn zigzag_reports_window_and_ending_point() {
    let v = parse(zigzag_json(4, 3, 0, 0).unwrap());
    assert_eq!(v["n"], 11);
    assert_eq!(v["slope_window"], serde_json::json!([7, 8, 9, 10]));
    assert!(v["svg"].as_str().unwrap().starts_with("<svg"));

    let r = parse(zigzag_json(4, 3, 0, 2).unwrap());
    assert_eq!(r["start"], 2);
    assert_eq!(r["slope_window"], serde_json::json!([0, 1, 2, 3]));
    assert!(zigzag_json(1, 3, 0, 0).is_err());
}

#[test]
fn pack_measures_against_bounds() {
    let v = parse(pack_json("place", "5", 3, 4, 0, false).unwrap());
    assert_eq!(v["simple"], true);
    let k = v["crossings"]["k"].as_u64().unwrap();
    assert!(k <= v["bounds"]["placement_bound"].as_u64().unwrap());

    let half = parse(pack_json("place", "5", 3, 4, 0, true).unwrap());
    assert!(half["crossings"]["k"].as_u64().unwrap() <= k);

    assert!(parse(pack_json("divisible", "17, 9, 9", 0, 0, 34, false).unwrap())["simple"] == true);
    let err = pack_json("mixed", "17,9,9", 0, 0, 34, false).unwrap_err();
    assert!(err.contains("infeasible"));
    assert!(pack_json("place", "", 3, 2, 0, false).is_err());
    assert!(pack_json("other", "4", 3, 2, 0, false).is_err());
}

#[test]
fn three_copies_certified_or_explained() {
    let v = parse(three_copies_json(5, 4).unwrap());
    assert_eq!(v["certified"], true);
    assert!(v["crossings"]["k"].as_u64().unwrap() <= 2);

    let v = parse(three_copies_json(7, 2).unwrap());
    assert_eq!(v["certified"], false);
    assert!(v["crossings"]["k"].as_u64().unwrap() > 2);
    assert!(!v["note"].as_str().unwrap().is_empty());
}
