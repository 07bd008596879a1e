use std::process::{Command, Output};

use caterpack::packing::PackingLayout;
use serde_json::Value;

fn caterpack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_caterpack")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn pack_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let p = path.to_str().unwrap();
    let o = caterpack(&["pack", "--scheme", "place", "--delta", "5", "--sigma", "3", "--h", "4", "--seed", "9", "--out", p]);
    assert_eq!(code(&o), 0);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["seed"], 9);
    assert_eq!(written["scheme"], "place");

    let o = caterpack(&["verify", p, "--against-bounds"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["simple"], true);
    assert_eq!(v["report"]["k"], written["report"]["k"]);
    assert!(v["bounds"].as_array().unwrap().iter().all(|b| b["holds"] == true));

    let sweep = stdout_json(&caterpack(&["verify", p, "--counter", "sweep"]));
    assert_eq!(sweep["report"], v["report"]);
}

#[test]
fn verify_rejects_duplicated_edges_and_bad_json() {
    let dir = tempfile::tempdir().unwrap();
    let dup = dir.path().join("dup.json");
    let layout = r#"{"n":4,"drawings":[
        {"n":4,"start":0,"edges":[[0,1,"inner"],[1,2,"inner"],[2,3,"inner"]]},
        {"n":4,"start":0,"edges":[[0,1,"inner"],[0,2,"inner"],[0,3,"inner"]]}]}"#;
    std::fs::write(&dup, layout).unwrap();
    let o = caterpack(&["verify", dup.to_str().unwrap()]);
    assert_eq!(code(&o), 4);
    assert_eq!(stdout_json(&o)["multi_edges"], serde_json::json!([[0, 1]]));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{").unwrap();
    assert_eq!(code(&caterpack(&["verify", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&caterpack(&["verify", "/nonexistent/layout.json"])), 2);
}

#[test]
fn usage_and_infeasible_exit_codes() {
    assert_eq!(code(&caterpack(&[])), 2);
    assert_eq!(code(&caterpack(&["pack", "--scheme", "nope"])), 2);
    assert_eq!(code(&caterpack(&["pack", "--scheme", "place", "--delta", "4"])), 2);
    assert_eq!(code(&caterpack(&["gen", "--delta", "1", "--sigma", "2"])), 2);
    assert_eq!(code(&caterpack(&["--help"])), 0);
    // four copies of the (3,3) caterpillar on 8 vertices violate n >= 2h + 1
    let o = caterpack(&["pack", "--scheme", "place", "--delta", "3", "--sigma", "3", "--h", "4"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("infeasible"));
}

#[test]
fn thread_count_from_environment() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_caterpack"))
            .args(["pack", "--scheme", "mixed", "--deltas", "7,5,3", "--n", "38"])
            .env("CATERPACK_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(code(&run("zero")), 2);
    assert_eq!(code(&run("0")), 2);
}

#[test]
fn render_is_deterministic_svg() {
    let dir = tempfile::tempdir().unwrap();
    let layout = dir.path().join("l.json");
    let l = layout.to_str().unwrap();
    assert_eq!(code(&caterpack(&["pack", "--scheme", "place", "--delta", "4", "--sigma", "3", "--h", "3", "--halve", "--out", l])), 0);
    let a = caterpack(&["render", l]);
    let b = caterpack(&["render", l]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let svg = String::from_utf8(a.stdout).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("<path"), "halved layout has outer edges");

    let out = dir.path().join("l.svg");
    assert_eq!(code(&caterpack(&["render", l, "--out", out.to_str().unwrap()])), 0);
    assert_eq!(std::fs::read_to_string(out).unwrap(), svg);
}

#[test]
fn gen_outputs_parse_back() {
    let o = caterpack(&["gen", "--delta", "4", "--sigma", "3", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    let c: caterpack::Caterpillar = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((c.n(), c.sigma(), c.regularity()), (11, 3, Some(4)));

    let o = caterpack(&["gen", "--center", "--n", "12", "--h", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["center_degree"], 9);
}

#[test]
fn bounds_flag_the_three_copy_range() {
    let v = stdout_json(&caterpack(&["bounds", "--n", "14", "--deltas", "4", "--h", "3"]));
    assert_eq!(v["placement_bound"], 44);
    assert_eq!(v["three_copy_range"]["substituted"], serde_json::json!([44, 68]));
    assert_eq!(v["three_copy_range"]["mismatch"], true);
    assert_eq!(v["three_copy_range"]["mixed_bound_range"], serde_json::json!([86, 137]));
    let t = caterpack(&["bounds", "--n", "14", "--deltas", "4", "--h", "3", "--format", "table"]);
    assert!(String::from_utf8_lossy(&t.stdout).contains("does not match"));
    assert_eq!(code(&caterpack(&["bounds", "--n", "14", "--deltas", "3,4"])), 2);
}

#[test]
fn oracle_verdicts_and_budget() {
    let v = stdout_json(&caterpack(&["oracle", "--copies", "3", "--delta", "3", "--sigma", "2"]));
    assert_eq!(v["verdict"], "exists");
    assert_eq!(v["certificate_verified"], true);

    let o = caterpack(&["oracle", "--copies", "5", "--delta", "4", "--sigma", "4", "--budget", "100"]);
    assert_eq!(code(&o), 5);
    assert_eq!(stdout_json(&o)["verdict"], "budget-exhausted");

    let v = stdout_json(&caterpack(&["oracle", "--copies", "2", "--delta", "3", "--sigma", "2", "--count"]));
    assert_eq!(v["verdict"], "counted");

    let v = stdout_json(&caterpack(&["oracle", "--min-k", "--copies", "2", "--delta", "4", "--sigma", "3"]));
    assert!(v["k"].as_u64().unwrap() <= v["bound"].as_u64().unwrap());
}

#[test]
fn oracle_geometric_and_caterpillar_file() {
    let dir = tempfile::tempdir().unwrap();
    let l = dir.path().join("l.json");
    let o = caterpack(&["pack", "--scheme", "three2planar", "--delta", "5", "--sigma", "3"]);
    assert_eq!(code(&o), 0);
    std::fs::write(&l, &o.stdout).unwrap();
    let layout: PackingLayout = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(layout.h(), 3);
    let v = stdout_json(&caterpack(&["oracle", "--geometric", l.to_str().unwrap()]));
    assert_eq!(v["equal"], true);
    assert!(v["k"].as_u64().unwrap() <= 2);

    let cats = dir.path().join("cats.json");
    let c = caterpack::make_regular_caterpillar(3, 2).unwrap();
    let list = vec![c.clone(), c];
    std::fs::write(&cats, serde_json::to_string(&list).unwrap()).unwrap();
    let v = stdout_json(&caterpack(&["oracle", "--caterpillars", cats.to_str().unwrap()]));
    assert_eq!(v["verdict"], "exists");
}

#[test]
fn table_format_is_plain_text() {
    let o = caterpack(&["pack", "--scheme", "divisible", "--deltas", "17,9,9", "--n", "34", "--format", "table"]);
    assert_eq!(code(&o), 0);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.contains("within bound") && s.contains("true"));
    assert!(serde_json::from_str::<Value>(&s).is_err());
}
