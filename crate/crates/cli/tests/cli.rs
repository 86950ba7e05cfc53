use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn rk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rk")).args(args).output().expect("binary runs")
}

fn rk_file(args: &[&str], file: &str) -> Output {
    let p = data(file);
    let mut all: Vec<&str> = args.to_vec();
    all.push(p.to_str().expect("utf-8 path"));
    rk(&all)
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn classify_strip_reports_line_direction() {
    let o = rk_file(&["classify"], "strip_sqrt2_r2.json");
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["schema"], "rk-1");
    assert_eq!(v["command"], "classify");
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
    let r = &v["result"];
    assert_eq!(r["kind"], "strip");
    assert_eq!(r["hyperbolic"]["value"], "false");
    assert_eq!(r["hyperbolic"]["witness"], "(√2, -1)");
    assert_eq!(r["pseudoconvex"]["value"], "true");
}

#[test]
fn classify_bidisc_and_malformed_gamma() {
    let o = rk_file(&["classify"], "bidisc.json");
    assert_eq!(json(&o)["result"]["kind"], "bounded-hyperbolic");
    let o = rk_file(&["classify"], "malformed_gamma.json");
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["error"]["exit"], 2);
    assert!(!o.stderr.is_empty());
}

#[test]
fn classify_counterexample_is_not_pseudoconvex() {
    let o = rk_file(&["classify"], "counterexample.json");
    let r = &json(&o)["result"];
    assert_eq!(r["kind"], "counterexample");
    assert_eq!(r["pseudoconvex"]["value"], "false");
    assert_eq!(r["pseudoconvex"]["witness_disc"]["boundary_points"], 64);
}

#[test]
fn invalid_json_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, b"{\"gamma\": ").unwrap();
    assert_eq!(code(&rk(&["classify", p.to_str().unwrap()])), 2);
    assert_eq!(code(&rk(&["classify", "/nonexistent/input.json"])), 1);
}

#[test]
fn degree_of_unit_matrix() {
    let o = rk_file(&["endo", "degree"], "degree_sqrt2.json");
    assert_eq!(code(&o), 0);
    let r = &json(&o)["result"];
    assert_eq!(r["statement"], "α = -1 + 1·√2");
    assert_eq!(r["conjugate_degree"], "-1 - 1·√2");
    assert_eq!(r["multiplicity"], "1");
}

#[test]
fn validate_reports_violated_clause() {
    let o = rk_file(&["endo", "validate"], "validate_strip_scaling.json");
    assert_eq!(code(&o), 3);
    let r = &json(&o)["result"];
    assert_eq!(r["validation"]["verdict"], "false");
    assert_eq!(r["validation"]["violations"][0], "β·r^{−α} below 1/r");
    let o = rk_file(&["endo", "validate"], "validate_strip_inverse.json");
    assert_eq!(code(&o), 0);
}

#[test]
fn involutions_of_half_plane_type() {
    let o = rk_file(&["endo", "involutions"], "half_plane_sqrt2.json");
    let r = &json(&o)["result"];
    assert_eq!(r["count"], 3);
    assert_eq!(r["entries"].as_array().unwrap().len(), 3);
    assert_eq!(r["all_certified"], true);
    assert!(r["family"].is_null());
    let o = rk_file(&["endo", "involutions"], "strip_sqrt2_r2.json");
    assert!(!json(&o)["result"]["family"]["members"].as_array().unwrap().is_empty());
}

#[test]
fn compose_closed_and_opaque() {
    let o = rk_file(&["endo", "compose"], "compose_closed.json");
    let r = &json(&o)["result"];
    assert_eq!(r["form"], "closed");
    assert_eq!(r["degree"], "-1 + 1·√2");
    assert!(r["residual"]["max_relative_error"].as_f64().unwrap() < 1e-12);
    let o = rk_file(&["endo", "compose"], "compose_twists.json");
    let r = &json(&o)["result"];
    assert_eq!(r["form"], "opaque");
    assert_eq!(r["chain"].as_array().unwrap().len(), 2);
    assert!(r["residual"]["max_relative_error"].as_f64().unwrap() < 1e-12);
}

#[test]
fn enumerate_enclosed_gives_scalar_matrices() {
    let o = rk_file(&["endo", "enumerate"], "enumerate_enclosed.json");
    let r = &json(&o)["result"];
    assert_eq!(r["count"], 7);
    for m in r["matrices"].as_array().unwrap() {
        let e: Vec<i64> = serde_json::from_value(m["M"].clone()).unwrap();
        assert!(e[0] == e[3] && e[1] == 0 && e[2] == 0);
    }
}

#[test]
fn embed_rational_band_and_torus() {
    let o = rk_file(&["embed"], "rational_band.json");
    assert_eq!(code(&o), 0);
    let r = &json(&o)["result"];
    assert_eq!(r["v"], serde_json::json!([3, -2]));
    assert_eq!(r["pairing"], "1");
    assert_eq!(r["curve_in_domain"], "in");
    for key in ["parameter", "retract_embed", "idempotence"] {
        assert!(r["residuals"][key].as_f64().unwrap() < 1e-12, "{key}");
    }
    let o = rk_file(&["embed"], "punctured_plane_pair.json");
    let r = &json(&o)["result"];
    assert_eq!(r["v"], serde_json::json!([1, 0]));
    assert_eq!(r["k"], serde_json::json!([1, 0]));
}

#[test]
fn embed_irrational_types_have_no_rational_line() {
    for f in ["half_plane_sqrt2.json", "strip_sqrt2_r2.json", "counterexample.json"] {
        let o = rk_file(&["embed"], f);
        assert_eq!(code(&o), 4, "{f}");
        assert_eq!(json(&o)["error"]["message"], "only real lines of irrational type");
    }
    assert_eq!(code(&rk_file(&["embed"], "bidisc.json")), 4);
}

fn boundary_slopes(svg: &str) -> Vec<f64> {
    svg.lines()
        .filter(|l| l.contains(r#"class="boundary""#))
        .map(|l| {
            let attr = |name: &str| -> f64 {
                let start = l.find(&format!(" {name}=\"")).unwrap() + name.len() + 3;
                l[start..].split('"').next().unwrap().parse().unwrap()
            };
            // Pixel y points down.
            -(attr("y2") - attr("y1")) / (attr("x2") - attr("x1"))
        })
        .collect()
}

#[test]
fn render_strip_draws_parallel_lines() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("strip.svg");
    let o = rk(&["render", data("strip_sqrt2_r2.json").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let svg = std::fs::read_to_string(out).unwrap();
    assert!(svg.contains(r#"version="1.1""#));
    let slopes = boundary_slopes(&svg);
    assert_eq!(slopes.len(), 2);
    for s in slopes {
        assert!((s + 1.0 / 2f64.sqrt()).abs() < 1e-2, "slope {s}");
    }
    assert_eq!(svg.matches(r#"class="lineality""#).count(), 2);
}

#[test]
fn render_half_plane_and_counterexample() {
    let o = rk_file(&["render"], "complete_sqrt2.json");
    let svg = String::from_utf8(o.stdout).unwrap();
    assert_eq!(boundary_slopes(&svg).len(), 1);
    assert!(svg.contains(r#"class="region""#));
    let o = rk_file(&["render"], "counterexample.json");
    let svg = String::from_utf8(o.stdout).unwrap();
    for id in ["slit-i1", "slit-i2", "level-half"] {
        assert!(svg.contains(&format!(r#"id="{id}""#)), "{id}");
    }
    let o = rk_file(&["render", "--view", "1,0,0,1"], "bidisc.json");
    assert_eq!(code(&o), 2);
}

fn verdicts(v: &Value) -> Vec<(String, String)> {
    v["result"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["candidate"].as_str().unwrap().to_string(), e["verdict"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn counterexample_rejects_every_non_rotation() {
    let o = rk(&["counterexample", "--check"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let r = &v["result"];
    assert_eq!(r["rejected"], 12);
    assert_eq!(r["survived"], 9);
    assert!(r["unexpected_survivors"].as_array().unwrap().is_empty());
    assert_eq!(r["witness_disc"]["center_membership"], "out");
    for e in r["entries"].as_array().unwrap() {
        if e["verdict"] == "rejected" {
            assert_eq!(e["witness"]["membership"], "in");
            assert_eq!(e["witness"]["image_membership"], "out");
        }
    }
    let other = json(&rk(&["counterexample", "--seed", "7", "--samples", "50"]));
    assert_eq!(verdicts(&v), verdicts(&other));
}

#[test]
fn rotations_catalog_exits_zero() {
    let o = rk(&["counterexample", "--catalog", "rotations"]);
    assert_eq!(code(&o), 0);
    let r = &json(&o)["result"];
    assert_eq!(r["rejected"], 0);
    assert_eq!(r["candidates"], 6);
}

#[test]
fn reports_are_byte_identical() {
    let a = rk(&["counterexample", "--seed", "3"]);
    let b = rk(&["counterexample", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let a = rk_file(&["--seed", "5", "embed"], "rational_band.json");
    let b = rk_file(&["--seed", "5", "embed"], "rational_band.json");
    assert_eq!(a.stdout, b.stdout);
    let c = rk_file(&["--seed", "6", "embed"], "rational_band.json");
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn stdin_input() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_rk"))
        .args(["classify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"polydisc": ["1", "2"]}"#).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(json(&o)["result"]["kind"], "bounded-hyperbolic");
}
