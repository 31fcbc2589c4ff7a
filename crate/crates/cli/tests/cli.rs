use lievec_cli::{run_with_env, Outcome, EXIT_CERTIFICATE, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION};
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Outcome {
    let mut v = vec!["lievec"];
    v.extend_from_slice(args);
    run_with_env(v, None)
}

fn temp_file(name: &str, text: &str) -> String {
    let p = std::env::temp_dir().join(format!("lievec-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout))
}

#[test]
fn parse_echoes_canonical_forms() {
    let f = temp_file("echo.lie", "vars: x, y, u\n  y^2 * d_x - u*d_u  # comment\nd_y\n");
    let o = run(&["parse", &f]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "vars: x, y, u\ny^2*d_x - u*d_u\nd_y\n");
}

#[test]
fn parse_error_has_position() {
    let f = temp_file("bad.lie", "vars: x\nd_x + exp(x*x)*d_x\n");
    let o = run(&["parse", &f]);
    assert_eq!(o.code, EXIT_PARSE);
    assert!(o.stderr.contains("2:"), "{}", o.stderr);
    assert_eq!(run(&["parse", "/nonexistent/file.lie"]).code, EXIT_PARSE);
    assert_eq!(run(&["frobnicate"]).code, EXIT_PARSE);
}

#[test]
fn help_is_success() {
    let o = run(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("normalize"));
}

#[test]
fn analyze_reports_properties() {
    let v = json(&run(&["analyze", &data("scaled_filiform.lie")]));
    assert_eq!(v["dim"], 6);
    assert_eq!(v["solvable"], true);
    assert_eq!(v["nilpotent"], false);
    assert_eq!(v["transitive"], true);
}

#[test]
fn series_on_scaled_filiform() {
    let v = json(&run(&["series", &data("scaled_filiform.lie"), "--kind", "nilradical"]));
    assert_eq!(v["dims"], serde_json::json!([6, 4, 2, 1, 0]));
    assert_eq!(v["dimsAtOrigin"], serde_json::json!([2, 2, 1, 1, 0]));
    let v = json(&run(&["series", &data("filiform.lie"), "--kind", "lcs"]));
    assert_eq!(v["dims"], serde_json::json!([4, 2, 1, 0]));
    assert_eq!(v["height"], 3);
    assert_eq!(v["startIndex"], 1);
}

#[test]
fn nilradical_lines() {
    let o = run(&["nilradical", &data("scaled_filiform.lie")]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout.lines().count(), 4);
}

#[test]
fn grade_membership() {
    let f = temp_file("grade.lie", "vars: x, y\nd_x\ny*d_x\nx*d_x\n");
    let v = json(&run(&["grade", &f, "--weights", "3,1", "--mode", "nonpos"]));
    assert_eq!(v["holds"], true);
    assert_eq!(v["fields"][1]["degrees"], serde_json::json!([-2]));
    let v = json(&run(&["grade", &f, "--weights", "3,1", "--mode", "strictneg"]));
    assert_eq!(v["holds"], false);
    let o = run(&["grade", &f]);
    assert_eq!(o.code, EXIT_PRECONDITION);
}

#[test]
fn enum_negative_part() {
    let o = run(&["enum", "--vars", "y,z", "--weights", "1,2", "--degree", "-1"]);
    assert_eq!(o.stdout, "d_y\ny*d_z\n");
    let o = run(&["enum", "--vars", "y,z", "--weights", "1,2", "--degree", "-3"]);
    assert_eq!(o.code, EXIT_PRECONDITION);
}

#[test]
fn normalize_filiform() {
    let o = run(&["normalize", &data("filiform.lie")]);
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    assert_eq!(v["dilation"], "y:1, x:3");
    assert_eq!(v["status"], "certifiedNilpotent");
}

#[test]
fn normalize_exit_codes() {
    let sl2 = temp_file("sl2.lie", "vars: x\nd_x\nx*d_x\nx^2*d_x\n");
    assert_eq!(run(&["normalize", &sl2]).code, EXIT_PRECONDITION);
    let o = run(&["normalize", &data("filiform.lie"), "--jet-order", "3"]);
    assert_eq!(o.code, EXIT_CERTIFICATE);
    assert!(json(&o)["status"]["failed"].as_str().unwrap().starts_with("OrderTooLow"));
    assert_eq!(run(&["witness", &data("filiform.lie"), "--jet-order", "3"]).code, EXIT_CERTIFICATE);
}

#[test]
fn normalize_reads_file_options() {
    let f = temp_file("opts.lie", "vars: x, y\nd_x\nd_y\ny*d_x\noptions:\n  strategy = flows\n  jet_order = 5\n");
    let v = json(&run(&["normalize", &f]));
    assert_eq!(v["strategy"], "flows");
    assert_eq!(v["jetOrder"], 5);
    let v = json(&run(&["normalize", &f, "--jet-order", "6"]));
    assert_eq!(v["jetOrder"], 6);
}

#[test]
fn witness_exp_trig() {
    let o = run(&["witness", &data("exp_trig.lie")]);
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    let gens: Vec<&str> = v["generators"].as_array().unwrap().iter().map(|g| g.as_str().unwrap()).collect();
    for g in ["exp(x)", "exp(2*x)", "sin(x)", "cos(x)"] {
        assert!(gens.contains(&g), "{gens:?}");
    }
    assert_eq!(v["verdict"], "witnessed");
}

#[test]
fn closure_cap_from_env_and_flag() {
    let f = data("exp_trig.lie");
    let o = run_with_env(["lievec", "analyze", &f], Some("10".into()));
    assert_eq!(o.code, EXIT_PRECONDITION);
    assert!(o.stderr.contains("cap 10"));
    let o = run_with_env(["lievec", "analyze", &f, "--max-dim", "32"], Some("10".into()));
    assert_eq!(o.code, EXIT_OK);
    let o = run_with_env(["lievec", "analyze", &f], Some("many".into()));
    assert_eq!(o.code, EXIT_PRECONDITION);
}

#[test]
fn gen_is_seeded_and_certifies() {
    let args = ["gen", "--vars", "x,y,z", "--weights", "0,1,2", "--seed", "11", "--density", "1/2"];
    let a = run(&args);
    assert_eq!(a, run(&args));
    assert_eq!(a.code, EXIT_OK);
    let f = temp_file("gen.lie", &a.stdout);
    let o = run(&["normalize", &f]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    assert_eq!(run(&["gen", "--vars", "x", "--weights", "1", "--seed", "1", "--density", "3/2"]).code, EXIT_PRECONDITION);
}
