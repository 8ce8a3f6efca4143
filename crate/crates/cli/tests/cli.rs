use std::process::{Command, Output};

const M_GROUP: &str = r#"{"generators":["a","b","t"],"relators":["aabb","[t,ab]"],"peripherals":[{"mu":"AAT","lambda":"ab"},{"mu":"t","lambda":"ab"}]}"#;
const M_SEIFERT: &str = r#"{"base":{"genus":1,"orientable":false,"boundaries":2}}"#;
const RP2_23: &str = r#"{"base":{"genus":1,"orientable":false,"boundaries":0,"cones":[2,3]},"b0":0,"fibers":[[2,1],[3,1]]}"#;

fn sslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sslab"))
        .args(args)
        .env("SSLAB_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = sslab(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn certificate_for_rp2_base() {
    let v = json(&["lspace", "--json", "--seifert", RP2_23]);
    assert_eq!(v["verdict"], "LSpace");
    assert_eq!(v["rule"], "NonOrientableBase");
    assert_eq!(v["witness"]["h1_order"], 24);
}

#[test]
fn filled_group_feeds_back_into_h1() {
    let dir = std::env::temp_dir().join(format!("sslab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let m = dir.join("M.json");
    std::fs::write(&m, M_GROUP).unwrap();
    let filled = sslab(&["fill", "--json", "--manifold", m.to_str().unwrap(), "--boundary", "1", "--slope", "0/1"]);
    assert!(filled.status.success());
    let f = dir.join("filled.json");
    std::fs::write(&f, &filled.stdout).unwrap();
    let h1 = sslab(&["h1", "--manifold", f.to_str().unwrap()]);
    assert_eq!(stdout(&h1).trim(), "Z^2");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn seifert_fill_outcomes_round_trip() {
    let once = stdout(&sslab(&["fill", "--json", "--manifold", M_SEIFERT, "--boundary", "2", "--slope", "3/1"]));
    let v: serde_json::Value = serde_json::from_str(&once).unwrap();
    assert_eq!(v["outcome"], "still_bounded");
    let twice = json(&["fill", "--json", "--manifold", &once, "--boundary", "1", "--slope", "2/1"]);
    assert_eq!(twice["outcome"], "closed");
    assert_eq!(twice["manifold"]["base"]["cones"], serde_json::json!([2, 3]));
    let cert = json(&["lspace", "--json", "--seifert", &twice.to_string()]);
    assert_eq!(cert["rule"], "NonOrientableBase");
    let fiber = json(&["fill", "--json", "--manifold", M_SEIFERT, "--slope", "0/1"]);
    assert_eq!(fiber["outcome"], "fiber_filling");
}

#[test]
fn json_output_is_byte_identical() {
    let args = ["verify", "remark", "--p-bound", "8", "--json"];
    let (a, b) = (sslab(&args), sslab(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let args = ["homcount", "--json", "--group", M_GROUP, "--target", "S3"];
    assert_eq!(sslab(&args).stdout, sslab(&args).stdout);
}

#[test]
fn single_operations() {
    assert_eq!(stdout(&sslab(&["longitude", "--group", M_GROUP, "--boundary", "1"])).trim(), "0/1");
    assert_eq!(stdout(&sslab(&["abelianize", "--group", M_GROUP])).trim(), "Z^2 + Z/2");
    let v = json(&["recognize", "--json", "--seifert", r#"{"base":{"cones":[2,3,5]},"b0":-1}"#]);
    assert_eq!(v["kind"], "Elliptic");
    let v = json(&["tangle", "--json", "--slope", "7/3"]);
    assert_eq!(v["cover"], serde_json::json!({"p": 7, "q": 3}));
    let trefoil = r#"{"generators":["x","y"],"relators":["xxxYY"]}"#;
    assert_eq!(stdout(&sslab(&["alexander", "--group", trefoil])).trim(), "t^2 - t + 1");
    let v = json(&["homcount", "--json", "--group", M_GROUP, "--target", "Z2"]);
    assert_eq!(v["count"], 8);
}

#[test]
fn verification_suites_exit_zero() {
    let o = sslab(&["verify", "fibration", "--alpha", "2/1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("fibration_homcount"));
    let o = sslab(&["verify", "generalized", "--cones", "2,3", "--beta-bound", "4"]);
    assert!(o.status.success());
    let o = sslab(&["verify", "theorem", "--alpha-bound", "3", "--beta-bound", "3", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counterexamples"], serde_json::json!([]));
}

#[test]
fn malformed_input_exits_two() {
    for args in [
        vec!["fill", "--manifold", "{bad", "--slope", "1/0"],
        vec!["fill", "--manifold", M_GROUP, "--slope", "2/4"],
        vec!["fill", "--manifold", M_GROUP, "--boundary", "0", "--slope", "1/0"],
        vec!["lspace", "--seifert", M_SEIFERT],
        vec!["verify", "fibration", "--alpha", "1/0"],
        vec!["verify", "generalized", "--cones", "1"],
        vec!["homcount", "--group", M_GROUP, "--target", "Q8"],
        vec!["nonsense"],
    ] {
        let o = sslab(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = Command::new(env!("CARGO_BIN_EXE_sslab"))
        .args(["tangle", "--slope", "1/2"])
        .env("SSLAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
