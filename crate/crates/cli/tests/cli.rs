use std::path::Path;
use std::process::{Command, Output};

use polyslice::enumerate::VSSReport;
use polyslice::slicer::SweepProfile;
use polyslice::VPolytope;
use tempfile::TempDir;

fn polyslice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyslice"))
        .args(args)
        .env_remove("POLYSLICE_JOBS")
        .output()
        .expect("spawn polyslice")
}

fn ok(args: &[&str]) -> String {
    let out = polyslice(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    polyslice(args).status.code().unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn family(dir: &TempDir, name: &str, extra: &[&str]) -> String {
    let out = path(dir, &format!("{name}.json"));
    let mut args = vec!["family", "--name", name, "--out", &out];
    args.extend_from_slice(extra);
    ok(&args);
    out
}

#[test]
fn q4_oracle_report_has_gaps_3_and_5() {
    let dir = TempDir::new().unwrap();
    let q4 = family(&dir, "hypercube", &["--dim", "4"]);
    let report = path(&dir, "r.json");
    ok(&[
        "vss",
        "--polytope",
        &q4,
        "--generator",
        "oracle",
        "--out",
        &report,
    ]);
    let r: VSSReport = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(r.exhaustive);
    assert_eq!(r.nu, 12);
    assert_eq!(r.gaps.iter().copied().collect::<Vec<_>>(), vec![3, 5]);
    let line = ok(&["gaps", "--report", &report, "--polytope", &q4]);
    assert_eq!(line.trim(), "nu=12 gaps {3,5}");
}

#[test]
fn table_row_six() {
    assert_eq!(
        ok(&["table", "--dim", "6"]).trim(),
        "d=6 nu=60 gaps {3,5,7,9,11,12,59}"
    );
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["table", "--dim", "2", "--json"])).unwrap();
    assert_eq!(v["nu"], 2);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let missing = path(&dir, "missing.json");
    assert_eq!(code(&["vss", "--polytope", &missing]), 2);
    assert_eq!(code(&["verify", "sometimes"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["--jobs", "0", "table", "--dim", "3"]), 2);
    // domain errors
    assert_eq!(code(&["table", "--dim", "9"]), 1);
    assert_eq!(
        code(&["family", "--name", "cyclic", "--dim", "3", "--n", "3"]),
        1
    );
    let bad = path(&dir, "bad.json");
    std::fs::write(
        &bad,
        r#"{"name":"x","dim":2,"vertices":[["0","0"],["0","0"]],"edges":[]}"#,
    )
    .unwrap();
    assert_eq!(
        code(&["sweep", "--polytope", &bad, "--direction", "1,0"]),
        1
    );
    // too many vertices for the oracle
    let ico = family(&dir, "icosahedron", &["--stack", "1"]);
    assert_eq!(code(&["oracle", "--polytope", &ico]), 1);
}

#[test]
fn reports_are_byte_identical_across_jobs() {
    let dir = TempDir::new().unwrap();
    let c = family(&dir, "cyclic", &["--dim", "3", "--n", "6"]);
    let a = path(&dir, "a.json");
    let b = path(&dir, "b.json");
    ok(&["--jobs", "1", "vss", "--polytope", &c, "--out", &a]);
    ok(&["--jobs", "3", "vss", "--polytope", &c, "--out", &b]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let r: VSSReport = serde_json::from_str(&std::fs::read_to_string(&a).unwrap()).unwrap();
    assert_eq!(r.realized, (1..=8).collect());
}

fn keys_sorted(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Object(m) => {
            let keys: Vec<&String> = m.keys().collect();
            keys.windows(2).all(|w| w[0] < w[1]) && m.values().all(keys_sorted)
        }
        serde_json::Value::Array(a) => a.iter().all(keys_sorted),
        _ => true,
    }
}

#[test]
fn json_round_trips_with_sorted_keys() {
    let dir = TempDir::new().unwrap();
    let cube = family(&dir, "cube", &[]);
    let text = std::fs::read_to_string(&cube).unwrap();
    let p: VPolytope = serde_json::from_str(&text).unwrap();
    assert_eq!(p.num_vertices(), 8);
    let again = serde_json::to_value(&p).unwrap();
    assert_eq!(
        again,
        serde_json::from_str::<serde_json::Value>(&text).unwrap()
    );
    assert_eq!(serde_json::to_string_pretty(&again).unwrap() + "\n", text);

    let out = path(&dir, "sweep.json");
    ok(&[
        "sweep",
        "--polytope",
        &cube,
        "--direction",
        "1,1,2",
        "--out",
        &out,
    ]);
    let text = std::fs::read_to_string(&out).unwrap();
    let s: SweepProfile = serde_json::from_str(&text).unwrap();
    assert!(s.between.contains(&5));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(keys_sorted(&v));

    let poset = ok(&["poset", "--polytope", &cube, "--direction", "1,1,1"]);
    let v: serde_json::Value = serde_json::from_str(&poset).unwrap();
    assert!(keys_sorted(&v));
    assert_eq!(v["width"], 6);
}

#[test]
fn cv_and_csv_export() {
    let dir = TempDir::new().unwrap();
    let sq = family(&dir, "hypercube", &["--dim", "2"]);
    let v: serde_json::Value = serde_json::from_str(&ok(&[
        "cv",
        "--polytope",
        &sq,
        "--direction",
        "1,2",
        "--offset",
        "1",
    ]))
    .unwrap();
    assert_eq!(v["cv"], 2);
    let v: serde_json::Value = serde_json::from_str(&ok(&[
        "cv",
        "--polytope",
        &sq,
        "--direction",
        "1,-1",
        "--offset",
        "-1/2",
    ]))
    .unwrap();
    assert_eq!(v["cv"], 2);
    assert_eq!(
        code(&[
            "cv",
            "--polytope",
            &sq,
            "--direction",
            "1,2,3",
            "--offset",
            "0"
        ]),
        2
    );

    let csv = path(&dir, "w.csv");
    ok(&[
        "vss",
        "--polytope",
        &sq,
        "--generator",
        "facets",
        "--csv",
        &csv,
    ]);
    let mut rd = csv::Reader::from_path(Path::new(&csv)).unwrap();
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rd.headers().unwrap(), vec!["count", "direction", "offset"]);
    assert_eq!(rows.iter().map(|r| &r[0]).collect::<Vec<_>>(), vec!["2"]);
}

#[test]
fn poset_dot_and_certificate() {
    let dir = TempDir::new().unwrap();
    let q3 = family(&dir, "hypercube", &["--dim", "3"]);
    let dot = ok(&[
        "poset",
        "--polytope",
        &q3,
        "--direction",
        "1,2,3",
        "--format",
        "dot",
    ]);
    assert!(dot.starts_with("digraph"));
    let ico = family(&dir, "icosahedron", &[]);
    let v: serde_json::Value = serde_json::from_str(&ok(&[
        "certify",
        "--polytope",
        &ico,
        "--r",
        "4",
        "--k",
        "5",
    ]))
    .unwrap();
    assert_eq!(v["outcome"], "certified");
    assert_eq!(
        code(&["certify", "--polytope", &ico, "--r", "3", "--k", "5"]),
        1
    );
}

#[test]
fn grid_generator_on_q3() {
    let dir = TempDir::new().unwrap();
    let q3 = family(&dir, "hypercube", &["--dim", "3"]);
    let out = path(&dir, "g.json");
    ok(&[
        "vss",
        "--polytope",
        &q3,
        "--generator",
        "grid",
        "--out",
        &out,
    ]);
    let line = ok(&["gaps", "--report", &out]);
    assert_eq!(line.trim(), "nu=6 gaps {} (not exhaustive)");
}
