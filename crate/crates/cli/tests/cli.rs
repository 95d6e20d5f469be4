use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use chainmail::io::write_chainmail;
use chainmail::lspace::{certificate_from_json, certify, verify_certificate};
use chainmail::ChainmailGraph;
use chainmail_cli::run;
use tempfile::TempDir;

fn put(dir: &Path, name: &str, g: &ChainmailGraph) -> String {
    let path = dir.join(name);
    fs::write(&path, write_chainmail(g)).unwrap();
    path.to_string_lossy().into_owned()
}

fn pair(a: i64, b: i64) -> ChainmailGraph {
    ChainmailGraph::from_lists(&[(0, a), (1, b)], &[(1, 0, 1, -1)]).unwrap()
}

fn triangle() -> ChainmailGraph {
    ChainmailGraph::from_lists(
        &[(0, 1), (1, 0), (2, 0)],
        &[(0, 0, 1, -1), (1, 1, 2, -1), (2, 2, 0, -1)],
    )
    .unwrap()
}

fn cli(args: &[&str]) -> chainmail_cli::Outcome {
    run(std::iter::once("chainmail").chain(args.iter().copied()))
}

#[test]
fn homology_and_determinant() {
    let dir = TempDir::new().unwrap();
    let t = put(dir.path(), "t.cmg.json", &triangle());
    let out = cli(&["h1", &t]);
    assert_eq!((out.code, out.stdout.trim()), (0, "Z/3"), "{}", out.stderr);
    let out = cli(&["--format", "json", "det", &t]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(v.to_string().contains("\"3\""), "{v}");
}

#[test]
fn deletion_contraction() {
    let dir = TempDir::new().unwrap();
    let p = put(dir.path(), "ab.cmg.json", &pair(1, 1));
    let out = cli(&["dc-check", "--edge", "e1", &p]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("3 = 1 + 2 OK"), "{}", out.stdout);
    let out = cli(&["dc-check", "--edge", "e9", &p]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("e9"), "{}", out.stderr);
}

#[test]
fn certify_and_verify() {
    let dir = TempDir::new().unwrap();
    let bad = put(dir.path(), "zero.cmg.json", &pair(0, 0));
    let out = cli(&["certify", &bad]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("hypothesis"), "{}", out.stderr);

    let t = put(dir.path(), "t.cmg.json", &triangle());
    let out = cli(&["certify", &t]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("certified: det 3"), "{}", out.stdout);

    let cert_path = dir.path().join("t.cert.json");
    let out = cli(&["--format", "json", "--out", cert_path.to_str().unwrap(), "certify", &t]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let text = fs::read_to_string(&cert_path).unwrap();
    let cert = certificate_from_json(&text).unwrap();
    assert_eq!(cert, certify(&triangle()).unwrap());
    assert!(verify_certificate(&cert).is_valid());
    let out = cli(&["verify", cert_path.to_str().unwrap()]);
    assert_eq!((out.code, out.stdout.trim()), (0, "valid"));

    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["nodes"][1]["det"] = "7".into();
    fs::write(&cert_path, doc.to_string()).unwrap();
    let out = cli(&["verify", cert_path.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("invalid at node 1"), "{}", out.stdout);
    let out = cli(&["--format", "json", "verify", cert_path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["failure"]["node"], 1);
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["h1"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
    let dir = TempDir::new().unwrap();
    let junk = dir.path().join("junk.cmg.json");
    fs::write(&junk, "{ not json").unwrap();
    let out = cli(&["validate", junk.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 1"), "{}", out.stderr);
    let out = cli(&["validate", dir.path().join("missing.cmg.json").to_str().unwrap()]);
    assert_eq!(out.code, 2);
}

#[test]
fn jobs_keep_input_order() {
    let dir = TempDir::new().unwrap();
    let mut paths = Vec::new();
    for k in 1..=12 {
        let g = ChainmailGraph::from_lists(&[(0, k)], &[]).unwrap();
        paths.push(put(dir.path(), &format!("g{k}.cmg.json"), &g));
    }
    let mut args = vec!["--jobs", "4", "h1"];
    args.extend(paths.iter().map(String::as_str));
    let parallel = cli(&args);
    let serial = cli(&[&["h1"][..], &paths.iter().map(String::as_str).collect::<Vec<_>>()].concat());
    assert_eq!(parallel.stdout, serial.stdout);
    let groups: Vec<&str> = parallel.stdout.lines().filter(|l| !l.starts_with("==")).collect();
    let expected: Vec<String> = (1..=12)
        .map(|k| if k == 1 { "0".to_string() } else { format!("Z/{k}") })
        .collect();
    assert_eq!(groups, expected);
}

#[test]
fn out_directory_and_random() {
    let dir = TempDir::new().unwrap();
    let gen = dir.path().join("gen");
    let out = cli(&["--out", gen.to_str().unwrap(), "random", "--seed", "5", "--count", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let mut files: Vec<PathBuf> = fs::read_dir(&gen).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    let names: Vec<String> = files
        .iter()
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    assert_eq!(
        names,
        [
            "theorem-alternating-5.cmg.json",
            "theorem-alternating-6.cmg.json",
            "theorem-alternating-7.cmg.json"
        ]
    );

    let pds = dir.path().join("pd");
    let mut args = vec!["--out", pds.to_str().unwrap(), "pd"];
    args.extend(files.iter().map(|p| p.to_str().unwrap()));
    let out = cli(&args);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(fs::read_dir(&pds).unwrap().count(), 3);
    for entry in fs::read_dir(&pds).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        assert!(chainmail::diagram::PdCode::parse(&text).is_ok());
        let out = cli(&["diagram", path.to_str().unwrap()]);
        assert_eq!(out.code, 0, "{}", out.stderr);
    }

    let single = cli(&["random", "--seed", "5", "--profile", "balanced"]);
    assert_eq!(single.code, 0);
    assert!(single.stdout.contains("\"format\": \"chainmail-graph\""));
    assert_eq!(cli(&["random", "--count", "2"]).code, 2);
}

#[test]
fn svg_and_augmented_commands() {
    let dir = TempDir::new().unwrap();
    let t = put(dir.path(), "t.cmg.json", &triangle());
    let out = cli(&["svg", &t]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("<svg") && out.stdout.trim_end().ends_with("</svg>"));

    let aug = dir.path().join("a.cmg.json");
    fs::write(
        &aug,
        r#"{"format":"chainmail-graph","version":1,
            "vertices":[{"id":"v0","weight":1},{"id":"v1","weight":1}],
            "edges":[{"id":"e1","ends":["v0","v1"],"weight":-1}],
            "augmented":{"e1":"-2"}}"#,
    )
    .unwrap();
    let a = aug.to_str().unwrap();
    let out = cli(&["sign-check", a]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("det -4"), "{}", out.stdout);
    let out = cli(&["det", a]);
    assert_eq!(out.stdout.trim(), "-4");
    let out = cli(&["certify-gen", a]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let out = cli(&["twist", "--edge", "e1", "--action", "rolfsen", a]);
    assert_eq!(out.code, 1);
    let out = cli(&["twist", "--edge", "e1", "--action", "erase", a]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(chainmail::io::parse_graph_file(&out.stdout).is_ok());
}

#[test]
fn binary_end_to_end() {
    let dir = TempDir::new().unwrap();
    let t = put(dir.path(), "t.cmg.json", &triangle());
    let out = Command::new(env!("CARGO_BIN_EXE_chainmail"))
        .args(["h1", &t])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "Z/3");
    let out = Command::new(env!("CARGO_BIN_EXE_chainmail"))
        .arg("nope")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
