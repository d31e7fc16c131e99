use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hnstrata"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hn_types_rows() {
    let o = run(&["hn-types", "--class", "2,0", "--min-slope", "-1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 6);
    let o = run(&[
        "hn-types",
        "--class",
        "1,0",
        "--min-slope",
        "0",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["types"].as_array().unwrap().len(), 1);
    let o = run(&[
        "hn-types",
        "--class",
        "2,0",
        "--min-slope",
        "-1",
        "--vec-only",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn output_is_byte_stable() {
    let args = [
        "hn-types",
        "--class",
        "3,1",
        "--min-slope",
        "-2",
        "--format",
        "json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn volss_values() {
    let p1 = data("p1.toml");
    let p1 = p1.to_str().unwrap();
    let get = |class: &str, zeta: &str| -> serde_json::Value {
        let o = run(&["volss", "--zeta", zeta, "--class", class]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        serde_json::from_str(&stdout(&o)).unwrap()
    };
    assert_eq!(get("2,0", p1)["value"], "1/6");
    assert_eq!(get("2,1", p1)["value"], "0");
    // P(1)/(q-1) for rank one
    assert_eq!(get("1,7", data("elliptic.toml").to_str().unwrap())["value"], "2");
    assert_eq!(get("1,-3", data("genus2.toml").to_str().unwrap())["value"], "4");

    let o = run(&[
        "volss", "--zeta", p1, "--class", "2,0", "--mode", "trunc:20", "--format", "csv",
    ]);
    let body = stdout(&o);
    let row: Vec<&str> = body.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[row.len() - 4], "trunc:20");
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(
        run(&["hn-types", "--class", "2", "--min-slope", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["volss", "--zeta", "/nonexistent.toml", "--class", "2,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "volss",
            "--zeta",
            data("p1.toml").to_str().unwrap(),
            "--class",
            "-1,0"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn peel_certificate() {
    let dir = std::env::temp_dir().join(format!("hnstrata-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let noise = dir.join("noise.json");
    std::fs::write(
        &noise,
        r#"{"schema":1,"weight":[2,0],"level":-20,"terms":[
            {"parts":[[1,-9],[1,9]],"coeff":{"0":[1,1]}},
            {"parts":[[1,-10],[1,10]],"coeff":{"-2":[3,2]}}]}"#,
    )
    .unwrap();
    let o = run(&[
        "peel",
        "--genus",
        "2",
        "--target",
        "2,0",
        "--noise",
        noise.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let steps = v["steps"].as_array().unwrap();
    assert!(!steps.is_empty() && steps.len() <= 2);
    assert_eq!(v["terminal"]["terms"].as_array().unwrap().len(), 1);

    std::fs::write(
        &noise,
        r#"{"schema":1,"weight":[2,0],"level":-2,"terms":[{"parts":[[1,-1],[1,1]],"coeff":{"0":[1,1]}}]}"#,
    )
    .unwrap();
    let o = run(&[
        "peel",
        "--genus",
        "2",
        "--target",
        "2,0",
        "--noise",
        noise.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "p1", "--q", "2", "--window", "-6"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().last().unwrap().starts_with("PASS"));
    let o = run(&["verify", "quiver", "--file", data("k2.toml").to_str().unwrap()]);
    assert!(o.status.success());
    let o = run(&[
        "verify",
        "quiver",
        "--file",
        data("a2.toml").to_str().unwrap(),
        "--q",
        "3",
    ]);
    assert!(o.status.success());
    let o = run(&[
        "verify",
        "inversion",
        "--zeta",
        data("p1.toml").to_str().unwrap(),
        "--class",
        "2,0",
    ]);
    assert!(o.status.success());
    let o = run(&[
        "verify",
        "inversion",
        "--zeta",
        data("elliptic.toml").to_str().unwrap(),
        "--class",
        "2,1",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = run(&["verify", "quiver", "--q", "4"]);
    assert_eq!(o.status.code(), Some(2));
}
