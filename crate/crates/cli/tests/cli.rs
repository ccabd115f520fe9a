use std::path::PathBuf;
use std::process::{Command, Output};

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("sternct-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn sternct(args: &[&str], cache: &PathBuf) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sternct"))
        .args(args)
        .env("STERNCT_CACHE_DIR", cache)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim()
        .to_string()
}

#[test]
fn nu_values_and_cutoff() {
    let c = scratch("nu");
    assert_eq!(
        stdout(&sternct(&["nu", "--n", "3", "--method", "gf"], &c)),
        "59"
    );
    assert_eq!(stdout(&sternct(&["nu", "--n", "0"], &c)), "1");
    assert_eq!(
        stdout(&sternct(&["nu", "--n", "12", "--method", "definition"], &c)),
        stdout(&sternct(&["nu", "--n", "12"], &c))
    );
    assert_eq!(
        sternct(&["nu", "--n", "30", "--method", "definition"], &c)
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn omega_methods_agree() {
    let c = scratch("omega");
    assert_eq!(
        stdout(&sternct(
            &["omega", "--n", "20", "--method", "transfer"],
            &c
        )),
        "8011450183181"
    );
    assert_eq!(
        stdout(&sternct(
            &["omega", "--n", "0", "--method", "definition"],
            &c
        )),
        "1"
    );
    for n in ["7", "20"] {
        let outs: Vec<String> = ["definition", "transfer", "gf"]
            .iter()
            .map(|m| stdout(&sternct(&["omega", "--n", n, "--method", m, "--prune"], &c)))
            .collect();
        assert!(outs.iter().all(|o| o == &outs[0]), "{outs:?}");
    }
    let a = stdout(&sternct(
        &["omega", "--n", "150", "--method", "transfer"],
        &c,
    ));
    let b = stdout(&sternct(
        &["omega", "--n", "150", "--method", "gf", "--threads", "1"],
        &c,
    ));
    assert_eq!(a, b);
}

#[test]
fn omega_bounds_are_usage_errors() {
    let c = scratch("bounds");
    assert_eq!(
        sternct(&["omega", "--n", "27", "--method", "definition"], &c)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sternct(&["omega", "--n", "1", "--method", "gf"], &c)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sternct(&["omega", "--n", "5000", "--method", "transfer"], &c)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sternct(&["omega"], &c).status.code(), Some(2));
    assert_eq!(sternct(&["frobnicate"], &c).status.code(), Some(2));
}

#[test]
fn json_report_round_trips() {
    let c = scratch("json");
    let o = sternct(&["omega", "--n", "40", "--method", "gf", "--json"], &c);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let value = v["value"].as_str().unwrap();
    assert_eq!(v["target"], "omega");
    assert_eq!(v["n"], 40);
    assert_eq!(v["method"], "gf");
    assert_eq!(v["digits"].as_u64().unwrap() as usize, value.len());
    assert!(v["elapsed_ms"].is_u64());
    let parsed: num_bigint::BigInt = value.parse().unwrap();
    assert_eq!(
        parsed.to_string(),
        stdout(&sternct(
            &["omega", "--n", "40", "--method", "transfer"],
            &c
        ))
    );
}

#[test]
fn out_file_holds_value_and_newline() {
    let c = scratch("out");
    let f = c.join("w.txt");
    let o = sternct(&["omega", "--n", "30", "--out", f.to_str().unwrap()], &c);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let expected = format!("{}\n", stdout(&sternct(&["omega", "--n", "30"], &c)));
    assert_eq!(std::fs::read_to_string(&f).unwrap(), expected);
}

#[test]
fn cache_is_reused_and_flag_beats_env() {
    let env_dir = scratch("cache-env");
    let flag_dir = scratch("cache-flag");
    let run = |dir: &PathBuf| -> serde_json::Value {
        let o = sternct(
            &[
                "omega",
                "--n",
                "60",
                "--method",
                "gf",
                "--json",
                "--cache-dir",
                dir.to_str().unwrap(),
            ],
            &env_dir,
        );
        serde_json::from_str(&stdout(&o)).unwrap()
    };
    let first = run(&flag_dir);
    let second = run(&flag_dir);
    assert_eq!(first["cache_hits"], 0);
    assert_eq!(second["cache_hits"], 3);
    assert_eq!(first["value"], second["value"]);
    assert!(std::fs::read_dir(&env_dir).unwrap().next().is_none());
    let list = stdout(&sternct(
        &["cache", "list", "--cache-dir", flag_dir.to_str().unwrap()],
        &env_dir,
    ));
    assert!(list.contains("rec-u") && list.contains("coeff-table"));
    assert!(sternct(
        &["cache", "clear", "--cache-dir", flag_dir.to_str().unwrap()],
        &env_dir
    )
    .status
    .success());
    assert_eq!(
        stdout(&sternct(
            &["cache", "list", "--cache-dir", flag_dir.to_str().unwrap()],
            &env_dir
        )),
        ""
    );
}

#[test]
fn ualpha_values() {
    let c = scratch("ualpha");
    assert_eq!(
        stdout(&sternct(&["ualpha", "--alpha", "2", "--n", "2"], &c)),
        "13"
    );
    assert_eq!(
        stdout(&sternct(&["ualpha", "--alpha", "1", "--n", "1"], &c)),
        "3"
    );
    assert_eq!(
        sternct(&["ualpha", "--alpha", "2", "--n", "40"], &c)
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_suites() {
    let c = scratch("verify");
    let o = sternct(&["verify", "--max-n", "20", "--suites", "oracle"], &c);
    assert!(o.status.success());
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
    assert!(sternct(&["verify", "--max-n", "0"], &c).status.success());
    assert!(sternct(&["verify", "--suites", "series"], &c)
        .status
        .success());
}
