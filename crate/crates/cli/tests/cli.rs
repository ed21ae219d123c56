use std::path::PathBuf;
use std::process::{Command, Output};

fn profile(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../profiles").join(name)
}

fn contingent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contingent")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Value in the second column of the first line starting with `key`.
fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(key).map(|rest| rest.split_whitespace().next().unwrap_or("").to_string()))
        .unwrap_or_else(|| panic!("no {key:?} line in\n{text}"))
}

#[test]
fn run_csp_on_example3() {
    let p = profile("example3.json");
    let text = stdout(&contingent(&["run", "--mechanism", "csp", "--profile", p.to_str().unwrap()]));
    assert_eq!(field(&text, "winner"), "2");
    assert_eq!(field(&text, "penalty"), "30");
    assert_eq!(field(&text, "upfront"), "0");
    assert_eq!(field(&text, "utilization"), "0.8");
}

#[test]
fn run_gcsp_on_example5() {
    let p = profile("example5.json");
    let text = stdout(&contingent(&["run", "--mechanism", "gcsp", "--profile", p.to_str().unwrap()]));
    let prices: Vec<&str> = text.lines().skip_while(|l| !l.starts_with("resource")).skip(1).take(2).collect();
    assert_eq!(prices, ["a         30", "b         0"]);
    assert_eq!(field(&text, "total utilization"), "1.6");
}

#[test]
fn invalid_profile_exits_2_naming_the_assumption() {
    let p = profile("invalid_A3.json");
    let out = contingent(&["run", "--mechanism", "csp", "--profile", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("A3"));
    let out = contingent(&["validate", "--profile", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_configuration_exits_2() {
    let p = profile("example3.json");
    let out = contingent(&["run", "--mechanism", "spc", "--profile", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let p = profile("example5.json");
    let out = contingent(&["run", "--mechanism", "csp", "--profile", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = contingent(&["sweep", "--family", "exp", "--n", "0", "--mechs", "csp", "--quick"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scale_limit_exits_3() {
    let out = contingent(&["run", "--family", "wp", "--n", "2", "--m", "9", "--mechanism", "gcsp"]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn emitted_profile_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sampled.json");
    let path = path.to_str().unwrap();
    let sampled = stdout(&contingent(&[
        "run", "--family", "exp", "--n", "6", "--seed", "17", "--mechanism", "csp", "--emit-profile", path,
    ]));
    let reloaded = stdout(&contingent(&["run", "--profile", path, "--seed", "17", "--mechanism", "csp"]));
    assert_eq!(sampled, reloaded);
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text.matches("\"exponential\"").count(), 6);
}

#[test]
fn sweep_csv_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let path = dir.path().join(name);
        stdout(&contingent(&[
            "--threads", threads, "sweep", "--family", "uniform", "--n", "2,5", "--mechs", "sp,csp,gamma:0.5,cspr:0.1",
            "--profiles", "64", "--seed", "9", "--output", path.to_str().unwrap(),
        ]));
        std::fs::read_to_string(path).unwrap()
    };
    let one = run("1", "a.csv");
    assert_eq!(one, run("4", "b.csv"));
    let mut lines = one.lines();
    assert_eq!(
        lines.next(),
        Some("profile_id,seed,mechanism,param_name,param_value,n_agents,n_resources,winner,utilization,revenue,runtime_ns")
    );
    assert_eq!(lines.count(), 2 * 64 * 4);
}

#[test]
fn compare_reports_fractions() {
    let text = stdout(&contingent(&["compare", "--family", "exp", "--m", "3", "--n", "2", "--a", "gcsp", "--b", "vcg", "--quick"]));
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("n_agents,n_resources,mechanism_a,mechanism_b,profiles,frac_a_strict"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..5], ["2", "3", "gcsp", "vcg:0", "500"]);
    let frac_b: f64 = row[6].parse().unwrap();
    assert!(frac_b < 0.05, "{frac_b}");

    let text = stdout(&contingent(&["compare", "--family", "wp", "--n", "3", "--a", "csp", "--b", "csp", "--quick"]));
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!((row[5], row[6]), ("0", "0"));
}

#[test]
fn reserve_table_hits_the_uniform_endpoint() {
    let text = stdout(&contingent(&["reserve", "--family", "uniform", "--r", "0..0.5", "--points", "3", "--quick"]));
    let last = text.lines().last().unwrap();
    let cols: Vec<&str> = last.split_whitespace().collect();
    assert_eq!((cols[0], cols[1]), ("0.5", "-0.25"));
    let z: f64 = cols.last().unwrap().parse().unwrap();
    assert!(z.abs() <= 3.0, "{last}");
}
