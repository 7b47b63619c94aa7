use std::process::{Command, Output};

use apery_forge::numeric::{parse_rational, rat};
use apery_forge::recurrence::make_spec;
use apery_forge::zeta::{AlphaParam, ZFamily};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apery-forge"))
        .args(args)
        .env_remove("APERY_FORGE_PRECISION")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("json output");
    assert_eq!(v["schema"], "apery-forge/1");
    v
}

fn column(v: &Value, key: &str) -> Vec<String> {
    v["rows"].as_array().unwrap().iter().map(|r| r[key].as_str().unwrap().to_string()).collect()
}

#[test]
fn gen_apery_numbers() {
    let v = json(&["gen", "--family", "z2minus", "--alpha", "0", "--terms", "4"]);
    assert_eq!(column(&v, "u"), ["1", "3", "19", "147", "1251"]);
    assert_eq!(v["command"], "gen");
}

#[test]
fn gen_first_row_of_log_two() {
    let v = json(&["gen", "--family", "z1minus", "--alpha", "0", "--terms", "1"]);
    let row = &v["rows"][1];
    assert_eq!((row["n"].as_u64(), row["u"].as_str(), row["v"].as_str()), (Some(1), Some("3"), Some("2")));
}

#[test]
fn bad_parameters_exit_2() {
    for args in [
        &["gen", "--family", "z2minus", "--alpha", "1", "--terms", "5"][..],
        &["gen", "--family", "z9", "--terms", "5"],
        &["gen", "--family", "z2", "--alpha", "3/2"],
        &["gen", "--family", "z2", "--terms", "0"],
        &["verify", "--family", "z3", "--tol", "-1", "integral"],
        &["verify", "--family", "z3", "everything"],
        &["integrality", "--family", "z3", "--alpha", "1/2+1i"],
        &["gen", "--family", "z3", "--bogus"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn gen_round_trip_has_zero_residuals() {
    for (fam, alpha) in [("z3", "-2/5"), ("z4", "1/3"), ("z1minus", "0")] {
        let v = json(&["gen", "--family", fam, "--alpha", alpha, "--terms", "9"]);
        let family: ZFamily = fam.parse().unwrap();
        let spec = make_spec(family, &AlphaParam::parse(alpha).unwrap()).unwrap();
        for key in ["u", "v"] {
            let xs: Vec<_> = column(&v, key).iter().map(|s| parse_rational(s).unwrap()).collect();
            for n in 1..xs.len() - 1 {
                assert_eq!(spec.residual(&xs[n - 1], &xs[n], &xs[n + 1], n), rat(0, 1), "{fam} {key} n={n}");
            }
        }
    }
}

#[test]
fn constants() {
    let v = json(&["constant", "--family", "z2minus", "--alpha", "1/2", "--digits", "15"]);
    assert_eq!(v["value"], "7.327724753417752");
    assert_eq!(v["agrees"], true);
    let v = json(&["constant", "--family", "z3", "--alpha", "0", "--digits", "15"]);
    assert_eq!(v["value"], "1.202056903159594");
    // 6 ζ(4) = π⁴/15
    let v = json(&["constant", "--family", "z4", "--alpha", "0", "--digits", "10"]);
    let want = std::f64::consts::PI.powi(4) / 15.0;
    let got: f64 = v["value"].as_str().unwrap().parse().unwrap();
    assert!((got - want).abs() < 1e-10, "{got}");
    assert_eq!(v["value"], "6.4939394023");
}

#[test]
fn complex_alpha() {
    let v = json(&["constant", "--family", "z2", "--alpha", "-1/2+1i", "--digits", "12"]);
    assert!(v["oracle_diff"].as_f64().unwrap() < 1e-12);
    let v = json(&["gen", "--family", "z3", "--alpha", "1/2+1/3i", "--terms", "3"]);
    assert_eq!(v["exact"], false);
    assert!(column(&v, "u")[1].ends_with('i'));
}

#[test]
fn verify_examples() {
    let v = json(&["verify", "--family", "z2minus", "--alpha", "2/7", "--terms", "8", "all"]);
    assert_eq!(v["pass"], true);
    let names: Vec<_> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for want in ["transcription", "construction-vs-recurrence", "residuals", "reflection", "integral n=8"] {
        assert!(names.contains(&want), "{want}");
    }
    let v = json(&["verify", "--family", "z4", "--alpha", "0", "--terms", "1", "integral", "--tol", "5e-3"]);
    assert_eq!(v["pass"], true);
}

#[test]
fn corrupted_table_exits_1() {
    let out = run(&["verify", "--family", "z3", "--alpha", "0", "--terms", "8", "construction", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("construction-vs-recurrence"), "{err}");
}

#[test]
fn fault_flag_is_hidden() {
    let out = run(&["verify", "--help"]);
    assert!(out.status.success());
    assert!(!String::from_utf8_lossy(&out.stdout).contains("inject"));
}

#[test]
fn deterministic_output() {
    let args = ["verify", "--family", "z4", "--alpha", "0", "--terms", "1", "integral", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "--family", "z4", "--alpha", "0", "--terms", "1", "integral", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn asymptotics_match_char_roots() {
    let cases = [("z2minus", ((11.0 + 5.0 * 5f64.sqrt()) / 2.0).ln()), ("z3", (17.0 + 12.0 * 2f64.sqrt()).ln()), ("z1minus", (3.0 + 2.0 * 2f64.sqrt()).ln())];
    for (fam, want) in cases {
        let v = json(&["asymptotics", "--family", fam, "--terms", "200", "--stride", "50"]);
        assert!((v["predicted_log_u"].as_f64().unwrap() - want).abs() < 1e-9);
        let last = v["rows"].as_array().unwrap().last().unwrap();
        assert_eq!(last["n"], 200);
        let emp = last["log_u"].as_f64().unwrap();
        assert!((emp - want).abs() / want < 0.02, "{fam}: {emp} vs {want}");
    }
}

#[test]
fn integrality_reports() {
    for fam in ["z2minus", "z3"] {
        let v = json(&["integrality", "--family", fam, "--alpha", "0", "--terms", "50"]);
        assert_eq!(v["all_integral"], true);
        assert_eq!(v["stable_a"], "1");
        assert!(column(&v, "denominator").iter().all(|d| d == "1"));
    }
    let v = json(&["integrality", "--family", "z2minus", "--alpha", "1/2", "--terms", "30"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 31);
}

#[test]
fn csv_and_table() {
    let out = run(&["gen", "--family", "z3", "--terms", "2", "--format", "csv", "--digits", "5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("n,u,v,ratio"));
    assert_eq!(text.lines().nth(2), Some("1,5,6,1.20000"));
    let out = run(&["verify", "--family", "z2", "--terms", "3", "symmetry", "--format", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("check"));
    assert!(text.contains("vanishing-sums"));
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_apery-forge"))
        .args(["gen", "--family", "z3", "--terms", "1", "--format", "csv"])
        .env("APERY_FORGE_PRECISION", "12")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(2), Some("1,5,6,1.200000000000"));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("apery-forge-out-{}.json", std::process::id()));
    let out = run(&["gen", "--family", "z2", "--terms", "2", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(column(&v, "u"), ["1", "3", "19"]);
    std::fs::remove_file(path).ok();
}
