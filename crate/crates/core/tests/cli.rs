use std::process::{Command, Output};

use stratsum::cli::{EXIT_CHECK_FAILED, EXIT_HYPOTHESIS, EXIT_OK, EXIT_USAGE};

fn stratsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stratsum"))
        .args(args)
        .env_remove("STRATSUM_THREADS")
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn verify_conic_all_frequencies() {
    let o = stratsum(&["verify", "--poly", "x1^2+x2^2", "--nvars", "2", "--p", "3", "--h", "all", "--format", "json"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let v = json(&o);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 81);
    assert!(recs.iter().all(|r| r["equal_exact"] == true && r["pass"] == true));
    let text = String::from_utf8_lossy(&o.stdout);
    let in_order = |keys: &[&str]| {
        let pos: Vec<usize> = keys.iter().map(|k| text.find(&format!("\"{k}\":")).unwrap()).collect();
        pos.windows(2).all(|w| w[0] < w[1])
    };
    assert!(in_order(&["run", "poly", "nvars", "p", "kmax", "seed", "records"]));
    assert!(in_order(&["h", "h_mod_p", "S_re", "S_im", "S_abs", "equal_exact", "W_count", "bound", "j_min", "exponent", "pass"]));
}

#[test]
fn hypothesis_failures_exit_2() {
    let o = stratsum(&["verify", "--poly", "x1^3+x2^3+x3^3", "--nvars", "3", "--p", "3"]);
    assert_eq!(o.status.code(), Some(EXIT_HYPOTHESIS));
    let o = stratsum(&["verify", "--poly", "x1^2+x2^2", "--nvars", "2", "--p", "2"]);
    assert_eq!(o.status.code(), Some(EXIT_HYPOTHESIS));
    let o = stratsum(&["strata", "--poly", "x1^3+x2^3", "--nvars", "2", "--p", "5,7,3"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn malformed_poly_reports_position() {
    let o = stratsum(&["count", "--poly", "x1^2 + * x2", "--nvars", "2", "--p", "5"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    let o = stratsum(&["count", "--nvars", "2", "--p", "5"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn count_examples() {
    for (p, n1, n2) in [("5", 9, 65), ("3", 1, 9)] {
        let o = stratsum(&["count", "--poly", "x1^2+x2^2", "--nvars", "2", "--p", p, "--format", "json"]);
        assert_eq!(o.status.code(), Some(EXIT_OK));
        let c = &json(&o)["counts"];
        assert_eq!(c["n1"], n1);
        assert_eq!(c["n2_enumerated"], n2);
        assert_eq!(c["n2_formula"], n2);
        assert_eq!(c["agree"], true);
    }
}

#[test]
fn count_without_hypotheses_suppresses_formula() {
    let o = stratsum(&["count", "--poly", "x1^2+x2^2", "--nvars", "2", "--p", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(EXIT_HYPOTHESIS));
    let c = &json(&o)["counts"];
    assert!(c["n2_formula"].is_null());
    assert!(c["hypothesis_violation"].is_string());
}

#[test]
fn strata_single_prime_has_no_ratio_table() {
    let o = stratsum(&["strata", "--poly", "x1^2+x2^2", "--nvars", "2", "--p", "7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let v = json(&o);
    assert!(v["codim"].is_null());
    assert_eq!(v["tables"][0]["sizes"], serde_json::json!([49, 1, 0]));
    assert_eq!(v["tables"][0]["membership"], "estimated");
}

#[test]
fn strata_fermat_series() {
    let o = stratsum(&["strata", "--poly", "x1^3+x2^3+x3^3", "--nvars", "3", "--p", "5,7", "--kmax", "2"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("codimension ratios"));
}

#[test]
fn strata_conic_series_fails_on_split_prime() {
    // -1 is a square mod 5, so x1^2+x2^2 factors and G_1 picks up the isotropic lines
    let o = stratsum(&["strata", "--poly", "x1^2+x2^2", "--nvars", "2", "--p", "3,7,11", "--format", "json"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let o = stratsum(&["strata", "--poly", "x1^2+x2^2", "--nvars", "2", "--p", "3,5,7,11", "--format", "json"]);
    assert_eq!(o.status.code(), Some(EXIT_CHECK_FAILED));
    let sizes: Vec<u64> = json(&o)["tables"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["sizes"][1].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, [1, 9, 1, 1]);
}

#[test]
fn csv_mirrors_json() {
    let base = ["verify", "--poly", "x1^3+x2^3", "--nvars", "2", "--p", "5", "--h", "1,2;0,0;3,4"];
    let j = json(&stratsum(&[&base[..], &["--format", "json"]].concat()));
    let c = stratsum(&[&base[..], &["--format", "csv"]].concat());
    let text = String::from_utf8(c.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "h,h_mod_p,S_re,S_im,S_abs,equal_exact,W_count,bound,j_min,exponent,pass");
    let recs = j["records"].as_array().unwrap();
    assert_eq!(rows.len(), recs.len() + 1);
    for (row, rec) in rows[1..].iter().zip(recs) {
        let cols: Vec<&str> = row.split(',').collect();
        let h: Vec<String> = rec["h"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(cols[0], h.join(";"));
        assert_eq!(cols[6], rec["W_count"].to_string());
        let s_abs: f64 = cols[4].parse().unwrap();
        assert_eq!(s_abs, rec["S_abs"].as_f64().unwrap());
    }
}

#[test]
fn output_independent_of_threads_and_env() {
    let args = ["verify", "--poly", "x1^4+x2^4", "--nvars", "2", "--p", "5", "--h", "all", "--format", "json"];
    let one = stratsum(&[&args[..], &["--threads", "1"]].concat());
    let many = stratsum(&[&args[..], &["--threads", "8"]].concat());
    assert_eq!(one.stdout, many.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_stratsum"))
        .args(args)
        .env("STRATSUM_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(one.stdout, env.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_stratsum"))
        .args(args)
        .env("STRATSUM_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

#[test]
fn seeded_sampling_is_reproducible() {
    let args = ["verify", "--poly", "x1^3+x2^3+x3^3", "--nvars", "3", "--p", "5", "--h", "random:40", "--seed", "17", "--format", "csv"];
    let a = stratsum(&args);
    let b = stratsum(&args);
    assert_eq!(a.status.code(), Some(EXIT_OK));
    assert_eq!(a.stdout, b.stdout);
    let o = stratsum(&args[..args.len() - 4]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("stratsum_out_{}.json", std::process::id()));
    let o = stratsum(&["corpus", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v.as_array().unwrap().len() >= 6);
    let _ = std::fs::remove_file(path);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(stratsum(&["--help"]).status.code(), Some(EXIT_OK));
    assert_eq!(stratsum(&["--version"]).status.code(), Some(EXIT_OK));
    assert_eq!(stratsum(&["verify", "--bogus"]).status.code(), Some(EXIT_USAGE));
}
