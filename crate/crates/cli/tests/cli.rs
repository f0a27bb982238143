use std::path::Path;
use std::process::{Command, Output};

fn prabhakar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prabhakar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Numeric rows of a CSV stream, header and `#` lines dropped.
fn rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

fn key(text: &str, name: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{name}=")))
        .unwrap_or_else(|| panic!("no {name} in output"))
        .to_string()
}

fn ok(args: &[&str]) -> String {
    let out = prabhakar(args);
    assert!(out.status.success(), "{args:?}: {}", stderr(&out));
    stdout(&out)
}

#[test]
fn eval_function_is_the_exponential() {
    let text = ok(&["eval", "function", "--alpha", "1", "--beta", "1", "--gamma", "1", "--z", "1"]);
    assert!(text.starts_with("z,value\n"));
    let r = rows(&text);
    assert_eq!(r.len(), 1);
    assert!((r[0][1] - std::f64::consts::E).abs() < 1e-15);
}

#[test]
fn first_power_kernel_is_one() {
    let r = rows(&ok(&["eval", "kernel", "--gamma", "0", "--beta", "1", "--n", "16"]));
    assert_eq!(r.len(), 16);
    assert!(r.iter().all(|row| row[1] == 1.0));
}

#[test]
fn kernel_transform_at_worked_point() {
    // s = 1: 1^{-0.4} (1 + 1)^{-0.8}
    let r = rows(&ok(&[
        "eval", "kernel-hat", "--of", "derivative", "--alpha", "0.5", "--beta", "0.6", "--gamma", "-0.8",
        "--lambda", "-1", "--tmax", "1", "--n", "2",
    ]));
    let at_one = r.iter().find(|row| row[0] == 1.0).unwrap();
    assert!((at_one[1] - 2f64.powf(-0.8)).abs() < 1e-15);
}

#[test]
fn invalid_beta_exits_two_citing_condition() {
    let out = prabhakar(&["eval", "function", "--beta", "-1", "--z", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Re(β)>0"));
}

#[test]
fn integral_of_const_is_ramp() {
    let r = rows(&ok(&["operator", "integral", "--gamma", "0", "--beta", "1", "--f", "const", "--n", "32"]));
    for row in r {
        assert!((row[1] - row[0]).abs() < 1e-14);
        assert_eq!(row[2], 1.0);
    }
}

#[test]
fn caputo_derivative_of_const_vanishes() {
    let r = rows(&ok(&["operator", "derivative-caputo", "--f", "const", "--n", "32"]));
    assert_eq!(r[0][2], 0.0);
    assert!(r.iter().all(|row| row[1] == 0.0));
}

#[test]
fn derivative_undoes_integral_through_csv() {
    let dir = tempfile::tempdir().unwrap();
    let integral = dir.path().join("integral.csv");
    let common = ["--alpha", "0.7", "--beta", "0.4", "--gamma", "-0.5", "--lambda", "-1", "--n", "512"];
    let mut args = vec!["operator", "integral", "--f", "ramp", "--out", integral.to_str().unwrap()];
    args.extend(common);
    ok(&args);
    let mut args = vec!["operator", "derivative-caputo", "--input", integral.to_str().unwrap()];
    args.extend(common);
    let r = rows(&ok(&args));
    let worst = r
        .iter()
        .filter(|row| row[2] == 1.0)
        .map(|row| (row[1] - row[0]).abs())
        .fold(0.0, f64::max);
    assert!(worst <= 1e-3, "{worst}");
}

#[test]
fn integer_order_points_to_series_limit() {
    for kind in ["derivative-rl", "derivative-caputo"] {
        let out = prabhakar(&["operator", kind, "--beta", "1"]);
        assert_eq!(out.status.code(), Some(2));
        assert!(stderr(&out).contains("series-limit"));
    }
    ok(&["series-limit", "--beta", "1", "--f", "square", "--n", "64"]);
}

#[test]
fn classify_examples() {
    let base = ["classify", "--beta", "0.5", "--lambda", "-1"];
    let run = |gamma: &str, alpha: &str| {
        let mut args = base.to_vec();
        args.extend(["--gamma", gamma, "--alpha", alpha]);
        ok(&args)
    };
    assert_eq!(key(&run("-0.8", "0.5"), "gfc_compatible"), "true");
    assert_eq!(key(&run("0.8", "0.5"), "gfc_compatible"), "false");
    assert_eq!(key(&run("-0.1", "2.0"), "ineq2_cm_sufficient"), "false");
    assert_eq!(key(&ok(&["classify", "--lambda", "2"]), "limit_i"), "na");
}

#[test]
fn relaxation_without_gamma_is_mittag_leffler() {
    // E_{1/2}(-√t) at t = 0.5 and t = 1
    let r = rows(&ok(&[
        "relax", "--gamma", "0", "--beta", "0.5", "--xi", "1", "--tmax", "1", "--n", "4",
    ]));
    assert!((r[2][1] - 0.523_156_583_730_246_7).abs() < 1e-8);
    assert!((r[4][1] - 0.427_583_576_155_807).abs() < 1e-8);
    assert!(r.iter().all(|row| row[3] < 1e-6));
}

#[test]
fn relaxation_reports_verdicts() {
    let text = ok(&["relax", "--tmax", "2", "--n", "64"]);
    assert!(text.starts_with("t,y_series,y_laplace,abs_diff\n"));
    assert!(text.contains("# cm=passed"));
    assert!(text.contains("(required)"));
    let cross: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("# cross_residual="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(cross < 1e-6);
}

#[test]
fn relaxation_of_zero_is_zero() {
    let r = rows(&ok(&["relax", "--y0", "0", "--n", "8"]));
    assert!(r.iter().all(|row| row[1] == 0.0 && row[2] == 0.0));
    for (method, header) in [("series", "t,y_series\n"), ("laplace", "t,y_laplace\n")] {
        assert!(ok(&["relax", "--method", method, "--n", "8"]).starts_with(header));
    }
}

#[test]
fn relaxation_needs_positive_rate() {
    let out = prabhakar(&["relax", "--xi", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("ξ>0"));
}

#[test]
fn sonine_examples() {
    let gs = ok(&["sonine", "--gamma", "0", "--beta", "0.5", "--n", "512", "--tmax", "2"]);
    assert!(key(&gs, "time_residual").parse::<f64>().unwrap() <= 1e-3);
    let main = ok(&["sonine", "--n", "512", "--tmax", "2"]);
    assert!(key(&main, "time_residual").parse::<f64>().unwrap() <= 1e-3);
    assert!(key(&main, "laplace_residual").parse::<f64>().unwrap() <= 1e-12);
    let out = prabhakar(&["sonine", "--beta", "1.2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("0<β<1"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "# relaxation setup\nalpha=1\nbeta=1\ngamma=1\nlambda=0 # plain exponential\n").unwrap();
    let conf = conf.to_str().unwrap();
    let r = rows(&ok(&["eval", "function", "--config", conf, "--z", "2"]));
    assert!((r[0][1] - 2f64.exp()).abs() < 1e-14);
    // E_{2,1}(4) = cosh 2
    let r = rows(&ok(&["eval", "function", "--config", conf, "--alpha", "2", "--z", "4"]));
    assert!((r[0][1] - 2f64.cosh()).abs() < 1e-14);

    std::fs::write(dir.path().join("bad.conf"), "alpah=1\n").unwrap();
    let bad = dir.path().join("bad.conf");
    let out = prabhakar(&["classify", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_values_round_trip_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.csv");
    let out = prabhakar(&["eval", "kernel", "--n", "40", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let text = std::fs::read_to_string(Path::new(&path)).unwrap();
    for line in text.lines().skip(1) {
        for cell in line.split(',') {
            let v: f64 = cell.parse().unwrap();
            assert_eq!(format!("{v:.16e}"), cell);
        }
    }
}

#[test]
fn kochubei_derivative_of_const_vanishes() {
    let r = rows(&ok(&["operator", "kochubei-d", "--f", "const", "--n", "16"]));
    assert!(r.iter().all(|row| row[1] == 0.0));
    assert_eq!(prabhakar(&["operator", "kochubei-d", "--beta", "1.5"]).status.code(), Some(2));
}
