use std::process::{Command, Output};

fn mzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzv"))
        .args(args)
        .env_remove("MZV_WEIGHT")
        .env_remove("MZV_TOL")
        .env_remove("MZV_Z")
        .env_remove("MZV_FORMAT")
        .env_remove("MZV_BRANCH")
        .env_remove("MZV_TERMS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn shuffle_output() {
    let o = mzv(&["shuffle", "xy", "y"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2*xyy + yxy\n");
}

#[test]
fn reg_and_tau() {
    assert_eq!(stdout(&mzv(&["reg", "yx"])), "-xy\n");
    assert_eq!(stdout(&mzv(&["tau", "xyy"])), "xxy\n");
}

#[test]
fn zeta_of_index_matches_zeta_three() {
    let o = mzv(&["zeta", "2,1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("value=1.202056903"), "{out}");
    assert!(out.contains(" err="));
}

#[test]
fn csv_value_output() {
    let out = stdout(&mzv(&["zeta", "xy", "--format", "csv"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "re,im,err");
    let re: f64 = lines[1].split(',').next().unwrap().parse().unwrap();
    assert!((re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
}

#[test]
fn polylog_at_given_point() {
    let out = stdout(&mzv(&["li", "yx", "--z", "0.5"]));
    assert!(out.starts_with("value=-1.06269354"), "{out}");
}

#[test]
fn verify_duality_record() {
    let o = mzv(&["verify", "duality", "--weight", "6", "--tol", "1e-8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("check=duality weight=6 residual="), "{out}");
    assert!(out.trim_end().ends_with("pass=true"));
}

#[test]
fn failing_threshold_exits_one() {
    let o = mzv(&["verify", "duality", "--weight", "4", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("pass=false"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(mzv(&["shuffle", "xq", "y"]).status.code(), Some(2));
    assert_eq!(mzv(&["nonsense"]).status.code(), Some(2));
    assert_eq!(mzv(&["verify", "em2", "--z", "0.3+0.1i"]).status.code(), Some(2));
    assert_eq!(mzv(&["verify", "duality", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn environment_supplies_defaults_and_flags_win() {
    let from_env = Command::new(env!("CARGO_BIN_EXE_mzv"))
        .args(["verify", "sumformula"])
        .env("MZV_WEIGHT", "3")
        .output()
        .unwrap();
    assert_eq!(stdout(&from_env).lines().count(), 3);
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_mzv"))
        .args(["verify", "sumformula", "--weight", "4"])
        .env("MZV_WEIGHT", "3")
        .output()
        .unwrap();
    assert_eq!(stdout(&flag_wins).lines().count(), 6);
}

#[test]
fn csv_records() {
    let out = stdout(&mzv(&["verify", "hexagon", "--branch", "-", "--format", "csv"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "check,params,residual,tol,pass,extra");
    assert!(lines[1].starts_with("hexagon,weight=6;branch=-,"));
    assert_eq!(lines.len(), 2);
}

#[test]
fn verify_all_is_sorted_and_byte_stable() {
    let a = mzv(&["verify", "all", "--weight", "5"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = mzv(&["verify", "all", "--weight", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    let names: Vec<&str> = out
        .lines()
        .map(|l| l.split_whitespace().next().unwrap().trim_start_matches("check="))
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for check in ["c10", "duality", "em2", "euler", "goreg", "heart", "hexagon", "hurwitz", "kummer", "landen", "landen-lemma", "mellin", "sumformula"] {
        assert!(names.contains(&check), "missing {check}");
    }
}

#[test]
fn hurwitz_and_mellin_commands() {
    let out = stdout(&mzv(&["hurwitz", "2", "0.5"]));
    assert!(out.starts_with("value=4.934802200544"), "{out}");
    let out = stdout(&mzv(&["mellin", "2", "-1"]));
    assert!(out.starts_with("value=6.449340668482"), "{out}");
    let out = stdout(&mzv(&["mellin", "3", "0.5", "--quadrature"]));
    assert!(out.contains("quad_re=2.1065048152"), "{out}");
}

#[test]
fn phi_lists_coefficients() {
    let out = stdout(&mzv(&["phi", "--weight", "2"]));
    assert!(out.contains("word=XY re=1.644934066848"), "{out}");
    assert!(out.contains("word=YX re=-1.644934066848"));
}
