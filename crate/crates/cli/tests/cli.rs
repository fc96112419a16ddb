use std::path::PathBuf;
use std::process::{Command, Output};

use zf_cli::report::Report;
use zf_cli::run::{builtin, certificate_holds, run_checks, Options};
use zf_core::algebra::{parse_mpoly, MPoly};
use zf_core::catalog;
use zf_core::conic::{transversal, ConicCurve};
use zf_core::quartic::PlaneCurve;

fn zf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zf")).args(args).env_remove("ZF_JOBS").output().expect("zf runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn form(text: &str) -> MPoly<3> {
    parse_mpoly(text, &["T", "X", "Z"]).unwrap()
}

#[test]
fn verify_gram_on_the_tacnodal_quartic() {
    let o = zf(&["verify-gram", "--builtin", "tacnodal-shioda-usui"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("det = 1/8 (expected 1/8)"), "{out}");
    assert!(out.contains("s1  0    3/4   -1/4  -1/4"), "{out}");
    assert!(out.contains("PASS verify-gram"), "{out}");
}

#[test]
fn wrong_expected_determinant_fails_with_exit_1() {
    let mut s = builtin("tacnodal-shioda-usui").unwrap().to_string();
    s = s.replace("expect det 1/8", "expect det 1/4");
    let p = scratch("wrong-det.zfs", &s);
    let o = zf(&["verify-gram", "--scenario", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL verify-gram  det = 1/8, expected 1/4"), "{}", stdout(&o));
}

#[test]
fn perturbed_conic_is_diagnosed() {
    let five = builtin("five-plet").unwrap();
    let report = run_checks(&five, &["construct-conics".into()], &Options::default()).unwrap();
    let c1 = &report.conics[0].equation;
    let src = format!(
        "scenario perturbed\nquartic builtin two-nodal-shioda-usui\nconic P = equation {c1} + Z^2\nconic Q = equation {c1}\n"
    );
    let p = scratch("perturbed.zfs", &src);
    let o = zf(&["verify-contact", "--scenario", p.to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{out}");
    assert!(out.contains("FAIL verify-contact  P: conic meets the quartic with odd multiplicity"), "{out}");
    assert!(out.contains("Q     -       4 tangencies"), "{out}");
}

#[test]
fn scenario_errors_exit_2_with_position() {
    let p = scratch("typo.zfs", "quartic builtin two-nodal-shioda-usui\nline s0 = X : +\nconic C = C(t, [2]s9)\n");
    let o = zf(&["verify-gram", "--scenario", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3, column 16: unknown basis symbol 's9'"), "{err}");

    let o = zf(&["verify-gram", "--builtin", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let o = zf(&["verify-gram"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_rational_singularities_exit_3() {
    let p = scratch("irrational.zfs", "quartic X^3*Z + T^4 - 4*T^2*Z^2 + 4*Z^4\n");
    let o = zf(&["verify-gram", "--scenario", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported configuration"));
}

#[test]
fn empty_conic_list_limits_checks_to_the_lattice() {
    let p = scratch("bare.zfs", "quartic builtin tacnodal-shioda-usui\n");
    let o = zf(&["run", "--scenario", p.to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("PASS verify-gram  0x0 Gram matrix, det = 1"), "{out}");
    let o = zf(&["verify-contact", "--scenario", p.to_str().unwrap()]);
    assert!(stdout(&o).contains("no conics declared"));
}

#[test]
fn two_nodal_sweep_reproduces_the_first_two_conics() {
    let s = builtin("two-nodal-shioda-usui").unwrap();
    let report = run_checks(&s, &["sweep".into()], &Options::default()).unwrap();
    let sweep = &report.sweeps[0];
    assert_eq!(sweep.grid, vec!["0/1", "1/1"]);
    assert!(sweep.entries.iter().all(|e| e.accepted));

    let shown = [
        "174531500609375/20736*Z^2 - 164065639375/10368*T*Z + 86856575/20736*T^2 - 33930625/144*X*Z + 5825/72*T*X - X^2",
        "173813141567975/20736*Z^2 - 163641780439/10368*T*Z + 86747399/20736*T^2 - 33930481/144*X*Z + 5813/72*T*X - X^2",
    ];
    for (entry, text) in sweep.entries.iter().zip(shown) {
        let got = PlaneCurve::new(form(entry.equation.as_ref().unwrap())).unwrap();
        let want = PlaneCurve::new(form(text)).unwrap();
        assert!(got.equal_up_to_scalar(&want), "{got}");
        assert_eq!(certificate_holds(entry.certificate.as_ref().unwrap()), Ok(true));
    }
}

#[test]
fn tacnodal_sweep_finds_a_compatible_pair() {
    let s = builtin("tacnodal-shioda-usui").unwrap();
    let opts = Options { param_grid: Some("-1..1".into()), ..Options::default() };
    let report = run_checks(&s, &["sweep".into()], &opts).unwrap();
    let accepted: Vec<ConicCurve> = report.sweeps[0]
        .entries
        .iter()
        .filter(|e| e.accepted)
        .map(|e| ConicCurve::new(PlaneCurve::new(form(e.equation.as_ref().unwrap())).unwrap()).unwrap())
        .collect();
    assert!(accepted.len() >= 2, "{:?}", report.sweeps[0].entries);
    assert!(transversal(&accepted[0], &accepted[1]).unwrap());
}

#[test]
fn sweep_rejects_members_that_meet_earlier_ones_badly() {
    // the same value twice: the second copy coincides with the first
    let s = builtin("tacnodal-shioda-usui").unwrap();
    let opts = Options { param_grid: Some("0, 0".into()), ..Options::default() };
    let report = run_checks(&s, &["sweep".into()], &opts).unwrap();
    let e = &report.sweeps[0].entries;
    assert!(e[0].accepted);
    assert!(!e[1].accepted);
    assert!(e[1].reason.as_ref().unwrap().contains("member at 0"), "{:?}", e[1].reason);
}

#[test]
fn empty_grid_gives_an_empty_sweep() {
    let o = zf(&["sweep", "--builtin", "tacnodal-shioda-usui", "--param-grid", "", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert!(r.sweeps[0].entries.is_empty());
    assert!(r.passed);
}

#[test]
fn negative_grid_bounds_are_not_flags() {
    let o = zf(&["sweep", "--builtin", "tacnodal-shioda-usui", "--param-grid", "-1..0", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.sweeps[0].grid, vec!["-1/1", "0/1"]);
}

#[test]
fn nplet_report_prints_the_invariant_table() {
    let o = zf(&["nplet-report", "--builtin", "five-plet"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    for row in ["(0,4)  B1      -       B3", "(1,3)  -       -       B4", "(2,2)  -       B2      B5"] {
        assert!(out.contains(row), "{row}\n{out}");
    }
    assert!(out.contains("phi1 counts (2,1,0,0,0)"));
}

#[test]
fn reports_are_deterministic_and_recheckable() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let a = dir.join("det-a.json");
    let b = dir.join("det-b.json");
    assert_eq!(zf(&["run", "--builtin", "two-nodal-shioda-usui", "--json", a.to_str().unwrap(), "--jobs", "1"]).status.code(), Some(0));
    assert_eq!(zf(&["run", "--builtin", "two-nodal-shioda-usui", "--json", b.to_str().unwrap(), "--jobs", "4"]).status.code(), Some(0));
    let ra = Report::from_json(&std::fs::read_to_string(&a).unwrap()).unwrap();
    let rb = Report::from_json(&std::fs::read_to_string(&b).unwrap()).unwrap();
    assert_eq!(ra.without_timestamp(), rb.without_timestamp());
    assert_eq!(ra.without_timestamp().to_json(), rb.without_timestamp().to_json());
    assert!(ra.to_json().contains("\"det\": \"1/8\""));

    let o = zf(&["recheck", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let tampered = std::fs::read_to_string(&a).unwrap().replace("\"det\": \"1/8\"", "\"det\": \"1/4\"");
    let t = scratch("tampered.json", &tampered);
    let o = zf(&["recheck", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));

    let renamed = std::fs::read_to_string(&a).unwrap().replace("line s0 = X", "line s0 = -X");
    let t = scratch("renamed.json", &renamed);
    assert_eq!(zf(&["recheck", t.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn zf_jobs_must_be_numeric() {
    let o = Command::new(env!("CARGO_BIN_EXE_zf"))
        .args(["verify-gram", "--builtin", "tacnodal-shioda-usui"])
        .env("ZF_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_zf"))
        .args(["verify-gram", "--builtin", "tacnodal-shioda-usui"])
        .env("ZF_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn builtin_scenarios_agree_with_the_catalog_gram_matrices() {
    for (name, gram) in [("two-nodal-shioda-usui", catalog::two_nodal_gram()), ("tacnodal-shioda-usui", catalog::tacnodal_gram())] {
        let r = run_checks(&builtin(name).unwrap(), &["verify-gram".into()], &Options::default()).unwrap();
        let shown: Vec<Vec<String>> = gram.iter().map(|row| row.iter().map(zf_cli::report::q).collect()).collect();
        assert_eq!(r.lattice.unwrap().gram, shown, "{name}");
    }
}
