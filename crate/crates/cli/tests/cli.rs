use std::process::{Command, Output};

fn fqt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqt")).args(args).output().expect("run fqt")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> serde_json::Value {
    let s = String::from_utf8(o.stderr.clone()).unwrap();
    assert_eq!(s.trim_end().lines().count(), 1, "error must be one line: {s}");
    serde_json::from_str(s.trim()).unwrap()
}

#[test]
fn lpoly_golden() {
    let o = fqt(&["lpoly", "--q", "3", "--b", "t"]);
    assert!(o.status.success());
    let want = "{\n  \"b\": \"t\",\n  \"coefficients\": [\n    \"1\"\n  ],\n  \"command\": \"lpoly\",\n  \"q\": 3,\n  \"schema\": 1\n}\n";
    assert_eq!(stdout(&o), want);
}

#[test]
fn mass_enumerate_golden_tsv() {
    let o = fqt(&["mass", "--q", "3", "--D", "t", "--enumerate", "--format", "tsv"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "#schema\t1\nD\tD1\tformula\tderivation_form\tenumerated\th\tcheck\nt\tt\t1/8\t1/8\t1/8\t1\tPASS\n"
    );
}

#[test]
fn represent_matches_class_number() {
    let o = fqt(&["represent", "--q", "3", "--D", "t", "--a", "t+1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["check"], "PASS");
    assert_eq!(v["weighted_sum"], v["rhs"]);
    assert_eq!(v["minus_aD"], "2*t^2+2*t");
}

#[test]
fn classno_with_oracle() {
    let o = fqt(&["classno", "--q", "5", "--m", "t^3+t+1", "--oracle"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["h"], v["oracle"]);
}

#[test]
fn genus_methods_agree() {
    let a = fqt(&["genus", "--q", "3", "--D", "t^3+2*t+2", "--method", "neighbor"]);
    let b = fqt(&["genus", "--q", "3", "--D", "t^3+2*t+2", "--method", "exhaustive"]);
    let va: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let vb: serde_json::Value = serde_json::from_str(&stdout(&b)).unwrap();
    assert_eq!(va["h"], 4);
    assert_eq!(vb["h"], 4);
    assert_eq!(va["mass"], "13/8");
    assert_eq!(vb["mass"], "13/8");
}

#[test]
fn output_is_independent_of_threads() {
    let args = |n: &'static str| ["epstein", "--q", "3", "--D", "t^3+t", "--kmax", "7", "--twist", "psi", "--threads", n];
    let one = fqt(&args("1"));
    let two = fqt(&args("2"));
    assert!(one.status.success());
    assert_eq!(one.stdout, two.stdout);
    let v1 = fqt(&["verify", "--criterion", "12", "--seed", "5", "--format", "tsv"]);
    let v2 = fqt(&["verify", "--criterion", "12", "--seed", "5", "--format", "tsv", "--threads", "1"]);
    assert_eq!(v1.stdout, v2.stdout);
}

#[test]
fn verify_reports_each_criterion() {
    let o = fqt(&["verify", "--criterion", "9", "--format", "tsv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let row = out.lines().nth(2).unwrap();
    assert!(row.starts_with("9\tfinite-l-identity\tPASS\t"), "{row}");
}

#[test]
fn errors_have_distinct_codes() {
    let cases: [(&[&str], i32, &str); 5] = [
        (&["lpoly", "--bogus"], 2, "usage"),
        (&["lpoly", "--b", "t^^2"], 3, "parse"),
        (&["--q", "9", "lpoly", "--b", "t"], 4, "modulus"),
        (&["classno", "--m", "t^2"], 5, "precondition"),
        (&["mass", "--q", "3", "--D", "t^2+t", "--D1", "t^2+1"], 5, "precondition"),
    ];
    for (args, code, kind) in cases {
        let o = fqt(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}");
        let e = stderr_json(&o);
        assert_eq!(e["error"], kind);
        assert_eq!(e["schema"], 1);
    }
}
