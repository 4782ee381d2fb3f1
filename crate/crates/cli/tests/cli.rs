//! Golden-file tests for the command-line frontend: identical invocations
//! must produce byte-identical output, the documented text formats must
//! round-trip, and exit codes must follow the contract (0 ok, 1 diff,
//! 2 usage, 3 computation error).

use std::io::Write;
use std::process::{Command, Output};

fn morava(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_morava"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = morava(args);
    assert!(
        out.status.success(),
        "`morava {}` failed: {}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8")
}

#[test]
fn pseries_golden() {
    assert_eq!(
        stdout(&["pseries", "--p", "2", "--bound", "8"]),
        "2*y + v1*y^2 + v2*y^4 + v3*y^8\n"
    );
    assert_eq!(
        stdout(&["pseries", "--p", "3"]),
        "3*y + v1*y^3 + v2*y^9 + v3*y^27\n"
    );
    assert_eq!(
        stdout(&["pseries", "--p", "2", "--theory", "K1", "--honda", "1", "--bound", "4"]),
        "v1*y^2\n"
    );
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["check", "--example", "m2"];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(a, b);
    assert!(!a.is_empty());
}

#[test]
fn ring_reports_rank_and_normal_forms() {
    let out = stdout(&["ring", "--theory", "K(2)@p=2", "--bound", "8"]);
    assert!(out.contains("relation y^4"));
    assert!(out.contains("free module of rank 4"));
    let out = stdout(&[
        "ring", "--theory", "P1", "--p", "2", "--bound", "8", "--reduce", "v1*y^2",
    ]);
    assert!(out.contains("normal form v2*y^4 + v3*y^8"), "{}", out);
    assert!(out.contains("injective: true"));
    let out = stdout(&[
        "ring", "--theory", "BP", "--p", "2", "--bound", "8", "--reduce", "2*y",
    ]);
    assert!(
        out.contains("normal form -v1*y^2 - v2*y^4 - v3*y^8"),
        "{}",
        out
    );
}

#[test]
fn quotient_and_tensor_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("omega.pres");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "presentation BP@p=2").unwrap();
    writeln!(f, "summand 1 deg (0,0) ann []").unwrap();
    writeln!(f, "summand y6 deg (6,0) ann [p,v1]").unwrap();
    drop(f);
    let p = path.to_str().unwrap();

    let q = stdout(&["quotient", "--in", p, "--ideal", "I1"]);
    assert_eq!(
        q,
        "presentation P(1)@p=2\nsummand 1 deg (0,0) ann []\nsummand y6 deg (6,0) ann [p,v1]\n"
    );
    let k1 = stdout(&["tensor", "--in", p, "--theory", "K1"]);
    assert_eq!(k1, "presentation K(1)@p=2\nsummand 1 deg (0,0) ann []\n");
    let k2 = stdout(&["tensor", "--in", p, "--theory", "K2"]);
    assert_eq!(
        k2,
        "presentation K(2)@p=2\nsummand 1 deg (0,0) ann []\nsummand y6 deg (6,0) ann []\n"
    );

    // the printed output is itself a valid input: round-trip through a file
    let path2 = dir.path().join("k2.pres");
    std::fs::write(&path2, &k2).unwrap();
    let again = stdout(&["tensor", "--in", path2.to_str().unwrap(), "--theory", "K2"]);
    assert_eq!(again, k2);
}

#[test]
fn ahss_pipeline_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("so7.alg");
    std::fs::write(
        &path,
        "algebra so7\n[base]\nfield Z/2[t]\nsmooth true\ndimension 21\n\
         [generators]\nx3 (3,2) odd\nx5 (5,3) odd\ny6 (6,3) even\n\
         [relations]\nx3^2 = y6 t\ny6^2 = 0\n\
         [qtable]\nQ0(x3) = 0\nQ0(x5) = y6\nQ0(y6) = 0\nQ1(x3) = y6\nQ1(x5) = 0\nQ1(y6) = 0\n",
    )
    .unwrap();
    let out = stdout(&[
        "ahss",
        "--in",
        path.to_str().unwrap(),
        "--theory",
        "P1",
        "--rules",
        "1",
        "--window",
        "14",
        "--depth",
        "6",
        "--tau",
        "0",
    ]);
    let expected = "# E_infinity after rules [1]; collapse certified\n\
                    presentation P(1)@p=2\n\
                    summand 1 deg (0,0) ann []\n\
                    summand x5 deg (5,1) ann []\n\
                    summand y6 deg (6,0) ann [p,v1]\n\
                    summand x3*y6 deg (9,1) ann []\n\
                    summand x5*y6 deg (11,1) ann [p,v1]\n\
                    summand x3*x5*y6 deg (14,2) ann []\n";
    assert_eq!(out, expected);
}

#[test]
fn adjoint_table_golden() {
    let out = stdout(&["adjoint", "--p", "3", "--iterations", "4"]);
    assert_eq!(
        out,
        "ad^0(y)(z0) = z0\nad^1(y)(z0) = z1\nad^2(y)(z0) = 2*v2*z0\n\
         ad^3(y)(z0) = 2*v2*z1\nad^4(y)(z0) = v2^2*z0\n# every iterate nonzero: yes\n"
    );
}

#[test]
fn examples_lists_nine_names() {
    let out = stdout(&["examples"]);
    assert_eq!(out.lines().count(), 9);
    for name in [
        "bzp",
        "bz2",
        "so3",
        "so7",
        "v_n",
        "chi_tilde",
        "m2",
        "q3",
        "f4_p3",
    ] {
        assert!(out.contains(name), "missing {}", name);
    }
}

#[test]
fn check_exits_zero_on_success() {
    let out = morava(&["check", "--example", "f4_p3"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("ok"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn exit_codes() {
    // usage errors are 2 (clap's default)
    let out = morava(&["pseries", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // computation/input errors are 3
    let out = morava(&["quotient", "--in", "/nonexistent.pres", "--ideal", "I2"]);
    assert_eq!(out.status.code(), Some(3));
    let out = morava(&["check", "--example", "nope"]);
    assert_eq!(out.status.code(), Some(3));
    // parse errors carry a line number
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.pres");
    std::fs::write(&path, "presentation BP@p=2\nsummand x deg (1,0) ann []\n").unwrap();
    let out = morava(&["quotient", "--in", path.to_str().unwrap(), "--ideal", "I1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}
