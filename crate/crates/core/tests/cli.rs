//! The binary on the bundled samples: outputs and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn sample(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../samples").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skernel")).args(args).env_remove("SKERNEL_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn homology_of_spheres_and_complexes() {
    let o = run(&["space-homology", "--in", &sample("s2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H0=Z H1=0 H2=Z"), "{}", stdout(&o));
    let o = run(&["homology", "--in", &sample("complex_z2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Z/2"), "{}", stdout(&o));
}

#[test]
fn verification_commands_pass_on_samples() {
    for args in [
        vec!["nk-roundtrip", "--in", &sample("complex_z2.json")],
        vec!["wr-verify", "--in", &sample("s1.json")],
        vec!["pushout", "--in", &sample("s0_to_point.json"), "--in", &sample("s0_to_point.json")],
        vec!["cylinder", "--in", &sample("s1_identity.json")],
        vec!["tower-report", "--in", &sample("complex_z.json"), "--in", &sample("complex_z2.json")],
    ] {
        let o = run(&args.iter().map(|s| s.as_ref()).collect::<Vec<&str>>());
        assert_eq!(o.status.code(), Some(0), "{:?}: {}{}", args, stdout(&o), String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn out_writes_a_parseable_object() {
    let out = std::env::temp_dir().join(format!("skernel-cli-{}.json", std::process::id()));
    let o = run(&["nk-roundtrip", "--in", &sample("complex_z2.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(skernel::io::parse_group(&text).is_ok());
    std::fs::remove_file(out).ok();
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["homology", "--in", "/nonexistent/skernel.json"]).status.code(), Some(2));
    assert_eq!(run(&["homology", "--in", &sample("s1_identity.json")]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["suite", "--size", "huge"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_skernel")).args(["suite"]).env("SKERNEL_THREADS", "many").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn injected_fault_exits_1() {
    let o = run(&["suite", "--seed", "0", "--size", "small", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL Dold-Kan"), "{}", stdout(&o));
}

#[test]
fn threads_do_not_change_the_report() {
    let a = run(&["suite", "--seed", "3", "--size", "small"]);
    let b = Command::new(env!("CARGO_BIN_EXE_skernel"))
        .args(["suite", "--seed", "3", "--size", "small"])
        .env("SKERNEL_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
