use hurwitz_cli::{run, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut full = vec!["hurwitz"];
    full.extend_from_slice(args);
    run(full)
}

#[test]
fn scalar_examples() {
    let (code, out, _) = invoke(&["complex", "--genus", "0", "--lambda", "2,1", "--mu", "2,1"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "4\n"));
    let (code, out, _) = invoke(&["zigzag", "--genus", "0", "--lambda", "3", "--mu", "1,1,1"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "1\n"));
    let (code, out, _) = invoke(&["bends", "--k", "1", "--lambda", "2", "--mu", "2"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "2\n"));
    let (code, out, _) = invoke(&["exists", "--genus", "0", "--lambda", "5,3,1", "--mu", "5,3,1"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "false\n"));
    let (code, out, _) = invoke(&["oracle", "--genus", "0", "--lambda", "3", "--mu", "1,1,1"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "1\n"));
}

#[test]
fn empty_partition_spelling() {
    let (code, out, _) = invoke(&["bends", "--k", "3", "--lambda", "-", "--mu", "2"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "0\n"));
}

#[test]
fn formats() {
    let (_, out, _) = invoke(&[
        "complex", "--genus", "0", "--lambda", "2,1", "--mu", "2,1", "--format", "json",
    ]);
    assert_eq!(out, "{\"value\":\"4\"}\n");
    let (_, out, _) = invoke(&[
        "complex", "--genus", "0", "--lambda", "2,1", "--mu", "2,1", "--format", "csv",
    ]);
    assert_eq!(out, "value\n4\n");
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = invoke(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(!err.is_empty());
    let (code, _, err) = invoke(&["complex", "--genus", "0", "--lambda", "2", "--mu", "3"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("different weights"));
    // --signs and --p are mutually exclusive
    let (code, _, _) = invoke(&[
        "real", "--genus", "0", "--lambda", "2,1", "--mu", "2,1", "--signs", "++", "--p", "1",
    ]);
    assert_eq!(code, EXIT_USAGE);
    // caps apply
    let (code, _, err) = invoke(&[
        "complex", "--genus", "0", "--lambda", "6,6", "--mu", "6,6", "--max-degree", "10",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("caps"));
}

#[test]
fn real_splittings_agree_between_signs_and_p() {
    let (c1, o1, _) = invoke(&["real", "--genus", "0", "--lambda", "2,1", "--mu", "2,1", "--p", "1"]);
    let (c2, o2, _) = invoke(&[
        "real", "--genus", "0", "--lambda", "2,1", "--mu", "2,1", "--signs", "+-",
    ]);
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    assert_eq!(o1, o2);
}

#[test]
fn covers_and_witness_output() {
    let (code, out, _) = invoke(&["covers", "--genus", "0", "--lambda", "3", "--mu", "1,1,1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("mult_complex: 1"));
    let (code, out, _) = invoke(&[
        "covers", "--genus", "0", "--lambda", "3", "--mu", "1,1,1", "--dot",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("digraph"));
    let (code, out, _) = invoke(&[
        "zigzag", "--genus", "0", "--lambda", "2,1", "--mu", "2,1", "--witness",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("2\n"));
    assert!(out.contains("cover genus=0"));
}

#[test]
fn sweep_csv_is_deterministic_with_header() {
    let args = [
        "sweep", "--genus", "0", "--lambda", "2,1", "--mu", "2,1", "--m-max", "2", "--format",
        "csv",
    ];
    let (code, first, _) = invoke(&args);
    assert_eq!(code, EXIT_OK);
    let header = first.lines().next().unwrap();
    assert_eq!(
        header,
        "m,z,z_prime,z_dblprime,h_complex,h_prime,h_dblprime,lower_bound,bound_holds"
    );
    let (_, second, _) = invoke(&args);
    assert_eq!(first, second);
}

#[test]
fn sweep_truncation_marker() {
    let (code, out, _) = invoke(&[
        "sweep", "--genus", "0", "--lambda", "2,1", "--mu", "2,1", "--m-max", "3",
        "--max-degree", "7", "--format", "csv",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().last().unwrap().starts_with("# truncated:"));
}

#[test]
fn audit_passes_on_a_small_range() {
    let (code, out, _) = invoke(&["audit", "--degree", "3", "--branch-points", "4"]);
    assert_eq!(code, EXIT_OK, "audit output:\n{out}");
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn violation_exit_code_is_three() {
    assert_eq!(EXIT_VIOLATION, 3);
}
