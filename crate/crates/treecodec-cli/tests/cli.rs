//! End-to-end runs of the binary, checking the documented flows and the
//! usage/data exit-code split.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_treecodec"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(output: &Output) -> String {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn encode_decode_round_trip_via_text() {
    let out = run(&["encode", "--method", "te"], "(());\n(,);\n");
    assert_eq!(stdout(&out), "011\n111\n");

    let out = run(&["decode", "--method", "te", "--n", "3"], "011\n111\n");
    assert_eq!(stdout(&out), "(());\n(,);\n");

    let out = run(
        &["decode", "--method", "pc", "--n", "4", "--format", "parents"],
        "10100\n",
    );
    assert_eq!(stdout(&out), "4\n-1 0 1 0\n");
}

#[test]
fn parent_array_input_blocks() {
    let out = run(
        &["encode", "--method", "td", "--format", "parents"],
        "3\n-1 0 0\n3\n-1 0 1\n",
    );
    assert_eq!(stdout(&out), "11\n0001\n");
}

#[test]
fn stats_line() {
    let out = run(&["stats"], "(());\n");
    assert_eq!(
        stdout(&out),
        "n=3 leaves=1 depth=2 pc=2 td=4 te=3 adjacency=12 newick=9\n"
    );
}

#[test]
fn sample_is_deterministic_per_seed() {
    let args = ["sample", "--n", "9", "--count", "5", "--seed", "31"];
    let a = stdout(&run(&args, ""));
    let b = stdout(&run(&args, ""));
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 5);
    for line in a.lines() {
        assert!(line.ends_with(';'));
    }
}

#[test]
fn enumerate_matches_known_counts() {
    let out = stdout(&run(&["enumerate", "--n", "6"], ""));
    assert_eq!(out.lines().count(), 20);
}

#[test]
fn bench_csv_is_stable_and_exact_at_small_n() {
    let args = [
        "bench", "--n-min", "1", "--n-max", "3", "--samples", "100", "--seed", "7",
    ];
    let a = stdout(&run(&args, ""));
    let b = stdout(&run(&args, ""));
    assert_eq!(a, b, "byte-identical across runs");
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("1,1,1.0000,"));
    assert!(lines[2].starts_with("2,1,2.0000,"));
    assert!(lines[3].starts_with("3,2,3.0000,"));
}

#[test]
fn convert_both_directions() {
    let out = run(&["convert", "--to", "parents"], "((,),);\n");
    assert_eq!(stdout(&out), "5\n-1 0 1 1 0\n");
    let out = run(&["convert", "--to", "newick"], "5\n-1 0 1 1 0\n");
    assert_eq!(stdout(&out), "((,),);\n");
}

#[test]
fn packet_files_round_trip() {
    let dir = std::env::temp_dir().join(format!("treecodec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let routes = dir.join("routes.txt");
    let packet = dir.join("table.pkt");
    std::fs::write(&routes, "source 0\n0 1\n0 1 2\n").unwrap();

    let out = run(
        &[
            "packet-encode",
            "-i",
            routes.to_str().unwrap(),
            "-o",
            packet.to_str().unwrap(),
        ],
        "",
    );
    assert!(out.status.success());
    // chain of three with identity labels selects the pit-climbing body
    assert_eq!(std::fs::read(&packet).unwrap()[0], 0x13);

    let out = run(&["packet-decode", "-i", packet.to_str().unwrap()], "");
    assert_eq!(stdout(&out), "source 0\n0 1\n0 1 2\n");

    let out = run(
        &[
            "packet-encode",
            "-i",
            routes.to_str().unwrap(),
            "-o",
            packet.to_str().unwrap(),
            "--structure-only",
        ],
        "",
    );
    assert!(out.status.success());
    let out = run(&["packet-decode", "-i", packet.to_str().unwrap()], "");
    assert_eq!(stdout(&out), "(());\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes_split_usage_and_data_errors() {
    let out = run(&["decode", "--method", "nope", "--n", "3"], "");
    assert_eq!(out.status.code(), Some(1), "usage error");

    let out = run(&["decode", "--method", "pc", "--n", "3"], "0001\n");
    assert_eq!(out.status.code(), Some(2), "data error");
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));

    let out = run(&["encode", "--method", "te"], "((;\n");
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["--help"], "");
    assert_eq!(out.status.code(), Some(0));
}
