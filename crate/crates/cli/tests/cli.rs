use std::path::{Path as FsPath, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use witness_lab::{
    build_hamiltonian, diagonalize, eigenvalues, linspace, run_sweep, witness_report, Path, Sweep,
    System,
};

const BIN: &str = env!("CARGO_BIN_EXE_witness-lab");

const QUBIT: &str = r#"{"system": {"n": 1, "delta": [1], "h": [0]}}"#;
const CLASSICAL_PAIR: &str = r#"{
  "system": {"n": 2, "delta": [0, 0], "h": [0, 0], "couplings": [[0, 1, -1]]},
  "sweep": {"direction": {"h": [1, 1]}, "grid": {"start": -1, "stop": 1, "points": 21}}
}"#;
const FM_PAIR: &str = r#"{
  "system": {"n": 2, "delta": [0.2, 0.2], "h": [0, 0], "couplings": [[0, 1, -1]]},
  "sweep": {"direction": {"h": [1, 1]}, "grid": {"start": -2, "stop": 2, "points": 201}},
  "options": {"var_tol": 0.5}
}"#;
const TRIANGLE: &str = r#"{
  "system": {"n": 3, "delta": [0.2, 0.2, 0.2], "h": [0, 0, 0],
             "couplings": [[0, 1, -1], [1, 2, -1], [0, 2, -1]]}
}"#;
const PINNED: &str =
    r#"{"system": {"n": 2, "delta": [1, 0], "h": [0.3, 5], "couplings": [[0, 1, 0.4]]}}"#;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn write_config(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn invoke(args: &[&str], config: &FsPath, envs: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(BIN);
    cmd.args(&args[..1])
        .arg("--config")
        .arg(config)
        .args(&args[1..]);
    cmd.env_remove("WITNESS_LAB_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let Output {
        status,
        stdout,
        stderr,
    } = cmd.output().unwrap();
    Run {
        code: status.code().unwrap(),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn run(text: &str, args: &[&str]) -> Run {
    let dir = TempDir::new().unwrap();
    invoke(args, &write_config(&dir, "run.json", text), &[])
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(field: &str) -> f64 {
    field
        .parse()
        .unwrap_or_else(|_| panic!("not a number: {field:?}"))
}

#[test]
fn single_qubit_spectrum() {
    let r = run(QUBIT, &["spectrum"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "level,energy\n0,-0.5\n1,0.5\n");
}

#[test]
fn degenerate_ground_exits_three() {
    let r = run(CLASSICAL_PAIR, &["spectrum", "--ground"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("DegenerateGround"), "{}", r.stderr);
    let r = run(CLASSICAL_PAIR, &["spectrum"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().count(), 5);
    assert_eq!(run(CLASSICAL_PAIR, &["witness"]).code, 3);
}

fn triangle() -> System {
    System::new(
        vec![0.2; 3],
        vec![0.0; 3],
        &[(0, 1, -1.0), (1, 2, -1.0), (0, 2, -1.0)],
    )
    .unwrap()
}

#[test]
fn spectrum_matches_library_exactly() {
    let r = run(TRIANGLE, &["spectrum", "--ground"]);
    assert_eq!(r.code, 0);
    let table = rows(&r.stdout);
    let spec = diagonalize(&build_hamiltonian(&triangle())).unwrap();
    let values_only = eigenvalues(build_hamiltonian(&triangle())).unwrap();
    assert_eq!(table.len(), 1 + 8 + 1);
    for (k, row) in table[1..9].iter().enumerate() {
        assert_eq!(row[0], k.to_string());
        assert_eq!(num(&row[1]), spec.energies()[k]);
        assert_eq!(num(&row[1]), values_only[k]);
    }
    assert_eq!(table[9][0], "gap");
    assert_eq!(num(&table[9][1]), spec.gap());
    let r = run(TRIANGLE, &["spectrum", "--levels", "3"]);
    assert_eq!(r.stdout.lines().count(), 4);
}

#[test]
fn witness_rows_match_library_exactly() {
    let r = run(TRIANGLE, &["witness"]);
    assert_eq!(r.code, 0);
    let table = rows(&r.stdout);
    assert_eq!(table[0], ["mask_hex", "n_ab", "w_tilde", "w_ab"]);
    let spec = diagonalize(&build_hamiltonian(&triangle())).unwrap();
    let report = witness_report(&spec, &triangle(), spec.default_deg_tol()).unwrap();
    for (row, cut) in table[1..4].iter().zip(&report.cuts) {
        assert_eq!(row[0], format!("{:#x}", cut.partition.mask()));
        assert_eq!(row[1], cut.n_ab.to_string());
        assert_eq!(num(&row[2]), cut.w_tilde);
        assert_eq!(num(&row[3]), cut.w_ab);
        assert!(cut.w_ab > 0.0);
    }
    assert_eq!(table[4][..3], ["global", "", ""]);
    assert_eq!(num(&table[4][3]), report.w_global);
    assert!(report.w_global > 0.0);
}

#[test]
fn silent_witnesses() {
    let uncoupled = r#"{"system": {"n": 2, "delta": [1, 0.5], "h": [0.1, 0.2]}}"#;
    let r = run(uncoupled, &["witness"]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        "mask_hex,n_ab,w_tilde,w_ab\n0x1,0,0.0,0.0\nglobal,,,0.0\n"
    );

    let with_path = PINNED.replace("}}", "}, \"witness\": {\"direction\": {\"h\": [1, 0]}}}");
    let r = run(&with_path, &["witness"]);
    assert_eq!(r.code, 0);
    let table = rows(&r.stdout);
    assert!(num(&table[1][2]).abs() <= 1e-8);
    assert_eq!(table[3][0], "w_lambda");
    assert!(num(&table[3][3]).abs() <= 1e-8);
}

#[test]
fn single_qubit_sweep_reports_anticrossing() {
    let config = r#"{
      "system": {"n": 1, "delta": [0.2], "h": [0]},
      "sweep": {"direction": {"h": [1]}, "grid": {"start": -1, "stop": 1, "points": 201}}
    }"#;
    let r = run(config, &["sweep"]);
    assert_eq!(r.code, 0);
    let table = rows(&r.stdout);
    assert_eq!(
        table[0],
        ["lambda", "E0", "E1", "gap", "sz_0", "degenerate"]
    );
    assert_eq!(table.len(), 202);
    let notes: Vec<&str> = r.stderr.lines().collect();
    assert_eq!(notes.len(), 1);
    let fields: Vec<f64> = notes[0]
        .trim_start_matches("anticrossing at lambda=")
        .split(" gap=")
        .map(num)
        .collect();
    assert!(
        fields[0].abs() < 1e-9 && (fields[1] - 0.2).abs() < 1e-4,
        "{}",
        notes[0]
    );
}

#[test]
fn sweep_rows_match_library_exactly() {
    let r = run(FM_PAIR, &["sweep", "--levels", "3"]);
    let table = rows(&r.stdout);
    let path =
        Path::uniform_bias(System::new(vec![0.2; 2], vec![0.0; 2], &[(0, 1, -1.0)]).unwrap());
    let mut sweep = Sweep::new(path, linspace(-2.0, 2.0, 201));
    sweep.track_levels = 3;
    let result = run_sweep(&sweep).unwrap();
    for (row, p) in table[1..].iter().zip(&result.points) {
        let expected: Vec<f64> = std::iter::once(p.lambda)
            .chain(p.energies.iter().copied())
            .chain([p.gap])
            .chain(p.sz.iter().copied())
            .collect();
        let got: Vec<f64> = row[..row.len() - 1].iter().map(|f| num(f)).collect();
        assert_eq!(got, expected);
    }
}

#[test]
fn sweep_flags_and_witness_column() {
    let r = run(CLASSICAL_PAIR, &["sweep"]);
    let table = rows(&r.stdout);
    let flagged: Vec<&str> = table[1..]
        .iter()
        .filter(|row| row.last().unwrap() == "true")
        .map(|row| row[0].as_str())
        .collect();
    assert_eq!(flagged, ["0.0"]);

    let constant = TRIANGLE.replace(
        "\n}",
        ", \"sweep\": {\"direction\": {}, \"grid\": {\"values\": [0, 1, 2]}}, \"options\": {\"witnesses\": true}}",
    );
    let r = run(&constant, &["sweep"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let table = rows(&r.stdout);
    assert_eq!(table[0].last().unwrap(), "w_global");
    assert!(table[1][1..] == table[2][1..] && table[2][1..] == table[3][1..]);
    assert!(num(table[1].last().unwrap()) > 0.0);
}

#[test]
fn certify_exit_codes() {
    let r = run(FM_PAIR, &["certify"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let table = rows(&r.stdout);
    assert_eq!(table[0], ["i", "j", "var_i", "var_j", "certified"]);
    assert_eq!(table[1][..2], ["0", "1"]);
    assert_eq!(table[1][4], "true");
    assert_eq!(table[2], ["path_nondegenerate", "", "", "", "true"]);
    assert!(num(&table[3][4]).abs() < 0.05);

    let uncoupled = FM_PAIR.replace("\"couplings\": [[0, 1, -1]]", "\"couplings\": []");
    let r = run(&uncoupled, &["certify"]);
    assert_eq!(r.code, 1);
    assert_eq!(rows(&r.stdout)[1][0], "path_nondegenerate");

    let r = run(CLASSICAL_PAIR, &["certify"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("DegenerateGround"));

    // A threshold above the largest possible variation certifies nothing.
    let r = run(FM_PAIR, &["certify", "--var-tol", "10"]);
    assert_eq!(r.code, 1);
}

#[test]
fn invalid_input_exits_two() {
    let cases = [
        QUBIT.replace("\"h\"", "\"bias\""),
        QUBIT.replace("\"n\": 1", "\"n\": 2"),
        TRIANGLE.replace("[0, 2, -1]", "[2, 0, -1]"),
        "not json".to_string(),
    ];
    for text in &cases {
        assert_eq!(run(text, &["spectrum"]).code, 2, "{text}");
    }
    assert_eq!(run(QUBIT, &["sweep"]).code, 2);
    assert_eq!(run(QUBIT, &["witness"]).code, 2);
    assert_eq!(run(QUBIT, &["spectrum", "--deg-tol", "-1"]).code, 2);
    assert_eq!(run(QUBIT, &["spectrum", "--levels", "3"]).code, 2);
    assert_eq!(run(QUBIT, &["spectrum", "--unknown"]).code, 2);
    let missing = Command::new(BIN)
        .args(["spectrum", "--config", "/nonexistent/config.json"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "q.json", QUBIT);
    assert_eq!(
        invoke(&["spectrum"], &cfg, &[("WITNESS_LAB_THREADS", "many")]).code,
        2
    );
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "fm.json",
        &FM_PAIR.replace("\"options\": {", "\"options\": {\"witnesses\": true, "),
    );
    let base = invoke(&["sweep"], &cfg, &[]);
    assert_eq!(base.code, 0);
    assert!(!base.stdout.contains('\r') && !base.stdout.contains('"'));
    for threads in ["1", "3"] {
        let again = invoke(&["sweep"], &cfg, &[("WITNESS_LAB_THREADS", threads)]);
        assert_eq!(again.stdout, base.stdout);
        assert_eq!(again.stderr, base.stderr);
    }
}

#[test]
fn out_file_and_config_echo_round_trip() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "fm.json", FM_PAIR);
    let out = dir.path().join("out.csv");
    let echo = dir.path().join("echo.json");
    let first = invoke(
        &[
            "certify",
            "--out",
            out.to_str().unwrap(),
            "--echo-config",
            echo.to_str().unwrap(),
            "--deg-tol",
            "1e-10",
        ],
        &cfg,
        &[],
    );
    assert_eq!(first.code, 0);
    assert!(first.stdout.is_empty());
    let table = std::fs::read_to_string(&out).unwrap();
    assert!(table.starts_with("i,j,var_i,var_j,certified\n"));

    let echoed = std::fs::read_to_string(&echo).unwrap();
    assert!(echoed.contains("1e-10"));
    let echo2 = dir.path().join("echo2.json");
    let second = invoke(
        &["certify", "--echo-config", echo2.to_str().unwrap()],
        &echo,
        &[],
    );
    assert_eq!(second.code, 0);
    assert_eq!(std::fs::read_to_string(&echo2).unwrap(), echoed);
    assert_eq!(second.stdout, table);
}
