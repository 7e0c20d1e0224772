//! End-to-end behavior of the binary: exit codes, file outputs, config
//! handling, and column selection.

use std::path::Path;
use std::process::{Command, Output};

fn picorr(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_picorr"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|_| panic!("missing {name}"))
}

#[test]
fn steady_writes_files_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = picorr(&["--out-dir", "run", "steady", "--omega", "0.5"], dir.path());
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("rho11,2.22222222222e-1"));
    let run = dir.path().join("run");
    assert!(run.join("steady.csv").exists());
    assert!(run.join("steady.json").exists());
    let manifest = read(&run, "steady.manifest.json");
    assert!(manifest.contains("\"steady.csv\""));
    assert!(manifest.contains("\"steady.json\""));
}

#[test]
fn json_format_renders_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = picorr(&["--format", "json", "steady", "--omega", "0.5"], dir.path());
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("stdout is a JSON document");
    assert!((v["rho11"].as_f64().unwrap() - 2.0 / 9.0).abs() < 1e-12);
}

#[test]
fn parameter_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    // negative gamma0
    let out = picorr(&["--gamma0", "-1", "steady"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    // unknown figure
    let out = picorr(&["fig", "7"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    // unknown flag
    let out = picorr(&["steady", "--nonsense"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    // normalized correlations at zero drive
    let out = picorr(&["corr", "--omega", "0", "--normalized"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    // empty sweep grid dimension
    let out = picorr(&["sweep", "--omega", "", "--delta", "0"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    // negative drive in sweep
    let out = picorr(&["sweep", "--omega", "-0.5", "--delta", "0"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn help_and_version_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(picorr(&["--help"], dir.path()).status.code(), Some(0));
    assert_eq!(picorr(&["--version"], dir.path()).status.code(), Some(0));
}

#[test]
fn config_file_supplies_parameters_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("params.json"),
        r#"{"gamma0": 1.0, "rabi_re": 3.0, "detuning": 0.0, "vic": 1}"#,
    )
    .unwrap();
    let out = picorr(&["--config", "params.json", "eigs"], dir.path());
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    // drive 3.0 produces the fast pair
    assert!(stdout.contains("-5.99869777535e0"), "stdout: {stdout}");

    // an explicit flag overrides the config value
    let out = picorr(&["--config", "params.json", "eigs", "--omega", "0.5"], dir.path());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(!stdout.contains("-5.99869777535e0"));
}

#[test]
fn fractional_vic_in_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), r#"{"vic": 0.3}"#).unwrap();
    let out = picorr(&["--config", "bad.json", "steady"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn corr_column_selection() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["corr", "--omega", "0.5", "--tmax", "1", "--dt", "0.5"];
    assert!(picorr(&base, dir.path()).status.success());
    let full = read(dir.path(), "corr.csv");
    assert!(full.starts_with("tau,G2_vic,G2_novic,g2_vic,g2_novic\n"));
    assert_eq!(full.lines().count(), 4); // header + 3 grid points

    let mut on = base.to_vec();
    on.extend(["--vic", "on"]);
    assert!(picorr(&on, dir.path()).status.success());
    assert!(read(dir.path(), "corr.csv").starts_with("tau,G2_vic,g2_vic\n"));

    let mut norm = base.to_vec();
    norm.push("--normalized");
    assert!(picorr(&norm, dir.path()).status.success());
    assert!(read(dir.path(), "corr.csv").starts_with("tau,g2_vic,g2_novic\n"));

    // zero drive: unnormalized columns still exist and are zero
    let out = picorr(&["corr", "--omega", "0", "--tmax", "1", "--dt", "0.5"], dir.path());
    assert!(out.status.success());
    let csv = read(dir.path(), "corr.csv");
    assert!(csv.starts_with("tau,G2_vic,G2_novic\n"));
    for line in csv.lines().skip(1) {
        let g2: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!(g2.abs() < 1e-14);
    }
}

#[test]
fn dump_generator_dimensions_and_q_entries() {
    let dir = tempfile::tempdir().unwrap();
    assert!(picorr(&["dump-generator", "--dim", "8"], dir.path()).status.success());
    let block = read(dir.path(), "generator8.csv");
    assert_eq!(block.lines().count(), 65); // header + 64 entries

    assert!(picorr(&["dump-generator", "--dim", "16"], dir.path()).status.success());
    let with_q = read(dir.path(), "generator16.csv");
    assert_eq!(with_q.lines().count(), 257);

    assert!(picorr(&["dump-generator", "--dim", "16", "--vic", "false"], dir.path())
        .status
        .success());
    let without_q = read(dir.path(), "generator16.csv");
    let differing: Vec<(&str, &str)> =
        with_q.lines().zip(without_q.lines()).filter(|(a, b)| a != b).collect();
    // exactly the two interference couplings
    assert_eq!(differing.len(), 2);
    assert!(differing[0].0.starts_with("15,9,"));
    assert!(differing[1].0.starts_with("16,10,"));

    let out = picorr(&["dump-generator", "--dim", "12"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn fig_five_matches_pathway_asymptote() {
    let dir = tempfile::tempdir().unwrap();
    assert!(picorr(&["fig", "5"], dir.path()).status.success());
    let csv = read(dir.path(), "fig5.csv");
    assert!(csv.starts_with("tau,f12,f52\n"));
    let first_data = csv.lines().nth(1).unwrap();
    assert!(first_data.starts_with("0.00000000000e0,"));
    let last = csv.lines().last().unwrap();
    let fields: Vec<f64> = last.split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(fields[0], 20.0);
}

#[test]
fn fig_six_starts_at_zero() {
    let dir = tempfile::tempdir().unwrap();
    assert!(picorr(&["fig", "6"], dir.path()).status.success());
    let csv = read(dir.path(), "fig6.csv");
    assert!(csv.starts_with("tau,g2_vic,g2_novic\n"));
    let first: Vec<f64> =
        csv.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first[0], 0.0);
    assert!(first[1].abs() < 1e-12 && first[2].abs() < 1e-12);
}

#[test]
fn sweep_single_point_matches_individual_commands() {
    let dir = tempfile::tempdir().unwrap();
    assert!(picorr(&["--out-dir", "sw", "sweep", "--omega", "0.5", "--delta", "0.5"], dir.path())
        .status
        .success());
    assert!(picorr(
        &["--out-dir", "single", "eigs", "--omega", "0.5", "--delta", "0.5"],
        dir.path()
    )
    .status
    .success());
    assert!(picorr(
        &["--out-dir", "single", "steady", "--omega", "0.5", "--delta", "0.5"],
        dir.path()
    )
    .status
    .success());

    let sweep_csv = read(&dir.path().join("sw"), "sweep.csv");
    let header: Vec<&str> = sweep_csv.lines().next().unwrap().split(',').collect();
    let row: Vec<&str> = sweep_csv.lines().nth(1).unwrap().split(',').collect();
    let field = |name: &str| -> &str {
        let idx = header.iter().position(|h| *h == name).unwrap();
        row[idx]
    };

    let steady_csv = read(&dir.path().join("single"), "steady.csv");
    let rho11_line = steady_csv.lines().find(|l| l.starts_with("rho11,")).unwrap();
    assert_eq!(field("rho11"), rho11_line.split(',').nth(1).unwrap());

    let eigs_csv = read(&dir.path().join("single"), "eigs.csv");
    let first_eig = eigs_csv.lines().nth(1).unwrap();
    assert_eq!(format!("{},{}", field("eig1_re"), field("eig1_im")), first_eig);
}

#[test]
fn physical_units_scale_outputs() {
    let dir = tempfile::tempdir().unwrap();
    assert!(picorr(
        &["--out-dir", "r", "corr", "--omega", "0.5", "--tmax", "1", "--dt", "0.5"],
        dir.path()
    )
    .status
    .success());
    assert!(picorr(
        &[
            "--out-dir",
            "p",
            "--reduced-units",
            "false",
            "corr",
            "--omega",
            "0.5",
            "--tmax",
            "1",
            "--dt",
            "0.5"
        ],
        dir.path()
    )
    .status
    .success());
    let reduced = read(&dir.path().join("r"), "corr.csv");
    let physical = read(&dir.path().join("p"), "corr.csv");
    let r_val: f64 = reduced.lines().nth(2).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    let p_val: f64 = physical.lines().nth(2).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((p_val - r_val / 36.0).abs() < 1e-15);
    // normalized columns are unit-independent
    let r_norm: f64 = reduced.lines().nth(2).unwrap().split(',').nth(3).unwrap().parse().unwrap();
    let p_norm: f64 = physical.lines().nth(2).unwrap().split(',').nth(3).unwrap().parse().unwrap();
    assert_eq!(r_norm, p_norm);
}
