use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use colmem_cli::{parse_config, presets};

fn colmem(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colmem"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let idx = lines
        .next()
        .unwrap()
        .split(',')
        .position(|h| h == name)
        .expect("column present");
    lines
        .map(|l| l.split(',').nth(idx).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn presets_round_trip_through_dump_config() {
    let dir = tempfile::tempdir().unwrap();
    for name in presets::NAMES {
        let out = colmem(&["dump-config", name], dir.path());
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        assert_eq!(
            parse_config(&text).unwrap(),
            presets::preset(name).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn identical_specs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "d.toml",
        "[model]\nsa_coupling = [1.0, 0.5, 1.0]\naa_coupling = [0.3, -0.7, 1.1]\ntau_sa = 0.2\ntau_aa = 1.3\nsteps = 40\n\n[experiment]\nkind = \"distance\"\nschemes = [\"erase-a\", \"erase-b\", \"erase-c\", \"embedded\"]\n",
    );
    for out in ["a.csv", "b.csv"] {
        assert!(colmem(&["run", &cfg, "--out", out], dir.path())
            .status
            .success());
    }
    let a = fs::read(dir.path().join("a.csv")).unwrap();
    assert_eq!(a, fs::read(dir.path().join("b.csv")).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 42);
    assert!(text.ends_with('\n') && !text.contains('\r'));
    assert!(text.starts_with("step,erase-a:zero/one,erase-a:plus/minus,erase-b:zero/one,"));
}

#[test]
fn zero_steps_writes_the_initial_row() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "z.toml",
        "[model]\nsteps = 0\n\n[experiment]\nkind = \"distance\"\noutput = \"z.csv\"\n",
    );
    let out = colmem(&["run", &cfg], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(dir.path().join("z.csv")).unwrap();
    assert_eq!(
        text,
        "step,erase-b:zero/one,erase-b:plus/minus\n0,1.00000000000e0,1.00000000000e0\n"
    );
}

#[test]
fn erase_b_and_c_agree_in_scheme_compare() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.toml",
        "[model]\nsa_coupling = [1.0, 0.5, 1.0]\naa_coupling = [1.0, 0.5, 1.0]\ntau_sa = 0.05\ntau_aa = 1.4922565104551517\nsteps = 200\nsystem_init = \"plus\"\n\n[experiment]\nkind = \"scheme-compare\"\nschemes = [\"erase-b\", \"erase-c\"]\noutput = \"c.csv\"\n",
    );
    assert!(colmem(&["run", &cfg], dir.path()).status.success());
    let dev = column(
        &fs::read_to_string(dir.path().join("c.csv")).unwrap(),
        "max_deviation",
    );
    assert_eq!(dev.len(), 201);
    assert!(dev.iter().all(|&d| d <= 1e-12));
}

#[test]
fn embed_check_matches_full_chain() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "e.toml",
        "[model]\nsa_coupling = [0.4, -1.2, 0.9]\naa_coupling = [1.5, 0.2, -0.6]\ntau_sa = 0.7\ntau_aa = 1.1\nsteps = 8\nancilla_init = [0.2, -0.1, 0.5]\nsystem_init = [0.3, 0.6, -0.2]\n\n[experiment]\nkind = \"embed-check\"\noutput = \"e.csv\"\n",
    );
    let out = colmem(&["run", &cfg], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let dev = column(
        &fs::read_to_string(dir.path().join("e.csv")).unwrap(),
        "deviation",
    );
    assert_eq!(dev.len(), 9);
    assert!(dev.iter().all(|&d| d <= 1e-10));
}

#[test]
fn parse_errors_report_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "p.toml", "[model]\ntau_sa = 0.1\nsteps = ten\n");
    let out = colmem(&["run", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.starts_with("error: kind=parse line=3 message="),
        "{err}"
    );
}

#[test]
fn validation_errors_name_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "v.toml",
        "[model]\ntau_sa = -0.1\n\n[experiment]\nkind = \"distance\"\n",
    );
    let out = colmem(&["run", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.starts_with("error: kind=validation key=model.tau_sa "),
        "{err}"
    );
}

#[test]
fn engine_errors_leave_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "f.toml",
        "[model]\nsteps = 20\n\n[experiment]\nkind = \"embed-check\"\noutput = \"f.csv\"\n",
    );
    let out = colmem(&["run", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .starts_with("error: kind=capacity "));
    let leftovers: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n != "f.toml")
        .collect();
    assert!(leftovers.is_empty(), "{leftovers:?}");
}

#[test]
fn missing_output_and_unknown_preset_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "o.toml",
        "[experiment]\nkind = \"embed-check\"\n",
    );
    let out = colmem(&["run", &cfg], dir.path());
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .starts_with("error: kind=validation key=experiment.output "));
    let out = colmem(&["preset", "fig9"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .starts_with("error: kind=unknown-preset "));
}

#[test]
fn preset_writes_default_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = colmem(&["preset", "fig7"], dir.path());
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("fraction 1)"), "{stdout}");
    let csv = fs::read_to_string(dir.path().join("fig7.csv")).unwrap();
    assert_eq!(csv.lines().count(), 302);
    let q = column(&csv, "q_system");
    let qe = column(&csv, "q_environment");
    assert!(q.iter().zip(&qe).all(|(a, b)| (a + b).abs() < 1e-10));
}
