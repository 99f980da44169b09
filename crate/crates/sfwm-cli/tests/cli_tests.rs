//! Integration tests driving the compiled `sfwm` binary end to end:
//! output document shapes, routing between standard output and files,
//! failure diagnostics, unit conventions, and byte-level repeatability.

use std::path::PathBuf;
use std::process::{Command, Output};

fn sfwm() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sfwm"))
}

/// Working directory for one test's scratch files.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sfwm-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(dir: &std::path::Path, content: &str) -> PathBuf {
    let path = dir.join("run.cfg");
    std::fs::write(&path, content).unwrap();
    path
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Data rows of a CSV document: everything after the single header row,
/// skipping `#` comments.
fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1)
        .collect()
}

const TWO_BY_TWO: &str = "\
axis1_param = Omega_p
axis1_min = 4 Gamma
axis1_max = 8 Gamma
axis1_points = 2
axis1_scale = linear
axis2_param = Omega_c
axis2_min = 4 Gamma
axis2_max = 8 Gamma
axis2_points = 2
axis2_scale = linear
";

/// `point` with no configuration runs on the built-in defaults and
/// emits one JSON record with every figure of merit present and finite.
#[test]
fn point_reports_every_figure_of_merit_as_json() {
    let out = sfwm().arg("point").output().unwrap();
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));

    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["frequency_unit"], "Gamma");
    assert!(v["omega_s"].as_f64().unwrap() > 0.0);
    let merit = &v["merit"];
    for field in [
        "npt_pure",
        "npt_lossy",
        "gen_prob",
        "t_as",
        "t_as_prime",
        "omega_as",
        "omega_as_prime",
    ] {
        let x = merit[field].as_f64().unwrap_or_else(|| panic!("missing {field}"));
        assert!(x.is_finite(), "{field} not finite");
    }
    for field in ["npt_pure", "npt_lossy"] {
        let x = merit[field].as_f64().unwrap();
        assert!((0.0..=1.0 + 1e-9).contains(&x), "{field} = {x} out of range");
    }
    for field in ["t_as", "t_as_prime"] {
        let x = merit[field].as_f64().unwrap();
        assert!((0.0..=1.0).contains(&x), "{field} = {x} out of range");
    }
    assert_eq!(merit["dark"], false);
    assert!(v["diagnostics"]["f_c_sq"].as_f64().unwrap() >= 0.0);
    assert!(v["diagnostics"]["f_d_sq"].as_f64().unwrap() >= 0.0);
    assert!(v["diagnostics"]["omega_stokes_prime"].as_f64().unwrap() > 0.0);
}

/// The default operating point (both drives at 6Γ, detunings ∓Γ, all
/// population in the ground state) is the quoted maximal-entanglement
/// condition: the reported lossy negativity should be at least 0.99.
#[test]
fn point_at_the_default_baseline_reports_high_lossy_entanglement() {
    let out = sfwm().arg("point").output().unwrap();
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let npt_lossy = v["merit"]["npt_lossy"].as_f64().unwrap();
    println!("default baseline npt_lossy {npt_lossy:.6}, required ≥ 0.99");
    assert!(
        npt_lossy >= 0.99,
        "lossy negativity {npt_lossy} < 0.99 at the default baseline"
    );
}

/// A 2×2 sweep emits exactly four data rows under one header row.
#[test]
fn sweep_on_a_two_by_two_grid_emits_exactly_four_data_rows() {
    let dir = scratch("sweep2x2");
    let cfg = write_config(&dir, TWO_BY_TWO);
    let out = sfwm().arg("sweep").arg("--config").arg(&cfg).output().unwrap();
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));

    let csv = stdout_str(&out);
    let header: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).take(1).collect();
    assert_eq!(
        header[0],
        "axis1,axis2,npt_pure,npt_lossy,gen_prob,t_as,t_as_prime,alpha_re,alpha_im,\
         beta_re,beta_im,omega_as,omega_as_prime,dark"
    );
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 4, "expected exactly 4 data rows");
    for row in rows {
        assert_eq!(row.split(',').count(), 14, "malformed row: {row}");
    }
    let _ = std::fs::remove_dir_all(&dir);
}

/// With the coupling switched off the anti-Stokes mode sees a bare
/// two-level medium: its absorption spectrum is a single Lorentzian
/// line, i.e. exactly one interior maximum of Im χ⁽¹⁾.
#[test]
fn spectrum_with_undressed_coupling_shows_one_absorption_peak() {
    let dir = scratch("spectrum-lorentzian");
    let cfg = write_config(&dir, "Omega_c = 0 Gamma\nspectrum_points = 501\n");
    let out = sfwm().arg("spectrum").arg("--config").arg(&cfg).output().unwrap();
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));

    let csv = stdout_str(&out);
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 501);
    // Column 3 is chi_as_im (omega, delta_e, chi_as_re, chi_as_im, ...).
    let im: Vec<f64> = rows
        .iter()
        .map(|r| r.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    let interior_maxima = (1..im.len() - 1)
        .filter(|&k| im[k] > im[k - 1] && im[k] > im[k + 1])
        .count();
    assert_eq!(interior_maxima, 1, "expected a single absorption line");
    assert!(im.iter().all(|&x| x >= 0.0), "negative absorption in the spectrum");
    let _ = std::fs::remove_dir_all(&dir);
}

/// Broken configurations are rejected with a nonzero exit code and a
/// diagnostic on the error stream naming the offending entry; nothing
/// is written to standard output.
#[test]
fn invalid_configs_are_rejected_with_diagnostics_and_no_data() {
    let dir = scratch("bad-config");

    // Physical invariant violation: populations exceeding one.
    let cfg = write_config(&dir, "pop_11 = 0.7\npop_22 = 0.4\n");
    let out = sfwm().arg("point").arg("--config").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty(), "data emitted despite the error");
    let err = stderr_str(&out);
    assert!(err.starts_with("error:"), "no diagnostic prefix: {err}");
    assert!(err.contains("pop"), "diagnostic does not name the entry: {err}");

    // Unknown key, reported with its line number.
    let cfg = write_config(&dir, "length = 100 um\nbogus_knob = 3\n");
    let out = sfwm().arg("point").arg("--config").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = stderr_str(&out);
    assert!(err.contains("bogus_knob"), "diagnostic does not name the key: {err}");
    assert!(err.contains('2'), "diagnostic does not give the line: {err}");

    // Missing file: an I/O failure with path context.
    let out = sfwm()
        .arg("point")
        .arg("--config")
        .arg(dir.join("missing.cfg"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("missing.cfg"));
    let _ = std::fs::remove_dir_all(&dir);
}

/// The same invocation twice produces byte-identical output: no
/// timestamps, no locale dependence, no iteration-order leakage.
#[test]
fn repeated_runs_are_byte_identical() {
    let dir = scratch("repeat");
    let cfg = write_config(
        &dir,
        "axis1_points = 5\naxis2_points = 5\naxis1_scale = log\naxis2_scale = log\n",
    );
    let run = || sfwm().arg("sweep").arg("--config").arg(&cfg).output().unwrap();
    let a = run();
    let b = run();
    assert!(a.status.success(), "stderr: {}", stderr_str(&a));
    assert_eq!(a.stdout, b.stdout, "sweep output changed between identical runs");
    let _ = std::fs::remove_dir_all(&dir);
}

/// `--out` routes the CSV to a file and promotes the JSON summary to
/// standard output; `--summary-out` routes the summary to its own file.
#[test]
fn output_routing_between_files_and_stdout() {
    let dir = scratch("routing");
    let cfg = write_config(&dir, TWO_BY_TWO);
    let csv_path = dir.join("grid.csv");

    let out = sfwm()
        .arg("sweep")
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&csv_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(data_rows(&csv).len(), 4);
    let summary: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(summary["grid"], serde_json::json!([2, 2]));
    assert!(summary["max_npt_lossy"]["value"].as_f64().unwrap() > 0.0);

    let summary_path = dir.join("summary.json");
    let out = sfwm()
        .arg("sweep")
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&csv_path)
        .arg("--summary-out")
        .arg(&summary_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "stdout not empty when both outputs go to files");
    let from_file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&summary_path).unwrap()).unwrap();
    assert_eq!(from_file, summary);
    let _ = std::fs::remove_dir_all(&dir);
}

/// Angular frequencies are reported in units of Γ by default and in
/// rad/s under `--si`; both documents declare their unit and agree up
/// to the single scale factor Γ.
#[test]
fn si_flag_switches_frequency_units() {
    let dir = scratch("units");
    let cfg = write_config(&dir, TWO_BY_TWO);
    let run = |extra: &[&str]| {
        let mut c = sfwm();
        c.arg("sweep").arg("--config").arg(&cfg);
        for a in extra {
            c.arg(a);
        }
        let out = c.output().unwrap();
        assert!(out.status.success(), "stderr: {}", stderr_str(&out));
        stdout_str(&out)
    };
    let gamma_doc = run(&[]);
    let si_doc = run(&["--si"]);
    assert!(gamma_doc.contains("# frequency_unit: Gamma"));
    assert!(si_doc.contains("# frequency_unit: rad_s"));

    let first = |doc: &str| -> f64 {
        data_rows(doc)[0].split(',').next().unwrap().parse().unwrap()
    };
    let gamma_e = 2.0 * std::f64::consts::PI * 5.75e6; // default linewidth, rad/s
    let ratio = first(&si_doc) / first(&gamma_doc);
    assert!(
        (ratio / gamma_e - 1.0).abs() < 1e-12,
        "axis values scale by {ratio}, expected Γ = {gamma_e}"
    );
    let _ = std::fs::remove_dir_all(&dir);
}
