//! End-to-end runs of the `expquad` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expquad")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn weights_small_table() {
    let out = stdout(&["weights", "--z", "-1,0", "--L", "2"]);
    assert!(out.starts_with("n,omega_re,omega_im,rho_re,rho_im,phase\n"));
    let r = rows(&out);
    assert_eq!(r.len(), 3);
    assert!((num(&r[0][1]) - 0.864664716763387).abs() < 1e-14);
    assert!(r.iter().all(|row| row[5] == "recurrence"));
}

#[test]
fn weights_verify_against_oracle() {
    let out = stdout(&["weights", "--z", "-125.66,0", "--L", "256", "--verify"]);
    let r = rows(&out);
    assert_eq!(r.len(), 257);
    for row in &r {
        assert!(num(&row[6]) <= 1e-12 && num(&row[7]) <= 1e-12, "{row:?}");
    }
}

#[test]
fn weights_phase_tags_on_the_imaginary_axis() {
    let r = rows(&stdout(&["weights", "--z", "0,125.66", "--L", "256"]));
    let n0 = 127;
    for row in &r {
        let n: usize = row[0].parse().unwrap();
        let want = if n <= n0 { "recurrence" } else { "tridiag" };
        assert_eq!(row[5], want, "n={n}");
    }
}

#[test]
fn integrate_with_verification() {
    let r = rows(&stdout(&["integrate", "--f", "smooth-j", "--z", "-40,0", "--L", "80", "--verify"]));
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].len(), 4);
    assert!(num(&r[0][3]) < 1e-12);
}

#[test]
fn convergence_table_shape() {
    let out = stdout(&[
        "convergence", "--f", "smooth-j", "--z-base", "-40,0", "--z-count", "3", "--L-list", "10,20,40", "--L-ref", "320",
    ]);
    assert!(out.starts_with("L,r0,r1,r2\n"));
    let r = rows(&out);
    assert_eq!(r.iter().map(|x| x[0].as_str()).collect::<Vec<_>>(), ["10", "20", "40"]);
    assert!(num(&r[2][1]) < num(&r[0][1]));
}

#[test]
fn instability_shows_the_blowup() {
    let r = rows(&stdout(&["instability", "--z", "-100,0", "--L", "300"]));
    let last = r.last().unwrap();
    assert!(num(&last[1]) > 1e10 * num(&last[2]));
}

#[test]
fn laplace_demo_reports_error_for_heat() {
    let out = stdout(&[
        "demo-laplace", "--alpha", "0", "--lam-eig", "1", "--T", "1", "--N", "36", "--L", "32", "--times", "0.5,1",
    ]);
    assert!(out.starts_with("t,U_re,U_im,exact_abs_err\n"));
    let r = rows(&out);
    assert_eq!(r.len(), 2);
    assert!(r.iter().all(|row| num(&row[3]) < 1e-3));
    let out = stdout(&[
        "demo-laplace", "--alpha", "0.5", "--lam-eig", "1", "--T", "1", "--N", "36", "--L", "32", "--times", "1",
    ]);
    assert!(out.starts_with("t,U_re,U_im\n"));
}

#[test]
fn output_is_deterministic() {
    let args = ["weights", "--z", "-300,700", "--L", "400"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let threaded = ["--threads", "1", "weights", "--z", "-300,700", "--L", "400"];
    assert_eq!(run(&args).stdout, run(&threaded).stdout);
}

#[test]
fn output_file_and_config() {
    let dir = std::env::temp_dir().join(format!("expquad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    let csv = dir.join("out.csv");
    std::fs::write(&cfg, "# defaults\nz = -1,0\nL = 5\n").unwrap();
    let cfg_s = cfg.to_str().unwrap();
    let csv_s = csv.to_str().unwrap();

    let out = run(&["--config", cfg_s, "--output", csv_s, "weights"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    assert_eq!(rows(&std::fs::read_to_string(&csv).unwrap()).len(), 6);

    // command-line flags win over the file
    let r = rows(&stdout(&["--config", cfg_s, "weights", "--L", "2"]));
    assert_eq!(r.len(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["weights", "--z", "5,0", "--L", "3"]).status.code(), Some(2));
    assert_eq!(run(&["integrate", "--f", "nope", "--z", "-1,0", "--L", "4"]).status.code(), Some(2));
    let out = run(&["integrate", "--f", "monomial:2000", "--z", "-1,0", "--L", "8"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn help_mentions_the_ceiling() {
    for sub in ["weights", "integrate", "convergence", "instability", "demo-laplace"] {
        let out = stdout(&[sub, "--help"]);
        assert!(out.contains("mu0"), "{sub}");
    }
}
