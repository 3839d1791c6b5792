use std::fs;
use std::process::{Command as Process, Output};

use weno_cli::{emit_table, parse_config, Command, Options, EXIT_BLOWUP, EXIT_OK, EXIT_USAGE, TABLE2_GRIDS};
use weno_core::advect1d::{convergence_study, AdvectionProblem};
use weno_core::SchemeId;

fn lab(args: &[&str]) -> Output {
    Process::new(env!("CARGO_BIN_EXE_weno-lab"))
        .args(args)
        .env_remove("WENO_LAB_THREADS")
        .output()
        .expect("weno-lab runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn defaults_cover_the_standard_grids() {
    let cfg = parse_config(Command::Convergence, &Options::default()).unwrap();
    assert_eq!(cfg.scheme.id, SchemeId::Es2);
    assert_eq!(cfg.case, "table2");
    assert_eq!(cfg.grids, TABLE2_GRIDS);
    let cfg = parse_config(Command::Euler2d, &Options {
        case: Some("dmr".into()),
        grid_scale: Some("0.25".into()),
        ..Options::default()
    })
    .unwrap();
    assert_eq!(cfg.grid_scale, Some(0.25));
}

#[test]
fn unknown_scheme_lists_every_valid_name() {
    let out = lab(&["convergence", "--scheme", "nosuch"]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE as i32));
    let err = stderr(&out);
    for name in ["js3", "z3", "np3", "f3", "nn3", "pz3", "zm3", "es2", "es3", "js5"] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn bad_values_name_the_offending_token() {
    let err = parse_config(Command::Euler1d, &Options {
        grid_scale: Some("big".into()),
        ..Options::default()
    })
    .unwrap_err()
    .to_string();
    assert!(err.contains("big") && err.contains("grid-scale"), "{err}");

    let err = parse_config(Command::Convergence, &Options {
        reference: Some("4800".into()),
        ..Options::default()
    })
    .unwrap_err()
    .to_string();
    assert!(err.contains("--reference"), "{err}");

    let err = parse_config(Command::Euler2d, &Options {
        case: Some("cylinder".into()),
        ..Options::default()
    })
    .unwrap_err()
    .to_string();
    assert!(err.contains("cylinder") && err.contains("riemann2d, dmr"), "{err}");

    let err = parse_config(Command::Euler2d, &Options {
        dump_fields: true,
        ..Options::default()
    })
    .unwrap_err()
    .to_string();
    assert!(err.contains("--out"), "{err}");
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    fs::write(&path, "# study\nscheme = z3\ngrids = 20, 40\ncfl = 0.5\n").unwrap();
    let opts = Options {
        config: Some(path.clone()),
        scheme: Some("es3".into()),
        ..Options::default()
    };
    let cfg = parse_config(Command::Convergence, &opts).unwrap();
    assert_eq!(cfg.scheme.id, SchemeId::Es3);
    assert_eq!(cfg.grids, vec![20, 40]);
    assert_eq!(cfg.cfl, Some(0.5));

    fs::write(&path, "scheme = es2\nwhatever = 1\n").unwrap();
    let err = parse_config(Command::Convergence, &Options {
        config: Some(path.clone()),
        ..Options::default()
    })
    .unwrap_err()
    .to_string();
    assert!(err.contains("whatever") && err.contains(":2"), "{err}");

    fs::write(&path, "scheme es2\n").unwrap();
    let err = parse_config(Command::Convergence, &Options {
        config: Some(path),
        ..Options::default()
    })
    .unwrap_err()
    .to_string();
    assert!(err.contains("key = value"), "{err}");
}

#[test]
fn emit_table_contract() {
    assert!(emit_table(&[]).is_err());
    let spec = weno_core::SchemeSpec::new(SchemeId::Es2);
    let rows = convergence_study(&AdvectionProblem::critical_pair(10), &spec, &[10]).unwrap();
    let (csv, table) = emit_table(&rows).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "N,dt,L1,L2,Linf,order_L1,order_L2,order_Linf");
    assert!(lines[1].starts_with("10,0.05,"), "{}", lines[1]);
    assert_eq!(table.lines().count(), 2);
}

#[test]
fn convergence_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let mut csvs = Vec::new();
    for _ in 0..2 {
        let o = lab(&["convergence", "--scheme", "es3", "--grids", "10,20,40,80", "--out", out]);
        assert_eq!(o.status.code(), Some(EXIT_OK as i32), "{}", stderr(&o));
        csvs.push(fs::read(dir.path().join("convergence_table2_es3.csv")).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
    let text = String::from_utf8(csvs.remove(0)).unwrap();
    assert_eq!(text.lines().count(), 5);
    // Errors keep 5 significant digits, orders 3 decimals.
    let last: Vec<&str> = text.lines().last().unwrap().split(',').collect();
    assert_eq!(last[4].split('e').next().unwrap().len(), 6);
    assert_eq!(last[7].split('.').nth(1).unwrap().len(), 3);
}

#[test]
fn euler1d_writes_summary_and_fields() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = lab(&[
        "euler1d", "--case", "shu-osher", "--scheme", "es2", "--grid-scale", "0.5", "--t-final", "0.18",
        "--reference", "480", "--dump-fields", "--out", out,
    ]);
    assert_eq!(o.status.code(), Some(EXIT_OK as i32), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("completed=true") && s.contains("N=120"), "{s}");
    assert!(!s.contains("L2_vs_ref=NA"), "{s}");
    let fields = fs::read_to_string(dir.path().join("shu-osher_es2_120_fields.csv")).unwrap();
    assert_eq!(fields.lines().next(), Some("x,rho,u,p"));
    assert_eq!(fields.lines().count(), 121);
    assert!(dir.path().join("shu-osher_reference_480.csv").exists());
}

#[test]
fn blow_up_exits_with_two() {
    // CFL number far above one.
    let o = lab(&["euler1d", "--case", "blast", "--scheme", "z3", "--grid-scale", "0.1", "--dt", "0.01"]);
    assert_eq!(o.status.code(), Some(EXIT_BLOWUP as i32), "{}\n{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("completed=false"));
}

#[test]
fn euler2d_dumps_are_readable() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = lab(&[
        "euler2d", "--case", "riemann2d", "--scheme", "es3", "--grid-scale", "0.025", "--t-final", "0.01",
        "--dump-fields", "--out", out, "--threads", "1",
    ]);
    assert_eq!(o.status.code(), Some(EXIT_OK as i32), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("grid=24x24") && s.contains("diagonal_asymmetry=0.000000e0"), "{s}");
    let bin = fs::read(dir.path().join("riemann2d_es3_24x24_fields.bin")).unwrap();
    let dump = weno_core::euler2d::io::read_binary(bin.as_slice()).unwrap();
    assert_eq!((dump.nx, dump.ny), (24, 24));
    assert!((dump.t - 0.01).abs() < 1e-12);
    let csv = fs::read_to_string(dir.path().join("riemann2d_es3_24x24_fields.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 24 * 24);
}

#[test]
fn variant_experiment_reports_each_variant() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = lab(&[
        "variant-exp", "--grid-scale", "0.025", "--t-final", "0.002", "--tau", "d31sq", "--beta1", "star:0.15",
        "--out", out,
    ]);
    assert_eq!(o.status.code(), Some(EXIT_OK as i32), "{}", stderr(&o));
    let csv = fs::read_to_string(dir.path().join("variant_exp.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "variant,completed,blew_up_at,tv,front_x,min_rho,max_rho");
    assert!(lines[1].starts_with("d31sq+star:0.15,true,"), "{}", lines[1]);
    assert!(lab(&["variant-exp", "--tau", "tau4"]).status.code() == Some(EXIT_USAGE as i32));
}

#[test]
fn selftest_passes_and_is_seeded() {
    let a = lab(&["kernels-selftest", "--samples", "200", "--seed", "7"]);
    let b = lab(&["kernels-selftest", "--samples", "200", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(EXIT_OK as i32), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("all checks passed"));
}

#[test]
fn threads_fall_back_to_the_environment() {
    let o = Process::new(env!("CARGO_BIN_EXE_weno-lab"))
        .args(["convergence", "--grids", "10,20"])
        .env("WENO_LAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(EXIT_USAGE as i32));
    assert!(stderr(&o).contains("zero"), "{}", stderr(&o));
}
