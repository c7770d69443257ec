use std::path::PathBuf;
use std::process::Command;

use quadtess::cli::config::Config;
use quadtess::cli::output::read_png_header;
use quadtess::dynamics::Segment;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_quadtess"));
    c.env("RUST_BACKTRACE", "0");
    c
}

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("quadtess-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

#[test]
fn config_file_then_overrides() {
    let c = Config::from_text("# pair\npq = 1/2\nr=0.95  # trailing\n\nsegment = s2\n").unwrap();
    assert_eq!(c.pq().unwrap(), (1, 2));
    assert_eq!(c.get_f64("r").unwrap(), 0.95);
    let s = c.pair_spec().unwrap();
    assert_eq!((s.p, s.q, s.segment), (1, 2, Segment::S2));
    assert!(Config::from_text("nonsense").is_err());
    assert!(Config::from_text("colour = red").is_err());
    let mut c = Config::default();
    c.set("crit_plus", "4/7").unwrap();
    assert!(c.pair_spec().is_err());
    c.set("crit_minus", "1/7").unwrap();
    assert!(c.pair_spec().unwrap().critical.is_some());
    assert_eq!(c.levels().unwrap(), (-2, 2));
    assert_eq!(c.rs().unwrap(), vec![0.9, 0.99, 0.999]);
    let text = c.render();
    assert!(text.contains("crit_plus = 4/7\n") && text.contains("threads = "));
}

#[test]
fn solve_pair_reports_with_header() {
    let path = tmp("pair.txt");
    let st = bin().args(["solve-pair", "--config"]).arg(write_cfg("pq = 1/2\nr = 0.8\n")).args(["--r", "0.7", "--out"]).arg(&path).status().unwrap();
    assert_eq!(st.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# quadtess "));
    assert!(text.contains("# command = solve-pair\n"));
    // the flag wins over the file
    assert!(text.contains("# r = 0.7\n") && text.contains("# pq = 1/2\n"));
    assert!(text.contains("pair {"));
}

fn write_cfg(body: &str) -> PathBuf {
    let p = tmp(&format!("cfg-{}.txt", body.len()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(bin().args(["solve-pair", "--r", "1.5"]).status().unwrap().code(), Some(2));
    assert_eq!(bin().args(["solve-pair", "--set", "bogus=1"]).status().unwrap().code(), Some(2));
    assert_eq!(bin().args(["render", "--format", "gif"]).status().unwrap().code(), Some(2));
    assert_eq!(bin().args(["frobnicate"]).status().unwrap().code(), Some(2));
}

#[test]
fn render_outputs_carry_the_config() {
    let png = tmp("t.png");
    let st = bin()
        .env("QUADTESS_THREADS", "2")
        .args(["render", "--pq", "1/2", "--set", "px=60", "--set", "py=40", "--out"])
        .arg(&png)
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(0));
    let h = read_png_header(&png).unwrap().unwrap();
    assert!(h.contains("command = render") && h.contains("pq = 1/2") && h.contains("threads = 2"));

    let out = bin().args(["render", "--format", "svg", "--depth", "2", "--out", "-"]).output().unwrap();
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.contains("<!--\nquadtess") && svg.contains("format = svg") && svg.contains("<path"));

    let out = bin().args(["render", "--format", "csv", "--depth", "1"]).output().unwrap();
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("# quadtess"));
    let body: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body[0], "theta,sig,depth,diameter,landing_re,landing_im,boundary_points");
    // depth ≤ 1: two roots and the children
    assert!(body.len() >= 4);
}

#[test]
fn verify_passes_and_converge_fails_out_of_order() {
    let out = bin().args(["verify", "--pq", "1/2", "--suite", "residuals"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS phi_f equation") && text.contains("result = pass"));

    let quick = ["--pq", "1/2", "--set", "grid=6", "--set", "julia_angles=4", "--set", "panel_depth=1"];
    let st = bin().arg("converge").args(quick).args(["--rs", "0.99,0.9"]).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
    let st = bin().arg("converge").args(quick).args(["--rs", "0.9,0.99"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    let csv = String::from_utf8(st.stdout).unwrap();
    assert!(csv.contains("# command = converge") && csv.contains("r,exterior_sup"));
}
