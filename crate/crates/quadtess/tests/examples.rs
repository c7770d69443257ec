// Every example runs, with small sizes where it takes them.

#[path = "../examples/rotation_angles.rs"]
mod rotation_angles;
#[path = "../examples/solve_pair.rs"]
mod solve_pair;
#[path = "../examples/linearize.rs"]
mod linearize;
#[path = "../examples/degenerating_arcs.rs"]
mod degenerating_arcs;
#[path = "../examples/tessellate_png.rs"]
mod tessellate_png;
#[path = "../examples/panels_svg.rs"]
mod panels_svg;
#[path = "../examples/edge_sharing.rs"]
mod edge_sharing;
#[path = "../examples/semiconjugacy.rs"]
mod semiconjugacy;
#[path = "../examples/convergence.rs"]
mod convergence;
#[path = "../examples/kappa.rs"]
mod kappa;

fn scratch(name: &str) -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("quadtess-examples-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn angles_and_pairs() {
    rotation_angles::run_example(1, 3).unwrap();
    rotation_angles::run_example(2, 5).unwrap();
    solve_pair::run_example(1, 2, 0.8).unwrap();
}

#[test]
fn linearizers_and_arcs() {
    linearize::run_example().unwrap();
    degenerating_arcs::run_example().unwrap();
    appendix::run_example().unwrap();
}

#[test]
fn image_outputs_carry_headers() {
    let dir = scratch("img");
    for p in tessellate_png::run_example(&dir, 48, 36).unwrap() {
        let h = quadtess::cli::output::read_png_header(&p).unwrap().unwrap();
        assert!(h.contains("command = tessellate_png") && h.contains("px = 48"));
    }
    for p in panels_svg::run_example(&dir, 2).unwrap() {
        assert!(std::fs::read_to_string(p).unwrap().contains("depth = 2"));
    }
}

#[test]
fn tiles_and_semiconjugacy() {
    edge_sharing::run_example(6).unwrap();
    semiconjugacy::run_example().unwrap();
    kappa::run_example(4).unwrap();
    let out = convergence::run_example("0.9,0.99", true).unwrap();
    assert_eq!(out, quadtess::cli::Outcome::Pass);
}
