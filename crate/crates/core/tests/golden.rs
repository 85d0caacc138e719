//! Canonical renderings of the generators, compared against checked-in files.
//! Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use e3sov::classical_phase::OrbitParams;
use e3sov::e3_representation::build_generators;
use e3sov::Scalar;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn render_all(orbit: &OrbitParams) -> String {
    let g = build_generators(orbit);
    let mut out = format!("c0 = {}\nc1 = {}\n", orbit.c0, orbit.c1);
    for (name, op) in g.named() {
        out.push_str(&format!("\n[{name}]\n{}", op.render()));
    }
    out
}

fn check(file: &str, orbit: &OrbitParams) {
    let path = golden_dir().join(file);
    let actual = render_all(orbit);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, &actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "rendering of {file} changed");
}

#[test]
fn degenerate_orbit_generators() {
    check("generators_degenerate.txt", &OrbitParams::degenerate());
}

#[test]
fn generic_orbit_generators() {
    check("generators_c0_9_4_c1_9.txt", &OrbitParams::quantized(Scalar::ratio(3, 2), 2));
}
