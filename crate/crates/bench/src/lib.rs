//! Benchmarks for the onboarding pipeline; see `benches/`.

use std::path::PathBuf;

pub fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// An SVG with `n` circles laid out on a grid.
pub fn synthetic_svg(n: usize) -> String {
    let mut out = String::from(r#"<svg xmlns="http://www.w3.org/2000/svg" width="1000" height="800"><g class="plot" transform="translate(50,40)">"#);
    for i in 0..n {
        let (x, y) = ((i % 40) as f64 * 22.0, (i / 40) as f64 * 15.0);
        out.push_str(&format!(r#"<circle class="point" cx="{x}" cy="{y}" r="{}"/>"#, 2 + i % 5));
    }
    out.push_str(r#"<text x="10" y="20" font-size="14">Total</text></g></svg>"#);
    out
}
