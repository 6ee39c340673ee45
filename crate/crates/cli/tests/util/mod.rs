#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn visahoi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_visahoi")).args(args).env_remove("VISAHOI_TEMPLATES").output().expect("spawn visahoi")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// The scatter SVG with its title text removed.
pub fn untitled_svg(dir: &Path) -> PathBuf {
    let svg = std::fs::read_to_string(fixture("scatter.plotly.svg")).unwrap();
    let start = svg.find("<text class=\"gtitle\"").unwrap();
    let end = start + svg[start..].find("</text>").unwrap() + "</text>".len();
    let path = dir.join("untitled.svg");
    std::fs::write(&path, format!("{}{}", &svg[..start], &svg[end..])).unwrap();
    path
}
