#![allow(dead_code)]

use std::path::PathBuf;

use talex::polyalgebra::parse_laurent;
use talex::presentations::{parse_pd, parse_presentation, pd_to_wirtinger, Presentation};
use talex::signature::SeifertMatrix;
use talex::QLaurent;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn pres(name: &str) -> Presentation {
    parse_presentation(&fixture(&format!("{name}.pres"))).unwrap()
}

pub fn pd(name: &str) -> Presentation {
    pd_to_wirtinger(&parse_pd(&fixture(&format!("{name}.pd"))).unwrap()).unwrap()
}

pub fn alex(name: &str) -> QLaurent {
    parse_laurent(fixture(&format!("{name}.alex")).trim(), "t").unwrap()
}

pub fn seifert(name: &str) -> SeifertMatrix {
    SeifertMatrix::parse(&fixture(&format!("{name}.seifert"))).unwrap()
}

/// Every fixture knot group, labelled.
pub fn fixture_groups() -> Vec<(&'static str, Presentation)> {
    vec![
        ("3_1 pres", pres("3_1")),
        ("3_1 pd", pd("3_1")),
        ("8_20 pd", pd("8_20")),
        ("9_35 pres", pres("9_35")),
        ("9_35 pd", pd("9_35")),
    ]
}
