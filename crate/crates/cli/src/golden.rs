//! The manifest of expected values, embedded at build time.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::report::Provenance;

pub const MANIFEST: &str = include_str!("../data/golden.toml");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Compare {
    #[default]
    Exact,
    Report,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct GoldenEntry {
    pub name: String,
    pub case: String,
    pub criterion: u8,
    pub provenance: Provenance,
    pub value: String,
    #[serde(default)]
    pub compare: Compare,
}

#[derive(Deserialize)]
struct Manifest {
    check: Vec<GoldenEntry>,
}

pub fn entries() -> &'static [GoldenEntry] {
    static CELL: OnceLock<Vec<GoldenEntry>> = OnceLock::new();
    CELL.get_or_init(|| {
        toml::from_str::<Manifest>(MANIFEST).expect("embedded golden manifest parses").check
    })
}

pub fn get(name: &str) -> Option<&'static GoldenEntry> {
    entries().iter().find(|e| e.name == name)
}

pub fn for_case(case: &str) -> impl Iterator<Item = &'static GoldenEntry> + '_ {
    entries().iter().filter(move |e| e.case == case)
}
