//! Bundled graph6 files, spectra and reference tables.
//!
//! The directory defaults to the crate's `fixtures/` and can be overridden
//! with `SPECIND_FIXTURES`.

use std::path::PathBuf;

use crate::graphs::{parse_graph6, Graph};
use crate::spectra::Spectrum;
use crate::{Error, Result};

pub fn fixtures_dir() -> PathBuf {
    std::env::var_os("SPECIND_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

fn read(sub: &str, file: &str) -> Result<String> {
    let path = fixtures_dir().join(sub).join(file);
    std::fs::read_to_string(&path).map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))
}

pub fn graph_exists(name: &str) -> bool {
    fixtures_dir().join("graphs").join(format!("{name}.g6")).is_file()
}

/// `graphs/<name>.g6`, labelled with `name`.
pub fn load_graph(name: &str) -> Result<Graph> {
    let text = read("graphs", &format!("{name}.g6"))?;
    Ok(parse_graph6(text.trim())?.with_label(name))
}

/// `spectra/<name>.json`.
pub fn load_spectrum(name: &str) -> Result<Spectrum> {
    let text = read("spectra", &format!("{name}.json"))?;
    serde_json::from_str(&text).map_err(|e| Error::Fixture(format!("spectrum {name}: {e}")))
}

/// `tables/<id>.json` as raw JSON.
pub fn load_table_json(id: &str) -> Result<serde_json::Value> {
    let text = read("tables", &format!("{id}.json"))?;
    serde_json::from_str(&text).map_err(|e| Error::Fixture(format!("table {id}: {e}")))
}

pub fn graph_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixtures_dir().join("graphs"))
        .map(|rd| {
            rd.filter_map(|e| e.ok())
                .filter_map(|e| e.file_name().to_str()?.strip_suffix(".g6").map(str::to_owned))
                .collect()
        })
        .unwrap_or_default();
    names.sort();
    names
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_load() {
        assert!(graph_names().len() >= 19);
        for name in graph_names() {
            let g = load_graph(&name).unwrap();
            assert_eq!(g.label(), Some(name.as_str()));
        }
        let s = load_spectrum("higman_sims").unwrap();
        assert_eq!((s.n(), s.d()), (100, 2));
        assert!(matches!(load_graph("no_such_graph"), Err(Error::Fixture(_))));
    }
}
