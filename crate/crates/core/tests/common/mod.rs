#![allow(dead_code)]

use specind::fixtures;
use specind::spectra::{exact_family_spectrum, spectrum_default};
use specind::{FamilySpec, Graph, Spectrum};

pub struct Entry {
    pub name: String,
    pub graph: Graph,
    pub spectrum: Spectrum,
}

pub const FAMILIES: &[&str] = &[
    "cycle:4",
    "cycle:5",
    "cycle:6",
    "cycle:7",
    "cycle:9",
    "cycle:12",
    "complete:5",
    "complete_bipartite:3,3",
    "complete_bipartite:2,5",
    "hypercube:2",
    "hypercube:3",
    "hypercube:4",
    "hypercube:5",
    "hypercube:6",
    "hypercube:8",
    "petersen",
    "kneser:6,2",
    "kneser:7,2",
    "kneser:8,3",
    "odd:4",
    "odd:5",
    "odd:6",
    "circulant:10;1,2",
    "circulant:13;1,5",
    "circulant:12;1,5",
    "circulant:17;1,4",
    "circulant:20;1,3,7",
    "prism:5",
    "prism:6",
    "prism:8",
    "prism:11",
    "moebius_ladder:4",
    "moebius_ladder:7",
    "moebius_ladder:10",
];

pub fn family(spec: &str) -> Entry {
    let f: FamilySpec = spec.parse().unwrap();
    let graph = f.generate().unwrap();
    let spectrum = exact_family_spectrum(&f).unwrap();
    Entry {
        name: spec.to_owned(),
        graph,
        spectrum,
    }
}

pub fn fixture(name: &str) -> Entry {
    let graph = fixtures::load_graph(name).unwrap();
    let spectrum = spectrum_default(&graph).unwrap();
    Entry {
        name: name.to_owned(),
        graph,
        spectrum,
    }
}

/// Generated families plus every bundled graph6 fixture.
pub fn corpus() -> Vec<Entry> {
    let mut out: Vec<Entry> = FAMILIES.iter().map(|s| family(s)).collect();
    out.extend(fixtures::graph_names().iter().map(|n| fixture(n)));
    out
}
