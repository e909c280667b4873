//! Automata shipped with the crate.

use crate::automaton::Dfao;

const ENTRIES: &[(&str, &str)] = &[
    ("thue-morse", include_str!("../automata/thue-morse.json")),
    ("rudin-shapiro", include_str!("../automata/rudin-shapiro.json")),
    ("five-state", include_str!("../automata/five-state.json")),
    ("six-state", include_str!("../automata/six-state.json")),
    ("base3-intro", include_str!("../automata/base3-intro.json")),
    ("base3-parity", include_str!("../automata/base3-parity.json")),
    ("base3-sym3", include_str!("../automata/base3-sym3.json")),
    ("cyclic3", include_str!("../automata/cyclic3.json")),
    ("length-parity", include_str!("../automata/length-parity.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parse a bundled automaton. Panics on an unknown name.
pub fn load(name: &str) -> Dfao {
    let text = source(name).unwrap_or_else(|| panic!("no bundled automaton named {name}"));
    Dfao::from_json(text).expect("bundled automata are valid")
}
