//! The polyominoes drawn in the figures of the source article, as grid text.

use crate::polyomino::Polyomino;

macro_rules! fixtures {
    ($($name:ident),* $(,)?) => {
        /// `(name, grid text)` for every bundled fixture.
        pub const ALL: &[(&str, &str)] = &[
            $((stringify!($name), include_str!(concat!("../fixtures/", stringify!($name), ".grid")))),*
        ];
    };
}

fixtures!(
    single_cell, fig1_left, fig1_right, vertical, fig5_a, fig5_b, fig6, fig8, fig9, fig11,
    fig12_a, fig12_b, fig13, fig14, ex1, ex3, figa, figb, ex6, ex7,
);

pub fn grid(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, g)| *g)
}

/// Parses a bundled fixture; panics on an unknown name.
pub fn load(name: &str) -> Polyomino {
    let text = grid(name).unwrap_or_else(|| panic!("unknown fixture {name}"));
    Polyomino::parse(text).expect("bundled fixtures are valid")
}

pub fn all() -> Vec<(&'static str, Polyomino)> {
    ALL.iter().map(|&(name, _)| (name, load(name))).collect()
}
