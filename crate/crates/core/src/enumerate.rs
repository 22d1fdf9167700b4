//! Exhaustive generators used by the property suites.

use std::collections::BTreeSet;

use crate::polyomino::{Cell, Polyomino};

/// All fixed polyominoes (distinct up to translation) with `1..=max_cells` cells.
pub fn polyominoes(max_cells: usize) -> Vec<Polyomino> {
    let mut all = Vec::new();
    let mut layer: BTreeSet<Polyomino> =
        BTreeSet::from([Polyomino::from_cells([Cell::new(1, 1)]).unwrap()]);
    for size in 1..=max_cells {
        all.extend(layer.iter().cloned());
        if size == max_cells {
            break;
        }
        let mut next = BTreeSet::new();
        for p in &layer {
            let cells = p.cells();
            for c in cells {
                let (col, row) = (i64::from(c.col), i64::from(c.row));
                for (nc, nr) in [(col + 1, row), (col - 1, row), (col, row + 1), (col, row - 1)] {
                    if nc >= 1 && nr >= 1 && cells.contains(&Cell::new(nc as u32, nr as u32)) {
                        continue;
                    }
                    let grown = cells
                        .iter()
                        .map(|c| (i64::from(c.col), i64::from(c.row)))
                        .chain(std::iter::once((nc, nr)));
                    next.insert(Polyomino::from_coords(grown).expect("growth stays connected"));
                }
            }
        }
        layer = next;
    }
    all
}

pub fn convex_polyominoes(max_cells: usize) -> Vec<Polyomino> {
    polyominoes(max_cells).into_iter().filter(Polyomino::is_convex).collect()
}

/// All stack polyominoes with `1..=max_cells` cells, generated from unimodal
/// sequences of column heights.
pub fn stack_polyominoes(max_cells: usize) -> Vec<Polyomino> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    compositions(max_cells as u32, &mut current, &mut |heights| {
        if is_unimodal(heights) {
            out.push(Polyomino::from_column_heights(heights).expect("positive heights"));
        }
    });
    out
}

fn compositions(budget: u32, current: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
    for part in 1..=budget {
        current.push(part);
        visit(current);
        compositions(budget - part, current, visit);
        current.pop();
    }
}

pub(crate) fn is_unimodal(seq: &[u32]) -> bool {
    let peak = seq.windows(2).position(|w| w[1] < w[0]).unwrap_or(seq.len().saturating_sub(1));
    seq[peak..].windows(2).all(|w| w[1] <= w[0])
}
