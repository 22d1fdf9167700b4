//! Oracles shared by the integration tests. Each works from the cell or vertex
//! set alone and shares no code with the library's algorithms.
#![allow(dead_code)]

use std::collections::BTreeSet;

use polyideal::{Cell, Polyomino, Vertex};

/// Maximum number of non-attacking rooks. For convex shapes rows and columns
/// are intervals, so this is a maximum matching of cell rows to cell columns.
pub fn rook_number(p: &Polyomino) -> u32 {
    fn augment(row: u32, cells: &[Cell], seen: &mut [bool], owner: &mut [Option<u32>]) -> bool {
        for c in cells.iter().filter(|c| c.row == row) {
            let col = c.col as usize;
            if seen[col] {
                continue;
            }
            seen[col] = true;
            if owner[col].is_none_or(|r| augment(r, cells, seen, owner)) {
                owner[col] = Some(row);
                return true;
            }
        }
        false
    }
    let cells: Vec<Cell> = p.cells().iter().copied().collect();
    let mut owner = vec![None; p.m() as usize + 1];
    (1..p.n())
        .filter(|&row| augment(row, &cells, &mut vec![false; p.m() as usize + 1], &mut owner))
        .count() as u32
}

/// `H(0), ..., H(kmax)` of the edge ring: the number of distinct bidegree
/// vectors of products of `k` variables `x_{ij} -> s_i t_j`.
pub fn hilbert_function(p: &Polyomino, kmax: usize) -> Vec<u64> {
    let vs: Vec<Vertex> = p.vertices().into_iter().collect();
    let m = p.m() as usize;
    let mut layer: BTreeSet<Vec<u8>> = BTreeSet::from([vec![0; m + p.n() as usize]]);
    let mut out = vec![1];
    for _ in 0..kmax {
        let mut next = BTreeSet::new();
        for deg in &layer {
            for v in &vs {
                let mut d = deg.clone();
                d[v.i as usize - 1] += 1;
                d[m + v.j as usize - 1] += 1;
                next.insert(d);
            }
        }
        out.push(next.len() as u64);
        layer = next;
    }
    out
}

/// `H(k)` predicted by `h(t) / (1 - t)^d`, for `k = 0..=kmax`.
pub fn hilbert_from_h(h: &[i64], d: u64, kmax: usize) -> Vec<i64> {
    let binom = |n: i64, k: i64| -> i64 {
        if k < 0 || n < k {
            return 0;
        }
        (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
    };
    (0..=kmax as i64)
        .map(|k| h.iter().enumerate().map(|(i, &hi)| hi * binom(k - i as i64 + d as i64 - 1, d as i64 - 1)).sum())
        .collect()
}

/// Facets of the complex, by growing independent sets one vertex at a time.
pub fn facets_brute(vertices: &[Vertex], forbidden: &BTreeSet<(Vertex, Vertex)>) -> BTreeSet<BTreeSet<Vertex>> {
    let n = vertices.len();
    assert!(n <= 24);
    let clash = |a: Vertex, b: Vertex| forbidden.contains(&(a, b)) || forbidden.contains(&(b, a));
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let set: Vec<Vertex> = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| vertices[k]).collect();
        let independent = set.iter().enumerate().all(|(x, &a)| set[x + 1..].iter().all(|&b| !clash(a, b)));
        if !independent {
            continue;
        }
        let maximal = (0..n).filter(|k| mask >> k & 1 == 0).all(|k| set.iter().any(|&a| clash(a, vertices[k])));
        if maximal {
            out.insert(set.into_iter().collect());
        }
    }
    out
}
