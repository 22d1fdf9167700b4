//! Gorenstein criteria for convex and stack polyominoes.

use std::fmt;

use serde::Serialize;

use crate::bigraph::{
    write_members, BipartiteGraph, Side, SideSet, SideSubset, DEFAULT_SUBSET_BITS,
};
use crate::error::{Error, Result};
use crate::polyomino::{Polyomino, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolatorKind {
    /// `|N(T)| < |T|` for a one-sided subset.
    Hall,
    /// An admissible `T` with `|N_Y(T)| != |T| + 1`.
    Cardinality,
    /// `m != n`.
    Unbalanced,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violator {
    pub kind: ViolatorKind,
    pub subset: SideSubset,
    /// `|N(T)|` (for `Unbalanced`: `n`).
    pub observed: u32,
    /// `|T|` for Hall violations, `|T| + 1` for cardinality ones (for `Unbalanced`: `m`).
    pub required: u32,
}

impl fmt::Display for Violator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolatorKind::Unbalanced => {
                write!(f, "m={} differs from n={}", self.required, self.observed)
            }
            ViolatorKind::Hall => {
                let other = match self.subset.side {
                    Side::X => 'Y',
                    Side::Y => 'X',
                };
                write!(
                    f,
                    "Hall condition fails: T={}, |N_{other}(T)|={}, need at least {}",
                    self.subset, self.observed, self.required
                )
            }
            ViolatorKind::Cardinality => write!(
                f,
                "T={}, |N_Y(T)|={}, need {}",
                self.subset, self.observed, self.required
            ),
        }
    }
}

/// An admissible subset `T ⊂ X` that satisfied `|N_Y(T)| = |T| + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub subset: SideSet,
    pub neighbors: SideSet,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_members(f, 'x', self.subset)?;
        f.write_str(" with N_Y(T)=")?;
        write_members(f, 'y', self.neighbors)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GorensteinVerdict {
    pub is_gorenstein: bool,
    pub violator: Option<Violator>,
    pub certificates: Vec<Certificate>,
}

impl GorensteinVerdict {
    fn fail(violator: Violator, certificates: Vec<Certificate>) -> Self {
        GorensteinVerdict { is_gorenstein: false, violator: Some(violator), certificates }
    }

    fn pass(certificates: Vec<Certificate>) -> Self {
        GorensteinVerdict { is_gorenstein: true, violator: None, certificates }
    }
}

/// Why a subset `∅ ≠ T ⊊ X` is, or is not, subject to the cardinality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetClass {
    /// `N_Y(T)` is not a neighbour vertical interval.
    NotVerticalInterval,
    /// `N_X(Y \ N_Y(T)) != X \ T`.
    ComplementMismatch,
    /// `N_X(Y \ N_Y(T)) = X \ T` but it is not a neighbour horizontal interval.
    NotHorizontalInterval,
    /// Both conditions hold; `|N_Y(T)| = |T| + 1` is required.
    Admissible,
}

pub fn classify_subset(g: &BipartiteGraph, t: SideSet) -> SubsetClass {
    if !g.is_neighbor_vertical_interval(t) {
        return SubsetClass::NotVerticalInterval;
    }
    let rest_y = g.neighbors_y(t).complement(g.n());
    if g.neighbors_x(rest_y) != t.complement(g.m()) {
        return SubsetClass::ComplementMismatch;
    }
    if !g.is_neighbor_horizontal_interval(rest_y) {
        return SubsetClass::NotHorizontalInterval;
    }
    SubsetClass::Admissible
}

pub fn is_gorenstein_convex(p: &Polyomino) -> Result<GorensteinVerdict> {
    is_gorenstein_convex_with_limit(p, DEFAULT_SUBSET_BITS)
}

/// The general convex criterion: Hall on both sides, then `|N_Y(T)| = |T| + 1`
/// for every admissible `T` (see [`classify_subset`]), sweeping masks upward.
pub fn is_gorenstein_convex_with_limit(p: &Polyomino, max_bits: u32) -> Result<GorensteinVerdict> {
    if !p.is_convex() {
        return Err(Error::NotConvex);
    }
    let g = BipartiteGraph::from_polyomino(p)?;
    if let Some(t) = g.hall_violator(max_bits)? {
        let violator = Violator {
            kind: ViolatorKind::Hall,
            subset: t,
            observed: g.neighbors(t).members.len(),
            required: t.members.len(),
        };
        return Ok(GorensteinVerdict::fail(violator, Vec::new()));
    }
    let mut certificates = Vec::new();
    for mask in 1..(1u64 << g.m()) - 1 {
        let t = SideSet(mask);
        if classify_subset(&g, t) != SubsetClass::Admissible {
            continue;
        }
        let ny = g.neighbors_y(t);
        if ny.len() != t.len() + 1 {
            let violator = Violator {
                kind: ViolatorKind::Cardinality,
                subset: SideSubset { side: Side::X, members: t },
                observed: ny.len(),
                required: t.len() + 1,
            };
            return Ok(GorensteinVerdict::fail(violator, certificates));
        }
        certificates.push(Certificate { subset: t, neighbors: ny });
    }
    Ok(GorensteinVerdict::pass(certificates))
}

fn unbalanced(p: &Polyomino) -> Violator {
    Violator {
        kind: ViolatorKind::Unbalanced,
        subset: SideSubset { side: Side::X, members: SideSet::full(p.m()) },
        observed: p.n(),
        required: p.m(),
    }
}

/// The stack criterion over subsets: `m = n`, and `|N_Y(T)| = |T| + 1` for every
/// nonempty `T ⊆ X` with `N_Y(T) != Y` whose columns outside `T` all reach
/// strictly higher than every column of `T`.
///
/// In a stack `N_Y(x_i) = {y_1, ..., y_height(i)}`, so the qualifying sets are
/// exactly `T_H = {x : height(x) <= H}` for the height values `H < n`; they are
/// visited by increasing `H`.
pub fn is_gorenstein_stack_subsets(p: &Polyomino) -> Result<GorensteinVerdict> {
    if !p.is_stack() {
        return Err(Error::NotStack);
    }
    if p.m() != p.n() {
        return Ok(GorensteinVerdict::fail(unbalanced(p), Vec::new()));
    }
    let heights = p.heights();
    let mut levels: Vec<u32> = heights.iter().copied().filter(|&h| h < p.n()).collect();
    levels.sort_unstable();
    levels.dedup();
    let mut certificates = Vec::new();
    for level in levels {
        let members: Vec<u32> =
            (1..=p.m()).filter(|&i| heights[(i - 1) as usize] <= level).collect();
        let t = SideSet::of(&members);
        let ny = SideSet::full(level);
        if ny.len() != t.len() + 1 {
            let violator = Violator {
                kind: ViolatorKind::Cardinality,
                subset: SideSubset { side: Side::X, members: t },
                observed: ny.len(),
                required: t.len() + 1,
            };
            return Ok(GorensteinVerdict::fail(violator, certificates));
        }
        certificates.push(Certificate { subset: t, neighbors: ny });
    }
    Ok(GorensteinVerdict::pass(certificates))
}

/// The inside-corner criterion: `m = n`, and for each inside corner `(r, t)` the
/// cells in rows `>= t` span a square vertex box.
pub fn is_gorenstein_stack_corners(p: &Polyomino) -> Result<bool> {
    Ok(first_corner_violation(p)?.is_none() && p.m() == p.n())
}

/// The first inside corner (lexicographically) whose upper part is not square.
pub fn first_corner_violation(p: &Polyomino) -> Result<Option<Vertex>> {
    if !p.is_stack() {
        return Err(Error::NotStack);
    }
    for v in p.corners().inside {
        let upper = p.cells_at_or_above(v.j)?;
        if upper.m() != upper.n() {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_cell_is_gorenstein() {
        let p = fixtures::load("single_cell");
        let v = is_gorenstein_convex(&p).unwrap();
        assert!(v.is_gorenstein && v.certificates.is_empty());
        assert!(is_gorenstein_stack_subsets(&p).unwrap().is_gorenstein);
        assert!(is_gorenstein_stack_corners(&p).unwrap());
    }

    #[test]
    fn fig8_violator() {
        let v = is_gorenstein_convex(&fixtures::load("fig8")).unwrap();
        let bad = v.violator.unwrap();
        assert_eq!(bad.kind, ViolatorKind::Cardinality);
        assert_eq!(bad.subset.members, SideSet::of(&[4, 5, 6]));
        assert_eq!((bad.observed, bad.required), (3, 4));
        assert_eq!(bad.to_string(), "T={x4,x5,x6}, |N_Y(T)|=3, need 4");
    }

    #[test]
    fn fig9_certificates() {
        let v = is_gorenstein_convex(&fixtures::load("fig9")).unwrap();
        assert!(v.is_gorenstein);
        let got: Vec<_> = v.certificates.iter().map(|c| (c.subset, c.neighbors)).collect();
        assert_eq!(
            got,
            vec![
                (SideSet::of(&[4]), SideSet::of(&[2, 3])),
                (SideSet::of(&[1, 4]), SideSet::of(&[1, 2, 3])),
            ]
        );
    }

    #[test]
    fn fig12_pair() {
        let a = fixtures::load("fig12_a");
        let b = fixtures::load("fig12_b");
        assert!(is_gorenstein_stack_subsets(&a).unwrap().is_gorenstein);
        assert!(is_gorenstein_stack_corners(&a).unwrap());
        assert!(!is_gorenstein_stack_subsets(&b).unwrap().is_gorenstein);
        assert!(!is_gorenstein_stack_corners(&b).unwrap());
    }

    #[test]
    fn rectangles() {
        let sq = Polyomino::rectangle(4, 4).unwrap();
        assert!(is_gorenstein_stack_corners(&sq).unwrap());
        assert!(is_gorenstein_convex(&sq).unwrap().is_gorenstein);
        let r = Polyomino::rectangle(2, 3).unwrap();
        assert!(!is_gorenstein_stack_corners(&r).unwrap());
        let v = is_gorenstein_convex(&r).unwrap();
        assert_eq!(v.violator.unwrap().kind, ViolatorKind::Hall);
        let v = is_gorenstein_stack_subsets(&r).unwrap();
        assert_eq!(v.violator.unwrap().kind, ViolatorKind::Unbalanced);
    }

    #[test]
    fn preconditions() {
        let p = fixtures::load("fig1_left");
        assert_eq!(is_gorenstein_convex(&p), Err(Error::NotConvex));
        let q = fixtures::load("fig9");
        assert_eq!(is_gorenstein_stack_subsets(&q), Err(Error::NotStack));
        assert_eq!(is_gorenstein_stack_corners(&q), Err(Error::NotStack));
        let wide = Polyomino::rectangle(30, 2).unwrap();
        assert!(matches!(is_gorenstein_convex(&wide), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn subset_classification_modes() {
        let g = BipartiteGraph::from_polyomino(&fixtures::load("fig9")).unwrap();
        assert_eq!(classify_subset(&g, SideSet::of(&[4])), SubsetClass::Admissible);
        let kinds: Vec<_> = (1..15u64).map(|m| classify_subset(&g, SideSet(m))).collect();
        assert!(kinds.contains(&SubsetClass::ComplementMismatch));
    }
}
