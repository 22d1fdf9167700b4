//! The bipartite graph `G_P` on `X ∪ Y` whose edges `{x_i, y_j}` are the
//! vertices `(i, j)` of a polyomino.
//!
//! Subsets of either side are 64-bit masks: bit `k` stands for `x_{k+1}`
//! (respectively `y_{k+1}`). Directed cuts take every arrow to point from `Y`
//! into `X`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyomino::{Polyomino, Vertex};

/// Largest side size representable in a [`SideSet`].
pub const MAX_SIDE: u32 = 62;
/// Default bound on `max(m, n)` for one-sided subset sweeps.
pub const DEFAULT_SUBSET_BITS: u32 = 24;
/// Default bound on `m + n` for the directed-cut packing search.
pub const DEFAULT_CUT_LIMIT: u32 = 14;

/// Fixed-width set of indices on one side of the graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SideSet(pub u64);

impl SideSet {
    pub const EMPTY: SideSet = SideSet(0);

    /// `{1, ..., k}` (1-based members).
    pub fn full(k: u32) -> Self {
        SideSet(if k == 0 { 0 } else { u64::MAX >> (64 - k) })
    }

    /// Builds a set from 1-based indices.
    pub fn of(members: &[u32]) -> Self {
        SideSet(members.iter().fold(0, |acc, &k| acc | 1 << (k - 1)))
    }

    pub fn contains(self, k: u32) -> bool {
        k >= 1 && self.0 >> (k - 1) & 1 == 1
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: SideSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SideSet) -> SideSet {
        SideSet(self.0 | other.0)
    }

    pub fn intersection(self, other: SideSet) -> SideSet {
        SideSet(self.0 & other.0)
    }

    /// Complement inside `{1, ..., k}`.
    pub fn complement(self, k: u32) -> SideSet {
        SideSet(!self.0 & SideSet::full(k).0)
    }

    pub fn min(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max(self) -> Option<u32> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// 1-based members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let k = bits.trailing_zeros();
            bits &= bits - 1;
            Some(k + 1)
        })
    }

    /// Members `lo..=hi` form the whole set, with `lo < hi`.
    fn is_run_of_two_or_more(self) -> bool {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => lo < hi && self.len() == hi - lo + 1,
            _ => false,
        }
    }
}

impl fmt::Debug for SideSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for SideSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn label(self) -> char {
        match self {
            Side::X => 'x',
            Side::Y => 'y',
        }
    }
}

/// A subset of one side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SideSubset {
    pub side: Side,
    pub members: SideSet,
}

impl fmt::Display for SideSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_members(f, self.side.label(), self.members)
    }
}

pub(crate) fn write_members(f: &mut fmt::Formatter<'_>, label: char, set: SideSet) -> fmt::Result {
    f.write_str("{")?;
    for (idx, k) in set.iter().enumerate() {
        if idx > 0 {
            f.write_str(",")?;
        }
        write!(f, "{label}{k}")?;
    }
    f.write_str("}")
}

/// A subset `T = T^x ∪ T^y` of the whole vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct MixedSubset {
    pub tx: SideSet,
    pub ty: SideSet,
}

impl MixedSubset {
    pub fn new(tx: SideSet, ty: SideSet) -> Self {
        MixedSubset { tx, ty }
    }

    pub fn is_empty(self) -> bool {
        self.tx.is_empty() && self.ty.is_empty()
    }
}

impl fmt::Display for MixedSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_members(f, 'x', self.tx)?;
        f.write_str("∪")?;
        write_members(f, 'y', self.ty)
    }
}

/// The edge set `δ⁺(T)` of a directed cut together with one source `T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectedCut {
    pub edges: BTreeSet<Vertex>,
    pub source: MixedSubset,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutPacking {
    pub count: usize,
    pub cuts: Vec<DirectedCut>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    m: u32,
    n: u32,
    /// `adj_x[i-1]`: neighbours of `x_i` in `Y`.
    adj_x: Vec<SideSet>,
    adj_y: Vec<SideSet>,
    /// `vstep[i-1]` has bit `j` iff `(i,j)-(i,j+1)` is an edge of the polyomino.
    vstep: Vec<SideSet>,
    /// `hstep[j-1]` has bit `i` iff `(i,j)-(i+1,j)` is an edge of the polyomino.
    hstep: Vec<SideSet>,
    edges: Vec<Vertex>,
}

impl BipartiteGraph {
    pub fn from_polyomino(p: &Polyomino) -> Result<Self> {
        let (m, n) = (p.m(), p.n());
        let side = m.max(n);
        if side > MAX_SIDE {
            return Err(Error::too_large("vertex box side", side as usize, MAX_SIDE as usize));
        }
        let mut adj_x = vec![SideSet::EMPTY; m as usize];
        let mut adj_y = vec![SideSet::EMPTY; n as usize];
        let edges: Vec<Vertex> = p.vertices().into_iter().collect();
        for v in &edges {
            adj_x[(v.i - 1) as usize].0 |= 1 << (v.j - 1);
            adj_y[(v.j - 1) as usize].0 |= 1 << (v.i - 1);
        }
        let vstep = (1..=m)
            .map(|i| SideSet::of(&(1..n).filter(|&j| p.has_vertical_edge(i, j)).collect::<Vec<_>>()))
            .collect();
        let hstep = (1..=n)
            .map(|j| SideSet::of(&(1..m).filter(|&i| p.has_horizontal_edge(i, j)).collect::<Vec<_>>()))
            .collect();
        Ok(BipartiteGraph { m, n, adj_x, adj_y, vstep, hstep, edges })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Edges `(i, j)` in lexicographic order.
    pub fn edges(&self) -> &[Vertex] {
        &self.edges
    }

    pub fn has_edge(&self, i: u32, j: u32) -> bool {
        i >= 1 && i <= self.m && self.adj_x[(i - 1) as usize].contains(j)
    }

    pub fn all_x(&self) -> SideSet {
        SideSet::full(self.m)
    }

    pub fn all_y(&self) -> SideSet {
        SideSet::full(self.n)
    }

    pub fn neighbors_y(&self, t: SideSet) -> SideSet {
        t.iter().fold(SideSet::EMPTY, |acc, i| acc.union(self.adj_x[(i - 1) as usize]))
    }

    pub fn neighbors_x(&self, u: SideSet) -> SideSet {
        u.iter().fold(SideSet::EMPTY, |acc, j| acc.union(self.adj_y[(j - 1) as usize]))
    }

    pub fn neighbors(&self, s: SideSubset) -> SideSubset {
        match s.side {
            Side::X => SideSubset { side: Side::Y, members: self.neighbors_y(s.members) },
            Side::Y => SideSubset { side: Side::X, members: self.neighbors_x(s.members) },
        }
    }

    /// `N_Y(T)` is a run `y_a..y_b` (`a < b`) and each step `y_k -> y_{k+1}` is
    /// a vertical edge of the polyomino in some column of `T`.
    pub fn is_neighbor_vertical_interval(&self, t: SideSet) -> bool {
        let ny = self.neighbors_y(t);
        if !ny.is_run_of_two_or_more() {
            return false;
        }
        let (lo, hi) = (ny.min().unwrap(), ny.max().unwrap());
        (lo..hi).all(|k| t.iter().any(|x| self.vstep[(x - 1) as usize].contains(k)))
    }

    /// Mirror image of [`Self::is_neighbor_vertical_interval`] for `N_X(U)`.
    pub fn is_neighbor_horizontal_interval(&self, u: SideSet) -> bool {
        let nx = self.neighbors_x(u);
        if !nx.is_run_of_two_or_more() {
            return false;
        }
        let (lo, hi) = (nx.min().unwrap(), nx.max().unwrap());
        (lo..hi).all(|k| u.iter().any(|y| self.hstep[(y - 1) as usize].contains(k)))
    }

    /// Connectivity of the induced subgraph on `W` (`W` nonempty).
    pub fn induced_connected(&self, w: MixedSubset) -> bool {
        let start = if let Some(x) = w.tx.min() {
            MixedSubset::new(SideSet::of(&[x]), SideSet::EMPTY)
        } else if let Some(y) = w.ty.min() {
            MixedSubset::new(SideSet::EMPTY, SideSet::of(&[y]))
        } else {
            return false;
        };
        let mut seen = start;
        let mut frontier = start;
        while !frontier.is_empty() {
            let ny = self.neighbors_y(frontier.tx).intersection(w.ty);
            let nx = self.neighbors_x(frontier.ty).intersection(w.tx);
            frontier = MixedSubset::new(
                SideSet(nx.0 & !seen.tx.0),
                SideSet(ny.0 & !seen.ty.0),
            );
            seen = MixedSubset::new(seen.tx.union(frontier.tx), seen.ty.union(frontier.ty));
        }
        seen == w
    }

    /// Whether the induced subgraph on `W` has at least one edge.
    pub fn induced_has_edge(&self, w: MixedSubset) -> bool {
        !self.neighbors_y(w.tx).intersection(w.ty).is_empty()
    }

    pub fn is_connected(&self) -> bool {
        self.induced_connected(MixedSubset::new(self.all_x(), self.all_y()))
    }

    /// Connected, and still connected after deleting any single vertex.
    pub fn is_two_connected(&self) -> bool {
        let all = MixedSubset::new(self.all_x(), self.all_y());
        if !self.induced_connected(all) {
            return false;
        }
        let without_x = (1..=self.m).all(|i| {
            self.induced_connected(MixedSubset::new(SideSet(all.tx.0 & !(1 << (i - 1))), all.ty))
        });
        let without_y = (1..=self.n).all(|j| {
            self.induced_connected(MixedSubset::new(all.tx, SideSet(all.ty.0 & !(1 << (j - 1)))))
        });
        without_x && without_y
    }

    /// A maximum matching by augmenting paths, as edges `(i, j)` sorted by `i`.
    pub fn maximum_matching(&self) -> Vec<Vertex> {
        let mut match_of_y: Vec<Option<u32>> = vec![None; self.n as usize];
        for x in 1..=self.m {
            let mut visited = vec![false; self.n as usize];
            self.augment(x, &mut visited, &mut match_of_y);
        }
        let mut out: Vec<Vertex> = match_of_y
            .iter()
            .enumerate()
            .filter_map(|(j, x)| x.map(|i| Vertex::new(i, j as u32 + 1)))
            .collect();
        out.sort();
        out
    }

    fn augment(&self, x: u32, visited: &mut [bool], match_of_y: &mut [Option<u32>]) -> bool {
        for y in self.adj_x[(x - 1) as usize].iter() {
            let slot = (y - 1) as usize;
            if visited[slot] {
                continue;
            }
            visited[slot] = true;
            let free = match match_of_y[slot] {
                None => true,
                Some(other) => self.augment(other, visited, match_of_y),
            };
            if free {
                match_of_y[slot] = Some(x);
                return true;
            }
        }
        false
    }

    pub fn perfect_matching(&self) -> Option<Vec<Vertex>> {
        if self.m != self.n {
            return None;
        }
        let matching = self.maximum_matching();
        (matching.len() == self.m as usize).then_some(matching)
    }

    pub fn has_perfect_matching(&self) -> bool {
        self.perfect_matching().is_some()
    }

    /// First one-sided subset `T` with `|N(T)| < |T|`, sweeping `X`-subsets then
    /// `Y`-subsets in increasing mask order.
    pub fn hall_violator(&self, max_bits: u32) -> Result<Option<SideSubset>> {
        let widest = self.m.max(self.n);
        if widest > max_bits {
            return Err(Error::too_large("Hall subset sweep", widest as usize, max_bits as usize));
        }
        for (side, k) in [(Side::X, self.m), (Side::Y, self.n)] {
            for mask in 1..(1u64 << k) {
                let members = SideSet(mask);
                let s = SideSubset { side, members };
                if self.neighbors(s).members.len() < members.len() {
                    return Ok(Some(s));
                }
            }
        }
        Ok(None)
    }

    /// `{(x, y) : x ∉ T^x, y ∈ T^y}`.
    pub fn delta_plus(&self, t: MixedSubset) -> BTreeSet<Vertex> {
        self.edges.iter().copied().filter(|v| !t.tx.contains(v.i) && t.ty.contains(v.j)).collect()
    }

    /// `{(x, y) : x ∈ T^x, y ∉ T^y}`.
    pub fn delta_minus(&self, t: MixedSubset) -> BTreeSet<Vertex> {
        self.edges.iter().copied().filter(|v| t.tx.contains(v.i) && !t.ty.contains(v.j)).collect()
    }

    fn is_proper_nonempty(&self, t: MixedSubset) -> bool {
        !t.is_empty() && !(t.tx == self.all_x() && t.ty == self.all_y())
    }

    /// `T` proper and nonempty with `δ⁻(T) = ∅`.
    pub fn is_directed_cut(&self, t: MixedSubset) -> bool {
        self.is_proper_nonempty(t) && self.delta_minus(t).is_empty()
    }

    /// The structural test `N_Y(T^x) ⊆ T^y`, for proper nonempty `T`.
    pub fn is_directed_cut_by_neighbors(&self, t: MixedSubset) -> bool {
        self.is_proper_nonempty(t) && self.neighbors_y(t.tx).is_subset(t.ty)
    }

    /// Cuts `δ⁺({y_j})`, `j = 1..n`.
    pub fn row_cut_family(&self) -> Vec<DirectedCut> {
        (1..=self.n)
            .map(|j| {
                let source = MixedSubset::new(SideSet::EMPTY, SideSet::of(&[j]));
                DirectedCut { edges: self.delta_plus(source), source }
            })
            .collect()
    }

    /// Cuts `δ⁺((X \ {x_i}) ∪ Y)`, `i = 1..m`.
    pub fn column_cut_family(&self) -> Vec<DirectedCut> {
        (1..=self.m)
            .map(|i| {
                let source = MixedSubset::new(
                    SideSet(self.all_x().0 & !(1 << (i - 1))),
                    self.all_y(),
                );
                DirectedCut { edges: self.delta_plus(source), source }
            })
            .collect()
    }

    /// Every distinct nonempty directed-cut edge set with its first source in
    /// enumeration order (`T^x` ascending, then supersets of `N_Y(T^x)`).
    pub fn directed_cuts(&self, limit: u32) -> Result<Vec<DirectedCut>> {
        let (index, masks) = self.enumerate_cut_masks(limit)?;
        Ok(masks
            .into_iter()
            .map(|(mask, source)| DirectedCut { edges: self.mask_edges(mask, &index), source })
            .collect())
    }

    fn enumerate_cut_masks(&self, limit: u32) -> Result<(Vec<Vertex>, Vec<(u128, MixedSubset)>)> {
        let total = self.m + self.n;
        if total > limit {
            return Err(Error::too_large("directed-cut search (m + n)", total as usize, limit as usize));
        }
        if self.edges.len() > 128 {
            return Err(Error::too_large("directed-cut edge count", self.edges.len(), 128));
        }
        let mut seen: HashMap<u128, MixedSubset> = HashMap::new();
        let mut order = Vec::new();
        for tx_mask in 0..(1u64 << self.m) {
            let tx = SideSet(tx_mask);
            let forced = self.neighbors_y(tx);
            let free = forced.complement(self.n);
            // Enumerate every subset of `free` in increasing order.
            let mut sub = 0u64;
            loop {
                let t = MixedSubset::new(tx, SideSet(forced.0 | sub));
                if self.is_proper_nonempty(t) {
                    let mask = self.cut_mask(t);
                    if mask != 0 && !seen.contains_key(&mask) {
                        seen.insert(mask, t);
                        order.push(mask);
                    }
                }
                if sub == free.0 {
                    break;
                }
                sub = (sub.wrapping_sub(free.0)) & free.0;
            }
        }
        let masks = order.into_iter().map(|mask| (mask, seen[&mask])).collect();
        Ok((self.edges.clone(), masks))
    }

    fn cut_mask(&self, t: MixedSubset) -> u128 {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, v)| !t.tx.contains(v.i) && t.ty.contains(v.j))
            .fold(0u128, |acc, (k, _)| acc | 1 << k)
    }

    fn mask_edges(&self, mask: u128, index: &[Vertex]) -> BTreeSet<Vertex> {
        (0..index.len()).filter(|&k| mask >> k & 1 == 1).map(|k| index[k]).collect()
    }

    /// Maximum number of pairwise edge-disjoint directed cuts, with a witness.
    ///
    /// Only inclusion-minimal cut edge sets enter the packing search: any cut
    /// of a disjoint family can be shrunk to a minimal cut inside it.
    pub fn max_disjoint_directed_cuts(&self, limit: u32) -> Result<CutPacking> {
        let (index, masks) = self.enumerate_cut_masks(limit)?;
        let minimal: Vec<(u128, MixedSubset)> = masks
            .iter()
            .filter(|(a, _)| !masks.iter().any(|(b, _)| b != a && b & a == *b))
            .copied()
            .collect();
        let sets: Vec<u128> = minimal.iter().map(|(m, _)| *m).collect();
        let mut packer = Packer { sets: &sets, best: Vec::new() };
        let all: Vec<usize> = (0..sets.len()).collect();
        let universe = sets.iter().fold(0u128, |acc, s| acc | s);
        packer.search(&all, universe, &mut Vec::new());
        let cuts = packer
            .best
            .iter()
            .map(|&k| DirectedCut { edges: self.mask_edges(minimal[k].0, &index), source: minimal[k].1 })
            .collect::<Vec<_>>();
        Ok(CutPacking { count: cuts.len(), cuts })
    }
}

/// Edge-disjointness of `δ⁺(T₁)` and `δ⁺(T₂)` read off the sources:
/// `N_Y(X \ (T₁ˣ ∪ T₂ˣ)) ∩ T₁ʸ ∩ T₂ʸ = ∅`.
///
/// [`cuts_disjoint_sufficient`] is the coarser test that ignores which pairs
/// are edges; it implies this one but not conversely.
pub fn cuts_disjoint_by_sources(g: &BipartiteGraph, a: MixedSubset, b: MixedSubset) -> bool {
    let outside = a.tx.union(b.tx).complement(g.m());
    g.neighbors_y(outside).intersection(a.ty).intersection(b.ty).is_empty()
}

/// `T₁ˣ ∪ T₂ˣ = X` or `T₁ʸ ∩ T₂ʸ = ∅`.
pub fn cuts_disjoint_sufficient(g: &BipartiteGraph, a: MixedSubset, b: MixedSubset) -> bool {
    a.tx.union(b.tx) == g.all_x() || a.ty.intersection(b.ty).is_empty()
}

struct Packer<'a> {
    sets: &'a [u128],
    best: Vec<usize>,
}

impl Packer<'_> {
    /// Branches on the uncovered element contained in the fewest candidates:
    /// either one of those candidates is taken, or the element stays uncovered.
    fn search(&mut self, candidates: &[usize], free: u128, chosen: &mut Vec<usize>) {
        if candidates.is_empty() {
            if chosen.len() > self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        let coverable = candidates.iter().fold(0u128, |acc, &k| acc | self.sets[k]) & free;
        let smallest = candidates.iter().map(|&k| self.sets[k].count_ones()).min().unwrap();
        let bound = chosen.len() + (coverable.count_ones() / smallest) as usize;
        if bound <= self.best.len() {
            return;
        }
        let mut pivot = 0u32;
        let mut pivot_count = usize::MAX;
        let mut bits = coverable;
        while bits != 0 {
            let e = bits.trailing_zeros();
            bits &= bits - 1;
            let cnt = candidates.iter().filter(|&&k| self.sets[k] >> e & 1 == 1).count();
            if cnt < pivot_count {
                pivot = e;
                pivot_count = cnt;
            }
        }
        let with_pivot: Vec<usize> =
            candidates.iter().copied().filter(|&k| self.sets[k] >> pivot & 1 == 1).collect();
        for &k in &with_pivot {
            let s = self.sets[k];
            let rest: Vec<usize> =
                candidates.iter().copied().filter(|&c| self.sets[c] & s == 0).collect();
            chosen.push(k);
            self.search(&rest, free & !s, chosen);
            chosen.pop();
        }
        let rest: Vec<usize> =
            candidates.iter().copied().filter(|&c| self.sets[c] >> pivot & 1 == 0).collect();
        self.search(&rest, free & !(1u128 << pivot), chosen);
    }
}
