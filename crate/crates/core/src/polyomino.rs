//! Cells, polyominoes and their geometric predicates.
//!
//! Coordinates are 1-based. A cell is identified by its lower-left corner and
//! a polyomino is always stored normalized, so that its vertex set spans the
//! box `[1, m] x [1, n]`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unit cell `[(col, row), (col + 1, row + 1)]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[u32; 2]", from = "[u32; 2]")]
pub struct Cell {
    pub col: u32,
    pub row: u32,
}

impl Cell {
    pub const fn new(col: u32, row: u32) -> Self {
        Cell { col, row }
    }

    /// The four corners, lower-left first, counter-clockwise.
    pub fn corners(self) -> [Vertex; 4] {
        let (c, r) = (self.col, self.row);
        [
            Vertex::new(c, r),
            Vertex::new(c + 1, r),
            Vertex::new(c + 1, r + 1),
            Vertex::new(c, r + 1),
        ]
    }
}

impl From<Cell> for [u32; 2] {
    fn from(c: Cell) -> Self {
        [c.col, c.row]
    }
}

impl From<[u32; 2]> for Cell {
    fn from([col, row]: [u32; 2]) -> Self {
        Cell { col, row }
    }
}

impl From<(u32, u32)> for Cell {
    fn from((col, row): (u32, u32)) -> Self {
        Cell { col, row }
    }
}

/// Lattice point `(i, j)`; as a ring variable it is `x_{ij}`, as a graph edge `{x_i, y_j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[u32; 2]", from = "[u32; 2]")]
pub struct Vertex {
    pub i: u32,
    pub j: u32,
}

impl Vertex {
    pub const fn new(i: u32, j: u32) -> Self {
        Vertex { i, j }
    }
}

impl From<Vertex> for [u32; 2] {
    fn from(v: Vertex) -> Self {
        [v.i, v.j]
    }
}

impl From<[u32; 2]> for Vertex {
    fn from([i, j]: [u32; 2]) -> Self {
        Vertex { i, j }
    }
}

impl From<(u32, u32)> for Vertex {
    fn from((i, j): (u32, u32)) -> Self {
        Vertex { i, j }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

pub type VertexSet = BTreeSet<Vertex>;

/// Vertices of a polyomino split by how many of its cells contain them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Corners {
    /// In four cells.
    pub interior: VertexSet,
    /// In exactly three cells.
    pub inside: VertexSet,
    /// In exactly one cell.
    pub outside: VertexSet,
}

/// A nonempty, edge-connected, normalized set of cells.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polyomino {
    cells: BTreeSet<Cell>,
    m: u32,
    n: u32,
}

impl Polyomino {
    /// Builds a polyomino from arbitrary integer cell coordinates, translating
    /// so that the vertex box starts at `(1, 1)`.
    pub fn from_coords<I>(coords: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let raw: BTreeSet<(i64, i64)> = coords.into_iter().collect();
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        let min_c = raw.iter().map(|c| c.0).min().unwrap();
        let min_r = raw.iter().map(|c| c.1).min().unwrap();
        let cells: BTreeSet<Cell> = raw
            .iter()
            .map(|&(c, r)| {
                let col = u32::try_from(c - min_c + 1).expect("coordinate range fits in u32");
                let row = u32::try_from(r - min_r + 1).expect("coordinate range fits in u32");
                Cell::new(col, row)
            })
            .collect();
        if !edge_connected(&cells) {
            return Err(Error::DisconnectedCells);
        }
        let m = cells.iter().map(|c| c.col).max().unwrap() + 1;
        let n = cells.iter().map(|c| c.row).max().unwrap() + 1;
        Ok(Polyomino { cells, m, n })
    }

    pub fn from_cells<I, C>(cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = C>,
        C: Into<Cell>,
    {
        Self::from_coords(cells.into_iter().map(|c| {
            let c = c.into();
            (i64::from(c.col), i64::from(c.row))
        }))
    }

    /// Full rectangle of cells with vertex box `[m] x [n]` (`m, n >= 2`).
    pub fn rectangle(m: u32, n: u32) -> Result<Self> {
        if m < 2 || n < 2 {
            return Err(Error::BadParameters(format!(
                "rectangle vertex box must be at least 2x2, got {m}x{n}"
            )));
        }
        Self::from_cells((1..m).flat_map(|c| (1..n).map(move |r| Cell::new(c, r))))
    }

    /// Bottom-justified stack of cell columns with the given heights (all `>= 1`).
    /// Connected by construction; convex iff the heights are unimodal.
    pub fn from_column_heights(heights: &[u32]) -> Result<Self> {
        if heights.contains(&0) {
            return Err(Error::BadParameters("column heights must be positive".into()));
        }
        Self::from_cells(
            heights
                .iter()
                .enumerate()
                .flat_map(|(c, &h)| (1..=h).map(move |r| Cell::new(c as u32 + 1, r))),
        )
    }

    /// Parses either the grid format (`#`/`.` rows, top row first) or a JSON
    /// list of `[col, row]` pairs. The JSON form is chosen when the trimmed
    /// input starts with `[`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('[') {
            Self::parse_json(text)
        } else {
            Self::parse_grid(text)
        }
    }

    pub fn parse_grid(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .skip_while(|l| l.is_empty())
            .collect();
        let lines: Vec<&str> = {
            let end = lines.iter().rposition(|l| !l.is_empty()).map_or(0, |p| p + 1);
            lines[..end].to_vec()
        };
        if lines.is_empty() {
            return Err(Error::EmptyInput);
        }
        let width = lines[0].chars().count();
        let height = lines.len() as i64;
        let mut coords = Vec::new();
        for (r, line) in lines.iter().enumerate() {
            if line.chars().count() != width {
                return Err(Error::MalformedGrid(format!(
                    "row {} has length {}, expected {width}",
                    r + 1,
                    line.chars().count()
                )));
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '#' => coords.push((c as i64 + 1, height - r as i64)),
                    '.' => {}
                    other => {
                        return Err(Error::MalformedGrid(format!(
                            "illegal character {other:?} in row {}",
                            r + 1
                        )))
                    }
                }
            }
        }
        Self::from_coords(coords)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let pairs: Vec<(i64, i64)> =
            serde_json::from_str(text).map_err(|e| Error::MalformedJson(e.to_string()))?;
        Self::from_coords(pairs)
    }

    /// Grid rendering, top row first, one line per cell row.
    pub fn to_grid(&self) -> String {
        let mut out = String::new();
        for row in (1..self.n).rev() {
            for col in 1..self.m {
                out.push(if self.contains(Cell::new(col, row)) { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.cells).expect("cells serialize")
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Width of the vertex box.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Height of the vertex box.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    fn contains_at(&self, col: i64, row: i64) -> bool {
        col >= 1
            && row >= 1
            && self.cells.contains(&Cell::new(col as u32, row as u32))
    }

    pub fn vertices(&self) -> VertexSet {
        self.cells.iter().flat_map(|c| c.corners()).collect()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.incident_cells(v) > 0
    }

    /// Number of cells of the polyomino having `v` as a corner.
    pub fn incident_cells(&self, v: Vertex) -> usize {
        let (i, j) = (i64::from(v.i), i64::from(v.j));
        [(i - 1, j - 1), (i, j - 1), (i - 1, j), (i, j)]
            .into_iter()
            .filter(|&(c, r)| self.contains_at(c, r))
            .count()
    }

    /// Whether the unit segment `(i, j)-(i, j+1)` is an edge of some cell.
    pub fn has_vertical_edge(&self, i: u32, j: u32) -> bool {
        let (i, j) = (i64::from(i), i64::from(j));
        self.contains_at(i - 1, j) || self.contains_at(i, j)
    }

    /// Whether the unit segment `(i, j)-(i+1, j)` is an edge of some cell.
    pub fn has_horizontal_edge(&self, i: u32, j: u32) -> bool {
        let (i, j) = (i64::from(i), i64::from(j));
        self.contains_at(i, j - 1) || self.contains_at(i, j)
    }

    pub fn is_row_convex(&self) -> bool {
        (1..self.n).all(|row| {
            let cols: Vec<u32> = self.cells.iter().filter(|c| c.row == row).map(|c| c.col).collect();
            is_run(&cols)
        })
    }

    pub fn is_column_convex(&self) -> bool {
        (1..self.m).all(|col| {
            let mut rows: Vec<u32> =
                self.cells.iter().filter(|c| c.col == col).map(|c| c.row).collect();
            rows.sort_unstable();
            is_run(&rows)
        })
    }

    pub fn is_convex(&self) -> bool {
        self.is_row_convex() && self.is_column_convex()
    }

    /// Every pair of cells is joined by a path of cells using at most two of
    /// the four unit directions.
    pub fn has_monotone_paths(&self) -> bool {
        const DIRS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, -1), (0, 1)];
        let cells: Vec<Cell> = self.cells.iter().copied().collect();
        for (a_idx, &a) in cells.iter().enumerate() {
            'pair: for &b in &cells[a_idx + 1..] {
                for d1 in 0..4 {
                    for d2 in d1 + 1..4 {
                        if self.reachable_with(a, b, &[DIRS[d1], DIRS[d2]]) {
                            continue 'pair;
                        }
                    }
                }
                return false;
            }
        }
        true
    }

    fn reachable_with(&self, from: Cell, to: Cell, moves: &[(i64, i64)]) -> bool {
        let mut seen = BTreeSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(c) = queue.pop_front() {
            if c == to {
                return true;
            }
            for &(dc, dr) in moves {
                let (nc, nr) = (i64::from(c.col) + dc, i64::from(c.row) + dr);
                if self.contains_at(nc, nr) {
                    let next = Cell::new(nc as u32, nr as u32);
                    if seen.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
        }
        false
    }

    /// Convex with the whole bottom row of cells present.
    pub fn is_stack(&self) -> bool {
        self.is_convex() && (1..self.m).all(|col| self.contains(Cell::new(col, 1)))
    }

    pub fn is_rectangle(&self) -> bool {
        self.cells.len() == ((self.m - 1) * (self.n - 1)) as usize
    }

    /// `height(i)`: the highest vertex level in vertex column `i`, for `i = 1..=m`
    /// (index 0 is column 1).
    pub fn heights(&self) -> Vec<u32> {
        let mut h = vec![0u32; self.m as usize];
        for c in &self.cells {
            for col in [c.col, c.col + 1] {
                let slot = &mut h[(col - 1) as usize];
                *slot = (*slot).max(c.row + 1);
            }
        }
        h
    }

    pub fn height(&self, i: u32) -> u32 {
        self.heights()[(i - 1) as usize]
    }

    /// Classifies the vertex set by the number of incident cells; boundary
    /// vertices in exactly two cells are the (implicit) remainder.
    pub fn corners(&self) -> Corners {
        let mut out = Corners::default();
        for v in self.vertices() {
            match self.incident_cells(v) {
                4 => out.interior.insert(v),
                3 => out.inside.insert(v),
                1 => out.outside.insert(v),
                _ => false,
            };
        }
        out
    }

    /// Reflection in the diagonal, renormalized.
    pub fn transpose(&self) -> Polyomino {
        Self::from_cells(self.cells.iter().map(|c| Cell::new(c.row, c.col)))
            .expect("transpose preserves connectivity")
    }

    /// Left-right reflection, renormalized.
    pub fn mirror(&self) -> Polyomino {
        let m = self.m;
        Self::from_cells(self.cells.iter().map(|c| Cell::new(m - c.col, c.row)))
            .expect("mirror preserves connectivity")
    }

    pub fn delete_cell(&self, cell: Cell) -> Result<Polyomino> {
        if !self.contains(cell) {
            return Err(Error::CellNotFound(cell));
        }
        self.retain_cells(|c| c != cell)
    }

    /// Keeps exactly the cells with `row >= level`, renormalized.
    pub fn cells_at_or_above(&self, level: u32) -> Result<Polyomino> {
        self.retain_cells(|c| c.row >= level)
    }

    fn retain_cells(&self, keep: impl Fn(Cell) -> bool) -> Result<Polyomino> {
        let kept: Vec<Cell> = self.cells.iter().copied().filter(|&c| keep(c)).collect();
        match Self::from_cells(kept) {
            Err(Error::EmptyInput) => Err(Error::EmptyResult),
            Err(Error::DisconnectedCells) => Err(Error::DisconnectedResult),
            other => other,
        }
    }
}

/// Serializes as the JSON cell list accepted by [`Polyomino::parse_json`].
impl Serialize for Polyomino {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(&self.cells)
    }
}

impl fmt::Display for Polyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_grid())
    }
}

fn is_run(sorted: &[u32]) -> bool {
    sorted.windows(2).all(|w| w[1] == w[0] + 1)
}

fn edge_connected(cells: &BTreeSet<Cell>) -> bool {
    let Some(&start) = cells.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(c) = stack.pop() {
        let (col, row) = (i64::from(c.col), i64::from(c.row));
        for (nc, nr) in [(col + 1, row), (col - 1, row), (col, row + 1), (col, row - 1)] {
            if nc < 1 || nr < 1 {
                continue;
            }
            let next = Cell::new(nc as u32, nr as u32);
            if cells.contains(&next) && seen.insert(next) {
                stack.push(next);
            }
        }
    }
    seen.len() == cells.len()
}
