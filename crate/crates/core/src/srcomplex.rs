//! The flag complex whose Stanley–Reisner ideal is the initial ideal of a
//! polyomino ideal: facets, f-vector, Hilbert numerator and derived invariants,
//! link/deletion, and the facet transports used by the multiplicity recursion.

use std::collections::{BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::UPoly;
use crate::polyomino::{Polyomino, Vertex, VertexSet};
use crate::toric::{initial_ideal, InitialIdeal, QuadMonomial};

/// Default bound on `|V(P)|` for facet and face enumeration.
pub const DEFAULT_MAX_VERTICES: usize = 40;
const MASK_BITS: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagComplex {
    vertices: Vec<Vertex>,
    forbidden: BTreeSet<QuadMonomial>,
    d: usize,
    /// `conflict[k]`: vertices forming a forbidden pair with `vertices[k]`.
    conflict: Vec<u128>,
}

/// Builds the complex of `p` from its (verified) initial ideal.
pub fn build_complex(p: &Polyomino) -> Result<FlagComplex> {
    let ini = initial_ideal(p)?;
    FlagComplex::from_initial_ideal(p, &ini)
}

impl FlagComplex {
    pub fn from_initial_ideal(p: &Polyomino, ini: &InitialIdeal) -> Result<Self> {
        let d = (p.m() + p.n() - 1) as usize;
        Self::new(p.vertices().into_iter().collect(), ini.generators.clone(), d)
    }

    /// A flag complex on `vertices` (sorted, distinct) avoiding `forbidden`,
    /// expected to be pure with facets of size `d`.
    pub fn new(vertices: Vec<Vertex>, forbidden: BTreeSet<QuadMonomial>, d: usize) -> Result<Self> {
        if vertices.len() > MASK_BITS {
            return Err(Error::too_large("complex vertex count", vertices.len(), MASK_BITS));
        }
        let index: HashMap<Vertex, usize> =
            vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut conflict = vec![0u128; vertices.len()];
        for q in &forbidden {
            let (Some(&a), Some(&b)) = (index.get(&q.a), index.get(&q.b)) else {
                return Err(Error::BadParameters(format!("forbidden pair {q} leaves the vertex set")));
            };
            conflict[a] |= 1 << b;
            conflict[b] |= 1 << a;
        }
        Ok(FlagComplex { vertices, forbidden, d, conflict })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn forbidden(&self) -> &BTreeSet<QuadMonomial> {
        &self.forbidden
    }

    /// Expected facet size (the Krull dimension of the ring).
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_face(&self, face: &VertexSet) -> bool {
        let mut mask = 0u128;
        for v in face {
            match self.vertices.binary_search(v) {
                Ok(k) => mask |= 1 << k,
                Err(_) => return false,
            }
        }
        self.is_independent(mask)
    }

    fn is_independent(&self, mask: u128) -> bool {
        let mut bits = mask;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if self.conflict[k] & mask != 0 {
                return false;
            }
        }
        true
    }

    fn all_mask(&self) -> u128 {
        if self.vertices.len() == MASK_BITS {
            u128::MAX
        } else {
            (1u128 << self.vertices.len()) - 1
        }
    }

    fn guard(&self, limit: usize) -> Result<()> {
        if self.vertices.len() > limit {
            return Err(Error::too_large("facet enumeration vertex count", self.vertices.len(), limit));
        }
        Ok(())
    }

    fn to_set(&self, mask: u128) -> VertexSet {
        (0..self.vertices.len()).filter(|&k| mask >> k & 1 == 1).map(|k| self.vertices[k]).collect()
    }

    pub fn facets(&self) -> Result<Vec<VertexSet>> {
        self.facets_with_limit(DEFAULT_MAX_VERTICES)
    }

    /// All maximal faces, sorted; fails with `NotPure` if any has size `!= d`.
    pub fn facets_with_limit(&self, limit: usize) -> Result<Vec<VertexSet>> {
        self.guard(limit)?;
        let mut masks = Vec::new();
        self.bron_kerbosch(0, self.all_mask(), 0, &mut masks);
        let mut out: Vec<VertexSet> = masks.into_iter().map(|m| self.to_set(m)).collect();
        out.sort();
        if let Some(bad) = out.iter().find(|f| f.len() != self.d) {
            return Err(Error::NotPure { expected: self.d, found: bad.len() });
        }
        Ok(out)
    }

    /// Maximal cliques of the compatibility graph (complement of `conflict`).
    fn bron_kerbosch(&self, r: u128, mut p: u128, mut x: u128, out: &mut Vec<u128>) {
        if p == 0 {
            if x == 0 {
                out.push(r);
            }
            return;
        }
        let compat = |k: usize| !self.conflict[k] & !(1u128 << k);
        // Pivot: the vertex of P ∪ X with the most compatible vertices in P.
        let mut pivot = 0usize;
        let mut best = -1i64;
        let mut bits = p | x;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let c = (compat(k) & p).count_ones() as i64;
            if c > best {
                best = c;
                pivot = k;
            }
        }
        let mut candidates = p & !compat(pivot);
        while candidates != 0 {
            let k = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            let nk = compat(k);
            self.bron_kerbosch(r | 1 << k, p & nk, x & nk, out);
            p &= !(1u128 << k);
            x |= 1 << k;
        }
    }

    pub fn f_vector(&self) -> Result<FVector> {
        self.f_vector_with_limit(DEFAULT_MAX_VERTICES)
    }

    /// Face counts by size, via the memoized independence polynomial
    /// `I(S) = I(S - v) + t I(S - N[v])`.
    pub fn f_vector_with_limit(&self, limit: usize) -> Result<FVector> {
        self.guard(limit)?;
        // Face counts are u64; 2^62 faces is far beyond any feasible run anyway.
        if self.vertices.len() > 62 {
            return Err(Error::too_large("face count vertex count", self.vertices.len(), 62));
        }
        let mut memo = HashMap::new();
        let counts = self.independence(self.all_mask(), &mut memo);
        Ok(FVector { counts })
    }

    fn independence(&self, s: u128, memo: &mut HashMap<u128, Vec<u64>>) -> Vec<u64> {
        if s == 0 {
            return vec![1];
        }
        if let Some(hit) = memo.get(&s) {
            return hit.clone();
        }
        // Split on the vertex with most conflicts inside `s`.
        let mut v = 0usize;
        let mut best = -1i64;
        let mut bits = s;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let c = (self.conflict[k] & s).count_ones() as i64;
            if c > best {
                best = c;
                v = k;
            }
        }
        let out = if best == 0 {
            // No conflicts left: all subsets are faces.
            let n = s.count_ones() as u64;
            (0..=n).map(|k| crate::scalar::binomial::<u64>(n, k)).collect()
        } else {
            let without = self.independence(s & !(1u128 << v), memo);
            let with = self.independence(s & !(1u128 << v) & !self.conflict[v], memo);
            let mut out = without;
            if out.len() < with.len() + 1 {
                out.resize(with.len() + 1, 0);
            }
            for (k, c) in with.iter().enumerate() {
                out[k + 1] += c;
            }
            out
        };
        memo.insert(s, out.clone());
        out
    }

    pub fn hilbert_numerator(&self) -> Result<UPoly<BigInt>> {
        self.hilbert_numerator_with_limit(DEFAULT_MAX_VERTICES)
    }

    pub fn hilbert_numerator_with_limit(&self, limit: usize) -> Result<UPoly<BigInt>> {
        Ok(hilbert_numerator_from(&self.f_vector_with_limit(limit)?, self.d))
    }
}

/// `f_{-1}, f_0, ..., f_{d-1}`: `counts[k]` is the number of faces of size `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FVector {
    pub counts: Vec<u64>,
}

impl FVector {
    /// `f_k`, the number of faces of dimension `k` (size `k + 1`), for `k >= -1`.
    pub fn f(&self, k: i64) -> u64 {
        self.counts.get((k + 1) as usize).copied().unwrap_or(0)
    }
}

/// `Q(t) = Σ_{i=0}^{d} f_{i-1} t^i (1-t)^{d-i}`.
pub fn hilbert_numerator_from(f: &FVector, d: usize) -> UPoly<BigInt> {
    let one_minus_t = UPoly::new(vec![BigInt::one(), -BigInt::one()]);
    (0..=d).fold(UPoly::zero(), |acc, i| {
        let c = BigInt::from(f.counts.get(i).copied().unwrap_or(0));
        let term = &UPoly::monomial(c, i) * &one_minus_t.pow((d - i) as u32);
        &acc + &term
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexInvariants {
    #[serde(serialize_with = "crate::scalar::big_serde::uint")]
    pub multiplicity: BigUint,
    pub regularity: u32,
    pub a_invariant: i64,
    #[serde(serialize_with = "crate::scalar::big_serde::int_seq")]
    pub h_vector: Vec<BigInt>,
}

/// Multiplicity `Q(1)`, regularity `deg Q`, a-invariant `deg Q - d`, h-vector.
pub fn invariants(q: &UPoly<BigInt>, d: usize) -> Result<ComplexInvariants> {
    let deg = q.degree().ok_or_else(|| Error::InvariantViolation("Hilbert numerator is zero".into()))?;
    let e = q.eval(&BigInt::one());
    if !e.is_positive() {
        return Err(Error::InvariantViolation(format!("Q(1) = {e} is not positive")));
    }
    Ok(ComplexInvariants {
        multiplicity: e.to_biguint().expect("positive"),
        regularity: deg as u32,
        a_invariant: deg as i64 - d as i64,
        h_vector: q.coeffs().to_vec(),
    })
}

pub fn invariants_from_complex(c: &FlagComplex) -> Result<ComplexInvariants> {
    invariants(&c.hilbert_numerator()?, c.d)
}

/// Facets of the link of `v`: facets containing `v`, with `v` removed.
pub fn link_facets(facets: &[VertexSet], v: Vertex) -> Vec<VertexSet> {
    facets
        .iter()
        .filter(|f| f.contains(&v))
        .map(|f| f.iter().copied().filter(|&u| u != v).collect())
        .collect()
}

/// Facets not containing `v`.
pub fn deletion_facets(facets: &[VertexSet], v: Vertex) -> Vec<VertexSet> {
    facets.iter().filter(|f| !f.contains(&v)).cloned().collect()
}

fn move_vertex(set: &mut VertexSet, from: Vertex, to: Vertex) {
    set.remove(&from);
    set.insert(to);
}

/// Transport of a deletion facet to the complex of the smaller polyomino.
///
/// Membership tests read the original `f`; updates apply in sequence. For
/// `i = 1` (and for `i = m`, where the deleted cell is the one holding `v`)
/// the facet is unchanged.
pub fn transport_facet(f: &VertexSet, i: u32, h: u32, m: u32) -> VertexSet {
    let mut out = f.clone();
    if i == 1 || i == m {
        return out;
    }
    let v = |a, b| Vertex::new(a, b);
    for k in 1..=h {
        if f.contains(&v(m, k)) {
            out.remove(&v(m, k));
        }
        if f.contains(&v(i, k)) {
            move_vertex(&mut out, v(i, k), v(m, k));
        }
    }
    for j in i + 1..m {
        for k in 1..=h {
            if f.contains(&v(j, k)) {
                move_vertex(&mut out, v(j, k), v(j - 1, k));
            }
        }
    }
    for k in 1..=h {
        if f.contains(&v(m, k)) {
            out.insert(v(m - 1, k));
        }
    }
    out
}

/// Two-sided inverse of [`transport_facet`].
pub fn transport_facet_inverse(g: &VertexSet, i: u32, h: u32, m: u32) -> VertexSet {
    let mut out = g.clone();
    if i == 1 || i == m {
        return out;
    }
    let v = |a, b| Vertex::new(a, b);
    for k in 1..=h {
        if g.contains(&v(m - 1, k)) {
            out.remove(&v(m - 1, k));
        }
    }
    for j in (i..=m.saturating_sub(2)).rev() {
        for k in 1..=h {
            if g.contains(&v(j, k)) {
                move_vertex(&mut out, v(j, k), v(j + 1, k));
            }
        }
    }
    for k in 1..=h {
        if g.contains(&v(m, k)) {
            move_vertex(&mut out, v(m, k), v(i, k));
        }
        if g.contains(&v(m - 1, k)) {
            out.insert(v(m, k));
        }
    }
    out
}

/// [`transport_facet`] restricted to members of `source` (the deletion facets).
pub fn transport_facet_checked(
    f: &VertexSet,
    i: u32,
    h: u32,
    m: u32,
    source: &[VertexSet],
) -> Result<VertexSet> {
    if !source.contains(f) {
        return Err(Error::NotAFacet);
    }
    Ok(transport_facet(f, i, h, m))
}

/// [`transport_facet_inverse`] restricted to members of `source`.
pub fn transport_facet_inverse_checked(
    g: &VertexSet,
    i: u32,
    h: u32,
    m: u32,
    source: &[VertexSet],
) -> Result<VertexSet> {
    if !source.contains(g) {
        return Err(Error::NotAFacet);
    }
    Ok(transport_facet_inverse(g, i, h, m))
}

/// Split of `F ∪ {v}` for a link facet `F` of `v = (i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkSplit {
    /// The part inside the upper polyomino, in that polyomino's own frame.
    pub g1: VertexSet,
    /// Level-`j` vertices outside the upper polyomino and `(i,1), ..., (i,j-1)`.
    pub g2: VertexSet,
}

/// The cells of `p` in rows `>= j`, renormalized, plus the translation that
/// carries its coordinates back into the frame of `p`.
pub fn upper_part(p: &Polyomino, j: u32) -> Result<(Polyomino, (u32, u32))> {
    let upper = p.cells_at_or_above(j)?;
    let dx = p.cells().iter().filter(|c| c.row >= j).map(|c| c.col).min().expect("nonempty") - 1;
    Ok((upper, (dx, j - 1)))
}

pub fn link_decompose(p: &Polyomino, v: Vertex, f: &VertexSet) -> Result<LinkSplit> {
    let (upper, (dx, dy)) = upper_part(p, v.j)?;
    let upper_in_p: VertexSet =
        upper.vertices().into_iter().map(|u| Vertex::new(u.i + dx, u.j + dy)).collect();
    let mut g2: VertexSet = p
        .vertices()
        .into_iter()
        .filter(|u| u.j == v.j && !upper_in_p.contains(u))
        .collect();
    g2.extend((1..v.j).map(|k| Vertex::new(v.i, k)));
    let mut whole = f.clone();
    whole.insert(v);
    if !g2.is_subset(&whole) {
        return Err(Error::DecompositionFailed(format!(
            "link facet misses forced vertices of the lower part at {v}"
        )));
    }
    let mut g1 = VertexSet::new();
    for u in whole.difference(&g2) {
        if !upper_in_p.contains(u) {
            return Err(Error::DecompositionFailed(format!("vertex {u} lies in neither part")));
        }
        g1.insert(Vertex::new(u.i - dx, u.j - dy));
    }
    Ok(LinkSplit { g1, g2 })
}
