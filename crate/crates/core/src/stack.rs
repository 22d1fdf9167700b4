//! Invariants of stack polyominoes: closed forms for the a-invariant and the
//! regularity, the multiplicity recursion `e(P) = e(P1) + e(P2)` and the closed
//! forms for rectangles, `P_k` shapes and one-sided ladders; plus an
//! aggregated, cross-checked report for convex polyominoes.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::bigraph::{BipartiteGraph, DEFAULT_CUT_LIMIT, DEFAULT_SUBSET_BITS};
use crate::error::{Error, Result};
use crate::gorenstein::{
    is_gorenstein_convex_with_limit, is_gorenstein_stack_corners, is_gorenstein_stack_subsets,
    GorensteinVerdict,
};
use crate::polyomino::{Cell, Polyomino, Vertex};
use crate::scalar::{binomial, Count};
use crate::srcomplex::{invariants, FlagComplex, DEFAULT_MAX_VERTICES};
use crate::toric::{leading_term_ideal, variable_order_unchecked, verify_groebner, VarOrder};

/// The closed form `-max{m,n}`.
///
/// It does not hold for every stack: the L-shaped three-row stack with cells
/// `(1,1), (2,1), (3,1), (1,2), (1,3)` has `a = -5`, not `-4`. [`full_report`]
/// computes the a-invariant and lists this value next to it.
pub fn a_invariant_stack(p: &Polyomino) -> Result<i64> {
    if !p.is_stack() {
        return Err(Error::NotStack);
    }
    Ok(-i64::from(p.m().max(p.n())))
}

/// The closed form `min{m,n} - 1`; subject to the same caveat as
/// [`a_invariant_stack`].
pub fn regularity_stack(p: &Polyomino) -> Result<u32> {
    if !p.is_stack() {
        return Err(Error::NotStack);
    }
    Ok(p.m().min(p.n()) - 1)
}

/// One step of the multiplicity recursion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// `(i, height(i))` where `x_{i1}` is the smallest variable.
    pub v: Vertex,
    /// `P` minus one top cell, renormalized.
    pub p1: Polyomino,
    /// The cells of `P` in rows `>= height(i)`, renormalized.
    pub p2: Polyomino,
    /// Translation from `p1` coordinates back to those of `P`.
    pub p1_offset: (u32, u32),
    /// Translation from `p2` coordinates back to those of `P`.
    pub p2_offset: (u32, u32),
    /// When `height(i) = 2`, deletion facets correspond to facets of the cone
    /// over the complex of `p1` with this apex (in `P` coordinates).
    pub cone_apex: Option<Vertex>,
}

/// Column `i` minimizing `(height(i), i)`.
pub fn smallest_column(p: &Polyomino) -> u32 {
    let heights = p.heights();
    (1..=p.m()).min_by_key(|&i| (heights[(i - 1) as usize], i)).expect("m >= 2")
}

pub fn decompose(p: &Polyomino) -> Result<Decomposition> {
    if !p.is_stack() {
        return Err(Error::NotStack);
    }
    if p.is_rectangle() {
        return Err(Error::IsRectangle);
    }
    let (m, i) = (p.m(), smallest_column(p));
    let h = p.height(i);
    let v = Vertex::new(i, h);
    // Top cell of cell-column 1 (it holds v) or of the last cell-column.
    let removed = if i == 1 {
        Cell::new(1, h - 1)
    } else {
        Cell::new(m - 1, p.height(m) - 1)
    };
    let p1 = p.delete_cell(removed)?;
    let p1_offset = if i == 1 && h == 2 { (1, 0) } else { (0, 0) };
    let (p2, p2_offset) = crate::srcomplex::upper_part(p, h)?;
    let cone_apex = (h == 2).then(|| if i == 1 { Vertex::new(1, 1) } else { Vertex::new(m, 1) });
    Ok(Decomposition { v, p1, p2, p1_offset, p2_offset, cone_apex })
}

/// `binom(m + n - 2, m - 1)`, the multiplicity of the full `[m] x [n]` rectangle.
pub fn multiplicity_rectangle<T: Count>(m: u32, n: u32) -> T {
    binomial(u64::from(m + n - 2), u64::from(m - 1))
}

/// Multiplicity by the recursion down to rectangles, memoized on cell sets.
pub fn multiplicity_recursive<T: Count>(p: &Polyomino) -> Result<T> {
    if !p.is_stack() {
        return Err(Error::NotStack);
    }
    let mut memo = HashMap::new();
    Ok(recurse(p, &mut memo))
}

fn recurse<T: Count>(p: &Polyomino, memo: &mut HashMap<Polyomino, T>) -> T {
    if p.is_rectangle() {
        return multiplicity_rectangle(p.m(), p.n());
    }
    if let Some(hit) = memo.get(p) {
        return hit.clone();
    }
    let d = decompose(p).expect("stack, not a rectangle");
    let e = recurse::<T>(&d.p1, memo) + recurse::<T>(&d.p2, memo);
    memo.insert(p.clone(), e.clone());
    e
}

/// The stack with vertex box `[big_m] x [big_n]` whose vertex columns have heights
/// `N, ..., N, k` (the last one `k`).
pub fn pk_shape(big_m: u32, big_n: u32, k: u32) -> Result<Polyomino> {
    if big_m < 3 || k < 2 || k >= big_n {
        return Err(Error::BadParameters(format!(
            "need M >= 3 and 2 <= k < N, got M={big_m}, N={big_n}, k={k}"
        )));
    }
    ladder_shape(big_m, big_n, &[k])
}

/// `binom(M+N-2, M-1) - binom(M+N-k-2, M-1)`.
pub fn multiplicity_pk<T: Count>(big_m: u32, big_n: u32, k: u32) -> Result<T> {
    pk_shape(big_m, big_n, k)?;
    let whole: T = multiplicity_rectangle(big_m, big_n);
    let missing: T = binomial(u64::from(big_m + big_n - k - 2), u64::from(big_m - 1));
    Ok(whole - missing)
}

fn check_ladder(big_m: u32, big_n: u32, ks: &[u32]) -> Result<()> {
    let l = ks.len() as u32;
    let bad = |why: &str| Err(Error::BadParameters(format!("ladder ({big_m}, {big_n}, {ks:?}): {why}")));
    if big_n < 2 {
        return bad("N must be at least 2");
    }
    if l + 2 > big_m {
        return bad("need at least two full-height vertex columns");
    }
    if ks.windows(2).any(|w| w[0] < w[1]) {
        return bad("heights must be non-increasing");
    }
    if ks.iter().any(|&k| k < 2 || k > big_n) {
        return bad("heights must lie in 2..=N");
    }
    Ok(())
}

/// The one-sided ladder: vertex box `[M] x [N]`, the first `M - l` vertex
/// columns of height `N` and the last `l` of heights `k_1 >= ... >= k_l`.
pub fn ladder_shape(big_m: u32, big_n: u32, ks: &[u32]) -> Result<Polyomino> {
    check_ladder(big_m, big_n, ks)?;
    let full = big_m as usize - ks.len();
    let mut vertex_heights = vec![big_n; full];
    vertex_heights.extend_from_slice(ks);
    // Cell column c reaches one below vertex column c + 1.
    let cell_heights: Vec<u32> = vertex_heights[1..].iter().map(|h| h - 1).collect();
    Polyomino::from_column_heights(&cell_heights)
}

/// Multiplicity of a one-sided ladder by peeling the last column:
/// `e(M, N, ks) = e(M-1, N-k_l+1, [k_j - k_l + 1]_{j<l}) + e(M, N, [.., k_l - 1])`.
pub fn multiplicity_ladder<T: Count>(big_m: u32, big_n: u32, ks: &[u32]) -> Result<T> {
    check_ladder(big_m, big_n, ks)?;
    let mut memo = HashMap::new();
    Ok(ladder(big_m, big_n, ks.to_vec(), &mut memo))
}

fn ladder<T: Count>(
    mut big_m: u32,
    big_n: u32,
    mut ks: Vec<u32>,
    memo: &mut HashMap<(u32, u32, Vec<u32>), T>,
) -> T {
    // A height-1 column holds no cells; a height-N column is part of the rectangle.
    while ks.last() == Some(&1) {
        ks.pop();
        big_m -= 1;
    }
    let full = ks.iter().take_while(|&&k| k == big_n).count();
    ks.drain(..full);
    let Some(&kl) = ks.last() else {
        return multiplicity_rectangle(big_m, big_n);
    };
    let key = (big_m, big_n, ks.clone());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let l = ks.len();
    let upper: Vec<u32> = ks[..l - 1].iter().map(|k| k - kl + 1).collect();
    let mut lower = ks.clone();
    lower[l - 1] -= 1;
    let e = ladder::<T>(big_m - 1, big_n - kl + 1, upper, memo) + ladder::<T>(big_m, big_n, lower, memo);
    memo.insert(key, e.clone());
    e
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Closed-form formula.
    Formula,
    /// The multiplicity recursion.
    Recursion,
    /// Facet/face enumeration of the flag complex.
    Complex,
    /// The one-sided subset criterion for stacks.
    StackSubsets,
    /// The general convex criterion.
    ConvexCriterion,
    /// Maximum packing of disjoint directed cuts in the bipartite graph.
    DirectedCuts,
    Unavailable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Methods {
    pub a_invariant: Method,
    pub regularity: Method,
    pub multiplicity: Method,
    pub h_vector: Method,
    pub gorenstein: Method,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub m: u32,
    pub n: u32,
    pub stack: bool,
    /// Krull dimension `m + n - 1`.
    pub d: u32,
    pub a_invariant: Option<i64>,
    pub regularity: Option<u32>,
    #[serde(serialize_with = "opt_big")]
    pub multiplicity: Option<BigUint>,
    #[serde(serialize_with = "opt_big_seq")]
    pub h_vector: Option<Vec<BigInt>>,
    pub gorenstein: bool,
    pub verdict: GorensteinVerdict,
    pub methods: Methods,
    /// `-max{m,n}` and `min{m,n} - 1`, for stacks.
    pub closed_form: Option<ClosedForm>,
    /// Cross-checks that ran and passed.
    pub checks: Vec<String>,
    /// Why a field is unavailable or a check was skipped.
    pub notes: Vec<String>,
}

fn opt_big<S: serde::Serializer>(x: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => crate::scalar::big_serde::uint(v, s),
        None => s.serialize_none(),
    }
}

fn opt_big_seq<S: serde::Serializer>(
    x: &Option<Vec<BigInt>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => crate::scalar::big_serde::int_seq(v, s),
        None => s.serialize_none(),
    }
}

/// The stack closed forms next to the computed values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub a_invariant: i64,
    pub regularity: u32,
    /// `None` when neither the complex nor the cut packing was computed.
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    /// Largest `|V(P)|` for which the flag complex is enumerated.
    pub max_facet_vertices: usize,
    /// Largest `max(m, n)` for one-sided subset sweeps.
    pub max_subset_bits: u32,
    /// Run every brute-force cross-check that fits the size limits.
    pub oracle: bool,
    /// Variable order for non-stack inputs (default: the column-height rule).
    pub order: Option<VarOrder>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            max_facet_vertices: DEFAULT_MAX_VERTICES,
            max_subset_bits: DEFAULT_SUBSET_BITS,
            oracle: false,
            order: None,
        }
    }
}

fn disagree(what: &str, a: impl std::fmt::Debug, b: impl std::fmt::Debug) -> Error {
    Error::InvariantViolation(format!("{what}: {a:?} vs {b:?}"))
}

/// Every invariant the available methods can reach, cross-checked.
pub fn full_report(p: &Polyomino, opts: &ReportOptions) -> Result<InvariantReport> {
    if !p.is_convex() {
        return Err(Error::NotConvex);
    }
    let stack = p.is_stack();
    let d = p.m() + p.n() - 1;
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let mut methods = Methods {
        a_invariant: Method::Unavailable,
        regularity: Method::Unavailable,
        multiplicity: Method::Unavailable,
        h_vector: Method::Unavailable,
        gorenstein: Method::Unavailable,
    };
    let (mut a_inv, mut reg, mut mult, mut h_vec) = (None, None, None, None);

    // Gorenstein verdict.
    let fits_sweep = p.m().max(p.n()) <= opts.max_subset_bits;
    let verdict = if stack {
        let v = is_gorenstein_stack_subsets(p)?;
        methods.gorenstein = Method::StackSubsets;
        let corners = is_gorenstein_stack_corners(p)?;
        if corners != v.is_gorenstein {
            return Err(disagree("stack criteria", v.is_gorenstein, corners));
        }
        checks.push("gorenstein: subset criterion = corner criterion".into());
        if fits_sweep {
            let general = is_gorenstein_convex_with_limit(p, opts.max_subset_bits)?;
            if general.is_gorenstein != v.is_gorenstein {
                return Err(disagree("stack vs convex criterion", v.is_gorenstein, general.is_gorenstein));
            }
            checks.push("gorenstein: stack criteria = convex criterion".into());
        }
        v
    } else if fits_sweep {
        methods.gorenstein = Method::ConvexCriterion;
        is_gorenstein_convex_with_limit(p, opts.max_subset_bits)?
    } else {
        return Err(Error::too_large("Gorenstein subset sweep", p.m().max(p.n()) as usize, opts.max_subset_bits as usize));
    };

    if stack {
        mult = Some(multiplicity_recursive::<BigUint>(p)?);
        methods.multiplicity = if p.is_rectangle() { Method::Formula } else { Method::Recursion };
    }

    // The flag complex, when its Gröbner basis is known and the size permits.
    let within = p.vertices().len() <= opts.max_facet_vertices;
    let ideal = match &opts.order {
        None if stack => {
            if opts.oracle && within {
                if !verify_groebner(p, &variable_order_unchecked(p))? {
                    return Err(Error::InvariantViolation(
                        "inner minors of a stack fail the Gröbner check".into(),
                    ));
                }
                checks.push("groebner: inner minors verified".into());
            }
            Some(crate::toric::initial_ideal(p)?)
        }
        supplied => {
            let order = supplied.clone().unwrap_or_else(|| variable_order_unchecked(p));
            if verify_groebner(p, &order)? {
                checks.push("groebner: inner minors verified".into());
                Some(leading_term_ideal(p, order))
            } else {
                notes.push(
                    "complex invariants unavailable: the inner minors are not a Gröbner basis \
                     under the chosen order"
                        .into(),
                );
                None
            }
        }
    };

    if let Some(ini) = ideal {
        if within {
            let complex = FlagComplex::from_initial_ideal(p, &ini)?;
            let facets = complex.facets_with_limit(opts.max_facet_vertices)?;
            let inv = invariants(&complex.hilbert_numerator_with_limit(opts.max_facet_vertices)?, d as usize)?;
            if inv.multiplicity != BigUint::from(facets.len()) {
                return Err(disagree("Q(1) vs facet count", &inv.multiplicity, facets.len()));
            }
            checks.push("complex: Q(1) = facet count".into());
            if let Some(e) = &mult {
                if *e != inv.multiplicity {
                    return Err(disagree("multiplicity", e, &inv.multiplicity));
                }
                checks.push("multiplicity: fast path = complex".into());
            }
            if inv.h_vector.iter().any(|c| c.sign() == num_bigint::Sign::Minus) {
                return Err(Error::InvariantViolation("negative h-vector entry".into()));
            }
            let palindromic = inv.h_vector.iter().eq(inv.h_vector.iter().rev());
            if opts.oracle || stack {
                if palindromic != verdict.is_gorenstein {
                    return Err(disagree("Gorenstein verdict vs h-vector symmetry", verdict.is_gorenstein, palindromic));
                }
                checks.push("gorenstein: verdict = h-vector symmetry".into());
            }
            a_inv = Some(inv.a_invariant);
            reg = Some(inv.regularity);
            methods.a_invariant = Method::Complex;
            methods.regularity = Method::Complex;
            if mult.is_none() {
                mult = Some(inv.multiplicity.clone());
                methods.multiplicity = Method::Complex;
            }
            h_vec = Some(inv.h_vector);
            methods.h_vector = Method::Complex;
        } else {
            notes.push(format!(
                "h-vector unavailable: {} vertices exceed the enumeration limit {}",
                p.vertices().len(),
                opts.max_facet_vertices
            ));
        }
    } else if stack && !within {
        notes.push(format!(
            "h-vector unavailable: {} vertices exceed the enumeration limit {}",
            p.vertices().len(),
            opts.max_facet_vertices
        ));
    }

    // Directed cuts give -a on their own; with the complex present they are a cross-check.
    let fits_cuts = p.m() + p.n() <= DEFAULT_CUT_LIMIT;
    if fits_cuts && (a_inv.is_none() || opts.oracle) {
        let packing = BipartiteGraph::from_polyomino(p)?.max_disjoint_directed_cuts(DEFAULT_CUT_LIMIT)?;
        let a = -(packing.count as i64);
        match a_inv {
            Some(known) if known != a => return Err(disagree("a-invariant vs directed-cut packing", known, a)),
            Some(_) => checks.push("a-invariant: complex = directed-cut packing".into()),
            None => {
                // Cohen-Macaulay: reg = d + a.
                a_inv = Some(a);
                reg = Some((i64::from(d) + a) as u32);
                methods.a_invariant = Method::DirectedCuts;
                methods.regularity = Method::DirectedCuts;
            }
        }
    } else if a_inv.is_none() {
        notes.push("a-invariant and regularity unavailable: complex too large and m + n exceeds the cut-search limit".into());
    } else if opts.oracle {
        notes.push("directed-cut packing skipped: m + n too large".into());
    }

    let closed_form = stack.then(|| {
        let (ca, cr) = (a_invariant_stack(p).expect("stack"), regularity_stack(p).expect("stack"));
        let agrees = a_inv.zip(reg).map(|(a, r)| a == ca && r == cr);
        match agrees {
            Some(true) => checks.push("closed forms -max{m,n}, min{m,n}-1 = computed".into()),
            Some(false) => notes.push(format!(
                "closed forms -max{{m,n}} = {ca}, min{{m,n}}-1 = {cr} disagree with the computed values"
            )),
            None => {}
        }
        ClosedForm { a_invariant: ca, regularity: cr, agrees }
    });

    Ok(InvariantReport {
        m: p.m(),
        n: p.n(),
        stack,
        d,
        a_invariant: a_inv,
        regularity: reg,
        multiplicity: mult,
        h_vector: h_vec,
        gorenstein: verdict.is_gorenstein,
        verdict,
        methods,
        closed_form,
        checks,
        notes,
    })
}
