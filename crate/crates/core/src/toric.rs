//! Inner 2-minors, the column-height variable order, reverse lexicographic
//! leading terms, and a Buchberger-criterion check of the Gröbner property.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::polyomino::{Cell, Polyomino, Vertex};

/// A ring variable `x_{ij}` is named by its vertex.
pub type Variable = Vertex;

/// Total order on the variables of a polyomino ring (rank 0 is smallest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarOrder {
    ascending: Vec<Variable>,
    rank: BTreeMap<Variable, usize>,
}

impl VarOrder {
    /// Builds an order from a smallest-first list.
    pub fn from_ascending(ascending: Vec<Variable>) -> Result<Self> {
        let rank: BTreeMap<_, _> = ascending.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        if rank.len() != ascending.len() {
            return Err(Error::BadParameters("variable order lists a vertex twice".into()));
        }
        Ok(VarOrder { ascending, rank })
    }

    /// Builds an order from a largest-first list, e.g. `x23 > x22 > ...`.
    pub fn from_descending(mut descending: Vec<Variable>) -> Result<Self> {
        descending.reverse();
        Self::from_ascending(descending)
    }

    pub fn rank(&self, v: Variable) -> Option<usize> {
        self.rank.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.ascending.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ascending.is_empty()
    }

    pub fn cmp_vars(&self, a: Variable, b: Variable) -> Ordering {
        self.rank[&a].cmp(&self.rank[&b])
    }

    pub fn ascending(&self) -> &[Variable] {
        &self.ascending
    }

    pub fn descending(&self) -> Vec<Variable> {
        self.ascending.iter().rev().copied().collect()
    }

    pub fn smallest(&self) -> Variable {
        self.ascending[0]
    }

    /// Ranks exactly the vertices of `p`.
    pub fn covers(&self, p: &Polyomino) -> bool {
        let vs = p.vertices();
        vs.len() == self.rank.len() && vs.iter().all(|v| self.rank.contains_key(v))
    }
}

impl fmt::Display for VarOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.descending().iter().enumerate() {
            if k > 0 {
                f.write_str(" > ")?;
            }
            write!(f, "x_{{{},{}}}", v.i, v.j)?;
        }
        Ok(())
    }
}

/// The order `x_{ij} > x_{kl}` iff `height(i) > height(k)`, or equal heights and
/// `i > k`, or `i = k` and `j > l`. Requires a stack polyomino.
pub fn variable_order(p: &Polyomino) -> Result<VarOrder> {
    if !p.is_stack() {
        return Err(Error::NotStack);
    }
    Ok(variable_order_unchecked(p))
}

/// The same rule applied to any polyomino; its Gröbner property is not implied.
pub fn variable_order_unchecked(p: &Polyomino) -> VarOrder {
    let heights = p.heights();
    let mut vars: Vec<Variable> = p.vertices().into_iter().collect();
    vars.sort_by_key(|v| (heights[(v.i - 1) as usize], v.i, v.j));
    VarOrder::from_ascending(vars).expect("vertex set has no duplicates")
}

/// Squarefree quadratic monomial `x_a x_b`, stored with `a < b` lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QuadMonomial {
    pub a: Variable,
    pub b: Variable,
}

impl QuadMonomial {
    pub fn new(u: Variable, v: Variable) -> Self {
        assert_ne!(u, v, "quadratic monomials here are squarefree");
        if u < v {
            QuadMonomial { a: u, b: v }
        } else {
            QuadMonomial { a: v, b: u }
        }
    }

    pub fn contains(&self, v: Variable) -> bool {
        self.a == v || self.b == v
    }

    pub fn vars(&self) -> [Variable; 2] {
        [self.a, self.b]
    }
}

impl fmt::Display for QuadMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_{{{},{}}}*x_{{{},{}}}", self.a.i, self.a.j, self.b.i, self.b.j)
    }
}

/// The binomial `x_{il} x_{kj} - x_{ij} x_{kl}` of an inner interval `[(i,j),(k,l)]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct InnerMinor {
    pub lower: Vertex,
    pub upper: Vertex,
}

impl InnerMinor {
    /// Antidiagonal term `x_{il} x_{kj}`.
    pub fn plus_term(&self) -> QuadMonomial {
        QuadMonomial::new(
            Vertex::new(self.lower.i, self.upper.j),
            Vertex::new(self.upper.i, self.lower.j),
        )
    }

    /// Diagonal term `x_{ij} x_{kl}`.
    pub fn minus_term(&self) -> QuadMonomial {
        QuadMonomial::new(self.lower, self.upper)
    }
}

impl fmt::Display for InnerMinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.plus_term(), self.minus_term())
    }
}

/// One minor per inner interval, sorted by `(lower, upper)` corners.
pub fn inner_minors(p: &Polyomino) -> Vec<InnerMinor> {
    let mut out = Vec::new();
    for i in 1..p.m() {
        for j in 1..p.n() {
            if !p.contains(Cell::new(i, j)) {
                continue;
            }
            for k in i + 1..=p.m() {
                if !p.contains(Cell::new(k - 1, j)) {
                    break;
                }
                for l in j + 1..=p.n() {
                    let full = (i..k).all(|c| p.contains(Cell::new(c, l - 1)));
                    if !full {
                        break;
                    }
                    out.push(InnerMinor { lower: Vertex::new(i, j), upper: Vertex::new(k, l) });
                }
            }
        }
    }
    out.sort();
    out
}

/// Revlex leading term: the term containing the overall smallest of the four
/// variables is the smaller one, so the other is returned.
pub fn leading_term(minor: &InnerMinor, ord: &VarOrder) -> QuadMonomial {
    let (plus, minus) = (minor.plus_term(), minor.minus_term());
    let smallest = plus
        .vars()
        .into_iter()
        .chain(minus.vars())
        .min_by(|&a, &b| ord.cmp_vars(a, b))
        .expect("four variables");
    if minus.contains(smallest) {
        plus
    } else {
        minus
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialIdeal {
    pub generators: BTreeSet<QuadMonomial>,
    pub order: VarOrder,
}

/// Leading terms under the stack order; for other polyominoes the column-height
/// order is used only if it passes [`verify_groebner`].
pub fn initial_ideal(p: &Polyomino) -> Result<InitialIdeal> {
    if p.is_stack() {
        return Ok(leading_term_ideal(p, variable_order_unchecked(p)));
    }
    initial_ideal_with_order(p, variable_order_unchecked(p))
}

/// Leading terms under a caller-supplied order, gated by [`verify_groebner`].
pub fn initial_ideal_with_order(p: &Polyomino, order: VarOrder) -> Result<InitialIdeal> {
    if !verify_groebner(p, &order)? {
        return Err(Error::GroebnerUnverified);
    }
    Ok(leading_term_ideal(p, order))
}

/// Leading terms under `order` with no Gröbner check; callers vouch for it.
pub fn leading_term_ideal(p: &Polyomino, order: VarOrder) -> InitialIdeal {
    let generators = inner_minors(p).iter().map(|g| leading_term(g, &order)).collect();
    InitialIdeal { generators, order }
}

fn minor_polynomial(minor: &InnerMinor, ord: &VarOrder) -> Polynomial<BigInt> {
    let n = ord.len();
    let mono = |q: QuadMonomial| {
        let [a, b] = q.vars();
        Monomial::from_ranks(n, &[ord.rank[&a], ord.rank[&b]])
    };
    Polynomial::from_terms([
        (mono(minor.plus_term()), BigInt::one()),
        (mono(minor.minus_term()), -BigInt::one()),
    ])
}

/// Whether the inner minors form a Gröbner basis for revlex under `ord`:
/// every S-polynomial of a pair with non-coprime leading terms must top-reduce
/// to zero. Fails with `BadParameters` if `ord` does not rank exactly `V(P)`.
pub fn verify_groebner(p: &Polyomino, ord: &VarOrder) -> Result<bool> {
    if !ord.covers(p) {
        return Err(Error::BadParameters("order does not rank exactly the vertices of P".into()));
    }
    let basis: Vec<Polynomial<BigInt>> =
        inner_minors(p).iter().map(|g| minor_polynomial(g, ord)).collect();
    for (a, f) in basis.iter().enumerate() {
        let lf = f.leading().expect("binomial").0;
        for g in &basis[a + 1..] {
            let lg = g.leading().expect("binomial").0;
            if lf.is_coprime(lg) {
                continue;
            }
            if !Polynomial::s_polynomial(f, g).top_reduce(&basis).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Stable text listing of generators and leading terms.
pub fn dump(p: &Polyomino, ord: &VarOrder) -> String {
    let mut out = String::new();
    writeln!(out, "order: {ord}").unwrap();
    for g in inner_minors(p) {
        writeln!(out, "{g}    lead {}", leading_term(&g, ord)).unwrap();
    }
    out
}

/// Degree-reverse-lexicographic leading term via exponent vectors; an
/// independent check of [`leading_term`].
pub fn leading_term_generic(minor: &InnerMinor, ord: &VarOrder) -> QuadMonomial {
    let poly = minor_polynomial(minor, ord);
    let (lead, c) = poly.leading().expect("binomial");
    debug_assert!(!c.is_zero());
    let ranks: Vec<usize> =
        lead.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(r, _)| r).collect();
    QuadMonomial::new(ord.ascending[ranks[0]], ord.ascending[ranks[1]])
}
