//! Exact polynomial arithmetic: sparse multivariate polynomials under a
//! degree reverse lexicographic order, and dense univariate polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Ring;

/// Exponent vector indexed by variable rank, rank 0 being the smallest variable.
///
/// `Ord` is degrevlex: higher total degree is larger; on ties the monomial with
/// the smaller exponent at the lowest rank where they differ is larger.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// Product of the variables with the given ranks (repetition allowed).
    pub fn from_ranks(nvars: usize, ranks: &[usize]) -> Self {
        let mut e = vec![0u16; nvars];
        for &r in ranks {
            e[r] += 1;
        }
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect())
    }

    pub fn product(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; the last key is the leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial<C: Ring> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
        }
    }

    /// `c * m * self`.
    pub fn scale(&self, c: &C, m: &Monomial) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.product(m), v.clone() * c.clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    /// Cross-multiplied S-polynomial, free of divisions.
    pub fn s_polynomial(f: &Self, g: &Self) -> Self {
        let (Some((lf, cf)), Some((lg, cg))) = (f.leading(), g.leading()) else {
            return Self::zero();
        };
        let l = lf.lcm(lg);
        f.scale(cg, &l.quotient(lf)).sub(&g.scale(cf, &l.quotient(lg)))
    }

    /// Top-reduces by the first divisor found in `basis` until the leading
    /// monomial is irreducible or the polynomial vanishes.
    pub fn top_reduce(mut self, basis: &[Self]) -> Self {
        'outer: while let Some((lm, lc)) = self.leading() {
            for g in basis {
                let (gm, gc) = g.leading().expect("basis elements are nonzero");
                if gm.divides(lm) {
                    let q = lm.quotient(gm);
                    let lc = lc.clone();
                    self = self.scale(gc, &Monomial::one(lm.0.len())).sub(&g.scale(&lc, &q));
                    continue 'outer;
                }
            }
            break;
        }
        self
    }
}

/// Dense univariate polynomial `c[0] + c[1] t + ...` with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly<C: Ring> {
    coeffs: Vec<C>,
}

impl<C: Ring> UPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        let mut v = vec![C::zero(); k];
        v.push(c);
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(C::one()), |acc, _| &acc * self)
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k])
    }
}

impl<C: Ring> Add for &UPoly<C> {
    type Output = UPoly<C>;
    fn add(self, rhs: Self) -> UPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[C], k: usize| v.get(k).cloned().unwrap_or_else(C::zero);
        UPoly::new((0..n).map(|k| get(&self.coeffs, k) + get(&rhs.coeffs, k)).collect())
    }
}

impl<C: Ring> Neg for &UPoly<C> {
    type Output = UPoly<C>;
    fn neg(self) -> UPoly<C> {
        UPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<C: Ring> Sub for &UPoly<C> {
    type Output = UPoly<C>;
    fn sub(self, rhs: Self) -> UPoly<C> {
        self + &(-rhs)
    }
}

impl<C: Ring> Mul for &UPoly<C> {
    type Output = UPoly<C>;
    fn mul(self, rhs: Self) -> UPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            for (b, y) in rhs.coeffs.iter().enumerate() {
                out[a + b] = out[a + b].clone() + x.clone() * y.clone();
            }
        }
        UPoly::new(out)
    }
}
