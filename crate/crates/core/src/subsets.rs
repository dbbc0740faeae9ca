//! Ground-set subsets, partial Boolean functions and squarefree monomials in
//! the variables `x(i,0), x(i,1)`.
//!
//! A subset `A ⊆ [n]` doubles as the total function with 1-preimage `A`. The
//! pair `A ⊆ B` encodes both the partial function `δ(A,B)` (1 on `A`, 0
//! outside `B`, undefined on `B∖A`) and the monomial
//! `m(A,B) = ∏_{i∈B} x(i,0) · ∏_{i∉A} x(i,1)` of degree `n + |B∖A|`.

use std::fmt;

use crate::error::{Error, Result};

/// Size of the ground set `[n] = {0, …, n−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSpec {
    n: usize,
}

impl GroundSpec {
    pub const MAX: usize = 64;

    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > Self::MAX {
            return Err(Error::GroundSize(n));
        }
        Ok(GroundSpec { n })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn full(self) -> Subset {
        Subset::full(self.n)
    }

    pub fn mask(self) -> u64 {
        Subset::full(self.n).0
    }

    /// Rejects subsets with bits at or above `n`.
    pub fn check(self, s: Subset) -> Result<Subset> {
        if s.0 & !self.mask() != 0 {
            Err(Error::OutOfRange { bits: s.0, n: self.n })
        } else {
            Ok(s)
        }
    }

    /// Every subset of `[n]` in increasing bitmask order. Only sensible for small `n`.
    pub fn all_subsets(self) -> impl Iterator<Item = Subset> {
        let top = self.mask();
        (0..=top).map(Subset)
    }

    /// Parses a length-`n` string over `{0,1}` where character `i` is membership of `i`.
    pub fn parse(self, s: &str) -> Result<Subset> {
        if s.chars().count() != self.n {
            return Err(Error::BitString(s.to_string()));
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::BitString(s.to_string())),
            }
        }
        Ok(Subset(bits))
    }

    pub fn format(self, s: Subset) -> String {
        (0..self.n)
            .map(|i| if s.contains(i) { '1' } else { '0' })
            .collect()
    }
}

/// A subset of the ground set stored as a 64-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Subset {
        Subset(elems.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Subset) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: Subset) -> Subset {
        Subset(self.0 ^ other.0)
    }

    /// Complement inside `[n]`.
    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub fn insert(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    pub fn remove(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self` (including `∅` and `self`), in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(Subset(cur))
        })
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// A partial Boolean function on `[n]`: 1 on `ones`, 0 on `zeros`, undefined elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialFunction {
    ones: Subset,
    zeros: Subset,
}

impl PartialFunction {
    pub fn new(ones: Subset, zeros: Subset) -> Result<Self> {
        if !ones.intersection(zeros).is_empty() {
            return Err(Error::Invalid(format!(
                "partial function assigns both values on {}",
                ones.intersection(zeros)
            )));
        }
        Ok(PartialFunction { ones, zeros })
    }

    /// The total function with 1-preimage `a`.
    pub fn total(ground: GroundSpec, a: Subset) -> Self {
        PartialFunction {
            ones: a,
            zeros: a.complement(ground.n()),
        }
    }

    pub fn ones(self) -> Subset {
        self.ones
    }

    pub fn zeros(self) -> Subset {
        self.zeros
    }

    pub fn domain(self) -> Subset {
        self.ones.union(self.zeros)
    }

    pub fn is_total(self, ground: GroundSpec) -> bool {
        self.domain() == ground.full()
    }

    pub fn value(self, i: usize) -> Option<bool> {
        if self.ones.contains(i) {
            Some(true)
        } else if self.zeros.contains(i) {
            Some(false)
        } else {
            None
        }
    }

    /// True if `self` agrees with `other` wherever `other` is defined.
    pub fn extends(self, other: PartialFunction) -> bool {
        other.ones.is_subset(self.ones) && other.zeros.is_subset(self.zeros)
    }

    /// Pointwise agreement of the two functions.
    pub fn intersect(self, other: PartialFunction) -> PartialFunction {
        PartialFunction {
            ones: self.ones.intersection(other.ones),
            zeros: self.zeros.intersection(other.zeros),
        }
    }

    /// Recovers `(A, B)` with `self = δ(A,B)`.
    pub fn as_pair(self, ground: GroundSpec) -> (Subset, Subset) {
        (self.ones, self.zeros.complement(ground.n()))
    }

    /// `∏_{i∈dom f} x(i, f(i))`, the monomial of the graph of `self`.
    pub fn graph_monomial(self) -> SquarefreeMonomial {
        SquarefreeMonomial::new(self.zeros, self.ones)
    }

    /// Renders as a string over `{0,1,*}`.
    pub fn format(self, ground: GroundSpec) -> String {
        (0..ground.n())
            .map(|i| match self.value(i) {
                Some(true) => '1',
                Some(false) => '0',
                None => '*',
            })
            .collect()
    }
}

/// `δ(A,B)`: 1 on `A`, 0 outside `B`.
pub fn delta(ground: GroundSpec, a: Subset, b: Subset) -> Result<PartialFunction> {
    ground.check(a)?;
    ground.check(b)?;
    if !a.is_subset(b) {
        return Err(Error::NotSubset {
            lo: ground.format(a),
            hi: ground.format(b),
        });
    }
    Ok(PartialFunction {
        ones: a,
        zeros: b.complement(ground.n()),
    })
}

/// A squarefree monomial in the variables `x(i,0)`, `x(i,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquarefreeMonomial {
    support0: Subset,
    support1: Subset,
}

impl SquarefreeMonomial {
    pub const ONE: SquarefreeMonomial = SquarefreeMonomial {
        support0: Subset::EMPTY,
        support1: Subset::EMPTY,
    };

    pub fn new(support0: Subset, support1: Subset) -> Self {
        SquarefreeMonomial { support0, support1 }
    }

    /// The functional monomial `x(i,0)·x(i,1)`.
    pub fn functional(i: usize) -> Self {
        SquarefreeMonomial::new(Subset::singleton(i), Subset::singleton(i))
    }

    pub fn support0(self) -> Subset {
        self.support0
    }

    pub fn support1(self) -> Subset {
        self.support1
    }

    pub fn degree(self) -> usize {
        self.support0.len() + self.support1.len()
    }

    pub fn divides(self, other: SquarefreeMonomial) -> bool {
        self.support0.is_subset(other.support0) && self.support1.is_subset(other.support1)
    }

    pub fn lcm(self, other: SquarefreeMonomial) -> SquarefreeMonomial {
        SquarefreeMonomial {
            support0: self.support0.union(other.support0),
            support1: self.support1.union(other.support1),
        }
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn quotient(self, other: SquarefreeMonomial) -> SquarefreeMonomial {
        SquarefreeMonomial {
            support0: self.support0.difference(other.support0),
            support1: self.support1.difference(other.support1),
        }
    }

    /// If the supports cover `[n]`, the unique `(A, B)` with `self = m(A,B)`.
    pub fn as_pair(self, ground: GroundSpec) -> Option<(Subset, Subset)> {
        if self.support0.union(self.support1) != ground.full() {
            return None;
        }
        Some((self.support1.complement(ground.n()), self.support0))
    }

    /// Variables as indices `2i + b` into the `2n` variable list.
    pub fn variables(self) -> impl Iterator<Item = usize> {
        let mut all: Vec<usize> = self
            .support0
            .iter()
            .map(|i| 2 * i)
            .chain(self.support1.iter().map(|i| 2 * i + 1))
            .collect();
        all.sort_unstable();
        all.into_iter()
    }

    /// Inverse of [`variables`](Self::variables).
    pub fn from_variables<I: IntoIterator<Item = usize>>(vars: I) -> Self {
        let mut m = SquarefreeMonomial::ONE;
        for v in vars {
            if v % 2 == 0 {
                m.support0 = m.support0.insert(v / 2);
            } else {
                m.support1 = m.support1.insert(v / 2);
            }
        }
        m
    }

    /// Renders the `m(A,B)` form, e.g. `m(0000,0111)`, or falls back to the product form.
    pub fn format_pair(self, ground: GroundSpec) -> String {
        match self.as_pair(ground) {
            Some((a, b)) => format!("m({},{})", ground.format(a), ground.format(b)),
            None => self.to_string(),
        }
    }
}

/// `m(A,B) = ∏_{i∈B} x(i,0) · ∏_{i∉A} x(i,1)`.
pub fn monomial(ground: GroundSpec, a: Subset, b: Subset) -> Result<SquarefreeMonomial> {
    delta(ground, a, b)?;
    Ok(SquarefreeMonomial {
        support0: b,
        support1: a.complement(ground.n()),
    })
}

impl fmt::Display for SquarefreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.variables() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}_{}", v / 2, v % 2)?;
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for SquarefreeMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(SquarefreeMonomial::ONE);
        }
        let mut vars = Vec::new();
        for tok in s.split('*') {
            let bad = || Error::Invalid(format!("bad monomial variable {tok:?}"));
            let rest = tok.trim().strip_prefix('x').ok_or_else(bad)?;
            let (i, b) = rest.split_once('_').ok_or_else(bad)?;
            let i: usize = i.parse().map_err(|_| bad())?;
            let b: usize = b.parse().map_err(|_| bad())?;
            if b > 1 || i >= 64 {
                return Err(bad());
            }
            vars.push(2 * i + b);
        }
        Ok(SquarefreeMonomial::from_variables(vars))
    }
}
