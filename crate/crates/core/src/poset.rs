//! Finite families of subsets ordered by inclusion.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::subsets::{GroundSpec, Subset};

/// Dense bitset over element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitRow(Vec<u64>);

impl BitRow {
    fn new(len: usize) -> Self {
        BitRow(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn intersects(&self, other: &BitRow) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            })
        })
    }
}

/// A set of distinct subsets of `[n]` under the induced inclusion order.
///
/// Comparabilities are stored as dense bit matrices and cover relations are
/// precomputed. Möbius values are filled lazily one lower endpoint at a time.
#[derive(Debug)]
pub struct SubsetPoset {
    ground: GroundSpec,
    elements: Vec<Subset>,
    index: HashMap<Subset, usize>,
    /// `above[i]` holds `j` with `elements[i] ⊊ elements[j]`.
    above: Vec<BitRow>,
    /// `below[j]` holds `i` with `elements[i] ⊊ elements[j]`.
    below: Vec<BitRow>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    /// Indices sorted by cardinality, a linear extension.
    linear: Vec<usize>,
    mobius_rows: Vec<OnceLock<Vec<i64>>>,
}

impl Clone for SubsetPoset {
    fn clone(&self) -> Self {
        SubsetPoset::build(self.ground, self.elements.clone()).expect("already validated")
    }
}

impl PartialEq for SubsetPoset {
    /// Equality as families of subsets, ignoring element order.
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.sorted_elements() == other.sorted_elements()
    }
}

impl SubsetPoset {
    /// Validates distinctness and width, then precomputes the order data.
    pub fn build(ground: GroundSpec, elements: Vec<Subset>) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, &e) in elements.iter().enumerate() {
            ground.check(e)?;
            if index.insert(e, i).is_some() {
                return Err(Error::Duplicate(ground.format(e)));
            }
        }
        let len = elements.len();
        let mut above = vec![BitRow::new(len); len];
        let mut below = vec![BitRow::new(len); len];
        for i in 0..len {
            for j in 0..len {
                if elements[i].is_proper_subset(elements[j]) {
                    above[i].set(j);
                    below[j].set(i);
                }
            }
        }
        let mut upper_covers = vec![Vec::new(); len];
        let mut lower_covers = vec![Vec::new(); len];
        for i in 0..len {
            for j in above[i].iter() {
                if !above[i].intersects(&below[j]) {
                    upper_covers[i].push(j);
                    lower_covers[j].push(i);
                }
            }
        }
        let mut linear: Vec<usize> = (0..len).collect();
        linear.sort_by_key(|&i| (elements[i].len(), elements[i].0));
        Ok(SubsetPoset {
            ground,
            elements,
            index,
            above,
            below,
            upper_covers,
            lower_covers,
            linear,
            mobius_rows: (0..len).map(|_| OnceLock::new()).collect(),
        })
    }

    /// The Boolean poset of all subsets of `[n]`.
    pub fn boolean(ground: GroundSpec) -> Self {
        SubsetPoset::build(ground, ground.all_subsets().collect()).expect("distinct")
    }

    pub fn ground(&self) -> GroundSpec {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Subset] {
        &self.elements
    }

    pub fn sorted_elements(&self) -> Vec<Subset> {
        let mut v = self.elements.clone();
        v.sort_by_key(|s| (s.len(), s.0));
        v
    }

    pub fn element(&self, i: usize) -> Subset {
        self.elements[i]
    }

    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.index.contains_key(&s)
    }

    fn require(&self, s: Subset) -> Result<usize> {
        self.index_of(s)
            .ok_or_else(|| Error::NotInPoset(self.ground.format(s)))
    }

    /// Strict order on indices.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.above[i].get(j)
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    /// Indices strictly above `i`.
    pub fn strictly_above(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.above[i].iter()
    }

    /// Indices strictly below `j`.
    pub fn strictly_below(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.below[j].iter()
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn lower_covers(&self, j: usize) -> &[usize] {
        &self.lower_covers[j]
    }

    /// Element indices in a linear extension (by cardinality).
    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    /// All pairs `(A, B)` with `B` covering `A`.
    pub fn cover_relations(&self) -> Vec<(Subset, Subset)> {
        let mut out: Vec<(Subset, Subset)> = self
            .linear
            .iter()
            .flat_map(|&i| {
                self.upper_covers[i]
                    .iter()
                    .map(move |&j| (self.elements[i], self.elements[j]))
            })
            .collect();
        out.sort_by_key(|(a, b)| (a.len(), a.0, b.len(), b.0));
        out
    }

    /// Length of a longest chain below each element.
    fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.len()];
        for &j in &self.linear {
            h[j] = self.lower_covers[j].iter().map(|&i| h[i] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Length of a longest chain (number of elements minus one).
    pub fn rank(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyPoset);
        }
        Ok(self.heights().into_iter().max().unwrap_or(0))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.lower_covers[j].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper_covers[i].is_empty()).collect()
    }

    /// Index of the unique minimal element, if there is one.
    pub fn bottom(&self) -> Option<usize> {
        match self.minimal_elements().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<usize> {
        match self.maximal_elements().as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.bottom().is_some() && self.top().is_some()
    }

    pub fn is_intersection_closed(&self) -> bool {
        self.first_missing_intersection().is_none()
    }

    /// A pair whose intersection is missing, if any.
    pub fn first_missing_intersection(&self) -> Option<(Subset, Subset)> {
        for (i, &a) in self.elements.iter().enumerate() {
            for &b in &self.elements[i + 1..] {
                if !self.contains(a.intersection(b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub(crate) fn require_intersection_closed(&self) -> Result<()> {
        match self.first_missing_intersection() {
            None => Ok(()),
            Some((a, b)) => Err(Error::NotIntersectionClosed(format!(
                "{} ∩ {} missing",
                self.ground.format(a),
                self.ground.format(b)
            ))),
        }
    }

    /// Intersection of all members containing `a`; `None` when no member does.
    pub fn closure(&self, a: Subset) -> Option<Subset> {
        self.elements
            .iter()
            .filter(|b| a.is_subset(**b))
            .copied()
            .reduce(Subset::intersection)
    }

    /// The closed interval `[a, b]` or the open interval `(a, b)`.
    pub fn interval(&self, a: Subset, b: Subset, open: bool) -> Result<Interval> {
        let i = self.require(a)?;
        let j = self.require(b)?;
        if !self.le(i, j) {
            return Err(Error::NotSubset {
                lo: self.ground.format(a),
                hi: self.ground.format(b),
            });
        }
        let members = self.interval_indices(i, j, open);
        let poset = SubsetPoset::build(
            self.ground,
            members.iter().map(|&k| self.elements[k]).collect(),
        )?;
        Ok(Interval {
            lo: a,
            hi: b,
            open,
            members: poset,
        })
    }

    /// Indices `k` with `i ≤ k ≤ j` (or strict), in linear-extension order.
    pub fn interval_indices(&self, i: usize, j: usize, open: bool) -> Vec<usize> {
        self.linear
            .iter()
            .copied()
            .filter(|&k| {
                if open {
                    self.lt(i, k) && self.lt(k, j)
                } else {
                    self.le(i, k) && self.le(k, j)
                }
            })
            .collect()
    }

    /// Restriction of the poset to the given element indices.
    pub fn restrict(&self, indices: &[usize]) -> SubsetPoset {
        SubsetPoset::build(self.ground, indices.iter().map(|&k| self.elements[k]).collect())
            .expect("sub-family of a valid poset")
    }

    /// `μ(a, ·)` over the up-set of `i`, indexed by element.
    fn mobius_row(&self, i: usize) -> &[i64] {
        self.mobius_rows[i].get_or_init(|| {
            let mut row = vec![0i64; self.len()];
            row[i] = 1;
            for &k in &self.linear {
                if !self.lt(i, k) {
                    continue;
                }
                let sum: i64 = self.below[k]
                    .iter()
                    .filter(|&c| self.le(i, c))
                    .map(|c| row[c])
                    .sum();
                row[k] = -sum;
            }
            row
        })
    }

    /// Möbius function by index.
    pub fn mobius_index(&self, i: usize, j: usize) -> Option<i64> {
        self.le(i, j).then(|| self.mobius_row(i)[j])
    }

    pub fn mobius(&self, a: Subset, b: Subset) -> Result<i64> {
        let i = self.require(a)?;
        let j = self.require(b)?;
        self.mobius_index(i, j).ok_or_else(|| {
            Error::Incomparable(self.ground.format(a), self.ground.format(b))
        })
    }

    /// Rank of the closed interval between two indices (`i ≤ j` assumed).
    pub fn interval_rank(&self, i: usize, j: usize) -> usize {
        let mut h: HashMap<usize, usize> = HashMap::new();
        h.insert(i, 0);
        for &k in &self.linear {
            if k == i || !self.lt(i, k) || !self.le(k, j) {
                continue;
            }
            let best = self.lower_covers[k]
                .iter()
                .filter_map(|c| h.get(c))
                .max()
                .map(|v| v + 1)
                .unwrap_or(0);
            h.insert(k, best);
        }
        h.get(&j).copied().unwrap_or(0)
    }

    /// Every pair `i ≤ j` of indices.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &i in &self.linear {
            out.push((i, i));
            for &j in &self.linear {
                if self.lt(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// A closed or open interval of a [`SubsetPoset`], with its members as a poset.
#[derive(Debug, Clone)]
pub struct Interval {
    pub lo: Subset,
    pub hi: Subset,
    pub open: bool,
    pub members: SubsetPoset,
}

impl Interval {
    /// Rank of the closed interval `[lo, hi]`, regardless of `open`.
    pub fn closed_rank(&self) -> usize {
        if self.open {
            self.members.rank().map(|r| r + 2).unwrap_or_else(|_| {
                usize::from(self.lo != self.hi)
            })
        } else {
            self.members.rank().expect("closed interval is nonempty")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> GroundSpec {
        GroundSpec::new(n).unwrap()
    }

    fn s(e: &[usize]) -> Subset {
        Subset::from_elems(e.iter().copied())
    }

    pub(crate) fn flats_poset() -> SubsetPoset {
        let n = g(4);
        let elems = ["0000", "1000", "0100", "0010", "0001", "1100", "1010", "1001", "0111", "1111"]
            .iter()
            .map(|b| n.parse(b).unwrap())
            .collect();
        SubsetPoset::build(n, elems).unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(flats_poset().len(), 10);
        let chain = SubsetPoset::build(g(1), vec![s(&[]), s(&[0])]).unwrap();
        assert_eq!(chain.rank().unwrap(), 1);
        let anti = SubsetPoset::build(g(2), vec![s(&[0]), s(&[1])]).unwrap();
        assert!(anti.cover_relations().is_empty());
        assert_eq!(anti.rank().unwrap(), 0);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert!(matches!(
            SubsetPoset::build(g(2), vec![s(&[0]), s(&[0])]),
            Err(Error::Duplicate(_))
        ));
        assert!(matches!(
            SubsetPoset::build(g(2), vec![s(&[2])]),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(flats_poset().rank().unwrap(), 3);
        assert_eq!(SubsetPoset::build(g(3), vec![s(&[1])]).unwrap().rank().unwrap(), 0);
        assert_eq!(SubsetPoset::boolean(g(3)).rank().unwrap(), 3);
        assert_eq!(
            SubsetPoset::build(g(3), vec![]).unwrap().rank(),
            Err(Error::EmptyPoset)
        );
    }

    #[test]
    fn cover_examples() {
        assert_eq!(flats_poset().cover_relations().len(), 17);
        assert_eq!(SubsetPoset::boolean(g(2)).cover_relations().len(), 4);
    }

    #[test]
    fn intersection_closed_examples() {
        assert!(flats_poset().is_intersection_closed());
        let anti = SubsetPoset::build(g(2), vec![s(&[0]), s(&[1])]).unwrap();
        assert!(!anti.is_intersection_closed());
        assert_eq!(anti.first_missing_intersection(), Some((s(&[0]), s(&[1]))));
    }

    #[test]
    fn closure_examples() {
        // flats of U(2,3): ∅, singletons, full
        let u23 = SubsetPoset::build(
            g(3),
            vec![s(&[]), s(&[0]), s(&[1]), s(&[2]), s(&[0, 1, 2])],
        )
        .unwrap();
        assert_eq!(u23.closure(s(&[0, 1])), Some(s(&[0, 1, 2])));
        assert_eq!(u23.closure(s(&[1])), Some(s(&[1])));
        let single = SubsetPoset::build(g(2), vec![s(&[0])]).unwrap();
        assert_eq!(single.closure(s(&[1])), None);
        let empty = SubsetPoset::build(g(2), vec![]).unwrap();
        assert_eq!(empty.closure(s(&[])), None);
    }

    #[test]
    fn interval_examples() {
        let p = flats_poset();
        let iv = p.interval(s(&[]), s(&[1, 2, 3]), false).unwrap();
        assert_eq!(
            iv.members.sorted_elements(),
            vec![s(&[]), s(&[1]), s(&[2]), s(&[3]), s(&[1, 2, 3])]
        );
        assert_eq!(iv.members.rank().unwrap(), 2);
        assert_eq!(iv.closed_rank(), 2);
        let point = p.interval(s(&[1]), s(&[1]), false).unwrap();
        assert_eq!(point.members.len(), 1);
        let cover = p.interval(s(&[1]), s(&[1, 2, 3]), true).unwrap();
        assert!(cover.members.is_empty());
        assert_eq!(cover.closed_rank(), 1);
        assert!(p.interval(s(&[0]), s(&[1, 2, 3]), false).is_err());
        assert!(p.interval(s(&[0, 3]), s(&[0, 1]), false).is_err());
        assert!(p.interval(s(&[0, 1, 2]), s(&[0, 1, 2, 3]), false).is_err());
    }

    #[test]
    fn mobius_examples() {
        let p = flats_poset();
        assert_eq!(p.mobius(s(&[1]), s(&[1])).unwrap(), 1);
        assert_eq!(p.mobius(s(&[]), s(&[1, 2, 3])).unwrap(), 2);
        assert_eq!(p.mobius(s(&[]), s(&[0, 1])).unwrap().abs(), 1);
        // top of the rank-3 lattice: β_3 = 2
        assert_eq!(p.mobius(s(&[]), s(&[0, 1, 2, 3])).unwrap(), -2);
        assert!(matches!(
            p.mobius(s(&[0]), s(&[1, 2, 3])),
            Err(Error::Incomparable(..))
        ));
    }

    #[test]
    fn interval_rank_matches_restriction() {
        let p = flats_poset();
        for (i, j) in p.comparable_pairs() {
            let iv = p.interval(p.element(i), p.element(j), false).unwrap();
            assert_eq!(p.interval_rank(i, j), iv.members.rank().unwrap());
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Intersection closure of a random family on [n].
        pub(crate) fn closed_family(n: usize, seeds: &[u64]) -> SubsetPoset {
            let mask = Subset::full(n).0;
            let mut fam: Vec<Subset> = seeds.iter().map(|x| Subset(x & mask)).collect();
            fam.sort();
            fam.dedup();
            loop {
                let mut added = false;
                for i in 0..fam.len() {
                    for j in 0..fam.len() {
                        let c = fam[i].intersection(fam[j]);
                        if !fam.contains(&c) {
                            fam.push(c);
                            added = true;
                        }
                    }
                }
                if !added {
                    break;
                }
            }
            SubsetPoset::build(g(n), fam).unwrap()
        }

        proptest! {
            #[test]
            fn closure_operator_laws(n in 1usize..6, seeds in prop::collection::vec(any::<u64>(), 1..8), a in any::<u64>(), b in any::<u64>()) {
                let p = closed_family(n, &seeds);
                let mask = Subset::full(n).0;
                let a = Subset(a & mask);
                let b = Subset(a.0 | (b & mask));
                if let Some(ca) = p.closure(a) {
                    prop_assert!(a.is_subset(ca));
                    prop_assert!(p.contains(ca));
                    prop_assert_eq!(p.closure(ca), Some(ca));
                    if let Some(cb) = p.closure(b) {
                        prop_assert!(ca.is_subset(cb));
                    }
                } else {
                    prop_assert!(p.elements().iter().all(|e| !a.is_subset(*e)));
                    prop_assert!(p.closure(b).is_none());
                }
            }

            #[test]
            fn mobius_sums_vanish(n in 1usize..6, seeds in prop::collection::vec(any::<u64>(), 1..8)) {
                let p = closed_family(n, &seeds);
                for (i, j) in p.comparable_pairs() {
                    if i == j { continue; }
                    let sum: i64 = p.interval_indices(i, j, false).iter().map(|&c| p.mobius_index(i, c).unwrap()).sum();
                    prop_assert_eq!(sum, 0);
                    let iv = p.interval(p.element(i), p.element(j), false).unwrap();
                    let (lo, hi) = (iv.members.index_of(p.element(i)).unwrap(), iv.members.index_of(p.element(j)).unwrap());
                    prop_assert_eq!(iv.members.mobius_index(lo, hi), p.mobius_index(i, j));
                    prop_assert!(iv.members.rank().unwrap() <= p.rank().unwrap());
                }
                let rank1 = p.comparable_pairs().into_iter().filter(|&(i, j)| i != j && p.interval_rank(i, j) == 1).count();
                prop_assert_eq!(rank1, p.cover_relations().len());
            }
        }
    }
}
