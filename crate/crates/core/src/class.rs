//! Function classes `C ⊆ {0,1}^[n]`: shattering, VC dimension, extentures and
//! the two monomial ideals attached to a class.
//!
//! A class is stored as the family of 1-preimages of its functions. The
//! suboplex ideal `I_C` is generated by the functional monomials
//! `x(i,0)x(i,1)` together with `∏_{i∈dom f} x(i,f(i))` for every extenture
//! `f` (a partial function with no extension in `C` all of whose proper
//! restrictions do extend). Its Alexander dual `I*_C` has one generator
//! `∏_i x(i, 1−f(i))` per function.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::ideal::IdealGenerators;
use crate::poset::SubsetPoset;
use crate::subsets::{GroundSpec, PartialFunction, SquarefreeMonomial, Subset};

/// Largest ground set accepted by the extenture search.
pub const EXTENTURE_MAX_N: usize = 16;

/// How to decide whether a set is shattered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ShatterMethod {
    /// Count the distinct restrictions to `U`.
    #[default]
    Brute,
    /// `closure(A) ∩ (U∖A) = ∅` for all `A ⊆ U`; needs an intersection-closed class.
    Closure,
}

/// A nonempty set of total Boolean functions on `[n]`, each stored as its 1-preimage.
#[derive(Debug, Clone)]
pub struct FunctionClass {
    ground: GroundSpec,
    functions: Vec<Subset>,
    intersection_closed: OnceLock<bool>,
}

impl PartialEq for FunctionClass {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.functions == other.functions
    }
}

impl Eq for FunctionClass {}

impl FunctionClass {
    pub fn new(ground: GroundSpec, functions: Vec<Subset>) -> Result<Self> {
        if functions.is_empty() {
            return Err(Error::EmptyClass);
        }
        let mut seen = HashSet::with_capacity(functions.len());
        for &f in &functions {
            ground.check(f)?;
            if !seen.insert(f) {
                return Err(Error::Duplicate(ground.format(f)));
            }
        }
        let mut functions = functions;
        functions.sort_by_key(|s| (s.len(), s.0));
        Ok(FunctionClass {
            ground,
            functions,
            intersection_closed: OnceLock::new(),
        })
    }

    /// One function per poset element, via indicator functions.
    pub fn from_poset(p: &SubsetPoset) -> Result<Self> {
        FunctionClass::new(p.ground(), p.elements().to_vec())
    }

    /// All `2^n` functions.
    pub fn full(ground: GroundSpec) -> Self {
        FunctionClass::new(ground, ground.all_subsets().collect()).expect("nonempty")
    }

    /// The delta functions `δ_i` with `δ_i(j) = 1 ⇔ i = j`.
    pub fn deltas(ground: GroundSpec) -> Self {
        FunctionClass::new(ground, (0..ground.n()).map(Subset::singleton).collect())
            .expect("nonempty")
    }

    pub fn ground(&self) -> GroundSpec {
        self.ground
    }

    pub fn functions(&self) -> &[Subset] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn contains(&self, f: Subset) -> bool {
        self.functions.contains(&f)
    }

    /// The family of 1-preimages as an inclusion poset.
    pub fn support_poset(&self) -> SubsetPoset {
        SubsetPoset::build(self.ground, self.functions.clone()).expect("validated class")
    }

    pub fn is_intersection_closed(&self) -> bool {
        *self.intersection_closed.get_or_init(|| {
            let set: HashSet<Subset> = self.functions.iter().copied().collect();
            self.functions.iter().enumerate().all(|(i, a)| {
                self.functions[i + 1..]
                    .iter()
                    .all(|b| set.contains(&a.intersection(*b)))
            })
        })
    }

    /// Coordinates on which every function takes the same value, with that value.
    pub fn constant_coordinates(&self) -> Vec<(usize, bool)> {
        (0..self.ground.n())
            .filter_map(|i| {
                let first = self.functions[0].contains(i);
                self.functions
                    .iter()
                    .all(|f| f.contains(i) == first)
                    .then_some((i, first))
            })
            .collect()
    }

    /// Intersection of all functions containing `a`, if any does.
    pub fn closure(&self, a: Subset) -> Option<Subset> {
        self.functions
            .iter()
            .filter(|f| a.is_subset(**f))
            .copied()
            .reduce(Subset::intersection)
    }

    fn shattered_brute(&self, u: Subset) -> bool {
        let mut seen: HashSet<u64> = HashSet::new();
        let target = 1usize << u.len();
        for f in &self.functions {
            seen.insert(f.intersection(u).0);
            if seen.len() == target {
                return true;
            }
        }
        false
    }

    fn shattered_closure(&self, u: Subset) -> bool {
        u.subsets().all(|a| match self.closure(a) {
            Some(c) => c.intersection(u.difference(a)).is_empty(),
            None => false,
        })
    }

    /// Every function on `U` is the restriction of some member.
    pub fn is_shattered(&self, u: Subset, method: ShatterMethod) -> Result<bool> {
        self.ground.check(u)?;
        match method {
            ShatterMethod::Brute => Ok(self.shattered_brute(u)),
            ShatterMethod::Closure => {
                if !self.is_intersection_closed() {
                    return Err(Error::NotIntersectionClosed(
                        "closure-based shattering needs an intersection-closed class".into(),
                    ));
                }
                Ok(self.shattered_closure(u))
            }
        }
    }

    /// The fast path used internally: closure test when available.
    fn shattered_auto(&self, u: Subset) -> bool {
        if self.is_intersection_closed() && u.len() > 6 {
            self.shattered_closure(u)
        } else {
            self.shattered_brute(u)
        }
    }

    /// All shattered sets, found level by level; a candidate of size `k+1` is
    /// only tested once all of its `k`-subsets are shattered.
    pub fn shattered_sets(&self) -> Vec<Subset> {
        self.shattered_levels(|u| self.shattered_auto(u))
    }

    /// [`shattered_sets`](Self::shattered_sets) with a fixed shattering test.
    pub fn shattered_sets_by(&self, method: ShatterMethod) -> Result<Vec<Subset>> {
        match method {
            ShatterMethod::Brute => Ok(self.shattered_levels(|u| self.shattered_brute(u))),
            ShatterMethod::Closure => {
                self.is_shattered(Subset::EMPTY, method)?;
                Ok(self.shattered_levels(|u| self.shattered_closure(u)))
            }
        }
    }

    fn shattered_levels(&self, test: impl Fn(Subset) -> bool) -> Vec<Subset> {
        let n = self.ground.n();
        let mut all = vec![Subset::EMPTY];
        let mut level: Vec<Subset> = vec![Subset::EMPTY];
        while !level.is_empty() {
            let known: HashSet<Subset> = level.iter().copied().collect();
            let mut next = Vec::new();
            for &s in &level {
                let start = if s.is_empty() { 0 } else { 64 - s.0.leading_zeros() as usize };
                for i in start..n {
                    let cand = s.insert(i);
                    if cand.iter().all(|j| known.contains(&cand.remove(j))) && test(cand) {
                        next.push(cand);
                    }
                }
            }
            all.extend(&next);
            level = next;
        }
        all
    }

    /// Size of the largest shattered set.
    pub fn vc_dimension(&self) -> usize {
        self.shattered_sets().iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn vc_dimension_by(&self, method: ShatterMethod) -> Result<usize> {
        Ok(self.shattered_sets_by(method)?.iter().map(|s| s.len()).max().unwrap_or(0))
    }

    /// The simplicial complex of shattered sets on vertex set `[n]`.
    pub fn shatter_complex(&self) -> SimplicialComplex {
        let facets = self
            .shattered_sets()
            .into_iter()
            .map(|s| s.iter().map(|i| i as u32).collect())
            .collect();
        SimplicialComplex::from_facets(self.ground.n(), facets).expect("vertices in [n]")
    }

    /// Minimal non-extendable partial functions, ordered by domain size,
    /// then domain, then values.
    pub fn extentures(&self) -> Result<Vec<PartialFunction>> {
        let n = self.ground.n();
        if n > EXTENTURE_MAX_N {
            return Err(Error::CapExceeded {
                what: "ground size for extentures",
                value: n,
                cap: EXTENTURE_MAX_N,
            });
        }
        // restrictions[D] = sorted distinct values of f ∩ D, i.e. the extendable
        // assignments on domain D
        let domains = 1usize << n;
        let mut restrictions: Vec<Vec<u64>> = Vec::with_capacity(domains);
        for d in 0..domains as u64 {
            let mut r: Vec<u64> = self.functions.iter().map(|f| f.0 & d).collect();
            r.sort_unstable();
            r.dedup();
            restrictions.push(r);
        }
        let mut out = Vec::new();
        for d in 1..domains as u64 {
            let dom = Subset(d);
            let pivot = dom.iter().next().expect("nonempty domain");
            let rest = dom.remove(pivot);
            let here = &restrictions[d as usize];
            for &base in &restrictions[rest.0 as usize] {
                for value in [0u64, 1u64 << pivot] {
                    let ones = base | value;
                    if here.binary_search(&ones).is_ok() {
                        continue;
                    }
                    let minimal = dom.iter().all(|i| {
                        let sub = dom.remove(i).0;
                        restrictions[sub as usize]
                            .binary_search(&(ones & sub))
                            .is_ok()
                    });
                    if minimal {
                        let ones = Subset(ones);
                        out.push(PartialFunction::new(ones, dom.difference(ones))?);
                    }
                }
            }
        }
        out.sort_by_key(|f| (f.domain().len(), f.domain().0, f.ones().0));
        Ok(out)
    }

    /// Minimal generators of the suboplex ideal `I_C`.
    ///
    /// When coordinate `i` is constant on `C`, the extenture `{i ↦ b}` has a
    /// degree-one monomial dividing `x(i,0)x(i,1)`, and the functional monomial
    /// is dropped.
    pub fn suboplex_ideal(&self) -> Result<IdealGenerators> {
        let mut gens: Vec<SquarefreeMonomial> =
            (0..self.ground.n()).map(SquarefreeMonomial::functional).collect();
        gens.extend(self.extentures()?.into_iter().map(|f| f.graph_monomial()));
        Ok(IdealGenerators::minimalize(self.ground, gens))
    }

    /// Generators of the Alexander dual `I*_C`: `m(A,A)` for each 1-preimage `A`.
    pub fn dual_ideal(&self) -> IdealGenerators {
        let n = self.ground.n();
        let gens = self
            .functions
            .iter()
            .map(|&a| SquarefreeMonomial::new(a, a.complement(n)))
            .collect();
        IdealGenerators::new(self.ground, gens)
    }

    /// Whether `∏_{i∈U} y_i` lies in the image of `I_C` under `x(i,b) ↦ y_i`.
    ///
    /// Functional monomials collapse to `y_i²` and never divide a squarefree
    /// monomial; an extenture monomial collapses to `∏_{i∈dom f} y_i`.
    pub fn collapse_membership(&self, u: Subset) -> Result<bool> {
        self.ground.check(u)?;
        let ideal = self.suboplex_ideal()?;
        Ok(collapsed_contains(&ideal, u))
    }

    /// Applies the output flip `f ↦ f ⊕ mask` to every function.
    pub fn flip(&self, mask: Subset) -> Result<FunctionClass> {
        self.ground.check(mask)?;
        FunctionClass::new(
            self.ground,
            self.functions.iter().map(|f| f.symmetric_difference(mask)).collect(),
        )
    }
}

/// Squarefree membership in the collapsed ideal, given generators of `I_C`.
pub fn collapsed_contains(ideal: &IdealGenerators, u: Subset) -> bool {
    ideal.generators().iter().any(|g| {
        g.support0().intersection(g.support1()).is_empty()
            && g.support0().union(g.support1()).is_subset(u)
    })
}
