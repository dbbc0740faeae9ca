//! Squarefree monomial ideals in the `2n` variables `x(i,b)`, given by generators.

use crate::subsets::{GroundSpec, SquarefreeMonomial};

/// A generating set of a squarefree monomial ideal in `𝕜[x(i,b) | i ∈ [n], b ∈ {0,1}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealGenerators {
    ground: GroundSpec,
    gens: Vec<SquarefreeMonomial>,
}

impl IdealGenerators {
    /// Keeps the generators as given, sorted by degree then variables.
    pub fn new(ground: GroundSpec, mut gens: Vec<SquarefreeMonomial>) -> Self {
        gens.sort_by_key(|m| (m.degree(), m.variables().collect::<Vec<_>>()));
        gens.dedup();
        IdealGenerators { ground, gens }
    }

    /// Drops every generator divisible by another one.
    pub fn minimalize(ground: GroundSpec, gens: Vec<SquarefreeMonomial>) -> Self {
        let all = IdealGenerators::new(ground, gens);
        let kept = all
            .gens
            .iter()
            .copied()
            .filter(|m| !all.gens.iter().any(|g| g != m && g.divides(*m)))
            .collect();
        IdealGenerators { ground, gens: kept }
    }

    pub fn ground(&self) -> GroundSpec {
        self.ground
    }

    /// Number of variables of the ambient ring.
    pub fn arity(&self) -> usize {
        2 * self.ground.n()
    }

    pub fn generators(&self) -> &[SquarefreeMonomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Membership of a squarefree monomial: some generator divides it.
    pub fn contains(&self, m: SquarefreeMonomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// No generator divides another.
    pub fn is_antichain(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| {
            self.gens
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.divides(*b))
        })
    }
}
