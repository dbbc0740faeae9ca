//! Classes of Boolean formulas on the cube `[2]^d`, with point `x` numbered by `Σ x_i 2^i`.

use serde::{Deserialize, Serialize};

use super::cells::intersection_closure;
use super::matroid::Matroid;
use crate::class::FunctionClass;
use crate::error::{Error, Result};
use crate::poset::SubsetPoset;
use crate::subsets::{GroundSpec, Subset};

/// Largest `d` for formula classes (ground set `2^d`).
pub const FORMULA_MAX_D: usize = 4;

/// JSON form of a formula class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FormulaClassSpec {
    /// Conjunctions of clauses with at most `k` literals.
    Kcnf {
        d: usize,
        k: usize,
        #[serde(default)]
        monotone: bool,
    },
    MonotoneKcnf { d: usize, k: usize },
    /// Conjunctions of members of `generators`, each a bit string of length `2^d`.
    Csp { d: usize, generators: Vec<String> },
    /// Conjunctions of parity functions.
    ParityConj { d: usize },
    /// Conjunctions of `GF(2)` polynomials of degree at most `k`.
    PolyConj { d: usize, k: usize },
}

impl FormulaClassSpec {
    pub fn d(&self) -> usize {
        match self {
            FormulaClassSpec::Kcnf { d, .. }
            | FormulaClassSpec::MonotoneKcnf { d, .. }
            | FormulaClassSpec::Csp { d, .. }
            | FormulaClassSpec::ParityConj { d }
            | FormulaClassSpec::PolyConj { d, .. } => *d,
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Subsets of `[d]` of size at most `k`, by size then bits.
fn small_subsets(d: usize, k: usize) -> Vec<u64> {
    let mut out: Vec<u64> = (0u64..1 << d).filter(|u| u.count_ones() as usize <= k).collect();
    out.sort_by_key(|u| (u.count_ones(), *u));
    out
}

/// Supports of the clauses with at most `k` literals (and at least one).
fn clause_supports(d: usize, k: usize, monotone: bool) -> Vec<Subset> {
    let n = 1usize << d;
    let mut out = Vec::new();
    for vars in small_subsets(d, k).into_iter().filter(|&u| u != 0) {
        let signs: Vec<u64> = if monotone { vec![vars] } else { Subset(vars).subsets().map(|s| s.bits()).collect() };
        for positive in signs {
            // the clause is false exactly when x agrees with `!positive` on `vars`
            let falsified = |x: usize| (x as u64 ^ !positive) & vars == 0;
            out.push(Subset::from_elems((0..n).filter(|&x| !falsified(x))));
        }
    }
    out
}

/// The support poset of the class.
pub fn formula_poset(spec: &FormulaClassSpec) -> Result<SubsetPoset> {
    let d = spec.d();
    if d == 0 || d > FORMULA_MAX_D {
        return Err(Error::CapExceeded {
            what: "formula dimension d",
            value: d,
            cap: FORMULA_MAX_D,
        });
    }
    let n = 1usize << d;
    let ground = GroundSpec::new(n)?;
    let check_k = |k: usize| {
        if k > d {
            Err(Error::Invalid(format!("k = {k} exceeds d = {d}")))
        } else {
            Ok(())
        }
    };
    let family = match spec {
        FormulaClassSpec::Kcnf { k, monotone, .. } => {
            check_k(*k)?;
            clause_supports(d, *k, *monotone)
        }
        FormulaClassSpec::MonotoneKcnf { k, .. } => {
            check_k(*k)?;
            clause_supports(d, *k, true)
        }
        FormulaClassSpec::Csp { generators, .. } => generators
            .iter()
            .map(|g| ground.parse(g))
            .collect::<Result<_>>()?,
        FormulaClassSpec::ParityConj { .. } => return veronese(d, 1, false).lattice_of_flats(),
        FormulaClassSpec::PolyConj { k, .. } => {
            check_k(*k)?;
            return veronese(d, *k, true).lattice_of_flats();
        }
    };
    let with_top = family.into_iter().chain([ground.full()]);
    SubsetPoset::build(ground, intersection_closure(with_top))
}

/// The class of the support poset.
pub fn formula_class(spec: &FormulaClassSpec) -> Result<FunctionClass> {
    FunctionClass::from_poset(&formula_poset(spec)?)
}

/// Linear matroid over `GF(2)` of the columns `φ(x) = (∏_{i∈U} x_i)_{|U| ≤ k}`.
/// Without `constant` the row for `U = ∅` is dropped; for `k = 1` this gives
/// all vectors of `GF(2)^d`.
fn veronese(d: usize, k: usize, constant: bool) -> Matroid {
    let rows: Vec<Vec<i64>> = small_subsets(d, k)
        .into_iter()
        .filter(|&u| constant || u != 0)
        .map(|u| (0u64..1 << d).map(|x| i64::from(x & u == u)).collect())
        .collect();
    Matroid::linear(2, &rows).expect("0/1 matrix over GF(2)")
}

/// `Σ_{i ≤ k} C(d, i)`.
pub fn monotone_kcnf_upper(d: usize, k: usize) -> usize {
    (0..=k).map(|i| binomial(d, i)).sum()
}

/// `2^k C(d, k)`.
pub fn kcnf_upper(d: usize, k: usize) -> usize {
    (1 << k) * binomial(d, k)
}

/// `C(d, k)`.
pub fn kcnf_lower(d: usize, k: usize) -> usize {
    binomial(d, k)
}
