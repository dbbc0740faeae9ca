//! Brute-force reference computations with no structural shortcuts: Betti
//! numbers from upper Koszul simplicial complexes, regularity, and VC dimension
//! by checking every subset.

use rayon::prelude::*;

use crate::betti::BettiTable;
use crate::class::FunctionClass;
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::ideal::IdealGenerators;
use crate::subsets::{SquarefreeMonomial, Subset};

/// Default cap on the number of variables `2n` for [`betti_oracle`].
pub const ORACLE_MAX_ARITY: usize = 12;

/// Cap on `n` for [`vc_oracle`].
pub const VC_ORACLE_MAX_N: usize = 20;

/// `β_{i,b}(I) = dim H̃_{i−1}(K^b)` over every squarefree `b`, where
/// `K^b = {τ ⊆ supp b : b/τ ∈ I}`.
pub fn betti_oracle(ideal: &IdealGenerators, field: FieldSpec) -> Result<BettiTable> {
    betti_oracle_with_cap(ideal, field, ORACLE_MAX_ARITY)
}

pub fn betti_oracle_with_cap(
    ideal: &IdealGenerators,
    field: FieldSpec,
    max_arity: usize,
) -> Result<BettiTable> {
    let arity = ideal.arity();
    if arity > max_arity {
        return Err(Error::CapExceeded {
            what: "oracle arity",
            value: arity,
            cap: max_arity,
        });
    }
    let member = membership_table(ideal);
    let found: Vec<(usize, u64, usize)> = (0u64..1 << arity)
        .into_par_iter()
        .filter(|&b| member[b as usize])
        .flat_map_iter(|b| {
            let h = koszul_complex(&member, b).reduced_homology(field);
            h.support()
                .map(|(d, dim)| ((d + 1) as usize, b, dim))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut table = BettiTable::new(ideal.ground());
    for (i, b, v) in found {
        table.add(i, from_mask(b), v);
    }
    Ok(table)
}

/// `max (deg b − i)` over nonzero `β_{i,b}`; `None` for the zero ideal.
pub fn regularity_oracle(ideal: &IdealGenerators, field: FieldSpec) -> Result<Option<usize>> {
    Ok(betti_oracle(ideal, field)?.regularity())
}

/// VC dimension by testing every subset of `[n]` for shattering.
pub fn vc_oracle(c: &FunctionClass) -> Result<usize> {
    let n = c.ground().n();
    if n > VC_ORACLE_MAX_N {
        return Err(Error::CapExceeded {
            what: "ground size for the VC oracle",
            value: n,
            cap: VC_ORACLE_MAX_N,
        });
    }
    let best = (0u64..1 << n)
        .into_par_iter()
        .filter(|&u| {
            let mut seen = vec![false; 1 << u.count_ones()];
            for f in c.functions() {
                seen[pext(f.bits(), u) as usize] = true;
            }
            seen.iter().all(|&s| s)
        })
        .map(|u| u.count_ones() as usize)
        .max();
    Ok(best.unwrap_or(0))
}

/// Gathers the bits of `x` selected by `mask` into the low bits.
fn pext(x: u64, mask: u64) -> u64 {
    let mut out = 0;
    let mut k = 0;
    let mut m = mask;
    while m != 0 {
        let bit = m & m.wrapping_neg();
        if x & bit != 0 {
            out |= 1 << k;
        }
        k += 1;
        m ^= bit;
    }
    out
}

fn to_mask(m: SquarefreeMonomial) -> u64 {
    m.variables().fold(0, |acc, v| acc | 1 << v)
}

fn from_mask(b: u64) -> SquarefreeMonomial {
    SquarefreeMonomial::from_variables(Subset(b).iter())
}

/// `member[b]` iff the monomial with variable mask `b` lies in the ideal.
fn membership_table(ideal: &IdealGenerators) -> Vec<bool> {
    let size = 1usize << ideal.arity();
    let mut member = vec![false; size];
    for g in ideal.generators() {
        member[to_mask(*g) as usize] = true;
    }
    for b in 0..size {
        if !member[b] {
            let mut rest = b;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                if member[b ^ bit] {
                    member[b] = true;
                    break;
                }
                rest ^= bit;
            }
        }
    }
    member
}

/// The upper Koszul complex of degree `b`, on vertices the variables of `b` in order.
fn koszul_complex(member: &[bool], b: u64) -> SimplicialComplex {
    let vars: Vec<u64> = Subset(b).iter().map(|v| 1u64 << v).collect();
    let mut faces: Vec<Face> = Vec::new();
    for tau in 0u64..1 << vars.len() {
        let removed: u64 = (0..vars.len()).filter(|k| tau >> k & 1 == 1).map(|k| vars[k]).sum();
        if member[(b ^ removed) as usize] {
            faces.push((0..vars.len() as u32).filter(|&k| tau >> k & 1 == 1).collect());
        }
    }
    SimplicialComplex::from_facets(vars.len(), faces).expect("vertices in range")
}
