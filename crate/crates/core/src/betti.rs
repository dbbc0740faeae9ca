//! Cellular resolution on the order complex, multigraded Betti numbers of the
//! dual ideal `I*_{C(P)}`, and Betti table rendering.
//!
//! For an intersection-closed poset `P` the Betti numbers live only in degrees
//! `m(A,B)` with `A ≤ B` in `P`:
//!
//! * `β_{0,m(A,A)} = 1`,
//! * `β_{i,m(A,B)} = dim H̃_{i−2}(Δ̄[A,B])` for `i ≥ 1`, where `Δ̄[A,B]` is the
//!   truncated order complex of the interval,
//! * and, when every open interval is Cohen–Macaulay, `β_{i,m(A,B)} = |μ(A,B)|`
//!   exactly when `i = rank[A,B]`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class::FunctionClass;
use crate::complex::{is_interval_cm, order_complex, truncated_between, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::oracle;
use crate::poset::SubsetPoset;
use crate::subsets::{GroundSpec, SquarefreeMonomial};

/// Multigraded Betti numbers `β_{i,m}` of a squarefree monomial ideal in `2n` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    ground: GroundSpec,
    entries: BTreeMap<(usize, SquarefreeMonomial), usize>,
}

impl BettiTable {
    pub fn new(ground: GroundSpec) -> Self {
        BettiTable {
            ground,
            entries: BTreeMap::new(),
        }
    }

    pub fn ground(&self) -> GroundSpec {
        self.ground
    }

    /// Adds `value` to `β_{i,m}`; zero values are not stored.
    pub fn add(&mut self, i: usize, m: SquarefreeMonomial, value: usize) {
        if value > 0 {
            *self.entries.entry((i, m)).or_default() += value;
        }
    }

    pub fn get(&self, i: usize, m: SquarefreeMonomial) -> usize {
        self.entries.get(&(i, m)).copied().unwrap_or(0)
    }

    /// Nonzero entries in `(i, multidegree)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, SquarefreeMonomial, usize)> + '_ {
        self.entries.iter().map(|(&(i, m), &v)| (i, m, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest `i` with a nonzero entry.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.0).max()
    }

    /// `max (deg m − i)` over nonzero entries.
    pub fn regularity(&self) -> Option<usize> {
        self.entries.keys().map(|(i, m)| m.degree() - i).max()
    }

    /// `β_{i,j} = Σ_{deg m = j} β_{i,m}`.
    pub fn graded(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for (&(i, m), &v) in &self.entries {
            *out.entry((i, m.degree())).or_default() += v;
        }
        out
    }

    /// `β_i = Σ_m β_{i,m}`.
    pub fn totals(&self) -> Vec<usize> {
        let Some(top) = self.projective_dimension() else {
            return Vec::new();
        };
        let mut t = vec![0; top + 1];
        for (&(i, _), &v) in &self.entries {
            t[i] += v;
        }
        t
    }

    /// Macaulay2-style table: a header of homological indices, a `total:` row,
    /// and one row per `r` listing `β_{i,i+r}`, with `.` for zero.
    pub fn render_m2(&self) -> String {
        let totals = self.totals();
        let graded = self.graded();
        let rows: Vec<usize> = {
            let rs: Vec<usize> = graded.keys().map(|&(i, j)| j - i).collect();
            match (rs.iter().min(), rs.iter().max()) {
                (Some(&lo), Some(&hi)) => (lo..=hi).collect(),
                _ => Vec::new(),
            }
        };
        let cell = |v: usize| if v == 0 { ".".to_string() } else { v.to_string() };
        let mut table: Vec<(String, Vec<String>)> = Vec::new();
        table.push((String::new(), (0..totals.len()).map(|i| i.to_string()).collect()));
        table.push(("total:".into(), totals.iter().map(|&v| cell(v)).collect()));
        for &r in &rows {
            let cells = (0..totals.len())
                .map(|i| cell(graded.get(&(i, i + r)).copied().unwrap_or(0)))
                .collect();
            table.push((format!("{r}:"), cells));
        }
        let label_w = table.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..totals.len())
            .map(|c| table.iter().map(|(_, cs)| cs[c].len()).max().unwrap_or(1))
            .collect();
        let mut out = String::new();
        for (row, (label, cells)) in table.iter().enumerate() {
            let mut line = format!("{label:>label_w$}");
            for (c, w) in cells.iter().zip(&widths) {
                if row == 0 {
                    let _ = write!(line, " {c:<w$}");
                } else {
                    let _ = write!(line, " {c:>w$}");
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> BettiJson {
        let mut entries: Vec<BettiJsonEntry> = self
            .entries()
            .map(|(i, m, value)| BettiJsonEntry {
                i,
                degree: m.format_pair(self.ground),
                value,
            })
            .collect();
        entries.sort_by(|a, b| (a.i, a.degree.len(), &a.degree).cmp(&(b.i, b.degree.len(), &b.degree)));
        BettiJson { entries }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiJson {
    pub entries: Vec<BettiJsonEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiJsonEntry {
    pub i: usize,
    pub degree: String,
    pub value: usize,
}

/// The order complex of `P` with each chain `C0 < … < Ci` labeled by `m(C0, Ci)`.
#[derive(Debug, Clone)]
pub struct LabeledComplex {
    poset: SubsetPoset,
    complex: SimplicialComplex,
}

impl LabeledComplex {
    pub fn poset(&self) -> &SubsetPoset {
        &self.poset
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// lcm of the vertex labels `m(A,A)`; the empty face gets `1`.
    pub fn label(&self, face: &[u32]) -> SquarefreeMonomial {
        let n = self.poset.ground().n();
        face.iter()
            .map(|&v| {
                let a = self.poset.element(v as usize);
                SquarefreeMonomial::new(a, a.complement(n))
            })
            .fold(SquarefreeMonomial::ONE, SquarefreeMonomial::lcm)
    }

    /// Faces with label dividing `b`, excluding the empty face; `None` if there are none.
    fn restricted(&self, b: SquarefreeMonomial) -> SimplicialComplex {
        let faces: Vec<Face> = self
            .complex
            .faces()
            .iter()
            .skip(1)
            .flatten()
            .filter(|f| self.label(f).divides(b))
            .cloned()
            .collect();
        SimplicialComplex::from_facets(self.complex.vertex_count(), faces)
            .expect("faces of the order complex")
    }

    /// Number of free summands per homological degree (faces by dimension, with the empty face at −1).
    pub fn ranks(&self) -> Vec<usize> {
        self.complex.f_vector()
    }
}

/// Labels the order complex of an intersection-closed poset.
pub fn cellular_resolution(p: &SubsetPoset) -> Result<LabeledComplex> {
    p.require_intersection_closed()?;
    Ok(LabeledComplex {
        poset: p.clone(),
        complex: order_complex(p),
    })
}

/// Largest ground set for the exhaustive acyclicity check (all `4^n` degrees).
pub const EXHAUSTIVE_ACYCLIC_MAX_N: usize = 6;

/// Checks that every label-restricted subcomplex is null or acyclic. By default
/// only the realized face labels are tested; `exhaustive` tests all squarefree
/// monomials in the `2n` variables.
pub fn verify_acyclic(l: &LabeledComplex, field: FieldSpec, exhaustive: bool) -> Result<bool> {
    let n = l.poset.ground().n();
    let degrees: Vec<SquarefreeMonomial> = if exhaustive {
        if n > EXHAUSTIVE_ACYCLIC_MAX_N {
            return Err(Error::CapExceeded {
                what: "ground size for exhaustive acyclicity",
                value: n,
                cap: EXHAUSTIVE_ACYCLIC_MAX_N,
            });
        }
        (0u64..1 << (2 * n))
            .map(|mask| SquarefreeMonomial::from_variables((0..2 * n).filter(|v| mask >> v & 1 == 1)))
            .collect()
    } else {
        let mut labels: Vec<SquarefreeMonomial> = l
            .complex
            .faces()
            .iter()
            .skip(1)
            .flatten()
            .map(|f| l.label(f))
            .collect();
        labels.sort();
        labels.dedup();
        labels
    };
    Ok(degrees.par_iter().all(|&b| {
        let sub = l.restricted(b);
        sub.is_null() || sub.reduced_homology(field).is_acyclic()
    }))
}

fn pair_monomial(p: &SubsetPoset, i: usize, j: usize) -> SquarefreeMonomial {
    let n = p.ground().n();
    SquarefreeMonomial::new(p.element(j), p.element(i).complement(n))
}

/// Betti numbers of `I*_{C(P)}` from the homology of truncated interval order complexes.
pub fn betti_via_intervals(p: &SubsetPoset, field: FieldSpec) -> Result<BettiTable> {
    p.require_intersection_closed()?;
    let pairs = p.comparable_pairs();
    let found: Vec<(usize, SquarefreeMonomial, usize)> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let m = pair_monomial(p, i, j);
            if i == j {
                return vec![(0, m, 1)];
            }
            let h = truncated_between(p, i, j).reduced_homology(field);
            h.support()
                .map(|(d, dim)| ((d + 2) as usize, m, dim))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut table = BettiTable::new(p.ground());
    for (i, m, v) in found {
        table.add(i, m, v);
    }
    Ok(table)
}

/// What is known about the interval Cohen–Macaulay hypothesis of [`betti_via_mobius`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmAssurance {
    /// The caller vouches for it (e.g. geometric lattices, face posets).
    Asserted,
    /// Check with [`is_interval_cm`] over the given field and fail if it does not hold.
    Check(FieldSpec),
    /// Proceed without checking; a warning is logged.
    Unverified,
}

/// Betti numbers from the Möbius function: `|μ(A,B)|` at `i = rank[A,B]`.
pub fn betti_via_mobius(p: &SubsetPoset, assurance: CmAssurance) -> Result<BettiTable> {
    p.require_intersection_closed()?;
    match assurance {
        CmAssurance::Asserted => {}
        CmAssurance::Check(field) => {
            if !is_interval_cm(p, field) {
                return Err(Error::Invalid(format!(
                    "poset is not interval Cohen-Macaulay over {field}"
                )));
            }
        }
        CmAssurance::Unverified => {
            log::warn!("Möbius Betti numbers computed without verifying interval Cohen-Macaulayness");
        }
    }
    let mut table = BettiTable::new(p.ground());
    for (i, j) in p.comparable_pairs() {
        let mu = p.mobius_index(i, j).expect("comparable");
        table.add(p.interval_rank(i, j), pair_monomial(p, i, j), mu.unsigned_abs() as usize);
    }
    Ok(table)
}

/// Projective dimension of `I*_C`. Uses interval homology when the class is
/// intersection-closed and the Koszul oracle otherwise.
pub fn homological_dimension(c: &FunctionClass, field: FieldSpec) -> Result<usize> {
    let table = if c.is_intersection_closed() {
        betti_via_intervals(&c.support_poset(), field)?
    } else {
        oracle::betti_oracle(&c.dual_ideal(), field)?
    };
    Ok(table.projective_dimension().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsets::Subset;

    fn s(e: &[usize]) -> Subset {
        Subset::from_elems(e.iter().copied())
    }

    fn flats_poset() -> SubsetPoset {
        let n = GroundSpec::new(4).unwrap();
        let elems = ["0000", "1000", "0100", "0010", "0001", "1100", "1010", "1001", "0111", "1111"]
            .iter()
            .map(|b| n.parse(b).unwrap())
            .collect();
        SubsetPoset::build(n, elems).unwrap()
    }

    const FLATS_TABLE: &str = "       0  1  2  3\ntotal: 10 17 10 2\n    4: 10 11  3 .\n    5:  .  6  7 2\n";

    #[test]
    fn flats_table_renders() {
        for field in [FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Rational] {
            let t = betti_via_intervals(&flats_poset(), field).unwrap();
            assert_eq!(t.render_m2(), FLATS_TABLE);
            assert_eq!(t.projective_dimension(), Some(3));
        }
        let t = betti_via_mobius(&flats_poset(), CmAssurance::Check(FieldSpec::Prime(2))).unwrap();
        assert_eq!(t.render_m2(), FLATS_TABLE);
    }

    #[test]
    fn flats_entries() {
        let p = flats_poset();
        let n = p.ground();
        let t = betti_via_intervals(&p, FieldSpec::Prime(2)).unwrap();
        let m = crate::subsets::monomial(n, Subset::EMPTY, s(&[1, 2, 3])).unwrap();
        assert_eq!(t.get(2, m), 2);
        for a in p.elements() {
            assert_eq!(t.get(0, crate::subsets::monomial(n, *a, *a).unwrap()), 1);
        }
        for (a, b) in p.cover_relations() {
            assert_eq!(t.get(1, crate::subsets::monomial(n, a, b).unwrap()), 1);
        }
        assert_eq!(t.totals()[1], p.cover_relations().len());
        let json = t.to_json();
        assert!(json.entries.iter().any(|e| e.i == 2 && e.degree == "m(0000,0111)" && e.value == 2));
    }

    #[test]
    fn small_tables() {
        let n1 = GroundSpec::new(1).unwrap();
        let chain = SubsetPoset::build(n1, vec![Subset::EMPTY, s(&[0])]).unwrap();
        let t = betti_via_intervals(&chain, FieldSpec::Prime(2)).unwrap();
        assert_eq!(t.render_m2(), "       0 1\ntotal: 2 1\n    1: 2 1\n");
        let single = SubsetPoset::build(n1, vec![s(&[0])]).unwrap();
        let t = betti_via_intervals(&single, FieldSpec::Prime(2)).unwrap();
        assert_eq!(t.render_m2(), "       0\ntotal: 1\n    1: 1\n");
    }

    #[test]
    fn resolution_examples() {
        let l = cellular_resolution(&flats_poset()).unwrap();
        assert_eq!(l.ranks()[1], 10);
        assert!(l.complex().faces()[1].iter().all(|v| l.label(v).degree() == 4));

        let n1 = GroundSpec::new(1).unwrap();
        let chain = SubsetPoset::build(n1, vec![Subset::EMPTY, s(&[0])]).unwrap();
        let l = cellular_resolution(&chain).unwrap();
        assert_eq!(l.ranks(), vec![1, 2, 1]);
        assert_eq!(l.label(&[0, 1]).to_string(), "x0_0*x0_1");
        assert_eq!(l.label(&[]), SquarefreeMonomial::ONE);

        let single = SubsetPoset::build(n1, vec![Subset::EMPTY]).unwrap();
        assert_eq!(cellular_resolution(&single).unwrap().ranks(), vec![1, 1]);

        let anti = SubsetPoset::build(GroundSpec::new(2).unwrap(), vec![s(&[0]), s(&[1])]).unwrap();
        assert!(matches!(cellular_resolution(&anti), Err(Error::NotIntersectionClosed(_))));
        assert!(betti_via_intervals(&anti, FieldSpec::Prime(2)).is_err());
    }

    #[test]
    fn acyclicity() {
        let l = cellular_resolution(&flats_poset()).unwrap();
        assert!(verify_acyclic(&l, FieldSpec::Prime(2), false).unwrap());
        assert!(verify_acyclic(&l, FieldSpec::Prime(3), true).unwrap());
        // m(A,B) with V(A) empty gives the null subcomplex
        let n = flats_poset().ground();
        let b = crate::subsets::monomial(n, s(&[1, 2]), s(&[1, 2])).unwrap();
        assert!(l.restricted(b).is_null());
        // degree m(1, 0123) restricts to chains above {1}: a cone on {1}
        let b = crate::subsets::monomial(n, s(&[1]), n.full()).unwrap();
        assert!(l.restricted(b).is_cone());
    }

    #[test]
    fn mobius_requires_cm_when_checked() {
        // two chains glued at the bottom plus a top: (∅, top) is disconnected
        // but not CM? It is two disjoint edges: not CM.
        let n = GroundSpec::new(4).unwrap();
        let p = SubsetPoset::build(
            n,
            vec![Subset::EMPTY, s(&[0]), s(&[0, 1]), s(&[2]), s(&[2, 3]), n.full()],
        )
        .unwrap();
        assert!(!is_interval_cm(&p, FieldSpec::Prime(2)));
        assert!(betti_via_mobius(&p, CmAssurance::Check(FieldSpec::Prime(2))).is_err());
        let forced = betti_via_mobius(&p, CmAssurance::Unverified).unwrap();
        let honest = betti_via_intervals(&p, FieldSpec::Prime(2)).unwrap();
        assert_ne!(forced, honest);
    }

    #[test]
    fn homological_dimension_examples() {
        let c = FunctionClass::from_poset(&flats_poset()).unwrap();
        assert_eq!(homological_dimension(&c, FieldSpec::Prime(2)).unwrap(), 3);
        let d = FunctionClass::deltas(GroundSpec::new(4).unwrap());
        assert_eq!(homological_dimension(&d, FieldSpec::Prime(2)).unwrap(), 3);
    }
}
