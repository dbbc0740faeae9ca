//! Matroids given by a rank oracle, their lattices of flats and minors.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poset::SubsetPoset;
use crate::subsets::{GroundSpec, Subset};

/// Largest ground set for [`Matroid::lattice_of_flats`].
pub const FLATS_MAX_GROUND: usize = 16;

/// JSON form of a matroid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatroidSpec {
    Uniform { k: usize, m: usize },
    /// Elements are the columns of `matrix` over `GF(p)`.
    Linear { p: u64, matrix: Vec<Vec<i64>> },
    Graphic { vertices: usize, edges: Vec<[usize; 2]> },
    DirectSum { parts: Vec<MatroidSpec> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Uniform { k: usize },
    Linear { field: FieldSpec, columns: Vec<Vec<(usize, i64)>> },
    Graphic { vertices: usize, edges: Vec<[usize; 2]> },
    DirectSum { parts: Vec<Matroid> },
    /// `base|G / F`, with element `e` of the minor being `elements[e]` of the base.
    Minor { base: Box<Matroid>, contracted: Subset, elements: Vec<usize> },
}

/// A matroid on the ground set `{0, …, m−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(try_from = "MatroidSpec")]
pub struct Matroid {
    m: usize,
    repr: Repr,
}

impl TryFrom<MatroidSpec> for Matroid {
    type Error = Error;

    fn try_from(spec: MatroidSpec) -> Result<Self> {
        Matroid::from_spec(&spec)
    }
}

fn check_ground(m: usize) -> Result<()> {
    if m > GroundSpec::MAX {
        return Err(Error::CapExceeded {
            what: "matroid ground size",
            value: m,
            cap: GroundSpec::MAX,
        });
    }
    Ok(())
}

impl Matroid {
    pub fn from_spec(spec: &MatroidSpec) -> Result<Self> {
        match spec {
            MatroidSpec::Uniform { k, m } => Matroid::uniform(*k, *m),
            MatroidSpec::Linear { p, matrix } => Matroid::linear(*p, matrix),
            MatroidSpec::Graphic { vertices, edges } => Matroid::graphic(*vertices, edges),
            MatroidSpec::DirectSum { parts } => {
                Matroid::direct_sum(parts.iter().map(Matroid::from_spec).collect::<Result<_>>()?)
            }
        }
    }

    /// `U(k, m)`: every set of size at most `k` is independent.
    pub fn uniform(k: usize, m: usize) -> Result<Self> {
        check_ground(m)?;
        if k > m {
            return Err(Error::Invalid(format!("uniform matroid needs k <= m, got k={k}, m={m}")));
        }
        Ok(Matroid { m, repr: Repr::Uniform { k } })
    }

    /// The column matroid of `matrix` over `GF(p)`.
    pub fn linear(p: u64, matrix: &[Vec<i64>]) -> Result<Self> {
        let field = FieldSpec::prime(p)?;
        let m = matrix.first().map_or(0, Vec::len);
        if matrix.iter().any(|row| row.len() != m) {
            return Err(Error::Invalid("matrix rows have different lengths".into()));
        }
        check_ground(m)?;
        let columns = (0..m)
            .map(|j| {
                matrix
                    .iter()
                    .enumerate()
                    .filter_map(|(i, row)| {
                        let v = row[j].rem_euclid(p as i64);
                        (v != 0).then_some((i, v))
                    })
                    .collect()
            })
            .collect();
        Ok(Matroid { m, repr: Repr::Linear { field, columns } })
    }

    /// The cycle matroid of a multigraph; edge `e` is element `e`.
    pub fn graphic(vertices: usize, edges: &[[usize; 2]]) -> Result<Self> {
        check_ground(edges.len())?;
        for &[u, v] in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    count: vertices,
                });
            }
        }
        Ok(Matroid {
            m: edges.len(),
            repr: Repr::Graphic {
                vertices,
                edges: edges.to_vec(),
            },
        })
    }

    /// Parts occupy consecutive blocks of the ground set, in order.
    pub fn direct_sum(parts: Vec<Matroid>) -> Result<Self> {
        let m = parts.iter().map(|p| p.m).sum();
        check_ground(m)?;
        Ok(Matroid { m, repr: Repr::DirectSum { parts } })
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    fn check(&self, a: Subset) -> Result<()> {
        if a.bits() & !Subset::full(self.m).bits() != 0 {
            return Err(Error::OutOfRange { bits: a.bits(), n: self.m });
        }
        Ok(())
    }

    pub fn rank_of(&self, a: Subset) -> Result<usize> {
        self.check(a)?;
        Ok(self.rank_unchecked(a))
    }

    fn rank_unchecked(&self, a: Subset) -> usize {
        match &self.repr {
            Repr::Uniform { k } => a.len().min(*k),
            Repr::Linear { field, columns } => {
                let rows: Vec<_> = a.iter().map(|j| columns[j].clone()).collect();
                field.rank(&rows)
            }
            Repr::Graphic { vertices, edges } => {
                let mut parent: Vec<usize> = (0..*vertices).collect();
                fn find(parent: &mut [usize], mut x: usize) -> usize {
                    while parent[x] != x {
                        parent[x] = parent[parent[x]];
                        x = parent[x];
                    }
                    x
                }
                let mut r = 0;
                for e in a.iter() {
                    let [u, v] = edges[e];
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru != rv {
                        parent[ru] = rv;
                        r += 1;
                    }
                }
                r
            }
            Repr::DirectSum { parts } => {
                let mut offset = 0;
                let mut r = 0;
                for part in parts {
                    let block = Subset((a.bits() >> offset) & Subset::full(part.m).bits());
                    r += part.rank_unchecked(block);
                    offset += part.m;
                }
                r
            }
            Repr::Minor { base, contracted, elements } => {
                let lifted = a
                    .iter()
                    .fold(*contracted, |acc, e| acc.insert(elements[e]));
                base.rank_unchecked(lifted) - base.rank_unchecked(*contracted)
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank_unchecked(Subset::full(self.m))
    }

    /// `{x : rk(A ∪ x) = rk(A)}`.
    pub fn closure(&self, a: Subset) -> Result<Subset> {
        self.check(a)?;
        Ok(self.closure_unchecked(a))
    }

    fn closure_unchecked(&self, a: Subset) -> Subset {
        let r = self.rank_unchecked(a);
        (0..self.m)
            .filter(|&x| !a.contains(x))
            .filter(|&x| self.rank_unchecked(a.insert(x)) == r)
            .fold(a, Subset::insert)
    }

    pub fn is_flat(&self, a: Subset) -> Result<bool> {
        Ok(self.closure(a)? == a)
    }

    /// All flats, ordered by inclusion. Built level by level from `cl(∅)`.
    pub fn lattice_of_flats(&self) -> Result<SubsetPoset> {
        if self.m > FLATS_MAX_GROUND {
            return Err(Error::CapExceeded {
                what: "matroid ground size for flat enumeration",
                value: self.m,
                cap: FLATS_MAX_GROUND,
            });
        }
        if self.m == 0 {
            return Err(Error::GroundSize(0));
        }
        let mut all: BTreeSet<u64> = BTreeSet::new();
        let mut level = vec![self.closure_unchecked(Subset::EMPTY)];
        all.insert(level[0].bits());
        while !level.is_empty() {
            let mut next: BTreeSet<u64> = BTreeSet::new();
            for f in &level {
                for e in (0..self.m).filter(|&e| !f.contains(e)) {
                    let g = self.closure_unchecked(f.insert(e));
                    if all.insert(g.bits()) {
                        next.insert(g.bits());
                    }
                }
            }
            level = next.into_iter().map(Subset).collect();
        }
        SubsetPoset::build(GroundSpec::new(self.m)?, all.into_iter().map(Subset).collect())
    }

    /// `M|G / F` for flats `F ⊆ G`, on the elements of `G ∖ F` in increasing order.
    pub fn minor(&self, f: Subset, g: Subset) -> Result<Matroid> {
        let ground = GroundSpec::new(self.m.max(1))?;
        for s in [f, g] {
            if !self.is_flat(s)? {
                return Err(Error::NotFlat(ground.format(s)));
            }
        }
        if !f.is_subset(g) {
            return Err(Error::NotSubset {
                lo: ground.format(f),
                hi: ground.format(g),
            });
        }
        let elements: Vec<usize> = g.difference(f).iter().collect();
        Ok(Matroid {
            m: elements.len(),
            repr: Repr::Minor {
                base: Box::new(self.clone()),
                contracted: f,
                elements,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(e: &[usize]) -> Subset {
        Subset::from_elems(e.iter().copied())
    }

    fn flats_sum() -> Matroid {
        Matroid::direct_sum(vec![Matroid::uniform(1, 1).unwrap(), Matroid::uniform(2, 3).unwrap()]).unwrap()
    }

    fn flats_matrix() -> Matroid {
        Matroid::linear(2, &[vec![1, 0, 0, 0], vec![0, 1, 1, 0], vec![0, 1, 0, 1]]).unwrap()
    }

    fn flats_graph() -> Matroid {
        Matroid::graphic(4, &[[2, 3], [0, 1], [1, 2], [2, 0]]).unwrap()
    }

    #[test]
    fn rank_examples() {
        let u = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u.rank_of(s(&[0, 1, 2])).unwrap(), 2);
        assert_eq!(flats_matrix().rank(), 3);
        assert_eq!(flats_graph().rank_of(s(&[1, 2, 3])).unwrap(), 2);
        assert!(u.rank_of(s(&[3])).is_err());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(Matroid::uniform(2, 3).unwrap().closure(s(&[0])).unwrap(), s(&[0]));
        for m in [flats_sum(), flats_matrix(), flats_graph()] {
            assert_eq!(m.closure(s(&[1, 2])).unwrap(), s(&[1, 2, 3]));
        }
    }

    #[test]
    fn flats_examples() {
        let lattices: Vec<_> = [flats_sum(), flats_matrix(), flats_graph()]
            .iter()
            .map(|m| m.lattice_of_flats().unwrap())
            .collect();
        assert_eq!(lattices[0].len(), 10);
        assert_eq!(lattices[0].rank().unwrap(), 3);
        assert_eq!(lattices[0], lattices[1]);
        assert_eq!(lattices[0], lattices[2]);
        assert_eq!(Matroid::uniform(2, 3).unwrap().lattice_of_flats().unwrap().len(), 5);
        // all of GF(2)^2 as columns, zero vector included
        let all = Matroid::linear(2, &[vec![0, 1, 0, 1], vec![0, 0, 1, 1]]).unwrap();
        let flats = all.lattice_of_flats().unwrap();
        assert_eq!(flats.len(), 5);
        assert!(flats.elements().iter().all(|f| f.contains(0)));
    }

    #[test]
    fn minor_examples() {
        let m = flats_sum();
        let top = Subset::full(4);
        let bottom = m.closure(Subset::EMPTY).unwrap();
        let same = m.minor(bottom, top).unwrap();
        assert_eq!(same.lattice_of_flats().unwrap(), m.lattice_of_flats().unwrap());

        let minor = m.minor(Subset::EMPTY, s(&[1, 2, 3])).unwrap();
        let flats = minor.lattice_of_flats().unwrap();
        assert_eq!(flats, Matroid::uniform(2, 3).unwrap().lattice_of_flats().unwrap());
        let (b, t) = (flats.bottom().unwrap(), flats.top().unwrap());
        assert_eq!(flats.mobius_index(b, t).unwrap().abs(), 2);

        let contracted = m.minor(s(&[0]), top).unwrap();
        assert_eq!(contracted.lattice_of_flats().unwrap().len(), 5);
        assert!(matches!(m.minor(s(&[1]), s(&[1, 2])), Err(Error::NotFlat(_))));
    }

    #[test]
    fn json_round_trip() {
        let spec: MatroidSpec = serde_json::from_str(
            r#"{"type":"direct_sum","parts":[{"type":"uniform","k":1,"m":1},{"type":"uniform","k":2,"m":3}]}"#,
        )
        .unwrap();
        assert_eq!(Matroid::from_spec(&spec).unwrap(), flats_sum());
        let m: Matroid = serde_json::from_str(r#"{"type":"linear","p":2,"matrix":[[1,0,0,0],[0,1,1,0],[0,1,0,1]]}"#).unwrap();
        assert_eq!(m, flats_matrix());
        assert!(serde_json::from_str::<Matroid>(r#"{"type":"uniform","k":4,"m":3}"#).is_err());
        assert!(serde_json::from_str::<Matroid>(r#"{"type":"linear","p":4,"matrix":[[1]]}"#).is_err());
    }

    fn arb_matroid() -> impl Strategy<Value = Matroid> {
        prop_oneof![
            (1usize..7).prop_flat_map(|m| (0..=m, Just(m))).prop_map(|(k, m)| Matroid::uniform(k, m).unwrap()),
            (1usize..4, 1usize..7, prop::sample::select(vec![2u64, 3]))
                .prop_flat_map(|(r, c, p)| {
                    (prop::collection::vec(prop::collection::vec(0i64..p as i64, c), r), Just(p))
                })
                .prop_map(|(mat, p)| Matroid::linear(p, &mat).unwrap()),
            (2usize..5)
                .prop_flat_map(|v| prop::collection::vec([0..v, 0..v], 1..7).prop_map(move |e| (v, e)))
                .prop_map(|(v, e)| Matroid::graphic(v, &e).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn rank_axioms(m in arb_matroid(), a in any::<u64>(), b in any::<u64>()) {
            let full = Subset::full(m.ground_size()).bits();
            let (a, b) = (Subset(a & full), Subset(b & full));
            let r = |x: Subset| m.rank_of(x).unwrap();
            prop_assert!(r(a) <= a.len());
            prop_assert!(r(a.intersection(b)) <= r(a));
            prop_assert!(r(a.union(b)) + r(a.intersection(b)) <= r(a) + r(b));
        }

        #[test]
        fn closure_operator(m in arb_matroid(), a in any::<u64>(), b in any::<u64>()) {
            let full = Subset::full(m.ground_size()).bits();
            let a = Subset(a & full);
            let b = Subset(b & full).union(a);
            let ca = m.closure(a).unwrap();
            prop_assert!(a.is_subset(ca));
            prop_assert_eq!(m.closure(ca).unwrap(), ca);
            prop_assert!(ca.is_subset(m.closure(b).unwrap()));
        }

        #[test]
        fn flat_lattice_agrees_with_closure(m in arb_matroid(), a in any::<u64>()) {
            let flats = m.lattice_of_flats().unwrap();
            prop_assert!(flats.is_intersection_closed());
            prop_assert_eq!(flats.rank().unwrap(), m.rank());
            let a = Subset(a & Subset::full(m.ground_size()).bits());
            prop_assert_eq!(flats.closure(a), Some(m.closure(a).unwrap()));
        }

        #[test]
        fn minor_is_interval(m in arb_matroid(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
            let flats = m.lattice_of_flats().unwrap();
            let (x, y) = (flats.element(i.index(flats.len())), flats.element(j.index(flats.len())));
            let (f, g) = (x.intersection(y), y);
            let f = flats.closure(f).unwrap();
            let interval = flats.interval(f, g, false).unwrap().members;
            let minor = m.minor(f, g).unwrap();
            prop_assert_eq!(minor.rank(), interval.rank().unwrap());
            if minor.ground_size() > 0 {
                let mf = minor.lattice_of_flats().unwrap();
                prop_assert_eq!(mf.len(), interval.len());
                let (b, t) = (interval.bottom().unwrap(), interval.top().unwrap());
                let (mb, mt) = (mf.bottom().unwrap(), mf.top().unwrap());
                prop_assert_eq!(mf.mobius_index(mb, mt), interval.mobius_index(b, t));
            } else {
                prop_assert_eq!(interval.len(), 1);
            }
        }
    }
}
