//! Face posets of polyhedral complexes given by vertex sets of cells.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::SubsetPoset;
use crate::subsets::{GroundSpec, Subset};

/// Cells of a polyhedral complex as vertex lists. The face poset is the
/// intersection closure of the listed cells, so the list must contain every
/// face that is not an intersection of listed ones (for a polytope, its
/// facets are not determined by the vertex set alone).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellComplexInput {
    pub vertices: usize,
    pub faces: Vec<Vec<usize>>,
}

/// Closes a family under pairwise intersection.
pub fn intersection_closure(family: impl IntoIterator<Item = Subset>) -> Vec<Subset> {
    let mut all: BTreeSet<u64> = BTreeSet::new();
    let mut frontier: Vec<u64> = Vec::new();
    for s in family {
        if all.insert(s.bits()) {
            frontier.push(s.bits());
        }
    }
    while let Some(x) = frontier.pop() {
        let fresh: Vec<u64> = all.iter().map(|&y| x & y).filter(|z| !all.contains(z)).collect();
        for z in fresh {
            if all.insert(z) {
                frontier.push(z);
            }
        }
    }
    all.into_iter().map(Subset).collect()
}

/// The intersection closure of the listed cells, ordered by inclusion. `∅` is
/// a member exactly when some intersection of cells is empty.
pub fn face_poset(x: &CellComplexInput) -> Result<SubsetPoset> {
    let ground = GroundSpec::new(x.vertices)?;
    if x.faces.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let mut cells = Vec::with_capacity(x.faces.len());
    for face in &x.faces {
        if let Some(&v) = face.iter().find(|&&v| v >= x.vertices) {
            return Err(Error::VertexOutOfRange { vertex: v, count: x.vertices });
        }
        cells.push(Subset::from_elems(face.iter().copied()));
    }
    SubsetPoset::build(ground, intersection_closure(cells))
}

/// Largest cube dimension for [`cube_complex`].
pub const CUBE_MAX_D: usize = 4;

/// Vertex sets of all nonempty faces of `[0,1]^d`, vertex `x` numbered by
/// `Σ x_i 2^i`. Faces correspond to words in `{0,1,*}^d`.
pub fn cube_faces(d: usize) -> Vec<Subset> {
    let n = 1usize << d;
    let mut faces = Vec::new();
    let mut word = vec![0u8; d];
    loop {
        let face = (0..n).filter(|x| (0..d).all(|i| word[i] == 2 || (x >> i & 1) as u8 == word[i]));
        faces.push(Subset::from_elems(face));
        let mut i = 0;
        while i < d && word[i] == 2 {
            word[i] = 0;
            i += 1;
        }
        if i == d {
            break;
        }
        word[i] += 1;
    }
    faces
}

/// Face poset of the `d`-cube on `2^d` vertices, with `∅`.
pub fn cube_complex(d: usize) -> Result<SubsetPoset> {
    if !(1..=CUBE_MAX_D).contains(&d) {
        return Err(Error::CapExceeded {
            what: "cube dimension",
            value: d,
            cap: CUBE_MAX_D,
        });
    }
    SubsetPoset::build(GroundSpec::new(1 << d)?, intersection_closure(cube_faces(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti::{betti_via_intervals, betti_via_mobius, CmAssurance};
    use crate::class::FunctionClass;
    use crate::complex::is_interval_cm;
    use crate::field::FieldSpec;
    use proptest::prelude::*;

    #[test]
    fn segment_and_cubes() {
        let seg = face_poset(&CellComplexInput {
            vertices: 2,
            faces: vec![vec![0], vec![1], vec![0, 1]],
        })
        .unwrap();
        assert_eq!(seg.len(), 4);
        assert!(seg.contains(Subset::EMPTY));
        assert_eq!(cube_complex(1).unwrap(), seg);
        assert_eq!(cube_complex(2).unwrap().len(), 10);
        assert_eq!(cube_complex(3).unwrap().len(), 28);
        assert_eq!(cube_complex(4).unwrap().len(), 82);
        assert!(cube_complex(0).is_err());
        assert!(cube_complex(5).unwrap_err().is_cap());
    }

    #[test]
    fn triangle_is_boolean() {
        let faces = (1u64..8)
            .map(|b| Subset(b).iter().collect())
            .collect();
        let p = face_poset(&CellComplexInput { vertices: 3, faces }).unwrap();
        assert_eq!(p, SubsetPoset::boolean(GroundSpec::new(3).unwrap()));
    }

    #[test]
    fn no_empty_face_unless_realized() {
        let p = face_poset(&CellComplexInput {
            vertices: 3,
            faces: vec![vec![0, 1], vec![1, 2], vec![1]],
        })
        .unwrap();
        assert!(!p.contains(Subset::EMPTY));
        assert!(face_poset(&CellComplexInput { vertices: 2, faces: vec![vec![2]] }).is_err());
    }

    #[test]
    fn square_betti_numbers_are_face_pairs() {
        let p = cube_complex(2).unwrap();
        assert!(is_interval_cm(&p, FieldSpec::Prime(2)));
        let t = betti_via_intervals(&p, FieldSpec::Prime(2)).unwrap();
        assert_eq!(t, betti_via_mobius(&p, CmAssurance::Asserted).unwrap());
        assert!(t.entries().all(|(_, _, v)| v == 1));
        let c = FunctionClass::from_poset(&p).unwrap();
        assert_eq!(t.projective_dimension(), Some(3));
        assert_eq!(c.vc_dimension(), 2);
    }

    proptest! {
        #[test]
        fn closure_is_intersection_closed(fam in prop::collection::vec(0u64..256, 1..8)) {
            let closed = intersection_closure(fam.iter().map(|&b| Subset(b)));
            for &a in &closed {
                for &b in &closed {
                    prop_assert!(closed.contains(&a.intersection(b)));
                }
            }
            for b in fam {
                prop_assert!(closed.contains(&Subset(b)));
            }
            // every member is an intersection of inputs, so the closure of the closure is itself
            prop_assert_eq!(intersection_closure(closed.iter().copied()), closed);
        }
    }
}
