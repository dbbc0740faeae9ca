//! Simplicial complexes, order complexes and reduced homology over a field.
//!
//! The null complex (no faces at all) and the empty complex `{∅}` are kept
//! apart by an explicit tag: the first has vanishing reduced homology in every
//! degree, the second has `H̃_{-1} = 𝕜`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poset::{Interval, SubsetPoset};

/// A face, as a strictly increasing list of vertex indices.
pub type Face = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    /// No faces, not even `∅`.
    Null,
    /// Contains at least the empty face.
    NonNull,
}

/// A finite simplicial complex stored by its facets.
#[derive(Debug)]
pub struct SimplicialComplex {
    vertex_count: usize,
    kind: ComplexKind,
    facets: Vec<Face>,
    faces: OnceLock<Vec<Vec<Face>>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        let faces = OnceLock::new();
        if let Some(f) = self.faces.get() {
            let _ = faces.set(f.clone());
        }
        SimplicialComplex {
            vertex_count: self.vertex_count,
            kind: self.kind,
            facets: self.facets.clone(),
            faces,
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count
            && self.kind == other.kind
            && self.facets == other.facets
    }
}

fn is_subface(a: &[u32], b: &[u32]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

/// Keeps only inclusion-maximal faces, sorted.
fn maximal_faces(mut faces: Vec<Face>) -> Vec<Face> {
    for f in &mut faces {
        f.sort_unstable();
        f.dedup();
    }
    faces.sort();
    faces.dedup();
    // longer faces first so each candidate only needs checking against kept ones
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<Face> = Vec::new();
    for f in faces {
        if !kept.iter().any(|k| k.len() > f.len() && is_subface(&f, k)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

impl SimplicialComplex {
    /// The complex with no faces.
    pub fn null(vertex_count: usize) -> Self {
        SimplicialComplex {
            vertex_count,
            kind: ComplexKind::Null,
            facets: Vec::new(),
            faces: OnceLock::new(),
        }
    }

    /// The complex `{∅}`.
    pub fn empty(vertex_count: usize) -> Self {
        SimplicialComplex {
            vertex_count,
            kind: ComplexKind::NonNull,
            facets: vec![Vec::new()],
            faces: OnceLock::new(),
        }
    }

    /// Downward closure of `facets`. An empty list gives the null complex and
    /// `[[]]` gives `{∅}`.
    pub fn from_facets(vertex_count: usize, facets: Vec<Face>) -> Result<Self> {
        for f in &facets {
            if let Some(&v) = f.iter().find(|&&v| v as usize >= vertex_count) {
                return Err(Error::VertexOutOfRange {
                    vertex: v as usize,
                    count: vertex_count,
                });
            }
        }
        if facets.is_empty() {
            return Ok(SimplicialComplex::null(vertex_count));
        }
        Ok(SimplicialComplex {
            vertex_count,
            kind: ComplexKind::NonNull,
            facets: maximal_faces(facets),
            faces: OnceLock::new(),
        })
    }

    /// The full simplex on `k` vertices.
    pub fn simplex(k: usize) -> Self {
        SimplicialComplex::from_facets(k, vec![(0..k as u32).collect()]).expect("in range")
    }

    /// Boundary of the simplex on `k` vertices, a `(k−2)`-sphere.
    pub fn sphere_boundary(k: usize) -> Self {
        let facets = (0..k as u32)
            .map(|skip| (0..k as u32).filter(|&v| v != skip).collect())
            .collect();
        SimplicialComplex::from_facets(k, facets).expect("in range")
    }

    /// Builds a complex whose full face list is already known.
    fn with_faces(vertex_count: usize, faces: Vec<Vec<Face>>) -> Self {
        if faces.is_empty() {
            return SimplicialComplex::null(vertex_count);
        }
        let mut contained: HashSet<Face> = HashSet::new();
        for dim_faces in faces.iter().skip(1) {
            for f in dim_faces {
                for skip in 0..f.len() {
                    let mut g = f.clone();
                    g.remove(skip);
                    contained.insert(g);
                }
            }
        }
        let facets: Vec<Face> = faces
            .iter()
            .flatten()
            .filter(|f| !contained.contains(*f))
            .cloned()
            .collect();
        let cx = SimplicialComplex {
            vertex_count,
            kind: ComplexKind::NonNull,
            facets: maximal_faces(facets),
            faces: OnceLock::new(),
        };
        let _ = cx.faces.set(faces);
        cx
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn is_null(&self) -> bool {
        self.kind == ComplexKind::Null
    }

    /// True for `{∅}`.
    pub fn is_empty_complex(&self) -> bool {
        self.kind == ComplexKind::NonNull && self.facets.iter().all(|f| f.is_empty())
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Dimension; `None` for the null complex, `Some(-1)` for `{∅}`.
    pub fn dim(&self) -> Option<isize> {
        match self.kind {
            ComplexKind::Null => None,
            ComplexKind::NonNull => self.facets.iter().map(|f| f.len() as isize - 1).max(),
        }
    }

    pub fn contains_face(&self, face: &[u32]) -> bool {
        let mut f = face.to_vec();
        f.sort_unstable();
        self.facets.iter().any(|g| is_subface(&f, g))
    }

    /// Faces grouped by dimension: entry `k` holds the `(k−1)`-faces, sorted.
    pub fn faces(&self) -> &[Vec<Face>] {
        self.faces.get_or_init(|| {
            if self.is_null() {
                return Vec::new();
            }
            let top = self.facets.iter().map(|f| f.len()).max().unwrap_or(0);
            let mut seen: Vec<HashSet<Face>> = vec![HashSet::new(); top + 1];
            for facet in &self.facets {
                let k = facet.len();
                for mask in 0u64..(1u64 << k) {
                    let f: Face = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| facet[b]).collect();
                    seen[f.len()].insert(f);
                }
            }
            seen.into_iter()
                .map(|s| {
                    let mut v: Vec<Face> = s.into_iter().collect();
                    v.sort();
                    v
                })
                .collect()
        })
    }

    /// `f_{-1}, f_0, …, f_d`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces().iter().map(|v| v.len()).collect()
    }

    /// `Σ_{i≥−1} (−1)^i f_i`; zero for the null complex.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 1 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Sparse boundary matrix `∂_k : C_k → C_{k−1}` (rows are `k`-faces), for `k ≥ 0`.
    /// `∂_0` is the augmentation onto the empty face.
    pub fn boundary_rows(&self, k: usize) -> Vec<Vec<(usize, i64)>> {
        let faces = self.faces();
        if k + 1 >= faces.len() {
            return Vec::new();
        }
        let lower: HashMap<&[u32], usize> = faces[k]
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        faces[k + 1]
            .iter()
            .map(|f| {
                let mut row: Vec<(usize, i64)> = (0..f.len())
                    .map(|t| {
                        let mut g = f.clone();
                        g.remove(t);
                        let sign = if t % 2 == 0 { 1 } else { -1 };
                        (lower[g.as_slice()], sign)
                    })
                    .collect();
                row.sort_by_key(|e| e.0);
                row
            })
            .collect()
    }

    /// Dimensions of reduced homology over `field`.
    pub fn reduced_homology(&self, field: FieldSpec) -> HomologyProfile {
        let f = self.f_vector();
        if f.is_empty() {
            return HomologyProfile { dims: Vec::new() };
        }
        // ranks[k] = rank ∂_k for the k-faces, k = 0..=d; ∂_{-1} = 0
        let ranks: Vec<usize> = (0..f.len() - 1)
            .map(|k| field.rank(&self.boundary_rows(k)))
            .collect();
        let dims = (0..f.len())
            .map(|idx| {
                let in_rank = if idx == 0 { 0 } else { ranks[idx - 1] };
                let out_rank = ranks.get(idx).copied().unwrap_or(0);
                f[idx] - in_rank - out_rank
            })
            .collect();
        HomologyProfile { dims }
    }

    /// `lk F = {G ∈ K | G ∩ F = ∅, G ∪ F ∈ K}`.
    pub fn link(&self, face: &[u32]) -> Result<SimplicialComplex> {
        let mut f = face.to_vec();
        f.sort_unstable();
        f.dedup();
        if !self.contains_face(&f) {
            return Err(Error::FaceNotInComplex(f.iter().map(|&v| v as usize).collect()));
        }
        let facets: Vec<Face> = self
            .facets
            .iter()
            .filter(|g| is_subface(&f, g))
            .map(|g| g.iter().copied().filter(|v| !f.contains(v)).collect())
            .collect();
        SimplicialComplex::from_facets(self.vertex_count, facets)
    }

    /// Reisner's criterion: every link (including `lk ∅ = K`) has vanishing
    /// reduced homology below its dimension.
    pub fn is_cohen_macaulay(&self, field: FieldSpec) -> bool {
        self.faces().iter().flatten().all(|face| {
            let lk = self.link(face).expect("face of the complex");
            let d = lk.dim().unwrap_or(-1);
            let h = lk.reduced_homology(field);
            (-1..d).all(|i| h.get(i) == 0)
        })
    }

    /// True if some vertex lies in every facet.
    pub fn is_cone(&self) -> bool {
        match self.facets.split_first() {
            Some((first, rest)) if !self.is_null() => first
                .iter()
                .any(|v| rest.iter().all(|g| g.contains(v))),
            _ => false,
        }
    }
}

/// `dim H̃_i` for `i = −1, 0, …, dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyProfile {
    /// `dims[k]` is the dimension in degree `k − 1`.
    dims: Vec<usize>,
}

impl HomologyProfile {
    pub fn get(&self, degree: isize) -> usize {
        if degree < -1 {
            return 0;
        }
        self.dims.get((degree + 1) as usize).copied().unwrap_or(0)
    }

    /// Dimensions starting at degree −1.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// `Σ (−1)^i dim H̃_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 1 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Nonzero degrees.
    pub fn support(&self) -> impl Iterator<Item = (isize, usize)> + '_ {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(k, &d)| (k as isize - 1, d))
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.dims.len() as isize - 2;
        let body: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "H~[-1..{}] = [{}]", top, body.join(", "))
    }
}

/// All chains of `p` restricted to `members` (indices of `p`), grouped by length.
/// Vertices of the result are positions in `members`.
fn chain_faces(p: &SubsetPoset, members: &[usize]) -> Vec<Vec<Face>> {
    let m = members.len();
    // successors within members, by position
    let succ: Vec<Vec<u32>> = (0..m)
        .map(|a| {
            (0..m)
                .filter(|&b| p.lt(members[a], members[b]))
                .map(|b| b as u32)
                .collect()
        })
        .collect();
    let mut by_len: Vec<Vec<Face>> = vec![vec![Vec::new()]];
    let mut frontier: Vec<Face> = (0..m as u32).map(|v| vec![v]).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            let last = *c.last().expect("nonempty chain") as usize;
            for &s in &succ[last] {
                let mut d = c.clone();
                d.push(s);
                next.push(d);
            }
        }
        by_len.push(std::mem::take(&mut frontier));
        frontier = next;
    }
    // chains are increasing in the poset, not necessarily in vertex label
    for level in &mut by_len {
        for f in level.iter_mut() {
            f.sort_unstable();
        }
        level.sort();
    }
    by_len
}

/// Order complex on the given member indices of `p`; vertex `k` is `members[k]`.
pub fn order_complex_on(p: &SubsetPoset, members: &[usize]) -> SimplicialComplex {
    if members.is_empty() {
        // no vertices: only the empty chain
        return SimplicialComplex::empty(0);
    }
    SimplicialComplex::with_faces(members.len(), chain_faces(p, members))
}

/// The order complex: vertices are the elements of `p` (by index), faces are chains.
pub fn order_complex(p: &SubsetPoset) -> SimplicialComplex {
    let all: Vec<usize> = (0..p.len()).collect();
    if all.is_empty() {
        return SimplicialComplex::empty(0);
    }
    order_complex_on(p, &all)
}

/// Truncated order complex of the closed interval between indices `i ≤ j` of `p`:
/// null for rank 0, `{∅}` for rank 1, the order complex of the interior otherwise.
pub fn truncated_between(p: &SubsetPoset, i: usize, j: usize) -> SimplicialComplex {
    if i == j {
        return SimplicialComplex::null(0);
    }
    let interior = p.interval_indices(i, j, true);
    if interior.is_empty() {
        return SimplicialComplex::empty(0);
    }
    order_complex_on(p, &interior)
}

/// Truncated order complex of an interval (closed or open form).
pub fn truncated_order_complex(interval: &Interval) -> SimplicialComplex {
    if interval.lo == interval.hi {
        return SimplicialComplex::null(0);
    }
    let p = &interval.members;
    let interior: Vec<usize> = (0..p.len())
        .filter(|&k| p.element(k) != interval.lo && p.element(k) != interval.hi)
        .collect();
    if interior.is_empty() {
        SimplicialComplex::empty(0)
    } else {
        order_complex_on(p, &interior)
    }
}

/// Every open interval `(A, B)` with `A < B` has a Cohen–Macaulay order complex.
pub fn is_interval_cm(p: &SubsetPoset, field: FieldSpec) -> bool {
    p.comparable_pairs()
        .into_iter()
        .filter(|(i, j)| i != j)
        .all(|(i, j)| truncated_between(p, i, j).is_cohen_macaulay(field))
}
