//! Abstract simplicial complexes stored by their facets.
//!
//! A complex lives on the vertex labels `1..=n`. Only the antichain of
//! maximal faces is stored; lower-dimensional faces are enumerated on demand
//! and memoized per dimension. Every face list handed out is sorted
//! lexicographically by vertex sequence, which fixes the row and column
//! order of every matrix built on top of it.

mod builtin;
mod io;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub use builtin::{
    builtin, cycle, octahedron, path_independence, tetrahedron_boundary, torus_7, BUILTIN_NAMES,
};
pub use io::{parse_facet_file, write_facet_file};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex count must be at least 1")]
    NoVertices,
    #[error("facet list is empty")]
    NoFacets,
    #[error("facet {0} has no vertices")]
    EmptyFacet(usize),
    #[error("vertex label {label} out of range 1..={n}")]
    LabelOutOfRange { label: u32, n: u32 },
    #[error("vertex label {0} repeated within a facet")]
    RepeatedLabel(u32),
    #[error("complex is not pure")]
    NotPure,
    #[error("unknown builtin complex `{0}`")]
    UnknownBuiltin(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A face: a strictly increasing list of vertex labels. The empty face has
/// dimension -1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(Vec<u32>);

impl Face {
    pub fn empty() -> Self {
        Face(Vec::new())
    }

    /// Builds a face from labels in any order. Returns `None` on repeats.
    pub fn new(mut labels: Vec<u32>) -> Option<Self> {
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Face(labels))
    }

    pub(crate) fn from_sorted(labels: Vec<u32>) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        Face(labels)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        // both sorted
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    /// The face with `v` removed.
    pub fn without(&self, v: u32) -> Face {
        Face(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// Union of two faces, or `None` if they share a vertex.
    pub fn disjoint_union(&self, other: &Face) -> Option<Face> {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Some(Face(out))
    }

    /// All subfaces with exactly `size` vertices, in lex order.
    pub fn subfaces(&self, size: usize) -> impl Iterator<Item = Face> + '_ {
        self.0
            .iter()
            .copied()
            .combinations(size)
            .map(Face)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let sep = if self.0.iter().any(|&v| v > 9) { "," } else { "" };
        write!(f, "{}", self.0.iter().join(sep))
    }
}

/// Counts `(f_{-1}, f_0, ..., f_dim)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    /// `f_k` for `k >= -1`; zero past the top dimension.
    pub fn get(&self, k: isize) -> usize {
        usize::try_from(k + 1)
            .ok()
            .and_then(|i| self.0.get(i).copied())
            .unwrap_or(0)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

#[derive(Debug, Default, Clone)]
struct FaceTable {
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
}

/// Classification of a complex against the pseudomanifold conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PseudomanifoldStatus {
    NotPseudomanifold(NotPseudomanifoldReason),
    /// Ridges contained in exactly one facet.
    WithBoundary(Vec<Face>),
    WithoutBoundary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotPseudomanifoldReason {
    NotPure,
    /// A ridge lying in more than two facets.
    BranchingRidge(Face),
    /// Facets not connected through ridges.
    Disconnected,
}

impl PseudomanifoldStatus {
    pub fn is_pseudomanifold(&self) -> bool {
        !matches!(self, PseudomanifoldStatus::NotPseudomanifold(_))
    }
}

impl fmt::Display for PseudomanifoldStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PseudomanifoldStatus::NotPseudomanifold(NotPseudomanifoldReason::NotPure) => {
                write!(f, "not a pseudomanifold (not pure)")
            }
            PseudomanifoldStatus::NotPseudomanifold(NotPseudomanifoldReason::BranchingRidge(r)) => {
                write!(f, "not a pseudomanifold (ridge {r} lies in more than two facets)")
            }
            PseudomanifoldStatus::NotPseudomanifold(NotPseudomanifoldReason::Disconnected) => {
                write!(f, "not a pseudomanifold (facets not ridge-connected)")
            }
            PseudomanifoldStatus::WithBoundary(b) => {
                write!(f, "pseudomanifold with boundary ({} boundary ridges)", b.len())
            }
            PseudomanifoldStatus::WithoutBoundary => write!(f, "pseudomanifold without boundary"),
        }
    }
}

/// A simplicial complex on vertex labels `1..=n`, stored by its facets.
///
/// Immutable after construction. Face tables are filled lazily behind
/// `OnceLock`, so a complex can be shared across threads freely.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    n: u32,
    facets: Vec<Face>,
    dim: isize,
    // slot k + 1 holds the k-faces, k = -1..=dim
    tables: Vec<OnceLock<FaceTable>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// The complex generated by `facets` on vertices `1..=n`. Faces
    /// contained in other listed faces are absorbed.
    pub fn from_facets<I, F>(n: u32, facets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = u32>,
    {
        if n < 1 {
            return Err(ComplexError::NoVertices);
        }
        let mut faces = Vec::new();
        for (i, labels) in facets.into_iter().enumerate() {
            let labels: Vec<u32> = labels.into_iter().collect();
            if labels.is_empty() {
                return Err(ComplexError::EmptyFacet(i));
            }
            if let Some(&label) = labels.iter().find(|&&v| v < 1 || v > n) {
                return Err(ComplexError::LabelOutOfRange { label, n });
            }
            let face = Face::new(labels.clone()).ok_or_else(|| {
                let mut sorted = labels;
                sorted.sort_unstable();
                let dup = sorted.windows(2).find(|w| w[0] == w[1]).map(|w| w[0]);
                ComplexError::RepeatedLabel(dup.unwrap_or_default())
            })?;
            faces.push(face);
        }
        if faces.is_empty() {
            return Err(ComplexError::NoFacets);
        }
        Ok(Self::from_faces_unchecked(n, faces))
    }

    /// Builds from already-valid faces, absorbing dominated ones.
    pub(crate) fn from_faces_unchecked(n: u32, mut faces: Vec<Face>) -> Self {
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
        for face in faces {
            if !kept.iter().any(|k| face.is_subset_of(k)) {
                kept.push(face);
            }
        }
        kept.sort();
        let dim = kept.iter().map(Face::dim).max().unwrap_or(-1);
        let tables = (0..(dim + 2) as usize).map(|_| OnceLock::new()).collect();
        SimplicialComplex {
            n,
            facets: kept,
            dim,
            tables,
        }
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|f| f.dim() == self.dim)
    }

    fn table(&self, k: isize) -> Option<&FaceTable> {
        if k < -1 || k > self.dim {
            return None;
        }
        let slot = &self.tables[(k + 1) as usize];
        Some(slot.get_or_init(|| {
            let size = (k + 1) as usize;
            let set: BTreeSet<Face> = self
                .facets
                .iter()
                .filter(|f| f.len() >= size)
                .flat_map(|f| f.subfaces(size))
                .collect();
            let faces: Vec<Face> = set.into_iter().collect();
            let index = faces.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
            FaceTable { faces, index }
        }))
    }

    /// All `k`-faces in lex order; empty when `k` is out of range.
    pub fn faces_of_dim(&self, k: isize) -> &[Face] {
        self.table(k).map(|t| t.faces.as_slice()).unwrap_or(&[])
    }

    /// Position of `face` within `faces_of_dim(face.dim())`.
    pub fn face_index(&self, face: &Face) -> Option<usize> {
        self.table(face.dim())?.index.get(face).copied()
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        self.face_index(face).is_some()
    }

    pub fn f_vector(&self) -> FVector {
        FVector((-1..=self.dim).map(|k| self.faces_of_dim(k).len()).collect())
    }

    /// Labels of vertices that are faces, i.e. lie in some facet.
    pub fn vertices(&self) -> Vec<u32> {
        self.faces_of_dim(0).iter().map(|f| f.vertices()[0]).collect()
    }

    /// Faces of dimension at most `d`.
    pub fn skeleton(&self, d: isize) -> SimplicialComplex {
        if d >= self.dim {
            return self.clone();
        }
        let d = d.max(0);
        let mut faces: Vec<Face> = self.faces_of_dim(d).to_vec();
        faces.extend(self.facets.iter().filter(|f| f.dim() < d).cloned());
        Self::from_faces_unchecked(self.n, faces)
    }

    /// The 1-skeleton as a graph on all `n` labels (vertex `v` is graph
    /// index `v - 1`). Labels in no facet stay as isolated vertices.
    pub fn one_skeleton_graph(&self) -> Graph {
        let edges = self
            .faces_of_dim(1)
            .iter()
            .map(|e| (e.vertices()[0] as usize - 1, e.vertices()[1] as usize - 1));
        Graph::new(self.n as usize, edges).expect("skeleton edges are valid")
    }

    /// The 1-skeleton restricted to the vertices of the complex, indexed in
    /// the order of `faces_of_dim(0)`. This is the graph whose incidence
    /// matrix transposes to the degree-1 multiplication map.
    pub fn face_skeleton_graph(&self) -> Graph {
        let pos: HashMap<u32, usize> = self
            .vertices()
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let edges = self
            .faces_of_dim(1)
            .iter()
            .map(|e| (pos[&e.vertices()[0]], pos[&e.vertices()[1]]));
        Graph::new(pos.len(), edges).expect("skeleton edges are valid")
    }

    /// Faces of dimension `dim - 1`. Requires purity.
    pub fn ridges(&self) -> Result<&[Face], ComplexError> {
        if !self.is_pure() {
            return Err(ComplexError::NotPure);
        }
        Ok(self.faces_of_dim(self.dim - 1))
    }

    /// Ridge -> indices of facets containing it.
    fn ridge_incidence(&self) -> BTreeMap<Face, Vec<usize>> {
        let mut map: BTreeMap<Face, Vec<usize>> = BTreeMap::new();
        for (i, facet) in self.facets.iter().enumerate() {
            for ridge in facet.subfaces(facet.len() - 1) {
                map.entry(ridge).or_default().push(i);
            }
        }
        map
    }

    /// Facets as vertices (in sorted facet order), adjacent when they share
    /// a ridge. Requires purity.
    pub fn dual_graph(&self) -> Result<Graph, ComplexError> {
        if !self.is_pure() {
            return Err(ComplexError::NotPure);
        }
        let edges = self
            .ridge_incidence()
            .into_values()
            .flat_map(|fs| fs.into_iter().tuple_combinations::<(_, _)>().collect::<Vec<_>>());
        Ok(Graph::new(self.facets.len(), edges).expect("facet indices are valid"))
    }

    pub fn pseudomanifold_status(&self) -> PseudomanifoldStatus {
        use PseudomanifoldStatus::*;
        if !self.is_pure() {
            return NotPseudomanifold(NotPseudomanifoldReason::NotPure);
        }
        let incidence = self.ridge_incidence();
        if let Some((ridge, _)) = incidence.iter().find(|(_, fs)| fs.len() > 2) {
            return NotPseudomanifold(NotPseudomanifoldReason::BranchingRidge(ridge.clone()));
        }
        let dual = self.dual_graph().expect("pure");
        if dual.components().components.len() != 1 {
            return NotPseudomanifold(NotPseudomanifoldReason::Disconnected);
        }
        let boundary: Vec<Face> = incidence
            .into_iter()
            .filter(|(_, fs)| fs.len() == 1)
            .map(|(r, _)| r)
            .collect();
        if boundary.is_empty() {
            WithoutBoundary
        } else {
            WithBoundary(boundary)
        }
    }

    /// First barycentric subdivision: the order complex of the nonempty
    /// faces. New vertex labels enumerate the old faces by dimension, then
    /// lexicographically; `subdivision_labels` gives that order.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        let faces = self.subdivision_labels();
        let label: HashMap<&Face, u32> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f, i as u32 + 1))
            .collect();
        let mut chains = Vec::new();
        for facet in &self.facets {
            for order in facet.vertices().iter().copied().permutations(facet.len()) {
                let chain: Vec<u32> = (1..=order.len())
                    .map(|k| {
                        let face = Face::new(order[..k].to_vec()).expect("distinct");
                        label[&face]
                    })
                    .collect();
                chains.push(Face::new(chain).expect("distinct labels"));
            }
        }
        Self::from_faces_unchecked(faces.len() as u32, chains)
    }

    /// Nonempty faces in the order used to label subdivision vertices.
    pub fn subdivision_labels(&self) -> Vec<Face> {
        (0..=self.dim)
            .flat_map(|k| self.faces_of_dim(k).iter().cloned())
            .collect()
    }

    /// The complex with one facet removed (by index into `facets()`).
    pub fn without_facet(&self, index: usize) -> Option<SimplicialComplex> {
        if self.facets.len() < 2 || index >= self.facets.len() {
            return None;
        }
        let mut faces = self.facets.clone();
        let removed = faces.remove(index);
        // keep the removed facet's ridges so the result is the complex minus
        // one open top cell
        faces.extend(removed.subfaces(removed.len() - 1));
        Some(Self::from_faces_unchecked(self.n, faces))
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", self.facets.iter().join(", "))
    }
}

/// Independence complex of a graph: faces are the independent vertex sets.
/// Graph vertex `i` becomes label `i + 1`.
pub fn independence_complex(graph: &Graph) -> SimplicialComplex {
    let n = graph.vertex_count();
    let complement = graph.complement();
    let facets: Vec<Face> = complement
        .maximal_cliques()
        .into_iter()
        .map(|c| Face::from_sorted(c.into_iter().map(|v| v as u32 + 1).collect()))
        .collect();
    SimplicialComplex::from_faces_unchecked(n as u32, facets)
}
