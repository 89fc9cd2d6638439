//! Simple undirected graphs: 1-skeletons and dual graphs of complexes.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::IntMatrix;

/// Default vertex limit for exact clique search.
pub const DEFAULT_CLIQUE_BOUND: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge ({0}, {1}) has an endpoint out of range")]
    OutOfRange(usize, usize),
    #[error("graph has {vertices} vertices, exact clique search is bounded at {bound}")]
    CliqueBoundExceeded { vertices: usize, bound: usize },
}

/// Undirected simple graph on vertices `0..vertex_count`. Edges are stored
/// as `(min, max)` pairs in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adjacency: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edge_count: usize,
    pub bipartite: bool,
}

impl Component {
    pub fn is_tree(&self) -> bool {
        self.edge_count + 1 == self.vertices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    /// Ordered by smallest vertex.
    pub components: Vec<Component>,
    /// Number of bipartite components, isolated vertices included.
    pub bipartite_count: usize,
}

/// Outcome of a 2-coloring attempt.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Bipartition {
    /// Proper coloring, one 0/1 entry per vertex.
    Coloring { colors: Vec<u8> },
    /// An odd cycle `v0 v1 ... v(k-1)`; consecutive vertices and `v(k-1) v0`
    /// are adjacent, and `k` is odd.
    OddCycle { cycle: Vec<usize> },
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Coloring { .. })
    }
}

impl Graph {
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(GraphError::OutOfRange(a, b));
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            set.insert((a.min(b), a.max(b)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { vertex_count, edges, adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count;
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        let edges: Vec<_> = edges.filter(|&(a, b)| !self.has_edge(a, b)).collect();
        Graph::new(n, edges).expect("complement of a valid graph")
    }

    /// Connected components, each tagged bipartite or not.
    pub fn components(&self) -> ComponentSummary {
        let mut color = vec![u8::MAX; self.vertex_count];
        let mut components = Vec::new();
        for start in 0..self.vertex_count {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            let mut vertices = vec![start];
            let mut bipartite = true;
            let mut degree_sum = 0;
            while let Some(u) = queue.pop_front() {
                degree_sum += self.degree(u);
                for &w in self.neighbors(u) {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        vertices.push(w);
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        bipartite = false;
                    }
                }
            }
            vertices.sort_unstable();
            components.push(Component {
                vertices,
                edge_count: degree_sum / 2,
                bipartite,
            });
        }
        let bipartite_count = components.iter().filter(|c| c.bipartite).count();
        ComponentSummary { components, bipartite_count }
    }

    /// 2-coloring by breadth-first search, or an odd cycle if none exists.
    pub fn bipartition(&self) -> Bipartition {
        let n = self.vertex_count;
        let mut color = vec![u8::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for start in 0..n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return Bipartition::OddCycle {
                            cycle: odd_cycle(u, w, &parent, &depth),
                        };
                    }
                }
            }
        }
        Bipartition::Coloring { colors: color }
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_bipartite()
    }

    /// `|V| x |E|` 0/1 matrix, vertices and edges in lex order.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.vertex_count, self.edges.len());
        for (j, &(a, b)) in self.edges.iter().enumerate() {
            m.set(a, j, 1);
            m.set(b, j, 1);
        }
        m
    }

    /// Every vertex has even degree.
    pub fn is_eulerian(&self) -> bool {
        (0..self.vertex_count).all(|v| self.degree(v) % 2 == 0)
    }

    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<Graph, GraphError> {
        let mut pos = vec![usize::MAX; self.vertex_count];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| pos[a] != usize::MAX && pos[b] != usize::MAX)
            .map(|&(a, b)| (pos[a], pos[b]));
        Graph::new(keep.len(), edges)
    }

    pub fn clique_number(&self) -> Result<usize, GraphError> {
        self.clique_number_bounded(DEFAULT_CLIQUE_BOUND)
    }

    /// Exact clique number by branch and bound, pruning with greedy
    /// coloring bounds. Refuses graphs with more than `bound` vertices.
    pub fn clique_number_bounded(&self, bound: usize) -> Result<usize, GraphError> {
        if self.vertex_count > bound {
            return Err(GraphError::CliqueBoundExceeded {
                vertices: self.vertex_count,
                bound,
            });
        }
        let adj: Vec<Bits> = (0..self.vertex_count)
            .map(|v| Bits::from_iter(self.vertex_count, self.neighbors(v).iter().copied()))
            .collect();
        let mut best = 0;
        let candidates = Bits::full(self.vertex_count);
        expand(&adj, 0, candidates, &mut best);
        Ok(best)
    }

    /// All maximal cliques (Bron–Kerbosch with pivoting), each sorted,
    /// the list sorted lexicographically.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count;
        let adj: Vec<Bits> = (0..n)
            .map(|v| Bits::from_iter(n, self.neighbors(v).iter().copied()))
            .collect();
        let mut out = Vec::new();
        bron_kerbosch(&adj, &mut Vec::new(), Bits::full(n), Bits::empty(n), &mut out);
        for c in &mut out {
            c.sort_unstable();
        }
        out.sort();
        out
    }
}

fn odd_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    // climb both ends to their lowest common ancestor
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Fixed-width bitset over graph vertices.
#[derive(Clone, Debug)]
struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn empty(n: usize) -> Self {
        Bits { words: vec![0; n.div_ceil(64)] }
    }

    fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        for v in 0..n {
            b.insert(v);
        }
        b
    }

    fn from_iter(n: usize, it: impl Iterator<Item = usize>) -> Self {
        let mut b = Self::empty(n);
        for v in it {
            b.insert(v);
        }
        b
    }

    fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    fn and_not(&self, other: &Bits) -> Bits {
        Bits {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }
}

/// Greedy sequential coloring of `candidates`; returns vertices in order of
/// nondecreasing color with the color (1-based) each received.
fn color_sort(adj: &[Bits], candidates: &Bits) -> Vec<(usize, usize)> {
    let mut uncolored = candidates.clone();
    let mut order = Vec::with_capacity(candidates.count());
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut available = uncolored.clone();
        while let Some(v) = available.first() {
            available.remove(v);
            available = available.and_not(&adj[v]);
            uncolored.remove(v);
            order.push((v, color));
        }
    }
    order
}

fn expand(adj: &[Bits], size: usize, mut candidates: Bits, best: &mut usize) {
    let order = color_sort(adj, &candidates);
    for &(v, color) in order.iter().rev() {
        if size + color <= *best {
            return;
        }
        let next = candidates.and(&adj[v]);
        if next.is_empty() {
            *best = (*best).max(size + 1);
        } else {
            expand(adj, size + 1, next, best);
        }
        candidates.remove(v);
    }
}

fn bron_kerbosch(
    adj: &[Bits],
    current: &mut Vec<usize>,
    candidates: Bits,
    excluded: Bits,
    out: &mut Vec<Vec<usize>>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(current.clone());
        }
        return;
    }
    let pivot = candidates
        .iter()
        .chain(excluded.iter())
        .max_by_key(|&u| candidates.and(&adj[u]).count())
        .expect("nonempty");
    let mut candidates = candidates;
    let mut excluded = excluded;
    let branch: Vec<usize> = candidates.and_not(&adj[pivot]).iter().collect();
    for v in branch {
        current.push(v);
        bron_kerbosch(adj, current, candidates.and(&adj[v]), excluded.and(&adj[v]), out);
        current.pop();
        candidates.remove(v);
        excluded.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
    }

    fn check_odd_cycle(g: &Graph, cycle: &[usize]) {
        assert_eq!(cycle.len() % 2, 1);
        for i in 0..cycle.len() {
            assert!(g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
        }
    }

    #[test]
    fn construction() {
        assert_eq!(Graph::new(0, []), Err(GraphError::Empty));
        assert_eq!(Graph::new(2, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(Graph::new(2, [(0, 2)]), Err(GraphError::OutOfRange(0, 2)));
        let g = Graph::new(3, [(2, 0), (0, 2), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2)]);
    }

    #[test]
    fn components_examples() {
        let s = cycle(4).components();
        assert_eq!(s.components.len(), 1);
        assert!(s.components[0].bipartite);
        assert_eq!(s.bipartite_count, 1);
        let s = cycle(3).components();
        assert_eq!(s.bipartite_count, 0);
        let s = Graph::new(4, [(0, 1)]).unwrap().components();
        assert_eq!(s.components.len(), 3);
        assert_eq!(s.bipartite_count, 3);
        assert!(s.components.iter().all(Component::is_tree));
    }

    #[test]
    fn bipartition_examples() {
        let cube = Graph::new(
            8,
            (0..8usize).flat_map(|v| {
                [1, 2, 4]
                    .into_iter()
                    .filter(move |bit| v & bit == 0)
                    .map(move |bit| (v, v | bit))
            }),
        )
        .unwrap();
        assert_eq!(cube.edge_count(), 12);
        match cube.bipartition() {
            Bipartition::Coloring { colors } => {
                for &(a, b) in cube.edges() {
                    assert_ne!(colors[a], colors[b]);
                }
            }
            other => panic!("cube should be bipartite, got {other:?}"),
        }
        match complete(4).bipartition() {
            Bipartition::OddCycle { cycle } => check_odd_cycle(&complete(4), &cycle),
            other => panic!("{other:?}"),
        }
        assert!(Graph::new(3, []).unwrap().is_bipartite());
        match cycle(9).bipartition() {
            Bipartition::OddCycle { cycle: c } => {
                check_odd_cycle(&cycle(9), &c);
                assert_eq!(c.len(), 9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn incidence_examples() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(g.incidence_matrix(), IntMatrix::from_rows(&[vec![1], vec![1]]));
        let m = cycle(4).incidence_matrix();
        assert_eq!((m.rows(), m.cols()), (4, 4));
        for j in 0..4 {
            assert_eq!((0..4).map(|i| m.get_i64(i, j)).sum::<i64>(), 2);
        }
        assert_eq!(crate::linalg::rank(&m).rank, 3);
    }

    #[test]
    fn eulerian_examples() {
        assert!(cycle(4).is_eulerian());
        assert!(!Graph::new(2, [(0, 1)]).unwrap().is_eulerian());
        assert!(!complete(4).is_eulerian());
    }

    #[test]
    fn clique_examples() {
        assert_eq!(cycle(3).clique_number(), Ok(3));
        assert_eq!(cycle(4).clique_number(), Ok(2));
        assert_eq!(complete(7).clique_number(), Ok(7));
        assert_eq!(Graph::new(5, []).unwrap().clique_number(), Ok(1));
        assert_eq!(
            complete(5).clique_number_bounded(4),
            Err(GraphError::CliqueBoundExceeded { vertices: 5, bound: 4 })
        );
        // wider than one word
        let big = Graph::new(70, (0..69).map(|i| (i, i + 1)).chain([(0, 2), (1, 2)])).unwrap();
        assert_eq!(big.clique_number_bounded(128), Ok(3));
    }

    #[test]
    fn maximal_cliques_of_path_complement() {
        // independent sets of the path 0-1-2 are {0,2} and {1}
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.complement().maximal_cliques(), vec![vec![0, 2], vec![1]]);
    }
}
