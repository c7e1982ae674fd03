//! Graph data model with bipartite `(p,q)` vertex labelling.
//!
//! Vertex `(i, j)` sits at 1-based linear index `(i−1)·q + j`, so the `p²`
//! blocks of every `n×n` matrix built here line up with subsystem A.
//! Loops are kept in the edge set but never enter `M`, `L`, degrees or `d_G`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{IntegerMatrix, RationalMatrix, SquareMatrix};

/// Subsystem dimensions of `C^p ⊗ C^q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dims {
    p: usize,
    q: usize,
}

impl Dims {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::BadDims { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Total number of vertices, `p·q`.
    pub fn n(&self) -> usize {
        self.p * self.q
    }

    pub fn contains(&self, v: Vertex) -> bool {
        (1..=self.p).contains(&v.i) && (1..=self.q).contains(&v.j)
    }

    /// 0-based linear index of `v`.
    pub fn index(&self, v: Vertex) -> usize {
        (v.i - 1) * self.q + (v.j - 1)
    }

    /// Inverse of [`Dims::index`].
    pub fn vertex(&self, index: usize) -> Vertex {
        Vertex::new(index / self.q + 1, index % self.q + 1)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n()).map(|k| self.vertex(k))
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::OutOfRange { i: v.i, j: v.j, p: self.p, q: self.q })
        }
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A vertex `(i, j)` with 1-based coordinates.
///
/// The derived ordering is lexicographic in `(i, j)`, which coincides with
/// the row-major linear order for any fixed dims.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Vertex {
    pub i: usize,
    pub j: usize,
}

impl Vertex {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// An undirected edge stored with `u <= v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Self { u: a, v: b }
        } else {
            Self { u: b, v: a }
        }
    }

    /// Shorthand for `Edge::new(Vertex::new(i, j), Vertex::new(s, t))`.
    pub fn from_coords(i: usize, j: usize, s: usize, t: usize) -> Self {
        Self::new(Vertex::new(i, j), Vertex::new(s, t))
    }

    pub fn u(&self) -> Vertex {
        self.u
    }

    pub fn v(&self) -> Vertex {
        self.v
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn touches(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A simple undirected graph whose vertices are the coordinates of `dims`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    dims: Dims,
    edges: BTreeSet<Edge>,
}

impl Graph {
    /// Builds a graph, canonicalising and deduplicating `edges`.
    ///
    /// Loops are kept but at least one non-loop edge is required.
    pub fn new(dims: Dims, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for e in edges {
            dims.check(e.u)?;
            dims.check(e.v)?;
            set.insert(e);
        }
        if set.is_empty() {
            return Err(Error::EmptyEdgeSet);
        }
        if set.iter().all(Edge::is_loop) {
            return Err(Error::OnlyLoops);
        }
        Ok(Self { dims, edges: set })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.n()
    }

    /// All stored edges, loops included, in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    pub fn non_loop_edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(|e| !e.is_loop())
    }

    pub fn loops(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(|e| e.is_loop())
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    /// Number of non-loop edges.
    pub fn edge_count(&self) -> usize {
        self.non_loop_edges().count()
    }

    pub fn loop_count(&self) -> usize {
        self.loops().count()
    }

    /// Non-loop degree of `v`.
    pub fn degree(&self, v: Vertex) -> usize {
        self.non_loop_edges().filter(|e| e.touches(v)).count()
    }

    /// `d_G = 2·|E'|` where `E'` is the non-loop edge set.
    pub fn total_degree(&self) -> usize {
        2 * self.edge_count()
    }

    /// Returns a copy with one more edge (or loop).
    pub fn with_edge(&self, e: Edge) -> Result<Self> {
        Self::new(self.dims, self.edges.iter().copied().chain(Some(e)))
    }

    /// Same vertex set and edges, reinterpreted under other dims of equal order.
    pub fn with_dims(&self, dims: Dims) -> Result<Self> {
        if dims.n() != self.order() {
            return Err(Error::DimMismatch { expected: self.order(), actual: dims.n() });
        }
        let old = self.dims;
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(dims.vertex(old.index(e.u)), dims.vertex(old.index(e.v))));
        Self::new(dims, edges)
    }

    /// 0/1 adjacency matrix `M(G)`; loops leave the diagonal at 0.
    pub fn adjacency_matrix(&self) -> IntegerMatrix {
        let n = self.order();
        let mut m = SquareMatrix::zeros(n);
        for e in self.non_loop_edges() {
            let (a, b) = (self.dims.index(e.u), self.dims.index(e.v));
            m.set(a, b, 1);
            m.set(b, a, 1);
        }
        m
    }

    /// Diagonal degree matrix `A(G)`.
    pub fn degree_matrix(&self) -> IntegerMatrix {
        let n = self.order();
        let mut m = SquareMatrix::zeros(n);
        for e in self.non_loop_edges() {
            for x in [e.u, e.v] {
                let k = self.dims.index(x);
                m.set(k, k, m.get(k, k) + 1);
            }
        }
        m
    }

    /// `L(G) = A(G) − M(G)`.
    pub fn laplacian(&self) -> IntegerMatrix {
        let n = self.order();
        let mut l = self.degree_matrix();
        for e in self.non_loop_edges() {
            let (a, b) = (self.dims.index(e.u), self.dims.index(e.v));
            l.set(a, b, -1);
            l.set(b, a, -1);
        }
        debug_assert!(l.is_symmetric() && l.order() == n);
        l
    }

    /// `σ(G) = L(G) / d_G`, exact.
    pub fn density_matrix(&self) -> RationalMatrix {
        let d = BigInt::from(self.total_degree());
        self.laplacian()
            .map(|&x| BigRational::new(BigInt::from(x), d.clone()))
    }

    /// Connected components over non-loop edges.
    pub fn components(&self) -> Components {
        let n = self.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in self.non_loop_edges() {
            let a = find(&mut parent, self.dims.index(e.u));
            let b = find(&mut parent, self.dims.index(e.v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for k in 0..n {
            let r = find(&mut parent, k);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(k);
        }
        let mut parts = Vec::new();
        let mut isolated = Vec::new();
        for group in groups {
            let members: BTreeSet<Vertex> = group.iter().map(|&k| self.dims.vertex(k)).collect();
            let edges: Vec<Edge> = self
                .non_loop_edges()
                .filter(|e| members.contains(&e.u))
                .copied()
                .collect();
            if edges.is_empty() {
                isolated.extend(members);
            } else {
                parts.push(Component { vertices: members.into_iter().collect(), edges });
            }
        }
        Components { components: parts, isolated }
    }
}

/// One connected component with at least one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl Component {
    /// Adjacency of this component embedded in the full `n×n` vertex space.
    pub fn embedded_adjacency(&self, dims: Dims) -> IntegerMatrix {
        let mut m = SquareMatrix::zeros(dims.n());
        for e in &self.edges {
            let (a, b) = (dims.index(e.u), dims.index(e.v));
            m.set(a, b, 1);
            m.set(b, a, 1);
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub components: Vec<Component>,
    /// Vertices with no non-loop edge.
    pub isolated: Vec<Vertex>,
}

/// Graph tensor product `G ⊗ H` with `M(G⊗H) = M(G) ⊗ M(H)`.
///
/// Only the orders of the inputs matter: vertex `a` of `G` and `b` of `H`
/// (0-based linear indices) become vertex `(a+1, b+1)` of the result,
/// whose dims are `(|V(G)|, |V(H)|)`.
pub fn tensor_product(g: &Graph, h: &Graph) -> Result<Graph> {
    let dims = Dims::new(g.order(), h.order())?;
    let mut edges = Vec::new();
    for eg in g.non_loop_edges() {
        let (a, b) = (g.dims.index(eg.u), g.dims.index(eg.v));
        for eh in h.non_loop_edges() {
            let (c, d) = (h.dims.index(eh.u), h.dims.index(eh.v));
            edges.push(Edge::from_coords(a + 1, c + 1, b + 1, d + 1));
            edges.push(Edge::from_coords(a + 1, d + 1, b + 1, c + 1));
        }
    }
    if edges.is_empty() {
        return Err(Error::OnlyLoops);
    }
    Graph::new(dims, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn dims(p: usize, q: usize) -> Dims {
        Dims::new(p, q).unwrap()
    }

    fn k2() -> Graph {
        Graph::new(dims(2, 1), [Edge::from_coords(1, 1, 2, 1)]).unwrap()
    }

    fn rows(m: &IntegerMatrix) -> Vec<Vec<i64>> {
        m.rows()
    }

    #[test]
    fn linear_index_is_row_major() {
        let d = dims(2, 3);
        assert_eq!(d.index(Vertex::new(1, 1)), 0);
        assert_eq!(d.index(Vertex::new(2, 2)), 4);
        for k in 0..d.n() {
            assert_eq!(d.index(d.vertex(k)), k);
        }
    }

    #[test]
    fn build_minimal_graph() {
        let g = Graph::new(dims(2, 2), [Edge::from_coords(1, 1, 2, 2)]).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn build_rejects_only_loops_and_out_of_range() {
        assert_eq!(
            Graph::new(dims(2, 2), [Edge::from_coords(1, 1, 1, 1)]),
            Err(Error::OnlyLoops)
        );
        assert!(matches!(
            Graph::new(dims(2, 2), [Edge::from_coords(1, 1, 3, 1)]),
            Err(Error::OutOfRange { i: 3, j: 1, .. })
        ));
        assert_eq!(Graph::new(dims(2, 2), []), Err(Error::EmptyEdgeSet));
    }

    #[test]
    fn edges_are_canonical_and_deduplicated() {
        let g = Graph::new(
            dims(2, 2),
            [Edge::from_coords(2, 2, 1, 1), Edge::from_coords(1, 1, 2, 2)],
        )
        .unwrap();
        assert_eq!(g.edges().count(), 1);
        assert_eq!(g.edges().next().unwrap().u(), Vertex::new(1, 1));
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(rows(&k2().adjacency_matrix()), vec![vec![0, 1], vec![1, 0]]);
        let star = Graph::new(
            dims(2, 2),
            [(1, 2), (2, 1), (2, 2)].map(|(s, t)| Edge::from_coords(1, 1, s, t)),
        )
        .unwrap();
        assert_eq!(
            rows(&star.adjacency_matrix()),
            vec![vec![0, 1, 1, 1], vec![1, 0, 0, 0], vec![1, 0, 0, 0], vec![1, 0, 0, 0]]
        );
        let two = Graph::new(
            dims(2, 2),
            [Edge::from_coords(1, 1, 1, 2), Edge::from_coords(2, 1, 2, 2)],
        )
        .unwrap();
        assert_eq!(
            rows(&two.adjacency_matrix()),
            vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]]
        );
    }

    #[test]
    fn laplacian_examples_and_loop_invariance() {
        assert_eq!(rows(&k2().laplacian()), vec![vec![1, -1], vec![-1, 1]]);
        let star = Graph::new(
            dims(2, 2),
            [(1, 2), (2, 1), (2, 2)].map(|(s, t)| Edge::from_coords(1, 1, s, t)),
        )
        .unwrap();
        let l = star.laplacian();
        assert_eq!(
            rows(&l),
            vec![vec![3, -1, -1, -1], vec![-1, 1, 0, 0], vec![-1, 0, 1, 0], vec![-1, 0, 0, 1]]
        );
        let looped = star.with_edge(Edge::from_coords(1, 1, 1, 1)).unwrap();
        assert_eq!(looped.loop_count(), 1);
        assert_eq!(looped.laplacian(), l);
        assert_eq!(looped.density_matrix(), star.density_matrix());
    }

    #[test]
    fn density_examples() {
        let s = k2().density_matrix();
        assert_eq!(s.get(0, 1), &ratio(-1, 2));
        assert_eq!(crate::linalg::trace(&s), ratio(1, 1));

        let k4 = Graph::new(
            dims(2, 2),
            (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).map(|(a, b)| {
                let d = dims(2, 2);
                Edge::new(d.vertex(a), d.vertex(b))
            }),
        )
        .unwrap();
        assert_eq!(k4.total_degree(), 12);
        assert_eq!(k4.density_matrix().get(0, 0), &ratio(3, 12));

        // Bell projector P[(|11⟩ − |22⟩)/√2].
        let bell = Graph::new(dims(2, 2), [Edge::from_coords(1, 1, 2, 2)]).unwrap();
        let s = bell.density_matrix();
        let half = ratio(1, 2);
        let expected = [
            [half.clone(), ratio(0, 1), ratio(0, 1), -half.clone()],
            [ratio(0, 1), ratio(0, 1), ratio(0, 1), ratio(0, 1)],
            [ratio(0, 1), ratio(0, 1), ratio(0, 1), ratio(0, 1)],
            [-half.clone(), ratio(0, 1), ratio(0, 1), half],
        ];
        for (r, row) in expected.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                assert_eq!(s.get(r, c), x);
            }
        }
    }

    #[test]
    fn tensor_products() {
        let p = tensor_product(&k2(), &k2()).unwrap();
        let edges: Vec<Edge> = p.edges().copied().collect();
        assert_eq!(
            edges,
            vec![Edge::from_coords(1, 1, 2, 2), Edge::from_coords(1, 2, 2, 1)]
        );
        assert_eq!(p.components().components.len(), 2);

        let k3 = Graph::new(
            dims(3, 1),
            [Edge::from_coords(1, 1, 2, 1), Edge::from_coords(1, 1, 3, 1), Edge::from_coords(2, 1, 3, 1)],
        )
        .unwrap();
        let p = tensor_product(&k2(), &k3).unwrap();
        assert_eq!(p.dims(), dims(2, 3));
        let m = p.adjacency_matrix();
        for r in 0..6 {
            for c in 0..6 {
                let a = i64::from(r / 3 != c / 3);
                let b = i64::from(r % 3 != c % 3);
                assert_eq!(*m.get(r, c), a * b);
            }
        }

        let dot = Graph {
            dims: dims(1, 1),
            edges: [Edge::from_coords(1, 1, 1, 1)].into_iter().collect(),
        };
        assert_eq!(tensor_product(&k2(), &dot), Err(Error::OnlyLoops));
    }

    #[test]
    fn components_split_isolated_vertices() {
        let g = Graph::new(dims(2, 3), [Edge::from_coords(1, 1, 2, 2)]).unwrap();
        let c = g.components();
        assert_eq!(c.components.len(), 1);
        assert_eq!(c.components[0].vertices, vec![Vertex::new(1, 1), Vertex::new(2, 2)]);
        assert_eq!(c.isolated.len(), 4);
    }
}
