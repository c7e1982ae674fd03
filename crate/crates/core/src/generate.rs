//! Named and seeded random graph families.

use rand::seq::index;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Dims, Edge, Graph, Vertex};
use crate::matching::is_derangement;
use crate::rng::{instance_rng, InstanceRng};
use crate::separability::{classify_edge, EdgeClass};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `K_n` on all `p·q` vertices.
    Complete,
    /// `K_{1,n−1}` with hub `(1,1)`.
    Star,
    /// Exactly one edge, which must be entangled.
    SingleEntangledEdge(Edge),
    /// Edges `{(1,j),(2,π(j))}` for a derangement `π` of `1..=q`; needs `p = 2`.
    PeMatching(Vec<usize>),
    /// Uniform sample without replacement from both edge pools.
    Random { separable: usize, entangled: usize, seed: u64 },
}

/// All separable (same-row or same-column) non-loop edges.
pub fn separable_pool(dims: Dims) -> Vec<Edge> {
    pool(dims, |c| matches!(c, EdgeClass::SeparableSameRow | EdgeClass::SeparableSameColumn))
}

/// All edges whose endpoints differ in both coordinates.
pub fn entangled_pool(dims: Dims) -> Vec<Edge> {
    pool(dims, |c| c == EdgeClass::Entangled)
}

fn pool(dims: Dims, keep: impl Fn(EdgeClass) -> bool) -> Vec<Edge> {
    let n = dims.n();
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| Edge::new(dims.vertex(a), dims.vertex(b))))
        .filter(|e| keep(classify_edge(e)))
        .collect()
}

pub fn generate(family: &Family, dims: Dims) -> Result<Graph> {
    match family {
        Family::Complete => {
            let n = dims.n();
            let edges: Vec<Edge> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| Edge::new(dims.vertex(a), dims.vertex(b))))
                .collect();
            Graph::new(dims, edges).map_err(|_| Error::BadParams("complete graph needs n >= 2".into()))
        }
        Family::Star => {
            let hub = Vertex::new(1, 1);
            let edges: Vec<Edge> = (1..dims.n()).map(|k| Edge::new(hub, dims.vertex(k))).collect();
            Graph::new(dims, edges).map_err(|_| Error::BadParams("star graph needs n >= 2".into()))
        }
        Family::SingleEntangledEdge(e) => {
            if classify_edge(e) != EdgeClass::Entangled {
                return Err(Error::BadParams(format!("edge {e} is not entangled")));
            }
            Graph::new(dims, [*e])
        }
        Family::PeMatching(perm) => {
            if dims.p() != 2 {
                return Err(Error::BadParams(format!("pe-matching needs p = 2, got p = {}", dims.p())));
            }
            if perm.len() != dims.q() || !is_derangement(perm) {
                return Err(Error::BadParams(format!("{perm:?} is not a derangement of 1..={}", dims.q())));
            }
            Graph::new(dims, pe_matching_edges(perm))
        }
        Family::Random { separable, entangled, seed } => {
            let mut rng = instance_rng(*seed);
            random_graph(dims, *separable, *entangled, &mut rng)
        }
    }
}

/// Edges `{(1,j),(2,π(j))}` for all `j` with `π(j) ≠ j`.
pub fn pe_matching_edges(perm: &[usize]) -> Vec<Edge> {
    perm.iter()
        .enumerate()
        .filter(|&(j, &t)| t != j + 1)
        .map(|(j, &t)| Edge::from_coords(1, j + 1, 2, t))
        .collect()
}

/// Draws `k` distinct elements of `pool`, order preserved.
pub fn sample_edges(pool: &[Edge], k: usize, rng: &mut InstanceRng) -> Result<Vec<Edge>> {
    if k > pool.len() {
        return Err(Error::BadParams(format!("requested {k} edges from a pool of {}", pool.len())));
    }
    let mut picked = index::sample(rng, pool.len(), k).into_vec();
    picked.sort_unstable();
    Ok(picked.into_iter().map(|i| pool[i]).collect())
}

pub fn random_graph(dims: Dims, separable: usize, entangled: usize, rng: &mut InstanceRng) -> Result<Graph> {
    if separable + entangled == 0 {
        return Err(Error::BadParams("random graph needs at least one edge".into()));
    }
    let mut edges = sample_edges(&separable_pool(dims), separable, rng)?;
    edges.extend(sample_edges(&entangled_pool(dims), entangled, rng)?);
    Graph::new(dims, edges)
}

/// Uniformly random derangement of `1..=q` by rejection from uniform shuffles.
pub fn random_derangement(q: usize, rng: &mut InstanceRng) -> Result<Vec<usize>> {
    if q < 2 {
        return Err(Error::BadParams("no derangement of fewer than 2 points".into()));
    }
    let mut perm: Vec<usize> = (1..=q).collect();
    loop {
        perm.shuffle(rng);
        if is_derangement(&perm) {
            return Ok(perm);
        }
    }
}

/// Random graph on `order` vertices laid out as dims `(order, 1)`, with at
/// least one edge; each pair is kept with probability 1/2.
pub fn random_simple_graph(order: usize, rng: &mut InstanceRng) -> Result<Graph> {
    if order < 2 {
        return Err(Error::BadParams("need at least 2 vertices".into()));
    }
    let dims = Dims::new(order, 1)?;
    loop {
        let edges: Vec<Edge> = (1..=order)
            .flat_map(|a| (a + 1..=order).map(move |b| Edge::from_coords(a, 1, b, 1)))
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        if !edges.is_empty() {
            return Graph::new(dims, edges);
        }
    }
}
