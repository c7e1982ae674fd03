//! Seeded randomized re-verification suites.
//!
//! Each trial draws its instance from the stream of
//! [`trial_seed`](crate::rng::trial_seed)`(seed, trial)`, so a report
//! depends only on `(suite, dims, trials, seed)` and not on whether trials
//! ran in parallel. The instance seed recorded with a failure regenerates
//! that instance through [`instance`].

use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::int;
use crate::generate::{
    entangled_pool, generate, pe_matching_edges, random_derangement, random_simple_graph, sample_edges,
    separable_pool, Family,
};
use crate::graph::{tensor_product, Dims, Edge, Graph, Vertex};
use crate::io::write_graph;
use crate::linalg::{
    eigenvalues_sym, is_psd_exact, partial_transpose, purity, rank_exact, row_sums, trace, SquareMatrix,
    JACOBI_TOL,
};
use crate::rng::{instance_rng, trial_seed, InstanceRng};
use crate::separability::{
    all_separable_certificate, block_lss_certificate, check_verdict, degree_criterion, pe_matching_certificate,
    ppt_test, theorem1_witness, transposed_laplacian, verdict, witness_value, Certificate, Verdict,
};

/// The claims re-verified by [`run_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// One entangled edge: entangled.
    SingleEntangledEdge,
    /// All entangled edges share a vertex: entangled.
    CommonVertex,
    /// Tensor products of graphs: separable.
    TensorProduct,
    /// `K_n` separable, `K_{1,n−1}` entangled.
    CompleteAndStar,
    /// Entangled edges forming a pe-matching (`p = 2`): separable.
    PeMatching,
}

impl Theorem {
    pub fn from_id(id: u8) -> Option<Self> {
        Some(match id {
            1 => Self::SingleEntangledEdge,
            2 => Self::CommonVertex,
            4 => Self::TensorProduct,
            5 => Self::CompleteAndStar,
            7 => Self::PeMatching,
            _ => return None,
        })
    }

    pub fn id(self) -> u8 {
        match self {
            Self::SingleEntangledEdge => 1,
            Self::CommonVertex => 2,
            Self::TensorProduct => 4,
            Self::CompleteAndStar => 5,
            Self::PeMatching => 7,
        }
    }

    fn check_dims(self, dims: Dims) -> Result<()> {
        let ok = dims.p() >= 2 && dims.q() >= 2 && (self != Self::PeMatching || dims.p() == 2);
        if ok {
            Ok(())
        } else {
            Err(Error::BadDims { p: dims.p(), q: dims.q() })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: usize,
    /// Regenerates the instance via [`instance`].
    pub instance_seed: u64,
    pub reason: String,
    /// The failing graph in the graph file format.
    pub graph: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    /// Theorem id; 0 for the cross-consistency suite.
    pub theorem: u8,
    pub dims: [usize; 2],
    pub trials: usize,
    pub seed: u64,
    pub passed: usize,
    pub failures: Vec<Failure>,
    /// Most negative unnormalized witness value seen, if the suite computes one.
    #[serde(serialize_with = "crate::exact::opt_rational::serialize")]
    pub min_witness_value: Option<BigRational>,
    pub unknown_verdicts: usize,
    #[serde(serialize_with = "crate::exact::float12::serialize")]
    pub elapsed_ms: f64,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    /// The report with `elapsed_ms` zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        Self { elapsed_ms: 0.0, ..self.clone() }
    }
}

struct TrialOutcome {
    trial: usize,
    instance_seed: u64,
    graph: Option<Graph>,
    problems: Vec<String>,
    witness: Option<BigRational>,
    unknown: bool,
}

/// Separable edges: count uniform in `[0, pool]`, then a uniform subset.
fn random_separable(dims: Dims, rng: &mut InstanceRng) -> Vec<Edge> {
    let pool = separable_pool(dims);
    let k = rng.gen_range(0..=pool.len());
    sample_edges(&pool, k, rng).expect("k within pool")
}

/// Regenerates the graph a suite uses for the given instance seed.
pub fn instance(theorem: Theorem, dims: Dims, instance_seed: u64) -> Result<Graph> {
    theorem.check_dims(dims)?;
    let mut rng = instance_rng(instance_seed);
    match theorem {
        Theorem::SingleEntangledEdge => {
            let mut edges = random_separable(dims, &mut rng);
            let pool = entangled_pool(dims);
            edges.push(pool[rng.gen_range(0..pool.len())]);
            Graph::new(dims, edges)
        }
        Theorem::CommonVertex => {
            let center = dims.vertex(rng.gen_range(0..dims.n()));
            let partners: Vec<Vertex> =
                dims.vertices().filter(|v| v.i != center.i && v.j != center.j).collect();
            let hi = dims.q().min(partners.len());
            let lo = 2.min(hi);
            let k = rng.gen_range(lo..=hi);
            let chosen = rand::seq::index::sample(&mut rng, partners.len(), k).into_vec();
            let mut edges = random_separable(dims, &mut rng);
            edges.extend(chosen.into_iter().map(|i| Edge::new(center, partners[i])));
            Graph::new(dims, edges)
        }
        Theorem::TensorProduct => {
            let g = random_simple_graph(dims.p(), &mut rng)?;
            let h = random_simple_graph(dims.q(), &mut rng)?;
            tensor_product(&g, &h)
        }
        Theorem::CompleteAndStar => generate(&Family::Star, dims),
        Theorem::PeMatching => {
            let perm = random_derangement(dims.q(), &mut rng)?;
            let mut edges = random_separable(dims, &mut rng);
            edges.extend(pe_matching_edges(&perm));
            Graph::new(dims, edges)
        }
    }
}

fn entangled_problem(g: &Graph, v: &Verdict) -> Option<String> {
    if !v.is_entangled() {
        return Some(format!("verdict {} instead of entangled", v.label()));
    }
    check_verdict(g, v).err().map(|e| format!("witness does not re-validate: {e}"))
}

fn separable_problem(g: &Graph, v: &Verdict) -> Option<String> {
    if !v.is_separable() {
        return Some(format!("verdict {} instead of separable", v.label()));
    }
    check_verdict(g, v).err().map(|e| format!("certificate does not re-validate: {e}"))
}

fn run_theorem_trial(theorem: Theorem, dims: Dims, trial: usize, instance_seed: u64) -> TrialOutcome {
    let mut out = TrialOutcome { trial, instance_seed, graph: None, problems: Vec::new(), witness: None, unknown: false };
    let g = match instance(theorem, dims, instance_seed) {
        Ok(g) => g,
        Err(e) => {
            out.problems.push(format!("instance generation failed: {e}"));
            return out;
        }
    };
    let v = verdict(&g);
    out.unknown = v == Verdict::Unknown;
    match theorem {
        Theorem::SingleEntangledEdge | Theorem::CommonVertex => {
            out.problems.extend(entangled_problem(&g, &v));
            if theorem == Theorem::SingleEntangledEdge && ppt_test(&g).holds {
                out.problems.push("PPT holds".into());
            }
            let edge = g
                .edges()
                .find(|e| crate::separability::classify_edge(e) == crate::EdgeClass::Entangled)
                .copied()
                .expect("instance has an entangled edge");
            let value = theorem1_witness(dims, &edge).and_then(|x| witness_value(&g, &x));
            match value {
                Ok(value) => {
                    if !value.is_negative() {
                        out.problems.push(format!("witness value {value} is not negative"));
                    }
                    out.witness = Some(value);
                }
                Err(e) => out.problems.push(format!("witness evaluation failed: {e}")),
            }
        }
        Theorem::TensorProduct => {
            if block_lss_certificate(&g).is_none() {
                out.problems.push("block line-sum certificate not granted".into());
            }
            if !ppt_test(&g).holds {
                out.problems.push("PPT fails".into());
            }
            out.problems.extend(separable_problem(&g, &v));
        }
        Theorem::CompleteAndStar => {
            let k = match generate(&Family::Complete, dims) {
                Ok(k) => k,
                Err(e) => {
                    out.problems.push(format!("complete graph: {e}"));
                    return out;
                }
            };
            let vk = verdict(&k);
            if vk != Verdict::Separable(Certificate::BlockLineSumSymmetric) {
                out.problems.push(format!("K_n verdict {} is not block-line-sum separable", vk.label()));
            }
            if transposed_laplacian(&k) != k.laplacian() {
                out.problems.push("L(K_n)^{T_B} differs from L(K_n)".into());
            }
            out.problems.extend(entangled_problem(&g, &v));
            let row = (dims.p() - 1) * dims.q() + 1;
            let want = 1 - dims.q() as i64;
            match degree_criterion(&g).sum_at(row) {
                Some(s) if s == want => {}
                other => out.problems.push(format!("star row {row} sums to {other:?}, expected {want}")),
            }
        }
        Theorem::PeMatching => {
            out.problems.extend(separable_problem(&g, &v));
            match pe_matching_certificate(&g) {
                Ok(Some(Certificate::PeMatching { spanning: true, .. })) => {}
                other => out.problems.push(format!("pe-matching certificate not granted: {other:?}")),
            }
            if dims.q() <= 3 && !ppt_test(&g).holds {
                out.problems.push("disagrees with the low-dimensional PPT decision".into());
            }
        }
    }
    out.graph = Some(g);
    out
}

fn random_any(dims: Dims, rng: &mut InstanceRng) -> Result<Graph> {
    let sep = separable_pool(dims);
    let ent = entangled_pool(dims);
    loop {
        let a = rng.gen_range(0..=sep.len());
        let b = rng.gen_range(0..=ent.len());
        if a + b == 0 {
            continue;
        }
        let mut edges = sample_edges(&sep, a, rng)?;
        edges.extend(sample_edges(&ent, b, rng)?);
        return Graph::new(dims, edges);
    }
}

/// Graph used by the cross-consistency suite for an instance seed.
pub fn consistency_instance(dims: Dims, instance_seed: u64) -> Result<Graph> {
    if dims.n() < 2 {
        return Err(Error::BadDims { p: dims.p(), q: dims.q() });
    }
    random_any(dims, &mut instance_rng(instance_seed))
}

const EIGEN_MARGIN: f64 = 10.0 * JACOBI_TOL;

fn consistency_checks(g: &Graph) -> (Vec<String>, bool) {
    let mut problems = Vec::new();
    let dims = g.dims();
    let sigma = g.density_matrix();
    let l = g.laplacian();

    // σ equals the uniform mixture of its edge states.
    let n = g.order();
    let m = int(g.edge_count() as i64);
    let mut mix = SquareMatrix::zeros(n);
    for e in g.non_loop_edges() {
        let s = Graph::new(dims, [*e]).expect("edge in range").density_matrix();
        mix = SquareMatrix::from_fn(n, |r, c| mix.get(r, c) + s.get(r, c) / &m);
    }
    if mix != sigma {
        problems.push("σ differs from the uniform edge mixture".into());
    }

    let st = partial_transpose(&sigma, dims).expect("order matches");
    if partial_transpose(&st, dims).expect("order matches") != sigma {
        problems.push("partial transpose is not an involution".into());
    }
    if st.diagonal() != sigma.diagonal() || trace(&st) != trace(&sigma) {
        problems.push("partial transpose changed the diagonal".into());
    }
    if !trace(&sigma).is_one() {
        problems.push("trace(σ) ≠ 1".into());
    }
    if row_sums(&l).iter().any(|&s| s != 0) {
        problems.push("Laplacian row sum ≠ 0".into());
    }
    if !is_psd_exact(&l).unwrap_or(false) {
        problems.push("L is not PSD".into());
    }

    let adjacency = g.adjacency_matrix();
    let mut total = SquareMatrix::zeros(n);
    for c in g.components().components {
        let a = c.embedded_adjacency(dims);
        total = SquareMatrix::from_fn(n, |r, k| total.get(r, k) + a.get(r, k));
    }
    if total != adjacency {
        problems.push("component adjacencies do not sum to M(G)".into());
    }

    let lt = transposed_laplacian(g);
    let psd = is_psd_exact(&lt).unwrap_or(false);
    match eigenvalues_sym(&st, JACOBI_TOL) {
        Ok(eig) => {
            let min = eig[0];
            if min.abs() > EIGEN_MARGIN && (min > 0.0) != psd {
                problems.push(format!("Jacobi minimum {min} disagrees with exact PSD = {psd}"));
            }
        }
        Err(e) => problems.push(format!("Jacobi failed: {e}")),
    }

    match purity(&sigma) {
        Ok(pur) => {
            if pur.is_one() != (rank_exact(&l) == 1) {
                problems.push("purity 1 does not match rank 1".into());
            }
        }
        Err(e) => problems.push(format!("purity failed: {e}")),
    }

    if block_lss_certificate(g).is_some() && !degree_criterion(g).holds {
        problems.push("blocks line sum symmetric but L^{T_B} has a nonzero row sum".into());
    }

    let mut granted = Vec::new();
    granted.extend(all_separable_certificate(g));
    granted.extend(block_lss_certificate(g));
    if dims.p() == 2 {
        if let Ok(Some(c @ Certificate::PeMatching { spanning: true, .. })) = pe_matching_certificate(g) {
            granted.push(c);
        }
    }
    if !granted.is_empty() && !psd {
        problems.push(format!("certificate {} granted while PPT fails", granted[0].kind()));
    }

    let v = verdict(g);
    if let Err(e) = check_verdict(g, &v) {
        problems.push(format!("verdict {} does not re-validate: {e}", v.label()));
    }
    let unknown = v == Verdict::Unknown;
    if unknown && matches!((dims.p(), dims.q()), (2, 2) | (2, 3) | (3, 2)) {
        problems.push("unknown verdict in a PPT-decidable dimension".into());
    }
    (problems, unknown)
}

fn execute<F>(trials: usize, seed: u64, exec: Execution, f: F) -> Vec<TrialOutcome>
where
    F: Fn(usize, u64) -> TrialOutcome + Sync,
{
    let run = |t: usize| f(t, trial_seed(seed, t as u64));
    match exec {
        Execution::Sequential => (0..trials).map(run).collect(),
        Execution::Parallel => (0..trials).into_par_iter().map(run).collect(),
    }
}

fn assemble(suite: &str, theorem: u8, dims: Dims, trials: usize, seed: u64, outcomes: Vec<TrialOutcome>, start: Instant) -> SuiteReport {
    let mut failures = Vec::new();
    let mut min_witness: Option<BigRational> = None;
    let mut unknown = 0;
    for o in &outcomes {
        if let Some(w) = &o.witness {
            if min_witness.as_ref().is_none_or(|m| w < m) {
                min_witness = Some(w.clone());
            }
        }
        unknown += usize::from(o.unknown);
        if !o.problems.is_empty() {
            failures.push(Failure {
                trial: o.trial,
                instance_seed: o.instance_seed,
                reason: o.problems.join("; "),
                graph: o.graph.as_ref().map(write_graph).unwrap_or_default(),
            });
        }
    }
    SuiteReport {
        suite: suite.to_string(),
        theorem,
        dims: [dims.p(), dims.q()],
        trials,
        seed,
        passed: trials - failures.len(),
        failures,
        min_witness_value: min_witness,
        unknown_verdicts: unknown,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Re-verifies `theorem` on `trials` seeded instances.
pub fn run_suite(theorem: Theorem, dims: Dims, trials: usize, seed: u64, exec: Execution) -> Result<SuiteReport> {
    if trials == 0 {
        return Err(Error::BadTrialCount);
    }
    theorem.check_dims(dims)?;
    let start = Instant::now();
    let outcomes = execute(trials, seed, exec, |t, s| run_theorem_trial(theorem, dims, t, s));
    Ok(assemble("theorem", theorem.id(), dims, trials, seed, outcomes, start))
}

/// Invariant checks over fully random graphs.
pub fn cross_consistency(dims: Dims, trials: usize, seed: u64, exec: Execution) -> Result<SuiteReport> {
    if trials == 0 {
        return Err(Error::BadTrialCount);
    }
    if dims.n() < 2 {
        return Err(Error::BadDims { p: dims.p(), q: dims.q() });
    }
    let start = Instant::now();
    let outcomes = execute(trials, seed, exec, |trial, instance_seed| {
        match consistency_instance(dims, instance_seed) {
            Ok(g) => {
                let (problems, unknown) = consistency_checks(&g);
                TrialOutcome { trial, instance_seed, graph: Some(g), problems, witness: None, unknown }
            }
            Err(e) => TrialOutcome {
                trial,
                instance_seed,
                graph: None,
                problems: vec![format!("instance generation failed: {e}")],
                witness: None,
                unknown: false,
            },
        }
    });
    Ok(assemble("cross-consistency", 0, dims, trials, seed, outcomes, start))
}
