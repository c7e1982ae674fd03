use graphsep::exact::ratio;
use graphsep::generate::{entangled_pool, separable_pool};
use graphsep::graph::tensor_product;
use graphsep::linalg::{
    eigenvalues_sym, is_psd_exact, partial_transpose, purity, quadratic_form, rank_exact, row_sums, trace,
    JACOBI_TOL,
};
use graphsep::separability::{
    check_verdict, classify_edge, ppt_test, theorem1_witness, transposed_laplacian, verdict, witness_value,
};
use graphsep::{Dims, Edge, EdgeClass, Graph, Vertex, WitnessVector};
use num_traits::{One, Signed, ToPrimitive};
use proptest::prelude::*;

fn arb_dims() -> impl Strategy<Value = Dims> {
    (1usize..=4, 1usize..=4)
        .prop_filter("n >= 2", |(p, q)| p * q >= 2)
        .prop_map(|(p, q)| Dims::new(p, q).unwrap())
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    arb_dims().prop_flat_map(|d| {
        let n = d.n();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let len = pairs.len();
        (proptest::collection::vec(any::<bool>(), len), 0..len, proptest::collection::vec(0..n, 0..3))
            .prop_map(move |(mask, forced, loops)| {
                let mut edges: Vec<Edge> = pairs
                    .iter()
                    .zip(&mask)
                    .filter(|(_, &keep)| keep)
                    .map(|(&(a, b), _)| Edge::new(d.vertex(a), d.vertex(b)))
                    .collect();
                let (a, b) = pairs[forced];
                edges.push(Edge::new(d.vertex(a), d.vertex(b)));
                edges.extend(loops.iter().map(|&k| Edge::new(d.vertex(k), d.vertex(k))));
                Graph::new(d, edges).unwrap()
            })
    })
}

/// Partial transpose by the ket-index definition ⟨it|A^{T_B}|sj⟩ = ⟨ij|A|st⟩.
fn partial_transpose_oracle(a: &[Vec<i64>], p: usize, q: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0; p * q]; p * q];
    for i in 0..p {
        for j in 0..q {
            for s in 0..p {
                for t in 0..q {
                    out[i * q + t][s * q + j] = a[i * q + j][s * q + t];
                }
            }
        }
    }
    out
}

fn kron_oracle(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (m, k) = (a.len(), b.len());
    let mut out = vec![vec![0; m * k]; m * k];
    for r in 0..m * k {
        for c in 0..m * k {
            out[r][c] = a[r / k][c / k] * b[r % k][c % k];
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn laplacian_and_density_basics(g in arb_graph()) {
        let l = g.laplacian();
        prop_assert!(row_sums(&l).iter().all(|&s| s == 0));
        for v in g.dims().vertices() {
            let k = g.dims().index(v);
            prop_assert_eq!(*l.get(k, k), g.degree(v) as i64);
        }
        prop_assert!(trace(&g.density_matrix()).is_one());
        prop_assert!(is_psd_exact(&l).unwrap());
    }

    #[test]
    fn loops_never_change_matrices(g in arb_graph(), k in 0usize..16) {
        let v = g.dims().vertex(k % g.order());
        let h = g.with_edge(Edge::new(v, v)).unwrap();
        prop_assert_eq!(h.laplacian(), g.laplacian());
        prop_assert_eq!(h.density_matrix(), g.density_matrix());
    }

    #[test]
    fn density_is_uniform_edge_mixture(g in arb_graph()) {
        let n = g.order();
        let m = ratio(1, g.edge_count() as i64);
        let mut mix = vec![ratio(0, 1); n * n];
        for e in g.non_loop_edges() {
            let s = Graph::new(g.dims(), [*e]).unwrap().density_matrix();
            for r in 0..n {
                for c in 0..n {
                    mix[r * n + c] += s.get(r, c) * &m;
                }
            }
        }
        let sigma = g.density_matrix();
        for r in 0..n {
            for c in 0..n {
                prop_assert_eq!(&mix[r * n + c], sigma.get(r, c));
            }
        }
    }

    #[test]
    fn partial_transpose_matches_oracle_and_is_involution(g in arb_graph()) {
        let d = g.dims();
        let l = g.laplacian();
        let lt = partial_transpose(&l, d).unwrap();
        prop_assert_eq!(lt.rows(), partial_transpose_oracle(&l.rows(), d.p(), d.q()));
        prop_assert_eq!(partial_transpose(&lt, d).unwrap(), l.clone());
        prop_assert_eq!(lt.diagonal(), l.diagonal());
        prop_assert_eq!(trace(&lt), trace(&l));
        prop_assert!(lt.is_symmetric());
    }

    #[test]
    fn components_partition_adjacency(g in arb_graph()) {
        let d = g.dims();
        let n = g.order();
        let mut total = vec![vec![0i64; n]; n];
        let parts = g.components();
        let mut covered = parts.isolated.len();
        for c in &parts.components {
            covered += c.vertices.len();
            let a = c.embedded_adjacency(d);
            for (r, row) in total.iter_mut().enumerate() {
                for (k, cell) in row.iter_mut().enumerate() {
                    *cell += a.get(r, k);
                }
            }
        }
        prop_assert_eq!(covered, n);
        prop_assert_eq!(total, g.adjacency_matrix().rows());
    }

    #[test]
    fn tensor_adjacency_is_kronecker(g in arb_graph(), h in arb_graph()) {
        let p = tensor_product(&g, &h).unwrap();
        let want = kron_oracle(&g.adjacency_matrix().rows(), &h.adjacency_matrix().rows());
        prop_assert_eq!(p.adjacency_matrix().rows(), want);
        prop_assert!(p.edges().all(|e| classify_edge(e) == EdgeClass::Entangled));
    }

    #[test]
    fn quadratic_form_matches_float(
        g in arb_graph(),
        xs in proptest::collection::vec((-50i64..50, 1i64..20), 16),
    ) {
        let lt = transposed_laplacian(&g);
        let x = WitnessVector::new(xs.iter().take(g.order()).map(|&(a, b)| ratio(a, b)).collect());
        let exact = ToPrimitive::to_f64(&quadratic_form(&lt, &x).unwrap()).unwrap();
        let xf: Vec<f64> = x.entries().iter().map(|v| ToPrimitive::to_f64(v).unwrap()).collect();
        let n = g.order();
        let mut float = 0.0f64;
        let mut scale = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                let term = *lt.get(r, c) as f64 * xf[r] * xf[c];
                float += term;
                scale += term.abs();
            }
        }
        prop_assert!((exact - float).abs() <= 1e-9 * scale.max(1.0));
    }

    #[test]
    fn purity_one_iff_rank_one(g in arb_graph()) {
        let pure = purity(&g.density_matrix()).unwrap().is_one();
        prop_assert_eq!(pure, rank_exact(&g.laplacian()) == 1);
        prop_assert_eq!(pure, g.edge_count() == 1);
    }

    #[test]
    fn jacobi_agrees_with_exact_psd(g in arb_graph()) {
        let d = g.dims();
        let st = partial_transpose(&g.density_matrix(), d).unwrap();
        let eig = eigenvalues_sym(&st, JACOBI_TOL).unwrap();
        let psd = is_psd_exact(&st).unwrap();
        prop_assert_eq!(psd, is_psd_exact(&transposed_laplacian(&g)).unwrap());
        if eig[0].abs() > 10.0 * JACOBI_TOL {
            prop_assert_eq!(eig[0] > 0.0, psd);
        }
        prop_assert!((eig.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn verdicts_revalidate(g in arb_graph()) {
        let v = verdict(&g);
        prop_assert_eq!(check_verdict(&g, &v), Ok(()));
        if v.is_separable() {
            prop_assert!(ppt_test(&g).holds);
        }
    }

    #[test]
    fn single_entangled_edge_is_always_witnessed(
        p in 2usize..=4,
        q in 2usize..=4,
        mask in proptest::collection::vec(any::<bool>(), 64),
        pick in 0usize..64,
    ) {
        let d = Dims::new(p, q).unwrap();
        let mut edges: Vec<Edge> = separable_pool(d)
            .into_iter()
            .zip(mask)
            .filter(|(_, keep)| *keep)
            .map(|(e, _)| e)
            .collect();
        let ent = entangled_pool(d);
        let e = ent[pick % ent.len()];
        edges.push(e);
        let g = Graph::new(d, edges).unwrap();
        let x = theorem1_witness(d, &e).unwrap();
        prop_assert!(witness_value(&g, &x).unwrap().is_negative());
        prop_assert!(!ppt_test(&g).holds);
        prop_assert!(verdict(&g).is_entangled());
    }
}

#[test]
fn full_separable_plus_one_entangled_value() {
    // Every separable edge of (2,2) plus the entangled edge {(1,1),(2,2)}.
    let d = Dims::new(2, 2).unwrap();
    let mut edges = separable_pool(d);
    let e = Edge::new(Vertex::new(1, 1), Vertex::new(2, 2));
    edges.push(e);
    let g = Graph::new(d, edges).unwrap();
    let x = theorem1_witness(d, &e).unwrap();
    assert_eq!(witness_value(&g, &x).unwrap(), ratio(-5, 32));
}
