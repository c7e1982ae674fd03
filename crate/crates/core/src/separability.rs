//! Edge classes, entanglement criteria, separability certificates and the
//! verdict engine.
//!
//! Every verdict carries a payload that can be re-checked against the graph
//! with [`check_verdict`]: entangled verdicts carry an exact witness,
//! separable verdicts a certificate.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{format_rational, int, ratio, round_sig12};
use crate::graph::{Dims, Edge, Graph};
use crate::linalg::{
    block, eigenvalues_sym, is_psd_exact, kron, line_sum_symmetric, partial_transpose, quadratic_form, row_sums,
    trace, IntegerMatrix, RationalMatrix, SquareMatrix, WitnessVector, JACOBI_TOL,
};
use crate::matching::{complete_derangement, is_derangement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeClass {
    SeparableSameRow,
    SeparableSameColumn,
    Entangled,
    Loop,
}

impl EdgeClass {
    pub fn is_separable(self) -> bool {
        matches!(self, Self::SeparableSameRow | Self::SeparableSameColumn)
    }
}

/// The state `(|ij⟩ − |st⟩)/√2` of an edge is a product state iff the
/// endpoints share a row (`i = s`) or a column (`j = t`).
pub fn classify_edge(e: &Edge) -> EdgeClass {
    let (u, v) = (e.u(), e.v());
    if u == v {
        EdgeClass::Loop
    } else if u.i == v.i {
        EdgeClass::SeparableSameRow
    } else if u.j == v.j {
        EdgeClass::SeparableSameColumn
    } else {
        EdgeClass::Entangled
    }
}

pub fn entangled_edges(g: &Graph) -> Vec<Edge> {
    g.edges().filter(|e| classify_edge(e) == EdgeClass::Entangled).copied().collect()
}

/// `L(G)^{T_B}`.
pub fn transposed_laplacian(g: &Graph) -> IntegerMatrix {
    partial_transpose(&g.laplacian(), g.dims()).expect("laplacian order matches dims")
}

/// One term `w · (ρ_A ⊗ ρ_B)` of a product-state decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductTerm {
    pub weight: BigRational,
    pub factor_a: RationalMatrix,
    pub factor_b: RationalMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// `σ(G) = Σ w_k ρ_A^k ⊗ ρ_B^k`, one term per edge.
    AllEdgesSeparable(Vec<ProductTerm>),
    /// Every `q×q` block of `σ(G)` is line sum symmetric.
    BlockLineSumSymmetric,
    /// The entangled edges lie in the pe-matching given by `permutation`
    /// (1-based images). `spanning` is true when they are the whole
    /// matching; `separable_edges` counts the edges split off beforehand.
    PeMatching { permutation: Vec<usize>, spanning: bool, separable_edges: usize },
    /// PPT holds in `2×2`, `2×3` or `3×2`, where PPT is sufficient.
    LowDimPpt,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// `L(G)^{T_B}` failed the exact PSD test.
    NegativeEigenvalue { min_eigenvalue_estimate: Option<f64> },
    /// Row `row` (1-based) of `L(G)^{T_B}` sums to `row_sum ≠ 0`.
    DegreeCriterion { row: usize, row_sum: i64 },
    /// `Xᵀ L(G)^{T_B} X = value < 0` (unnormalized; divide by `d_G` for σ).
    QuadraticWitness { edge: Edge, vector: WitnessVector, value: BigRational, total_degree: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Separable(Certificate),
    Entangled(Witness),
    /// Neither criterion decided; PPT held.
    Unknown,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Separable(_) => "separable",
            Self::Entangled(_) => "entangled",
            Self::Unknown => "unknown",
        }
    }

    pub fn is_separable(&self) -> bool {
        matches!(self, Self::Separable(_))
    }

    pub fn is_entangled(&self) -> bool {
        matches!(self, Self::Entangled(_))
    }

    pub fn to_json(&self) -> Value {
        let (cert, wit) = match self {
            Self::Separable(c) => (c.to_json(), Value::Null),
            Self::Entangled(w) => (Value::Null, w.to_json()),
            Self::Unknown => (Value::Null, Value::Null),
        };
        json!({ "verdict": self.label(), "certificate": cert, "witness": wit })
    }
}

fn matrix_json(m: &RationalMatrix) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|x| Value::String(format_rational(x))).collect()))
            .collect(),
    )
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::AllEdgesSeparable(_) => "all-edges-separable",
            Self::BlockLineSumSymmetric => "block-line-sum-symmetric",
            Self::PeMatching { .. } => "pe-matching",
            Self::LowDimPpt => "low-dim-ppt",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Self::AllEdgesSeparable(terms) => json!({
                "kind": self.kind(),
                "terms": terms.iter().map(|t| json!({
                    "weight": format_rational(&t.weight),
                    "factor_a": matrix_json(&t.factor_a),
                    "factor_b": matrix_json(&t.factor_b),
                })).collect::<Vec<_>>(),
            }),
            Self::PeMatching { permutation, spanning, separable_edges } => json!({
                "kind": self.kind(),
                "permutation": permutation,
                "spanning": spanning,
                "separable_edges_split": separable_edges,
            }),
            Self::BlockLineSumSymmetric | Self::LowDimPpt => json!({ "kind": self.kind() }),
        }
    }
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::NegativeEigenvalue { .. } => "negative-eigenvalue",
            Self::DegreeCriterion { .. } => "degree-criterion",
            Self::QuadraticWitness { .. } => "quadratic-witness",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Self::NegativeEigenvalue { min_eigenvalue_estimate } => json!({
                "kind": self.kind(),
                "min_eigenvalue_estimate": min_eigenvalue_estimate.map(round_sig12),
            }),
            Self::DegreeCriterion { row, row_sum } => json!({
                "kind": self.kind(),
                "row": row,
                "row_sum": row_sum.to_string(),
            }),
            Self::QuadraticWitness { edge, vector, value, total_degree } => json!({
                "kind": self.kind(),
                "edge": [[edge.u().i, edge.u().j], [edge.v().i, edge.v().j]],
                "vector": vector.entries().iter().map(format_rational).collect::<Vec<_>>(),
                "value": format_rational(value),
                "d_g": total_degree,
            }),
        }
    }
}

macro_rules! serialize_via_json {
    ($($t:ty),*) => {$(
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                self.to_json().serialize(s)
            }
        }
    )*};
}
serialize_via_json!(Verdict, Certificate, Witness);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PptResult {
    pub holds: bool,
    /// Smallest eigenvalue of `σ^{T_B}` from the Jacobi solver.
    #[serde(serialize_with = "crate::exact::opt_float12::serialize")]
    pub min_eig_estimate: Option<f64>,
}

/// PPT test, decided exactly on `L(G)^{T_B}`.
pub fn ppt_test(g: &Graph) -> PptResult {
    let lt = transposed_laplacian(g);
    let holds = is_psd_exact(&lt).expect("partial transpose of a symmetric matrix is symmetric");
    let d = g.total_degree() as f64;
    let min_eig_estimate = eigenvalues_sym(&lt, JACOBI_TOL)
        .ok()
        .and_then(|e| e.first().copied())
        .map(|x| x / d);
    PptResult { holds, min_eig_estimate }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RowViolation {
    /// 1-based row index.
    pub row: usize,
    #[serde(serialize_with = "serialize_i64_str")]
    pub sum: i64,
}

fn serialize_i64_str<S: Serializer>(v: &i64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeResult {
    pub holds: bool,
    /// First violating row, 1-based.
    pub violating_row: Option<usize>,
    /// Unnormalized sum of `violating_row` (0 when the criterion holds).
    #[serde(serialize_with = "serialize_i64_str")]
    pub row_sum: i64,
    pub violations: Vec<RowViolation>,
}

impl DegreeResult {
    pub fn sum_at(&self, row: usize) -> Option<i64> {
        self.violations.iter().find(|v| v.row == row).map(|v| v.sum)
    }
}

/// Degree criterion: every row of `L(G)^{T_B}` must sum to zero.
pub fn degree_criterion(g: &Graph) -> DegreeResult {
    let violations: Vec<RowViolation> = row_sums(&transposed_laplacian(g))
        .into_iter()
        .enumerate()
        .filter(|&(_, s)| s != 0)
        .map(|(r, sum)| RowViolation { row: r + 1, sum })
        .collect();
    let first = violations.first().copied();
    DegreeResult {
        holds: violations.is_empty(),
        violating_row: first.map(|v| v.row),
        row_sum: first.map_or(0, |v| v.sum),
        violations,
    }
}

/// The vector with `(p+q−1)/(2(p+q))` at both endpoints of `e` and `1/2` elsewhere.
pub fn theorem1_witness(dims: Dims, e: &Edge) -> Result<WitnessVector> {
    if classify_edge(e) != EdgeClass::Entangled {
        return Err(Error::NotEntangledEdge);
    }
    for v in [e.u(), e.v()] {
        if !dims.contains(v) {
            return Err(Error::OutOfRange { i: v.i, j: v.j, p: dims.p(), q: dims.q() });
        }
    }
    let m = (dims.p() + dims.q()) as i64;
    let special = ratio(m - 1, 2 * m);
    let mut x = vec![ratio(1, 2); dims.n()];
    x[dims.index(e.u())] = special.clone();
    x[dims.index(e.v())] = special;
    Ok(WitnessVector::new(x))
}

/// `Xᵀ L(G)^{T_B} X`, exact.
pub fn witness_value(g: &Graph, x: &WitnessVector) -> Result<BigRational> {
    quadratic_form(&transposed_laplacian(g), x)
}

fn unit_projector(dim: usize, k: usize) -> RationalMatrix {
    SquareMatrix::from_fn(dim, |r, c| if r == k && c == k { int(1) } else { int(0) })
}

/// Projector onto `(|a⟩ − |b⟩)/√2`.
fn difference_projector(dim: usize, a: usize, b: usize) -> RationalMatrix {
    SquareMatrix::from_fn(dim, |r, c| {
        let sign = |k: usize| if k == a { 1 } else if k == b { -1 } else { 0 };
        ratio(sign(r) * sign(c), 2)
    })
}

/// Explicit product-state decomposition when every non-loop edge is separable.
pub fn all_separable_certificate(g: &Graph) -> Option<Certificate> {
    let dims = g.dims();
    let weight = ratio(1, g.edge_count() as i64);
    let mut terms = Vec::new();
    for e in g.non_loop_edges() {
        let (u, v) = (e.u(), e.v());
        let (factor_a, factor_b) = match classify_edge(e) {
            EdgeClass::SeparableSameRow => {
                (unit_projector(dims.p(), u.i - 1), difference_projector(dims.q(), u.j - 1, v.j - 1))
            }
            EdgeClass::SeparableSameColumn => {
                (difference_projector(dims.p(), u.i - 1, v.i - 1), unit_projector(dims.q(), u.j - 1))
            }
            _ => return None,
        };
        terms.push(ProductTerm { weight: weight.clone(), factor_a, factor_b });
    }
    Some(Certificate::AllEdgesSeparable(terms))
}

fn all_blocks_line_sum_symmetric(g: &Graph) -> bool {
    // Line sum symmetry is invariant under the positive factor 1/d_G.
    let l = g.laplacian();
    let dims = g.dims();
    (1..=dims.p()).all(|i| {
        (1..=dims.p()).all(|j| line_sum_symmetric(&block(&l, dims, i, j).expect("block in range")))
    })
}

/// Granted when all `p²` blocks of `σ(G)` are line sum symmetric.
pub fn block_lss_certificate(g: &Graph) -> Option<Certificate> {
    all_blocks_line_sum_symmetric(g).then_some(Certificate::BlockLineSumSymmetric)
}

/// Checks that the entangled edges of a `p = 2` graph lie in one pe-matching.
///
/// Each entangled edge `{(1,j),(2,t)}` fixes `π(j) = t`; the certificate is
/// granted when these constraints are injective and extend to a derangement
/// of `1..=q`.
pub fn pe_matching_certificate(g: &Graph) -> Result<Option<Certificate>> {
    let dims = g.dims();
    if dims.p() != 2 {
        return Err(Error::WrongDims(dims.p()));
    }
    let entangled = entangled_edges(g);
    let fixed: Vec<(usize, usize)> = entangled.iter().map(|e| (e.u().j, e.v().j)).collect();
    let Some(permutation) = complete_derangement(dims.q(), &fixed) else {
        return Ok(None);
    };
    Ok(Some(Certificate::PeMatching {
        permutation,
        spanning: entangled.len() == dims.q(),
        separable_edges: g.edge_count() - entangled.len(),
    }))
}

fn is_low_dim(dims: Dims) -> bool {
    matches!((dims.p(), dims.q()), (2, 2) | (2, 3) | (3, 2))
}

/// Tries the entangled-edge vectors until one gives a negative form.
pub fn find_quadratic_witness(g: &Graph) -> Option<Witness> {
    let lt = transposed_laplacian(g);
    entangled_edges(g).into_iter().find_map(|edge| {
        let vector = theorem1_witness(g.dims(), &edge).ok()?;
        let value = quadratic_form(&lt, &vector).ok()?;
        value.is_negative().then(|| Witness::QuadraticWitness {
            edge,
            vector,
            value,
            total_degree: g.total_degree(),
        })
    })
}

/// Runs the criteria in order and returns the first that decides.
///
/// 1. degree criterion violated: entangled;
/// 2. PPT violated: entangled;
/// 3. all edges separable: separable with an explicit decomposition;
/// 4. all blocks line sum symmetric: separable;
/// 5. `p = 2` and the entangled edges form a pe-matching: separable;
/// 6. PPT holds in `2×2`, `2×3` or `3×2`: separable;
/// 7. otherwise unknown.
pub fn verdict(g: &Graph) -> Verdict {
    let degree = degree_criterion(g);
    if let (Some(row), false) = (degree.violating_row, degree.holds) {
        return Verdict::Entangled(Witness::DegreeCriterion { row, row_sum: degree.row_sum });
    }
    let ppt = ppt_test(g);
    if !ppt.holds {
        return Verdict::Entangled(
            find_quadratic_witness(g)
                .unwrap_or(Witness::NegativeEigenvalue { min_eigenvalue_estimate: ppt.min_eig_estimate }),
        );
    }
    if let Some(c) = all_separable_certificate(g) {
        return Verdict::Separable(c);
    }
    if let Some(c) = block_lss_certificate(g) {
        return Verdict::Separable(c);
    }
    if g.dims().p() == 2 {
        if let Ok(Some(c @ Certificate::PeMatching { spanning: true, .. })) = pe_matching_certificate(g) {
            return Verdict::Separable(c);
        }
    }
    if is_low_dim(g.dims()) {
        return Verdict::Separable(Certificate::LowDimPpt);
    }
    Verdict::Unknown
}

/// Re-validates a certificate against `g` from scratch.
pub fn check_certificate(g: &Graph, cert: &Certificate) -> std::result::Result<(), String> {
    match cert {
        Certificate::AllEdgesSeparable(terms) => {
            let n = g.order();
            let mut sum = SquareMatrix::zeros(n);
            let mut total_weight = BigRational::zero();
            for t in terms {
                if !t.weight.is_positive() {
                    return Err("non-positive weight".into());
                }
                for f in [&t.factor_a, &t.factor_b] {
                    if !trace(f).is_one() || !is_psd_exact(f).unwrap_or(false) {
                        return Err("factor is not a density matrix".into());
                    }
                }
                let k = kron(&t.factor_a, &t.factor_b);
                if k.order() != n {
                    return Err("factor dimensions do not match".into());
                }
                sum = SquareMatrix::from_fn(n, |r, c| sum.get(r, c) + &t.weight * k.get(r, c));
                total_weight += &t.weight;
            }
            if !total_weight.is_one() {
                return Err("weights do not sum to 1".into());
            }
            if sum != g.density_matrix() {
                return Err("decomposition does not reproduce σ(G)".into());
            }
            Ok(())
        }
        Certificate::BlockLineSumSymmetric => {
            if all_blocks_line_sum_symmetric(g) {
                Ok(())
            } else {
                Err("a block is not line sum symmetric".into())
            }
        }
        Certificate::PeMatching { permutation, spanning, .. } => {
            if g.dims().p() != 2 || permutation.len() != g.dims().q() || !is_derangement(permutation) {
                return Err("permutation is not a derangement of 1..=q".into());
            }
            let entangled = entangled_edges(g);
            if entangled.iter().any(|e| permutation[e.u().j - 1] != e.v().j) {
                return Err("an entangled edge is not in the pe-matching".into());
            }
            if !*spanning || entangled.len() != g.dims().q() {
                return Err("entangled edges do not span the vertex set".into());
            }
            Ok(())
        }
        Certificate::LowDimPpt => {
            if !is_low_dim(g.dims()) {
                return Err("dims are not 2x2, 2x3 or 3x2".into());
            }
            if !ppt_test(g).holds {
                return Err("PPT fails".into());
            }
            Ok(())
        }
    }
}

/// Re-validates a witness against `g` from scratch.
pub fn check_witness(g: &Graph, w: &Witness) -> std::result::Result<(), String> {
    match w {
        Witness::NegativeEigenvalue { .. } => {
            if is_psd_exact(&transposed_laplacian(g)).unwrap_or(true) {
                Err("L^{T_B} is PSD".into())
            } else {
                Ok(())
            }
        }
        Witness::DegreeCriterion { row, row_sum } => {
            let sums = row_sums(&transposed_laplacian(g));
            match sums.get(row.wrapping_sub(1)) {
                Some(&s) if s == *row_sum && s != 0 => Ok(()),
                _ => Err(format!("row {row} does not sum to {row_sum}")),
            }
        }
        Witness::QuadraticWitness { vector, value, .. } => {
            let actual = witness_value(g, vector).map_err(|e| e.to_string())?;
            if &actual != value {
                return Err(format!("form evaluates to {}, not {}", format_rational(&actual), format_rational(value)));
            }
            if !actual.is_negative() {
                return Err("form is not negative".into());
            }
            Ok(())
        }
    }
}

pub fn check_verdict(g: &Graph, v: &Verdict) -> std::result::Result<(), String> {
    match v {
        Verdict::Separable(c) => check_certificate(g, c),
        Verdict::Entangled(w) => check_witness(g, w),
        Verdict::Unknown => {
            if ppt_test(g).holds {
                Ok(())
            } else {
                Err("unknown verdict while PPT fails".into())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};

    fn dims(p: usize, q: usize) -> Dims {
        Dims::new(p, q).unwrap()
    }

    fn graph(d: Dims, edges: &[(usize, usize, usize, usize)]) -> Graph {
        Graph::new(d, edges.iter().map(|&(i, j, s, t)| Edge::from_coords(i, j, s, t))).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_edge(&Edge::from_coords(1, 1, 2, 2)), EdgeClass::Entangled);
        assert_eq!(classify_edge(&Edge::from_coords(1, 1, 1, 2)), EdgeClass::SeparableSameRow);
        assert_eq!(classify_edge(&Edge::from_coords(1, 2, 2, 2)), EdgeClass::SeparableSameColumn);
        assert_eq!(classify_edge(&Edge::from_coords(1, 1, 1, 1)), EdgeClass::Loop);
    }

    #[test]
    fn ppt_examples() {
        let k4 = generate(&Family::Complete, dims(2, 2)).unwrap();
        let r = ppt_test(&k4);
        assert!(r.holds);
        assert!(r.min_eig_estimate.unwrap().abs() < 1e-12);

        let bell = graph(dims(2, 2), &[(1, 1, 2, 2)]);
        let r = ppt_test(&bell);
        assert!(!r.holds);
        assert!((r.min_eig_estimate.unwrap() + 0.5).abs() < 1e-12);

        let sep = graph(dims(2, 3), &[(1, 1, 1, 2), (1, 2, 2, 2), (2, 1, 2, 3), (1, 3, 2, 3)]);
        assert!(ppt_test(&sep).holds);
    }

    #[test]
    fn degree_examples() {
        let star = generate(&Family::Star, dims(2, 2)).unwrap();
        let r = degree_criterion(&star);
        assert!(!r.holds);
        assert_eq!(r.sum_at(3), Some(-1));
        // Row 1 already violates: 3 − 1 − 1 = 1.
        assert_eq!((r.violating_row, r.row_sum), (Some(1), 1));

        let star = generate(&Family::Star, dims(2, 3)).unwrap();
        assert_eq!(degree_criterion(&star).sum_at(4), Some(-2));

        for (p, q) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            assert!(degree_criterion(&generate(&Family::Complete, dims(p, q)).unwrap()).holds);
        }
    }

    #[test]
    fn theorem1_vector_examples() {
        let x = theorem1_witness(dims(2, 2), &Edge::from_coords(1, 1, 2, 2)).unwrap();
        assert_eq!(x.entries(), &[ratio(3, 8), ratio(1, 2), ratio(1, 2), ratio(3, 8)]);

        let x = theorem1_witness(dims(2, 3), &Edge::from_coords(1, 1, 2, 2)).unwrap();
        assert_eq!(x.entries()[0], ratio(2, 5));
        assert_eq!(x.entries()[4], ratio(2, 5));
        assert_eq!(x.entries()[1], ratio(1, 2));

        assert_eq!(
            theorem1_witness(dims(2, 2), &Edge::from_coords(1, 1, 1, 2)),
            Err(Error::NotEntangledEdge)
        );
    }

    #[test]
    fn witness_value_examples() {
        let e = Edge::from_coords(1, 1, 2, 2);
        let x = theorem1_witness(dims(2, 2), &e).unwrap();
        let full = graph(dims(2, 2), &[(1, 1, 1, 2), (2, 1, 2, 2), (1, 1, 2, 1), (1, 2, 2, 2), (1, 1, 2, 2)]);
        assert_eq!(witness_value(&full, &x).unwrap(), ratio(-5, 32));
        let bell = graph(dims(2, 2), &[(1, 1, 2, 2)]);
        assert_eq!(witness_value(&bell, &x).unwrap(), ratio(-7, 32));
        let sep = graph(dims(2, 2), &[(1, 1, 1, 2), (1, 2, 2, 2)]);
        let halves = WitnessVector::new(vec![ratio(1, 2); 4]);
        assert_eq!(witness_value(&sep, &halves).unwrap(), int(0));
    }

    #[test]
    fn all_separable_examples() {
        let path = graph(dims(2, 2), &[(1, 1, 1, 2), (1, 2, 2, 2)]);
        let cert = all_separable_certificate(&path).unwrap();
        let Certificate::AllEdgesSeparable(terms) = &cert else { panic!() };
        assert_eq!(terms.len(), 2);
        assert!(terms.iter().all(|t| t.weight == ratio(1, 2)));
        assert_eq!(check_certificate(&path, &cert), Ok(()));

        assert!(all_separable_certificate(&generate(&Family::Complete, dims(2, 2)).unwrap()).is_none());
    }

    #[test]
    fn block_lss_examples() {
        for (p, q) in [(2, 2), (2, 3), (3, 3), (2, 4)] {
            assert!(block_lss_certificate(&generate(&Family::Complete, dims(p, q)).unwrap()).is_some());
        }
        assert!(block_lss_certificate(&generate(&Family::Star, dims(2, 2)).unwrap()).is_none());
    }

    #[test]
    fn pe_matching_examples() {
        let g = graph(dims(2, 2), &[(1, 1, 2, 2), (1, 2, 2, 1)]);
        assert_eq!(
            pe_matching_certificate(&g).unwrap(),
            Some(Certificate::PeMatching { permutation: vec![2, 1], spanning: true, separable_edges: 0 })
        );
        let g = graph(dims(2, 3), &[(1, 1, 2, 2), (1, 2, 2, 1)]);
        assert_eq!(pe_matching_certificate(&g).unwrap(), None);

        let g = graph(dims(2, 3), &[(1, 1, 2, 2)]);
        let Some(Certificate::PeMatching { permutation, spanning, .. }) = pe_matching_certificate(&g).unwrap()
        else {
            panic!("expected a completion");
        };
        assert!(is_derangement(&permutation) && permutation[0] == 2);
        assert!(!spanning);
        // A lone entangled edge is a Bell state, so the verdict must not use this.
        assert!(verdict(&g).is_entangled());

        let g = graph(dims(3, 2), &[(1, 1, 2, 2)]);
        assert_eq!(pe_matching_certificate(&g), Err(Error::WrongDims(3)));
    }

    #[test]
    fn verdict_examples() {
        let k4 = generate(&Family::Complete, dims(2, 2)).unwrap();
        assert_eq!(verdict(&k4), Verdict::Separable(Certificate::BlockLineSumSymmetric));

        let star = generate(&Family::Star, dims(2, 2)).unwrap();
        let v = verdict(&star);
        assert!(matches!(v, Verdict::Entangled(Witness::DegreeCriterion { .. })));
        assert_eq!(check_verdict(&star, &v), Ok(()));

        let single = graph(dims(3, 3), &[(1, 1, 1, 2), (2, 2, 3, 2), (1, 3, 3, 1)]);
        assert!(verdict(&single).is_entangled());

        let pe = generate(&Family::PeMatching(vec![2, 3, 1]), dims(2, 3)).unwrap();
        let v = verdict(&pe);
        assert!(v.is_separable());
        assert_eq!(check_verdict(&pe, &v), Ok(()));
    }

    #[test]
    fn witnesses_are_checked() {
        let star = generate(&Family::Star, dims(2, 2)).unwrap();
        assert!(check_witness(&star, &Witness::DegreeCriterion { row: 2, row_sum: 5 }).is_err());
        assert!(check_witness(&star, &Witness::DegreeCriterion { row: 0, row_sum: 1 }).is_err());
        let k4 = generate(&Family::Complete, dims(2, 2)).unwrap();
        assert!(check_witness(&k4, &Witness::NegativeEigenvalue { min_eigenvalue_estimate: None }).is_err());
        let bell = graph(dims(2, 2), &[(1, 1, 2, 2)]);
        let w = find_quadratic_witness(&bell).unwrap();
        assert_eq!(check_witness(&bell, &w), Ok(()));
        assert!(check_certificate(&bell, &Certificate::LowDimPpt).is_err());
        assert!(check_certificate(&star, &Certificate::BlockLineSumSymmetric).is_err());
    }

    #[test]
    fn verdict_json_shape() {
        let star = generate(&Family::Star, dims(2, 2)).unwrap();
        let v = serde_json::to_value(verdict(&star)).unwrap();
        assert_eq!(v["verdict"], "entangled");
        assert_eq!(v["certificate"], Value::Null);
        assert_eq!(v["witness"]["kind"], "degree-criterion");
        assert_eq!(v["witness"]["row_sum"], "1");

        let path = graph(dims(2, 2), &[(1, 1, 1, 2)]);
        let v = verdict(&path).to_json();
        assert_eq!(v["certificate"]["terms"][0]["weight"], "1");
        assert_eq!(v["certificate"]["terms"][0]["factor_b"][0][1], "-1/2");
    }
}
