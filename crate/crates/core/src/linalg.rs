//! Exact symmetric-matrix kernel.
//!
//! Every decision that feeds a verdict (PSD, row sums, line sums, quadratic
//! forms) is taken in exact arithmetic. The Jacobi solver is only used to
//! report spectra.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Dims;

/// Dense square matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

pub type IntegerMatrix = SquareMatrix<i64>;
pub type RationalMatrix = SquareMatrix<BigRational>;

impl<T: fmt::Debug> fmt::Debug for SquareMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n.max(1))).finish()
    }
}

impl<T: Clone> SquareMatrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimMismatch { expected: n, actual: bad.len() });
        }
        Ok(Self { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.n + c] = value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.n).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |r, c| self.get(c, r).clone())
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n).map(|k| self.get(k, k).clone()).collect()
    }
}

impl<T: Clone + PartialEq> SquareMatrix<T> {
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|r| (r + 1..self.n).all(|c| self.get(r, c) == self.get(c, r)))
    }
}

impl<T: Clone + Zero> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * n] }
    }
}

/// Entry types with an exact rational value.
pub trait Scalar: Clone + PartialEq + Zero + fmt::Debug {
    fn to_rational(&self) -> BigRational;
    fn to_f64(&self) -> f64;
}

impl Scalar for i64 {
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for BigRational {
    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl<T: Scalar> SquareMatrix<T> {
    pub fn to_rational(&self) -> RationalMatrix {
        self.map(Scalar::to_rational)
    }

    pub fn to_f64(&self) -> SquareMatrix<f64> {
        self.map(Scalar::to_f64)
    }
}

/// A real test vector for quadratic forms, stored exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessVector(Vec<BigRational>);

impl WitnessVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn check_order<T>(a: &SquareMatrix<T>, dims: Dims) -> Result<()> {
    if a.n != dims.n() {
        return Err(Error::DimMismatch { expected: dims.n(), actual: a.n });
    }
    Ok(())
}

/// `(p,q)`-partial transpose: every `q×q` block is transposed in place.
pub fn partial_transpose<T: Clone>(a: &SquareMatrix<T>, dims: Dims) -> Result<SquareMatrix<T>> {
    check_order(a, dims)?;
    let q = dims.q();
    Ok(SquareMatrix::from_fn(a.order(), |r, c| {
        let (bi, j) = (r / q, r % q);
        let (bs, t) = (c / q, c % q);
        a.get(bi * q + t, bs * q + j).clone()
    }))
}

/// Block `A^{ij}` (1-based block coordinates) of a matrix viewed as `p²` blocks.
pub fn block<T: Clone>(a: &SquareMatrix<T>, dims: Dims, i: usize, j: usize) -> Result<SquareMatrix<T>> {
    check_order(a, dims)?;
    let p = dims.p();
    if !(1..=p).contains(&i) || !(1..=p).contains(&j) {
        return Err(Error::DimMismatch { expected: p, actual: i.max(j) });
    }
    let q = dims.q();
    Ok(SquareMatrix::from_fn(q, |r, c| a.get((i - 1) * q + r, (j - 1) * q + c).clone()))
}

/// Whether every row sum equals the matching column sum.
pub fn line_sum_symmetric<T: Scalar>(b: &SquareMatrix<T>) -> bool {
    let n = b.order();
    (0..n).all(|k| {
        let row = (0..n).fold(T::zero(), |acc, c| acc + b.get(k, c).clone());
        let col = (0..n).fold(T::zero(), |acc, r| acc + b.get(r, k).clone());
        row == col
    })
}

pub fn row_sums<T: Scalar>(a: &SquareMatrix<T>) -> Vec<T> {
    (0..a.order())
        .map(|r| a.row(r).iter().cloned().fold(T::zero(), |acc, x| acc + x))
        .collect()
}

pub fn trace<T: Scalar>(a: &SquareMatrix<T>) -> T {
    (0..a.order()).fold(T::zero(), |acc, k| acc + a.get(k, k).clone())
}

/// `Σ_{u,v} A_{uv} x_u x_v` in exact arithmetic.
pub fn quadratic_form<T: Scalar>(a: &SquareMatrix<T>, x: &WitnessVector) -> Result<BigRational> {
    if x.len() != a.order() {
        return Err(Error::DimMismatch { expected: a.order(), actual: x.len() });
    }
    let xs = x.entries();
    let mut total = BigRational::zero();
    for (r, xr) in xs.iter().enumerate() {
        if xr.is_zero() {
            continue;
        }
        let mut inner = BigRational::zero();
        for (c, xc) in xs.iter().enumerate() {
            let entry = a.get(r, c);
            if !entry.is_zero() {
                inner += entry.to_rational() * xc;
            }
        }
        total += inner * xr;
    }
    Ok(total)
}

/// `tr(σ²)`; requires `tr(σ) = 1`.
pub fn purity(sigma: &RationalMatrix) -> Result<BigRational> {
    let tr = trace(sigma);
    if !tr.is_one() {
        return Err(Error::NotDensity(crate::exact::format_rational(&tr)));
    }
    let n = sigma.order();
    let mut total = BigRational::zero();
    for r in 0..n {
        for c in 0..n {
            total += sigma.get(r, c) * sigma.get(c, r);
        }
    }
    Ok(total)
}

pub fn kron<T: Scalar + std::ops::Mul<Output = T>>(a: &SquareMatrix<T>, b: &SquareMatrix<T>) -> SquareMatrix<T> {
    let m = b.order();
    SquareMatrix::from_fn(a.order() * m, |r, c| {
        a.get(r / m, c / m).clone() * b.get(r % m, c % m).clone()
    })
}

/// Clears denominators: returns an integer matrix that is a positive multiple of `a`.
fn scaled_integer_rows<T: Scalar>(a: &SquareMatrix<T>) -> Vec<Vec<BigInt>> {
    let q = a.map(Scalar::to_rational);
    let lcm = q.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    (0..q.n)
        .map(|r| {
            q.row(r)
                .iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect()
}

/// Exact positive-semidefiniteness test by fraction-free symmetric elimination.
///
/// Pivots are always taken on the diagonal. With `d` the previous pivot,
/// each step replaces `a_ij` by `(a_kk·a_ij − a_ik·a_kj) / d`, which is exact
/// and is a positive multiple of the Schur complement while all pivots are
/// positive. A negative diagonal entry, or a zero diagonal entry whose row
/// is not identically zero, proves the matrix indefinite.
pub fn is_psd_exact<T: Scalar>(a: &SquareMatrix<T>) -> Result<bool> {
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut m = scaled_integer_rows(a);
    let mut active: Vec<usize> = (0..a.order()).collect();
    let mut prev = BigInt::one();
    loop {
        let live: Vec<usize> = active.iter().copied().filter(|&k| active.iter().any(|&c| !m[k][c].is_zero())).collect();
        active = live;
        let Some(&k) = active.first() else {
            return Ok(true);
        };
        for &r in &active {
            if !m[r][r].is_positive() {
                return Ok(false);
            }
        }
        active.remove(0);
        let pivot = m[k][k].clone();
        for &r in &active {
            for &c in &active {
                let v = (&pivot * &m[r][c] - &m[r][k] * &m[k][c]) / &prev;
                m[r][c] = v;
            }
        }
        prev = pivot;
    }
}

/// Exact rank by fraction-free elimination with full pivoting.
pub fn rank_exact<T: Scalar>(a: &SquareMatrix<T>) -> usize {
    let mut m = scaled_integer_rows(a);
    let n = m.len();
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    loop {
        let found = rows
            .iter()
            .enumerate()
            .find_map(|(ri, &r)| {
                cols.iter().position(|&c| !m[r][c].is_zero()).map(|ci| (ri, ci))
            });
        let Some((ri, ci)) = found else {
            return rank;
        };
        let (pr, pc) = (rows.remove(ri), cols.remove(ci));
        let pivot = m[pr][pc].clone();
        for &r in &rows {
            for &c in &cols {
                let v = (&pivot * &m[r][c] - &m[r][pc] * &m[pr][c]) / &prev;
                m[r][c] = v;
            }
        }
        prev = pivot;
        rank += 1;
    }
}

pub const JACOBI_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
///
/// Sweeps until every off-diagonal magnitude is below `tol`.
pub fn eigenvalues_sym<T: Scalar>(a: &SquareMatrix<T>, tol: f64) -> Result<Vec<f64>> {
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = a.order();
    let mut m = a.to_f64();
    let off_max = |m: &SquareMatrix<f64>| {
        let mut best = 0.0f64;
        for r in 0..n {
            for c in r + 1..n {
                best = best.max(m.get(r, c).abs());
            }
        }
        best
    };
    let mut sweeps = 0;
    while off_max(&m) >= tol {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = *m.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (m.get(q, q) - m.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (*m.get(k, p), *m.get(k, q));
                    m.set(k, p, c * mkp - s * mkq);
                    m.set(k, q, s * mkp + c * mkq);
                }
                for k in 0..n {
                    let (mpk, mqk) = (*m.get(p, k), *m.get(q, k));
                    m.set(p, k, c * mpk - s * mqk);
                    m.set(q, k, s * mpk + c * mqk);
                }
            }
        }
    }
    let mut eig = m.diagonal();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}
