//! Exact rational scalars, dense matrices and rank computations.
//!
//! Everything else in the crate reduces to the routines here. Rank uses
//! fraction-free Bareiss elimination on rows that have been cleared of
//! denominators, so intermediate entries stay integral.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::Value;
use thiserror::Error;

/// Arbitrary precision fraction, always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d`; panics on `d == 0` (use [`parse_rational`] for untrusted input).
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("denominator is zero in {0:?}")]
    ZeroDenominator(String),
    #[error("not a rational number: {0:?}")]
    Syntax(String),
}

/// Parses `"p/q"`, `"p"` (optionally signed, surrounding whitespace ignored).
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    let bad = || ParseRationalError::Syntax(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (t, None),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(b) => b.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(n, d))
}

/// `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

/// Accepts a string (`"p/q"`) or a JSON integer.
pub fn rational_from_json(v: &Value) -> Result<Rational, String> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(rat(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(BigInt::from(u)))
            } else {
                Err(format!("non-integer JSON number {n}; write fractions as \"p/q\""))
            }
        }
        other => Err(format!("expected a rational, found {other}")),
    }
}

/// Commutative ring of coefficients used by the axiom checkers.
///
/// Implemented by [`Rational`] and by the truncated polynomial ring used
/// for first order deformations.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(r: Rational) -> Self;

    /// Compact textual form used in witnesses.
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Scalar for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn render(&self) -> String {
        format_rational(self)
    }
}

/// `acc += a * b` on scalars.
#[inline]
pub fn fma<S: Scalar>(acc: &mut S, a: &S, b: &S) {
    if a.is_zero() || b.is_zero() {
        return;
    }
    *acc = acc.clone() + a.clone() * b.clone();
}

/// `acc += c * v` on vectors.
pub fn axpy<S: Scalar>(acc: &mut [S], c: &S, v: &[S]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        fma(a, c, x);
    }
}

pub fn is_zero_vec<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a complex: the composite of the two differentials is nonzero")]
    NotAComplex,
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Self::from_rows(v).expect("rectangular literal")
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        let rows: Vec<Vec<Rational>> = (0..self.rows)
            .into_par_iter()
            .map(|i| {
                let mut acc = vec![Rational::zero(); other.cols];
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    axpy(&mut acc, a, other.row(k));
                }
                acc
            })
            .collect();
        for (i, r) in rows.into_iter().enumerate() {
            out.entries[i * other.cols..(i + 1) * other.cols].clone_from_slice(&r);
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    fma(&mut acc, a, x);
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, entries }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// Scales a rational row to a primitive-ish integer row (multiplies by the lcm of denominators).
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Rank over the rationals by fraction-free Bareiss elimination.
pub fn rank(m: &Matrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| integer_row(m.row(i)))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let nrows = a.len();
    let ncols = m.cols;
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        // smallest nonzero pivot keeps the numbers a little tamer
        let pivot = (rank..nrows)
            .filter(|&i| !a[i][col].is_zero())
            .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        let pv = &prow[col];
        let step = |row: &mut Vec<BigInt>| {
            let f = row[col].clone();
            for j in col + 1..ncols {
                let v = &row[j] * pv - &f * &prow[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        };
        if rest.len() > 16 {
            rest.par_iter_mut().for_each(step);
        } else {
            rest.iter_mut().for_each(step);
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

pub fn kernel_dim(m: &Matrix) -> usize {
    m.cols - rank(m)
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
        if p != r {
            for j in 0..a.cols {
                a.entries.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a.get(r, c).recip();
        for j in 0..a.cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        let prow: Vec<Rational> = a.row(r).to_vec();
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..a.cols {
                let v = a.get(i, j) - &f * &prow[j];
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// A basis of the null space, one vector per free column.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f).clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b`, if one exists.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows, "right-hand side length");
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, b[i].clone());
    }
    let (r, pivots) = rref(&aug);
    if pivots.contains(&m.cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r.get(i, m.cols).clone();
    }
    Some(x)
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, Rational::one());
    }
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, r.get(i, n + j).clone());
        }
    }
    Some(inv)
}

/// `dim ker(d_out) - rank(d_in)` for consecutive differentials `d_in: C^{n-1} -> C^n`, `d_out: C^n -> C^{n+1}`.
pub fn cohomology_dim(d_out: &Matrix, d_in: &Matrix) -> Result<usize, LinalgError> {
    if d_out.cols != d_in.rows {
        return Err(LinalgError::DimensionMismatch(format!(
            "d_out has {} columns but d_in has {} rows",
            d_out.cols, d_in.rows
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(LinalgError::NotAComplex);
    }
    Ok(kernel_dim(d_out) - rank(d_in))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Plain Gaussian elimination over fractions, kept deliberately naive.
    fn naive_rank(m: &Matrix) -> usize {
        let mut a: Vec<Vec<Rational>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            for i in r + 1..a.len() {
                let f = &a[i][c] / &a[r][c];
                for j in 0..m.cols {
                    let v = &a[i][j] - &f * &a[r][j];
                    a[i][j] = v;
                }
            }
            r += 1;
        }
        r
    }

    fn small_matrix(rows: usize, cols: usize, lo: i64, hi: i64) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(lo..=hi, rows * cols)
            .prop_map(move |v| Matrix { rows, cols, entries: v.into_iter().map(rat).collect() })
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(2)), 2);
        assert_eq!(rank(&Matrix::zeros(3, 4)), 0);
        assert_eq!(rank(&Matrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(kernel_dim(&Matrix::identity(2)), 0);
        assert_eq!(kernel_dim(&Matrix::zeros(3, 4)), 4);
        assert_eq!(kernel_dim(&Matrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn cohomology_dim_examples() {
        assert_eq!(cohomology_dim(&Matrix::zeros(1, 3), &Matrix::zeros(3, 1)), Ok(3));
        assert_eq!(cohomology_dim(&Matrix::identity(2), &Matrix::zeros(2, 1)), Ok(0));
        // kernel of d_out is spanned by (0,1), which is also the image of d_in
        let d_out = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        let d_in = Matrix::from_i64(&[&[0], &[1]]);
        assert_eq!(cohomology_dim(&d_out, &d_in), Ok(0));
    }

    #[test]
    fn cohomology_dim_errors() {
        assert!(matches!(
            cohomology_dim(&Matrix::zeros(1, 3), &Matrix::zeros(2, 1)),
            Err(LinalgError::DimensionMismatch(_))
        ));
        let d = Matrix::identity(2);
        assert_eq!(cohomology_dim(&d, &d), Err(LinalgError::NotAComplex));
    }

    #[test]
    fn rational_text_roundtrip() {
        assert_eq!(parse_rational("6/-4").unwrap(), ratio(-3, 2));
        assert_eq!(format_rational(&ratio(-3, 2)), "-3/2");
        assert_eq!(format_rational(&rat(7)), "7");
        assert_eq!(parse_rational(" 5 ").unwrap(), rat(5));
        assert!(matches!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator(_))));
        assert!(parse_rational("x").is_err());
        assert_eq!(rational_from_json(&serde_json::json!(-4)).unwrap(), rat(-4));
        assert_eq!(rational_from_json(&serde_json::json!("2/6")).unwrap(), ratio(1, 3));
        assert!(rational_from_json(&serde_json::json!(0.5)).is_err());
        assert!(rational_from_json(&serde_json::json!("3/0")).is_err());
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(inverse(&Matrix::from_i64(&[&[1, 2], &[2, 4]])).is_none());
        let x = solve(&m, &[rat(3), rat(2)]).unwrap();
        assert_eq!(m.apply(&x), vec![rat(3), rat(2)]);
        assert!(solve(&Matrix::from_i64(&[&[1, 2], &[2, 4]]), &[rat(1), rat(1)]).is_none());
    }

    proptest! {
        #[test]
        fn bareiss_matches_naive(m in small_matrix(6, 6, -9, 9)) {
            prop_assert_eq!(rank(&m), naive_rank(&m));
        }

        #[test]
        fn rank_of_transpose(m in small_matrix(4, 6, -3, 3)) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn rank_nullity(m in small_matrix(5, 7, -2, 2)) {
            prop_assert_eq!(kernel_dim(&m) + rank(&m), m.cols);
            prop_assert_eq!(kernel_basis(&m).len(), kernel_dim(&m));
            for v in kernel_basis(&m) {
                prop_assert!(is_zero_vec(&m.apply(&v)));
            }
        }

        #[test]
        fn rank_invariant_under_row_ops(m in small_matrix(4, 5, -4, 4), s in 1i64..5, d in 1i64..4) {
            let mut n = m.clone();
            let c = ratio(s, d);
            for j in 0..n.cols {
                let v = n.get(0, j) * &c;
                n.set(0, j, v);
            }
            for j in 0..n.cols {
                n.entries.swap(j, 3 * n.cols + j);
            }
            prop_assert_eq!(rank(&m), rank(&n));
        }
    }
}
