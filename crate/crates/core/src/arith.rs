//! Exact integer vectors and matrices.
//!
//! Everything is backed by [`BigInt`], so there is no overflow to detect:
//! entries of the kernels used here grow like `C(2t, t)` and products of
//! them are never truncated.

use std::fmt;
use std::ops::{Index, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        Self(entries)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![BigInt::zero(); len])
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Self(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| x.to_i64()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn sum(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().cloned().collect())
    }

    /// Appends zeros up to `len`. Never truncates.
    pub fn padded(&self, len: usize) -> Self {
        let mut entries = self.0.clone();
        if entries.len() < len {
            entries.resize(len, BigInt::zero());
        }
        Self(entries)
    }

    pub fn checked_sub(&self, other: &IntVector) -> Result<Self> {
        self.same_len(other)?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn checked_add(&self, other: &IntVector) -> Result<Self> {
        self.same_len(other)?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn dot(&self, other: &IntVector) -> Result<BigInt> {
        self.same_len(other)?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    /// Row vector times matrix.
    pub fn mul_matrix(&self, m: &IntMatrix) -> Result<Self> {
        if self.len() != m.rows() {
            return Err(Error::LengthMismatch {
                expected: m.rows(),
                found: self.len(),
            });
        }
        let out = (0..m.cols())
            .map(|j| {
                self.0
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| x * m.get(i, j))
                    .sum()
            })
            .collect();
        Ok(Self(out))
    }

    fn same_len(&self, other: &IntVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;

    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl Neg for &IntVector {
    type Output = IntVector;

    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serializes an integer as a JSON number when it fits in `i64`, otherwise
/// as a decimal string.
pub fn serialize_bigint<S: Serializer>(
    x: &BigInt,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => serializer.serialize_i64(v),
        None => serializer.collect_str(x),
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for x in &self.0 {
            match x.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }
}

/// Dense integer matrix, rows and columns indexed from zero.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self::from_fn(rows.len(), cols, |i, j| {
            BigInt::from(rows[i][j])
        }))
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, order, |i, j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| BigInt::zero())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols)
                .map(|k| (self.get(i, k), other.get(k, j)))
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum()
        }))
    }

    /// Matrix times column vector.
    pub fn mul_vector(&self, v: &IntVector) -> Result<IntVector> {
        if self.cols != v.len() {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(IntVector(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
                .collect(),
        ))
    }

    pub fn pow(&self, exp: usize) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument(format!(
                "power of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..exp {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        f.write_str("]")
    }
}

/// Pascal's triangle up to a fixed row, computed by the additive recurrence.
#[derive(Clone, Debug)]
pub struct Binomials {
    rows: Vec<Vec<BigInt>>,
}

impl Binomials {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        Self { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(n, k)`, zero outside `0 <= k <= n`.
    pub fn choose(&self, n: usize, k: isize) -> BigInt {
        assert!(n <= self.max_n(), "binomial row {n} not tabulated");
        if k < 0 || k as usize > n {
            BigInt::zero()
        } else {
            self.rows[n][k as usize].clone()
        }
    }
}

pub fn binomial(n: usize, k: isize) -> BigInt {
    Binomials::new(n).choose(n, k)
}

/// Solves the square system `a x = b` by fraction-free (Bareiss) forward
/// elimination followed by rational back substitution.
///
/// Returns `None` when `a` is singular.
pub fn bareiss_solve(a: &IntMatrix, b: &IntVector) -> Result<Option<Vec<BigRational>>> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::InvalidArgument(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if b.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).into_entries();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => m.swap(k, r),
                None => return Ok(None),
            }
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(m[i][i].clone());
    }
    Ok(Some(x))
}

/// Finds rational coefficients `c` with `sum_k c_k columns[k] = target`, or
/// `None` if the target is outside the span. Free variables are set to zero.
pub fn solve_in_span(
    columns: &[IntVector],
    target: &IntVector,
) -> Result<Option<Vec<BigRational>>> {
    let rows = target.len();
    if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
        return Err(Error::LengthMismatch {
            expected: rows,
            found: bad.len(),
        });
    }
    let k = columns.len();
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            columns
                .iter()
                .map(|c| BigRational::from_integer(c[i].clone()))
                .chain(std::iter::once(BigRational::from_integer(
                    target[i].clone(),
                )))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row[c..=k].iter_mut().zip(&pivot_row[c..=k]) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][k].clone();
    }
    Ok(Some(x))
}

/// Renders a rational as `p` or `p/q`.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn is_nonnegative(v: &IntVector) -> bool {
    v.entries().iter().all(|x| !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn pascal_matches_known_values() {
        let b = Binomials::new(40);
        assert_eq!(b.choose(6, 3), BigInt::from(20));
        assert_eq!(b.choose(40, 20), BigInt::from(137_846_528_820i64));
        assert_eq!(b.choose(5, 6), BigInt::zero());
        assert_eq!(b.choose(5, -1), BigInt::zero());
    }

    #[test]
    fn bareiss_solves_small_system() {
        let a = IntMatrix::from_rows(&[vec![1, -1, -1], vec![1, 1, -1], vec![1, 1, 1]]).unwrap();
        let b = IntVector::from_i64(&[1, -1, 1]);
        let x = bareiss_solve(&a, &b).unwrap().unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(-1, 1), rat(1, 1)]);
    }

    #[test]
    fn bareiss_handles_zero_pivot_and_fractions() {
        let a = IntMatrix::from_rows(&[vec![0, 2], vec![3, 1]]).unwrap();
        let b = IntVector::from_i64(&[1, 0]);
        let x = bareiss_solve(&a, &b).unwrap().unwrap();
        assert_eq!(x, vec![rat(-1, 6), rat(1, 2)]);
    }

    #[test]
    fn bareiss_reports_singular() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        let b = IntVector::from_i64(&[1, 1]);
        assert!(bareiss_solve(&a, &b).unwrap().is_none());
    }

    #[test]
    fn span_solve_finds_and_rejects() {
        let cols = vec![
            IntVector::from_i64(&[1, 0, 1]),
            IntVector::from_i64(&[0, 1, 1]),
        ];
        let x = solve_in_span(&cols, &IntVector::from_i64(&[2, 3, 5]))
            .unwrap()
            .unwrap();
        assert_eq!(x, vec![rat(2, 1), rat(3, 1)]);
        assert!(solve_in_span(&cols, &IntVector::from_i64(&[1, 1, 1]))
            .unwrap()
            .is_none());
        assert!(solve_in_span(&[], &IntVector::from_i64(&[0, 0]))
            .unwrap()
            .unwrap()
            .is_empty());
        assert!(solve_in_span(&[], &IntVector::from_i64(&[1, 0]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn matrix_products_check_dimensions() {
        let a = IntMatrix::zeros(2, 3);
        assert!(a.mul(&IntMatrix::zeros(2, 2)).is_err());
        assert!(IntVector::zeros(3).mul_matrix(&a).is_err());
        assert!(a.pow(2).is_err());
    }

    #[test]
    fn large_entries_serialize_as_strings() {
        let v = IntVector::new(vec![BigInt::from(7), BigInt::from(u64::MAX) * 4]);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "[7,\"73786976294838206460\"]");
    }
}
