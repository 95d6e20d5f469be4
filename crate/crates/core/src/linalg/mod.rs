//! Exact integer matrices: determinants, Smith normal form, definiteness and
//! cokernels. Everything is arbitrary precision.

mod group;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use group::AbelianGroup;
pub use snf::SmithForm;

/// Serialized as `{"labels": [...], "rows": [["2", "-1"], ...]}` with entries
/// as decimal strings.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        let mut st = s.serialize_struct("IntMatrix", 2)?;
        st.serialize_field("labels", &self.labels)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

/// Dense row-major matrix of big integers with optional row/column labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
    labels: Option<Vec<String>>,
    symmetric: bool,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
            labels: None,
            symmetric: false,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Build from rows; all rows must have the same length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect(),
            labels: None,
            symmetric: false,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.entries[i * self.cols + j] = value.into();
        self.symmetric = false;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Index labels shared by rows and columns of a square matrix.
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.rows || labels.len() != self.cols {
            return Err(Error::Invalid(format!(
                "{} labels for a {}x{} matrix",
                labels.len(),
                self.rows,
                self.cols
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Set the symmetric flag after checking it.
    pub fn into_symmetric(mut self) -> Result<Self> {
        if !self.is_symmetric() {
            return Err(Error::Invalid("matrix is not symmetric".into()));
        }
        self.symmetric = true;
        Ok(self)
    }

    /// Whether the symmetric flag is set (it is only ever set after a check).
    pub fn symmetric_flag(&self) -> bool {
        self.symmetric
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Square submatrix with row and column `k` removed.
    pub fn minor_matrix(&self, k: usize) -> Self {
        let keep: Vec<usize> = (0..self.rows).filter(|&i| i != k).collect();
        let mut m = Self::zeros(keep.len(), keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                m.entries[a * keep.len() + b] = self.get(i, j).clone();
            }
        }
        m
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k · row[src]
    pub(crate) fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = k * &self.entries[src * self.cols + j];
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k · col[src]
    pub(crate) fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = k * &self.entries[i * self.cols + src];
            self.entries[i * self.cols + dst] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.entries[i * self.cols + j]);
            self.entries[i * self.cols + j] = v;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Bareiss elimination. With `pivoting`, the first nonzero entry at or below
/// the diagonal is swapped up; without it, elimination stops at the first
/// zero pivot. Returns the successive pivots (the k-th is ± the k-th leading
/// minor) and the row-swap parity.
fn bareiss(m: &IntMatrix, pivoting: bool) -> (Vec<BigInt>, bool) {
    let n = m.rows;
    let mut a = m.clone();
    let mut pivots = Vec::with_capacity(n);
    let mut odd = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a.get(k, k).is_zero() {
            if !pivoting {
                pivots.push(BigInt::zero());
                return (pivots, odd);
            }
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    odd = !odd;
                }
                None => {
                    pivots.push(BigInt::zero());
                    return (pivots, odd);
                }
            }
        }
        let p = a.get(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * &p - a.get(i, k) * a.get(k, j)) / &prev;
                a.entries[i * n + j] = v;
            }
            a.entries[i * n + k] = BigInt::zero();
        }
        pivots.push(p.clone());
        prev = p;
    }
    (pivots, odd)
}

/// Bareiss elimination on a row-major `n×n` array in machine integers;
/// `None` when an intermediate value overflows.
fn bareiss_i128(a: &mut [i128], n: usize) -> Option<i128> {
    let mut prev = 1i128;
    let mut odd = false;
    for k in 0..n {
        if a[k * n + k] == 0 {
            let Some(i) = (k + 1..n).find(|&i| a[i * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                a.swap(i * n + j, k * n + j);
            }
            odd = !odd;
        }
        let p = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let v = a[i * n + j]
                    .checked_mul(p)?
                    .checked_sub(lead.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = v / prev;
            }
            a[i * n + k] = 0;
        }
        prev = p;
    }
    Some(if odd { -prev } else { prev })
}

/// Exact determinant of a square array of machine integers.
pub fn determinant_of_rows(rows: &[Vec<i128>]) -> BigInt {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "determinant of a non-square array");
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<i128> = rows.concat();
    if a.iter().all(|x| x.unsigned_abs() <= i64::MAX as u128) {
        if let Some(d) = bareiss_i128(&mut a, n) {
            return d.into();
        }
    }
    determinant(&IntMatrix::from_rows(rows).expect("square rows")).expect("square matrix")
}

/// Exact determinant by fraction-free elimination; the 0×0 determinant is 1.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Invalid(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    if m.rows == 0 {
        return Ok(BigInt::one());
    }
    let small: Option<Vec<i128>> = m.entries.iter().map(|x| x.to_i64().map(i128::from)).collect();
    if let Some(d) = small.and_then(|mut a| bareiss_i128(&mut a, m.rows)) {
        return Ok(BigInt::from(d));
    }
    let (pivots, odd) = bareiss(m, true);
    let last = pivots.last().cloned().unwrap_or_else(BigInt::zero);
    if pivots.len() < m.rows {
        return Ok(BigInt::zero());
    }
    Ok(if odd { -last } else { last })
}

/// Leading principal minors `Δ_1, …, Δ_n`, stopping after the first zero.
pub fn leading_minors(m: &IntMatrix) -> Result<Vec<BigInt>> {
    if !m.is_square() {
        return Err(Error::Invalid(format!(
            "leading minors of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    Ok(bareiss(m, false).0)
}

/// Sylvester's criterion: every leading principal minor is positive.
pub fn is_positive_definite(m: &IntMatrix) -> Result<bool> {
    if !m.is_symmetric() {
        return Err(Error::Invalid("definiteness of a non-symmetric matrix".into()));
    }
    let minors = leading_minors(m)?;
    Ok(minors.len() == m.rows && minors.iter().all(|d| d.is_positive()))
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    snf::smith(m)
}

/// `Z^n / im(m)` for square `m`.
pub fn cokernel(m: &IntMatrix) -> Result<AbelianGroup> {
    if !m.is_square() {
        return Err(Error::Invalid(format!("cokernel of a {}x{} matrix", m.rows, m.cols)));
    }
    Ok(AbelianGroup::from_diagonal(&smith_normal_form(m).diagonal))
}
