//! Dense matrices over arbitrary-precision integers.
//!
//! Everything here is exact. Determinants use fraction-free elimination
//! (every intermediate division is exact), inverses are only offered for
//! unimodular matrices and are obtained by integer shear reduction.

use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer type used throughout the crate.
pub type Int = BigInt;

/// Row-major dense matrix of [`Int`] entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

/// The elementary matrix `I + factor * E_{row,col}` (0-based, `row != col`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shear {
    pub row: usize,
    pub col: usize,
    pub factor: Int,
}

impl Shear {
    pub fn to_matrix(&self, n: usize) -> IntMatrix {
        let mut m = IntMatrix::identity(n);
        m.set(self.row, self.col, self.factor.clone());
        m
    }

    pub fn inverse(&self) -> Shear {
        Shear { row: self.row, col: self.col, factor: -&self.factor }
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("empty matrix {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from a list of rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Int>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        IntMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Int>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|col| col.len() != r) {
            return Err(Error::Shape("columns of unequal length".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        IntMatrix::new(r, c, data)
    }

    /// Convenience constructor from a literal array.
    ///
    /// ```
    /// use sltiling::IntMatrix;
    /// let m = IntMatrix::from_array([[1, 0, 1], [0, 1, 2], [0, 0, 3]]);
    /// assert_eq!(m.det().unwrap(), 3.into());
    /// ```
    pub fn from_array<const R: usize, const C: usize>(a: [[i64; C]; R]) -> Self {
        let data = a.iter().flat_map(|row| row.iter().map(|&x| Int::from(x))).collect();
        IntMatrix::new(R, C, data).expect("literal matrix must be non-empty")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_columns(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[Int] {
        &self.data
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Int]) -> Result<Vec<Int>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "cannot apply a {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn scale(&self, c: &Int) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    /// Sub-block with the given (0-based, half-open) row and column ranges.
    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Result<IntMatrix> {
        if rows.is_empty() || cols.is_empty() || rows.end > self.rows || cols.end > self.cols {
            return Err(Error::Shape(format!(
                "block rows {rows:?} cols {cols:?} out of bounds for {}x{}",
                self.rows, self.cols
            )));
        }
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for i in rows.clone() {
            data.extend_from_slice(&self.row(i)[cols.clone()]);
        }
        IntMatrix::new(rows.len(), cols.len(), data)
    }

    /// Sub-matrix on arbitrary (0-based) row and column selections, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<IntMatrix> {
        if rows.iter().any(|&i| i >= self.rows) || cols.iter().any(|&j| j >= self.cols) {
            return Err(Error::Shape("selection out of bounds".into()));
        }
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        IntMatrix::new(rows.len(), cols.len(), data)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j { v.is_one() } else { v.is_zero() }
                })
            })
    }

    /// Exact determinant. Small matrices use Laplace expansion, larger ones
    /// fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Int> {
        if !self.is_square() {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        Ok(if self.rows <= 4 { laplace(self) } else { bareiss(self) })
    }

    /// Determinant by Bareiss elimination regardless of size.
    pub fn det_bareiss(&self) -> Result<Int> {
        if !self.is_square() {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        Ok(bareiss(self))
    }

    /// Inverse of a matrix with determinant ±1.
    ///
    /// ```
    /// use sltiling::IntMatrix;
    /// let m = IntMatrix::from_array([[-1, -2], [1, 1]]);
    /// assert_eq!(m.unimodular_inverse().unwrap(), IntMatrix::from_array([[1, 2], [-1, -1]]));
    /// ```
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        let (ops, last) = shear_reduce(self)?;
        let mut x = IntMatrix::identity(self.rows);
        for op in &ops {
            x.apply_row_shear(op);
        }
        // ops bring `self` to diag(1, .., 1, last)
        if last.is_negative() {
            let n = self.rows;
            for j in 0..n {
                let v = -x.get(n - 1, j);
                x.set(n - 1, j, v);
            }
        }
        Ok(x)
    }

    /// In-place `row_r += factor * row_s`.
    pub fn apply_row_shear(&mut self, s: &Shear) {
        if s.factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = self.get(s.col, j) * &s.factor;
            self.data[s.row * self.cols + j] += add;
        }
    }

    /// Renders the matrix as right-aligned columns.
    pub fn render(&self) -> String {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows().iter().map(|r| {
            r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        }))
        .finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn laplace(m: &IntMatrix) -> Int {
    let n = m.rows;
    match n {
        1 => m.get(0, 0).clone(),
        2 => m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0),
        _ => {
            let mut acc = Int::zero();
            for j in 0..n {
                let a = m.get(0, j);
                if a.is_zero() {
                    continue;
                }
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let rows: Vec<usize> = (1..n).collect();
                let minor = laplace(&m.select(&rows, &cols).expect("in bounds"));
                if j % 2 == 0 {
                    acc += a * minor;
                } else {
                    acc -= a * minor;
                }
            }
            acc
        }
    }
}

fn bareiss(m: &IntMatrix) -> Int {
    let n = m.rows;
    let mut a = m.to_rows();
    let mut sign = false;
    let mut prev = Int::one();
    for c in 0..n {
        if a[c][c].is_zero() {
            match (c + 1..n).find(|&r| !a[r][c].is_zero()) {
                Some(r) => {
                    a.swap(c, r);
                    sign = !sign;
                }
                None => return Int::zero(),
            }
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let v = (&a[i][j] * &a[c][c] - &a[i][c] * &a[c][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = Int::zero();
        }
        prev = a[c][c].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign { -d } else { d }
}

/// Reduces a unimodular matrix to `diag(1, .., 1, ±1)` by integer row shears.
///
/// Returns the shears `E_1, .., E_t` (applied in order, i.e.
/// `E_t ⋯ E_1 · m = diag(1, .., 1, last)`) together with `last`.
/// Columns are processed left to right; below the diagonal the entries are
/// reduced by the Euclidean algorithm with nearest-integer quotients.
pub fn shear_reduce(m: &IntMatrix) -> Result<(Vec<Shear>, Int)> {
    if !m.is_square() {
        return Err(Error::Shape(format!("{}x{} matrix is not square", m.rows, m.cols)));
    }
    let d = m.det()?;
    if !(d.is_one() || (-&d).is_one()) {
        return Err(Error::NotUnimodular(d));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut ops = Vec::new();
    let mut push = |a: &mut IntMatrix, row: usize, col: usize, factor: Int| {
        if factor.is_zero() {
            return;
        }
        let s = Shear { row, col, factor };
        a.apply_row_shear(&s);
        ops.push(s);
    };
    for c in 0..n {
        // Euclid on the entries at or below the diagonal.
        loop {
            let nonzero: Vec<usize> = (c..n).filter(|&r| !a.get(r, c).is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&r| a.get(r, c).abs()).expect("nonempty");
            for &r in &nonzero {
                if r != p {
                    let q = round_div(a.get(r, c), a.get(p, c));
                    push(&mut a, r, p, -q);
                }
            }
        }
        let p = (c..n)
            .find(|&r| !a.get(r, c).is_zero())
            .ok_or_else(|| Error::NotUnimodular(Int::zero()))?;
        if p != c {
            push(&mut a, c, p, Int::one());
            let q = a.get(p, c) * a.get(c, c);
            push(&mut a, p, c, -q);
        }
        if a.get(c, c).is_negative() && c + 1 < n {
            push(&mut a, c + 1, c, Int::one());
            push(&mut a, c, c + 1, Int::from(-2));
            push(&mut a, c + 1, c, Int::one());
        }
        for r in 0..c {
            let q = a.get(r, c) * a.get(c, c);
            push(&mut a, r, c, -q);
        }
    }
    let last = a.get(n - 1, n - 1).clone();
    Ok((ops, last))
}

/// Quotient of `a / b` rounded to the nearest integer (ties toward zero
/// remainder of smaller absolute value either way).
fn round_div(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_mod_floor(b);
    // r has the sign of b; move up if the remainder exceeds half of |b|
    if (&r * Int::from(2)).abs() > b.abs() { q + 1 } else { q }
}

/// Determinant of the matrix whose columns are the given vectors.
pub fn det_columns(cols: &[&[Int]]) -> Int {
    let n = cols.len();
    let data: Vec<Int> = (0..n).flat_map(|i| cols.iter().map(move |c| c[i].clone())).collect();
    IntMatrix::new(n, n, data).expect("square").det().expect("square")
}

/// `(-1)^e` as an [`Int`].
pub fn sign_pow(e: i64) -> Int {
    if e.rem_euclid(2) == 0 { Int::one() } else { -Int::one() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m<const R: usize, const C: usize>(a: [[i64; C]; R]) -> IntMatrix {
        IntMatrix::from_array(a)
    }

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::identity(3).det().unwrap(), Int::one());
        assert_eq!(m([[1, 0, 1], [0, 1, 2], [0, 0, 3]]).det().unwrap(), Int::from(3));
        assert_eq!(m([[0, 1, 1], [0, -2, -3], [1, 1, 1]]).det().unwrap(), Int::from(-1));
        assert!(m([[1, 2, 3]]).det().is_err());
    }

    #[test]
    fn bareiss_handles_zero_pivots() {
        let a = m([[0, 0, 1, 0, 0], [0, 1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 0, 0, 1], [0, 0, 0, 1, 0]]);
        assert_eq!(a.det_bareiss().unwrap(), Int::one());
        let s = m([[1, 2, 3, 4, 5], [2, 4, 6, 8, 10], [0, 1, 0, 1, 0], [1, 1, 1, 1, 2], [3, 1, 4, 1, 5]]);
        assert_eq!(s.det_bareiss().unwrap(), Int::zero());
    }

    #[test]
    fn inverse_and_product() {
        let a = m([[-1, -2], [1, 1]]);
        assert_eq!(a.unimodular_inverse().unwrap(), m([[1, 2], [-1, -1]]));
        assert!(IntMatrix::identity(4).unimodular_inverse().unwrap().is_identity());
        let p = m([[0, -1], [1, -1]]).mul(&m([[0, -1], [1, -2]])).unwrap().mul(&m([[0, -1], [1, -1]])).unwrap();
        assert_eq!(p, m([[2, -1], [1, 0]]));
        assert!(m([[2, 0], [0, 1]]).unimodular_inverse().is_err());
    }

    #[test]
    fn negative_determinant_inverse() {
        let a = m([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        let inv = a.unimodular_inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn slicing_and_transpose() {
        let x = m([[1, 2, 3], [4, 5, 6]]);
        assert_eq!(x.transpose().transpose(), x);
        assert_eq!(x.submatrix(0..2, 1..3).unwrap(), m([[2, 3], [5, 6]]));
        assert!(x.submatrix(0..3, 0..1).is_err());
        assert_eq!(IntMatrix::identity(2).mul(&x).unwrap(), x);
        assert!(x.mul(&x).is_err());
    }

    #[test]
    fn rounding_division() {
        let r = |a: i64, b: i64| round_div(&Int::from(a), &Int::from(b));
        assert_eq!(r(7, 2), Int::from(3));
        assert_eq!(r(8, 3), Int::from(3));
        assert_eq!(r(-8, 3), Int::from(-3));
        assert_eq!(r(5, -3), Int::from(-2));
    }

    #[test]
    fn render_aligns() {
        assert_eq!(m([[1, -10], [100, 2]]).render(), "  1 -10\n100   2\n");
    }
}
