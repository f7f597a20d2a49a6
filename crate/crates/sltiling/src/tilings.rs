//! Tame SL_k-tilings presented by a central block and two transition sequences.
//!
//! A tiling `𝓜 = (m_{ij})` is stored as its block `M_{1,1}` (rows and
//! columns `1..=k`) together with the horizontal transitions `H_j`
//! (`M_{i,j} H_j = M_{i,j+1}`) and vertical transitions `V_i`
//! (`M_{i,j}^T V_i = M_{i+1,j}^T`). Every other entry is obtained by
//! propagation, so windows anywhere in ℤ² are computed on demand.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Int, IntMatrix};
use crate::paths::{JMatrix, Path, TransitionSeq};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tiling {
    k: usize,
    central: IntMatrix,
    rows: TransitionSeq,
    cols: TransitionSeq,
}

/// A failed adjacent-minor condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Size of the offending minor (k or k+1).
    pub size: usize,
    /// Tiling coordinates of its upper-left entry.
    pub row: i64,
    pub col: i64,
    pub det: Int,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{0}x{0} minor at ({1},{2}) has determinant {3}", self.size, self.row, self.col, self.det)
    }
}

/// Outcome of checking the SL_k and tameness conditions on a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub k: usize,
    pub top: i64,
    pub left: i64,
    pub rows: usize,
    pub cols: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every adjacent k×k minor of `m` equals 1 and every adjacent
/// (k+1)×(k+1) minor equals 0. `(top, left)` labels the entry `m[0][0]`.
pub fn check_tame(m: &IntMatrix, k: usize, top: i64, left: i64) -> ValidationReport {
    let mut violations = Vec::new();
    for (size, want) in [(k, Int::one()), (k + 1, Int::zero())] {
        if m.rows() < size || m.cols() < size {
            continue;
        }
        for i in 0..=m.rows() - size {
            for j in 0..=m.cols() - size {
                let d = m.submatrix(i..i + size, j..j + size).and_then(|b| b.det()).expect("in bounds");
                if d != want {
                    violations.push(Violation { size, row: top + i as i64, col: left + j as i64, det: d });
                }
            }
        }
    }
    ValidationReport { k, top, left, rows: m.rows(), cols: m.cols(), violations }
}

impl Tiling {
    pub fn new(central: IntMatrix, rows: TransitionSeq, cols: TransitionSeq) -> Result<Self> {
        let k = central.rows();
        if !central.is_square() || rows.k() != k || cols.k() != k {
            return Err(Error::Shape("central block and transitions disagree on k".into()));
        }
        let d = central.det()?;
        if !d.is_one() {
            return Err(Error::InvalidTiling(format!("central block has determinant {d}")));
        }
        Ok(Tiling { k, central, rows, cols })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn central(&self) -> &IntMatrix {
        &self.central
    }

    /// The vertical transitions `V_i`.
    pub fn row_transitions(&self) -> &TransitionSeq {
        &self.rows
    }

    /// The horizontal transitions `H_j`.
    pub fn col_transitions(&self) -> &TransitionSeq {
        &self.cols
    }

    /// Inclusive range of row indices that can be reached, `None` if unbounded.
    pub fn row_range(&self) -> Option<(i64, i64)> {
        reach(&self.rows, self.k)
    }

    /// Inclusive range of column indices that can be reached, `None` if unbounded.
    pub fn col_range(&self) -> Option<(i64, i64)> {
        reach(&self.cols, self.k)
    }

    /// `C(j)` with `M_{1,j} = M_{1,1} C(j)`.
    fn col_factor(&self, j: i64) -> Result<IntMatrix> {
        if j >= 1 {
            self.cols.product(1, j)
        } else {
            let mut acc = IntMatrix::identity(self.k);
            for t in (j..1).rev() {
                acc = acc.mul(&self.cols.get(t)?.expand().unimodular_inverse()?)?;
            }
            Ok(acc)
        }
    }

    /// `R(i)` with `M_{i,1} = R(i) M_{1,1}`.
    fn row_factor(&self, i: i64) -> Result<IntMatrix> {
        let mut acc = IntMatrix::identity(self.k);
        if i >= 1 {
            for t in 1..i {
                acc = self.rows.get(t)?.expand().transpose().mul(&acc)?;
            }
        } else {
            for t in (i..1).rev() {
                acc = self.rows.get(t)?.expand().transpose().unimodular_inverse()?.mul(&acc)?;
            }
        }
        Ok(acc)
    }

    /// The adjacent block `M_{i,j}`.
    pub fn block(&self, i: i64, j: i64) -> Result<IntMatrix> {
        self.row_factor(i)?.mul(&self.central)?.mul(&self.col_factor(j)?)
    }

    pub fn entry(&self, i: i64, j: i64) -> Result<Int> {
        Ok(self.window(i, j, 1, 1)?.get(0, 0).clone())
    }

    /// The `rows × cols` window with upper-left entry `m_{i,j}`.
    ///
    /// The top k-row strip is extended with the `H` recurrences, the
    /// remaining rows with the `V` recurrences.
    pub fn window(&self, i: i64, j: i64, rows: usize, cols: usize) -> Result<IntMatrix> {
        let k = self.k;
        // windows thinner than k are cut from a k-wide one, shifted back
        // into the reachable range when necessary
        let (i0, j0) = (pull_back(i, rows, k, self.row_range()), pull_back(j, cols, k, self.col_range()));
        if (i0, j0) != (i, j) {
            let w = self.window(i0, j0, rows.max(k), cols.max(k))?;
            let (di, dj) = ((i - i0) as usize, (j - j0) as usize);
            return w.submatrix(di..di + rows, dj..dj + cols);
        }
        let (r, c) = (rows.max(k), cols.max(k));
        let start = self.block(i, j)?;
        let mut grid: Vec<Vec<Int>> = start.to_rows();
        for t in 0..(c - k) as i64 {
            let h = self.cols.get(j + t)?.last_column();
            let off = t as usize;
            for row in grid.iter_mut() {
                let v: Int = (0..k).map(|q| &row[off + q] * &h[q]).sum();
                row.push(v);
            }
        }
        for t in 0..(r - k) as i64 {
            let v = self.rows.get(i + t)?.last_column();
            let off = t as usize;
            let new: Vec<Int> =
                (0..c).map(|col| (0..k).map(|q| &grid[off + q][col] * &v[q]).sum()).collect();
            grid.push(new);
        }
        IntMatrix::from_rows(grid)?.submatrix(0..rows, 0..cols)
    }

    /// Same window computed by extending rows first, then each row along
    /// the `H` recurrences; agrees with [`Tiling::window`] on tame tilings.
    pub fn window_rows_first(&self, i: i64, j: i64, rows: usize, cols: usize) -> Result<IntMatrix> {
        let k = self.k;
        let (r, c) = (rows.max(k), cols.max(k));
        let start = self.block(i, j)?;
        let mut grid: Vec<Vec<Int>> = start.to_rows();
        for t in 0..(r - k) as i64 {
            let v = self.rows.get(i + t)?.last_column();
            let off = t as usize;
            let new: Vec<Int> = (0..k).map(|col| (0..k).map(|q| &grid[off + q][col] * &v[q]).sum()).collect();
            grid.push(new);
        }
        for t in 0..(c - k) as i64 {
            let h = self.cols.get(j + t)?.last_column();
            let off = t as usize;
            for row in grid.iter_mut() {
                let v: Int = (0..k).map(|q| &row[off + q] * &h[q]).sum();
                row.push(v);
            }
        }
        IntMatrix::from_rows(grid)?.submatrix(0..rows, 0..cols)
    }

    /// Checks the SL_k and tameness conditions on the `size × size` window at `(i, j)`.
    pub fn validate_window(&self, i: i64, j: i64, size: usize) -> Result<ValidationReport> {
        Ok(check_tame(&self.window(i, j, size, size)?, self.k, i, j))
    }

    /// Validation on the default `3k × 3k` window, anchored at `(1,1)` when
    /// reachable and otherwise at the first reachable position; finite
    /// presentations smaller than that are checked whole.
    pub fn validate(&self) -> Result<ValidationReport> {
        let size = 3 * self.k as i64;
        let extent = |range: Option<(i64, i64)>| match range {
            Some((lo, hi)) if lo > 1 || hi < size => (lo, (hi - lo + 1).min(size) as usize),
            _ => (1, size as usize),
        };
        let ((i, rows), (j, cols)) = (extent(self.row_range()), extent(self.col_range()));
        Ok(check_tame(&self.window(i, j, rows, cols)?, self.k, i, j))
    }

    fn shifted_window_equal(&self, p: usize, by_rows: bool, sign: &Int, i: i64, j: i64, size: usize) -> Result<bool> {
        let (rows, cols) = if by_rows { (size + p, size) } else { (size, size + p) };
        let w = self.window(i, j, rows, cols)?;
        for a in 0..size {
            for b in 0..size {
                let (a2, b2) = if by_rows { (a + p, b) } else { (a, b + p) };
                if &(w.get(a, b) * sign) != w.get(a2, b2) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn seq_periodic(seq: &TransitionSeq, p: usize, sign: &Int, from: i64, size: usize) -> Result<bool> {
        let k = seq.k();
        for t in from..from + size as i64 {
            if seq.contains(t) && seq.contains(t + p as i64) && seq.get(t)? != seq.get(t + p as i64)? {
                return Ok(false);
            }
        }
        if seq.contains(from) && seq.contains(from + p as i64 - 1) {
            let prod = seq.product(from, from + p as i64)?;
            if prod != IntMatrix::identity(k).scale(sign) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `m_{i+p,j} = m_{i,j}` on the window, plus the matching transition identities.
    pub fn is_row_periodic(&self, p: usize, i: i64, j: i64, size: usize) -> Result<bool> {
        let one = Int::one();
        Ok(self.shifted_window_equal(p, true, &one, i, j, size)? && Tiling::seq_periodic(&self.rows, p, &one, i, size)?)
    }

    pub fn is_col_periodic(&self, p: usize, i: i64, j: i64, size: usize) -> Result<bool> {
        let one = Int::one();
        Ok(self.shifted_window_equal(p, false, &one, i, j, size)? && Tiling::seq_periodic(&self.cols, p, &one, j, size)?)
    }

    /// `m_{i+p,j} = (-1)^{k-1} m_{i,j}` on the window (and transition identities).
    pub fn is_skew_row_periodic(&self, p: usize, i: i64, j: i64, size: usize) -> Result<bool> {
        let s = crate::paths::corner_sign(self.k);
        Ok(self.shifted_window_equal(p, true, &s, i, j, size)? && Tiling::seq_periodic(&self.rows, p, &s, i, size)?)
    }

    pub fn is_skew_col_periodic(&self, p: usize, i: i64, j: i64, size: usize) -> Result<bool> {
        let s = crate::paths::corner_sign(self.k);
        Ok(self.shifted_window_equal(p, false, &s, i, j, size)? && Tiling::seq_periodic(&self.cols, p, &s, j, size)?)
    }
}

/// Index set over which transitions are extracted in [`Tiling::from_windows`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Span {
    /// One period `1..=p` of a cyclic sequence.
    Cyclic(usize),
    /// The inclusive range `lo..=hi` of a finite sequence.
    Range(i64, i64),
}

impl Span {
    fn bounds(self) -> (i64, i64) {
        match self {
            Span::Cyclic(p) => (1, p as i64),
            Span::Range(lo, hi) => (lo, hi),
        }
    }
}

fn extract(k: usize, strip: &IntMatrix, base: i64, span: Span) -> Result<TransitionSeq> {
    let (lo, hi) = span.bounds();
    let mut word = Vec::new();
    for j in lo..=hi {
        let at = (j - base) as usize;
        let block = strip.submatrix(0..k, at..at + k)?;
        let next = strip.submatrix(0..k, at + 1..at + k + 1)?;
        let inv = block.unimodular_inverse().map_err(|_| {
            Error::InvalidTiling(format!("adjacent block at offset {j} is not unimodular"))
        })?;
        if !block.det()?.is_one() {
            return Err(Error::InvalidTiling(format!("adjacent block at offset {j} has determinant -1")));
        }
        word.push(JMatrix::from_matrix(&inv.mul(&next)?)?);
    }
    TransitionSeq::new(k, lo, word, matches!(span, Span::Cyclic(_)))
}

impl Tiling {
    /// Rebuilds a tiling from a window oracle: the central block at `(1,1)`,
    /// horizontal transitions over `cols` read off the strip of rows `1..=k`,
    /// vertical transitions over `rows` read off the strip of columns `1..=k`.
    ///
    /// `window(i, j, r, c)` must return the `r × c` window at `(i, j)`.
    pub fn from_windows<F>(k: usize, window: F, rows: Span, cols: Span) -> Result<Tiling>
    where
        F: Fn(i64, i64, usize, usize) -> Result<IntMatrix>,
    {
        let central = window(1, 1, k, k)?;
        let (clo, chi) = cols.bounds();
        let hstrip = window(1, clo, k, (chi - clo + 1) as usize + k)?;
        let h = extract(k, &hstrip, clo, cols)?;
        let (rlo, rhi) = rows.bounds();
        let vstrip = window(rlo, 1, (rhi - rlo + 1) as usize + k, k)?.transpose();
        let v = extract(k, &vstrip, rlo, rows)?;
        Tiling::new(central, v, h)
    }
}

fn pull_back(i: i64, len: usize, k: usize, range: Option<(i64, i64)>) -> i64 {
    match range {
        Some((lo, hi)) if len < k && i + k as i64 - 1 > hi => (hi - k as i64 + 1).max(lo).min(i),
        _ => i,
    }
}

fn reach(seq: &TransitionSeq, k: usize) -> Option<(i64, i64)> {
    if seq.is_cyclic() {
        return None;
    }
    match seq.range() {
        Some((lo, hi)) => Some((lo, hi + k as i64)),
        // no transitions: only the central block exists
        None => Some((1, k as i64)),
    }
}

/// `m_{i,j} = det(γ_i, .., γ_{i+k-2}, δ_j)` on the given window, evaluated directly.
pub fn phi_window(gamma: &Path, delta: &Path, i: i64, j: i64, rows: usize, cols: usize) -> Result<IntMatrix> {
    let k = gamma.k();
    if delta.k() != k {
        return Err(Error::Shape("paths of different dimension".into()));
    }
    let mut out = IntMatrix::zeros(rows, cols);
    let dcols = (0..cols as i64).map(|b| delta.column(j + b)).collect::<Result<Vec<_>>>()?;
    for a in 0..rows {
        let mut g = (0..k as i64 - 1).map(|t| gamma.column(i + a as i64 + t)).collect::<Result<Vec<_>>>()?;
        for (b, d) in dcols.iter().enumerate() {
            g.push(d.clone());
            out.set(a, b, IntMatrix::from_columns(&g)?.det()?);
            g.pop();
        }
    }
    Ok(out)
}

/// The tiling `Φ(γ, δ)`.
///
/// The horizontal transitions are the J matrices of δ and the vertical
/// transitions those of the tilde path of γ.
///
/// ```
/// use sltiling::{IntMatrix, paths::{Closure, Path}, tilings::phi};
/// let c = |v: [i64; 3]| v.iter().map(|&x| x.into()).collect::<Vec<_>>();
/// let gamma = Path::new(3, 1, vec![c([1, 0, 0]), c([0, 1, 0]), c([0, 0, 1]), c([1, 5, 2])], Closure::Finite).unwrap();
/// let delta = Path::new(3, 1, vec![c([1, 1, 1]), c([1, 2, 3]), c([1, 3, 6])], Closure::Finite).unwrap();
/// let t = phi(&gamma, &delta).unwrap();
/// assert_eq!(t.entry(1, 2).unwrap(), 3.into());
/// ```
pub fn phi(gamma: &Path, delta: &Path) -> Result<Tiling> {
    let k = gamma.k();
    let central = phi_window(gamma, delta, 1, 1, k, k)?;
    let cols = delta.transitions()?;
    let rows = match gamma.transitions()?.tilde() {
        Ok(seq) => seq,
        // too short for any vertical transition: only rows 1..=k exist
        Err(Error::Precondition(_)) => TransitionSeq::new(k, 1, vec![], false)?,
        Err(e) => return Err(e),
    };
    let t = Tiling::new(central, rows, cols)?;
    // cross-check one row and one column beyond the central block when reachable
    let (rr, cc) = (
        if t.rows.contains(1) && gamma.column(2 * k as i64 - 1).is_ok() { k + 1 } else { k },
        if t.cols.contains(1) { k + 1 } else { k },
    );
    if t.window(1, 1, rr, cc)? != phi_window(gamma, delta, 1, 1, rr, cc)? {
        return Err(Error::InvalidTiling("propagated block disagrees with the determinant formula".into()));
    }
    Ok(t)
}

/// The matrix `C` with `(m_{1,j}, .., m_{k,j})^T = C δ_j` in `Φ(γ, δ)`:
/// row `i` holds `det(γ_i, .., γ_{i+k-2}, e_r)` for `r = 1..=k`.
///
/// For γ with `(γ_1..γ_k) = I_k` the first row is `(0, .., 0, 1)`.
pub fn c_matrix(gamma: &Path) -> Result<IntMatrix> {
    let k = gamma.k();
    let basis: Vec<Vec<Int>> = IntMatrix::identity(k).to_columns();
    let e = Path::new_unchecked(k, 1, basis, crate::paths::Closure::Finite)?;
    phi_window(gamma, &e, 1, 1, k, k)
}

/// The canonical pair of paths of a tiling.
///
/// Returns `(γ, δ)` with `(γ_1..γ_k) = I_k` and `Φ(γ, δ) = t`: γ is built
/// from the vertical transitions (undoing the tilde transform) and δ
/// from the column strip of rows `1..=k`, corrected by `C^{-1}`.
pub fn psi(t: &Tiling) -> Result<(Path, Path)> {
    let k = t.k();
    let strip = Path::from_transitions(t.central(), 1, t.col_transitions())?;
    let gseq = t.row_transitions().tilde()?.shifted(-(k as i64 - 2));
    let gamma = Path::from_transitions(&IntMatrix::identity(k), 1, &gseq)?;
    let c = c_matrix(&gamma)?;
    let delta = strip.act(&c.unimodular_inverse()?)?;
    Ok((gamma, delta))
}
