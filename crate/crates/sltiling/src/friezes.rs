//! SL_k-friezes, their tilings, Plücker friezes and quiddity sequences.
//!
//! Frieze rows become falling diagonals of the tiling: row `t` (counted
//! from the ones row, `1..=w`) at position `i` is the tiling entry
//! `m_{i, i+k-1+t}`. The `k-1` zero rows sit on `j ∈ [i]^{k-1}` and the
//! bottom ones row on `j = i+k-1`. A frieze of type `(k,n)` has width
//! `w = n-k-1`, and its tiling is extended by `m_{i,j+n} = (-1)^{k-1} m_{i,j}`.
//!
//! Infinite friezes are stored as a finite rectangle of positions
//! `start..start+len` and rows `1..=T`; the tiling is rebuilt from the
//! horizontal strip through the first `k` positions and reproduces the
//! frieze at every position from `start + k - 1` on.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{sign_pow, Int, IntMatrix};
use crate::paths::{check_k, Closure, Path};
use crate::pluecker::{frieze_index, pluecker_sorted, run};
use crate::tilings::{check_tame, phi, Tiling, ValidationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Width {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frieze {
    k: usize,
    width: Width,
    start: i64,
    /// `rows[t-1][i-start]`; for finite friezes one period of length n.
    rows: Vec<Vec<Int>>,
}

impl Frieze {
    /// A frieze of type `(k, n)` from its `w` nontrivial rows, each one
    /// period (positions `1..=n`) long, with `n = w + k + 1`.
    pub fn finite(k: usize, rows: Vec<Vec<Int>>) -> Result<Self> {
        let f = Frieze::finite_unchecked(k, rows)?;
        let report = f.validate()?;
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidFrieze(v.to_string()));
        }
        Ok(f)
    }

    /// Like [`Frieze::finite`] but only checks the shape.
    pub fn finite_unchecked(k: usize, rows: Vec<Vec<Int>>) -> Result<Self> {
        check_k(k)?;
        let w = rows.len();
        if w == 0 {
            return Err(Error::InvalidFrieze("width must be at least 1".into()));
        }
        let n = w + k + 1;
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::InvalidFrieze(format!("row of length {} in a frieze of type ({k},{n})", r.len())));
        }
        Ok(Frieze { k, width: Width::Finite(w), start: 1, rows })
    }

    pub fn from_i64(k: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Frieze::finite(k, rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
    }

    /// An infinite frieze known on positions `start..start+len` and rows `1..=T`.
    pub fn infinite(k: usize, start: i64, rows: Vec<Vec<Int>>) -> Result<Self> {
        check_k(k)?;
        let len = rows.first().map(Vec::len).unwrap_or(0);
        if rows.len() < k - 1 || len < k || rows.iter().any(|r| r.len() != len) {
            return Err(Error::InvalidFrieze(format!(
                "an infinite frieze needs a rectangle of at least {} rows and {k} positions",
                k - 1
            )));
        }
        let f = Frieze { k, width: Width::Infinite, start, rows };
        f.to_tiling()?;
        Ok(f)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn width(&self) -> Width {
        self.width
    }

    /// `n = w + k + 1` for finite friezes.
    pub fn n(&self) -> Option<usize> {
        match self.width {
            Width::Finite(w) => Some(w + self.k + 1),
            Width::Infinite => None,
        }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    /// Positions stored: one period for finite friezes.
    pub fn positions(&self) -> std::ops::Range<i64> {
        self.start..self.start + self.rows[0].len() as i64
    }

    /// Nontrivial entry in row `t` at position `i`.
    pub fn entry(&self, t: usize, i: i64) -> Result<Int> {
        let (lo, hi) = (1, self.rows.len());
        if t < lo || t > hi {
            return Err(Error::OutOfRange { index: t as i64, lo: lo as i64, hi: hi as i64 });
        }
        let row = &self.rows[t - 1];
        match self.n() {
            Some(n) => Ok(row[(i - 1).rem_euclid(n as i64) as usize].clone()),
            None => {
                let r = self.positions();
                if !r.contains(&i) {
                    return Err(Error::OutOfRange { index: i, lo: r.start, hi: r.end - 1 });
                }
                Ok(row[(i - self.start) as usize].clone())
            }
        }
    }

    /// Tiling entry `m_{i,j}` read off the frieze: the whole plane for
    /// finite friezes, the right half `j >= i` for infinite ones.
    pub fn tiling_entry(&self, i: i64, j: i64) -> Result<Int> {
        let k = self.k as i64;
        match self.n() {
            Some(n) => {
                let n = n as i64;
                let d = j - i;
                let (q, r) = (d.div_euclid(n), d.rem_euclid(n));
                let sign = sign_pow((k - 1) * q);
                let v = if r < k - 1 {
                    Int::zero()
                } else if r == k - 1 || r == n - 1 {
                    Int::one()
                } else {
                    self.entry((r - k + 1) as usize, i)?
                };
                Ok(sign * v)
            }
            None => {
                let d = j - i;
                if d < 0 {
                    return Err(Error::OutOfRange { index: j, lo: i, hi: i64::MAX });
                }
                if d < k - 1 {
                    Ok(Int::zero())
                } else if d == k - 1 {
                    Ok(Int::one())
                } else {
                    self.entry((d - k + 1) as usize, i)
                }
            }
        }
    }

    /// The window of tiling entries at `(i, j)` read off the frieze.
    pub fn tiling_window(&self, i: i64, j: i64, rows: usize, cols: usize) -> Result<IntMatrix> {
        let mut m = IntMatrix::zeros(rows, cols);
        for a in 0..rows {
            for b in 0..cols {
                m.set(a, b, self.tiling_entry(i + a as i64, j + b as i64)?);
            }
        }
        Ok(m)
    }

    /// Both diamond conditions, as adjacent minors of the associated tiling.
    ///
    /// Finite friezes are checked on an `(n+k+1)`-square window, which
    /// covers every diamond up to periodicity. Infinite friezes are checked
    /// on every complete right-half window inside the stored rectangle.
    pub fn validate(&self) -> Result<ValidationReport> {
        let k = self.k;
        match self.n() {
            Some(n) => {
                let size = n + k + 1;
                Ok(check_tame(&self.tiling_window(1, 1, size, size)?, k, 1, 1))
            }
            None => {
                let t = self.to_tiling()?;
                Ok(check_tame(&t.window(self.start + k as i64 - 1, self.start + k as i64 - 1, 2 * k, 2 * k)?, k, 0, 0))
            }
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().map(|r| r.is_valid()).unwrap_or(false)
    }

    /// The horizontal strip through rows `[start]^k` of the tiling, as a path.
    fn strip(&self) -> Result<Path> {
        let k = self.k;
        match self.n() {
            Some(n) => {
                let cols = (1..=n as i64)
                    .map(|j| (1..=k as i64).map(|i| self.tiling_entry(i, j)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Path::new(k, 1, cols, Closure::SkewPeriodic(n))
            }
            None => {
                let first = self.start + k as i64 - 1;
                let last = self.start + k as i64 - 1 + self.rows.len() as i64;
                let cols = (first..=last)
                    .map(|j| (0..k as i64).map(|i| self.tiling_entry(self.start + i, j)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Path::new(k, first, cols, Closure::Finite)
            }
        }
    }

    /// The tiling `𝓜_F`.
    ///
    /// For infinite friezes the tiling is `Φ(δ, δ)` for the strip δ through
    /// the first k stored positions, which must start at or before `2-k`
    /// so that the central block `M_{1,1}` is reachable.
    pub fn to_tiling(&self) -> Result<Tiling> {
        let k = self.k;
        let strip = self.strip()?;
        if self.n().is_none() && strip.base_index() > 1 {
            return Err(Error::Precondition(format!(
                "infinite frieze must start at position {} or earlier, not {}",
                2 - k as i64,
                self.start
            )));
        }
        let t = phi(&strip, &strip)?;
        // the tiling must reproduce every stored entry it can reach
        let check = |i: i64, t_row: usize| -> Result<()> {
            let j = i + k as i64 - 1 + t_row as i64;
            let want = self.entry(t_row, i)?;
            let got = t.entry(i, j)?;
            if got != want {
                return Err(Error::InvalidFrieze(format!(
                    "entry {want} in row {t_row} at position {i} is inconsistent with the tiling (expected {got})"
                )));
            }
            Ok(())
        };
        match self.n() {
            Some(_) => {
                for i in self.positions() {
                    for r in 1..=self.rows.len() {
                        check(i, r)?;
                    }
                }
            }
            None => {
                let (rlo, rhi) = t.row_range().unwrap_or((i64::MIN, i64::MAX));
                let (_, chi) = t.col_range().unwrap_or((i64::MIN, i64::MAX));
                for i in self.positions().filter(|&i| i >= self.start + k as i64 - 1 && i >= rlo && i <= rhi) {
                    for r in 1..=self.rows.len() {
                        if i + k as i64 - 1 + r as i64 <= chi {
                            check(i, r)?;
                        }
                    }
                }
            }
        }
        Ok(t)
    }

    /// Reads the frieze of type `(k, n)` off a tiling.
    pub fn from_tiling(t: &Tiling, n: usize) -> Result<Frieze> {
        let k = t.k();
        if n < k + 2 {
            return Err(Error::Precondition(format!("type ({k},{n}) has no nontrivial rows")));
        }
        let rows = (1..=n - k - 1)
            .map(|r| (1..=n as i64).map(|i| t.entry(i, i + (k + r) as i64 - 1)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let f = Frieze::finite(k, rows)?;
        let w = f.tiling_window(1, 1, 2 * n, 2 * n)?;
        if t.window(1, 1, 2 * n, 2 * n)? != w {
            return Err(Error::InvalidFrieze(format!("tiling is not the tiling of a frieze of type ({k},{n})")));
        }
        Ok(f)
    }

    /// The infinite frieze of `Φ(γ, γ)` on the positions and rows fully
    /// determined by the finite path γ.
    pub fn from_path(gamma: &Path, rows: usize) -> Result<Frieze> {
        let k = gamma.k();
        let (lo, hi) = gamma
            .range()
            .ok_or_else(|| Error::Precondition("use plucker frieze evaluation for closed paths".into()))?;
        let len = hi - lo - (k + rows) as i64 + 2;
        if len < k as i64 || rows < k - 1 {
            return Err(Error::Precondition(format!("path too short for {rows} rows and {k} positions")));
        }
        let mut table = vec![Vec::new(); rows];
        for i in lo..lo + len {
            let base = gamma.columns_matrix(i, k - 1)?;
            for (r, row) in table.iter_mut().enumerate() {
                let mut cols = base.to_columns();
                cols.push(gamma.column(i + (k + r) as i64)?);
                row.push(IntMatrix::from_columns(&cols)?.det()?);
            }
        }
        Ok(Frieze { k, width: Width::Infinite, start: lo, rows: table })
    }

    /// Whether every stored nontrivial entry is positive.
    pub fn is_positive(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.is_positive())
    }

    /// Offset triangular layout: zero rows, ones, the nontrivial rows
    /// (highest first), ones and zero rows, each row shifted half a cell.
    pub fn render(&self) -> String {
        let k = self.k as i64;
        let w = self.rows.len() as i64;
        let positions: Vec<i64> = match self.n() {
            Some(n) => (1..=n as i64).collect(),
            None => self.positions().collect(),
        };
        let top = if self.n().is_some() { w + k } else { w };
        let lines: Vec<(i64, Vec<String>)> = (-(k - 1)..=top)
            .rev()
            .map(|t| {
                let cells = positions
                    .iter()
                    .map(|&i| {
                        let v = if self.n().is_some() || t <= 0 {
                            self.tiling_entry(i, i + k - 1 + t)
                        } else {
                            self.entry(t as usize, i)
                        };
                        v.map(|x| x.to_string()).unwrap_or_default()
                    })
                    .collect();
                (t, cells)
            })
            .collect();
        let cw = lines.iter().flat_map(|(_, c)| c.iter().map(String::len)).max().unwrap_or(1) + 1;
        let mut out = String::new();
        for (t, cells) in &lines {
            let indent = ((t + k - 1) as usize) * cw / 2;
            let mut line = " ".repeat(indent);
            for c in cells {
                line.push_str(&format!("{c:>cw$}{:cw$}", ""));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Checks that all cyclically consecutive k-minors of `a` equal 1, naming
/// the first offending window otherwise.
pub fn check_consecutive_minors(a: &IntMatrix) -> Result<()> {
    let (k, n) = (a.rows(), a.cols());
    check_k(k)?;
    if n < k {
        return Err(Error::Shape(format!("{k} x {n} matrix has no maximal minors")));
    }
    for i in 1..=n as i64 {
        let idx = run(i, k);
        let p = pluecker_sorted(a, &idx)?;
        if !p.is_one() {
            let shown: Vec<String> = idx.iter().map(|&x| ((x - 1).rem_euclid(n as i64) + 1).to_string()).collect();
            return Err(Error::Precondition(format!(
                "consecutive minor on columns {{{}}} is {p}, not 1",
                shown.join(",")
            )));
        }
    }
    Ok(())
}

/// The Plücker frieze `F_{(k,n)}(A)`: row `t` at position `r` is
/// `p_{o([r]^{k-1}, r+k-1+t)}(A)`.
///
/// ```
/// use sltiling::{friezes::plucker_frieze_eval, IntMatrix};
/// let a = IntMatrix::from_array([[1, 0, -1, -2, -3], [0, 1, 1, 1, 1]]);
/// let f = plucker_frieze_eval(&a).unwrap();
/// assert_eq!(f.n(), Some(5));
/// assert!(f.is_valid());
/// assert_eq!(f.rows()[0], [1, 2, 2, 1, 3].map(sltiling::Int::from));
/// ```
pub fn plucker_frieze_eval(a: &IntMatrix) -> Result<Frieze> {
    check_consecutive_minors(a)?;
    let (k, n) = (a.rows(), a.cols());
    if n < k + 2 {
        return Err(Error::Precondition(format!("type ({k},{n}) has width 0")));
    }
    let rows = (1..=n - k - 1)
        .map(|t| (1..=n as i64).map(|r| pluecker_sorted(a, &frieze_index(k, r, (k + t) as i64))).collect())
        .collect::<Result<Vec<_>>>()?;
    Frieze::finite(k, rows)
}

/// The skew-periodic extension `φ_A` of the columns of `A`.
pub fn phi_a(a: &IntMatrix) -> Result<Path> {
    check_consecutive_minors(a)?;
    Path::new(a.rows(), 1, a.to_columns(), Closure::SkewPeriodic(a.cols()))
}

/// `Φ(γ, γ)`, the tiling of an infinite frieze.
pub fn phi_iota(gamma: &Path) -> Result<Tiling> {
    phi(gamma, gamma)
}

/// Zero diagonals `m_{i,j} = 0` for `j ∈ [i]^{k-1}` and ones `m_{i,i+k-1} = 1`
/// on the rows `i0..i0+size`.
pub fn tiling_is_from_frieze(t: &Tiling, i0: i64, size: usize) -> bool {
    let k = t.k() as i64;
    let w = match t.window(i0, i0, size, size + k as usize) {
        Ok(w) => w,
        Err(_) => return false,
    };
    (0..size).all(|a| {
        (0..k).all(|d| {
            let want = if d == k - 1 { Int::one() } else { Int::zero() };
            *w.get(a, a + d as usize) == want
        })
    })
}

/// Quiddity vectors `q_i = ((-1)^{k-2} j_{i,2}, .., (-1)^0 j_{i,k})` of the
/// horizontal transitions, over one period (or every available index).
pub fn quiddity_sequence(f: &Frieze) -> Result<Vec<Vec<Int>>> {
    let t = f.to_tiling()?;
    let k = f.k();
    let seq = t.col_transitions();
    let indices: Vec<i64> = match f.n() {
        Some(n) => (1..=n as i64).collect(),
        None => {
            let (lo, hi) = seq.range().unwrap_or((1, 0));
            (lo..=hi).collect()
        }
    };
    indices
        .into_iter()
        .map(|i| {
            let j = seq.get(i)?;
            Ok((2..=k).map(|q| sign_pow((k - q) as i64) * j.coeff(q)).collect())
        })
        .collect()
}

pub fn is_positive_frieze(f: &Frieze) -> bool {
    f.is_positive()
}

pub fn is_positive_quiddity(q: &[Vec<Int>]) -> bool {
    q.iter().flatten().all(|x| x.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::pluecker::{j_entry_formula, Direction};

    #[test]
    fn figure_layout() {
        // k = 2, n = 5 with quiddity (1,3,1,2,2)
        let f = Frieze::from_i64(2, &[vec![1, 3, 1, 2, 2], vec![2, 2, 1, 3, 1]]).unwrap();
        let (a, b) = (f.entry(1, 1).unwrap(), f.entry(2, 1).unwrap());
        let row: Vec<Int> = (1..=9).map(|j| f.tiling_entry(1, j).unwrap()).collect();
        let want = vec![Int::zero(), Int::one(), a.clone(), b.clone(), Int::one(), Int::zero(), -Int::one(), -a, -b];
        assert_eq!(row, want);
        assert_eq!(f.tiling_entry(2, 1).unwrap(), -Int::one());
        let t = f.to_tiling().unwrap();
        assert!(t.is_skew_col_periodic(5, 1, 1, 6).unwrap() && t.is_skew_row_periodic(5, 1, 1, 6).unwrap());
        assert!(t.validate().unwrap().is_valid());
    }

    #[test]
    fn pluecker_friezes_are_friezes() {
        let mut r = gen::rng(21);
        for (k, n) in [(2, 5), (2, 7), (3, 6), (3, 7), (4, 7), (4, 8)] {
            let a = gen::random_grassmann_point(k, n, 2, &mut r).unwrap();
            let f = plucker_frieze_eval(&a).unwrap();
            assert_eq!(f.width(), Width::Finite(n - k - 1));
            let t = f.to_tiling().unwrap();
            let g = phi_a(&a).unwrap();
            let direct = phi(&g, &g).unwrap();
            let s = 3 * k;
            for (i, j) in [(1, 1), (-4, 3), (5, -2)] {
                assert_eq!(t.window(i, j, s, s).unwrap(), direct.window(i, j, s, s).unwrap());
                assert_eq!(f.tiling_window(i, j, s, s).unwrap(), direct.window(i, j, s, s).unwrap());
            }
            assert!(t.is_skew_col_periodic(n, 1, 1, s).unwrap());
            assert!(t.is_skew_row_periodic(n, 1, 1, s).unwrap());
            assert_eq!(Frieze::from_tiling(&t, n).unwrap(), f);
            // quiddity entries are signed semi-consecutive minors
            let q = quiddity_sequence(&f).unwrap();
            for (i, qi) in q.iter().enumerate() {
                for (c, v) in qi.iter().enumerate() {
                    let qq = c + 1; // coefficient j_{i,qq+1}
                    let j = j_entry_formula(&a, i as i64 + 1, qq, Direction::Horizontal).unwrap();
                    assert_eq!(*v, sign_pow((k - qq - 1) as i64) * j);
                }
            }
        }
    }

    #[test]
    fn consecutive_rows_are_ones() {
        let mut r = gen::rng(2);
        let a = gen::random_grassmann_point(3, 7, 2, &mut r).unwrap();
        for i in 1..=7 {
            assert_eq!(pluecker_sorted(&a, &frieze_index(3, i, 3)).unwrap(), Int::one());
            assert_eq!(pluecker_sorted(&a, &frieze_index(3, i, 7)).unwrap(), Int::one());
        }
    }

    #[test]
    fn bad_minor_is_named() {
        let a = IntMatrix::from_array([[1, 0, 2, 1], [0, 1, 1, 1]]);
        let e = plucker_frieze_eval(&a).unwrap_err().to_string();
        assert!(e.contains("{2,3}"), "{e}");
    }

    #[test]
    fn corrupted_frieze_rejected() {
        let mut r = gen::rng(5);
        let a = gen::random_grassmann_point(3, 7, 2, &mut r).unwrap();
        let f = plucker_frieze_eval(&a).unwrap();
        let mut rows = f.rows().to_vec();
        rows[1][2] += 1;
        assert!(Frieze::finite(3, rows).is_err());
    }

    #[test]
    fn all_ones_5_8() {
        let f = Frieze::from_i64(5, &[vec![1; 8], vec![1; 8]]).unwrap();
        let q = quiddity_sequence(&f).unwrap();
        let want: Vec<Int> = [1, 0, 0, 1].map(Int::from).to_vec();
        assert!(q.len() == 8 && q.iter().all(|v| *v == want));
        assert!(f.is_positive());
        assert!(!is_positive_quiddity(&q));
    }

    #[test]
    fn infinite_friezes_round_trip() {
        let mut r = gen::rng(8);
        for k in 2..=4 {
            let g = gen::random_path(k, 20, 2, &mut r).unwrap();
            let g = Path::new(k, 2 - k as i64, g.columns().to_vec(), Closure::Finite).unwrap();
            let t = phi_iota(&g).unwrap();
            assert!(tiling_is_from_frieze(&t, 1, 6));
            let f = Frieze::from_path(&g, 10).unwrap();
            assert_eq!(f.start(), 2 - k as i64);
            let back = f.to_tiling().unwrap();
            let s = 2 * k;
            assert_eq!(back.window(1, 1, s, s).unwrap(), t.window(1, 1, s, s).unwrap());
            assert!(f.validate().unwrap().is_valid());
            assert!(Frieze::infinite(k, f.start(), f.rows().to_vec()).is_ok());
        }
    }

    #[test]
    fn render_shape() {
        let f = Frieze::from_i64(2, &[vec![1, 3, 1, 2, 2], vec![2, 2, 1, 3, 1]]).unwrap();
        let s = f.render();
        assert_eq!(s.lines().count(), 2 + 2 + 2);
        assert!(s.lines().next().unwrap().trim_start().starts_with('0'));
    }
}
