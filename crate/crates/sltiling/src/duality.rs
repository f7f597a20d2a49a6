//! Derived tilings of adjacent minors, the dual tiling and Gale duality.

use crate::error::{Error, Result};
use crate::friezes::Frieze;
use crate::linalg::{Int, IntMatrix};
use crate::paths::{Path, TransitionSeq};
use crate::tilings::{phi, psi, Span, Tiling};

/// The `rows × cols` window of `p × p` adjacent minors of `t` at `(i, j)`.
pub fn minor_window(t: &Tiling, p: usize, i: i64, j: i64, rows: usize, cols: usize) -> Result<IntMatrix> {
    let w = t.window(i, j, rows + p - 1, cols + p - 1)?;
    let mut out = IntMatrix::zeros(rows, cols);
    for a in 0..rows {
        for b in 0..cols {
            out.set(a, b, w.submatrix(a..a + p, b..b + p)?.det()?);
        }
    }
    Ok(out)
}

/// Transition indices of the derived tiling along one direction.
fn derived_span(seq: &TransitionSeq, range: Option<(i64, i64)>, k: usize, p: usize) -> Result<Span> {
    if let Some(period) = seq.period() {
        return Ok(Span::Cyclic(period));
    }
    let (lo, hi) = range.expect("finite sequences have a finite range");
    // minors need p consecutive indices, a transition k+1 minors
    let top = hi - (p + k) as i64 + 1;
    if lo > 1 || top < k as i64 {
        return Err(Error::Precondition(format!(
            "tiling range {lo}..={hi} too small for {p}x{p} minors at the central block"
        )));
    }
    Ok(Span::Range(lo, top))
}

/// `∂_p 𝓜`: the tiling of adjacent `p × p` minors.
///
/// Re-presented through its central block and the transitions extracted
/// from minor windows, then checked against direct minors. Fails with
/// [`Error::InvalidTiling`] when the minors do not form a tame SL_k-tiling.
pub fn derived_tiling(t: &Tiling, p: usize) -> Result<Tiling> {
    let k = t.k();
    if p == 0 || p > k {
        return Err(Error::OutOfRange { index: p as i64, lo: 1, hi: k as i64 });
    }
    let rows = derived_span(t.row_transitions(), t.row_range(), k, p)?;
    let cols = derived_span(t.col_transitions(), t.col_range(), k, p)?;
    let d = Tiling::from_windows(k, |i, j, r, c| minor_window(t, p, i, j, r, c), rows, cols)?;
    let size = (k + 1).max(2);
    let report = d.validate()?;
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidTiling(format!("derived tiling of {p}x{p} minors: {v}")));
    }
    let (i0, j0) = (report.top, report.left);
    if d.window(i0, j0, size, size)? != minor_window(t, p, i0, j0, size, size)? {
        return Err(Error::InvalidTiling(format!("{p}x{p} minors are not propagated by their own transitions")));
    }
    Ok(d)
}

/// The dual tiling `𝓜* = ∂_{k-1} 𝓜`.
pub fn dual(t: &Tiling) -> Result<Tiling> {
    derived_tiling(t, t.k() - 1)
}

/// Outcome of [`dual_transition_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualReport {
    /// Indices checked for horizontal and vertical transitions.
    pub checked: (usize, usize),
    /// `H*_j = J_j(δ̃)` for all checked `j`.
    pub horizontal: bool,
    /// `V*_i = J_{i+k-2}(γ)` for all checked `i`.
    pub vertical: bool,
    /// `Φ(ψ(𝓜*)) = 𝓜*` on a `3k` window.
    pub representable: bool,
    /// `(𝓜*)*_{i,j} = 𝓜_{i+k-2, j+k-2}` on a `3k` window.
    pub double_dual: bool,
}

impl DualReport {
    pub fn holds(&self) -> bool {
        self.horizontal && self.vertical && self.representable && self.double_dual
    }
}

fn seq_matches(seq: &TransitionSeq, other: &TransitionSeq, shift: i64, indices: &[i64]) -> Result<bool> {
    for &i in indices {
        if seq.get(i)? != other.get(i + shift)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn indices(seq: &TransitionSeq, other: &TransitionSeq, shift: i64) -> Vec<i64> {
    let own: Vec<i64> = match seq.range() {
        Some((lo, hi)) => (lo..=hi).collect(),
        None => (1..=seq.period().unwrap_or(0) as i64).collect(),
    };
    own.into_iter().filter(|&i| other.contains(i + shift)).collect()
}

/// Checks the description of the dual through tilde paths on `Φ(γ, δ)`.
pub fn dual_transition_check(gamma: &Path, delta: &Path) -> Result<DualReport> {
    let k = gamma.k();
    let shift = k as i64 - 2;
    let m = phi(gamma, delta)?;
    let star = dual(&m)?;
    let dt = delta.transitions()?.tilde()?;
    let gt = gamma.transitions()?;
    let hi = indices(star.col_transitions(), &dt, 0);
    let vi = indices(star.row_transitions(), &gt, shift);
    let horizontal = !hi.is_empty() && seq_matches(star.col_transitions(), &dt, 0, &hi)?;
    let vertical = !vi.is_empty() && seq_matches(star.row_transitions(), &gt, shift, &vi)?;
    let size = 3 * k;
    let (i0, j0) = window_anchor(&star, size);
    let (g2, d2) = psi(&star)?;
    let representable = phi(&g2, &d2)?.window(i0, j0, size, size)? == star.window(i0, j0, size, size)?;
    let double = dual(&star)?;
    let (a0, b0) = window_anchor(&double, size);
    let double_dual = double.window(a0, b0, size, size)? == m.window(a0 + shift, b0 + shift, size, size)?;
    Ok(DualReport { checked: (hi.len(), vi.len()), horizontal, vertical, representable, double_dual })
}

fn window_anchor(t: &Tiling, size: usize) -> (i64, i64) {
    let pick = |r: Option<(i64, i64)>| match r {
        Some((lo, hi)) if hi - lo + 1 >= size as i64 => lo,
        _ => 1,
    };
    (pick(t.row_range()), pick(t.col_range()))
}

/// The window of `𝓜_F` whose determinant is row `t'` at position `i'` of the
/// Gale dual: size `k - t'`, upper-left entry `(i' - 2k + t', i' - k + t')`.
pub fn gale_window(k: usize, t: usize, i: i64) -> (i64, i64, usize) {
    let r = i - 2 * k as i64 + t as i64;
    (r, r + k as i64, k - t)
}

/// The Gale dual of a frieze of type `(k, n)`, of type `(n-k, n)`.
///
/// Its rows are the diamond determinants of `F` of sizes `k-1` down to 1,
/// i.e. row `t'` at `i'` is the semi-consecutive minor `p_{[r]^{k+1} \ {r+t'}}`
/// with `r = i' - k - 1`. Applying it twice returns `F` exactly.
pub fn gale_dual(f: &Frieze) -> Result<Frieze> {
    let n = f.n().ok_or_else(|| Error::Precondition("Gale duality needs a frieze of finite type".into()))?;
    let k = f.k();
    if n < k + 2 {
        return Err(Error::Precondition(format!("type ({k},{n}) has no Gale dual with n-k >= 2")));
    }
    let rows = (1..k)
        .map(|t| {
            (1..=n as i64)
                .map(|i| {
                    let (r, c, s) = gale_window(k, t, i);
                    f.tiling_window(r, c, s, s)?.det()
                })
                .collect::<Result<Vec<Int>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Frieze::finite(n - k, rows)
}
