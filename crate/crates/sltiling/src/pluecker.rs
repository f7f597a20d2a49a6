//! Plücker coordinates of k × n integer matrices and their index combinatorics.
//!
//! Indices are taken modulo `n` with representatives in `1..=n`. For an
//! index tuple `I`, `o(I)` is the reduced, increasingly sorted tuple and
//! `p_{o(I)}` the minor on those columns; `p_I` itself carries the sign of
//! the sorting permutation (and vanishes on repeats).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{sign_pow, Int, IntMatrix};

fn reduce(n: usize, i: i64) -> usize {
    ((i - 1).rem_euclid(n as i64) + 1) as usize
}

/// Reduces an index tuple mod `n` and sorts it, returning the sign of the
/// sorting permutation (0 if an index repeats) and the sorted tuple.
///
/// ```
/// use sltiling::pluecker::normalize;
/// assert_eq!(normalize(5, &[2, 1]), (-1, vec![1, 2]));
/// assert_eq!(normalize(8, &[3, 4, 3]).0, 0);
/// assert_eq!(normalize(7, &[8, 2]), (1, vec![1, 2]));
/// ```
pub fn normalize(n: usize, raw: &[i64]) -> (i8, Vec<usize>) {
    let mut v: Vec<usize> = raw.iter().map(|&i| reduce(n, i)).collect();
    let mut inversions = 0usize;
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            if v[a] > v[b] {
                inversions += 1;
            }
        }
    }
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return (0, v);
    }
    (if inversions % 2 == 0 { 1 } else { -1 }, v)
}

fn check_shape(a: &IntMatrix, len: usize) -> Result<()> {
    if len != a.rows() {
        return Err(Error::Shape(format!("{len} indices for a matrix with {} rows", a.rows())));
    }
    if a.cols() < a.rows() {
        return Err(Error::Shape("need at least as many columns as rows".into()));
    }
    Ok(())
}

/// Determinant of the columns `idx` (reduced mod n) in the order given.
pub fn ordered_minor(a: &IntMatrix, idx: &[i64]) -> Result<Int> {
    check_shape(a, idx.len())?;
    let n = a.cols();
    let cols: Vec<usize> = idx.iter().map(|&i| reduce(n, i) - 1).collect();
    let rows: Vec<usize> = (0..a.rows()).collect();
    a.select(&rows, &cols)?.det()
}

/// `p_{o(I)}(A)`: the minor on the reduced, sorted index set (0 on repeats).
pub fn pluecker_sorted(a: &IntMatrix, raw: &[i64]) -> Result<Int> {
    check_shape(a, raw.len())?;
    let (s, sorted) = normalize(a.cols(), raw);
    if s == 0 {
        return Ok(Int::zero());
    }
    let idx: Vec<i64> = sorted.iter().map(|&i| i as i64).collect();
    ordered_minor(a, &idx)
}

/// `p_I(A) = sign(π) p_{o(I)}(A)`.
pub fn pluecker(a: &IntMatrix, raw: &[i64]) -> Result<Int> {
    let (s, _) = normalize(a.cols(), raw);
    Ok(pluecker_sorted(a, raw)? * Int::from(s))
}

/// The three-term (in general (k+1)-term) Plücker relation
/// `Σ_ℓ (-1)^ℓ p_{o(I) j_ℓ} p_{o(J \ j_ℓ)}`, which vanishes for every matrix.
pub fn check_pluecker_relation(a: &IntMatrix, i: &[i64], j: &[i64]) -> Result<Int> {
    let k = a.rows();
    if i.len() + 1 != k || j.len() != k + 1 {
        return Err(Error::Shape(format!("need |I| = {} and |J| = {}", k - 1, k + 1)));
    }
    let n = a.cols();
    let (_, oi) = normalize(n, i);
    let (_, oj) = normalize(n, j);
    let mut acc = Int::zero();
    for l in 0..=k {
        let mut left: Vec<i64> = oi.iter().map(|&x| x as i64).collect();
        left.push(oj[l] as i64);
        let right: Vec<i64> = oj.iter().enumerate().filter(|&(t, _)| t != l).map(|(_, &x)| x as i64).collect();
        let term = ordered_minor(a, &left)? * ordered_minor(a, &right)?;
        if l % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `[r]^len = {r, .., r+len-1}`.
pub fn run(r: i64, len: usize) -> Vec<i64> {
    (0..len as i64).map(|t| r + t).collect()
}

/// The s × s matrix with entries `p_{o([r+i-1]^{k-1}, m_j)}`.
pub fn a_matrix(a: &IntMatrix, m: &[i64], r: i64) -> Result<IntMatrix> {
    let k = a.rows();
    let s = m.len();
    if s == 0 || s > k {
        return Err(Error::Precondition(format!("s = {s} must lie in 1..={k}")));
    }
    let mut out = IntMatrix::zeros(s, s);
    for i in 0..s {
        for (jj, &mj) in m.iter().enumerate() {
            let mut idx = run(r + i as i64, k - 1);
            idx.push(mj);
            out.set(i, jj, pluecker_sorted(a, &idx)?);
        }
    }
    Ok(out)
}

/// Both sides of the determinant formula for `A_{m;r}` and whether its hypotheses hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetFormula {
    pub lhs: Int,
    pub rhs: Int,
    /// `m` is cyclically ordered mod n.
    pub c1: bool,
    /// `r + k - 2` lies outside the cyclic interval `[m_1, m_s)`.
    pub c2: bool,
}

impl DetFormula {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Whether the residues of `m` are distinct and occur in cyclic order.
pub fn cyclically_ordered(n: usize, m: &[i64]) -> bool {
    let Some(&first) = m.first() else { return true };
    let offs: Vec<i64> = m.iter().map(|&x| (x - first).rem_euclid(n as i64)).collect();
    offs.windows(2).all(|w| w[0] < w[1])
}

/// Membership of `x` in the cyclic half-open interval `[a, b)` mod n.
/// The interval `[a, a)` is empty.
pub fn in_cyclic_interval(n: usize, x: i64, a: i64, b: i64) -> bool {
    let n = n as i64;
    (x - a).rem_euclid(n) < (b - a).rem_euclid(n)
}

pub fn pluecker_det_formula(a: &IntMatrix, m: &[i64], r: i64) -> Result<DetFormula> {
    let k = a.rows();
    let n = a.cols();
    let s = m.len();
    let lhs = a_matrix(a, m, r)?.det()?;
    let mut rhs = Int::from(1);
    for l in 0..s as i64 - 1 {
        rhs *= pluecker_sorted(a, &run(r + l, k))?;
    }
    let mut last = run(r + s as i64 - 1, k - s);
    last.extend_from_slice(m);
    rhs *= pluecker_sorted(a, &last)?;
    let c1 = cyclically_ordered(n, m);
    let c2 = !in_cyclic_interval(n, r + k as i64 - 2, m[0], m[s - 1]);
    Ok(DetFormula { lhs, rhs, c1, c2 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexClass {
    Consecutive,
    SemiConsecutive,
    AlmostConsecutive,
    Other,
}

/// Cyclic gap sizes between successive members of a sorted set in `1..=n`.
fn gaps(n: usize, sorted: &[usize]) -> Vec<usize> {
    let len = sorted.len();
    (0..len)
        .map(|t| {
            let a = sorted[t];
            let b = if t + 1 < len { sorted[t + 1] } else { sorted[0] + n };
            b - a - 1
        })
        .collect()
}

/// A single cyclic run (all of `[n]` counts as consecutive).
pub fn is_consecutive(n: usize, idx: &[i64]) -> bool {
    let (s, v) = normalize(n, idx);
    s != 0 && (v.len() == n || gaps(n, &v).iter().filter(|&&g| g > 0).count() == 1)
}

/// A run of length k-1 plus one further index.
pub fn is_almost_consecutive(n: usize, idx: &[i64]) -> bool {
    let (s, v) = normalize(n, idx);
    if s == 0 {
        return false;
    }
    (0..v.len()).any(|x| {
        let rest: Vec<i64> = v.iter().enumerate().filter(|&(t, _)| t != x).map(|(_, &y)| y as i64).collect();
        rest.len() <= 1 || is_consecutive(n, &rest)
    })
}

/// `[i]^{k+1} \ {j}` with `j` strictly inside: two runs separated by a single gap.
pub fn is_semi_consecutive(n: usize, idx: &[i64]) -> bool {
    let (s, v) = normalize(n, idx);
    if s == 0 || v.len() + 1 >= n {
        return false;
    }
    let g = gaps(n, &v);
    let positive: Vec<usize> = g.into_iter().filter(|&x| x > 0).collect();
    positive.len() == 2 && positive.contains(&1)
}

/// Classification, reporting the most specific class that applies
/// (consecutive, then semi-consecutive, then almost consecutive).
pub fn classify(idx: &[i64], n: usize) -> IndexClass {
    if is_consecutive(n, idx) {
        IndexClass::Consecutive
    } else if is_semi_consecutive(n, idx) {
        IndexClass::SemiConsecutive
    } else if is_almost_consecutive(n, idx) {
        IndexClass::AlmostConsecutive
    } else {
        IndexClass::Other
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Horizontal,
    Vertical,
}

/// Index set of the minor giving the entry `j_{p,q+1}` of `H_p` or `V_p`.
pub fn j_entry_index(k: usize, p: i64, q: usize, dir: Direction) -> Vec<i64> {
    let q64 = q as i64;
    match dir {
        Direction::Horizontal => {
            let mut v = run(p, q);
            v.extend(run(p + q64 + 1, k - q));
            v
        }
        Direction::Vertical => {
            let mut v = run(p + q64 - 1, k - q);
            v.extend(run(p + k as i64, q));
            v
        }
    }
}

/// `j_{p,q+1} = (-1)^{k-q-1} p_{o(..)}(A)` for `q ∈ 0..k`.
///
/// Valid for matrices whose consecutive minors are all 1.
pub fn j_entry_formula(a: &IntMatrix, p: i64, q: usize, dir: Direction) -> Result<Int> {
    let k = a.rows();
    if q >= k {
        return Err(Error::Precondition(format!("q = {q} must lie in 0..{k}")));
    }
    let idx = j_entry_index(k, p, q, dir);
    Ok(sign_pow(k as i64 - q as i64 - 1) * pluecker_sorted(a, &idx)?)
}

/// Index tuple of the Plücker-frieze entry in row `r`, offset `m`:
/// `o([r]^{k-1}, m + r - 1)`.
pub fn frieze_index(k: usize, r: i64, m: i64) -> Vec<i64> {
    let mut v = run(r, k - 1);
    v.push(m + r - 1);
    v
}
