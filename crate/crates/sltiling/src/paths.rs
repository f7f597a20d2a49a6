//! Paths in ℤ^k, their J (transition) matrices, and the word calculus on them.
//!
//! A path is a bi-infinite sequence of columns `γ_i ∈ ℤ^k` such that every
//! window `W_i = (γ_i, .., γ_{i+k-1})` has determinant 1. Consecutive
//! windows are related by `W_i · J_i = W_{i+1}` where `J_i` has the shape
//!
//! ```text
//!     0 0 .. 0 (-1)^{k-1}
//!     1 0 .. 0 j_2
//!     0 1 .. 0 j_3
//!     .   ..   .
//!     0 0 .. 1 j_k
//! ```
//!
//! Paths are stored as explicit columns over a presentation range; the J
//! matrices are always derived from the columns.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{shear_reduce, sign_pow, Int, IntMatrix};

/// How the stored columns extend to all of ℤ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Closure {
    /// Only the stored columns exist.
    Finite,
    /// `γ_{i+p} = γ_i`.
    Periodic(usize),
    /// `γ_{i+p} = (-1)^{k-1} γ_i`.
    SkewPeriodic(usize),
}

impl Closure {
    pub fn period(&self) -> Option<usize> {
        match *self {
            Closure::Finite => None,
            Closure::Periodic(p) | Closure::SkewPeriodic(p) => Some(p),
        }
    }
}

pub(crate) fn check_k(k: usize) -> Result<()> {
    if k < 2 { Err(Error::Dimension(k)) } else { Ok(()) }
}

/// The sign `(-1)^{k-1}` that appears in the corner of every J matrix.
pub fn corner_sign(k: usize) -> Int {
    sign_pow(k as i64 - 1)
}

/// A transition matrix, stored through its free last-column entries `j_2, .., j_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JMatrix {
    k: usize,
    coeffs: Vec<Int>,
}

impl JMatrix {
    pub fn new(k: usize, coeffs: Vec<Int>) -> Result<Self> {
        check_k(k)?;
        if coeffs.len() != k - 1 {
            return Err(Error::Shape(format!("J matrix for k = {k} needs {} coefficients", k - 1)));
        }
        Ok(JMatrix { k, coeffs })
    }

    pub fn from_i64(k: usize, coeffs: &[i64]) -> Result<Self> {
        JMatrix::new(k, coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    /// The J matrix with all free entries zero (a signed cyclic shift).
    pub fn zero(k: usize) -> Self {
        JMatrix { k, coeffs: vec![Int::zero(); k - 1] }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `j_2, .., j_k`.
    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// The entry `j_q` for `q ∈ 1..=k`; `j_1` is the forced corner.
    pub fn coeff(&self, q: usize) -> Int {
        if q == 1 { corner_sign(self.k) } else { self.coeffs[q - 2].clone() }
    }

    /// The full last column `(j_1, .., j_k)`.
    pub fn last_column(&self) -> Vec<Int> {
        (1..=self.k).map(|q| self.coeff(q)).collect()
    }

    pub fn expand(&self) -> IntMatrix {
        let k = self.k;
        let mut m = IntMatrix::zeros(k, k);
        m.set(0, k - 1, corner_sign(k));
        for r in 1..k {
            m.set(r, r - 1, Int::one());
            m.set(r, k - 1, self.coeffs[r - 1].clone());
        }
        m
    }

    /// Reads a matrix back as a J matrix, failing if it does not have the shape.
    pub fn from_matrix(m: &IntMatrix) -> Result<Self> {
        let k = m.rows();
        check_k(k)?;
        if !m.is_square() {
            return Err(Error::Shape("J matrix must be square".into()));
        }
        let coeffs: Vec<Int> = (1..k).map(|r| m.get(r, k - 1).clone()).collect();
        let j = JMatrix { k, coeffs };
        if &j.expand() != m {
            return Err(Error::Shape(format!("matrix {m:?} does not have J shape")));
        }
        Ok(j)
    }
}

/// The ordered product of the expanded matrices of a word.
pub fn word_product(k: usize, word: &[JMatrix]) -> IntMatrix {
    word.iter().fold(IntMatrix::identity(k), |acc, j| acc.mul(&j.expand()).expect("k x k"))
}

/// A J-word whose product is the shear `I + λ E_{i,j}` (1-based, `i != j`).
///
/// The word is `J_0^{j-1} · J' · J_0^{k-j} · J_0^k` where `J_0` is the zero J
/// matrix and `J'` carries a single free entry; its length is always `2k`.
pub fn shear_to_j_word(k: usize, i: usize, j: usize, lambda: &Int) -> Result<Vec<JMatrix>> {
    check_k(k)?;
    if i == j || i == 0 || j == 0 || i > k || j > k {
        return Err(Error::Precondition(format!("shear position ({i},{j}) invalid for k = {k}")));
    }
    // J_0 maps e_r to e_{r+1}; conjugating E_{q,k} by J_0^{j-1} lands it on
    // row q+j-1 (mod k). The sign makes the last column of J_0^{j-1} J'
    // equal to (-1)^{k-1}(λ e_i + e_j): rows below j need the corner sign,
    // rows above j pick it up from J_0^{j-1} already.
    let q = (i + k - j) % k + 1;
    let value = if i < j { lambda.clone() } else { corner_sign(k) * lambda };
    let mut special = JMatrix::zero(k);
    special.coeffs[q - 2] = value;
    let mut word = Vec::with_capacity(2 * k);
    word.extend(std::iter::repeat(JMatrix::zero(k)).take(j - 1));
    word.push(special);
    word.extend(std::iter::repeat(JMatrix::zero(k)).take(2 * k - j));
    Ok(word)
}

/// Decomposes `B ∈ SL_k(ℤ)` into a J-word with product exactly `B`.
///
/// `B` is reduced to the identity by integer row shears (column by column,
/// nearest-integer Euclidean steps); the inverse shears are then rewritten
/// with [`shear_to_j_word`]. The identity yields the empty word.
pub fn slk_to_j_word(b: &IntMatrix) -> Result<Vec<JMatrix>> {
    let k = b.rows();
    check_k(k)?;
    let d = b.det()?;
    if !d.is_one() {
        return Err(Error::NotUnimodular(d));
    }
    let (ops, _) = shear_reduce(b)?;
    let mut word = Vec::new();
    for op in &ops {
        word.extend(shear_to_j_word(k, op.row + 1, op.col + 1, &-&op.factor)?);
    }
    Ok(word)
}

/// A bi-infinite (or finitely supported) sequence of J matrices.
///
/// `J_i` sits at index `base + t` for the `t`-th stored entry; a cyclic
/// sequence repeats with period `word.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionSeq {
    k: usize,
    base: i64,
    word: Vec<JMatrix>,
    cyclic: bool,
}

impl TransitionSeq {
    pub fn new(k: usize, base: i64, word: Vec<JMatrix>, cyclic: bool) -> Result<Self> {
        check_k(k)?;
        if word.iter().any(|j| j.k() != k) {
            return Err(Error::Shape("J matrices of mixed dimension".into()));
        }
        if cyclic && word.is_empty() {
            return Err(Error::Precondition("a cyclic sequence needs at least one entry".into()));
        }
        Ok(TransitionSeq { k, base, word, cyclic })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn word(&self) -> &[JMatrix] {
        &self.word
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn period(&self) -> Option<usize> {
        self.cyclic.then_some(self.word.len())
    }

    /// Inclusive index range for a finite sequence (`None` when cyclic or empty).
    pub fn range(&self) -> Option<(i64, i64)> {
        if self.cyclic || self.word.is_empty() {
            None
        } else {
            Some((self.base, self.base + self.word.len() as i64 - 1))
        }
    }

    pub fn contains(&self, i: i64) -> bool {
        self.cyclic || (i >= self.base && i < self.base + self.word.len() as i64)
    }

    pub fn get(&self, i: i64) -> Result<&JMatrix> {
        let len = self.word.len() as i64;
        if self.cyclic {
            return Ok(&self.word[(i - self.base).rem_euclid(len) as usize]);
        }
        if i < self.base || i >= self.base + len {
            return Err(Error::OutOfRange { index: i, lo: self.base, hi: self.base + len - 1 });
        }
        Ok(&self.word[(i - self.base) as usize])
    }

    /// `J_lo · J_{lo+1} ⋯ J_{hi-1}`.
    pub fn product(&self, lo: i64, hi: i64) -> Result<IntMatrix> {
        let mut acc = IntMatrix::identity(self.k);
        for i in lo..hi {
            acc = acc.mul(&self.get(i)?.expand())?;
        }
        Ok(acc)
    }

    /// Product over one period starting at `base` (cyclic sequences only).
    pub fn period_product(&self) -> Option<IntMatrix> {
        let p = self.period()? as i64;
        self.product(self.base, self.base + p).ok()
    }

    /// Relabels indices: the result holds `J_{i+shift}` at index `i`.
    pub fn shifted(&self, shift: i64) -> TransitionSeq {
        TransitionSeq { base: self.base - shift, ..self.clone() }
    }

    /// The same sequence with `base` moved to `new_base` (cyclic only; the
    /// stored word is rotated so that lookups are unchanged).
    pub fn rebased(&self, new_base: i64) -> Result<TransitionSeq> {
        if !self.cyclic {
            return Ok(self.clone());
        }
        let p = self.word.len() as i64;
        let word = (0..p).map(|t| self.get(new_base + t).cloned()).collect::<Result<_>>()?;
        Ok(TransitionSeq { k: self.k, base: new_base, word, cyclic: true })
    }

    /// The tilde transform `ĵ_{i,q} = (-1)^k j_{i+q-2, k-q+2}` for `q ∈ 2..=k`.
    ///
    /// A finite sequence on `[a, b]` yields one on `[a, b-k+2]`; a cyclic
    /// sequence keeps its period.
    pub fn tilde(&self) -> Result<TransitionSeq> {
        let k = self.k;
        let s = sign_pow(k as i64);
        let entry = |i: i64| -> Result<JMatrix> {
            let coeffs = (2..=k)
                .map(|q| Ok(&s * self.get(i + q as i64 - 2)?.coeff(k - q + 2)))
                .collect::<Result<Vec<Int>>>()?;
            JMatrix::new(k, coeffs)
        };
        if self.cyclic {
            let p = self.word.len() as i64;
            let word = (0..p).map(|t| entry(self.base + t)).collect::<Result<_>>()?;
            return TransitionSeq::new(k, self.base, word, true);
        }
        let len = self.word.len() as i64 - (k as i64 - 2);
        if len <= 0 {
            return Err(Error::Precondition(format!(
                "{} transitions are too few for the tilde transform at k = {k}",
                self.word.len()
            )));
        }
        let word = (0..len).map(|t| entry(self.base + t)).collect::<Result<_>>()?;
        TransitionSeq::new(k, self.base, word, false)
    }
}

/// A path in ℤ^k with a finite presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    k: usize,
    base: i64,
    columns: Vec<Vec<Int>>,
    closure: Closure,
}

impl Path {
    /// Builds and validates a path. For (skew-)periodic closures exactly one
    /// period of columns must be supplied, starting at `base`.
    pub fn new(k: usize, base: i64, columns: Vec<Vec<Int>>, closure: Closure) -> Result<Self> {
        let p = Path::new_unchecked(k, base, columns, closure)?;
        p.validate()?;
        Ok(p)
    }

    /// Checks only the shape, not the determinant condition.
    pub fn new_unchecked(k: usize, base: i64, columns: Vec<Vec<Int>>, closure: Closure) -> Result<Self> {
        check_k(k)?;
        // for odd k the two closed kinds coincide; keep one spelling
        let closure = match closure {
            Closure::SkewPeriodic(p) if k % 2 == 1 => Closure::Periodic(p),
            c => c,
        };
        if columns.iter().any(|c| c.len() != k) {
            return Err(Error::Shape(format!("every column must have {k} entries")));
        }
        match closure {
            Closure::Finite if columns.len() < k => {
                return Err(Error::InvalidPath(format!("a finite path needs at least {k} columns")));
            }
            Closure::Periodic(p) | Closure::SkewPeriodic(p) => {
                if p < k {
                    return Err(Error::InvalidPath(format!("period {p} is shorter than k = {k}")));
                }
                if columns.len() != p {
                    return Err(Error::InvalidPath(format!(
                        "{} columns supplied for period {p}",
                        columns.len()
                    )));
                }
            }
            _ => {}
        }
        Ok(Path { k, base, columns, closure })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base_index(&self) -> i64 {
        self.base
    }

    pub fn columns(&self) -> &[Vec<Int>] {
        &self.columns
    }

    pub fn closure(&self) -> Closure {
        self.closure
    }

    /// Inclusive column range of a finite path.
    pub fn range(&self) -> Option<(i64, i64)> {
        match self.closure {
            Closure::Finite => Some((self.base, self.base + self.columns.len() as i64 - 1)),
            _ => None,
        }
    }

    /// Inclusive range of window start indices of a finite path.
    pub fn window_range(&self) -> Option<(i64, i64)> {
        self.range().map(|(lo, hi)| (lo, hi - self.k as i64 + 1))
    }

    /// Inclusive range of transition indices of a finite path.
    pub fn transition_range(&self) -> Option<(i64, i64)> {
        self.range().map(|(lo, hi)| (lo, hi - self.k as i64))
    }

    pub fn column(&self, i: i64) -> Result<Vec<Int>> {
        let len = self.columns.len() as i64;
        let off = i - self.base;
        match self.closure {
            Closure::Finite => {
                if off < 0 || off >= len {
                    return Err(Error::OutOfRange { index: i, lo: self.base, hi: self.base + len - 1 });
                }
                Ok(self.columns[off as usize].clone())
            }
            Closure::Periodic(p) => Ok(self.columns[off.rem_euclid(p as i64) as usize].clone()),
            Closure::SkewPeriodic(p) => {
                let p = p as i64;
                let col = &self.columns[off.rem_euclid(p) as usize];
                let wraps = off.div_euclid(p);
                if (self.k - 1) % 2 == 1 && wraps.rem_euclid(2) == 1 {
                    Ok(col.iter().map(|x| -x).collect())
                } else {
                    Ok(col.clone())
                }
            }
        }
    }

    /// `(γ_i, .., γ_{i+len-1})` as a k × len matrix.
    pub fn columns_matrix(&self, i: i64, len: usize) -> Result<IntMatrix> {
        let cols = (0..len as i64).map(|t| self.column(i + t)).collect::<Result<Vec<_>>>()?;
        IntMatrix::from_columns(&cols)
    }

    /// The window `W_i = (γ_i, .., γ_{i+k-1})`.
    pub fn window(&self, i: i64) -> Result<IntMatrix> {
        self.columns_matrix(i, self.k)
    }

    /// Window start indices covering one full presentation.
    fn checked_windows(&self) -> Vec<i64> {
        match self.closure {
            Closure::Finite => {
                let (lo, hi) = self.window_range().expect("finite");
                (lo..=hi).collect()
            }
            Closure::Periodic(p) | Closure::SkewPeriodic(p) => (self.base..self.base + p as i64).collect(),
        }
    }

    /// Every window (including seam windows of periodic closures) has determinant 1.
    pub fn validate(&self) -> Result<()> {
        for i in self.checked_windows() {
            let d = self.window(i)?.det()?;
            if !d.is_one() {
                return Err(Error::InvalidPath(format!("window at index {i} has determinant {d}")));
            }
        }
        Ok(())
    }

    /// `J_i = W_i^{-1} W_{i+1}`, validated to have J shape.
    pub fn transition_at(&self, i: i64) -> Result<JMatrix> {
        let w = self.window(i)?;
        let next = self.window(i + 1)?;
        JMatrix::from_matrix(&w.unimodular_inverse()?.mul(&next)?)
            .map_err(|_| Error::InvalidPath(format!("transition at index {i} is not a J matrix")))
    }

    /// All transitions of the path with the closure they inherit.
    pub fn transitions(&self) -> Result<TransitionSeq> {
        match self.closure {
            Closure::Finite => {
                let (lo, hi) = self.transition_range().expect("finite");
                let word = (lo..=hi).map(|i| self.transition_at(i)).collect::<Result<_>>()?;
                TransitionSeq::new(self.k, lo, word, false)
            }
            Closure::Periodic(p) | Closure::SkewPeriodic(p) => {
                let word = (0..p as i64).map(|t| self.transition_at(self.base + t)).collect::<Result<_>>()?;
                TransitionSeq::new(self.k, self.base, word, true)
            }
        }
    }

    /// Builds a path from a seed window at `base` and J-words to either side.
    ///
    /// `word_right[t]` becomes `J_{base+t}`; `word_left[t]` becomes
    /// `J_{base-1-t}` (applied as an inverse). For (skew-)periodic closures
    /// the right word must be exactly one period, the left word empty, and
    /// the word product must be `I` (resp. `(-1)^{k-1} I`).
    pub fn from_word(
        k: usize,
        seed: &IntMatrix,
        base: i64,
        word_right: &[JMatrix],
        word_left: &[JMatrix],
        closure: Closure,
    ) -> Result<Path> {
        check_k(k)?;
        if seed.rows() != k || seed.cols() != k {
            return Err(Error::Shape(format!("seed must be {k}x{k}")));
        }
        let d = seed.det()?;
        if !d.is_one() {
            return Err(Error::InvalidPath(format!("seed has determinant {d}")));
        }
        if word_right.iter().chain(word_left).any(|j| j.k() != k) {
            return Err(Error::Shape("J matrices of mixed dimension".into()));
        }
        if let Some(p) = closure.period() {
            if !word_left.is_empty() || word_right.len() != p {
                return Err(Error::InvalidPath(format!(
                    "a closed path of period {p} needs a right word of length {p} and no left word"
                )));
            }
            let prod = word_product(k, word_right);
            let want = match closure {
                Closure::Periodic(_) => IntMatrix::identity(k),
                _ => IntMatrix::identity(k).scale(&corner_sign(k)),
            };
            if prod != want {
                return Err(Error::InvalidPath(format!(
                    "word product {prod:?} does not close up the path with period {p}"
                )));
            }
        }
        let mut right: Vec<Vec<Int>> = seed.to_columns();
        let mut w = seed.clone();
        for j in word_right {
            let col = w.mul_vec(&j.last_column())?;
            right.push(col);
            w = IntMatrix::from_columns(&right[right.len() - k..])?;
        }
        let mut left: Vec<Vec<Int>> = Vec::new();
        let mut w = seed.clone();
        for j in word_left {
            w = w.mul(&j.expand().unimodular_inverse()?)?;
            left.push(w.column(0));
        }
        let new_base = base - left.len() as i64;
        left.reverse();
        left.extend(right);
        let mut columns = left;
        if let Some(p) = closure.period() {
            columns.truncate(p);
        }
        Path::new(k, new_base, columns, closure)
    }

    /// Builds the path with window `seed` at index `at` and the given transitions.
    ///
    /// Finite sequences produce finite paths covering every index reachable
    /// from `at`; cyclic sequences produce periodic or skew-periodic paths,
    /// decided by the product over one period.
    pub fn from_transitions(seed: &IntMatrix, at: i64, seq: &TransitionSeq) -> Result<Path> {
        let k = seq.k();
        if let Some(p) = seq.period() {
            let word: Vec<JMatrix> = (0..p as i64).map(|t| seq.get(at + t).cloned()).collect::<Result<_>>()?;
            let closure = closure_of_product(k, p, &word_product(k, &word))?;
            return Path::from_word(k, seed, at, &word, &[], closure);
        }
        let (lo, hi) = match seq.range() {
            Some(r) => r,
            None => (at, at - 1),
        };
        if at < lo || at > hi + 1 {
            return Err(Error::OutOfRange { index: at, lo, hi: hi + 1 });
        }
        let right: Vec<JMatrix> = (at..=hi).map(|i| seq.get(i).cloned()).collect::<Result<_>>()?;
        let left: Vec<JMatrix> = (lo..at).rev().map(|i| seq.get(i).cloned()).collect::<Result<_>>()?;
        Path::from_word(k, seed, at, &right, &left, Closure::Finite)
    }

    /// `Aγ`, for `A ∈ SL_k(ℤ)`.
    pub fn act(&self, a: &IntMatrix) -> Result<Path> {
        if a.rows() != self.k || a.cols() != self.k {
            return Err(Error::Shape(format!("acting matrix must be {0}x{0}", self.k)));
        }
        let d = a.det()?;
        if !d.is_one() {
            return Err(Error::NotUnimodular(d));
        }
        let columns = self.columns.iter().map(|c| a.mul_vec(c)).collect::<Result<_>>()?;
        Ok(Path { columns, ..self.clone() })
    }

    /// The translate `W_at^{-1} γ`, whose window at `at` is the identity.
    pub fn normalized_at(&self, at: i64) -> Result<Path> {
        self.act(&self.window(at)?.unimodular_inverse()?)
    }

    /// The translate with `(γ_1, .., γ_k) = I_k`.
    pub fn normalized(&self) -> Result<Path> {
        self.normalized_at(1)
    }

    /// The tilde path: seed `(γ_1, .., γ_k)^T` at index 1, transitions
    /// given by [`TransitionSeq::tilde`].
    pub fn tilde(&self) -> Result<Path> {
        let seed = self.window(1)?.transpose();
        let seq = self.transitions()?.tilde()?;
        Path::from_transitions(&seed, 1, &seq)
    }

    /// Indices at which both `γ_i` and `γ_{i+p}` can be compared across a full presentation.
    fn comparison_indices(&self, p: usize) -> Option<Vec<i64>> {
        match self.closure {
            Closure::Finite => {
                let (lo, hi) = self.range()?;
                if hi - lo + 1 < (p + self.k) as i64 {
                    return None;
                }
                Some((lo..=hi - p as i64).collect())
            }
            Closure::Periodic(q) | Closure::SkewPeriodic(q) => Some((self.base..self.base + 2 * q as i64).collect()),
        }
    }

    fn shifted_equal(&self, p: usize, sign: &Int) -> bool {
        if p == 0 {
            return false;
        }
        let Some(idx) = self.comparison_indices(p) else { return false };
        idx.into_iter().all(|i| match (self.column(i), self.column(i + p as i64)) {
            (Ok(a), Ok(b)) => a.iter().zip(&b).all(|(x, y)| &(x * sign) == y),
            _ => false,
        })
    }

    /// `γ_{i+p} = γ_i` on the whole presentation.
    pub fn is_periodic(&self, p: usize) -> bool {
        self.shifted_equal(p, &Int::one())
    }

    /// `γ_{i+p} = (-1)^{k-1} γ_i` on the whole presentation.
    pub fn is_skew_periodic(&self, p: usize) -> bool {
        self.shifted_equal(p, &corner_sign(self.k))
    }
}

/// Classifies a period product: `I` gives a periodic closure, `(-1)^{k-1} I`
/// a skew-periodic one; anything else cannot be presented as a closed path.
pub fn closure_of_product(k: usize, p: usize, prod: &IntMatrix) -> Result<Closure> {
    if prod.is_identity() {
        Ok(Closure::Periodic(p))
    } else if prod.scale(&corner_sign(k)).is_identity() {
        Ok(Closure::SkewPeriodic(p))
    } else {
        Err(Error::Precondition(format!(
            "transitions repeat with period {p} but their product {prod:?} is not ±I"
        )))
    }
}

/// Bridge words used by [`join_paths_with`]; `None` means "decompose".
#[derive(Clone, Debug, Default)]
pub struct JoinWords {
    pub forward: Option<Vec<JMatrix>>,
    pub back: Option<Vec<JMatrix>>,
}

/// The skew-periodic path through `γ_1..γ_m` and `δ_1..δ_n`.
pub fn join_paths(gamma: &Path, delta: &Path, m: usize, n: usize) -> Result<Path> {
    join_paths_with(gamma, delta, m, n, &JoinWords::default())
}

/// As [`join_paths`], optionally with prescribed bridge words.
///
/// One period is `(γ_1..γ_m, λ.., δ_1..δ_n, μ..)`: the λ columns bridge the
/// window `(γ_{m-k+1}..γ_m)` to `(δ_1..δ_k)` and the μ columns bridge
/// `(δ_{n-k+1}..δ_n)` back to `(-1)^{k-1}(γ_1..γ_k)`. A decomposed bridge
/// shorter than `k` is padded with `J_0^{2k} = I`.
pub fn join_paths_with(gamma: &Path, delta: &Path, m: usize, n: usize, words: &JoinWords) -> Result<Path> {
    let k = gamma.k();
    if delta.k() != k {
        return Err(Error::Shape("paths of different dimension".into()));
    }
    if m < k || n < k {
        return Err(Error::Precondition(format!("need m, n >= k = {k}")));
    }
    let gcols = (1..=m as i64).map(|i| gamma.column(i)).collect::<Result<Vec<_>>>()?;
    let dcols = (1..=n as i64).map(|i| delta.column(i)).collect::<Result<Vec<_>>>()?;
    let s = corner_sign(k);
    let from1 = IntMatrix::from_columns(&gcols[m - k..])?;
    let to1 = IntMatrix::from_columns(&dcols[..k])?;
    let from2 = IntMatrix::from_columns(&dcols[n - k..])?;
    let to2 = IntMatrix::from_columns(&gcols[..k])?.scale(&s);
    let forward = bridge(&from1, &to1, words.forward.as_deref())?;
    let back = bridge(&from2, &to2, words.back.as_deref())?;
    let mut cols = gcols;
    cols.extend(forward);
    cols.extend(dcols);
    cols.extend(back);
    let period = cols.len();
    Path::new(k, 1, cols, Closure::SkewPeriodic(period))
}

/// The intermediate columns of a word taking window `from` to window `to`.
fn bridge(from: &IntMatrix, to: &IntMatrix, word: Option<&[JMatrix]>) -> Result<Vec<Vec<Int>>> {
    let k = from.rows();
    let b = from.unimodular_inverse()?.mul(to)?;
    let mut word = match word {
        Some(w) => {
            if word_product(k, w) != b {
                return Err(Error::Precondition("prescribed bridge word has the wrong product".into()));
            }
            w.to_vec()
        }
        None => slk_to_j_word(&b)?,
    };
    if word.len() < k {
        if !word.is_empty() {
            return Err(Error::Precondition(format!("bridge word shorter than k = {k}")));
        }
        word = vec![JMatrix::zero(k); 2 * k];
    }
    let mut cols = from.to_columns();
    for j in &word {
        let w = IntMatrix::from_columns(&cols[cols.len() - k..])?;
        cols.push(w.mul_vec(&j.last_column())?);
    }
    let new = cols.split_off(k);
    debug_assert_eq!(IntMatrix::from_columns(&new[new.len() - k..]).ok().as_ref(), Some(to));
    Ok(new[..new.len() - k].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn expand_shape() {
        let j = JMatrix::from_i64(2, &[-1]).unwrap();
        assert_eq!(j.expand(), IntMatrix::from_array([[0, -1], [1, -1]]));
        assert_eq!(JMatrix::zero(3).expand(), IntMatrix::from_array([[0, 0, 1], [1, 0, 0], [0, 1, 0]]));
        let j4 = JMatrix::from_i64(4, &[5, -7, 2]).unwrap();
        assert_eq!(j4.expand().det().unwrap(), Int::one());
        assert_eq!(JMatrix::from_matrix(&j4.expand()).unwrap(), j4);
        assert!(JMatrix::from_matrix(&IntMatrix::identity(3)).is_err());
        assert!(JMatrix::new(1, vec![]).is_err());
    }

    #[test]
    fn transition_of_basis_path() {
        let g = Path::new(3, 1, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[1, 5, 2])], Closure::Finite)
            .unwrap();
        assert_eq!(g.transition_at(1).unwrap(), JMatrix::from_i64(3, &[5, 2]).unwrap());
        assert!(g.transition_at(2).is_err());
    }

    #[test]
    fn shift_path_has_zero_transitions() {
        // k = 3: the zero J matrix is a plain cyclic shift, so e1,e2,e3 repeat.
        let g = Path::new(3, 1, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])], Closure::Periodic(3)).unwrap();
        for i in -3..6 {
            assert_eq!(g.transition_at(i).unwrap(), JMatrix::zero(3));
        }
    }

    #[test]
    fn word_round_trip() {
        let word: Vec<JMatrix> = [[1, -2], [0, 3], [-1, 1], [2, 2]]
            .iter()
            .map(|c| JMatrix::from_i64(3, c).unwrap())
            .collect();
        let left = vec![JMatrix::from_i64(3, &[4, -1]).unwrap()];
        let g = Path::from_word(3, &IntMatrix::identity(3), 1, &word, &left, Closure::Finite).unwrap();
        assert_eq!(g.base_index(), 0);
        for (t, j) in word.iter().enumerate() {
            assert_eq!(&g.transition_at(1 + t as i64).unwrap(), j);
        }
        assert_eq!(g.transition_at(0).unwrap(), left[0]);
    }

    #[test]
    fn closed_words_are_checked() {
        let j0 = JMatrix::zero(2);
        // J0^2 = -I, so two zero J matrices close a skew path of period 2.
        let g = Path::from_word(2, &IntMatrix::identity(2), 1, &[j0.clone(), j0.clone()], &[], Closure::SkewPeriodic(2))
            .unwrap();
        assert!(g.is_skew_periodic(2));
        assert!(!g.is_periodic(2));
        assert!(g.is_periodic(4));
        assert!(Path::from_word(2, &IntMatrix::identity(2), 1, &[j0.clone(), j0], &[], Closure::Periodic(2)).is_err());
    }

    #[test]
    fn shear_words() {
        for k in 2..=5 {
            for i in 1..=k {
                for j in 1..=k {
                    if i == j {
                        continue;
                    }
                    for lam in [-2i64, 0, 3] {
                        let w = shear_to_j_word(k, i, j, &Int::from(lam)).unwrap();
                        let mut want = IntMatrix::identity(k);
                        want.set(i - 1, j - 1, Int::from(lam));
                        assert_eq!(word_product(k, &w), want, "k={k} i={i} j={j} λ={lam}");
                    }
                }
            }
        }
        assert!(shear_to_j_word(3, 2, 2, &Int::one()).is_err());
    }

    #[test]
    fn decomposition_of_small_matrices() {
        assert!(slk_to_j_word(&IntMatrix::identity(3)).unwrap().is_empty());
        let b = IntMatrix::from_array([[2, -1], [1, 0]]);
        assert_eq!(word_product(2, &slk_to_j_word(&b).unwrap()), b);
        assert!(slk_to_j_word(&IntMatrix::from_array([[0, 1], [1, 0]])).is_err());
    }

    #[test]
    fn tilde_for_k2_keeps_coefficients() {
        let word: Vec<JMatrix> = [3, -1, 2].iter().map(|&c| JMatrix::from_i64(2, &[c]).unwrap()).collect();
        let seed = IntMatrix::from_array([[1, 1], [0, 1]]);
        let g = Path::from_word(2, &seed, 1, &word, &[], Closure::Finite).unwrap();
        let t = g.tilde().unwrap();
        assert_eq!(t.window(1).unwrap(), seed.transpose());
        assert_eq!(t.transitions().unwrap().word(), g.transitions().unwrap().word());
    }

    #[test]
    fn act_preserves_transitions() {
        let word: Vec<JMatrix> = [[1, 2], [-1, 0], [3, 1]].iter().map(|c| JMatrix::from_i64(3, c).unwrap()).collect();
        let g = Path::from_word(3, &IntMatrix::identity(3), 1, &word, &[], Closure::Finite).unwrap();
        let a = IntMatrix::from_array([[1, 2, 0], [0, 1, 0], [3, 6, 1]]);
        let h = g.act(&a).unwrap();
        assert_eq!(h.transitions().unwrap(), g.transitions().unwrap());
        assert_eq!(h.normalized().unwrap(), g);
        assert!(g.act(&IntMatrix::from_array([[2, 0, 0], [0, 1, 0], [0, 0, 1]])).is_err());
    }
}
