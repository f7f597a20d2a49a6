//! Positivity: sign alternation of k = 3 paths, the quiddity criterion and
//! bounded enumeration of friezes of type (k, n) through their quiddities.

use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::friezes::{is_positive_quiddity, phi_iota, plucker_frieze_eval, quiddity_sequence, Frieze};
use crate::linalg::{det_columns, Int, IntMatrix};
use crate::paths::{Closure, Path};
use crate::tilings::Tiling;

/// Result of [`alternates_in_sign`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alternation {
    /// Indices checked (outside the identity block).
    pub checked: Vec<i64>,
    /// Indices whose column is not of sign pattern (+, -, +).
    pub failures: Vec<i64>,
}

impl Alternation {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Whether every column outside the normalized identity block has
/// `x > 0`, `y < 0`, `z > 0`.
///
/// The path is first normalized so that `(γ_1, γ_2, γ_3) = I_3`. For
/// closed paths of period m one period `4..=m` is checked (indices
/// `≡ 1, 2, 3 mod m` are exempt); finite paths are checked on their range.
pub fn alternates_in_sign(gamma: &Path) -> Result<Alternation> {
    if gamma.k() != 3 {
        return Err(Error::Dimension(gamma.k()));
    }
    let g = gamma.normalized()?;
    let checked: Vec<i64> = match g.closure().period() {
        Some(m) => (4..=m as i64).collect(),
        None => {
            let (lo, hi) = g.range().expect("finite");
            (lo..=hi).filter(|i| !(1..=3).contains(i)).collect()
        }
    };
    let mut failures = Vec::new();
    for &i in &checked {
        let c = g.column(i)?;
        if !(c[0].is_positive() && c[1].is_negative() && c[2].is_positive()) {
            failures.push(i);
        }
    }
    Ok(Alternation { checked, failures })
}

/// The sign-alternating path whose frieze is not positive.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub path: Path,
    pub tiling: Tiling,
    /// Tiling coordinates of the witness entry.
    pub witness: (i64, i64),
    pub value: Int,
}

/// The 7-periodic k = 3 path `e_1, e_2, e_3, (1,-2,1), (1,-1,1), (1,-3,2), (1,-2,1)`:
/// it alternates in sign, yet `Φ_ι(γ)` has the entry
/// `m_{3,6} = det(γ_3, γ_4, γ_6) = -1`.
pub fn alternating_converse_counterexample() -> Result<Counterexample> {
    let cols: Vec<Vec<Int>> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -2, 1], [1, -1, 1], [1, -3, 2], [1, -2, 1]]
        .iter()
        .map(|c| c.iter().map(|&x| Int::from(x)).collect())
        .collect();
    let path = Path::new(3, 1, cols, Closure::Periodic(7))?;
    let tiling = phi_iota(&path)?;
    let witness = (3, 6);
    let value = tiling.entry(witness.0, witness.1)?;
    Ok(Counterexample { path, tiling, witness, value })
}

/// Where the quiddity criterion for positivity is claimed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Claimed,
    /// Type (5,8): claimed except for the all-ones frieze.
    ClaimedWithException,
    NoClaim,
}

pub fn theorem_scope(k: usize, n: usize) -> Scope {
    if n < k + 2 {
        return Scope::NoClaim;
    }
    match (k, n) {
        (5, 8) => Scope::ClaimedWithException,
        (2, n) if n <= 9 => Scope::Claimed,
        (3 | 6, n) if n <= 8 => Scope::Claimed,
        (4 | 5, n) if n <= 7 => Scope::Claimed,
        _ => Scope::NoClaim,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Frieze positivity and quiddity positivity agree.
    Equivalent,
    /// The documented (5,8) all-ones exception: positive frieze, quiddity with zeros.
    Exception,
    /// They disagree inside the claimed scope.
    Violated,
    /// Outside the claimed scope; both predicates are still reported.
    NoClaim,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub k: usize,
    pub n: usize,
    pub frieze_positive: bool,
    pub quiddity_positive: bool,
    pub verdict: Verdict,
}

fn is_all_ones(f: &Frieze) -> bool {
    f.rows().iter().flatten().all(|x| x.is_one())
}

pub fn positivity_equivalence_check(f: &Frieze) -> Result<EquivalenceReport> {
    let n = f.n().ok_or_else(|| Error::Precondition("the quiddity criterion concerns friezes of type (k,n)".into()))?;
    let k = f.k();
    let frieze_positive = f.is_positive();
    let quiddity_positive = is_positive_quiddity(&quiddity_sequence(f)?);
    let agree = frieze_positive == quiddity_positive;
    let verdict = match theorem_scope(k, n) {
        Scope::NoClaim => Verdict::NoClaim,
        Scope::ClaimedWithException if is_all_ones(f) => Verdict::Exception,
        _ if agree => Verdict::Equivalent,
        _ => Verdict::Violated,
    };
    Ok(EquivalenceReport { k, n, frieze_positive, quiddity_positive, verdict })
}

/// Parameters of a frieze search over quiddity sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Search {
    pub k: usize,
    pub n: usize,
    /// Range of every entry of the free quiddity vectors `q_1..q_{n-k}`.
    pub lower: i64,
    pub bound: i64,
    /// Keep only friezes with positive entries (and prune on them).
    pub positive_frieze: bool,
    /// Keep only friezes whose whole quiddity sequence is positive.
    pub positive_quiddity: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Search {
    /// Positive friezes with free quiddity entries in `1..=bound`.
    pub fn positive(k: usize, n: usize, bound: i64) -> Self {
        Search { k, n, lower: 1, bound, positive_frieze: true, positive_quiddity: false, jobs: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// Every frieze satisfying the filters was found.
    Exact,
    /// Every frieze whose free quiddity vectors lie in the search box was found.
    Bounded,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub search: Search,
    /// Sorted by quiddity sequence.
    pub friezes: Vec<Frieze>,
    pub completeness: Completeness,
}

/// Enumerates positive friezes of type `(k, n)`.
///
/// For k = 2 the quiddities of a positive frieze lie in `1..=n-2`, so the
/// result is exact once `bound >= n - 2`. For k >= 3 no bound is known and
/// the result is complete only relative to `bound`.
///
/// ```
/// use sltiling::positivity::enumerate_positive_friezes;
/// assert_eq!(enumerate_positive_friezes(2, 5, 3).unwrap().friezes.len(), 5);
/// ```
pub fn enumerate_positive_friezes(k: usize, n: usize, bound: i64) -> Result<Enumeration> {
    search_friezes(Search::positive(k, n, bound))
}

pub fn search_friezes(search: Search) -> Result<Enumeration> {
    let Search { k, n, lower, bound, .. } = search;
    crate::paths::check_k(k)?;
    if n < k + 2 {
        return Err(Error::Precondition(format!("type ({k},{n}) needs n > k + 1")));
    }
    if lower > bound {
        return Err(Error::Precondition(format!("empty search range {lower}..={bound}")));
    }
    let run = || -> Result<Vec<Frieze>> {
        let first = Dfs::new(search).candidates();
        let parts: Vec<Result<Vec<(Vec<Vec<Int>>, Frieze)>>> = first
            .par_iter()
            .map(|q| {
                let mut dfs = Dfs::new(search);
                let mut out = Vec::new();
                dfs.descend(q, &mut out)?;
                Ok(out)
            })
            .collect();
        let mut all = Vec::new();
        for p in parts {
            all.extend(p?);
        }
        all.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(all.into_iter().map(|(_, f)| f).collect())
    };
    let friezes = match search.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let exact = k == 2 && search.positive_frieze && lower <= 1 && bound >= n as i64 - 2;
    Ok(Enumeration { search, friezes, completeness: if exact { Completeness::Exact } else { Completeness::Bounded } })
}

/// Exact determinant of small i128 columns, `None` on overflow.
fn det_small(cols: &[&[i128]]) -> Option<i128> {
    let n = cols.len();
    let mut m: Vec<Vec<i128>> = (0..n).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for p in 0..n {
        if m[p][p] == 0 {
            let Some(s) = (p + 1..n).find(|&r| m[r][p] != 0) else { return Some(0) };
            m.swap(p, s);
            sign = -sign;
        }
        for r in p + 1..n {
            for c in p + 1..n {
                let a = m[r][c].checked_mul(m[p][p])?;
                let b = m[r][p].checked_mul(m[p][c])?;
                m[r][c] = a.checked_sub(b)? / prev;
            }
        }
        prev = m[p][p];
    }
    Some(sign * m[n - 1][n - 1])
}

/// `a + b·q` must be positive, or equal to 1 when `exact`.
struct Constraint {
    a: i128,
    b: Vec<i128>,
    exact: bool,
}

enum Closing {
    Unique(Vec<i64>),
    None,
    /// Degenerate system; fall back to trying every vector.
    Singular,
}

/// The cofactor vector of slot `at`: `det(frame with x at at) = cof · x`.
fn cofactors(frame: &[Vec<i128>], at: usize) -> Option<Vec<i128>> {
    let k = frame.len();
    (0..k)
        .map(|r| {
            let mut f = frame.to_vec();
            f[at] = (0..k).map(|x| i128::from(x == r)).collect();
            let refs: Vec<&[i128]> = f.iter().map(Vec::as_slice).collect();
            det_small(&refs)
        })
        .collect()
}

struct Dfs {
    s: Search,
    sign: i128,
    cols: Vec<Vec<i128>>,
    quiddity: Vec<Vec<i64>>,
}

impl Dfs {
    fn new(s: Search) -> Self {
        let k = s.k;
        let cols = (0..k).map(|i| (0..k).map(|r| i128::from(r == i)).collect()).collect();
        Dfs { s, sign: if k % 2 == 1 { 1 } else { -1 }, cols, quiddity: Vec::new() }
    }

    /// Column at 1-based index `i`, through the skew closure beyond n.
    fn col(&self, i: usize) -> Vec<i128> {
        let n = self.s.n;
        if i <= n {
            self.cols[i - 1].clone()
        } else {
            self.cols[i - n - 1].iter().map(|x| x * self.sign).collect()
        }
    }

    fn det(&self, idx: &[usize]) -> Int {
        let cs: Vec<Vec<i128>> = idx.iter().map(|&i| self.col(i)).collect();
        let refs: Vec<&[i128]> = cs.iter().map(Vec::as_slice).collect();
        match det_small(&refs) {
            Some(d) => Int::from(d),
            None => {
                let big: Vec<Vec<Int>> = cs.iter().map(|c| c.iter().map(|&x| Int::from(x)).collect()).collect();
                let refs: Vec<&[Int]> = big.iter().map(Vec::as_slice).collect();
                det_columns(&refs)
            }
        }
    }


    /// Adds γ_{d+k} from the quiddity vector `q = q_d` (d = 1-based depth).
    fn push(&mut self, q: &[i64]) {
        let k = self.s.k;
        let d = self.cols.len() - k + 1;
        let mut v: Vec<i128> = self.cols[d - 1].iter().map(|x| x * self.sign).collect();
        for (t, &qt) in q.iter().enumerate() {
            // q entry t is (-1)^{k-2-t} j_{d, t+2}
            let j = if (k - 2 - t) % 2 == 0 { qt as i128 } else { -(qt as i128) };
            for (r, x) in v.iter_mut().enumerate() {
                *x += j * self.cols[d + t][r];
            }
        }
        self.cols.push(v);
        self.quiddity.push(q.to_vec());
    }

    fn pop(&mut self) {
        self.cols.pop();
        self.quiddity.pop();
    }

    /// Whether column `c` is determined once `len` columns are placed.
    fn known(&self, c: usize, len: usize) -> bool {
        c <= len || (c > self.s.n && c - self.s.n <= len)
    }

    /// Frieze entries `m_{i,j}` (one per residue of `i`) whose columns involve
    /// column `m` or its closure image `m + n`, as `(columns, exact)`;
    /// `exact` entries must be 1, the others positive.
    fn entries_through(&self, m: usize, placed: usize) -> Vec<(Vec<usize>, bool)> {
        let (k, n) = (self.s.k, self.s.n);
        let mut out = Vec::new();
        for i in 1..=n {
            for dist in k..n {
                let exact = dist == n - 1;
                if !exact && !self.s.positive_frieze {
                    continue;
                }
                let mut idx: Vec<usize> = (i..i + k - 1).collect();
                idx.push(i + dist);
                let hits = idx.iter().filter(|&&c| c == m || c == m + n).count();
                if hits > 0 && idx.iter().all(|&c| c == m || c == m + n || self.known(c, placed)) {
                    out.push((idx, exact));
                }
            }
        }
        out
    }

    /// Entries through the column just added that are forced or must be positive.
    fn admissible(&self) -> bool {
        let m = self.cols.len();
        self.entries_through(m, m).into_iter().all(|(idx, exact)| {
            let cs: Vec<Vec<i128>> = idx.iter().map(|&c| self.col(c)).collect();
            let refs: Vec<&[i128]> = cs.iter().map(Vec::as_slice).collect();
            match det_small(&refs) {
                Some(v) if exact => v == 1,
                Some(v) => v > 0,
                None => true,
            }
        })
    }

    fn descend(&mut self, q: &[i64], out: &mut Vec<(Vec<Vec<Int>>, Frieze)>) -> Result<()> {
        self.push(q);
        if self.admissible() {
            if self.cols.len() == self.s.n {
                self.leaf(out)?;
            } else if self.cols.len() + 1 == self.s.n {
                match self.closing_vector() {
                    Closing::Unique(last) => self.descend(&last, out)?,
                    Closing::None => {}
                    Closing::Singular => {
                        for next in self.candidates() {
                            self.descend(&next, out)?;
                        }
                    }
                }
            } else {
                for next in self.candidates() {
                    self.descend(&next, out)?;
                }
            }
        }
        self.pop();
        Ok(())
    }

    /// Quiddity vectors for the next column that can satisfy its constraints.
    ///
    /// Every entry `m_{i,m}` of the new column is affine in `q`, so the box
    /// is searched coordinate by coordinate, cutting a branch as soon as
    /// some constraint is out of reach of the remaining coordinates.
    fn candidates(&self) -> Vec<Vec<i64>> {
        let (k, n) = (self.s.k, self.s.n);
        let m = self.cols.len() + 1;
        let d = m - k;
        let mut cons = Vec::new();
        for (idx, exact) in self.entries_through(m, m - 1) {
            // only entries affine in the new column constrain q linearly
            let hits: Vec<usize> = (0..k).filter(|&p| idx[p] == m || idx[p] == m + n).collect();
            if hits.len() != 1 {
                continue;
            }
            let at = hits[0];
            let factor = if idx[at] == m { 1 } else { self.sign };
            let frame: Vec<Vec<i128>> = idx.iter().map(|&c| if c == idx[at] { vec![0; k] } else { self.col(c) }).collect();
            let Some(cof) = cofactors(&frame, at) else { continue };
            let eval = |c: usize| -> i128 { factor * cof.iter().zip(&self.cols[c - 1]).map(|(x, y)| x * y).sum::<i128>() };
            let a = self.sign * eval(d);
            let b: Vec<i128> = (0..k - 1)
                .map(|t| {
                    let sg = if (k - 2 - t) % 2 == 0 { 1 } else { -1 };
                    sg * eval(d + t + 1)
                })
                .collect();
            cons.push(Constraint { a, b, exact });
        }
        let mut out = Vec::new();
        let mut q = Vec::with_capacity(k - 1);
        let partial = vec![0i128; cons.len()];
        self.extend(&cons, &mut q, partial, &mut out);
        out
    }

    fn extend(&self, cons: &[Constraint], q: &mut Vec<i64>, partial: Vec<i128>, out: &mut Vec<Vec<i64>>) {
        let (lo, hi) = (i128::from(self.s.lower), i128::from(self.s.bound));
        let t = q.len();
        let len = self.s.k - 1;
        if t == len {
            out.push(q.clone());
            return;
        }
        'x: for x in self.s.lower..=self.s.bound {
            let mut next = partial.clone();
            for (c, p) in cons.iter().zip(next.iter_mut()) {
                *p += c.b[t] * i128::from(x);
                let (mut min, mut max) = (c.a + *p, c.a + *p);
                for &bu in &c.b[t + 1..] {
                    min += (bu * lo).min(bu * hi);
                    max += (bu * lo).max(bu * hi);
                }
                let ok = if c.exact { min <= 1 && 1 <= max } else { max > 0 };
                if !ok {
                    continue 'x;
                }
            }
            q.push(x);
            self.extend(cons, q, next, out);
            q.pop();
        }
    }

    /// The last free quiddity vector, solved from the seam conditions.
    ///
    /// Each seam window `(γ_i..γ_n, s e_1..)` is linear in `γ_n`, which is
    /// affine in `q_{n-k}`: a `(k-1) × (k-1)` system solved by Cramer's rule.
    fn closing_vector(&self) -> Closing {
        let (k, n) = (self.s.k, self.s.n);
        let d = self.cols.len() - k + 1;
        let base: Vec<i128> = self.cols[d - 1].iter().map(|x| x * self.sign).collect();
        let dirs: Vec<Vec<i128>> = (0..k - 1)
            .map(|t| {
                let j = if (k - 2 - t) % 2 == 0 { 1 } else { -1 };
                self.cols[d + t].iter().map(|x| x * j).collect()
            })
            .collect();
        let mut m = vec![vec![0i128; k - 1]; k - 1];
        let mut rhs = vec![0i128; k - 1];
        for (row, i) in (n - k + 2..=n).enumerate() {
            let frame: Vec<Vec<i128>> = (i..i + k).map(|c| if c == n { vec![0; k] } else { self.col(c) }).collect();
            let at = n - i;
            let cof: Option<Vec<i128>> = (0..k)
                .map(|r| {
                    let mut f = frame.clone();
                    f[at] = (0..k).map(|x| i128::from(x == r)).collect();
                    let refs: Vec<&[i128]> = f.iter().map(Vec::as_slice).collect();
                    det_small(&refs)
                })
                .collect();
            let Some(cof) = cof else { return Closing::Singular };
            let apply = |v: &[i128]| -> i128 { cof.iter().zip(v).map(|(a, b)| a * b).sum() };
            for (t, w) in dirs.iter().enumerate() {
                m[row][t] = apply(w);
            }
            rhs[row] = 1 - apply(&base);
        }
        let cols_of = |mm: &[Vec<i128>]| -> Vec<Vec<i128>> { (0..k - 1).map(|c| mm.iter().map(|r| r[c]).collect()).collect() };
        let det = |mm: &[Vec<i128>]| {
            let cs = cols_of(mm);
            let refs: Vec<&[i128]> = cs.iter().map(Vec::as_slice).collect();
            det_small(&refs)
        };
        let Some(dm) = det(&m) else { return Closing::Singular };
        if dm == 0 {
            return Closing::Singular;
        }
        let mut q = Vec::with_capacity(k - 1);
        for t in 0..k - 1 {
            let mut mt = m.clone();
            for (row, r) in mt.iter_mut().zip(&rhs) {
                row[t] = *r;
            }
            let Some(num) = det(&mt) else { return Closing::Singular };
            if num % dm != 0 {
                return Closing::None;
            }
            let x = num / dm;
            if x < i128::from(self.s.lower) || x > i128::from(self.s.bound) {
                return Closing::None;
            }
            q.push(x as i64);
        }
        Closing::Unique(q)
    }

    fn leaf(&self, out: &mut Vec<(Vec<Vec<Int>>, Frieze)>) -> Result<()> {
        let (k, n) = (self.s.k, self.s.n);
        // windows through the seam must be unimodular
        for i in n - k + 2..=n {
            let idx: Vec<usize> = (i..i + k).collect();
            if !self.det(&idx).is_one() {
                return Ok(());
            }
        }
        let cols: Vec<Vec<Int>> = self.cols.iter().map(|c| c.iter().map(|&x| Int::from(x)).collect()).collect();
        let a = IntMatrix::from_columns(&cols)?;
        let f = plucker_frieze_eval(&a)?;
        if self.s.positive_frieze && !f.is_positive() {
            return Ok(());
        }
        let q = quiddity_sequence(&f)?;
        debug_assert!(q.iter().zip(&self.quiddity).all(|(a, b)| a.iter().zip(b).all(|(x, &y)| *x == Int::from(y))));
        if self.s.positive_quiddity && !is_positive_quiddity(&q) {
            return Ok(());
        }
        out.push((q, f));
        Ok(())
    }
}
