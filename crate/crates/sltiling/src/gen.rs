//! Seeded random instances: unimodular matrices, J-words and closed paths.
//!
//! Used by the self-test, the acceptance harness and property tests; all
//! generators are deterministic given the RNG state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Int, IntMatrix, Shear};
use crate::paths::{corner_sign, Closure, JMatrix, Path};

pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coeff(rng: &mut Rand, bound: i64) -> Int {
    Int::from(rng.gen_range(-bound..=bound))
}

/// A random element of SL_k(ℤ) as a product of `count` shears with factors in `[-2, 2]`.
pub fn random_sl(k: usize, count: usize, rng: &mut Rand) -> IntMatrix {
    let mut m = IntMatrix::identity(k);
    for _ in 0..count {
        let row = rng.gen_range(0..k);
        let mut col = rng.gen_range(0..k - 1);
        if col >= row {
            col += 1;
        }
        m.apply_row_shear(&Shear { row, col, factor: coeff(rng, 2) });
    }
    m
}

pub fn random_word(k: usize, len: usize, bound: i64, rng: &mut Rand) -> Vec<JMatrix> {
    (0..len)
        .map(|_| JMatrix::new(k, (1..k).map(|_| coeff(rng, bound)).collect()).expect("k >= 2"))
        .collect()
}

/// A finite path with a random seed window and random transitions.
pub fn random_path(k: usize, len: usize, bound: i64, rng: &mut Rand) -> Result<Path> {
    let seed = random_sl(k, 2 * k, rng);
    let word = random_word(k, len.saturating_sub(k), bound, rng);
    Path::from_word(k, &seed, 1, &word, &[], Closure::Finite)
}

/// Solves `m c = rhs` over ℤ by Cramer's rule, if the solution is integral.
fn solve_integral(m: &IntMatrix, rhs: &[Int]) -> Option<Vec<Int>> {
    let d = m.det().ok()?;
    if d == Int::from(0) {
        return None;
    }
    let n = m.rows();
    let mut out = Vec::with_capacity(n);
    for q in 0..n {
        let mut mq = m.clone();
        for (r, v) in rhs.iter().enumerate() {
            mq.set(r, q, v.clone());
        }
        let num = mq.det().ok()?;
        if &num % &d != Int::from(0) {
            return None;
        }
        out.push(num / &d);
    }
    Some(out)
}

/// One attempt at a closed path of period `p` with seed `I_k` at index 1.
///
/// The first `p - k - 1` transitions are random; the last free one is
/// solved so that the seam windows through the closing columns
/// `sign · e_1, .., sign · e_k` all have determinant 1.
fn try_closed(k: usize, p: usize, bound: i64, sign: &Int, rng: &mut Rand) -> Option<Vec<Vec<Int>>> {
    let id = IntMatrix::identity(k);
    let mut cols: Vec<Vec<Int>> = id.to_columns();
    if p == k {
        return Some(cols);
    }
    for j in random_word(k, p - k - 1, bound, rng) {
        let w = IntMatrix::from_columns(&cols[cols.len() - k..]).ok()?;
        cols.push(w.mul_vec(&j.last_column()).ok()?);
    }
    // new column b = s w_1 + Σ_q c_q w_q, with W the current last window
    let w = IntMatrix::from_columns(&cols[cols.len() - k..]).ok()?;
    let target: Vec<Vec<Int>> = id.to_columns().iter().map(|e| e.iter().map(|x| x * sign).collect()).collect();
    let s = corner_sign(k);
    let mut m = IntMatrix::zeros(k - 1, k - 1);
    let mut rhs = Vec::with_capacity(k - 1);
    for t in 1..k {
        // window (w_{t+2}, .., w_k, b, f_1, .., f_t), linear in b
        let mut frame: Vec<Vec<Int>> = (t + 1..k).map(|q| w.column(q)).collect();
        let at = frame.len();
        frame.push(vec![Int::from(0); k]);
        frame.extend(target[..t].iter().cloned());
        let cof: Vec<Int> = (0..k)
            .map(|r| {
                let mut f = frame.clone();
                f[at] = id.column(r);
                IntMatrix::from_columns(&f).and_then(|x| x.det()).expect("square")
            })
            .collect();
        let apply = |v: &[Int]| -> Int { cof.iter().zip(v).map(|(a, b)| a * b).sum() };
        for q in 1..k {
            m.set(t - 1, q - 1, apply(&w.column(q)));
        }
        rhs.push(Int::from(1) - &s * apply(&w.column(0)));
    }
    let c = solve_integral(&m, &rhs)?;
    let mut last = vec![s.clone()];
    last.extend(c);
    cols.push(w.mul_vec(&last).ok()?);
    Some(cols)
}

/// A random closed path of period `p`, periodic or skew-periodic.
///
/// Every transition of the period has coefficients in `[-bound, bound]`;
/// the seed is a random element of SL_k(ℤ).
pub fn random_closed_path(k: usize, p: usize, bound: i64, skew: bool, rng: &mut Rand) -> Result<Path> {
    if p < k {
        return Err(Error::Precondition(format!("period {p} shorter than k = {k}")));
    }
    let sign = if skew { corner_sign(k) } else { Int::from(1) };
    let closure = if skew { Closure::SkewPeriodic(p) } else { Closure::Periodic(p) };
    let big = Int::from(bound);
    for _ in 0..200_000 {
        let Some(cols) = try_closed(k, p, bound, &sign, rng) else { continue };
        let Ok(path) = Path::new(k, 1, cols, closure) else { continue };
        let ok = path
            .transitions()
            .map(|seq| seq.word().iter().all(|j| j.coeffs().iter().all(|c| c <= &big && c >= &-&big)))
            .unwrap_or(false);
        if ok {
            let a = random_sl(k, 2 * k, rng);
            return path.act(&a);
        }
    }
    Err(Error::Precondition(format!("no closed path found for k = {k}, p = {p}, bound = {bound}")))
}

pub fn random_skew_path(k: usize, p: usize, bound: i64, rng: &mut Rand) -> Result<Path> {
    random_closed_path(k, p, bound, true, rng)
}

pub fn random_periodic_path(k: usize, p: usize, bound: i64, rng: &mut Rand) -> Result<Path> {
    random_closed_path(k, p, bound, false, rng)
}

/// A random k × n matrix with all cyclically consecutive minors equal to 1
/// (one period of a random skew-periodic path).
pub fn random_grassmann_point(k: usize, n: usize, bound: i64, rng: &mut Rand) -> Result<IntMatrix> {
    let path = random_skew_path(k, n, bound, rng)?;
    IntMatrix::from_columns(path.columns())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_paths_close() {
        let mut r = rng(7);
        for k in 2..=4 {
            for p in k..=8 {
                let g = random_skew_path(k, p, 3, &mut r).unwrap();
                assert!(g.is_skew_periodic(p), "k={k} p={p}");
                let h = random_periodic_path(k, p.max(k + 1), 3, &mut r);
                if let Ok(h) = h {
                    assert!(h.is_periodic(p.max(k + 1)));
                }
            }
        }
    }

    #[test]
    fn sl_is_unimodular() {
        let mut r = rng(1);
        for k in 2..=5 {
            assert_eq!(random_sl(k, 10, &mut r).det().unwrap(), Int::from(1));
        }
    }
}
