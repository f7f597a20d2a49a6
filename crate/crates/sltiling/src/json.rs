//! JSON presentation of matrices, paths, tilings and friezes.
//!
//! Integers are written as decimal strings so that values of any size
//! survive every consumer; on input plain JSON integers are accepted too.
//! Objects use sorted keys, so output is byte-stable.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::friezes::{Frieze, Width};
use crate::linalg::{Int, IntMatrix};
use crate::paths::{Closure, JMatrix, Path, TransitionSeq};
use crate::tilings::Tiling;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn int_to_json(x: &Int) -> Value {
    Value::String(x.to_string())
}

pub fn int_from_json(v: &Value) -> Result<Int> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| perr(format!("not an integer: {s:?}"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string().parse().map_err(|_| perr("bad integer")),
        other => Err(perr(format!("expected an integer, found {other}"))),
    }
}

pub fn vec_to_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

pub fn vec_from_json(v: &Value) -> Result<Vec<Int>> {
    v.as_array().ok_or_else(|| perr("expected an array of integers"))?.iter().map(int_from_json).collect()
}

fn vecs_from_json(v: &Value) -> Result<Vec<Vec<Int>>> {
    v.as_array().ok_or_else(|| perr("expected an array of arrays"))?.iter().map(vec_from_json).collect()
}

/// A matrix as its array of rows.
pub fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vec_to_json(r)).collect())
}

pub fn matrix_from_json(v: &Value) -> Result<IntMatrix> {
    IntMatrix::from_rows(vecs_from_json(v)?)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(format!("missing field {key:?}")))
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?.as_u64().map(|x| x as usize).ok_or_else(|| perr(format!("field {key:?} must be a non-negative integer")))
}

fn i64_field(v: &Value, key: &str) -> Result<i64> {
    field(v, key)?.as_i64().ok_or_else(|| perr(format!("field {key:?} must be an integer")))
}

fn closure_to_json(c: Closure) -> Value {
    match c {
        Closure::Finite => json!({ "kind": "finite" }),
        Closure::Periodic(p) => json!({ "kind": "periodic", "period": p }),
        Closure::SkewPeriodic(p) => json!({ "kind": "skew_periodic", "period": p }),
    }
}

fn closure_from_json(v: &Value) -> Result<Closure> {
    let kind = field(v, "kind")?.as_str().ok_or_else(|| perr("closure kind must be a string"))?;
    match kind {
        "finite" => Ok(Closure::Finite),
        "periodic" => Ok(Closure::Periodic(usize_field(v, "period")?)),
        "skew_periodic" => Ok(Closure::SkewPeriodic(usize_field(v, "period")?)),
        other => Err(perr(format!("unknown closure kind {other:?}"))),
    }
}

/// `{"base", "closure", "columns", "k"}`; for closed paths `columns` is one period.
pub fn path_to_json(p: &Path) -> Value {
    json!({
        "k": p.k(),
        "base": p.base_index(),
        "closure": closure_to_json(p.closure()),
        "columns": Value::Array(p.columns().iter().map(|c| vec_to_json(c)).collect()),
    })
}

pub fn path_from_json(v: &Value) -> Result<Path> {
    path_from(v, true)
}

/// As [`path_from_json`] without the determinant checks, for validation reports.
pub fn path_from_json_unchecked(v: &Value) -> Result<Path> {
    path_from(v, false)
}

fn path_from(v: &Value, checked: bool) -> Result<Path> {
    let columns = vecs_from_json(field(v, "columns")?)?;
    let k = match v.get("k") {
        Some(_) => usize_field(v, "k")?,
        None => columns.first().map(Vec::len).ok_or_else(|| perr("a path needs columns"))?,
    };
    let base = if v.get("base").is_some() { i64_field(v, "base")? } else { 1 };
    let closure = match v.get("closure") {
        Some(c) => closure_from_json(c)?,
        None => Closure::Finite,
    };
    if checked {
        Path::new(k, base, columns, closure)
    } else {
        Path::new_unchecked(k, base, columns, closure)
    }
}

/// `{"base", "cyclic", "word"}` with each J matrix given by `j_2..j_k`.
pub fn seq_to_json(s: &TransitionSeq) -> Value {
    json!({
        "base": s.base(),
        "cyclic": s.is_cyclic(),
        "word": Value::Array(s.word().iter().map(|j| vec_to_json(j.coeffs())).collect()),
    })
}

pub fn seq_from_json(k: usize, v: &Value) -> Result<TransitionSeq> {
    let word = vecs_from_json(field(v, "word")?)?
        .into_iter()
        .map(|c| JMatrix::new(k, c))
        .collect::<Result<Vec<_>>>()?;
    let cyclic = field(v, "cyclic")?.as_bool().ok_or_else(|| perr("field \"cyclic\" must be a boolean"))?;
    TransitionSeq::new(k, i64_field(v, "base")?, word, cyclic)
}

/// `{"central", "cols", "k", "rows"}`: the block `M_{1,1}` with the
/// horizontal (`cols`) and vertical (`rows`) transitions.
pub fn tiling_to_json(t: &Tiling) -> Value {
    json!({
        "k": t.k(),
        "central": matrix_to_json(t.central()),
        "cols": seq_to_json(t.col_transitions()),
        "rows": seq_to_json(t.row_transitions()),
    })
}

pub fn tiling_from_json(v: &Value) -> Result<Tiling> {
    let central = matrix_from_json(field(v, "central")?)?;
    let k = central.rows();
    if v.get("k").is_some() && usize_field(v, "k")? != k {
        return Err(perr("field \"k\" disagrees with the central block"));
    }
    Tiling::new(central, seq_from_json(k, field(v, "rows")?)?, seq_from_json(k, field(v, "cols")?)?)
}

/// `{"k", "n", "rows", "width"}` for type (k,n); infinite friezes carry
/// `"width": "infinite"` and `"start"` instead of `"n"`.
pub fn frieze_to_json(f: &Frieze) -> Value {
    let mut m = Map::new();
    m.insert("k".into(), json!(f.k()));
    m.insert("rows".into(), Value::Array(f.rows().iter().map(|r| vec_to_json(r)).collect()));
    match f.width() {
        Width::Finite(w) => {
            m.insert("width".into(), json!(w));
            m.insert("n".into(), json!(f.n()));
        }
        Width::Infinite => {
            m.insert("width".into(), json!("infinite"));
            m.insert("start".into(), json!(f.start()));
        }
    }
    Value::Object(m)
}

pub fn frieze_from_json(v: &Value) -> Result<Frieze> {
    frieze_from(v, true)
}

/// As [`frieze_from_json`] without validating finite friezes.
pub fn frieze_from_json_unchecked(v: &Value) -> Result<Frieze> {
    frieze_from(v, false)
}

fn frieze_from(v: &Value, checked: bool) -> Result<Frieze> {
    let k = usize_field(v, "k")?;
    let rows = vecs_from_json(field(v, "rows")?)?;
    match field(v, "width")? {
        Value::String(s) if s == "infinite" => {
            let start = if v.get("start").is_some() { i64_field(v, "start")? } else { 1 };
            Frieze::infinite(k, start, rows)
        }
        w => {
            let f = if checked { Frieze::finite(k, rows)? } else { Frieze::finite_unchecked(k, rows)? };
            if w.as_u64() != Some(f.rows().len() as u64) {
                return Err(perr("field \"width\" disagrees with the number of rows"));
            }
            if v.get("n").is_some() && Some(usize_field(v, "n")?) != f.n() {
                return Err(perr("field \"n\" is not width + k + 1"));
            }
            Ok(f)
        }
    }
}

/// Serializes with sorted keys and a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn to_string_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| perr(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::friezes::plucker_frieze_eval;
    use crate::gen;
    use crate::tilings::phi;

    #[test]
    fn round_trips() {
        let mut r = gen::rng(6);
        let g = gen::random_skew_path(3, 6, 3, &mut r).unwrap();
        let d = gen::random_path(3, 8, 3, &mut r).unwrap();
        for p in [&g, &d] {
            let text = to_string(&path_to_json(p));
            assert_eq!(&path_from_json(&parse(&text).unwrap()).unwrap(), p);
        }
        let t = phi(&g, &d).unwrap();
        let back = tiling_from_json(&parse(&to_string(&tiling_to_json(&t))).unwrap()).unwrap();
        assert_eq!(back, t);
        let a = gen::random_grassmann_point(3, 7, 2, &mut r).unwrap();
        let f = plucker_frieze_eval(&a).unwrap();
        assert_eq!(frieze_from_json(&frieze_to_json(&f)).unwrap(), f);
        assert_eq!(matrix_from_json(&matrix_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn output_is_stable_and_sorted() {
        let p = Path::new(2, 1, vec![vec![Int::from(1), Int::from(0)], vec![Int::from(0), Int::from(1)]], Closure::Finite)
            .unwrap();
        assert_eq!(
            to_string(&path_to_json(&p)),
            "{\"base\":1,\"closure\":{\"kind\":\"finite\"},\"columns\":[[\"1\",\"0\"],[\"0\",\"1\"]],\"k\":2}\n"
        );
    }

    #[test]
    fn accepts_plain_numbers_and_rejects_junk() {
        let v = parse(r#"{"columns": [[1, 0], [0, 1], ["-1", 1]]}"#).unwrap();
        assert_eq!(path_from_json(&v).unwrap().columns().len(), 3);
        assert!(path_from_json(&parse(r#"{"columns": [[1, 0], ["x", 1]]}"#).unwrap()).is_err());
        assert!(int_from_json(&json!(1.5)).is_err());
    }
}
