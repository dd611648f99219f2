//! JSON bundles of explicit modules, used as an on-disk cache between CLI invocations.

use super::Module;
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::rootdata::laurent::parse_rational;
use crate::rootdata::Weight;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

const FORMAT: &str = "twistinv-module-1";

fn matrix_to_json(m: &SparseMatrix) -> Value {
    Value::Array(m.triples().map(|(r, c, x)| json!([r, c, x.to_string()])).collect())
}

fn matrix_from_json(v: &Value, dim: usize) -> Result<SparseMatrix> {
    let bad = || Error::input("malformed sparse matrix in bundle");
    let mut triples = Vec::new();
    for t in v.as_array().ok_or_else(bad)? {
        let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(bad)?;
        let r = t[0].as_u64().ok_or_else(bad)? as usize;
        let c = t[1].as_u64().ok_or_else(bad)? as usize;
        if r >= dim || c >= dim {
            return Err(bad());
        }
        triples.push((r, c, parse_rational(t[2].as_str().ok_or_else(bad)?)?));
    }
    Ok(SparseMatrix::from_triples(dim, dim, triples))
}

fn weight_from_json(v: &Value) -> Result<Weight> {
    serde_json::from_value(v.clone()).map_err(|e| Error::input(format!("malformed weight in bundle: {e}")))
}

/// Serializes a module together with the group spec it was built for.
pub fn to_json(group: &str, m: &Module) -> Value {
    json!({
        "format": FORMAT,
        "group": group,
        "rank": m.rank(),
        "highest": m.highest(),
        "weights": m.weights(),
        "e": (0..m.rank()).map(|i| matrix_to_json(m.e(i))).collect::<Vec<_>>(),
        "f": (0..m.rank()).map(|i| matrix_to_json(m.f(i))).collect::<Vec<_>>(),
        "words": m.words(),
        "sigma_map": m.sigma_map().map(matrix_to_json),
    })
}

/// Inverse of [`to_json`]; returns the group spec and the module.
pub fn from_json(v: &Value) -> Result<(String, Module)> {
    if v["format"] != FORMAT {
        return Err(Error::input("not a module bundle"));
    }
    let group = v["group"].as_str().ok_or_else(|| Error::input("bundle lacks a group"))?.to_string();
    let rank = v["rank"].as_u64().ok_or_else(|| Error::input("bundle lacks a rank"))? as usize;
    let weights: Vec<Weight> = v["weights"]
        .as_array()
        .ok_or_else(|| Error::input("bundle lacks weights"))?
        .iter()
        .map(weight_from_json)
        .collect::<Result<_>>()?;
    let dim = weights.len();
    let mats = |key: &str| -> Result<Vec<SparseMatrix>> {
        v[key]
            .as_array()
            .ok_or_else(|| Error::input(format!("bundle lacks {key}")))?
            .iter()
            .map(|m| matrix_from_json(m, dim))
            .collect()
    };
    let highest = match &v["highest"] {
        Value::Null => None,
        h => Some(weight_from_json(h)?),
    };
    let words = match &v["words"] {
        Value::Null => None,
        w => Some(serde_json::from_value(w.clone()).map_err(|e| Error::input(format!("malformed words: {e}")))?),
    };
    let sigma_map = match &v["sigma_map"] {
        Value::Null => None,
        s => Some(matrix_from_json(s, dim)?),
    };
    let m = Module::from_parts(rank, weights, mats("e")?, mats("f")?, highest, words, sigma_map)?;
    Ok((group, m))
}

pub fn save(path: &Path, group: &str, m: &Module) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let text = serde_json::to_string(&to_json(group, m)).expect("bundle serializes");
    std::fs::write(path, text)?;
    Ok(())
}

pub fn load(path: &Path) -> Result<(String, Module)> {
    let text = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    from_json(&v)
}

/// Cache file name for the irreducible module of highest weight `lambda`.
pub fn cache_path(dir: &Path, group: &str, lambda: &Weight) -> PathBuf {
    let coords: Vec<String> = lambda.0.iter().map(i64::to_string).collect();
    dir.join(format!("{group}_{}.json", coords.join("_")))
}
