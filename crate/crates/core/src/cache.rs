//! Structure constants on disk: one JSON document per degree,
//!
//! ```json
//! {"n": 3, "products": [{"a": "2,1", "b": "2,1", "result": {"2,1": "1", "1,1,1": "1"}}]}
//! ```
//!
//! Coefficients are decimal strings.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::charring::{pair_index, StructureConstants};
use crate::error::{Error, Result};
use crate::partitions::{Partition, PartitionBasis};

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "LOEWY_CACHE_DIR";

#[derive(Debug, Serialize, Deserialize)]
struct CacheDoc {
    n: usize,
    products: Vec<ProductEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ProductEntry {
    a: String,
    b: String,
    result: Map<String, Value>,
}

pub fn cache_file(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("phi_products_n{n}.json"))
}

pub fn to_json(sc: &StructureConstants) -> String {
    let basis = sc.basis();
    let products = sc
        .pairs()
        .map(|(i, j)| ProductEntry {
            a: basis.get(i).to_string(),
            b: basis.get(j).to_string(),
            result: sc
                .terms(i, j)
                .iter()
                .map(|&(k, c)| (basis.get(k).to_string(), Value::String(c.to_string())))
                .collect(),
        })
        .collect();
    let doc = CacheDoc {
        n: sc.n(),
        products,
    };
    serde_json::to_string(&doc).expect("cache serializes")
}

pub fn from_json(text: &str) -> Result<StructureConstants> {
    let doc: CacheDoc = serde_json::from_str(text).map_err(|e| Error::Cache(e.to_string()))?;
    let n = doc.n;
    let basis = PartitionBasis::new(n);
    let d = basis.len();
    let position = |s: &str| -> Result<usize> {
        let lambda: Partition = s.parse()?;
        basis
            .index_of(&lambda)
            .ok_or_else(|| Error::Cache(format!("{s} is not a partition of {n}")))
    };
    let mut products: Vec<Option<Vec<(usize, u64)>>> = vec![None; d * (d + 1) / 2];
    for entry in doc.products {
        let slot = pair_index(position(&entry.a)?, position(&entry.b)?, d);
        let mut terms = entry
            .result
            .iter()
            .map(|(k, v)| {
                let c = match v {
                    Value::String(s) => s.parse::<u64>().ok(),
                    Value::Number(x) => x.as_u64(),
                    _ => None,
                }
                .filter(|&c| c > 0)
                .ok_or_else(|| Error::Cache(format!("bad coefficient {v} for {k}")))?;
                Ok((position(k)?, c))
            })
            .collect::<Result<Vec<_>>>()?;
        terms.sort_unstable();
        if products[slot].replace(terms).is_some() {
            return Err(Error::Cache(format!(
                "duplicate pair ({}, {})",
                entry.a, entry.b
            )));
        }
    }
    let products = products
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Cache(format!("missing products for n={n}")))?;
    StructureConstants::from_products(n, products)
}

pub fn write(sc: &StructureConstants, path: &Path) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| Error::Io(format!("{}: {e}", parent.display())))?;
    }
    fs::write(path, to_json(sc)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read(path: &Path) -> Result<StructureConstants> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    from_json(&text)
}

/// Uses the cached table for `n` in `dir` if present, otherwise computes and
/// writes it. The table becomes the process-wide one for `n`.
pub fn load_or_compute(dir: &Path, n: usize) -> Result<Arc<StructureConstants>> {
    let path = cache_file(dir, n);
    if path.exists() {
        let sc = read(&path)?;
        if sc.n() != n {
            return Err(Error::Cache(format!(
                "{} holds degree {}, expected {n}",
                path.display(),
                sc.n()
            )));
        }
        Ok(StructureConstants::install(sc))
    } else {
        let sc = StructureConstants::for_degree(n)?;
        write(&sc, &path)?;
        Ok(sc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for n in 1..=6 {
            let sc = StructureConstants::compute(n).unwrap();
            let back = from_json(&to_json(&sc)).unwrap();
            assert_eq!(back, sc);
        }
    }

    #[test]
    fn format_matches_schema() {
        let sc = StructureConstants::compute(3).unwrap();
        let text = to_json(&sc);
        assert!(text.starts_with(r#"{"n":3,"products":[{"a":"3","b":"3","result":{"3":"1"}}"#));
        assert!(text.contains(r#"{"a":"2,1","b":"2,1","result":{"2,1":"1","1,1,1":"1"}}"#));
    }

    #[test]
    fn rejects_incomplete_or_bad() {
        assert!(matches!(
            from_json(r#"{"n":2,"products":[]}"#),
            Err(Error::Cache(_))
        ));
        let bad = r#"{"n":1,"products":[{"a":"1","b":"1","result":{"1":"x"}}]}"#;
        assert!(matches!(from_json(bad), Err(Error::Cache(_))));
        assert!(from_json("not json").is_err());
        let ok = r#"{"n":1,"products":[{"a":"1","b":"1","result":{"1":"1"}}]}"#;
        assert_eq!(
            from_json(ok).unwrap(),
            StructureConstants::compute(1).unwrap()
        );
    }

    #[test]
    fn load_or_compute_writes_then_reads() {
        let dir = tempfile::tempdir().unwrap();
        let first = load_or_compute(dir.path(), 4).unwrap();
        assert!(cache_file(dir.path(), 4).exists());
        let reread = read(&cache_file(dir.path(), 4)).unwrap();
        assert_eq!(*first, reread);
    }
}
