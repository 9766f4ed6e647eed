//! One JSON file per `(n, a, b)`.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

use super::SpanRecord;

pub fn path(dir: &Path, n: usize, a: usize, b: usize) -> PathBuf {
    dir.join(format!("n{n}_a{a}_b{b}.json"))
}

pub fn load(dir: &Path, n: usize, a: usize, b: usize) -> Result<Option<SpanRecord>> {
    let p = path(dir, n, a, b);
    let text = match fs::read_to_string(&p) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(Error::Cache(format!("{}: {e}", p.display()))),
    };
    let rec: SpanRecord = serde_json::from_str(&text).map_err(|e| Error::Cache(format!("{}: {e}", p.display())))?;
    if (rec.n, rec.a, rec.b) != (n, a, b) {
        return Err(Error::Cache(format!("{} holds data for another bi-degree", p.display())));
    }
    Ok(Some(rec))
}

pub fn store(dir: &Path, rec: &SpanRecord) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
    let p = path(dir, rec.n, rec.a, rec.b);
    let text = serde_json::to_string(rec).map_err(|e| Error::Cache(e.to_string()))?;
    // write then rename, so a concurrent reader never sees a partial file
    let tmp = p.with_extension("json.tmp");
    fs::write(&tmp, text).map_err(|e| Error::Cache(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, &p).map_err(|e| Error::Cache(format!("{}: {e}", p.display())))
}
