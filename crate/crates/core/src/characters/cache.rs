use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{check_prime, compute_table, default_prime, CharacterTable};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub const CACHE_VERSION: u32 = 1;

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "MWBOUND_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct CachedTable {
    version: u32,
    group_hash: String,
    order: usize,
    prime: String,
    classes: Vec<Vec<usize>>,
    values: Vec<Vec<String>>,
}

/// On-disk store of character tables, one JSON file per (group, prime).
#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    /// The cache named by `MWBOUND_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(TableCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, hash: &str, prime: u64) -> PathBuf {
        self.dir.join(format!("{hash}-{prime}.json"))
    }

    /// Stored table for `group` in `prime`, revalidated. Missing, stale, or
    /// corrupt entries yield `None`.
    pub fn load(&self, group: &Arc<FiniteGroup>, prime: u64) -> Option<CharacterTable> {
        let hash = group.canonical_hash();
        let path = self.path(&hash, prime);
        let text = fs::read_to_string(&path).ok()?;
        match decode(group, &hash, prime, &text) {
            Ok(t) => Some(t),
            Err(e) => {
                log::warn!("discarding cache entry {}: {e}", path.display());
                None
            }
        }
    }

    pub fn store(&self, table: &CharacterTable) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::Cache(format!("{}: {e}", self.dir.display())))?;
        let doc = CachedTable {
            version: CACHE_VERSION,
            group_hash: table.group_hash().to_string(),
            order: table.group().order(),
            prime: table.prime().to_string(),
            classes: table.classes().classes().to_vec(),
            values: table
                .values()
                .iter()
                .map(|row| row.iter().map(u64::to_string).collect())
                .collect(),
        };
        let text = serde_json::to_string(&doc).map_err(|e| Error::Cache(e.to_string()))?;
        let path = self.path(table.group_hash(), table.prime());
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text).map_err(|e| Error::Cache(format!("{}: {e}", tmp.display())))?;
        fs::rename(&tmp, &path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
    }

    pub fn character_table(&self, group: Arc<FiniteGroup>) -> Result<CharacterTable> {
        let prime = default_prime(&group)?;
        self.character_table_with_prime(group, prime)
    }

    pub fn character_table_with_prime(&self, group: Arc<FiniteGroup>, prime: u64) -> Result<CharacterTable> {
        check_prime(&group, prime)?;
        if let Some(t) = self.load(&group, prime) {
            return Ok(t);
        }
        let t = compute_table(group, prime)?;
        if let Err(e) = self.store(&t) {
            log::warn!("could not write character table cache: {e}");
        }
        Ok(t)
    }
}

fn decode(group: &Arc<FiniteGroup>, hash: &str, prime: u64, text: &str) -> Result<CharacterTable> {
    let doc: CachedTable = serde_json::from_str(text).map_err(|e| Error::Cache(e.to_string()))?;
    if doc.version != CACHE_VERSION {
        return Err(Error::Cache(format!("version {} is not {CACHE_VERSION}", doc.version)));
    }
    if doc.group_hash != hash || doc.order != group.order() {
        return Err(Error::Cache("entry belongs to a different group".into()));
    }
    if doc.prime.parse::<u64>().ok() != Some(prime) {
        return Err(Error::Cache("prime mismatch".into()));
    }
    let fresh = group.conjugacy_classes();
    if doc.classes != fresh.classes() {
        return Err(Error::Cache("class partition differs from the group's".into()));
    }
    let values = doc
        .values
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| match v.parse::<u64>() {
                    Ok(x) if x < prime => Ok(x),
                    _ => Err(Error::Cache(format!("bad residue {v:?}"))),
                })
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    // assemble re-runs the orthogonality checks.
    CharacterTable::assemble(group.clone(), prime, fresh, values).map_err(|e| Error::Cache(e.to_string()))
}
