//! Append-only JSON-lines cache of weight records.
//!
//! Each line is `{"schema":N,"record":{…}}`. Lines with another schema, bad
//! JSON or an inconsistent record are skipped with a warning. Appends hold
//! an exclusive lock on the file; reads hold a shared one.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use astlab::paths::{CentredCatalanSet, MotzkinPath};
use astlab::weights::{Method, Subject, WeightRecord, WeightStore};

pub const SCHEMA_VERSION: u32 = 1;

/// Lines whose polynomial has a higher degree are rejected unread.
pub const MAX_CACHED_DEGREE: usize = 256;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CacheLineError {
    #[error("not a cache line: {0}")]
    Json(String),
    #[error("schema {found} is not {SCHEMA_VERSION}")]
    Schema { found: u32 },
    #[error("record key {0:?} does not parse")]
    Key(String),
    #[error("record coefficients {0:?} do not parse")]
    Coefficients(String),
    #[error("record degree {0} exceeds {MAX_CACHED_DEGREE}")]
    Degree(usize),
    #[error("record for {0} is not canonical")]
    Inconsistent(String),
}

#[derive(Serialize, Deserialize)]
struct Line {
    schema: u32,
    record: WeightRecord,
}

/// Parses and validates one line. A valid record is exactly what
/// `WeightRecord::for_set`/`for_motzkin` would produce from its polynomial.
pub fn parse_line(line: &str) -> Result<WeightRecord, CacheLineError> {
    let parsed: Line = serde_json::from_str(line).map_err(|e| CacheLineError::Json(e.to_string()))?;
    if parsed.schema != SCHEMA_VERSION {
        return Err(CacheLineError::Schema { found: parsed.schema });
    }
    let r = parsed.record;
    let terms = r.coefficients.split(',').count();
    if terms > MAX_CACHED_DEGREE + 1 {
        return Err(CacheLineError::Degree(terms - 1));
    }
    let w = r.polynomial().map_err(|_| CacheLineError::Coefficients(r.coefficients.clone()))?;
    let rebuilt = match r.kind {
        Subject::Set => {
            let s: CentredCatalanSet = r.key.parse().map_err(|_| CacheLineError::Key(r.key.clone()))?;
            WeightRecord::for_set(&s, &w, r.provenance)
        }
        Subject::Motzkin => {
            let m: MotzkinPath = r.key.parse().map_err(|_| CacheLineError::Key(r.key.clone()))?;
            WeightRecord::for_motzkin(&m, &w, r.provenance)
        }
    };
    if rebuilt != r {
        return Err(CacheLineError::Inconsistent(r.key));
    }
    Ok(r)
}

pub fn format_line(record: &WeightRecord) -> String {
    serde_json::to_string(&Line { schema: SCHEMA_VERSION, record: record.clone() }).expect("records serialise")
}

type Key = (Subject, String, Method);

fn key_of(r: &WeightRecord) -> Key {
    (r.kind, r.key.clone(), r.provenance)
}

pub struct Cache {
    path: PathBuf,
    entries: HashMap<Key, WeightRecord>,
    pub warnings: Vec<String>,
}

impl Cache {
    /// Loads `path` if it exists.
    pub fn open(path: &Path) -> io::Result<Cache> {
        let mut cache = Cache { path: path.to_path_buf(), entries: HashMap::new(), warnings: Vec::new() };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e),
        };
        file.lock_shared()?;
        for (i, line) in BufReader::new(&file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match parse_line(&line) {
                Ok(r) => {
                    cache.entries.insert(key_of(&r), r);
                }
                Err(e) => cache.warnings.push(format!("{}:{}: skipped: {e}", path.display(), i + 1)),
            }
        }
        file.unlock()?;
        Ok(cache)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, kind: Subject, key: &str, method: Method) -> Option<&WeightRecord> {
        self.entries.get(&(kind, key.to_string(), method))
    }

    /// Appends the records not already present.
    pub fn append(&mut self, records: &[WeightRecord]) -> io::Result<usize> {
        let fresh: Vec<&WeightRecord> = records.iter().filter(|r| !self.entries.contains_key(&key_of(r))).collect();
        if fresh.is_empty() {
            return Ok(0);
        }
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        file.lock()?;
        let mut buf = String::new();
        for r in &fresh {
            buf.push_str(&format_line(r));
            buf.push('\n');
        }
        let res = file.write_all(buf.as_bytes()).and_then(|_| file.flush());
        file.unlock()?;
        res?;
        for r in fresh.iter() {
            self.entries.insert(key_of(r), (*r).clone());
        }
        Ok(fresh.len())
    }

    /// Seeds a store with the cached irreducible set weights of its method.
    pub fn seed(&self, store: &WeightStore) {
        for r in self.entries.values() {
            if r.kind != Subject::Set || r.provenance != store.method() {
                continue;
            }
            if let (Some(s), Ok(w)) = (r.set(), r.polynomial()) {
                if s.is_irreducible() {
                    store.insert(s, w);
                }
            }
        }
    }

    /// Saves every irreducible weight the store has memoised.
    pub fn absorb(&mut self, store: &WeightStore) -> io::Result<usize> {
        let records: Vec<WeightRecord> =
            store.entries().iter().map(|(s, w)| WeightRecord::for_set(s, w, store.method())).collect();
        self.append(&records)
    }
}

/// `$XDG_CACHE_HOME/astlab/weights.jsonl`, else `~/.cache/astlab/weights.jsonl`.
pub fn default_path() -> Option<PathBuf> {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("astlab").join("weights.jsonl"))
}
