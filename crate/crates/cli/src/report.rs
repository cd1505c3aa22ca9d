//! JSON and CSV rendering of report records.
//!
//! CSV rows come from the records' JSON form: scalars are written as they
//! are and nested arrays or objects as compact JSON in one cell.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    }
}

/// CSV text with a header taken from the first record's fields.
pub fn to_csv<T: Serialize>(records: &[T]) -> io::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Option<Vec<String>> = None;
    for r in records {
        let Value::Object(map) = serde_json::to_value(r).map_err(io::Error::other)? else {
            return Err(io::Error::other("csv rows must be records"));
        };
        if header.is_none() {
            let keys: Vec<String> = map.keys().cloned().collect();
            w.write_record(&keys)?;
            header = Some(keys);
        }
        let keys = header.as_ref().expect("header written");
        w.write_record(keys.iter().map(|k| map.get(k).map(cell).unwrap_or_default()))?;
    }
    let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
    String::from_utf8(bytes).map_err(io::Error::other)
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

/// Writes `name.json` and `name.csv` under `dir`, returning both paths.
pub fn write_pair<J: Serialize, T: Serialize>(dir: &Path, name: &str, json: &J, rows: &[T]) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let j = dir.join(format!("{name}.json"));
    let c = dir.join(format!("{name}.csv"));
    fs::write(&j, to_json(json))?;
    fs::write(&c, to_csv(rows)?)?;
    Ok(vec![j, c])
}
