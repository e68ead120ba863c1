//! Input loading and parsing helpers.

use degseq_core::table::{
    parse_directed_table_csv, parse_edge_table_csv, parse_edge_table_json, DirectedCountTable,
    DyadTable, EdgeCountTable, TrialsSpec,
};
use degseq_core::zoo::RaschTable;
use degseq_core::{Error, Result};
use std::io::Read;

pub fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
    }
}

pub fn is_json(path: &str, format: &Option<String>) -> bool {
    match format.as_deref() {
        Some("json") => true,
        Some(_) => false,
        None => path.ends_with(".json"),
    }
}

pub fn load_edge_table(
    path: &str,
    format: &Option<String>,
    trials: Option<u64>,
) -> Result<EdgeCountTable> {
    let src = read_source(path)?;
    if is_json(path, format) {
        parse_edge_table_json(&src, trials.map(TrialsSpec::Constant).as_ref())
    } else {
        let spec = TrialsSpec::Constant(trials.unwrap_or(1));
        parse_edge_table_csv(&src, &spec)
    }
}

pub fn load_directed_table(path: &str) -> Result<DirectedCountTable> {
    parse_directed_table_csv(&read_source(path)?)
}

pub fn load_dyad_table(path: &str) -> Result<DyadTable> {
    DyadTable::from_directed(&load_directed_table(path)?)
}

/// Rasch responses: a plain `k x l` 0/1 CSV (no diagonal markers).
pub fn load_rasch_table(path: &str, k: Option<usize>) -> Result<RaschTable> {
    let src = read_source(path)?;
    let rows: Vec<&str> = src.lines().filter(|l| !l.trim().is_empty()).collect();
    let k = k.unwrap_or(rows.len());
    if k != rows.len() {
        return Err(Error::Parse(format!(
            "--k {} does not match the {} data rows",
            k,
            rows.len()
        )));
    }
    let mut responses = Vec::new();
    let mut l = None;
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        match l {
            None => l = Some(fields.len()),
            Some(width) if width != fields.len() => {
                return Err(Error::Parse("ragged response matrix".into()))
            }
            _ => {}
        }
        for f in fields {
            match f.trim() {
                "0" => responses.push(0),
                "1" => responses.push(1),
                other => return Err(Error::Parse(format!("bad response '{other}'"))),
            }
        }
    }
    RaschTable::new(k, l.unwrap_or(0), responses)
}
