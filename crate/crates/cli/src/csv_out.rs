//! CSV rows: `instance,problem,model,backend,value,nodes,millis`.
//!
//! `value` is empty for infeasible instances and `millis` is empty under
//! `--no-timing`.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use crate::dispatch::Report;

pub const HEADER: [&str; 7] = [
    "instance", "problem", "model", "backend", "value", "nodes", "millis",
];

pub fn record(instance: &str, r: &Report, timing: bool) -> [String; 7] {
    [
        instance.to_string(),
        r.problem.to_string(),
        r.route.model_name().to_string(),
        r.route.backend_name().to_string(),
        r.value.map(|v| v.to_string()).unwrap_or_default(),
        r.nodes.to_string(),
        if timing {
            r.millis.to_string()
        } else {
            String::new()
        },
    ]
}

/// Writes the header and `rows` to `out`.
pub fn write_all(out: impl Write, rows: &[[String; 7]]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Appends one row, writing the header first when the file is new or empty.
pub fn append(path: &Path, row: &[String; 7]) -> csv::Result<()> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let fresh = file.metadata()?.len() == 0;
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(file);
    if fresh {
        w.write_record(HEADER)?;
    }
    w.write_record(row)?;
    w.flush()?;
    Ok(())
}
