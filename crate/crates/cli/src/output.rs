use std::fs::File;
use std::io::{self, Write};

use apery_forge::{Error, Result};
use serde::Serialize;

use crate::{Common, Format};

pub const SCHEMA: &str = "apery-forge/1";

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

/// A report plus its flat row view for csv and table output.
pub struct Doc<'a, T: Serialize> {
    pub command: &'a str,
    pub body: &'a T,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub fn emit<T: Serialize>(c: &Common, doc: Doc<'_, T>) -> Result<()> {
    let text = match c.format {
        Format::Json => {
            let env = Envelope { schema: SCHEMA, command: doc.command, body: doc.body };
            let mut s = serde_json::to_string_pretty(&env).map_err(io_err)?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&doc.header).map_err(io_err)?;
            for r in &doc.rows {
                w.write_record(r).map_err(io_err)?;
            }
            String::from_utf8(w.into_inner().map_err(io_err)?).map_err(io_err)?
        }
        Format::Table => table(&doc.header, &doc.rows),
    };
    match &c.output {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(text.as_bytes())).map_err(io_err),
        None => io::stdout().write_all(text.as_bytes()).map_err(io_err),
    }
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    out.push_str(&line(width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(|s| s.as_str()).collect()));
    for r in rows {
        out.push_str(&line(r.iter().map(|s| s.as_str()).collect()));
    }
    out
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::InvalidParameter(format!("cannot write output: {e}"))
}

pub fn opt_f64(x: Option<f64>) -> String {
    x.map(f64s).unwrap_or_default()
}

pub fn f64s(x: f64) -> String {
    format!("{x:.6e}")
}
