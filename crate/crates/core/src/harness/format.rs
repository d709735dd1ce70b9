//! JSON file format shared by arrays, received arrays and data payloads.
//!
//! ```json
//! {
//!   "kind": "received",
//!   "q": 7,
//!   "n": 9,
//!   "rows": [
//!     [4, 2, 1, 4, 5, 2, 1, 0],
//!     ...
//!   ]
//! }
//! ```
//!
//! For `"received"` files `n` is the dimension before the deletion. Data
//! files carry `"symbols"` instead of `"rows"` and may omit `n`. The writer
//! is deterministic so files can be compared byte for byte.

use std::fmt::Write as _;

use serde::Deserialize;

use crate::array::{CodeArray, ReceivedArray};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArrayFile {
    Array(CodeArray),
    Received(ReceivedArray),
    Data {
        q: u32,
        n: Option<usize>,
        symbols: Vec<u32>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    kind: String,
    q: u32,
    n: Option<usize>,
    rows: Option<Vec<Vec<u32>>>,
    symbols: Option<Vec<u32>>,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedFile(msg.into())
}

fn write_list(out: &mut String, values: &[u32]) {
    out.push('[');
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{v}");
    }
    out.push(']');
}

fn write_rows(out: &mut String, rows: &[Vec<u32>]) {
    out.push_str("  \"rows\": [\n");
    for (k, row) in rows.iter().enumerate() {
        out.push_str("    ");
        write_list(out, row);
        out.push_str(if k + 1 < rows.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ]\n");
}

impl ArrayFile {
    pub fn data(q: u32, symbols: Vec<u32>) -> Self {
        ArrayFile::Data {
            q,
            n: None,
            symbols,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ArrayFile::Array(_) => "array",
            ArrayFile::Received(_) => "received",
            ArrayFile::Data { .. } => "data",
        }
    }

    pub fn q(&self) -> u32 {
        match self {
            ArrayFile::Array(x) => x.q(),
            ArrayFile::Received(y) => y.q(),
            ArrayFile::Data { q, .. } => *q,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"kind\": \"{}\",", self.kind());
        let _ = writeln!(out, "  \"q\": {},", self.q());
        match self {
            ArrayFile::Array(x) => {
                let _ = writeln!(out, "  \"n\": {},", x.n());
                write_rows(&mut out, &x.rows());
            }
            ArrayFile::Received(y) => {
                let _ = writeln!(out, "  \"n\": {},", y.n());
                write_rows(&mut out, &y.rows());
            }
            ArrayFile::Data { n, symbols, .. } => {
                if let Some(n) = n {
                    let _ = writeln!(out, "  \"n\": {n},");
                }
                out.push_str("  \"symbols\": ");
                write_list(&mut out, symbols);
                out.push('\n');
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        let q = raw.q;
        if q < 2 {
            return Err(malformed(format!("alphabet size q={q} must be at least 2")));
        }
        match raw.kind.as_str() {
            "array" | "received" => {
                if raw.symbols.is_some() {
                    return Err(malformed(format!(
                        "\"{}\" file must not carry symbols",
                        raw.kind
                    )));
                }
                let rows = raw
                    .rows
                    .ok_or_else(|| malformed(format!("\"{}\" file needs rows", raw.kind)))?;
                let n = raw
                    .n
                    .ok_or_else(|| malformed(format!("\"{}\" file needs n", raw.kind)))?;
                if raw.kind == "array" {
                    if rows.len() != n {
                        return Err(Error::LengthMismatch {
                            expected: n,
                            actual: rows.len(),
                        });
                    }
                    Ok(ArrayFile::Array(CodeArray::from_rows(rows, q)?))
                } else {
                    Ok(ArrayFile::Received(ReceivedArray::from_rows(rows, n, q)?))
                }
            }
            "data" => {
                if raw.rows.is_some() {
                    return Err(malformed("\"data\" file must not carry rows"));
                }
                let symbols = raw
                    .symbols
                    .ok_or_else(|| malformed("\"data\" file needs symbols"))?;
                if let Some((position, &symbol)) = symbols.iter().enumerate().find(|(_, &s)| s >= q)
                {
                    return Err(Error::SymbolOutOfRange {
                        position: position + 1,
                        symbol,
                        q,
                    });
                }
                Ok(ArrayFile::Data {
                    q,
                    n: raw.n,
                    symbols,
                })
            }
            other => Err(malformed(format!(
                "unknown kind \"{other}\" (expected array, received or data)"
            ))),
        }
    }

    pub fn into_array(self) -> Result<CodeArray> {
        match self {
            ArrayFile::Array(x) => Ok(x),
            other => Err(malformed(format!(
                "expected an \"array\" file, got \"{}\"",
                other.kind()
            ))),
        }
    }

    pub fn into_received(self) -> Result<ReceivedArray> {
        match self {
            ArrayFile::Received(y) => Ok(y),
            other => Err(malformed(format!(
                "expected a \"received\" file, got \"{}\"",
                other.kind()
            ))),
        }
    }

    /// The data symbols and their alphabet size.
    pub fn into_data(self) -> Result<(u32, Vec<u32>)> {
        match self {
            ArrayFile::Data { q, symbols, .. } => Ok((q, symbols)),
            other => Err(malformed(format!(
                "expected a \"data\" file, got \"{}\"",
                other.kind()
            ))),
        }
    }
}
