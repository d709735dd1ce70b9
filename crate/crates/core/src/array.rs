//! Square code arrays and the `(n−1)×(n−1)` arrays left after a criss-cross
//! deletion. Row and column indices are 1-based.

use std::fmt;

use crate::error::{Error, Result};

fn validate_rows(rows: &[Vec<u32>], height: usize, width: usize, q: u32) -> Result<Vec<u32>> {
    if q < 2 {
        return Err(Error::InvalidParameters(format!(
            "alphabet size q={q} must be at least 2"
        )));
    }
    if rows.len() != height {
        return Err(Error::LengthMismatch {
            expected: height,
            actual: rows.len(),
        });
    }
    let mut entries = Vec::with_capacity(height * width);
    for row in rows {
        if row.len() != width {
            return Err(Error::LengthMismatch {
                expected: width,
                actual: row.len(),
            });
        }
        entries.extend_from_slice(row);
    }
    if let Some((idx, &symbol)) = entries.iter().enumerate().find(|(_, &s)| s >= q) {
        return Err(Error::SymbolOutOfRange {
            position: idx + 1,
            symbol,
            q,
        });
    }
    Ok(entries)
}

fn write_rows(f: &mut fmt::Formatter<'_>, entries: &[u32], width: usize) -> fmt::Result {
    for row in entries.chunks(width) {
        let line: Vec<String> = row.iter().map(u32::to_string).collect();
        writeln!(f, "{}", line.join(" "))?;
    }
    Ok(())
}

/// An `n×n` array over `Σ_q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeArray {
    n: usize,
    q: u32,
    entries: Vec<u32>,
}

impl CodeArray {
    pub fn zeros(n: usize, q: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters(
                "array dimension must be positive".into(),
            ));
        }
        if q < 2 {
            return Err(Error::InvalidParameters(format!(
                "alphabet size q={q} must be at least 2"
            )));
        }
        Ok(Self {
            n,
            q,
            entries: vec![0; n * n],
        })
    }

    pub fn from_rows(rows: Vec<Vec<u32>>, q: u32) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidParameters(
                "array dimension must be positive".into(),
            ));
        }
        let entries = validate_rows(&rows, n, n, q)?;
        Ok(Self { n, q, entries })
    }

    pub(crate) fn from_entries(n: usize, q: u32, entries: Vec<u32>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Self { n, q, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// Sets entry `(i, j)`; `value` is reduced mod `q`.
    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        self.entries[(i - 1) * self.n + (j - 1)] = value % self.q;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[(i - 1) * self.n..i * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (1..=self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n).map(<[u32]>::to_vec).collect()
    }
}

impl fmt::Display for CodeArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.entries, self.n)
    }
}

/// The `(n−1)×(n−1)` result of a criss-cross deletion, tagged with the
/// original dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReceivedArray {
    n: usize,
    q: u32,
    entries: Vec<u32>,
}

impl ReceivedArray {
    pub fn from_rows(rows: Vec<Vec<u32>>, n: usize, q: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameters(format!(
                "original dimension n={n} must be at least 2"
            )));
        }
        let entries = validate_rows(&rows, n - 1, n - 1, q)?;
        Ok(Self { n, q, entries })
    }

    pub(crate) fn from_entries(n: usize, q: u32, entries: Vec<u32>) -> Self {
        debug_assert_eq!(entries.len(), (n - 1) * (n - 1));
        Self { n, q, entries }
    }

    /// Dimension of the array before the deletion.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Side length of this array, `n − 1`.
    pub fn size(&self) -> usize {
        self.n - 1
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.size() + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries
            .chunks(self.size())
            .map(<[u32]>::to_vec)
            .collect()
    }
}

impl fmt::Display for ReceivedArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.entries, self.size())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_round_trip() {
        let rows = vec![vec![1, 2, 0], vec![0, 0, 1], vec![2, 2, 2]];
        let a = CodeArray::from_rows(rows.clone(), 3).unwrap();
        assert_eq!(a.rows(), rows);
        assert_eq!(a.get(1, 2), 2);
        assert_eq!(a.column(3), vec![0, 1, 2]);
        assert_eq!(a.row(3), &[2, 2, 2]);
    }

    #[test]
    fn ragged_or_out_of_alphabet_rows_fail() {
        assert!(CodeArray::from_rows(vec![vec![0, 1], vec![0]], 3).is_err());
        assert!(CodeArray::from_rows(vec![vec![0, 3], vec![0, 0]], 3).is_err());
        assert!(CodeArray::from_rows(vec![], 3).is_err());
        assert!(ReceivedArray::from_rows(vec![vec![0, 0]], 3, 3).is_err());
        assert!(ReceivedArray::from_rows(vec![vec![0, 0], vec![1, 1]], 3, 3).is_ok());
    }
}
