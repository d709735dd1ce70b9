//! Recovery of a codeword from a single row-and-column deletion.
//!
//! The top two entries of the received column `n−1` tell whether the last
//! column was lost: when it survived they are `(2,1)`, `(2,0)` or `(1,0)`,
//! otherwise `(0,1)`, `(0,2)` or `(1,2)`. A lost last column is rebuilt from
//! row parities (minus the entry in the deleted row). The reversed last column
//! then locates the deleted row, which is refilled from column parities, and
//! if a different column was lost the first row locates it and row parities
//! refill it.

use crate::array::{CodeArray, ReceivedArray};
use crate::code::{ensure_codeword, CodeParams};
use crate::error::{Error, Result};
use crate::rll;
use crate::vt::Sequence;

/// Intermediate values of one decoder run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeTrace {
    /// `(Y[1][n−1], Y[2][n−1])`.
    pub discriminator: (u32, u32),
    pub last_column_deleted: bool,
    /// The column appended when the last column was deleted.
    pub appended_column: Option<Vec<u32>>,
    /// The last column of the (possibly extended) array, read bottom-up.
    pub reversed_column: Vec<u32>,
    /// Recovered deleted row index.
    pub row: usize,
    /// Parity row inserted at `row`.
    pub row_fill: Vec<u32>,
    /// Recovered deleted column index.
    pub column: usize,
    /// Parity column inserted at `column`, when the last column survived.
    pub column_fill: Option<Vec<u32>>,
}

fn neg_mod(sum: u64, q: u32) -> u32 {
    let q = q as u64;
    ((q - sum % q) % q) as u32
}

fn not_decodable(stage: &str, err: Error) -> Error {
    Error::NotDecodable(format!("{stage}: {err}"))
}

pub fn decode(y: &ReceivedArray, p: &CodeParams) -> Result<CodeArray> {
    decode_traced(y, p).map(|(x, _)| x)
}

pub fn decode_traced(y: &ReceivedArray, p: &CodeParams) -> Result<(CodeArray, DecodeTrace)> {
    p.check_received(y)?;
    let n = p.n();
    let q = p.q();
    let mut rows = y.rows();

    let discriminator = (rows[0][n - 2], rows[1][n - 2]);
    let last_column_deleted = discriminator.0 < discriminator.1;
    let appended_column = if last_column_deleted {
        let col: Vec<u32> = rows
            .iter()
            .map(|r| neg_mod(r.iter().map(|&s| s as u64).sum(), q))
            .collect();
        for (r, &c) in rows.iter_mut().zip(&col) {
            r.push(c);
        }
        Some(col)
    } else {
        None
    };
    let width = rows[0].len();

    let reversed_column: Vec<u32> = rows.iter().rev().map(|r| r[width - 1]).collect();
    let received_v = Sequence::new(reversed_column.clone(), q)?;
    let (_, pos) =
        rll::decode(&received_v, &p.column_code()).map_err(|e| not_decodable("last column", e))?;
    let row = n - pos + 1;

    let row_fill: Vec<u32> = (0..width)
        .map(|j| neg_mod(rows.iter().map(|r| r[j] as u64).sum(), q))
        .collect();
    rows.insert(row - 1, row_fill.clone());

    let (column, column_fill) = if width == n - 1 {
        let received_u = Sequence::new(rows[0].clone(), q)?;
        let (_, column) =
            rll::decode(&received_u, &p.row_code()).map_err(|e| not_decodable("first row", e))?;
        let fill: Vec<u32> = rows
            .iter()
            .map(|r| neg_mod(r.iter().map(|&s| s as u64).sum(), q))
            .collect();
        for (r, &c) in rows.iter_mut().zip(&fill) {
            r.insert(column - 1, c);
        }
        (column, Some(fill))
    } else {
        (n, None)
    };

    let x = CodeArray::from_entries(n, q, rows.into_iter().flatten().collect());
    ensure_codeword(&x, p).map_err(|e| not_decodable("reconstruction", e))?;

    Ok((
        x,
        DecodeTrace {
            discriminator,
            last_column_deleted,
            appended_column,
            reversed_column,
            row,
            row_fill,
            column,
            column_fill,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::corrupt;
    use crate::fixtures::{example_codeword, example_received};

    fn ex_params() -> CodeParams {
        CodeParams::new(9, 7).unwrap()
    }

    #[test]
    fn example_walkthrough() {
        let (x, trace) = decode_traced(&example_received(), &ex_params()).unwrap();
        assert_eq!(x, example_codeword());
        assert!(trace.last_column_deleted);
        assert_eq!(trace.appended_column, Some(vec![2, 1, 0, 1, 0, 6, 5, 6]));
        assert_eq!(trace.reversed_column, vec![6, 5, 6, 0, 1, 0, 1, 2]);
        assert_eq!(trace.row, 9);
        assert_eq!(trace.row_fill, vec![3, 0, 3, 0, 4, 3, 4, 4, 0]);
        assert_eq!(trace.column, 9);
        assert_eq!(trace.column_fill, None);
    }

    #[test]
    fn every_position_of_example() {
        let x = example_codeword();
        for i in 1..=9 {
            for j in 1..=9 {
                let (got, trace) =
                    decode_traced(&corrupt(&x, i, j).unwrap(), &ex_params()).unwrap();
                assert_eq!(got, x, "deletion at ({i},{j})");
                assert_eq!((trace.row, trace.column), (i, j));
            }
        }
    }

    #[test]
    fn garbage_is_not_decodable() {
        let y = ReceivedArray::from_rows(vec![vec![1; 8]; 8], 9, 7).unwrap();
        assert!(matches!(
            decode(&y, &ex_params()),
            Err(Error::NotDecodable(_))
        ));
    }

    #[test]
    fn mismatched_dimension_rejected() {
        let y = ReceivedArray::from_rows(vec![vec![0; 9]; 9], 10, 7).unwrap();
        assert!(matches!(
            decode(&y, &ex_params()),
            Err(Error::LengthMismatch { .. })
        ));
    }
}
