//! Systematic encoder for the criss-cross code and its inverse.
//!
//! The first `k3` data symbols over `Z_q` are re-expressed as `k1 + k2`
//! symbols over `Z_{q−1}` and carried by the first row and the last column.
//! The remaining `n² − 4n + 2` symbols fill the interior row by row, and the
//! first column and last row are parities.

use num_bigint::BigUint;

use crate::array::CodeArray;
use crate::code::{ensure_codeword, CodeParams, MessageLengths};
use crate::error::{Error, Result};
use crate::radix;
use crate::rll;
use crate::vt::Sequence;

/// Intermediate values of one encoder run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodeTrace {
    pub lengths: MessageLengths,
    /// `Σ_{i≤k3} f_i q^{i−1}`.
    pub h: BigUint,
    /// Base-(q−1) digits of `h`, `k1 + k2` of them, least significant first.
    pub digits: Vec<u32>,
    pub first_row: Sequence,
    /// Last column read bottom-up.
    pub reversed_last_column: Sequence,
}

/// 1-based interior positions holding data symbols `f_{k3+1}, …, f_{total}`,
/// in data order.
fn payload_positions(n: usize) -> impl Iterator<Item = (usize, usize)> {
    let second = (2..=n - 2).map(|j| (2, j));
    let third = (2..=n - 2).map(|j| (3, j));
    let rest = (4..n).flat_map(move |i| (2..n).map(move |j| (i, j)));
    second.chain(third).chain(rest)
}

pub fn encode(data: &[u32], p: &CodeParams) -> Result<CodeArray> {
    encode_traced(data, p).map(|(x, _)| x)
}

pub fn encode_traced(data: &[u32], p: &CodeParams) -> Result<(CodeArray, EncodeTrace)> {
    let lengths = MessageLengths::new(p)?;
    let n = p.n();
    let q = p.q();
    if data.len() != lengths.total {
        return Err(Error::LengthMismatch {
            expected: lengths.total,
            actual: data.len(),
        });
    }
    if let Some((i, &s)) = data.iter().enumerate().find(|(_, &s)| s >= q) {
        return Err(Error::SymbolOutOfRange {
            position: i + 1,
            symbol: s,
            q,
        });
    }

    let (head, payload) = data.split_at(lengths.k3);
    let h = radix::from_digits(head, q);
    let digits = radix::to_digits(&h, q - 1, lengths.k1 + lengths.k2).ok_or_else(|| {
        Error::Internal(format!(
            "h does not fit in {} base-{} digits",
            lengths.k1 + lengths.k2,
            q - 1
        ))
    })?;

    let first_row = rll::encode(&digits[..lengths.k1], &p.row_code())?;
    let reversed_last_column = rll::encode(&digits[lengths.k1..], &p.column_code())?;

    let mut x = CodeArray::zeros(n, q)?;
    for (j, &u) in first_row.symbols().iter().enumerate() {
        x.set(1, j + 1, u);
    }
    for (k, &v) in reversed_last_column.symbols().iter().enumerate() {
        x.set(n - k, n, v);
    }
    x.set(2, n - 1, 1);
    x.set(3, n - 1, 2);
    for ((i, j), &f) in payload_positions(n).zip(payload) {
        x.set(i, j, f);
    }

    // The last row must be in place before the first-column parity of row n
    // is taken, so column parities go first.
    let qq = q as u64;
    for j in 2..n {
        let s: u64 = (1..n).map(|i| x.get(i, j) as u64).sum();
        x.set(n, j, ((qq - s % qq) % qq) as u32);
    }
    for i in 2..=n {
        let s: u64 = (2..=n).map(|j| x.get(i, j) as u64).sum();
        x.set(i, 1, ((qq - s % qq) % qq) as u32);
    }

    if !p.is_proven_for_encoding() {
        ensure_codeword(&x, p)
            .map_err(|e| Error::Internal(format!("encoder output failed validation: {e}")))?;
    }
    debug_assert!(crate::code::is_codeword(&x, p).unwrap_or(false));

    Ok((
        x,
        EncodeTrace {
            lengths,
            h,
            digits,
            first_row,
            reversed_last_column,
        },
    ))
}

/// Inverse of [`encode`].
pub fn recover_data(x: &CodeArray, p: &CodeParams) -> Result<Vec<u32>> {
    recover_data_traced(x, p).map(|(d, _)| d)
}

/// Data recovery that also returns the reconstituted `h`.
pub fn recover_data_traced(x: &CodeArray, p: &CodeParams) -> Result<(Vec<u32>, BigUint)> {
    let lengths = MessageLengths::new(p)?;
    ensure_codeword(x, p)?;
    let n = p.n();
    let q = p.q();

    let first_row = Sequence::new(x.row(1).to_vec(), q)?;
    let mut column = x.column(n);
    column.reverse();
    let reversed_last_column = Sequence::new(column, q)?;

    let mut digits = rll::recover_data(&first_row, &p.row_code())?;
    digits.extend(rll::recover_data(&reversed_last_column, &p.column_code())?);
    if digits.len() != lengths.k1 + lengths.k2 {
        return Err(Error::Internal(format!(
            "recovered {} base-{} digits, expected {}",
            digits.len(),
            q - 1,
            lengths.k1 + lengths.k2
        )));
    }

    let h = radix::from_digits(&digits, q - 1);
    let head = radix::to_digits(&h, q, lengths.k3).ok_or(Error::OutsideEncoderImage)?;

    let mut data = head;
    data.reserve(lengths.total - lengths.k3);
    data.extend(payload_positions(n).map(|(i, j)| x.get(i, j)));
    debug_assert_eq!(data.len(), lengths.total);
    Ok((data, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_codeword, example_data};

    fn ex_params() -> CodeParams {
        CodeParams::new(9, 7)
            .unwrap()
            .allow_unproven_parameters(true)
    }

    #[test]
    fn payload_covers_interior_once() {
        for n in 8..20 {
            let positions: Vec<_> = payload_positions(n).collect();
            assert_eq!(positions.len(), n * n - 4 * n + 2);
            let unique: std::collections::HashSet<_> = positions.iter().collect();
            assert_eq!(unique.len(), positions.len());
        }
    }

    #[test]
    fn payload_matches_index_formulas() {
        // X[2][j] = f_{k3+j−1}, X[3][j] = f_{k3+j+n−4}, X[i][j] = f_{k3+(n−2)i+j−2n+1}
        let n = 12;
        for (offset, (i, j)) in payload_positions(n).enumerate() {
            let idx = offset + 1;
            let expected = match i {
                2 => j - 1,
                3 => j + n - 4,
                _ => (n - 2) * i + j + 1 - 2 * n,
            };
            assert_eq!(idx, expected, "position ({i},{j})");
        }
    }

    #[test]
    fn example_encoding() {
        let (x, trace) = encode_traced(&example_data(), &ex_params()).unwrap();
        assert_eq!(trace.h, BigUint::from(18u32));
        assert_eq!(trace.digits, vec![0, 3, 0]);
        assert_eq!(trace.first_row.symbols(), &[4, 2, 1, 4, 5, 2, 1, 0, 2]);
        assert_eq!(
            trace.reversed_last_column.symbols(),
            &[0, 6, 5, 6, 0, 1, 0, 1, 2]
        );
        assert_eq!(x, example_codeword());
    }

    #[test]
    fn example_recovery() {
        let (data, h) = recover_data_traced(&example_codeword(), &ex_params()).unwrap();
        assert_eq!(h, BigUint::from(18u32));
        assert_eq!(data, example_data());
    }

    #[test]
    fn gate_rejects_small_n() {
        let p = CodeParams::new(9, 7).unwrap();
        assert!(matches!(
            encode(&example_data(), &p),
            Err(Error::BelowProvenRange(_))
        ));
    }

    #[test]
    fn zero_data_round_trip() {
        let p = CodeParams::new(11, 3).unwrap();
        let data = vec![0; 80];
        let x = encode(&data, &p).unwrap();
        assert!(crate::code::is_codeword(&x, &p).unwrap());
        assert_eq!(recover_data(&x, &p).unwrap(), data);
    }

    #[test]
    fn recover_rejects_tampered() {
        let mut x = example_codeword();
        x.set(4, 4, 1);
        assert!(matches!(
            recover_data(&x, &ex_params()),
            Err(Error::NotACodeword(_))
        ));
    }

    #[test]
    fn wrong_data_rejected() {
        let p = CodeParams::new(11, 3).unwrap();
        assert!(matches!(
            encode(&[0; 79], &p),
            Err(Error::LengthMismatch { .. })
        ));
        let mut data = vec![0; 80];
        data[5] = 3;
        assert!(matches!(
            encode(&data, &p),
            Err(Error::SymbolOutOfRange { .. })
        ));
    }
}
