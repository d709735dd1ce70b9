//! The (1,1)-criss-cross deletion correcting array code.
//!
//! An `n×n` array `X` over `Σ_q` (`q ≥ 3`, `n ≥ 4`) is a codeword when:
//!
//! 1. its first row `U` lies in `1-RLL_Diff_VT_0(n−2, 2; (0,2))`;
//! 2. its last column read bottom-up, `V`, lies in `1-RLL_Diff_VT_0(n−3, 3; (0,1,2))`;
//! 3. `X[2][n−1] = 1` and `X[3][n−1] = 2`;
//! 4. rows `2..=n` sum to zero mod `q`;
//! 5. columns `2..=n−1` sum to zero mod `q`.
//!
//! Together these force every row and column sum to vanish mod `q`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::array::{CodeArray, ReceivedArray};
use crate::error::{Error, Result};
use crate::rll::{floor_log, RllSuffixParams};
use crate::vt;

/// Smallest array dimension covered by the code definition.
pub const MIN_CODE_DIM: usize = 4;
/// Smallest array dimension for which the encoder is proven.
pub const MIN_PROVEN_ENCODE_DIM: usize = 11;
/// Smallest array dimension the encoder accepts even in relaxed mode.
pub const MIN_RELAXED_ENCODE_DIM: usize = 8;

pub const ROW_SUFFIX: [u32; 2] = [0, 2];
pub const COLUMN_SUFFIX: [u32; 3] = [0, 1, 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeParams {
    n: usize,
    q: u32,
    allow_unproven: bool,
}

impl CodeParams {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        if q < 3 {
            return Err(Error::InvalidParameters(format!(
                "alphabet size q={q} must be at least 3"
            )));
        }
        if n < MIN_CODE_DIM {
            return Err(Error::InvalidParameters(format!(
                "array dimension n={n} must be at least {MIN_CODE_DIM}"
            )));
        }
        Ok(Self {
            n,
            q,
            allow_unproven: false,
        })
    }

    /// Lets the encoder run for `8 ≤ n < 11`, with post-validation of its
    /// output.
    pub fn allow_unproven_parameters(mut self, allow: bool) -> Self {
        self.allow_unproven = allow;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn allows_unproven(&self) -> bool {
        self.allow_unproven
    }

    pub(crate) fn is_proven_for_encoding(&self) -> bool {
        self.n >= MIN_PROVEN_ENCODE_DIM
    }

    /// Checks that the encoder may run with these parameters.
    pub fn check_encodable(&self) -> Result<()> {
        if self.n >= MIN_PROVEN_ENCODE_DIM {
            return Ok(());
        }
        if self.allow_unproven && self.n >= MIN_RELAXED_ENCODE_DIM {
            return Ok(());
        }
        if self.allow_unproven {
            return Err(Error::InvalidParameters(format!(
                "n={} is below {MIN_RELAXED_ENCODE_DIM}; encoding is unsupported there",
                self.n
            )));
        }
        Err(Error::BelowProvenRange(format!(
            "n={} (need n ≥ {MIN_PROVEN_ENCODE_DIM})",
            self.n
        )))
    }

    /// Parameters of the first-row code.
    pub fn row_code(&self) -> RllSuffixParams {
        RllSuffixParams::new(self.n - 2, self.q, 0, ROW_SUFFIX.to_vec())
            .expect("q ≥ 3 and n ≥ 4")
            .allow_unproven_parameters(self.allow_unproven)
    }

    /// Parameters of the reversed-last-column code.
    pub fn column_code(&self) -> RllSuffixParams {
        RllSuffixParams::new(self.n - 3, self.q, 0, COLUMN_SUFFIX.to_vec())
            .expect("q ≥ 3 and n ≥ 4")
            .allow_unproven_parameters(self.allow_unproven)
    }

    fn check_array(&self, x: &CodeArray) -> Result<()> {
        if x.q() != self.q {
            return Err(Error::AlphabetMismatch {
                expected: self.q,
                actual: x.q(),
            });
        }
        if x.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: x.n(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_received(&self, y: &ReceivedArray) -> Result<()> {
        if y.q() != self.q {
            return Err(Error::AlphabetMismatch {
                expected: self.q,
                actual: y.q(),
            });
        }
        if y.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: y.n(),
            });
        }
        Ok(())
    }
}

/// The five defining conditions, in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    FirstRow = 1,
    LastColumn = 2,
    FixedEntries = 3,
    RowSums = 4,
    ColumnSums = 5,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition::FirstRow,
        Condition::LastColumn,
        Condition::FixedEntries,
        Condition::RowSums,
        Condition::ColumnSums,
    ];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn description(self) -> &'static str {
        match self {
            Condition::FirstRow => "first row in the 1-RLL suffix code with suffix (0,2)",
            Condition::LastColumn => {
                "reversed last column in the 1-RLL suffix code with suffix (0,1,2)"
            }
            Condition::FixedEntries => "X[2][n-1] = 1 and X[3][n-1] = 2",
            Condition::RowSums => "rows 2..n sum to 0 mod q",
            Condition::ColumnSums => "columns 2..n-1 sum to 0 mod q",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.number(), self.description())
    }
}

/// Membership in `1-RLL_Diff_VT_0(len − m, m; suffix)` on a raw slice.
pub(crate) fn suffix_code_ok(seq: &[u32], q: u32, suffix: &[u32]) -> bool {
    let len = seq.len();
    seq[len - suffix.len()..] == *suffix
        && vt::is_adjacent_distinct(seq)
        && vt::diff_syndrome(seq, q).is_multiple_of(q as u128 * len as u128)
}

/// Evaluates one condition on a row-major `n×n` slice.
pub(crate) fn condition_holds(entries: &[u32], n: usize, q: u32, cond: Condition) -> bool {
    let at = |i: usize, j: usize| entries[(i - 1) * n + (j - 1)];
    match cond {
        Condition::FirstRow => suffix_code_ok(&entries[..n], q, &ROW_SUFFIX),
        Condition::LastColumn => {
            let v: Vec<u32> = (1..=n).rev().map(|i| at(i, n)).collect();
            suffix_code_ok(&v, q, &COLUMN_SUFFIX)
        }
        Condition::FixedEntries => at(2, n - 1) == 1 && at(3, n - 1) == 2,
        Condition::RowSums => (2..=n).all(|i| {
            entries[(i - 1) * n..i * n]
                .iter()
                .map(|&s| s as u64)
                .sum::<u64>()
                % q as u64
                == 0
        }),
        Condition::ColumnSums => {
            (2..n).all(|j| (1..=n).map(|i| at(i, j) as u64).sum::<u64>() % q as u64 == 0)
        }
    }
}

/// The first violated condition, or `None` for a codeword.
pub fn first_violation(x: &CodeArray, p: &CodeParams) -> Result<Option<Condition>> {
    p.check_array(x)?;
    Ok(Condition::ALL
        .into_iter()
        .find(|&c| !condition_holds(x.entries(), p.n, p.q, c)))
}

pub fn is_codeword(x: &CodeArray, p: &CodeParams) -> Result<bool> {
    Ok(first_violation(x, p)?.is_none())
}

/// Fails with [`Error::NotACodeword`] naming the first violated condition.
pub fn ensure_codeword(x: &CodeArray, p: &CodeParams) -> Result<()> {
    match first_violation(x, p)? {
        None => Ok(()),
        Some(c) => Err(Error::NotACodeword(c)),
    }
}

/// True when all `n` row sums and all `n` column sums vanish mod `q`.
pub fn check_zero_sums(x: &CodeArray, p: &CodeParams) -> Result<bool> {
    p.check_array(x)?;
    Ok(zero_sums(x))
}

pub(crate) fn zero_sums(x: &CodeArray) -> bool {
    let n = x.n();
    let q = x.q() as u64;
    let rows_ok = (1..=n).all(|i| x.row(i).iter().map(|&s| s as u64).sum::<u64>() % q == 0);
    let cols_ok = (1..=n).all(|j| (1..=n).map(|i| x.get(i, j) as u64).sum::<u64>() % q == 0);
    rows_ok && cols_ok
}

/// Deletes row `i` and column `j` (1-based).
pub fn corrupt(x: &CodeArray, i: usize, j: usize) -> Result<ReceivedArray> {
    let n = x.n();
    if n < 2 {
        return Err(Error::InvalidParameters(
            "criss-cross deletion needs n ≥ 2".into(),
        ));
    }
    if i == 0 || i > n || j == 0 || j > n {
        return Err(Error::IndexOutOfRange(format!(
            "deletion position ({i}, {j}) not in [1, {n}]²"
        )));
    }
    let mut entries = Vec::with_capacity((n - 1) * (n - 1));
    for r in (1..=n).filter(|&r| r != i) {
        let row = x.row(r);
        entries.extend_from_slice(&row[..j - 1]);
        entries.extend_from_slice(&row[j..]);
    }
    Ok(ReceivedArray::from_entries(n, x.q(), entries))
}

/// All distinct arrays reachable by one criss-cross deletion.
pub fn deletion_ball(x: &CodeArray) -> Result<HashSet<ReceivedArray>> {
    let n = x.n();
    let mut ball = HashSet::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            ball.insert(corrupt(x, i, j)?);
        }
    }
    Ok(ball)
}

/// Data-length bookkeeping of the encoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MessageLengths {
    /// Data symbols over `Z_{q−1}` carried by the first row.
    pub k1: usize,
    /// Data symbols over `Z_{q−1}` carried by the last column.
    pub k2: usize,
    /// Data symbols over `Z_q` folded into those `k1 + k2` symbols.
    pub k3: usize,
    /// Total data symbols over `Z_q`: `n² − 4n + 2 + k3`.
    pub total: usize,
}

impl MessageLengths {
    pub fn new(p: &CodeParams) -> Result<Self> {
        p.check_encodable()?;
        let n = p.n;
        let base = (p.q - 1) as u64;
        let k1 = n as i64 - 6 - floor_log((n - 2) as u64, base) as i64;
        let k2 = n as i64 - 7 - floor_log((n - 3) as u64, base) as i64;
        if k1 < 1 || k2 < 1 {
            return Err(Error::InvalidParameters(format!(
                "n={n}, q={} gives k1={k1}, k2={k2}; both must be positive",
                p.q
            )));
        }
        let (k1, k2) = (k1 as usize, k2 as usize);
        let k3 = max_exponent_below(p.q, p.q - 1, k1 + k2);
        Ok(Self {
            k1,
            k2,
            k3,
            total: n * n - 4 * n + 2 + k3,
        })
    }

    /// Encoder redundancy `n² − total = 4n − 2 − k3`.
    pub fn encoder_redundancy(&self, n: usize) -> usize {
        n * n - self.total
    }
}

/// Largest `k` with `base^k ≤ other^exp`, computed exactly.
pub fn max_exponent_below(base: u32, other: u32, exp: usize) -> usize {
    let target: BigUint = Pow::pow(BigUint::from(other), exp);
    let mut power = BigUint::one();
    let mut k = 0;
    loop {
        power *= base;
        if power > target {
            return k;
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example_codeword;

    fn ex_params() -> CodeParams {
        CodeParams::new(9, 7).unwrap()
    }

    #[test]
    fn example_is_codeword() {
        let x = example_codeword();
        assert_eq!(first_violation(&x, &ex_params()).unwrap(), None);
        assert!(check_zero_sums(&x, &ex_params()).unwrap());
    }

    #[test]
    fn perturbations_name_the_condition() {
        let mut x = example_codeword();
        x.set(1, 1, 5);
        assert_eq!(
            first_violation(&x, &ex_params()).unwrap(),
            Some(Condition::FirstRow)
        );

        let mut x = example_codeword();
        x.set(5, 5, 0);
        assert_eq!(
            first_violation(&x, &ex_params()).unwrap(),
            Some(Condition::RowSums)
        );

        let mut x = example_codeword();
        x.set(2, 8, 3);
        assert_eq!(
            first_violation(&x, &ex_params()).unwrap(),
            Some(Condition::FixedEntries)
        );
    }

    #[test]
    fn zero_sum_examples() {
        assert!(check_zero_sums(&CodeArray::zeros(9, 7).unwrap(), &ex_params()).unwrap());
        let mut x = example_codeword();
        x.set(9, 9, 1);
        assert!(!check_zero_sums(&x, &ex_params()).unwrap());
    }

    #[test]
    fn corrupt_examples() {
        let z = CodeArray::zeros(6, 3).unwrap();
        let y = corrupt(&z, 2, 5).unwrap();
        assert_eq!(y.entries(), &[0; 25]);

        let a = CodeArray::from_rows(vec![vec![1, 1], vec![1, 2]], 4).unwrap();
        assert_eq!(corrupt(&a, 1, 1).unwrap().rows(), vec![vec![2]]);

        assert!(corrupt(&z, 0, 1).is_err());
        assert!(corrupt(&z, 1, 7).is_err());
    }

    #[test]
    fn zero_array_ball_is_singleton() {
        let z = CodeArray::zeros(5, 3).unwrap();
        assert_eq!(deletion_ball(&z).unwrap().len(), 1);
    }

    #[test]
    fn message_length_examples() {
        let ml = MessageLengths::new(&ex_params().allow_unproven_parameters(true)).unwrap();
        assert_eq!((ml.k1, ml.k2, ml.k3, ml.total), (2, 1, 2, 49));
        assert_eq!(ml.encoder_redundancy(9), 32);

        let ml = MessageLengths::new(&CodeParams::new(11, 3).unwrap()).unwrap();
        assert_eq!((ml.k1, ml.k2, ml.k3, ml.total), (2, 1, 1, 80));

        let ml = MessageLengths::new(&CodeParams::new(16, 7).unwrap()).unwrap();
        assert_eq!((ml.k1, ml.k2, ml.k3, ml.total), (9, 8, 15, 209));
    }

    #[test]
    fn message_lengths_respect_gate() {
        assert!(matches!(
            MessageLengths::new(&ex_params()),
            Err(Error::BelowProvenRange(_))
        ));
        let p = CodeParams::new(7, 7)
            .unwrap()
            .allow_unproven_parameters(true);
        assert!(matches!(
            MessageLengths::new(&p),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn exponent_bound_is_exact() {
        // 7^15 = 4747561509943 ≤ 6^17 = 16926659444736 < 7^16
        assert_eq!(max_exponent_below(7, 6, 17), 15);
        assert_eq!(max_exponent_below(3, 2, 3), 1);
        assert_eq!(max_exponent_below(5, 4, 0), 0);
    }

    #[test]
    fn params_validation() {
        assert!(CodeParams::new(3, 5).is_err());
        assert!(CodeParams::new(9, 2).is_err());
        let p = CodeParams::new(9, 7).unwrap();
        assert!(first_violation(&CodeArray::zeros(8, 7).unwrap(), &p).is_err());
        assert!(first_violation(&CodeArray::zeros(9, 5).unwrap(), &p).is_err());
    }
}
