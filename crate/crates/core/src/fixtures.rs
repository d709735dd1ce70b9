//! Embedded reference arrays: a worked `n = 9, q = 7` codeword with its data
//! and a received array, plus two pairs of arrays that defeat sum-based and
//! partial-VT decoders of other criss-cross constructions.

use std::fmt;

use crate::array::{CodeArray, ReceivedArray};
use crate::code::corrupt;

/// 9×9 codeword over `Σ_7`.
pub const EXAMPLE_CODEWORD: [[u32; 9]; 9] = [
    [4, 2, 1, 4, 5, 2, 1, 0, 2],
    [5, 0, 2, 4, 4, 0, 4, 1, 1],
    [5, 1, 2, 6, 0, 3, 2, 2, 0],
    [5, 6, 1, 0, 3, 2, 4, 6, 1],
    [2, 4, 3, 5, 6, 1, 6, 1, 0],
    [3, 1, 3, 2, 3, 2, 2, 6, 6],
    [5, 0, 0, 5, 0, 5, 5, 3, 5],
    [3, 0, 6, 2, 3, 3, 0, 5, 6],
    [3, 0, 3, 0, 4, 3, 4, 4, 0],
];

/// The 49 data symbols that encode to [`EXAMPLE_CODEWORD`].
pub const EXAMPLE_DATA: [u32; 49] = [
    4, 2, 0, 2, 4, 4, 0, 4, 1, 2, 6, 0, 3, 2, 6, 1, 0, 3, 2, 4, //
    6, 4, 3, 5, 6, 1, 6, 1, 1, 3, 2, 3, 2, 2, 6, 0, 0, 5, 0, 5, //
    5, 3, 0, 6, 2, 3, 3, 0, 5,
];

/// [`EXAMPLE_CODEWORD`] with row 9 and column 9 deleted.
pub const EXAMPLE_RECEIVED: [[u32; 8]; 8] = [
    [4, 2, 1, 4, 5, 2, 1, 0],
    [5, 0, 2, 4, 4, 0, 4, 1],
    [5, 1, 2, 6, 0, 3, 2, 2],
    [5, 6, 1, 0, 3, 2, 4, 6],
    [2, 4, 3, 5, 6, 1, 6, 1],
    [3, 1, 3, 2, 3, 2, 2, 6],
    [5, 0, 0, 5, 0, 5, 5, 3],
    [3, 0, 6, 2, 3, 3, 0, 5],
];

pub fn example_codeword() -> CodeArray {
    CodeArray::from_rows(EXAMPLE_CODEWORD.iter().map(|r| r.to_vec()).collect(), 7)
        .expect("valid fixture")
}

pub fn example_data() -> Vec<u32> {
    EXAMPLE_DATA.to_vec()
}

pub fn example_received() -> ReceivedArray {
    ReceivedArray::from_rows(EXAMPLE_RECEIVED.iter().map(|r| r.to_vec()).collect(), 9, 7)
        .expect("valid fixture")
}

/// Two 2×2 arrays over `Σ_4` with equal row and column sums whose deletions
/// at (1,1) and (2,2) coincide.
pub fn sum_collision_pair() -> (CodeArray, CodeArray) {
    let a = CodeArray::from_rows(vec![vec![1, 1], vec![1, 2]], 4).expect("valid fixture");
    let b = CodeArray::from_rows(vec![vec![2, 0], vec![0, 3]], 4).expect("valid fixture");
    (a, b)
}

const ROW_COLLISION_COMMON: [&str; 14] = [
    "0000000000001100",
    "0101010101011001",
    "0000000000001100",
    "0101010101011001",
    "0000000000000000",
    "0000000000000101",
    "0000000000000000",
    "1000000000001101",
    "0000000000000000",
    "1000000000001000",
    "0000000000000011",
    "1000000000000111",
    "1000000000001000",
    "0110000000001100",
];

fn binary_rows(lines: &[&str]) -> Vec<Vec<u32>> {
    lines
        .iter()
        .map(|l| l.bytes().map(|b| (b - b'0') as u32).collect())
        .collect()
}

/// Two 16×16 binary arrays differing in four entries of rows 15 and 16;
/// deleting (row 15, column 1) of the first and (row 16, column 1) of the
/// second gives the same array.
pub fn row_collision_pair() -> (CodeArray, CodeArray) {
    let mut a_lines = ROW_COLLISION_COMMON.to_vec();
    a_lines.push("0110000000000000");
    a_lines.push("0000000000000000");
    let mut b_lines = ROW_COLLISION_COMMON.to_vec();
    b_lines.push("0000000000000000");
    b_lines.push("0110000000000000");
    let a = CodeArray::from_rows(binary_rows(&a_lines), 2).expect("valid fixture");
    let b = CodeArray::from_rows(binary_rows(&b_lines), 2).expect("valid fixture");
    (a, b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureFailure(pub String);

impl fmt::Display for FixtureFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FixtureFailure {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureReport {
    pub sum_collision: ReceivedArray,
    pub row_collision: ReceivedArray,
}

fn row_sums(x: &CodeArray) -> Vec<u64> {
    (1..=x.n())
        .map(|i| x.row(i).iter().map(|&s| s as u64).sum())
        .collect()
}

fn column_sums(x: &CodeArray) -> Vec<u64> {
    (1..=x.n())
        .map(|j| x.column(j).iter().map(|&s| s as u64).sum())
        .collect()
}

/// Checks equal row/column sums and `corrupt(a,1,1) = corrupt(b,2,2) = [[2]]`.
pub fn verify_sum_collision(a: &CodeArray, b: &CodeArray) -> Result<ReceivedArray, FixtureFailure> {
    if row_sums(a) != row_sums(b) {
        return Err(FixtureFailure("row sums differ".into()));
    }
    if column_sums(a) != column_sums(b) {
        return Err(FixtureFailure("column sums differ".into()));
    }
    let ya = corrupt(a, 1, 1).map_err(|e| FixtureFailure(e.to_string()))?;
    let yb = corrupt(b, 2, 2).map_err(|e| FixtureFailure(e.to_string()))?;
    if ya != yb {
        return Err(FixtureFailure("deletion results differ".into()));
    }
    if ya.rows() != vec![vec![2]] {
        return Err(FixtureFailure(format!(
            "shared deletion result is {:?}, expected [[2]]",
            ya.rows()
        )));
    }
    Ok(ya)
}

/// Checks `corrupt(a, 15, 1) = corrupt(b, 16, 1)`.
pub fn verify_row_collision(a: &CodeArray, b: &CodeArray) -> Result<ReceivedArray, FixtureFailure> {
    let ya = corrupt(a, 15, 1).map_err(|e| FixtureFailure(e.to_string()))?;
    let yb = corrupt(b, 16, 1).map_err(|e| FixtureFailure(e.to_string()))?;
    if ya != yb {
        return Err(FixtureFailure(
            "deleting (15,1) and (16,1) gives different arrays".into(),
        ));
    }
    Ok(ya)
}

pub fn verify_collision_fixtures() -> Result<FixtureReport, FixtureFailure> {
    let (a, b) = sum_collision_pair();
    let sum_collision = verify_sum_collision(&a, &b)?;
    let (a, b) = row_collision_pair();
    let row_collision = verify_row_collision(&a, &b)?;
    Ok(FixtureReport {
        sum_collision,
        row_collision,
    })
}
