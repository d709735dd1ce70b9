//! Exact code sizes by structural counting and by exhaustive enumeration.
//!
//! A codeword is fixed by its first row, its reversed last column and the
//! `(n−2)² − 2` interior entries outside the two fixed positions; the first
//! column and last row then follow from the parity conditions. So
//! `|C| = |A_U|·|A_V|·q^{(n−2)²−2}`, where `A_U` and `A_V` are the admissible
//! first rows and reversed last columns.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::array::CodeArray;
use crate::code::{self, condition_holds, CodeParams, Condition, COLUMN_SUFFIX, ROW_SUFFIX};
use crate::error::{Error, Result};

/// Hard cap on candidate evaluations for any enumeration.
pub const ENUMERATION_GUARD: u128 = 100_000_000;

const CHUNK: u128 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    Formula,
    BruteForce,
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMode::Formula => "formula",
            CountMode::BruteForce => "bruteforce",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSize {
    pub n: usize,
    pub q: u32,
    pub mode: CountMode,
    pub size: BigUint,
    /// `|A_U|`, formula mode only.
    pub first_rows: Option<u64>,
    /// `|A_V|`, formula mode only.
    pub last_columns: Option<u64>,
}

impl CodeSize {
    pub fn is_empty(&self) -> bool {
        self.size.is_zero()
    }

    /// `n² − ⌊log_q |C|⌋`, or `None` for the empty code.
    pub fn redundancy(&self) -> Option<u64> {
        if self.is_empty() {
            return None;
        }
        Some((self.n * self.n) as u64 - floor_log_big(&self.size, self.q))
    }
}

impl fmt::Display for CodeSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} q={} mode={}", self.n, self.q, self.mode)?;
        if let (Some(u), Some(v)) = (self.first_rows, self.last_columns) {
            write!(f, " first_rows={u} last_columns={v}")?;
        }
        write!(f, " size={}", self.size)?;
        match self.redundancy() {
            Some(r) => write!(f, " redundancy={r}"),
            None => write!(f, " (empty code)"),
        }
    }
}

fn floor_log_big(value: &BigUint, base: u32) -> u64 {
    let base = BigUint::from(base);
    let mut power = base.clone();
    let mut k = 0;
    while &power <= value {
        power *= &base;
        k += 1;
    }
    k
}

fn space_size(q: u32, len: usize) -> Result<u128> {
    let total = u32::try_from(len)
        .ok()
        .and_then(|l| (q as u128).checked_pow(l))
        .filter(|&t| t <= ENUMERATION_GUARD);
    total.ok_or_else(|| {
        Error::GuardExceeded(format!(
            "{q}^{len} candidates exceeds the cap of {ENUMERATION_GUARD}"
        ))
    })
}

fn digits_of(mut index: u128, q: u32, len: usize) -> Vec<u32> {
    let mut digits = vec![0; len];
    for d in digits.iter_mut().rev() {
        *d = (index % q as u128) as u32;
        index /= q as u128;
    }
    digits
}

fn increment(digits: &mut [u32], q: u32) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return;
        }
        *d = 0;
    }
}

/// Every word of `Σ_q^len` accepted by `keep`, in lexicographic order.
/// Chunks of the index space are scanned in parallel.
fn collect_words<F>(q: u32, len: usize, keep: F) -> Result<Vec<Vec<u32>>>
where
    F: Fn(&[u32]) -> bool + Sync,
{
    let total = space_size(q, len)?;
    let chunks = total.div_ceil(CHUNK) as u64;
    let found: Vec<Vec<Vec<u32>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c as u128 * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut digits = digits_of(start, q, len);
            let mut out = Vec::new();
            for _ in start..end {
                if keep(&digits) {
                    out.push(digits.clone());
                }
                increment(&mut digits, q);
            }
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// All admissible first rows `A_U`.
pub fn valid_first_rows(p: &CodeParams) -> Result<Vec<Vec<u32>>> {
    let q = p.q();
    collect_words(q, p.n(), |w| code::suffix_code_ok(w, q, &ROW_SUFFIX))
}

/// All admissible reversed last columns `A_V`.
pub fn valid_last_columns(p: &CodeParams) -> Result<Vec<Vec<u32>>> {
    let q = p.q();
    collect_words(q, p.n(), |w| code::suffix_code_ok(w, q, &COLUMN_SUFFIX))
}

fn free_entries(n: usize) -> usize {
    (n - 2) * (n - 2) - 2
}

pub fn count_formula(p: &CodeParams) -> Result<CodeSize> {
    let us = valid_first_rows(p)?.len() as u64;
    let vs = valid_last_columns(p)?.len() as u64;
    let size = BigUint::from(us)
        * BigUint::from(vs)
        * BigUint::from(p.q()).pow(free_entries(p.n()) as u32);
    Ok(CodeSize {
        n: p.n(),
        q: p.q(),
        mode: CountMode::Formula,
        size,
        first_rows: Some(us),
        last_columns: Some(vs),
    })
}

const CHEAP_FIRST: [Condition; 5] = [
    Condition::FixedEntries,
    Condition::RowSums,
    Condition::ColumnSums,
    Condition::FirstRow,
    Condition::LastColumn,
];

/// Every `n×n` array satisfying all five conditions, by scanning all
/// `q^{n²}` arrays.
pub fn bruteforce_codewords(p: &CodeParams) -> Result<Vec<CodeArray>> {
    let (n, q) = (p.n(), p.q());
    let words = collect_words(q, n * n, |w| {
        CHEAP_FIRST.iter().all(|&c| condition_holds(w, n, q, c))
    })?;
    Ok(words
        .into_iter()
        .map(|w| CodeArray::from_entries(n, q, w))
        .collect())
}

pub fn count_bruteforce(p: &CodeParams) -> Result<CodeSize> {
    let size = bruteforce_codewords(p)?.len();
    Ok(CodeSize {
        n: p.n(),
        q: p.q(),
        mode: CountMode::BruteForce,
        size: BigUint::from(size),
        first_rows: None,
        last_columns: None,
    })
}

pub fn count(p: &CodeParams, mode: CountMode) -> Result<CodeSize> {
    match mode {
        CountMode::Formula => count_formula(p),
        CountMode::BruteForce => count_bruteforce(p),
    }
}

fn neg_mod(sum: u64, q: u32) -> u32 {
    let q = q as u64;
    ((q - sum % q) % q) as u32
}

/// Assembles the codeword with first row `u`, reversed last column `v` and
/// the given interior entries (row-major over rows and columns `2..n−1`,
/// skipping `(2,n−1)` and `(3,n−1)`).
fn assemble(n: usize, q: u32, u: &[u32], v: &[u32], interior: &[u32]) -> CodeArray {
    let mut x = vec![0u32; n * n];
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    x[..n].copy_from_slice(u);
    for (k, &s) in v.iter().enumerate() {
        x[idx(n - k, n)] = s;
    }
    let mut free = interior.iter();
    for i in 2..n {
        for j in 2..n {
            x[idx(i, j)] = match (i, j) {
                (2, c) if c == n - 1 => 1,
                (3, c) if c == n - 1 => 2,
                _ => *free.next().expect("interior length"),
            };
        }
    }
    for j in 2..n {
        let s: u64 = (1..n).map(|i| x[idx(i, j)] as u64).sum();
        x[idx(n, j)] = neg_mod(s, q);
    }
    for i in 2..=n {
        let s: u64 = (2..=n).map(|j| x[idx(i, j)] as u64).sum();
        x[idx(i, 1)] = neg_mod(s, q);
    }
    CodeArray::from_entries(n, q, x)
}

/// Codewords built from `A_U × A_V ×` interior assignments, in enumeration
/// order (the last interior entry varies fastest). With `limit = None` the
/// whole code is produced. The output size is capped by
/// [`ENUMERATION_GUARD`].
pub fn constructive_codewords(p: &CodeParams, limit: Option<usize>) -> Result<Vec<CodeArray>> {
    let (n, q) = (p.n(), p.q());
    let us = valid_first_rows(p)?;
    let vs = valid_last_columns(p)?;
    let free = free_entries(n);
    let interior_count = u32::try_from(free)
        .ok()
        .and_then(|f| (q as u128).checked_pow(f));
    let total = interior_count.map(|c| us.len() as u128 * vs.len() as u128 * c);
    let wanted = match (total, limit) {
        (Some(t), Some(l)) => t.min(l as u128),
        (None, Some(l)) => l as u128,
        (Some(t), None) => t,
        (None, None) => u128::MAX,
    };
    if wanted > ENUMERATION_GUARD {
        return Err(Error::GuardExceeded(format!(
            "{wanted} codewords exceeds the cap of {ENUMERATION_GUARD}"
        )));
    }
    let wanted = wanted as usize;
    let mut out = Vec::with_capacity(wanted);
    'outer: for u in &us {
        for v in &vs {
            let mut interior = vec![0; free];
            loop {
                if out.len() == wanted {
                    break 'outer;
                }
                out.push(assemble(n, q, u, v, &interior));
                increment(&mut interior, q);
                if interior.iter().all(|&d| d == 0) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of a pairwise deletion-ball disjointness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallReport {
    pub codewords: usize,
    pub received_arrays: usize,
    /// Index pairs `(a, b)`, `a < b`, of codewords whose balls meet.
    pub intersections: Vec<(usize, usize)>,
}

impl BallReport {
    pub fn disjoint(&self) -> bool {
        self.intersections.is_empty()
    }
}

/// Checks that no received array lies in the balls of two distinct codewords.
pub fn check_ball_disjointness(codewords: &[CodeArray]) -> Result<BallReport> {
    let mut owner: HashMap<_, usize> = HashMap::new();
    let mut intersections = Vec::new();
    for (k, x) in codewords.iter().enumerate() {
        for y in code::deletion_ball(x)? {
            match owner.get(&y) {
                Some(&other) if other != k => {
                    let pair = (other.min(k), other.max(k));
                    if !intersections.contains(&pair) {
                        intersections.push(pair);
                    }
                }
                Some(_) => {}
                None => {
                    owner.insert(y, k);
                }
            }
        }
    }
    intersections.sort_unstable();
    Ok(BallReport {
        codewords: codewords.len(),
        received_arrays: owner.len(),
        intersections,
    })
}
