//! q-ary Differential VT codes.
//!
//! A sequence `x` of length `n` over `Σ_q` belongs to `Diff_VT_a(n; q)` when
//! `Syn(Diff(x)) ≡ a (mod q·n)`, where `Diff` is the backward difference with
//! the last symbol copied and `Syn(y) = Σ i·y_i`.
//!
//! Every index in the public API is 1-based.
//!
//! The decoders enumerate insertion (or removal) candidates and keep those
//! satisfying the syndrome congruence. Two facts keep this linear in `n`:
//!
//! * `Syn(Diff(x)) = Σ x_i + q · Σ_{i<n} i·[x_i < x_{i+1}]`, so the syndrome of
//!   a candidate is available in O(1) from prefix sums over the received word.
//! * Reducing the congruence mod `q` gives `Σ x_i ≡ a (mod q)`, which fixes the
//!   missing (or surplus) symbol for every candidate position.

use std::fmt;

use crate::error::{Error, Result};

/// A nonempty sequence over `Σ_q = {0, …, q−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence {
    q: u32,
    symbols: Vec<u32>,
}

impl Sequence {
    pub fn new(symbols: Vec<u32>, q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameters(format!(
                "alphabet size q={q} must be at least 2"
            )));
        }
        if symbols.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some((idx, &symbol)) = symbols.iter().enumerate().find(|(_, &s)| s >= q) {
            return Err(Error::SymbolOutOfRange {
                position: idx + 1,
                symbol,
                q,
            });
        }
        Ok(Self { q, symbols })
    }

    pub fn zeros(len: usize, q: u32) -> Result<Self> {
        Self::new(vec![0; len], q)
    }

    /// Builds a sequence without validation. Callers guarantee the invariants.
    pub(crate) fn from_raw(symbols: Vec<u32>, q: u32) -> Self {
        debug_assert!(q >= 2 && !symbols.is_empty() && symbols.iter().all(|&s| s < q));
        Self { q, symbols }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u32> {
        self.symbols
    }

    /// Symbol at 1-based position `i`.
    pub fn get(&self, i: usize) -> u32 {
        self.symbols[i - 1]
    }

    /// True when no two adjacent symbols are equal (the 1-RLL property).
    pub fn is_adjacent_distinct(&self) -> bool {
        is_adjacent_distinct(&self.symbols)
    }

    /// Removes the symbol at 1-based `position`.
    pub fn delete(&self, position: usize) -> Result<Sequence> {
        if position == 0 || position > self.len() {
            return Err(Error::IndexOutOfRange(format!(
                "deletion position {position} not in [1, {}]",
                self.len()
            )));
        }
        if self.len() == 1 {
            return Err(Error::EmptySequence);
        }
        let mut symbols = self.symbols.clone();
        symbols.remove(position - 1);
        Ok(Self::from_raw(symbols, self.q))
    }

    /// Inserts `symbol` so that it occupies 1-based `position` in the result.
    pub fn insert(&self, position: usize, symbol: u32) -> Result<Sequence> {
        if position == 0 || position > self.len() + 1 {
            return Err(Error::IndexOutOfRange(format!(
                "insertion position {position} not in [1, {}]",
                self.len() + 1
            )));
        }
        if symbol >= self.q {
            return Err(Error::SymbolOutOfRange {
                position,
                symbol,
                q: self.q,
            });
        }
        let mut symbols = self.symbols.clone();
        symbols.insert(position - 1, symbol);
        Ok(Self::from_raw(symbols, self.q))
    }

    pub fn reversed(&self) -> Sequence {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Self::from_raw(symbols, self.q)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn is_adjacent_distinct(symbols: &[u32]) -> bool {
    symbols.windows(2).all(|w| w[0] != w[1])
}

/// Parameters of `Diff_VT_a(n; q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DvtParams {
    n: usize,
    q: u32,
    a: u64,
}

impl DvtParams {
    pub fn new(n: usize, q: u32, a: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters(
                "code length n must be positive".into(),
            ));
        }
        if q < 2 {
            return Err(Error::InvalidParameters(format!(
                "alphabet size q={q} must be at least 2"
            )));
        }
        let modulus = q as u128 * n as u128;
        if a as u128 >= modulus {
            return Err(Error::InvalidParameters(format!(
                "syndrome residue a={a} not in [0, {modulus})"
            )));
        }
        Ok(Self { n, q, a })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn modulus(&self) -> u128 {
        self.q as u128 * self.n as u128
    }

    fn check_alphabet(&self, seq: &Sequence) -> Result<()> {
        if seq.q() != self.q {
            return Err(Error::AlphabetMismatch {
                expected: self.q,
                actual: seq.q(),
            });
        }
        Ok(())
    }

    fn check_length(&self, seq: &Sequence, expected: usize) -> Result<()> {
        self.check_alphabet(seq)?;
        if seq.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: seq.len(),
            });
        }
        Ok(())
    }
}

/// Outcome of a single-deletion decode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionDecodeResult {
    pub codeword: Sequence,
    /// 1-based index of the deleted symbol. When several indices produce the
    /// same received word (deletion inside a run) this is the smallest one.
    pub position: usize,
}

/// `y_i = x_i − x_{i+1} mod q` for `i < n`, `y_n = x_n`.
pub fn diff(x: &Sequence) -> Sequence {
    let q = x.q();
    let s = x.symbols();
    let mut y = Vec::with_capacity(s.len());
    for w in s.windows(2) {
        y.push(((w[0] as u64 + q as u64 - w[1] as u64) % q as u64) as u32);
    }
    y.push(s[s.len() - 1]);
    Sequence::from_raw(y, q)
}

/// Inverse of [`diff`]: `x_i = Σ_{j≥i} y_j mod q`.
pub fn diff_inverse(y: &Sequence) -> Sequence {
    let q = y.q() as u64;
    let mut x = vec![0u32; y.len()];
    let mut acc = 0u64;
    for (i, &s) in y.symbols().iter().enumerate().rev() {
        acc = (acc + s as u64) % q;
        x[i] = acc as u32;
    }
    Sequence::from_raw(x, y.q())
}

/// `Σ i·y_i` without modular reduction.
///
/// Returned as `u128`: `n·(n+1)/2·(q−1)` stays far below `2^128` for any
/// sequence that fits in memory.
pub fn syndrome(y: &Sequence) -> u128 {
    y.symbols()
        .iter()
        .enumerate()
        .map(|(i, &s)| (i as u128 + 1) * s as u128)
        .sum()
}

/// `Syn(Diff(x))` computed directly from `x` through the ascent identity.
pub(crate) fn diff_syndrome(x: &[u32], q: u32) -> u128 {
    let sum: u128 = x.iter().map(|&s| s as u128).sum();
    let ascents: u128 = x
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] < w[1])
        .map(|(i, _)| i as u128 + 1)
        .sum();
    sum + q as u128 * ascents
}

pub fn is_dvt_member(x: &Sequence, p: &DvtParams) -> Result<bool> {
    p.check_length(x, p.n)?;
    Ok(diff_syndrome(x.symbols(), p.q) % p.modulus() == p.a as u128)
}

/// Prefix tables over a received word `r` (1-based, length `L`).
///
/// `weighted[k] = Σ_{i≤k} i·[r_i < r_{i+1}]` and `count[k] = Σ_{i≤k} [r_i < r_{i+1}]`
/// for `k ∈ [0, L]`, with the pair at `i = L` treated as absent.
struct AscentProfile {
    weighted: Vec<u128>,
    count: Vec<u128>,
    sum: u128,
}

impl AscentProfile {
    fn new(r: &[u32]) -> Self {
        let len = r.len();
        let mut weighted = vec![0u128; len + 1];
        let mut count = vec![0u128; len + 1];
        for i in 1..=len {
            let asc = u128::from(i < len && r[i - 1] < r[i]);
            weighted[i] = weighted[i - 1] + i as u128 * asc;
            count[i] = count[i - 1] + asc;
        }
        let sum = r.iter().map(|&s| s as u128).sum();
        Self {
            weighted,
            count,
            sum,
        }
    }

    fn len(&self) -> usize {
        self.weighted.len() - 1
    }
}

/// Candidate filter applied during deletion decoding.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Filter {
    Any,
    AdjacentDistinct,
}

/// Enumerates canonical insertions into `r` whose result lies in the code.
///
/// An insertion of `s` at `p` is canonical when `p = 1` or `r_{p−1} ≠ s`, i.e.
/// the new symbol starts its run. Canonical insertions yield pairwise distinct
/// supersequences, so the number of matches equals the number of distinct
/// candidate codewords.
fn deletion_candidates(r: &[u32], p: &DvtParams, filter: Filter) -> Vec<(usize, u32)> {
    let n = p.n;
    let q = p.q;
    let prof = AscentProfile::new(r);
    let len = prof.len();
    debug_assert_eq!(len + 1, n);
    let modulus = p.modulus();
    let q128 = q as u128;

    let s = ((p.a as u128 % q128 + q128 - prof.sum % q128) % q128) as u32;

    let equal_pairs = r.windows(2).filter(|w| w[0] == w[1]).count();

    let mut out = Vec::new();
    for pos in 1..=n {
        let prev = (pos >= 2).then(|| r[pos - 2]);
        let next = (pos <= len).then(|| r[pos - 1]);
        if prev == Some(s) {
            continue;
        }
        if filter == Filter::AdjacentDistinct {
            if next == Some(s) {
                continue;
            }
            let split_equal = matches!((prev, next), (Some(a), Some(b)) if a == b);
            if equal_pairs - usize::from(split_equal) != 0 {
                continue;
            }
        }
        let mut w = prof.weighted[pos.saturating_sub(2)];
        if let Some(a) = prev {
            if a < s {
                w += (pos - 1) as u128;
            }
        }
        if let Some(b) = next {
            if s < b {
                w += pos as u128;
            }
        }
        // Pairs (r_i, r_{i+1}) with i ≥ pos move one index to the right.
        w += prof.weighted[len] - prof.weighted[pos - 1];
        w += prof.count[len] - prof.count[pos - 1];

        let syn = prof.sum + s as u128 + q128 * w;
        if syn % modulus == p.a as u128 {
            out.push((pos, s));
        }
    }
    out
}

fn decode_deletion_with(
    received: &Sequence,
    p: &DvtParams,
    filter: Filter,
) -> Result<DeletionDecodeResult> {
    if p.n < 2 {
        return Err(Error::InvalidParameters(
            "deletion decoding needs code length n ≥ 2".into(),
        ));
    }
    p.check_length(received, p.n - 1)?;
    let candidates = deletion_candidates(received.symbols(), p, filter);
    match candidates.as_slice() {
        [] => Err(Error::NoCandidate),
        [(position, symbol)] => Ok(DeletionDecodeResult {
            codeword: received.insert(*position, *symbol)?,
            position: *position,
        }),
        _ => Err(Error::AmbiguousCodeword),
    }
}

/// Recovers the codeword of `Diff_VT_a(n; q)` from a single deletion.
pub fn decode_deletion(received: &Sequence, p: &DvtParams) -> Result<DeletionDecodeResult> {
    decode_deletion_with(received, p, Filter::Any)
}

/// Single-deletion decoding restricted to codewords with all adjacent symbols
/// distinct. The returned position is exact.
pub fn decode_rll_deletion(received: &Sequence, p: &DvtParams) -> Result<DeletionDecodeResult> {
    decode_deletion_with(received, p, Filter::AdjacentDistinct)
}

/// Recovers the codeword of `Diff_VT_a(n; q)` from a single insertion.
pub fn decode_insertion(received: &Sequence, p: &DvtParams) -> Result<Sequence> {
    p.check_length(received, p.n + 1)?;
    let r = received.symbols();
    let prof = AscentProfile::new(r);
    let len = prof.len();
    let q128 = p.q as u128;
    let modulus = p.modulus();
    let surplus = ((prof.sum % q128 + q128 - p.a as u128 % q128) % q128) as u32;

    let mut found: Option<usize> = None;
    for k in 1..=len {
        if r[k - 1] != surplus {
            continue;
        }
        // Removals inside a run coincide; keep the first of each run.
        if k >= 2 && r[k - 2] == r[k - 1] {
            continue;
        }
        let mut w = prof.weighted[k.saturating_sub(2)];
        if k >= 2 && k < len && r[k - 2] < r[k] {
            w += (k - 1) as u128;
        }
        w += prof.weighted[len] - prof.weighted[k];
        w -= prof.count[len] - prof.count[k];

        let syn = prof.sum - r[k - 1] as u128 + q128 * w;
        if syn % modulus == p.a as u128 {
            if found.is_some() {
                return Err(Error::AmbiguousCodeword);
            }
            found = Some(k);
        }
    }
    match found {
        Some(k) => received.delete(k),
        None => Err(Error::NoCandidate),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &[u32], q: u32) -> Sequence {
        Sequence::new(s.to_vec(), q).unwrap()
    }

    const EX_X: [u32; 9] = [4, 2, 1, 4, 5, 2, 1, 0, 2];
    const EX_Y: [u32; 9] = [2, 1, 4, 6, 3, 1, 1, 5, 2];

    #[test]
    fn diff_examples() {
        assert_eq!(diff(&seq(&EX_X, 7)).symbols(), &EX_Y);
        assert_eq!(diff(&seq(&[0; 6], 5)).symbols(), &[0; 6]);
        assert_eq!(diff(&seq(&[1, 2, 0], 3)).symbols(), &[2, 2, 0]);
    }

    #[test]
    fn diff_inverse_examples() {
        assert_eq!(diff_inverse(&seq(&EX_Y, 7)).symbols(), &EX_X);
        assert_eq!(diff_inverse(&seq(&[0; 4], 3)).symbols(), &[0; 4]);
        assert_eq!(diff_inverse(&seq(&[2, 2, 0], 3)).symbols(), &[1, 2, 0]);
    }

    #[test]
    fn syndrome_examples() {
        assert_eq!(syndrome(&seq(&EX_Y, 7)), 126);
        assert_eq!(syndrome(&seq(&[0; 7], 3)), 0);
        assert_eq!(syndrome(&seq(&[1, 0, 2], 3)), 7);
    }

    #[test]
    fn ascent_identity_matches_definition() {
        let x = seq(&EX_X, 7);
        assert_eq!(diff_syndrome(x.symbols(), 7), syndrome(&diff(&x)));
    }

    #[test]
    fn membership_examples() {
        let x = seq(&EX_X, 7);
        assert!(is_dvt_member(&x, &DvtParams::new(9, 7, 0).unwrap()).unwrap());
        assert!(!is_dvt_member(&x, &DvtParams::new(9, 7, 1).unwrap()).unwrap());
        let z = Sequence::zeros(5, 3).unwrap();
        assert!(is_dvt_member(&z, &DvtParams::new(5, 3, 0).unwrap()).unwrap());
        assert!(matches!(
            is_dvt_member(&z, &DvtParams::new(6, 3, 0).unwrap()),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn invalid_inputs() {
        assert_eq!(Sequence::new(vec![], 3), Err(Error::EmptySequence));
        assert!(matches!(
            Sequence::new(vec![0, 3], 3),
            Err(Error::SymbolOutOfRange { position: 2, .. })
        ));
        assert!(DvtParams::new(3, 3, 9).is_err());
        assert!(DvtParams::new(0, 3, 0).is_err());
    }

    #[test]
    fn decode_zero_deletion() {
        let p = DvtParams::new(6, 4, 0).unwrap();
        let r = Sequence::zeros(5, 4).unwrap();
        let out = decode_deletion(&r, &p).unwrap();
        assert_eq!(out.codeword, Sequence::zeros(6, 4).unwrap());
        assert_eq!(out.position, 1);
    }

    #[test]
    fn decode_example_deletion() {
        let p = DvtParams::new(9, 7, 0).unwrap();
        let r = seq(&[2, 1, 4, 5, 2, 1, 0, 2], 7);
        let out = decode_deletion(&r, &p).unwrap();
        assert_eq!(out.codeword.symbols(), &EX_X);
        // (2,1,4,5,2,1,0,2) is the deletion of the leading 4.
        assert_eq!(out.position, 1);

        let r = seq(&[4, 1, 4, 5, 2, 1, 0, 2], 7);
        let out = decode_deletion(&r, &p).unwrap();
        assert_eq!(out.codeword.symbols(), &EX_X);
        assert_eq!(out.position, 2);
    }

    #[test]
    fn decode_insertions() {
        let p = DvtParams::new(9, 7, 0).unwrap();
        let x = seq(&EX_X, 7);
        let r = x.insert(1, 3).unwrap();
        assert_eq!(decode_insertion(&r, &p).unwrap(), x);
        let z = Sequence::zeros(8, 3).unwrap();
        let p = DvtParams::new(7, 3, 0).unwrap();
        assert_eq!(
            decode_insertion(&z, &p).unwrap(),
            Sequence::zeros(7, 3).unwrap()
        );
    }

    #[test]
    fn decode_rll_examples() {
        let p = DvtParams::new(9, 7, 0).unwrap();
        let out = decode_rll_deletion(&seq(&[6, 5, 6, 0, 1, 0, 1, 2], 7), &p).unwrap();
        assert_eq!(out.codeword.symbols(), &[0, 6, 5, 6, 0, 1, 0, 1, 2]);
        assert_eq!(out.position, 1);

        let out = decode_rll_deletion(&seq(&[4, 2, 1, 4, 2, 1, 0, 2], 7), &p).unwrap();
        assert_eq!(out.codeword.symbols(), &EX_X);
        assert_eq!(out.position, 5);
    }

    #[test]
    fn rll_decode_rejects_runs() {
        let p = DvtParams::new(5, 3, 0).unwrap();
        let r = Sequence::zeros(4, 3).unwrap();
        assert_eq!(decode_rll_deletion(&r, &p), Err(Error::NoCandidate));
    }

    #[test]
    fn wrong_length_is_rejected() {
        let p = DvtParams::new(5, 3, 0).unwrap();
        let r = Sequence::zeros(5, 3).unwrap();
        assert!(matches!(
            decode_deletion(&r, &p),
            Err(Error::LengthMismatch {
                expected: 4,
                actual: 5
            })
        ));
        assert!(matches!(
            decode_insertion(&r, &p),
            Err(Error::LengthMismatch {
                expected: 6,
                actual: 5
            })
        ));
    }
}
