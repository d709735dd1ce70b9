//! The q-ary 1-RLL Differential VT code with suffix constraint,
//! `1-RLL_Diff_VT_a(n, m; b)`.
//!
//! Members are sequences `x` of length `n + m` with
//! `Syn(Diff(x)) ≡ a (mod q(n+m))`, all adjacent symbols distinct, and the
//! last `m` symbols equal to `b`. The encoder stores data over `Z_{q−1}` in
//! the differential domain as nonzero symbols, which is what keeps adjacent
//! output symbols distinct.

use crate::error::{Error, Result};
use crate::vt::{self, DvtParams, Sequence};

/// Smallest body length for which the encoder is proven.
pub const MIN_PROVEN_BODY_LEN: usize = 8;
/// Largest suffix length for which the encoder is proven.
pub const MAX_PROVEN_SUFFIX_LEN: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RllSuffixParams {
    n: usize,
    q: u32,
    a: u64,
    suffix: Vec<u32>,
    allow_unproven: bool,
}

impl RllSuffixParams {
    pub fn new(n: usize, q: u32, a: u64, suffix: Vec<u32>) -> Result<Self> {
        if q < 3 {
            return Err(Error::InvalidParameters(format!(
                "alphabet size q={q} must be at least 3"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidParameters(
                "body length n must be positive".into(),
            ));
        }
        if suffix.is_empty() {
            return Err(Error::InvalidParameters(
                "suffix length m must be positive".into(),
            ));
        }
        if let Some(&s) = suffix.iter().find(|&&s| s >= q) {
            return Err(Error::InvalidParameters(format!(
                "suffix symbol {s} outside [0, {q})"
            )));
        }
        if !vt::is_adjacent_distinct(&suffix) {
            return Err(Error::InvalidParameters(
                "suffix must have adjacent symbols distinct".into(),
            ));
        }
        let modulus = q as u128 * (n + suffix.len()) as u128;
        if a as u128 >= modulus {
            return Err(Error::InvalidParameters(format!(
                "syndrome residue a={a} not in [0, {modulus})"
            )));
        }
        Ok(Self {
            n,
            q,
            a,
            suffix,
            allow_unproven: false,
        })
    }

    /// Permits encoding outside `n ≥ 8, m ≤ 3`. Every encoder output is then
    /// re-validated against the membership predicate.
    pub fn allow_unproven_parameters(mut self, allow: bool) -> Self {
        self.allow_unproven = allow;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.suffix.len()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn suffix(&self) -> &[u32] {
        &self.suffix
    }

    pub fn allows_unproven(&self) -> bool {
        self.allow_unproven
    }

    /// Total codeword length `n + m`.
    pub fn len(&self) -> usize {
        self.n + self.suffix.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dvt_params(&self) -> DvtParams {
        DvtParams::new(self.len(), self.q, self.a).expect("validated in constructor")
    }

    /// Number of data symbols over `Z_{q−1}` the encoder accepts.
    pub fn data_len(&self) -> Result<usize> {
        Ok(index_sets_unchecked(self.n, self.q)?.free.len())
    }

    fn in_proven_range(&self) -> bool {
        self.n >= MIN_PROVEN_BODY_LEN && self.m() <= MAX_PROVEN_SUFFIX_LEN
    }
}

/// Largest `t` with `base^t ≤ value`, by repeated multiplication.
pub fn floor_log(value: u64, base: u64) -> u32 {
    assert!(
        base >= 2 && value >= 1,
        "floor_log needs base ≥ 2 and value ≥ 1"
    );
    let mut t = 0;
    let mut power = base;
    while power <= value {
        t += 1;
        match power.checked_mul(base) {
            Some(next) => power = next,
            None => break,
        }
    }
    t
}

/// Position partition of the differential domain used by the encoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSets {
    /// `⌊log_{q−1} n⌋`.
    pub t: u32,
    /// Powers `(q−1)^i`, `0 ≤ i ≤ t`, ascending. Carry the base-(q−1) digits of the residual syndrome.
    pub powers: Vec<usize>,
    /// The three largest non-power indices, ascending (`j1 < j2 < j3`).
    pub greedy: [usize; 3],
    /// Remaining indices, ascending. Carry data.
    pub free: Vec<usize>,
}

fn index_sets_unchecked(n: usize, q: u32) -> Result<IndexSets> {
    if q < 3 {
        return Err(Error::InvalidParameters(format!(
            "alphabet size q={q} must be at least 3"
        )));
    }
    let base = (q - 1) as usize;
    let t = floor_log(n as u64, base as u64);
    let mut powers = Vec::with_capacity(t as usize + 1);
    let mut p = 1usize;
    for _ in 0..=t {
        powers.push(p);
        p = p.saturating_mul(base);
    }

    let mut greedy = Vec::with_capacity(3);
    for i in (1..=n).rev() {
        if greedy.len() == 3 {
            break;
        }
        if !powers.contains(&i) {
            greedy.push(i);
        }
    }
    if greedy.len() < 3 {
        return Err(Error::InvalidParameters(format!(
            "n={n} leaves fewer than three non-power indices for q={q}"
        )));
    }
    greedy.reverse();
    let greedy = [greedy[0], greedy[1], greedy[2]];

    let free: Vec<usize> = (1..=n)
        .filter(|i| !powers.contains(i) && !greedy.contains(i))
        .collect();
    if free.is_empty() {
        return Err(Error::InvalidParameters(format!(
            "n={n} leaves no data positions for q={q}"
        )));
    }
    Ok(IndexSets {
        t,
        powers,
        greedy,
        free,
    })
}

/// Index sets of the encoder for body length `n`. Requires `n ≥ 8` and
/// `q ≥ 3`.
pub fn index_sets(n: usize, q: u32) -> Result<IndexSets> {
    if n < MIN_PROVEN_BODY_LEN {
        return Err(Error::BelowProvenRange(format!(
            "n={n} (need n ≥ {MIN_PROVEN_BODY_LEN})"
        )));
    }
    index_sets_unchecked(n, q)
}

/// Same as [`index_sets`] but accepts any `n` for which the sets exist.
pub fn index_sets_relaxed(n: usize, q: u32) -> Result<IndexSets> {
    index_sets_unchecked(n, q)
}

/// Intermediate values of one encoder run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodeTrace {
    pub index_sets: IndexSets,
    pub g1: u128,
    pub e: [u32; 3],
    pub g4: u128,
    /// Base-(q−1) digits `h_0..h_t` of `g4`, least significant first.
    pub h: Vec<u32>,
    /// Differential vector before inversion.
    pub diff: Vec<u32>,
}

pub fn is_member(x: &Sequence, p: &RllSuffixParams) -> Result<bool> {
    if x.q() != p.q {
        return Err(Error::AlphabetMismatch {
            expected: p.q,
            actual: x.q(),
        });
    }
    if x.len() != p.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            actual: x.len(),
        });
    }
    Ok(x.symbols()[p.n..] == p.suffix[..]
        && x.is_adjacent_distinct()
        && vt::is_dvt_member(x, &p.dvt_params())?)
}

pub fn encode(data: &[u32], p: &RllSuffixParams) -> Result<Sequence> {
    encode_traced(data, p).map(|(x, _)| x)
}

/// Runs the encoder and returns its intermediate values alongside the codeword.
pub fn encode_traced(data: &[u32], p: &RllSuffixParams) -> Result<(Sequence, EncodeTrace)> {
    let proven = p.in_proven_range();
    if !proven && !p.allow_unproven {
        return Err(Error::BelowProvenRange(format!(
            "n={} m={} (need n ≥ {MIN_PROVEN_BODY_LEN}, m ≤ {MAX_PROVEN_SUFFIX_LEN})",
            p.n,
            p.m()
        )));
    }
    let sets = index_sets_unchecked(p.n, p.q)?;
    if data.len() != sets.free.len() {
        return Err(Error::LengthMismatch {
            expected: sets.free.len(),
            actual: data.len(),
        });
    }
    let data_q = p.q - 1;
    if let Some((i, &s)) = data.iter().enumerate().find(|(_, &s)| s >= data_q) {
        return Err(Error::SymbolOutOfRange {
            position: i + 1,
            symbol: s,
            q: data_q,
        });
    }

    let n = p.n;
    let m = p.m();
    let q = p.q;
    let total = n + m;
    let modulus = q as i128 * total as i128;
    // 1-based differential vector; slot 0 unused.
    let mut y = vec![0u32; total + 1];

    for (&k, &f) in sets.free.iter().zip(data) {
        y[k] = f + 1;
    }
    for (slot, pair) in y[n + 1..total].iter_mut().zip(p.suffix.windows(2)) {
        *slot = (pair[0] + q - pair[1]) % q;
    }
    y[total] = p.suffix[m - 1];

    let mut acc: i128 = p.a as i128;
    for (i, &s) in y.iter().enumerate().skip(n + 1) {
        acc -= i as i128 * s as i128;
    }
    for &k in &sets.free {
        acc -= k as i128 * y[k] as i128;
    }
    for &r in sets.powers.iter().chain(sets.greedy.iter()) {
        acc -= r as i128;
    }
    let g1 = acc.rem_euclid(modulus) as u128;

    let mut g = g1;
    let mut e = [0u32; 3];
    for (slot, &j) in sets.greedy.iter().enumerate() {
        let digit = std::cmp::min((q - 2) as u128, g / j as u128);
        e[slot] = digit as u32;
        y[j] = digit as u32 + 1;
        g -= digit * j as u128;
    }
    let g4 = g;

    let base = (q - 1) as u128;
    let capacity = base.pow(sets.t + 1);
    if g4 >= capacity {
        return Err(Error::Internal(format!(
            "residual g4={g4} exceeds (q-1)^(t+1)-1={}",
            capacity - 1
        )));
    }
    let mut h = Vec::with_capacity(sets.powers.len());
    let mut rest = g4;
    for &pos in &sets.powers {
        let digit = (rest % base) as u32;
        rest /= base;
        h.push(digit);
        y[pos] = digit + 1;
    }

    let diff = y[1..].to_vec();
    let x = vt::diff_inverse(&Sequence::from_raw(diff.clone(), q));

    if !proven && !is_member(&x, p)? {
        return Err(Error::Internal(
            "encoder output failed membership validation".into(),
        ));
    }
    debug_assert!(is_member(&x, p).unwrap_or(false));

    Ok((
        x,
        EncodeTrace {
            index_sets: sets,
            g1,
            e,
            g4,
            h,
            diff,
        },
    ))
}

/// Recovers the codeword and exact deletion position from a single deletion.
pub fn decode(received: &Sequence, p: &RllSuffixParams) -> Result<(Sequence, usize)> {
    let out = vt::decode_rll_deletion(received, &p.dvt_params())?;
    if out.codeword.symbols()[p.n..] != p.suffix[..] {
        return Err(Error::NoCandidate);
    }
    Ok((out.codeword, out.position))
}

/// Inverse of [`encode`] on its image.
pub fn recover_data(x: &Sequence, p: &RllSuffixParams) -> Result<Vec<u32>> {
    if !is_member(x, p)? {
        return Err(Error::NotAMember);
    }
    let sets = index_sets_unchecked(p.n, p.q)?;
    let y = vt::diff(x);
    sets.free
        .iter()
        .map(|&k| match y.get(k) {
            0 => Err(Error::Internal(format!(
                "data position {k} holds a zero differential symbol"
            ))),
            v => Ok(v - 1),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex2_params() -> RllSuffixParams {
        RllSuffixParams::new(7, 7, 0, vec![0, 2])
            .unwrap()
            .allow_unproven_parameters(true)
    }

    const EX_X: [u32; 9] = [4, 2, 1, 4, 5, 2, 1, 0, 2];

    #[test]
    fn floor_log_is_exact() {
        assert_eq!(floor_log(7, 6), 1);
        assert_eq!(floor_log(6, 6), 1);
        assert_eq!(floor_log(5, 6), 0);
        assert_eq!(floor_log(12, 2), 3);
        assert_eq!(floor_log(16, 2), 4);
        assert_eq!(floor_log(u64::MAX, 2), 63);
    }

    #[test]
    fn index_set_examples() {
        let s = index_sets_relaxed(7, 7).unwrap();
        assert_eq!(s.t, 1);
        assert_eq!(s.powers, vec![1, 6]);
        assert_eq!(s.greedy, [4, 5, 7]);
        assert_eq!(s.free, vec![2, 3]);

        let s = index_sets(12, 3).unwrap();
        assert_eq!(s.t, 3);
        assert_eq!(s.powers, vec![1, 2, 4, 8]);
        assert_eq!(s.greedy, [10, 11, 12]);
        assert_eq!(s.free, vec![3, 5, 6, 7, 9]);

        let s = index_sets(8, 9).unwrap();
        assert_eq!(s.t, 1);
        assert_eq!(s.powers, vec![1, 8]);
        assert_eq!(s.greedy, [5, 6, 7]);
        assert_eq!(s.free, vec![2, 3, 4]);
    }

    #[test]
    fn index_sets_reject_small_n() {
        assert!(matches!(index_sets(7, 7), Err(Error::BelowProvenRange(_))));
        // q = 3, n = 5: powers {1,2,4}, greedy {3,5}: too few.
        assert!(index_sets_relaxed(5, 3).is_err());
    }

    #[test]
    fn example_encoding() {
        let (x, trace) = encode_traced(&[0, 3], &ex2_params()).unwrap();
        assert_eq!(x.symbols(), &EX_X);
        assert_eq!(trace.g1, 31);
        assert_eq!(trace.e, [5, 2, 0]);
        assert_eq!(trace.g4, 1);
        assert_eq!(trace.h, vec![1, 0]);
        assert_eq!(trace.diff, vec![2, 1, 4, 6, 3, 1, 1, 5, 2]);
    }

    #[test]
    fn unproven_parameters_need_opt_in() {
        let p = RllSuffixParams::new(7, 7, 0, vec![0, 2]).unwrap();
        assert!(matches!(
            encode(&[0, 3], &p),
            Err(Error::BelowProvenRange(_))
        ));
        let p = RllSuffixParams::new(9, 5, 0, vec![0, 1, 2, 3]).unwrap();
        assert!(matches!(
            encode(&vec![0; p.data_len().unwrap()], &p),
            Err(Error::BelowProvenRange(_))
        ));
    }

    #[test]
    fn small_proven_encoding_is_member() {
        let p = RllSuffixParams::new(8, 3, 0, vec![0]).unwrap();
        // t = 3: powers {1,2,4,8}, greedy {5,6,7}, data at {3}.
        assert_eq!(p.data_len().unwrap(), 1);
        let x = encode(&[0], &p).unwrap();
        assert!(is_member(&x, &p).unwrap());
        assert_eq!(recover_data(&x, &p).unwrap(), vec![0]);
    }

    #[test]
    fn membership_examples() {
        let p = ex2_params();
        let ok = Sequence::new(EX_X.to_vec(), 7).unwrap();
        assert!(is_member(&ok, &p).unwrap());
        let bad_suffix = Sequence::new(vec![4, 2, 1, 4, 5, 2, 1, 0, 1], 7).unwrap();
        assert!(!is_member(&bad_suffix, &p).unwrap());
        let bad_run = Sequence::new(vec![4, 4, 1, 4, 5, 2, 1, 0, 2], 7).unwrap();
        assert!(!is_member(&bad_run, &p).unwrap());
        let short = Sequence::new(vec![4, 2, 1], 7).unwrap();
        assert!(matches!(
            is_member(&short, &p),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn decode_endpoints() {
        let p = ex2_params();
        let x = Sequence::new(EX_X.to_vec(), 7).unwrap();
        for pos in [1, 9] {
            let (cw, found) = decode(&x.delete(pos).unwrap(), &p).unwrap();
            assert_eq!(cw, x);
            assert_eq!(found, pos);
        }
    }

    #[test]
    fn recover_example() {
        let x = Sequence::new(EX_X.to_vec(), 7).unwrap();
        assert_eq!(recover_data(&x, &ex2_params()).unwrap(), vec![0, 3]);
        let bad = Sequence::new(vec![4, 2, 1, 4, 5, 2, 1, 0, 1], 7).unwrap();
        assert_eq!(recover_data(&bad, &ex2_params()), Err(Error::NotAMember));
    }

    #[test]
    fn params_validation() {
        assert!(RllSuffixParams::new(8, 2, 0, vec![0]).is_err());
        assert!(RllSuffixParams::new(8, 3, 0, vec![1, 1]).is_err());
        assert!(RllSuffixParams::new(8, 3, 0, vec![]).is_err());
        assert!(RllSuffixParams::new(8, 3, 27, vec![0]).is_err());
        assert!(RllSuffixParams::new(8, 3, 26, vec![0]).is_ok());
    }

    #[test]
    fn bad_data_rejected() {
        let p = RllSuffixParams::new(8, 3, 0, vec![0]).unwrap();
        assert!(matches!(
            encode(&[2], &p),
            Err(Error::SymbolOutOfRange { .. })
        ));
        assert!(matches!(
            encode(&[0, 0], &p),
            Err(Error::LengthMismatch { .. })
        ));
    }
}
