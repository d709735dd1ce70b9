//! Encoder redundancy against the known bounds.
//!
//! The integer quantities (`k1`, `k2`, `k3`, message length, redundancy) are
//! exact. The bounds involve `log_q` and are computed in `f64` for reporting
//! and comparison only, with [`BOUND_SLACK`] absolute tolerance.

use std::fmt::Write as _;

use crate::code::{CodeParams, MessageLengths};
use crate::error::{Error, Result};

pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisRow {
    pub n: usize,
    pub q: u32,
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
    pub message_length: usize,
    /// `4n − 2 − k3`.
    pub encoder_redundancy: usize,
    /// `2n + 2·log_q n − 3`, the lower bound on code redundancy.
    pub lower_bound: f64,
    /// `2n + 2·log_q n + (2n − 13)·log_q(q/(q−1)) + 12`.
    pub upper_bound: f64,
    /// `encoder_redundancy − lower_bound`.
    pub gap: f64,
}

pub const CSV_HEADER: &str =
    "n,q,k1,k2,k3,message_length,encoder_redundancy,lower_bound,upper_bound,gap";

fn log_base(x: f64, base: f64) -> f64 {
    x.ln() / base.ln()
}

pub fn lower_bound(n: usize, q: u32) -> f64 {
    2.0 * n as f64 + 2.0 * log_base(n as f64, q as f64) - 3.0
}

pub fn upper_bound(n: usize, q: u32) -> f64 {
    let (nf, qf) = (n as f64, q as f64);
    2.0 * nf + 2.0 * log_base(nf, qf) + (2.0 * nf - 13.0) * log_base(qf / (qf - 1.0), qf) + 12.0
}

impl AnalysisRow {
    pub fn new(p: &CodeParams) -> Result<Self> {
        let ml = MessageLengths::new(p)?;
        let (n, q) = (p.n(), p.q());
        let encoder_redundancy = 4 * n - 2 - ml.k3;
        debug_assert_eq!(encoder_redundancy, ml.encoder_redundancy(n));
        let lower = lower_bound(n, q);
        Ok(Self {
            n,
            q,
            k1: ml.k1,
            k2: ml.k2,
            k3: ml.k3,
            message_length: ml.total,
            encoder_redundancy,
            lower_bound: lower,
            upper_bound: upper_bound(n, q),
            gap: encoder_redundancy as f64 - lower,
        })
    }

    pub fn within_upper_bound(&self) -> bool {
        self.encoder_redundancy as f64 <= self.upper_bound + BOUND_SLACK
    }

    pub fn above_lower_bound(&self) -> bool {
        self.encoder_redundancy as f64 >= self.lower_bound - BOUND_SLACK
    }

    pub fn satisfies_bounds(&self) -> bool {
        self.within_upper_bound() && self.above_lower_bound()
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.6},{:.6},{:.6}",
            self.n,
            self.q,
            self.k1,
            self.k2,
            self.k3,
            self.message_length,
            self.encoder_redundancy,
            self.lower_bound,
            self.upper_bound,
            self.gap
        )
    }
}

/// Rows for every `n ∈ [n_min, n_max]` and every `q` in `qs`, ordered by `q`
/// then `n`.
pub fn sweep(
    n_min: usize,
    n_max: usize,
    qs: &[u32],
    allow_unproven: bool,
) -> Result<Vec<AnalysisRow>> {
    if n_min > n_max {
        return Err(Error::InvalidParameters(format!(
            "empty range: n-min {n_min} > n-max {n_max}"
        )));
    }
    if qs.is_empty() {
        return Err(Error::InvalidParameters("no alphabet sizes given".into()));
    }
    let mut rows = Vec::with_capacity((n_max - n_min + 1) * qs.len());
    for &q in qs {
        for n in n_min..=n_max {
            let p = CodeParams::new(n, q)?.allow_unproven_parameters(allow_unproven);
            rows.push(AnalysisRow::new(&p)?);
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[AnalysisRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

pub fn to_table(rows: &[AnalysisRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>5} {:>5} {:>4} {:>4} {:>5} {:>8} {:>6} {:>10} {:>10} {:>8}  bounds",
        "n", "q", "k1", "k2", "k3", "k", "r_enc", "lower", "upper", "gap"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>5} {:>5} {:>4} {:>4} {:>5} {:>8} {:>6} {:>10.3} {:>10.3} {:>8.3}  {}",
            r.n,
            r.q,
            r.k1,
            r.k2,
            r.k3,
            r.message_length,
            r.encoder_redundancy,
            r.lower_bound,
            r.upper_bound,
            r.gap,
            if r.satisfies_bounds() {
                "ok"
            } else {
                "VIOLATED"
            }
        );
    }
    out
}
