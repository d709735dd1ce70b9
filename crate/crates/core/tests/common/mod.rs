//! Naive reference implementations written directly from the definitions,
//! used as oracles for the library.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

pub fn naive_diff(x: &[u32], q: u32) -> Vec<u32> {
    let n = x.len();
    (0..n)
        .map(|i| {
            if i + 1 < n {
                ((x[i] as i64 - x[i + 1] as i64).rem_euclid(q as i64)) as u32
            } else {
                x[i]
            }
        })
        .collect()
}

pub fn naive_syndrome(y: &[u32]) -> u64 {
    y.iter()
        .enumerate()
        .map(|(i, &s)| (i as u64 + 1) * s as u64)
        .sum()
}

/// `Syn(Diff(x)) mod qn`.
pub fn naive_residue(x: &[u32], q: u32) -> u64 {
    naive_syndrome(&naive_diff(x, q)) % (q as u64 * x.len() as u64)
}

pub fn adjacent_distinct(x: &[u32]) -> bool {
    x.windows(2).all(|w| w[0] != w[1])
}

pub fn all_words(len: usize, q: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u32>| {
                (0..q).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

/// 1-based deletion.
pub fn delete(x: &[u32], pos: usize) -> Vec<u32> {
    let mut v = x.to_vec();
    v.remove(pos - 1);
    v
}

/// 1-based insertion before position `pos`.
pub fn insert(x: &[u32], pos: usize, s: u32) -> Vec<u32> {
    let mut v = x.to_vec();
    v.insert(pos - 1, s);
    v
}

/// All members of `Diff_VT_a(n+1; q)` that yield `y` after one deletion.
pub fn deletion_preimages(y: &[u32], q: u32, a: u64) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    for pos in 1..=y.len() + 1 {
        for s in 0..q {
            let x = insert(y, pos, s);
            if naive_residue(&x, q) == a {
                out.insert(x);
            }
        }
    }
    out
}

/// All members of `Diff_VT_a(n−1; q)` that yield `y` after one insertion.
pub fn insertion_preimages(y: &[u32], q: u32, a: u64) -> BTreeSet<Vec<u32>> {
    (1..=y.len())
        .map(|pos| delete(y, pos))
        .filter(|x| naive_residue(x, q) == a)
        .collect()
}

/// Suffix, adjacent-distinct and syndrome check of a 1-RLL suffix codeword.
pub fn naive_rll_member(x: &[u32], q: u32, a: u64, suffix: &[u32]) -> bool {
    x.len() >= suffix.len()
        && x[x.len() - suffix.len()..] == *suffix
        && adjacent_distinct(x)
        && naive_residue(x, q) == a
}

pub type Grid = Vec<Vec<u32>>;

/// The five membership conditions of the array code, straight from the
/// definition.
pub fn naive_is_codeword(x: &Grid, q: u32) -> bool {
    let n = x.len();
    let u: Vec<u32> = x[0].clone();
    let v: Vec<u32> = (0..n).rev().map(|i| x[i][n - 1]).collect();
    let row_ok = naive_rll_member(&u, q, 0, &[0, 2]);
    let col_ok = naive_rll_member(&v, q, 0, &[0, 1, 2]);
    let fixed = x[1][n - 2] == 1 && x[2][n - 2] == 2;
    let rows = (1..n).all(|i| x[i].iter().sum::<u32>() % q == 0);
    let cols = (1..n - 1).all(|j| x.iter().map(|r| r[j]).sum::<u32>() % q == 0);
    row_ok && col_ok && fixed && rows && cols
}

/// Deletes row `i` and column `j` (1-based).
pub fn naive_corrupt(x: &Grid, i: usize, j: usize) -> Grid {
    x.iter()
        .enumerate()
        .filter(|&(r, _)| r != i - 1)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|&(c, _)| c != j - 1)
                .map(|(_, &s)| s)
                .collect()
        })
        .collect()
}

pub fn naive_ball(x: &Grid) -> HashSet<Grid> {
    let n = x.len();
    let mut ball = HashSet::new();
    for i in 1..=n {
        for j in 1..=n {
            ball.insert(naive_corrupt(x, i, j));
        }
    }
    ball
}

/// Pairs of codeword indices whose deletion balls intersect.
pub fn naive_ball_collisions(codewords: &[Grid]) -> Vec<(usize, usize)> {
    let mut owner: HashMap<Grid, usize> = HashMap::new();
    let mut hits = BTreeSet::new();
    for (k, x) in codewords.iter().enumerate() {
        for y in naive_ball(x) {
            if let Some(&other) = owner.get(&y) {
                hits.insert((other, k));
            } else {
                owner.insert(y, k);
            }
        }
    }
    hits.into_iter().collect()
}

/// Builds the codeword with first row `u`, reversed last column `v` and
/// interior entries `free` (rows and columns `2..n−1` row by row, skipping the
/// two fixed entries), filling the first column and last row by parity.
pub fn assemble(n: usize, q: u32, u: &[u32], v: &[u32], free: &[u32]) -> Grid {
    let mut x = vec![vec![0u32; n]; n];
    x[0] = u.to_vec();
    for (k, &s) in v.iter().enumerate() {
        x[n - 1 - k][n - 1] = s;
    }
    let mut it = free.iter();
    for (i, row) in x.iter_mut().enumerate().take(n - 1).skip(1) {
        for (j, cell) in row.iter_mut().enumerate().take(n - 1).skip(1) {
            *cell = match (i, j) {
                (1, c) if c == n - 2 => 1,
                (2, c) if c == n - 2 => 2,
                _ => *it.next().unwrap(),
            };
        }
    }
    for j in 1..n - 1 {
        let s: u32 = x[..n - 1].iter().map(|row| row[j]).sum();
        x[n - 1][j] = (q - s % q) % q;
    }
    for row in x.iter_mut().skip(1) {
        let s: u32 = row[1..].iter().sum();
        row[0] = (q - s % q) % q;
    }
    x
}

pub fn naive_floor_log(value: u64, base: u64) -> u32 {
    let mut k = 0;
    let mut p = base;
    while p <= value {
        p *= base;
        k += 1;
    }
    k
}
