//! Shared generators and brute-force references for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use arrfree_core::Multiarrangement;
use rand::Rng;

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Primitive integer vector with positive leading entry, or `None` for zero.
pub fn primitive(v: &[i64]) -> Option<Vec<i64>> {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    if g == 0 {
        return None;
    }
    let lead = v.iter().find(|&&x| x != 0).copied().unwrap();
    let s = if lead < 0 { -g } else { g };
    Some(v.iter().map(|x| x / s).collect())
}

/// Drops zero rows and rows proportional to an earlier one.
pub fn dedupe(rows: &[Vec<i64>], mult: &[u64]) -> (Vec<Vec<i64>>, Vec<u64>) {
    let mut seen = Vec::new();
    let mut out = (Vec::new(), Vec::new());
    for (r, &m) in rows.iter().zip(mult) {
        if let Some(p) = primitive(r) {
            if !seen.contains(&p) {
                seen.push(p);
                out.0.push(r.clone());
                out.1.push(m);
            }
        }
    }
    out
}

pub fn build(dim: usize, rows: &[Vec<i64>], mult: &[u64]) -> Multiarrangement {
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Multiarrangement::from_ints(dim, &refs, mult).expect("deduplicated rows form an arrangement")
}

pub fn cross(a: &[i64], b: &[i64]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Codim-2 flats of a central arrangement in K³, found as the lines
/// `H_i ∩ H_j` via cross products. Keyed by the primitive direction.
pub fn lines(rows: &[Vec<i64>]) -> BTreeMap<Vec<i64>, Vec<usize>> {
    let mut out: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let dir = primitive(&cross(&rows[i], &rows[j])).expect("distinct planes meet in a line");
            let members = out.entry(dir).or_default();
            for k in [i, j] {
                if !members.contains(&k) {
                    members.push(k);
                }
            }
        }
    }
    for m in out.values_mut() {
        m.sort_unstable();
    }
    out
}

pub fn rank3(rows: &[Vec<i64>]) -> bool {
    rows.iter().any(|a| {
        rows.iter().any(|b| {
            let c = cross(a, b);
            rows.iter().any(|r| r.iter().zip(&c).map(|(x, y)| x * y).sum::<i64>() != 0)
        })
    })
}

/// Raises `m[h0]` until `h0` is heavy in every codim-2 localization through it
/// with at least three members.
pub fn force_locally_heavy(rows: &[Vec<i64>], mult: &mut [u64], h0: usize) {
    for members in lines(rows).values() {
        if members.len() >= 3 && members.contains(&h0) {
            let others: u64 = members.iter().filter(|&&k| k != h0).map(|&k| mult[k]).sum();
            mult[h0] = mult[h0].max(others);
        }
    }
}

/// Up to `max_planes` random normals in K³ with entries in `[-2, 2]`, of rank 3.
pub fn random_rank3<R: Rng>(rng: &mut R, max_planes: usize, max_mult: u64) -> (Vec<Vec<i64>>, Vec<u64>) {
    loop {
        let n = rng.gen_range(3..=max_planes);
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..3).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let mult: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_mult)).collect();
        let (rows, mult) = dedupe(&rows, &mult);
        if rows.len() >= 3 && rank3(&rows) {
            return (rows, mult);
        }
    }
}

/// Irreducibility of a rank-3 arrangement in K³: not a pencil plus one plane,
/// i.e. no codim-2 line misses exactly one hyperplane, and not a pencil.
pub fn irreducible_rank3(rows: &[Vec<i64>]) -> bool {
    let n = rows.len();
    rank3(rows) && lines(rows).values().all(|m| m.len() + 1 < n)
}
