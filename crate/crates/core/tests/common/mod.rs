//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::Rng;

/// Some `x` with `A x = b` and every `|x_j| <= bound`, by meeting in the middle.
pub fn bounded_integer_solution(a: &[Vec<i64>], b: &[i64], bound: i64) -> Option<Vec<i64>> {
    let cols = a.first().map_or(0, |r| r.len());
    let half = cols / 2;
    let combos = |range: std::ops::Range<usize>| {
        let width = range.len();
        let mut out: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        let mut x = vec![-bound; width];
        loop {
            let sums: Vec<i64> = a
                .iter()
                .map(|row| range.clone().zip(&x).map(|(j, &v)| row[j] * v).sum())
                .collect();
            out.push((sums, x.clone()));
            let mut k = 0;
            loop {
                if k == width {
                    return out;
                }
                if x[k] < bound {
                    x[k] += 1;
                    break;
                }
                x[k] = -bound;
                k += 1;
            }
        }
    };
    let left: HashMap<Vec<i64>, Vec<i64>> = combos(0..half).into_iter().collect();
    for (sums, right) in combos(half..cols) {
        let need: Vec<i64> = b.iter().zip(&sums).map(|(bi, s)| bi - s).collect();
        if let Some(l) = left.get(&need) {
            return Some(l.iter().chain(&right).copied().collect());
        }
    }
    None
}

/// Every non-negative solution of `A x = b` is enumerated; row 0 must have positive
/// coefficients so it bounds each unknown.
pub fn nonneg_solution_exhaustive(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<i64>> {
    assert!(a[0].iter().all(|&c| c > 0) && b[0] >= 0);
    fn go(a: &[Vec<i64>], b: &[i64], j: usize, x: &mut Vec<i64>, used: i64) -> bool {
        let cols = a[0].len();
        if j == cols {
            return a
                .iter()
                .zip(b)
                .all(|(row, &bi)| row.iter().zip(x.iter()).map(|(c, v)| c * v).sum::<i64>() == bi);
        }
        let mut v = 0;
        while used + a[0][j] * v <= b[0] {
            x.push(v);
            if go(a, b, j + 1, x, used + a[0][j] * v) {
                return true;
            }
            x.pop();
            v += 1;
        }
        false
    }
    let mut x = Vec::new();
    go(a, b, 0, &mut x, 0).then_some(x)
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect()
}

pub fn apply(a: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(c, v)| c * v).sum())
        .collect()
}
