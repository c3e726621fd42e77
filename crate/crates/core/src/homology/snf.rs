//! Smith normal form over the integers with exact arithmetic.
//!
//! Unit pivots are eliminated sparsely first (boundary matrices are full of
//! them). Whatever is left after that is small and goes through a dense
//! reduction on big integers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseMatrix;

/// Non-zero invariant factors `d_1 | d_2 | ...` (all positive).
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.columns.len()];
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, v) in col {
            if v != 0 {
                rows[i].insert(j, BigInt::from(v));
                cols[j].insert(i);
            }
        }
    }

    let mut units = 0usize;
    while let Some((pr, pc)) = best_unit_pivot(&rows, &cols) {
        let pivot_row: Vec<(usize, BigInt)> = rows[pr].iter().map(|(&c, v)| (c, v.clone())).collect();
        let pivot_val = rows[pr][&pc].clone();
        let others: Vec<usize> = cols[pc].iter().copied().filter(|&r| r != pr).collect();
        for r in others {
            // pivot is ±1, so its inverse is itself
            let factor = &rows[r][&pc] * &pivot_val;
            for (c, v) in &pivot_row {
                let entry = rows[r].entry(*c).or_insert_with(BigInt::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    rows[r].remove(c);
                    cols[*c].remove(&r);
                } else {
                    cols[*c].insert(r);
                }
            }
        }
        for (c, _) in &pivot_row {
            cols[*c].remove(&pr);
        }
        rows[pr].clear();
        units += 1;
    }

    let live_rows: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&c| !cols[c].is_empty()).collect();
    let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (i, &r) in live_rows.iter().enumerate() {
        for (c, v) in &rows[r] {
            let j = live_cols.binary_search(c).expect("live column");
            dense[i][j] = v.clone();
        }
    }
    let mut out = vec![BigInt::one(); units];
    out.extend(dense_smith(dense));
    out
}

fn best_unit_pivot(rows: &[BTreeMap<usize, BigInt>], cols: &[BTreeSet<usize>]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (c, rs) in cols.iter().enumerate() {
        if rs.is_empty() {
            continue;
        }
        let cc = rs.len() - 1;
        if let Some((_, _, cost)) = best {
            if cc > cost {
                continue;
            }
        }
        for &r in rs {
            if rows[r][&c].abs().is_one() {
                let cost = cc * (rows[r].len() - 1);
                if best.is_none_or(|(_, _, b)| cost < b) {
                    best = Some((r, c, cost));
                    if cost == 0 {
                        return Some((r, c));
                    }
                }
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// Diagonalizes a dense integer matrix and returns the non-zero invariant
/// factors in divisibility order.
pub fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&a, t..m, t..n) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let (top, rest) = a.split_at_mut(i);
                    for (x, p) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                        *x -= &q * p;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // move the smallest remainder in row t / column t onto the pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
                continue;
            }
            // the pivot must divide the rest of the matrix
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, v) in top[t][t..].iter_mut().zip(&rest[0][t..]) {
                        *x += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn min_abs_entry(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn textbook_example() {
        // Invariant factors of this matrix are 2, 6, 12.
        let a = big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let d: Vec<i64> = dense_smith(a).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
    }

    #[test]
    fn divisibility_is_enforced() {
        let d = dense_smith(big(&[&[2, 0], &[0, 3]]));
        let d: Vec<i64> = d.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![1, 6]);
    }
}
