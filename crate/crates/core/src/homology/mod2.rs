//! Ranks over the two-element field by bitset column reduction.

use super::SparseMatrix;

struct BitColumn {
    words: Vec<u64>,
}

impl BitColumn {
    fn lowest(&self) -> Option<usize> {
        for (w, &bits) in self.words.iter().enumerate().rev() {
            if bits != 0 {
                return Some(w * 64 + 63 - bits.leading_zeros() as usize);
            }
        }
        None
    }

    fn xor_assign(&mut self, other: &BitColumn) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }
}

/// Rank of the matrix reduced mod 2.
pub fn rank_mod2(m: &SparseMatrix) -> usize {
    let words = m.rows.div_ceil(64);
    let mut pivot_of: Vec<Option<usize>> = vec![None; m.rows];
    let mut reduced: Vec<BitColumn> = Vec::new();
    for col in &m.columns {
        let mut c = BitColumn { words: vec![0; words] };
        for &(r, v) in col {
            if v % 2 != 0 {
                c.words[r / 64] ^= 1 << (r % 64);
            }
        }
        while let Some(low) = c.lowest() {
            match pivot_of[low] {
                Some(p) => c.xor_assign(&reduced[p]),
                None => {
                    pivot_of[low] = Some(reduced.len());
                    reduced.push(c);
                    break;
                }
            }
        }
    }
    reduced.len()
}
