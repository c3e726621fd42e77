use serde::{Deserialize, Serialize};

use super::{morse_vector, Gradient, MorseVector};
use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::homology::betti_mod2;

/// Comparison of a Morse vector with the mod-2 Betti vector and the Euler
/// characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub vector: MorseVector,
    pub betti_mod2: Vec<usize>,
    pub euler_characteristic: i64,
    /// Dimensions where `c_i < β_i`.
    pub violations: Vec<usize>,
    pub alternating_sum_matches: bool,
    /// The vector equals the Betti vector.
    pub perfect: bool,
}

impl InequalityReport {
    pub fn from_parts(vector: MorseVector, betti_mod2: Vec<usize>, euler_characteristic: i64) -> Self {
        let len = vector.len().max(betti_mod2.len());
        let b = |i: usize| betti_mod2.get(i).copied().unwrap_or(0);
        let violations = (0..len).filter(|&i| vector.get(i) < b(i)).collect();
        let perfect = (0..len).all(|i| vector.get(i) == b(i));
        let alternating_sum_matches = vector.alternating_sum() == euler_characteristic;
        InequalityReport { vector, betti_mod2, euler_characteristic, violations, alternating_sum_matches, perfect }
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.alternating_sum_matches
    }
}

pub fn morse_inequalities(c: &SimplicialComplex, v: &Gradient) -> Result<InequalityReport> {
    let vector = morse_vector(c, v)?;
    Ok(InequalityReport::from_parts(vector, betti_mod2(c), c.euler_characteristic()))
}
