//! Finitely generated abelian groups in invariant-factor normal form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... and every di >= 2.
///
/// The representation is canonical: two groups are isomorphic iff the two
/// field sets are equal, so derived equality is group isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl AbelianGroup {
    /// Build from raw data; factors are normalized to positive, factors equal
    /// to 1 are dropped, and the divisibility chain is asserted.
    pub fn new(free_rank: usize, factors: Vec<BigInt>) -> Self {
        let mut invariant_factors: Vec<BigInt> = factors
            .into_iter()
            .map(|d| d.abs())
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect();
        invariant_factors.sort();
        assert!(
            invariant_factors
                .windows(2)
                .all(|w| (&w[1] % &w[0]).is_zero()),
            "invariant factors must form a divisibility chain"
        );
        AbelianGroup { free_rank, invariant_factors }
    }

    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, invariant_factors: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, invariant_factors: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        if n == 0 {
            Self::free(1)
        } else {
            Self::new(0, vec![BigInt::from(n)])
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Direct sum, renormalized to invariant-factor form.
    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        // Merge by prime powers: the clean way to restore the chain is to
        // redo SNF on a diagonal presentation.
        let mut diag: Vec<BigInt> = self.invariant_factors.clone();
        diag.extend(other.invariant_factors.iter().cloned());
        let free = self.free_rank + other.free_rank;
        if diag.is_empty() {
            return AbelianGroup::free(free);
        }
        let n = diag.len();
        let mut m = crate::linalg::IntMat::zero(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m[(i, i)] = d;
        }
        let coker = crate::linalg::cokernel(&m);
        AbelianGroup::new(free, coker.invariant_factors().to_vec())
    }

    /// ASCII form used as a fingerprint label: "0", "Z", "Z+Z/2", ...
    pub fn invariant_string(&self) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = (0..self.free_rank).map(|_| "Z".to_string()).collect();
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        parts.join("+")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invariant_string())
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invariant_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_factors_dropped() {
        let g = AbelianGroup::new(1, vec![BigInt::one(), BigInt::from(2)]);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.invariant_factors(), &[BigInt::from(2)]);
        assert_eq!(g.invariant_string(), "Z+Z/2");
    }

    #[test]
    fn canonical_equality() {
        let g = AbelianGroup::new(0, vec![BigInt::from(2), BigInt::from(4)]);
        let h = AbelianGroup::new(0, vec![BigInt::from(4), BigInt::from(2)]);
        assert_eq!(g, h);
        assert_eq!(g.order(), Some(BigInt::from(8)));
    }

    #[test]
    fn direct_sum_renormalizes() {
        // Z/2 + Z/3 = Z/6.
        let s = AbelianGroup::cyclic(2).direct_sum(&AbelianGroup::cyclic(3));
        assert_eq!(s, AbelianGroup::cyclic(6));
        // Z/2 + Z/2 stays Z/2 + Z/2.
        let t = AbelianGroup::cyclic(2).direct_sum(&AbelianGroup::cyclic(2));
        assert_eq!(t.invariant_factors(), &[BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn display_forms() {
        assert_eq!(AbelianGroup::trivial().invariant_string(), "0");
        assert_eq!(AbelianGroup::free(1).invariant_string(), "Z");
        assert_eq!(AbelianGroup::cyclic(3).invariant_string(), "Z/3");
    }
}
